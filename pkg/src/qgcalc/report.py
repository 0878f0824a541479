"""Check reports: one named residual per verified property, CI-friendly."""

from dataclasses import dataclass, field

__all__ = ["Check", "Report", "report_to_obj", "render_text"]


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self):
        return self.residual <= self.tolerance


@dataclass
class Report:
    subject: str
    checks: list = field(default_factory=list)
    wallTime: float = 0.0

    def add(self, name, residual, tolerance):
        self.checks.append(Check(name, float(residual), float(tolerance)))

    def add_bool(self, name, ok):
        # booleans ride the residual convention: 0 passes, 1 fails at tolerance 0
        self.checks.append(Check(name, 0.0 if ok else 1.0, 0.0))

    @property
    def passed(self):
        return all(c.passed for c in self.checks)


def report_to_obj(report):
    return {
        "subject": report.subject,
        "pass": report.passed,
        "wallTime": report.wallTime,
        "checks": [
            {
                "name": c.name,
                "residual": c.residual,
                "tolerance": c.tolerance,
                "pass": c.passed,
            }
            for c in report.checks
        ],
    }


def render_text(report):
    lines = []
    mark = "PASS" if report.passed else "FAIL"
    lines.append(f"{mark} {report.subject} ({report.wallTime:.2f}s)")
    for c in report.checks:
        mark = "ok  " if c.passed else "FAIL"
        lines.append(f"  {mark} {c.name}: {c.residual:.2e} <= {c.tolerance:.2e}")
    return "\n".join(lines)
