"""Command line: verify subject files, compose and dualize bicharacters,
induce coactions, and run the whole corpus battery.

Output is JSON by default (--text for a human rendering).  Exit codes:
0 all checks pass, 1 a verification failed, 2 the input was unusable.
Everything here is deterministic; no randomized algorithm runs on the
default path.
"""

import argparse
import json
import os
import sys
import time

import numpy as np

from .bicharacter import (
    Bicharacter,
    bicharacter_residuals,
    check_R_invariance,
    check_bicharacter,
    compose,
    dual_bicharacter,
    from_hopf_hom,
    identity,
)
from .coactions import (
    check_coaction,
    check_corepresentation,
    compose_functors_check,
    induce_coaction,
    pushforward_corep,
)
from .errors import (
    CalculusError,
    NotKacType,
    NotManageable,
    ParseError,
    SourceTargetMismatch,
)
from .groups import (
    character_group,
    group_hom,
    hom_to_hopf,
    qg_from_group,
    trivial_hom,
)
from .homviews import (
    HopfHom,
    LeftQGHom,
    RightQGHom,
    bicharacter_from_left,
    bicharacter_from_right,
    check_left_hom,
    check_left_right_compatibility,
    check_right_hom,
    dual_hopf_relation,
    left_from_bicharacter,
    left_hom_residuals,
    right_from_bicharacter,
    right_hom_residuals,
)
from .qgroup import (
    CLOSURE_TOL,
    EQUATION_TOL,
    PENTAGON_TOL,
    coassociativity_residual,
    coinvariant_dimension,
    dual_qg,
    manageability_witness,
    transpose_qg,
)
from .report import Check, Report, render_text, report_to_obj
from .serialize import (
    bicharacter_parts_from_obj,
    bicharacter_to_obj,
    coaction_parts_from_obj,
    coaction_to_obj,
    detect_kind,
    group_from_obj,
    hom_parts_from_obj,
    load_json,
    qg_from_obj,
    write_json,
)
from .tensorleg import (
    SpanMap,
    apply_map_to_leg,
    intertwiner_space,
    kron,
    residual_between,
    unitarity_defect,
)

__all__ = ["main"]

DEFAULT_CORPUS = os.path.join(os.path.dirname(__file__), "data", "groups")


class Tols:
    def __init__(self, override=None):
        self.pentagon = override if override is not None else PENTAGON_TOL
        self.closure = override if override is not None else CLOSURE_TOL
        self.equation = override if override is not None else EQUATION_TOL


def _record_failure(report, exc):
    residual = getattr(exc, "residual", None)
    value = float(residual) if residual is not None else float("inf")
    report.checks.append(Check(type(exc).__name__, value, 0.0))


def _qg_battery(report, prefix, build, tols):
    try:
        qg = build()
    except (CalculusError, ValueError) as exc:
        _record_failure(report, exc)
        return None
    report.add(prefix + "unitarity", qg.residuals["unitarity"], tols.pentagon)
    report.add(prefix + "pentagon", qg.residuals["pentagon"], tols.pentagon)
    report.add(prefix + "closure", qg.residuals["closure"], tols.closure)
    report.add(prefix + "comultMembership", qg.residuals["comultMembership"], tols.closure)
    if "antipode" in qg.residuals:
        report.add(prefix + "antipode", qg.residuals["antipode"], tols.equation)
    report.add(prefix + "coassociativity", coassociativity_residual(qg), tols.equation)
    dim, _ = intertwiner_space(qg.W, qg.dim)
    report.add_bool(prefix + "intertwinerDimensionOne", dim == 1)
    report.add_bool(prefix + "coinvariantDimensionOne", coinvariant_dimension(qg) == 1)
    try:
        witness = manageability_witness(qg)
        report.add(prefix + "manageability", witness.residual, tols.pentagon)
    except NotManageable as exc:
        _record_failure(report, exc)
    return qg


def _bicharacter_battery(report, prefix, source, target, v, tols):
    report.add(prefix + "unitarity", unitarity_defect(v), tols.pentagon)
    res = bicharacter_residuals(v, source, target)
    for key in ("comultSource", "comultTarget", "operatorSource", "operatorTarget"):
        report.add(prefix + key, res[key], tols.equation)
    report.add(prefix + "membership", res["membership"], tols.closure)
    bic = Bicharacter(source, target, v, res)
    try:
        report.add(prefix + "rInvariance", check_R_invariance(bic), tols.equation)
    except NotKacType as exc:
        _record_failure(report, exc)
    return bic if report.passed else None


def _hom_battery(report, kind, source, target, images, tols):
    if kind == "hopf":
        fmap = SpanMap(tuple(source.algC), tuple(images), source.dim, target.dim)
        hom = HopfHom(source, target, fmap)
        res = hom.verification_residuals()
        report.add("range", res["range"], tols.closure)
        report.add("unital", res["unital"], tols.pentagon)
        report.add("star", res["star"], tols.pentagon)
        report.add("multiplicative", res["multiplicative"], tols.equation)
        report.add("intertwining", res["intertwining"], tols.equation)
        if report.passed:
            try:
                v = from_hopf_hom(hom)
                _bicharacter_battery(report, "bicharacter.", v.source, v.target, v.V, tols)
            except CalculusError as exc:
                _record_failure(report, exc)
        return
    if kind == "right":
        fmap = SpanMap(
            tuple(source.algC), tuple(images), source.dim, source.dim * target.dim
        )
        res = right_hom_residuals(source, target, fmap)
        report.add("range", res["range"], tols.closure)
        report.add("coassocDiagram", res["coassocDiagram"], tols.equation)
        report.add("comoduleDiagram", res["comoduleDiagram"], tols.equation)
        report.add_bool("injective", res["injective"])
        report.add_bool("podles", res["podles"])
        if not report.passed:
            return
        hom = RightQGHom(source, target, fmap, res)
        try:
            v = bicharacter_from_right(hom)
            report.add("extraction", v.residuals["extraction"], tols.equation)
            back = right_from_bicharacter(v)
            rt = max(
                residual_between(fmap(x), back.deltaR(x)) for x in source.algC
            )
            report.add("roundTrip", rt, tols.equation)
            _bicharacter_battery(report, "bicharacter.", v.source, v.target, v.V, tols)
        except CalculusError as exc:
            _record_failure(report, exc)
        return
    fmap = SpanMap(
        tuple(source.algC), tuple(images), source.dim, target.dim * source.dim
    )
    res = left_hom_residuals(source, target, fmap)
    report.add("range", res["range"], tols.closure)
    report.add("coassocDiagram", res["coassocDiagram"], tols.equation)
    report.add("comoduleDiagram", res["comoduleDiagram"], tols.equation)
    report.add_bool("injective", res["injective"])
    report.add_bool("podles", res["podles"])
    if not report.passed:
        return
    hom = LeftQGHom(source, target, fmap, res)
    try:
        v = bicharacter_from_left(hom)
        report.add("extraction", v.residuals["extraction"], tols.equation)
        back = left_from_bicharacter(v)
        rt = max(residual_between(fmap(x), back.deltaL(x)) for x in source.algC)
        report.add("roundTrip", rt, tols.equation)
        _bicharacter_battery(report, "bicharacter.", v.source, v.target, v.V, tols)
    except CalculusError as exc:
        _record_failure(report, exc)


def _coaction_battery(report, basis, qg, images, tols, prefix=""):
    hd = basis[0].shape[0]
    gamma = SpanMap(tuple(basis), tuple(images), hd, hd * qg.dim)
    try:
        co = check_coaction(gamma, list(basis), qg, tol=tols.equation)
    except CalculusError as exc:
        _record_failure(report, exc)
        return None
    report.add(prefix + "wellDefined", co.residuals["wellDefined"], tols.equation)
    report.add(prefix + "closure", co.residuals["closure"], tols.closure)
    report.add(prefix + "range", co.residuals["range"], tols.closure)
    report.add(prefix + "homomorphism", co.residuals["homomorphism"], tols.equation)
    report.add(prefix + "coassociativity", co.residuals["coassociativity"], tols.equation)
    report.add_bool(prefix + "injective", True)
    report.add_bool(prefix + "podles", True)
    return co


def _emit(report, args, multi=False):
    if multi:
        obj = {
            "subjects": [report_to_obj(r) for r in report],
            "pass": all(r.passed for r in report),
            "wallTime": sum(r.wallTime for r in report),
        }
        text = "\n".join(render_text(r) for r in report)
        total = len(report)
        good = sum(1 for r in report if r.passed)
        text += f"\n{good}/{total} subjects pass"
    else:
        obj = report_to_obj(report)
        text = render_text(report)
    out = text if args.text else json.dumps(obj, indent=2)
    print(out)
    if getattr(args, "report_out", None):
        with open(args.report_out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")


def cmd_verify(args):
    tols = Tols(args.tol)
    obj = load_json(args.path)
    base = os.path.dirname(args.path) or "."
    report = Report(subject=os.path.basename(args.path))
    t0 = time.perf_counter()
    try:
        if args.kind == "qg":
            _qg_battery(report, "", lambda: qg_from_obj(obj, base), tols)
        elif args.kind == "bicharacter":
            source, target, v = bicharacter_parts_from_obj(obj, base)
            _bicharacter_battery(report, "", source, target, v, tols)
        elif args.kind == "hom":
            kind, source, target, images = hom_parts_from_obj(obj, base)
            _hom_battery(report, kind, source, target, images, tols)
        else:
            basis, qg, images = coaction_parts_from_obj(obj, base)
            _coaction_battery(report, basis, qg, images, tols)
    except CalculusError as exc:
        if isinstance(exc, ParseError):
            raise
        _record_failure(report, exc)
    report.wallTime = time.perf_counter() - t0
    _emit(report, args)
    return 0 if report.passed else 1


def _load_bicharacter_file(path, report, tols):
    obj = load_json(path)
    base = os.path.dirname(path) or "."
    source, target, v = bicharacter_parts_from_obj(obj, base)
    return check_bicharacter(v, source, target, tol=tols.equation)


def cmd_compose(args):
    tols = Tols(args.tol)
    report = Report(subject="compose")
    t0 = time.perf_counter()
    try:
        first = _load_bicharacter_file(args.first, report, tols)
        second = _load_bicharacter_file(args.second, report, tols)
        result = compose(first, second, tol=tols.equation)
    except SourceTargetMismatch:
        raise
    except CalculusError as exc:
        if isinstance(exc, ParseError):
            raise
        _record_failure(report, exc)
        report.wallTime = time.perf_counter() - t0
        _emit(report, args)
        return 1
    report.add("extraction", result.residuals["extraction"], tols.equation)
    _bicharacter_battery(report, "", result.source, result.target, result.V, tols)
    report.wallTime = time.perf_counter() - t0
    if args.out:
        write_json(args.out, bicharacter_to_obj(result))
    _emit(report, args)
    return 0 if report.passed else 1


def cmd_dual(args):
    tols = Tols(args.tol)
    report = Report(subject="dual")
    t0 = time.perf_counter()
    try:
        v = _load_bicharacter_file(args.path, report, tols)
        result = dual_bicharacter(v)
    except CalculusError as exc:
        if isinstance(exc, ParseError):
            raise
        _record_failure(report, exc)
        report.wallTime = time.perf_counter() - t0
        _emit(report, args)
        return 1
    _bicharacter_battery(report, "", result.source, result.target, result.V, tols)
    report.wallTime = time.perf_counter() - t0
    if args.out:
        write_json(args.out, bicharacter_to_obj(result))
    _emit(report, args)
    return 0 if report.passed else 1


def _right_hom_from_file(path, tols):
    obj = load_json(path)
    base = os.path.dirname(path) or "."
    if detect_kind(obj) == "bicharacter":
        source, target, v = bicharacter_parts_from_obj(obj, base)
        return right_from_bicharacter(check_bicharacter(v, source, target, tol=tols.equation))
    kind, source, target, images = hom_parts_from_obj(obj, base)
    if kind == "right":
        fmap = SpanMap(
            tuple(source.algC), tuple(images), source.dim, source.dim * target.dim
        )
        return check_right_hom(source, target, fmap, tol=tols.equation)
    if kind == "hopf":
        fmap = SpanMap(tuple(source.algC), tuple(images), source.dim, target.dim)
        hom = HopfHom(source, target, fmap)
        return right_from_bicharacter(from_hopf_hom(hom))
    fmap = SpanMap(
        tuple(source.algC), tuple(images), source.dim, target.dim * source.dim
    )
    dl = check_left_hom(source, target, fmap, tol=tols.equation)
    return right_from_bicharacter(bicharacter_from_left(dl))


def cmd_induce(args):
    tols = Tols(args.tol)
    report = Report(subject="induce")
    t0 = time.perf_counter()
    try:
        obj = load_json(args.coaction)
        base = os.path.dirname(args.coaction) or "."
        basis, qg, images = coaction_parts_from_obj(obj, base)
        co = _coaction_battery(report, basis, qg, images, tols, prefix="input.")
        if co is None or not report.passed:
            report.wallTime = time.perf_counter() - t0
            _emit(report, args)
            return 1
        hom = _right_hom_from_file(args.hom, tols)
        induced = induce_coaction(co, hom, tol=tols.equation)
    except SourceTargetMismatch:
        raise
    except CalculusError as exc:
        if isinstance(exc, ParseError):
            raise
        _record_failure(report, exc)
        report.wallTime = time.perf_counter() - t0
        _emit(report, args)
        return 1
    report.add("solve", induced.residuals["solve"], tols.equation)
    report.add_bool("uniqueRank", induced.residuals["uniqueRank"])
    for key in ("wellDefined", "closure", "range", "homomorphism", "coassociativity"):
        tolerance = tols.closure if key in ("closure", "range") else tols.equation
        report.add(key, induced.residuals[key], tolerance)
    report.wallTime = time.perf_counter() - t0
    if args.out:
        write_json(args.out, coaction_to_obj(induced))
    _emit(report, args)
    return 0 if report.passed else 1


def _group_subject(report, g, tols):
    c0 = _qg_battery(report, "c0.", lambda: qg_from_group(g, "c0"), tols)
    cstar = _qg_battery(report, "cstar.", lambda: qg_from_group(g, "cstar"), tols)
    if c0 is None or cstar is None:
        return
    try:
        _, wt = transpose_qg(c0)
        report.add("transpose.dualSideEquation", wt.residuals["dualSideEquation"], tols.pentagon)
        report.add(
            "transpose.flippedComultEquation",
            wt.residuals["flippedComultEquation"],
            tols.pentagon,
        )
    except CalculusError as exc:
        _record_failure(report, exc)
    double = dual_qg(dual_qg(c0))
    report.add("doubleDual", residual_between(double.W, c0.W), 0.0)
    report.add("identityRInvariance", check_R_invariance(identity(c0)), tols.equation)
    if g.is_abelian():
        dual_group, phases, m = character_group(g)
        n = g.order
        f = np.array(
            [[np.exp(2j * np.pi * phases[k][a] / m) for a in range(n)] for k in range(n)]
        ) / np.sqrt(n)
        ff = kron(f, f)
        res = residual_between(
            ff @ cstar.W @ ff.conj().T, qg_from_group(dual_group, "c0").W
        )
        report.add("fourier", res, tols.equation)


def _hom_chain_subject(report, groups, tols):
    z2, z4, s3 = groups["Z2"], groups["Z4"], groups["S3"]
    q42 = group_hom(z4, z2, (0, 1, 0, 1))
    i24 = group_hom(z2, z4, (0, 2))
    sgn = group_hom(s3, z2, (0, 1, 1, 0, 0, 1))
    t23 = group_hom(z2, s3, (0, 1))

    for phi, label in ((q42, "q42"), (i24, "i24"), (sgn, "sgn")):
        fc = hom_to_hopf(phi, "c0")
        fs = hom_to_hopf(phi, "cstar")
        report.add(f"dualHom.{label}", dual_hopf_relation(fc, fs), tols.equation)

    for picture in ("c0", "cstar"):
        p = picture + "."
        if picture == "c0":
            va = from_hopf_hom(hom_to_hopf(q42, "c0"))
            vb = from_hopf_hom(hom_to_hopf(i24, "c0"))
            vc = from_hopf_hom(hom_to_hopf(sgn, "c0"))
        else:
            va = from_hopf_hom(hom_to_hopf(i24, "cstar"))
            vb = from_hopf_hom(hom_to_hopf(q42, "cstar"))
            vc = from_hopf_hom(hom_to_hopf(t23, "cstar"))
        report.add(
            p + "identityLeft",
            residual_between(compose(va, identity(va.target)).V, va.V),
            tols.equation,
        )
        report.add(
            p + "identityRight",
            residual_between(compose(identity(va.source), va).V, va.V),
            tols.equation,
        )
        lhs = compose(compose(va, vb), vc)
        rhs = compose(va, compose(vb, vc))
        report.add(p + "associativity", residual_between(lhs.V, rhs.V), tols.equation)
        ab = compose(va, vb)
        lhs2 = dual_bicharacter(ab)
        rhs2 = compose(dual_bicharacter(vb), dual_bicharacter(va))
        report.add(p + "dualContravariance", residual_between(lhs2.V, rhs2.V), tols.equation)

        dr = right_from_bicharacter(va)
        v_rt = bicharacter_from_right(dr)
        report.add(p + "roundTripRight", residual_between(v_rt.V, va.V), tols.equation)
        dl = left_from_bicharacter(va)
        v_lt = bicharacter_from_left(dl)
        report.add(p + "roundTripLeft", residual_between(v_lt.V, va.V), tols.equation)
        square, same = check_left_right_compatibility(dl, dr, tol=tols.equation)
        report.add(p + "diagram56", square, tols.equation)
        report.add_bool(p + "diagram57Match", same)
        if picture == "c0":
            v0 = from_hopf_hom(hom_to_hopf(trivial_hom(z4, z2), "c0"))
            dr0 = right_from_bicharacter(v0)
            square2, same2 = check_left_right_compatibility(dl, dr0, tol=tols.equation)
            report.add(p + "diagram56Cross", square2, tols.equation)
            report.add_bool(p + "diagram57Mismatch", not same2)

        beta = right_from_bicharacter(vb)
        report.add(p + "inducedChain", compose_functors_check(dr, beta), tols.equation)

        fprime = hom_to_hopf(i24 if picture == "c0" else q42, picture)
        lhs3 = compose(va, from_hopf_hom(fprime)).V
        rhs3, _ = apply_map_to_leg(va.V, va.space, 2, fprime.map)
        report.add(p + "hopfComposeFormula", residual_between(lhs3, rhs3), tols.equation)

        regular = check_corepresentation(va.source.W, va.source)
        pushed = pushforward_corep(regular, va)
        report.add(p + "regularPushforward", residual_between(pushed.X, va.V), tols.equation)


def cmd_suite(args):
    tols = Tols(args.tol)
    corpus = args.corpus or DEFAULT_CORPUS
    if not os.path.isdir(corpus):
        raise ParseError(f"corpus directory {corpus} does not exist")
    files = sorted(f for f in os.listdir(corpus) if f.endswith(".json"))
    reports = []
    groups = {}
    for fname in files:
        path = os.path.join(corpus, fname)
        report = Report(subject=fname)
        t0 = time.perf_counter()
        try:
            obj = load_json(path)
            kind = detect_kind(obj)
            base = corpus
            if kind == "group":
                g = group_from_obj(obj, base)
                _group_subject(report, g, tols)
                if report.passed:
                    groups[g.name or os.path.splitext(fname)[0]] = g
            elif kind == "qg":
                _qg_battery(report, "", lambda: qg_from_obj(obj, base), tols)
            elif kind == "bicharacter":
                source, target, v = bicharacter_parts_from_obj(obj, base)
                _bicharacter_battery(report, "", source, target, v, tols)
            elif kind == "hom":
                hkind, source, target, images = hom_parts_from_obj(obj, base)
                _hom_battery(report, hkind, source, target, images, tols)
            else:
                basis, qg, images = coaction_parts_from_obj(obj, base)
                _coaction_battery(report, basis, qg, images, tols)
        except CalculusError as exc:
            _record_failure(report, exc)
        report.wallTime = time.perf_counter() - t0
        reports.append(report)
    if not files:
        print("warning: no subjects found in " + corpus, file=sys.stderr)
    if all(name in groups for name in ("Z2", "Z4", "S3")):
        report = Report(subject="homChains")
        t0 = time.perf_counter()
        try:
            _hom_chain_subject(report, groups, tols)
        except CalculusError as exc:
            _record_failure(report, exc)
        report.wallTime = time.perf_counter() - t0
        reports.append(report)
    _emit(reports, args, multi=True)
    return 0 if all(r.passed for r in reports) else 1


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="override all tolerances")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--json", action="store_true", help="JSON output (default)")
    mode.add_argument("--text", action="store_true", help="human-readable output")
    common.add_argument(
        "--out", default=None, help="write the produced object (compose/dual/induce) here"
    )
    common.add_argument(
        "--report-out", default=None, help="also write the report to this path"
    )

    parser = argparse.ArgumentParser(
        prog="qgcalc",
        description="verification calculus for finite quantum groups given by multiplicative unitaries",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="verify one subject file")
    p.add_argument("path")
    p.add_argument("kind", choices=["qg", "bicharacter", "hom", "coaction"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "compose", parents=[common], help="compose two bicharacter files, first then second"
    )
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("dual", parents=[common], help="dualize a bicharacter file")
    p.add_argument("path")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser(
        "induce", parents=[common], help="induce a coaction along a hom or bicharacter"
    )
    p.add_argument("coaction")
    p.add_argument("hom")
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("suite", parents=[common], help="run the corpus battery")
    p.add_argument("corpus", nargs="?", default=None)
    p.set_defaults(func=cmd_suite)

    return parser


def main(argv=None):
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SourceTargetMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CalculusError as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
