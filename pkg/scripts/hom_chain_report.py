"""Drive the calculus end to end on the Z2 / Z4 / Klein / S3 hom family.

Builds the four groups in one picture, turns a generating set of group
homomorphisms into bicharacters, then exercises composition, duality,
the right/left round trips, and one induced coaction, printing the worst
residual of each stage.  A quick smoke run of the Python API; the qgcalc
command line covers the same ground file-by-file.
"""

import argparse

from qgcalc.bicharacter import (
    check_R_invariance,
    compose,
    dual_bicharacter,
    from_hopf_hom,
    identity,
)
from qgcalc.coactions import comultiplication_coaction, induce_coaction
from qgcalc.groups import group_hom, hom_to_hopf, qg_from_group, standard_corpus
from qgcalc.homviews import (
    bicharacter_from_left,
    bicharacter_from_right,
    left_from_bicharacter,
    right_from_bicharacter,
)
from qgcalc.tensorleg import residual_between


def family(corpus):
    z2, z4, v4, s3 = (corpus[n] for n in ("Z2", "Z4", "Z2xZ2", "S3"))
    return {
        "q42": group_hom(z4, z2, (0, 1, 0, 1)),
        "i24": group_hom(z2, z4, (0, 2)),
        "sgn": group_hom(s3, z2, (0, 1, 1, 0, 0, 1)),
        "t23": group_hom(z2, s3, (0, 1)),
        "diagV": group_hom(z2, v4, (0, 3)),
        "projV": group_hom(v4, z2, (0, 1, 0, 1)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--picture", choices=["c0", "cstar"], default="c0")
    args = ap.parse_args()

    corpus = standard_corpus()
    arrows = {
        name: from_hopf_hom(hom_to_hopf(phi, args.picture))
        for name, phi in family(corpus).items()
    }

    rows = []
    worst = 0.0
    for name, v in arrows.items():
        rows.append((f"bicharacter {name}", max(v.residuals.values())))
        rows.append((f"R-invariance {name}", check_R_invariance(v)))
        dr = right_from_bicharacter(v)
        dl = left_from_bicharacter(v)
        rows.append(
            (
                f"round trips {name}",
                max(
                    residual_between(bicharacter_from_right(dr).V, v.V),
                    residual_between(bicharacter_from_left(dl).V, v.V),
                ),
            )
        )

    va, vb = arrows["q42"], arrows["i24"]
    comp = compose(va, vb)
    rows.append(("compose q42 * i24", comp.residuals["extraction"]))
    rows.append(
        (
            "identity laws",
            max(
                residual_between(compose(va, identity(va.target)).V, va.V),
                residual_between(compose(identity(va.source), va).V, va.V),
            ),
        )
    )
    dd = dual_bicharacter(dual_bicharacter(va))
    rows.append(("double dual", residual_between(dd.V, va.V)))

    start = comultiplication_coaction(va.source)
    induced = induce_coaction(start, right_from_bicharacter(va))
    rows.append(("induced coaction solve", induced.residuals["solve"]))

    width = max(len(label) for label, _ in rows)
    for label, value in rows:
        worst = max(worst, value)
        print(f"{label:<{width}}  {value:.2e}")
    print(f"{'worst':<{width}}  {worst:.2e}")
    return 0 if worst <= 1e-9 else 1


if __name__ == "__main__":
    raise SystemExit(main())
