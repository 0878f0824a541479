"""Release gate: nine corpus-wide verification criteria, one test each.

Every test sweeps its criterion over the shipped group corpus and prints
a single pass/fail line with the worst residual observed, so running
pytest tests/test_acceptance.py -v -s reads as the release checklist.
"""

import numpy as np
import pytest

import qgcalc as q
from qgcalc.bicharacter import (
    bicharacter_residuals,
    check_R_invariance,
    compose,
    dual_bicharacter,
    from_hopf_hom,
    identity,
)
from qgcalc.coactions import (
    check_corepresentation,
    comultiplication_coaction,
    compose_functors_check,
    conjugation_coaction,
    induce_coaction,
    pushforward_corep,
    trivial_coaction,
)
from qgcalc.groups import group_hom, hom_to_hopf, qg_from_group, trivial_hom
from qgcalc.homviews import (
    bicharacter_from_left,
    bicharacter_from_right,
    check_left_right_compatibility,
    dual_hopf_relation,
    left_from_bicharacter,
    right_from_bicharacter,
)
from qgcalc.qgroup import (
    coassociativity_residual,
    coinvariant_dimension,
    transpose_qg,
)
from qgcalc.tensorleg import (
    apply_map_to_leg,
    flip_unitary,
    intertwiner_space,
    kron,
    residual_between,
)

PICTURES = ("c0", "cstar")
CHAIN_GROUPS = ("Z2", "Z4", "Z2xZ2", "S3")


def _line(n, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"\ncriterion {n}: {status} ({detail})")
    assert ok, f"criterion {n}: {detail}"


def _units(n):
    out = []
    for i in range(n):
        for j in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = 1.0
            out.append(e)
    return out


@pytest.fixture(scope="module")
def hom_family(corpus):
    """Generating homomorphisms among Z2, Z4, the Klein group, and S3.

    Every group occurs as a source and as a target, so chains reach all
    four objects in both pictures.
    """
    z2, z4, v4, s3 = (corpus[n] for n in CHAIN_GROUPS)
    return {
        "q42": group_hom(z4, z2, (0, 1, 0, 1)),
        "i24": group_hom(z2, z4, (0, 2)),
        "sgn": group_hom(s3, z2, (0, 1, 1, 0, 0, 1)),
        "t23": group_hom(z2, s3, (0, 1)),
        "diagV": group_hom(z2, v4, (0, 3)),
        "projV": group_hom(v4, z2, (0, 1, 0, 1)),
        "q4V": group_hom(z4, v4, (0, 1, 0, 1)),
        "swapV": group_hom(v4, v4, (0, 2, 1, 3)),
        "tr42": trivial_hom(z4, z2),
    }


@pytest.fixture(scope="module")
def bichars(corpus, hom_family):
    """The corpus bicharacters: one per family hom per picture, plus the
    identity arrow of each of the eight quantum groups."""
    out = []
    for pic in PICTURES:
        for phi in hom_family.values():
            out.append(from_hopf_hom(hom_to_hopf(phi, pic)))
        for name in CHAIN_GROUPS:
            out.append(identity(qg_from_group(corpus[name], pic)))
    return out


def _composable_pairs(bics):
    return [
        (a, b)
        for a in bics
        for b in bics
        if a.target.same_unitary(b.source)
    ]


def test_criterion_1_pentagon_closure_coassociativity(corpus):
    worst = {"pentagon": 0.0, "closure": 0.0, "coassociativity": 0.0}
    count = 0
    for g in corpus.values():
        for pic in PICTURES:
            qg = qg_from_group(g, pic)
            worst["pentagon"] = max(worst["pentagon"], qg.residuals["pentagon"])
            worst["closure"] = max(worst["closure"], qg.residuals["closure"])
            worst["coassociativity"] = max(
                worst["coassociativity"], coassociativity_residual(qg)
            )
            count += 1
    ok = (
        count == 26
        and worst["pentagon"] <= 1e-10
        and worst["closure"] <= 1e-8
        and worst["coassociativity"] <= 1e-9
    )
    _line(
        1,
        ok,
        f"{count} quantum groups; pentagon {worst['pentagon']:.1e} <= 1e-10, "
        f"closure {worst['closure']:.1e} <= 1e-8, "
        f"coassociativity {worst['coassociativity']:.1e} <= 1e-9",
    )


def test_criterion_2_invariant_dimensions(corpus):
    bad = []
    count = 0
    for name, g in corpus.items():
        for pic in PICTURES:
            qg = qg_from_group(g, pic)
            idim, _ = intertwiner_space(qg.W, qg.dim)
            cdim = coinvariant_dimension(qg)
            count += 1
            if idim != 1 or cdim != 1:
                bad.append((name, pic, idim, cdim))
    ok = count == 26 and not bad
    _line(
        2,
        ok,
        f"intertwiner and coinvariant dimension 1 for all {count} unitaries"
        + (f"; exceptions {bad}" if bad else ""),
    )


def test_criterion_3_two_route_agreement(bichars):
    rng = np.random.default_rng(31337)
    disagree = 0
    worst_membership = 0.0
    valid = 0
    for v in bichars:
        res = bicharacter_residuals(v.V, v.source, v.target)
        abstract_ok = max(res["comultSource"], res["comultTarget"]) <= 1e-9
        operator_ok = max(res["operatorSource"], res["operatorTarget"]) <= 1e-9
        if abstract_ok != operator_ok:
            disagree += 1
        if abstract_ok:
            valid += 1
        worst_membership = max(worst_membership, res["membership"])
    # corrupted candidates must fail along both routes as well
    rejected = 0
    probes = 0
    for v in bichars[:4]:
        ds, dt = v.source.dim, v.target.dim
        gauss = rng.standard_normal((ds * dt, ds * dt))
        wrong, _ = np.linalg.qr(gauss + 1j * rng.standard_normal(gauss.shape))
        for cand in (flip_unitary(ds, dt), wrong):
            res = bicharacter_residuals(cand, v.source, v.target)
            abstract_ok = max(res["comultSource"], res["comultTarget"]) <= 1e-9
            operator_ok = max(res["operatorSource"], res["operatorTarget"]) <= 1e-9
            probes += 1
            if abstract_ok != operator_ok:
                disagree += 1
            if not abstract_ok and not operator_ok:
                rejected += 1
    ok = (
        disagree == 0
        and valid == len(bichars)
        and rejected == probes
        and worst_membership <= 1e-8
    )
    _line(
        3,
        ok,
        f"both routes agree on {len(bichars)} bicharacters and {probes} "
        f"corrupted probes; membership {worst_membership:.1e} <= 1e-8",
    )


def test_criterion_4_category_laws(bichars):
    worst_extraction = 0.0
    worst_identity = 0.0
    for v in bichars:
        left = compose(v, identity(v.target))
        right = compose(identity(v.source), v)
        worst_identity = max(
            worst_identity,
            residual_between(left.V, v.V),
            residual_between(right.V, v.V),
        )
    pairs = _composable_pairs(bichars)
    cache = {}
    for i, (a, b) in enumerate(pairs):
        ab = compose(a, b)
        worst_extraction = max(worst_extraction, ab.residuals["extraction"])
        cache[i] = ab
    index = {id(v): v for v in bichars}
    worst_assoc = 0.0
    triples = 0
    for i, (a, b) in enumerate(pairs):
        for j, (b2, c) in enumerate(pairs):
            if b2 is not b:
                continue
            triples += 1
            lhs = compose(cache[i], c)
            rhs = compose(a, cache[j])
            worst_assoc = max(worst_assoc, residual_between(lhs.V, rhs.V))
    ok = (
        worst_extraction <= 1e-9
        and worst_identity <= 1e-9
        and worst_assoc <= 1e-9
        and triples > 0
    )
    _line(
        4,
        ok,
        f"{len(pairs)} composable pairs, {triples} triples; extraction "
        f"{worst_extraction:.1e}, identity laws {worst_identity:.1e}, "
        f"associativity {worst_assoc:.1e}, all <= 1e-9",
    )


def all_group_homs(g, h):
    """Every homomorphism g -> h, found by exhaustive image-table search."""
    n, m = g.order, h.order
    gt = np.asarray(g.table)
    ht = np.asarray(h.table)
    maps = np.indices((m,) * n).reshape(n, -1).T
    ok = np.ones(maps.shape[0], dtype=bool)
    for a in range(n):
        for b in range(n):
            ok &= maps[:, gt[a, b]] == ht[maps[:, a], maps[:, b]]
    return [group_hom(g, h, tuple(int(x) for x in row)) for row in maps[ok]]


def test_criterion_5_duality_functor(corpus, bichars):
    worst_double = 0.0
    for v in bichars:
        dd = dual_bicharacter(dual_bicharacter(v))
        worst_double = max(worst_double, residual_between(dd.V, v.V))
        assert dd.source.same_unitary(v.source)
        assert dd.target.same_unitary(v.target)
    pairs = _composable_pairs(bichars)
    worst_contra = 0.0
    for a, b in pairs:
        lhs = dual_bicharacter(compose(a, b))
        rhs = compose(dual_bicharacter(b), dual_bicharacter(a))
        worst_contra = max(worst_contra, residual_between(lhs.V, rhs.V))
    groups4 = [corpus[n] for n in CHAIN_GROUPS]
    homs = []
    for g in groups4:
        for h in groups4:
            homs.extend(all_group_homs(g, h))
    # classical counts pin the exhaustive search: 10 endomorphisms of S3,
    # 16 of the Klein group, 4 of Z4, and 78 homomorphisms in total
    z4, v4, s3 = corpus["Z4"], corpus["Z2xZ2"], corpus["S3"]
    assert len(all_group_homs(s3, s3)) == 10
    assert len(all_group_homs(v4, v4)) == 16
    assert len(all_group_homs(z4, z4)) == 4
    assert len(homs) == 78
    worst_dual = 0.0
    for phi in homs:
        fc = hom_to_hopf(phi, "c0")
        fs = hom_to_hopf(phi, "cstar")
        worst_dual = max(worst_dual, dual_hopf_relation(fc, fs))
    ok = worst_double <= 1e-9 and worst_contra <= 1e-9 and worst_dual <= 1e-9
    _line(
        5,
        ok,
        f"double dual {worst_double:.1e}, contravariance over {len(pairs)} "
        f"pairs {worst_contra:.1e}, dual-hom relation over {len(homs)} group "
        f"homs {worst_dual:.1e}, all <= 1e-9",
    )


def test_criterion_6_r_invariance(bichars):
    worst = 0.0
    for v in bichars:
        worst = max(worst, check_R_invariance(v))
    ok = worst <= 1e-9
    _line(6, ok, f"R (x) R invariance over {len(bichars)} bicharacters {worst:.1e} <= 1e-9")


def test_criterion_7_round_trips_and_compatibility(bichars):
    worst_rt = 0.0
    rights = {}
    lefts = {}
    for k, v in enumerate(bichars):
        dr = right_from_bicharacter(v)
        dl = left_from_bicharacter(v)
        rights[k] = dr
        lefts[k] = dl
        worst_rt = max(
            worst_rt,
            residual_between(bicharacter_from_right(dr).V, v.V),
            residual_between(bicharacter_from_left(dl).V, v.V),
        )
    worst_square = 0.0
    matches = 0
    mismatches = 0
    flag_errors = 0
    for i, v1 in enumerate(bichars):
        for j, v2 in enumerate(bichars):
            if not v1.source.same_unitary(v2.source):
                continue
            square, same = check_left_right_compatibility(lefts[i], rights[j])
            worst_square = max(worst_square, square)
            expect = (
                v1.target.same_unitary(v2.target)
                and residual_between(v1.V, v2.V) <= 1e-9
            )
            if same != expect:
                flag_errors += 1
            elif same:
                matches += 1
            else:
                mismatches += 1
    ok = (
        worst_rt <= 1e-9
        and worst_square <= 1e-9
        and flag_errors == 0
        and matches >= 1
        and mismatches >= 1
    )
    _line(
        7,
        ok,
        f"round trips {worst_rt:.1e} <= 1e-9; mixed square {worst_square:.1e} "
        f"<= 1e-9 on {matches + mismatches} common-source pairs "
        f"({matches} matching, {mismatches} mismatching, {flag_errors} wrong flags)",
    )


def test_criterion_8_induced_coactions(corpus, bichars):
    coactions = {}
    for name in CHAIN_GROUPS:
        for pic in PICTURES:
            qg = qg_from_group(corpus[name], pic)
            cos = [
                trivial_coaction(_units(2), qg),
                comultiplication_coaction(qg),
            ]
            if qg.dim <= 4:
                reg = check_corepresentation(qg.W, qg)
                cos.append(conjugation_coaction(reg))
            coactions[(name, pic)] = (qg, cos)
    worst_solve = 0.0
    rank_failures = 0
    inductions = 0
    for v in bichars:
        dr = right_from_bicharacter(v)
        for qg, cos in coactions.values():
            if not qg.same_unitary(dr.source):
                continue
            for co in cos:
                out = induce_coaction(co, dr)
                inductions += 1
                worst_solve = max(worst_solve, out.residuals["solve"])
                if not out.residuals["uniqueRank"]:
                    rank_failures += 1

    # the induction functors compose along the Z2 -> Z4 -> Z2 chain
    worst_chain = 0.0
    for pic in PICTURES:
        z2, z4 = corpus["Z2"], corpus["Z4"]
        if pic == "c0":
            va = from_hopf_hom(hom_to_hopf(group_hom(z4, z2, (0, 1, 0, 1)), pic))
            vb = from_hopf_hom(hom_to_hopf(group_hom(z2, z4, (0, 2)), pic))
        else:
            va = from_hopf_hom(hom_to_hopf(group_hom(z2, z4, (0, 2)), pic))
            vb = from_hopf_hom(hom_to_hopf(group_hom(z4, z2, (0, 1, 0, 1)), pic))
        worst_chain = max(
            worst_chain,
            compose_functors_check(right_from_bicharacter(va), right_from_bicharacter(vb)),
        )

    # composing with a Hopf arrow acts on the second leg of the unitary
    worst_formula = 0.0
    for pic in PICTURES:
        z2, z4 = corpus["Z2"], corpus["Z4"]
        if pic == "c0":
            va = from_hopf_hom(hom_to_hopf(group_hom(z4, z2, (0, 1, 0, 1)), pic))
            f = hom_to_hopf(group_hom(z2, z4, (0, 2)), pic)
        else:
            va = from_hopf_hom(hom_to_hopf(group_hom(z2, z4, (0, 2)), pic))
            f = hom_to_hopf(group_hom(z4, z2, (0, 1, 0, 1)), pic)
        lhs = compose(va, from_hopf_hom(f)).V
        rhs, _ = apply_map_to_leg(va.V, va.space, 2, f.map)
        worst_formula = max(worst_formula, residual_between(lhs, rhs))

    # the group-algebra regular corepresentation of Z4, pushed along the
    # dual of the mod-2 arrow, becomes the blockwise Z2 translation family
    z2, z4 = corpus["Z2"], corpus["Z4"]
    vq = from_hopf_hom(hom_to_hopf(group_hom(z4, z2, (0, 1, 0, 1)), "c0"))
    dv = dual_bicharacter(vq)
    reg = check_corepresentation(dv.source.W, dv.source)
    pushed = pushforward_corep(reg, dv)
    qmap = (0, 1, 0, 1)
    frozen = np.zeros((8, 8), dtype=complex)
    for b in range(4):
        e = np.zeros((4, 4), dtype=complex)
        e[b, b] = 1.0
        frozen += kron(e, q.translation_matrix(z2, z2.inv(qmap[b])))
    worst_push = residual_between(pushed.X, frozen)

    ok = (
        worst_solve <= 1e-9
        and rank_failures == 0
        and worst_chain <= 1e-9
        and worst_formula <= 1e-9
        and worst_push <= 1e-9
    )
    _line(
        8,
        ok,
        f"{inductions} inductions solve {worst_solve:.1e}, functor chain "
        f"{worst_chain:.1e}, second-leg formula {worst_formula:.1e}, "
        f"regular pushforward {worst_push:.1e}, all <= 1e-9",
    )


def test_criterion_9_transpose(corpus):
    worst = 0.0
    for name in ("Z2", "Z4", "S3"):
        for pic in PICTURES:
            _, wt = transpose_qg(qg_from_group(corpus[name], pic))
            worst = max(
                worst,
                wt.residuals["dualSideEquation"],
                wt.residuals["flippedComultEquation"],
            )
    ok = worst <= 1e-10
    _line(9, ok, f"transpose bicharacter equations {worst:.1e} <= 1e-10")
