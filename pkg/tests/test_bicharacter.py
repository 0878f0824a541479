"""Bicharacter axioms, category laws, and the duality functor."""

import numpy as np
import pytest

import qgcalc as q
from qgcalc.bicharacter import bicharacter_residuals
from qgcalc.errors import (
    BicharacterViolation,
    HopfHomViolation,
    SourceTargetMismatch,
)
from qgcalc.tensorleg import flip_unitary, kron, residual_between

RNG = np.random.default_rng(91514)


def c0(g):
    return q.qg_from_group(g, "c0")


def cstar(g):
    return q.qg_from_group(g, "cstar")


@pytest.fixture(scope="module")
def homs(z2, z4, s3):
    return {
        "q42": q.group_hom(z4, z2, (0, 1, 0, 1)),
        "i24": q.group_hom(z2, z4, (0, 2)),
        "sgn": q.group_hom(s3, z2, (0, 1, 1, 0, 0, 1)),
        "t23": q.group_hom(z2, s3, (0, 1)),
    }


def test_identity_arrow_is_w(z4):
    ident = q.identity(c0(z4))
    np.testing.assert_array_equal(ident.V, c0(z4).W)
    assert max(ident.residuals.values()) <= 1e-12


def test_hopf_hom_bicharacter_entry_rule(z2, z4, homs):
    """Pulled back along q: Z4 -> Z2 the unitary is block diagonal over the
    second leg: V[(i,g),(j,g')] = delta_{g,g'} delta_{i, j+q(g)}."""
    va = q.from_hopf_hom(q.hom_to_hopf(homs["q42"], "c0"))
    expect = np.zeros((8, 8), dtype=complex)
    for g in range(4):
        for i in range(2):
            for j in range(2):
                if i == (j + homs["q42"].map[g]) % 2:
                    expect[i * 4 + g, j * 4 + g] = 1.0
    np.testing.assert_array_equal(va.V, expect)
    assert va.source.same_unitary(c0(z2))
    assert va.target.same_unitary(c0(z4))


def test_from_hopf_hom_rejects_non_hom(z2):
    # the zero map is linear but not unital, so it is no Hopf *-morphism
    c2 = c0(z2)
    zero, _ = q.span_map_from_pairs([(x, np.zeros((2, 2), dtype=complex)) for x in c2.algC])
    with pytest.raises(HopfHomViolation):
        q.from_hopf_hom(q.HopfHom(c2, c2, zero))


def test_random_unitary_is_not_a_bicharacter(z2):
    c2 = c0(z2)
    u, _ = np.linalg.qr(RNG.standard_normal((4, 4)) + 1j * RNG.standard_normal((4, 4)))
    with pytest.raises(BicharacterViolation):
        q.check_bicharacter(u, c2, c2)


def test_flip_is_not_a_bicharacter(z2):
    c2 = c0(z2)
    with pytest.raises(BicharacterViolation):
        q.check_bicharacter(flip_unitary(2, 2), c2, c2)


def test_non_unitary_rejected(z2):
    c2 = c0(z2)
    with pytest.raises(ValueError):
        q.check_bicharacter(np.ones((4, 4)), c2, c2)
    with pytest.raises(ValueError):
        q.check_bicharacter(np.eye(8), c2, c2)


def test_abstract_and_operator_equations_agree(z2, z4, s3, homs):
    """The comultiplication form and the operator form are computed by
    different arithmetic; they must pass and fail together."""
    eq_keys = ("comultSource", "comultTarget")
    op_keys = ("operatorSource", "operatorTarget")
    subjects = [q.identity(c0(g)) for g in (z2, z4, s3)]
    subjects += [q.from_hopf_hom(q.hom_to_hopf(homs["q42"], pic)) for pic in ("c0", "cstar")]
    for v in subjects:
        res = bicharacter_residuals(v.V, v.source, v.target)
        assert max(res[k] for k in eq_keys) <= 1e-9
        assert max(res[k] for k in op_keys) <= 1e-9
        assert res["membership"] <= 1e-8
    # and a matrix failing one family fails the other
    c2 = c0(z2)
    u, _ = np.linalg.qr(RNG.standard_normal((4, 4)) + 1j * RNG.standard_normal((4, 4)))
    res = bicharacter_residuals(u, c2, c2)
    assert max(res[k] for k in eq_keys) > 1e-6
    assert max(res[k] for k in op_keys) > 1e-6


# --- composition --------------------------------------------------------


def test_identity_laws(z2, z4, homs):
    va = q.from_hopf_hom(q.hom_to_hopf(homs["q42"], "c0"))
    left = q.compose(q.identity(va.source), va)
    right = q.compose(va, q.identity(va.target))
    assert residual_between(left.V, va.V) <= 1e-9
    assert residual_between(right.V, va.V) <= 1e-9


def test_trivial_composite_is_the_identity_matrix(homs):
    # q after i kills Z2, so the composite bicharacter collapses to 1 (x) 1
    va = q.from_hopf_hom(q.hom_to_hopf(homs["q42"], "c0"))
    vb = q.from_hopf_hom(q.hom_to_hopf(homs["i24"], "c0"))
    comp = q.compose(va, vb)
    np.testing.assert_allclose(comp.V, np.eye(4), atol=1e-12)
    assert comp.residuals["extraction"] <= 1e-12

    wa = q.from_hopf_hom(q.hom_to_hopf(homs["i24"], "cstar"))
    wb = q.from_hopf_hom(q.hom_to_hopf(homs["q42"], "cstar"))
    comp2 = q.compose(wa, wb)
    np.testing.assert_allclose(comp2.V, np.eye(4), atol=1e-12)


def test_composition_is_associative(homs):
    va = q.from_hopf_hom(q.hom_to_hopf(homs["q42"], "c0"))
    vb = q.from_hopf_hom(q.hom_to_hopf(homs["i24"], "c0"))
    vc = q.from_hopf_hom(q.hom_to_hopf(homs["sgn"], "c0"))
    lhs = q.compose(q.compose(va, vb), vc)
    rhs = q.compose(va, q.compose(vb, vc))
    assert residual_between(lhs.V, rhs.V) <= 1e-9


def test_compose_rejects_mismatched_middle(homs):
    va = q.from_hopf_hom(q.hom_to_hopf(homs["q42"], "c0"))
    with pytest.raises(SourceTargetMismatch):
        q.compose(va, va)


# --- duality ------------------------------------------------------------


def test_dual_swaps_and_involutes(z4, homs):
    va = q.from_hopf_hom(q.hom_to_hopf(homs["q42"], "c0"))
    dv = q.dual_bicharacter(va)
    assert dv.source.same_unitary(q.dual_qg(va.target))
    assert dv.target.same_unitary(q.dual_qg(va.source))
    np.testing.assert_array_equal(q.dual_bicharacter(dv).V, va.V)


def test_dual_of_pullback_is_pushforward(homs):
    # the two Hopf lifts of one group hom are exchanged by the duality functor
    va = q.from_hopf_hom(q.hom_to_hopf(homs["q42"], "c0"))
    vhat = q.from_hopf_hom(q.hom_to_hopf(homs["q42"], "cstar"))
    np.testing.assert_array_equal(q.dual_bicharacter(va).V, vhat.V)


def test_dual_is_contravariant(homs):
    va = q.from_hopf_hom(q.hom_to_hopf(homs["q42"], "c0"))
    vb = q.from_hopf_hom(q.hom_to_hopf(homs["i24"], "c0"))
    lhs = q.dual_bicharacter(q.compose(va, vb))
    rhs = q.compose(q.dual_bicharacter(vb), q.dual_bicharacter(va))
    assert residual_between(lhs.V, rhs.V) <= 1e-9


def test_r_invariance_of_corpus_bicharacters(z2, z4, s3, homs):
    for g in (z2, z4, s3):
        assert q.check_R_invariance(q.identity(c0(g))) <= 1e-9
    for name in ("q42", "i24", "sgn", "t23"):
        for pic in ("c0", "cstar"):
            v = q.from_hopf_hom(q.hom_to_hopf(homs[name], pic))
            assert q.check_R_invariance(v) <= 1e-9, (name, pic)
