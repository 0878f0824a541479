"""Bicharacters: unitaries pairing the dual side of one quantum group
with another, the working notion of quantum group homomorphism.

Every bicharacter is kept with its source and target and the residuals of
the two defining equations.  Both the comultiplication form and the
pentagon-type operator form of the axioms are computed, through genuinely
different arithmetic, so their agreement is itself a check.
"""

import numpy as np

from .errors import BicharacterViolation, ExtractionFailure, HopfHomViolation, SourceTargetMismatch
from .qgroup import EQUATION_TOL, CLOSURE_TOL, dual_qg, unitary_antipode
from .tensorleg import (
    LegSpace,
    apply_map_to_leg,
    as_matrix,
    embed_on_legs,
    extract_trivial_legs,
    frob,
    kron,
    membership_residual,
    permute_legs,
    residual_between,
    unitarity_defect,
)

__all__ = [
    "Bicharacter",
    "check_bicharacter",
    "compose",
    "identity",
    "dual_bicharacter",
    "from_hopf_hom",
    "check_R_invariance",
]


class Bicharacter:
    """A verified unitary from Ĉ (x) A with its equation residuals."""

    def __init__(self, source, target, V, residuals):
        self.source = source
        self.target = target
        self.V = V
        self.residuals = dict(residuals)

    @property
    def space(self):
        return LegSpace((self.source.dim, self.target.dim))

    def __repr__(self):
        return f"Bicharacter({self.source.dim} -> {self.target.dim})"


def _pair_basis(left, right):
    return [kron(a, b) for a in left for b in right]


def bicharacter_residuals(v, c, a):
    """All five residuals of the bicharacter axioms for v against (c, a).

    Keys 'comultSource' and 'comultTarget' are the two comultiplication
    equations computed by applying the coefficient-space maps leg-wise;
    'operatorSource' and 'operatorTarget' are the pentagon-type operator
    equations; 'membership' locates v inside span(algChat) (x) span(algC).
    """
    v = as_matrix(v)
    dc, da = c.dim, a.dim
    if v.shape[0] != dc * da:
        raise ValueError(f"V has dim {v.shape[0]}, expected {dc * da}")
    space = LegSpace((dc, da))
    space_cca = LegSpace((dc, dc, da))
    space_caa = LegSpace((dc, da, da))

    # comultiplication form, leg-wise through the span maps
    lhs1 = apply_map_to_leg(v, space, 1, c.deltaChat)[0]
    v23 = embed_on_legs(v, space_cca, (2, 3))
    v13_cca = embed_on_legs(v, space_cca, (1, 3))
    r1 = residual_between(lhs1, v23 @ v13_cca)

    lhs2 = apply_map_to_leg(v, space, 2, a.deltaC)[0]
    v12 = embed_on_legs(v, space_caa, (1, 2))
    v13_caa = embed_on_legs(v, space_caa, (1, 3))
    r2 = residual_between(lhs2, v12 @ v13_caa)

    # operator form on the Hilbert-space level
    wc12 = embed_on_legs(c.W, space_cca, (1, 2))
    r3 = residual_between(v23 @ wc12, wc12 @ v13_cca @ v23)
    wa23 = embed_on_legs(a.W, space_caa, (2, 3))
    r4 = residual_between(wa23 @ v12, v12 @ v13_caa @ wa23)

    memb = membership_residual(_pair_basis(c.algChat, a.algC), v)
    return {
        "comultSource": r1,
        "comultTarget": r2,
        "operatorSource": r3,
        "operatorTarget": r4,
        "membership": memb,
    }


def check_bicharacter(v, c, a, tol=EQUATION_TOL, membership_tol=CLOSURE_TOL):
    """Verify v as a bicharacter from c to a; residuals travel with the result."""
    v = as_matrix(v)
    udef = unitarity_defect(v)
    if udef > 1e-10:
        raise ValueError(f"V is not unitary, defect {udef:.2e}")
    res = bicharacter_residuals(v, c, a)
    for key in ("comultSource", "comultTarget", "operatorSource", "operatorTarget"):
        if res[key] > tol:
            raise BicharacterViolation(
                f"{key} equation fails, residual {res[key]:.2e}", residual=res[key]
            )
    if res["membership"] > membership_tol:
        raise BicharacterViolation(
            f"V escapes the algebra pair span, residual {res['membership']:.2e}",
            residual=res["membership"],
        )
    return Bicharacter(c, a, v, res)


def identity(c):
    """The multiplicative unitary of c as the identity arrow at c."""
    return check_bicharacter(c.W, c, c)


def compose(vca, vab, tol=EQUATION_TOL):
    """Composition of arrows: first vca, then vab.

    Conjugating vab's leg pair through vca concentrates the composite on
    legs 1 and 3; the middle leg must come out trivial, and the extraction
    residual is the certificate.
    """
    if not vca.target.same_unitary(vab.source):
        raise SourceTargetMismatch(
            f"middle objects differ: dim {vca.target.dim} vs {vab.source.dim} or unequal W"
        )
    dc = vca.source.dim
    da = vca.target.dim
    db = vab.target.dim
    space3 = LegSpace((dc, da, db))
    v12 = embed_on_legs(vca.V, space3, (1, 2))
    v23 = embed_on_legs(vab.V, space3, (2, 3))
    prod = v12.conj().T @ v23 @ v12 @ v23.conj().T
    factor, resid = extract_trivial_legs(prod, space3, {2})
    if resid > tol:
        raise ExtractionFailure(
            f"middle leg is not trivial, residual {resid:.2e}", residual=resid
        )
    out = check_bicharacter(factor, vca.source, vab.target)
    out.residuals["extraction"] = resid
    return out


def dual_bicharacter(v):
    """Flip-adjoint duality: an arrow from the dual target to the dual source.

    The matrix operation is a pure index shuffle, so applying it twice
    returns the original matrix exactly.
    """
    vhat = permute_legs(v.V.conj().T, v.space, (2, 1))
    return check_bicharacter(vhat, dual_qg(v.target), dual_qg(v.source))


def from_hopf_hom(f):
    """Bicharacter attached to a Hopf *-homomorphism: push the second leg of W.

    The map is applied through the coefficient expansion of W in the
    algebra-pair basis, matching how a slice-leg morphism acts on the
    multiplier level.
    """
    fres = f.verification_residuals()
    worst = max(fres.values())
    if worst > EQUATION_TOL:
        raise HopfHomViolation(
            f"hom fails verification, residual {worst:.2e}", residual=worst
        )
    c = f.source
    out, _ = apply_map_to_leg(c.W, c.space, 2, f.map)
    return check_bicharacter(out, c, f.target)


def check_R_invariance(v):
    """Residual of applying both unitary antipodes leg-wise to v.

    Kac-type antipodes are taken from the source's dual and the target;
    invariance of every bicharacter under them is the numeric face of the
    antipode-compatibility theorem.
    """
    r_hat = unitary_antipode(dual_qg(v.source))
    r_target = unitary_antipode(v.target)
    t1, sp1 = apply_map_to_leg(v.V, v.space, 1, r_hat)
    t2, _ = apply_map_to_leg(t1, sp1, 2, r_target)
    return frob(t2 - v.V) / frob(v.V)
