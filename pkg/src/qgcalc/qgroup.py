"""Finite quantum groups presented by multiplicative unitaries.

A quantum group here is a unitary W on H (x) H passing the pentagon check,
together with the two operator algebras cut out by slicing W: slicing away
the first leg yields the function-algebra side, slicing away the second leg
the dual side.  Comultiplications act by conjugation with W.

Only Kac-type data is handled; constructions needing the antipode reject
anything else with NotKacType instead of guessing modular corrections.
"""

import numpy as np

from .errors import (
    AlgebraNotClosed,
    BicharacterViolation,
    NotKacType,
    NotManageable,
    PentagonViolation,
)
from .tensorleg import (
    Functional,
    LegSpace,
    SpanMap,
    as_matrix,
    embed_on_legs,
    kron,
    membership_residuals,
    orthonormal_basis,
    permute_legs,
    residual_between,
    residuals_between,
    slice_leg,
    span_map_from_pairs,
    unitarity_defect,
    vec,
)

__all__ = [
    "FiniteQuantumGroup",
    "ManageabilityWitness",
    "build_from_unitary",
    "manageability_witness",
    "dual_qg",
    "unitary_antipode",
    "transpose_qg",
    "coassociativity_residual",
    "coinvariant_dimension",
    "PENTAGON_TOL",
    "CLOSURE_TOL",
    "EQUATION_TOL",
]

PENTAGON_TOL = 1e-10
CLOSURE_TOL = 1e-8
EQUATION_TOL = 1e-9


class FiniteQuantumGroup:
    """A verified multiplicative unitary with its extracted algebra pair.

    Instances are immutable by convention once construction finishes.
    ``algC`` and ``algChat`` are orthonormal bases (Hilbert-Schmidt) of the
    two slice spans; ``deltaC`` and ``deltaChat`` are the comultiplications
    as linear maps on those spans; ``kacR`` is the unitary antipode on the
    algC span when the Kac validation succeeded, else None.
    """

    def __init__(self, dim, w, alg_c, alg_chat, delta_c, delta_chat, kac_r, residuals):
        self.dim = int(dim)
        self.W = w
        self.algC = tuple(alg_c)
        self.algChat = tuple(alg_chat)
        self.deltaC = delta_c
        self.deltaChat = delta_chat
        self.kacR = kac_r
        self.residuals = dict(residuals)

    @property
    def space(self):
        return LegSpace((self.dim, self.dim))

    def same_unitary(self, other):
        """Object identity in the bicharacter category: equal W matrices."""
        return self.dim == other.dim and np.array_equal(self.W, other.W)

    def __repr__(self):
        return f"FiniteQuantumGroup(dim={self.dim}, algC={len(self.algC)}, algChat={len(self.algChat)})"


class ManageabilityWitness:
    """The reindexed unitary certifying Kac-type manageability."""

    def __init__(self, wtilde, residual):
        self.wtilde = wtilde
        self.residual = float(residual)


def _matrix_unit_functionals(d):
    # omega_ij(x) = x[i,j] realized as trace against E_ji
    out = []
    for i in range(d):
        for j in range(d):
            dens = np.zeros((d, d), dtype=complex)
            dens[j, i] = 1.0
            out.append(Functional(dens))
    return out


def _closure_residual(basis):
    stack = np.stack(basis, axis=0)
    # all pairwise products in one broadcast matmul
    prods = (stack[:, None] @ stack[None, :]).reshape(-1, *stack.shape[1:])
    adjoints = stack.conj().transpose(0, 2, 1)
    return membership_residuals(basis, np.concatenate([adjoints, prods], axis=0))


def _pair_basis(left, right):
    # HS-orthonormality survives the Kronecker product, no re-orthonormalization needed
    return [kron(a, b) for a in left for b in right]


def _delta_maps(w, d, alg_c, alg_chat):
    space = LegSpace((d, d))
    eye = np.eye(d, dtype=complex)
    wd = w.conj().T
    sigma_conj = lambda t: permute_legs(t, space, (2, 1))

    def delta_c_of(x):
        return w @ kron(x, eye) @ wd

    def delta_chat_of(y):
        return sigma_conj(wd @ kron(eye, y) @ w)

    delta_c = SpanMap(
        tuple(alg_c), tuple(delta_c_of(x) for x in alg_c), d, d * d
    )
    delta_chat = SpanMap(
        tuple(alg_chat), tuple(delta_chat_of(y) for y in alg_chat), d, d * d
    )
    return delta_c, delta_chat


def _try_antipode(w, d, alg_c):
    """Antipode on slices: kappa((omega (x) id)W) = (omega (x) id)(W*)."""
    space = LegSpace((d, d))
    wd = w.conj().T
    pairs = []
    for omega in _matrix_unit_functionals(d):
        pairs.append((slice_leg(w, space, 1, omega), slice_leg(wd, space, 1, omega)))
    kappa, consistency = span_map_from_pairs(pairs)
    if consistency > EQUATION_TOL:
        raise NotKacType(
            f"antipode is not well defined on slices, residual {consistency:.2e}",
            residual=consistency,
        )
    stack = np.stack(alg_c, axis=0)
    kxs = kappa.apply_stack(stack)
    adjoints = stack.conj().transpose(0, 2, 1)
    worst = consistency
    worst = max(worst, membership_residuals(alg_c, kxs))
    worst = max(worst, residuals_between(kappa.apply_stack(kxs), stack))
    worst = max(
        worst,
        residuals_between(kappa.apply_stack(adjoints), kxs.conj().transpose(0, 2, 1)),
    )
    # kappa(xy) = kappa(y) kappa(x) over every basis pair, one broadcast each side
    prods = (stack[:, None] @ stack[None, :]).reshape(-1, d, d)
    swapped = (kxs[None, :] @ kxs[:, None]).reshape(-1, d, d)
    worst = max(worst, residuals_between(kappa.apply_stack(prods), swapped))
    if worst > EQUATION_TOL:
        raise NotKacType(
            f"antipode fails the involutive *-antiautomorphism checks, residual {worst:.2e}",
            residual=worst,
        )
    return kappa, worst


def build_from_unitary(w, dim):
    """Validate w as a multiplicative unitary and extract both algebras.

    Checks, in order: unitarity, the pentagon identity, closure of both
    slice spans under product and adjoint, and that both comultiplications
    land in the span of the respective algebra pair.  The Kac antipode is
    computed opportunistically; failure there leaves kacR as None rather
    than rejecting the input.
    """
    d = int(dim)
    w = as_matrix(w)
    if w.shape[0] != d * d:
        raise ValueError(f"W has dim {w.shape[0]}, expected {d * d}")
    udef = unitarity_defect(w)
    if udef > PENTAGON_TOL:
        raise ValueError(f"W is not unitary, defect {udef:.2e}")

    space3 = LegSpace((d, d, d))
    w12 = embed_on_legs(w, space3, (1, 2))
    w13 = embed_on_legs(w, space3, (1, 3))
    w23 = embed_on_legs(w, space3, (2, 3))
    pent = residual_between(w23 @ w12, w12 @ w13 @ w23)
    if pent > PENTAGON_TOL:
        raise PentagonViolation(f"pentagon residual {pent:.2e}", residual=pent)

    space = LegSpace((d, d))
    functionals = _matrix_unit_functionals(d)
    alg_c = orthonormal_basis([slice_leg(w, space, 1, om) for om in functionals])
    alg_chat = orthonormal_basis([slice_leg(w, space, 2, om) for om in functionals])

    closure_c = _closure_residual(alg_c)
    closure_chat = _closure_residual(alg_chat)
    closure = max(closure_c, closure_chat)
    if closure > CLOSURE_TOL:
        raise AlgebraNotClosed(
            f"slice span is not a *-algebra, residual {closure:.2e}", residual=closure
        )

    delta_c, delta_chat = _delta_maps(w, d, alg_c, alg_chat)
    pair_c = _pair_basis(alg_c, alg_c)
    pair_chat = _pair_basis(alg_chat, alg_chat)
    memb = max(
        membership_residuals(pair_c, list(delta_c.images)),
        membership_residuals(pair_chat, list(delta_chat.images)),
    )
    if memb > CLOSURE_TOL:
        raise AlgebraNotClosed(
            f"comultiplication escapes the algebra span, residual {memb:.2e}",
            residual=memb,
        )

    residuals = {
        "unitarity": udef,
        "pentagon": pent,
        "closure": closure,
        "comultMembership": memb,
    }
    try:
        kappa, kres = _try_antipode(w, d, alg_c)
        residuals["antipode"] = kres
    except NotKacType:
        kappa = None
    return FiniteQuantumGroup(d, w, alg_c, alg_chat, delta_c, delta_chat, kappa, residuals)


def coassociativity_residual(qg):
    """Worst residual of (Delta (x) id)Delta = (id (x) Delta)Delta over the algC basis.

    Both iterated comultiplications conjugate x (x) 1 (x) 1, by W23 W12 and by
    W12 W13, so they agree exactly when u = W12* W23* W12 W13 commutes with
    x (x) 1 (x) 1.  Multiplying the conjugated difference by those unitaries
    turns it into the commutator u xt - xt u without changing any Frobenius
    norm, so the residual below equals the direct comparison while skipping
    the d^3 x d^3 conjugations per basis element.
    """
    d = qg.dim
    space3 = LegSpace((d, d, d))
    w12 = embed_on_legs(qg.W, space3, (1, 2))
    w13 = embed_on_legs(qg.W, space3, (1, 3))
    w23 = embed_on_legs(qg.W, space3, (2, 3))
    u = w12.conj().T @ w23.conj().T @ w12 @ w13
    ut = u.reshape(d, d * d, d, d * d)
    stack = np.stack(qg.algC, axis=0)
    # contract only the first leg: xt = x (x) 1 (x) 1 never materializes
    left = np.einsum("apcq,ncb->napbq", ut, stack)
    right = np.einsum("nac,cpbq->napbq", stack, ut)
    return residuals_between(left, right)


def manageability_witness(qg, tol=PENTAGON_TOL):
    """Entrywise reindex of W by the Kac-type modularity relation.

    The conjugate space is realized as H with entrywise conjugation, so the
    relation (x (x) y | W | z (x) u) = (zbar (x) y | Wt | xbar (x) u) becomes a
    pure index shuffle.  Unitarity of the result certifies manageability.
    """
    d = qg.dim
    w4 = qg.W.reshape(d, d, d, d)
    # Wt[(a,b),(c,e)] = W[(c,b),(a,e)]
    wt = w4.transpose(2, 1, 0, 3).reshape(d * d, d * d)
    residual = unitarity_defect(wt)
    if residual > tol:
        raise NotManageable(
            f"witness fails unitarity, residual {residual:.2e}", residual=residual
        )
    return ManageabilityWitness(wt, residual)


def dual_qg(qg):
    """Dual quantum group from flip-conjugating the adjoint of W.

    Pure index moves, so dualizing twice reproduces the W matrix exactly.
    """
    flipped = permute_legs(qg.W.conj().T, qg.space, (2, 1))
    return build_from_unitary(flipped, qg.dim)


def unitary_antipode(qg):
    """Unitary antipode on the algC span; Kac type required."""
    if qg.kacR is not None:
        return qg.kacR
    kappa, _ = _try_antipode(qg.W, qg.dim, qg.algC)
    return kappa


def transpose_qg(qg):
    """Conjugate-transpose construction: a quantum group on the conjugate space.

    Builds Cbar from the leg-wise transpose of W*, which is the entrywise
    conjugate of W.  The manageability witness, read as a unitary pairing
    Cbar's dual side with the original algebra, must satisfy both
    pentagon-type bicharacter equations: one against Cbar's dual
    comultiplication, one against the flipped comultiplication of the
    original.  Returns the new quantum group and that bicharacter.
    """
    d = qg.dim
    try:
        witness = manageability_witness(qg)
    except NotManageable as exc:
        raise NotKacType(
            f"no unitary manageability witness: {exc}", residual=exc.residual
        ) from exc
    cbar = build_from_unitary(qg.W.conj(), d)
    wt = witness.wtilde

    space3 = LegSpace((d, d, d))
    wt23 = embed_on_legs(wt, space3, (2, 3))
    wt13 = embed_on_legs(wt, space3, (1, 3))
    wt12 = embed_on_legs(wt, space3, (1, 2))
    wb12 = embed_on_legs(cbar.W, space3, (1, 2))
    w23 = embed_on_legs(qg.W, space3, (2, 3))
    sigma12 = lambda t: permute_legs(t, space3, (2, 1, 3))
    sigma23 = lambda t: permute_legs(t, space3, (1, 3, 2))

    # dual-side equation: (Delta_hat of Cbar (x) id) applied to Wt
    lhs_a = sigma12(wb12.conj().T @ wt23 @ wb12)
    res_a = residual_between(lhs_a, wt23 @ wt13)
    # flipped-comultiplication equation on the original algebra side
    lhs_b = sigma23(w23 @ wt12 @ w23.conj().T)
    res_b = residual_between(lhs_b, wt12 @ wt13)
    if res_a > PENTAGON_TOL:
        raise BicharacterViolation(
            f"dual-side equation fails, residual {res_a:.2e}", residual=res_a
        )
    if res_b > PENTAGON_TOL:
        raise BicharacterViolation(
            f"flipped-comultiplication equation fails, residual {res_b:.2e}",
            residual=res_b,
        )

    from .bicharacter import Bicharacter

    bic = Bicharacter(
        source=cbar,
        target=qg,
        V=wt,
        residuals={"dualSideEquation": res_a, "flippedComultEquation": res_b},
    )
    return cbar, bic


def coinvariant_dimension(qg, cutoff=1e-9):
    """Dimension of {c in span(algC): Delta(c) in span(algC) (x) C1}.

    For genuine quantum-group data this is exactly 1: only scalars are
    coinvariant.
    """
    d = qg.dim
    scale = 1.0 / np.sqrt(d)
    right_triv = [kron(a, np.eye(d, dtype=complex)) * scale for a in qg.algC]
    cols = []
    for dx in qg.deltaC.images:
        v = vec(dx)
        proj = np.zeros_like(v)
        for b in right_triv:
            bb = vec(b)
            proj = proj + bb * np.vdot(bb, v)
        cols.append(v - proj)
    system = np.stack(cols, axis=1)
    s = np.linalg.svd(system, compute_uv=False)
    smax = s[0] if len(s) else 0.0
    if smax <= cutoff:
        return len(qg.algC)
    rank = int(np.sum(s > cutoff * smax))
    return len(qg.algC) - rank
