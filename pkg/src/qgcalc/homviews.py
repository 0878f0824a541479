"""Conversions among the equivalent notions of quantum group homomorphism.

Hopf *-homomorphisms, right homomorphisms (coaction-like maps into
C (x) A), left homomorphisms (into A (x) C), and bicharacters all describe
the same arrows; this module carries each notion and the translations
between them, with every translation verified on the way out.

Linear maps between matrix algebras are stored on orthonormalized algebra
bases; applying one means expand, map, reassemble.
"""

import numpy as np

from .bicharacter import Bicharacter, check_bicharacter
from .errors import (
    DimensionMismatch,
    ExtractionFailure,
    HopfHomViolation,
    NotKacType,
    RangeViolation,
)
from .qgroup import CLOSURE_TOL, EQUATION_TOL, dual_qg, unitary_antipode
from .tensorleg import (
    LegSpace,
    SpanMap,
    apply_map_to_leg,
    embed_on_legs,
    extract_trivial_legs,
    kron,
    membership_residual,
    permute_legs,
    residual_between,
    vec,
)

__all__ = [
    "HopfHom",
    "RightQGHom",
    "LeftQGHom",
    "check_hopf_hom",
    "check_right_hom",
    "check_left_hom",
    "right_from_bicharacter",
    "bicharacter_from_right",
    "left_from_bicharacter",
    "bicharacter_from_left",
    "right_hom_residuals",
    "left_hom_residuals",
    "check_left_right_compatibility",
    "dual_hopf_relation",
]


def _rank(cols, cutoff=1e-9):
    if not cols:
        return 0
    m = np.stack(cols, axis=1)
    s = np.linalg.svd(m, compute_uv=False)
    if len(s) == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > cutoff * s[0]))


class HopfHom:
    """Verified Hopf *-homomorphism between two quantum groups."""

    def __init__(self, source, target, map):
        self.source = source
        self.target = target
        self.map = map

    def coefficient_matrix(self):
        """Matrix of the map from the source algC basis to the target's."""
        rows = []
        for a in self.target.algC:
            rows.append([np.vdot(vec(a), vec(self.map(c))) for c in self.source.algC])
        return np.array(rows, dtype=complex)

    def verification_residuals(self):
        """All Hopf-homomorphism axiom residuals, keyed by axiom."""
        f = self.map
        src = self.source.algC
        tgt = self.target.algC
        eye_s = np.eye(self.source.dim, dtype=complex)
        eye_t = np.eye(self.target.dim, dtype=complex)
        rng = max(membership_residual(tgt, f(x)) for x in src)
        unital = residual_between(f(eye_s), eye_t)
        star = max(residual_between(f(x.conj().T), f(x).conj().T) for x in src)
        mult = max(
            residual_between(f(x @ y), f(x) @ f(y)) for x in src for y in src
        )
        space_src = LegSpace((self.source.dim, self.source.dim))
        inter = 0.0
        for x, dx in zip(src, self.source.deltaC.images):
            lhs = self.target.deltaC(f(x))
            ff1, sp1 = apply_map_to_leg(dx, space_src, 1, f)
            rhs, _ = apply_map_to_leg(ff1, sp1, 2, f)
            inter = max(inter, residual_between(lhs, rhs))
        return {
            "range": rng,
            "unital": unital,
            "star": star,
            "multiplicative": mult,
            "intertwining": inter,
        }

    def __repr__(self):
        return f"HopfHom({self.source.dim} -> {self.target.dim})"


def check_hopf_hom(source, target, map, tol=EQUATION_TOL):
    """Validate a linear map as a Hopf *-homomorphism."""
    hom = HopfHom(source, target, map)
    res = hom.verification_residuals()
    if res["range"] > CLOSURE_TOL:
        raise HopfHomViolation(
            f"images escape the target algebra, residual {res['range']:.2e}",
            residual=res["range"],
        )
    for key, cutoff in (
        ("unital", 1e-10),
        ("star", 1e-10),
        ("multiplicative", tol),
        ("intertwining", tol),
    ):
        if res[key] > cutoff:
            raise HopfHomViolation(
                f"{key} axiom fails, residual {res[key]:.2e}", residual=res[key]
            )
    return hom


class RightQGHom:
    """Right homomorphism: a coaction-shaped map of C into C (x) A."""

    def __init__(self, source, target, deltaR, residuals):
        self.source = source
        self.target = target
        self.deltaR = deltaR
        self.residuals = dict(residuals)

    def __repr__(self):
        return f"RightQGHom({self.source.dim} -> {self.target.dim})"


class LeftQGHom:
    """Left homomorphism: the mirror notion, mapping C into A (x) C."""

    def __init__(self, source, target, deltaL, residuals):
        self.source = source
        self.target = target
        self.deltaL = deltaL
        self.residuals = dict(residuals)

    def __repr__(self):
        return f"LeftQGHom({self.source.dim} -> {self.target.dim})"


def right_hom_residuals(c, a, dr_map):
    """Diagram, range, injectivity, and density data for a right-hom candidate."""
    pair = [kron(x, y) for x in c.algC for y in a.algC]
    rng = max(membership_residual(pair, dr_map(x)) for x in c.algC)
    space_ca = LegSpace((c.dim, a.dim))
    space_cc = LegSpace((c.dim, c.dim))
    diag1 = 0.0
    diag2 = 0.0
    for x, dx in zip(c.algC, c.deltaC.images):
        drx = dr_map(x)
        lhs1, _ = apply_map_to_leg(drx, space_ca, 1, c.deltaC)
        rhs1, _ = apply_map_to_leg(dx, space_cc, 2, dr_map)
        diag1 = max(diag1, residual_between(lhs1, rhs1))
        lhs2, _ = apply_map_to_leg(drx, space_ca, 2, a.deltaC)
        rhs2, _ = apply_map_to_leg(drx, space_ca, 1, dr_map)
        diag2 = max(diag2, residual_between(lhs2, rhs2))
    coeff_cols = [vec(dr_map(x)) for x in c.algC]
    injective = _rank(coeff_cols) == len(c.algC)
    eye_c = np.eye(c.dim, dtype=complex)
    prods = [
        vec(dr_map(x) @ kron(eye_c, y)) for x in c.algC for y in a.algC
    ]
    podles = _rank(prods) == len(c.algC) * len(a.algC)
    return {
        "range": rng,
        "coassocDiagram": diag1,
        "comoduleDiagram": diag2,
        "injective": injective,
        "podles": podles,
    }


def check_right_hom(c, a, dr_map, tol=EQUATION_TOL):
    res = right_hom_residuals(c, a, dr_map)
    if res["range"] > CLOSURE_TOL:
        raise RangeViolation(
            f"images escape span(algC) (x) span(algA), residual {res['range']:.2e}",
            residual=res["range"],
        )
    for key in ("coassocDiagram", "comoduleDiagram"):
        if res[key] > tol:
            raise RangeViolation(
                f"{key} fails, residual {res[key]:.2e}", residual=res[key]
            )
    return RightQGHom(c, a, dr_map, res)


def right_from_bicharacter(v):
    """Right homomorphism by conjugation: x goes to V(x (x) 1)V*."""
    c = v.source
    a = v.target
    eye_a = np.eye(a.dim, dtype=complex)
    vd = v.V.conj().T
    images = tuple(v.V @ kron(x, eye_a) @ vd for x in c.algC)
    dr_map = SpanMap(tuple(c.algC), images, c.dim, c.dim * a.dim)
    return check_right_hom(c, a, dr_map)


def bicharacter_from_right(dr, tol=EQUATION_TOL):
    """Recover the bicharacter: (id (x) deltaR)(W) factors as W12 V13."""
    c = dr.source
    a = dr.target
    ext, _ = apply_map_to_leg(c.W, c.space, 2, dr.deltaR)
    space3 = LegSpace((c.dim, c.dim, a.dim))
    w12 = embed_on_legs(c.W, space3, (1, 2))
    prod = w12.conj().T @ ext
    factor, resid = extract_trivial_legs(prod, space3, {2})
    if resid > tol:
        raise ExtractionFailure(
            f"W12* (id (x) deltaR)(W) is not leg-2 trivial, residual {resid:.2e}",
            residual=resid,
        )
    out = check_bicharacter(factor, c, a)
    out.residuals["extraction"] = resid
    return out


def left_hom_residuals(c, a, dl_map):
    pair = [kron(y, x) for y in a.algC for x in c.algC]
    rng = max(membership_residual(pair, dl_map(x)) for x in c.algC)
    space_ac = LegSpace((a.dim, c.dim))
    space_cc = LegSpace((c.dim, c.dim))
    diag1 = 0.0
    diag2 = 0.0
    for x, dx in zip(c.algC, c.deltaC.images):
        dlx = dl_map(x)
        lhs1, _ = apply_map_to_leg(dlx, space_ac, 2, c.deltaC)
        rhs1, _ = apply_map_to_leg(dx, space_cc, 1, dl_map)
        diag1 = max(diag1, residual_between(lhs1, rhs1))
        lhs2, _ = apply_map_to_leg(dlx, space_ac, 1, a.deltaC)
        rhs2, _ = apply_map_to_leg(dlx, space_ac, 2, dl_map)
        diag2 = max(diag2, residual_between(lhs2, rhs2))
    return {"range": rng, "coassocDiagram": diag1, "comoduleDiagram": diag2}


def check_left_hom(c, a, dl_map, tol=EQUATION_TOL):
    res = left_hom_residuals(c, a, dl_map)
    if res["range"] > CLOSURE_TOL:
        raise RangeViolation(
            f"images escape span(algA) (x) span(algC), residual {res['range']:.2e}",
            residual=res["range"],
        )
    for key in ("coassocDiagram", "comoduleDiagram"):
        if res[key] > tol:
            raise RangeViolation(
                f"{key} fails, residual {res[key]:.2e}", residual=res[key]
            )
    return LeftQGHom(c, a, dl_map, res)


def left_from_bicharacter(v, tol=EQUATION_TOL):
    """Left homomorphism through the flipped bicharacter and both antipodes.

    Kac type only: the construction conjugates with the flipped unitary and
    untwists with the unitary antipodes on both legs.
    """
    c = v.source
    a = v.target
    r_c = unitary_antipode(c)
    r_a = unitary_antipode(a)
    vhat = permute_legs(v.V.conj().T, v.space, (2, 1))
    space_ac = LegSpace((a.dim, c.dim))
    eye_a = np.eye(a.dim, dtype=complex)
    images = []
    for x in c.algC:
        t = vhat.conj().T @ kron(eye_a, r_c(x)) @ vhat
        t1, _ = apply_map_to_leg(t, space_ac, 1, r_a)
        t2, _ = apply_map_to_leg(t1, space_ac, 2, r_c)
        images.append(t2)
    dl_map = SpanMap(tuple(c.algC), tuple(images), c.dim, a.dim * c.dim)
    out = check_left_hom(c, a, dl_map, tol=tol)

    # the slice identity (id (x) deltaL)(W) = V12 W13 must hold as well
    ext, _ = apply_map_to_leg(c.W, c.space, 2, dl_map)
    space3 = LegSpace((c.dim, a.dim, c.dim))
    v12 = embed_on_legs(v.V, space3, (1, 2))
    w13 = embed_on_legs(c.W, space3, (1, 3))
    slice_res = residual_between(ext, v12 @ w13)
    if slice_res > tol:
        raise RangeViolation(
            f"slice identity for the left homomorphism fails, residual {slice_res:.2e}",
            residual=slice_res,
        )
    out.residuals["sliceIdentity"] = slice_res
    return out


def bicharacter_from_left(dl, tol=EQUATION_TOL):
    """Inverse translation: extract V from (id (x) deltaL)(W) = V12 W13."""
    c = dl.source
    a = dl.target
    ext, _ = apply_map_to_leg(c.W, c.space, 2, dl.deltaL)
    space3 = LegSpace((c.dim, a.dim, c.dim))
    w13 = embed_on_legs(c.W, space3, (1, 3))
    prod = ext @ w13.conj().T
    factor, resid = extract_trivial_legs(prod, space3, {3})
    if resid > tol:
        raise ExtractionFailure(
            f"(id (x) deltaL)(W) W13* is not leg-3 trivial, residual {resid:.2e}",
            residual=resid,
        )
    out = check_bicharacter(factor, c, a)
    out.residuals["extraction"] = resid
    return out


def check_left_right_compatibility(dl, dr, tol=EQUATION_TOL):
    """Evaluate the two compatibility squares for a left and a right hom.

    The mixed square (right after left versus left after right) commutes for
    any pair with common source; its worst residual is returned first.  The
    second square, where both maps follow the comultiplication, commutes
    precisely when the two homomorphisms come from the same bicharacter;
    the returned flag reports that.
    """
    if dl.source is not dr.source and not dl.source.same_unitary(dr.source):
        raise ValueError("left and right homomorphisms must share their source")
    c = dl.source
    a = dl.target
    b = dr.target
    space_ac = LegSpace((a.dim, c.dim))
    space_cb = LegSpace((c.dim, b.dim))
    space_cc = LegSpace((c.dim, c.dim))
    square = 0.0
    for x in c.algC:
        lhs, _ = apply_map_to_leg(dl.deltaL(x), space_ac, 2, dr.deltaR)
        rhs, _ = apply_map_to_leg(dr.deltaR(x), space_cb, 1, dl.deltaL)
        square = max(square, residual_between(lhs, rhs))
    same = False
    if a.same_unitary(b):
        second = 0.0
        for x, dx in zip(c.algC, c.deltaC.images):
            lhs, _ = apply_map_to_leg(dx, space_cc, 2, dl.deltaL)
            rhs, _ = apply_map_to_leg(dx, space_cc, 1, dr.deltaR)
            second = max(second, residual_between(lhs, rhs))
        same = second <= tol
    return square, same


def dual_hopf_relation(f, fhat):
    """Residual of the two slice constructions agreeing for a dual pair.

    f maps C to A; fhat maps the dual of A to the dual of C.  Pushing fhat
    through the first leg of the target's unitary must produce the same
    matrix as pushing f through the second leg of the source's unitary.
    """
    c = f.source
    a = f.target
    if fhat.source.dim != a.dim or fhat.target.dim != c.dim:
        raise DimensionMismatch(
            f"dual hom connects dims {fhat.source.dim}->{fhat.target.dim}, "
            f"expected {a.dim}->{c.dim}"
        )
    rhs, _ = apply_map_to_leg(c.W, c.space, 2, f.map)
    lhs, _ = apply_map_to_leg(a.W, a.space, 1, fhat.map)
    return residual_between(lhs, rhs)
