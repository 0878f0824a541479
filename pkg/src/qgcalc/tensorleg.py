"""Dense tensor-leg calculus for operators on finite tensor products.

Operators are plain complex numpy matrices.  A ``LegSpace`` records how the
underlying space factors into tensor legs; legs are numbered from 1 so that
code reads like the usual subscript notation (a unitary placed on legs 1 and
3 of a three-fold product, and so on).  All Kronecker products are row-major.

Residuals returned by the checks here are relative Frobenius norms.
"""

from dataclasses import dataclass
from functools import cached_property
import math

import numpy as np
import scipy.linalg

__all__ = [
    "LegSpace",
    "Functional",
    "SpanMap",
    "as_matrix",
    "vec",
    "unvec",
    "frob",
    "residual_between",
    "residuals_between",
    "unitarity_defect",
    "hermiticity_defect",
    "projection_defect",
    "kron",
    "kron_all",
    "flip_unitary",
    "embed_on_legs",
    "permute_legs",
    "permuted_space",
    "slice_leg",
    "sliced_space",
    "extract_trivial_legs",
    "intertwiner_space",
    "orthonormal_basis",
    "membership_residual",
    "membership_residuals",
    "span_map_from_pairs",
    "apply_map_to_leg",
]


@dataclass(frozen=True)
class LegSpace:
    """Ordered factorization of a tensor-product space into legs.

    ``dims[k]`` is the dimension of leg k+1; leg indices are 1-based
    everywhere in this module.
    """

    dims: tuple

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValueError(f"leg dimensions must be >= 1, got {self.dims}")

    @property
    def nlegs(self):
        return len(self.dims)

    @property
    def total(self):
        return math.prod(self.dims)

    def dim(self, leg):
        self._check_leg(leg)
        return self.dims[leg - 1]

    def _check_leg(self, leg):
        if not 1 <= leg <= len(self.dims):
            raise ValueError(f"leg {leg} out of range for {len(self.dims)} legs")


@dataclass(frozen=True)
class Functional:
    """Linear functional on a matrix algebra, x -> trace(density @ x)."""

    density: np.ndarray

    def __call__(self, x):
        x = as_matrix(x)
        if x.shape != self.density.shape:
            raise ValueError(f"functional on dim {self.density.shape[0]} applied to shape {x.shape}")
        return complex(np.trace(self.density @ x))


def as_matrix(x):
    """Coerce to a square complex matrix without copying when possible."""
    m = np.asarray(x, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def vec(x):
    """Row-major vectorization."""
    return np.asarray(x, dtype=complex).reshape(-1)


def unvec(v, rows, cols):
    return np.asarray(v, dtype=complex).reshape(rows, cols)


def frob(x):
    return float(np.linalg.norm(np.asarray(x)))


def residual_between(x, y):
    """Relative Frobenius distance, scale-invariant for large operators."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch {x.shape} vs {y.shape}")
    scale = max(1.0, frob(x), frob(y))
    return frob(x - y) / scale


def residuals_between(xs, ys):
    """Worst residual_between over matched stacks, without a Python loop.

    Both arguments are (n, ...) arrays compared pairwise along axis 0; any
    trailing shape works since the norms flatten it away.
    """
    xs = np.asarray(xs, dtype=complex)
    ys = np.asarray(ys, dtype=complex)
    if xs.shape != ys.shape:
        raise ValueError(f"shape mismatch {xs.shape} vs {ys.shape}")
    if xs.shape[0] == 0:
        return 0.0
    fx = xs.reshape(xs.shape[0], -1)
    fy = ys.reshape(ys.shape[0], -1)
    diff = np.linalg.norm(fx - fy, axis=1)
    scale = np.maximum(
        1.0,
        np.maximum(np.linalg.norm(fx, axis=1), np.linalg.norm(fy, axis=1)),
    )
    return float(np.max(diff / scale))


def unitarity_defect(m):
    m = as_matrix(m)
    n = m.shape[0]
    eye = np.eye(n)
    scale = math.sqrt(n)
    return max(frob(m.conj().T @ m - eye), frob(m @ m.conj().T - eye)) / scale


def hermiticity_defect(m):
    m = as_matrix(m)
    return frob(m - m.conj().T) / max(1.0, frob(m))


def projection_defect(m):
    m = as_matrix(m)
    return max(frob(m @ m - m), frob(m - m.conj().T)) / max(1.0, frob(m))


def kron(a, b):
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(mats):
    out = np.asarray(mats[0], dtype=complex)
    for m in mats[1:]:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


def flip_unitary(d1, d2):
    """Coordinate flip H1 (x) H2 -> H2 (x) H1 as a permutation matrix."""
    sigma = np.zeros((d1 * d2, d1 * d2), dtype=complex)
    for i in range(d1):
        for j in range(d2):
            sigma[j * d1 + i, i * d2 + j] = 1.0
    return sigma


def _check_space(t, space):
    t = as_matrix(t)
    if t.shape[0] != space.total:
        raise ValueError(f"operator dim {t.shape[0]} does not match leg space {space.dims}")
    return t


def permuted_space(space, perm):
    return LegSpace(tuple(space.dims[p - 1] for p in perm))


def permute_legs(t, space, perm):
    """Conjugate t by the leg permutation; output leg j carries input leg perm[j-1]."""
    t = _check_space(t, space)
    n = space.nlegs
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"perm {perm} is not a permutation of 1..{n}")
    t4 = t.reshape(space.dims + space.dims)
    # row axes first, then column axes; both get permuted the same way
    axes = [p - 1 for p in perm] + [n + p - 1 for p in perm]
    total = space.total
    return t4.transpose(axes).reshape(total, total)


def embed_on_legs(x, space, legs):
    """Place x on the named legs (in their given order), identity elsewhere."""
    x = as_matrix(x)
    legs = tuple(int(l) for l in legs)
    if len(set(legs)) != len(legs):
        raise ValueError(f"legs {legs} must be distinct")
    for l in legs:
        space._check_leg(l)
    d_named = math.prod(space.dims[l - 1] for l in legs)
    if x.shape[0] != d_named:
        raise ValueError(f"operator dim {x.shape[0]} does not match legs {legs} of {space.dims}")
    rest = [l for l in range(1, space.nlegs + 1) if l not in legs]
    cur_order = list(legs) + rest
    d_rest = math.prod(space.dims[l - 1] for l in rest)
    big = np.kron(x, np.eye(d_rest, dtype=complex))
    cur_space = LegSpace([space.dims[l - 1] for l in cur_order])
    # big lives on legs ordered (legs..., rest...); permute back to natural order
    perm = [cur_order.index(j) + 1 for j in range(1, space.nlegs + 1)]
    return permute_legs(big, cur_space, perm)


def sliced_space(space, leg):
    rest = [space.dims[l - 1] for l in range(1, space.nlegs + 1) if l != leg]
    return LegSpace(rest) if rest else LegSpace((1,))


def slice_leg(t, space, leg, omega):
    """Partial evaluation (id (x) ... (x) omega (x) ... (x) id)(t) on one leg."""
    t = _check_space(t, space)
    space._check_leg(leg)
    n = space.nlegs
    d = space.dims[leg - 1]
    dens = as_matrix(omega.density)
    if dens.shape[0] != d:
        raise ValueError(f"functional dim {dens.shape[0]} does not match leg {leg} dim {d}")
    t4 = t.reshape(space.dims + space.dims)
    # omega(a) = sum_{p,q} dens[q,p] a[p,q]; contract row index p and column index q of the leg
    out4 = np.tensordot(t4, dens, axes=([leg - 1, n + leg - 1], [1, 0]))
    total = sliced_space(space, leg).total
    return out4.reshape(total, total)


def extract_trivial_legs(t, space, trivial, tol=1e-8):
    """Best factor f with t = f on the other legs and identity on the trivial ones.

    Returns (f, residual) where residual is the relative Frobenius distance
    between t and the re-embedded f.  A residual above tol means t genuinely
    acts on the legs claimed trivial; that is reported, not raised.
    """
    t = _check_space(t, space)
    trivial = sorted(set(int(l) for l in trivial))
    for l in trivial:
        space._check_leg(l)
    keep = [l for l in range(1, space.nlegs + 1) if l not in trivial]
    if not keep:
        raise ValueError("at least one leg must remain")
    reordered = permute_legs(t, space, keep + trivial)
    n_keep = math.prod(space.dims[l - 1] for l in keep)
    m = math.prod(space.dims[l - 1] for l in trivial)
    u4 = reordered.reshape(n_keep, m, n_keep, m)
    # least-squares minimizer of |u - f (x) I_m| is the normalized partial trace
    f = np.einsum("ikjk->ij", u4) / m
    approx = np.kron(f, np.eye(m, dtype=complex))
    denom = frob(reordered)
    residual = frob(reordered - approx) / denom if denom > 0 else 0.0
    return f, float(residual)


def intertwiner_space(w, dim, cutoff=1e-9):
    """Solutions (a, b) of w(a (x) 1) = (1 (x) b)w by stacked-SVD nullspace.

    Returns the nullspace dimension and a basis of matrix pairs.  For a
    pentagon-verified multiplicative unitary the dimension is 1, spanned by
    (1, 1): invariants are constant.
    """
    w = as_matrix(w)
    d = int(dim)
    if w.shape[0] != d * d:
        raise ValueError(f"w has dim {w.shape[0]}, expected {d * d}")
    eye = np.eye(d, dtype=complex)
    cols = []
    for p in range(d):
        for q in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[p, q] = 1.0
            cols.append(vec(w @ np.kron(e, eye)))
    for p in range(d):
        for q in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[p, q] = 1.0
            cols.append(-vec(np.kron(eye, e) @ w))
    system = np.stack(cols, axis=1)
    # reduced SVD keeps every right singular vector once rows >= cols
    full = system.shape[0] < system.shape[1]
    u, s, vh = np.linalg.svd(system, full_matrices=full)
    smax = s[0] if len(s) else 0.0
    rank = int(np.sum(s > cutoff * smax)) if smax > 0 else 0
    null = vh[rank:].conj()
    pairs = []
    for row in null:
        a = unvec(row[: d * d], d, d)
        b = unvec(row[d * d :], d, d)
        pairs.append((a, b))
    return len(pairs), pairs


def orthonormal_basis(mats, cutoff=1e-9):
    """Orthonormal basis (Hilbert-Schmidt) of the span of the given matrices.

    Column-pivoted QR keeps the rank decision stable when the spanning set
    repeats directions in an unfortunate order.
    """
    mats = [np.asarray(m, dtype=complex) for m in mats]
    if not mats:
        return []
    shape = mats[0].shape
    cols = np.stack([vec(m) for m in mats], axis=1)
    q, r, _ = scipy.linalg.qr(cols, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    if len(diag) == 0 or diag[0] == 0:
        return []
    rank = int(np.sum(diag > cutoff * diag[0]))
    return [unvec(q[:, k], shape[0], shape[1]) for k in range(rank)]


def membership_residual(basis, x):
    """Distance of x from the span of an orthonormal basis, relative."""
    return membership_residuals(basis, [x])


def membership_residuals(basis, mats):
    """Worst relative distance of the given matrices from the basis span.

    One stacked projection instead of a per-matrix loop; use this for the
    closure checks, where thousands of products hit the same span.  mats
    may be a list of matrices or an (n, r, c) array.
    """
    if isinstance(mats, np.ndarray) and mats.ndim == 3:
        if mats.shape[0] == 0:
            return 0.0
        xs = mats.reshape(mats.shape[0], -1).T.astype(complex)
    elif not mats:
        return 0.0
    else:
        xs = np.stack([vec(np.asarray(m, dtype=complex)) for m in mats], axis=1)
    if basis:
        b = np.stack([vec(np.asarray(m, dtype=complex)) for m in basis], axis=0)
        rem = xs - b.T @ (b.conj() @ xs)
    else:
        rem = xs
    norm = np.sqrt(np.sum(np.abs(rem) ** 2, axis=0))
    scale = np.maximum(1.0, np.sqrt(np.sum(np.abs(xs) ** 2, axis=0)))
    return float(np.max(norm / scale))


@dataclass(frozen=True)
class SpanMap:
    """Linear map between matrix spaces, stored on an orthonormal domain basis.

    ``basis[i]`` maps to ``images[i]``; anything orthogonal to the basis is
    sent to zero.  Domain matrices are d x d, image matrices are dd x dd.
    """

    basis: tuple
    images: tuple
    d: int
    dd: int

    @cached_property
    def _basis_rows(self):
        return np.stack([vec(m) for m in self.basis], axis=0)

    @cached_property
    def _image_rows(self):
        return np.stack([vec(m) for m in self.images], axis=0)

    def superoperator(self):
        return self._image_rows.T @ self._basis_rows.conj()

    def __call__(self, x):
        x = as_matrix(x)
        if x.shape[0] != self.d:
            raise ValueError(f"map domain dim {self.d}, got {x.shape[0]}")
        coeff = self._basis_rows.conj() @ vec(x)
        return unvec(coeff @ self._image_rows, self.dd, self.dd)

    def apply_stack(self, xs):
        """Apply to a whole (n, d, d) stack at once; returns (n, dd, dd)."""
        xs = np.asarray(xs, dtype=complex)
        coeff = xs.reshape(xs.shape[0], -1) @ self._basis_rows.conj().T
        return (coeff @ self._image_rows).reshape(-1, self.dd, self.dd)


def span_map_from_pairs(pairs, cutoff=1e-9):
    """Linear map sending each x_j to y_j, with a well-definedness residual.

    The x_j may be linearly dependent; the returned residual measures how
    far the pairs are from defining a single linear map.  Small residual
    certifies consistency.
    """
    xs = [np.asarray(x, dtype=complex) for x, _ in pairs]
    ys = [np.asarray(y, dtype=complex) for _, y in pairs]
    if not xs:
        raise ValueError("need at least one pair")
    d = xs[0].shape[0]
    dd = ys[0].shape[0]
    basis = orthonormal_basis(xs, cutoff=cutoff)
    bmat = np.stack([vec(b) for b in basis], axis=0)
    xmat = np.stack([vec(x) for x in xs], axis=1)
    coeff = bmat.conj() @ xmat
    ymat = np.stack([vec(y) for y in ys], axis=0)
    sol, _, _, _ = np.linalg.lstsq(coeff.T, ymat, rcond=None)
    resid = frob(coeff.T @ sol - ymat) / max(1.0, frob(ymat))
    images = [unvec(sol[k], dd, dd) for k in range(len(basis))]
    return SpanMap(tuple(basis), tuple(images), d, dd), float(resid)


def apply_map_to_leg(t, space, leg, phi):
    """Apply a SpanMap to one leg of t; the leg's dimension becomes phi.dd.

    Returns the new matrix and the new leg space.  When phi lands in a
    tensor product (a comultiplication), re-divide the enlarged leg by
    building the finer LegSpace by hand; the matrix itself is unchanged.
    """
    t = _check_space(t, space)
    space._check_leg(leg)
    n = space.nlegs
    d = space.dims[leg - 1]
    if phi.d != d:
        raise ValueError(f"map domain dim {phi.d} does not match leg {leg} dim {d}")
    t4 = t.reshape(space.dims + space.dims)
    moved = np.moveaxis(t4, (leg - 1, n + leg - 1), (2 * n - 2, 2 * n - 1))
    rest_shape = moved.shape[: 2 * n - 2]
    flat = moved.reshape(-1, d * d)
    out_flat = flat @ phi.superoperator().T
    out = out_flat.reshape(rest_shape + (phi.dd, phi.dd))
    out = np.moveaxis(out, (2 * n - 2, 2 * n - 1), (leg - 1, n + leg - 1))
    new_dims = list(space.dims)
    new_dims[leg - 1] = phi.dd
    out_space = LegSpace(new_dims)
    return out.reshape(out_space.total, out_space.total), out_space
