"""JSON readers and writers for every object the command line handles.

Matrices travel as {"rows", "cols", "data": [[re, im], ...]} row-major.
Referenced quantum groups may be inline ({"dim", "W"} or {"group",
"picture"}) or a {"path"} pointing at another file, resolved relative to
the referencing file.  Coefficient matrices for homomorphisms follow the
"orthonormalized-slice" convention: rows and columns are indexed by the
orthonormal slice bases the builders produce, which are deterministic.
"""

import json
import os

import numpy as np

from .errors import ParseError
from .groups import build_group, qg_from_group
from .qgroup import build_from_unitary
from .tensorleg import kron, orthonormal_basis

__all__ = [
    "load_json",
    "matrix_to_obj",
    "matrix_from_obj",
    "group_from_obj",
    "group_to_obj",
    "qg_from_obj",
    "qg_to_obj",
    "load_qg",
    "bicharacter_parts_from_obj",
    "bicharacter_to_obj",
    "hom_parts_from_obj",
    "hom_to_obj",
    "coaction_parts_from_obj",
    "coaction_to_obj",
    "detect_kind",
    "write_json",
]


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: top level must be an object")
    return obj


def write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def _need(obj, key, what):
    if key not in obj:
        raise ParseError(f"{what} is missing the key {key!r}")
    return obj[key]


def matrix_from_obj(obj, what="matrix"):
    if not isinstance(obj, dict):
        raise ParseError(f"{what} must be an object, got {type(obj).__name__}")
    rows = _need(obj, "rows", what)
    cols = _need(obj, "cols", what)
    data = _need(obj, "data", what)
    if not (isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0):
        raise ParseError(f"{what}: rows and cols must be positive integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        got = len(data) if isinstance(data, list) else type(data).__name__
        raise ParseError(f"{what}: expected {rows * cols} entries, got {got}")
    out = np.empty(rows * cols, dtype=complex)
    for i, pair in enumerate(data):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) for v in pair)
        ):
            raise ParseError(f"{what}: entry {i} must be [re, im]")
        out[i] = complex(pair[0], pair[1])
    return out.reshape(rows, cols)


def matrix_to_obj(m):
    m = np.asarray(m, dtype=complex)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(v.real), float(v.imag)] for v in m.reshape(-1)],
    }


def group_from_obj(obj, base="."):
    if not isinstance(obj, dict):
        raise ParseError("group spec must be an object")
    if "path" in obj:
        path = os.path.join(base, obj["path"])
        return group_from_obj(load_json(path), base=os.path.dirname(path) or ".")
    order = _need(obj, "order", "group")
    table = _need(obj, "table", "group")
    if not isinstance(order, int) or not isinstance(table, list) or len(table) != order:
        raise ParseError("group: order must match the table size")
    for r in table:
        if not isinstance(r, list) or len(r) != order:
            raise ParseError("group: table must be square")
        for v in r:
            if not isinstance(v, int):
                raise ParseError(f"group: table entry {v!r} is not an integer")
    return build_group(table, name=str(obj.get("name", "")))


def group_to_obj(g):
    out = {"order": g.order, "table": [list(r) for r in g.table]}
    if g.name:
        out["name"] = g.name
    return out


def qg_from_obj(obj, base="."):
    """Build a quantum group from an inline spec or a {"path"} reference."""
    if not isinstance(obj, dict):
        raise ParseError("quantum group spec must be an object")
    if "path" in obj:
        path = os.path.join(base, obj["path"])
        return qg_from_obj(load_json(path), base=os.path.dirname(path) or ".")
    if "group" in obj:
        picture = _need(obj, "picture", "quantum group")
        if picture not in ("c0", "cstar"):
            raise ParseError(f"picture must be 'c0' or 'cstar', got {picture!r}")
        return qg_from_group(group_from_obj(obj["group"], base), picture)
    dim = _need(obj, "dim", "quantum group")
    w = matrix_from_obj(_need(obj, "W", "quantum group"), "W")
    if not isinstance(dim, int) or dim <= 0:
        raise ParseError(f"dim must be a positive integer, got {dim!r}")
    if w.shape != (dim * dim, dim * dim):
        raise ParseError(
            f"W must be {dim * dim}x{dim * dim} for dim {dim}, got {w.shape[0]}x{w.shape[1]}"
        )
    return build_from_unitary(w, dim)


def load_qg(path):
    return qg_from_obj(load_json(path), base=os.path.dirname(path) or ".")


def qg_to_obj(qg):
    return {"dim": qg.dim, "W": matrix_to_obj(qg.W)}


def bicharacter_parts_from_obj(obj, base="."):
    """Returns (source, target, V) without running the bicharacter checks."""
    source = qg_from_obj(_need(obj, "source", "bicharacter"), base)
    target = qg_from_obj(_need(obj, "target", "bicharacter"), base)
    v = matrix_from_obj(_need(obj, "V", "bicharacter"), "V")
    n = source.dim * target.dim
    if v.shape != (n, n):
        raise ParseError(
            f"V must be {n}x{n} for dims {source.dim} and {target.dim}, "
            f"got {v.shape[0]}x{v.shape[1]}"
        )
    return source, target, v


def bicharacter_to_obj(v):
    return {
        "source": qg_to_obj(v.source),
        "target": qg_to_obj(v.target),
        "V": matrix_to_obj(v.V),
    }


def _images_from_coefficients(m, pair_basis, what):
    images = []
    if m.shape[0] != len(pair_basis):
        raise ParseError(
            f"{what}: coefficient matrix has {m.shape[0]} rows, "
            f"basis has {len(pair_basis)} elements"
        )
    for l in range(m.shape[1]):
        img = np.zeros_like(pair_basis[0], dtype=complex)
        for k, b in enumerate(pair_basis):
            img = img + m[k, l] * b
        images.append(img)
    return images


def _coefficients_from_images(images, pair_basis):
    m = np.empty((len(pair_basis), len(images)), dtype=complex)
    for l, img in enumerate(images):
        for k, b in enumerate(pair_basis):
            m[k, l] = np.trace(b.conj().T @ img)
    return m


def hom_parts_from_obj(obj, base="."):
    """Returns (kind, source, target, span map pieces) for a hom file.

    The coefficient matrix is read against the orthonormalized slice
    bases: columns run over source.algC, rows over target.algC for a
    Hopf map, over the product basis c_i (x) a_j for a right map, and
    over a_j (x) c_i for a left map.
    """
    kind = _need(obj, "kind", "hom")
    if kind not in ("hopf", "right", "left"):
        raise ParseError(f"hom kind must be hopf, right, or left, got {kind!r}")
    convention = _need(obj, "basisConvention", "hom")
    if convention != "orthonormalized-slice":
        raise ParseError(f"unsupported basisConvention {convention!r}")
    source = qg_from_obj(_need(obj, "source", "hom"), base)
    target = qg_from_obj(_need(obj, "target", "hom"), base)
    m = matrix_from_obj(_need(obj, "matrix", "hom"), "hom matrix")
    if m.shape[1] != len(source.algC):
        raise ParseError(
            f"hom matrix has {m.shape[1]} columns, source algebra has {len(source.algC)}"
        )
    if kind == "hopf":
        pair = list(target.algC)
    elif kind == "right":
        pair = [kron(c, a) for c in source.algC for a in target.algC]
    else:
        pair = [kron(a, c) for a in target.algC for c in source.algC]
    images = _images_from_coefficients(m, pair, "hom")
    return kind, source, target, images


def hom_to_obj(kind, source, target, span_map):
    if kind == "hopf":
        pair = list(target.algC)
    elif kind == "right":
        pair = [kron(c, a) for c in source.algC for a in target.algC]
    elif kind == "left":
        pair = [kron(a, c) for a in target.algC for c in source.algC]
    else:
        raise ValueError(f"unknown hom kind {kind!r}")
    images = [span_map(x) for x in source.algC]
    return {
        "kind": kind,
        "source": qg_to_obj(source),
        "target": qg_to_obj(target),
        "matrix": matrix_to_obj(_coefficients_from_images(images, pair)),
        "basisConvention": "orthonormalized-slice",
    }


def coaction_parts_from_obj(obj, base="."):
    """Returns (orthonormal D basis, qg, image matrices) for a coaction file."""
    dspec = _need(obj, "D", "coaction")
    if not isinstance(dspec, dict) or "basis" not in dspec:
        raise ParseError("coaction: D must be an object with a basis list")
    raw = [matrix_from_obj(b, "D basis element") for b in dspec["basis"]]
    if not raw:
        raise ParseError("coaction: D basis is empty")
    qg = qg_from_obj(_need(obj, "qg", "coaction"), base)
    basis = orthonormal_basis(raw)
    m = matrix_from_obj(_need(obj, "gamma", "coaction"), "gamma")
    if m.shape[1] != len(basis):
        raise ParseError(
            f"gamma has {m.shape[1]} columns, orthonormalized D has {len(basis)}"
        )
    pair = [kron(d, c) for d in basis for c in qg.algC]
    images = _images_from_coefficients(m, pair, "gamma")
    return basis, qg, images


def coaction_to_obj(coaction):
    qg = coaction.qg
    # a reader re-orthonormalizes the stored basis (pivoted QR can flip
    # signs even on orthonormal input), so gamma's coefficients must be
    # taken against that reconstruction, not against algebraD itself
    basis = orthonormal_basis(list(coaction.algebraD))
    pair = [kron(d, c) for d in basis for c in qg.algC]
    images = [coaction.gamma(d) for d in basis]
    return {
        "D": {"basis": [matrix_to_obj(d) for d in coaction.algebraD]},
        "qg": qg_to_obj(qg),
        "gamma": matrix_to_obj(_coefficients_from_images(images, pair)),
    }


def detect_kind(obj):
    """Guess the subject kind of a parsed JSON object from its keys."""
    if "table" in obj or "order" in obj:
        return "group"
    if "kind" in obj:
        return "hom"
    if "V" in obj:
        return "bicharacter"
    if "gamma" in obj:
        return "coaction"
    if "W" in obj or "dim" in obj or "group" in obj or "picture" in obj:
        return "qg"
    raise ParseError(f"cannot tell what kind of object this is; keys: {sorted(obj)}")
