"""JSON encodings.  Scalars travel as strings so that nothing is rounded."""

from __future__ import annotations

from .matrix import Matrix
from .pencil import KroneckerInvariants, Pencil, PencilWeyr
from .poly import Poly, PolyMatrix, format_poly
from .relation import LinearRelation
from .scalars import format_scalar, parse_scalar
from .subspace import span
from .weyr import WeyrCharacteristic

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "pencil_to_json",
    "pencil_from_json",
    "relation_to_json",
    "relation_from_json",
    "invariants_to_json",
    "invariants_from_json",
    "pencil_weyr_to_json",
    "weyr_to_json",
    "poly_to_json",
    "polymatrix_from_json",
]


def matrix_to_json(M: Matrix) -> dict:
    return {"rows": M.rows, "cols": M.cols, "entries": [format_scalar(x) for x in M.entries]}


def _scalar(x):
    return parse_scalar(x) if isinstance(x, str) else x


def matrix_from_json(d: dict) -> Matrix:
    return Matrix.from_entries(int(d["rows"]), int(d["cols"]), [_scalar(x) for x in d["entries"]])


def pencil_to_json(P: Pencil) -> dict:
    return {"n": P.n, "m": P.m, "E": matrix_to_json(P.E), "F": matrix_to_json(P.F)}


def pencil_from_json(d: dict) -> Pencil:
    P = Pencil(matrix_from_json(d["E"]), matrix_from_json(d["F"]))
    if ("n" in d and int(d["n"]) != P.n) or ("m" in d and int(d["m"]) != P.m):
        raise ValueError("declared n, m do not match the matrices")
    return P


def relation_to_json(S: LinearRelation) -> dict:
    """``basis`` is ``2m x dim``; rows ``0..m-1`` hold ``x``, rows ``m..2m-1`` hold ``y``."""
    return {"m": S.m, "basis": matrix_to_json(S.space.basis)}


def relation_from_json(d: dict) -> LinearRelation:
    m = int(d["m"])
    B = matrix_from_json(d["basis"])
    if B.rows != 2 * m:
        raise ValueError("relation basis must have 2m rows")
    return LinearRelation(m, span(2 * m, B.columns()))


def _lam(x):
    return format_scalar(x)


def invariants_to_json(inv: KroneckerInvariants) -> dict:
    return {
        "finite": [{"lambda": _lam(lam), "segre": list(p)} for lam, p in inv.finite.items()],
        "alpha": list(inv.alpha),
        "beta": list(inv.beta),
        "gamma": list(inv.gamma),
    }


def invariants_from_json(d: dict) -> KroneckerInvariants:
    finite = {}
    for item in d.get("finite", []):
        lam = parse_scalar(str(item["lambda"]))
        if lam in finite:
            raise ValueError(f"eigenvalue {item['lambda']} listed twice")
        finite[lam] = item["segre"]
    return KroneckerInvariants(finite=finite, alpha=d.get("alpha", ()),
                               beta=d.get("beta", ()), gamma=d.get("gamma", ()))


def pencil_weyr_to_json(pw: PencilWeyr) -> dict:
    return {
        "w": [{"lambda": _lam(lam), "parts": list(p)} for lam, p in pw.w.items()],
        "a": list(pw.a),
        "b": list(pw.b),
        "c": list(pw.c),
    }


def weyr_to_json(wc: WeyrCharacteristic) -> dict:
    return {
        "W": [{"lambda": _lam(lam), "parts": list(wc.W[lam])} for lam in wc.eigenvalues()],
        "A": list(wc.A),
        "B": list(wc.B),
        "C": list(wc.C),
        "unresolved": [poly_to_json(p) for p in wc.unresolved_factors],
        "degenerate_spectrum": wc.degenerate_spectrum,
    }


def poly_to_json(p: Poly) -> str:
    return format_poly(p)


def polymatrix_from_json(d: dict) -> PolyMatrix:
    """``{rows, cols, entries}`` with each entry a list of coefficient strings, lowest degree first."""
    rows, cols = int(d["rows"]), int(d["cols"])
    entries = d["entries"]
    if len(entries) != rows * cols:
        raise ValueError("entries length must equal rows*cols")
    polys = [Poly([_scalar(c) for c in e]) for e in entries]
    return PolyMatrix(rows, cols, tuple(tuple(polys[i * cols:(i + 1) * cols]) for i in range(rows)))
