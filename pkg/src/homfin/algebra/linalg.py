# src/homfin/algebra/linalg.py

"""
Exact sparse linear algebra on top of sympy's SDM (dict-of-dicts) matrices.

Vectors are plain dicts {position: nonzero scalar}. Matrices built here are
column-oriented from the caller's point of view: `columns[j]` becomes column j.
All routines accept empty inputs and zero-sized shapes.
"""

from typing import Dict, List, Sequence, Tuple

from sympy.polys.domains.domain import Domain
from sympy.polys.matrices.sdm import SDM

Vector = Dict[int, object]


def from_columns(columns: Sequence[Vector], nrows: int, K: Domain) -> SDM:
    rows: Dict[int, Dict[int, object]] = {}
    for j, col in enumerate(columns):
        for i, c in col.items():
            if c:
                rows.setdefault(i, {})[j] = c
    return SDM(rows, (nrows, len(columns)), K)


def columns_of(M: SDM) -> List[Vector]:
    cols: List[Vector] = [dict() for _ in range(M.shape[1])]
    for i, row in M.items():
        for j, c in row.items():
            cols[j][i] = c
    return cols


def rref(M: SDM) -> Tuple[SDM, List[int]]:
    if not M:
        return M, []
    R, pivots = M.rref()
    return R, list(pivots)


def rank_of(M: SDM) -> int:
    return len(rref(M)[1])


def rank(columns: Sequence[Vector], nrows: int, K: Domain) -> int:
    return rank_of(from_columns(columns, nrows, K))


def pivot_columns(columns: Sequence[Vector], nrows: int, K: Domain) -> List[int]:
    """Indices of the columns admitted by a left-to-right greedy independence scan."""
    return rref(from_columns(columns, nrows, K))[1]


def nullspace(M: SDM) -> List[Vector]:
    """Basis of {v : Mv = 0}, one dict per basis vector, in rref order."""
    ncols = M.shape[1]
    if ncols == 0:
        return []
    if not M:
        return [{j: M.domain.one} for j in range(ncols)]
    N, _ = M.nullspace()
    return [dict(N[i]) for i in sorted(N)]


def span_basis(vectors: Sequence[Vector], dim: int, K: Domain) -> List[Vector]:
    """Row-reduced basis of the span of `vectors` inside K^dim."""
    if not vectors or dim == 0:
        return []
    rows = {i: dict(v) for i, v in enumerate(vectors) if v}
    if not rows:
        return []
    R, pivots = SDM(rows, (len(vectors), dim), K).rref()
    return [dict(R[i]) for i in sorted(R)]


def matmul(A: SDM, B: SDM) -> SDM:
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"Shape mismatch {A.shape} x {B.shape}")
    if not A or not B:
        return SDM({}, (A.shape[0], B.shape[1]), A.domain)
    return A.matmul(B)


def apply(M: SDM, v: Vector) -> Vector:
    out: Vector = {}
    for i, row in M.items():
        s = M.domain.zero
        for j, c in row.items():
            x = v.get(j)
            if x:
                s += c * x
        if s:
            out[i] = s
    return out


def in_span(basis: Sequence[Vector], v: Vector, dim: int, K: Domain) -> bool:
    if not v:
        return True
    return rank(list(basis) + [v], dim, K) == rank(basis, dim, K)


def add_into(target: Vector, v: Vector, c, K: Domain) -> None:
    for i, x in v.items():
        s = target.get(i, K.zero) + c * x
        if s:
            target[i] = s
        else:
            target.pop(i, None)


def is_zero(M: SDM) -> bool:
    return not any(M.values())


def nullspace_and_rank(M: SDM) -> Tuple[List[Vector], int]:
    """Nullspace basis and rank from a single elimination."""
    ncols = M.shape[1]
    if ncols == 0:
        return [], 0
    if not M:
        return [{j: M.domain.one} for j in range(ncols)], 0
    R, pivots = M.rref()
    N, _ = R.nullspace_from_rref(pivots)
    return [dict(N[i]) for i in sorted(N)], len(pivots)
