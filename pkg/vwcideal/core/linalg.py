"""Exact matrix rank over GF(2) and over the rationals."""

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


def gf2_rank(rows: list[int], n_cols: int) -> int:
    """Rank over GF(2) of rows given as int bitsets, by Gaussian elimination."""
    work = rows[:]
    rank = 0
    row_idx = 0
    for col in range(n_cols):
        pivot = None
        for r in range(row_idx, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and ((work[r] >> col) & 1):
                work[r] ^= work[row_idx]
        rank += 1
        row_idx += 1
        if row_idx == len(work):
            break
    return rank


def rational_rank(rows: list[dict[int, int]], n_cols: int) -> int:
    """Rank over QQ of a sparse integer matrix given as one {column: entry} dict per row."""
    if not rows or n_cols == 0:
        return 0
    sparse = {r: {c: QQ(v) for c, v in row.items() if v} for r, row in enumerate(rows)}
    sparse = {r: row for r, row in sparse.items() if row}
    if not sparse:
        return 0
    return DomainMatrix(sparse, (len(rows), n_cols), QQ).rank()
