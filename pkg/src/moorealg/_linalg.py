"""Exact row reduction with unit pivots.

Works over every coefficient mode because elimination only ever divides
by unit elements.  Over the field modes all nonzero entries are units
(homogeneous monomials in the graded Laurent rings), so the pivot
search cannot fail there; a column whose nonzero entries are all
non-units leaves the rank uncertified and raises.
"""

from .errors import RankUndeterminedError


def echelon_rank(rows) -> int:
    """Number of unit pivots of a matrix (list of RingElem rows)."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][col] and rows[r][col].is_unit():
                piv = r
                break
        if piv is None:
            if any(rows[r][col] for r in range(rank, len(rows))):
                raise RankUndeterminedError(
                    f"column {col} has nonzero entries but no unit pivot"
                )
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        prow = [e * inv for e in rows[rank]]
        rows[rank] = prow
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                c = rows[r][col]
                rows[r] = [a - c * b for a, b in zip(rows[r], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def mat_mul(a, b, zero):
    """Plain exact matrix product; `zero` is the ring's zero element."""
    if not a or not b:
        return []
    out = []
    for row in a:
        acc = [zero for _ in b[0]]
        for j, e in enumerate(row):
            if not e:
                continue
            brow = b[j]
            acc = [x + e * y for x, y in zip(acc, brow)]
        out.append(acc)
    return out


def is_zero_matrix(m) -> bool:
    return all(not e for row in m for e in row)
