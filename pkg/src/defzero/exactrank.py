"""Exact rank of small integer matrices.

Deficiency is an integer identity, so the rank of the stoichiometric matrix
has to be the rank over the rationals, computed exactly.  Fraction-free
(Bareiss) elimination does that with integer arithmetic only: after each
pivot step every entry is a minor of the original matrix, and dividing by
the previous pivot is an exact integer division.

A Gaussian elimination over GF(131071) runs first as a fast path.  Rank over
a prime field can only undercount the rational rank, so when it reaches the
dimension bound min(rows, cols) the answer is certified; anything short of
the bound falls back to the fraction-free route.
"""

from __future__ import annotations

PRIME = 131071  # 2**17 - 1

Matrix = list[list[int]]


def bareiss_rank(mat: Matrix) -> int:
    """Rank over the rationals by fraction-free integer elimination.

    The input is a list of rows and is not modified.
    """
    rows = [list(r) for r in mat]
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    rank = 0
    prev_pivot = 1
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot_row = None
        for r in range(rank, n_rows):
            if rows[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        if pivot_row != rank:
            rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        top = rows[rank]
        for r in range(rank + 1, n_rows):
            row = rows[r]
            factor = row[col]
            if factor:
                for c in range(col + 1, n_cols):
                    row[c] = (pivot * row[c] - factor * top[c]) // prev_pivot
                row[col] = 0
            elif prev_pivot != pivot:
                for c in range(col + 1, n_cols):
                    row[c] = pivot * row[c] // prev_pivot
        prev_pivot = pivot
        rank += 1
    return rank


def rank_mod_prime(mat: Matrix, prime: int = PRIME) -> int:
    """Rank over GF(prime); a lower bound for the rank over the rationals."""
    rows = [[x % prime for x in r] for r in mat]
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot_row = None
        for r in range(rank, n_rows):
            if rows[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        if pivot_row != rank:
            rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        top = rows[rank]
        inv = pow(top[col], -1, prime)
        for r in range(rank + 1, n_rows):
            row = rows[r]
            if row[col]:
                factor = row[col] * inv % prime
                for c in range(col + 1, n_cols):
                    row[c] = (row[c] - factor * top[c]) % prime
                row[col] = 0
        rank += 1
    return rank


def _canonical_column(col: tuple[int, ...]) -> tuple[int, ...]:
    # A column and its negation span the same line; keep one representative.
    neg = tuple(-x for x in col)
    return col if col >= neg else neg


def rank_of_columns(columns, n_rows: int) -> int:
    """Exact rank of the matrix whose columns are the given integer vectors.

    Duplicate columns, negated duplicates, and zero columns are dropped
    before elimination; none of them affect the rank.
    """
    kept = {
        _canonical_column(tuple(col))
        for col in columns
        if any(col)
    }
    if not kept or n_rows == 0:
        return 0
    ordered = sorted(kept)
    mat = [[col[r] for col in ordered] for r in range(n_rows)]
    bound = min(n_rows, len(ordered))
    fast = rank_mod_prime(mat)
    if fast == bound:
        return fast
    return bareiss_rank(mat)
