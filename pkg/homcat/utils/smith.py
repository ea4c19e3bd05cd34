from __future__ import annotations
from collections import defaultdict

from sympy import factorint


def diagonalize(rows: list[list[int]], num_cols: int) -> tuple[list[int], list[list[int]]]:
    """Integer row/column reduction of a relation matrix.

    Returns the diagonal D and the column transform T with S·A·T = D for some
    invertible S. No divisibility is enforced between diagonal entries. The
    quotient ℤ^n / rowspace(A) is ⊕ ℤ/|d_j|, and generator k has coordinates
    given by row k of T.
    """
    D = [list(map(int, row)) for row in rows]
    for row in D:
        assert len(row) == num_cols
    m, n = len(D), num_cols
    T = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_cols(j1: int, j2: int) -> None:
        for M in (D, T):
            for row in M:
                row[j1], row[j2] = row[j2], row[j1]

    def add_col(src: int, dst: int, q: int) -> None:
        # column dst += q * column src
        for M in (D, T):
            for row in M:
                row[dst] += q * row[src]

    diag: list[int] = []
    for k in range(min(m, n)):
        while True:
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    v = D[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                return diag + [0] * (n - len(diag)), T
            _, i, j = best
            D[k], D[i] = D[i], D[k]
            if j != k:
                swap_cols(k, j)
            pivot = D[k][k]
            clean = True
            for i in range(k + 1, m):
                if D[i][k]:
                    q = D[i][k] // pivot
                    D[i] = [a - q * b for a, b in zip(D[i], D[k])]
                    clean = clean and D[i][k] == 0
            for j in range(k + 1, n):
                if D[k][j]:
                    add_col(k, j, -(D[k][j] // pivot))
                    clean = clean and D[k][j] == 0
            if clean:
                break
        diag.append(D[k][k])
    return diag + [0] * (n - len(diag)), T


def invariant_factors(diagonal: list[int]) -> list[int]:
    """Invariant factors d1 | d2 | ... of ⊕ ℤ/d, dropping trivial summands."""
    powers: dict[int, list[int]] = defaultdict(list)
    for d in diagonal:
        d = abs(int(d))
        if d == 0:
            raise ValueError("infinite cyclic summand has no invariant factor")
        for p, e in factorint(d).items():
            powers[p].append(p ** e)
    if not powers:
        return []
    for p in powers:
        powers[p].sort(reverse=True)
    length = max(len(v) for v in powers.values())
    factors = [1] * length
    for stack in powers.values():
        for i, q in enumerate(stack):
            factors[i] *= q
    return sorted(f for f in factors if f > 1)
