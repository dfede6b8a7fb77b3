"""Integer matrix diagonalization and solution sets of B f = 0 (mod m)."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Diagonalization:
    """``U B V = diag(d)`` with U, V unimodular; ``V_inv`` is kept for membership tests."""

    d: tuple[int, ...]
    V: tuple[tuple[int, ...], ...]
    V_inv: tuple[tuple[int, ...], ...]
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.d)


def diagonalize(B: list[list[int]]) -> Diagonalization:
    rows, cols = len(B), len(B[0]) if B else 0
    a = [list(r) for r in B]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]
    Vi = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def col_addmul(dst, src, k):
        # column dst += k * column src; the inverse gets row src -= k * row dst
        for r in a:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]
        Vi[src] = [x - k * y for x, y in zip(Vi[src], Vi[dst])]

    d = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        if j != t:
            col_swap(t, j)
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    k = a[i][t] // p
                    a[i] = [x - k * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    col_addmul(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if done:
                break
            nz = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            nz += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, i, j = min(nz)
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                col_swap(t, j)
        d.append(abs(a[t][t]))
        t += 1
    return Diagonalization(tuple(d), tuple(map(tuple, V)), tuple(map(tuple, Vi)), cols)


def solution_count(diag: Diagonalization, m: int) -> int:
    count = m ** (diag.ncols - diag.rank)
    for di in diag.d:
        count *= math.gcd(di, m)
    return count


def iter_solutions(diag: Diagonalization, m: int):
    """All f (mod m) with B f = 0, as tuples; order is deterministic but unsorted."""
    choices = []
    for di in diag.d:
        step = m // math.gcd(di, m)
        choices.append(range(0, m, step))
    choices += [range(m)] * (diag.ncols - diag.rank)
    V = diag.V
    for g in itertools.product(*choices):
        yield tuple(sum(V[r][c] * g[c] for c in range(diag.ncols) if g[c]) % m for r in range(diag.ncols))


def is_solution(diag: Diagonalization, m: int, f) -> bool:
    g = [sum(row[c] * f[c] for c in range(diag.ncols)) for row in diag.V_inv]
    return all((di * gi) % m == 0 for di, gi in zip(diag.d, g))
