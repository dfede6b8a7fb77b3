"""Exact incidence-matrix algebra (integers and rationals only)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .geometry import Plane


class SingularMatrixError(ArithmeticError):
    pass


@dataclass(frozen=True)
class IncidenceMatrix:
    """Rows are lines, columns are points."""

    order: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def text(self) -> str:
        return "".join(" ".join(map(str, r)) + "\n" for r in self.rows)


def incidence_matrix(plane: Plane) -> IncidenceMatrix:
    n_pts = plane.num_points
    rows = []
    for pts in plane.line_sets:
        rows.append(tuple(1 if j in pts else 0 for j in range(n_pts)))
    return IncidenceMatrix(plane.order, tuple(rows))


def gram(a: IncidenceMatrix) -> list[list[int]]:
    """A A^T; entry (i, j) counts the points common to lines i and j."""
    return [[sum(x * y for x, y in zip(ri, rj)) for rj in a.rows] for ri in a.rows]


def bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; every intermediate stays an integer."""
    a = [list(r) for r in m]
    size = len(a)
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for r in range(k + 1, size):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1] if size else 1


def closed_form_gram_det(n: int) -> int:
    return (n + 1) ** 2 * n ** (n * n + n)


@dataclass(frozen=True)
class GramDeterminant:
    computed: int
    closed_form: int

    @property
    def agrees(self) -> bool:
        return self.computed == self.closed_form


def gram_determinant(a: IncidenceMatrix) -> GramDeterminant:
    return GramDeterminant(bareiss_det(gram(a)), closed_form_gram_det(a.order))


def solve_exact(m: list[list[int]], rhs: list) -> list[Fraction]:
    """Solve m x = rhs over the rationals by Gauss-Jordan elimination."""
    size = len(m)
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(m, rhs)]
    for col in range(size):
        piv = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("incidence matrix is singular; not a projective plane")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        if p != 1:
            aug[col] = [v / p for v in aug[col]]
        for r in range(size):
            f = aug[r][col]
            if r != col and f:
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [row[-1] for row in aug]


def solve_line_sums(a: IncidenceMatrix, c: Rational | int) -> list[Fraction]:
    """The unique f with every line sum equal to c."""
    return solve_exact([list(r) for r in a.rows], [Fraction(c)] * a.size)
