"""Line-invariant and magic labelings of projective planes.

All group-valued constructions here are integer combinations of the line
labelings ``v_line(plane, L, m)``: the value ``m / gcd(n, m)`` on ``L`` and
zero elsewhere.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from . import gf
from .geometry import Plane, PlaneError, line_through, lines_through_point, meet
from .groups import AbelianGroup, Labeling, labeling_from_components, verify


class ConstructionError(ValueError):
    pass


def v_line(plane: Plane, line: int, m: int) -> Labeling:
    if m < 2:
        raise ConstructionError(f"modulus must be >= 2, got {m}")
    c = m // math.gcd(plane.order, m)
    on = plane.line_sets[line]
    values = [c if x in on else 0 for x in range(plane.num_points)]
    return labeling_from_components(plane, [m], [values], {"construction": "v_line", "line": line})


def combine_lines(plane: Plane, m: int, terms: Iterable[tuple[int, int]]) -> list[int]:
    """Residues of sum(coef * v_line(L)) for (coef, L) in terms, as one Z/m component."""
    acc = [0] * plane.num_points
    for coef, line in terms:
        lab = v_line(plane, line, m)
        for x, val in enumerate(lab.component(0)):
            acc[x] = (acc[x] + coef * val) % m
    return acc


def is_pseudomagic_cyclic(n: int, m: int) -> bool:
    if m < 2:
        raise ConstructionError(f"modulus must be >= 2, got {m}")
    return math.gcd(n, m) != 1


def product_magic(plane: Plane) -> Labeling:
    """One Z/n coordinate per line: the point's membership vector."""
    n = plane.order
    comps = [v_line(plane, li, n).component(0) for li in range(plane.num_lines)]
    return labeling_from_components(plane, [n] * plane.num_lines, comps, {"construction": "product"})


# -- order >= 5 ---------------------------------------------------------------

@dataclass
class TheoremFrame:
    """Named points and lines of the order >= 5 construction.

    ``L[0..n]`` pass through ``x`` with ``L[n]`` the line xy; ``Lp[0..n-1]``
    are the other lines through ``y`` and ``Lp[n] == L[n]``. ``w[i][j]`` is
    ``L[i]`` meet ``Lp[j]``. ``z`` and ``Lpp`` are keyed 1..n-1.
    """

    n: int
    x: int
    y: int
    L: list[int]
    Lp: list[int]
    w: list[list[int]]
    z: dict[int, int]
    Lpp: dict[int, int]
    J: int
    J_prime: int
    h: int
    h_prime: int
    h_candidates: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "x": self.x, "y": self.y, "L": self.L, "Lp": self.Lp,
            "z": {str(k): v for k, v in self.z.items()},
            "Lpp": {str(k): v for k, v in self.Lpp.items()},
            "J": self.J, "J_prime": self.J_prime, "h": self.h, "h_prime": self.h_prime,
        }


def build_frame(plane: Plane) -> TheoremFrame:
    n = plane.order
    if n < 5:
        raise ConstructionError(f"the general construction needs order >= 5, got {n}")
    x = 0
    through_x = lines_through_point(plane, x)
    L = through_x[:-1] + through_x[-1:]
    Ln = L[n]
    y = min(p for p in plane.lines[Ln] if p != x)
    Lp = [li for li in lines_through_point(plane, y) if li != Ln] + [Ln]
    w = [[meet(plane, L[i], Lp[j]) for j in range(n)] for i in range(n)]

    z2 = meet(plane, Ln, line_through(plane, w[0][0], w[1][1]))
    J_prime = line_through(plane, w[1][0], z2)
    excluded = {w[0][1], y, w[1][1], meet(plane, J_prime, Lp[1])}
    h_candidates = [h for h in range(n) if w[h][1] not in excluded]
    if not h_candidates:
        raise ConstructionError("no admissible h")  # impossible for a projective plane of order >= 5
    h = h_candidates[0]
    z1 = meet(plane, line_through(plane, w[0][0], w[h][1]), Ln)
    z_nm2 = meet(plane, line_through(plane, w[1][0], w[h][1]), Ln)
    if len({z1, z2, z_nm2}) != 3:
        raise ConstructionError(f"degenerate z choice: z1={z1}, z2={z2}, z_(n-2)={z_nm2}")

    z = {1: z1, 2: z2, n - 2: z_nm2}
    rest = sorted(p for p in plane.lines[Ln] if p not in (x, y, z1, z2, z_nm2))
    free_slots = [k for k in range(3, n - 2)] + [n - 1]
    if len(rest) != len(free_slots):
        raise PlaneError("line xy does not have n+1 points")
    z.update(zip(free_slots, rest))
    z = dict(sorted(z.items()))
    Lpp = {k: line_through(plane, w[0][0], z[k]) for k in range(1, n)}
    J = line_through(plane, w[1][0], z_nm2)
    w0hp = meet(plane, L[0], J)
    h_prime = w[0].index(w0hp)
    return TheoremFrame(n, x, y, L, Lp, w, z, Lpp, J, J_prime, h, h_prime, h_candidates)


def first_two_components(plane: Plane, L: list[int], Lp: list[int]) -> tuple[list[int], list[int]]:
    """v1 = sum_{k=1..n} (k-1) v_{L_k}, v2 likewise over the lines through y."""
    n = plane.order
    v1 = combine_lines(plane, n, [(k - 1, L[k]) for k in range(1, n + 1)])
    v2 = combine_lines(plane, n, [(k - 1, Lp[k]) for k in range(1, n + 1)])
    return v1, v2


def collision_classes(plane: Plane, components: list[list[int]]) -> set[frozenset[int]]:
    """Groups of two or more points sharing the same tuple of component values."""
    by_value = defaultdict(set)
    for x in range(plane.num_points):
        by_value[tuple(c[x] for c in components)].add(x)
    return {frozenset(s) for s in by_value.values() if len(s) > 1}


def expected_collisions(frame: TheoremFrame) -> set[frozenset[int]]:
    """The four coincidence families of (v1, v2) predicted by the construction."""
    n, w = frame.n, frame.w
    fams = {frozenset({w[0][0], w[0][1], w[1][0], w[1][1]})}
    for i in range(2, n):
        fams.add(frozenset({w[0][i], w[1][i]}))
        fams.add(frozenset({w[i][0], w[i][1]}))
    fams.add(frozenset(frame.z.values()))
    return fams


def third_component(plane: Plane, frame: TheoremFrame) -> list[int]:
    n = plane.order
    terms = [(k - 1, frame.Lpp[k]) for k in range(1, n)]
    terms += [(n - 1, frame.L[0]), (2, frame.J)]
    return combine_lines(plane, n, terms)


def magic_general(plane: Plane) -> Labeling:
    """Magic labeling into (Z/n)^3 for any plane of order n >= 5."""
    frame = build_frame(plane)
    n = plane.order
    v1, v2 = first_two_components(plane, frame.L, frame.Lp)
    v3 = third_component(plane, frame)
    return labeling_from_components(plane, [n] * 3, [v1, v2, v3],
                                    {"construction": "general", "frame": frame.to_json()})


# -- orders 2, 3, 4 -----------------------------------------------------------

def _require_coords(plane: Plane, n: int) -> None:
    if plane.order != n:
        raise ConstructionError(f"expected a plane of order {n}, got {plane.order}")
    if not plane.has_coords():
        raise ConstructionError("this construction needs a coordinatized plane (build it with build_plane)")


def magic_order2(plane: Plane) -> Labeling:
    """[x:y:z] -> (x, y, z) in (Z/2)^3."""
    _require_coords(plane, 2)
    comps = [[c[i].coeffs[0] for c in plane.coords] for i in range(3)]
    return labeling_from_components(plane, [2, 2, 2], comps, {"construction": "order2"})


def order3_polys(x: int, y: int, z: int) -> tuple[int, int, int]:
    """The three cyclically related quadratic forms over GF(3)."""
    v1 = x * x + z * z + x * y + 2 * y * z + 2 * x * z
    v2 = y * y + x * x + y * z + 2 * z * x + 2 * y * x
    v3 = z * z + y * y + z * x + 2 * x * y + 2 * z * y
    return v1 % 3, v2 % 3, v3 % 3


def magic_order3(plane: Plane) -> Labeling:
    _require_coords(plane, 3)
    vals = [order3_polys(*(c.coeffs[0] for c in p)) for p in plane.coords]
    return labeling_from_components(plane, [3, 3, 3], list(zip(*vals)), {"construction": "order3"})


def order3_representative_check(plane: Plane) -> list[tuple[int, int]]:
    """(point, scalar) pairs where rescaling the representative changes the value; empty if well defined."""
    _require_coords(plane, 3)
    bad = []
    for i, p in enumerate(plane.coords):
        base = order3_polys(*(c.coeffs[0] for c in p))
        for c in (1, 2):
            if order3_polys(*((c * e.coeffs[0]) % 3 for e in p)) != base:
                bad.append((i, c))
    return bad


@dataclass
class Order4Frame:
    x: int
    y: int
    w: list[list[int]]
    z: list[int]
    L: list[int]
    Lp: list[int]
    Lpp: list[int]


def order4_frame(plane: Plane) -> Order4Frame:
    """Fixed coordinate frame over GF(4) = {0, 1, a, a+1}, a^2 = a + 1."""
    _require_coords(plane, 4)
    a = gf.enumerate_elements(plane.spec)
    P = plane.point_at
    x, y = P(0, 1, 0), P(0, 0, 1)
    w_i0 = [P(1, 0, a[i]) for i in range(4)]
    w_0i = [P(1, a[i], 0) for i in range(4)]
    z = [P(0, 1, a[i]) for i in range(4)]
    Ln = line_through(plane, x, y)
    L = [line_through(plane, x, w_i0[i]) for i in range(4)] + [Ln]
    Lp = [line_through(plane, y, w_0i[i]) for i in range(4)] + [Ln]
    w = [[meet(plane, L[i], Lp[j]) for j in range(4)] for i in range(4)]
    Lpp = [line_through(plane, w[0][0], z[i]) for i in range(4)]
    return Order4Frame(x, y, w, z, L, Lp, Lpp)


def order4_J_candidates(plane: Plane) -> list[int]:
    """Lines J for which v3 = 3 v_{L0} + v_{L''2} + 2 v_{L''3} + v_J completes a magic labeling."""
    fr = order4_frame(plane)
    v1, v2 = first_two_components(plane, fr.L, fr.Lp)
    base = combine_lines(plane, 4, [(3, fr.L[0]), (1, fr.Lpp[2]), (2, fr.Lpp[3])])
    good = []
    for J in range(plane.num_lines):
        vJ = v_line(plane, J, 4).component(0)
        v3 = [(b + t) % 4 for b, t in zip(base, vJ)]
        if len(set(zip(v1, v2, v3))) == plane.num_points:
            good.append(J)
    return good


def magic_order4(plane: Plane) -> Labeling:
    fr = order4_frame(plane)
    candidates = order4_J_candidates(plane)
    if not candidates:
        raise ConstructionError("no auxiliary line J makes the order-4 labeling injective")
    J = candidates[0]
    v1, v2 = first_two_components(plane, fr.L, fr.Lp)
    v3 = combine_lines(plane, 4, [(3, fr.L[0]), (1, fr.Lpp[2]), (2, fr.Lpp[3]), (1, J)])
    meta = {
        "construction": "order4",
        "J": J,
        "J_points": [plane.labels[p] for p in plane.lines[J]],
        "J_candidates": candidates,
    }
    return labeling_from_components(plane, [4, 4, 4], [v1, v2, v3], meta)


def magic_labeling(plane: Plane) -> Labeling:
    """Magic labeling into (Z/n)^3, dispatching on the order."""
    special = {2: magic_order2, 3: magic_order3, 4: magic_order4}
    if plane.order in special:
        return special[plane.order](plane)
    return magic_general(plane)


# -- prime order necessity --------------------------------------------------

@dataclass(frozen=True)
class SubgroupVerdict:
    prime: int
    group: AbelianGroup
    factors_divisible: int
    contains: bool
    note: str = "necessary condition for a magic labeling of a prime-order plane, not sufficient"


def prime_subgroup_bound(n: int, group: AbelianGroup) -> SubgroupVerdict:
    """Does ``group`` contain (Z/n)^3?  Counts cyclic factors whose n-primary part is nontrivial."""
    if not gf.is_prime(n):
        raise ConstructionError(f"{n} is not prime")
    count = sum(1 for m in group.orders if m % n == 0)
    return SubgroupVerdict(n, group, count, count >= 3)


def check_magic(v: Labeling) -> bool:
    return verify(v).classification == "magic"
