"""Exit criteria for the library, runnable from the CLI and from pytest.

Every criterion is an exact check; a time limit, where given, is part of
the criterion.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import geometry, incidence, magic, oracle
from .geometry import build_plane, fano_plane
from .groups import AbelianGroup, verify

PLANE_ORDERS = (2, 3, 4, 5, 7, 8, 9)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float | None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        limit = f" (limit {self.limit:g}s)" if self.limit else ""
        return f"[{status}] {self.number:2d}. {self.title}: {self.detail} [{self.seconds:.2f}s{limit}]"


def _fail(detail: str) -> tuple[bool, str]:
    return False, detail


def plane_counting() -> tuple[bool, str]:
    for q in PLANE_ORDERS:
        p = build_plane(q)
        n = p.order
        N = n * n + n + 1
        if p.num_points != N or p.num_lines != N:
            return _fail(f"q={q}: {p.num_points} points, {p.num_lines} lines")
        if any(len(l) != n + 1 for l in p.lines):
            return _fail(f"q={q}: a line without n+1 points")
        if any(len(t) != n + 1 for t in p.lines_through):
            return _fail(f"q={q}: a point not on n+1 lines")
        rep = geometry.validate_axioms(p)
        if not rep.ok:
            return _fail(f"q={q}: {rep.violations[:3]}")
    return True, f"q in {PLANE_ORDERS} all satisfy the counts and axioms"


def fano_table() -> tuple[bool, str]:
    text = incidence.incidence_matrix(fano_plane()).text()
    if text != geometry.FANO_INCIDENCE:
        return _fail("generated Fano matrix differs from the textbook table")
    return True, "7x7 table reproduced verbatim"


def _fraction_det(m: list[list[int]]) -> Fraction:
    a = [[Fraction(v) for v in r] for r in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def determinant_identity() -> tuple[bool, str]:
    for n in (2, 3, 4, 5):
        d = incidence.gram_determinant(incidence.incidence_matrix(build_plane(n)))
        if not d.agrees:
            return _fail(f"n={n}: computed {d.computed} vs closed form {d.closed_form}")
    table = geometry.from_incidence_text(geometry.FANO_INCIDENCE)
    g = incidence.gram(incidence.incidence_matrix(table))
    via_fractions = _fraction_det(g)
    via_bareiss = incidence.bareiss_det(g)
    if not (via_fractions == via_bareiss == incidence.closed_form_gram_det(2) == 576):
        return _fail(f"Fano: fractions {via_fractions}, Bareiss {via_bareiss}")
    return True, "n=2..5 match the closed form; Fano 576 by two eliminations"


def prop1_constant_solution(seed: int = 20240501) -> tuple[bool, str]:
    rng = random.Random(seed)
    for q in (2, 3, 4, 5):
        a = incidence.incidence_matrix(build_plane(q))
        for _ in range(5):
            c = Fraction(rng.randint(-1000, 1000), rng.randint(1, 97))
            f = incidence.solve_line_sums(a, c)
            if any(v != c / (q + 1) for v in f):
                return _fail(f"q={q}, c={c}: non-constant solution")
    return True, "A f = c has only the constant solution c/(n+1) (20 cases)"


def vline_invariance() -> tuple[bool, str]:
    checked = 0
    for q in PLANE_ORDERS:
        p = build_plane(q)
        for m in range(2, 25):
            expected = (m // math.gcd(q, m)) % m
            for li in range(p.num_lines):
                r = verify(magic.v_line(p, li, m))
                if not r.is_line_invariant or r.magic_constant.residues != (expected,):
                    return _fail(f"q={q}, m={m}, line {li}: {r.classification}, constant {r.magic_constant}")
                checked += 1
    return True, f"{checked} (plane, m, line) cases line invariant with constant m/gcd(n,m)"


def cyclic_classification() -> tuple[bool, str]:
    for q in PLANE_ORDERS:
        p = build_plane(q)
        for m in range(2, 25):
            if not magic.is_pseudomagic_cyclic(q, m):
                continue
            r = verify(magic.v_line(p, 0, m))
            if r.classification != "pseudomagic":
                return _fail(f"q={q}, m={m}: witness is {r.classification}")
    for p, ms in ((fano_plane(), range(2, 14)), (build_plane(3), range(2, 7))):
        for m in ms:
            v = oracle.confirm_no_cyclic_magic(p, m)
            if not v.matches_prediction or v.max_image_size > math.gcd(p.order, m):
                return _fail(f"order {p.order}, m={m}: {v}")
    return True, "witnesses for gcd>1; Fano m<=13 and PG(2,3) m<=6 never magic, image <= gcd"


def minimal_magic_group() -> tuple[bool, str]:
    for q in (5, 7, 8, 9):
        p = build_plane(q)
        v = magic.magic_general(p)
        r = verify(v)
        if r.classification != "magic" or v.group != AbelianGroup.power(q, 3):
            return _fail(f"q={q}: {r.classification} over {v.group}")
        fr = magic.build_frame(p)
        v1, v2 = magic.first_two_components(p, fr.L, fr.Lp)
        if magic.collision_classes(p, [v1, v2]) != magic.expected_collisions(fr):
            return _fail(f"q={q}: (v1, v2) collisions differ from the four families")
    return True, "orders 5, 7, 8, 9 magic over (Z/n)^3 with the predicted collisions"


def small_orders() -> tuple[bool, str]:
    for q, fn in ((2, magic.magic_order2), (3, magic.magic_order3), (4, magic.magic_order4)):
        v = fn(build_plane(q))
        r = verify(v)
        if r.classification != "magic" or v.group != AbelianGroup.power(q, 3):
            return _fail(f"order {q}: {r.classification} over {v.group}")
    bad = magic.order3_representative_check(build_plane(3))
    if bad:
        return _fail(f"order 3 values depend on the representative at {bad[:3]}")
    return True, "orders 2, 3, 4 magic over (Z/n)^3; order-3 forms well defined"


def product_construction() -> tuple[bool, str]:
    planes = [build_plane(q) for q in (2, 3, 4, 5)]
    planes.append(geometry.from_incidence_text(geometry.FANO_INCIDENCE))
    for p in planes:
        r = verify(magic.product_magic(p))
        if r.classification != "magic":
            return _fail(f"order {p.order} ({'ingested' if not p.has_coords() else 'generated'}): {r.classification}")
    return True, "magic on PG(2,q), q<=5, and on the ingested Fano table"


def prime_order_necessity() -> tuple[bool, str]:
    cases = (
        (2, AbelianGroup.of(2, 2, 2), True),
        (2, AbelianGroup.of(8, 2), False),
        (3, AbelianGroup.of(6, 6, 6), True),
    )
    for n, g, want in cases:
        if magic.prime_subgroup_bound(n, g).contains != want:
            return _fail(f"n={n}, G={g}: expected {want}")
    produced = []
    for q in (2, 3, 5, 7):
        p = build_plane(q)
        produced.append((q, magic.magic_labeling(p)))
        if q <= 5:
            produced.append((q, magic.product_magic(p)))
    for q, v in produced:
        if verify(v).classification != "magic":
            return _fail(f"q={q}: construction not magic")
        if not magic.prime_subgroup_bound(q, v.group).contains:
            return _fail(f"q={q}: magic over {v.group}, which lacks (Z/{q})^3")
    return True, f"3 listed verdicts; {len(produced)} magic groups all contain (Z/p)^3"


def parity_spot_values() -> tuple[bool, str]:
    for q in (5, 7, 8, 9):
        p = build_plane(q)
        fr = magic.build_frame(p)
        v = magic.magic_general(p)
        v1x, v2y, v3w = v[fr.x].residues[0], v[fr.y].residues[1], v[fr.w[0][0]].residues[2]
        want = 0 if q % 2 else q // 2
        if v1x != want or v2y != want:
            return _fail(f"n={q}: v1(x)={v1x}, v2(y)={v2y}, expected {want}")
        if q % 2 == 0 and v3w != q // 2:
            return _fail(f"n={q}: v3(w00)={v3w}, expected {q // 2}")
    return True, "v1(x)=v2(y)=0 for n=5,7,9; v1(x)=v2(y)=v3(w00)=4 for n=8"


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]], float | None]] = [
    (1, "plane counting facts and axioms", plane_counting, 5.0),
    (2, "Fano incidence matrix", fano_table, None),
    (3, "Gram determinant identity", determinant_identity, 10.0),
    (4, "no non-constant real line-invariant labeling", prop1_constant_solution, None),
    (5, "v_L is line invariant", vline_invariance, None),
    (6, "cyclic groups: pseudomagic iff gcd>1, never magic", cyclic_classification, 60.0),
    (7, "magic over (Z/n)^3 for n>=5", minimal_magic_group, 10.0),
    (8, "magic over (Z/n)^3 for n=2,3,4", small_orders, None),
    (9, "product construction", product_construction, None),
    (10, "prime order needs (Z/p)^3", prime_order_necessity, None),
    (11, "parity spot values", parity_spot_values, None),
]


def run_criterion(number: int) -> CriterionResult:
    num, title, fn, limit = next(c for c in CRITERIA if c[0] == number)
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported like any other
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if limit is not None and dt > limit:
        ok, detail = False, f"{detail}; took {dt:.1f}s"
    return CriterionResult(num, title, ok, detail, dt, limit)


def run_all() -> list[CriterionResult]:
    return [run_criterion(c[0]) for c in CRITERIA]
