"""Finite projective planes: construction of PG(2, q), ingestion, axiom checks."""

from __future__ import annotations

import itertools
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import gf
from .gf import FieldElement, FieldSpec


class PlaneError(ValueError):
    pass


Coords = tuple[FieldElement, FieldElement, FieldElement]


def normalize(coords: Sequence[FieldElement]) -> Coords:
    """Scale a nonzero triple so its first nonzero coordinate is 1."""
    for c in coords:
        if not c.is_zero():
            s = gf.inv(c)
            return tuple(s * x for x in coords)  # type: ignore[return-value]
    raise PlaneError("the zero vector is not a projective point")


def coord_label(coords: Sequence[FieldElement]) -> str:
    return "[" + ":".join(gf.render(c) for c in coords) + "]"


@dataclass(frozen=True, eq=False)
class Plane:
    """Points are indices 0..N-1; lines are sorted tuples of point indices.

    ``coords`` / ``line_coords`` are present only for planes built over a
    field; ingested planes carry opaque labels.
    """

    order: int
    labels: tuple[str, ...]
    lines: tuple[tuple[int, ...], ...]
    spec: FieldSpec | None = None
    coords: tuple[Coords, ...] | None = None
    line_coords: tuple[Coords, ...] | None = None
    _point_index: dict = field(default_factory=dict, repr=False)

    @property
    def num_points(self) -> int:
        return len(self.labels)

    @property
    def num_lines(self) -> int:
        return len(self.lines)

    @cached_property
    def lines_through(self) -> tuple[tuple[int, ...], ...]:
        through: list[list[int]] = [[] for _ in range(self.num_points)]
        for li, pts in enumerate(self.lines):
            for x in pts:
                through[x].append(li)
        return tuple(tuple(t) for t in through)

    @cached_property
    def line_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(pts) for pts in self.lines)

    def has_coords(self) -> bool:
        return self.coords is not None

    def point_at(self, *coords) -> int:
        """Index of the point with the given homogeneous coordinates (ints or field elements)."""
        if self.coords is None or self.spec is None:
            raise PlaneError("plane carries no coordinates")
        if not self._point_index:
            self._point_index.update({c: i for i, c in enumerate(self.coords)})
        key = normalize([self.spec.element(c) for c in coords])
        return self._point_index[key]

    def incident(self, x: int, line: int) -> bool:
        return x in self.line_sets[line]

    def permuted(self, point_order: Sequence[int], line_order: Sequence[int]) -> "Plane":
        """Re-enumerate: new point i is old point ``point_order[i]``; same for lines."""
        if sorted(point_order) != list(range(self.num_points)):
            raise PlaneError("point_order is not a permutation")
        if sorted(line_order) != list(range(self.num_lines)):
            raise PlaneError("line_order is not a permutation")
        new_of_old = {old: new for new, old in enumerate(point_order)}
        lines = tuple(tuple(sorted(new_of_old[x] for x in self.lines[li])) for li in line_order)
        return Plane(
            order=self.order,
            labels=tuple(self.labels[i] for i in point_order),
            lines=lines,
            spec=self.spec,
            coords=None if self.coords is None else tuple(self.coords[i] for i in point_order),
            line_coords=None if self.line_coords is None else tuple(self.line_coords[i] for i in line_order),
        )

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "points": list(self.labels), "lines": [list(l) for l in self.lines]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def projective_points(spec: FieldSpec) -> list[Coords]:
    """Normalized nonzero triples, lexicographic in the canonical element order."""
    elems = gf.enumerate_elements(spec)
    one = spec.one()
    out = []
    for triple in itertools.product(elems, repeat=3):
        first = next((c for c in triple if not c.is_zero()), None)
        if first is not None and first == one:
            out.append(triple)
    return out


def build_plane(q: int, max_order: int = gf.DEFAULT_MAX_ORDER) -> Plane:
    """PG(2, q): points and lines are the 1- and 2-dimensional subspaces of GF(q)^3."""
    spec = gf.field_of_order(q, max_order=max_order)
    pts = projective_points(spec)
    add_t, mul_t = gf.tables(spec)
    idx = [tuple(c.index for c in p) for p in pts]

    def dot(u, v):
        s = 0
        for a, b in zip(u, v):
            s = add_t[s][mul_t[a][b]]
        return s

    lines = tuple(tuple(i for i, p in enumerate(idx) if dot(p, d) == 0) for d in idx)
    return Plane(
        order=q,
        labels=tuple(coord_label(p) for p in pts),
        lines=lines,
        spec=spec,
        coords=tuple(pts),
        line_coords=tuple(pts),
    )


def from_lines(lines: Iterable[Iterable[int]], labels: Sequence[str] | None = None,
               order: int | None = None) -> Plane:
    """Wrap an arbitrary incidence structure (no checking beyond index ranges)."""
    lines = tuple(tuple(sorted(set(l))) for l in lines)
    npts = len(labels) if labels is not None else 1 + max((max(l) for l in lines if l), default=-1)
    if labels is None:
        labels = [f"x{j + 1}" for j in range(npts)]
    for l in lines:
        for x in l:
            if not 0 <= x < npts:
                raise PlaneError(f"point index {x} out of range 0..{npts - 1}")
    if order is None:
        order = len(lines[0]) - 1 if lines else 0
    return Plane(order=order, labels=tuple(labels), lines=lines)


_LABEL_RE = re.compile(r"^\[([^:\]]+):([^:\]]+):([^:\]]+)\]$")


def from_json(data: dict | str) -> Plane:
    """Load the plane JSON format; coordinate labels are re-attached when they parse."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        order = int(data["order"])
        labels = [str(s) for s in data["points"]]
        lines = data["lines"]
    except (KeyError, TypeError) as exc:
        raise PlaneError(f"malformed plane JSON: {exc}") from None
    plane = from_lines(lines, labels, order)
    pk = gf.prime_power(order)
    if pk is None or pk[0] ** pk[1] > gf.DEFAULT_MAX_ORDER:
        return plane
    spec = gf.make_field(*pk)
    coords = []
    for s in labels:
        m = _LABEL_RE.match(s)
        if not m:
            return plane
        try:
            coords.append(normalize([gf.parse(spec, g) for g in m.groups()]))
        except (gf.FieldError, PlaneError, ValueError):
            return plane
    if len(set(coords)) != len(coords):
        return plane
    ref = build_plane(order)
    if set(coords) != set(ref.coords):
        return plane
    # only trust the coordinates if the incidences agree with PG(2, q)
    pos = {c: i for i, c in enumerate(ref.coords)}
    ref_lines = {frozenset(l) for l in ref.lines}
    mapped = {frozenset(pos[coords[x]] for x in l) for l in plane.lines}
    if mapped != ref_lines:
        return plane
    line_coords = []
    ref_line_index = {frozenset(l): i for i, l in enumerate(ref.lines)}
    for l in plane.lines:
        line_coords.append(ref.line_coords[ref_line_index[frozenset(pos[coords[x]] for x in l)]])
    return Plane(order, plane.labels, plane.lines, spec, tuple(coords), tuple(line_coords))


def from_incidence_text(text: str) -> Plane:
    """Rows are lines, columns are points, entries 0/1 separated by whitespace."""
    rows = [r.split() for r in text.strip().splitlines() if r.strip()]
    if not rows:
        raise PlaneError("empty incidence matrix")
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width or any(c not in ("0", "1") for c in r):
            raise PlaneError(f"row {i + 1} is not a 0/1 row of length {width}")
    lines = [[j for j, c in enumerate(r) if c == "1"] for r in rows]
    labels = [f"x{j + 1}" for j in range(width)]
    order = max(len(lines[0]) - 1, 0)
    return from_lines(lines, labels, order)


def to_incidence_text(plane: Plane) -> str:
    rows = []
    for pts in plane.line_sets:
        rows.append(" ".join("1" if j in pts else "0" for j in range(plane.num_points)))
    return "\n".join(rows) + "\n"


# -- axioms ----------------------------------------------------------------

@dataclass
class AxiomReport:
    order: int
    num_points: int
    num_lines: int
    violations: list[tuple[str, tuple]] = field(default_factory=list)
    quadrilateral: tuple[int, int, int, int] | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "order": self.order,
            "points": self.num_points,
            "lines": self.num_lines,
            "quadrilateral": list(self.quadrilateral) if self.quadrilateral else None,
            "violations": [{"kind": k, "witness": list(w)} for k, w in self.violations],
        }

    def summary(self) -> str:
        head = f"order {self.order}: {self.num_points} points, {self.num_lines} lines"
        if self.ok:
            return head + ", all axioms hold"
        lines = [head + f", {len(self.violations)} violation(s)"]
        lines += [f"  {k}: {w}" for k, w in self.violations[:20]]
        if len(self.violations) > 20:
            lines.append(f"  ... {len(self.violations) - 20} more")
        return "\n".join(lines)


def _find_quadrilateral(plane: Plane, pair_line: dict) -> tuple[int, int, int, int] | None:
    n_pts = plane.num_points
    sets = plane.line_sets

    def collinear(a, b, c):
        li = pair_line.get((min(a, b), max(a, b)))
        return li is not None and c in sets[li]

    for a, b in itertools.combinations(range(n_pts), 2):
        for c in range(b + 1, n_pts):
            if collinear(a, b, c):
                continue
            for d in range(c + 1, n_pts):
                if not (collinear(a, b, d) or collinear(a, c, d) or collinear(b, c, d)):
                    return (a, b, c, d)
    return None


def validate_axioms(plane: Plane) -> AxiomReport:
    n = plane.order
    rep = AxiomReport(n, plane.num_points, plane.num_lines)
    v = rep.violations
    expected = n * n + n + 1

    if plane.num_points != expected:
        v.append(("point-count", (plane.num_points, expected)))
    if plane.num_lines != expected:
        v.append(("line-count", (plane.num_lines, expected)))
    for li, pts in enumerate(plane.lines):
        if len(pts) != n + 1:
            v.append(("line-size", (li, len(pts))))
    for x, ls in enumerate(plane.lines_through):
        if len(ls) != n + 1:
            v.append(("point-degree", (x, len(ls))))

    pair_count: Counter = Counter()
    pair_line: dict = {}
    for li, pts in enumerate(plane.lines):
        for a, b in itertools.combinations(pts, 2):
            pair_count[(a, b)] += 1
            pair_line[(a, b)] = li
    for a, b in itertools.combinations(range(plane.num_points), 2):
        c = pair_count[(a, b)]
        if c != 1:
            v.append(("axiom1", (a, b, c)))

    sets = plane.line_sets
    for l1, l2 in itertools.combinations(range(plane.num_lines), 2):
        c = len(sets[l1] & sets[l2])
        if c != 1:
            v.append(("axiom2", (l1, l2, c)))

    rep.quadrilateral = _find_quadrilateral(plane, pair_line)
    if rep.quadrilateral is None:
        v.append(("axiom3", ()))
    return rep


# -- queries ---------------------------------------------------------------

def line_through(plane: Plane, a: int, b: int) -> int:
    if a == b:
        raise PlaneError("line_through needs two distinct points")
    common = set(plane.lines_through[a]) & set(plane.lines_through[b])
    if len(common) != 1:
        raise PlaneError(f"points {a}, {b} lie on {len(common)} common lines")
    return common.pop()


def meet(plane: Plane, l1: int, l2: int) -> int:
    if l1 == l2:
        raise PlaneError("meet needs two distinct lines")
    common = plane.line_sets[l1] & plane.line_sets[l2]
    if len(common) != 1:
        raise PlaneError(f"lines {l1}, {l2} share {len(common)} points")
    return next(iter(common))


def lines_through_point(plane: Plane, x: int) -> list[int]:
    return sorted(plane.lines_through[x])


# -- the Fano plane as enumerated in the classical picture ----------------

FANO_POINTS = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1))
# each line given by two of its points (1-based, as x_i x_j)
FANO_LINE_PAIRS = ((2, 3), (1, 3), (1, 2), (1, 4), (2, 5), (3, 6), (4, 5))

FANO_INCIDENCE = """\
0 1 1 1 0 0 0
1 0 1 0 1 0 0
1 1 0 0 0 1 0
1 0 0 1 0 0 1
0 1 0 0 1 0 1
0 0 1 0 0 1 1
0 0 0 1 1 1 0
"""


def fano_plane() -> Plane:
    """PG(2, 2) with points x1..x7 and lines L1..L7 in the textbook order."""
    base = build_plane(2)
    point_order = [base.point_at(*c) for c in FANO_POINTS]
    tmp = base.permuted(point_order, list(range(base.num_lines)))
    line_order = [line_through(tmp, a - 1, b - 1) for a, b in FANO_LINE_PAIRS]
    return tmp.permuted(list(range(7)), line_order)
