"""Finite Abelian groups Z/n1 + ... + Z/nk, point labelings and line sums."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .geometry import Plane


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class AbelianGroup:
    orders: tuple[int, ...]

    def __post_init__(self):
        if not self.orders or any(n < 2 for n in self.orders):
            raise GroupError(f"cyclic factor orders must be >= 2, got {self.orders}")

    @classmethod
    def of(cls, *orders: int) -> "AbelianGroup":
        return cls(tuple(orders))

    @classmethod
    def power(cls, n: int, k: int) -> "AbelianGroup":
        return cls((n,) * k)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    def __call__(self, *residues: int) -> "GroupElement":
        if len(residues) == 1 and not isinstance(residues[0], int):
            residues = tuple(residues[0])
        if len(residues) != self.rank:
            raise GroupError(f"expected {self.rank} residues, got {len(residues)}")
        return GroupElement(self, tuple(r % n for r, n in zip(residues, self.orders)))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def __str__(self) -> str:
        parts = [f"Z/{n}Z" for n in self.orders]
        if len(set(self.orders)) == 1 and self.rank > 1:
            return f"(Z/{self.orders[0]}Z)^{self.rank}"
        return " + ".join(parts)


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    residues: tuple[int, ...]

    def __add__(self, other: GroupElement) -> GroupElement:
        return g_add(self, other)

    def __neg__(self) -> GroupElement:
        return g_scale(-1, self)

    def __sub__(self, other: GroupElement) -> GroupElement:
        return g_add(self, g_scale(-1, other))

    def __rmul__(self, m: int) -> GroupElement:
        return g_scale(m, self)

    def is_zero(self) -> bool:
        return not any(self.residues)

    def __str__(self) -> str:
        if self.group.rank == 1:
            return str(self.residues[0])
        return "(" + ",".join(map(str, self.residues)) + ")"


def g_zero(group: AbelianGroup) -> GroupElement:
    return group.zero()


def g_add(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.group != b.group:
        raise GroupError(f"cannot add elements of {a.group} and {b.group}")
    return GroupElement(a.group, tuple((x + y) % n for x, y, n in zip(a.residues, b.residues, a.group.orders)))


def g_scale(m: int, a: GroupElement) -> GroupElement:
    return GroupElement(a.group, tuple((m * x) % n for x, n in zip(a.residues, a.group.orders)))


def g_sum(elems: Iterable[GroupElement], group: AbelianGroup) -> GroupElement:
    acc = [0] * group.rank
    for e in elems:
        if e.group != group:
            raise GroupError(f"element of {e.group} in a sum over {group}")
        for i, r in enumerate(e.residues):
            acc[i] += r
    return GroupElement(group, tuple(a % n for a, n in zip(acc, group.orders)))


@dataclass(frozen=True, eq=False)
class Labeling:
    """A total map from the points of ``plane`` to ``group``.

    ``meta`` holds construction details (chosen frame, auxiliary lines) and
    is carried through to the JSON output.
    """

    plane: Plane
    group: AbelianGroup
    values: tuple[GroupElement, ...]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.values) != self.plane.num_points:
            raise GroupError(f"labeling has {len(self.values)} values for {self.plane.num_points} points")
        for v in self.values:
            if v.group != self.group:
                raise GroupError(f"value {v} is not in {self.group}")

    def __getitem__(self, x: int) -> GroupElement:
        return self.values[x]

    def __add__(self, other: Labeling) -> Labeling:
        if other.plane is not self.plane and other.plane.lines != self.plane.lines:
            raise GroupError("labelings live on different planes")
        return Labeling(self.plane, self.group, tuple(g_add(a, b) for a, b in zip(self.values, other.values)))

    def scaled(self, m: int) -> Labeling:
        return Labeling(self.plane, self.group, tuple(g_scale(m, a) for a in self.values))

    def component(self, i: int) -> tuple[int, ...]:
        return tuple(v.residues[i] for v in self.values)

    def image(self) -> set[GroupElement]:
        return set(self.values)

    def to_json(self) -> dict:
        out = {"group": list(self.group.orders), "values": [list(v.residues) for v in self.values]}
        if self.meta:
            out["meta"] = self.meta
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def labeling_from_components(plane: Plane, orders: Sequence[int],
                             components: Sequence[Sequence[int]], meta: dict | None = None) -> Labeling:
    """Assemble a labeling from one residue list per cyclic factor."""
    group = AbelianGroup(tuple(orders))
    values = tuple(group(*col) for col in zip(*components))
    return Labeling(plane, group, values, dict(meta or {}))


def labeling_from_json(plane: Plane, data: dict | str) -> Labeling:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        group = AbelianGroup(tuple(int(n) for n in data["group"]))
        values = tuple(group(*r) for r in data["values"])
    except (KeyError, TypeError) as exc:
        raise GroupError(f"malformed labeling JSON: {exc}") from None
    return Labeling(plane, group, values, dict(data.get("meta", {})))


def line_sum(v: Labeling, line: int) -> GroupElement:
    return g_sum((v.values[x] for x in v.plane.lines[line]), v.group)


NOT_LINE_INVARIANT = "not-line-invariant"
TRIVIALLY_CONSTANT = "trivially-constant"
PSEUDOMAGIC = "pseudomagic"
MAGIC = "magic"


@dataclass
class VerifyReport:
    line_sums: list[GroupElement]
    is_line_invariant: bool
    magic_constant: GroupElement | None
    is_constant_labeling: bool
    is_injective: bool
    classification: str
    witnesses: dict = field(default_factory=dict)
    image_size: int = 0

    def to_json(self) -> dict:
        return {
            "classification": self.classification,
            "line_invariant": self.is_line_invariant,
            "magic_constant": None if self.magic_constant is None else list(self.magic_constant.residues),
            "constant_labeling": self.is_constant_labeling,
            "injective": self.is_injective,
            "image_size": self.image_size,
            "line_sums": [list(s.residues) for s in self.line_sums],
            "witnesses": self.witnesses,
        }

    def text(self) -> str:
        out = [f"classification: {self.classification}"]
        if self.magic_constant is not None:
            out.append(f"magic constant: {self.magic_constant}")
        out.append(f"injective: {'yes' if self.is_injective else 'no'} ({self.image_size} distinct values)")
        for k, w in self.witnesses.items():
            out.append(f"{k}: {w}")
        return "\n".join(out)


def verify(v: Labeling) -> VerifyReport:
    sums = [line_sum(v, li) for li in range(v.plane.num_lines)]
    witnesses: dict = {}
    invariant = all(s == sums[0] for s in sums)
    if not invariant:
        bad = next(li for li, s in enumerate(sums) if s != sums[0])
        witnesses["unequal_lines"] = [0, bad]

    first_seen: dict[GroupElement, int] = {}
    for x, val in enumerate(v.values):
        if val in first_seen:
            witnesses.setdefault("colliding_points", [first_seen[val], x])
        else:
            first_seen[val] = x
    image_size = len(first_seen)
    injective = image_size == len(v.values)
    constant = image_size == 1

    if not invariant:
        cls = NOT_LINE_INVARIANT
    elif constant:
        cls = TRIVIALLY_CONSTANT
    elif injective:
        cls = MAGIC
    else:
        cls = PSEUDOMAGIC
    return VerifyReport(
        line_sums=sums,
        is_line_invariant=invariant,
        magic_constant=sums[0] if invariant else None,
        is_constant_labeling=constant,
        is_injective=injective,
        classification=cls,
        witnesses=witnesses,
        image_size=image_size,
    )
