"""Finite fields GF(p^k) in polynomial representation.

Elements are coefficient tuples (low degree first) reduced modulo a monic
irreducible polynomial. The modulus is the lexicographically smallest monic
irreducible of the requested degree, so the representation is reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

DEFAULT_MAX_ORDER = 32


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q == p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while q % p:
        p += 1
    k = 0
    r = q
    while r % p == 0:
        r //= p
        k += 1
    return (p, k) if r == 1 else None


# -- polynomial helpers over Z/pZ (coefficient lists, low to high) ----------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        f = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        _trim(a)
    return a


def is_irreducible(m: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    m = _trim([c % p for c in m])
    d = len(m) - 1
    if d < 1:
        return False
    for deg in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _polymod(m, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over Z/pZ.

    Candidates are compared by their coefficient lists (low to high) as
    integer sequences. For k == 1 the answer is X.
    """
    for low in itertools.product(range(p), repeat=k):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {k} over Z/{p}Z")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    """Descriptor of GF(p^k)."""

    p: int
    k: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.k

    def element(self, value) -> "FieldElement":
        """Build an element from an int (base-p digits, low first) or a coefficient sequence."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise FieldError(f"{value} is not an element index of GF({self.q})")
            coeffs = []
            for _ in range(self.k):
                value, r = divmod(value, self.p)
                coeffs.append(r)
            return FieldElement(self, tuple(coeffs))
        coeffs = [c % self.p for c in value]
        if len(coeffs) > self.k:
            coeffs = _polymod(coeffs, list(self.modulus), self.p)
        coeffs = coeffs + [0] * (self.k - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.k)

    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.k - 1))

    def __str__(self) -> str:
        return f"GF({self.q})"


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.spec.k or any(not 0 <= c < self.spec.p for c in self.coeffs):
            raise FieldError(f"non-canonical coefficients {self.coeffs} for {self.spec}")

    @cached_property
    def index(self) -> int:
        """Position in the canonical enumeration (coefficients read as base-p digits)."""
        return sum(c * self.spec.p ** i for i, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: FieldElement) -> FieldElement:
        return add(self, other)

    def __sub__(self, other: FieldElement) -> FieldElement:
        return add(self, neg(other))

    def __neg__(self) -> FieldElement:
        return neg(self)

    def __mul__(self, other: FieldElement) -> FieldElement:
        return mul(self, other)

    def __pow__(self, e: int) -> FieldElement:
        return power(self, e)

    def __lt__(self, other: FieldElement) -> bool:
        return self.index < other.index

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"<{render(self)} in {self.spec}>"


def make_field(p: int, k: int = 1, max_order: int = DEFAULT_MAX_ORDER) -> FieldSpec:
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if k < 1:
        raise FieldError(f"extension degree must be >= 1, got {k}")
    if p ** k > max_order:
        raise FieldError(f"GF({p}^{k}) exceeds the size bound q <= {max_order}")
    modulus = (0, 1) if k == 1 else smallest_irreducible(p, k)
    return FieldSpec(p, k, modulus)


def field_of_order(q: int, max_order: int = DEFAULT_MAX_ORDER) -> FieldSpec:
    pk = prime_power(q)
    if pk is None:
        raise FieldError(f"{q} is not a prime power")
    return make_field(*pk, max_order=max_order)


def _check(a: FieldElement, b: FieldElement) -> None:
    if a.spec != b.spec:
        raise FieldError(f"cannot combine elements of {a.spec} and {b.spec}")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check(a, b)
    p = a.spec.p
    return FieldElement(a.spec, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))


def neg(a: FieldElement) -> FieldElement:
    p = a.spec.p
    return FieldElement(a.spec, tuple((-x) % p for x in a.coeffs))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check(a, b)
    spec = a.spec
    prod = [0] * (2 * spec.k - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                prod[i + j] += x * y
    if spec.k == 1:
        return FieldElement(spec, (prod[0] % spec.p,))
    return spec.element(_polymod(prod, list(spec.modulus), spec.p))


def power(a: FieldElement, e: int) -> FieldElement:
    if e < 0:
        return power(inv(a), -e)
    result = a.spec.one()
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def inv(a: FieldElement) -> FieldElement:
    if a.is_zero():
        raise ZeroDivisionError("zero has no multiplicative inverse")
    # a^(q-2) = a^-1 in the multiplicative group of order q-1
    return power(a, a.spec.q - 2)


def enumerate_elements(spec: FieldSpec) -> list[FieldElement]:
    """All q elements, zero first, in base-p order of the coefficient lists."""
    return [spec.element(i) for i in range(spec.q)]


def render(a: FieldElement) -> str:
    """Decimal for prime fields, a polynomial in ``a`` otherwise (``"a^2+a+1"``)."""
    if a.spec.k == 1:
        return str(a.coeffs[0])
    terms = []
    for i in reversed(range(a.spec.k)):
        c = a.coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


def parse(spec: FieldSpec, text: str) -> FieldElement:
    """Inverse of :func:`render`."""
    text = text.strip().replace(" ", "")
    if spec.k == 1:
        return spec.element(int(text) % spec.p)
    coeffs = [0] * spec.k
    for term in text.split("+"):
        if "a" not in term:
            coeffs[0] += int(term)
            continue
        c, _, deg = term.partition("a")
        c = int(c) if c else 1
        deg = int(deg[1:]) if deg.startswith("^") else 1
        if deg >= spec.k:
            raise FieldError(f"term {term!r} exceeds degree of {spec}")
        coeffs[deg] += c
    return spec.element(coeffs)


@lru_cache(maxsize=None)
def tables(spec: FieldSpec) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """Addition and multiplication tables over canonical element indices."""
    elems = enumerate_elements(spec)
    add_t = tuple(tuple(add(a, b).index for b in elems) for a in elems)
    mul_t = tuple(tuple(mul(a, b).index for b in elems) for a in elems)
    return add_t, mul_t
