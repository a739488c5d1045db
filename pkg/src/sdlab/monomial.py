"""Monomial ideals, quotients I/J and exact Hilbert series.

A monomial of K[X1, ..., Xn] is represented by its exponent vector, a
plain tuple of nonnegative ints; X^a divides X^b exactly when a <= b
componentwise, and lcm/gcd are the componentwise join and meet.  All
arithmetic in this module is exact integer arithmetic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Exponent = tuple[int, ...]


class ParseError(ValueError):
    """Malformed quotient description text."""


class SpecError(ValueError):
    """Violated invariant of a ring, ideal or quotient."""


# ---------------------------------------------------------------------------
# exponent vectors

def vjoin(a: Exponent, b: Exponent) -> Exponent:
    """Componentwise max; exponent of lcm(X^a, X^b)."""
    return tuple(map(max, a, b))


def vmeet(a: Exponent, b: Exponent) -> Exponent:
    """Componentwise min; exponent of gcd(X^a, X^b)."""
    return tuple(map(min, a, b))


def leq(a: Exponent, b: Exponent) -> bool:
    """Componentwise order; X^a divides X^b iff leq(a, b)."""
    return all(x <= y for x, y in zip(a, b))


def degree(a: Exponent) -> int:
    """Total degree of X^a."""
    return sum(a)


def box(bound: Exponent) -> Iterator[Exponent]:
    """All lattice points of [0, bound] in lexicographic order."""
    if not bound:
        yield ()
        return
    head, *rest = bound
    for h in range(head + 1):
        for tail in box(tuple(rest)):
            yield (h,) + tail


# ---------------------------------------------------------------------------
# rings and ideals

@dataclass(frozen=True)
class Ring:
    """Ambient polynomial ring K[names[0], ..., names[n-1]].

    The coefficient field enters only through its characteristic (0 for
    the rationals) and only matters for homological computations.
    """

    names: tuple[str, ...]
    characteristic: int = 0

    def __post_init__(self) -> None:
        if not self.names:
            raise SpecError("ring needs at least one variable")
        if any(not name for name in self.names):
            raise SpecError("variable names must be nonempty")
        if len(set(self.names)) != len(self.names):
            raise SpecError("variable names must be pairwise distinct")
        if self.characteristic < 0 or self.characteristic == 1:
            raise SpecError("characteristic must be 0 or a prime")

    @property
    def n(self) -> int:
        return len(self.names)

    def zero_exponent(self) -> Exponent:
        return (0,) * self.n

    def variable_index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SpecError(f"unknown variable {name!r}") from None


def minimal_generators(gens: Iterable[Exponent]) -> tuple[Exponent, ...]:
    """Divisibility-minimal subset of a generating set, sorted.

    Idempotent and independent of the input order.
    """
    unique = sorted(set(tuple(g) for g in gens), key=lambda g: (degree(g), g))
    keep: list[Exponent] = []
    for g in unique:
        # any divisor of g has smaller or equal total degree, so one pass
        # over the degree-sorted list finds every redundancy
        if not any(leq(h, g) for h in keep):
            keep.append(g)
    return tuple(sorted(keep))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by its minimal generators (sorted tuples).

    The zero ideal has no generators; the unit ideal is generated by the
    zero exponent vector.
    """

    ring: Ring
    gens: tuple[Exponent, ...]

    def __post_init__(self) -> None:
        for g in self.gens:
            if len(g) != self.ring.n:
                raise SpecError("generator length does not match the ring")
            if any(e < 0 for e in g):
                raise SpecError("exponents must be nonnegative")
        if self.gens != minimal_generators(self.gens):
            raise SpecError("generators must be stored minimal and sorted")

    @classmethod
    def from_gens(cls, ring: Ring, gens: Iterable[Exponent]) -> "MonomialIdeal":
        return cls(ring, minimal_generators(gens))

    @classmethod
    def zero(cls, ring: Ring) -> "MonomialIdeal":
        return cls(ring, ())

    @classmethod
    def unit(cls, ring: Ring) -> "MonomialIdeal":
        return cls(ring, (ring.zero_exponent(),))

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return bool(self.gens) and self.gens[0] == self.ring.zero_exponent()

    def contains(self, a: Exponent) -> bool:
        return any(leq(g, a) for g in self.gens)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)


def ideal_contains(ideal: MonomialIdeal, a: Exponent) -> bool:
    """True iff X^a lies in the ideal, i.e. some generator divides it."""
    if len(a) != ideal.ring.n:
        raise SpecError("exponent length does not match the ring")
    return ideal.contains(a)


@dataclass(frozen=True)
class ModuleSpec:
    """Quotient I/J of monomial ideals with J strictly contained in I."""

    I: MonomialIdeal
    J: MonomialIdeal

    def __post_init__(self) -> None:
        if self.I.ring != self.J.ring:
            raise SpecError("I and J must live in the same ring")
        if not self.I.contains_ideal(self.J):
            raise SpecError("J is not contained in I")
        if all(self.J.contains(g) for g in self.I.gens):
            raise SpecError("J equals I; the quotient module is zero")

    @property
    def ring(self) -> Ring:
        return self.I.ring

    def contains(self, a: Exponent) -> bool:
        """Membership of X^a in I minus J."""
        return self.I.contains(a) and not self.J.contains(a)


def canonical_bound(spec: ModuleSpec) -> Exponent:
    """Componentwise join of all minimal generators of I and J.

    The smallest vector below which every generator of the quotient lives;
    coordinates no generator touches stay 0.
    """
    g = spec.ring.zero_exponent()
    for u in spec.I.gens + spec.J.gens:
        g = vjoin(g, u)
    return g


# ---------------------------------------------------------------------------
# text format
#
#   ring: x, y
#   I: x^2*y, y^3        (or  I: 1  for the unit ideal)
#   J: 0                 (or a monomial list like I)
#
# Whitespace is insignificant inside each line.

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def parse_monomial(text: str, ring: Ring) -> Exponent:
    text = text.replace(" ", "").replace("\t", "")
    if not text:
        raise ParseError("empty monomial")
    if text == "1":
        return ring.zero_exponent()
    exps = [0] * ring.n
    for token in text.split("*"):
        if not token:
            raise ParseError(f"empty factor in monomial {text!r}")
        name, _, power = token.partition("^")
        if not _NAME_RE.match(name):
            raise ParseError(f"bad variable token {name!r}")
        if name not in ring.names:
            raise ParseError(f"unknown variable {name!r}")
        if power:
            if not power.isdigit() or int(power) < 1:
                raise ParseError(f"bad exponent in {token!r}")
            k = int(power)
        else:
            k = 1
        exps[ring.names.index(name)] += k
    return tuple(exps)


def format_monomial(a: Exponent, ring: Ring) -> str:
    if all(e == 0 for e in a):
        return "1"
    parts = []
    for name, e in zip(ring.names, a):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _split_lines(text: str) -> list[tuple[str, str]]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        key, sep, payload = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value' but got {line!r}")
        out.append((key.strip(), payload.strip()))
    return out


def parse_module_spec(text: str) -> ModuleSpec:
    """Parse the three-line quotient format into a validated ModuleSpec."""
    lines = _split_lines(text)
    if len(lines) != 3 or [k for k, _ in lines] != ["ring", "I", "J"]:
        raise ParseError("expected exactly the lines ring:, I:, J: in that order")
    payload = dict(lines)

    names = tuple(s.strip() for s in payload["ring"].split(","))
    for name in names:
        if not _NAME_RE.match(name):
            raise ParseError(f"bad variable name {name!r}")
    try:
        ring = Ring(names)
    except SpecError as exc:
        raise ParseError(str(exc)) from None

    def ideal_of(payload_text: str, *, allow_zero: bool) -> MonomialIdeal:
        stripped = payload_text.replace(" ", "")
        if stripped == "0":
            if not allow_zero:
                raise ParseError("I may not be the zero ideal; the module would be zero")
            return MonomialIdeal.zero(ring)
        if not stripped:
            raise ParseError("empty ideal description")
        gens = [parse_monomial(tok, ring) for tok in stripped.split(",")]
        return MonomialIdeal.from_gens(ring, gens)

    try:
        I = ideal_of(payload["I"], allow_zero=False)
        J = ideal_of(payload["J"], allow_zero=True)
    except ParseError:
        raise
    try:
        return ModuleSpec(I, J)
    except SpecError as exc:
        raise ParseError(str(exc)) from None


def format_module_spec(spec: ModuleSpec) -> str:
    """Inverse of parse_module_spec, up to whitespace."""
    ring = spec.ring
    i_part = "1" if spec.I.is_unit() else ", ".join(format_monomial(g, ring) for g in spec.I.gens)
    j_part = "0" if spec.J.is_zero() else ", ".join(format_monomial(g, ring) for g in spec.J.gens)
    return f"ring: {', '.join(ring.names)}\nI: {i_part}\nJ: {j_part}\n"


# ---------------------------------------------------------------------------
# Hilbert series

def _strip(coeffs: Sequence[int]) -> tuple[int, ...]:
    last = len(coeffs)
    while last > 0 and coeffs[last - 1] == 0:
        last -= 1
    return tuple(coeffs[:last])


def _div_one_minus_t(coeffs: Sequence[int]) -> tuple[int, ...] | None:
    """Quotient of an integer polynomial by (1 - t), or None if inexact."""
    q: list[int] = []
    carry = 0
    for c in coeffs:
        carry += c
        q.append(carry)
    if carry != 0:
        return None
    return _strip(q[:-1]) if q else ()


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / (1 - t)**denom_power, reduced in the (1 - t) factors.

    The numerator is stored as a coefficient tuple indexed by degree with
    trailing zeros stripped; the zero series is ((), 0).
    """

    numerator: tuple[int, ...]
    denom_power: int

    def __post_init__(self) -> None:
        if self.denom_power < 0:
            raise ValueError("denominator exponent must be nonnegative")
        num = _strip(self.numerator)
        d = self.denom_power
        if not num:
            d = 0
        while d > 0:
            reduced = _div_one_minus_t(num)
            if reduced is None:
                break
            num = reduced
            d -= 1
            if not num:
                d = 0
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denom_power", d)

    def is_zero(self) -> bool:
        return not self.numerator

    def coefficients(self, upto: int) -> list[int]:
        """Power-series coefficients of degrees 0..upto."""
        num, d = self.numerator, self.denom_power
        out = []
        for k in range(upto + 1):
            if d == 0:
                out.append(num[k] if k < len(num) else 0)
            else:
                out.append(
                    sum(
                        num[i] * math.comb(k - i + d - 1, d - 1)
                        for i in range(min(k, len(num) - 1) + 1)
                    )
                )
        return out

    def times_geometric(self, power: int = 1) -> "HilbertSeries":
        """Multiply by 1/(1 - t)**power."""
        return HilbertSeries(self.numerator, self.denom_power + power)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        num = _poly_str(self.numerator)
        if self.denom_power == 0:
            return num
        denom = "(1 - t)" if self.denom_power == 1 else f"(1 - t)^{self.denom_power}"
        return f"({num})/{denom}"


def _poly_str(coeffs: Sequence[int]) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            t = "t" if i == 1 else f"t^{i}"
            body = t if mag == 1 else f"{mag}*{t}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(terms) if terms else "0"


def _ideal_numerator(gens: Sequence[Exponent]) -> dict[int, int]:
    """Numerator of the ideal's series over (1-t)^n by inclusion-exclusion.

    Sum over nonempty generator subsets S of (-1)^(|S|+1) t^(deg lcm S).
    """
    coeffs: dict[int, int] = {}

    def walk(start: int, lcm: Exponent | None, size: int) -> None:
        for k in range(start, len(gens)):
            new = gens[k] if lcm is None else vjoin(lcm, gens[k])
            d = degree(new)
            coeffs[d] = coeffs.get(d, 0) + (1 if size % 2 == 0 else -1)
            walk(k + 1, new, size + 1)

    walk(0, None, 0)
    return coeffs


def hilbert_series(spec: ModuleSpec) -> HilbertSeries:
    """Z-graded Hilbert series of I/J, exact."""
    num: dict[int, int] = {}
    for d, c in _ideal_numerator(spec.I.gens).items():
        num[d] = num.get(d, 0) + c
    for d, c in _ideal_numerator(spec.J.gens).items():
        num[d] = num.get(d, 0) - c
    top = max(num, default=-1)
    coeffs = [0] * (top + 1)
    for d, c in num.items():
        coeffs[d] = c
    return HilbertSeries(tuple(coeffs), spec.ring.n)


def decomposition_series(
    parts: Iterable[tuple[Exponent, frozenset[int]]], nvars: int
) -> HilbertSeries:
    """Series of a direct sum of parts X^a K[Z]: sum of t^|a| (1-t)^(n-|Z|)
    over (1-t)^n."""
    acc: dict[int, int] = {}
    for a, z in parts:
        d = degree(a)
        k = nvars - len(z)
        for i in range(k + 1):
            c = math.comb(k, i) * (-1) ** i
            acc[d + i] = acc.get(d + i, 0) + c
    top = max(acc, default=-1)
    coeffs = [0] * (top + 1)
    for d, c in acc.items():
        coeffs[d] = c
    return HilbertSeries(tuple(coeffs), nvars)
