"""Characteristic posets, interval partitions and exact Stanley depth.

The quotient I/J is encoded by the finite poset of exponent vectors a <= g
with X^a in I minus J.  Interval partitions of that poset correspond to
Stanley decompositions, and the Stanley depth is the best achievable
minimum of rho over the interval tops, found by exact-cover search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .kernels import IntervalCoverEngine
from .monomial import (
    Exponent,
    ModuleSpec,
    Ring,
    SpecError,
    canonical_bound,
    decomposition_series,
    degree,
    hilbert_series,
    leq,
    vjoin,
    vmeet,
)


def rho(b: Exponent, g: Exponent) -> int:
    """Number of coordinates where b meets the bound g."""
    if not leq(b, g):
        raise ValueError("rho requires b <= g")
    return sum(1 for x, y in zip(b, g) if x == y)


@dataclass(frozen=True)
class CharacteristicPoset:
    """All a <= g with X^a in I minus J, sorted lexicographically."""

    spec: ModuleSpec
    g: Exponent
    points: tuple[Exponent, ...]


def characteristic_poset(spec: ModuleSpec, g: Exponent | None = None) -> CharacteristicPoset:
    if g is None:
        g = canonical_bound(spec)
    for u in spec.I.gens + spec.J.gens:
        if not leq(u, g):
            raise SpecError(f"bound {g} is too small for generator {u}")
    pts = tuple(
        a
        for a in itertools.product(*[range(x + 1) for x in g])
        if spec.contains(a)
    )
    return CharacteristicPoset(spec, tuple(g), pts)


@dataclass(frozen=True)
class Interval:
    """Box [lo, hi] of lattice points."""

    lo: Exponent
    hi: Exponent

    def __post_init__(self) -> None:
        if len(self.lo) != len(self.hi) or not leq(self.lo, self.hi):
            raise ValueError(f"not an interval: {self.lo} .. {self.hi}")

    def points(self) -> Iterator[Exponent]:
        yield from itertools.product(*[range(a, b + 1) for a, b in zip(self.lo, self.hi)])

    def __contains__(self, c: Exponent) -> bool:
        return leq(self.lo, c) and leq(c, self.hi)

    def size(self) -> int:
        return _prod(b - a + 1 for a, b in zip(self.lo, self.hi))


def _prod(xs: Iterable[int]) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


@dataclass(frozen=True)
class IntervalPartition:
    """Disjoint cover of a characteristic poset by intervals."""

    poset: CharacteristicPoset
    intervals: tuple[Interval, ...]

    def __post_init__(self) -> None:
        seen: set[Exponent] = set()
        for iv in self.intervals:
            for c in iv.points():
                if c in seen:
                    raise ValueError(f"intervals overlap at {c}")
                seen.add(c)
        pts = set(self.poset.points)
        if seen != pts:
            off = (seen - pts) or (pts - seen)
            raise ValueError(f"intervals do not partition the poset, mismatch at {sorted(off)[0]}")


def partition_to_json(partition: IntervalPartition) -> list[dict]:
    return [{"lo": list(iv.lo), "hi": list(iv.hi)} for iv in partition.intervals]


def partition_from_json(data: Sequence[dict], poset: CharacteristicPoset) -> IntervalPartition:
    intervals = tuple(Interval(tuple(d["lo"]), tuple(d["hi"])) for d in data)
    return IntervalPartition(poset, intervals)


def exact_cover_by_intervals(
    points: Iterable[Exponent],
    admissible_top: Callable[[Exponent], bool],
) -> list[Interval] | None:
    """Partition the point set into intervals with admissible tops, or None.

    Every returned interval is a box all of whose lattice points belong to
    the set.  Deterministic: the search always extends from the
    lexicographically least uncovered point and tries candidate tops in
    lexicographic order, so the first cover in that branch order is
    returned.
    """
    engine = IntervalCoverEngine(list(points))
    admissible = [bool(admissible_top(p)) for p in engine.points]
    pairs = engine.search(admissible)
    if pairs is None:
        return None
    return [Interval(engine.points[i], engine.points[j]) for i, j in pairs]


@dataclass(frozen=True)
class SdepthResult:
    value: int
    partition: IntervalPartition


def sdepth(spec: ModuleSpec, g: Exponent | None = None, memoize: bool = False) -> SdepthResult:
    """Exact Stanley depth of I/J with a witness interval partition.

    Decision problems for the target value s are tried from n downwards;
    each one asks for an interval partition whose tops b all satisfy
    rho(b, g) >= s.  The first s that admits one is the Stanley depth.
    """
    poset = characteristic_poset(spec, g)
    bound = poset.g
    engine = IntervalCoverEngine(poset.points)
    rho_values = [rho(p, bound) for p in engine.points]
    for s in range(spec.ring.n, -1, -1):
        admissible = [r >= s for r in rho_values]
        pairs = engine.search(admissible, memoize=memoize)
        if pairs is not None:
            intervals = tuple(Interval(engine.points[i], engine.points[j]) for i, j in pairs)
            return SdepthResult(s, IntervalPartition(poset, intervals))
    raise AssertionError("unreachable: singletons always cover at s = 0")


@dataclass(frozen=True)
class StanleyDecomposition:
    """Direct sum of parts X^a K[Z], Z a set of variable indices."""

    ring: Ring
    parts: tuple[tuple[Exponent, frozenset[int]], ...]

    def sdepth(self) -> int:
        return min(len(z) for _, z in self.parts)


def partition_to_decomposition(partition: IntervalPartition) -> StanleyDecomposition:
    """Stanley decomposition attached to an interval partition.

    Interval [a, b] with top-coordinate set Z = {j : b_j = g_j} contributes
    one part (c, Z) for every c in [a, b] with c_j = a_j on Z; the minimum
    part size over the whole decomposition is min rho(b) over the tops.
    """
    g = partition.poset.g
    ring = partition.poset.spec.ring
    parts: list[tuple[Exponent, frozenset[int]]] = []
    for iv in partition.intervals:
        z = frozenset(j for j in range(len(g)) if iv.hi[j] == g[j])
        free = [j for j in range(len(g)) if j not in z]
        for combo in itertools.product(*[range(iv.lo[j], iv.hi[j] + 1) for j in free]):
            c = list(iv.lo)
            for j, v in zip(free, combo):
                c[j] = v
            parts.append((tuple(c), z))
    return StanleyDecomposition(ring, tuple(parts))


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    reason: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


def _part_monomials(a: Exponent, z: frozenset[int], bound: int) -> Iterator[Exponent]:
    """Monomials of X^a K[Z] of total degree <= bound."""
    base = degree(a)
    if base > bound:
        return
    coords = sorted(z)

    def grow(vec: list[int], idx: int, budget: int) -> Iterator[Exponent]:
        if idx == len(coords):
            yield tuple(vec)
            return
        j = coords[idx]
        for extra in range(budget + 1):
            vec[j] = a[j] + extra
            yield from grow(vec, idx + 1, budget - extra)
        vec[j] = a[j]

    yield from grow(list(a), 0, bound - base)


def validate_decomposition(
    dec: StanleyDecomposition,
    spec: ModuleSpec,
    degree_bound: int | None = None,
) -> ValidationResult:
    """Check a claimed Stanley decomposition of I/J.

    Pointwise up to degree_bound: parts must be pairwise disjoint and lie
    inside I minus J.  On top of that the exact Hilbert series of the
    decomposition must equal the Hilbert series of the quotient; together
    with disjointness this certifies completeness in every degree, which
    no finite pointwise check could.
    """
    if dec.ring != spec.ring:
        return ValidationResult(False, "ring mismatch")
    g = canonical_bound(spec)
    if degree_bound is None:
        degree_bound = degree(g) + 2
    if degree_bound < degree(g) + 1:
        raise ValueError("degree bound too small to be conclusive")
    seen: dict[Exponent, int] = {}
    for k, (a, z) in enumerate(dec.parts):
        for m in _part_monomials(a, z, degree_bound):
            if m in seen:
                return ValidationResult(False, "parts overlap", m)
            seen[m] = k
            if not spec.contains(m):
                return ValidationResult(False, "monomial outside the quotient", m)
    mine = decomposition_series(dec.parts, spec.ring.n)
    target = hilbert_series(spec)
    if mine != target:
        return ValidationResult(False, "Hilbert series mismatch", (str(mine), str(target)))
    return ValidationResult(True)
