"""One-step and full polarization of monomial quotients.

A one-step move on variable X_i replaces every generator divisible by
X_i^2 with (Y/X_i) times itself, Y a fresh variable, and does nothing to
the rest.  The induced exponent map is the product of identities with the
one-variable polarization map on coordinate i; pulling the new ideals
back along it recovers the originals, which is checked on every call.
Iterating until every exponent is at most one yields the squarefree full
polarization, with a deterministic renaming x{j}_{k}: the k-th copy of
variable j appears in a generator exactly when the original exponent of
variable j was at least k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .monomial import (
    Exponent,
    MonomialIdeal,
    ModuleSpec,
    Ring,
    canonical_bound,
    degree,
    leq,
)
from .posetmaps import (
    BoxedPosetMap,
    IdentityMap,
    PolarStepMap,
    ProductMap,
    pullback_ideal,
    pushforward_ideal,
)
from .stanley import (
    CharacteristicPoset,
    Interval,
    IntervalPartition,
    StanleyDecomposition,
    characteristic_poset,
    validate_decomposition,
)


@dataclass(frozen=True)
class OneStepPolarization:
    """Everything produced by a single polarization move.

    The fresh variable sits right after the polarized one, at index
    ``variable + 1`` of the target ring; source variables at or below
    ``variable`` keep their index, later ones shift up by one.
    """

    source: ModuleSpec
    polarized: ModuleSpec
    map: BoxedPosetMap
    variable: int
    fresh_name: str

    @property
    def fresh_index(self) -> int:
        return self.variable + 1

    def map_source_variable(self, j: int) -> int:
        return j if j <= self.variable else j + 1

    def to_json(self) -> dict:
        return {
            "variable": self.variable,
            "fresh_name": self.fresh_name,
            "map": self.map.to_json(),
            "source": {"ring": list(self.source.ring.names)},
            "target": {"ring": list(self.polarized.ring.names)},
        }


def _fresh_name(names: Sequence[str], hint: str | None) -> str:
    if hint is not None:
        if hint in names:
            raise ValueError(f"fresh name {hint!r} already used")
        return hint
    if "y" not in names:
        return "y"
    k = 1
    while f"y{k}" in names:
        k += 1
    return f"y{k}"


def one_step_polarize(
    spec: ModuleSpec, variable: int, fresh_name: str | None = None
) -> OneStepPolarization:
    """Polarize one variable of I/J once.

    Permitted even when no generator is divisible by the square of the
    variable; the move then only adjoins an unused variable, and both
    Stanley depth and depth still rise by exactly one.
    """
    ring = spec.ring
    n = ring.n
    if not 0 <= variable < n:
        raise ValueError(f"no variable with index {variable}")
    fresh = _fresh_name(ring.names, fresh_name)
    new_ring = Ring(
        ring.names[: variable + 1] + (fresh,) + ring.names[variable + 1 :],
        ring.characteristic,
    )
    g = canonical_bound(spec)
    factors: list[BoxedPosetMap] = []
    if variable > 0:
        factors.append(IdentityMap(g[:variable]))
    factors.append(PolarStepMap(g[variable]))
    if variable < n - 1:
        factors.append(IdentityMap(g[variable + 1 :]))
    phi_hat = ProductMap(factors)

    I1 = pushforward_ideal(phi_hat, spec.I, new_ring)
    J1 = pushforward_ideal(phi_hat, spec.J, new_ring)
    polarized = ModuleSpec(I1, J1)

    # the move is only usable because the preimages of the new ideals are
    # exactly the old ones; check it rather than assume it
    if pullback_ideal(phi_hat, I1, ring).gens != spec.I.gens:
        raise RuntimeError("polarization map does not pull I back to itself")
    if pullback_ideal(phi_hat, J1, ring).gens != spec.J.gens:
        raise RuntimeError("polarization map does not pull J back to itself")

    return OneStepPolarization(spec, polarized, phi_hat, variable, fresh)


@dataclass(frozen=True)
class PolarizationTrace:
    """Replayable record of a full polarization."""

    steps: tuple[OneStepPolarization, ...]
    permutation: tuple[int, ...]  # final coordinate -> coordinate before renaming
    source_ring: Ring
    target_ring: Ring

    def to_json(self) -> dict:
        return {
            "steps": [s.to_json() for s in self.steps],
            "permutation": list(self.permutation),
            "source_ring": list(self.source_ring.names),
            "target_ring": list(self.target_ring.names),
        }


def _max_exponent(spec: ModuleSpec, coord: int) -> int:
    return max((u[coord] for u in spec.I.gens + spec.J.gens), default=0)


def full_polarize(
    spec: ModuleSpec, variable_order: Sequence[int] | None = None
) -> tuple[ModuleSpec, PolarizationTrace]:
    """Iterate one-step moves until the quotient is squarefree.

    Variables are processed in ascending index by default; the final
    quotient does not depend on the order.  Variable j of the source ends
    up as the block x{j+1}_1 ... x{j+1}_{max(g_j, 1)}.
    """
    ring0 = spec.ring
    n = ring0.n
    order = list(range(n)) if variable_order is None else list(variable_order)
    if sorted(order) != list(range(n)):
        raise ValueError("variable_order must be a permutation of the variables")

    current = spec
    steps: list[OneStepPolarization] = []
    # provenance per current coordinate: (source variable, copy tag);
    # tag 0 is the original column, tag t the t-th fresh copy
    origin: list[tuple[int, int]] = [(j, 0) for j in range(n)]
    tmp = 0
    for j in order:
        while True:
            pos = origin.index((j, 0))
            if _max_exponent(current, pos) <= 1:
                break
            tmp += 1
            step = one_step_polarize(current, pos, fresh_name=f"_p{tmp}")
            steps.append(step)
            tag = 1 + sum(1 for o in origin if o[0] == j and o[1] > 0)
            origin.insert(pos + 1, (j, tag))
            current = step.polarized

    # copy with tag t carries usage threshold t + 1: it occurs in a
    # generator exactly when the source exponent was >= t + 1
    def threshold(o: tuple[int, int]) -> int:
        return 1 if o[1] == 0 else o[1] + 1

    perm = tuple(sorted(range(len(origin)), key=lambda c: (origin[c][0], threshold(origin[c]))))
    names = tuple(f"x{origin[c][0] + 1}_{threshold(origin[c])}" for c in perm)
    final_ring = Ring(names, ring0.characteristic)

    def relabel(ideal: MonomialIdeal) -> MonomialIdeal:
        return MonomialIdeal.from_gens(
            final_ring, [tuple(u[c] for c in perm) for u in ideal.gens]
        )

    final = ModuleSpec(relabel(current.I), relabel(current.J))
    trace = PolarizationTrace(tuple(steps), perm, ring0, final_ring)
    return final, trace


def polarize_direct(spec: ModuleSpec) -> ModuleSpec:
    """Single-shot squarefree polarization.

    Source exponent e of variable j spreads over the first e copies of
    the block x{j+1}_1 ... x{j+1}_{max(g_j, 1)}; independent of the
    step-by-step route and used to cross-check it.
    """
    ring = spec.ring
    g = canonical_bound(spec)
    copies = [max(x, 1) for x in g]
    names = tuple(
        f"x{j + 1}_{k + 1}" for j in range(ring.n) for k in range(copies[j])
    )
    new_ring = Ring(names, ring.characteristic)

    def spread(u: Exponent) -> Exponent:
        return tuple(
            1 if u[j] >= k + 1 else 0 for j in range(ring.n) for k in range(copies[j])
        )

    I = MonomialIdeal.from_gens(new_ring, [spread(u) for u in spec.I.gens])
    J = MonomialIdeal.from_gens(new_ring, [spread(u) for u in spec.J.gens])
    return ModuleSpec(I, J)


def transfer_decomposition(
    dec: StanleyDecomposition, step: OneStepPolarization
) -> StanleyDecomposition:
    """Transport a Stanley decomposition through a one-step move.

    Each part (a, Z) becomes (phi(a), Z') where Z' gains the fresh
    variable when the polarized one is already present, and otherwise
    gains whichever of the two the quotient of images
    phi(X_i * X^a) / phi(X^a) does not single out.  Every part grows by
    exactly one variable, so the decomposition's depth rises by one.
    """
    check = validate_decomposition(dec, step.source)
    if not check:
        raise ValueError(f"decomposition does not validate: {check.reason} {check.witness}")
    phi = step.map
    i = step.variable
    y = step.fresh_index
    parts: list[tuple[Exponent, frozenset[int]]] = []
    for a, z in dec.parts:
        image = phi.evaluate_unboxed(a)
        mapped = frozenset(step.map_source_variable(j) for j in z)
        if i in z:
            z_new = mapped | {y}
        else:
            bumped = phi.evaluate_unboxed(a[:i] + (a[i] + 1,) + a[i + 1 :])
            ratio = tuple(p - q for p, q in zip(bumped, image))
            # closed form: the quotient is the fresh variable exactly when
            # the exponent of the polarized variable equals one
            expected = y if a[i] == 1 else i
            if ratio != tuple(1 if k == expected else 0 for k in range(len(image))):
                raise RuntimeError(f"image quotient mismatch at part {a}")
            z_new = mapped | ({i, y} - {expected})
        if len(z_new) != len(z) + 1:
            raise RuntimeError(f"part {a} did not grow by one variable")
        parts.append((image, z_new))
    return StanleyDecomposition(step.polarized.ring, tuple(parts))


def depolarize_partition(
    partition: IntervalPartition, step: OneStepPolarization
) -> IntervalPartition:
    """Pull an interval partition of the polarized poset back to the source.

    The restricted preimage of every interval under the step map is again
    a single interval (the polarization factor is one-dimensional and the
    rest is the identity), so taking preimages and dropping the empty ones
    yields an interval partition; its depth drops by at most one.
    """
    phi = step.map
    g = phi.g
    if tuple(partition.poset.g) != tuple(phi.g_prime):
        raise ValueError("partition bound does not match the step map")
    source_poset = characteristic_poset(step.source, g)
    intervals = []
    for iv in partition.intervals:
        pre = [
            a
            for a in itertools.product(*[range(x + 1) for x in g])
            if leq(iv.lo, phi._apply(a)) and leq(phi._apply(a), iv.hi)
        ]
        if not pre:
            continue
        lo = tuple(map(min, *pre)) if len(pre) > 1 else pre[0]
        hi = tuple(map(max, *pre)) if len(pre) > 1 else pre[0]
        vol = 1
        for x, y in zip(lo, hi):
            vol *= y - x + 1
        if vol != len(pre):
            raise RuntimeError(f"preimage of {iv} is not a single interval")
        intervals.append(Interval(lo, hi))
    return IntervalPartition(source_poset, tuple(intervals))
