"""Monotone maps between boxes in N^n and their depth-change certificates.

A boxed map carries its domain bound g and codomain bound g'.  The key
notion: a monotone map phi shifts interval-partition depth by at least l
when, for every interval [a', b'] inside [0, g'], the restricted preimage
decomposes into disjoint intervals whose tops b each satisfy

    #{j : b_j = g_j}  >=  #{j : b'_j = g'_j} + l.

``verify_depth_change`` checks this exhaustively over all target
intervals and returns the full per-interval certificate.  The module also
transports monomial ideals along such maps (preimage and image ideals).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .kernels import IntervalCoverEngine
from .monomial import (
    Exponent,
    MonomialIdeal,
    Ring,
    degree,
    leq,
    minimal_generators,
    vjoin,
    vmeet,
)
from .stanley import rho


class OutOfBoxError(ValueError):
    """Argument outside the map's domain box."""


class PullbackError(ValueError):
    """Preimage ideal cannot be determined soundly from the data given."""


class SplitError(ValueError):
    """Map does not factor into one-dimensional pieces; carries a witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def _box_points(bound: Exponent) -> Iterator[Exponent]:
    yield from itertools.product(*[range(x + 1) for x in bound])


def _monotone_on_box(apply_fn, bound: Exponent) -> tuple[Exponent, Exponent] | None:
    """First covering pair violating monotonicity, or None.

    Monotonicity along covering steps a -> a + e_j implies monotonicity on
    the whole box by transitivity.
    """
    for a in _box_points(bound):
        fa = apply_fn(a)
        for j in range(len(bound)):
            if a[j] < bound[j]:
                b = a[:j] + (a[j] + 1,) + a[j + 1 :]
                if not leq(fa, apply_fn(b)):
                    return (a, b)
    return None


class BoxedPosetMap:
    """Base class; subclasses define ``kind``, ``g``, ``g_prime``, ``_apply``."""

    kind = "abstract"
    g: Exponent
    g_prime: Exponent

    @property
    def dim(self) -> int:
        return len(self.g)

    @property
    def codim(self) -> int:
        return len(self.g_prime)

    def _apply(self, a: Exponent) -> Exponent:
        raise NotImplementedError

    def evaluate(self, a: Exponent) -> Exponent:
        if len(a) != self.dim or any(x < 0 for x in a) or not leq(a, self.g):
            raise OutOfBoxError(f"{a} outside [0, {self.g}]")
        return self._apply(a)

    def __call__(self, a: Exponent) -> Exponent:
        return self.evaluate(a)

    # closed-form kinds also work outside the box; table kinds do not
    closed_form = False

    def evaluate_unboxed(self, a: Exponent) -> Exponent:
        raise OutOfBoxError(f"{self.kind} map is only defined on its box")

    def _upset_preimage_min(self, target: Exponent) -> Exponent | None:
        """Least a with phi(a) >= target, for closed-form kinds; None if
        no multiple of the target is ever reached."""
        raise NotImplementedError

    def domain_points(self) -> Iterator[Exponent]:
        return _box_points(self.g)

    def to_json(self) -> dict:
        raise NotImplementedError


def evaluate_map(phi: BoxedPosetMap, a: Exponent) -> Exponent:
    """Apply the map inside its box; the induced monomial map sends
    X^a to X^(phi(a))."""
    return phi.evaluate(a)


class IdentityMap(BoxedPosetMap):
    kind = "identity"
    closed_form = True

    def __init__(self, g: Sequence[int]):
        self.g = tuple(int(x) for x in g)
        if any(x < 0 for x in self.g):
            raise ValueError("negative bound")
        self.g_prime = self.g

    def _apply(self, a: Exponent) -> Exponent:
        return a

    def evaluate_unboxed(self, a: Exponent) -> Exponent:
        return a

    def _upset_preimage_min(self, target: Exponent) -> Exponent | None:
        return tuple(target)

    def to_json(self) -> dict:
        return {"kind": self.kind, "g": list(self.g)}

    def __repr__(self) -> str:
        return f"IdentityMap(g={self.g})"


class OneDimMap(BoxedPosetMap):
    """Arbitrary monotone map out of a chain, given by its value table."""

    kind = "one_dim"

    def __init__(self, table: Sequence[Sequence[int]], g_prime: Sequence[int] | None = None):
        vals = tuple(tuple(int(x) for x in row) for row in table)
        if not vals:
            raise ValueError("empty table")
        width = len(vals[0])
        for row in vals:
            if len(row) != width or any(x < 0 for x in row):
                raise ValueError("table rows must be nonnegative vectors of one width")
        for lo, hi in zip(vals, vals[1:]):
            if not leq(lo, hi):
                raise ValueError("table must be nondecreasing")
        self.table = vals
        self.g = (len(vals) - 1,)
        self.g_prime = vals[-1] if g_prime is None else tuple(int(x) for x in g_prime)
        if not leq(vals[-1], self.g_prime):
            raise ValueError("codomain bound below the image of the top")

    def _apply(self, a: Exponent) -> Exponent:
        return self.table[a[0]]

    def to_json(self) -> dict:
        return {"kind": self.kind, "table": [list(r) for r in self.table], "g_prime": list(self.g_prime)}

    def __repr__(self) -> str:
        return f"OneDimMap(table={self.table})"


class ProductMap(BoxedPosetMap):
    """Factorwise map on a concatenation of boxes; nested products flatten."""

    kind = "product"

    def __init__(self, factors: Sequence[BoxedPosetMap]):
        flat: list[BoxedPosetMap] = []
        for f in factors:
            if isinstance(f, ProductMap):
                flat.extend(f.factors)
            else:
                flat.append(f)
        if not flat:
            raise ValueError("product needs at least one factor")
        self.factors = tuple(flat)
        self.g = tuple(x for f in flat for x in f.g)
        self.g_prime = tuple(x for f in flat for x in f.g_prime)
        self._cuts = []
        pos = 0
        for f in flat:
            self._cuts.append((pos, pos + f.dim))
            pos += f.dim

    @property
    def closed_form(self) -> bool:  # type: ignore[override]
        return all(f.closed_form for f in self.factors)

    def _apply(self, a: Exponent) -> Exponent:
        out: list[int] = []
        for f, (lo, hi) in zip(self.factors, self._cuts):
            out.extend(f._apply(a[lo:hi]))
        return tuple(out)

    def evaluate_unboxed(self, a: Exponent) -> Exponent:
        out: list[int] = []
        for f, (lo, hi) in zip(self.factors, self._cuts):
            out.extend(f.evaluate_unboxed(a[lo:hi]))
        return tuple(out)

    def _upset_preimage_min(self, target: Exponent) -> Exponent | None:
        out: list[int] = []
        pos = 0
        for f in self.factors:
            block = target[pos : pos + f.codim]
            pos += f.codim
            m = f._upset_preimage_min(block)
            if m is None:
                return None
            out.extend(m)
        return tuple(out)

    def to_json(self) -> dict:
        return {"kind": self.kind, "factors": [f.to_json() for f in self.factors]}

    def __repr__(self) -> str:
        return f"ProductMap({list(self.factors)!r})"


class MinMap(BoxedPosetMap):
    """(a, b) -> min(a, b) on [0, (bound, bound)]."""

    kind = "min2"
    closed_form = True

    def __init__(self, bound: int):
        bound = int(bound)
        if bound < 0:
            raise ValueError("negative bound")
        self.bound = bound
        self.g = (bound, bound)
        self.g_prime = (bound,)

    def _apply(self, a: Exponent) -> Exponent:
        return (min(a),)

    def evaluate_unboxed(self, a: Exponent) -> Exponent:
        return (min(a),)

    def _upset_preimage_min(self, target: Exponent) -> Exponent | None:
        return (target[0], target[0])

    def to_json(self) -> dict:
        return {"kind": self.kind, "g": self.bound}

    def __repr__(self) -> str:
        return f"MinMap(bound={self.bound})"


class ShiftUpMap(BoxedPosetMap):
    """i -> i for i < k, i -> i + 1 for i >= k."""

    kind = "shift_up"
    closed_form = True

    def __init__(self, k: int, bound: int):
        self.k = int(k)
        self.bound = int(bound)
        if self.k < 0 or self.bound < 0:
            raise ValueError("negative parameter")
        self.g = (self.bound,)
        self.g_prime = self._apply((self.bound,))

    def _apply(self, a: Exponent) -> Exponent:
        i = a[0]
        return (i if i < self.k else i + 1,)

    evaluate_unboxed = _apply

    def _upset_preimage_min(self, target: Exponent) -> Exponent | None:
        c = target[0]
        return (c,) if c < self.k else (max(self.k, c - 1),)

    def to_json(self) -> dict:
        return {"kind": self.kind, "k": self.k, "g": self.bound}

    def __repr__(self) -> str:
        return f"ShiftUpMap(k={self.k}, bound={self.bound})"


class ShiftDownMap(BoxedPosetMap):
    """i -> i for i <= k, i -> i - 1 for i > k."""

    kind = "shift_down"
    closed_form = True

    def __init__(self, k: int, bound: int):
        self.k = int(k)
        self.bound = int(bound)
        if self.k < 0 or self.bound < 0:
            raise ValueError("negative parameter")
        self.g = (self.bound,)
        self.g_prime = self._apply((self.bound,))

    def _apply(self, a: Exponent) -> Exponent:
        i = a[0]
        return (i if i <= self.k else i - 1,)

    evaluate_unboxed = _apply

    def _upset_preimage_min(self, target: Exponent) -> Exponent | None:
        c = target[0]
        return (c,) if c <= self.k else (c + 1,)

    def to_json(self) -> dict:
        return {"kind": self.kind, "k": self.k, "g": self.bound}

    def __repr__(self) -> str:
        return f"ShiftDownMap(k={self.k}, bound={self.bound})"


class PolarStepMap(BoxedPosetMap):
    """The one-variable polarization map i -> (i, 0) for i <= 1 and
    i -> (i - 1, 1) for i >= 2; injective, monotone, join-preserving and
    order-reflecting."""

    kind = "polar_step"
    closed_form = True

    def __init__(self, bound: int):
        self.bound = int(bound)
        if self.bound < 0:
            raise ValueError("negative bound")
        self.g = (self.bound,)
        self.g_prime = self._apply((self.bound,))

    def _apply(self, a: Exponent) -> Exponent:
        i = a[0]
        return (i, 0) if i <= 1 else (i - 1, 1)

    evaluate_unboxed = _apply

    def _upset_preimage_min(self, target: Exponent) -> Exponent | None:
        c, y = target
        if y > 1:
            return None
        if y == 0:
            return (c,) if c <= 1 else (c + 1,)
        return (max(2, c + 1),)

    def to_json(self) -> dict:
        return {"kind": self.kind, "g": self.bound}

    def __repr__(self) -> str:
        return f"PolarStepMap(bound={self.bound})"


class TableMap(BoxedPosetMap):
    """Raw monotone map given by a full table on its box."""

    kind = "table"

    def __init__(self, g: Sequence[int], entries: dict, g_prime: Sequence[int] | None = None):
        self.g = tuple(int(x) for x in g)
        table = {tuple(k): tuple(int(x) for x in v) for k, v in entries.items()}
        pts = list(_box_points(self.g))
        if set(table) != set(pts):
            raise ValueError("table must cover the box exactly")
        widths = {len(v) for v in table.values()}
        if len(widths) != 1:
            raise ValueError("table values of mixed width")
        self.entries = table
        top = tuple(table[pts[0]])
        for v in table.values():
            top = vjoin(top, v)
        self.g_prime = top if g_prime is None else tuple(int(x) for x in g_prime)
        if not leq(top, self.g_prime):
            raise ValueError("codomain bound below the image")
        bad = _monotone_on_box(lambda a: table[a], self.g)
        if bad is not None:
            raise ValueError(f"table is not monotone at {bad[0]} -> {bad[1]}")

    def _apply(self, a: Exponent) -> Exponent:
        return self.entries[a]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "g": list(self.g),
            "g_prime": list(self.g_prime),
            "entries": [[list(k), list(v)] for k, v in sorted(self.entries.items())],
        }

    def __repr__(self) -> str:
        return f"TableMap(g={self.g}, g_prime={self.g_prime})"


def map_from_json(data: dict) -> BoxedPosetMap:
    kind = data["kind"]
    if kind == "identity":
        return IdentityMap(data["g"])
    if kind == "one_dim":
        return OneDimMap(data["table"], data.get("g_prime"))
    if kind == "product":
        return ProductMap([map_from_json(f) for f in data["factors"]])
    if kind == "min2":
        return MinMap(data["g"])
    if kind == "shift_up":
        return ShiftUpMap(data["k"], data["g"])
    if kind == "shift_down":
        return ShiftDownMap(data["k"], data["g"])
    if kind == "polar_step":
        return PolarStepMap(data["g"])
    if kind == "table":
        return TableMap(data["g"], {tuple(k): tuple(v) for k, v in data["entries"]})
    raise ValueError(f"unknown map kind {kind!r}")


# ---------------------------------------------------------------------------
# classification

@dataclass
class MapClassification:
    monotone: bool
    preserves_joins: bool
    preserves_meets: bool
    monotone_witness: tuple[Exponent, Exponent] | None = None
    join_witness: tuple[Exponent, Exponent] | None = None
    meet_witness: tuple[Exponent, Exponent] | None = None


def classify_map(phi: BoxedPosetMap) -> MapClassification:
    """Exhaustive check of monotonicity and join/meet preservation on the
    whole box (all point pairs; fine at desk scale)."""
    if isinstance(phi, IdentityMap):
        return MapClassification(True, True, True)
    pts = list(phi.domain_points())
    vals = {a: phi._apply(a) for a in pts}
    monotone = joins = meets = True
    mw = jw = mtw = None
    for idx, a in enumerate(pts):
        fa = vals[a]
        for b in pts[idx:]:
            fb = vals[b]
            if monotone and leq(a, b) and not leq(fa, fb):
                monotone, mw = False, (a, b)
            if joins and vals[vjoin(a, b)] != vjoin(fa, fb):
                joins, jw = False, (a, b)
            if meets and vals[vmeet(a, b)] != vmeet(fa, fb):
                meets, mtw = False, (a, b)
            if not (monotone or joins or meets):
                return MapClassification(False, False, False, mw, jw, mtw)
    return MapClassification(monotone, joins, meets, mw, jw, mtw)


# ---------------------------------------------------------------------------
# depth-change certificates

@dataclass(frozen=True)
class IntervalRecord:
    """One target interval with an interval decomposition of its preimage.

    ``margin`` is min over the pieces of #{j : top_j = g_j} minus
    #{j : b'_j = g'_j}; None when the preimage is empty.
    """

    target: tuple[Exponent, Exponent]
    pieces: tuple[tuple[Exponent, Exponent], ...]
    margin: int | None


@dataclass(frozen=True)
class DepthChangeCertificate:
    shift: int
    g: Exponent
    g_prime: Exponent
    records: tuple[IntervalRecord, ...]

    def __bool__(self) -> bool:
        return True

    def min_margin(self) -> int | None:
        margins = [r.margin for r in self.records if r.margin is not None]
        return min(margins) if margins else None


@dataclass(frozen=True)
class DepthChangeFailure:
    shift: int
    target: tuple[Exponent, Exponent]

    def __bool__(self) -> bool:
        return False


def _codomain_intervals(g_prime: Exponent) -> Iterator[tuple[Exponent, Exponent]]:
    for a in _box_points(g_prime):
        for b in itertools.product(*[range(x, y + 1) for x, y in zip(a, g_prime)]):
            yield a, b


def verify_depth_change(
    phi: BoxedPosetMap, shift: int
) -> DepthChangeCertificate | DepthChangeFailure:
    """Certify that phi shifts interval-partition depth by ``shift``.

    Every interval of the codomain box is processed: its restricted
    preimage must split into disjoint intervals whose tops clear the
    required margin.  No sampling; the certificate is a proof at this
    scale.  Returns a falsy ``DepthChangeFailure`` naming the first target
    interval whose preimage admits no admissible decomposition.
    """
    bad = _monotone_on_box(phi._apply, phi.g)
    if bad is not None:
        raise ValueError(f"map is not monotone at {bad[0]} -> {bad[1]}")
    if not leq(phi._apply(phi.g), phi.g_prime):
        raise ValueError("phi(g) must be bounded by the codomain bound")

    dom = list(phi.domain_points())
    vals = [phi._apply(a) for a in dom]
    engine = IntervalCoverEngine(dom)
    assert engine.points == tuple(dom)
    rho_dom = [rho(p, phi.g) for p in dom]

    # per-coordinate prefix masks: bit i set in le[k][v] iff vals[i][k] <= v
    codim = phi.codim
    le = [[0] * (phi.g_prime[k] + 2) for k in range(codim)]
    for i, v in enumerate(vals):
        for k in range(codim):
            le[k][v[k] + 1] |= 1 << i
    for k in range(codim):
        for v in range(1, phi.g_prime[k] + 2):
            le[k][v] |= le[k][v - 1]
    full = (1 << len(dom)) - 1

    admissible_cache: dict[int, list[bool]] = {}
    records = []
    for a_t, b_t in _codomain_intervals(phi.g_prime):
        pre = full
        for k in range(codim):
            pre &= le[k][b_t[k] + 1] & ~le[k][a_t[k]]
        required = rho(b_t, phi.g_prime) + shift
        adm = admissible_cache.get(required)
        if adm is None:
            adm = [r >= required for r in rho_dom]
            admissible_cache[required] = adm
        pairs = engine.search(adm, allowed_mask=pre)
        if pairs is None:
            return DepthChangeFailure(shift, (a_t, b_t))
        pieces = tuple((dom[i], dom[j]) for i, j in pairs)
        margin = (
            min(rho_dom[j] for _, j in pairs) - rho(b_t, phi.g_prime) if pairs else None
        )
        records.append(IntervalRecord((a_t, b_t), pieces, margin))
    return DepthChangeCertificate(shift, phi.g, phi.g_prime, tuple(records))


def product_map(*factors: BoxedPosetMap) -> ProductMap:
    """Product of boxed maps on the concatenated boxes.

    Certified shifts add up: when the factors are certified for l1 and l2,
    the product is certified for l1 + l2 (preimages of product intervals
    are the products of the factor preimages).
    """
    return ProductMap(factors)


# ---------------------------------------------------------------------------
# splitting join- and meet-preserving maps

@dataclass(frozen=True)
class SplitMapResult:
    """Factorization into one-dimensional maps.

    ``factors[t]`` consumes domain coordinate ``domain_order[t]``; writing
    the factor outputs one after the other produces the codomain up to the
    returned coordinate permutation: for every a in the box,

        phi(a)[codomain_order[k]] == concat(factors)(a)[k].

    Factors are reported in ascending order of their least owned codomain
    coordinate; codomain coordinates no factor moves are attached, as
    constants, to the last factor.
    """

    factors: tuple[OneDimMap, ...]
    domain_order: tuple[int, ...]
    codomain_order: tuple[int, ...]


def split_join_meet_map(phi: BoxedPosetMap) -> SplitMapResult:
    """Split a join- and meet-preserving monotone map into one-dimensional
    factors with disjoint codomain supports."""
    cls = classify_map(phi)
    if not cls.monotone:
        raise SplitError(f"map is not monotone at {cls.monotone_witness}", cls.monotone_witness)
    if not cls.preserves_joins:
        raise SplitError(f"map does not preserve joins at {cls.join_witness}", cls.join_witness)
    if not cls.preserves_meets:
        raise SplitError(f"map does not preserve meets at {cls.meet_witness}", cls.meet_witness)

    n = phi.dim
    codim = phi.codim
    zero = (0,) * n
    base = phi._apply(zero)

    # per-coordinate rays: values of phi - phi(0) along lambda * e_i
    rays: list[list[Exponent]] = []
    for i in range(n):
        col = []
        for lam in range(phi.g[i] + 1):
            a = zero[:i] + (lam,) + zero[i + 1 :]
            col.append(tuple(x - y for x, y in zip(phi._apply(a), base)))
        rays.append(col)

    support = [frozenset(k for k in range(codim) if rays[i][-1][k] > 0) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            common = support[i] & support[j]
            if common:
                k = next(iter(common))
                li = next(l for l in range(phi.g[i] + 1) if rays[i][l][k] > 0)
                lj = next(l for l in range(phi.g[j] + 1) if rays[j][l][k] > 0)
                wi = zero[:i] + (li,) + zero[i + 1 :]
                wj = zero[:j] + (lj,) + zero[j + 1 :]
                raise SplitError(
                    f"codomain supports of coordinates {i} and {j} overlap at {k}; "
                    f"meets are not preserved on ({wi}, {wj})",
                    (wi, wj),
                )

    # additivity across coordinates; guaranteed by join/meet preservation,
    # rechecked because it doubles as the reproduction proof
    for a in phi.domain_points():
        expect = list(base)
        for i in range(n):
            for k in range(codim):
                expect[k] += rays[i][a[i]][k]
        if tuple(expect) != phi._apply(a):
            raise SplitError(f"map is not a product of its coordinate rays at {a}", a)

    order = sorted(range(n), key=lambda i: (min(support[i]) if support[i] else codim, i))
    owned = [sorted(support[i]) for i in order]
    touched = set().union(*support)
    owned[-1] = owned[-1] + sorted(set(range(codim)) - touched)
    codomain_order = tuple(k for block in owned for k in block)

    factors = []
    for t, i in enumerate(order):
        table = []
        for lam in range(phi.g[i] + 1):
            table.append(tuple(rays[i][lam][k] + base[k] for k in owned[t]))
        factors.append(OneDimMap(table))
    return SplitMapResult(tuple(factors), tuple(order), codomain_order)


# ---------------------------------------------------------------------------
# transport of ideals

def pullback_ideal(phi: BoxedPosetMap, ideal: MonomialIdeal, ring: Ring) -> MonomialIdeal:
    """Minimal generators of { a : phi(a) in the ideal } in ``ring``.

    Monotone maps pull up-sets back to up-sets, so the preimage is again a
    monomial ideal.  Closed-form kinds are solved per generator in closed
    form; if a generator of the result escapes [0, g] the data was
    inconsistent and we refuse.  Table kinds only know their box: the
    result is sound for every monotone extension exactly when the whole
    upper boundary of the box already maps into the ideal, and we refuse
    otherwise rather than return a ideal that extension could change.
    """
    if ring.n != phi.dim:
        raise ValueError("ring does not match the domain box")
    if len(ideal.ring.zero_exponent()) != phi.codim:
        raise ValueError("ideal does not match the codomain box")
    if ideal.is_zero():
        return MonomialIdeal.zero(ring)

    if phi.closed_form:
        mins = []
        for u in ideal.gens:
            m = phi._upset_preimage_min(u)
            if m is None:
                continue
            if not leq(m, phi.g):
                raise PullbackError(
                    f"preimage generator {m} of {u} escapes the domain box [0, {phi.g}]"
                )
            mins.append(m)
        return MonomialIdeal.from_gens(ring, mins)

    pre = {a for a in phi.domain_points() if ideal.contains(phi._apply(a))}
    for a in phi.domain_points():
        if a in pre:
            continue
        boundary = [j for j in range(phi.dim) if a[j] == phi.g[j]]
        if boundary:
            raise PullbackError(
                f"table is not saturated: boundary point {a} (coordinate {boundary[0]} "
                f"at its bound) is outside the preimage, so generators beyond the box "
                f"may exist"
            )
    mins = [
        a
        for a in pre
        if all(
            a[j] == 0 or (a[:j] + (a[j] - 1,) + a[j + 1 :]) not in pre
            for j in range(phi.dim)
        )
    ]
    return MonomialIdeal.from_gens(ring, mins)


def pushforward_ideal(phi: BoxedPosetMap, ideal: MonomialIdeal, ring: Ring) -> MonomialIdeal:
    """Ideal generated by the images of the minimal generators."""
    if ring.n != phi.codim:
        raise ValueError("ring does not match the codomain box")
    if len(ideal.ring.zero_exponent()) != phi.dim:
        raise ValueError("ideal does not match the domain box")
    return MonomialIdeal.from_gens(ring, [phi.evaluate(u) for u in ideal.gens])
