"""Randomized verification harness.

Each tag names one mechanically checkable statement about the toolkit
(polarization shifts Stanley depth and depth by one, product maps add
their certified shifts, and so on) and runs it on seeded random
instances.  All statements are proved facts, so a failure would indicate
an implementation bug, never a counterexample; reports therefore dump the
offending instance verbatim for replay.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field

from .kernels import BACKEND
from .homology import depth
from .monomial import (
    Exponent,
    HilbertSeries,
    ModuleSpec,
    MonomialIdeal,
    Ring,
    canonical_bound,
    format_module_spec,
    hilbert_series,
)
from .polarization import full_polarize, one_step_polarize, transfer_decomposition
from .posetmaps import (
    BoxedPosetMap,
    IdentityMap,
    MinMap,
    OneDimMap,
    ProductMap,
    ShiftUpMap,
    TableMap,
    product_map,
    pullback_ideal,
    pushforward_ideal,
    split_join_meet_map,
    verify_depth_change,
)
from .stanley import (
    CharacteristicPoset,
    characteristic_poset,
    partition_to_decomposition,
    rho,
    sdepth,
    validate_decomposition,
)


# ---------------------------------------------------------------------------
# instance generation

def random_spec(seed: int, max_n: int = 3, max_deg: int = 3, max_gens: int = 4) -> ModuleSpec:
    """Seeded random quotient I/J; deterministic per seed.

    I is the unit ideal occasionally, otherwise a small random monomial
    ideal; J is zero half the time, otherwise generated by multiples of
    I's generators so containment is automatic, retrying until the
    quotient is nonzero.
    """
    if max_n < 1 or max_deg < 1 or max_gens < 1:
        raise ValueError("bounds must be positive")
    rng = random.Random(seed)
    n = rng.randint(1, max_n)
    ring = Ring(tuple(f"x{k + 1}" for k in range(n)))

    def monomial(max_degree: int, nonzero: bool) -> Exponent:
        while True:
            m = tuple(rng.randint(0, max_degree) for _ in range(n))
            if not nonzero or any(m):
                return m

    for _ in range(200):
        if rng.random() < 0.15:
            I = MonomialIdeal.unit(ring)
        else:
            I = MonomialIdeal.from_gens(
                ring, [monomial(max_deg, True) for _ in range(rng.randint(1, max_gens))]
            )
        if rng.random() < 0.5:
            J = MonomialIdeal.zero(ring)
        else:
            mults = [
                tuple(u + m for u, m in zip(gen, monomial(max_deg, False)))
                for gen in I.gens
                if rng.random() < 0.75
            ]
            J = MonomialIdeal.from_gens(ring, mults)
        try:
            return ModuleSpec(I, J)
        except Exception:
            continue
    return ModuleSpec(I, MonomialIdeal.zero(ring))


def _trial_seed(seed: int, trial: int, salt: int = 0) -> int:
    return (seed * 1_000_003 + trial * 8_191 + salt) & 0x7FFFFFFF


def _pick_square_variable(spec: ModuleSpec) -> int:
    """First variable whose square divides a generator, else variable 0
    (the degenerate move is still a valid polarization step)."""
    for k in range(spec.ring.n):
        if any(u[k] >= 2 for u in spec.I.gens + spec.J.gens):
            return k
    return 0


# ---------------------------------------------------------------------------
# independent Stanley depth oracle

def exhaustive_sdepth(poset: CharacteristicPoset) -> int:
    """Best minimum rho over all interval partitions, by full enumeration.

    Independent of the production search: no admissibility filter, no
    descending-target loop; every partition of the poset is considered
    and the max-min value returned.  Caching on the uncovered set only
    avoids recomputing identical subproblems.
    """
    g = poset.g
    n = len(g)
    points = frozenset(poset.points)
    cache: dict[frozenset, int] = {}

    def boxes_from(p: Exponent, remaining: frozenset) -> list[tuple[Exponent, frozenset]]:
        out = []
        for b in sorted(remaining):
            if all(x <= y for x, y in zip(p, b)):
                cells = list(itertools.product(*[range(x, y + 1) for x, y in zip(p, b)]))
                if all(c in remaining for c in cells):
                    out.append((b, frozenset(cells)))
        return out

    def best(remaining: frozenset) -> int:
        if not remaining:
            return n
        if remaining in cache:
            return cache[remaining]
        p = min(remaining)
        score = -1
        for b, cells in boxes_from(p, remaining):
            score = max(score, min(rho(b, g), best(remaining - cells)))
        cache[remaining] = score
        return score

    return best(points)


# ---------------------------------------------------------------------------
# reporting

@dataclass
class VerificationReport:
    theorem: str
    trials: int
    seed: int
    failures: list[dict] = field(default_factory=list)
    wall_time_s: float = 0.0
    params: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "trials": self.trials,
            "seed": self.seed,
            "failures": self.failures,
            "wall_time_s": round(self.wall_time_s, 3),
            "params": self.params,
            "backend": BACKEND,
        }

    def summary(self) -> str:
        state = "ok" if self.ok else f"{len(self.failures)} FAILURES"
        return (
            f"verify {self.theorem}: {self.trials} trials, seed {self.seed}: "
            f"{state} ({self.wall_time_s:.1f}s)"
        )


# ---------------------------------------------------------------------------
# per-tag runners; each yields failure dicts

def _run_thm_main(trials, seed, max_n, max_deg, max_gens):
    """One polarization step raises Stanley depth by exactly one."""
    for t in range(trials):
        spec = random_spec(_trial_seed(seed, t), max_n, max_deg, max_gens)
        var = _pick_square_variable(spec)
        s0 = sdepth(spec).value
        step = one_step_polarize(spec, var)
        s1 = sdepth(step.polarized).value
        if s1 != s0 + 1:
            yield {
                "trial": t,
                "spec": format_module_spec(spec),
                "variable": var,
                "sdepth": s0,
                "sdepth_polarized": s1,
            }


def _run_prop_41(trials, seed, max_n, max_deg, max_gens):
    """One polarization step raises depth by one and multiplies the
    Hilbert series by 1/(1-t); same instance stream as thm-main."""
    for t in range(trials):
        spec = random_spec(_trial_seed(seed, t), max_n, max_deg, max_gens)
        var = _pick_square_variable(spec)
        step = one_step_polarize(spec, var)
        d0, d1 = depth(spec), depth(step.polarized)
        h0, h1 = hilbert_series(spec), hilbert_series(step.polarized)
        issues = []
        if d1 != d0 + 1:
            issues.append(f"depth {d0} -> {d1}")
        if h1 != h0.times_geometric():
            issues.append(f"series {h0} -> {h1}")
        if issues:
            yield {
                "trial": t,
                "spec": format_module_spec(spec),
                "variable": var,
                "issues": issues,
            }


def _polarizable_spec(seed: int, trial: int, max_n, max_deg, max_gens, max_polar_vars=7):
    """Random quotient whose full polarization stays within the variable cap."""
    for attempt in range(500):
        spec = random_spec(_trial_seed(seed, trial, attempt), max_n, max_deg, max_gens)
        size = sum(max(x, 1) for x in canonical_bound(spec))
        if size <= max_polar_vars:
            return spec
    raise RuntimeError("could not draw a small enough instance")


def _run_cor_conj(trials, seed, max_n, max_deg, max_gens):
    """sdepth - depth is invariant under full polarization."""
    for t in range(trials):
        spec = _polarizable_spec(seed, t, max_n, max_deg, max_gens)
        full, _ = full_polarize(spec)
        gap0 = sdepth(spec).value - depth(spec)
        gap1 = sdepth(full).value - depth(full)
        if gap0 != gap1:
            yield {
                "trial": t,
                "spec": format_module_spec(spec),
                "gap": gap0,
                "gap_polarized": gap1,
            }


def _run_hvz(trials, seed, max_n, max_deg, max_gens):
    """The pruned descending search agrees with brute-force enumeration of
    every interval partition, on posets of at most 12 points."""
    for t in range(trials):
        spec = None
        for attempt in range(500):
            cand = random_spec(_trial_seed(seed, t, attempt), max_n, max_deg, max_gens)
            if len(characteristic_poset(cand).points) <= 12:
                spec = cand
                break
        if spec is None:
            raise RuntimeError("could not draw a small poset")
        fast = sdepth(spec).value
        slow = exhaustive_sdepth(characteristic_poset(spec))
        if fast != slow:
            yield {
                "trial": t,
                "spec": format_module_spec(spec),
                "search": fast,
                "enumeration": slow,
            }


def _random_one_dim(rng: random.Random, codim: int, dom_bound: int, val_bound: int) -> OneDimMap:
    columns = [sorted(rng.randint(0, val_bound) for _ in range(dom_bound + 1)) for _ in range(codim)]
    table = [tuple(col[lam] for col in columns) for lam in range(dom_bound + 1)]
    return OneDimMap(table)


def _run_lem_1dim(trials, seed, max_n, max_deg, max_gens):
    """Any monotone map out of a chain is certified at shift 1 - codim,
    and every target interval has a single-interval preimage."""
    codim_cap = min(3, max_n)
    dom_cap = min(6, 2 * max_deg)
    for t in range(trials):
        rng = random.Random(_trial_seed(seed, t))
        codim = rng.randint(1, codim_cap)
        dom_bound = rng.randint(1, dom_cap)
        phi = _random_one_dim(rng, codim, dom_bound, val_bound=6)
        cert = verify_depth_change(phi, 1 - codim)
        if not cert:
            yield {"trial": t, "map": phi.to_json(), "failed_interval": cert.target}
            continue
        witness = _chain_preimage_gap(phi)
        if witness is not None:
            yield {"trial": t, "map": phi.to_json(), "non_interval_preimage_of": witness}


def _chain_preimage_gap(phi: OneDimMap):
    """Target interval whose preimage along the chain is not contiguous,
    or None.  Independent of the certificate machinery."""
    dom = phi.g[0]
    vals = [phi._apply((lam,)) for lam in range(dom + 1)]
    le = [[0] * (phi.g_prime[k] + 2) for k in range(phi.codim)]
    for lam, v in enumerate(vals):
        for k in range(phi.codim):
            le[k][v[k] + 1] |= 1 << lam
    for k in range(phi.codim):
        for v in range(1, phi.g_prime[k] + 2):
            le[k][v] |= le[k][v - 1]
    full = (1 << (dom + 1)) - 1
    for a in itertools.product(*[range(x + 1) for x in phi.g_prime]):
        for b in itertools.product(*[range(x, y + 1) for x, y in zip(a, phi.g_prime)]):
            mask = full
            for k in range(phi.codim):
                mask &= le[k][b[k] + 1] & ~le[k][a[k]]
            if mask:
                shifted = mask >> ((mask & -mask).bit_length() - 1)
                if shifted & (shifted + 1):
                    return (a, b)
    return None


def _certified_factor(rng: random.Random) -> tuple[BoxedPosetMap, int]:
    """Small factor together with a shift it certifiably realizes."""
    if rng.random() < 0.25:
        dim = rng.randint(1, 2)
        return IdentityMap(tuple(rng.randint(0, 2) for _ in range(dim))), 0
    codim = rng.randint(1, 2)
    phi = _random_one_dim(rng, codim, rng.randint(1, 4), val_bound=2)
    return phi, 1 - codim


def _run_lem_interval(trials, seed, max_n, max_deg, max_gens):
    """Certified shifts of factors add up for the product map."""
    for t in range(trials):
        rng = random.Random(_trial_seed(seed, t))
        f1, l1 = _certified_factor(rng)
        f2, l2 = _certified_factor(rng)
        if not verify_depth_change(f1, l1) or not verify_depth_change(f2, l2):
            yield {"trial": t, "issue": "factor certificate missing"}
            continue
        prod = product_map(f1, f2)
        if not verify_depth_change(prod, l1 + l2):
            yield {
                "trial": t,
                "factors": [f1.to_json(), f2.to_json()],
                "shifts": [l1, l2],
            }


def _run_thm_joinmeet(trials, seed, max_n, max_deg, max_gens):
    """Shuffled products of one-dimensional maps split back into
    one-dimensional factors and are certified at shift dim - codim."""
    for t in range(trials):
        rng = random.Random(_trial_seed(seed, t))
        n = rng.randint(1, 3)
        factors = []
        total_codim = 0
        for _ in range(n):
            codim = rng.randint(1, 2) if total_codim + (n - len(factors)) < 4 else 1
            codim = min(codim, 4 - total_codim - (n - len(factors) - 1))
            factors.append(_random_one_dim(rng, codim, rng.randint(1, 3), val_bound=3))
            total_codim += codim
        prod = ProductMap(factors)
        shuffle = list(range(prod.codim))
        rng.shuffle(shuffle)
        entries = {
            a: tuple(prod._apply(a)[k] for k in shuffle) for a in prod.domain_points()
        }
        phi = TableMap(prod.g, entries)

        problems = []
        try:
            split = split_join_meet_map(phi)
        except Exception as exc:
            problems.append(f"split failed: {exc}")
            split = None
        if split is not None:
            for a in phi.domain_points():
                concat = tuple(
                    x
                    for f, i in zip(split.factors, split.domain_order)
                    for x in f._apply((a[i],))
                )
                image = phi._apply(a)
                if tuple(image[k] for k in split.codomain_order) != concat:
                    problems.append(f"reproduction fails at {a}")
                    break
        if not verify_depth_change(phi, phi.dim - phi.codim):
            problems.append("certificate at dim - codim missing")
        if problems:
            yield {"trial": t, "map": phi.to_json(), "problems": problems}


def _last_variable_shift(spec: ModuleSpec, k: int) -> ModuleSpec:
    """Multiply the generators whose last-variable degree is at least k by
    that variable, for both ideals."""
    g = canonical_bound(spec)
    n = spec.ring.n
    factors: list[BoxedPosetMap] = []
    if n > 1:
        factors.append(IdentityMap(g[:-1]))
    factors.append(ShiftUpMap(k, g[-1]))
    phi = ProductMap(factors)
    ring = spec.ring
    return ModuleSpec(
        pushforward_ideal(phi, spec.I, ring), pushforward_ideal(phi, spec.J, ring)
    )


def _last_variable_doubling(spec: ModuleSpec) -> ModuleSpec:
    """Replace the last variable by a product of two variables in every
    generator, realized as the preimage along the componentwise-min map."""
    g = canonical_bound(spec)
    n = spec.ring.n
    names = spec.ring.names + (f"x{n + 1}" if f"x{n + 1}" not in spec.ring.names else "w",)
    ring = Ring(names, spec.ring.characteristic)
    factors: list[BoxedPosetMap] = []
    if n > 1:
        factors.append(IdentityMap(g[:-1]))
    factors.append(MinMap(g[-1]))
    phi = ProductMap(factors)
    return ModuleSpec(
        pullback_ideal(phi, spec.I, ring), pullback_ideal(phi, spec.J, ring)
    )


def _run_prop_51(trials, seed, max_n, max_deg, max_gens):
    """Stanley depth is unchanged by the last-variable shift move."""
    for t in range(trials):
        rng = random.Random(_trial_seed(seed, t))
        spec = random_spec(_trial_seed(seed, t, 1), max_n, max_deg, max_gens)
        k = rng.randint(1, max_deg)
        shifted = _last_variable_shift(spec, k)
        s0, s1 = sdepth(spec).value, sdepth(shifted).value
        if s0 != s1:
            yield {
                "trial": t,
                "spec": format_module_spec(spec),
                "k": k,
                "sdepth": s0,
                "sdepth_shifted": s1,
            }


def _run_prop_52(trials, seed, max_n, max_deg, max_gens):
    """Doubling the last variable raises Stanley depth by exactly one."""
    for t in range(trials):
        spec = random_spec(_trial_seed(seed, t, 1), max_n, max_deg, max_gens)
        doubled = _last_variable_doubling(spec)
        s0, s1 = sdepth(spec).value, sdepth(doubled).value
        if s1 != s0 + 1:
            yield {
                "trial": t,
                "spec": format_module_spec(spec),
                "sdepth": s0,
                "sdepth_doubled": s1,
            }


TAGS = {
    "thm-main": _run_thm_main,
    "prop-4.1": _run_prop_41,
    "cor-conj": _run_cor_conj,
    "hvz": _run_hvz,
    "lem-1dim": _run_lem_1dim,
    "lem-interval": _run_lem_interval,
    "thm-joinmeet": _run_thm_joinmeet,
    "prop-5.1": _run_prop_51,
    "prop-5.2": _run_prop_52,
}

DEFAULT_TRIALS = {
    "thm-main": 100,
    "prop-4.1": 100,
    "lem-1dim": 200,
}


def run_verification(
    tag: str,
    trials: int | None = None,
    seed: int = 0,
    max_n: int = 3,
    max_deg: int = 3,
    max_gens: int = 4,
) -> VerificationReport:
    if tag not in TAGS:
        raise ValueError(f"unknown tag {tag!r}; known: {', '.join(sorted(TAGS))}")
    if trials is None:
        trials = DEFAULT_TRIALS.get(tag, 50)
    start = time.perf_counter()
    failures = list(TAGS[tag](trials, seed, max_n, max_deg, max_gens))
    elapsed = time.perf_counter() - start
    return VerificationReport(
        theorem=tag,
        trials=trials,
        seed=seed,
        failures=failures,
        wall_time_s=elapsed,
        params={"max_n": max_n, "max_deg": max_deg, "max_gens": max_gens},
    )
