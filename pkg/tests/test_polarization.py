"""One-step and full polarization, decomposition transfer, depolarization."""

import itertools

import pytest

from sdlab.homology import depth
from sdlab.monomial import canonical_bound, degree, hilbert_series, parse_module_spec
from sdlab.polarization import (
    depolarize_partition,
    full_polarize,
    one_step_polarize,
    polarize_direct,
    transfer_decomposition,
)
from sdlab.stanley import (
    Interval,
    IntervalPartition,
    StanleyDecomposition,
    characteristic_poset,
    partition_to_decomposition,
    rho,
    sdepth,
    validate_decomposition,
)
from sdlab.verify import random_spec


def spec_of(text):
    return parse_module_spec(text)


class TestOneStep:
    def test_square(self):
        step = one_step_polarize(spec_of("ring: x\nI: x^2\nJ: 0"), 0)
        assert step.polarized.ring.names == ("x", "y")
        assert step.polarized.I.gens == ((1, 1),)

    def test_generator_wise(self):
        step = one_step_polarize(spec_of("ring: x, z\nI: x^2, x*z\nJ: 0"), 0)
        assert step.polarized.ring.names == ("x", "y", "z")
        assert set(step.polarized.I.gens) == {(1, 1, 0), (1, 0, 1)}

    def test_degenerate_step_adjoins_unused_variable(self):
        step = one_step_polarize(spec_of("ring: x\nI: x\nJ: 0"), 0)
        assert step.polarized.ring.names == ("x", "y")
        assert step.polarized.I.gens == ((1, 0),)
        # both invariants still move up by one: the new variable is free
        assert sdepth(step.polarized).value == sdepth(step.source).value + 1
        assert depth(step.polarized) == depth(step.source) + 1

    def test_applies_to_both_ideals(self):
        step = one_step_polarize(spec_of("ring: x\nI: 1\nJ: x^3"), 0)
        assert step.polarized.J.gens == ((2, 1),)

    def test_fresh_name_avoids_collisions(self):
        step = one_step_polarize(spec_of("ring: x, y\nI: y^2\nJ: 0"), 1)
        assert step.fresh_name == "y1"
        assert step.polarized.ring.names == ("x", "y", "y1")

    def test_bad_variable_index(self):
        with pytest.raises(ValueError):
            one_step_polarize(spec_of("ring: x\nI: x\nJ: 0"), 3)

    def test_map_matches_generator_rule(self):
        spec = spec_of("ring: x, y\nI: x^3*y, y^2\nJ: 0")
        step = one_step_polarize(spec, 0)
        for u in spec.I.gens:
            assert step.map.evaluate(u) in step.polarized.I.gens


class TestFullPolarize:
    def test_single_square(self):
        full, trace = full_polarize(spec_of("ring: x\nI: x^2\nJ: 0"))
        assert full.ring.names == ("x1_1", "x1_2")
        assert full.I.gens == ((1, 1),)
        assert len(trace.steps) == 1

    def test_mixed_degrees(self):
        full, _ = full_polarize(spec_of("ring: x, y\nI: x^2*y\nJ: 0"))
        assert full.ring.names == ("x1_1", "x1_2", "x2_1")
        assert full.I.gens == ((1, 1, 1),)

    def test_squarefree_input_is_renamed_copy(self):
        spec = spec_of("ring: a, b\nI: a*b, b\nJ: 0")
        full, trace = full_polarize(spec)
        assert not trace.steps
        assert full.ring.names == ("x1_1", "x2_1")
        assert full.I.gens == spec.I.gens

    def test_output_is_squarefree(self):
        for seed in range(25):
            spec = random_spec(seed, max_n=2, max_deg=3)
            if sum(max(x, 1) for x in canonical_bound(spec)) > 7:
                continue
            full, _ = full_polarize(spec)
            for u in full.I.gens + full.J.gens:
                assert all(e <= 1 for e in u)

    def test_matches_direct_construction(self):
        for seed in range(30):
            spec = random_spec(seed, max_n=3, max_deg=3)
            if sum(max(x, 1) for x in canonical_bound(spec)) > 8:
                continue
            full, _ = full_polarize(spec)
            assert full == polarize_direct(spec)

    def test_order_independence(self):
        for seed in (0, 2, 9, 17):
            spec = random_spec(seed, max_n=3, max_deg=3)
            if sum(max(x, 1) for x in canonical_bound(spec)) > 8:
                continue
            forward, _ = full_polarize(spec)
            n = spec.ring.n
            backward, _ = full_polarize(spec, variable_order=list(range(n - 1, -1, -1)))
            assert forward == backward

    def test_variable_count(self):
        spec = spec_of("ring: x, y, z\nI: x^3, y\nJ: 0")
        full, _ = full_polarize(spec)
        g = canonical_bound(spec)
        assert full.ring.n == sum(max(x, 1) for x in g)

    def test_trace_json(self):
        _, trace = full_polarize(spec_of("ring: x\nI: x^3\nJ: 0"))
        data = trace.to_json()
        assert len(data["steps"]) == 2
        assert data["target_ring"] == ["x1_1", "x1_2", "x1_3"]


class TestTransfer:
    def test_principal_square(self):
        spec = spec_of("ring: x\nI: x^2\nJ: 0")
        step = one_step_polarize(spec, 0)
        dec = StanleyDecomposition(spec.ring, (((2,), frozenset({0})),))
        out = transfer_decomposition(dec, step)
        assert out.parts == (((1, 1), frozenset({0, 1})),)
        assert validate_decomposition(out, step.polarized)

    def test_zero_support_parts(self):
        spec = spec_of("ring: x\nI: 1\nJ: x^2")
        step = one_step_polarize(spec, 0)
        dec = StanleyDecomposition(
            spec.ring, (((0,), frozenset()), ((1,), frozenset()))
        )
        out = transfer_decomposition(dec, step)
        assert set(out.parts) == {
            ((0, 0), frozenset({1})),
            ((1, 0), frozenset({0})),
        }
        assert validate_decomposition(out, step.polarized)

    def test_image_quotient_rule_beyond_the_bound(self):
        # part bases with exponent >= 2 exclude the original variable, not
        # the fresh one
        spec = spec_of("ring: x\nI: 1\nJ: x^3")
        step = one_step_polarize(spec, 0)
        dec = StanleyDecomposition(
            spec.ring,
            (((0,), frozenset()), ((1,), frozenset()), ((2,), frozenset())),
        )
        out = transfer_decomposition(dec, step)
        assert ((1, 1), frozenset({1})) in out.parts
        assert validate_decomposition(out, step.polarized)

    def test_enumeration_agrees_to_degree_four(self):
        spec = spec_of("ring: x\nI: 1\nJ: x^2")
        step = one_step_polarize(spec, 0)
        dec = StanleyDecomposition(
            spec.ring, (((0,), frozenset()), ((1,), frozenset()))
        )
        out = transfer_decomposition(dec, step)
        covered = set()
        for a, z in out.parts:
            coords = sorted(z)
            for extras in itertools.product(range(5), repeat=len(coords)):
                m = list(a)
                for j, e in zip(coords, extras):
                    m[j] += e
                if sum(m) <= 4:
                    covered.add(tuple(m))
        target = {
            m
            for m in itertools.product(range(5), repeat=2)
            if sum(m) <= 4 and step.polarized.contains(m)
        }
        assert covered == target

    def test_rejects_invalid_decomposition(self):
        spec = spec_of("ring: x\nI: 1\nJ: x^2")
        step = one_step_polarize(spec, 0)
        bad = StanleyDecomposition(spec.ring, (((0,), frozenset({0})),))
        with pytest.raises(ValueError):
            transfer_decomposition(bad, step)

    def test_depth_rises_by_one_and_star_condition(self):
        for seed in range(30):
            spec = random_spec(seed, max_n=3, max_deg=3)
            var = next(
                (
                    k
                    for k in range(spec.ring.n)
                    if any(u[k] >= 2 for u in spec.I.gens + spec.J.gens)
                ),
                0,
            )
            step = one_step_polarize(spec, var)
            dec = partition_to_decomposition(sdepth(spec).partition)
            out = transfer_decomposition(dec, step)
            assert out.sdepth() == dec.sdepth() + 1
            assert validate_decomposition(out, step.polarized)
            _check_star_condition(dec, out, step)


def _check_star_condition(dec, out, step, bound_pad=2):
    """Image-intersection condition, part by part: monomials of the new
    part that are images of monomials land exactly on the images of the
    old part."""
    phi = step.map
    i, y = step.variable, step.fresh_index
    bound = degree(canonical_bound(step.polarized)) + bound_pad

    def part_monomials(a, z, nvars):
        coords = sorted(z)
        for extras in itertools.product(range(bound + 1), repeat=len(coords)):
            m = list(a)
            for j, e in zip(coords, extras):
                m[j] += e
            if sum(m) <= bound:
                yield tuple(m)

    for (a_old, z_old), (a_new, z_new) in zip(dec.parts, out.parts):
        lhs = set()
        for m in part_monomials(a_new, z_new, step.polarized.ring.n):
            # image membership: the polarized pair of coordinates must be
            # hit by the one-variable map
            c, e = m[i], m[y]
            if e == 0 and c <= 1:
                src = c
            elif e == 1 and c >= 1:
                src = c + 1
            else:
                continue
            pre = m[:i] + (src,) + m[i + 1 : y] + m[y + 1 :]
            lhs.add((m, pre))
        rhs = {
            (phi.evaluate_unboxed(m), m)
            for m in part_monomials(a_old, z_old, step.source.ring.n)
            if degree(phi.evaluate_unboxed(m)) <= bound
        }
        assert {m for m, _ in lhs} == {m for m, _ in rhs}


class TestDepolarize:
    def test_single_interval(self):
        spec = spec_of("ring: x\nI: x^2\nJ: 0")
        step = one_step_polarize(spec, 0)
        result = sdepth(step.polarized)
        back = depolarize_partition(result.partition, step)
        assert [(iv.lo, iv.hi) for iv in back.intervals] == [((2,), (2,))]

    def test_hypersurface(self):
        spec = spec_of("ring: x\nI: 1\nJ: x^2")
        step = one_step_polarize(spec, 0)
        poset = characteristic_poset(step.polarized)
        partition = IntervalPartition(
            poset, (Interval((0, 0), (0, 1)), Interval((1, 0), (1, 0)))
        )
        back = depolarize_partition(partition, step)
        assert [(iv.lo, iv.hi) for iv in back.intervals] == [
            ((0,), (0,)),
            ((1,), (1,)),
        ]

    def test_depth_drops_by_at_most_one(self):
        for seed in range(25):
            spec = random_spec(seed, max_n=3, max_deg=3)
            var = next(
                (
                    k
                    for k in range(spec.ring.n)
                    if any(u[k] >= 2 for u in spec.I.gens + spec.J.gens)
                ),
                0,
            )
            step = one_step_polarize(spec, var)
            up = sdepth(step.polarized)
            g = canonical_bound(spec)
            back = depolarize_partition(up.partition, step)
            low = min(rho(iv.hi, g) for iv in back.intervals)
            assert low >= up.value - 1


class TestHilbertUnderPolarization:
    def test_series_gains_one_geometric_factor(self):
        for seed in range(25):
            spec = random_spec(seed, max_n=3, max_deg=3)
            step = one_step_polarize(spec, 0)
            assert hilbert_series(step.polarized) == hilbert_series(spec).times_geometric()
