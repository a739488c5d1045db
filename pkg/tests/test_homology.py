"""Koszul strand homology, projective dimension and depth."""

import itertools

from sdlab.homology import (
    depth,
    koszul_slice,
    koszul_slice_ranks,
    projective_dimension,
)
from sdlab.monomial import canonical_bound, parse_module_spec
from sdlab.polarization import full_polarize
from sdlab.verify import random_spec


def spec_of(text):
    return parse_module_spec(text)


class TestSliceRanks:
    def test_variable_quotient(self):
        # R/(x) at degree 1: the basis {x} sits in degree 1 only, killed
        # into nothing, so H1 has rank 1
        ranks = koszul_slice_ranks(spec_of("ring: x\nI: 1\nJ: x"), (1,))
        assert ranks == [0, 1]

    def test_free_module_acyclic(self):
        spec = spec_of("ring: x, y\nI: 1\nJ: 0")
        for a in [(1, 0), (1, 1), (2, 1)]:
            assert koszul_slice_ranks(spec, a) == [0, 0, 0]

    def test_two_generator_socle(self):
        ranks = koszul_slice_ranks(spec_of("ring: x, y\nI: 1\nJ: x^2, x*y"), (2, 1))
        assert ranks[2] == 1

    def test_prime_field_option(self):
        spec = spec_of("ring: x, y\nI: 1\nJ: x^2, x*y")
        assert koszul_slice_ranks(spec, (2, 1), characteristic=32003) == koszul_slice_ranks(
            spec, (2, 1)
        )


class TestBoundarySquaresToZero:
    def test_random_slices(self):
        for seed in range(25):
            spec = random_spec(seed, max_n=3, max_deg=2)
            g = canonical_bound(spec)
            window = list(itertools.product(*[range(x + 2) for x in g]))
            for a in window[:: max(1, len(window) // 8)]:
                sl = koszul_slice(spec, a)
                for i in range(2, spec.ring.n + 1):
                    upper = sl.boundaries[i]
                    lower = sl.boundaries[i - 1]
                    if upper is None or lower is None:
                        continue
                    rows, mid, cols = len(lower), len(upper), len(upper[0])
                    for r in range(rows):
                        for c in range(cols):
                            assert (
                                sum(lower[r][k] * upper[k][c] for k in range(mid)) == 0
                            )


class TestProjectiveDimensionAndDepth:
    def test_hypersurface(self):
        assert projective_dimension(spec_of("ring: x\nI: 1\nJ: x^2")) == 1
        assert depth(spec_of("ring: x\nI: 1\nJ: x^2")) == 0

    def test_two_generators(self):
        assert projective_dimension(spec_of("ring: x, y\nI: 1\nJ: x^2, x*y")) == 2

    def test_principal_ideal_is_free(self):
        assert projective_dimension(spec_of("ring: x\nI: x\nJ: 0")) == 0

    def test_hypersurface_two_vars(self):
        assert depth(spec_of("ring: x, y\nI: 1\nJ: x*y")) == 1

    def test_free_module(self):
        assert depth(spec_of("ring: x, y, z\nI: 1\nJ: 0")) == 3

    def test_depth_at_most_n(self):
        for seed in range(20):
            spec = random_spec(seed)
            assert 0 <= depth(spec) <= spec.ring.n

    def test_field_independence_on_desk_instances(self):
        for seed in range(15):
            spec = random_spec(seed, max_n=3, max_deg=2)
            assert depth(spec) == depth(spec, characteristic=32003)

    def test_pd_preserved_by_full_polarization(self):
        for seed in (0, 3, 5, 11):
            spec = random_spec(seed, max_n=2, max_deg=3)
            if sum(max(x, 1) for x in canonical_bound(spec)) > 6:
                continue
            full, _ = full_polarize(spec)
            assert projective_dimension(full) == projective_dimension(spec)
