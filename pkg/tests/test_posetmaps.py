"""Boxed maps, depth-change certificates, splitting, ideal transport."""

import itertools
import random

import pytest

from sdlab.monomial import MonomialIdeal, Ring
from sdlab.posetmaps import (
    DepthChangeFailure,
    IdentityMap,
    MinMap,
    OneDimMap,
    OutOfBoxError,
    PolarStepMap,
    ProductMap,
    PullbackError,
    ShiftDownMap,
    ShiftUpMap,
    SplitError,
    TableMap,
    classify_map,
    map_from_json,
    product_map,
    pullback_ideal,
    pushforward_ideal,
    split_join_meet_map,
    verify_depth_change,
)
from sdlab.stanley import rho


class TestEvaluate:
    def test_polar_step_values(self):
        phi = PolarStepMap(3)
        assert [phi((i,)) for i in range(4)] == [(0, 0), (1, 0), (1, 1), (2, 1)]

    def test_min(self):
        assert MinMap(3)((3, 1)) == (1,)

    def test_shift_up(self):
        phi = ShiftUpMap(2, 3)
        assert phi((1,)) == (1,) and phi((2,)) == (3,)

    def test_shift_down(self):
        phi = ShiftDownMap(2, 4)
        assert phi((2,)) == (2,) and phi((3,)) == (2,)

    def test_out_of_box(self):
        with pytest.raises(OutOfBoxError):
            PolarStepMap(2)((3,))
        with pytest.raises(OutOfBoxError):
            IdentityMap((1, 1))((0, 2))

    def test_one_dim_table_must_be_monotone(self):
        with pytest.raises(ValueError):
            OneDimMap([(1, 0), (0, 1)])

    def test_json_roundtrip(self):
        maps = [
            IdentityMap((2, 1)),
            OneDimMap([(0, 0), (1, 2)]),
            ProductMap([IdentityMap((1,)), PolarStepMap(2)]),
            MinMap(2),
            ShiftUpMap(1, 3),
            ShiftDownMap(1, 3),
            PolarStepMap(4),
            TableMap((1, 1), {(a, b): (a + b,) for a in range(2) for b in range(2)}),
        ]
        for phi in maps:
            data = phi.to_json()
            assert map_from_json(data).to_json() == data


class TestClassify:
    def test_identity(self):
        cls = classify_map(IdentityMap((2, 2)))
        assert cls.monotone and cls.preserves_joins and cls.preserves_meets

    def test_min_fails_joins_only(self):
        cls = classify_map(MinMap(1))
        assert cls.monotone and cls.preserves_meets and not cls.preserves_joins
        assert cls.join_witness == ((0, 1), (1, 0))

    def test_polar_step_preserves_everything(self):
        for g in range(7):
            cls = classify_map(PolarStepMap(g))
            assert cls.monotone and cls.preserves_joins and cls.preserves_meets


def brute_force_recheck(phi, cert):
    """Independent certificate audit: recompute each preimage from scratch
    and confirm the recorded pieces tile it with sufficient margins."""
    dom = list(itertools.product(*[range(x + 1) for x in phi.g]))
    for record in cert.records:
        lo_t, hi_t = record.target
        pre = {
            a
            for a in dom
            if all(lo_t[k] <= phi((a if isinstance(a, tuple) else (a,)))[k] <= hi_t[k] for k in range(len(lo_t)))
        }
        seen = set()
        for lo, hi in record.pieces:
            cells = set(itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]))
            assert cells <= pre, "piece leaves the preimage"
            assert not (cells & seen), "pieces overlap"
            seen |= cells
            margin = rho(hi, phi.g) - rho(hi_t, phi.g_prime)
            assert margin >= cert.shift
            assert record.margin is not None and record.margin <= margin
        assert seen == pre, "pieces do not tile the preimage"
        if not record.pieces:
            assert record.margin is None


class TestVerifyDepthChange:
    def test_identity_at_zero(self):
        cert = verify_depth_change(IdentityMap((2, 1)), 0)
        assert cert and cert.min_margin() == 0
        brute_force_recheck(IdentityMap((2, 1)), cert)

    def test_identity_fails_at_one(self):
        failure = verify_depth_change(IdentityMap((1,)), 1)
        assert isinstance(failure, DepthChangeFailure) and not failure
        assert failure.target == ((0,), (0,))

    def test_one_dim_tables(self):
        rng = random.Random(4)
        for _ in range(15):
            codim = rng.randint(1, 3)
            cols = [sorted(rng.randint(0, 4) for _ in range(4)) for _ in range(codim)]
            phi = OneDimMap([tuple(c[i] for c in cols) for i in range(4)])
            cert = verify_depth_change(phi, 1 - codim)
            assert cert
            brute_force_recheck(phi, cert)

    def test_min_map_certifies_plus_one(self):
        cert = verify_depth_change(MinMap(2), 1)
        assert cert
        brute_force_recheck(MinMap(2), cert)
        # the preimage of [0, 1] is the box minus its top corner
        record = next(r for r in cert.records if r.target == ((0,), (1,)))
        covered = set()
        for lo, hi in record.pieces:
            covered |= set(itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]))
        assert covered == {(a, b) for a in range(3) for b in range(3)} - {(2, 2)}

    def test_shift_maps_certify_zero(self):
        for g in (2, 3):
            assert verify_depth_change(ShiftUpMap(2, g), 0)
            assert verify_depth_change(ShiftDownMap(2, g + 1), 0)

    def test_polar_step_certifies_minus_one(self):
        for g in range(2, 6):
            cert = verify_depth_change(PolarStepMap(g), -1)
            assert cert
        brute_force_recheck(PolarStepMap(4), verify_depth_change(PolarStepMap(4), -1))

    def test_non_monotone_rejected(self):
        # TableMap construction itself refuses non-monotone data
        with pytest.raises(ValueError):
            TableMap((1,), {(0,): (1,), (1,): (0,)})


class TestProductMap:
    def test_padding_behaves_like_the_factor(self):
        inner = PolarStepMap(3)
        padded = product_map(IdentityMap((2, 2)), inner)
        for a in range(3):
            for b in range(3):
                for c in range(4):
                    assert padded((a, b, c)) == (a, b) + inner((c,))

    def test_certified_shifts_add(self):
        rng = random.Random(6)
        for _ in range(10):
            c1, c2 = rng.randint(1, 2), rng.randint(1, 2)
            f1 = _random_table(rng, c1)
            f2 = _random_table(rng, c2)
            assert verify_depth_change(f1, 1 - c1)
            assert verify_depth_change(f2, 1 - c2)
            assert verify_depth_change(product_map(f1, f2), 2 - c1 - c2)

    def test_nested_products_flatten(self):
        p = product_map(product_map(IdentityMap((1,)), MinMap(1)), PolarStepMap(2))
        assert len(p.factors) == 3


def _random_table(rng, codim, length=4, val=2):
    cols = [sorted(rng.randint(0, val) for _ in range(length)) for _ in range(codim)]
    return OneDimMap([tuple(c[i] for c in cols) for i in range(length)])


class TestSplit:
    def test_already_split(self):
        phi = TableMap(
            (2, 2), {(a, b): (a, 2 * b) for a in range(3) for b in range(3)}
        )
        res = split_join_meet_map(phi)
        assert [f.table for f in res.factors] == [
            ((0,), (1,), (2,)),
            ((0,), (2,), (4,)),
        ]
        assert res.domain_order == (0, 1)
        assert res.codomain_order == (0, 1)

    def test_recovers_padded_polar_step(self):
        prod = ProductMap([IdentityMap((2,)), PolarStepMap(3)])
        phi = TableMap(
            (2, 3), {a: prod._apply(a) for a in prod.domain_points()}
        )
        res = split_join_meet_map(phi)
        assert res.factors[0].table == ((0,), (1,), (2,))
        assert res.factors[1].table == ((0, 0), (1, 0), (1, 1), (2, 1))

    def test_reproduces_after_permutation(self):
        rng = random.Random(8)
        for _ in range(10):
            n = rng.randint(1, 3)
            factors = [_random_table(rng, rng.randint(1, 2), length=rng.randint(2, 4)) for _ in range(n)]
            prod = ProductMap(factors)
            shuffle = list(range(prod.codim))
            rng.shuffle(shuffle)
            phi = TableMap(
                prod.g,
                {a: tuple(prod._apply(a)[k] for k in shuffle) for a in prod.domain_points()},
            )
            res = split_join_meet_map(phi)
            for a in phi.domain_points():
                concat = tuple(
                    x
                    for f, i in zip(res.factors, res.domain_order)
                    for x in f._apply((a[i],))
                )
                image = phi._apply(a)
                assert tuple(image[k] for k in res.codomain_order) == concat

    def test_min_map_rejected_with_witness(self):
        with pytest.raises(SplitError) as err:
            split_join_meet_map(MinMap(2))
        assert err.value.witness == ((0, 1), (1, 0))

    def test_offset_is_folded_back(self):
        phi = TableMap((1,), {(0,): (1, 2), (1,): (1, 3)})
        res = split_join_meet_map(phi)
        assert res.factors[0]._apply((0,)) == (2, 1) or res.factors[0]._apply((0,)) == (1, 2)
        for a in phi.domain_points():
            concat = tuple(
                x for f, i in zip(res.factors, res.domain_order) for x in f._apply((a[i],))
            )
            assert tuple(phi._apply(a)[k] for k in res.codomain_order) == concat


class TestIdealTransport:
    def setup_method(self):
        self.r1 = Ring(("x",))
        self.r2 = Ring(("x", "y"))

    def test_pullback_polar_step(self):
        ideal = MonomialIdeal.from_gens(self.r2, [(1, 1)])
        assert pullback_ideal(PolarStepMap(2), ideal, self.r1).gens == ((2,),)

    def test_pullback_identity(self):
        ideal = MonomialIdeal.from_gens(self.r2, [(1, 0), (0, 2)])
        assert pullback_ideal(IdentityMap((2, 2)), ideal, self.r2) == ideal

    def test_pullback_min(self):
        ideal = MonomialIdeal.from_gens(self.r1, [(2,)])
        pulled = pullback_ideal(MinMap(3), ideal, self.r2)
        assert pulled.gens == ((2, 2),)

    def test_pushforward_polar_step(self):
        ideal = MonomialIdeal.from_gens(self.r1, [(2,)])
        assert pushforward_ideal(PolarStepMap(2), ideal, self.r2).gens == ((1, 1),)

    def test_pushforward_identity(self):
        ideal = MonomialIdeal.from_gens(self.r1, [(2,)])
        assert pushforward_ideal(IdentityMap((3,)), ideal, self.r1) == ideal

    def test_pushforward_shift(self):
        ideal = MonomialIdeal.from_gens(self.r1, [(3,)])
        assert pushforward_ideal(ShiftUpMap(2, 3), ideal, self.r1).gens == ((4,),)

    def test_pullback_escape_refused(self):
        ideal = MonomialIdeal.from_gens(self.r1, [(4,)])
        with pytest.raises(PullbackError):
            pullback_ideal(ShiftUpMap(2, 2), ideal, self.r1)

    def test_pullback_zero_ideal(self):
        zero = MonomialIdeal.zero(self.r1)
        assert pullback_ideal(MinMap(2), zero, self.r2).is_zero()

    def test_table_pullback_saturated(self):
        phi = TableMap((2,), {(i,): (i,) for i in range(3)})
        ideal = MonomialIdeal.from_gens(self.r1, [(1,)])
        assert pullback_ideal(phi, ideal, self.r1).gens == ((1,),)

    def test_table_pullback_unsaturated_refused(self):
        phi = TableMap((2,), {(i,): (i,) for i in range(3)})
        ideal = MonomialIdeal.from_gens(self.r1, [(3,)])
        with pytest.raises(PullbackError):
            pullback_ideal(phi, ideal, self.r1)

    def test_pullback_pushforward_adjunction_for_polar(self):
        # the polarization map reflects order, so pulling back the image
        # ideal returns the original
        rng = random.Random(10)
        for _ in range(20):
            g = rng.randint(2, 4)
            padded = ProductMap([IdentityMap((2,)), PolarStepMap(g)])
            gens = [
                (rng.randint(0, 2), rng.randint(0, g))
                for _ in range(rng.randint(1, 3))
            ]
            if all(e == (0, 0) for e in gens):
                continue
            domain_ring = self.r2
            target_ring = Ring(("x", "y", "z"))
            ideal = MonomialIdeal.from_gens(domain_ring, gens)
            pushed = pushforward_ideal(padded, ideal, target_ring)
            assert pullback_ideal(padded, pushed, domain_ring) == ideal
