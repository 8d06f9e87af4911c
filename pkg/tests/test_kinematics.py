"""Point configurations, cross-ratios, the crossing action and the
admissibility predicates."""

import random
from fractions import Fraction as F

import pytest

from gcipw.exact import MPoly, RatFn
from gcipw.kinematics import (
    ChiralPair,
    DegenerateConfiguration,
    InadmissibleField,
    PointConfig,
    SpinLabel,
    chiral_from_st,
    cross_ratios,
    gci_3pt_admissible,
    harmonic_dimension,
    locality_exponent,
    random_config,
    s3_action,
    squared_interval,
)

E1 = (1, 0, 0, 0)
E2 = (0, 1, 0, 0)
E3 = (0, 0, 1, 0)
E4 = (0, 0, 0, 1)
ORIGIN = (0, 0, 0, 0)


class TestSquaredInterval:
    def test_unit(self):
        cfg = PointConfig([ORIGIN, E1])
        assert squared_interval(cfg, 0, 1) == 1

    def test_coincident(self):
        cfg = PointConfig([E1, E1])
        assert squared_interval(cfg, 0, 1) == 0

    def test_two_units(self):
        cfg = PointConfig([ORIGIN, E1, E2])
        assert squared_interval(cfg, 1, 2) == 2

    def test_symmetry_and_diagonal(self):
        rng = random.Random(3)
        cfg = random_config(rng, 3)
        assert cfg.rho(0, 1) == cfg.rho(1, 0)
        assert cfg.rho(2, 2) == 0

    def test_index_error(self):
        with pytest.raises(IndexError):
            squared_interval(PointConfig([E1]), 0, 1)


class TestCrossRatios:
    def test_unit_tetrad(self):
        cfg = PointConfig([ORIGIN, E1, E2, E3])
        cr = cross_ratios(cfg)
        assert (cr.s, cr.t) == (1, 1)

    def test_coincident_first_pair(self):
        cfg = PointConfig([ORIGIN, ORIGIN, E2, E3])
        cr = cross_ratios(cfg)
        assert (cr.s, cr.t) == (0, 1)

    def test_degenerate(self):
        cfg = PointConfig([ORIGIN, E1, ORIGIN, E3])
        with pytest.raises(DegenerateConfiguration):
            cross_ratios(cfg)

    def test_swap_12(self):
        rng = random.Random(5)
        for _ in range(10):
            cfg = random_config(rng, 4)
            cr = cross_ratios(cfg)
            swapped = PointConfig(
                [cfg.points[1], cfg.points[0], cfg.points[2], cfg.points[3]]
            )
            cr2 = cross_ratios(swapped)
            assert (cr2.s, cr2.t) == (cr.s / cr.t, 1 / cr.t)

    def test_translation_invariance(self):
        rng = random.Random(6)
        cfg = random_config(rng, 4)
        shift = (F(1, 3), F(-2), F(5, 2), F(7))
        moved = PointConfig(
            [tuple(a + b for a, b in zip(p, shift)) for p in cfg.points]
        )
        assert cross_ratios(moved) == cross_ratios(cfg)

    def test_rotation_invariance(self):
        # rational rotation in the (1,2)-plane preserves sums of squares
        rng = random.Random(7)
        cfg = random_config(rng, 4)
        c, s = F(3, 5), F(4, 5)

        def rot(p):
            return (c * p[0] - s * p[1], s * p[0] + c * p[1], p[2], p[3])

        assert cross_ratios(PointConfig([rot(p) for p in cfg.points])) == cross_ratios(cfg)


class TestChiral:
    def test_double_root_at_origin(self):
        cp = chiral_from_st(0, 1)
        assert (cp.u, cp.v) == (0, 0)

    def test_equal_roots(self):
        cp = chiral_from_st(F(1, 4), F(1, 4))
        assert cp.u == cp.v == F(1, 2)
        # substitution oracle: s = uv and t = (1-u)(1-v)
        assert cp.u * cp.v == F(1, 4)
        assert (1 - cp.u) * (1 - cp.v) == F(1, 4)

    def test_complex_roots_only_symmetric_functions(self):
        cp = chiral_from_st(1, 1)
        assert cp.discriminant == -3
        assert cp.u is None and cp.v is None
        assert (cp.e1, cp.e2) == (1, 1)

    def test_reconstruction_identity(self):
        # (1-u)(1-v) = 1 - e1 + e2 for random rational data
        rng = random.Random(8)
        for _ in range(20):
            s = F(rng.randint(-9, 9), rng.randint(1, 4))
            t = F(rng.randint(-9, 9), rng.randint(1, 4))
            cp = chiral_from_st(s, t)
            assert cp.e2 == s
            assert 1 - cp.e1 + cp.e2 == t


def random_ratfn(rng) -> RatFn:
    s, t = MPoly.variables(2)
    num = MPoly(
        2,
        {
            (rng.randint(0, 3), rng.randint(0, 3)): F(rng.randint(-5, 5))
            for _ in range(4)
        },
    )
    if num.is_zero():
        num = MPoly.const(2, 1)
    return RatFn(num, t ** rng.randint(0, 2) * s ** rng.randint(0, 1))


class TestS3Action:
    def test_d2_invariant_polynomial(self):
        s, t = MPoly.variables(2)
        f = RatFn(1 + s + t)
        assert s3_action("s12", f, 2) == f
        assert s3_action("s23", f, 2) == f

    def test_involutions(self):
        rng = random.Random(9)
        for _ in range(8):
            f = random_ratfn(rng)
            for gen in ("s12", "s23"):
                assert s3_action(gen, s3_action(gen, f, 4), 4) == f

    def test_braid_relation(self):
        rng = random.Random(10)
        f = random_ratfn(rng)
        g = f
        for _ in range(3):
            g = s3_action("s23", s3_action("s12", g, 4), 4)
        assert g == f

    def test_s23_substitution_oracle(self):
        # direct check at a rational point: (s23 f)(s,t) = s^(2d-3) f(1/s, t/s)
        s0, t0 = F(3, 2), F(5, 7)
        f = RatFn(MPoly.var(2, 0) ** 2)  # f = s^2
        g = s3_action("s23", f, 2)
        assert g.eval([s0, t0]) == s0 ** (2 * 2 - 3) * (1 / s0) ** 2

    def test_unknown_generator(self):
        with pytest.raises(ValueError):
            s3_action("s13", RatFn.const(2, 1), 4)


class TestAdmissibility:
    def test_scalar_d2_triple(self):
        labs = [SpinLabel(2, 0, 0)] * 3
        assert gci_3pt_admissible(labs)

    def test_yukawa_rejected(self):
        labs = [
            SpinLabel(F(3, 2), F(1, 2), 0),
            SpinLabel(F(3, 2), 0, F(1, 2)),
            SpinLabel(1, 0, 0),
        ]
        assert not gci_3pt_admissible(labs)

    def test_canonical_scalars_rejected(self):
        labs = [SpinLabel(1, 0, 0)] * 3
        assert not gci_3pt_admissible(labs)

    def test_locality_exponent(self):
        assert locality_exponent(SpinLabel(4, 0, 0)) == (4, 1)
        assert locality_exponent(SpinLabel(F(3, 2), F(1, 2), 0)) == (2, -1)
        assert locality_exponent(SpinLabel(1, 0, 0)) == (1, 1)

    def test_locality_rejects_noninteger(self):
        with pytest.raises(InadmissibleField):
            locality_exponent(SpinLabel(F(3, 2), 0, 0))


class TestHarmonicDimension:
    def test_constants(self):
        assert harmonic_dimension(0, 4) == 1

    def test_squares_in_four_dimensions(self):
        assert harmonic_dimension(2, 4) == 9
        for n in range(1, 21):
            assert harmonic_dimension(n - 1, 4) == n * n

    def test_six_dimensions(self):
        assert harmonic_dimension(1, 6) == 6

    def test_product_form(self):
        # cross-check against 2/(2 d0)! prod_i (n^2 - i^2) for d0 = 1, 2
        import math

        for d0, D in ((1, 4), (2, 6)):
            for n in range(d0, 15):
                prod = F(2, math.factorial(2 * d0))
                for i in range(d0):
                    prod *= n * n - i * i
                assert harmonic_dimension(n - d0, D) == prod


class TestRandomConfig:
    def test_reproducible_and_nondegenerate(self):
        a = random_config(random.Random(42), 6)
        b = random_config(random.Random(42), 6)
        assert a.points == b.points
        assert a.is_nondegenerate()

    def test_coordinate_ranges(self):
        cfg = random_config(random.Random(1), 4)
        for p in cfg.points:
            for c in p:
                assert abs(c) <= 9
                assert c.denominator in (1, 2, 3)
