"""Partial-wave machinery: hypergeometric kernels, the twist recursion,
structure constants, positivity and the OPE kernel coefficients."""

import math
import random
from fractions import Fraction as F

import pytest

from gcipw.exact import MPoly, PSeries, RatFn, Series2
from gcipw.fourpoint import PWParams, assemble_P4, basis_j_small
from gcipw.partialwave import (
    InconsistentExpansion,
    PoleInParameters,
    closed_form_B,
    f1_rational,
    hypergeom_series,
    inv_unit_power,
    kernel_coeff,
    kernel_coeff_quadrature,
    laplace_st,
    lhs_series,
    positivity_check,
    solve_structure_constants,
    twist_extract,
)


def rand_params(rng, with_B=False):
    r = lambda: F(rng.randint(-8, 8), rng.randint(1, 4))
    return PWParams(r(), r(), r(), r(), r(), abs(r()) if with_B else 0)


class TestHypergeom:
    def test_degenerate_convention(self):
        f = hypergeom_series(0, 0, 0, 8)
        assert f.coeffs[0] == 1 and all(c == 0 for c in f.coeffs[1:])

    def test_value_at_zero(self):
        assert hypergeom_series(3, 5, 7, 6)[0] == 1

    def test_log_series(self):
        f = hypergeom_series(1, 1, 2, 10)
        assert all(f[n] == F(1, n + 1) for n in range(11))

    def test_parameter_pole(self):
        with pytest.raises(PoleInParameters):
            hypergeom_series(1, 1, 0, 4)


class TestLhsSeries:
    def test_zero_params(self):
        assert lhs_series(PWParams(), 8).is_zero()

    def test_constant_term_j0(self):
        assert lhs_series(PWParams(a0=1), 8)[(0, 0)] == 2

    def test_substitution_oracle_order6(self):
        # independent oracle: expand 1/t^3 as a geometric series in
        # w = u + v - uv instead of solving the division order by order
        rng = random.Random(11)
        p = rand_params(rng, with_B=True)
        order = 6
        u, v = MPoly.variables(2)
        w = u + v - u * v
        inv_t3 = Series2.zero(order)
        for m in range(order + 1):
            inv_t3 = inv_t3 + Series2.from_poly(
                math.comb(m + 2, 2) * w**m, order
            )
        p4uv = Series2.from_poly(assemble_P4(p).subs_poly([u * v, (1 - u) * (1 - v)]), order)
        expected = p4uv * inv_t3
        if p.B:
            inv_t4 = Series2.zero(order)
            for m in range(order + 1):
                inv_t4 = inv_t4 + Series2.from_poly(math.comb(m + 3, 3) * w**m, order)
            tail = (Series2.const(order, 1) + inv_t4).shift(4, 4).truncate(order)
            expected = expected + (p.B * p.B) * tail
        assert lhs_series(p, order) == expected


class TestTwistExtract:
    def test_g1_for_j0(self):
        tower = twist_extract(PWParams(a0=1), 1, 12)
        # g1(u) = u (2 - u)/(1 - u): coefficients 0, 2, 1, 1, 1, ...
        expected = [0, 2] + [1] * (tower.g[1].order - 1)
        assert tower.g[1].coeffs[: len(expected)] == [F(x) for x in expected]

    def test_zero_params(self):
        tower = twist_extract(PWParams(), 3, 14)
        assert all(g.is_zero() for g in tower.g.values())

    def test_pure_c_profile(self):
        tower = twist_extract(PWParams(c=1), 2, 14)
        assert tower.f[1].is_zero()
        # f2(0, 1-u) = 1/(1-u)
        geo = inv_unit_power(1, tower.boundary[2].order)
        assert tower.boundary[2].coeffs == geo.coeffs[: len(tower.boundary[2].coeffs)]

    def test_f1_matches_rational_route(self):
        rng = random.Random(12)
        for _ in range(3):
            p = rand_params(rng)
            tower = twist_extract(p, 1, 10)
            from gcipw.exact.chiral import expand_to_chiral

            assert tower.f[1] == expand_to_chiral(f1_rational(p), tower.f[1].order)

    def test_f2_log_reconstruction(self):
        # f2 series equals [F(1,1;2;v) g2(u) - F(1,1;2;u) g2(v)]/(u - v)
        # with the closed-form g2 of the twist-4 line
        rng = random.Random(13)
        p = rand_params(rng)
        tower = twist_extract(p, 2, 16)
        order = tower.g[2].order
        one = PSeries([F(1)] + [F(0)] * order)
        inv1 = inv_unit_power(1, order)
        inv2 = inv_unit_power(2, order)
        inv3 = inv_unit_power(3, order)
        g2_closed = (
            (p.a1 * (inv3 - one)).shift(1)
            + (p.b * inv2).shift(2).truncate(order + 1)
            + (p.c * inv1).truncate(order + 1)
        ).shift(1).truncate(order)
        assert tower.g[2].coeffs == g2_closed.coeffs[: len(tower.g[2].coeffs)]

    def test_remainder_diagnostics(self):
        # feeding a non-family series must raise: fake it by breaking the
        # order-inflation precondition instead (too-small order)
        with pytest.raises(ValueError):
            twist_extract(PWParams(a0=1), 5, 8)

    def test_B_enters_only_above_twist_eight(self):
        # the 2-point tail starts at s^4: the first four profiles agree
        p0 = PWParams(a0=1, a1=1, c=1)
        p1 = PWParams(a0=1, a1=1, c=1, B=3)
        t0 = twist_extract(p0, 4, 18)
        t1 = twist_extract(p1, 4, 18)
        for k in range(1, 5):
            assert t0.g[k].coeffs == t1.g[k].coeffs
        t0 = twist_extract(p0, 5, 20)
        t1 = twist_extract(p1, 5, 20)
        assert t0.g[5].coeffs != t1.g[5].coeffs


class TestF1Rational:
    def test_unit_directions(self):
        for nu, name in ((0, "a0"), (1, "a1"), (2, "a2")):
            assert f1_rational(PWParams.unit(name)) == basis_j_small(nu)

    def test_zero(self):
        assert f1_rational(PWParams()).is_zero()

    def test_crossing_symmetry_weighted(self):
        # s12 f1 = t^-1 f1(s/t, 1/t) = f1
        rng = random.Random(14)
        p = rand_params(rng)
        f1 = f1_rational(p)
        s = RatFn.var(2, 0)
        t = RatFn.var(2, 1)
        image = (1 / t) * f1.subs([s / t, 1 / t])
        assert image == f1


class TestLaplace:
    def test_j_channels_harmonic(self):
        for nu in range(3):
            assert laplace_st(basis_j_small(nu)).is_zero()

    def test_s_not_harmonic(self):
        assert laplace_st(RatFn.var(2, 0)) == RatFn.const(2, 2)


class TestSolver:
    def test_j0_direction(self):
        tower = twist_extract(PWParams(a0=1), 1, 12)
        assert solve_structure_constants(tower.g[1], 1, 2) == [2, F(1, 3), F(1, 35)]

    def test_zero_series(self):
        zeros = PSeries([F(0)] * 12)
        assert solve_structure_constants(zeros, 1, 3) == [0, 0, 0, 0]

    def test_pure_c_twist4(self):
        tower = twist_extract(PWParams(c=1), 2, 14)
        assert solve_structure_constants(tower.g[2], 2, 1)[0] == 1

    def test_inconsistent_odd_power(self):
        g = PSeries([F(0), F(1), F(1)] + [F(0)] * 8)  # g/u = 1 + u
        with pytest.raises(InconsistentExpansion):
            solve_structure_constants(g, 1, 3)

    def test_matches_closed_forms(self):
        rng = random.Random(15)
        for _ in range(4):
            p = rand_params(rng, with_B=True)
            tower = twist_extract(p, 3, 2 * 10 + 2 * 3 + 8)
            for kappa, top in ((1, 10), (2, 10), (3, 8)):
                sol = solve_structure_constants(tower.g[kappa], kappa, top)
                assert sol == [closed_form_B(kappa, l, p) for l in range(top + 1)]


class TestClosedForms:
    def test_spot_values(self):
        assert closed_form_B(1, 0, PWParams(a0=1)) == 2
        assert closed_form_B(2, 0, PWParams(c=1)) == 1
        p = PWParams(a0=1, a1=1, a2=1)
        assert closed_form_B(1, 1, p) == F(1, 3) + 2 + 2

    def test_no_closed_form_above_twist_six(self):
        with pytest.raises(ValueError):
            closed_form_B(4, 0, PWParams())


class TestPositivity:
    def test_gauge_boundary(self):
        assert positivity_check(PWParams(a1=1, b=F(1, 3))).admissible
        assert not positivity_check(PWParams(a1=1, b=1)).admissible
        assert positivity_check(PWParams(a1=1, b=-3)).admissible
        assert not positivity_check(PWParams(a1=1, b=F(-31, 10))).admissible

    def test_trivial_flag(self):
        rep = positivity_check(PWParams())
        assert rep.admissible and rep.trivial
        assert ("a1 + a2 > 0", False) in rep.gauge_box

    def test_negative_a0_rejected(self):
        rep = positivity_check(PWParams(a0=-1))
        assert not rep.admissible
        assert rep.first_violation == "a0 >= 0"

    def test_solver_scan_above_twist_six(self):
        rep = positivity_check(
            PWParams(a0=1, a1=1, B=1), scan_spin=2, solver_twist=4
        )
        assert rep.admissible


class TestKernel:
    def test_spot_values(self):
        assert kernel_coeff(1, 1, 0, 0) == 1
        assert kernel_coeff(1, 1, 1, 0) == F(1, 2)
        assert kernel_coeff(1, 1, 0, 1) == F(-1, 60)

    def test_quadrature_oracle(self):
        for kappa, ell in ((1, 0), (1, 1), (2, 0)):
            for m in range(4):
                for n in range(4):
                    exact = float(kernel_coeff(kappa, ell, m, n))
                    quad = kernel_coeff_quadrature(kappa, ell, m, n)
                    assert abs(exact - quad) < 1e-12
