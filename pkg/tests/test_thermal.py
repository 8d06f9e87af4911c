"""Thermal series, elliptic functions, Gibbs correlators and the numeric
modular / KMS checks."""

import cmath
import math
from fractions import Fraction as F

import pytest

from gcipw.exact import QSeries
from gcipw.thermal import (
    SCALAR_VACUUM_CONSTANTS,
    WEYL_VACUUM_ENERGY,
    ThermalModel,
    TauPoint,
    bernoulli,
    eisenstein_G,
    elliptic_p1,
    elliptic_p1_11,
    elliptic_p2_11,
    elliptic_p_k11,
    energy_mean_scalar,
    energy_mean_weyl,
    g2_anomaly_check,
    gibbs_scalar_2pt,
    gibbs_scalar_modes,
    gibbs_weyl_2pt,
    kms_translate_sum_check,
    modular_check_G,
    p1_lattice,
    scalar_vacuum_2pt,
    solve_isotropic,
    theta_form_F,
    theta_form_checks,
    weyl_modular_combination,
    weyl_vacuum_2pt,
)

ALPHA = 0.37
U1 = (0.0, 0.0, 0.0, 1.0)
U2 = (math.sin(2 * math.pi * ALPHA), 0.0, 0.0, math.cos(2 * math.pi * ALPHA))


class TestBernoulli:
    def test_values(self):
        assert bernoulli(2) == F(1, 6)
        assert bernoulli(4) == F(-1, 30)
        assert bernoulli(6) == F(1, 42)
        assert -bernoulli(4) / 8 == F(1, 240)

    def test_odd_vanish(self):
        assert bernoulli(3) == 0 and bernoulli(5) == 0


class TestEisenstein:
    def test_g4_constant_and_divisors(self):
        g4 = eisenstein_G(2, 12)
        assert g4[0] == F(1, 240)
        assert g4.coeff_q(2) == 9  # sigma_3(2)
        assert g4.coeff_q(6) == 1 + 8 + 27 + 216  # sigma_3(6) = 252

    def test_g2_constant(self):
        assert eisenstein_G(1, 5)[0] == F(-1, 24)


class TestEnergyMeans:
    def test_scalar4_is_weight4_form(self):
        assert energy_mean_scalar(4, 100) == eisenstein_G(2, 100)
        assert energy_mean_scalar(4, 10)[0] == F(1, 240)

    def test_scalar4_planck_blocks(self):
        # n-th fluctuation block weight is n^3 (Planck shape)
        e4 = energy_mean_scalar(4, 30)
        # q^5 collects n=5 (5^3) and n=1 (1) blocks
        assert e4.coeff_q(5) == 125 + 1

    def test_scalar6_combination(self):
        e6 = energy_mean_scalar(6, 100)
        combo = (eisenstein_G(3, 100) - eisenstein_G(2, 100)) * F(1, 12)
        assert e6 == combo
        assert e6[0] == F(-31, 12 * math.factorial(7))

    def test_scalar6_block_weights(self):
        blocks = {n: F(n**3 * (n * n - 1), 12) for n in range(1, 5)}
        assert blocks[3] == 18 and blocks[4] == 80
        # the displayed expansion omits the n = 2 block, which is 2
        assert blocks[2] == 2
        assert energy_mean_scalar(6, 10).coeff_q(2) == 2

    def test_scalar_other_dimension_warns(self):
        with pytest.warns(UserWarning):
            series = energy_mean_scalar(8, 10)
        assert series[0] == 0

    def test_odd_dimension_rejected(self):
        with pytest.raises(ValueError):
            energy_mean_scalar(5, 10)

    def test_weyl_leading_terms(self):
        w = energy_mean_weyl(20)
        assert w[0] == WEYL_VACUUM_ENERGY
        assert w.coeff_q(F(3, 2)) == 6
        assert w.coeff_q(F(5, 2)) == 30  # (2*2+1)*2*3

    def test_weyl_two_line_identity(self):
        w = energy_mean_weyl(50)
        combo = weyl_modular_combination(50)
        assert w == combo

    def test_weyl_printed_form_is_sign_flipped(self):
        # the printed combination is the negation of the correct one; its
        # constant term -17/960 is what constant-matching alone would give
        combo = weyl_modular_combination(50)
        printed = weyl_modular_combination(50, as_printed=True)
        assert printed == -combo
        assert printed[0] == F(-17, 960)
        assert energy_mean_weyl(50) != printed

    def test_model_wrapper(self):
        m = ThermalModel("scalar", D=4)
        assert m.energy_series(20) == energy_mean_scalar(4, 20)
        w = ThermalModel("weyl4")
        assert w.energy_series(10)[0] == WEYL_VACUUM_ENERGY


class TestThetaForm:
    def test_constant(self):
        assert theta_form_F(20)[0] == F(-1, 24)

    def test_t2_invariance_is_exact_on_series(self):
        # shifting tau by 2 fixes q^(1/2) exactly, so the series is unchanged;
        # numerically the residual is machine-level
        checks = theta_form_checks(1.3j, 200)
        assert checks["T2"] < 1e-14

    def test_s_residual(self):
        assert theta_form_checks(1.3j, 300)["S"] < 1e-8


class TestModular:
    def test_weight4(self):
        assert modular_check_G(2, 1.1j, 200) < 1e-10
        assert modular_check_G(2, 0.3 + 1.2j, 200) < 1e-10

    def test_weight6(self):
        assert modular_check_G(3, 0.3 + 1.2j, 200) < 1e-10

    def test_g2_anomaly(self):
        assert g2_anomaly_check(1.3j, 300) < 1e-10
        assert g2_anomaly_check(1j, 300) < 1e-10

    def test_g2_anomaly_large_imag(self):
        assert g2_anomaly_check(4j, 300) < 1e-10

    def test_g2_at_fixed_point(self):
        # at tau = i the anomaly pins G2(i) = -1/(8 pi)
        g2 = eisenstein_G(1, 200)
        val, _ = g2.eval(1j)
        assert abs(val - (-1 / (8 * math.pi))) < 1e-12

    def test_tau_point_validation(self):
        with pytest.raises(ValueError):
            TauPoint(0.5 - 1j)
        assert abs(TauPoint(1.5j).q - cmath.exp(-3 * math.pi)) < 1e-15


class TestEllipticP1:
    def test_odd(self):
        assert abs(elliptic_p1(-0.23, 1.5j, 40) + elliptic_p1(0.23, 1.5j, 40)) < 1e-12

    def test_half_period_value(self):
        assert abs(elliptic_p1(0.5, 2j, 40)) < 1e-14

    def test_euler_limit(self):
        # q -> 0: p1 -> pi cot(pi zeta)
        val = elliptic_p1(0.23, 30j, 10)
        assert abs(val - math.pi / math.tan(math.pi * 0.23)) < 1e-14

    def test_lattice_cross_check(self):
        for zeta in (0.23, 0.41 + 0.2j):
            a = elliptic_p1(zeta, 1.5j, 60)
            b = p1_lattice(zeta, 1.5j, 25)
            assert abs(a - b) < 1e-12


class TestEllipticP11:
    def test_antiperiodicity_in_unit_shift(self):
        z, tau = 0.23, 1.5j
        a = elliptic_p1_11(z + 1, tau, 40)
        b = elliptic_p1_11(z, tau, 40)
        assert abs(a + b) < 1e-8

    def test_antiperiodicity_in_tau_shift(self):
        z, tau = 0.23, 1.5j
        a = elliptic_p1_11(z + tau, tau, 60)
        b = elliptic_p1_11(z, tau, 60)
        assert abs(a + b) < 1e-8

    def test_zero_mode_term(self):
        # the n = 0 term alone is pi/sin(pi zeta)
        val = elliptic_p1_11(0.23, 40j, 5)
        assert abs(val - math.pi / math.sin(math.pi * 0.23)) < 1e-14

    def test_p2_against_finite_difference(self):
        z, tau = 0.23, 1.5j
        h = 1e-6
        fd = -(elliptic_p1_11(z + h, tau, 40) - elliptic_p1_11(z - h, tau, 40)) / (2 * h)
        p2 = elliptic_p2_11(z, tau, 40)
        assert abs(fd - p2) / abs(p2) < 1e-6

    def test_dispatch(self):
        assert elliptic_p_k11(1, 0.2, 2j, 10) == elliptic_p1_11(0.2, 2j, 10)
        with pytest.raises(ValueError):
            elliptic_p_k11(3, 0.2, 2j, 10)


class TestGibbsScalar:
    def test_vacuum_limit(self):
        val = gibbs_scalar_2pt(0.13, ALPHA, 10j, 60)
        assert abs(val - scalar_vacuum_2pt(0.13, ALPHA)) < 1e-10

    def test_representations_agree(self):
        a = gibbs_scalar_2pt(0.13, 0.37, 1.5j, 60)
        b = gibbs_scalar_modes(0.13, 0.37, 1.5j, 60)
        assert abs(a - b) < 1e-12

    def test_unit_periodicity(self):
        a = gibbs_scalar_2pt(0.13 + 1, ALPHA, 1.5j, 60)
        b = gibbs_scalar_2pt(0.13, ALPHA, 1.5j, 60)
        assert abs(a - b) < 1e-12

    def test_degenerate_alpha(self):
        with pytest.raises(ValueError):
            gibbs_scalar_2pt(0.13, 0.5, 1.5j, 40)


class TestGibbsWeyl:
    def test_isotropic_frame(self):
        v, vbar = solve_isotropic(U1, U2, ALPHA)
        dot = lambda a, b: sum(x * y for x, y in zip(a, b))
        assert abs(dot(v, v)) < 1e-14
        assert abs(dot(vbar, vbar)) < 1e-14
        assert abs(2 * dot(v, vbar) - 1) < 1e-14

    def test_antiperiodicity(self):
        w1 = gibbs_weyl_2pt(0.13 + 1, ALPHA, U1, U2, 1.5j, 40)
        w0 = gibbs_weyl_2pt(0.13, ALPHA, U1, U2, 1.5j, 40)
        assert max(abs(w1[i][j] + w0[i][j]) for i in range(2) for j in range(2)) < 1e-8

    def test_vacuum_limit(self):
        wq = gibbs_weyl_2pt(0.13, ALPHA, U1, U2, 10j, 30)
        w0 = weyl_vacuum_2pt(0.13, ALPHA, U1, U2)
        assert max(abs(wq[i][j] - w0[i][j]) for i in range(2) for j in range(2)) < 1e-10

    def test_collinear_rejected(self):
        with pytest.raises(ValueError):
            gibbs_weyl_2pt(0.13, 0.5, U1, U1, 1.5j, 20)


class TestKMS:
    def test_scalar_translate_sum(self):
        rep = kms_translate_sum_check("scalar", 0.13, 0.37, 1.5j, 8)
        assert rep["passed"]
        assert rep["residual"] <= rep["edge_bound"]

    def test_weyl_translate_sum(self):
        rep = kms_translate_sum_check("weyl4", 0.13, ALPHA, 1.5j, 8, U1, U2)
        assert rep["passed"]

    def test_window_doubling_decay(self):
        # in a regime where the edge term dominates the float floor, the
        # residual shrinks by about |q|^K when the window doubles
        tau = 0.25j
        q = abs(cmath.exp(2j * math.pi * tau))
        r6 = kms_translate_sum_check("scalar", 0.13, 0.37, tau, 6)["residual"]
        r12 = kms_translate_sum_check("scalar", 0.13, 0.37, tau, 12)["residual"]
        assert r12 < r6 * q**5

    def test_unknown_model(self):
        with pytest.raises(ValueError):
            kms_translate_sum_check("maxwell", 0.1, 0.3, 1j, 4)
