"""Thermal (Gibbs) expectation values: Eisenstein series and energy mean
values as exact q-series, elliptic two-point functions, and numeric
modular / KMS verification.

Series coefficients are exact rationals throughout; only the evaluation
at a modular parameter tau uses complex floating arithmetic.

Sign conventions.  Two displayed formulas in the source material are
internally inconsistent and are corrected here, with the checks that
pin the correction down kept in the test suite:

* the modular combination for the Weyl energy mean is
  (1/4) { 8 G4(tau) - G4((tau+1)/2) + G2((tau+1)/2) - 2 G2(tau) }
  (the overall sign of the braces is flipped relative to the printed
  form), which matches the manifestly positive Fermi occupation series
  term by term and gives the vacuum constant E0 = +17/960 -- also the
  zeta-regularized value of the half-summed mode energies;

* the doubly-periodic Weyl two-point function carries the translate-sum
  normalizations p1^{11}/pi and p2^{11}/pi^2 (the printed form underweights
  the p1 terms by pi relative to p2), fixed by requiring the q -> 0 limit
  to reproduce the vacuum two-point function.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence, Tuple

from .exact import QSeries, geometric_block

TWO_PI = 2 * math.pi


# -- exact series ---------------------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2 convention)."""
    if n < 0:
        raise ValueError("need n >= 0")
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for j in range(n):
        total += math.comb(n + 1, j) * bernoulli(j)
    return -total / (n + 1)


def eisenstein_G(k: int, order: int) -> QSeries:
    """G_{2k} = -B_{2k}/(4k) + sum_{n>=1} n^(2k-1) q^n/(1-q^n), to q^order."""
    if k < 1 or order < 1:
        raise ValueError("need k >= 1 and order >= 1")
    out = QSeries.const(-bernoulli(2 * k) / (4 * k), 2 * order)
    for n in range(1, order + 1):
        out = out + geometric_block(2 * n, 1, Fraction(n ** (2 * k - 1)), 2 * order)
    return out


SCALAR_VACUUM_CONSTANTS = {
    4: Fraction(1, 240),
    6: Fraction(-31, 12 * math.factorial(7)),
}

WEYL_VACUUM_ENERGY = Fraction(17, 960)


def energy_mean_scalar(
    D: int, order: int, vacuum_constant: Fraction | None = None
) -> QSeries:
    """Energy mean value of a free scalar in D (even) dimensions.

    E(d0) + sum_{n >= d0} [2/(2 d0)!] n^2 (n^2-1) ... (n^2-(d0-1)^2)
    n q^n/(1-q^n), with d0 = (D-2)/2.  The vacuum constants are known for
    D = 4, 6; other even D require the caller to supply one.
    """
    if D % 2 or D < 4:
        raise ValueError("only even D >= 4 is supported")
    d0 = (D - 2) // 2
    if vacuum_constant is None:
        if D in SCALAR_VACUUM_CONSTANTS:
            vacuum_constant = SCALAR_VACUUM_CONSTANTS[D]
        else:
            warnings.warn(f"no tabulated vacuum constant for D={D}; using 0")
            vacuum_constant = Fraction(0)
    out = QSeries.const(vacuum_constant, 2 * order)
    norm = Fraction(2, math.factorial(2 * d0))
    for n in range(d0, order + 1):
        w = norm * n
        for i in range(d0):
            w *= n * n - i * i
        if w:
            out = out + geometric_block(2 * n, 1, w, 2 * order)
    return out


def energy_mean_weyl(order2: int) -> QSeries:
    """Energy mean value of the free Weyl field, as a q^(1/2)-series.

    E0 + sum_{n>=1} (2n+1) n (n+1) q^(n+1/2) / (1 + q^(n+1/2)), with the
    vacuum constant E0 = 17/960 fixed by the modular-combination identity
    (equivalently by zeta regularization of the mode sum).  `order2` is
    the doubled exponent window (coefficients through q^(order2/2)).
    """
    out = QSeries.const(WEYL_VACUUM_ENERGY, order2)
    n = 1
    while 2 * n + 1 <= order2:
        w = Fraction((2 * n + 1) * n * (n + 1))
        out = out + geometric_block(2 * n + 1, -1, w, order2)
        n += 1
    return out


def weyl_modular_combination(order2: int, as_printed: bool = False) -> QSeries:
    """(1/4){8 G4(tau) - G4((tau+1)/2) + G2((tau+1)/2) - 2 G2(tau)}.

    With as_printed=True the overall sign of the braces is flipped,
    reproducing the displayed (internally inconsistent) variant; see the
    module docstring.
    """
    order = order2  # the substituted series needs integer order = order2
    g4 = eisenstein_G(2, order)
    g2 = eisenstein_G(1, order)
    g4_half = g4.halfperiod_substitute()
    g2_half = g2.halfperiod_substitute()
    combo = (
        Fraction(8) * g4.truncate(order2) - g4_half + g2_half - Fraction(2) * g2.truncate(order2)
    ) * Fraction(1, 4)
    return -combo if as_printed else combo


def theta_form_F(order: int) -> QSeries:
    """F = 2 G2(tau) - G2((tau+1)/2), a weight-2 form for the theta group."""
    g2 = eisenstein_G(1, order)
    return Fraction(2) * g2.truncate(order) - g2.halfperiod_substitute()


def qseries_eval(series: QSeries, tau: complex) -> Tuple[complex, float]:
    """Numeric value at q = exp(2 pi i tau) with a reported tail bound."""
    return series.eval(tau)


# -- numeric modular checks -------------------------------------------------------


def modular_check_G(k: int, tau: complex, order: int) -> float:
    """Max residual of the weight-2k transformation law for gamma = S, T."""
    if tau.imag <= 0:
        raise ValueError("need Im tau > 0")
    g = eisenstein_G(k, order)
    base, _ = g.eval(tau)
    s_val, _ = g.eval(-1 / tau)
    res_s = abs(tau ** (-2 * k) * s_val - base)
    t_val, _ = g.eval(tau + 1)
    res_t = abs(t_val - base)
    return max(res_s, res_t)


def g2_anomaly_check(tau: complex, order: int) -> float:
    """Residual of tau^-2 G2(-1/tau) = G2(tau) + i/(4 pi tau)."""
    if tau.imag <= 0:
        raise ValueError("need Im tau > 0")
    g2 = eisenstein_G(1, order)
    lhs, _ = g2.eval(-1 / tau)
    rhs, _ = g2.eval(tau)
    return abs(lhs / tau**2 - rhs - 1j / (4 * math.pi * tau))


def theta_form_checks(tau: complex, order: int) -> dict:
    """S and T^2 residuals for the weight-2 theta-group form F."""
    f = theta_form_F(order)
    base, _ = f.eval(tau)
    s_val, _ = f.eval(-1 / tau)
    t2_val, _ = f.eval(tau + 2)
    return {
        "S": abs(s_val / tau**2 - base),
        "T2": abs(t2_val - base),
    }


# -- stable elementary functions ---------------------------------------------------


def _cot(z: complex) -> complex:
    """cot(z), exponentially stable for large |Im z|."""
    if z.imag >= 0:
        w = cmath.exp(2j * z)
        return 1j * (w + 1) / (w - 1)
    w = cmath.exp(-2j * z)
    return 1j * (1 + w) / (1 - w)


def _csc(z: complex) -> complex:
    """1/sin(z), exponentially stable for large |Im z|."""
    if z.imag >= 0:
        w = cmath.exp(1j * z)
        return 2j * w / (w * w - 1)
    w = cmath.exp(-1j * z)
    return -2j * w / (w * w - 1)


# -- elliptic functions --------------------------------------------------------------


def elliptic_p1(zeta: complex, tau: complex, order: int) -> complex:
    """p1(zeta, tau) by its q-expansion:
    pi cot(pi zeta) + 4 pi sum_n q^n/(1-q^n) sin(2 pi n zeta)."""
    q = cmath.exp(2j * math.pi * tau)
    total = math.pi * _cot(math.pi * zeta)
    for n in range(1, order + 1):
        qn = q**n
        total += 4 * math.pi * qn / (1 - qn) * cmath.sin(TWO_PI * n * zeta)
    return total


def p1_lattice(zeta: complex, tau: complex, m_window: int) -> complex:
    """Symmetric lattice partial sum for p1: rows of Euler cotangents."""
    total = math.pi * _cot(math.pi * zeta)
    for m in range(1, m_window + 1):
        total += math.pi * (_cot(math.pi * (zeta + m * tau)) + _cot(math.pi * (zeta - m * tau)))
    return total


def elliptic_p1_11(zeta: complex, tau: complex, window: int) -> complex:
    """p1^{11}(zeta, tau) = pi sum_n (-1)^n / sin(pi (zeta + n tau))."""
    total = math.pi * _csc(math.pi * zeta)
    for n in range(1, window + 1):
        sign = -1 if n % 2 else 1
        total += sign * math.pi * (
            _csc(math.pi * (zeta + n * tau)) + _csc(math.pi * (zeta - n * tau))
        )
    return total


def elliptic_p2_11(zeta: complex, tau: complex, window: int) -> complex:
    """p2^{11} = -d/dzeta p1^{11}, summed termwise."""

    def term(z):
        return math.pi**2 * _cot(math.pi * z) * _csc(math.pi * z)

    total = term(zeta)
    for n in range(1, window + 1):
        sign = -1 if n % 2 else 1
        total += sign * (term(zeta + n * tau) + term(zeta - n * tau))
    return total


def elliptic_p_k11(k: int, zeta: complex, tau: complex, window: int) -> complex:
    if k == 1:
        return elliptic_p1_11(zeta, tau, window)
    if k == 2:
        return elliptic_p2_11(zeta, tau, window)
    raise ValueError("only k = 1, 2 are provided")


# -- Gibbs two-point functions ---------------------------------------------------------


def scalar_vacuum_2pt(zeta: complex, alpha: float) -> complex:
    """-1 / (4 sin(pi zeta+) sin(pi zeta-)), zeta+- = zeta +- alpha."""
    zp, zm = zeta + alpha, zeta - alpha
    return -0.25 * _csc(math.pi * zp) * _csc(math.pi * zm)


def gibbs_scalar_2pt(zeta: complex, alpha: float, tau: complex, order: int) -> complex:
    """(p1(zeta+) - p1(zeta-)) / (4 pi sin(2 pi alpha))."""
    sa = math.sin(TWO_PI * alpha)
    if abs(sa) < 1e-14:
        raise ValueError("sin(2 pi alpha) = 0 is a degenerate angle")
    zp, zm = zeta + alpha, zeta - alpha
    return (elliptic_p1(zp, tau, order) - elliptic_p1(zm, tau, order)) / (4 * math.pi * sa)


def gibbs_scalar_modes(zeta: complex, alpha: float, tau: complex, order: int) -> complex:
    """Mode-sum representation: vacuum + Planck-weighted angular cosines."""
    q = cmath.exp(2j * math.pi * tau)
    sa = math.sin(TWO_PI * alpha)
    total = scalar_vacuum_2pt(zeta, alpha)
    for n in range(1, order + 1):
        qn = q**n
        total += 2 * qn / (1 - qn) * math.sin(TWO_PI * n * alpha) / sa * cmath.cos(TWO_PI * n * zeta)
    return total


def solve_isotropic(u1: Sequence[float], u2: Sequence[float], alpha: float):
    """Solve u1 = e^{i pi a} v + e^{-i pi a} vbar, u2 = e^{-i pi a} v + e^{i pi a} vbar.

    For unit vectors with u1.u2 = cos(2 pi alpha) the solutions satisfy
    v.v = 0 = vbar.vbar and 2 v.vbar = 1.
    """
    ep = cmath.exp(1j * math.pi * alpha)
    em = cmath.exp(-1j * math.pi * alpha)
    det = ep * ep - em * em  # 2i sin(2 pi alpha)
    if abs(det) < 1e-14:
        raise ValueError("collinear frame vectors")
    v = tuple((ep * a - em * b) / det for a, b in zip(u1, u2))
    vbar = tuple((ep * b - em * a) / det for a, b in zip(u1, u2))
    return v, vbar


def _slash_c(z: Sequence[complex], conjugate: bool):
    """Complex slash matrix (same layout as the exact one)."""
    z1, z2, z3, z4 = z
    s = -1 if conjugate else 1
    return (
        (z4 - s * 1j * z3, -s * (z2 + 1j * z1)),
        (s * (z2 - 1j * z1), z4 + s * 1j * z3),
    )


def _mat_comb(coef_a, a, coef_b, b):
    return tuple(
        tuple(coef_a * a[i][j] + coef_b * b[i][j] for j in range(2)) for i in range(2)
    )


def weyl_vacuum_2pt(zeta: complex, alpha: float, u1, u2) -> Tuple[Tuple[complex, ...], ...]:
    """Vacuum Weyl two-point matrix in the split-frame representation."""
    v, vbar = solve_isotropic(u1, u2, alpha)
    zp, zm = zeta + alpha, zeta - alpha
    pref = 1j / 8 * _csc(math.pi * zm) * _csc(math.pi * zp)
    vs = _slash_c(v, True)
    vbs = _slash_c(vbar, True)
    return _mat_comb(pref * _csc(math.pi * zm), vs, pref * _csc(math.pi * zp), vbs)


def gibbs_weyl_2pt(
    zeta: complex, alpha: float, u1, u2, tau: complex, window: int
) -> Tuple[Tuple[complex, ...], ...]:
    """Doubly (anti)periodic Weyl two-point matrix.

    Assembled from the translate-sum normalized elliptic functions
    p1^{11}/pi and p2^{11}/pi^2 (see the module docstring for the
    normalization note); the q -> 0 limit is the vacuum matrix.
    """
    sa = math.sin(TWO_PI * alpha)
    ca = _cot(complex(TWO_PI * alpha))
    if abs(sa) < 1e-14:
        raise ValueError("collinear frame vectors")
    v, vbar = solve_isotropic(u1, u2, alpha)
    zp, zm = zeta + alpha, zeta - alpha
    p1m = elliptic_p1_11(zm, tau, window) / math.pi
    p1p = elliptic_p1_11(zp, tau, window) / math.pi
    p2m = elliptic_p2_11(zm, tau, window) / math.pi**2
    p2p = elliptic_p2_11(zp, tau, window) / math.pi**2
    coef_v = p2m - ca * p1m + p1p / sa
    coef_vb = -(p2p + ca * p1p - p1m / sa)
    pref = 1j / (8 * sa)
    return _mat_comb(
        pref * coef_v, _slash_c(v, True), pref * coef_vb, _slash_c(vbar, True)
    )


# -- KMS translate-sum checks ------------------------------------------------------------


@dataclass(frozen=True)
class TauPoint:
    """A modular parameter with Im tau > 0 (and a working precision hint)."""

    tau: complex
    precision: int = 53

    def __post_init__(self):
        if complex(self.tau).imag <= 0:
            raise ValueError("need Im tau > 0")

    @property
    def q(self) -> complex:
        return cmath.exp(2j * math.pi * complex(self.tau))


@dataclass(frozen=True)
class ThermalModel:
    """A free-field thermal model: scalar in even D, or the 4d Weyl field."""

    kind: str  # "scalar" or "weyl4"
    D: int = 4
    vacuum_constant: Fraction | None = None

    def energy_series(self, order: int) -> QSeries:
        if self.kind == "scalar":
            return energy_mean_scalar(self.D, order, self.vacuum_constant)
        if self.kind == "weyl4":
            return energy_mean_weyl(2 * order)
        raise ValueError(f"unknown model kind {self.kind!r}")


def kms_translate_sum_check(
    model: str,
    zeta: complex,
    alpha: float,
    tau: complex,
    window: int,
    u1=None,
    u2=None,
) -> dict:
    """Rebuild the Gibbs function as a sum of vacuum translates and compare.

    Scalar: w_q(zeta) = sum_k w0(zeta + k tau); Weyl: alternating signs.
    Returns the max residual against the closed form, the (anti)periodicity
    residuals, and the edge-term bound that should dominate them.
    """
    q_abs = abs(cmath.exp(2j * math.pi * tau))
    if model == "scalar":
        sign = 1

        def w0(z):
            return scalar_vacuum_2pt(z, alpha)

        def closed_form(z):
            return gibbs_scalar_2pt(z, alpha, tau, 4 * window + 40)

        def norm(x):
            return abs(x)

        def comb(a, b, sgn):
            return a - sgn * b

        zero = 0j
    elif model == "weyl4":
        if u1 is None or u2 is None:
            raise ValueError("the Weyl check needs the frame vectors")
        sign = -1

        def w0(z):
            return weyl_vacuum_2pt(z, alpha, u1, u2)

        def closed_form(z):
            return gibbs_weyl_2pt(z, alpha, u1, u2, tau, 2 * window + 20)

        def norm(x):
            return max(abs(x[i][j]) for i in range(2) for j in range(2))

        def comb(a, b, sgn):
            return tuple(
                tuple(a[i][j] - sgn * b[i][j] for j in range(2)) for i in range(2)
            )

        zero = ((0j, 0j), (0j, 0j))
    else:
        raise ValueError(f"unknown model {model!r}")

    def translate_sum(z):
        total = zero
        scale = 0.0
        for k in range(-window, window + 1):
            sgn = sign**abs(k)
            term = w0(z + k * tau)
            scale = max(scale, norm(term))
            total = comb(total, term, -sgn)
        return total, scale

    total, scale = translate_sum(zeta)
    closed = closed_form(zeta)
    residual = norm(comb(total, closed, 1))
    # zeta -> zeta + 1 on the closed form is exact trigonometry; the
    # zeta -> zeta + tau shift reindexes the translate sum, so both are
    # controlled by the same edge estimate (plus the floating floor)
    shifted_1 = closed_form(zeta + 1)
    per_1 = norm(comb(shifted_1, closed, sign))
    shifted_tau, _ = translate_sum(zeta + tau)
    per_tau = norm(comb(shifted_tau, total, sign))
    edge = norm(w0(zeta + (window + 1) * tau)) + norm(w0(zeta - (window + 1) * tau))
    float_floor = 1e-13 * max(scale, norm(closed), 1.0)
    bound = 4 * edge / max(1 - q_abs, 1e-12) + float_floor
    return {
        "residual": residual,
        "periodicity_residual": max(per_1, per_tau),
        "edge_bound": bound,
        "edge_term": 4 * edge / max(1 - q_abs, 1e-12),
        "passed": residual <= bound and max(per_1, per_tau) <= bound,
    }
