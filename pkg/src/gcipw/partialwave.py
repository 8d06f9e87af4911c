"""Conformal partial-wave machinery for the d=4 family.

The expansion  t^-3 P4(s,t) + B^2 s^4 (1 + t^-4) = sum_k s^(k-1) f_k(s,t)
is driven in the chiral variables (u, v); each twist sector contributes
through a one-variable profile g_k(u) = u f_k(0, 1-u) whose coefficients
carry the structure constants, with the universal hypergeometric kernels
F(2l+k, 2l+k; 4l+2k; u).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from .exact import (
    MPoly,
    PSeries,
    RatFn,
    Series2,
    divide_exact,
    series2_div_antisym,
    series2_outer,
)
from .exact.chiral import poly_to_chiral, symmetric_reduce
from .fourpoint import PWParams, assemble_P4


class PoleInParameters(Exception):
    pass


class InconsistentExpansion(Exception):
    """The input is not in the expected family or the truncation is too small."""


def pochhammer(a: int, n: int) -> Fraction:
    out = Fraction(1)
    for k in range(n):
        out *= a + k
    return out


def hypergeom_series(a: int, b: int, c: int, order: int) -> PSeries:
    """Gauss series F(a, b; c; x) to the given order, exactly.

    Terminating numerators take precedence (so F(0, 0; 0; x) = 1); a
    nonpositive integer c that is hit before the numerator terminates is
    a pole in the parameters.
    """
    coeffs = [Fraction(1)]
    term = Fraction(1)
    for n in range(order):
        num = Fraction((a + n) * (b + n))
        if num == 0:
            coeffs.extend([Fraction(0)] * (order - n))
            break
        den = Fraction((n + 1) * (c + n))
        if den == 0:
            raise PoleInParameters(f"F({a},{b};{c};x) has a parameter pole at n={n + 1}")
        term = term * num / den
        coeffs.append(term)
    return PSeries(coeffs[: order + 1])


def inv_unit_power(k: int, order: int) -> PSeries:
    """(1 - x)^(-k) = sum C(a+k-1, k-1) x^a."""
    return PSeries([Fraction(math.comb(a + k - 1, k - 1)) for a in range(order + 1)])


def lhs_series(p: PWParams, order: int) -> Series2:
    """t^-3 P4 + B^2 s^4 (1 + t^-4) expanded in the chiral variables."""
    p4_uv = poly_to_chiral(assemble_P4(p), order)
    inv3 = inv_unit_power(3, order)
    out = p4_uv * series2_outer(inv3, inv3, order)
    if p.B:
        inv4 = inv_unit_power(4, order)
        tail = series2_outer(inv4, inv4, order) + Series2.const(order, 1)
        out = out + (p.B * p.B) * tail.shift(4, 4)
    return out


@dataclass
class TwistTower:
    """Per-twist profiles extracted from a 4-point parameter set."""

    params: PWParams
    order: int
    max_twist: int
    g: Dict[int, PSeries] = field(default_factory=dict)
    f: Dict[int, Series2] = field(default_factory=dict)
    boundary: Dict[int, PSeries] = field(default_factory=dict)  # f_k(0, 1-u)


def twist_extract(p: PWParams, max_twist: int, order: int) -> TwistTower:
    """Recursively extract f_k and g_k for k = 1..max_twist.

    The remainder after removing the first k-1 sectors must vanish below
    v^(k-1); its v^(k-1) slice, divided by u^(k-1), is the boundary value
    f_k(0, 1-u), from which the full f_k is rebuilt hypergeometrically.
    """
    if order < 2 * max_twist + 4:
        raise ValueError("series order too small for the requested twist depth")
    tower = TwistTower(p, order, max_twist)
    remainder = lhs_series(p, order)
    for k in range(1, max_twist + 1):
        for j in range(k - 1):
            if not remainder.v_slice(j).is_zero():
                raise InconsistentExpansion(
                    f"remainder has a nonzero v^{j} slice at twist step {k}"
                )
        sl = remainder.v_slice(k - 1)
        try:
            phi = sl.shift(-(k - 1))
        except ValueError as err:
            raise InconsistentExpansion(
                f"v^{k - 1} slice not divisible by u^{k - 1}"
            ) from err
        g_k = phi.shift(1)
        work = order - 2 * k + 3
        g_k = g_k.truncate(work)
        f_series = hypergeom_series(k - 1, k - 1, 2 * k - 2, work)
        numerator = series2_outer(g_k, f_series, work) - series2_outer(
            f_series, g_k, work
        )
        f_k = series2_div_antisym(numerator)
        if g_k[0] != 0:
            raise InconsistentExpansion(f"g_{k}(0) != 0")
        tower.g[k] = g_k
        tower.boundary[k] = phi
        tower.f[k] = f_k
        remainder = remainder - f_k.shift(k - 1, k - 1)
    return tower


def f1_rational(p: PWParams) -> RatFn:
    """The twist-2 profile as a rational function of (s, t).

    Built from g1(x) = x (1-x)^-3 P4(0, 1-x) via the symmetric quotient
    (g1(u) - g1(v)) / (u - v), reduced through e1 = 1+s-t, e2 = s.
    """
    x = MPoly.var(1, 0)
    p4 = assemble_P4(p)
    a = x * p4.subs_poly([MPoly.zero(1), 1 - x])  # x * P4(0, 1-x)
    b = (1 - x) ** 3
    u_img = [MPoly.var(2, 0)]
    v_img = [MPoly.var(2, 1)]
    au, av = a.subs_poly(u_img), a.subs_poly(v_img)
    bu, bv = b.subs_poly(u_img), b.subs_poly(v_img)
    umv = MPoly.var(2, 0) - MPoly.var(2, 1)
    num_uv = divide_exact(au * bv - av * bu, umv, 0)
    den_uv = bu * bv
    e_num = symmetric_reduce(num_uv)
    e_den = symmetric_reduce(den_uv)
    s = MPoly.var(2, 0)
    t = MPoly.var(2, 1)
    images = [1 + s - t, s]
    return RatFn(e_num.subs_poly(images), e_den.subs_poly(images))


def laplace_st(f: RatFn) -> RatFn:
    """s f_ss + t f_tt + (s + t - 1) f_st + 2 (f_s + f_t), exactly."""
    if f.arity != 2:
        raise ValueError("laplace_st acts on functions of (s, t)")
    s = RatFn.var(2, 0)
    t = RatFn.var(2, 1)
    fs = f.deriv(0)
    ft = f.deriv(1)
    return (
        s * fs.deriv(0)
        + t * ft.deriv(1)
        + (s + t - 1) * fs.deriv(1)
        + 2 * (fs + ft)
    )


def solve_structure_constants(g: PSeries, kappa: int, max_spin: int) -> List[Fraction]:
    """Solve g(u) = u sum_l B_l u^(2l) F(2l+k, 2l+k; 4l+2k; u) for B_l.

    Forward substitution over ascending powers; the odd powers of g/u
    carry no new unknowns and must be reproduced exactly.
    """
    if g.order < 2 * max_spin + 1:
        raise ValueError("series too short for the requested spin range")
    h = g.shift(-1)
    top = min(h.order, 2 * max_spin + 1)
    residual = h.truncate(top)
    out: List[Fraction] = []
    for power in range(top + 1):
        val = residual[power]
        if power % 2 == 0:
            ell = power // 2
            out.append(val)
            if val:
                fk = hypergeom_series(
                    2 * ell + kappa, 2 * ell + kappa, 4 * ell + 2 * kappa, top
                )
                residual = residual - (val * fk).shift(2 * ell).truncate(top)
        elif val != 0:
            raise InconsistentExpansion(
                f"odd power u^{power} of g/u not reproduced (residual {val})"
            )
    return out[: max_spin + 1]


def closed_form_B(kappa: int, ell: int, p: PWParams) -> Fraction:
    """Closed-form structure constants for twists 2, 4, 6."""
    if ell < 0:
        raise ValueError("need ell >= 0")
    a0, a1, a2, b, c = p.a0, p.a1, p.a2, p.b, p.c
    if kappa == 1:
        return (
            2 * a0 + 2 * ell * (2 * ell + 1) * (2 * a1 + (2 * ell - 1) * (ell + 1) * a2)
        ) / Fraction(math.comb(4 * ell, 2 * ell))
    if kappa == 2:
        return (
            ell * (2 * ell + 3) * ((ell + 1) * (2 * ell + 1) * a1 + 2 * b) + c
        ) / Fraction(math.comb(4 * ell + 1, 2 * ell))
    if kappa == 3:
        return (
            (ell + 1)
            * (2 * ell + 3)
            * ((ell + 2) * (2 * ell + 1) * (2 * a0 + a1) - 6 * b + 4 * c)
            - c
        ) / Fraction(2 * math.comb(4 * ell + 3, 2 * ell + 1))
    raise ValueError("closed forms exist only for kappa in {1, 2, 3}")


# -- positivity ---------------------------------------------------------------


@dataclass
class PositivityReport:
    params: PWParams
    conditions: List[Tuple[str, Fraction, bool]]
    scan_violations: List[Tuple[int, int, Fraction]]
    admissible: bool
    trivial: bool
    first_violation: str | None
    gauge_box: List[Tuple[str, bool]] | None


NECESSARY_CONDITIONS = (
    ("a0 >= 0", lambda p: p.a0),
    ("a1 >= 0", lambda p: p.a1),
    ("a2 >= 0", lambda p: p.a2),
    ("3 a1 + b >= 0", lambda p: 3 * p.a1 + p.b),
    ("c >= 0", lambda p: p.c),
    ("6 (2 a0 + a1 - 3 b) + 11 c >= 0", lambda p: 6 * (2 * p.a0 + p.a1 - 3 * p.b) + 11 * p.c),
)


def positivity_check(
    p: PWParams,
    scan_spin: int = 20,
    solver_twist: int = 0,
    series_order: int | None = None,
) -> PositivityReport:
    """Necessary positivity conditions plus explicit scans.

    Always evaluates the six closed-form inequalities and scans the
    closed-form constants for twists 2, 4, 6 up to `scan_spin`.  When
    `solver_twist` >= 4, also extracts solver-based constants (which see
    the 2-point normalization B) up to that twist.
    """
    conditions = []
    first = None
    for name, expr in NECESSARY_CONDITIONS:
        val = expr(p)
        ok = val >= 0
        conditions.append((name, val, ok))
        if not ok and first is None:
            first = name
    violations: List[Tuple[int, int, Fraction]] = []
    for kappa in (1, 2, 3):
        for ell in range(scan_spin + 1):
            val = closed_form_B(kappa, ell, p)
            if val < 0:
                violations.append((kappa, ell, val))
    if solver_twist >= 4:
        order = series_order or (2 * scan_spin + 2 * solver_twist + 8)
        tower = twist_extract(p, solver_twist, order)
        for kappa in range(4, solver_twist + 1):
            for ell, val in enumerate(
                solve_structure_constants(tower.g[kappa], kappa, scan_spin)
            ):
                if val < 0:
                    violations.append((kappa, ell, val))
    if violations and first is None:
        k, l, _ = violations[0]
        first = f"B[{k},{l}] < 0"
    gauge_box = None
    trivial = False
    if p.a0 == 0 and p.c == 0:
        gauge_box = [
            ("a1 >= 0", p.a1 >= 0),
            ("a2 >= 0", p.a2 >= 0),
            ("a1 + a2 > 0", p.a1 + p.a2 > 0),
            ("-3 a1 <= b", -3 * p.a1 <= p.b),
            ("b <= a1/3", p.b <= p.a1 / 3),
        ]
        trivial = p.a1 + p.a2 == 0
    admissible = all(ok for _, _, ok in conditions) and not violations
    return PositivityReport(
        p, conditions, violations, admissible, trivial, first, gauge_box
    )


# -- kernel Taylor coefficients -------------------------------------------------


def beta_int(a: int, b: int) -> Fraction:
    """Euler Beta at positive integers: (a-1)! (b-1)! / (a+b-1)!."""
    if a < 1 or b < 1:
        raise ValueError("beta_int needs positive integers")
    return Fraction(math.factorial(a - 1) * math.factorial(b - 1), math.factorial(a + b - 1))


def kernel_coeff(kappa: int, ell: int, m: int, n: int) -> Fraction:
    """Taylor coefficient of t1^m t2^n of the OPE kernel for (kappa, ell)."""
    if kappa < 1 or ell < 0 or m < 0 or n < 0:
        raise ValueError("bad kernel indices")
    lk = ell + kappa
    sign = -1 if n % 2 else 1
    return (
        sign
        * beta_int(lk + n + m, lk + n)
        / (
            Fraction(4**n)
            * beta_int(lk, lk)
            * math.factorial(m)
            * math.factorial(n)
            * pochhammer(2 * lk - 1, n)
        )
    )


def kernel_coeff_quadrature(kappa: int, ell: int, m: int, n: int, dps: int = 30) -> float:
    """Independent oracle for kernel_coeff: numeric quadrature of the
    defining integral (the alpha-moment of [alpha(1-alpha)]^(l+k+n-1))."""
    import mpmath

    lk = ell + kappa
    with mpmath.workdps(dps):
        integral = mpmath.quad(
            lambda a: a ** (lk + n - 1 + m) * (1 - a) ** (lk + n - 1), [0, 1]
        )
        beta0 = beta_int(lk, lk)
        poch = pochhammer(2 * lk - 1, n)
        pre = mpmath.mpf(-1) ** n / (
            mpmath.mpf(4) ** n
            * (mpmath.mpf(beta0.numerator) / beta0.denominator)
            * mpmath.factorial(m)
            * mpmath.factorial(n)
            * (mpmath.mpf(poch.numerator) / poch.denominator)
        )
        return float(pre * integral)
