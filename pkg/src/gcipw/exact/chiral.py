"""Chiral-variable bridge: s = u*v, t = (1-u)(1-v).

symmetric_reduce rewrites a symmetric polynomial in (u, v) through the
elementary symmetric functions e1 = u+v, e2 = uv; expand_to_chiral turns
a rational function of the cross-ratios (s, t) into a truncated (u, v)
series about the origin.
"""

from __future__ import annotations

from fractions import Fraction

from .mpoly import MPoly
from .ratfn import RatFn
from .series import Series2, series2_div_unit


def is_symmetric_uv(p: MPoly) -> bool:
    return all(p.coeff((b, a)) == c for (a, b), c in p.terms.items())


def symmetric_reduce(p: MPoly) -> MPoly:
    """Rewrite a symmetric bivariate polynomial in terms of (e1, e2).

    Classical elimination: repeatedly subtract c * e1^(a-b) * e2^b matching
    the lex-leading term c * u^a v^b (a >= b by symmetry).
    """
    if p.arity != 2:
        raise ValueError("symmetric_reduce needs a bivariate polynomial")
    if not is_symmetric_uv(p):
        raise ValueError("polynomial is not symmetric under u <-> v")
    u, v = MPoly.variables(2)
    e1uv, e2uv = u + v, u * v
    out = MPoly.zero(2)  # in (e1, e2)
    work = p
    while not work.is_zero():
        (a, b) = max(work.terms)
        c = work.terms[(a, b)]
        if a < b:
            raise AssertionError("lex-leading term of a symmetric poly has a >= b")
        out = out + MPoly(2, {(a - b, b): c})
        work = work - c * e1uv ** (a - b) * e2uv**b
    return out


def back_substitute(p_e: MPoly) -> MPoly:
    """Inverse of symmetric_reduce: substitute e1 = u+v, e2 = uv."""
    u, v = MPoly.variables(2)
    return p_e.subs_poly([u + v, u * v])


ST_IMAGES = None


def _st_images() -> tuple[MPoly, MPoly]:
    global ST_IMAGES
    if ST_IMAGES is None:
        u, v = MPoly.variables(2)
        one = MPoly.const(2, 1)
        ST_IMAGES = (u * v, (one - u) * (one - v))
    return ST_IMAGES


def expand_to_chiral(f: RatFn, order: int) -> Series2:
    """Expand f(s, t) as a series in (u, v) about u = v = 0.

    The denominator must be a unit at the origin after the substitution
    (t -> 1 there, so any denominator of the form t^k qualifies).
    """
    if f.arity != 2:
        raise ValueError("expand_to_chiral needs a function of (s, t)")
    s_img, t_img = _st_images()
    num_uv = f.num.subs_poly([s_img, t_img])
    den_uv = f.den.subs_poly([s_img, t_img])
    if den_uv.constant_term() == 0:
        raise ZeroDivisionError("denominator vanishes at the chiral origin")
    num_s = Series2.from_poly(num_uv, order)
    den_s = Series2.from_poly(den_uv, order)
    return series2_div_unit(num_s, den_s)


def poly_to_chiral(p: MPoly, order: int) -> Series2:
    """Expand a polynomial in (s, t) exactly (then truncate) in (u, v)."""
    s_img, t_img = _st_images()
    return Series2.from_poly(p.subs_poly([s_img, t_img]), order)
