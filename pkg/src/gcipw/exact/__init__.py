"""Exact arithmetic substrate: rationals, polynomials, rational functions,
truncated power series and half-integer q-series.

Plain `fractions.Fraction` is the rational scalar type throughout.
"""

from fractions import Fraction as Rat

from .gauss import GaussRat, I_UNIT
from .mpoly import MPoly, divide_exact
from .qseries import QSeries, geometric_block
from .ratfn import RatFn
from .series import (
    PSeries,
    Series2,
    series2_div_antisym,
    series2_div_unit,
    series2_outer,
)

__all__ = [
    "Rat",
    "GaussRat",
    "I_UNIT",
    "MPoly",
    "divide_exact",
    "RatFn",
    "PSeries",
    "Series2",
    "series2_div_antisym",
    "series2_div_unit",
    "series2_outer",
    "QSeries",
    "geometric_block",
]
