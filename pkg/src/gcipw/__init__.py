"""gcipw: exact computer-algebra toolkit for globally conformal invariant
4-point functions, their twist decompositions, free-field correlator
oracles and thermal (elliptic/modular) expectation values.
"""

__version__ = "0.1.0"
