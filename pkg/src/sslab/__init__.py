"""Supersingular elliptic curve laboratory.

Curves are carried in the flat model y^2 = 4x^3 - a*x - b over small finite
fields of characteristic at least 5.  The package covers curve and point
arithmetic, twists and automorphisms, the associated one-dimensional formal
group law with its p-series and height probes, separable isogenies built
from rational kernels, mod-p modular forms with their Hecke action on the
supersingular quotient, and cohomology of finite groupoids with
coefficients in a module.
"""

from .errors import SsLabError

__version__ = "0.1.0"
__all__ = ["SsLabError", "__version__"]
