"""Logarithmic knot invariants from colored Jones invariants at roots of unity."""

from .qcalc import LaurentPoly, RootContext

__version__ = "0.1.0"
__all__ = ["LaurentPoly", "RootContext"]
