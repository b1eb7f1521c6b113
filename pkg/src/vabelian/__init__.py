"""Exact algorithms for finitely generated virtually abelian groups.

The package provides semilinear subsets of Z^k as an effective Boolean
algebra, geodesic normal forms and weighted growth series for virtually
abelian groups given by explicit multiplication data, and compilers that
turn length, abelianisation, lexicographic and context-free constraints
into explicitly constructed rational sets.
"""

from .errors import FormatError, StructuralError

__all__ = ["FormatError", "StructuralError"]
__version__ = "0.1.0"
