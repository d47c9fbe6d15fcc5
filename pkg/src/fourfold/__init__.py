"""Exact-arithmetic toolkit for closed oriented smooth 4-manifolds.

The package models manifolds by characteristic data (b1, b+, b-, spin-ness,
flags), tracks spin-c structures and their first Chern classes in explicit
Gram lattices, and turns the standard gauge-theoretic non-vanishing and
Einstein-obstruction statements into machine-checkable certificates.  All
quantitative output is exact: rationals, or numbers of the form
q * pi^p * sqrt(s).
"""

from fourfold.model import (
    CharData,
    Flag,
    GramLattice,
    Manifold,
    Parity,
    Provenance,
    SpinCStructure,
    validate,
)
from fourfold.symbolic import SymbolicValue
from fourfold.catalog import catalog_get

__version__ = "0.1.0"

__all__ = [
    "CharData",
    "Flag",
    "GramLattice",
    "Manifold",
    "Parity",
    "Provenance",
    "SpinCStructure",
    "SymbolicValue",
    "catalog_get",
    "__version__",
]
