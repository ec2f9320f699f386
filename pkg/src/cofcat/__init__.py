"""Cofibration-category constructions for bounded chain complexes over Q.

Submodules:

* :mod:`cofcat.ratlin` exact rational matrices and Gauss-Jordan elimination
* :mod:`cofcat.fincat` finite categories, functors, slices, degree functions
* :mod:`cofcat.nerve` nerve chains and cofinality tests
* :mod:`cofcat.chq` chain complexes, pushouts, factorizations, homotopies
* :mod:`cofcat.hofrac` left fractions in the homotopy category
* :mod:`cofcat.reedy` diagrams, latching objects, Reedy replacement, hocolims
* :mod:`cofcat.oracle` bar-construction check of hocolim homology
* :mod:`cofcat.cli` command-line front end
"""
from .errors import CofcatError, PreconditionError, ValidationError

__version__ = "0.1.0"

__all__ = ["CofcatError", "PreconditionError", "ValidationError", "__version__"]
