"""hodgelab: exact strand-by-strand verification of cobar, de Rham and
crystalline constructions over Z, F_p, Z/p^2 and Q."""

__version__ = "0.1.0"

from .exactlin import AbGroup, IntMat, cohomology_of_pair, smith_normal_form

__all__ = ["AbGroup", "IntMat", "cohomology_of_pair", "smith_normal_form",
           "__version__"]
