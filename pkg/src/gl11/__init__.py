"""Exact computational toolkit for GL(1|1) supergeometry.

Subpackages cover Grassmann-algebra arithmetic, the GL(1|1)/SL(1|1)
supergroup, Cech cochain verification on abstract nerves, local Hitchin
equation residuals, fatgraph moduli of flat connections, and the classical
and quantum gl(1|1) Garnier/Gaudin integrable system.
"""

from .grassmann import (
    GrassmannElement,
    ConjugationTable,
    ParityError,
    NotInvertibleError,
    DEFAULT_TOL,
)
from .supergroup import SuperMatrix11, GroupCoords

__all__ = [
    "GrassmannElement",
    "ConjugationTable",
    "ParityError",
    "NotInvertibleError",
    "DEFAULT_TOL",
    "SuperMatrix11",
    "GroupCoords",
]
