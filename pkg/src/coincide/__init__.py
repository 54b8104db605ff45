"""coincide: a symbolic decision engine for coincidence questions.

Given a target manifold and a pair of homotopy classes of maps from a
sphere, the engine forward-chains a fixed catalog of vanishing and
looseness rules over finite homotopy-group tables and reports a tri-valued
verdict (yes / no / unknown) with Nielsen numbers and a proof trace.
"""
from .abelian import FgAbelianGroup, GroupElement, GroupHom, parse_group
from .engine import (
    PairQuery,
    Verdict,
    evaluate,
    evaluate_batch,
)
from .invariants import MapClass
from .manifolds import (
    ManifoldDescriptor,
    generic,
    grassmann,
    oriented_grassmann,
    product,
    real_projective,
    sphere,
    stiefel,
    surface,
)
from .tables import HomotopyTables, load_default_tables, load_tables
from .trilogic import Tri

__version__ = "0.1.0"

__all__ = [
    "FgAbelianGroup",
    "GroupElement",
    "GroupHom",
    "parse_group",
    "PairQuery",
    "Verdict",
    "evaluate",
    "evaluate_batch",
    "MapClass",
    "ManifoldDescriptor",
    "generic",
    "grassmann",
    "oriented_grassmann",
    "product",
    "real_projective",
    "sphere",
    "stiefel",
    "surface",
    "HomotopyTables",
    "load_default_tables",
    "load_tables",
    "Tri",
    "__version__",
]
