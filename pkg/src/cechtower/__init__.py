"""Exact Čech cohomology, abelian gerbed towers and their spectral sequences."""

from .abelian import AbelianGroup, GroupElement, GroupHom, Lattice, Subquotient, smith_normal_form, Z
from .cech import (
    Cochain,
    CohomologyGroup,
    TransitionData,
    coboundary,
    cohomology,
    cone_contraction,
    giraud_cocycle,
    induced_map,
    is_coboundary,
    is_cocycle,
    map_cochain,
)
from .complexes import CATALOG_NAMES, Complex, catalog, closure, is_cone, nerve_from_cover
from .exactseq import (
    ShortExactSequence,
    bockstein,
    connecting,
    long_exact_sequence,
    theorem51_model,
    validate_ses,
)
from .spectral import FilteredComplex, b_term, build_filtered, e_infinity, e_page, prop31_sequence, z_term
from .towers import (
    LinkStack,
    TowerCocycle,
    TowerError,
    classify,
    enumerate_classes,
    equivalent,
    extend_from_class,
    is_trivial,
    validate_tower,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "GroupElement",
    "GroupHom",
    "Lattice",
    "Subquotient",
    "smith_normal_form",
    "Z",
    "Cochain",
    "CohomologyGroup",
    "TransitionData",
    "coboundary",
    "cohomology",
    "cone_contraction",
    "giraud_cocycle",
    "induced_map",
    "is_coboundary",
    "is_cocycle",
    "map_cochain",
    "CATALOG_NAMES",
    "Complex",
    "catalog",
    "closure",
    "is_cone",
    "nerve_from_cover",
    "ShortExactSequence",
    "bockstein",
    "connecting",
    "long_exact_sequence",
    "theorem51_model",
    "validate_ses",
    "FilteredComplex",
    "b_term",
    "build_filtered",
    "e_infinity",
    "e_page",
    "prop31_sequence",
    "z_term",
    "LinkStack",
    "TowerCocycle",
    "TowerError",
    "classify",
    "enumerate_classes",
    "equivalent",
    "extend_from_class",
    "is_trivial",
    "validate_tower",
    "__version__",
]
