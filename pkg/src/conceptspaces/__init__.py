"""Geometric concept representation: quality dimensions, convex regions,
prototype tessellations and their links to logic and networks."""

from importlib import resources

from .errors import (
    ConceptSpaceError,
    CspaceParseError,
    EmptyConjunctionError,
    InvalidSpaceError,
    SamplingError,
    SpaceMismatchError,
    UnsupportedMetricError,
)
from .space import (
    Circular,
    ConceptualSpace,
    Dimension,
    Domain,
    Linear,
    Point,
    build_space,
    distance,
    euclidean_space,
    similarity,
)
from .regions import (
    Ball,
    Box,
    Concept,
    Exemplar,
    Halfspaces,
    Hull,
    Intersection,
    Region,
    between,
    centroid,
    check_criterion_p,
    combine,
    concept_from_region,
    contains,
    region_from_exemplars,
    typicality,
)
from .tessellation import Cell2D, Tessellation, categorize, categorize_exemplars, tessellate_2d
from .fuzzy import And, Atom, FuzzyAssertion, evaluate, osherson_smith_witness, t_norm_and
from .rbf import (
    RBFNetwork,
    RBFUnit,
    activate,
    classify,
    detect_chimera,
    to_conceptual_space,
    train_rbf,
)
from .dynamics import (
    SeatingFrame,
    Trajectory,
    extrapolate,
    interpolate_gap,
    reidentify,
    right_of,
    smoothness,
    transitivity_check,
)
from .taxonomy import Taxonomy, classify_taxonomy, dual_categorize, subsumes
from .formats import SpaceSpec, build_model, load_cspace, parse_cspace, serialize_cspace
from .svg import emit_svg

__version__ = "0.1.0"


def fixture_path(name: str):
    """Path of a bundled CSPACE fixture, e.g. ``fixture_path("round_table.cspace")``."""
    return resources.files(__name__) / "data" / name
