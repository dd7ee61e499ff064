"""Certify nonzero Khovanov homology classes from state-graph combinatorics.

The package parses PD diagrams, resolves states, builds trace graphs,
issues re-checkable certificates for state cycles, generates entwined
knot families, and checks everything against an exact rational Khovanov
homology computation.
"""

__version__ = "0.1.0"

from .diagram import Diagram, braid_closure, crossing_signs, mirror, parse_pd, to_json, to_pd
from .errors import (
    ArcCountMismatch,
    InvalidRegion,
    LengthMismatch,
    MalformedToken,
    NotACycle,
    OrientationConflict,
    OutOfRange,
    SeparationViolated,
    StateCycleError,
    TooLarge,
    UnknownName,
)
from .families import EntwineSpec, FamilyKnot, alpha_k, entwine, expand_twists, predicted_deltas, standard_family
from .homology import HomologyTable, build_complex, is_boundary, khovanov_homology
from .jones import jones_bracket, kauffman_bracket
from .resolution import Bigrading, EnhancedState, State, bigrading, resolve, seifert_smoothing
from .statecycle import (
    Certificate,
    ClassificationVerdict,
    certify,
    classify,
    enumerate_certified,
    is_state_cycle,
    one_even,
    one_isolated,
    verify_certificate,
    width_lower_bound,
)
from .stategraph import TraceGraph, build_graph, diagram_adequacy, evenness, state_flags
from .tables import builtin, builtin_names
