"""Exact-arithmetic censuses of maximal torus and circle actions.

The package classifies and counts Hamiltonian torus actions on blow-ups
of the projective plane and of ruled surfaces over a closed base curve,
working entirely over the rationals.  Four computational layers feed a
census driver and a command-line front end:

- ``homology``: intersection theory on second homology, exceptional-class
  enumeration, blow-down chains, and capacity thresholds.
- ``polygon``: Delzant polygons, corner chops, edge collapses, canonical
  forms under unimodular affine maps, and model recognition.
- ``circle_graph``: decorated fixed-point graphs of Hamiltonian circle
  actions, equivariant blow-ups, and the extension test back to toric.
- ``census``: manifold recipes, the toric and maximal-circle censuses
  with provenance, and feasibility reports against closed-form tests.
"""

from .census import (
    CP2,
    PRODUCT_RULED,
    TWISTED_RULED,
    BlowUpStep,
    CensusResult,
    CircleProvenance,
    ConjugacyCounts,
    FeasibilityReport,
    ManifoldSpec,
    ToricProvenance,
    base_toric_actions,
    circle_census,
    count_conjugacy_classes,
    feasibility_report,
    replay_circle,
    replay_toric,
    ruled_base_count,
    run_census,
    spec_from_json,
    spec_to_json,
    spec_to_symplectic,
    toric_census,
)
from .circle_graph import (
    FixedComponent,
    S1Graph,
    can_blow_up,
    edge_area,
    extends_to_toric,
    graph_from_json,
    graph_from_polygon,
    graph_to_json,
    isolated,
    ruled_base_graph,
    surface,
    validate,
)
from .circle_graph import blow_up as graph_blow_up
from .circle_graph import canonical_form as graph_canonical_form
from .circle_graph import canonical_serialization as graph_canonical_serialization
from .circle_graph import (
    enumerate_equivariant_blowups as graph_enumerate_equivariant_blowups,
)
from .circle_graph import equivalent as graph_equivalent
from .errors import (
    CapacityError,
    EnumerationError,
    FormatError,
    PreconditionError,
    TorusCensusError,
    UnsupportedBlowdownError,
)
from .homology import (
    Basis,
    BlowdownChain,
    CapacityThreshold,
    ChainStep,
    HomologyClass,
    MinimalClassData,
    SymplecticData,
    area,
    basis_from_json,
    basis_to_json,
    blow_down_class,
    canonical_blowdown_chain,
    chern,
    class_from_json,
    class_to_json,
    enumerate_bounded_classes,
    enumerate_exceptional_candidates,
    intersect,
    min_capacity_threshold,
    minimal_blowdown_chains,
    minimal_exceptional_classes,
    poincare_dual,
    symplectic_from_json,
    symplectic_to_json,
)
from .polygon import (
    EdgeData,
    ModelIdentification,
    PolygonInvariants,
    RationalPolygon,
    UnimodularAffineMap,
    blow_down,
    blow_up,
    canonical_form,
    classify_model,
    count_toric_actions_ruled,
    delzant_triangle,
    edges,
    enumerate_equivariant_blowups,
    equivalent,
    hirzebruch,
    intersection_matrix,
    invariants,
    is_delzant,
    polygon_from_json,
    polygon_to_json,
    self_intersection,
)
from .rationals import format_rational, parse_rational

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "BlowUpStep",
    "BlowdownChain",
    "CP2",
    "CapacityError",
    "CapacityThreshold",
    "CensusResult",
    "ChainStep",
    "CircleProvenance",
    "ConjugacyCounts",
    "EdgeData",
    "EnumerationError",
    "FeasibilityReport",
    "FixedComponent",
    "FormatError",
    "HomologyClass",
    "ManifoldSpec",
    "MinimalClassData",
    "ModelIdentification",
    "PRODUCT_RULED",
    "PolygonInvariants",
    "PreconditionError",
    "RationalPolygon",
    "S1Graph",
    "SymplecticData",
    "TWISTED_RULED",
    "ToricProvenance",
    "TorusCensusError",
    "UnimodularAffineMap",
    "UnsupportedBlowdownError",
    "area",
    "base_toric_actions",
    "basis_from_json",
    "basis_to_json",
    "blow_down",
    "blow_down_class",
    "blow_up",
    "can_blow_up",
    "canonical_blowdown_chain",
    "canonical_form",
    "chern",
    "circle_census",
    "class_from_json",
    "class_to_json",
    "classify_model",
    "count_conjugacy_classes",
    "count_toric_actions_ruled",
    "delzant_triangle",
    "edge_area",
    "edges",
    "enumerate_bounded_classes",
    "enumerate_equivariant_blowups",
    "enumerate_exceptional_candidates",
    "equivalent",
    "extends_to_toric",
    "feasibility_report",
    "format_rational",
    "graph_blow_up",
    "graph_canonical_form",
    "graph_canonical_serialization",
    "graph_enumerate_equivariant_blowups",
    "graph_equivalent",
    "graph_from_json",
    "graph_from_polygon",
    "graph_to_json",
    "hirzebruch",
    "intersect",
    "intersection_matrix",
    "invariants",
    "is_delzant",
    "isolated",
    "min_capacity_threshold",
    "minimal_blowdown_chains",
    "minimal_exceptional_classes",
    "parse_rational",
    "poincare_dual",
    "polygon_from_json",
    "polygon_to_json",
    "replay_circle",
    "replay_toric",
    "ruled_base_count",
    "ruled_base_graph",
    "run_census",
    "self_intersection",
    "spec_from_json",
    "spec_to_json",
    "spec_to_symplectic",
    "surface",
    "symplectic_from_json",
    "symplectic_to_json",
    "toric_census",
    "validate",
]
