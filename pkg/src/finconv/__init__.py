"""finconv: exact homotopy machinery for finite convergence spaces."""

from .core import (
    POINT_LIMIT,
    SUBSET_LIMIT,
    PrincipalFilter,
    Space,
    SpaceMap,
    StructureKind,
    classify,
    closure_of,
    compose,
    continuity_certificate,
    empty_space,
    filter_limits,
    identity_map,
    is_continuous,
    make_space,
    make_subset_space,
    neighborhood_filter,
    point_space,
    pseudotopological_modification,
)
from .builders import (
    FiniteTopologyData,
    GraphData,
    HypergraphData,
    ScaledMetricData,
    cycle_space,
    discrete_space,
    from_finite_topology,
    from_graph,
    from_hypergraph,
    from_scaled_metric,
    indiscrete_space,
    is_topological,
    path_space,
)
from .constructions import (
    coproduct,
    curry,
    evaluation,
    function_space,
    product,
    pushout,
    pushout_mediator,
    quotient,
    subspace,
    uncurry,
)
from .homotopy import (
    Homotopy,
    IntervalObject,
    are_homotopic,
    concatenate,
    constant_homotopy,
    cylinder,
    gluing_check,
    homotopy_classes,
    homotopy_from_chain,
    is_homotopy_equivalence,
    is_homotopy_rel,
    one_step,
    relative_cylinder,
    reverse,
)
from .cofibration import (
    factorize,
    hep_solve,
    interchange,
    is_cofibration,
    verify_axioms,
)
from .invariants import (
    BasedSpace,
    pi0,
    pi_n,
    sphere_model,
    suspension,
    torus,
    wedge,
    winding_number,
    winding_oracle,
)
from .compactness import (
    CoveringSystem,
    adherence,
    attach_cell,
    build_presentation,
    finite_subcover,
    interior,
    is_closed,
    is_compact,
    is_covering_system,
    is_open,
    restrict_covering_system,
    serre_check,
    weak_equivalence_check,
)

__version__ = "0.1.0"
SCHEMA_VERSION = "1"
