"""Exact structural and behavioral analysis of place/transition nets."""

from .decompose import Decomposition, Infeasible, decompose
from .errors import (
    DimensionError,
    FixtureError,
    NotASemiflowError,
    NotEnabledError,
    ParseError,
    PetriError,
    ResourceCapError,
    UnknownIdentifierError,
)
from .net import Net, enabled, fire, incidence, state_equation_residual
from .netio import emit_net, parse_net
from .reachability import (
    HomeSpaceQuery,
    ReachGraph,
    build_rg,
    check_linear_invariant,
    is_home_space,
    is_home_state,
    live_transitions,
    safeness_and_deadlocks,
    unreachability_certificate,
)
from .semiflows import (
    GeneratingSet,
    Kind,
    Semiflow,
    Semiring,
    compute_fundamental_set,
    compute_minimal_semiflows,
    compute_q_basis,
    enabling_threshold,
    is_canonical,
    is_minimal,
    is_semiflow,
    minimal_supports,
    place_bounds,
    sperner_bound,
    structurally_bounded_support,
    support_union,
)

__version__ = "0.1.0"
