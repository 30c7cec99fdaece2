"""Transit functions, clustering-system predicates, and interval-order
recognition over small labeled ground sets."""

from .axioms import TRANSIT_AXIOMS, check_axiom, classify_all
from .enumeration import (
    ImplicationClaim,
    implication_battery,
    search_counterexample,
    verify_implication,
)
from .docio import (
    Report,
    SystemDocument,
    TransitDocument,
    parse_document,
    parse_system_document,
    parse_transit_document,
)
from .model import (
    Cluster,
    CompatibleOrder,
    GroundSet,
    ModelError,
    SetSystem,
    TransitFunction,
    Verdict,
    canonical_transit_function,
    make_transit_function,
    minimal_cluster_containing,
    transit_sets,
)
from .pyramidal import (
    LadderReport,
    OrderSearchResult,
    brute_force_order,
    classify_ladder,
    find_compatible_order,
    is_pyramidal,
    is_weakly_pyramidal,
    order_certifies,
)
from .systems import (
    SYSTEM_PREDICATES,
    check_system,
    check_W_prime,
    check_weak_hierarchy,
    nebesky_triple_test,
    union_closure,
)

__version__ = "0.1.0"

__all__ = [
    "TRANSIT_AXIOMS", "SYSTEM_PREDICATES",
    "GroundSet", "Cluster", "SetSystem", "TransitFunction",
    "CompatibleOrder", "Verdict", "ModelError",
    "make_transit_function", "canonical_transit_function", "transit_sets",
    "minimal_cluster_containing",
    "check_axiom", "classify_all",
    "check_system", "check_weak_hierarchy", "check_W_prime",
    "union_closure", "nebesky_triple_test",
    "ImplicationClaim", "implication_battery", "verify_implication",
    "search_counterexample",
    "find_compatible_order", "brute_force_order", "order_certifies",
    "is_pyramidal", "is_weakly_pyramidal", "classify_ladder",
    "OrderSearchResult", "LadderReport",
    "SystemDocument", "TransitDocument", "parse_document",
    "parse_system_document", "parse_transit_document", "Report",
]
