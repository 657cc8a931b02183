from .movements import (
    INF,
    ZERO,
    Movement,
    Pairing,
    SingularClass,
    concat_all,
    concat_movements,
    concat_pairings,
    empty_movement,
    flip_vertex,
    identity_pairing,
    induced_pairing,
    is_singular,
    is_strongly_singular,
    lift_disjoint,
    pairing_from_bijection,
    pairings_equal,
    reverse_movement,
    set_singular,
    set_strongly_singular,
    singular_classes,
    typed_movement,
    verify_movement,
)
from .oracle import (
    placement_components,
    placement_diameter,
    placement_state_graph,
    reachability_oracle,
)
from .solvers import (
    block_length_budget,
    graph_has_triangle,
    is_marginal,
    solve_block,
    solve_hub,
    solve_simple,
    solve_star,
    solve_wilson,
)

__all__ = [
    "INF", "ZERO", "Movement", "Pairing", "SingularClass",
    "concat_all", "concat_movements", "concat_pairings", "empty_movement",
    "flip_vertex", "identity_pairing", "induced_pairing", "is_singular",
    "is_strongly_singular", "lift_disjoint", "pairing_from_bijection",
    "pairings_equal", "reverse_movement", "set_singular",
    "set_strongly_singular", "singular_classes", "typed_movement",
    "verify_movement", "placement_components", "placement_diameter",
    "placement_state_graph", "reachability_oracle", "block_length_budget",
    "graph_has_triangle", "is_marginal", "solve_block", "solve_hub",
    "solve_simple", "solve_star", "solve_wilson",
]
