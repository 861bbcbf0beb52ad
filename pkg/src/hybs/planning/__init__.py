"""Hierarchical planning: low-level A* over chef actions, macro expansion,
and anytime UCT search over macro chains."""

from .goals import (
    AtCenter,
    AtNode,
    CounterHolds,
    Goal,
    Hold,
    HoldDish,
    PotContents,
    PotEmpty,
    PotReady,
    ServeCustomer,
    StageIngredient,
    goal_satisfied,
)
from .goap import DEFAULT_NODE_CAP, Plan, goap_heuristic, goap_plan, simulate_plan
from .macros import (
    MacroAction,
    apply_macro,
    build_serve_chain,
    expand_chain,
    expand_macro,
    get_ingredient,
    get_plate,
    macro_cost,
    plate_dish,
    put_in_pot,
    return_to_center,
    serve_dish,
    stage,
    staging_targets,
    take_staged_dish,
    wait_for_cook,
)
from .mcts import (
    DEFAULT_EXPLORATION,
    DEFAULT_ITERATIONS,
    MacroPlan,
    candidate_context,
    legal_macros,
    mcts_plan,
)
from .nav import NavGraph, nav_for

__all__ = [name for name in dir() if not name.startswith("_")]
