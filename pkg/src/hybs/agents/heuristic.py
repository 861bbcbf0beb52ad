"""The obedient heuristic chef.

Works down the waiter's priority list one recommendation at a time: plan the
next serve on top of everything already committed; if the extended plan
cannot be realized, drop that recommendation for good and move on. Once the
list is exhausted, staging trips for the variant's ingredient are added
while the budget allows, and whatever remains brings the chef back to the
center tile.

The policy never reads customer profiles or tip tables; its behavior is a
function of the recommendation list and the kitchen alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import BudgetExhausted, PlanNotFound
from ..game.state import GameState, apply_action
from ..planning import goals as G
from ..planning.goap import Plan, goap_plan, simulate_plan
from ..planning.macros import (
    MacroAction,
    apply_macro,
    build_serve_chain,
    expand_macro,
    macro_cost,
    return_to_center,
)

TOMATO_STAGING = "tomato"
ONION_STAGING = "onion"


@dataclass(frozen=True)
class HeuristicChefConfig:
    staging_variant: str = TOMATO_STAGING
    goap_node_cap: int = 50_000
    max_staging_trips: int = 8

    def __post_init__(self):
        if self.staging_variant not in (TOMATO_STAGING, ONION_STAGING):
            raise ValueError(f"unknown staging variant {self.staging_variant!r}")


def _return_cost(state: GameState) -> int:
    if state.chef_pos == state.layout.center:
        return 0
    cost = macro_cost(state, return_to_center())
    return cost if cost is not None else 0


Step = list[MacroAction] | Plan  # one goal's realization


def plan_turn(state: GameState, cfg: HeuristicChefConfig) -> tuple[list, list[Step]]:
    """Select goals and their realizations for one chef turn."""
    goals: list = []
    chains: list[Step] = []
    virtual = state

    for customer_id, dish in state.active_recommendation or ():
        attempt = build_serve_chain(virtual, customer_id, dish)
        if attempt is None:
            continue  # omitted from future consideration
        chain, end = attempt
        goals.append(G.ServeCustomer(customer_id, dish))
        chains.append(chain)
        virtual = end

    # staging trips go through the low-level planner directly so that an
    # already-staged ingredient is never "restaged" for zero net gain
    kind = cfg.staging_variant
    staged = sum(1 for _, item in virtual.counters if item == ("ingredient", kind))
    for _ in range(cfg.max_staging_trips):
        goal = (G.StageIngredient(kind, staged + 1),)
        try:
            plan = goap_plan(virtual, goal, node_cap=cfg.goap_node_cap)
        except (PlanNotFound, BudgetExhausted):
            break
        end = simulate_plan(virtual, plan)
        if end.action_points < _return_cost(end):
            break  # keep the walk home affordable
        staged += 1
        goals.append(G.StageIngredient(kind, staged))
        chains.append(plan)
        virtual = end

    if virtual.chef_pos != virtual.layout.center:
        if apply_macro(virtual, return_to_center()) is not None:
            goals.append(G.AtCenter())
            chains.append([return_to_center()])

    return goals, chains


def heuristic_select_goals(state: GameState, cfg: HeuristicChefConfig) -> list:
    """Ordered goals for this turn (serves in waiter order, staging, center)."""
    goals, _ = plan_turn(state, cfg)
    return goals


def heuristic_act(state: GameState, cfg: HeuristicChefConfig) -> list[tuple]:
    """The full action stream for this chef turn.

    Macros expand whole and are never interleaved. If an expansion fails
    mid-stream (it cannot in a deterministic game, but policies must not
    crash episodes), remaining goals are dropped and the chef heads home.
    """
    _goals, chains = plan_turn(state, cfg)
    stream: list[tuple] = []
    virtual = state
    for chain in chains:
        steps = [chain] if isinstance(chain, Plan) else chain
        for step in steps:
            if isinstance(step, Plan):
                plan = step
            else:
                try:
                    plan = expand_macro(virtual, step, node_cap=cfg.goap_node_cap)
                except Exception:
                    return stream + _go_home(virtual, cfg)
            stream.extend(plan.actions)
            for action in plan.actions:
                virtual, _ = apply_action(virtual, action)
    return stream


def _go_home(state: GameState, cfg: HeuristicChefConfig) -> list[tuple]:
    if state.chef_pos == state.layout.center:
        return []
    try:
        plan = expand_macro(state, return_to_center(), node_cap=cfg.goap_node_cap)
    except Exception:
        return []
    return list(plan.actions)
