"""Apprentice chef: goal prediction conditioned on a personal embedding,
with the planning stack carrying out each predicted goal.

The chef re-predicts after every completed goal, not after every action.
Unreachable predictions are masked out and the distribution renormalized;
when nothing is feasible the chef idles.
"""

from __future__ import annotations

import numpy as np

from ..errors import BudgetExhausted, PlanNotFound
from ..game.observe import observe_chef
from ..game.state import WAIT, GameState, apply_action
from ..planning.goals import StageIngredient
from ..planning.goap import Plan, goap_plan
from ..planning.macros import build_serve_chain, expand_macro
from .features import IDLE, GOAL_VOCAB, featurize
from .nets import GoalPredictor

MAX_GOALS_PER_TURN = 64


def _chain_for_goal(state: GameState, label: tuple, node_cap: int):
    """Macros (or a ready Plan) realizing a goal label; None if infeasible."""
    if label[0] == "serve":
        _, seat, dish = label
        customer = state.customer_at_seat(seat)
        if customer is None or customer.status != "waiting":
            return None
        hit = build_serve_chain(state, customer.id, dish)
        return None if hit is None else hit[0]
    if label[0] == "stage":
        staged = sum(1 for _, item in state.counters if item == ("ingredient", label[1]))
        try:
            plan = goap_plan(state, (StageIngredient(label[1], staged + 1),), node_cap=node_cap)
        except (PlanNotFound, BudgetExhausted):
            return None
        return plan
    return []  # idle


def _turn(state: GameState, predictor: GoalPredictor, embedding, node_cap: int):
    """Drive one chef turn; yields (goal label, actions for that goal)."""
    embedding = np.asarray(embedding, dtype=float)
    virtual = state
    for _ in range(MAX_GOALS_PER_TURN):
        if virtual.action_points <= 0:
            return
        x = featurize(observe_chef(virtual))
        probs = predictor.predict_proba(x, embedding)
        mask = np.ones(len(GOAL_VOCAB), dtype=bool)
        chain = None
        label = IDLE
        while mask.any():
            idx = int(np.argmax(np.where(mask, probs, -1.0)))
            label = GOAL_VOCAB[idx]
            chain = _chain_for_goal(virtual, label, node_cap)
            if chain is not None:
                break
            mask[idx] = False
        if chain is None or chain == []:  # idle or nothing feasible
            virtual, _ = apply_action(virtual, WAIT)
            yield IDLE, [WAIT]
            continue
        actions: list[tuple] = []
        steps = [chain] if isinstance(chain, Plan) else chain
        for step in steps:
            plan = step if isinstance(step, Plan) else expand_macro(virtual, step, node_cap=node_cap)
            actions.extend(plan.actions)
            for action in plan.actions:
                virtual, _ = apply_action(virtual, action)
        yield label, actions


def apprentice_act(
    state: GameState,
    predictor: GoalPredictor,
    embedding: np.ndarray,
    node_cap: int = 50_000,
) -> list[tuple]:
    """Action stream for one chef turn under the apprentice policy."""
    return [a for _, actions in _turn(state, predictor, embedding, node_cap) for a in actions]


def executed_goal_sequence(
    state: GameState,
    predictor: GoalPredictor,
    embedding: np.ndarray,
    node_cap: int = 50_000,
) -> list[tuple]:
    """The goal labels the apprentice commits to this turn (for analysis)."""
    return [label for label, _ in _turn(state, predictor, embedding, node_cap)]
