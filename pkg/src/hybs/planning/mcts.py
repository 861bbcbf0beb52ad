"""Anytime UCT search over macro-action chains.

Rollouts pick uniformly random legal macros until the action budget runs
out; a rollout's reward is the tip it banked, ties broken by fewer action
points. The returned plan is the best complete simulation seen so far
(trimmed after its last tip), which makes the result monotone in the
iteration cap for a fixed seed. Macros are never interrupted mid-expansion.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from ..errors import NoFeasibleMacro
from ..game.rules import DISH_SPECS
from ..game.state import NOTHING, WAITING, GameState
from . import goals as G
from .macros import (
    MacroAction,
    apply_macro,
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

DEFAULT_ITERATIONS = 10_000
DEFAULT_EXPLORATION = math.sqrt(2)


@dataclass(frozen=True)
class MacroPlan:
    chain: tuple[MacroAction, ...]
    expected_tip: int
    expected_cost: int
    simulations: int = 0


@dataclass(frozen=True)
class _Context:
    serve_ids: tuple[str, ...]  # customers the search may serve
    ingredient_kinds: tuple[str, ...]
    stage_spots: int = 2


def candidate_context(state: GameState, candidate_goals) -> _Context:
    serve_ids: list[str] = []
    kinds: list[str] = []
    for goal in candidate_goals:
        for fact in goal:
            if isinstance(fact, G.ServeCustomer):
                if fact.customer_id not in serve_ids:
                    serve_ids.append(fact.customer_id)
                for k in DISH_SPECS[fact.dish].recipe:
                    if k not in kinds:
                        kinds.append(k)
            elif isinstance(fact, G.StageIngredient):
                if fact.kind not in kinds:
                    kinds.append(fact.kind)
    if not serve_ids:
        r = state.current_chef_round
        if r is not None:
            serve_ids = [c.id for c in state.customers_of_round(r) if c.status == WAITING]
    if not kinds:
        kinds = ["onion", "tomato", "potato"]
    return _Context(tuple(serve_ids), tuple(kinds))


def legal_macros(state: GameState, ctx: _Context) -> list[MacroAction]:
    """Macros applicable right now, in canonical order."""
    out: list[MacroAction] = []

    def consider(macro: MacroAction) -> None:
        if macro_cost(state, macro) is not None:
            out.append(macro)

    for kind in ctx.ingredient_kinds:
        consider(get_ingredient(kind))
    consider(get_plate())
    for i in range(len(state.pots)):
        consider(put_in_pot(i))
        consider(plate_dish(i))
        consider(wait_for_cook(i))
    for pos, item in state.counters:
        if item[0] == "dish":
            consider(take_staged_dish(pos))
    for cid in ctx.serve_ids:
        consider(serve_dish(cid))
    for counter in staging_targets(state)[: ctx.stage_spots]:
        consider(stage(counter))
    consider(return_to_center())
    return out


class _Node:
    __slots__ = ("state", "macro", "parent", "children", "untried", "visits", "value", "tips", "cost")

    def __init__(self, state: GameState, macro, parent, ctx: _Context, tips: int, cost: int):
        self.state = state
        self.macro = macro
        self.parent = parent
        self.children: list[_Node] = []
        self.untried = legal_macros(state, ctx)
        self.visits = 0
        self.value = 0.0
        self.tips = tips  # tips banked on the path from the root
        self.cost = cost  # action points spent from the root

    def uct_child(self, exploration: float) -> "_Node":
        log_n = math.log(self.visits)
        best, best_score = None, None
        for child in self.children:
            score = child.value / child.visits + exploration * math.sqrt(log_n / child.visits)
            if best_score is None or score > best_score:
                best, best_score = child, score
        return best


def mcts_plan(
    state: GameState,
    candidate_goals,
    iterations: int = DEFAULT_ITERATIONS,
    exploration: float = DEFAULT_EXPLORATION,
    seed: int = 0,
) -> MacroPlan:
    """Search macro chains from `state`, maximizing banked tips.

    Anytime: any cap >= 1 yields a legal (possibly empty) chain, and with a
    fixed seed the returned reward never decreases as the cap grows.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    ctx = candidate_context(state, candidate_goals)
    rng = random.Random(seed)
    root = _Node(state, None, None, ctx, tips=0, cost=0)
    if not root.untried:
        raise NoFeasibleMacro("no macro-action is legal at the search root")

    best_chain: tuple[MacroAction, ...] = ()
    best_tips = 0
    best_cost = 0
    sims = 0

    for _ in range(iterations):
        sims += 1
        node = root
        while not node.untried and node.children:
            node = node.uct_child(exploration)

        if node.untried:
            macro = node.untried.pop(rng.randrange(len(node.untried)))
            hit = apply_macro(node.state, macro)
            if hit is not None:
                nxt, cost = hit
                child = _Node(
                    nxt,
                    macro,
                    node,
                    ctx,
                    tips=node.tips + (nxt.tips_total - node.state.tips_total),
                    cost=node.cost + cost,
                )
                node.children.append(child)
                node = child

        # rollout: uniformly random legal macros until nothing is possible
        sim_state = node.state
        trajectory: list[tuple[MacroAction, int, int]] = []  # macro, tips, cost
        tips = node.tips
        cost = node.cost
        while True:
            options = legal_macros(sim_state, ctx)
            if not options:
                break
            macro = options[rng.randrange(len(options))]
            hit = apply_macro(sim_state, macro)
            if hit is None:
                break
            nxt, step_cost = hit
            tips += nxt.tips_total - sim_state.tips_total
            cost += step_cost
            trajectory.append((macro, tips, cost))
            sim_state = nxt

        # candidate chain: tree path + rollout, cut after the last tip gained
        node_chain: list[MacroAction] = []
        walk = node
        while walk.parent is not None:
            node_chain.append(walk.macro)
            walk = walk.parent
        node_chain.reverse()
        full = node_chain + [m for m, _, _ in trajectory]
        tips_at = _tips_along(node, trajectory)
        chain, chain_tips, chain_cost = _trim(full, tips_at)
        if (chain_tips, -chain_cost) > (best_tips, -best_cost):
            best_chain, best_tips, best_cost = chain, chain_tips, chain_cost

        # backpropagate the simulation reward
        reward = tips
        walk = node
        while walk is not None:
            walk.visits += 1
            walk.value += reward
            walk = walk.parent

    return MacroPlan(
        chain=tuple(best_chain),
        expected_tip=best_tips,
        expected_cost=best_cost,
        simulations=sims,
    )


def _tips_along(node: _Node, trajectory) -> list[tuple[int, int]]:
    """(tips, cost) after each macro of tree-path + rollout."""
    path_nodes: list[_Node] = []
    walk = node
    while walk.parent is not None:
        path_nodes.append(walk)
        walk = walk.parent
    path_nodes.reverse()
    out = [(n.tips, n.cost) for n in path_nodes]
    out.extend((tips, cost) for _, tips, cost in trajectory)
    return out


def _trim(chain: list[MacroAction], tips_at: list[tuple[int, int]]):
    """Cut the chain after the step where its final tip level is first reached."""
    if not chain:
        return (), 0, 0
    final_tips = tips_at[-1][0] if tips_at else 0
    if final_tips <= 0:
        return (), 0, 0
    for i, (tips, cost) in enumerate(tips_at):
        if tips == final_tips:
            return tuple(chain[: i + 1]), tips, cost
    return tuple(chain), final_tips, tips_at[-1][1]
