"""Macro-actions: high-level steps that expand to uninterrupted action plans.

Each macro is a navigate-then-act unit (or a pure wait). The search layers
apply macros directly on game states through the engine, so macro effects
can never drift from the rules. `expand_macro` turns one macro into a raw
Plan by delegating to the low-level planner with the macro's induced goal.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..errors import PlanNotFound
from ..game.rules import DISH_SPECS, dish_from_contents, extends_some_recipe
from ..game.state import (
    INTERACT,
    NOTHING,
    PLATE,
    WAIT,
    WAITING,
    GameState,
    apply_action,
    tick_clock,
)
from ..game.tiles import PLATE_STATION
from . import goals as G
from .goap import Plan, goap_plan
from .nav import NavGraph, Node, nav_for

# How many canonical staging counters macros may target (keeps branching flat).
STAGE_FANOUT = 4


@dataclass(frozen=True)
class MacroAction:
    kind: str  # get_ingredient | get_plate | put_in_pot | plate_dish |
    #            serve_dish | stage | take_staged_dish | wait_for_cook |
    #            return_to_center
    ingredient: str | None = None
    pot_index: int | None = None
    customer_id: str | None = None
    counter: tuple[int, int] | None = None

    def describe(self) -> str:
        parts = [self.kind]
        for v in (self.ingredient, self.pot_index, self.customer_id, self.counter):
            if v is not None:
                parts.append(str(v))
        return ":".join(parts)


def get_ingredient(kind: str) -> MacroAction:
    return MacroAction("get_ingredient", ingredient=kind)


def get_plate() -> MacroAction:
    return MacroAction("get_plate")


def put_in_pot(pot_index: int) -> MacroAction:
    return MacroAction("put_in_pot", pot_index=pot_index)


def plate_dish(pot_index: int) -> MacroAction:
    return MacroAction("plate_dish", pot_index=pot_index)


def serve_dish(customer_id: str) -> MacroAction:
    return MacroAction("serve_dish", customer_id=customer_id)


def stage(counter: tuple[int, int]) -> MacroAction:
    return MacroAction("stage", counter=counter)


def take_staged_dish(counter: tuple[int, int]) -> MacroAction:
    return MacroAction("take_staged_dish", counter=counter)


def wait_for_cook(pot_index: int) -> MacroAction:
    return MacroAction("wait_for_cook", pot_index=pot_index)


def return_to_center() -> MacroAction:
    return MacroAction("return_to_center")


# ------------------------------------------------------------- application


def _cheapest_target(
    nav: NavGraph, src: Node, candidates: list[tuple[int, int]]
) -> tuple[tuple[int, int], Node, int] | None:
    """Min-cost (target, approach node, distance); deterministic ties."""
    best = None
    for target in candidates:
        hit = nav.nearest_approach(src, target)
        if hit is not None and (best is None or hit[1] < best[2]):
            best = (target, hit[0], hit[1])
    return best


def _macro_move(state: GameState, macro: MacroAction) -> tuple[Node, int, tuple] | None:
    """Resolve (approach node, travel distance, engine action) for a macro,
    or None when the macro is illegal from this state."""
    nav = nav_for(state.layout)
    src: Node = (state.chef_pos, state.chef_facing)
    layout = state.layout
    held = state.held
    kind = macro.kind

    if kind == "get_ingredient":
        if held != NOTHING:
            return None
        candidates = []
        if macro.ingredient != "potato" or state.potato_inventory >= 1:
            candidates.append(layout.dispenser(macro.ingredient))
        candidates.extend(
            pos for pos, item in state.counters if item == ("ingredient", macro.ingredient)
        )
        hit = _cheapest_target(nav, src, candidates)
        return None if hit is None else (hit[1], hit[2], INTERACT)

    if kind == "get_plate":
        if held != NOTHING:
            return None
        candidates = list(layout.positions_of(PLATE_STATION))
        candidates.extend(pos for pos, item in state.counters if item == PLATE)
        hit = _cheapest_target(nav, src, candidates)
        return None if hit is None else (hit[1], hit[2], INTERACT)

    if kind == "put_in_pot":
        if held[0] != "ingredient":
            return None
        pot = state.pots[macro.pot_index]
        if not extends_some_recipe(pot.contents + (held[1],)):
            return None
        hit = nav.nearest_approach(src, layout.pots[macro.pot_index])
        return None if hit is None else (hit[0], hit[1], INTERACT)

    if kind == "plate_dish":
        if held != PLATE:
            return None
        pot = state.pots[macro.pot_index]
        dish = pot.cooking_dish
        if dish is None:
            return None
        hit = nav.nearest_approach(src, layout.pots[macro.pot_index])
        if hit is None:
            return None
        node, dist = hit
        if pot.progress + dist + 1 < DISH_SPECS[dish].cook_time:
            return None  # not ready by arrival; chain a wait_for_cook first
        return (node, dist, INTERACT)

    if kind == "serve_dish":
        if held[0] != "dish" or held[2] < 1:
            return None
        try:
            customer = state.customer_by_id(macro.customer_id)
        except KeyError:
            return None
        if customer.round_index != state.current_chef_round or customer.status != WAITING:
            return None
        hit = nav.nearest_approach(src, layout.seat_tile(customer.seat))
        if hit is None:
            return None
        node, dist = hit
        if state.actions_this_round + dist + 1 > customer.patience:
            return None  # they will have left
        return (node, dist, INTERACT)

    if kind == "stage":
        if held == NOTHING or state.counter_item(macro.counter) is not None:
            return None
        hit = nav.nearest_approach(src, macro.counter)
        return None if hit is None else (hit[0], hit[1], INTERACT)

    if kind == "take_staged_dish":
        if held != NOTHING:
            return None
        item = state.counter_item(macro.counter)
        if item is None or item[0] != "dish":
            return None
        hit = nav.nearest_approach(src, macro.counter)
        return None if hit is None else (hit[0], hit[1], INTERACT)

    if kind == "wait_for_cook":
        pot = state.pots[macro.pot_index]
        dish = pot.cooking_dish
        if dish is None or pot.ready is not None:
            return None
        k = DISH_SPECS[dish].cook_time - pot.progress
        return (src, k, WAIT)

    if kind == "return_to_center":
        if state.chef_pos == layout.center:
            return None
        best = None
        for f in "NSEW":
            d = nav.distance(src, (layout.center, f))
            if d is not None and (best is None or d < best[1]):
                best = ((layout.center, f), d)
        return None if best is None else (best[0], best[1], None)

    raise ValueError(f"unknown macro kind {kind!r}")


def macro_cost(state: GameState, macro: MacroAction) -> int | None:
    """Action points the macro will spend, or None if illegal."""
    hit = _macro_move(state, macro)
    if hit is None:
        return None
    _node, dist, action = hit
    if action is WAIT:
        cost = dist
    elif action is None:
        cost = dist
    else:
        cost = dist + 1
    return cost if cost <= state.action_points else None


def apply_macro(state: GameState, macro: MacroAction) -> tuple[GameState, int] | None:
    """Fast-forward the state through one macro without materializing moves.

    Returns (next_state, cost) or None when illegal. Equivalent to applying
    the expanded raw plan action by action.
    """
    hit = _macro_move(state, macro)
    if hit is None:
        return None
    node, dist, action = hit
    cost = dist + (1 if action is INTERACT else 0)
    if cost > state.action_points or cost == 0 and action is None:
        return None
    if action is WAIT:
        s = replace(state, action_points=state.action_points - dist)
        s, _ = tick_clock(s, dist)
        return s, dist
    s = replace(
        state,
        chef_pos=node[0],
        chef_facing=node[1],
        action_points=state.action_points - dist,
    )
    if dist:
        s, _ = tick_clock(s, dist)
    if action is INTERACT:
        s, _ = apply_action(s, INTERACT)
    return s, cost


def induced_goal(state: GameState, macro: MacroAction) -> G.Goal:
    """Goal the low-level planner should achieve for this macro."""
    kind = macro.kind
    if kind == "get_ingredient":
        return (G.Hold(("ingredient", macro.ingredient)),)
    if kind == "get_plate":
        return (G.Hold(PLATE),)
    if kind == "put_in_pot":
        if state.held[0] != "ingredient":
            raise PlanNotFound("put_in_pot requires a held ingredient")
        contents = tuple(sorted(state.pots[macro.pot_index].contents + (state.held[1],)))
        return (G.PotContents(macro.pot_index, contents),)
    if kind == "plate_dish":
        dish = state.pots[macro.pot_index].cooking_dish
        if dish is None:
            raise PlanNotFound("plate_dish on a pot that is not cooking")
        return (G.HoldDish(dish), G.PotEmpty(macro.pot_index))
    if kind == "serve_dish":
        if state.held[0] != "dish":
            raise PlanNotFound("serve_dish requires a held dish")
        return (G.ServeCustomer(macro.customer_id, state.held[1]),)
    if kind == "stage":
        return (G.CounterHolds(macro.counter, state.held),)
    if kind == "take_staged_dish":
        item = state.counter_item(macro.counter)
        if item is None:
            raise PlanNotFound("no staged item on that counter")
        return (G.Hold(item),)
    if kind == "wait_for_cook":
        dish = state.pots[macro.pot_index].cooking_dish
        if dish is None:
            raise PlanNotFound("wait_for_cook on a pot that is not cooking")
        return (
            G.PotReady(macro.pot_index, dish),
            G.AtNode(state.chef_pos, state.chef_facing),
        )
    if kind == "return_to_center":
        return (G.AtCenter(),)
    raise ValueError(f"unknown macro kind {kind!r}")


def expand_macro(state: GameState, macro: MacroAction, node_cap: int = 50_000) -> Plan:
    """Raw action plan for one macro via the low-level planner."""
    if _macro_move(state, macro) is None and macro.kind != "return_to_center":
        raise PlanNotFound(f"{macro.describe()} is not legal here")
    goal = induced_goal(state, macro)
    return goap_plan(state, goal, node_cap=node_cap)


def expand_chain(state: GameState, chain: list[MacroAction] | tuple[MacroAction, ...]):
    """Expand macros sequentially; yields (macro, plan, state_after)."""
    for macro in chain:
        plan = expand_macro(state, macro)
        for action in plan.actions:
            state, _ = apply_action(state, action)
        yield macro, plan, state


# --------------------------------------------------------- chain construction


def staging_targets(state: GameState) -> list[tuple[int, int]]:
    """Free counters nearest the pots, capped for branching."""
    occupied = {pos for pos, _ in state.counters}
    nav = nav_for(state.layout)
    out = [c for c in nav.staging_counters if c not in occupied]
    return out[:STAGE_FANOUT]


def _free_pot(state: GameState, recipe: tuple[str, ...]) -> int | None:
    """Pot to cook this recipe in: the one with the most matching progress,
    else the first empty one."""
    best = None
    for i, pot in enumerate(state.pots):
        if pot.contents and _submultiset(pot.contents, recipe):
            score = len(pot.contents)
            if best is None or score > best[1]:
                best = (i, score)
    if best is not None:
        return best[0]
    for i, pot in enumerate(state.pots):
        if not pot.contents:
            return i
    return None


def _submultiset(a, b) -> bool:
    rest = list(b)
    for x in a:
        if x not in rest:
            return False
        rest.remove(x)
    return True


def build_serve_chain(
    state: GameState, customer_id: str, dish: str
) -> tuple[list[MacroAction], GameState] | None:
    """Deterministic macro chain that serves `dish` to `customer_id`, or None.

    Greedy: use a held or staged copy of the dish if one exists, otherwise
    cook it (fill pot, fetch plate, wait out the cook, plate), then serve.
    Returns the chain and the state it leaves behind.
    """
    chain: list[MacroAction] = []

    def push(s: GameState, macro: MacroAction) -> GameState | None:
        hit = apply_macro(s, macro)
        if hit is None:
            return None
        chain.append(macro)
        return hit[0]

    s = state
    held = s.held
    if not (held[0] == "dish" and held[1] == dish and held[2] >= 1):
        # unload whatever is in hand onto a staging counter
        if held != NOTHING:
            spots = staging_targets(s)
            if not spots:
                return None
            s = push(s, stage(spots[0]))
            if s is None:
                return None
        # a staged copy of the dish beats cooking a new one
        staged_at = next(
            (
                pos
                for pos, item in s.counters
                if item[0] == "dish" and item[1] == dish and item[2] >= 1
            ),
            None,
        )
        if staged_at is not None:
            s = push(s, take_staged_dish(staged_at))
            if s is None:
                return None
        else:
            ready_pot = next((i for i, pot in enumerate(s.pots) if pot.ready == dish), None)
            if ready_pot is None:
                recipe = DISH_SPECS[dish].recipe
                pot_index = _free_pot(s, recipe)
                if pot_index is None:
                    return None
                missing = list(recipe)
                for k in s.pots[pot_index].contents:
                    missing.remove(k)
                for kind in missing:
                    s = push(s, get_ingredient(kind))
                    if s is None:
                        return None
                    s = push(s, put_in_pot(pot_index))
                    if s is None:
                        return None
                ready_pot = pot_index
            s = push(s, get_plate())
            if s is None:
                return None
            if s.pots[ready_pot].ready is None and macro_cost(s, plate_dish(ready_pot)) is None:
                s = push(s, wait_for_cook(ready_pot))
                if s is None:
                    return None
            s = push(s, plate_dish(ready_pot))
            if s is None:
                return None
    s = push(s, serve_dish(customer_id))
    if s is None:
        return None
    return chain, s


