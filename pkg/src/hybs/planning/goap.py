"""Minimum-cost action planning: A* over collapsed travel-and-interact edges.

Movement between decision points is collapsed into "walk shortest path to a
tile you can act on, then act" edges; explicit wait edges jump to the moment
a pot finishes. Every raw optimal plan can be reordered into this shape at
equal cost, so the search stays optimal while the graph shrinks by orders of
magnitude. Emitted plans are full raw action sequences.

States reached at a later tick are dominated by identical configurations
reached earlier (waiting can reproduce anything time alone changes), so the
closed set keys on the clock-free configuration.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, replace

from ..errors import BudgetExhausted, PlanNotFound
from ..game.rules import DISH_SPECS, extends_some_recipe
from ..game.state import (
    CLEAR,
    INTERACT,
    NOTHING,
    PLATE,
    WAIT,
    WAITING,
    GameState,
    apply_action,
    move,
    tick_clock,
)
from ..game.tiles import DISPENSER, PLATE_STATION, POT, SEAT
from . import goals as G
from .nav import NavGraph, Node, nav_for

DEFAULT_NODE_CAP = 200_000


@dataclass(frozen=True)
class Plan:
    actions: tuple[tuple, ...]
    cost: int
    achieved: G.Goal

    def __post_init__(self):
        assert self.cost == len(self.actions)


# --------------------------------------------------------------- heuristic


def _man(a: tuple[int, int], b: tuple[int, int]) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def _dist_lb(pos: tuple[int, int], targets: list[tuple[int, int]]) -> int | None:
    if not targets:
        return None
    return max(0, min(_man(pos, t) for t in targets) - 1)


def _ingredient_sources(state: GameState, kind: str) -> list[tuple[int, int]]:
    out = []
    if kind != "potato" or state.potato_inventory >= 1:
        out.append(state.layout.dispenser(kind))
    out.extend(pos for pos, item in state.counters if item == ("ingredient", kind))
    return out


def _dish_relevant_tiles(state: GameState, dish: str) -> list[tuple[int, int]]:
    spec = DISH_SPECS[dish]
    tiles = list(state.layout.pots)
    tiles.extend(pos for pos, item in state.counters if item[0] == "dish" and item[1] == dish)
    for kind in set(spec.recipe):
        tiles.extend(_ingredient_sources(state, kind))
    return tiles


def _fact_bound(state: GameState, fact) -> int | None:
    """Admissible lower bound on remaining actions; None means unreachable."""
    if fact.satisfied(state):
        return 0
    pos = state.chef_pos
    held = state.held

    if isinstance(fact, G.ServeCustomer):
        if G.serve_impossible(state, fact):
            return None
        customer = state.customer_by_id(fact.customer_id)
        seat = state.layout.seat_tile(customer.seat)
        if held[0] == "dish" and held[1] == fact.dish and held[2] >= 1:
            bound = (_dist_lb(pos, [seat]) or 0) + 1
        else:
            ready = [
                state.layout.pots[i]
                for i, pot in enumerate(state.pots)
                if pot.ready == fact.dish
            ]
            ready.extend(
                p for p, item in state.counters if item[0] == "dish" and item[1] == fact.dish
            )
            spec = DISH_SPECS[fact.dish]
            if ready:
                d = _dist_lb(pos, ready)
                bound = (d or 0) + 2
            else:
                d = _dist_lb(pos, _dish_relevant_tiles(state, fact.dish)) or 0
                cooking = [
                    pot for pot in state.pots if pot.cooking_dish == fact.dish
                ]
                if cooking:
                    # any route still plates and serves; the fastest pot also
                    # bounds the remaining wait (a fresh cook takes longer)
                    remaining = min(spec.cook_time - pot.progress for pot in cooking)
                    bound = max(d + 2, remaining + 2)
                else:
                    missing = _missing_ingredients(state, spec.recipe)
                    inter = 2 * missing - (held[0] == "ingredient" and held[1] in spec.recipe)
                    bound = d + inter + 2
        if customer.status == WAITING and bound > customer.patience - state.actions_this_round:
            return None
        return bound

    if isinstance(fact, G.StageIngredient):
        staged = sum(1 for _, item in state.counters if item == ("ingredient", fact.kind))
        m = fact.count - staged
        if m <= 0:
            return 0
        b = 1 if held == ("ingredient", fact.kind) else 0
        if fact.kind == "potato" and state.potato_inventory + b < m:
            return None
        counters = state.layout.counters
        if not counters:
            return None
        # counter shuffles never raise the staged count: every net-new copy
        # costs a dispenser pickup plus a placement
        dispenser = state.layout.dispenser(fact.kind)
        if m - b >= 1:
            dist = max(0, _man(pos, dispenser) - 1) + max(
                0, min(_man(dispenser, c) for c in counters) - 2
            )
        else:
            dist = max(0, min(_man(pos, c) for c in counters) - 1)
        return dist + 2 * m - b

    if isinstance(fact, G.AtCenter):
        return _man(pos, state.layout.center)

    if isinstance(fact, G.AtNode):
        return _man(pos, fact.pos)

    if isinstance(fact, G.Hold):
        item = fact.item
        penalty = 1 if held != NOTHING else 0
        if item[0] == "ingredient":
            sources = _ingredient_sources(state, item[1])
            if not sources:
                return None
            return (_dist_lb(pos, sources) or 0) + 1 + penalty
        if item == PLATE:
            sources = list(state.layout.positions_of(PLATE_STATION))
            sources.extend(p for p, it in state.counters if it == PLATE)
            return (_dist_lb(pos, sources) or 0) + 1 + penalty
        return 1  # generic: at least one interaction

    if isinstance(fact, G.HoldDish):
        if not G.dish_attainable(state, fact.dish):
            return None
        return (_dist_lb(pos, _dish_relevant_tiles(state, fact.dish)) or 0) + 1

    if isinstance(fact, G.PotContents):
        pot = state.pots[fact.pot_index]
        pot_pos = state.layout.pots[fact.pot_index]
        current = list(pot.contents)
        target = list(fact.contents)
        if not _is_submultiset(current, target):
            # cleared contents are unrecoverable: clear, then rebuild fully
            inter = 1 + 2 * len(target) - (held[0] == "ingredient" and held[1] in target)
            return (_dist_lb(pos, [pot_pos]) or 0) + inter
        missing = _multiset_diff(target, current)
        if "potato" in missing:
            have = state.potato_inventory + (held == ("ingredient", "potato")) + sum(
                1 for _, it in state.counters if it == ("ingredient", "potato")
            )
            if missing.count("potato") > have:
                return None
        inter = 2 * len(missing) - (held[0] == "ingredient" and held[1] in missing)
        return (_dist_lb(pos, [pot_pos]) or 0) + max(inter, 1)

    if isinstance(fact, G.PotEmpty):
        pot_pos = state.layout.pots[fact.pot_index]
        return (_dist_lb(pos, [pot_pos]) or 0) + 1

    if isinstance(fact, G.PotReady):
        pot = state.pots[fact.pot_index]
        current_dish = pot.cooking_dish
        if current_dish is not None and (fact.dish is None or current_dish == fact.dish):
            return DISH_SPECS[current_dish].cook_time - pot.progress
        # the pot must be (re)built and then sit through a full cook
        best = None
        for dish in [fact.dish] if fact.dish else list(DISH_SPECS):
            recipe = list(DISH_SPECS[dish].recipe)
            must_clear = not _is_submultiset(list(pot.contents), recipe)
            missing = len(recipe) if must_clear else len(recipe) - len(pot.contents)
            fill = 2 * missing
            if missing and held[0] == "ingredient" and held[1] in recipe:
                fill -= 1
            b = int(must_clear) + fill + DISH_SPECS[dish].cook_time
            best = b if best is None else min(best, b)
        return best

    if isinstance(fact, G.CounterHolds):
        if held == fact.item:
            return (_dist_lb(pos, [fact.pos]) or 0) + 1
        return (_dist_lb(pos, [fact.pos]) or 0) + 2

    raise TypeError(f"unknown fact {fact!r}")


def _is_submultiset(a: list, b: list) -> bool:
    rest = list(b)
    for x in a:
        if x in rest:
            rest.remove(x)
        else:
            return False
    return True


def _multiset_diff(a: list, b: list) -> list:
    out = list(a)
    for x in b:
        if x in out:
            out.remove(x)
    return out


def _missing_ingredients(state: GameState, recipe: tuple[str, ...]) -> int:
    """Ingredients still to be placed for the best-progressed matching pot."""
    best = len(recipe)
    for pot in state.pots:
        if _is_submultiset(list(pot.contents), list(recipe)):
            best = min(best, len(recipe) - len(pot.contents))
    return best


def goap_heuristic(state: GameState, goal: G.Goal) -> int | None:
    """Admissible lower bound on the cost to satisfy `goal`; None if provably
    unreachable from this state."""
    best = 0
    for fact in goal:
        b = _fact_bound(state, fact)
        if b is None:
            return None
        best = max(best, b)
    return best


# ------------------------------------------------------------------ search


def _jump(state: GameState, node: Node, dist: int) -> GameState:
    """Stand at `node` after `dist` moves; clocks advance exactly as if the
    moves were applied one by one (movement has no other side effects)."""
    s = replace(
        state,
        chef_pos=node[0],
        chef_facing=node[1],
        action_points=state.action_points - dist,
    )
    if dist:
        s, _ = tick_clock(s, dist)
    return s


def _edges(state: GameState, goal: G.Goal, nav: NavGraph):
    """Yield (edge, next_state, cost); edge = (kind, node, action, count)."""
    cur: Node = (state.chef_pos, state.chef_facing)
    layout = state.layout
    held = state.held
    budget = state.action_points

    def interactions():
        # dispensers
        if held == NOTHING:
            for kind in ("onion", "tomato", "potato"):
                if kind == "potato" and state.potato_inventory < 1:
                    continue
                yield layout.dispenser(kind), INTERACT, 0
            for p in layout.positions_of(PLATE_STATION):
                yield p, INTERACT, 0
            for p, _item in state.counters:
                yield p, INTERACT, 0
        # pots
        for i, pot_pos in enumerate(layout.pots):
            pot = state.pots[i]
            if held[0] == "ingredient" and extends_some_recipe(pot.contents + (held[1],)):
                yield pot_pos, INTERACT, 0
            if held == PLATE and pot.cooking_dish is not None:
                cook = DISH_SPECS[pot.cooking_dish].cook_time
                lead = cook - pot.progress - 1  # extra distance that ripens the pot
                yield pot_pos, INTERACT, max(0, lead)
            if pot.contents:
                yield pot_pos, CLEAR, 0
        # staging and serving
        if held != NOTHING:
            occupied = {p for p, _ in state.counters}
            for p in layout.counters:
                if p not in occupied:
                    yield p, INTERACT, 0
        if held[0] == "dish" and held[2] >= 1:
            r = state.current_chef_round
            if r is not None:
                for c in state.customers_of_round(r):
                    if c.status == WAITING:
                        yield layout.seat_tile(c.seat), INTERACT, c.patience

    for target, action, constraint in interactions():
        for node in nav.approach_nodes(target):
            d = nav.distance(cur, node)
            if d is None or d + 1 > budget:
                continue
            if action is INTERACT and state.layout.tile(target).kind == POT and held == PLATE:
                if d < constraint:  # pot not ready by arrival; wait edges cover it
                    continue
            if action is INTERACT and state.layout.tile(target).kind == SEAT:
                if state.actions_this_round + d + 1 > constraint:  # patience
                    continue
            s = _jump(state, node, d)
            s, _ = apply_action(s, action)
            yield ("act", node, action, d), s, d + 1

    # wait until a pot finishes
    for i, pot in enumerate(state.pots):
        dish = pot.cooking_dish
        if dish is not None and pot.ready is None:
            k = DISH_SPECS[dish].cook_time - pot.progress
            if 0 < k <= budget:
                s = replace(state, action_points=budget - k)
                s, _ = tick_clock(s, k)
                yield ("wait", cur, WAIT, k), s, k

    # pure navigation for positional goals
    nav_targets: list[Node] = []
    for fact in goal:
        if isinstance(fact, G.AtCenter):
            nav_targets.extend((layout.center, f) for f in "NSEW")
        elif isinstance(fact, G.AtNode):
            nav_targets.append((fact.pos, fact.facing))
    for node in nav_targets:
        d = nav.distance(cur, node)
        if d is not None and 0 < d <= budget:
            yield ("goto", node, None, d), _jump(state, node, d), d


def goap_plan(
    state: GameState,
    goal: G.Goal,
    node_cap: int = DEFAULT_NODE_CAP,
) -> Plan:
    """Minimum-cost raw action plan achieving `goal` within the remaining
    action points. Deterministic; raises PlanNotFound / BudgetExhausted."""
    goal = tuple(goal)
    if G.goal_satisfied(state, goal):
        return Plan((), 0, goal)

    nav = nav_for(state.layout)
    h0 = goap_heuristic(state, goal)
    if h0 is None:
        raise PlanNotFound(f"goal {goal} unreachable")

    seq = 0
    # (f, -g, seq, node index): ties on f prefer deeper nodes, which stops
    # plateau thrash when long waits dominate the cost
    open_heap: list[tuple[int, int, int, int]] = []
    nodes: list[tuple[GameState, int, int, tuple | None]] = []  # state, g, parent, edge
    nodes.append((state, 0, -1, None))
    heapq.heappush(open_heap, (h0, 0, seq, 0))
    closed: dict[tuple, int] = {}
    expansions = 0

    while open_heap:
        _f, _negg, _seq, idx = heapq.heappop(open_heap)
        cur_state, g, _parent, _edge = nodes[idx]
        key = cur_state.plan_key()
        if closed.get(key, 1 << 60) <= g:
            continue
        closed[key] = g

        if G.goal_satisfied(cur_state, goal):
            return _reconstruct(nodes, idx, goal, nav)

        expansions += 1
        if expansions > node_cap:
            raise BudgetExhausted(f"expanded more than {node_cap} nodes")

        for edge, nxt, cost in _edges(cur_state, goal, nav):
            nkey = nxt.plan_key()
            ng = g + cost
            if closed.get(nkey, 1 << 60) <= ng:
                continue
            h = goap_heuristic(nxt, goal)
            if h is None:
                continue
            seq += 1
            nodes.append((nxt, ng, idx, edge))
            heapq.heappush(open_heap, (ng + h, -ng, seq, len(nodes) - 1))

    raise PlanNotFound(f"goal {goal} has no plan within the action budget")


def _reconstruct(nodes, idx: int, goal: G.Goal, nav: NavGraph) -> Plan:
    chain = []
    while idx != -1:
        state, _g, parent, edge = nodes[idx]
        if edge is not None:
            chain.append((nodes[parent][0], edge))
        idx = parent
    chain.reverse()

    actions: list[tuple] = []
    for src_state, (kind, node, action, extra) in chain:
        src: Node = (src_state.chef_pos, src_state.chef_facing)
        if kind == "wait":
            actions.extend([WAIT] * extra)
        else:
            actions.extend(move(d) for d in nav.path(src, node))
            if kind == "act":
                actions.append(action)
    return Plan(tuple(actions), len(actions), goal)


def simulate_plan(state: GameState, plan: Plan) -> GameState:
    """Apply a plan's actions; raises if any action is illegal."""
    for action in plan.actions:
        state, _ = apply_action(state, action)
    return state
