"""Authoritative game state and the rules that advance it.

A game runs seven rounds: round 1 is the chef's preparation turn (15 action
points), rounds 2/4/6 are waiter turns, rounds 3/5/7 are chef performance
turns (135 action points). Every chef action costs exactly one point; pots
cook and customer patience drains on that same clock.

All operations are pure: they take a state and return a new one plus the
events the step produced. Randomness never enters here; scenarios carry all
sampled values.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..errors import IllegalAction, InvalidRecommendation, PhaseError
from . import tiles
from .rules import (
    CHEF_BUDGET,
    DISH_SPECS,
    POTATO,
    PREP_BUDGET,
    TIP_TABLES,
    TTTT,
    compute_tip,
    dish_from_contents,
    extends_some_recipe,
)
from .scenario import ScenarioConfig
from .tiles import DIR_DELTA, TileMap

PREP = "prep"
WAITER = "waiter"
CHEF = "chef"
FINISHED = "finished"

WAITING = "waiting"
SERVED = "served"
LEFT = "left"

# Held-item encodings. Tuples keep states hashable and cheap to copy.
NOTHING = ("nothing",)
PLATE = ("plate",)


def held_ingredient(kind: str) -> tuple:
    return ("ingredient", kind)


def held_dish(dish: str, servings: int) -> tuple:
    return ("dish", dish, servings)


# Chef actions: ("move", dir), ("interact",), ("clear",), ("wait",).
INTERACT = ("interact",)
CLEAR = ("clear",)
WAIT = ("wait",)


def move(direction: str) -> tuple:
    return ("move", direction)


MOVE_ACTIONS = tuple(move(d) for d in tiles.DIRECTIONS)
ALL_ACTIONS = MOVE_ACTIONS + (INTERACT, CLEAR, WAIT)


@dataclass(frozen=True)
class PotState:
    contents: tuple[str, ...] = ()  # sorted ingredient kinds
    progress: int = 0  # ticks since the contents last formed a full recipe

    @property
    def cooking_dish(self) -> str | None:
        return dish_from_contents(self.contents)

    @property
    def ready(self) -> str | None:
        dish = self.cooking_dish
        if dish is not None and self.progress >= DISH_SPECS[dish].cook_time:
            return dish
        return None


@dataclass(frozen=True)
class Customer:
    id: str
    round_index: int  # chef performance round 1-3
    seat: int
    profile: str
    patience: int
    status: str = WAITING
    tip: int = 0
    served_dish: str | None = None

    @property
    def tip_table(self) -> dict[str, int]:
        return TIP_TABLES[self.profile]


@dataclass(frozen=True)
class GameState:
    layout: TileMap = field(repr=False)
    scenario: ScenarioConfig = field(repr=False)
    seed: int
    round: int = 1
    phase: str = PREP
    chef_pos: tuple[int, int] = (0, 0)
    chef_facing: str = tiles.NORTH
    held: tuple = NOTHING
    action_points: int = PREP_BUDGET
    actions_this_round: int = 0
    pots: tuple[PotState, ...] = ()
    counters: tuple[tuple[tuple[int, int], tuple], ...] = ()  # (pos, item), sorted
    potato_inventory: int = 0
    customers: tuple[Customer, ...] = ()
    active_recommendation: tuple[tuple[str, str], ...] | None = None
    tips_total: int = 0

    # -- lookups ------------------------------------------------------------

    @property
    def current_chef_round(self) -> int | None:
        """Chef performance round index (1-3) during rounds 3/5/7."""
        if self.phase == CHEF:
            return (self.round - 1) // 2
        return None

    @property
    def upcoming_chef_round(self) -> int | None:
        if self.phase == WAITER:
            return self.round // 2
        return None

    def customers_of_round(self, round_index: int) -> tuple[Customer, ...]:
        return tuple(c for c in self.customers if c.round_index == round_index)

    def customer_by_id(self, customer_id: str) -> Customer:
        for c in self.customers:
            if c.id == customer_id:
                return c
        raise KeyError(customer_id)

    def customer_at_seat(self, seat: int) -> Customer | None:
        r = self.current_chef_round
        if r is None:
            return None
        for c in self.customers:
            if c.round_index == r and c.seat == seat:
                return c
        return None

    def counter_item(self, pos: tuple[int, int]) -> tuple | None:
        for p, item in self.counters:
            if p == pos:
                return item
        return None

    def pot_index_at(self, pos: tuple[int, int]) -> int | None:
        try:
            return self.layout.pots.index(pos)
        except ValueError:
            return None

    @property
    def faced_pos(self) -> tuple[int, int]:
        dr, dc = DIR_DELTA[self.chef_facing]
        return (self.chef_pos[0] + dr, self.chef_pos[1] + dc)

    def plan_key(self) -> tuple:
        """Hashable configuration for planners: everything the future depends
        on except the absolute clock (an earlier copy of the same
        configuration dominates a later one)."""
        r = self.current_chef_round or (1 if self.phase == PREP else None)
        statuses = tuple(
            (c.status, c.served_dish)
            for c in self.customers
            if c.round_index == r
        )
        return (
            self.chef_pos,
            self.chef_facing,
            self.held,
            self.pots,
            self.counters,
            self.potato_inventory,
            statuses,
        )


def new_game(layout: TileMap, scenario: ScenarioConfig, seed: int) -> GameState:
    customers = tuple(
        Customer(
            id=f"c{i + 1:02d}",
            round_index=i // 4 + 1,
            seat=i % 4 + 1,
            profile=scenario.profiles[i],
            patience=scenario.patience[i],
        )
        for i in range(12)
    )
    return GameState(
        layout=layout,
        scenario=scenario,
        seed=seed,
        round=1,
        phase=PREP,
        chef_pos=layout.center,
        chef_facing=tiles.NORTH,
        held=NOTHING,
        action_points=PREP_BUDGET,
        pots=tuple(PotState() for _ in layout.pots),
        potato_inventory=scenario.potato_count,
        customers=customers,
    )


# -- legality ----------------------------------------------------------------


def _interaction(state: GameState) -> str | None:
    """Name of the interaction the faced tile admits, or None."""
    pos = state.faced_pos
    if not state.layout.in_bounds(pos):
        return None
    tile = state.layout.tile(pos)
    held = state.held

    if tile.kind == tiles.DISPENSER:
        if held == NOTHING:
            if tile.arg == POTATO and state.potato_inventory < 1:
                return None
            return "pickup_ingredient"
    elif tile.kind == tiles.PLATE_STATION:
        if held == NOTHING:
            return "pickup_plate"
    elif tile.kind == tiles.POT:
        pot = state.pots[state.pot_index_at(pos)]
        if held[0] == "ingredient":
            if extends_some_recipe(pot.contents + (held[1],)):
                return "fill_pot"
        elif held == PLATE:
            # Pot readiness resolves before the interaction, so the tick this
            # action spends counts toward the cook time.
            dish = pot.cooking_dish
            if dish is not None and pot.progress + 1 >= DISH_SPECS[dish].cook_time:
                return "plate_dish"
    elif tile.kind == tiles.COUNTER:
        staged = state.counter_item(pos)
        if held == NOTHING and staged is not None:
            return "counter_pickup"
        if held != NOTHING and staged is None:
            return "stage"
    elif tile.kind == tiles.SEAT:
        customer = state.customer_at_seat(tile.arg)
        if customer is not None and customer.status != SERVED and held[0] == "dish":
            return "serve"
    return None


def legal_actions(state: GameState) -> set[tuple]:
    """Actions the chef may take right now."""
    if state.phase not in (PREP, CHEF):
        raise PhaseError(f"no chef actions during {state.phase}")
    if state.action_points <= 0:
        return set()
    actions: set[tuple] = {WAIT}
    r, c = state.chef_pos
    for d, (dr, dc) in DIR_DELTA.items():
        if state.layout.is_walkable((r + dr, c + dc)):
            actions.add(move(d))
    if _interaction(state) is not None:
        actions.add(INTERACT)
    faced = state.faced_pos
    if (
        state.layout.in_bounds(faced)
        and state.layout.tile(faced).kind == tiles.POT
        and state.pots[state.pot_index_at(faced)].contents
    ):
        actions.add(CLEAR)
    return actions


# -- stepping ----------------------------------------------------------------


def tick_clock(state: GameState, steps: int = 1) -> tuple[GameState, list[dict]]:
    """Advance pots and patience by `steps` action points without moving.

    Factored out so planners can fast-forward through travel; the result is
    identical to spending `steps` points on any mix of actions, as far as
    pots and customers are concerned.
    """
    events: list[dict] = []
    t = state.actions_this_round + steps

    new_pots = []
    for i, pot in enumerate(state.pots):
        dish = pot.cooking_dish
        if dish is None:
            new_pots.append(pot)
            continue
        cook = DISH_SPECS[dish].cook_time
        progress = min(pot.progress + steps, cook)
        if pot.progress < cook <= progress:
            events.append({"kind": "pot_ready", "pot": i, "dish": dish})
        new_pots.append(replace(pot, progress=progress))

    new_customers = state.customers
    current = state.current_chef_round
    if current is not None:
        out = []
        changed = False
        for c in state.customers:
            if c.round_index == current and c.status == WAITING and c.patience < t:
                out.append(replace(c, status=LEFT))
                events.append({"kind": "customer_left", "customer": c.id, "seat": c.seat})
                changed = True
            else:
                out.append(c)
        if changed:
            new_customers = tuple(out)

    return (
        replace(state, pots=tuple(new_pots), customers=new_customers, actions_this_round=t),
        events,
    )


def _set_counter(
    counters: tuple[tuple[tuple[int, int], tuple], ...],
    pos: tuple[int, int],
    item: tuple | None,
) -> tuple[tuple[tuple[int, int], tuple], ...]:
    remaining = [(p, i) for p, i in counters if p != pos]
    if item is not None:
        remaining.append((pos, item))
    remaining.sort(key=lambda e: e[0])
    return tuple(remaining)


def apply_action(state: GameState, action: tuple) -> tuple[GameState, list[dict]]:
    """Apply one chef action; returns the new state and the step's events."""
    if state.phase not in (PREP, CHEF):
        raise PhaseError(f"no chef actions during {state.phase}")
    if action not in legal_actions(state):
        raise IllegalAction(f"{action} is not legal here")

    state = replace(state, action_points=state.action_points - 1)
    state, events = tick_clock(state, 1)
    kind = action[0]

    if kind == "move":
        dr, dc = DIR_DELTA[action[1]]
        pos = (state.chef_pos[0] + dr, state.chef_pos[1] + dc)
        state = replace(state, chef_pos=pos, chef_facing=action[1])
        events.append({"kind": "move", "dir": action[1], "pos": list(pos)})
    elif kind == "wait":
        events.append({"kind": "wait"})
    elif kind == "clear":
        idx = state.pot_index_at(state.faced_pos)
        pot = state.pots[idx]
        events.append({"kind": "pot_cleared", "pot": idx, "contents": list(pot.contents)})
        pots = list(state.pots)
        pots[idx] = PotState()
        state = replace(state, pots=tuple(pots))
    else:
        state, more = _resolve_interact(state)
        events.extend(more)
    return state, events


def _resolve_interact(state: GameState) -> tuple[GameState, list[dict]]:
    what = _interaction(state)
    pos = state.faced_pos
    tile = state.layout.tile(pos)
    events: list[dict] = []

    if what == "pickup_ingredient":
        held = held_ingredient(tile.arg)
        inventory = state.potato_inventory - (1 if tile.arg == POTATO else 0)
        state = replace(state, held=held, potato_inventory=inventory)
        events.append({"kind": "pickup", "item": list(held), "pos": list(pos)})
    elif what == "pickup_plate":
        state = replace(state, held=PLATE)
        events.append({"kind": "pickup", "item": list(PLATE), "pos": list(pos)})
    elif what == "fill_pot":
        idx = state.pot_index_at(pos)
        pot = state.pots[idx]
        ingredient = state.held[1]
        contents = tuple(sorted(pot.contents + (ingredient,)))
        pots = list(state.pots)
        pots[idx] = PotState(contents=contents, progress=0)
        state = replace(state, pots=tuple(pots), held=NOTHING)
        events.append({"kind": "pot_fill", "pot": idx, "ingredient": ingredient})
    elif what == "plate_dish":
        idx = state.pot_index_at(pos)
        pot = state.pots[idx]
        dish = pot.ready
        spec = DISH_SPECS[dish]
        pots = list(state.pots)
        pots[idx] = PotState()
        state = replace(state, pots=tuple(pots), held=held_dish(dish, spec.servings))
        events.append({"kind": "plate_dish", "pot": idx, "dish": dish, "servings": spec.servings})
    elif what == "counter_pickup":
        item = state.counter_item(pos)
        state = replace(state, counters=_set_counter(state.counters, pos, None), held=item)
        events.append({"kind": "counter_pickup", "item": list(item), "pos": list(pos)})
    elif what == "stage":
        item = state.held
        state = replace(state, counters=_set_counter(state.counters, pos, item), held=NOTHING)
        events.append({"kind": "stage", "item": list(item), "pos": list(pos)})
    elif what == "serve":
        customer = state.customer_at_seat(tile.arg)
        _, dish, servings = state.held
        if customer.status == WAITING:
            tip = compute_tip(customer.profile, dish, state.actions_this_round, customer.patience)
            held = NOTHING if servings == 1 else held_dish(dish, servings - 1)
            updated = replace(customer, status=SERVED, tip=tip, served_dish=dish)
            customers = tuple(updated if c.id == customer.id else c for c in state.customers)
            state = replace(
                state,
                held=held,
                customers=customers,
                tips_total=state.tips_total + tip,
            )
            events.append(
                {"kind": "serve", "customer": customer.id, "seat": customer.seat, "dish": dish, "tip": tip}
            )
        else:
            events.append(
                {"kind": "serve_failed", "customer": customer.id, "seat": customer.seat, "dish": dish}
            )
    else:
        raise IllegalAction("nothing to interact with")
    return state, events


# -- round structure -----------------------------------------------------------


def validate_recommendation(
    state: GameState, entries: tuple[tuple[str, str], ...]
) -> None:
    upcoming = state.upcoming_chef_round
    if upcoming is None:
        raise PhaseError("recommendations are only accepted during a waiter turn")
    valid_ids = {c.id for c in state.customers_of_round(upcoming)}
    seen: set[str] = set()
    for customer_id, dish in entries:
        if customer_id not in valid_ids:
            raise InvalidRecommendation(f"{customer_id} is not in round {upcoming}")
        if customer_id in seen:
            raise InvalidRecommendation(f"{customer_id} recommended twice")
        if dish not in DISH_SPECS:
            raise InvalidRecommendation(f"unknown dish {dish!r}")
        seen.add(customer_id)


def submit_recommendation(
    state: GameState, entries: tuple[tuple[str, str], ...] | list
) -> GameState:
    """Record the waiter's priority-ordered assignments and start the chef turn.

    An empty list is a legal abstention; the chef may also serve customers
    the waiter never mentioned.
    """
    entries = tuple((str(c), str(d)) for c, d in entries)
    validate_recommendation(state, entries)
    return replace(
        state,
        active_recommendation=entries,
        round=state.round + 1,
        phase=CHEF,
        action_points=CHEF_BUDGET,
        actions_this_round=0,
    )


def advance_round(state: GameState) -> GameState:
    """End the current chef turn: clear pots, drop unstorable dishes, move on.

    Staged ingredients, plates, and multi-serving tomato dishes survive on
    counters (and in hand); everything else perishes. Unserved customers of
    the finished round leave.
    """
    if state.phase not in (PREP, CHEF):
        raise PhaseError(f"cannot advance from {state.phase}")

    def keeps(item: tuple) -> bool:
        return item[0] != "dish" or item[1] == TTTT

    counters = tuple((p, i) for p, i in state.counters if keeps(i))
    held = state.held if keeps(state.held) else NOTHING

    customers = state.customers
    ending = state.current_chef_round
    if ending is not None:
        customers = tuple(
            replace(c, status=LEFT)
            if c.round_index == ending and c.status == WAITING
            else c
            for c in customers
        )

    if state.round >= 7:
        return replace(
            state,
            phase=FINISHED,
            pots=tuple(PotState() for _ in state.pots),
            counters=counters,
            held=held,
            customers=customers,
            active_recommendation=None,
            action_points=0,
            actions_this_round=0,
        )
    return replace(
        state,
        round=state.round + 1,
        phase=WAITER,
        pots=tuple(PotState() for _ in state.pots),
        counters=counters,
        held=held,
        customers=customers,
        active_recommendation=None,
        action_points=0,
        actions_this_round=0,
    )
