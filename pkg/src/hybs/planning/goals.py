"""Goal facts: decidable predicates over game states.

A Goal is a conjunction (tuple) of facts. The public vocabulary is
ServeCustomer / StageIngredient / AtCenter; the remaining facts exist so
macro-actions can hand the low-level planner precise single-interaction
targets.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..game.rules import DISH_SPECS
from ..game.state import LEFT, SERVED, GameState


@dataclass(frozen=True)
class ServeCustomer:
    customer_id: str
    dish: str

    def satisfied(self, state: GameState) -> bool:
        c = state.customer_by_id(self.customer_id)
        return c.status == SERVED and c.served_dish == self.dish


@dataclass(frozen=True)
class StageIngredient:
    kind: str
    count: int = 1

    def satisfied(self, state: GameState) -> bool:
        staged = sum(
            1 for _, item in state.counters if item == ("ingredient", self.kind)
        )
        return staged >= self.count


@dataclass(frozen=True)
class AtCenter:
    def satisfied(self, state: GameState) -> bool:
        return state.chef_pos == state.layout.center


@dataclass(frozen=True)
class Hold:
    item: tuple

    def satisfied(self, state: GameState) -> bool:
        return state.held == self.item


@dataclass(frozen=True)
class HoldDish:
    dish: str

    def satisfied(self, state: GameState) -> bool:
        return state.held[0] == "dish" and state.held[1] == self.dish


@dataclass(frozen=True)
class PotContents:
    pot_index: int
    contents: tuple[str, ...]

    def satisfied(self, state: GameState) -> bool:
        return state.pots[self.pot_index].contents == self.contents


@dataclass(frozen=True)
class PotEmpty:
    pot_index: int

    def satisfied(self, state: GameState) -> bool:
        return not state.pots[self.pot_index].contents


@dataclass(frozen=True)
class PotReady:
    pot_index: int
    dish: str | None = None  # None: any finished dish counts

    def satisfied(self, state: GameState) -> bool:
        ready = state.pots[self.pot_index].ready
        return ready is not None and (self.dish is None or ready == self.dish)


@dataclass(frozen=True)
class CounterHolds:
    pos: tuple[int, int]
    item: tuple

    def satisfied(self, state: GameState) -> bool:
        return state.counter_item(self.pos) == self.item


@dataclass(frozen=True)
class AtNode:
    pos: tuple[int, int]
    facing: str

    def satisfied(self, state: GameState) -> bool:
        return state.chef_pos == self.pos and state.chef_facing == self.facing


Goal = tuple  # conjunction of facts


def goal_satisfied(state: GameState, goal: Goal) -> bool:
    return all(fact.satisfied(state) for fact in goal)


def potatoes_in_reach(state: GameState) -> int:
    """Potatoes the chef could still put into a dish (inventory, hand, pots,
    counters). Served or cleared potatoes are gone."""
    total = state.potato_inventory
    if state.held == ("ingredient", "potato"):
        total += 1
    total += sum(1 for _, item in state.counters if item == ("ingredient", "potato"))
    total += sum(sum(1 for k in pot.contents if k == "potato") for pot in state.pots)
    return total


def dish_attainable(state: GameState, dish: str) -> bool:
    """Quick necessary condition for ever holding `dish` from here."""
    if state.held[0] == "dish" and state.held[1] == dish and state.held[2] >= 1:
        return True
    for _, item in state.counters:
        if item[0] == "dish" and item[1] == dish and item[2] >= 1:
            return True
    for pot in state.pots:
        if pot.ready == dish:
            return True
    need_potatoes = sum(1 for k in DISH_SPECS[dish].recipe if k == "potato")
    return need_potatoes <= potatoes_in_reach(state)


def serve_impossible(state: GameState, fact: ServeCustomer) -> bool:
    """True when the serve fact can no longer be satisfied from this state."""
    c = state.customer_by_id(fact.customer_id)
    if c.status == SERVED:
        return c.served_dish != fact.dish
    if c.status == LEFT:
        return True
    if c.round_index != state.current_chef_round:
        return True
    return not dish_attainable(state, fact.dish)


__all__ = [
    "AtCenter",
    "AtNode",
    "CounterHolds",
    "Goal",
    "Hold",
    "HoldDish",
    "PotContents",
    "PotEmpty",
    "PotReady",
    "ServeCustomer",
    "StageIngredient",
    "dish_attainable",
    "goal_satisfied",
    "potatoes_in_reach",
    "serve_impossible",
]
