"""Shared test utilities for building and driving game states."""

from dataclasses import replace

from hybs.game import (
    CHEF_BUDGET,
    GameState,
    ScenarioConfig,
    advance_round,
    apply_action,
    new_game,
    submit_recommendation,
)

TOKENS = {
    "N": ("move", "N"),
    "S": ("move", "S"),
    "E": ("move", "E"),
    "W": ("move", "W"),
    "int": ("interact",),
    "clear": ("clear",),
    "wait": ("wait",),
}


def acts(spec: str) -> list[tuple]:
    """Parse 'N N E int wait' into engine actions."""
    return [TOKENS[tok] for tok in spec.split()]


def make_scenario(
    profiles=("tourist",) * 12,
    patience=(120,) * 12,
    potatoes=3,
) -> ScenarioConfig:
    return ScenarioConfig(potato_count=potatoes, profiles=tuple(profiles), patience=tuple(patience))


def fresh_game(layout, scenario=None, seed=0) -> GameState:
    return new_game(layout, scenario or make_scenario(), seed)


def start_chef_round(state: GameState, entries=()) -> GameState:
    """Skip prep and the waiter turn; start chef round 3 with a recommendation."""
    state = advance_round(state)
    return submit_recommendation(state, list(entries))


def run(state: GameState, actions) -> tuple[GameState, list[dict]]:
    events = []
    for action in actions:
        state, ev = apply_action(state, action)
        events.extend(ev)
    return state, events


def with_budget(state: GameState, points: int) -> GameState:
    return replace(state, action_points=points)


assert CHEF_BUDGET == 135
