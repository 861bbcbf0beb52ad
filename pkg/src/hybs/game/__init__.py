"""Game core: kitchen layout, rules, state, observations, episode logs."""

from .episode import EpisodeRecorder, dump_log, load_log, replay_log, write_log
from .observe import ChefObservation, WaiterObservation, observe_chef, observe_waiter
from .rules import (
    CHEF_BUDGET,
    DISH_SPECS,
    DISHES,
    EXECUTIVE,
    HIPSTER,
    INGREDIENTS,
    ONION,
    PATIENCE_CHOICES,
    POTATO,
    POTATO_CHOICES,
    PREP_BUDGET,
    PROFILES,
    TIP_TABLES,
    TOMATO,
    TOURIST,
    O,
    P,
    PP,
    TTTT,
    compute_tip,
    normalize_tip,
)
from .scenario import ScenarioConfig, sample_scenario
from .state import (
    ALL_ACTIONS,
    CHEF,
    CLEAR,
    FINISHED,
    INTERACT,
    LEFT,
    NOTHING,
    PLATE,
    PREP,
    SERVED,
    WAIT,
    WAITER,
    WAITING,
    Customer,
    GameState,
    PotState,
    advance_round,
    apply_action,
    held_dish,
    held_ingredient,
    legal_actions,
    move,
    new_game,
    submit_recommendation,
    tick_clock,
    validate_recommendation,
)
from .tiles import DEFAULT_LAYOUT, TileMap, load_layout

__all__ = [name for name in dir() if not name.startswith("_")]
