"""Fixed-length state features and the high-level goal vocabulary.

Features come from the chef's observation only: chef location (one-hot),
per-tile object codes, the waiter's per-seat dish assignments, which seats
were already served, and the held object. The goal vocabulary is every
(seat, dish) serve, one staging goal per ingredient, and Idle.
"""

from __future__ import annotations

import numpy as np

from ..game.observe import ChefObservation
from ..game.rules import DISHES, INGREDIENTS
from ..game.tiles import TileMap

GOAL_VOCAB: tuple[tuple, ...] = tuple(
    ("serve", seat, dish) for seat in (1, 2, 3, 4) for dish in DISHES
) + tuple(("stage", kind) for kind in INGREDIENTS) + (("idle",),)

GOAL_INDEX = {label: i for i, label in enumerate(GOAL_VOCAB)}

_ITEM_CODE = {
    ("nothing",): 0.0,
    ("ingredient", "onion"): 1.0,
    ("ingredient", "tomato"): 2.0,
    ("ingredient", "potato"): 3.0,
    ("plate",): 4.0,
}
_DISH_CODE = {dish: 5.0 + i for i, dish in enumerate(DISHES)}


def _item_code(item: tuple) -> float:
    if item[0] == "dish":
        return _DISH_CODE[item[1]]
    return _ITEM_CODE.get(tuple(item), 0.0)


def feature_dim(layout: TileMap) -> int:
    return 2 * layout.width * layout.height + 9


def featurize(obs: ChefObservation) -> np.ndarray:
    """Observation -> fixed-length float vector (pure, deterministic)."""
    layout = obs.layout
    w, h = layout.width, layout.height
    loc = np.zeros(w * h)
    loc[obs.chef_pos[0] * w + obs.chef_pos[1]] = 1.0

    objects = np.zeros(w * h)
    for pos, item in obs.counters:
        objects[pos[0] * w + pos[1]] = _item_code(item) / 8.0
    for pos, contents, _progress, ready in obs.pots:
        code = len(contents) / 4.0 + (0.5 if ready else 0.0)
        objects[pos[0] * w + pos[1]] = code

    assigned = np.zeros(4)
    seat_of = {s.customer_id: s.seat for s in obs.seats}
    for customer_id, dish in obs.recommendation:
        seat = seat_of.get(customer_id)
        if seat is not None:
            assigned[seat - 1] = (DISHES.index(dish) + 1) / 4.0

    served = np.zeros(4)
    for s in obs.seats:
        if s.status == "served":
            served[s.seat - 1] = 1.0

    held = np.array([_item_code(obs.held) / 8.0])
    return np.concatenate([loc, objects, assigned, served, held])


def serve_goal_label(seat: int, dish: str) -> tuple:
    return ("serve", seat, dish)


def stage_goal_label(kind: str) -> tuple:
    return ("stage", kind)


IDLE = ("idle",)
