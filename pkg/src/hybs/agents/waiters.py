"""Scripted waiter policies for headless evaluation."""

from __future__ import annotations

import random

from ..game.observe import WaiterObservation
from ..game.rules import DISH_SPECS, DISHES

GREEDY = "greedy"
RANDOM = "random"


def _greedy_dish(tip_table: dict[str, int]) -> str:
    """Highest tip; ties prefer fewer ingredients, then non-pot-hogging
    dishes (onion soup last), then declaration order."""
    def key(dish: str):
        return (
            -tip_table[dish],
            len(DISH_SPECS[dish].recipe),
            1 if dish == "O" else 0,
            DISHES.index(dish),
        )

    return min(DISHES, key=key)


def scripted_waiter(
    obs: WaiterObservation, policy: str = GREEDY, seed: int = 0
) -> list[tuple[str, str]]:
    """Priority-ordered (customer_id, dish) entries for the upcoming round."""
    if policy == GREEDY:
        picks = [
            (u.customer_id, _greedy_dish(u.tip_table), u.tip_table)
            for u in obs.upcoming
        ]
        picks.sort(key=lambda e: (-e[2][e[1]], e[0]))
        return [(cid, dish) for cid, dish, _ in picks]
    if policy == RANDOM:
        rng = random.Random(seed)
        entries = [(u.customer_id, rng.choice(DISHES)) for u in obs.upcoming]
        rng.shuffle(entries)
        return entries
    raise ValueError(f"unknown waiter policy {policy!r}")
