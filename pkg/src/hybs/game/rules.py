"""Dish recipes, customer tip tables, and the tip rules.

These constants define the game's economy and are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DegenerateScenario

ONION = "onion"
TOMATO = "tomato"
POTATO = "potato"
INGREDIENTS = (ONION, TOMATO, POTATO)

PP = "PP"
P = "P"
O = "O"
TTTT = "TTTT"
DISHES = (PP, P, O, TTTT)


@dataclass(frozen=True)
class DishSpec:
    name: str
    recipe: tuple[str, ...]  # sorted multiset of ingredient kinds
    cook_time: int  # action points after the last ingredient goes in
    servings: int


DISH_SPECS: dict[str, DishSpec] = {
    PP: DishSpec(PP, (POTATO, POTATO), 1, 1),
    P: DishSpec(P, (POTATO,), 1, 1),
    O: DishSpec(O, (ONION,), 55, 1),
    TTTT: DishSpec(TTTT, (TOMATO,) * 4, 1, 4),
}

RECIPE_TO_DISH: dict[tuple[str, ...], str] = {
    spec.recipe: name for name, spec in DISH_SPECS.items()
}

EXECUTIVE = "executive"
HIPSTER = "hipster"
TOURIST = "tourist"
PROFILES = (EXECUTIVE, HIPSTER, TOURIST)

TIP_TABLES: dict[str, dict[str, int]] = {
    EXECUTIVE: {PP: 100, P: 0, O: 100, TTTT: 0},
    HIPSTER: {PP: 20, P: 20, O: 0, TTTT: 10},
    TOURIST: {PP: 20, P: 20, O: 20, TTTT: 10},
}

PATIENCE_CHOICES = (70, 120)
POTATO_CHOICES = (1, 2, 3, 4, 5)

PREP_BUDGET = 15
CHEF_BUDGET = 135


def dish_from_contents(contents: tuple[str, ...]) -> str | None:
    """Dish produced by exactly these pot contents, or None."""
    return RECIPE_TO_DISH.get(tuple(sorted(contents)))


def extends_some_recipe(contents: tuple[str, ...]) -> bool:
    """True if the multiset is a sub-multiset of at least one recipe."""
    counted = _count(contents)
    for spec in DISH_SPECS.values():
        need = _count(spec.recipe)
        if all(need.get(k, 0) >= v for k, v in counted.items()):
            return True
    return False


def _count(items: tuple[str, ...]) -> dict[str, int]:
    out: dict[str, int] = {}
    for item in items:
        out[item] = out.get(item, 0) + 1
    return out


def compute_tip(profile: str, dish: str, actions_used: int, patience: int) -> int:
    """Tip for serving `dish` as the chef's `actions_used`-th action."""
    if actions_used > patience:
        return 0
    return TIP_TABLES[profile][dish]


def best_tip(profile: str) -> int:
    return max(TIP_TABLES[profile].values())


def normalize_tip(tips_total: int, scenario) -> float:
    """Scale a raw tip sum to [0, 1] against the scenario's ideal upper bound.

    The bound is the sum over all twelve customers of each profile's best
    possible tip, ignoring time and resource limits. Accepts a ScenarioConfig
    or any sequence of profile names.
    """
    profiles = getattr(scenario, "profiles", scenario)
    denom = sum(best_tip(p) for p in profiles)
    if denom <= 0:
        raise DegenerateScenario("no profile in this scenario can tip")
    return min(1.0, max(0.0, tips_total / denom))
