"""Randomized scenario sampling: potatoes, customer profiles, patience."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .rules import PATIENCE_CHOICES, POTATO_CHOICES, PROFILES


@dataclass(frozen=True)
class ScenarioConfig:
    """One game's random draw: potato stock plus twelve customers.

    Customers are ordered by (chef round 1-3, seat 1-4); index i covers
    round i // 4 + 1, seat i % 4 + 1.
    """

    potato_count: int
    profiles: tuple[str, ...]  # 12 entries
    patience: tuple[int, ...]  # 12 entries

    def __post_init__(self) -> None:
        if len(self.profiles) != 12 or len(self.patience) != 12:
            raise ValueError("a scenario needs exactly 12 customers")
        if self.potato_count < 0:
            raise ValueError("potato count must be non-negative")
        if any(p <= 0 for p in self.patience):
            raise ValueError("patience must be positive")


def sample_scenario(seed: int) -> ScenarioConfig:
    """Draw a scenario uniformly: potatoes from {1..5}, each profile from the
    three kinds, each patience from {70, 120}. Deterministic in the seed."""
    rng = random.Random(seed)
    potato_count = rng.choice(POTATO_CHOICES)
    profiles = tuple(rng.choice(PROFILES) for _ in range(12))
    patience = tuple(rng.choice(PATIENCE_CHOICES) for _ in range(12))
    return ScenarioConfig(potato_count, profiles, patience)
