"""Role-specific views of the game.

The waiter sees who is coming and what they tip, but never the potato stock
or the kitchen's counters. The chef sees the whole kitchen and the active
recommendation, but never customer profiles or future arrivals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .state import CHEF, PREP, WAITER, GameState
from .tiles import TileMap


@dataclass(frozen=True)
class UpcomingCustomer:
    customer_id: str
    seat: int
    profile: str
    tip_table: dict[str, int]


@dataclass(frozen=True)
class WaiterObservation:
    round: int
    upcoming: tuple[UpcomingCustomer, ...]
    later_profiles: tuple[tuple[int, tuple[str, ...]], ...]
    tips_total: int

    def as_payload(self) -> dict:
        return {
            "round": self.round,
            "upcoming": [
                {
                    "customer_id": u.customer_id,
                    "seat": u.seat,
                    "profile": u.profile,
                    "tip_table": dict(u.tip_table),
                }
                for u in self.upcoming
            ],
            "later_profiles": [
                {"chef_round": r, "profiles": list(kinds)} for r, kinds in self.later_profiles
            ],
            "tips_total": self.tips_total,
        }


@dataclass(frozen=True)
class SeatView:
    seat: int
    customer_id: str
    status: str
    patience: int


@dataclass(frozen=True)
class ChefObservation:
    layout: TileMap = field(repr=False)
    round: int = 0
    phase: str = CHEF
    chef_pos: tuple[int, int] = (0, 0)
    chef_facing: str = "N"
    held: tuple = ("nothing",)
    action_points: int = 0
    actions_this_round: int = 0
    pots: tuple[tuple[tuple[int, int], tuple[str, ...], int, str | None], ...] = ()
    counters: tuple[tuple[tuple[int, int], tuple], ...] = ()
    potato_inventory: int = 0
    seats: tuple[SeatView, ...] = ()
    recommendation: tuple[tuple[str, str], ...] = ()
    tips_total: int = 0

    def as_payload(self) -> dict:
        return {
            "round": self.round,
            "phase": self.phase,
            "chef": {
                "pos": list(self.chef_pos),
                "facing": self.chef_facing,
                "held": list(self.held),
                "action_points": self.action_points,
                "actions_this_round": self.actions_this_round,
            },
            "pots": [
                {"pos": list(pos), "contents": list(contents), "progress": progress, "ready": ready}
                for pos, contents, progress, ready in self.pots
            ],
            "counters": [{"pos": list(pos), "item": list(item)} for pos, item in self.counters],
            "potato_inventory": self.potato_inventory,
            "seats": [
                {
                    "seat": s.seat,
                    "customer_id": s.customer_id,
                    "status": s.status,
                    "patience": s.patience,
                }
                for s in self.seats
            ],
            "recommendation": [list(e) for e in self.recommendation],
            "tips_total": self.tips_total,
        }


def observe_waiter(state: GameState) -> WaiterObservation:
    upcoming_round = state.upcoming_chef_round
    upcoming: tuple[UpcomingCustomer, ...] = ()
    later: list[tuple[int, tuple[str, ...]]] = []
    if upcoming_round is not None:
        upcoming = tuple(
            UpcomingCustomer(c.id, c.seat, c.profile, dict(c.tip_table))
            for c in sorted(state.customers_of_round(upcoming_round), key=lambda c: c.seat)
        )
        for r in range(upcoming_round + 1, 4):
            kinds = tuple(
                c.profile
                for c in sorted(state.customers_of_round(r), key=lambda c: c.seat)
            )
            later.append((r, kinds))
    return WaiterObservation(
        round=state.round,
        upcoming=upcoming,
        later_profiles=tuple(later),
        tips_total=state.tips_total,
    )


def observe_chef(state: GameState) -> ChefObservation:
    seats: tuple[SeatView, ...] = ()
    current = state.current_chef_round
    if current is not None:
        seats = tuple(
            SeatView(c.seat, c.id, c.status, c.patience)
            for c in sorted(state.customers_of_round(current), key=lambda c: c.seat)
        )
    return ChefObservation(
        layout=state.layout,
        round=state.round,
        phase=state.phase if state.phase in (PREP, CHEF) else CHEF,
        chef_pos=state.chef_pos,
        chef_facing=state.chef_facing,
        held=state.held,
        action_points=state.action_points,
        actions_this_round=state.actions_this_round,
        pots=tuple(
            (pos, pot.contents, pot.progress, pot.ready)
            for pos, pot in zip(state.layout.pots, state.pots)
        ),
        counters=state.counters,
        potato_inventory=state.potato_inventory,
        seats=seats,
        recommendation=state.active_recommendation or (),
        tips_total=state.tips_total,
    )
