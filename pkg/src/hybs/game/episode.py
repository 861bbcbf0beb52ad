"""Append-only episode log: one JSON object per line, bit-exact per seed.

Records carry {t, round, phase, actor, event_kind, payload}. The first
record holds everything needed to replay: layout text, scenario, seed.
Replaying the logged action stream through the engine must land on the
logged final tip total; anything else marks the log as malformed.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import MalformedLog
from .scenario import ScenarioConfig
from .state import GameState, advance_round, apply_action, new_game, submit_recommendation
from .tiles import load_layout

GAME_START = "game_start"
PHASE_START = "phase_start"
ACTION = "action"
RECOMMENDATION = "recommendation"
ROUND_END = "round_end"
GAME_OVER = "game_over"


class EpisodeRecorder:
    """Collects records for one game in order."""

    def __init__(self, layout_text: str, scenario: ScenarioConfig, seed: int):
        self._records: list[dict] = []
        self._t = 0
        self.record(
            1,
            "prep",
            "system",
            GAME_START,
            {
                "layout": layout_text,
                "scenario": {
                    "potato_count": scenario.potato_count,
                    "profiles": list(scenario.profiles),
                    "patience": list(scenario.patience),
                },
                "seed": seed,
            },
        )

    def record(self, round: int, phase: str, actor: str, event_kind: str, payload: dict) -> None:
        self._records.append(
            {
                "t": self._t,
                "round": round,
                "phase": phase,
                "actor": actor,
                "event_kind": event_kind,
                "payload": payload,
            }
        )
        self._t += 1

    @property
    def records(self) -> list[dict]:
        return list(self._records)


def dump_log(records: list[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in records)


def write_log(records: list[dict], path: str | Path) -> None:
    Path(path).write_text(dump_log(records), encoding="utf-8")


def load_log(source: str | Path) -> list[dict]:
    """Parse a log from a path or from raw JSONL text."""
    if isinstance(source, Path) or not source.lstrip().startswith("{"):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source
    records = []
    for line in text.splitlines():
        if line.strip():
            records.append(json.loads(line))
    return records


def scenario_from_record(record: dict) -> ScenarioConfig:
    sc = record["payload"]["scenario"]
    return ScenarioConfig(
        potato_count=sc["potato_count"],
        profiles=tuple(sc["profiles"]),
        patience=tuple(sc["patience"]),
    )


def replay_log(records: list[dict]) -> list[tuple[dict, GameState, GameState]]:
    """Re-simulate a log; returns (record, state_before, state_after) triples.

    Raises MalformedLog when the log does not start with a game_start record,
    when an action is illegal under replay, or when the final tip total
    disagrees with the logged one.
    """
    if not records or records[0]["event_kind"] != GAME_START:
        raise MalformedLog("log must start with a game_start record")
    start = records[0]["payload"]
    layout = load_layout(start["layout"])
    scenario = scenario_from_record(records[0])
    state = new_game(layout, scenario, start["seed"])

    trace: list[tuple[dict, GameState, GameState]] = []
    logged_total: int | None = None
    for record in records[1:]:
        kind = record["event_kind"]
        before = state
        try:
            if kind == ACTION:
                action = tuple(record["payload"]["action"])
                state, _ = apply_action(state, action)
            elif kind == RECOMMENDATION:
                state = submit_recommendation(
                    state, [tuple(e) for e in record["payload"]["entries"]]
                )
            elif kind == ROUND_END:
                state = advance_round(state)
            elif kind == GAME_OVER:
                logged_total = record["payload"]["tips_total"]
        except Exception as exc:  # noqa: BLE001 - engine errors mean a bad log
            raise MalformedLog(f"replay failed at t={record['t']}: {exc}") from exc
        trace.append((record, before, state))

    if logged_total is not None and logged_total != state.tips_total:
        raise MalformedLog(
            f"replayed tips {state.tips_total} != logged tips {logged_total}"
        )
    return trace


def replay_final_state(records: list[dict]) -> GameState:
    trace = replay_log(records)
    return trace[-1][2] if trace else None
