"""Demonstration labeling and per-cluster dataset balancing."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from ..errors import EmptyCluster, MalformedLog
from ..game.episode import ACTION, replay_log
from ..game.observe import observe_chef
from .features import GOAL_INDEX, IDLE, featurize, serve_goal_label, stage_goal_label

Sample = tuple[np.ndarray, int]  # features, goal index
Game = list[Sample]


def label_goals(records: list[dict]) -> Game:
    """Label every chef action's state with the goal its segment ends in.

    The action stream is cut at serve and ingredient-staging events; states
    inside a segment inherit that terminal goal. A trailing segment with no
    terminal interaction is Idle.
    """
    trace = replay_log(records)  # raises MalformedLog on inconsistency
    features: list[np.ndarray] = []
    labels: list[int] = []
    segment_start = 0

    def close_segment(label: tuple, upto: int) -> None:
        nonlocal segment_start
        idx = GOAL_INDEX[label]
        for i in range(segment_start, upto):
            labels[i] = idx
        segment_start = upto

    for record, before, _after in trace:
        if record["event_kind"] != ACTION or record["actor"] != "chef":
            continue
        features.append(featurize(observe_chef(before)))
        labels.append(GOAL_INDEX[IDLE])
        for effect in record["payload"].get("effects", ()):
            if effect["kind"] == "serve":
                close_segment(serve_goal_label(effect["seat"], effect["dish"]), len(labels))
            elif effect["kind"] == "stage" and effect["item"][0] == "ingredient":
                close_segment(stage_goal_label(effect["item"][1]), len(labels))
    # anything after the last boundary keeps the Idle label
    if len(features) != len(labels):
        raise MalformedLog("internal labeling mismatch")
    return list(zip(features, labels))


@dataclass
class LabeledDataset:
    samples: dict[str, list[Sample]]  # user -> labeled (state, goal) pairs
    clusters: dict[str, int]  # user -> cluster id
    games_used: dict[str, int] = field(default_factory=dict)

    @property
    def users(self) -> list[str]:
        return sorted(self.samples)

    @property
    def feature_dim(self) -> int:
        for pairs in self.samples.values():
            if pairs:
                return len(pairs[0][0])
        raise ValueError("empty dataset")

    def total_samples(self) -> int:
        return sum(len(p) for p in self.samples.values())


def balance_dataset(
    per_user_games: dict[str, list[Game]],
    clusters: dict[str, int],
    seed: int = 0,
) -> LabeledDataset:
    """Sample games so every cluster contributes the same count.

    The per-cluster quota is the smallest cluster's total game count; the
    draw is uniform without replacement and fully seeded.
    """
    for user in per_user_games:
        if user not in clusters:
            raise KeyError(f"user {user!r} has no cluster assignment")

    by_cluster: dict[int, list[tuple[str, int]]] = {}
    for user in sorted(per_user_games):
        for i in range(len(per_user_games[user])):
            by_cluster.setdefault(clusters[user], []).append((user, i))
    if not by_cluster:
        raise EmptyCluster("no games at all")
    for cluster_id, games in sorted(by_cluster.items()):
        if not games:
            raise EmptyCluster(f"cluster {cluster_id} has no games")

    quota = min(len(g) for g in by_cluster.values())
    rng = random.Random(seed)
    chosen: list[tuple[str, int]] = []
    for cluster_id in sorted(by_cluster):
        chosen.extend(rng.sample(by_cluster[cluster_id], quota))

    samples: dict[str, list[Sample]] = {}
    games_used: dict[str, int] = {}
    for user, game_index in sorted(chosen):
        samples.setdefault(user, []).extend(per_user_games[user][game_index])
        games_used[user] = games_used.get(user, 0) + 1
    kept_clusters = {u: clusters[u] for u in samples}
    return LabeledDataset(samples=samples, clusters=kept_clusters, games_used=games_used)
