"""Apprentice training: imitation with per-user personalized embeddings.

Each user starts from a uniform random 3-vector. A training step samples one
user's data, loads their embedding, and descends (a) the cross-entropy of
the goal predictor with respect to the predictor parameters and that
embedding, and (b) an embedding-recovery squared error (the mutual
information surrogate) with respect to the decoder parameters and the
embedding. Everything is seeded; retraining with the same seed is
bit-identical.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from ..errors import EmptyCluster, NonFiniteLoss
from .dataset import LabeledDataset
from .features import GOAL_VOCAB
from .nets import MLP, EmbeddingDecoder, GoalPredictor, batch_loss_and_grads

DEFAULT_EPOCHS = 60
DEFAULT_STEP = 0.05
DEFAULT_MI_WEIGHT = 0.5
DEFAULT_HIDDEN = 32
DEFAULT_BATCH = 16


def train_apprentice(
    data: LabeledDataset,
    epochs: int = DEFAULT_EPOCHS,
    step_size: float = DEFAULT_STEP,
    mi_weight: float = DEFAULT_MI_WEIGHT,
    seed: int = 0,
    hidden: int = DEFAULT_HIDDEN,
    batch_size: int = DEFAULT_BATCH,
):
    """Returns (GoalPredictor, EmbeddingDecoder, {user: embedding})."""
    users = data.users
    if not users or data.total_samples() == 0:
        raise ValueError("dataset is empty")
    rng = np.random.default_rng(seed)
    embeddings = {user: rng.random(3) for user in users}
    feature_dim = data.feature_dim
    predictor = GoalPredictor.create(feature_dim, hidden, len(GOAL_VOCAB), rng)
    decoder = EmbeddingDecoder.create(feature_dim, hidden, len(GOAL_VOCAB), rng)

    steps_per_epoch = max(1, data.total_samples() // batch_size)
    for _epoch in range(epochs):
        for _step in range(steps_per_epoch):
            user = users[rng.integers(len(users))]
            pairs = data.samples[user]
            take = min(batch_size, len(pairs))
            idx = rng.integers(len(pairs), size=take)
            features = np.stack([pairs[i][0] for i in idx])
            labels = np.array([pairs[i][1] for i in idx])
            emb = embeddings[user]
            loss, _ce, _mi, pred_grads, dec_grads, demb = batch_loss_and_grads(
                predictor, decoder, emb, features, labels, mi_weight
            )
            if not math.isfinite(loss):
                raise NonFiniteLoss(f"loss diverged to {loss}; lower the step size")
            predictor.net.apply_gradients(pred_grads, step_size)
            decoder.net.apply_gradients(dec_grads, step_size)
            embeddings[user] = emb - step_size * demb
    return predictor, decoder, embeddings


def dataset_cross_entropy(predictor: GoalPredictor, data: LabeledDataset, embeddings) -> float:
    """Mean cross-entropy over the full dataset with each user's embedding."""
    from .nets import softmax

    total, n = 0.0, 0
    for user in data.users:
        pairs = data.samples[user]
        if not pairs:
            continue
        features = np.stack([f for f, _ in pairs])
        labels = np.array([y for _, y in pairs])
        tiled = np.broadcast_to(embeddings[user], (len(labels), 3))
        logits, _ = predictor.net.forward(np.concatenate([features, tiled], axis=1))
        probs = softmax(logits)
        picked = np.clip(probs[np.arange(len(labels)), labels], 1e-300, None)
        total += float(-np.log(picked).sum())
        n += len(labels)
    return total / n


def cluster_embedding(embeddings: dict[str, np.ndarray], members) -> np.ndarray:
    """Mean personalized embedding across the cluster's users."""
    members = list(members)
    if not members:
        raise EmptyCluster("cluster has no members")
    return np.mean([embeddings[u] for u in members], axis=0)


def cluster_embeddings(
    embeddings: dict[str, np.ndarray], clusters: dict[str, int]
) -> dict[int, np.ndarray]:
    out: dict[int, np.ndarray] = {}
    for cluster_id in sorted(set(clusters.values())):
        members = [u for u, c in sorted(clusters.items()) if c == cluster_id]
        out[cluster_id] = cluster_embedding(embeddings, members)
    return out


# ------------------------------------------------------------ artifact file


def _array(a: np.ndarray) -> list:
    return a.tolist()


def model_artifact(
    predictor: GoalPredictor,
    decoder: EmbeddingDecoder,
    user_embeddings: dict[str, np.ndarray],
    clusters: dict[str, int] | None = None,
) -> dict:
    art = {
        "version": 1,
        "feature_dim": predictor.feature_dim,
        "hidden": predictor.net.hidden,
        "goal_vocab": [list(label) for label in GOAL_VOCAB],
        "predictor": {
            "w1": _array(predictor.net.w1),
            "b1": _array(predictor.net.b1),
            "w2": _array(predictor.net.w2),
            "b2": _array(predictor.net.b2),
        },
        "decoder": {
            "w1": _array(decoder.net.w1),
            "b1": _array(decoder.net.b1),
            "w2": _array(decoder.net.w2),
            "b2": _array(decoder.net.b2),
        },
        "user_embeddings": {u: _array(e) for u, e in sorted(user_embeddings.items())},
    }
    if clusters is not None:
        art["user_clusters"] = {u: int(c) for u, c in sorted(clusters.items())}
        art["cluster_embeddings"] = {
            str(cid): _array(vec)
            for cid, vec in cluster_embeddings(user_embeddings, clusters).items()
        }
    return art


def save_model(path: str | Path, artifact: dict) -> None:
    Path(path).write_text(
        json.dumps(artifact, sort_keys=True, separators=(",", ":")) + "\n",
        encoding="utf-8",
    )


def load_model(path: str | Path):
    """Returns (predictor, decoder, user_embeddings, artifact)."""
    artifact = json.loads(Path(path).read_text(encoding="utf-8"))
    if [tuple(label) for label in artifact["goal_vocab"]] != [
        tuple(label) for label in GOAL_VOCAB
    ]:
        raise ValueError("artifact goal vocabulary does not match this build")
    p = artifact["predictor"]
    predictor = GoalPredictor(
        MLP(*(np.array(p[k], dtype=float) for k in ("w1", "b1", "w2", "b2"))),
        artifact["feature_dim"],
    )
    d = artifact["decoder"]
    decoder = EmbeddingDecoder(
        MLP(*(np.array(d[k], dtype=float) for k in ("w1", "b1", "w2", "b2"))),
        artifact["feature_dim"],
        len(GOAL_VOCAB),
    )
    user_embeddings = {
        u: np.array(e, dtype=float) for u, e in artifact["user_embeddings"].items()
    }
    return predictor, decoder, user_embeddings, artifact
