"""Small dense networks with hand-written gradients.

One hidden tanh layer is the smallest differentiable family that supports
the training scheme, and explicit backprop keeps every gradient checkable
against finite differences.
"""

from __future__ import annotations

import numpy as np


class MLP:
    """x -> tanh(x W1 + b1) W2 + b2, float64 throughout."""

    def __init__(self, w1: np.ndarray, b1: np.ndarray, w2: np.ndarray, b2: np.ndarray):
        self.w1, self.b1, self.w2, self.b2 = w1, b1, w2, b2

    @classmethod
    def create(cls, in_dim: int, hidden: int, out_dim: int, rng: np.random.Generator) -> "MLP":
        scale1 = 1.0 / np.sqrt(in_dim)
        scale2 = 1.0 / np.sqrt(hidden)
        return cls(
            rng.normal(0.0, scale1, size=(in_dim, hidden)),
            np.zeros(hidden),
            rng.normal(0.0, scale2, size=(hidden, out_dim)),
            np.zeros(out_dim),
        )

    @property
    def params(self) -> list[np.ndarray]:
        return [self.w1, self.b1, self.w2, self.b2]

    @property
    def in_dim(self) -> int:
        return self.w1.shape[0]

    @property
    def hidden(self) -> int:
        return self.w1.shape[1]

    @property
    def out_dim(self) -> int:
        return self.w2.shape[1]

    def forward(self, x: np.ndarray):
        z1 = x @ self.w1 + self.b1
        h = np.tanh(z1)
        out = h @ self.w2 + self.b2
        return out, (x, h)

    def backward(self, cache, dout: np.ndarray):
        """Returns (param grads in params order, input grad)."""
        x, h = cache
        dw2 = h.T @ dout
        db2 = dout.sum(axis=0)
        dh = dout @ self.w2.T
        dz1 = dh * (1.0 - h * h)
        dw1 = x.T @ dz1
        db1 = dz1.sum(axis=0)
        dx = dz1 @ self.w1.T
        return [dw1, db1, dw2, db2], dx

    def apply_gradients(self, grads: list[np.ndarray], step: float) -> None:
        for p, g in zip(self.params, grads):
            p -= step * g


def softmax(logits: np.ndarray) -> np.ndarray:
    z = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


class GoalPredictor:
    """(features ++ personal embedding) -> distribution over goals."""

    def __init__(self, net: MLP, feature_dim: int, embedding_dim: int = 3):
        self.net = net
        self.feature_dim = feature_dim
        self.embedding_dim = embedding_dim

    @classmethod
    def create(cls, feature_dim: int, hidden: int, n_goals: int, rng) -> "GoalPredictor":
        return cls(MLP.create(feature_dim + 3, hidden, n_goals, rng), feature_dim)

    def logits(self, features: np.ndarray, embedding: np.ndarray) -> np.ndarray:
        x = np.concatenate([features, embedding])
        out, _ = self.net.forward(x[None, :])
        return out[0]

    def predict_proba(self, features: np.ndarray, embedding: np.ndarray) -> np.ndarray:
        return softmax(self.logits(features, embedding))


class EmbeddingDecoder:
    """(features ++ one-hot goal) -> 3-real embedding estimate."""

    def __init__(self, net: MLP, feature_dim: int, n_goals: int):
        self.net = net
        self.feature_dim = feature_dim
        self.n_goals = n_goals

    @classmethod
    def create(cls, feature_dim: int, hidden: int, n_goals: int, rng) -> "EmbeddingDecoder":
        return cls(MLP.create(feature_dim + n_goals, hidden, 3, rng), feature_dim, n_goals)

    def estimate(self, features: np.ndarray, goal: int) -> np.ndarray:
        onehot = np.zeros(self.n_goals)
        onehot[goal] = 1.0
        out, _ = self.net.forward(np.concatenate([features, onehot])[None, :])
        return out[0]


def batch_loss_and_grads(
    predictor: GoalPredictor,
    decoder: EmbeddingDecoder,
    embedding: np.ndarray,
    features: np.ndarray,
    labels: np.ndarray,
    mi_weight: float,
):
    """Total loss plus gradients for every parameter group.

    Loss = mean cross-entropy of the predictor on the batch, plus
    `mi_weight` times the mean squared error between the decoder's embedding
    estimate (from state and true goal) and the current embedding.

    Returns (loss, ce, mi, predictor_grads, decoder_grads, embedding_grad).
    """
    batch = features.shape[0]
    n_goals = predictor.net.out_dim

    tiled = np.broadcast_to(embedding, (batch, 3))
    xp = np.concatenate([features, tiled], axis=1)
    logits, cache_p = predictor.net.forward(xp)
    probs = softmax(logits)
    picked = probs[np.arange(batch), labels]
    ce = float(-np.log(np.clip(picked, 1e-300, None)).mean())

    dlogits = probs.copy()
    dlogits[np.arange(batch), labels] -= 1.0
    dlogits /= batch
    pred_grads, dxp = predictor.net.backward(cache_p, dlogits)
    demb_ce = dxp[:, predictor.feature_dim :].sum(axis=0)

    onehot = np.zeros((batch, n_goals))
    onehot[np.arange(batch), labels] = 1.0
    xd = np.concatenate([features, onehot], axis=1)
    est, cache_d = decoder.net.forward(xd)
    diff = est - embedding
    mi = float((diff * diff).sum(axis=1).mean())
    dest = (2.0 / batch) * diff
    dec_grads, _ = decoder.net.backward(cache_d, dest)
    dec_grads = [g * mi_weight for g in dec_grads]
    demb_mi = (-2.0 / batch) * diff.sum(axis=0)

    loss = ce + mi_weight * mi
    demb = demb_ce + mi_weight * demb_mi
    return loss, ce, mi, pred_grads, dec_grads, demb
