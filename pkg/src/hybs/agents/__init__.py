"""Chef and waiter decision policies, demonstration labeling, and training."""

from .apprentice import apprentice_act, executed_goal_sequence
from .dataset import LabeledDataset, balance_dataset, label_goals
from .features import GOAL_INDEX, GOAL_VOCAB, IDLE, feature_dim, featurize
from .heuristic import (
    ONION_STAGING,
    TOMATO_STAGING,
    HeuristicChefConfig,
    heuristic_act,
    heuristic_select_goals,
    plan_turn,
)
from .nets import EmbeddingDecoder, GoalPredictor, batch_loss_and_grads, softmax
from .training import (
    cluster_embedding,
    cluster_embeddings,
    dataset_cross_entropy,
    load_model,
    model_artifact,
    save_model,
    train_apprentice,
)
from .waiters import GREEDY, RANDOM, scripted_waiter

__all__ = [name for name in dir() if not name.startswith("_")]
