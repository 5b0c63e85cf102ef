"""Decision-tree ensemble and impurity-reduction feature importances.

A small bagged CART forest for binary targets.  It exists to produce
importance scores: per split, the Gini impurity drop; per feature, the sum
of drops over the nodes that split on it; per ensemble, the mean over
trees.  Gains are summed unweighted by default (each split counts at face
value regardless of node size); ``weighted=True`` scales each gain by the
node's sample share, which is the convention most tree libraries use.

Induction is deterministic: candidate thresholds are midpoints between
consecutive distinct sorted values, ties in gain go to the lowest feature
index and then the lowest threshold, and nodes are partitioned by value
order so the result depends only on the multiset of rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CountMismatch, EmptyNode

__all__ = [
    "Dataset",
    "TrainParams",
    "TreeNode",
    "TreeEnsemble",
    "gini_impurity",
    "weighted_child_impurity",
    "split_gain",
    "train_tree",
    "train_forest",
    "tree_importance",
    "ensemble_importance",
]


@dataclass(frozen=True)
class Dataset:
    """Feature matrix plus a binary {0, 1} target."""

    feature_names: tuple[str, ...]
    X: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:
        if self.X.ndim != 2:
            raise ValueError("X must be 2-dimensional")
        if self.X.shape[1] != len(self.feature_names):
            raise ValueError("feature_names length must match X columns")
        if self.X.shape[0] != self.y.shape[0]:
            raise ValueError("X and y row counts differ")
        if self.X.shape[0] < 2:
            raise ValueError("need at least 2 samples")
        if not np.isin(self.y, (0, 1)).all():
            raise ValueError("target must be binary 0/1")


@dataclass(frozen=True)
class TrainParams:
    trees: int = 25
    max_depth: int = 6
    min_samples_split: int = 2
    bootstrap: bool = True
    seed: int = 0


@dataclass(frozen=True)
class TreeNode:
    """Internal split node or leaf; leaves have ``feature`` None."""

    sample_count: int
    impurity: float
    class_counts: tuple[int, int]
    feature: int | None = None
    threshold: float | None = None
    gain: float | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.feature is None


@dataclass(frozen=True)
class TreeEnsemble:
    trees: tuple[TreeNode, ...]
    feature_names: tuple[str, ...]
    params: TrainParams


def gini_impurity(class_counts: tuple[int, int]) -> float:
    """1 - p0^2 - p1^2 for a two-class node."""
    c0, c1 = class_counts
    total = c0 + c1
    if total == 0:
        raise EmptyNode("impurity of an empty node is undefined")
    p0 = c0 / total
    p1 = c1 / total
    return 1.0 - p0 * p0 - p1 * p1


def weighted_child_impurity(
    parent_count: int,
    left: tuple[int, float],
    right: tuple[int, float],
) -> float:
    """Post-split impurity: child impurities weighted by sample share."""
    (n_left, i_left), (n_right, i_right) = left, right
    if n_left + n_right != parent_count:
        raise CountMismatch(
            f"children hold {n_left} + {n_right} samples, parent holds {parent_count}"
        )
    if n_left < 1 or n_right < 1:
        raise CountMismatch("both children need at least one sample")
    return (n_left / parent_count) * i_left + (n_right / parent_count) * i_right


def split_gain(
    node_impurity: float,
    parent_count: int,
    left: tuple[int, float],
    right: tuple[int, float],
) -> float:
    """Impurity reduction achieved by a split; >= 0 for Gini."""
    return node_impurity - weighted_child_impurity(parent_count, left, right)


def _best_split(X: np.ndarray, y: np.ndarray, impurity: float):
    """Search all (feature, boundary) candidates; return the best or None.

    Gains are computed elementwise with the exact expression used by
    ``split_gain`` so that equal-gain candidates compare as exactly equal
    floats and the (lowest feature, lowest threshold) tie rule is sound.
    """
    n = len(y)
    best = None  # (gain, feature, left_value, threshold, left_count)
    for feat in range(X.shape[1]):
        col = X[:, feat]
        order = np.argsort(col, kind="stable")
        sv = col[order]
        sy = y[order]
        boundaries = np.nonzero(sv[:-1] < sv[1:])[0]
        if len(boundaries) == 0:
            continue
        ones = np.cumsum(sy)
        n_left = boundaries + 1
        n_right = n - n_left
        left_ones = ones[boundaries]
        right_ones = ones[-1] - left_ones
        left_zeros = n_left - left_ones
        right_zeros = n_right - right_ones
        # squares and weights spelled as plain products so scalar recomputation
        # (e.g. by an enumeration check) reproduces these floats exactly
        lz, lo = left_zeros / n_left, left_ones / n_left
        rz, ro = right_zeros / n_right, right_ones / n_right
        gini_left = 1.0 - lz * lz - lo * lo
        gini_right = 1.0 - rz * rz - ro * ro
        gains = impurity - (
            (n_left / n) * gini_left + (n_right / n) * gini_right
        )
        k = int(np.argmax(gains))
        gain = float(gains[k])
        if best is None or gain > best[0]:
            b = boundaries[k]
            threshold = float((sv[b] + sv[b + 1]) / 2.0)
            best = (gain, feat, float(sv[b]), threshold, int(n_left[k]))
    return best


def _grow(X: np.ndarray, y: np.ndarray, depth: int, params: TrainParams) -> TreeNode:
    c1 = int(y.sum())
    counts = (len(y) - c1, c1)
    impurity = gini_impurity(counts)
    node = dict(sample_count=len(y), impurity=impurity, class_counts=counts)
    if (
        depth >= params.max_depth
        or len(y) < params.min_samples_split
        or impurity == 0.0
    ):
        return TreeNode(**node)
    best = _best_split(X, y, impurity)
    if best is None or best[0] <= 0.0:
        return TreeNode(**node)
    gain, feat, left_value, threshold, _ = best
    mask = X[:, feat] <= left_value
    return TreeNode(
        **node,
        feature=feat,
        threshold=threshold,
        gain=gain,
        left=_grow(X[mask], y[mask], depth + 1, params),
        right=_grow(X[~mask], y[~mask], depth + 1, params),
    )


def train_tree(data: Dataset, params: TrainParams | None = None) -> TreeNode:
    """Grow one tree by greedy impurity-reduction induction."""
    params = params or TrainParams()
    X = np.asarray(data.X, dtype=np.float64)
    y = np.asarray(data.y, dtype=np.int64)
    return _grow(X, y, 0, params)


def train_forest(data: Dataset, params: TrainParams | None = None) -> TreeEnsemble:
    """Train ``params.trees`` trees on bootstrap resamples.

    Tree t draws its resample from ``default_rng(seed + t)``, so parallel
    and serial training (and repeated runs) build identical ensembles.
    """
    params = params or TrainParams()
    if params.trees < 1:
        raise ValueError("tree count must be >= 1")
    X = np.asarray(data.X, dtype=np.float64)
    y = np.asarray(data.y, dtype=np.int64)
    n = len(y)
    trees = []
    for t in range(params.trees):
        if params.bootstrap:
            rng = np.random.default_rng(params.seed + t)
            idx = rng.integers(0, n, size=n)
            trees.append(_grow(X[idx], y[idx], 0, params))
        else:
            trees.append(_grow(X, y, 0, params))
    return TreeEnsemble(
        trees=tuple(trees), feature_names=data.feature_names, params=params
    )


def tree_importance(
    tree: TreeNode, n_features: int, weighted: bool = False
) -> list[float]:
    """Per-feature sum of split gains over the nodes using that feature."""
    gains: list[list[float]] = [[] for _ in range(n_features)]
    root_count = tree.sample_count

    def visit(node: TreeNode) -> None:
        if node.is_leaf:
            return
        w = node.sample_count / root_count if weighted else 1.0
        gains[node.feature].append(w * node.gain)
        visit(node.left)
        visit(node.right)

    visit(tree)
    return [math.fsum(g) for g in gains]


def ensemble_importance(
    ensemble: TreeEnsemble, weighted: bool = False
) -> dict[str, float]:
    """Mean of the per-tree importance vectors, keyed by feature name."""
    n_features = len(ensemble.feature_names)
    per_tree = [tree_importance(t, n_features, weighted) for t in ensemble.trees]
    b = len(ensemble.trees)
    return {
        name: math.fsum(vec[i] for vec in per_tree) / b
        for i, name in enumerate(ensemble.feature_names)
    }
