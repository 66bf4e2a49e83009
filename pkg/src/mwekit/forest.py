"""Random forest classifier, implemented natively.

Each tree is grown on a bootstrap sample (size n, with replacement) of the
training set.  At every node K distinct features are drawn without
replacement from the active mask; for each, every midpoint between
consecutive distinct sorted values is evaluated and the (feature,
threshold) pair with the highest entropy information gain wins.  Exact
gain ties break toward the lowest feature index, then the lowest
threshold.  Growth stops on purity, non-positive gain, min_leaf, or
max_depth; leaves predict their majority class with ties resolved to
negative (a tie should not assert an MWE).

Prediction routes ``value <= threshold`` to the left child and takes the
majority vote over trees, ties again negative.  Out-of-bag error is the
misclassification rate of instances voted on only by trees whose
bootstrap excluded them.

Trees derive per-tree seeds from the forest seed via a documented
splitmix64 mixing step, so parallel and serial training produce identical
forests; the implementation here is serial.  Feature sampling consumes
each tree's stream in depth-first, left-child-first node order.
"""

from __future__ import annotations

import hashlib
import json
import math
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

from .features import (
    LABEL_NEGATIVE,
    LABEL_POSITIVE,
    SLOT_NAMES,
    FeatureMask,
    FeatureVector,
    layout_hash,
)
from .rng import RNG_ID, Rng, derive_seed

FORMAT_VERSION = 1

_NEG, _POS = 0, 1
_CLASS_LABELS = (LABEL_NEGATIVE, LABEL_POSITIVE)


class ModelFormatError(ValueError):
    pass


class LayoutMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class TrainConfig:
    num_trees: int = 10
    features_per_node: int | None = None  # None -> floor(log2 M) + 1
    seed: int = 1
    min_leaf: int = 1
    max_depth: int | None = None

    def __post_init__(self) -> None:
        if self.num_trees < 1:
            raise ValueError("num_trees must be >= 1")
        if self.min_leaf < 1:
            raise ValueError("min_leaf must be >= 1")
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")

    def resolve_k(self, num_active: int) -> int:
        k = self.features_per_node
        if k is None:
            k = int(math.floor(math.log2(num_active))) + 1
        if not 1 <= k <= num_active:
            raise ValueError(f"features_per_node={k} outside [1, {num_active}]")
        return k


@dataclass
class Leaf:
    label: int  # 0 negative, 1 positive
    counts: tuple[int, int]  # (negative, positive) training weight


@dataclass
class Split:
    feature: int
    threshold: float
    left: "Leaf | Split"
    right: "Leaf | Split"


TreeNode = Leaf | Split


@dataclass
class Forest:
    trees: list[TreeNode]
    config: TrainConfig
    mask: FeatureMask
    features_per_node: int
    oob_error: float
    slot_names: tuple[str, ...] = SLOT_NAMES
    feature_layout_hash: str = field(default="")

    def __post_init__(self) -> None:
        if not self.feature_layout_hash:
            self.feature_layout_hash = layout_hash(self.slot_names)


def bootstrap_indices(rng: Rng, n: int) -> list[int]:
    """n draws with replacement from range(n)."""
    return [rng.below(n) for _ in range(n)]


def _entropy(neg: int, pos: int) -> float:
    total = neg + pos
    if total == 0 or neg == 0 or pos == 0:
        return 0.0
    p = pos / total
    q = neg / total
    return -(p * math.log2(p) + q * math.log2(q))


def _leaf(neg: int, pos: int) -> Leaf:
    return Leaf(label=_POS if pos > neg else _NEG, counts=(neg, pos))


def _best_split(
    x: Sequence[Sequence[float]],
    y: Sequence[int],
    indices: Sequence[int],
    feats: Sequence[int],
    min_leaf: int,
) -> tuple[float, int, float] | None:
    """Highest-gain (feature, threshold) over the sampled features.

    Thresholds sweep the sorted node values once per feature with prefix
    label counts, so each candidate boundary is O(1).  Returns None when no
    split has positive gain (or min_leaf forbids all of them).
    """
    total = len(indices)
    pos_total = sum(y[i] for i in indices)
    neg_total = total - pos_total
    parent = _entropy(neg_total, pos_total)
    if parent == 0.0:
        return None

    best: tuple[float, int, float] | None = None
    for f in feats:
        ordered = sorted((x[i][f], y[i]) for i in indices)
        left_pos = 0
        for j in range(total - 1):
            left_pos += ordered[j][1]
            value, nxt = ordered[j][0], ordered[j + 1][0]
            if value == nxt:
                continue
            left_n = j + 1
            right_n = total - left_n
            if left_n < min_leaf or right_n < min_leaf:
                continue
            left_neg = left_n - left_pos
            right_pos = pos_total - left_pos
            right_neg = neg_total - left_neg
            children = (
                left_n * _entropy(left_neg, left_pos) + right_n * _entropy(right_neg, right_pos)
            ) / total
            gain = parent - children
            if gain <= 0.0:
                continue
            threshold = (value + nxt) / 2.0
            # strict > keeps the first (lowest feature, lowest threshold) on ties
            if best is None or gain > best[0]:
                best = (gain, f, threshold)
    return best


def _grow_tree(
    x: Sequence[Sequence[float]],
    y: Sequence[int],
    sample: list[int],
    rng: Rng,
    active: Sequence[int],
    k: int,
    config: TrainConfig,
) -> TreeNode:
    """Depth-first, left-child-first growth with an explicit stack."""

    def make_node(indices: list[int], depth: int) -> TreeNode | tuple:
        pos = sum(y[i] for i in indices)
        neg = len(indices) - pos
        if (
            pos == 0
            or neg == 0
            or len(indices) <= config.min_leaf
            or (config.max_depth is not None and depth >= config.max_depth)
        ):
            return _leaf(neg, pos)
        feats = sorted(rng.sample(active, k))
        found = _best_split(x, y, indices, feats, config.min_leaf)
        if found is None:
            return _leaf(neg, pos)
        _, feature, threshold = found
        left = [i for i in indices if x[i][feature] <= threshold]
        right = [i for i in indices if x[i][feature] > threshold]
        return (feature, threshold, left, right, depth)

    root = make_node(sample, 0)
    if isinstance(root, Leaf):
        return root
    feature, threshold, left_idx, right_idx, depth = root
    root_split = Split(feature=feature, threshold=threshold, left=None, right=None)  # type: ignore[arg-type]
    # stack of (parent, side, indices, depth); LIFO with right pushed first
    # yields the same node order as left-first recursion
    stack: list[tuple[Split, str, list[int], int]] = [
        (root_split, "right", right_idx, depth + 1),
        (root_split, "left", left_idx, depth + 1),
    ]
    while stack:
        parent, side, indices, depth = stack.pop()
        node = make_node(indices, depth)
        if isinstance(node, Leaf):
            setattr(parent, side, node)
            continue
        feature, threshold, left_idx, right_idx, depth = node
        split = Split(feature=feature, threshold=threshold, left=None, right=None)  # type: ignore[arg-type]
        setattr(parent, side, split)
        stack.append((split, "right", right_idx, depth + 1))
        stack.append((split, "left", left_idx, depth + 1))
    return root_split


def _route(node: TreeNode, values: Sequence[float]) -> int:
    while isinstance(node, Split):
        node = node.left if values[node.feature] <= node.threshold else node.right
    return node.label


def train(
    dataset: Sequence[FeatureVector],
    mask: FeatureMask,
    config: TrainConfig = TrainConfig(),
    slot_names: Sequence[str] = SLOT_NAMES,
) -> Forest:
    """Fit a forest of `config.num_trees` trees on the masked dataset."""
    if not dataset:
        raise ValueError("cannot train on an empty dataset")
    x = [fv.values for fv in dataset]
    y = [_POS if fv.label == LABEL_POSITIVE else _NEG for fv in dataset]
    if len(set(y)) == 1:
        warnings.warn(
            "training data contains a single class; every tree degenerates to one leaf",
            stacklevel=2,
        )
    k = config.resolve_k(len(mask.active))
    n = len(dataset)
    trees: list[TreeNode] = []
    oob_votes = [[0, 0] for _ in range(n)]
    for t in range(config.num_trees):
        rng = Rng(derive_seed(config.seed, t))
        sample = bootstrap_indices(rng, n)
        tree = _grow_tree(x, y, sample, rng, mask.active, k, config)
        trees.append(tree)
        for i in sorted(set(range(n)) - set(sample)):
            oob_votes[i][_route(tree, x[i])] += 1
    evaluated = 0
    wrong = 0
    for i, (neg_votes, pos_votes) in enumerate(oob_votes):
        if neg_votes + pos_votes == 0:
            continue  # never out of bag
        evaluated += 1
        predicted = _POS if pos_votes > neg_votes else _NEG
        if predicted != y[i]:
            wrong += 1
    oob_error = wrong / evaluated if evaluated else 0.0
    return Forest(
        trees=trees,
        config=replace(config, features_per_node=k),  # pin the resolved K
        mask=mask,
        features_per_node=k,
        oob_error=oob_error,
        slot_names=tuple(slot_names),
    )


def _check_vector(forest: Forest, vector: FeatureVector) -> None:
    if len(vector.values) != len(forest.slot_names):
        raise LayoutMismatchError(
            f"vector has {len(vector.values)} slots, model expects {len(forest.slot_names)}"
        )


def check_layout(forest: Forest, matrix_layout_hash: str) -> None:
    """Raise when a feature matrix was produced under a different slot layout."""
    if matrix_layout_hash != forest.feature_layout_hash:
        raise LayoutMismatchError(
            f"feature layout hash {matrix_layout_hash} does not match the model's "
            f"{forest.feature_layout_hash}"
        )


def predict(forest: Forest, vector: FeatureVector) -> str:
    """Majority vote over trees; exact ties go to negative."""
    _check_vector(forest, vector)
    pos = sum(1 for tree in forest.trees if _route(tree, vector.values) == _POS)
    return _CLASS_LABELS[_POS if 2 * pos > len(forest.trees) else _NEG]


def predict_proba(forest: Forest, vector: FeatureVector) -> float:
    """Fraction of trees voting positive."""
    _check_vector(forest, vector)
    pos = sum(1 for tree in forest.trees if _route(tree, vector.values) == _POS)
    return pos / len(forest.trees)


def _node_to_record(node: TreeNode) -> dict:
    if isinstance(node, Leaf):
        return {
            "leaf": True,
            "class": _CLASS_LABELS[node.label],
            "counts": list(node.counts),
        }
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "left": _node_to_record(node.left),
        "right": _node_to_record(node.right),
    }


def _node_from_record(record: dict) -> TreeNode:
    if record.get("leaf"):
        try:
            label = _CLASS_LABELS.index(record["class"])
            counts = tuple(record["counts"])
        except (KeyError, ValueError) as exc:
            raise ModelFormatError(f"bad leaf record: {exc}") from None
        return Leaf(label=label, counts=(int(counts[0]), int(counts[1])))
    try:
        return Split(
            feature=int(record["feature"]),
            threshold=float(record["threshold"]),
            left=_node_from_record(record["left"]),
            right=_node_from_record(record["right"]),
        )
    except KeyError as exc:
        raise ModelFormatError(f"bad split record: missing {exc}") from None


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def save(forest: Forest, path: str | Path) -> None:
    """Versioned JSON model file; numbers keep full round-trip precision."""
    trees = [_node_to_record(t) for t in forest.trees]
    document = {
        "format_version": FORMAT_VERSION,
        "rng_id": RNG_ID,
        "seed": forest.config.seed,
        "num_trees": forest.config.num_trees,
        "features_per_node": forest.features_per_node,
        "min_leaf": forest.config.min_leaf,
        "max_depth": forest.config.max_depth,
        "mask_name": forest.mask.name,
        "active_indices": list(forest.mask.active),
        "feature_layout_hash": forest.feature_layout_hash,
        "slot_names": list(forest.slot_names),
        "oob_error": forest.oob_error,
        "checksum": hashlib.sha256(_canonical(trees).encode("utf-8")).hexdigest(),
        "trees": trees,
    }
    Path(path).write_text(_canonical(document) + "\n", encoding="utf-8")


def load(path: str | Path) -> Forest:
    """Inverse of save; verifies format version and tree checksum."""
    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: not a valid model file ({exc})") from None
    if not isinstance(document, dict):
        raise ModelFormatError(f"{path}: not a model document")
    if document.get("format_version") != FORMAT_VERSION:
        raise ModelFormatError(
            f"{path}: unsupported format version {document.get('format_version')!r}"
        )
    if document.get("rng_id") != RNG_ID:
        raise ModelFormatError(f"{path}: unknown rng id {document.get('rng_id')!r}")
    try:
        trees_json = document["trees"]
        expected = document["checksum"]
        config = TrainConfig(
            num_trees=int(document["num_trees"]),
            features_per_node=int(document["features_per_node"]),
            seed=int(document["seed"]),
            min_leaf=int(document["min_leaf"]),
            max_depth=document["max_depth"],
        )
        mask = FeatureMask(
            name=document["mask_name"], active=tuple(int(i) for i in document["active_indices"])
        )
        slot_names = tuple(document["slot_names"])
        oob_error = float(document["oob_error"])
        stored_hash = document["feature_layout_hash"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"{path}: incomplete model header ({exc})") from None
    actual = hashlib.sha256(_canonical(trees_json).encode("utf-8")).hexdigest()
    if actual != expected:
        raise ModelFormatError(f"{path}: checksum mismatch, file corrupted")
    forest = Forest(
        trees=[_node_from_record(t) for t in trees_json],
        config=config,
        mask=mask,
        features_per_node=config.features_per_node or 1,
        oob_error=oob_error,
        slot_names=slot_names,
        feature_layout_hash=stored_hash,
    )
    if len(forest.trees) != config.num_trees:
        raise ModelFormatError(f"{path}: expected {config.num_trees} trees, found {len(forest.trees)}")
    return forest
