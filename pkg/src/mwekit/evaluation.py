"""k-fold cross-validation, confusion-matrix metrics, and experiment presets.

Folds come from a seeded shuffle with round-robin assignment, so sizes
differ by at most one and identical (n, k, seed) always produce the same
plan - presets compared under one seed share their fold plan.  Metrics are
computed from the single confusion matrix pooled over all folds (per-fold
matrices are also reported).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .features import (
    LABEL_POSITIVE,
    FeatureMask,
    FeatureVector,
    preset_mask,
)
from .forest import TrainConfig, predict, train
from .rng import Rng


@dataclass(frozen=True)
class FoldPlan:
    k: int
    assignments: tuple[int, ...]  # instance index -> fold id
    seed: int

    def fold_sizes(self) -> list[int]:
        sizes = [0] * self.k
        for fold in self.assignments:
            sizes[fold] += 1
        return sizes


@dataclass
class ConfusionMatrix:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def add(self, actual: str, predicted: str) -> None:
        if actual == LABEL_POSITIVE:
            if predicted == LABEL_POSITIVE:
                self.tp += 1
            else:
                self.fn += 1
        else:
            if predicted == LABEL_POSITIVE:
                self.fp += 1
            else:
                self.tn += 1

    def merge(self, other: "ConfusionMatrix") -> None:
        self.tp += other.tp
        self.fp += other.fp
        self.fn += other.fn
        self.tn += other.tn


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f_measure: float
    support: int


def class_metrics_dict(m: ClassMetrics) -> dict:
    return {
        "precision": m.precision,
        "recall": m.recall,
        "f_measure": m.f_measure,
        "support": m.support,
    }


def kfold_split(n: int, k: int, seed: int) -> FoldPlan:
    """Seeded shuffle + round-robin assignment; fold sizes differ by <= 1."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if k > n:
        raise ValueError(f"cannot split {n} instances into {k} folds")
    order = list(range(n))
    Rng(seed).shuffle(order)
    assignments = [0] * n
    for position, instance in enumerate(order):
        assignments[instance] = position % k
    return FoldPlan(k=k, assignments=tuple(assignments), seed=seed)


def _ratio(num: int, denom: int) -> float:
    return num / denom if denom > 0 else 0.0


def _f_measure(p: float, r: float) -> float:
    return 2.0 * p * r / (p + r) if p + r > 0 else 0.0


def metrics(cm: ConfusionMatrix) -> tuple[ClassMetrics, ClassMetrics, float]:
    """Per-class precision/recall/F plus the class-size-weighted F average."""
    if cm.total == 0:
        raise ValueError("cannot compute metrics for an empty confusion matrix")
    p_pos = _ratio(cm.tp, cm.tp + cm.fp)
    r_pos = _ratio(cm.tp, cm.tp + cm.fn)
    pos = ClassMetrics(p_pos, r_pos, _f_measure(p_pos, r_pos), support=cm.tp + cm.fn)
    p_neg = _ratio(cm.tn, cm.tn + cm.fn)
    r_neg = _ratio(cm.tn, cm.tn + cm.fp)
    neg = ClassMetrics(p_neg, r_neg, _f_measure(p_neg, r_neg), support=cm.tn + cm.fp)
    weighted_f = (pos.f_measure * pos.support + neg.f_measure * neg.support) / (
        pos.support + neg.support
    )
    return pos, neg, weighted_f


@dataclass
class EvaluationReport:
    preset: str
    k: int
    seed: int
    train_config: TrainConfig
    positive: ClassMetrics
    negative: ClassMetrics
    weighted_f: float
    pooled: ConfusionMatrix
    per_fold: list[ConfusionMatrix]
    plan: FoldPlan

    def to_dict(self) -> dict:
        return {
            "preset": self.preset,
            "k": self.k,
            "seed": self.seed,
            "train_config": {
                "num_trees": self.train_config.num_trees,
                "features_per_node": self.train_config.features_per_node,
                "seed": self.train_config.seed,
                "min_leaf": self.train_config.min_leaf,
                "max_depth": self.train_config.max_depth,
            },
            "per_class": {
                "positive": class_metrics_dict(self.positive),
                "negative": class_metrics_dict(self.negative),
            },
            "weighted_f": self.weighted_f,
            "pooled_confusion": {
                "tp": self.pooled.tp,
                "fp": self.pooled.fp,
                "fn": self.pooled.fn,
                "tn": self.pooled.tn,
            },
            "per_fold": [
                {"fold": i, "tp": m.tp, "fp": m.fp, "fn": m.fn, "tn": m.tn}
                for i, m in enumerate(self.per_fold)
            ],
            "fold_assignments": list(self.plan.assignments),
        }


def cross_validate_plan(
    dataset: Sequence[FeatureVector],
    mask: FeatureMask,
    train_config: TrainConfig,
    plan: FoldPlan,
) -> EvaluationReport:
    """Train on each fold's complement, predict the fold, pool the confusions."""
    labels = {fv.label for fv in dataset}
    if len(labels) < 2:
        raise ValueError("cross-validation needs both classes in the dataset")
    if len(plan.assignments) != len(dataset):
        raise ValueError("fold plan does not cover the dataset")
    pooled = ConfusionMatrix()
    per_fold = []
    for fold in range(plan.k):
        train_set = [fv for i, fv in enumerate(dataset) if plan.assignments[i] != fold]
        test_set = [fv for i, fv in enumerate(dataset) if plan.assignments[i] == fold]
        forest = train(train_set, mask, train_config)
        cm = ConfusionMatrix()
        for fv in test_set:
            cm.add(actual=fv.label, predicted=predict(forest, fv))
        per_fold.append(cm)
        pooled.merge(cm)
    positive, negative, weighted_f = metrics(pooled)
    return EvaluationReport(
        preset=mask.name,
        k=plan.k,
        seed=plan.seed,
        train_config=train_config,
        positive=positive,
        negative=negative,
        weighted_f=weighted_f,
        pooled=pooled,
        per_fold=per_fold,
        plan=plan,
    )


def cross_validate(
    dataset: Sequence[FeatureVector],
    mask: FeatureMask,
    train_config: TrainConfig,
    k: int,
    seed: int,
) -> EvaluationReport:
    """Seeded-plan convenience wrapper over cross_validate_plan."""
    return cross_validate_plan(dataset, mask, train_config, kfold_split(len(dataset), k, seed))


def run_experiment(
    preset: str,
    feature_matrix: Sequence[FeatureVector],
    k: int,
    seed: int,
    train_config: TrainConfig | None = None,
) -> EvaluationReport:
    """Cross-validate one preset's feature subset over the matrix."""
    config = train_config if train_config is not None else TrainConfig(seed=seed)
    return cross_validate(feature_matrix, preset_mask(preset), config, k, seed)


def format_report_table(reports: Sequence[EvaluationReport]) -> str:
    """Side-by-side system comparison in the weighted-F table style."""
    name_width = max(len("System"), max((len(r.preset) for r in reports), default=0))
    header = (
        f"{'System':<{name_width}}  {'F (weighted)':>12}  {'F_pos':>7}  {'F_neg':>7}  "
        f"{'P_pos':>7}  {'R_pos':>7}"
    )
    lines = [header, "-" * len(header)]
    for r in reports:
        lines.append(
            f"{r.preset:<{name_width}}  {r.weighted_f:>12.3f}  {r.positive.f_measure:>7.3f}  "
            f"{r.negative.f_measure:>7.3f}  {r.positive.precision:>7.3f}  {r.positive.recall:>7.3f}"
        )
    return "\n".join(lines)
