"""Fixed 28-slot feature vectors and the feature-mask presets.

Slot layout (normative for this toolkit):

    0-8    association scores: phi, pmi, salience, log_likelihood,
           poisson_stirling, chi, t_score, cooccurrence, significance
    9-13   lexical-semantic similarity: lin, wup, path, vector, vector_pairs
    14     average component length in Unicode code points
    15-19  binary: hyphenated, within single quote, within bracket, oov,
           reduplicated (identical stems or surfaces)
    20-21  binary: first / second word inflected (surface differs from stem)
    22-24  one-hot POS of first word over (XC, NN, NNP)
    25-27  one-hot POS of second word over (XC, NN, NNP)

Heuristic-only candidates carry no POS evidence and are imputed as NN, the
modal noun tag, so one-hot groups always sum to exactly 1.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .assoc import CorpusCounts, scores_for_pair
from .candidates import Candidate
from .wordnet_sim import SimilarityResources, WnSimilarityScores

SLOT_NAMES: tuple[str, ...] = (
    "phi",
    "pmi",
    "salience",
    "log_likelihood",
    "poisson_stirling",
    "chi",
    "t_score",
    "cooccurrence",
    "significance",
    "lin",
    "wup",
    "path",
    "vector",
    "vector_pairs",
    "avg_word_length",
    "hyphenated",
    "within_quote",
    "within_bracket",
    "oov",
    "reduplicated",
    "first_word_inflected",
    "second_word_inflected",
    "tag1_XC",
    "tag1_NN",
    "tag1_NNP",
    "tag2_XC",
    "tag2_NN",
    "tag2_NNP",
)

NUM_SLOTS = len(SLOT_NAMES)  # 28

ASSOCIATION_SLOTS = tuple(range(0, 9))
WORDNET_SLOTS = tuple(range(9, 14))
REDUPLICATION_SLOT = 19

_TAG_ORDER = ("XC", "NN", "NNP")

LABEL_POSITIVE = "positive"
LABEL_NEGATIVE = "negative"
LABEL_UNKNOWN = "?"


def layout_hash(slot_names: Iterable[str] = SLOT_NAMES) -> str:
    """Checksum of slot semantics; stored in model files and matrix headers."""
    digest = hashlib.sha256("\n".join(slot_names).encode("utf-8")).hexdigest()
    return digest[:16]


LAYOUT_HASH = layout_hash()


@dataclass
class FeatureVector:
    values: list[float]
    label: str
    key: tuple[str, str]

    def __post_init__(self) -> None:
        if len(self.values) != NUM_SLOTS:
            raise ValueError(f"expected {NUM_SLOTS} feature values, got {len(self.values)}")


@dataclass(frozen=True)
class FeatureMask:
    name: str
    active: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.active:
            raise ValueError("a feature mask needs at least one active slot")
        bad = [i for i in self.active if not 0 <= i < NUM_SLOTS]
        if bad:
            raise ValueError(f"mask indices out of range: {bad}")


_PRESETS: dict[str, tuple[int, ...]] = {
    "proposed": tuple(range(NUM_SLOTS)),
    "baseline1": ASSOCIATION_SLOTS,
    "baseline2": WORDNET_SLOTS,
    "baseline3": tuple(
        i for i in range(NUM_SLOTS) if i not in WORDNET_SLOTS and i != REDUPLICATION_SLOT
    ),
}

PRESET_NAMES = tuple(_PRESETS)


def preset_mask(name: str) -> FeatureMask:
    """Feature subsets for the four benchmark system configurations."""
    try:
        return FeatureMask(name=name, active=_PRESETS[name])
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; expected one of {', '.join(_PRESETS)}") from None


def _one_hot(tag: str) -> list[float]:
    effective = tag if tag in _TAG_ORDER else "NN"  # NA imputed as the modal noun tag
    return [1.0 if t == effective else 0.0 for t in _TAG_ORDER]


def featurize(
    candidate: Candidate,
    counts: CorpusCounts,
    wn: SimilarityResources | None = None,
    label: str = LABEL_UNKNOWN,
) -> FeatureVector:
    """Encode one candidate as the 28-slot vector.

    With `wn` absent the similarity slots are zero, mirroring the zero
    scores of a missing-data lookup.
    """
    assoc = scores_for_pair(counts, candidate.stem1, candidate.stem2)
    sims = wn.candidate_scores(candidate.w1, candidate.w2) if wn else WnSimilarityScores()
    values = list(assoc.as_tuple())
    values.extend(sims.as_tuple())
    values.append((len(candidate.w1) + len(candidate.w2)) / 2.0)
    values.append(1.0 if candidate.hyphenated else 0.0)
    values.append(1.0 if candidate.quoted else 0.0)
    values.append(1.0 if candidate.bracketed else 0.0)
    values.append(1.0 if candidate.oov else 0.0)
    reduplicated = candidate.stem1 == candidate.stem2 or candidate.w1 == candidate.w2
    values.append(1.0 if reduplicated else 0.0)
    values.append(1.0 if candidate.w1 != candidate.stem1 else 0.0)
    values.append(1.0 if candidate.w2 != candidate.stem2 else 0.0)
    values.extend(_one_hot(candidate.tag1))
    values.extend(_one_hot(candidate.tag2))
    return FeatureVector(values=values, label=label, key=candidate.key)


def write_matrix(vectors: Iterable[FeatureVector], path: str | Path) -> None:
    """TSV interchange format: header of slot names, then values + label + key."""
    lines = ["\t".join(SLOT_NAMES) + "\tlabel\tstem1\tstem2"]
    for fv in vectors:
        row = [repr(v) for v in fv.values]
        row.extend([fv.label, fv.key[0], fv.key[1]])
        lines.append("\t".join(row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_matrix(path: str | Path) -> tuple[list[FeatureVector], str]:
    """Load a feature matrix; returns (vectors, layout hash of its header)."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ValueError(f"{path}: empty feature matrix")
    header = lines[0].split("\t")
    if len(header) < 4 or header[-3:] != ["label", "stem1", "stem2"]:
        raise ValueError(f"{path}: malformed matrix header")
    slot_names = header[:-3]
    vectors = []
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != len(header):
            raise ValueError(f"{path}:{line_no}: expected {len(header)} fields, got {len(fields)}")
        values = [float(x) for x in fields[: len(slot_names)]]
        label, stem1, stem2 = fields[-3], fields[-2], fields[-1]
        if len(values) != NUM_SLOTS:
            raise ValueError(f"{path}:{line_no}: expected {NUM_SLOTS} feature values")
        vectors.append(FeatureVector(values=values, label=label, key=(stem1, stem2)))
    return vectors, layout_hash(slot_names)
