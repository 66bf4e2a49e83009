"""Noun WordNet graph, bilingual dictionary lookup, and pair similarity.

The loader consumes the standard WordNet 3.0 noun database layout:
``data.noun`` lines are space-separated
``offset lex_filenum ss_type w_cnt word lex_id ... p_cnt ptr ... | gloss``
with hypernym pointers marked ``@``; ``index.noun`` maps a lemma to its
synset offsets.  A virtual root (offset 0) is attached above every synset
that has no hypernym, so the hypernym graph is always connected and
acyclic.

Word-level similarity is the maximum over all synset pairs of the two
words.  Five measures are produced:

* ``path``: inverse node count of the shortest connecting path through a
  common subsumer (identical synsets -> 1, direct hypernym -> 1/2);
* ``wup``: 2*depth(lcs) / (depth(s1) + depth(s2)), virtual root at depth 1;
* ``lin``: 2*IC(lcs) / (IC(s1) + IC(s2)) with IC(s) = -ln(freq(s)/freq(root));
* ``vector``: cosine of bag-of-words gloss vectors (lowercased, stopwords
  removed) - a first-order approximation of gloss relatedness;
* ``vector_pairs``: mean of the gloss cosine and the cosine of the direct
  hypernyms' concatenated glosses.

Missing words, translations, or synsets degrade to all-zero scores with a
``missing`` flag instead of failing, so feature vectors keep their shape.
"""

from __future__ import annotations

import math
import re
import unicodedata
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources as importlib_resources
from pathlib import Path
from typing import Iterable, Mapping

from .stemmer import SuffixList, stem_word

VIRTUAL_ROOT = 0  # reserved offset for the synthetic root

_WORD_RE = re.compile(r"\w+", re.UNICODE)


class WordNetLoadError(ValueError):
    pass


@dataclass(frozen=True)
class Synset:
    offset: int
    lemmas: tuple[str, ...]
    hypernyms: tuple[int, ...]
    gloss: str


@dataclass(frozen=True)
class WnSimilarityScores:
    lin: float = 0.0
    wup: float = 0.0
    path: float = 0.0
    vector: float = 0.0
    vector_pairs: float = 0.0
    missing: bool = False

    def as_tuple(self) -> tuple[float, ...]:
        return (self.lin, self.wup, self.path, self.vector, self.vector_pairs)


_MISSING = WnSimilarityScores(missing=True)


class WordNetGraph:
    """Immutable hypernym DAG over noun synsets, rooted at a virtual node."""

    def __init__(self, synsets: Mapping[int, Synset], lemma_index: Mapping[str, Iterable[int]]):
        if VIRTUAL_ROOT in synsets:
            raise WordNetLoadError(f"offset {VIRTUAL_ROOT} is reserved for the virtual root")
        self.synsets: dict[int, Synset] = dict(synsets)
        self.lemma_index: dict[str, tuple[int, ...]] = {
            lemma: tuple(offsets) for lemma, offsets in lemma_index.items()
        }
        self._validate()
        self._depth: dict[int, int] = {VIRTUAL_ROOT: 1}
        self._ancestors: dict[int, dict[int, int]] = {}
        self._uniform_ic: dict[int, float] | None = None

    def _validate(self) -> None:
        for synset in self.synsets.values():
            for hyper in synset.hypernyms:
                if hyper not in self.synsets:
                    raise WordNetLoadError(
                        f"synset {synset.offset} points to unknown hypernym {hyper}"
                    )
        for lemma, offsets in self.lemma_index.items():
            for offset in offsets:
                if offset not in self.synsets:
                    raise WordNetLoadError(f"lemma {lemma!r} lists unknown synset {offset}")
        # cycle check: iterative DFS with coloring over hypernym edges
        state: dict[int, int] = {}  # 1 = in progress, 2 = done
        for start in self.synsets:
            if state.get(start) == 2:
                continue
            stack: list[tuple[int, int]] = [(start, 0)]
            while stack:
                node, child_idx = stack[-1]
                if child_idx == 0:
                    state[node] = 1
                hypers = self.synsets[node].hypernyms
                if child_idx < len(hypers):
                    stack[-1] = (node, child_idx + 1)
                    nxt = hypers[child_idx]
                    if state.get(nxt) == 1:
                        raise WordNetLoadError(f"hypernym cycle through synset {nxt}")
                    if state.get(nxt) != 2:
                        stack.append((nxt, 0))
                else:
                    state[node] = 2
                    stack.pop()

    def offsets_for(self, word: str) -> tuple[int, ...]:
        return self.lemma_index.get(word.lower(), ())

    def hypernyms_or_root(self, offset: int) -> tuple[int, ...]:
        hypers = self.synsets[offset].hypernyms
        return hypers if hypers else (VIRTUAL_ROOT,)

    def depth(self, offset: int) -> int:
        """Nodes on the shortest chain from the virtual root, inclusive."""
        cached = self._depth.get(offset)
        if cached is not None:
            return cached
        stack = [offset]
        while stack:
            node = stack[-1]
            if node in self._depth:
                stack.pop()
                continue
            pending = [h for h in self.hypernyms_or_root(node) if h not in self._depth]
            if pending:
                stack.extend(pending)
                continue
            self._depth[node] = 1 + min(self._depth[h] for h in self.hypernyms_or_root(node))
            stack.pop()
        return self._depth[offset]

    def ancestors(self, offset: int) -> dict[int, int]:
        """Every subsumer (self included) mapped to its minimum upward distance."""
        cached = self._ancestors.get(offset)
        if cached is not None:
            return cached
        dist = {offset: 0}
        queue = deque([offset])
        while queue:
            node = queue.popleft()
            if node == VIRTUAL_ROOT:
                continue
            for hyper in self.hypernyms_or_root(node):
                if hyper not in dist:
                    dist[hyper] = dist[node] + 1
                    queue.append(hyper)
        self._ancestors[offset] = dist
        return dist

    def top_level(self) -> list[int]:
        return sorted(o for o, s in self.synsets.items() if not s.hypernyms)

    def uniform_ic(self) -> dict[int, float]:
        """Fallback counts table: every synset counts itself plus its descendants."""
        if self._uniform_ic is None:
            children: dict[int, list[int]] = {o: [] for o in self.synsets}
            for synset in self.synsets.values():
                for hyper in synset.hypernyms:
                    children[hyper].append(synset.offset)
            table: dict[int, float] = {}
            for offset in self.synsets:
                seen = {offset}
                stack = [offset]
                while stack:
                    for child in children[stack.pop()]:
                        if child not in seen:
                            seen.add(child)
                            stack.append(child)
                table[offset] = float(len(seen))
            self._uniform_ic = table
        return self._uniform_ic


def load_wordnet(index_path: str | Path, data_path: str | Path) -> WordNetGraph:
    """Parse index.noun / data.noun into a validated graph."""
    synsets: dict[int, Synset] = {}
    data_path = Path(data_path)
    for line_no, raw in enumerate(data_path.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.startswith(" "):  # blank or license-header line
            continue
        head, _, gloss = raw.partition("|")
        fields = head.split()
        try:
            offset = int(fields[0])
            w_cnt = int(fields[3], 16)
            lemmas = tuple(
                unicodedata.normalize("NFC", fields[4 + 2 * i]).lower() for i in range(w_cnt)
            )
            p_pos = 4 + 2 * w_cnt
            p_cnt = int(fields[p_pos])
            hypernyms = []
            for i in range(p_cnt):
                symbol, target, _pos, _st = fields[p_pos + 1 + 4 * i : p_pos + 5 + 4 * i]
                if symbol == "@":
                    hypernyms.append(int(target))
        except (IndexError, ValueError) as exc:
            raise WordNetLoadError(f"{data_path}:{line_no}: unparsable data line ({exc})") from None
        synsets[offset] = Synset(
            offset=offset, lemmas=lemmas, hypernyms=tuple(hypernyms), gloss=gloss.strip()
        )

    lemma_index: dict[str, list[int]] = {}
    index_path = Path(index_path)
    for line_no, raw in enumerate(index_path.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.startswith(" "):
            continue
        fields = raw.split()
        try:
            lemma = unicodedata.normalize("NFC", fields[0]).lower()
            synset_cnt = int(fields[2])
            offsets = [int(x) for x in fields[-synset_cnt:]]
        except (IndexError, ValueError) as exc:
            raise WordNetLoadError(f"{index_path}:{line_no}: unparsable index line ({exc})") from None
        lemma_index.setdefault(lemma, []).extend(offsets)

    return WordNetGraph(synsets, lemma_index)


def load_ic(path: str | Path) -> dict[int, float]:
    """``offset<TAB>count`` lines; counts are cumulative per subsumer hierarchy."""
    table: dict[int, float] = {}
    for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ValueError(f"{path}:{line_no}: expected offset<TAB>count")
        table[int(fields[0])] = float(fields[1])
    return table


@lru_cache(maxsize=1)
def load_stopwords() -> frozenset[str]:
    """Packaged English stopword list used when building gloss vectors."""
    text = (
        importlib_resources.files("mwekit")
        .joinpath("resources/stopwords_en.txt")
        .read_text(encoding="utf-8")
    )
    return frozenset(w.strip() for w in text.splitlines() if w.strip() and not w.startswith("#"))


def _gloss_bag(gloss: str, stopwords: frozenset[str]) -> dict[str, int]:
    bag: dict[str, int] = {}
    for word in _WORD_RE.findall(gloss.lower()):
        if word not in stopwords:
            bag[word] = bag.get(word, 0) + 1
    return bag


def _cosine(a: Mapping[str, int], b: Mapping[str, int]) -> float:
    if not a or not b:
        return 0.0
    dot = sum(count * b.get(word, 0) for word, count in a.items())
    if dot == 0:
        return 0.0
    norm = math.sqrt(sum(c * c for c in a.values())) * math.sqrt(sum(c * c for c in b.values()))
    return min(1.0, dot / norm)  # guard rounding above 1.0 for identical bags


class _PairScorer:
    """Per-call helper holding the graph, IC table, and gloss-bag cache."""

    def __init__(self, graph: WordNetGraph, ic: Mapping[int, float] | None, stopwords: frozenset[str]):
        self.graph = graph
        self.stopwords = stopwords
        self.ic = dict(ic) if ic is not None else graph.uniform_ic()
        self.root_count = sum(self.ic.get(o, 0.0) for o in graph.top_level())
        self._bags: dict[int, dict[str, int]] = {}
        self._hyper_bags: dict[int, dict[str, int]] = {}

    def info_content(self, offset: int) -> float:
        if offset == VIRTUAL_ROOT:
            return 0.0
        count = self.ic.get(offset, 0.0)
        if count <= 0 or self.root_count <= 0:
            return 0.0
        return max(0.0, -math.log(count / self.root_count))

    def bag(self, offset: int) -> dict[str, int]:
        if offset not in self._bags:
            self._bags[offset] = _gloss_bag(self.graph.synsets[offset].gloss, self.stopwords)
        return self._bags[offset]

    def hyper_bag(self, offset: int) -> dict[str, int]:
        if offset not in self._hyper_bags:
            glosses = " ".join(
                self.graph.synsets[h].gloss for h in self.graph.synsets[offset].hypernyms
            )
            self._hyper_bags[offset] = _gloss_bag(glosses, self.stopwords)
        return self._hyper_bags[offset]

    def lcs(self, up1: Mapping[int, int], up2: Mapping[int, int]) -> int:
        common = set(up1) & set(up2)
        # deepest shared subsumer; break depth ties by IC, then lowest offset
        return max(
            common,
            key=lambda c: (self.graph.depth(c), self.info_content(c), -c),
        )

    def score_synsets(self, s1: int, s2: int) -> tuple[float, float, float, float, float]:
        graph = self.graph
        up1, up2 = graph.ancestors(s1), graph.ancestors(s2)
        common = set(up1) & set(up2)
        path_nodes = min(up1[c] + up2[c] + 1 for c in common)
        path = 1.0 / path_nodes

        lcs = self.lcs(up1, up2)
        wup = 2.0 * graph.depth(lcs) / (graph.depth(s1) + graph.depth(s2))

        ic1, ic2 = self.info_content(s1), self.info_content(s2)
        if ic1 <= 0.0 or ic2 <= 0.0:
            lin = 0.0
        else:
            lin = min(1.0, 2.0 * self.info_content(lcs) / (ic1 + ic2))

        vector = _cosine(self.bag(s1), self.bag(s2))
        vector_pairs = (vector + _cosine(self.hyper_bag(s1), self.hyper_bag(s2))) / 2.0
        return lin, wup, path, vector, vector_pairs


def _best_over_pairs(w1: str, w2: str, scorer: _PairScorer) -> WnSimilarityScores:
    offsets1 = scorer.graph.offsets_for(w1)
    offsets2 = scorer.graph.offsets_for(w2)
    if not offsets1 or not offsets2:
        return _MISSING
    best = [0.0, 0.0, 0.0, 0.0, 0.0]
    for s1 in offsets1:
        for s2 in offsets2:
            for i, value in enumerate(scorer.score_synsets(s1, s2)):
                if value > best[i]:
                    best[i] = value
    return WnSimilarityScores(
        lin=best[0], wup=best[1], path=best[2], vector=best[3], vector_pairs=best[4]
    )


def similarity(
    w1: str,
    w2: str,
    graph: WordNetGraph,
    ic: Mapping[int, float] | None = None,
    stopwords: frozenset[str] | None = None,
) -> WnSimilarityScores:
    """Five-measure similarity between two words, maximized over synset pairs."""
    scorer = _PairScorer(graph, ic, stopwords if stopwords is not None else load_stopwords())
    return _best_over_pairs(w1, w2, scorer)


class BilingualDictionary:
    """Source word -> ordered target translations; first entry wins."""

    def __init__(self, entries: Mapping[str, Iterable[str]]):
        self.entries: dict[str, tuple[str, ...]] = {}
        for source, targets in entries.items():
            targets = tuple(targets)
            if not targets:
                raise ValueError(f"dictionary entry {source!r} has no translations")
            self.entries[unicodedata.normalize("NFC", source)] = targets

    @classmethod
    def from_file(cls, path: str | Path) -> "BilingualDictionary":
        """UTF-8 TSV: ``source<TAB>target1,target2,...``"""
        entries: dict[str, list[str]] = {}
        for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise ValueError(f"{path}:{line_no}: expected source<TAB>translations")
            targets = [t.strip() for t in fields[1].split(",") if t.strip()]
            if not targets:
                raise ValueError(f"{path}:{line_no}: no translations for {fields[0]!r}")
            entries.setdefault(fields[0], []).extend(targets)
        return cls(entries)

    @property
    def headwords(self) -> set[str]:
        return set(self.entries)

    def first(self, word: str) -> str | None:
        targets = self.entries.get(word)
        return targets[0] if targets else None


def translate(word: str, dictionary: BilingualDictionary, suffixes: SuffixList) -> str | None:
    """First dictionary translation; falls back to the stemmed form; None if absent."""
    word = unicodedata.normalize("NFC", word)
    direct = dictionary.first(word)
    if direct is not None:
        return direct
    return dictionary.first(stem_word(word, suffixes))


@dataclass
class SimilarityResources:
    """Everything needed to score a source-language candidate pair.

    One scorer (with its gloss-bag cache) is shared across calls; queries
    are read-only so concurrent use is safe.
    """

    graph: WordNetGraph
    dictionary: BilingualDictionary
    suffixes: SuffixList
    ic: dict[int, float] | None = None
    stopwords: frozenset[str] = field(default_factory=load_stopwords)

    def __post_init__(self) -> None:
        self._scorer = _PairScorer(self.graph, self.ic, self.stopwords)

    def candidate_scores(self, w1: str, w2: str) -> WnSimilarityScores:
        t1 = translate(w1, self.dictionary, self.suffixes)
        t2 = translate(w2, self.dictionary, self.suffixes)
        if t1 is None or t2 is None:
            return _MISSING
        return _best_over_pairs(t1, t2, self._scorer)
