"""Corpus frequency statistics and bigram association measures.

Counts are collected over every within-sentence adjacent token pair of the
raw corpus, stemmed, so contingency tables have full marginals.  Nine
measures are computed per candidate pair:

    pmi              log2(n11 * N / (n1p * np1))
    t_score          (n11 - m11) / sqrt(n11)
    chi              sum_ij (nij - mij)^2 / mij          (mij = 0 cells skipped)
    log_likelihood   2 * sum_ij nij * ln(nij / mij)      (nij = 0 terms are 0)
    poisson_stirling n11 * (ln(n11 / m11) - 1)
    phi              (n11*n22 - n12*n21)^2 / (n1p*n2p*np1*np2)
    salience         pmi * log2(n11 + 1)
    cooccurrence     f12 / (f1 + f2 - f12)               (occurrence Jaccard)
    significance     f12 / sqrt(f1 * f2)                 (occurrence cosine)

Information-family measures use log base 2, likelihood-family natural log.
Measures requiring n11 >= 1 (pmi, salience, poisson_stirling, t_score)
return 0.0 for unseen bigrams so feature vectors stay finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .corpus import Sentence
from .stemmer import SuffixList, stem_word


@dataclass
class CorpusCounts:
    bigram: dict[tuple[str, str], int] = field(default_factory=dict)
    first_marginal: dict[str, int] = field(default_factory=dict)
    second_marginal: dict[str, int] = field(default_factory=dict)
    unigram: dict[str, int] = field(default_factory=dict)
    total_bigrams: int = 0  # N
    total_tokens: int = 0


@dataclass(frozen=True)
class ContingencyTable:
    n11: float
    n12: float
    n21: float
    n22: float

    @property
    def n1p(self) -> float:
        return self.n11 + self.n12

    @property
    def n2p(self) -> float:
        return self.n21 + self.n22

    @property
    def np1(self) -> float:
        return self.n11 + self.n21

    @property
    def np2(self) -> float:
        return self.n12 + self.n22

    @property
    def total(self) -> float:
        return self.n11 + self.n12 + self.n21 + self.n22

    def expected(self, row_total: float, col_total: float) -> float:
        return row_total * col_total / self.total

    @property
    def m11(self) -> float:
        return self.expected(self.n1p, self.np1)

    @property
    def m12(self) -> float:
        return self.expected(self.n1p, self.np2)

    @property
    def m21(self) -> float:
        return self.expected(self.n2p, self.np1)

    @property
    def m22(self) -> float:
        return self.expected(self.n2p, self.np2)


@dataclass(frozen=True)
class AssociationScores:
    phi: float = 0.0
    pmi: float = 0.0
    salience: float = 0.0
    log_likelihood: float = 0.0
    poisson_stirling: float = 0.0
    chi: float = 0.0
    t_score: float = 0.0
    cooccurrence: float = 0.0
    significance: float = 0.0

    def as_tuple(self) -> tuple[float, ...]:
        return (
            self.phi,
            self.pmi,
            self.salience,
            self.log_likelihood,
            self.poisson_stirling,
            self.chi,
            self.t_score,
            self.cooccurrence,
            self.significance,
        )


def build_counts(sentences: Iterable[Sentence], suffixes: SuffixList) -> CorpusCounts:
    """Count stemmed unigrams and adjacent within-sentence bigrams."""
    counts = CorpusCounts()
    for sentence in sentences:
        stems = [stem_word(t, suffixes) for t in sentence.tokens]
        counts.total_tokens += len(stems)
        for s in stems:
            counts.unigram[s] = counts.unigram.get(s, 0) + 1
        for a, b in zip(stems, stems[1:]):
            counts.bigram[(a, b)] = counts.bigram.get((a, b), 0) + 1
            counts.first_marginal[a] = counts.first_marginal.get(a, 0) + 1
            counts.second_marginal[b] = counts.second_marginal.get(b, 0) + 1
            counts.total_bigrams += 1
    return counts


def contingency(counts: CorpusCounts, w1: str, w2: str) -> ContingencyTable:
    """2x2 observed table for the stemmed bigram (w1, w2).

    An unseen bigram yields n11 = 0, which is a valid table; an empty corpus
    is an error.
    """
    if counts.total_bigrams == 0:
        raise ValueError("empty corpus: no bigrams counted")
    n11 = counts.bigram.get((w1, w2), 0)
    n1p = counts.first_marginal.get(w1, 0)
    np1 = counts.second_marginal.get(w2, 0)
    n = counts.total_bigrams
    return ContingencyTable(
        n11=float(n11),
        n12=float(n1p - n11),
        n21=float(np1 - n11),
        n22=float(n - n1p - np1 + n11),
    )


def score_bigram(table: ContingencyTable) -> AssociationScores:
    """The seven contingency-table measures for one bigram.

    Preconditions: total >= 1 and both n1p, np1 >= 1.  Use scores_for_pair
    for count data that may violate them.
    """
    if table.total < 1:
        raise ValueError("score_bigram requires a non-empty table")
    if table.n1p < 1 or table.np1 < 1:
        raise ValueError("score_bigram requires n1p >= 1 and np1 >= 1")

    n11, n12, n21, n22 = table.n11, table.n12, table.n21, table.n22
    m11, m12, m21, m22 = table.m11, table.m12, table.m21, table.m22
    n = table.total

    chi = 0.0
    for observed, expect in ((n11, m11), (n12, m12), (n21, m21), (n22, m22)):
        if expect > 0:
            chi += (observed - expect) ** 2 / expect

    log_likelihood = 0.0
    for observed, expect in ((n11, m11), (n12, m12), (n21, m21), (n22, m22)):
        if observed > 0:
            log_likelihood += observed * math.log(observed / expect)
    log_likelihood *= 2.0

    denom = table.n1p * table.n2p * table.np1 * table.np2
    phi = (n11 * n22 - n12 * n21) ** 2 / denom if denom > 0 else 0.0

    if n11 > 0:
        pmi = math.log2(n11 * n / (table.n1p * table.np1))
        t_score = (n11 - m11) / math.sqrt(n11)
        poisson_stirling = n11 * (math.log(n11 / m11) - 1.0)
        salience = pmi * math.log2(n11 + 1.0)
    else:
        pmi = t_score = poisson_stirling = salience = 0.0

    return AssociationScores(
        phi=phi,
        pmi=pmi,
        salience=salience,
        log_likelihood=log_likelihood,
        poisson_stirling=poisson_stirling,
        chi=chi,
        t_score=t_score,
    )


def cooccurrence(f1: float, f2: float, f12: float) -> float:
    """Occurrence-set Jaccard: f12 / (f1 + f2 - f12); 0 on a zero denominator."""
    if not (f1 >= f12 >= 0 and f2 >= f12):
        raise ValueError("cooccurrence requires f1 >= f12 >= 0 and f2 >= f12")
    denom = f1 + f2 - f12
    return f12 / denom if denom > 0 else 0.0


def significance(f1: float, f2: float, f12: float) -> float:
    """Occurrence-vector cosine: f12 / sqrt(f1 * f2)."""
    if f1 < 1 or f2 < 1:
        raise ValueError("significance requires f1 >= 1 and f2 >= 1")
    if f12 > f1 or f12 > f2 or f12 < 0:
        raise ValueError("significance requires f1 >= f12 >= 0 and f2 >= f12")
    return f12 / math.sqrt(f1 * f2)


def scores_for_pair(counts: CorpusCounts, stem1: str, stem2: str) -> AssociationScores:
    """All nine measures for a stemmed pair, degrading to zeros on missing data.

    Candidates produced by surface heuristics (e.g. hyphen halves) may never
    occur as corpus tokens; their table preconditions then fail and every
    affected measure is reported as 0 rather than raising.
    """
    table = contingency(counts, stem1, stem2)
    if table.n1p >= 1 and table.np1 >= 1:
        scores = score_bigram(table)
    else:
        scores = AssociationScores()

    f1 = counts.unigram.get(stem1, 0)
    f2 = counts.unigram.get(stem2, 0)
    f12 = counts.bigram.get((stem1, stem2), 0)
    cooc = cooccurrence(f1, f2, f12)
    sig = significance(f1, f2, f12) if f1 >= 1 and f2 >= 1 else 0.0
    return AssociationScores(
        phi=scores.phi,
        pmi=scores.pmi,
        salience=scores.salience,
        log_likelihood=scores.log_likelihood,
        poisson_stirling=scores.poisson_stirling,
        chi=scores.chi,
        t_score=scores.t_score,
        cooccurrence=cooc,
        significance=sig,
    )


def save_counts(counts: CorpusCounts, path: str | Path) -> None:
    """Dump counts as TSV sections so featurization can skip corpus re-reads."""
    lines = [f"#counts\tv1\tN={counts.total_bigrams}\ttokens={counts.total_tokens}"]
    lines.append("#unigrams")
    for stem in sorted(counts.unigram):
        lines.append(f"{stem}\t{counts.unigram[stem]}")
    lines.append("#bigrams")
    for (a, b) in sorted(counts.bigram):
        lines.append(f"{a}\t{b}\t{counts.bigram[(a, b)]}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_counts(path: str | Path) -> CorpusCounts:
    """Inverse of save_counts; marginals are rebuilt from the bigram section."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith("#counts\tv1"):
        raise ValueError(f"{path}: not a counts file")
    header = dict(
        part.split("=", 1) for part in lines[0].split("\t")[2:] if "=" in part
    )
    counts = CorpusCounts(total_tokens=int(header["tokens"]))
    section = ""
    declared_n = int(header["N"])
    for line_no, line in enumerate(lines[1:], start=2):
        if line in ("#unigrams", "#bigrams"):
            section = line
            continue
        if not line.strip():
            continue
        fields = line.split("\t")
        if section == "#unigrams" and len(fields) == 2:
            counts.unigram[fields[0]] = int(fields[1])
        elif section == "#bigrams" and len(fields) == 3:
            a, b, c = fields[0], fields[1], int(fields[2])
            counts.bigram[(a, b)] = c
            counts.first_marginal[a] = counts.first_marginal.get(a, 0) + c
            counts.second_marginal[b] = counts.second_marginal.get(b, 0) + c
            counts.total_bigrams += c
        else:
            raise ValueError(f"{path}:{line_no}: malformed counts line")
    if counts.total_bigrams != declared_n:
        raise ValueError(
            f"{path}: bigram section sums to {counts.total_bigrams}, header says {declared_n}"
        )
    return counts
