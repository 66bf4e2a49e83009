"""Candidate bigram extraction, deduplication, and gold labeling.

Two extraction paths feed one candidate pool:

* the chunk rule: adjacent noun-noun token pairs (tags NN/NNP/XC) inside a
  single NP chunk, number pairs excluded;
* surface heuristics over unchunked sentences: hyphenated tokens,
  reduplicated neighbours, bigrams inside single quotes or round brackets,
  and adjacent out-of-vocabulary pairs.

Candidates are typed by their stemmed pair, so inflectional variants pool
their occurrence counts.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import NOUN_TAGS, ChunkedSentence, Sentence
from .stemmer import SuffixList, stem_word

TAG_NA = "NA"  # heuristic-only candidates carry no POS information

FLAG_NAMES = ("chunk", "hyphenated", "quoted", "bracketed", "oov", "reduplicated")

_OPEN_QUOTES = {"'", "‘"}
_CLOSE_QUOTES = {"'", "’"}
_OPEN_BRACKET = "("
_CLOSE_BRACKET = ")"
_ENCLOSURE_CHARS = _OPEN_QUOTES | _CLOSE_QUOTES | {_OPEN_BRACKET, _CLOSE_BRACKET}


@dataclass
class Candidate:
    w1: str
    w2: str
    stem1: str
    stem2: str
    occurrences: int = 1
    from_chunk_rule: bool = False
    hyphenated: bool = False
    quoted: bool = False
    bracketed: bool = False
    oov: bool = False
    reduplicated: bool = False
    tag1: str = TAG_NA
    tag2: str = TAG_NA

    @property
    def key(self) -> tuple[str, str]:
        return (self.stem1, self.stem2)

    @property
    def flags(self) -> tuple[str, ...]:
        pairs = zip(
            FLAG_NAMES,
            (
                self.from_chunk_rule,
                self.hyphenated,
                self.quoted,
                self.bracketed,
                self.oov,
                self.reduplicated,
            ),
        )
        return tuple(name for name, on in pairs if on)


def _is_numeric(word: str, number_lexicon: frozenset[str] | set[str]) -> bool:
    if word in number_lexicon:
        return True
    if not word:
        return False
    # ASCII digits or Bengali digits U+09E6..U+09EF
    return all(c.isascii() and c.isdigit() or "০" <= c <= "৯" for c in word)


def is_number_pair(w1: str, w2: str, number_lexicon: frozenset[str] | set[str]) -> bool:
    """True iff both tokens are numeric (digit strings or lexicon entries)."""
    return _is_numeric(w1, number_lexicon) and _is_numeric(w2, number_lexicon)


def _merge_event(
    pool: dict[tuple[str, str], Candidate], cand: Candidate
) -> None:
    existing = pool.get(cand.key)
    if existing is None:
        pool[cand.key] = cand
        return
    existing.occurrences += cand.occurrences
    existing.from_chunk_rule |= cand.from_chunk_rule
    existing.hyphenated |= cand.hyphenated
    existing.quoted |= cand.quoted
    existing.bracketed |= cand.bracketed
    existing.oov |= cand.oov
    existing.reduplicated |= cand.reduplicated
    # the chunk rule carries POS evidence; heuristic members do not
    if existing.tag1 == TAG_NA and cand.tag1 != TAG_NA:
        existing.w1, existing.w2 = cand.w1, cand.w2
        existing.tag1, existing.tag2 = cand.tag1, cand.tag2


def _sorted_pool(pool: dict[tuple[str, str], Candidate]) -> list[Candidate]:
    return [pool[key] for key in sorted(pool)]


def extract_chunk_candidates(
    sentences: Iterable[ChunkedSentence],
    suffixes: SuffixList,
    number_lexicon: frozenset[str] | set[str] = frozenset(),
) -> list[Candidate]:
    """Adjacent noun-noun pairs within one NP chunk, number pairs excluded."""
    pool: dict[tuple[str, str], Candidate] = {}
    for sentence in sentences:
        for chunk in sentence.np_chunks():
            for left, right in zip(chunk, chunk[1:]):
                if left.pos_tag not in NOUN_TAGS or right.pos_tag not in NOUN_TAGS:
                    continue
                if is_number_pair(left.surface, right.surface, number_lexicon):
                    continue
                _merge_event(
                    pool,
                    Candidate(
                        w1=left.surface,
                        w2=right.surface,
                        stem1=stem_word(left.surface, suffixes),
                        stem2=stem_word(right.surface, suffixes),
                        from_chunk_rule=True,
                        tag1=left.pos_tag,
                        tag2=right.pos_tag,
                    ),
                )
    return _sorted_pool(pool)


def _detach_enclosures(tokens: Sequence[str]) -> list[tuple[str, bool]]:
    """Split leading/trailing quote and bracket characters into delimiter tokens.

    Returns (token, is_delimiter) pairs.  "'nano" becomes ("'", True),
    ("nano", False), so enclosure patterns match whether or not the source
    text spaced its punctuation.
    """
    out: list[tuple[str, bool]] = []
    for token in tokens:
        leading: list[str] = []
        trailing: list[str] = []
        core = token
        while core and core[0] in _ENCLOSURE_CHARS:
            leading.append(core[0])
            core = core[1:]
        while core and core[-1] in _ENCLOSURE_CHARS:
            trailing.append(core[-1])
            core = core[:-1]
        out.extend((ch, True) for ch in leading)
        if core:
            out.append((core, False))
        out.extend((ch, True) for ch in reversed(trailing))
    return out


def _in_vocab(word: str, vocab: frozenset[str] | set[str], suffixes: SuffixList) -> bool:
    return word in vocab or stem_word(word, suffixes) in vocab


def extract_heuristic_candidates(
    sentences: Iterable[Sentence],
    vocab: frozenset[str] | set[str] | None,
    suffixes: SuffixList,
    number_lexicon: frozenset[str] | set[str] = frozenset(),
) -> list[Candidate]:
    """Surface-pattern candidates from unchunked sentences.

    Per sentence the rules fire on a stream where quote/bracket characters
    are detached into delimiter tokens:

    * hyphenated: a token with exactly one ``-`` and non-empty halves;
    * reduplicated: two identical adjacent word tokens;
    * quoted / bracketed: exactly two word tokens between a quote or round
      bracket pair;
    * oov: two adjacent word tokens both missing from `vocab` (checked on
      surface, then stem).  Passing ``vocab=None`` disables this rule.

    Number pairs are excluded everywhere.  One bigram position firing
    several rules yields a single occurrence carrying all its flags.
    """
    pool: dict[tuple[str, str], Candidate] = {}
    for sentence in sentences:
        stream = _detach_enclosures(sentence.tokens)
        # events keyed by (first-word position, stemmed pair): several rules
        # firing on the same bigram occurrence merge into one event
        events: dict[tuple[int, tuple[str, str]], Candidate] = {}

        def add_event(position: int, w1: str, w2: str, **flags: bool) -> None:
            if is_number_pair(w1, w2, number_lexicon):
                return
            cand = Candidate(
                w1=w1,
                w2=w2,
                stem1=stem_word(w1, suffixes),
                stem2=stem_word(w2, suffixes),
                **flags,
            )
            existing = events.get((position, cand.key))
            if existing is None:
                events[(position, cand.key)] = cand
            else:
                existing.hyphenated |= cand.hyphenated
                existing.quoted |= cand.quoted
                existing.bracketed |= cand.bracketed
                existing.oov |= cand.oov
                existing.reduplicated |= cand.reduplicated

        for i, (token, is_delim) in enumerate(stream):
            if not is_delim and token.count("-") == 1:
                left, right = token.split("-")
                if left and right:
                    add_event(i, left, right, hyphenated=True)
            if i + 1 < len(stream):
                (tok_a, delim_a), (tok_b, delim_b) = stream[i], stream[i + 1]
                if not delim_a and not delim_b:
                    if tok_a == tok_b:
                        add_event(i, tok_a, tok_b, reduplicated=True)
                    if vocab is not None and not _in_vocab(tok_a, vocab, suffixes) and not _in_vocab(
                        tok_b, vocab, suffixes
                    ):
                        add_event(i, tok_a, tok_b, oov=True)
            if i + 3 < len(stream):
                opener, w1, w2, closer = stream[i], stream[i + 1], stream[i + 2], stream[i + 3]
                if opener[1] and closer[1] and not w1[1] and not w2[1]:
                    if opener[0] in _OPEN_QUOTES and closer[0] in _CLOSE_QUOTES:
                        add_event(i + 1, w1[0], w2[0], quoted=True)
                    if opener[0] == _OPEN_BRACKET and closer[0] == _CLOSE_BRACKET:
                        add_event(i + 1, w1[0], w2[0], bracketed=True)
        for cand in events.values():
            _merge_event(pool, cand)
    return _sorted_pool(pool)


def merge_candidates(a: Iterable[Candidate], b: Iterable[Candidate]) -> list[Candidate]:
    """Union of two candidate lists keyed by stemmed pair.

    Occurrences are summed, flags OR-ed, and POS tags (with their surface
    forms) taken from a chunk-rule member when one side lacks them.
    """
    pool: dict[tuple[str, str], Candidate] = {}
    for cand in list(a) + list(b):
        _merge_event(pool, replace(cand))
    return _sorted_pool(pool)


def label_candidates(
    cands: Iterable[Candidate], gold: frozenset[tuple[str, str]] | set[tuple[str, str]]
) -> list[tuple[Candidate, str]]:
    """Attach "positive" to candidates whose stemmed pair is in the gold set."""
    return [(c, "positive" if c.key in gold else "negative") for c in cands]


def load_wordlist(path: str | Path) -> set[str]:
    """One entry per line; blank lines and `#` comments ignored; NFC applied."""
    entries = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.add(unicodedata.normalize("NFC", line))
    return entries


def load_gold_list(path: str | Path, suffixes: SuffixList) -> set[tuple[str, str]]:
    """Gold bigrams, one per line as `w1 w2`; stored stemmed and NFC-normalized."""
    gold = set()
    for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = unicodedata.normalize("NFC", line).split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{line_no}: gold entry must be exactly two tokens")
        gold.add((stem_word(parts[0], suffixes), stem_word(parts[1], suffixes)))
    return gold


def write_candidates(labeled: Iterable[tuple[Candidate, str]], path: str | Path) -> None:
    """TSV dump: w1 w2 stem1 stem2 occurrences flags tags label."""
    lines = ["#w1\tw2\tstem1\tstem2\toccurrences\tflags\ttags\tlabel"]
    for cand, label in labeled:
        flags = ",".join(cand.flags) if cand.flags else "-"
        lines.append(
            "\t".join(
                [
                    cand.w1,
                    cand.w2,
                    cand.stem1,
                    cand.stem2,
                    str(cand.occurrences),
                    flags,
                    f"{cand.tag1},{cand.tag2}",
                    label,
                ]
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_candidates(path: str | Path) -> list[tuple[Candidate, str]]:
    """Inverse of write_candidates."""
    labeled = []
    for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.startswith("#"):
            continue
        fields = raw.split("\t")
        if len(fields) != 8:
            raise ValueError(f"{path}:{line_no}: expected 8 tab-separated fields, got {len(fields)}")
        w1, w2, stem1, stem2, occ, flags, tags, label = fields
        flag_set = set() if flags == "-" else set(flags.split(","))
        unknown = flag_set - set(FLAG_NAMES)
        if unknown:
            raise ValueError(f"{path}:{line_no}: unknown flags {sorted(unknown)}")
        tag_pair = tags.split(",")
        if len(tag_pair) != 2:
            raise ValueError(f"{path}:{line_no}: tags must be `tag1,tag2`")
        labeled.append(
            (
                Candidate(
                    w1=w1,
                    w2=w2,
                    stem1=stem1,
                    stem2=stem2,
                    occurrences=int(occ),
                    from_chunk_rule="chunk" in flag_set,
                    hyphenated="hyphenated" in flag_set,
                    quoted="quoted" in flag_set,
                    bracketed="bracketed" in flag_set,
                    oov="oov" in flag_set,
                    reduplicated="reduplicated" in flag_set,
                    tag1=tag_pair[0],
                    tag2=tag_pair[1],
                ),
                label,
            )
        )
    return labeled
