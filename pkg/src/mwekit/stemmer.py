"""Longest-match suffix stripping.

A single pass strips at most one suffix from a word: the longest entry of
the suffix inventory that (a) is a proper suffix of the word and (b) leaves
a stem of at least MIN_STEM code points.  No iterative re-stemming.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

MIN_STEM = 2  # stems shorter than this are never produced


class SuffixList:
    """Strippable suffix inventory, queried longest-first."""

    def __init__(self, suffixes: Iterable[str]):
        cleaned = {unicodedata.normalize("NFC", s) for s in suffixes if s}
        # longest first; lexicographic within a length for determinism
        self._ordered: tuple[str, ...] = tuple(sorted(cleaned, key=lambda s: (-len(s), s)))

    @classmethod
    def from_file(cls, path: str | Path) -> "SuffixList":
        """One suffix per line; blank lines and `#` comments ignored."""
        entries = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                entries.append(line)
        return cls(entries)

    def __iter__(self) -> Iterator[str]:
        return iter(self._ordered)

    def __len__(self) -> int:
        return len(self._ordered)

    def __contains__(self, suffix: str) -> bool:
        return suffix in self._ordered

    def __repr__(self) -> str:
        return f"SuffixList({list(self._ordered)!r})"


@dataclass(frozen=True)
class StemResult:
    stem: str
    suffix: str  # empty when nothing was stripped

    @property
    def was_inflected(self) -> bool:
        return bool(self.suffix)

    @property
    def word(self) -> str:
        return self.stem + self.suffix


def stem(word: str, suffixes: SuffixList) -> StemResult:
    """Strip the longest qualifying suffix from `word`.

    A suffix qualifies when it matches the end of the word and the remaining
    stem keeps at least MIN_STEM code points.  Shorter list entries are
    considered only when every longer one fails, so "cheleder" loses "der"
    rather than "er", while "der" itself can only lose "r".
    """
    if not word:
        raise ValueError("cannot stem an empty word")
    for suffix in suffixes:  # longest first
        if len(word) - len(suffix) >= MIN_STEM and word.endswith(suffix):
            return StemResult(stem=word[: len(word) - len(suffix)], suffix=suffix)
    return StemResult(stem=word, suffix="")


def stem_word(word: str, suffixes: SuffixList) -> str:
    """Convenience wrapper returning just the stem."""
    return stem(word, suffixes).stem
