"""Corpus loading, sentence segmentation, and chunk-file parsing.

Raw corpora are directories of UTF-8 ``*.txt`` files (file stem = document
id).  Chunked input is a 3-column TSV, one token per line
(``surface<TAB>pos<TAB>chunk``), sentences separated by a blank line, with
BIO chunk labels restricted to ``B-NP`` / ``I-NP`` / ``O``.

All text is NFC-normalized at load time so visually identical strings
compare equal downstream.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

SENTENCE_DELIMITERS = ("।", "?", "!")  # Dari (full stop), question, exclamation

NOUN_TAGS = frozenset({"NN", "NNP", "XC"})
POS_OTHER = "OTHER"
CHUNK_LABELS = frozenset({"B-NP", "I-NP", "O"})

DOC_MARKER = "## doc:"


class ChunkParseError(ValueError):
    """Malformed chunk file; carries the offending path and 1-based line number."""

    def __init__(self, path: str | Path, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = str(path)
        self.line_no = line_no


@dataclass(frozen=True)
class Document:
    id: str
    text: str


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[str, ...]
    source_doc: str = ""
    index: int = 0


@dataclass(frozen=True)
class ChunkedToken:
    surface: str
    pos_tag: str  # NN | NNP | XC | OTHER
    chunk_label: str  # B-NP | I-NP | O


@dataclass(frozen=True)
class ChunkedSentence:
    tokens: tuple[ChunkedToken, ...]
    source: str = ""

    def np_chunks(self) -> list[tuple[ChunkedToken, ...]]:
        """NP chunk spans, in order.  B-NP opens a chunk, I-NP extends it."""
        chunks: list[tuple[ChunkedToken, ...]] = []
        current: list[ChunkedToken] = []
        for token in self.tokens:
            if token.chunk_label == "B-NP":
                if current:
                    chunks.append(tuple(current))
                current = [token]
            elif token.chunk_label == "I-NP":
                current.append(token)
            else:
                if current:
                    chunks.append(tuple(current))
                current = []
        if current:
            chunks.append(tuple(current))
        return chunks


def segment_sentences(text: str) -> list[str]:
    """Split text at every Dari, ``?`` and ``!``; drop delimiters and empties.

    Delimiter runs like ``?!`` simply produce empty segments, which are
    discarded.
    """
    segments: list[str] = []
    current: list[str] = []
    for ch in text:
        if ch in SENTENCE_DELIMITERS:
            piece = "".join(current).strip()
            if piece:
                segments.append(piece)
            current = []
        else:
            current.append(ch)
    piece = "".join(current).strip()
    if piece:
        segments.append(piece)
    return segments


def tokenize(text: str, source_doc: str = "", index: int = 0) -> Sentence:
    """Whitespace tokenization; runs of Unicode whitespace are one boundary."""
    return Sentence(tokens=tuple(text.split()), source_doc=source_doc, index=index)


def segment_document(doc: Document) -> list[Sentence]:
    """Segment and tokenize one document; empty sentences are dropped."""
    sentences = []
    for i, raw in enumerate(segment_sentences(doc.text)):
        sentence = tokenize(raw, source_doc=doc.id, index=i)
        if sentence.tokens:
            sentences.append(sentence)
    return sentences


def load_documents(corpus_dir: str | Path) -> list[Document]:
    """Read every ``*.txt`` under `corpus_dir`, sorted by document id.

    Files whose content trims to nothing are skipped.
    """
    directory = Path(corpus_dir)
    if not directory.is_dir():
        raise FileNotFoundError(f"corpus directory not found: {directory}")
    docs = []
    for path in sorted(directory.glob("*.txt")):
        text = unicodedata.normalize("NFC", path.read_text(encoding="utf-8"))
        if text.strip():
            docs.append(Document(id=path.stem, text=text))
    return docs


def parse_chunk_file(path: str | Path) -> list[ChunkedSentence]:
    """Parse a 3-column TSV chunk file into sentences.

    Raises ChunkParseError for a line without exactly three tab-separated
    fields, an unknown chunk label, or ``I-NP`` with no open NP chunk.
    Unknown POS strings map to OTHER.
    """
    path = Path(path)
    sentences: list[ChunkedSentence] = []
    current: list[ChunkedToken] = []
    block_start = 0

    def flush() -> None:
        nonlocal current
        if current:
            sentences.append(
                ChunkedSentence(tokens=tuple(current), source=f"{path.stem}:{len(sentences)}")
            )
            current = []

    with path.open(encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                flush()
                block_start = line_no
                continue
            fields = unicodedata.normalize("NFC", line).split("\t")
            if len(fields) != 3:
                raise ChunkParseError(path, line_no, f"expected 3 tab-separated fields, got {len(fields)}")
            surface, pos, chunk = (f.strip() for f in fields)
            if not surface:
                raise ChunkParseError(path, line_no, "empty surface form")
            if chunk not in CHUNK_LABELS:
                raise ChunkParseError(path, line_no, f"unknown chunk label {chunk!r}")
            if chunk == "I-NP" and (not current or current[-1].chunk_label == "O"):
                raise ChunkParseError(path, line_no, "I-NP without an open NP chunk")
            tag = pos if pos in NOUN_TAGS else POS_OTHER
            current.append(ChunkedToken(surface=surface, pos_tag=tag, chunk_label=chunk))
    flush()
    return sentences


def format_chunk_file(sentences: Iterable[ChunkedSentence]) -> str:
    """Serialize sentences back to the chunk TSV format (round-trip safe)."""
    blocks = []
    for sentence in sentences:
        blocks.append(
            "\n".join(f"{t.surface}\t{t.pos_tag}\t{t.chunk_label}" for t in sentence.tokens)
        )
    return "\n\n".join(blocks) + "\n"


def format_sentence_file(sentences: Iterable[Sentence]) -> str:
    """One sentence per line, tokens space-separated, docs marked by `## doc:` lines."""
    lines = []
    current_doc: str | None = None
    for sentence in sentences:
        if sentence.source_doc != current_doc:
            current_doc = sentence.source_doc
            lines.append(f"{DOC_MARKER}{current_doc}")
        lines.append(" ".join(sentence.tokens))
    return "\n".join(lines) + "\n" if lines else ""


def parse_sentence_file(path: str | Path) -> list[Sentence]:
    """Inverse of format_sentence_file."""
    sentences: list[Sentence] = []
    doc_id = ""
    index = 0
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = unicodedata.normalize("NFC", raw.strip())
        if not line:
            continue
        if line.startswith(DOC_MARKER):
            doc_id = line[len(DOC_MARKER):].strip()
            index = 0
            continue
        sentences.append(tokenize(line, source_doc=doc_id, index=index))
        index += 1
    return sentences


def iter_corpus_sentences(corpus_dir: str | Path) -> Iterator[Sentence]:
    """Segment every document under `corpus_dir`, in sorted document order."""
    for doc in load_documents(corpus_dir):
        yield from segment_document(doc)
