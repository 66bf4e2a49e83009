"""Command line front end: ``mwe <command> --config <path> [flags]``.

Exit codes: 0 success, 1 data/validation failure, 2 usage or I/O failure.
All outputs are deterministic for a given config and seed.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__, assoc, candidates, corpus, evaluation, features, forest
from .config import PipelineConfig
from .stemmer import SuffixList
from .wordnet_sim import (
    BilingualDictionary,
    SimilarityResources,
    WordNetLoadError,
    load_ic,
    load_wordnet,
)


class DataError(click.ClickException):
    exit_code = 1


class InputError(click.ClickException):
    exit_code = 2


def _load_config(config_path: str | None, **overrides) -> PipelineConfig:
    if config_path is not None:
        try:
            cfg = PipelineConfig.load(config_path)
        except FileNotFoundError:
            raise InputError(f"config file not found: {config_path}")
        except ValueError as exc:
            raise DataError(str(exc))
    else:
        cfg = PipelineConfig()
    return cfg.override(**overrides)


def _require(value: str | None, name: str) -> str:
    if value is None:
        raise click.UsageError(f"missing required input: --{name.replace('_', '-')} (or config key {name!r})")
    return value


def _existing(path: str, kind: str = "file") -> Path:
    p = Path(path)
    ok = p.is_dir() if kind == "dir" else p.is_file()
    if not ok:
        raise InputError(f"{kind} not found: {path}")
    return p


def _suffix_list(cfg: PipelineConfig) -> SuffixList:
    return SuffixList.from_file(_existing(_require(cfg.suffix_list, "suffix_list")))


def _number_lexicon(cfg: PipelineConfig) -> set[str]:
    if cfg.number_lexicon is None:
        return set()
    return candidates.load_wordlist(_existing(cfg.number_lexicon))


def _warn(message: str) -> None:
    click.echo(f"warning: {message}", err=True)


@click.group()
@click.version_option(version=__version__, prog_name="mwe")
def main() -> None:
    """Bigram noun-noun multiword expression identification pipeline."""


@main.command()
@click.option("--config", "config_path", type=str, default=None, help="JSON config file.")
@click.option("--corpus-dir", type=str, default=None, help="Directory of UTF-8 *.txt documents.")
@click.option("--out", "out_path", type=str, required=True, help="Sentence file to write.")
def segment(config_path: str | None, corpus_dir: str | None, out_path: str) -> None:
    """Segment raw documents into one tokenized sentence per line."""
    cfg = _load_config(config_path, corpus_dir=corpus_dir)
    directory = _existing(_require(cfg.corpus_dir, "corpus_dir"), kind="dir")
    sentences = list(corpus.iter_corpus_sentences(directory))
    Path(out_path).write_text(corpus.format_sentence_file(sentences), encoding="utf-8")
    click.echo(f"wrote {len(sentences)} sentences to {out_path}")


@main.command(name="candidates")
@click.option("--config", "config_path", type=str, default=None)
@click.option("--chunk-file", type=str, default=None, help="3-column TSV chunk file.")
@click.option("--sentence-file", type=str, default=None, help="Output of `mwe segment`.")
@click.option("--suffix-list", type=str, default=None)
@click.option("--number-lexicon", type=str, default=None)
@click.option("--gold-list", type=str, default=None, help="Gold bigrams; enables labeling.")
@click.option("--dictionary", type=str, default=None, help="Bilingual dictionary (vocabulary source).")
@click.option("--lexicon", type=str, default=None, help="Extra vocabulary word list.")
@click.option("--out", "out_path", type=str, required=True)
def candidates_cmd(
    config_path: str | None,
    chunk_file: str | None,
    sentence_file: str | None,
    suffix_list: str | None,
    number_lexicon: str | None,
    gold_list: str | None,
    dictionary: str | None,
    lexicon: str | None,
    out_path: str,
) -> None:
    """Extract, merge, and optionally label candidate bigrams."""
    cfg = _load_config(
        config_path,
        chunk_file=chunk_file,
        sentence_file=sentence_file,
        suffix_list=suffix_list,
        number_lexicon=number_lexicon,
        gold_list=gold_list,
        dictionary=dictionary,
        lexicon=lexicon,
    )
    suffixes = _suffix_list(cfg)
    numbers = _number_lexicon(cfg)

    try:
        chunked = corpus.parse_chunk_file(_existing(_require(cfg.chunk_file, "chunk_file")))
    except corpus.ChunkParseError as exc:
        raise DataError(str(exc))
    sentences = corpus.parse_sentence_file(_existing(_require(cfg.sentence_file, "sentence_file")))

    vocab: set[str] | None = None
    if cfg.dictionary is not None or cfg.lexicon is not None:
        vocab = set()
        if cfg.dictionary is not None:
            try:
                vocab |= BilingualDictionary.from_file(_existing(cfg.dictionary)).headwords
            except ValueError as exc:
                raise DataError(str(exc))
        if cfg.lexicon is not None:
            vocab |= candidates.load_wordlist(_existing(cfg.lexicon))
    else:
        _warn("no dictionary or lexicon given; the out-of-vocabulary heuristic is disabled")

    from_chunks = candidates.extract_chunk_candidates(chunked, suffixes, numbers)
    from_heuristics = candidates.extract_heuristic_candidates(sentences, vocab, suffixes, numbers)
    merged = candidates.merge_candidates(from_chunks, from_heuristics)

    if cfg.gold_list is not None:
        try:
            gold = candidates.load_gold_list(_existing(cfg.gold_list), suffixes)
        except ValueError as exc:
            raise DataError(str(exc))
        labeled = candidates.label_candidates(merged, gold)
    else:
        labeled = [(c, features.LABEL_UNKNOWN) for c in merged]
    candidates.write_candidates(labeled, out_path)
    click.echo(f"wrote {len(labeled)} candidates to {out_path}")


@main.command()
@click.option("--config", "config_path", type=str, default=None)
@click.option("--candidates", "candidates_path", type=str, required=True, help="Candidate TSV.")
@click.option("--sentence-file", type=str, default=None)
@click.option("--suffix-list", type=str, default=None)
@click.option("--dictionary", type=str, default=None)
@click.option("--wordnet-index", type=str, default=None)
@click.option("--wordnet-data", type=str, default=None)
@click.option("--ic-file", type=str, default=None)
@click.option("--counts-cache", type=str, default=None, help="Load counts from this file if present, else build and save.")
@click.option("--allow-unlabeled", is_flag=True, help="Permit '?' labels in the output matrix.")
@click.option("--out", "out_path", type=str, required=True)
def featurize(
    config_path: str | None,
    candidates_path: str,
    sentence_file: str | None,
    suffix_list: str | None,
    dictionary: str | None,
    wordnet_index: str | None,
    wordnet_data: str | None,
    ic_file: str | None,
    counts_cache: str | None,
    allow_unlabeled: bool,
    out_path: str,
) -> None:
    """Turn labeled candidates into the 28-column feature matrix."""
    cfg = _load_config(
        config_path,
        sentence_file=sentence_file,
        suffix_list=suffix_list,
        dictionary=dictionary,
        wordnet_index=wordnet_index,
        wordnet_data=wordnet_data,
        ic_file=ic_file,
    )
    suffixes = _suffix_list(cfg)
    try:
        labeled = candidates.read_candidates(_existing(candidates_path))
    except ValueError as exc:
        raise DataError(str(exc))
    unlabeled = sum(1 for _, label in labeled if label == features.LABEL_UNKNOWN)
    if unlabeled and not allow_unlabeled:
        raise DataError(
            f"{unlabeled} candidates are unlabeled; rerun `mwe candidates` with --gold-list "
            "or pass --allow-unlabeled"
        )

    if counts_cache is not None and Path(counts_cache).is_file():
        try:
            counts = assoc.load_counts(counts_cache)
        except ValueError as exc:
            raise DataError(str(exc))
    else:
        sentences = corpus.parse_sentence_file(
            _existing(_require(cfg.sentence_file, "sentence_file"))
        )
        counts = assoc.build_counts(sentences, suffixes)
        if counts_cache is not None:
            assoc.save_counts(counts, counts_cache)

    wn: SimilarityResources | None = None
    if cfg.wordnet_index and cfg.wordnet_data and cfg.dictionary:
        try:
            graph = load_wordnet(_existing(cfg.wordnet_index), _existing(cfg.wordnet_data))
            bilingual = BilingualDictionary.from_file(_existing(cfg.dictionary))
        except (WordNetLoadError, ValueError) as exc:
            raise DataError(str(exc))
        ic = None
        if cfg.ic_file is not None:
            if Path(cfg.ic_file).is_file():
                ic = load_ic(cfg.ic_file)
            else:
                _warn(f"ic file not found: {cfg.ic_file}; falling back to uniform counts")
        wn = SimilarityResources(graph=graph, dictionary=bilingual, suffixes=suffixes, ic=ic)
    else:
        _warn("wordnet or dictionary resources missing; similarity slots will be zero")

    vectors = [
        features.featurize(cand, counts, wn=wn, label=label) for cand, label in labeled
    ]
    features.write_matrix(vectors, out_path)
    click.echo(f"wrote {len(vectors)} x {features.NUM_SLOTS} feature matrix to {out_path}")


def _read_matrix_checked(path: str, require_labels: bool) -> tuple[list[features.FeatureVector], str]:
    try:
        vectors, matrix_hash = features.read_matrix(_existing(path))
    except ValueError as exc:
        raise DataError(str(exc))
    if require_labels:
        unlabeled = sum(1 for fv in vectors if fv.label == features.LABEL_UNKNOWN)
        if unlabeled:
            raise DataError(f"{path}: {unlabeled} rows are unlabeled; a labeled matrix is required")
    return vectors, matrix_hash


@main.command()
@click.option("--config", "config_path", type=str, default=None)
@click.option("--matrix", "matrix_path", type=str, required=True)
@click.option("--model", "model_path", type=str, required=True, help="Model file to write.")
@click.option("--preset", type=click.Choice(features.PRESET_NAMES), default=None)
@click.option("--num-trees", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--min-leaf", type=int, default=1)
@click.option("--max-depth", type=int, default=None)
def train(
    config_path: str | None,
    matrix_path: str,
    model_path: str,
    preset: str | None,
    num_trees: int | None,
    seed: int | None,
    min_leaf: int,
    max_depth: int | None,
) -> None:
    """Train a random forest on a labeled feature matrix."""
    cfg = _load_config(config_path, preset=preset, num_trees=num_trees, seed=seed)
    vectors, matrix_hash = _read_matrix_checked(matrix_path, require_labels=True)
    if matrix_hash != features.LAYOUT_HASH:
        raise DataError(
            f"{matrix_path}: layout hash {matrix_hash} does not match this toolkit's "
            f"{features.LAYOUT_HASH}"
        )
    config = forest.TrainConfig(
        num_trees=cfg.num_trees, seed=cfg.seed, min_leaf=min_leaf, max_depth=max_depth
    )
    try:
        model = forest.train(vectors, features.preset_mask(cfg.preset), config)
    except ValueError as exc:
        raise DataError(str(exc))
    forest.save(model, model_path)
    click.echo(
        f"trained {config.num_trees} trees (preset {cfg.preset}, seed {cfg.seed}); "
        f"oob_error={model.oob_error:.4f}; saved to {model_path}"
    )


def _load_model(path: str) -> forest.Forest:
    try:
        return forest.load(_existing(path))
    except forest.ModelFormatError as exc:
        raise DataError(str(exc))


@main.command()
@click.option("--model", "model_path", type=str, required=True)
@click.option("--matrix", "matrix_path", type=str, required=True)
@click.option("--out", "out_path", type=str, required=True)
def predict(model_path: str, matrix_path: str, out_path: str) -> None:
    """Label a feature matrix; emits key, label, and positive vote fraction."""
    model = _load_model(model_path)
    vectors, matrix_hash = _read_matrix_checked(matrix_path, require_labels=False)
    try:
        forest.check_layout(model, matrix_hash)
    except forest.LayoutMismatchError as exc:
        raise DataError(str(exc))
    lines = ["#stem1\tstem2\tlabel\tvotes_positive"]
    for fv in vectors:
        label = forest.predict(model, fv)
        proba = forest.predict_proba(model, fv)
        lines.append(f"{fv.key[0]}\t{fv.key[1]}\t{label}\t{repr(proba)}")
    Path(out_path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    click.echo(f"predicted {len(vectors)} candidates to {out_path}")


@main.command()
@click.option("--model", "model_path", type=str, required=True)
@click.option("--matrix", "matrix_path", type=str, required=True)
@click.option("--json-out", type=str, default=None)
def evaluate(model_path: str, matrix_path: str, json_out: str | None) -> None:
    """Score a trained model against a labeled held-out matrix."""
    model = _load_model(model_path)
    vectors, matrix_hash = _read_matrix_checked(matrix_path, require_labels=True)
    try:
        forest.check_layout(model, matrix_hash)
    except forest.LayoutMismatchError as exc:
        raise DataError(str(exc))
    cm = evaluation.ConfusionMatrix()
    for fv in vectors:
        cm.add(actual=fv.label, predicted=forest.predict(model, fv))
    positive, negative, weighted_f = evaluation.metrics(cm)
    click.echo(f"instances: {cm.total}  tp={cm.tp} fp={cm.fp} fn={cm.fn} tn={cm.tn}")
    click.echo(
        f"positive: P={positive.precision:.4f} R={positive.recall:.4f} F={positive.f_measure:.4f}"
    )
    click.echo(
        f"negative: P={negative.precision:.4f} R={negative.recall:.4f} F={negative.f_measure:.4f}"
    )
    click.echo(f"weighted F: {weighted_f:.4f}")
    if json_out:
        document = {
            "confusion": {"tp": cm.tp, "fp": cm.fp, "fn": cm.fn, "tn": cm.tn},
            "per_class": {
                "positive": evaluation.class_metrics_dict(positive),
                "negative": evaluation.class_metrics_dict(negative),
            },
            "weighted_f": weighted_f,
        }
        Path(json_out).write_text(
            json.dumps(document, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )


@main.command()
@click.option("--config", "config_path", type=str, default=None)
@click.option("--matrix", "matrix_path", type=str, required=True)
@click.option(
    "--preset",
    type=click.Choice(features.PRESET_NAMES + ("all",)),
    default="all",
    show_default=True,
)
@click.option("--k", type=int, default=None, help="Folds (default 10).")
@click.option("--seed", type=int, default=None)
@click.option("--num-trees", type=int, default=None)
@click.option("--json-out", type=str, default=None)
def experiment(
    config_path: str | None,
    matrix_path: str,
    preset: str,
    k: int | None,
    seed: int | None,
    num_trees: int | None,
    json_out: str | None,
) -> None:
    """k-fold cross-validation of one preset, or all four side by side."""
    cfg = _load_config(config_path, k=k, seed=seed, num_trees=num_trees)
    vectors, matrix_hash = _read_matrix_checked(matrix_path, require_labels=True)
    if matrix_hash != features.LAYOUT_HASH:
        raise DataError(f"{matrix_path}: unknown feature layout {matrix_hash}")
    names = features.PRESET_NAMES if preset == "all" else (preset,)
    train_config = forest.TrainConfig(num_trees=cfg.num_trees, seed=cfg.seed)
    reports = []
    for name in names:
        try:
            reports.append(
                evaluation.run_experiment(name, vectors, cfg.k, cfg.seed, train_config)
            )
        except ValueError as exc:
            raise DataError(str(exc))
    click.echo(evaluation.format_report_table(reports))
    if json_out:
        document = {
            "config": cfg.to_dict(),
            "reports": [r.to_dict() for r in reports],
        }
        Path(json_out).write_text(
            json.dumps(document, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )


if __name__ == "__main__":
    sys.exit(main())
