"""Single JSON configuration shared by all pipeline commands.

Relative paths are resolved against the config file's directory.  Command
line flags override config values; defaults apply last.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from pathlib import Path

_PATH_FIELDS = (
    "corpus_dir",
    "chunk_file",
    "sentence_file",
    "gold_list",
    "suffix_list",
    "number_lexicon",
    "dictionary",
    "lexicon",
    "wordnet_index",
    "wordnet_data",
    "ic_file",
)


@dataclass
class PipelineConfig:
    corpus_dir: str | None = None
    chunk_file: str | None = None
    sentence_file: str | None = None
    gold_list: str | None = None
    suffix_list: str | None = None
    number_lexicon: str | None = None
    dictionary: str | None = None
    lexicon: str | None = None
    wordnet_index: str | None = None
    wordnet_data: str | None = None
    ic_file: str | None = None
    num_trees: int = 10
    seed: int = 1
    k: int = 10
    preset: str = "proposed"

    @classmethod
    def load(cls, path: str | Path) -> "PipelineConfig":
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid JSON config ({exc})") from None
        if not isinstance(raw, dict):
            raise ValueError(f"{path}: config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")
        config = cls(**raw)
        base = path.parent
        for name in _PATH_FIELDS:
            value = getattr(config, name)
            if value is not None and not Path(value).is_absolute():
                setattr(config, name, str((base / value).resolve()))
        return config

    def override(self, **kwargs) -> "PipelineConfig":
        """Apply non-None keyword overrides (flags win over config)."""
        updates = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **updates)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}
