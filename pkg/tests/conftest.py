from pathlib import Path

import pytest

from mwekit import candidates as cand_mod
from mwekit import corpus as corpus_mod
from mwekit.stemmer import SuffixList
from mwekit.wordnet_sim import BilingualDictionary, load_ic, load_wordnet

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def suffixes() -> SuffixList:
    return SuffixList.from_file(DATA / "suffixes.txt")


@pytest.fixture(scope="session")
def number_lexicon() -> set[str]:
    return cand_mod.load_wordlist(DATA / "numbers.txt")


@pytest.fixture(scope="session")
def gold(suffixes) -> set[tuple[str, str]]:
    return cand_mod.load_gold_list(DATA / "gold.txt", suffixes)


@pytest.fixture(scope="session")
def bilingual() -> BilingualDictionary:
    return BilingualDictionary.from_file(DATA / "dict.tsv")


@pytest.fixture(scope="session")
def chunked_sentences():
    return corpus_mod.parse_chunk_file(DATA / "chunks.tsv")


@pytest.fixture(scope="session")
def raw_sentences():
    return list(corpus_mod.iter_corpus_sentences(DATA / "corpus"))


@pytest.fixture(scope="session")
def wn_graph():
    return load_wordnet(DATA / "wn" / "index.noun", DATA / "wn" / "data.noun")


@pytest.fixture(scope="session")
def wn_ic():
    return load_ic(DATA / "wn" / "ic.tsv")
