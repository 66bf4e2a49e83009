"""Acceptance suite: one test per release criterion.

Each test prints a PASS/FAIL line (visible with ``pytest -s``); the
independent oracles here are deliberately written against different
libraries and formulations than the implementation they check.
"""

import itertools
import json
import math
import time
from collections import Counter
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import chi2_contingency

from mwekit import assoc, candidates, corpus, evaluation, features, forest
from mwekit.rng import Rng
from mwekit.stemmer import MIN_STEM, SuffixList, stem
from mwekit.wordnet_sim import SimilarityResources, similarity

DATA = Path(__file__).parent / "data"


@contextmanager
def criterion(number: int, title: str):
    try:
        yield
    except BaseException:
        print(f"[criterion {number:02d}] FAIL  {title}")
        raise
    print(f"[criterion {number:02d}] PASS  {title}")


# -----------------------------------------------------------------------
# independent oracles
# -----------------------------------------------------------------------


def oracle_scores(n11, n1p, np1, n):
    """Probability-formulation oracle for the seven table measures.

    chi and log-likelihood come from scipy's contingency machinery; the
    rest are evaluated from joint/marginal probabilities with numpy.
    """
    observed = np.array(
        [[n11, n1p - n11], [np1 - n11, n - n1p - np1 + n11]], dtype=np.float64
    )
    chi = chi2_contingency(observed, correction=False)[0]
    g = chi2_contingency(observed, correction=False, lambda_="log-likelihood")[0]
    phi = chi / n  # squared phi coefficient identity for 2x2 tables
    p11 = n11 / n
    p1 = n1p / n
    q1 = np1 / n
    if n11 > 0:
        pmi = math.log2(p11) - math.log2(p1) - math.log2(q1)
        t_score = (n11 - n * p1 * q1) / math.sqrt(n11)
        poisson_stirling = n11 * (math.log(p11 / (p1 * q1)) - 1.0)
        salience = pmi * math.log2(n11 + 1)
    else:
        pmi = t_score = poisson_stirling = salience = 0.0
    return {
        "phi": phi,
        "pmi": pmi,
        "salience": salience,
        "log_likelihood": g,
        "poisson_stirling": poisson_stirling,
        "chi": chi,
        "t_score": t_score,
    }


def fuzzed_tables(count, seed):
    """Valid 2x2 tables with all four marginals >= 1."""
    rng = Rng(seed)
    for _ in range(count):
        n = rng.below(99_996) + 4
        n1p = rng.below(n - 1) + 1
        np1 = rng.below(n - 1) + 1
        low = max(0, n1p + np1 - n)
        n11 = low + rng.below(min(n1p, np1) - low + 1)
        yield n11, n1p, np1, n


def random_word(rng, alphabet="abkrdবা", low=1, high=9):
    return "".join(alphabet[rng.below(len(alphabet))] for _ in range(low + rng.below(high - low + 1)))


def separable_dataset(seed=7, n=200):
    """Noiseless set: label is decided by feature 0 alone."""
    rng = Rng(seed)
    data = []
    for i in range(n):
        values = [rng.uniform() for _ in range(features.NUM_SLOTS)]
        label = "positive" if values[0] > 0.5 else "negative"
        data.append(features.FeatureVector(values=values, label=label, key=(f"w{i}", "x")))
    return data


def fixture_matrix():
    """Full library pipeline over the shipped fixture corpus."""
    suffixes = SuffixList.from_file(DATA / "suffixes.txt")
    numbers = candidates.load_wordlist(DATA / "numbers.txt")
    gold = candidates.load_gold_list(DATA / "gold.txt", suffixes)
    from mwekit.wordnet_sim import BilingualDictionary, load_ic, load_wordnet

    bilingual = BilingualDictionary.from_file(DATA / "dict.tsv")
    chunked = corpus.parse_chunk_file(DATA / "chunks.tsv")
    raw = list(corpus.iter_corpus_sentences(DATA / "corpus"))
    merged = candidates.merge_candidates(
        candidates.extract_chunk_candidates(chunked, suffixes, numbers),
        candidates.extract_heuristic_candidates(raw, bilingual.headwords, suffixes, numbers),
    )
    labeled = candidates.label_candidates(merged, gold)
    counts = assoc.build_counts(raw, suffixes)
    graph = load_wordnet(DATA / "wn" / "index.noun", DATA / "wn" / "data.noun")
    wn = SimilarityResources(
        graph=graph,
        dictionary=bilingual,
        suffixes=suffixes,
        ic=load_ic(DATA / "wn" / "ic.tsv"),
    )
    return [features.featurize(c, counts, wn=wn, label=lab) for c, lab in labeled]


# -----------------------------------------------------------------------
# criteria
# -----------------------------------------------------------------------


def test_criterion_01_association_oracle():
    with criterion(1, "association measures match the brute-force oracle (500 tables, <5s)"):
        start = time.perf_counter()
        tables = list(fuzzed_tables(500, seed=20240901))
        tables.append((10, 20, 25, 100))  # the worked example
        for n11, n1p, np1, n in tables:
            table = assoc.ContingencyTable(
                n11=n11, n12=n1p - n11, n21=np1 - n11, n22=n - n1p - np1 + n11
            )
            got = assoc.score_bigram(table)
            want = oracle_scores(n11, n1p, np1, n)
            for name, expected in want.items():
                assert abs(getattr(got, name) - expected) <= 1e-9, (name, n11, n1p, np1, n)
        # worked-table spot values, frozen from hand evaluation
        worked = assoc.score_bigram(assoc.ContingencyTable(n11=10, n12=10, n21=15, n22=65))
        assert abs(worked.pmi - 1.0) <= 1e-9
        assert abs(worked.t_score - 1.5811388300841898) <= 1e-9
        assert abs(worked.chi - 8.333333333333334) <= 1e-9
        assert abs(worked.log_likelihood - 7.528731273041914) <= 1e-9
        assert abs(worked.poisson_stirling - -3.068528194400547) <= 1e-9
        assert abs(worked.phi - 0.08333333333333333) <= 1e-9
        assert abs(worked.salience - 3.4594316186372973) <= 1e-9
        assert abs(assoc.cooccurrence(20, 25, 10) - 10 / 35) <= 1e-9
        assert abs(assoc.significance(20, 25, 10) - 10 / math.sqrt(500)) <= 1e-9
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"oracle comparison took {elapsed:.2f}s"


def test_criterion_02_independence_identities():
    with criterion(2, "all measures vanish at independence except poisson_stirling == -n11"):
        cases = [(100, 20, 25), (1000, 100, 40), (60, 30, 30), (12, 6, 4)]
        for n, n1p, np1 in cases:
            m11 = n1p * np1 / n
            assert m11 == int(m11), "test case must have an integer expected cell"
            n11 = int(m11)
            table = assoc.ContingencyTable(
                n11=n11, n12=n1p - n11, n21=np1 - n11, n22=n - n1p - np1 + n11
            )
            s = assoc.score_bigram(table)
            for name in ("pmi", "t_score", "chi", "log_likelihood", "phi", "salience"):
                assert abs(getattr(s, name)) <= 1e-9, name
            assert abs(s.poisson_stirling - (-n11)) <= 1e-9


def test_criterion_03_counting_oracle():
    with criterion(3, "streaming counts equal naive enumeration on 100 random corpora"):
        suffixes = SuffixList(["der", "er", "া"])
        rng = Rng(77)
        for _ in range(100):
            total = rng.below(200) + 1
            tokens = [random_word(rng) for _ in range(total)]
            sentences = []
            position = 0
            while position < total:
                length = 1 + rng.below(12)
                chunk = tokens[position : position + length]
                sentences.append(corpus.Sentence(tokens=tuple(chunk)))
                position += length
            got = assoc.build_counts(sentences, suffixes)

            from mwekit.stemmer import stem_word

            stemmed = [[stem_word(t, suffixes) for t in s.tokens] for s in sentences]
            unigrams = Counter(s for ts in stemmed for s in ts)
            bigrams = Counter(
                (ts[i], ts[i + 1]) for ts in stemmed for i in range(len(ts) - 1)
            )
            firsts: Counter = Counter()
            seconds: Counter = Counter()
            for (a, b), count in bigrams.items():
                firsts[a] += count
                seconds[b] += count
            assert got.unigram == dict(unigrams)
            assert got.bigram == dict(bigrams)
            assert got.first_marginal == dict(firsts)
            assert got.second_marginal == dict(seconds)
            assert got.total_bigrams == sum(bigrams.values())
            assert got.total_tokens == total


def test_criterion_04_candidate_extraction_golden():
    with criterion(4, "fixture corpus yields exactly the hand-enumerated candidate set"):
        suffixes = SuffixList.from_file(DATA / "suffixes.txt")
        numbers = candidates.load_wordlist(DATA / "numbers.txt")
        gold = candidates.load_gold_list(DATA / "gold.txt", suffixes)
        from mwekit.wordnet_sim import BilingualDictionary

        vocab = BilingualDictionary.from_file(DATA / "dict.tsv").headwords
        chunked = corpus.parse_chunk_file(DATA / "chunks.tsv")
        raw = list(corpus.iter_corpus_sentences(DATA / "corpus"))
        merged = candidates.merge_candidates(
            candidates.extract_chunk_candidates(chunked, suffixes, numbers),
            candidates.extract_heuristic_candidates(raw, vocab, suffixes, numbers),
        )
        labeled = candidates.label_candidates(merged, gold)
        golden = candidates.read_candidates(DATA / "golden" / "candidates.tsv")
        assert {(c.key, lab) for c, lab in labeled} == {(c.key, lab) for c, lab in golden}
        assert sorted(labeled, key=lambda p: p[0].key) == sorted(
            golden, key=lambda p: p[0].key
        )
        # number pairs stayed out
        keys = {c.key for c, _ in labeled}
        assert ("12", "34") not in keys and ("soyA", "teen") not in keys
        # every heuristic flag is exercised by the fixture
        by_key = {c.key: c for c, _ in labeled}
        assert by_key[("mA", "bAbA")].hyphenated
        assert by_key[("roaming", "chArge")].quoted and by_key[("roaming", "chArge")].oov
        assert by_key[("nano", "sim")].bracketed and by_key[("nano", "sim")].oov
        assert by_key[("bAri", "bAri")].reduplicated


def test_criterion_05_stemmer_oracle():
    with criterion(5, "longest-match and stem-length guard hold on 1000 fuzzed cases"):
        rng = Rng(4242)
        for _ in range(1000):
            word = random_word(rng, low=1, high=12)
            entries = [random_word(rng, low=1, high=4) for _ in range(rng.below(7))]
            # bias half the cases toward suffixes that actually match
            if entries and rng.below(2) == 0 and len(word) > 2:
                cut = 1 + rng.below(len(word) - 1)
                entries[rng.below(len(entries))] = word[cut:]
            result = stem(word, SuffixList(entries))
            qualifying = [
                s
                for s in set(entries)
                if s and word.endswith(s) and len(word) - len(s) >= MIN_STEM
            ]
            if qualifying:
                expected = max(qualifying, key=len)
                assert result.suffix == expected
                assert result.stem == word[: len(word) - len(expected)]
            else:
                assert result.stem == word and result.suffix == ""
            assert result.stem + result.suffix == word
            assert not result.suffix or len(result.stem) >= MIN_STEM


def test_criterion_06_wordnet_fixture():
    with criterion(6, "toy graph: self path 1, hypernym path 1/2, wup 2/3, symmetry"):
        from mwekit.wordnet_sim import load_ic, load_wordnet

        graph = load_wordnet(DATA / "wn" / "index.noun", DATA / "wn" / "data.noun")
        ic = load_ic(DATA / "wn" / "ic.tsv")
        for lemma in ("police", "house", "three"):
            assert similarity(lemma, lemma, graph, ic).path == 1.0
        assert similarity("animal", "entity", graph, ic).path == pytest.approx(0.5)
        assert abs(similarity("animal", "plant", graph, ic).wup - 2 / 3) <= 1e-9
        lemmas = sorted(graph.lemma_index)
        for a, b in itertools.combinations(lemmas, 2):
            assert similarity(a, b, graph, ic) == similarity(b, a, graph, ic), (a, b)


def test_criterion_07_forest_learnability():
    with criterion(7, "OOB <= 0.05 and 10-fold weighted F >= 0.95 on the separable set"):
        start = time.perf_counter()
        data = separable_dataset(seed=7)
        mask = features.preset_mask("proposed")
        config = forest.TrainConfig(seed=7, num_trees=30)
        model = forest.train(data, mask, config)
        assert model.oob_error <= 0.05, model.oob_error
        report = evaluation.cross_validate(data, mask, config, k=10, seed=7)
        assert report.weighted_f >= 0.95, report.weighted_f
        labels = [fv.label for fv in data]
        Rng(8).shuffle(labels)
        shuffled = [
            features.FeatureVector(values=fv.values, label=lab, key=fv.key)
            for fv, lab in zip(data, labels)
        ]
        chance = forest.train(shuffled, mask, config)
        assert 0.4 <= chance.oob_error <= 0.6, chance.oob_error
        elapsed = time.perf_counter() - start
        assert elapsed < 10.0, f"learnability run took {elapsed:.2f}s"


def test_criterion_08_determinism(tmp_path):
    with criterion(8, "identical config+seed reproduces bytes; save/load preserves predictions"):
        data = separable_dataset(seed=21, n=120)
        mask = features.preset_mask("proposed")
        config = forest.TrainConfig(seed=21)
        paths = []
        for name in ("run1.json", "run2.json"):
            model = forest.train(data, mask, config)
            path = tmp_path / name
            forest.save(model, path)
            paths.append(path)
        assert paths[0].read_bytes() == paths[1].read_bytes()

        reports = [
            json.dumps(
                evaluation.run_experiment("proposed", data, k=5, seed=21, train_config=config).to_dict(),
                sort_keys=True,
            )
            for _ in range(2)
        ]
        assert reports[0] == reports[1]

        restored = forest.load(paths[0])
        original = forest.train(data, mask, config)
        rng = Rng(555)
        for _ in range(1000):
            probe = features.FeatureVector(
                values=[rng.uniform() * 6 - 3 for _ in range(features.NUM_SLOTS)],
                label="?",
                key=("p", "q"),
            )
            assert forest.predict(restored, probe) == forest.predict(original, probe)


def test_criterion_09_evaluation_math():
    with criterion(9, "worked confusion matrix metrics and fold-plan partitioning"):
        pos, _neg, _weighted = evaluation.metrics(
            evaluation.ConfusionMatrix(tp=8, fp=2, fn=4, tn=86)
        )
        assert round(pos.precision, 4) == 0.8
        assert round(pos.recall, 4) == 0.6667
        assert round(pos.f_measure, 4) == 0.7273
        for n, k, seed in ((14, 10, 3), (100, 10, 1), (23, 7, 9), (10, 10, 4)):
            plan = evaluation.kfold_split(n, k, seed)
            sizes = plan.fold_sizes()
            assert sum(sizes) == n
            assert max(sizes) - min(sizes) <= 1
            assert set(plan.assignments) == set(range(k))


def test_criterion_10_experiment_presets():
    with criterion(10, "four presets run end-to-end on the fixture corpus with one fold plan"):
        matrix = fixture_matrix()
        assert len(matrix) == 14
        k, seed = 5, 11
        config = forest.TrainConfig(seed=seed)
        reports = [
            evaluation.run_experiment(name, matrix, k=k, seed=seed, train_config=config)
            for name in features.PRESET_NAMES
        ]
        assert [r.preset for r in reports] == list(features.PRESET_NAMES)
        assert len({r.plan for r in reports}) == 1
        table = evaluation.format_report_table(reports)
        rows = [
            line
            for line in table.splitlines()
            if line.startswith(("proposed", "baseline1", "baseline2", "baseline3"))
        ]
        assert len(rows) == 4

        # masking: permuting inactive slots never changes a prediction
        mask = features.preset_mask("baseline1")
        model = forest.train(matrix, mask, config)
        before = [forest.predict(model, fv) for fv in matrix]
        rng = Rng(17)
        inactive = [i for i in range(features.NUM_SLOTS) if i not in mask.active]
        permuted_rows = list(range(len(matrix)))
        rng.shuffle(permuted_rows)
        scrambled = []
        for row, fv in enumerate(matrix):
            values = list(fv.values)
            for slot in inactive:
                values[slot] = matrix[permuted_rows[row]].values[slot]
            scrambled.append(
                features.FeatureVector(values=values, label=fv.label, key=fv.key)
            )
        after = [forest.predict(model, fv) for fv in scrambled]
        assert before == after
