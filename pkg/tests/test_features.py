import pytest

from mwekit.assoc import build_counts
from mwekit.candidates import Candidate
from mwekit.corpus import Sentence
from mwekit.features import (
    LAYOUT_HASH,
    NUM_SLOTS,
    SLOT_NAMES,
    FeatureMask,
    FeatureVector,
    featurize,
    layout_hash,
    preset_mask,
    read_matrix,
    write_matrix,
)
from mwekit.stemmer import SuffixList

PLAIN = SuffixList([])


def tiny_counts():
    return build_counts(
        [Sentence(tokens=("rAjya", "sarkAr", "bAri", "bAri"))], PLAIN
    )


def make_candidate(**kwargs):
    defaults = dict(w1="rAjya", w2="sarkAr", stem1="rAjya", stem2="sarkAr")
    defaults.update(kwargs)
    return Candidate(**defaults)


class TestLayout:
    def test_28_slots(self):
        assert NUM_SLOTS == 28
        assert len(SLOT_NAMES) == 28

    def test_layout_hash_tracks_names(self):
        assert layout_hash(SLOT_NAMES) == LAYOUT_HASH
        assert layout_hash(("other",)) != LAYOUT_HASH

    def test_vector_length_enforced(self):
        with pytest.raises(ValueError):
            FeatureVector(values=[0.0] * 27, label="negative", key=("a", "b"))


class TestFeaturize:
    def test_average_length_in_code_points(self):
        fv = featurize(make_candidate(), tiny_counts())
        assert fv.values[14] == pytest.approx(5.5)  # (5 + 6) / 2

    def test_reduplication_from_identical_stems(self):
        fv = featurize(
            make_candidate(w1="bAri", w2="bAri", stem1="bAri", stem2="bAri"),
            tiny_counts(),
        )
        assert fv.values[19] == 1.0

    def test_reduplication_from_identical_surfaces(self):
        fv = featurize(
            make_candidate(w1="bAri", w2="bAri", stem1="bAri", stem2="bAr"),
            tiny_counts(),
        )
        assert fv.values[19] == 1.0

    def test_one_hot_nnp(self):
        fv = featurize(make_candidate(tag1="NNP", tag2="NN"), tiny_counts())
        assert fv.values[22:25] == [0.0, 0.0, 1.0]
        assert fv.values[25:28] == [0.0, 1.0, 0.0]

    def test_na_tags_imputed_as_nn(self):
        fv = featurize(make_candidate(), tiny_counts())  # tags default to NA
        assert fv.values[22:25] == [0.0, 1.0, 0.0]
        assert fv.values[25:28] == [0.0, 1.0, 0.0]

    def test_one_hot_groups_sum_to_one(self):
        for tag in ("XC", "NN", "NNP", "NA"):
            fv = featurize(make_candidate(tag1=tag, tag2=tag), tiny_counts())
            assert sum(fv.values[22:25]) == 1.0
            assert sum(fv.values[25:28]) == 1.0

    def test_inflection_bits(self):
        fv = featurize(
            make_candidate(w1="grAmer", w2="lok", stem1="grAm", stem2="lok"),
            tiny_counts(),
        )
        assert fv.values[20] == 1.0 and fv.values[21] == 0.0

    def test_provenance_flags(self):
        fv = featurize(
            make_candidate(hyphenated=True, quoted=True, bracketed=True, oov=True),
            tiny_counts(),
        )
        assert fv.values[15:19] == [1.0, 1.0, 1.0, 1.0]

    def test_wordnet_slots_zero_without_resources(self):
        fv = featurize(make_candidate(), tiny_counts(), wn=None)
        assert fv.values[9:14] == [0.0] * 5

    def test_association_block_populated(self, raw_sentences, suffixes):
        counts = build_counts(raw_sentences, suffixes)
        fv = featurize(make_candidate(), counts)
        assert fv.values[1] > 0  # pmi of a frequent pair

    def test_binary_slots_are_binary(self, raw_sentences, suffixes):
        counts = build_counts(raw_sentences, suffixes)
        fv = featurize(make_candidate(oov=True), counts)
        for i in list(range(15, 22)) + list(range(22, 28)):
            assert fv.values[i] in (0.0, 1.0)


class TestPresets:
    def test_proposed_uses_all(self):
        assert preset_mask("proposed").active == tuple(range(28))

    def test_baseline1_is_the_nine_association_slots(self):
        mask = preset_mask("baseline1")
        assert mask.active == tuple(range(9))
        assert len(mask.active) == 9

    def test_baseline2_is_the_five_wordnet_slots(self):
        mask = preset_mask("baseline2")
        assert mask.active == tuple(range(9, 14))
        assert len(mask.active) == 5

    def test_baseline3_drops_wordnet_and_reduplication(self):
        mask = preset_mask("baseline3")
        assert len(mask.active) == 22
        assert not set(range(9, 14)) & set(mask.active)
        assert 19 not in mask.active

    def test_unknown_preset_rejected(self):
        with pytest.raises(ValueError, match="unknown preset"):
            preset_mask("bogus")

    def test_empty_mask_rejected(self):
        with pytest.raises(ValueError):
            FeatureMask(name="x", active=())


class TestMatrixIO:
    def vectors(self):
        counts = tiny_counts()
        return [
            featurize(make_candidate(), counts, label="positive"),
            featurize(
                make_candidate(w1="bAri", w2="bAri", stem1="bAri", stem2="bAri"),
                counts,
                label="negative",
            ),
        ]

    def test_round_trip_is_exact(self, tmp_path):
        path = tmp_path / "matrix.tsv"
        vectors = self.vectors()
        write_matrix(vectors, path)
        restored, matrix_hash = read_matrix(path)
        assert matrix_hash == LAYOUT_HASH
        assert restored == vectors

    def test_foreign_header_hash_differs(self, tmp_path):
        path = tmp_path / "matrix.tsv"
        header = "\t".join(["a"] * 28) + "\tlabel\tstem1\tstem2"
        row = "\t".join(["0.0"] * 28) + "\tpositive\tx\ty"
        path.write_text(header + "\n" + row + "\n", encoding="utf-8")
        _, matrix_hash = read_matrix(path)
        assert matrix_hash != LAYOUT_HASH

    def test_malformed_rows_rejected(self, tmp_path):
        path = tmp_path / "matrix.tsv"
        write_matrix(self.vectors(), path)
        truncated = path.read_text(encoding="utf-8").splitlines()
        truncated[1] = "\t".join(truncated[1].split("\t")[:5])
        path.write_text("\n".join(truncated) + "\n", encoding="utf-8")
        with pytest.raises(ValueError):
            read_matrix(path)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "matrix.tsv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(ValueError):
            read_matrix(path)
