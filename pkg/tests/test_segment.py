import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import enumerate_segmentations

from epigocr import segment
from epigocr.segment import Lexicon, build_lexicon, normalize_base, split_graphemes, word_break

tamil_text = st.text(st.sampled_from("கஙசனதமவரலழாிீுூெேைொோௌ்ௗ"), max_size=20)


class TestGraphemes:
    @pytest.mark.parametrize(
        "text, clusters",
        [
            ("க", ("க",)),
            ("கா", ("கா",)),
            ("ன்", ("ன்",)),
            ("தமிழ்", ("த", "மி", "ழ்")),
            ("கௌ", ("கௌ",)),
            ("", ()),
        ],
    )
    def test_examples(self, text, clusters):
        assert split_graphemes(text).clusters == clusters

    def test_two_marks_stay_on_one_base(self):
        assert split_graphemes("கொ்").clusters == ("கொ்",)

    def test_degenerate_lead(self):
        seq = split_graphemes("ாக")
        assert seq.degenerate_lead
        assert seq.clusters == ("ா", "க")
        assert not split_graphemes("கா").degenerate_lead

    @given(tamil_text)
    def test_concatenation_round_trip(self, text):
        seq = split_graphemes(text)
        assert str(seq) == text
        assert all(c and not segment.is_combining(c[0]) for c in seq.clusters[seq.degenerate_lead :])

    @given(tamil_text)
    def test_count_equals_non_combining_plus_lead(self, text):
        bases = sum(not segment.is_combining(ch) for ch in text)
        assert len(split_graphemes(text)) == bases + split_graphemes(text).degenerate_lead


class TestNormalizeBase:
    @pytest.mark.parametrize("text, base", [("ன்", "ன"), ("கா", "க"), ("தமிழ்", "தமழ"), ("அ", "அ")])
    def test_examples(self, text, base):
        assert str(normalize_base(text)) == base

    def test_degenerate_lead_kept(self):
        assert normalize_base("்க").clusters == ("்", "க")

    @given(tamil_text)
    def test_idempotent_and_length_preserving(self, text):
        once = normalize_base(text)
        assert normalize_base(str(once)) == once
        assert len(once) == len(split_graphemes(text))


class TestLexicon:
    def test_dedup(self):
        lex = build_lexicon(["அவன்", "அவன்", "வந்தான்"])
        assert lex.size == len(lex) == 2

    def test_lookup_by_clusters(self):
        lex = build_lexicon(["அவன்"])
        assert "அவன்" in lex
        assert "அவ" not in lex
        assert lex.lookup(("அ", "வ", "ன்"))
        assert lex.max_len == 3

    def test_empty_word_rejected(self):
        with pytest.raises(ValueError):
            build_lexicon([""])

    def test_parse_skips_comments(self):
        lex = segment.parse_lexicon("# header\nஅவன்\n\n  வந்தான்  \n")
        assert len(lex) == 2 and "வந்தான்" in lex

    def test_prefix_matches(self):
        lex = build_lexicon(["ab", "abc", "c"])
        assert lex.prefix_matches(tuple("xabc"), 1) == [3, 4]


class TestWordBreak:
    def test_two_words(self):
        lex = build_lexicon(["அவன்", "வந்தான்"])
        seg = word_break("அவன்வந்தான்", lex)
        assert segment.render_spaced(seg, "அவன்வந்தான்") == "அவன் வந்தான்"
        assert [p.kind for p in seg.pieces] == ["lexicon", "lexicon"]
        assert seg.cost == (0, 2)

    def test_fewest_pieces(self):
        lex = build_lexicon(["ab", "abc", "c"])
        seg = word_break("abc", lex)
        assert seg.boundaries == (3,) and seg.cost == (0, 1)

    def test_empty_lexicon_is_one_unknown_run(self):
        seg = word_break("தமிழ்", Lexicon())
        assert seg.pieces == (segment.Piece(0, 3, "oov"),)
        assert seg.cost == (3, 1)

    def test_empty_text(self):
        seg = word_break("", build_lexicon(["a"]))
        assert seg.pieces == () and seg.cost == (0, 0)

    def test_unknown_run_between_words(self):
        lex = build_lexicon(["ab", "cd"])
        seg = word_break("abxycd", lex)
        assert [(p.start, p.end, p.kind) for p in seg.pieces] == [(0, 2, "lexicon"), (2, 4, "oov"), (4, 6, "lexicon")]

    def test_tie_prefers_earlier_boundaries(self):
        lex = build_lexicon(["a", "ab", "b", "ba"])
        # "aba" splits as a|ba or ab|a, both two known pieces
        assert word_break("aba", lex).boundaries == (1, 3)

    def test_clusters_never_split(self):
        lex = build_lexicon(["க"])
        seg = word_break("கா", lex)
        assert seg.pieces == (segment.Piece(0, 1, "oov"),)

    def test_matches_exhaustive_search(self, rng):
        alphabet = list("abcd")
        for _ in range(300):
            n = int(rng.integers(0, 11))
            text = "".join(rng.choice(alphabet, n))
            words = {"".join(rng.choice(alphabet, int(rng.integers(1, 4)))) for _ in range(int(rng.integers(0, 8)))}
            lex = build_lexicon(words)
            seg = word_break(text, lex)
            word_set = {tuple(w) for w in words}
            best_cost, best_ends = min(enumerate_segmentations(tuple(text), word_set))
            assert (seg.cost, seg.boundaries) == (best_cost, best_ends), (text, words)

    @given(tamil_text, st.lists(tamil_text.filter(bool), max_size=6))
    def test_pieces_tile_the_input(self, text, words):
        seg = word_break(text, build_lexicon(words))
        clusters = split_graphemes(text).clusters
        assert "".join("".join(clusters[p.start : p.end]) for p in seg.pieces) == text
        assert [p.start for p in seg.pieces] == [0, *seg.boundaries][: len(seg.pieces)]
        assert all(p.start < p.end for p in seg.pieces)
        for a, b in zip(seg.pieces, seg.pieces[1:]):
            assert not (a.kind == b.kind == "oov")
        assert seg.cost[0] == sum(p.end - p.start for p in seg.pieces if p.kind == "oov")
