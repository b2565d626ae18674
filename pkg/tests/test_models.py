"""Words, structures, samples, and the on-disk sample format."""

import pytest

from templearn import (
    KripkeStructure, Sample, SampleFormatError, Word, embed_word,
    load_sample, save_sample,
)
from templearn.models import parse_word_text, word_to_text


class TestWord:
    def test_letters_are_normalized(self):
        w = Word(["p"], [["p", "q"], []])
        assert w.prefix == (frozenset({"p"}),)
        assert w.period == (frozenset({"p", "q"}), frozenset())

    def test_indexing_wraps_into_period(self):
        w = Word(["p"], [["p", "q"], []])
        assert [sorted(w.letter_at(i)) for i in range(6)] == [
            ["p"], ["p", "q"], [], ["p", "q"], [], ["p", "q"]]

    def test_suffix_classes(self):
        w = Word(["p"], [["p", "q"], []])
        assert w.length == 3 and w.loop_start == 1
        assert [w.suffix_class(i) for i in range(8)] == [
            0, 1, 2, 1, 2, 1, 2, 1]
        assert [w.next_class(i) for i in range(w.length)] == [1, 2, 1]

    def test_next_class_rejects_out_of_range(self):
        w = Word([], [["p"]])
        with pytest.raises(IndexError):
            w.next_class(1)

    def test_empty_period_is_rejected(self):
        with pytest.raises(ValueError, match="period"):
            Word(["p"], [])

    def test_props(self):
        assert Word(["p"], [["q"], []]).props() == frozenset({"p", "q"})

    def test_text_round_trip(self):
        w = Word(["p"], [["p", "q"], []])
        assert word_to_text(w) == "{p} | {p,q};{}"
        assert parse_word_text(word_to_text(w)) == w

    def test_purely_periodic_text(self):
        w = Word([], [["p"]])
        assert word_to_text(w) == "| {p}"
        assert parse_word_text("| {p}") == w

    def test_malformed_word_text(self):
        with pytest.raises(SampleFormatError):
            parse_word_text("{p}")  # missing the separator
        with pytest.raises(SampleFormatError):
            parse_word_text("{p} | ")  # empty period
        with pytest.raises(SampleFormatError):
            parse_word_text("{p} | p")  # letters need braces


class TestKripkeStructure:
    def make(self):
        return KripkeStructure(
            states=("a", "b"),
            initial=("a",),
            edges=(("a", "b"), ("b", "a"), ("b", "b")),
            labels=(["p"], []),
        )

    def test_accessors(self):
        k = self.make()
        assert k.label_of("a") == frozenset({"p"})
        assert k.successors("b") == ("a", "b")
        assert k.props() == frozenset({"p"})

    def test_labels_as_dict(self):
        k = KripkeStructure(("a",), ("a",), (("a", "a"),), {"a": ["p"]})
        assert k.label_of("a") == frozenset({"p"})

    @pytest.mark.parametrize("args,message", [
        ((("a", "a"), ("a",), (("a", "a"),), ([], [])), "duplicate state"),
        ((("a", "b"), ("a",), (("a", "b"),), ([], [])), "not total"),
        ((("a",), (), (("a", "a"),), ([],)), "initial state is required"),
        ((("a",), ("x",), (("a", "a"),), ([],)), "unknown initial"),
        ((("a",), ("a",), (("a", "x"),), ([],)), "unknown state"),
        ((("a",), ("a",), (("a", "a"),), {"x": []}), "exactly the declared"),
        ((("a",), ("a",), (("a", "a"),), ([], [])), "exactly the declared"),
    ])
    def test_validation(self, args, message):
        with pytest.raises(ValueError, match=message):
            KripkeStructure(*args)

    def test_embed_word(self):
        k = embed_word(Word([], [["p"]]))
        assert k.states == ("q",)
        assert k.initial == frozenset({"q"})
        assert k.edges == frozenset({("q", "q")})
        assert k.labels == (frozenset({"p"}),)

    def test_embed_word_rejects_longer_words(self):
        with pytest.raises(ValueError):
            embed_word(Word(["p"], [["p"]]))
        with pytest.raises(ValueError):
            embed_word(Word([], [["p"], []]))


class TestSample:
    def test_duplicates_are_dropped_keeping_first(self):
        w = Word([], [["p"]])
        s = Sample(["p"], "ltl", [w, Word([], [["p"]])], [], bound=2)
        assert s.positives == (w,)

    def test_examples_property(self):
        a, b = Word([], [["p"]]), Word([], [[]])
        s = Sample(["p"], "ltl", [a], [b])
        assert s.examples == (a, b)

    def test_alphabet_must_cover_examples(self):
        with pytest.raises(ValueError, match="outside the alphabet"):
            Sample(["p"], "ltl", [Word([], [["q"]])], [])

    def test_positive_negative_overlap(self):
        w = Word([], [["p"]])
        with pytest.raises(ValueError, match="both positive and negative"):
            Sample(["p"], "ltl", [w], [w])

    def test_logic_example_type_mismatch(self):
        w = Word([], [["p"]])
        k = embed_word(w)
        with pytest.raises(ValueError):
            Sample(["p"], "ctl", [w], [])
        with pytest.raises(ValueError):
            Sample(["p"], "ltl", [k], [])

    def test_bound_validation(self):
        with pytest.raises(ValueError, match="at least 1"):
            Sample(["p"], "ltl", [], [], bound=0)

    def test_bad_logic(self):
        with pytest.raises(ValueError, match="logic"):
            Sample(["p"], "xtl", [], [])

    def test_bad_proposition_name(self):
        with pytest.raises(ValueError):
            Sample(["p q"], "ltl", [], [])


class TestSampleFiles:
    def test_ltl_round_trip(self, tmp_path):
        s = Sample(
            ["p", "q"], "ltl",
            [Word(["p"], [["p", "q"], []])],
            [Word([], [[]])],
            bound=4,
        )
        path = tmp_path / "a.sample"
        save_sample(s, path)
        assert load_sample(path) == s

    def test_ctl_round_trip(self, tmp_path):
        k = KripkeStructure(
            ("a", "b"), ("a",),
            (("a", "b"), ("b", "a"), ("b", "b")),
            (["p"], []),
        )
        s = Sample(["p"], "ctl", [k], [embed_word(Word([], [[]]))])
        path = tmp_path / "b.sample"
        save_sample(s, path)
        loaded = load_sample(path)
        assert loaded == s
        assert loaded.positives[0].successors("b") == ("a", "b")

    def test_comments_and_blank_lines_are_ignored(self, tmp_path):
        path = tmp_path / "c.sample"
        path.write_text(
            "# header comment\n\nalphabet: p\nlogic: ltl\n\n"
            "# an example\npos: | {p}\n")
        s = load_sample(path)
        assert s.positives == (Word([], [["p"]]),)
        assert s.bound is None

    @pytest.mark.parametrize("text,line,message", [
        ("pos: | {p}\n", 1, "before any example"),
        ("alphabet: p\nlogic: ltl\nnope\n", 3, "key: value"),
        ("alphabet: p\nlogic: ltl\npos: | {q}\n", 3, "not in the alphabet"),
        ("alphabet: p\nlogic: ltl\nbound: zero\n", 3, "integer"),
        ("alphabet: p\nlogic: ltl\nbound: 0\n", 3, "at least 1"),
        ("alphabet: p\nlogic: ltl\nalphabet: q\n", 3, "twice"),
        ("alphabet: p\nlogic: nope\n", 2, "unknown logic"),
        ("alphabet: p\nlogic: ltl\nfoo: bar\n", 3, "unknown directive"),
        ("alphabet: p\nlogic: ltl\npos-kripke:\n", 3, "belong to ctl"),
        ("alphabet: p\nlogic: ctl\npos: | {p}\n", 3, "belong to ltl"),
        ("alphabet: p\nlogic: ctl\npos-kripke:\nstate a {p}\ninit a\n", 4,
         "missing its 'end'"),
        ("alphabet: p\nlogic: ctl\npos-kripke:\nstate a {p}\ninit a\nend\n",
         6, "not total"),
        ("alphabet: p\n", 2, "missing alphabet or logic"),
    ])
    def test_format_errors_carry_line_numbers(self, tmp_path, text, line,
                                              message):
        path = tmp_path / "bad.sample"
        path.write_text(text)
        with pytest.raises(SampleFormatError, match=message) as info:
            load_sample(path)
        assert info.value.line == line

    def test_kripke_block_parsing(self, tmp_path):
        path = tmp_path / "k.sample"
        path.write_text(
            "alphabet: p, q\nlogic: ctl\n"
            "pos-kripke:\n"
            "state s0 {p,q}\n"
            "state s1 {}\n"
            "init s0\n"
            "edge s0 s1\n"
            "edge s1 s0\n"
            "end\n")
        s = load_sample(path)
        k = s.positives[0]
        assert k.states == ("s0", "s1")
        assert k.label_of("s0") == frozenset({"p", "q"})
        assert k.initial == frozenset({"s0"})
