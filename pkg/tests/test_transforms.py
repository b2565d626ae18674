"""Temporal elimination, quantifier transfer, and conciseness analysis."""

import random

import pytest

from templearn import (
    analyze_conciseness, check_ltl, insert_quantifiers, is_temporal_free,
    parse_ctl, parse_ltl, print_formula, size, strip_quantifiers,
    subformulas, temporal_eliminate,
)
from templearn.models import parse_word_text
from templearn.transforms import infer_blocks


class TestTemporalEliminate:
    @pytest.mark.parametrize("before,after", [
        ("p", "p"),
        ("!p", "!p"),
        ("X p", "p"),
        ("F (p & q)", "p & q"),
        ("G (x1 W x2)", "x1 | x2"),
        ("!(p U q)", "!q"),
        ("p R q", "q"),
        ("p M q", "p & q"),
        ("G F X p", "p"),
        ("(p U q) -> (r W s)", "q -> (r | s)"),
        ("(p | q) <-> !r", "(p | q) <-> !r"),
    ])
    def test_examples(self, before, after):
        assert temporal_eliminate(parse_ltl(before)) == parse_ltl(after)

    def test_result_is_temporal_free(self):
        rng = random.Random(5)
        for _ in range(200):
            f = random_ltl(rng, ["p", "q", "r"], 6)
            g = temporal_eliminate(f)
            assert is_temporal_free(g)
            assert size(g) <= size(f)

    def test_agrees_on_single_letter_words(self):
        rng = random.Random(6)
        letters = [[], ["p"], ["q"], ["p", "q"]]
        for _ in range(200):
            f = random_ltl(rng, ["p", "q"], 5)
            g = temporal_eliminate(f)
            for letter in letters:
                from templearn import Word
                w = Word([], [letter])
                assert check_ltl(f, w) == check_ltl(g, w), (str(f), letter)

    def test_image_subformulas_come_from_operand_subformulas(self):
        rng = random.Random(7)
        for _ in range(200):
            f = random_ltl(rng, ["p", "q"], 6)
            image_of_subs = {temporal_eliminate(g) for g in subformulas(f)}
            assert subformulas(temporal_eliminate(f)) <= image_of_subs

    def test_rejects_ctl(self):
        with pytest.raises(TypeError):
            temporal_eliminate(parse_ctl("E F p"))

    def test_is_temporal_free(self):
        assert is_temporal_free(parse_ltl("!p & (q | r)"))
        assert not is_temporal_free(parse_ltl("p & X q"))
        assert not is_temporal_free(parse_ctl("E F p"))


def random_ltl(rng, props, budget):
    if budget <= 1 or rng.random() < 0.3:
        return parse_ltl(rng.choice(props))
    if rng.random() < 0.4:
        from templearn.formulas import LtlUnary
        return LtlUnary(rng.choice("!XFG"), random_ltl(rng, props, budget - 1))
    from templearn.formulas import BINARY_OPS, LtlBinary
    split = rng.randint(1, budget - 2) if budget > 2 else 1
    return LtlBinary(rng.choice(sorted(BINARY_OPS)),
                     random_ltl(rng, props, split),
                     random_ltl(rng, props, budget - 1 - split))


class TestQuantifierTransfer:
    @pytest.mark.parametrize("ltl,ctl", [
        ("F p", "E F p"),
        ("p U q", "E (p U q)"),
        ("!(p U X q)", "!E (p U (E X q))"),
        ("p & G q", "p & E G q"),
    ])
    def test_insert_existential(self, ltl, ctl):
        assert insert_quantifiers(parse_ltl(ltl)) == parse_ctl(ctl)

    def test_insert_universal(self):
        assert insert_quantifiers(parse_ltl("F p"), quantifier="A") == \
            parse_ctl("A F p")

    def test_strip_inverts_insert(self):
        rng = random.Random(8)
        for _ in range(200):
            f = random_ltl(rng, ["p", "q"], 6)
            for quantifier in ("E", "A"):
                g = insert_quantifiers(f, quantifier=quantifier)
                assert strip_quantifiers(g) == f
                assert size(g) == size(f)

    def test_strip_mixed_quantifiers(self):
        assert strip_quantifiers(parse_ctl("A (p U (E X q))")) == \
            parse_ltl("p U X q")

    def test_strip_is_identity_on_ltl_like_output(self):
        f = strip_quantifiers(parse_ctl("!p & E F q"))
        assert f == parse_ltl("!p & F q")

    def test_invalid_quantifier(self):
        with pytest.raises(ValueError, match="path quantifier"):
            insert_quantifiers(parse_ltl("F p"), quantifier="Q")

    def test_insert_rejects_ctl(self):
        with pytest.raises(TypeError):
            insert_quantifiers(parse_ctl("E F p"))

    def test_strip_rejects_ltl(self):
        with pytest.raises(TypeError):
            strip_quantifiers(parse_ltl("F p"))


class TestConciseness:
    def test_single_proposition_is_concise(self):
        r = analyze_conciseness(parse_ltl("x1"))
        assert r.is_concise and r.is_temporal_free
        assert r.propositions_used == frozenset({"x1"})

    def test_disjunction_of_distinct_props_is_concise(self):
        assert analyze_conciseness(parse_ltl("x1 | x2")).is_concise

    def test_negation_is_not_concise(self):
        assert not analyze_conciseness(parse_ltl("!x1")).is_concise

    def test_repeated_proposition_is_not_concise(self):
        assert not analyze_conciseness(parse_ltl("x1 | x1")).is_concise
        assert not analyze_conciseness(
            parse_ltl("(x1 | x2) & (x2 | x3)")).is_concise

    def test_temporal_binary_over_disjoint_props_is_concise(self):
        r = analyze_conciseness(parse_ltl("x1 U x2"))
        assert r.is_concise and not r.is_temporal_free

    def test_unary_temporal_is_not_concise(self):
        assert not analyze_conciseness(parse_ltl("F x1")).is_concise

    def test_per_block_count_with_inferred_blocks(self):
        r = analyze_conciseness(parse_ltl("x1 | (x2_bar & x1_bar)"))
        assert r.per_block_count == {1: 2, 2: 1}

    def test_per_block_count_with_explicit_blocks(self):
        blocks = {"left": {"p", "q"}, "right": {"r"}}
        r = analyze_conciseness(parse_ltl("p & r"), blocks=blocks)
        assert r.per_block_count == {"left": 1, "right": 1}

    def test_infer_blocks(self):
        blocks = infer_blocks({"x1", "x2_bar", "other"})
        assert blocks == {1: {"x1", "x1_bar"}, 2: {"x2", "x2_bar"}}

    def test_rejects_ctl(self):
        with pytest.raises(TypeError):
            analyze_conciseness(parse_ctl("E F p"))

    def test_concise_formulas_read_each_prop_once(self):
        # A concise formula's size is exactly 2 * #props - 1.
        for text in ["x1", "x1 | x2", "(x1 & x2) U x3",
                     "(x1 | x2) & (x3 U (x4 <-> x5))"]:
            f = parse_ltl(text)
            r = analyze_conciseness(f)
            assert r.is_concise
            assert size(f) == 2 * len(r.propositions_used) - 1
