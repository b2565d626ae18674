"""Parsing, printing, sizes, and operator sets."""

import pytest

from templearn import (
    FormulaSyntaxError, OperatorSet, conforms, parse_ctl, parse_ltl,
    print_formula, prop_names, size, subformulas,
)
from templearn.formulas import (
    CtlBinary, CtlNot, CtlQuantBinary, CtlQuantUnary, LtlBinary, LtlUnary,
    Prop, structural_key,
)


class TestParsing:
    def test_atom(self):
        f = parse_ltl("p")
        assert isinstance(f, Prop) and f.name == "p"

    def test_precedence_chain(self):
        f = parse_ltl("!p & q | r -> s <-> t")
        # <-> binds loosest, then ->, |, &, unary.
        assert f == LtlBinary(
            "<->",
            LtlBinary(
                "->",
                LtlBinary(
                    "|",
                    LtlBinary("&", LtlUnary("!", Prop("p")), Prop("q")),
                    Prop("r")),
                Prop("s")),
            Prop("t"))

    def test_until_is_right_associative(self):
        assert parse_ltl("p U q U r") == parse_ltl("p U (q U r)")

    def test_implication_is_right_associative(self):
        assert parse_ltl("p -> q -> r") == parse_ltl("p -> (q -> r)")

    def test_and_is_left_associative(self):
        assert parse_ltl("p & q & r") == parse_ltl("(p & q) & r")

    def test_temporal_binds_tighter_than_and(self):
        assert parse_ltl("p U q & r") == parse_ltl("(p U q) & (r)")

    def test_unary_stacking(self):
        f = parse_ltl("G F !p")
        assert f == LtlUnary("G", LtlUnary("F", LtlUnary("!", Prop("p"))))

    def test_parse_error_position(self):
        with pytest.raises(FormulaSyntaxError) as info:
            parse_ltl("p | | q")
        assert info.value.position == 4

    def test_reserved_word_is_not_a_proposition(self):
        with pytest.raises(FormulaSyntaxError):
            parse_ltl("U")

    def test_unbalanced_parenthesis(self):
        with pytest.raises(FormulaSyntaxError):
            parse_ltl("(p | q")

    def test_trailing_junk(self):
        with pytest.raises(FormulaSyntaxError):
            parse_ltl("p q")


class TestCtlParsing:
    def test_quantified_unary(self):
        assert parse_ctl("E F p") == CtlQuantUnary("E", "F", Prop("p"))
        assert parse_ctl("A G p") == CtlQuantUnary("A", "G", Prop("p"))

    def test_quantified_binary(self):
        assert parse_ctl("A (p U q)") == CtlQuantBinary(
            "A", "U", Prop("p"), Prop("q"))
        assert parse_ctl("E (p W q)") == CtlQuantBinary(
            "E", "W", Prop("p"), Prop("q"))

    def test_nested(self):
        f = parse_ctl("A(p U (E G q)) & !E X p")
        assert f == CtlBinary(
            "&",
            CtlQuantBinary("A", "U", Prop("p"),
                           CtlQuantUnary("E", "G", Prop("q"))),
            CtlNot(CtlQuantUnary("E", "X", Prop("p"))))

    def test_bare_temporal_operator_is_rejected(self):
        with pytest.raises(FormulaSyntaxError, match="path quantifier"):
            parse_ctl("p U q")

    def test_bare_unary_temporal_is_rejected(self):
        with pytest.raises(FormulaSyntaxError):
            parse_ctl("F p")


class TestPrinting:
    ROUND_TRIPS = [
        "p", "!p", "p & q", "p | q & r", "(p | q) & r", "p U q U r",
        "(p U q) U r", "X (p | q)", "G F p", "p -> q -> r", "(p -> q) -> r",
        "p <-> q <-> r", "p M q | r W s", "!(p & q)", "F (p & X q)",
    ]

    @pytest.mark.parametrize("text", ROUND_TRIPS)
    def test_ltl_round_trip(self, text):
        f = parse_ltl(text)
        assert parse_ltl(print_formula(f)) == f

    CTL_ROUND_TRIPS = [
        "E F p", "A G (p -> E X q)", "A (p U q)", "E (p R (A G q))",
        "!A F p & E (p M q)",
    ]

    @pytest.mark.parametrize("text", CTL_ROUND_TRIPS)
    def test_ctl_round_trip(self, text):
        f = parse_ctl(text)
        assert parse_ctl(print_formula(f)) == f

    def test_minimal_parentheses(self):
        assert print_formula(parse_ltl("(p & q) | r")) == "p & q | r"
        assert print_formula(parse_ltl("p & (q | r)")) == "p & (q | r)"
        assert print_formula(parse_ltl("p U (q U r)")) == "p U q U r"
        assert print_formula(parse_ltl("(p U q) U r")) == "(p U q) U r"
        assert print_formula(parse_ltl("X(p)")) == "X p"

    def test_str_matches_print(self):
        f = parse_ltl("p U (q & r)")
        assert str(f) == print_formula(f)


class TestSizeAndSubformulas:
    def test_size_counts_distinct_subformulas(self):
        f = parse_ltl("(p | q) & (p | q)")
        # Sub-formulas: p, q, p|q, the conjunction.
        assert size(f) == 4
        assert len(subformulas(f)) == 4

    def test_size_examples(self):
        assert size(parse_ltl("p")) == 1
        assert size(parse_ltl("p U p")) == 2
        assert size(parse_ltl("G (p W q)")) == 4
        assert size(parse_ctl("A (p U (E G q))")) == 4

    def test_prop_names(self):
        assert prop_names(parse_ltl("p U (q & p)")) == frozenset({"p", "q"})

    def test_formulas_are_hashable_and_comparable(self):
        a = parse_ltl("p & (q | p)")
        b = parse_ltl("p & (q | p)")
        assert a == b and hash(a) == hash(b)
        assert len({a, b}) == 1
        assert a != parse_ltl("p & (q | q)")


class TestOperatorSet:
    def test_from_names_accepts_tokens_and_names(self):
        ops = OperatorSet.from_names(["OR", "!", "U", "E"])
        assert "|" in ops.binary and "!" in ops.unary
        assert "U" in ops.binary and "E" in ops.quantifiers

    def test_from_names_rejects_unknown(self):
        with pytest.raises(ValueError, match="unknown operator"):
            OperatorSet.from_names(["XOR"])

    def test_constructor_rejects_unknown(self):
        with pytest.raises(ValueError):
            OperatorSet(unary=frozenset({"?"}), binary=frozenset(),
                        quantifiers=frozenset())

    def test_conforms(self):
        ops = OperatorSet.from_names(["OR", "NOT"])
        assert conforms(parse_ltl("!p | q"), ops)
        assert not conforms(parse_ltl("p & q"), ops)
        assert not conforms(parse_ltl("F p"), ops)

    def test_conforms_quantifiers(self):
        ops = OperatorSet.from_names(["F", "G", "E"])
        assert conforms(parse_ctl("E F p"), ops)
        assert not conforms(parse_ctl("A F p"), ops)


class TestStructuralKey:
    def test_props_come_before_compounds(self):
        assert structural_key(parse_ltl("p")) < structural_key(
            parse_ltl("!p"))

    def test_operator_order_next_before_eventually(self):
        assert structural_key(parse_ltl("X p")) < structural_key(
            parse_ltl("F p"))

    def test_key_is_injective_on_distinct_formulas(self):
        texts = ["p", "q", "!p", "X p", "p & q", "q & p", "p U q",
                 "p W q", "p | (q & p)", "(p | q) & p"]
        keys = {structural_key(parse_ltl(t)) for t in texts}
        assert len(keys) == len(texts)

    def test_quantifier_distinguishes_ctl_keys(self):
        assert structural_key(parse_ctl("E F p")) != structural_key(
            parse_ctl("A F p"))
