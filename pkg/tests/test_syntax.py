"""
Тесты синтаксиса: разбор, печать, замыкание по подформулам
"""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from algebra import Connective
from syntax.formulas import (
    Atom,
    Box,
    Component,
    Compound,
    Constant,
    Diamond,
    Equality,
    Exists,
    Forall,
    FormulaError,
    Mode,
    Vocabulary,
    VocabularyError,
    free_vars,
    fresh_variable,
    neg,
    subformula_closure,
    substitute,
)
from infoset.boxes import BoxList
from infoset.intervals import Interval, IntervalUnion
from infoset.layout import CoordLayout
from infoset.sets import BoxUnionSet
from semantics.models import Frame
from syntax.parser import (
    ParseError,
    infer_vocabulary,
    parse_component,
    parse_document,
    parse_formula,
    parse_infoset,
)
from syntax.printer import format_document, format_formula, format_infoset

A, B = Atom("A"), Atom("B")
P_X = Atom("P", ("x",))


class TestParseFormula:
    """Разбор формул"""

    def test_quantifier(self):
        assert parse_formula("forall x. P(x)") == Forall("x", P_X)

    def test_implication_is_right_associative(self):
        """A -> B -> A = A -> (B -> A)"""
        expected = Compound(Connective.IMPL, (A, Compound(Connective.IMPL, (B, A))))
        assert parse_formula("A -> B -> A") == expected

    def test_negation_is_implication_to_zero(self):
        assert parse_formula("~A") == Compound(Connective.IMPL, (A, Constant(Fraction(0))))
        assert parse_formula("~A") == neg(A)

    def test_join_spellings(self):
        """\\/ и | дают одно и то же"""
        assert parse_formula("A | B") == parse_formula("A \\/ B")
        assert parse_formula("A | B") == Compound(Connective.JOIN, (A, B))

    def test_precedence(self):
        """& сильнее /\\, /\\ сильнее \\/, \\/ сильнее ->"""
        parsed = parse_formula("A & B /\\ A \\/ B -> A")
        conj = Compound(Connective.CONJ, (A, B))
        meet = Compound(Connective.MEET, (conj, A))
        join = Compound(Connective.JOIN, (meet, B))
        assert parsed == Compound(Connective.IMPL, (join, A))

    def test_constants_and_equality(self):
        assert parse_formula("c(1/2)") == Constant(Fraction(1, 2))
        assert parse_formula("x = y") == Equality("x", "y")

    def test_modal_operators(self):
        assert parse_formula("box dia p") == Box(Diamond(Atom("p")))

    def test_constant_out_of_range(self):
        with pytest.raises(ParseError):
            parse_formula("c(3/2)")

    def test_syntax_error_has_position(self):
        with pytest.raises(ParseError) as info:
            parse_formula("A & & B")
        assert info.value.line == 1

    def test_vocabulary_checks(self, vocab_p):
        with pytest.raises(VocabularyError):
            parse_formula("Q(x)", vocab_p)
        with pytest.raises(VocabularyError):
            parse_formula("P(x, y)", vocab_p)

    def test_modal_mode_rejects_quantifiers(self):
        vocab = Vocabulary((("p", 0),), with_equality=False)
        with pytest.raises(VocabularyError):
            parse_formula("forall x. p", vocab, Mode.MODAL)
        with pytest.raises(VocabularyError):
            parse_formula("box p", vocab, Mode.FO)


class TestComponents:
    """Компоненты и списки переменных"""

    def test_default_order_is_first_occurrence(self):
        component = parse_component("R(y, x) & R(x, y)")
        assert component.free_vars == ("y", "x")
        assert component.is_default_order

    def test_explicit_order(self):
        component = parse_component("R(x, y) @ (y, x)")
        assert component.free_vars == ("y", "x")
        assert not component.is_default_order

    def test_mismatched_list_rejected(self):
        with pytest.raises(ParseError):
            parse_component("R(x, y) @ (x)")

    def test_repeated_variable_rejected(self):
        with pytest.raises(FormulaError):
            Component(P_X, ("x", "x"))

    def test_closure_keeps_inputs_first(self):
        """[A ∨ B] → [A ∨ B, A, B]"""
        closure = subformula_closure([parse_component("A | B")])
        assert [c.formula for c in closure] == [Compound(Connective.JOIN, (A, B)), A, B]

    def test_closure_without_duplicates(self):
        closure = subformula_closure([parse_component("A & A"), parse_component("A")])
        assert [c.formula for c in closure] == [Compound(Connective.CONJ, (A, A)), A]

    def test_closure_of_quantifier_has_free_body(self):
        closure = subformula_closure([parse_component("exists x. P(x)")])
        assert closure[1] == Component(P_X, ("x",))


class TestVariables:
    """Свободные переменные и подстановка"""

    def test_free_vars(self):
        formula = parse_formula("P(x) & forall x. R(x, y)")
        assert free_vars(formula) == ("x", "y")

    def test_fresh_variable(self):
        assert fresh_variable(parse_formula("R(x, y)")) == "z"

    def test_substitute_skips_bound(self):
        formula = parse_formula("P(x) & forall x. P(x)")
        assert substitute(formula, "x", "z") == parse_formula("P(z) & forall x. P(x)")

    def test_substitute_capture_rejected(self):
        with pytest.raises(FormulaError):
            substitute(parse_formula("forall y. R(x, y)"), "x", "y")

    def test_infer_vocabulary_conflict(self):
        with pytest.raises(VocabularyError):
            infer_vocabulary([parse_formula("P(x)"), parse_formula("P")])


class TestDocuments:
    """Документы: заголовок, блоки, шаги"""

    def test_sample_document(self, ex1_document):
        assert ex1_document.algebra.token == "godel"
        assert ex1_document.domain_size == 2
        assert ex1_document.vocab.names == ("P", "U")
        md = ex1_document.sentence("ex1")
        assert md.layout.arities == (1, 0)
        assert md.layout.width == 3

    def test_steps(self, samples):
        document = parse_document((samples / "good.prf").read_text(encoding="utf-8"))
        assert [s.index for s in document.steps] == [1, 2, 3]
        assert [s.kind for s in document.steps] == ["premise", "rule5", "rule6"]
        assert document.steps[1].params == (1, 1)

    def test_frame_header(self, samples):
        document = parse_document((samples / "modal.md").read_text(encoding="utf-8"))
        assert document.mode == Mode.MODAL
        assert document.domain_size == 1
        assert not document.vocab.with_equality

    def test_frame_parameter_agrees_with_header(self, samples):
        """Фрейм из параметров совпадает с объявленным"""
        text = (samples / "modal_goal.md").read_text(encoding="utf-8")
        expected = Frame.of(1, [(0, 0)])
        assert parse_document(text, frame=expected).frame == expected

    def test_frame_parameter_conflicts_with_header(self):
        """Тупиковый фрейм посылок против рефлексивного фрейма цели"""
        text = "frame 1 { (0,0) }; pred p/0; md g { components: [dia p]; set: explicit { (1) }; }"
        with pytest.raises(ParseError, match="differs"):
            parse_document(text, frame=Frame.of(1, []))

    def test_missing_domain(self):
        with pytest.raises(ParseError):
            parse_document("pred A/0; md s { components: [A]; set: explicit { (1) }; }")

    def test_layout_mismatch(self):
        text = "domain 1; pred A/0; md s { components: [A]; set: explicit { (1, 1) }; }"
        with pytest.raises(ParseError):
            parse_document(text)

    def test_header_declared_twice(self):
        with pytest.raises(ParseError):
            parse_document("domain 1; domain 2;")

    def test_printed_document_parses_back(self, ex1_document):
        text = format_document(ex1_document.algebra, ex1_document.domain_size,
                               ex1_document.vocab, ex1_document.sentences)
        again = parse_document(text)
        assert again.sentences == ex1_document.sentences
        assert again.vocab == ex1_document.vocab


# === ПЕЧАТЬ ===

_leaves = st.sampled_from([
    A, B, P_X,
    Constant(Fraction(0)), Constant(Fraction(1, 2)), Constant(Fraction(1)),
])


def _extend(children):
    binary = st.builds(
        lambda conn, left, right: Compound(conn, (left, right)),
        st.sampled_from(list(Connective)), children, children,
    )
    quantified = st.builds(lambda cls, body: cls("x", body), st.sampled_from([Forall, Exists]), children)
    return st.one_of(binary, quantified, children.map(neg))


formulas = st.recursive(_extend(_leaves) | _leaves, _extend, max_leaves=6)
units = st.fractions(min_value=0, max_value=1, max_denominator=6)


class TestPrinter:
    """Печать в текстовый язык"""

    def test_minimal_parentheses(self):
        formula = Compound(Connective.CONJ, (Compound(Connective.JOIN, (A, B)), A))
        assert format_formula(formula) == "(A \\/ B) & A"

    def test_negation_printed_as_tilde(self):
        assert format_formula(neg(P_X)) == "~P(x)"

    @given(formulas)
    def test_printed_formula_parses_to_itself(self, formula):
        assert parse_formula(format_formula(formula)) == formula

    @pytest.mark.parametrize("text", [
        "boxes { }",
        "boxes { [0,1/2) u {1} x full; (1/3,1] x [0,1] }",
        "explicit { }",
        "explicit { (0, 1); (1/2, 1/2) }",
    ])
    def test_printed_set_parses_to_itself(self, text):
        layout = CoordLayout(1, (0, 0))
        info_set = parse_infoset(text, layout)
        assert parse_infoset(format_infoset(info_set), layout) == info_set

    def test_empty_coordinate(self):
        """Брусок с пустой координатой пуст"""
        layout = CoordLayout(1, (0, 0))
        assert parse_infoset("boxes { empty x full }", layout) == BoxUnionSet.empty(layout)

    @given(st.lists(
        st.tuples(units, units, st.booleans(), st.booleans()),
        max_size=3,
    ))
    def test_printed_union_parses_to_itself(self, pieces):
        """Объединение промежутков, в том числе пустое, печатается и читается обратно"""
        union = IntervalUnion.of([Interval(min(a, b), max(a, b), lc, hc) for a, b, lc, hc in pieces])
        layout = CoordLayout(1, (0,))
        expected = BoxUnionSet(layout, BoxList(1, ((union,),)))
        assert parse_infoset(f"boxes {{ {union} }}", layout) == expected
