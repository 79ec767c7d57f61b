"""
Тесты семантики: вычисление, выполнимость, перебор и файлы моделей
"""
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from algebra import ONE, ZERO, AlgebraError, Connective, parse_algebra
from semantics.enumeration import count_models, enumerate_modal_models, enumerate_models, random_model
from semantics.evaluator import evaluate, evaluate_modal, interpret, point_of, satisfies
from semantics.models import Frame, ModalModel, Model, ModelError
from semantics.schemas import dump_model, load_model
from syntax.formulas import Atom, Compound, Constant, Equality, Exists, Forall, Vocabulary, neg
from syntax.parser import parse_component, parse_formula

HALF = Fraction(1, 2)


class TestEvaluate:
    """Значения формул первого порядка"""

    def test_strong_conjunction(self, luk, vocab_p):
        """Ł: P(x) & P(x) при P = 1/2 равно 0"""
        model = Model.from_tables(1, vocab_p, {"P": [HALF]})
        assert evaluate(luk, model, parse_formula("P(x) & P(x)"), {"x": 0}) == 0

    def test_quantifiers_are_inf_and_sup(self, l3, vocab_p):
        model = Model.from_tables(3, vocab_p, {"P": [0, HALF, 1]})
        assert evaluate(l3, model, parse_formula("forall x. P(x)"), {}) == 0
        assert evaluate(l3, model, parse_formula("exists x. P(x)"), {}) == 1

    def test_equality_is_crisp(self, l3):
        model = Model(2, Vocabulary(), ())
        formula = parse_formula("x = y")
        assert evaluate(l3, model, formula, {"x": 0, "y": 0}) == 1
        assert evaluate(l3, model, formula, {"x": 0, "y": 1}) == 0

    def test_unassigned_variable(self, l3, vocab_p):
        model = Model.from_tables(1, vocab_p, {"P": [1]})
        with pytest.raises(ModelError):
            evaluate(l3, model, parse_formula("P(x)"), {})

    def test_interpret_follows_variable_order(self, l3):
        vocab = Vocabulary((("R", 2),))
        model = Model.from_tables(2, vocab, {"R": [0, 1, HALF, 0]})
        table = interpret(l3, model, parse_component("R(x, y) @ (y, x)"))
        # (y, x) = (0, 1) читает R(1, 0)
        assert table.entries == (0, HALF, 1, 0)


class TestSatisfaction:
    """Выполнимость MD-предложений"""

    def test_sample_true(self, samples, ex1_document):
        alg, model = load_model((samples / "ex1_model.json").read_text(encoding="utf-8"))
        md = ex1_document.sentence("ex1")
        assert point_of(alg, model, md.components) == (0, 1, Fraction(3, 5))
        assert satisfies(alg, model, md)

    def test_sample_false(self, samples, ex1_document):
        alg, model = load_model((samples / "ex1_model_false.json").read_text(encoding="utf-8"))
        assert not satisfies(alg, model, ex1_document.sentence("ex1"))

    def test_domain_mismatch(self, samples, ex1_document):
        alg, _ = load_model((samples / "ex1_model.json").read_text(encoding="utf-8"))
        small = Model.from_tables(1, ex1_document.vocab, {"P": [0], "U": [1]})
        with pytest.raises(ModelError):
            satisfies(alg, small, ex1_document.sentence("ex1"))


class TestModal:
    """Модальные значения"""

    def test_dead_end_world(self, l3):
        """Без преемников: □p = 1, ◇p = 0"""
        vocab = Vocabulary((("p", 0),), with_equality=False)
        model = ModalModel.from_tables(Frame.of(2, []), vocab, {"p": [HALF, 0]})
        assert evaluate_modal(l3, model, parse_formula("box p"), 0) == 1
        assert evaluate_modal(l3, model, parse_formula("dia p"), 0) == 0

    def test_successors(self, l3):
        vocab = Vocabulary((("p", 0),), with_equality=False)
        model = ModalModel.from_tables(Frame.of(3, [(0, 1), (0, 2)]), vocab, {"p": [0, HALF, 1]})
        assert evaluate_modal(l3, model, parse_formula("box p"), 0) == HALF
        assert evaluate_modal(l3, model, parse_formula("dia p"), 0) == 1

    def test_frame_rejects_bad_edge(self):
        with pytest.raises(ModelError):
            Frame.of(2, [(0, 2)])


# === СЛУЧАЙНЫЕ ФОРМУЛЫ ===

VOCAB_PR = Vocabulary((("P", 1), ("R", 2)))

_leaves = st.sampled_from([
    Atom("P", ("x",)), Atom("P", ("y",)), Atom("R", ("x", "y")), Atom("R", ("y", "x")),
    Equality("x", "y"), Constant(ZERO), Constant(ONE),
])


def _extend(children):
    binary = st.builds(
        lambda conn, left, right: Compound(conn, (left, right)),
        st.sampled_from(list(Connective)), children, children,
    )
    quantified = st.builds(
        lambda cls, var, body: cls(var, body),
        st.sampled_from([Forall, Exists]), st.sampled_from(["x", "y"]), children,
    )
    return st.one_of(binary, quantified, children.map(neg))


formulas = st.recursive(_leaves, _extend, max_leaves=6)


def _tarski(model, formula, assignment) -> bool:
    """Двузначная семантика"""
    if isinstance(formula, Atom):
        return model.value(formula.pred, tuple(assignment[a] for a in formula.args)) == ONE
    if isinstance(formula, Equality):
        return assignment[formula.left] == assignment[formula.right]
    if isinstance(formula, Constant):
        return formula.value == ONE
    if isinstance(formula, Compound):
        left, right = (_tarski(model, child, assignment) for child in formula.children)
        if formula.conn in (Connective.MEET, Connective.CONJ):
            return left and right
        if formula.conn == Connective.JOIN:
            return left or right
        return not left or right
    values = (_tarski(model, formula.body, {**assignment, formula.var: e}) for e in range(model.domain_size))
    return all(values) if isinstance(formula, Forall) else any(values)


@st.composite
def unit_models(draw, max_size: int = 3):
    """Модель словаря P/1, R/2 со значениями из [0, 1]"""
    m = draw(st.integers(min_value=1, max_value=max_size))
    values = st.fractions(min_value=0, max_value=1, max_denominator=8)
    tables = {
        name: draw(st.lists(values, min_size=m ** arity, max_size=m ** arity))
        for name, arity in VOCAB_PR.predicates
    }
    return Model.from_tables(m, VOCAB_PR, tables)


class TestReferenceSemantics:
    """Сверка вычислителя с независимыми описаниями семантики"""

    @given(formulas, st.randoms(use_true_random=False), st.integers(min_value=1, max_value=3), st.data())
    def test_classical_is_two_valued_tarski(self, formula, rng, m, data):
        classical = parse_algebra("classical")
        model = random_model(classical, VOCAB_PR, m, rng)
        assignment = {
            "x": data.draw(st.integers(min_value=0, max_value=m - 1)),
            "y": data.draw(st.integers(min_value=0, max_value=m - 1)),
        }
        expected = ONE if _tarski(model, formula, assignment) else ZERO
        assert evaluate(classical, model, formula, assignment) == expected

    @given(formulas, unit_models(), st.data())
    def test_godel_values_come_from_tables(self, formula, model, data):
        """Гёдель не создаёт новых значений: результат есть в таблицах или равен 0, 1"""
        godel = parse_algebra("godel")
        m = model.domain_size
        assignment = {
            "x": data.draw(st.integers(min_value=0, max_value=m - 1)),
            "y": data.draw(st.integers(min_value=0, max_value=m - 1)),
        }
        seen = {ZERO, ONE}.union(*model.tables)
        assert evaluate(godel, model, formula, assignment) in seen


class TestEnumeration:
    """Перебор моделей"""

    def test_count(self, l3, vocab_p):
        assert count_models(l3, vocab_p, 2) == 9

    def test_enumeration_matches_count(self, l3, vocab_ab):
        models = list(enumerate_models(l3, vocab_ab, 1))
        assert len(models) == count_models(l3, vocab_ab, 1) == 9
        assert len(set(models)) == 9

    def test_infinite_algebra_rejected(self, luk, vocab_p):
        with pytest.raises(AlgebraError):
            count_models(luk, vocab_p, 1)

    def test_cap(self, l3, vocab_p):
        with pytest.raises(ModelError):
            list(enumerate_models(l3, vocab_p, 3, cap=10))

    def test_modal_valuations(self, l3):
        vocab = Vocabulary((("p", 0),), with_equality=False)
        assert len(list(enumerate_modal_models(l3, Frame.of(2, [(0, 1)]), vocab))) == 9

    def test_random_model_is_seeded(self, l3, vocab_p):
        first = random_model(l3, vocab_p, 4, random.Random("seed"))
        second = random_model(l3, vocab_p, 4, random.Random("seed"))
        assert first == second
        assert all(l3.contains(v) for v in first.tables[0])


class TestModelFiles:
    """JSON файлы моделей"""

    def test_dump_and_load(self, l3):
        vocab = Vocabulary((("P", 1), ("A", 0)))
        model = Model.from_tables(2, vocab, {"P": [0, HALF], "A": [1]})
        alg, again = load_model(json.dumps(dump_model(l3, model)))
        assert alg == l3
        assert again == model

    def test_modal_dump_and_load(self, l3):
        vocab = Vocabulary((("p", 0),), with_equality=False)
        model = ModalModel.from_tables(Frame.of(2, [(0, 1)]), vocab, {"p": [1, HALF]})
        alg, again = load_model(json.dumps(dump_model(l3, model)))
        assert again == model

    def test_arity_from_table_length(self):
        text = '{"algebra": "l3", "domain": 2, "predicates": {"R": ["0", "0", "1", "1"]}}'
        _, model = load_model(text)
        assert model.vocab.predicates == (("R", 2),)

    def test_bad_table_length(self):
        text = '{"algebra": "l3", "domain": 2, "predicates": {"R": ["0", "0", "1"]}}'
        with pytest.raises(ModelError):
            load_model(text)

    def test_value_outside_carrier(self):
        text = '{"algebra": "l3", "domain": 1, "predicates": {"A": ["1/3"]}}'
        with pytest.raises(ModelError):
            load_model(text)

    def test_value_outside_unit(self):
        text = '{"algebra": "lukasiewicz", "domain": 1, "predicates": {"A": ["3/2"]}}'
        with pytest.raises(ValueError):
            load_model(text)

    def test_explicit_arity_must_match(self):
        text = '{"algebra": "l3", "domain": 2, "predicates": {"R": ["0", "1"]}, "arities": {"R": 2}}'
        with pytest.raises(ModelError):
            load_model(text)
