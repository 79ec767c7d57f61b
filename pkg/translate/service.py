"""
Перевод A-значной логики первого порядка (A: конечная цепь) в классическую.

Каждому n-местному P и значению a ∈ A сопоставлен классический предикат
P^a (имя P__1, P__1d2, ...). T^a(φ) истинна в M* ровно тогда, когда
‖φ‖ = a в M. Теория Σ говорит, что предикаты P^a разбивают M^n.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from algebra import ONE, ZERO, Algebra, Connective, Family
from infoset.sets import ExplicitSet
from semantics.evaluator import evaluate
from semantics.models import Model, grid
from syntax.formulas import (
    Atom,
    Compound,
    Constant,
    Equality,
    Exists,
    Forall,
    Formula,
    MDSentence,
    Vocabulary,
    fresh_variable,
    neg,
    substitute,
)

logger = logging.getLogger(__name__)

CLASSICAL = Algebra(Family.CLASSICAL)
FALSUM = Constant(ZERO)
VERUM = Constant(ONE)


class TranslationError(ValueError):
    """Перевод невозможен: бесконечный носитель, значение вне носителя, нарушение Σ"""


# === КЛАССИЧЕСКИЕ КОНСТРУКТОРЫ ===

def conjunction(parts: Sequence[Formula]) -> Formula:
    if not parts:
        return VERUM
    out = parts[0]
    for part in parts[1:]:
        out = Compound(Connective.MEET, (out, part))
    return out


def disjunction(parts: Sequence[Formula]) -> Formula:
    """Пустая дизъюнкция: ложь"""
    if not parts:
        return FALSUM
    out = parts[0]
    for part in parts[1:]:
        out = Compound(Connective.JOIN, (out, part))
    return out


def _absorbed(disjuncts: Iterable[Tuple[Formula, ...]]) -> List[Tuple[Formula, ...]]:
    """Убрать повторы и дизъюнкты, чьё множество конъюнктов строго шире другого"""
    unique = list(dict.fromkeys(disjuncts))
    sets = [frozenset(d) for d in unique]
    return [d for d, s in zip(unique, sets) if not any(other < s for other in sets)]


def _dnf(disjuncts: Iterable[Tuple[Formula, ...]], absorb: bool = False) -> Formula:
    items = _absorbed(disjuncts) if absorb else list(dict.fromkeys(disjuncts))
    return disjunction([conjunction(list(d)) for d in items])


# === СЛОВАРЬ τ* ===

def star_name(pred: str, value: Fraction) -> str:
    if value.denominator == 1:
        return f"{pred}__{value.numerator}"
    return f"{pred}__{value.numerator}d{value.denominator}"


@dataclass(frozen=True)
class StarVocabulary:
    """Классический словарь τ*: по предикату P^a на каждую пару (P, a)"""
    base: Vocabulary
    carrier: Tuple[Fraction, ...]
    vocab: Vocabulary

    def name(self, pred: str, value: Fraction) -> str:
        if value not in self.carrier:
            raise TranslationError(f"value {value} is outside the carrier")
        return star_name(pred, value)


def _finite_carrier(alg: Algebra) -> Tuple[Fraction, ...]:
    if not alg.is_finite:
        raise TranslationError(f"{alg.token} has an infinite carrier, the translation needs a finite chain")
    return alg.carrier()


def star_vocabulary(alg: Algebra, vocab: Vocabulary) -> StarVocabulary:
    carrier = _finite_carrier(alg)
    predicates = []
    for name, arity in vocab.predicates:
        for value in carrier:
            predicates.append((star_name(name, value), arity))
    clashes = set(vocab.names) & {name for name, _ in predicates}
    if clashes:
        raise TranslationError(f"star predicate names collide with the vocabulary: {sorted(clashes)}")
    return StarVocabulary(vocab, carrier, Vocabulary(tuple(predicates), vocab.with_equality))


# === T^a ===

def translate_value(alg: Algebra, value: Fraction, formula: Formula) -> Formula:
    """T^a(φ): классическая формула со свободными переменными φ"""
    carrier = _finite_carrier(alg)
    if value not in carrier:
        raise TranslationError(f"value {value} is outside the carrier of {alg.token}")
    return _translate(alg, carrier, value, formula)


def _translate(alg: Algebra, carrier: Tuple[Fraction, ...], a: Fraction, formula: Formula) -> Formula:
    if isinstance(formula, Atom):
        return Atom(star_name(formula.pred, a), formula.args)
    if isinstance(formula, Constant):
        return VERUM if formula.value == a else FALSUM
    if isinstance(formula, Equality):
        if a == ONE:
            return formula
        if a == ZERO:
            return neg(formula)
        return FALSUM
    if isinstance(formula, Compound):
        op = alg.operation(formula.conn)
        disjuncts = []
        for values in itertools.product(carrier, repeat=len(formula.children)):
            if op(*values) == a:
                disjuncts.append(tuple(
                    _translate(alg, carrier, b, child) for b, child in zip(values, formula.children)
                ))
        return _dnf(disjuncts)
    if isinstance(formula, (Exists, Forall)):
        return _translate_quantifier(alg, carrier, a, formula)
    raise TranslationError(f"{type(formula).__name__} has no classical translation")


def _translate_quantifier(alg: Algebra, carrier: Tuple[Fraction, ...], a: Fraction,
                          formula: Formula) -> Formula:
    existential = isinstance(formula, Exists)
    # значения, допустимые для всех элементов: ≤ a для ∃, ≥ a для ∀
    allowed = [b for b in carrier if (b <= a if existential else b >= a)]
    y = fresh_variable(formula)
    renamed = substitute(formula.body, formula.var, y)
    guard = Forall(y, disjunction([_translate(alg, carrier, b, renamed) for b in allowed]))
    witnesses = {b: Exists(formula.var, _translate(alg, carrier, b, formula.body)) for b in allowed}

    disjuncts = []
    for size in range(1, len(allowed) + 1):
        for subset in itertools.combinations(allowed, size):
            extreme = max(subset) if existential else min(subset)
            if extreme == a:
                disjuncts.append(tuple(witnesses[b] for b in subset) + (guard,))
    return _dnf(disjuncts, absorb=True)


# === Σ ===

@dataclass(frozen=True)
class SigmaTheory:
    totality: Tuple[Formula, ...]
    disjointness: Tuple[Formula, ...]

    @property
    def sentences(self) -> Tuple[Formula, ...]:
        return self.totality + self.disjointness


def _closed(variables: Sequence[str], body: Formula) -> Formula:
    for var in reversed(variables):
        body = Forall(var, body)
    return body


def build_sigma(alg: Algebra, vocab: Vocabulary) -> SigmaTheory:
    """Тотальность и попарная несовместность предикатов P^a"""
    star = star_vocabulary(alg, vocab)
    totality, disjointness = [], []
    for name, arity in vocab.predicates:
        variables = tuple(f"x{i}" for i in range(1, arity + 1))
        atoms = [Atom(star.name(name, a), variables) for a in star.carrier]
        totality.append(_closed(variables, disjunction(atoms)))
        for left, right in itertools.combinations(atoms, 2):
            disjointness.append(_closed(variables, neg(Compound(Connective.MEET, (left, right)))))
    return SigmaTheory(tuple(totality), tuple(disjointness))


# === МОДЕЛИ M ↔ M* ===

def star_model(alg: Algebra, model: Model) -> Model:
    """M*: P^a(ā) истинно, когда P(ā) = a"""
    star = star_vocabulary(alg, model.vocab)
    model.check_carrier(alg)
    tables: Dict[str, List[Fraction]] = {}
    for (name, _), table in zip(model.vocab.predicates, model.tables):
        for a in star.carrier:
            tables[star.name(name, a)] = [ONE if v == a else ZERO for v in table]
    return Model.from_tables(model.domain_size, star.vocab, tables)


def unstar_model(alg: Algebra, classical: Model, vocab: Vocabulary) -> Model:
    """Обратно: из модели Σ извлекается A-значная модель"""
    star = star_vocabulary(alg, vocab)
    m = classical.domain_size
    tables: Dict[str, List[Fraction]] = {}
    for name, arity in vocab.predicates:
        table = []
        for point in grid(m, arity):
            holding = [a for a in star.carrier if classical.value(star.name(name, a), point) == ONE]
            if not holding:
                raise TranslationError(f"totality axiom for {name} fails at {point}")
            if len(holding) > 1:
                raise TranslationError(
                    f"disjointness axiom for {star.name(name, holding[0])} and "
                    f"{star.name(name, holding[1])} fails at {point}"
                )
            table.append(holding[0])
        tables[name] = table
    return Model.from_tables(m, vocab, tables)


def classical_satisfies(model: Model, formula: Formula,
                        assignment: Optional[Mapping[str, int]] = None) -> bool:
    """Классическая истинность"""
    return evaluate(CLASSICAL, model, formula, assignment or {}) == ONE


# === MD-ПРЕДЛОЖЕНИЯ ===

def md_translate(alg: Algebra, md: MDSentence) -> Formula:
    """⋁ по точкам S конъюнкций T^{a_i}(φ_i)"""
    if not md.is_sentence_only():
        raise TranslationError("only MD-sentences with sentence components are translated")
    if not isinstance(md.info_set, ExplicitSet):
        raise TranslationError("the information set must be explicit")
    carrier = _finite_carrier(alg)
    disjuncts = []
    for point in md.info_set.sorted_points():
        if any(v not in carrier for v in point):
            logger.debug(f"⏭️ Точка {point} вне носителя пропущена")
            continue
        disjuncts.append(tuple(_translate(alg, carrier, a, f) for a, f in zip(point, md.formulas)))
    return _dnf(disjuncts)
