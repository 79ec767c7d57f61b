"""
Вспомогательные конструкторы для тестов
"""
import random
from fractions import Fraction
from itertools import product
from typing import Callable, FrozenSet, Optional, Sequence, Tuple

from algebra import Algebra
from infoset.boxes import BoxList
from infoset.layout import CoordLayout
from infoset.sets import BoxUnionSet, ExplicitSet, InfoSet
from semantics.enumeration import enumerate_models
from semantics.evaluator import satisfies
from syntax.formulas import MDSentence, Vocabulary
from syntax.parser import parse_component

SetFactory = Callable[[CoordLayout], InfoSet]


def md(texts: Sequence[str], factory: SetFactory, domain_size: int = 1,
       vocab: Optional[Vocabulary] = None) -> MDSentence:
    """MD-предложение из текстов компонент и фабрики множества"""
    components = tuple(parse_component(t, vocab) for t in texts)
    layout = CoordLayout(domain_size, tuple(c.arity for c in components))
    return MDSentence(components, factory(layout))


def explicit(*points) -> SetFactory:
    return lambda layout: ExplicitSet(layout, frozenset(tuple(Fraction(v) for v in p) for p in points))


def boxes(*box_list) -> SetFactory:
    """Каждый бокс: кортеж IntervalUnion по координатам"""
    return lambda layout: BoxUnionSet(layout, BoxList(layout.width, tuple(box_list)))


def full(layout: CoordLayout) -> BoxUnionSet:
    return BoxUnionSet.full(layout)


def oracle_entails(alg: Algebra, vocab: Vocabulary, domain_size: int,
                   premises: Sequence[MDSentence], goal: MDSentence) -> bool:
    """Перебор всех моделей: каждая модель посылок выполняет цель"""
    for model in enumerate_models(alg, vocab, domain_size):
        if all(satisfies(alg, model, p) for p in premises) and not satisfies(alg, model, goal):
            return False
    return True


def carrier_points(alg: Algebra, width: int):
    return list(product(alg.carrier(), repeat=width))


# === СЛУЧАЙНЫЕ ЭКЗЕМПЛЯРЫ ===

QUANTIFIERS = ("forall", "exists")
CONNECTIVES = ("&", "|", "/\\", "->")


def random_sentence(rng: random.Random, atoms: Sequence[str]) -> str:
    """Предложение вида Q1 x. Q2 y. тело; тело: атом, его отрицание или связка двух атомов"""
    roll = rng.randrange(3)
    if roll == 0:
        body = rng.choice(atoms)
    elif roll == 1:
        body = f"~{rng.choice(atoms)}"
    else:
        body = f"{rng.choice(atoms)} {rng.choice(CONNECTIVES)} {rng.choice(atoms)}"
    return f"{rng.choice(QUANTIFIERS)} x. {rng.choice(QUANTIFIERS)} y. {body}"


def random_points(rng: random.Random, alg: Algebra, width: int,
                  nonempty: bool = False) -> FrozenSet[Tuple[Fraction, ...]]:
    """Случайное подмножество носителя^width, каждая точка с вероятностью 1/2"""
    points = carrier_points(alg, width)
    chosen = [p for p in points if rng.random() < 0.5]
    if nonempty and not chosen:
        chosen = [rng.choice(points)]
    return frozenset(chosen)


def random_explicit(rng: random.Random, alg: Algebra, nonempty: bool = False) -> SetFactory:
    return lambda layout: ExplicitSet(layout, random_points(rng, alg, layout.width, nonempty))
