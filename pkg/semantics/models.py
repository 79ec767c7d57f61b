"""
Модели на конечных доменах, фреймы Крипке и таблицы интерпретаций.
"""
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

from algebra import Algebra
from syntax.formulas import Vocabulary


class ModelError(ValueError):
    """Ошибка модели или вычисления"""


def grid(domain_size: int, arity: int) -> List[Tuple[int, ...]]:
    """Точки M^n в лексикографическом порядке"""
    return list(itertools.product(range(domain_size), repeat=arity))


def grid_rank(point: Sequence[int], domain_size: int) -> int:
    """Номер точки в лексикографическом порядке M^n"""
    rank = 0
    for element in point:
        rank = rank * domain_size + element
    return rank


@dataclass(frozen=True)
class FuncTable:
    """f_φ : M^n → [0,1], записи в лексикографическом порядке"""
    arity: int
    domain_size: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.domain_size ** self.arity:
            raise ModelError(
                f"table of arity {self.arity} over {self.domain_size} elements needs "
                f"{self.domain_size ** self.arity} entries, got {len(self.entries)}"
            )

    def value(self, point: Sequence[int] = ()) -> Fraction:
        return self.entries[grid_rank(point, self.domain_size)]

    def as_dict(self) -> Dict[Tuple[int, ...], Fraction]:
        return dict(zip(grid(self.domain_size, self.arity), self.entries))


@dataclass(frozen=True)
class Model:
    """Модель: домен {0..m-1} и таблица для каждого предиката словаря"""
    domain_size: int
    vocab: Vocabulary
    tables: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.domain_size < 1:
            raise ModelError("the domain must be non-empty")
        if len(self.tables) != len(self.vocab.predicates):
            raise ModelError("one table per predicate is required")
        for (name, arity), table in zip(self.vocab.predicates, self.tables):
            if len(table) != self.domain_size ** arity:
                raise ModelError(f"table for {name} is not total")

    @classmethod
    def from_tables(cls, domain_size: int, vocab: Vocabulary,
                    tables: Mapping[str, Sequence[Fraction]]) -> "Model":
        missing = [name for name in vocab.names if name not in tables]
        if missing:
            raise ModelError(f"no table for predicates {missing}")
        return cls(domain_size, vocab, tuple(tuple(Fraction(v) for v in tables[name]) for name in vocab.names))

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.vocab.names)}

    def value(self, pred: str, args: Sequence[int]) -> Fraction:
        index = self._index.get(pred)
        if index is None:
            raise ModelError(f"predicate {pred} is missing from the model")
        return self.tables[index][grid_rank(args, self.domain_size)]

    def table(self, pred: str) -> FuncTable:
        index = self._index.get(pred)
        if index is None:
            raise ModelError(f"predicate {pred} is missing from the model")
        return FuncTable(self.vocab.predicates[index][1], self.domain_size, self.tables[index])

    def check_carrier(self, alg: Algebra) -> None:
        for name, table in zip(self.vocab.names, self.tables):
            for value in table:
                if not alg.contains(value):
                    raise ModelError(f"{name} takes value {value} outside the carrier of {alg.token}")


@dataclass(frozen=True)
class Frame:
    """Фрейм Крипке ⟨M, R⟩"""
    worlds: int
    edges: FrozenSet[Tuple[int, int]] = frozenset()

    def __post_init__(self):
        if self.worlds < 1:
            raise ModelError("a frame needs at least one world")
        object.__setattr__(self, "edges", frozenset((int(w), int(v)) for w, v in self.edges))
        for w, v in self.edges:
            if not (0 <= w < self.worlds and 0 <= v < self.worlds):
                raise ModelError(f"edge ({w},{v}) outside {self.worlds} worlds")

    @classmethod
    def of(cls, worlds: int, edges: Iterable[Tuple[int, int]]) -> "Frame":
        return cls(worlds, frozenset(edges))

    def successors(self, world: int) -> Tuple[int, ...]:
        return tuple(sorted(v for w, v in self.edges if w == world))

    def sorted_edges(self) -> List[Tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class ModalModel:
    """Модальная модель: фрейм и оценка пропозициональных переменных по мирам"""
    frame: Frame
    vocab: Vocabulary
    valuation: Tuple[Tuple[Fraction, ...], ...] = field(default=())

    def __post_init__(self):
        if not self.vocab.is_propositional():
            raise ModelError("modal models interpret propositional variables only")
        if len(self.valuation) != len(self.vocab.predicates):
            raise ModelError("one valuation row per propositional variable is required")
        for name, row in zip(self.vocab.names, self.valuation):
            if len(row) != self.frame.worlds:
                raise ModelError(f"valuation of {name} is not total")

    @property
    def domain_size(self) -> int:
        return self.frame.worlds

    @classmethod
    def from_tables(cls, frame: Frame, vocab: Vocabulary,
                    valuation: Mapping[str, Sequence[Fraction]]) -> "ModalModel":
        missing = [name for name in vocab.names if name not in valuation]
        if missing:
            raise ModelError(f"no valuation for {missing}")
        return cls(frame, vocab, tuple(tuple(Fraction(v) for v in valuation[n]) for n in vocab.names))

    def value(self, prop: str, world: int) -> Fraction:
        try:
            index = self.vocab.names.index(prop)
        except ValueError:
            raise ModelError(f"propositional variable {prop} is missing from the model") from None
        return self.valuation[index][world]

    def check_carrier(self, alg: Algebra) -> None:
        for name, row in zip(self.vocab.names, self.valuation):
            for value in row:
                if not alg.contains(value):
                    raise ModelError(f"{name} takes value {value} outside the carrier of {alg.token}")
