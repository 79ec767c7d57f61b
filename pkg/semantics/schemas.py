"""
Pydantic схемы файлов моделей (JSON).

Первый порядок:
    {"algebra": "l3", "domain": 2, "predicates": {"P": ["0", "1/2"]}}
Модальный:
    {"algebra": "l3", "frame": {"worlds": 2, "edges": [[0, 1]]},
     "valuation": {"p": ["1", "0"]}}
"""
import json
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, field_validator

from algebra import Algebra, parse_algebra
from semantics.models import Frame, ModalModel, Model, ModelError
from syntax.formulas import Vocabulary
from utils.rationals import format_rational, parse_unit


def _check_values(values: List[str]) -> List[str]:
    for value in values:
        parse_unit(value)
    return values


class ModelFile(BaseModel):
    """Модель первого порядка"""
    algebra: str
    domain: int
    predicates: Dict[str, List[str]] = {}
    arities: Dict[str, int] = {}

    @field_validator("algebra")
    @classmethod
    def algebra_known(cls, v: str) -> str:
        parse_algebra(v)
        return v

    @field_validator("domain")
    @classmethod
    def domain_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("domain must be at least 1")
        return v

    @field_validator("predicates")
    @classmethod
    def tables_rational(cls, v: Dict[str, List[str]]) -> Dict[str, List[str]]:
        for table in v.values():
            _check_values(table)
        return v

    def arity_of(self, name: str) -> int:
        """Арность из поля arities или из длины таблицы"""
        if name in self.arities:
            return self.arities[name]
        size = len(self.predicates[name])
        if self.domain == 1:
            if size != 1:
                raise ModelError(f"table for {name} has {size} entries over a one-element domain")
            return 0
        arity, power = 0, 1
        while power < size:
            arity, power = arity + 1, power * self.domain
        if power != size:
            raise ModelError(f"table for {name} has {size} entries, not a power of {self.domain}")
        return arity

    def vocabulary(self) -> Vocabulary:
        return Vocabulary(tuple((name, self.arity_of(name)) for name in self.predicates))

    def to_model(self, vocab: Optional[Vocabulary] = None) -> Tuple[Algebra, Model]:
        alg = parse_algebra(self.algebra)
        vocab = vocab or self.vocabulary()
        tables = {name: [parse_unit(v) for v in table] for name, table in self.predicates.items()}
        model = Model.from_tables(self.domain, vocab, tables)
        model.check_carrier(alg)
        return alg, model

    @classmethod
    def from_model(cls, alg: Algebra, model: Model) -> "ModelFile":
        return cls(
            algebra=alg.token,
            domain=model.domain_size,
            predicates={
                name: [format_rational(v) for v in table]
                for name, table in zip(model.vocab.names, model.tables)
            },
            arities=dict(model.vocab.predicates),
        )


class FrameFile(BaseModel):
    worlds: int
    edges: List[Tuple[int, int]] = []

    def to_frame(self) -> Frame:
        return Frame.of(self.worlds, self.edges)


class ModalModelFile(BaseModel):
    """Модальная модель"""
    algebra: str
    frame: FrameFile
    valuation: Dict[str, List[str]] = {}

    @field_validator("valuation")
    @classmethod
    def valuation_rational(cls, v: Dict[str, List[str]]) -> Dict[str, List[str]]:
        for row in v.values():
            _check_values(row)
        return v

    def to_model(self, vocab: Optional[Vocabulary] = None) -> Tuple[Algebra, ModalModel]:
        alg = parse_algebra(self.algebra)
        vocab = vocab or Vocabulary(tuple((name, 0) for name in self.valuation), with_equality=False)
        valuation = {name: [parse_unit(v) for v in row] for name, row in self.valuation.items()}
        model = ModalModel.from_tables(self.frame.to_frame(), vocab, valuation)
        model.check_carrier(alg)
        return alg, model

    @classmethod
    def from_model(cls, alg: Algebra, model: ModalModel) -> "ModalModelFile":
        return cls(
            algebra=alg.token,
            frame=FrameFile(worlds=model.frame.worlds, edges=model.frame.sorted_edges()),
            valuation={
                name: [format_rational(v) for v in row]
                for name, row in zip(model.vocab.names, model.valuation)
            },
        )


def load_model(text: str, vocab: Optional[Vocabulary] = None) -> Tuple[Algebra, Union[Model, ModalModel]]:
    """Разобрать JSON модели любого вида"""
    data = json.loads(text)
    if isinstance(data, dict) and "frame" in data:
        return ModalModelFile.model_validate(data).to_model(vocab)
    return ModelFile.model_validate(data).to_model(vocab)


def dump_model(alg: Algebra, model: Union[Model, ModalModel]) -> dict:
    if isinstance(model, ModalModel):
        return ModalModelFile.from_model(alg, model).model_dump()
    return ModelFile.from_model(alg, model).model_dump()
