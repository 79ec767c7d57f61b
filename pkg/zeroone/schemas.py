"""
Pydantic схема конфигурации эксперимента 0-1 (JSON).

    {
      "algebra": "l3",
      "predicates": ["P/1"],
      "md": {"components": ["exists x. P(x)"], "points": [["1"]]},
      "sizes": [1, 2, 3, 4, 5, 6],
      "modes": {"6": "sample"},
      "sample_count": 1000,
      "seed": 7
    }
"""
from fractions import Fraction
from typing import Dict, List, Optional

from pydantic import BaseModel, field_validator, model_validator

from algebra import Algebra, parse_algebra
from config import config
from infoset.layout import CoordLayout
from infoset.sets import ExplicitSet
from syntax.formulas import MDSentence, Vocabulary
from syntax.parser import parse_component
from utils.rationals import parse_rational, parse_unit

MODES = ("auto", "exact", "sample")


class ExperimentMD(BaseModel):
    components: List[str]
    points: List[List[str]] = []

    @field_validator("points")
    @classmethod
    def points_rational(cls, v: List[List[str]]) -> List[List[str]]:
        for point in v:
            for value in point:
                parse_unit(value)
        return v


class ExperimentConfig(BaseModel):
    """Эксперимент: алгебра, словарь, MD-предложение и размеры доменов"""
    algebra: str
    predicates: List[str] = []
    md: ExperimentMD
    sizes: List[int]
    modes: Dict[str, str] = {}
    sample_count: int = 1000
    seed: int = 0
    delta: Optional[str] = None

    @field_validator("algebra")
    @classmethod
    def algebra_finite(cls, v: str) -> str:
        if not parse_algebra(v).is_finite:
            raise ValueError(f"{v} is not a finite algebra")
        return v

    @field_validator("predicates")
    @classmethod
    def signatures(cls, v: List[str]) -> List[str]:
        for signature in v:
            name, _, arity = signature.partition("/")
            if not name or not arity.isdigit():
                raise ValueError(f"predicate signature {signature!r} must look like P/1")
        return v

    @field_validator("sizes")
    @classmethod
    def sizes_positive(cls, v: List[int]) -> List[int]:
        if not v or any(n < 1 for n in v):
            raise ValueError("sizes must be a non-empty list of positive integers")
        return v

    @field_validator("modes")
    @classmethod
    def modes_known(cls, v: Dict[str, str]) -> Dict[str, str]:
        for size, mode in v.items():
            if mode not in MODES:
                raise ValueError(f"mode {mode!r} for size {size} is not one of {MODES}")
        return v

    @field_validator("sample_count")
    @classmethod
    def samples_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("sample_count must be at least 1")
        return v

    @field_validator("delta")
    @classmethod
    def delta_range(cls, v: Optional[str]) -> Optional[str]:
        if v is not None and not 0 < parse_rational(v) < Fraction(1, 2):
            raise ValueError("delta must lie in (0, 1/2)")
        return v

    @model_validator(mode="after")
    def points_match_components(self) -> "ExperimentConfig":
        width = len(self.md.components)
        for point in self.md.points:
            if len(point) != width:
                raise ValueError(f"point {point} has {len(point)} values for {width} components")
        return self

    # === ОБЪЕКТЫ ДВИЖКА ===

    def algebra_obj(self) -> Algebra:
        return parse_algebra(self.algebra)

    def vocabulary(self) -> Vocabulary:
        pairs = []
        for signature in self.predicates:
            name, _, arity = signature.partition("/")
            pairs.append((name.strip(), int(arity)))
        return Vocabulary(tuple(pairs))

    def delta_value(self) -> Fraction:
        return parse_rational(self.delta) if self.delta is not None else config.ZEROONE_DELTA

    def mode_for(self, size: int) -> str:
        return self.modes.get(str(size), "auto")

    def md_sentence(self, size: int) -> MDSentence:
        vocab = self.vocabulary()
        components = tuple(parse_component(text, vocab) for text in self.md.components)
        if any(c.arity for c in components):
            raise ValueError("experiment components must be sentences")
        layout = CoordLayout(size, tuple(0 for _ in components))
        points = frozenset(tuple(parse_unit(v) for v in point) for point in self.md.points)
        return MDSentence(components, ExplicitSet(layout, points))
