"""
Объединения боксов: каждый бокс задаёт IntervalUnion на каждой координате.
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from config import config
from infoset.intervals import IntervalUnion

Box = Tuple[IntervalUnion, ...]


class BoxGuardError(ValueError):
    """Превышен лимит на число боксов или точек"""


def box_is_empty(box: Box) -> bool:
    return any(c.is_empty() for c in box)


def box_contains(box: Box, point: Sequence[Fraction]) -> bool:
    return all(c.contains(v) for c, v in zip(box, point))


def box_subset(inner: Box, outer: Box) -> bool:
    return all(a.subset_of(b) for a, b in zip(inner, outer))


def box_intersect(left: Box, right: Box) -> Box:
    return tuple(a.intersect(b) for a, b in zip(left, right))


def box_minus(box: Box, cut: Box) -> List[Box]:
    """box ∖ cut как список непересекающихся боксов"""
    common = box_intersect(box, cut)
    if box_is_empty(common):
        return [box]
    pieces = []
    for i in range(len(box)):
        rest = box[i].difference(cut[i])
        if not rest.is_empty():
            pieces.append(common[:i] + (rest,) + box[i + 1:])
    return pieces


def point_box(point: Sequence[Fraction]) -> Box:
    return tuple(IntervalUnion.point(v) for v in point)


@dataclass(frozen=True)
class BoxList:
    """Конечное объединение боксов ширины width"""
    width: int
    boxes: Tuple[Box, ...] = ()

    def __post_init__(self):
        for box in self.boxes:
            if len(box) != self.width:
                raise ValueError(f"box of width {len(box)} in a union of width {self.width}")
        object.__setattr__(self, "boxes", _simplify(self.boxes))

    @classmethod
    def full(cls, width: int) -> "BoxList":
        return cls(width, (tuple(IntervalUnion.full() for _ in range(width)),))

    @classmethod
    def empty(cls, width: int) -> "BoxList":
        return cls(width, ())

    @classmethod
    def of_points(cls, width: int, points: Iterable[Sequence[Fraction]]) -> "BoxList":
        return cls(width, tuple(point_box(p) for p in points))

    def is_empty(self) -> bool:
        return not self.boxes

    def is_full(self) -> bool:
        return len(self.boxes) == 1 and all(c.is_full() for c in self.boxes[0])

    def contains(self, point: Sequence[Fraction]) -> bool:
        return any(box_contains(box, point) for box in self.boxes)

    def intersect(self, other: "BoxList") -> "BoxList":
        self._check_width(other)
        boxes = [box_intersect(a, b) for a in self.boxes for b in other.boxes]
        _guard(len(boxes))
        return BoxList(self.width, tuple(boxes))

    def union(self, other: "BoxList") -> "BoxList":
        self._check_width(other)
        return BoxList(self.width, self.boxes + other.boxes)

    def difference(self, other: "BoxList") -> "BoxList":
        """self ∖ other без построения дополнения other целиком"""
        self._check_width(other)
        current = list(self.boxes)
        for cut in other.boxes:
            current = [piece for box in current for piece in box_minus(box, cut)]
            _guard(len(current))
        return BoxList(self.width, tuple(current))

    def complement(self) -> "BoxList":
        return BoxList.full(self.width).difference(self)

    def subset_of(self, other: "BoxList") -> bool:
        return self.difference(other).is_empty()

    def select(self, coordinates: Sequence[int]) -> "BoxList":
        """Боксы на выбранных координатах в заданном порядке"""
        return BoxList(len(coordinates), tuple(tuple(box[c] for c in coordinates) for box in self.boxes))

    def product_full(self, extra: int) -> "BoxList":
        """S × [0,1]^extra"""
        tail = tuple(IntervalUnion.full() for _ in range(extra))
        return BoxList(self.width + extra, tuple(box + tail for box in self.boxes))

    def is_finite(self) -> bool:
        return all(c.is_finite() for box in self.boxes for c in box)

    def finite_points(self) -> List[Tuple[Fraction, ...]]:
        """Все точки конечного объединения"""
        out = set()
        for box in self.boxes:
            size = 1
            for c in box:
                size *= len(c.intervals)
            _guard(len(out) + size, limit=config.MAX_POINTS)
            out.update(itertools.product(*(c.finite_values() for c in box)))
        return sorted(out)

    def carrier_points(self, carrier: Sequence[Fraction]) -> List[Tuple[Fraction, ...]]:
        """Точки носителя^width внутри объединения"""
        out = set()
        for box in self.boxes:
            choices = [c.values_in(carrier) for c in box]
            size = 1
            for values in choices:
                size *= len(values)
            _guard(len(out) + size, limit=config.MAX_POINTS)
            out.update(itertools.product(*choices))
        return sorted(out)

    def _check_width(self, other: "BoxList") -> None:
        if other.width != self.width:
            raise ValueError(f"box unions of widths {self.width} and {other.width}")

    def __str__(self) -> str:
        return "; ".join(" x ".join(str(c) for c in box) for box in self.boxes)


def _guard(count: int, limit: int = None) -> None:
    limit = config.MAX_BOXES if limit is None else limit
    if count > limit:
        raise BoxGuardError(f"size guard exceeded: {count} > {limit}")


def _simplify(boxes: Iterable[Box]) -> Tuple[Box, ...]:
    """Убрать пустые, повторы и боксы внутри других"""
    unique: List[Box] = []
    seen = set()
    for box in boxes:
        if box_is_empty(box) or box in seen:
            continue
        seen.add(box)
        unique.append(box)
    if len(unique) > 256:
        return tuple(unique)
    kept = []
    for i, box in enumerate(unique):
        covered = any(
            j != i and box_subset(box, other) and (not box_subset(other, box) or j < i)
            for j, other in enumerate(unique)
        )
        if not covered:
            kept.append(box)
    return tuple(kept)
