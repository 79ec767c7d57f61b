"""
Рациональные интервалы с открытыми/закрытыми концами и их объединения в [0, 1].
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from utils.rationals import format_rational

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    @classmethod
    def point(cls, value: Fraction) -> "Interval":
        return cls(value, value, True, True)

    def is_empty(self) -> bool:
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    def is_point(self) -> bool:
        return self.lo == self.hi and self.lo_closed and self.hi_closed

    def contains(self, value: Fraction) -> bool:
        if value < self.lo or value > self.hi:
            return False
        if value == self.lo and not self.lo_closed:
            return False
        if value == self.hi and not self.hi_closed:
            return False
        return True

    def intersect(self, other: "Interval") -> "Interval":
        if self.lo > other.lo:
            lo, lo_closed = self.lo, self.lo_closed
        elif other.lo > self.lo:
            lo, lo_closed = other.lo, other.lo_closed
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        if self.hi < other.hi:
            hi, hi_closed = self.hi, self.hi_closed
        elif other.hi < self.hi:
            hi, hi_closed = other.hi, other.hi_closed
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        return Interval(lo, hi, lo_closed, hi_closed)

    def __str__(self) -> str:
        if self.is_point():
            return "{" + format_rational(self.lo) + "}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format_rational(self.lo)},{format_rational(self.hi)}{right}"


def _touches(left: Interval, right: Interval) -> bool:
    """Пересекаются или смыкаются (left.lo <= right.lo)"""
    if right.lo < left.hi:
        return True
    return right.lo == left.hi and (left.hi_closed or right.lo_closed)


def _canonical(intervals: Iterable[Interval]) -> Tuple[Interval, ...]:
    items = sorted(
        (i for i in intervals if not i.is_empty()),
        key=lambda i: (i.lo, not i.lo_closed),
    )
    merged: List[Interval] = []
    for item in items:
        if merged and _touches(merged[-1], item):
            last = merged[-1]
            if item.hi > last.hi:
                hi, hi_closed = item.hi, item.hi_closed
            elif item.hi < last.hi:
                hi, hi_closed = last.hi, last.hi_closed
            else:
                hi, hi_closed = last.hi, last.hi_closed or item.hi_closed
            merged[-1] = Interval(last.lo, hi, last.lo_closed, hi_closed)
        else:
            merged.append(item)
    return tuple(merged)


@dataclass(frozen=True)
class IntervalUnion:
    """Отсортированные непересекающиеся интервалы, канонический вид"""
    intervals: Tuple[Interval, ...] = ()

    def __post_init__(self):
        for item in self.intervals:
            if item.lo < 0 or item.hi > 1:
                raise ValueError(f"interval {item} leaves [0, 1]")
        object.__setattr__(self, "intervals", _canonical(self.intervals))

    # === КОНСТРУКТОРЫ ===

    @classmethod
    def of(cls, intervals: Iterable[Interval]) -> "IntervalUnion":
        return cls(tuple(intervals))

    @classmethod
    def full(cls) -> "IntervalUnion":
        return cls((Interval(ZERO, ONE),))

    @classmethod
    def empty(cls) -> "IntervalUnion":
        return cls(())

    @classmethod
    def point(cls, value: Fraction) -> "IntervalUnion":
        return cls((Interval.point(Fraction(value)),))

    @classmethod
    def closed(cls, lo: Fraction, hi: Fraction) -> "IntervalUnion":
        return cls((Interval(Fraction(lo), Fraction(hi)),))

    @classmethod
    def points(cls, values: Iterable[Fraction]) -> "IntervalUnion":
        return cls(tuple(Interval.point(Fraction(v)) for v in values))

    # === ЗАПРОСЫ ===

    def is_empty(self) -> bool:
        return not self.intervals

    def is_full(self) -> bool:
        return self.intervals == (Interval(ZERO, ONE),)

    def is_finite(self) -> bool:
        return all(i.is_point() for i in self.intervals)

    def finite_values(self) -> List[Fraction]:
        if not self.is_finite():
            raise ValueError(f"{self} is not a finite set")
        return [i.lo for i in self.intervals]

    def contains(self, value: Fraction) -> bool:
        return any(i.contains(value) for i in self.intervals)

    def values_in(self, carrier: Sequence[Fraction]) -> List[Fraction]:
        return [v for v in carrier if self.contains(v)]

    def endpoints(self) -> List[Fraction]:
        out = []
        for item in self.intervals:
            out.extend((item.lo, item.hi))
        return out

    # === ОПЕРАЦИИ ===

    def intersect(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion(tuple(a.intersect(b) for a in self.intervals for b in other.intervals))

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion(self.intervals + other.intervals)

    def complement(self) -> "IntervalUnion":
        """Дополнение в [0, 1]; флаги концов меняются на двойственные"""
        gaps = []
        lo, lo_closed = ZERO, True
        for item in self.intervals:
            gaps.append(Interval(lo, item.lo, lo_closed, not item.lo_closed))
            lo, lo_closed = item.hi, not item.hi_closed
        gaps.append(Interval(lo, ONE, lo_closed, True))
        return IntervalUnion(tuple(gaps))

    def difference(self, other: "IntervalUnion") -> "IntervalUnion":
        return self.intersect(other.complement())

    def subset_of(self, other: "IntervalUnion") -> bool:
        return self.difference(other).is_empty()

    def some_value(self) -> Optional[Fraction]:
        """Какое-нибудь значение из множества"""
        if not self.intervals:
            return None
        first = self.intervals[0]
        if first.lo_closed:
            return first.lo
        if first.hi_closed and first.hi != first.lo:
            return first.hi
        return (first.lo + first.hi) / 2

    def __str__(self) -> str:
        if self.is_full():
            return "full"
        if not self.intervals:
            return "empty"
        return " u ".join(str(i) for i in self.intervals)
