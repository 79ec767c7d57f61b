"""
Информационные множества S и их алгебра.

Три представления:
- ExplicitSet: конечное множество точек (конечные алгебры);
- BoxUnionSet: объединение боксов (вещественный случай);
- ConstrainedSet: точки, для которых существуют значения скрытых
  переменных, удовлетворяющие боксам и узлам хорошести.

Переменные ConstrainedSet: сначала видимые координаты раскладки, затем скрытые.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from config import config
from infoset.boxes import BoxGuardError, BoxList
from infoset.layout import CoordLayout, LayoutError
from solver.program import Node
from solver.search import BoxConstraint, search_cases

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, ...]


class InfoSetError(ValueError):
    """Ошибка операции над информационным множеством"""


class UnsupportedRepresentation(InfoSetError):
    """Операция не разрешима для данного представления"""


@dataclass(frozen=True)
class ExplicitSet:
    layout: CoordLayout
    points: FrozenSet[Point] = frozenset()

    def __post_init__(self):
        points = frozenset(tuple(Fraction(v) for v in p) for p in self.points)
        for point in points:
            if len(point) != self.layout.width:
                raise InfoSetError(f"point of width {len(point)} in a layout of width {self.layout.width}")
            if any(not 0 <= v <= 1 for v in point):
                raise InfoSetError(f"point {point} leaves [0, 1]")
        if len(points) > config.MAX_POINTS:
            raise BoxGuardError(f"explicit set of {len(points)} points exceeds the size guard")
        object.__setattr__(self, "points", points)

    def sorted_points(self) -> List[Point]:
        return sorted(self.points)


@dataclass(frozen=True)
class BoxUnionSet:
    layout: CoordLayout
    boxes: BoxList

    def __post_init__(self):
        if self.boxes.width != self.layout.width:
            raise InfoSetError(f"boxes of width {self.boxes.width} in a layout of width {self.layout.width}")

    @classmethod
    def full(cls, layout: CoordLayout) -> "BoxUnionSet":
        return cls(layout, BoxList.full(layout.width))

    @classmethod
    def empty(cls, layout: CoordLayout) -> "BoxUnionSet":
        return cls(layout, BoxList.empty(layout.width))


@dataclass(frozen=True)
class ConstrainedSet:
    """{ x̄ : ∃ ȳ ∈ [0,1]^hidden, (x̄,ȳ) удовлетворяет constraints и nodes }

    Одна переменная может быть целью нескольких узлов (после пересечения).
    """
    layout: CoordLayout
    hidden: int = 0
    constraints: Tuple[BoxConstraint, ...] = ()
    nodes: Tuple[Node, ...] = ()

    def __post_init__(self):
        if self.hidden < 0:
            raise InfoSetError("negative number of hidden variables")
        total = self.n_vars
        for constraint in self.constraints:
            if any(not 0 <= v < total for v in constraint.variables):
                raise InfoSetError(f"box constraint refers outside {total} variables")
        for node in self.nodes:
            if any(not 0 <= v < total for v in (node.target,) + node.args):
                raise InfoSetError(f"node {node} refers outside {total} variables")
        # одинаковые узлы и ограничения хранятся один раз
        object.__setattr__(self, "nodes", tuple(dict.fromkeys(self.nodes)))
        object.__setattr__(self, "constraints", tuple(dict.fromkeys(self.constraints)))

    @property
    def n_vars(self) -> int:
        return self.layout.width + self.hidden

    @property
    def visible(self) -> Tuple[int, ...]:
        return tuple(range(self.layout.width))


InfoSet = Union[ExplicitSet, BoxUnionSet, ConstrainedSet]


def _check_point(s: InfoSet, point: Sequence[Fraction]) -> Point:
    if len(point) != s.layout.width:
        raise LayoutError(f"point of width {len(point)} for a layout of width {s.layout.width}")
    return tuple(Fraction(v) for v in point)


def _check_same_layout(s1: InfoSet, s2: InfoSet) -> None:
    if s1.layout != s2.layout:
        raise LayoutError(f"layouts differ: {s1.layout.arities} over {s1.layout.domain_size} "
                          f"vs {s2.layout.arities} over {s2.layout.domain_size}")


# === ЧЛЕНСТВО И СВИДЕТЕЛИ ===

def member(s: InfoSet, point: Sequence[Fraction]) -> bool:
    point = _check_point(s, point)
    if isinstance(s, ExplicitSet):
        return point in s.points
    if isinstance(s, BoxUnionSet):
        return s.boxes.contains(point)
    values = dict(enumerate(point))
    if s.hidden == 0:
        return all(c.holds(values) for c in s.constraints) and all(n.holds(values) for n in s.nodes)
    found = search_cases(s.n_vars, s.nodes, s.constraints, fixed=values)
    return found is not None


def witness(s: InfoSet) -> Optional[Point]:
    """Какая-нибудь точка множества (для явного: лексикографически наименьшая)"""
    if isinstance(s, ExplicitSet):
        return min(s.points) if s.points else None
    if isinstance(s, BoxUnionSet):
        if s.boxes.is_empty():
            return None
        return tuple(c.some_value() for c in s.boxes.boxes[0])
    found = search_cases(s.n_vars, s.nodes, s.constraints)
    if found is None:
        return None
    return tuple(found[v] for v in s.visible)


def is_empty(s: InfoSet) -> bool:
    if isinstance(s, ExplicitSet):
        return not s.points
    if isinstance(s, BoxUnionSet):
        return s.boxes.is_empty()
    return witness(s) is None


# === ПРЕОБРАЗОВАНИЯ ПРАВИЛ ===

def permute(s: InfoSet, perm: Sequence[int]) -> InfoSet:
    """Правило 2: perm[j]: старая компонента на новом месте j"""
    layout = s.layout.permuted(perm)
    order = s.layout.coordinate_order(perm)
    if isinstance(s, ExplicitSet):
        return ExplicitSet(layout, frozenset(tuple(p[o] for o in order) for p in s.points))
    if isinstance(s, BoxUnionSet):
        return BoxUnionSet(layout, s.boxes.select(order))
    mapping = {old: new for new, old in enumerate(order)}
    for var in range(s.layout.width, s.n_vars):
        mapping[var] = var
    return ConstrainedSet(
        layout,
        s.hidden,
        tuple(c.remap(mapping) for c in s.constraints),
        tuple(n.remap(mapping) for n in s.nodes),
    )


def cylindrify(s: InfoSet, arities: Sequence[int]) -> InfoSet:
    """Правило 3: S × [0,1]^(новые координаты)"""
    layout = s.layout.extended(arities)
    extra = layout.width - s.layout.width
    if isinstance(s, ExplicitSet):
        boxes = BoxList.of_points(s.layout.width, s.points)
        return BoxUnionSet(layout, boxes.product_full(extra))
    if isinstance(s, BoxUnionSet):
        return BoxUnionSet(layout, s.boxes.product_full(extra))
    width = s.layout.width
    mapping = {v: v for v in range(width)}
    for var in range(width, s.n_vars):
        mapping[var] = var + extra
    return ConstrainedSet(
        layout,
        s.hidden,
        tuple(c.remap(mapping) for c in s.constraints),
        tuple(n.remap(mapping) for n in s.nodes),
    )


def project(s: InfoSet, keep: int) -> InfoSet:
    """Правило 5: оставить первые keep компонент"""
    if not 0 < keep < s.layout.components:
        raise InfoSetError(f"cannot keep {keep} of {s.layout.components} components")
    layout = s.layout.prefix(keep)
    if isinstance(s, ExplicitSet):
        return ExplicitSet(layout, frozenset(p[:layout.width] for p in s.points))
    if isinstance(s, BoxUnionSet):
        return BoxUnionSet(layout, s.boxes.select(range(layout.width)))
    # отброшенные координаты становятся скрытыми, номера переменных не меняются
    return ConstrainedSet(layout, s.hidden + s.layout.width - layout.width, s.constraints, s.nodes)


def intersect(s1: InfoSet, s2: InfoSet) -> InfoSet:
    """Правило 4"""
    _check_same_layout(s1, s2)
    if isinstance(s1, ExplicitSet):
        return ExplicitSet(s1.layout, frozenset(p for p in s1.points if member(s2, p)))
    if isinstance(s2, ExplicitSet):
        return ExplicitSet(s2.layout, frozenset(p for p in s2.points if member(s1, p)))
    if isinstance(s1, BoxUnionSet) and isinstance(s2, BoxUnionSet):
        return BoxUnionSet(s1.layout, s1.boxes.intersect(s2.boxes))
    if isinstance(s1, BoxUnionSet):
        s1, s2 = s2, s1
    if isinstance(s2, BoxUnionSet):
        return restrict(s1, s2.boxes)
    width = s1.layout.width
    mapping = {v: v for v in range(width)}
    for var in range(width, s2.n_vars):
        mapping[var] = var + s1.hidden
    nodes = s1.nodes + tuple(n.remap(mapping) for n in s2.nodes)
    return ConstrainedSet(
        s1.layout,
        s1.hidden + s2.hidden,
        s1.constraints + tuple(c.remap(mapping) for c in s2.constraints),
        nodes,
    )


def restrict(s: InfoSet, boxes: BoxList) -> InfoSet:
    """S ∩ (объединение боксов на видимых координатах)"""
    if boxes.width != s.layout.width:
        raise LayoutError(f"boxes of width {boxes.width} for a layout of width {s.layout.width}")
    if isinstance(s, ExplicitSet):
        return ExplicitSet(s.layout, frozenset(p for p in s.points if boxes.contains(p)))
    if isinstance(s, BoxUnionSet):
        return BoxUnionSet(s.layout, s.boxes.intersect(boxes))
    if boxes.is_full():
        return s
    return ConstrainedSet(s.layout, s.hidden, s.constraints + (BoxConstraint(s.visible, boxes),), s.nodes)


def complement(s: InfoSet) -> BoxUnionSet:
    """Дополнение в [0,1]^D (только для объединений боксов)"""
    if not isinstance(s, BoxUnionSet):
        raise UnsupportedRepresentation("complement is defined for box unions only")
    return BoxUnionSet(s.layout, s.boxes.complement())


# === ВКЛЮЧЕНИЕ ===

def _constraint_view(s: InfoSet) -> Tuple[int, Tuple[Node, ...], Tuple[BoxConstraint, ...]]:
    """Множество как задача для перебора случаев: (число переменных, узлы, боксы)"""
    if isinstance(s, BoxUnionSet):
        if s.boxes.is_full():
            return s.layout.width, (), ()
        return s.layout.width, (), (BoxConstraint(tuple(range(s.layout.width)), s.boxes),)
    if isinstance(s, ConstrainedSet):
        return s.n_vars, s.nodes, s.constraints
    raise UnsupportedRepresentation("explicit sets are checked pointwise")


def _outside_boxes(s: InfoSet, variables: Tuple[int, ...], boxes: BoxList) -> bool:
    """Есть ли точка s, у которой проекция на variables вне boxes"""
    n_vars, nodes, constraints = _constraint_view(s)
    outside = boxes.complement()
    if outside.is_empty():
        return False
    found = search_cases(n_vars, nodes, constraints + (BoxConstraint(variables, outside),))
    return found is not None


def subset_of(s1: InfoSet, s2: InfoSet) -> bool:
    """S1 ⊆ S2"""
    _check_same_layout(s1, s2)
    if isinstance(s1, ExplicitSet):
        return all(member(s2, p) for p in s1.points)
    if isinstance(s2, BoxUnionSet):
        if isinstance(s1, BoxUnionSet):
            return s1.boxes.subset_of(s2.boxes)
        return not _outside_boxes(s1, s1.visible, s2.boxes)
    if isinstance(s2, ExplicitSet):
        if isinstance(s1, BoxUnionSet):
            if not s1.boxes.is_finite():
                return False
            return all(p in s2.points for p in s1.boxes.finite_points())
        allowed = BoxList.of_points(s2.layout.width, s2.points)
        return not _outside_boxes(s1, s1.visible, allowed)
    # s2: ConstrainedSet
    if s2.hidden > 0:
        if s1 == s2:
            return True
        raise UnsupportedRepresentation("inclusion in a set with hidden variables is not decided")
    for constraint in s2.constraints:
        if _outside_boxes(s1, constraint.variables, constraint.boxes):
            return False
    if not s2.nodes:
        return True
    n_vars, nodes, constraints = _constraint_view(s1)
    found = search_cases(n_vars, nodes, constraints, violated=s2.nodes)
    return found is None


def same_set(s1: InfoSet, s2: InfoSet) -> bool:
    """Равенство множеств: структурно или взаимным включением"""
    if s1 == s2:
        return True
    return subset_of(s1, s2) and subset_of(s2, s1)


def witness_outside(s: InfoSet, target: InfoSet) -> Optional[Point]:
    """Точка s, чьи первые компоненты (по раскладке target) не лежат в target.

    Для явных множеств: лексикографически наименьшая такая точка.
    """
    components = target.layout.components
    if s.layout.prefix(components) != target.layout:
        raise LayoutError("the target layout is not a prefix of the set layout")
    width = target.layout.width
    if isinstance(s, ExplicitSet):
        for point in s.sorted_points():
            if not member(target, point[:width]):
                return point
        return None

    prefix = tuple(range(width))
    attempts: List[Tuple[Tuple[BoxConstraint, ...], Optional[Tuple[Node, ...]]]] = []
    if isinstance(target, ExplicitSet):
        outside = BoxList.of_points(width, target.points).complement()
        attempts.append(((BoxConstraint(prefix, outside),), None))
    elif isinstance(target, BoxUnionSet):
        attempts.append(((BoxConstraint(prefix, target.boxes.complement()),), None))
    else:
        if target.hidden > 0:
            raise UnsupportedRepresentation("inclusion in a set with hidden variables is not decided")
        for constraint in target.constraints:
            attempts.append(((BoxConstraint(constraint.variables, constraint.boxes.complement()),), None))
        if target.nodes:
            attempts.append(((), target.nodes))

    n_vars, nodes, constraints = _constraint_view(s)
    for extra, violated in attempts:
        if any(bc.boxes.is_empty() for bc in extra):
            continue
        found = search_cases(n_vars, nodes, constraints + extra, violated=violated)
        if found is not None:
            return tuple(found[v] for v in range(s.layout.width))
    return None


# === ПЕРЕХОДЫ МЕЖДУ ПРЕДСТАВЛЕНИЯМИ ===

def to_explicit(s: InfoSet, carrier: Sequence[Fraction]) -> ExplicitSet:
    """Точки носителя^D внутри множества (конечные алгебры)"""
    if isinstance(s, ExplicitSet):
        return ExplicitSet(s.layout, frozenset(p for p in s.points if all(v in carrier for v in p)))
    if isinstance(s, BoxUnionSet):
        return ExplicitSet(s.layout, frozenset(s.boxes.carrier_points(carrier)))
    total = len(carrier) ** s.layout.width
    if total > config.MAX_POINTS:
        raise BoxGuardError(f"{total} carrier points exceed the size guard")
    return ExplicitSet(
        s.layout,
        frozenset(p for p in itertools.product(carrier, repeat=s.layout.width) if member(s, p)),
    )


def to_boxes(s: InfoSet) -> BoxUnionSet:
    """Явное множество или объединение боксов как объединение боксов"""
    if isinstance(s, BoxUnionSet):
        return s
    if isinstance(s, ExplicitSet):
        return BoxUnionSet(s.layout, BoxList.of_points(s.layout.width, s.points))
    raise UnsupportedRepresentation("a constrained set has no box-union form")


def with_layout(s: InfoSet, layout: CoordLayout) -> InfoSet:
    """То же множество предложений на другом домене"""
    if layout.arities != s.layout.arities or any(a != 0 for a in layout.arities):
        raise LayoutError("only sentence-only sets move between domains")
    if isinstance(s, ExplicitSet):
        return ExplicitSet(layout, s.points)
    if isinstance(s, BoxUnionSet):
        return BoxUnionSet(layout, s.boxes)
    if s.hidden == 0 and not s.nodes:
        return ConstrainedSet(layout, 0, s.constraints, ())
    raise UnsupportedRepresentation("goodness constraints depend on the domain")


def explicit_of(layout: CoordLayout, points: Iterable[Sequence[Fraction]]) -> ExplicitSet:
    return ExplicitSet(layout, frozenset(tuple(Fraction(v) for v in p) for p in points))


def describe(s: InfoSet) -> str:
    """Краткое описание для логов"""
    if isinstance(s, ExplicitSet):
        return f"explicit[{len(s.points)}]"
    if isinstance(s, BoxUnionSet):
        return f"boxes[{len(s.boxes.boxes)}]"
    return f"constrained[hidden={s.hidden}, boxes={len(s.constraints)}, nodes={len(s.nodes)}]"
