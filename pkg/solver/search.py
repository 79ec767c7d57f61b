"""
Ленивый перебор случаев: выбор бокса, куска каждого узла, и проверка
совместности точным симплексом на каждом шаге с отсечением.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from config import config
from infoset.boxes import BoxList
from infoset.intervals import Interval, IntervalUnion
from solver.linear import LinearConstraint, eq, ge, gt, le, lp_feasible, lt
from solver.program import Node

logger = logging.getLogger(__name__)

# Альтернатива: ограничения и дополнительные группы выбора
Alternative = Tuple[List[LinearConstraint], List["Group"]]
Group = List[Alternative]


class CaseBudgetExceeded(RuntimeError):
    """Исчерпан бюджет перебора случаев"""

    def __init__(self, explored: int):
        super().__init__(f"case budget exceeded after {explored} linear programs")
        self.explored = explored


@dataclass(frozen=True)
class BoxConstraint:
    """Точка, ограниченная на variables, лежит в boxes"""
    variables: Tuple[int, ...]
    boxes: BoxList

    def __post_init__(self):
        if len(self.variables) != self.boxes.width:
            raise ValueError(f"{len(self.variables)} variables for boxes of width {self.boxes.width}")

    def holds(self, point: Mapping[int, Fraction]) -> bool:
        return self.boxes.contains(tuple(point[v] for v in self.variables))

    def remap(self, mapping: Mapping[int, int]) -> "BoxConstraint":
        return BoxConstraint(tuple(mapping[v] for v in self.variables), self.boxes)


def interval_constraints(var: int, interval: Interval) -> List[LinearConstraint]:
    """x ∈ interval (границы 0 и 1 уже в базе)"""
    out = []
    if interval.is_point():
        return [eq({var: 1}, interval.lo)]
    if interval.lo_closed:
        if interval.lo > 0:
            out.append(ge({var: 1}, interval.lo))
    else:
        out.append(gt({var: 1}, interval.lo))
    if interval.hi_closed:
        if interval.hi < 1:
            out.append(le({var: 1}, interval.hi))
    else:
        out.append(lt({var: 1}, interval.hi))
    return out


def _coordinate_group(var: int, union: IntervalUnion) -> Group:
    return [(interval_constraints(var, item), []) for item in union.intervals]


def box_group(constraint: BoxConstraint) -> Group:
    """Выбор бокса; координаты из нескольких интервалов: вложенный выбор"""
    group: Group = []
    for box in constraint.boxes.boxes:
        constraints: List[LinearConstraint] = []
        nested: List[Group] = []
        for var, union in zip(constraint.variables, box):
            if union.is_full():
                continue
            if len(union.intervals) == 1:
                constraints.extend(interval_constraints(var, union.intervals[0]))
            else:
                nested.append(_coordinate_group(var, union))
        group.append((constraints, nested))
    return group


def node_group(node: Node) -> Group:
    return [(node.satisfied_by(piece), []) for piece in node.pieces()]


def violation_group(nodes: Sequence[Node]) -> Group:
    """Хотя бы один из узлов нарушен"""
    group: Group = []
    for node in nodes:
        for piece in node.pieces():
            for case in node.violated_by(piece):
                group.append((case, []))
    return group


def _holds_all(constraints: Sequence[LinearConstraint], point: Mapping[int, Fraction]) -> bool:
    return all(c.holds(point) for c in constraints)


def search_cases(n_vars: int, nodes: Sequence[Node], box_constraints: Sequence[BoxConstraint] = (),
                 fixed: Optional[Mapping[int, Fraction]] = None,
                 violated: Optional[Sequence[Node]] = None,
                 budget: Optional[int] = None) -> Optional[Dict[int, Fraction]]:
    """Точка [0,1]^n_vars, удовлетворяющая всем узлам и боксам
    (и нарушающая хотя бы один узел из violated, если он задан), либо None.
    """
    budget = config.CASE_BUDGET if budget is None else budget
    base: List[LinearConstraint] = []
    for var in range(n_vars):
        base.append(ge({var: 1}, 0))
        base.append(le({var: 1}, 1))
    for var, value in (fixed or {}).items():
        base.append(eq({var: 1}, value))

    agenda: List[Group] = [box_group(bc) for bc in box_constraints]
    agenda.extend(node_group(node) for node in nodes)
    if violated is not None:
        if not violated:
            return None
        agenda.append(violation_group(violated))

    explored = 0

    def verify(point: Dict[int, Fraction]) -> bool:
        if not all(node.holds(point) for node in nodes):
            return False
        if not all(bc.holds(point) for bc in box_constraints):
            return False
        if violated is not None and all(node.holds(point) for node in violated):
            return False
        return all(0 <= point[v] <= 1 for v in range(n_vars))

    def dfs(constraints: List[LinearConstraint], pending: List[Group]) -> Optional[Dict[int, Fraction]]:
        nonlocal explored
        explored += 1
        if explored > budget:
            raise CaseBudgetExceeded(explored - 1)
        witness = lp_feasible(constraints)
        if witness is None:
            return None
        if not pending:
            point = {v: witness.get(v, Fraction(0)) for v in range(n_vars)}
            if verify(point):
                return point
            logger.error("❌ Свидетель не прошёл точную проверку, ветка отброшена")
            return None
        group, rest = pending[0], pending[1:]
        # сначала альтернативы, совместимые с текущим свидетелем
        ordered = sorted(group, key=lambda alt: not _holds_all(alt[0], witness))
        for alt_constraints, nested in ordered:
            found = dfs(constraints + alt_constraints, nested + rest)
            if found is not None:
                return found
        return None

    result = dfs(base, agenda)
    logger.debug(f"🔎 Перебор случаев: {explored} задач ЛП, {'найдено' if result else 'пусто'}")
    return result
