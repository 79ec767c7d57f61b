"""
Фильтр хороших кортежей (правило 7) для всех представлений множества.
"""
import logging
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set

from algebra import Algebra
from config import config
from infoset.boxes import Box, BoxGuardError, BoxList
from infoset.sets import (
    BoxUnionSet,
    ConstrainedSet,
    ExplicitSet,
    InfoSet,
    Point,
    describe,
    to_explicit,
)
from semantics.models import Frame
from solver.program import GoodnessProgram, build_program, compile_program
from solver.search import BoxConstraint
from syntax.formulas import Component

logger = logging.getLogger(__name__)


def good_filter_explicit(alg: Algebra, components: Sequence[Component], s: ExplicitSet,
                         frame: Optional[Frame] = None) -> ExplicitSet:
    """Оставить точки, удовлетворяющие условиям хорошести"""
    program = build_program(alg, components, s.layout, frame)
    return ExplicitSet(s.layout, frozenset(p for p in s.points if program.holds(p)))


def good_filter(alg: Algebra, components: Sequence[Component], s: InfoSet,
                frame: Optional[Frame] = None) -> InfoSet:
    """Правило 7 для любого представления"""
    if isinstance(s, ExplicitSet):
        result = good_filter_explicit(alg, components, s, frame)
    elif alg.is_finite:
        program = build_program(alg, components, s.layout, frame)
        if isinstance(s, BoxUnionSet):
            points = enumerate_good(program, s.boxes, alg.carrier())
            result = ExplicitSet(s.layout, frozenset(points))
        else:
            explicit = to_explicit(s, alg.carrier())
            result = ExplicitSet(s.layout, frozenset(p for p in explicit.points if program.holds(p)))
    else:
        program = compile_program(alg, components, s.layout, frame)
        if isinstance(s, BoxUnionSet):
            constraints = ()
            if not s.boxes.is_full():
                constraints = (BoxConstraint(tuple(range(s.layout.width)), s.boxes),)
            result = ConstrainedSet(s.layout, 0, constraints, program.nodes)
        else:
            result = ConstrainedSet(s.layout, s.hidden, s.constraints, s.nodes + program.nodes)
    logger.debug(f"🧹 Правило 7: {describe(s)} → {describe(result)}")
    return result


def enumerate_good(program: GoodnessProgram, boxes: BoxList, carrier: Sequence[Fraction]) -> Set[Point]:
    """Хорошие точки носителя внутри боксов.

    Свободные координаты перебираются по значениям носителя в боксе,
    определённые досчитываются, как только готовы их аргументы.
    """
    free = program.free_coordinates()
    position = {c: i for i, c in enumerate(free)}
    ready: Dict[int, int] = {}
    by_level: Dict[int, List] = defaultdict(list)
    for node in program.nodes:
        level = max((position[a] if a in position else ready[a] for a in node.args), default=-1)
        ready[node.target] = level
        by_level[level].append(node)

    width = program.width
    out: Set[Point] = set()

    def settle(box: Box, values: Dict[int, Fraction], level: int) -> Optional[List[int]]:
        computed = []
        for node in by_level.get(level, ()):
            value = node.value(values)
            if not box[node.target].contains(value):
                for target in computed:
                    del values[target]
                return None
            values[node.target] = value
            computed.append(node.target)
        return computed

    def assign(box: Box, values: Dict[int, Fraction], k: int) -> None:
        if k == len(free):
            out.add(tuple(values[c] for c in range(width)))
            if len(out) > config.MAX_POINTS:
                raise BoxGuardError(f"more than {config.MAX_POINTS} good points")
            return
        coordinate = free[k]
        for value in box[coordinate].values_in(carrier):
            values[coordinate] = value
            computed = settle(box, values, k)
            if computed is not None:
                assign(box, values, k + 1)
                for target in computed:
                    del values[target]
            del values[coordinate]

    for box in boxes.boxes:
        values: Dict[int, Fraction] = {}
        if settle(box, values, -1) is None:
            continue
        assign(box, values, 0)
    return out
