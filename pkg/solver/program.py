"""
Программа хорошести: условия правила 7 как узлы над координатами.

Каждый узел фиксирует значение одной координаты (target) через значения
других: min/max по экземплярам кванторов и преемникам, связки семейства,
константы. Узлы идут в топологическом порядке.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from algebra import ONE, ZERO, Algebra, Connective, Family
from infoset.layout import CoordLayout
from semantics.models import Frame
from solver.linear import LinearConstraint, eq, ge, gt, le, lt
from syntax.formulas import (
    Atom,
    Box,
    Component,
    Compound,
    Constant,
    Diamond,
    Equality,
    Exists,
    Forall,
    Formula,
    depth,
)
from utils.rationals import format_rational

logger = logging.getLogger(__name__)


class UnsupportedAlgebra(ValueError):
    """Алгебра не сводится к кусочно-линейным ограничениям"""


class NodeOp(str, Enum):
    MIN = "min"
    MAX = "max"
    LUK_CONJ = "lukconj"
    LUK_IMPL = "lukimpl"
    GODEL_IMPL = "godelimpl"
    PROD_CONJ = "prodconj"
    PROD_IMPL = "prodimpl"
    CONST = "const"


BINARY_OPS = (NodeOp.LUK_CONJ, NodeOp.LUK_IMPL, NodeOp.GODEL_IMPL, NodeOp.PROD_CONJ, NodeOp.PROD_IMPL)
NONLINEAR_OPS = (NodeOp.PROD_CONJ, NodeOp.PROD_IMPL)

# Линейное выражение: (коэффициенты, свободный член)
Expr = Tuple[Dict[int, Fraction], Fraction]


@dataclass(frozen=True)
class Piece:
    """Кусок определения узла: при conditions значение равно value"""
    conditions: Tuple[LinearConstraint, ...]
    value: Tuple[Tuple[int, Fraction], ...]
    offset: Fraction

    def expr(self) -> Dict[int, Fraction]:
        return dict(self.value)


@dataclass(frozen=True)
class Node:
    """x_target = op(x_args...) или x_target = const"""
    target: int
    op: NodeOp
    args: Tuple[int, ...] = ()
    const: Optional[Fraction] = None

    def __post_init__(self):
        if self.op == NodeOp.CONST:
            if self.const is None or self.args:
                raise ValueError("a constant node carries a value and no arguments")
        elif self.op in BINARY_OPS:
            if len(self.args) != 2:
                raise ValueError(f"{self.op.value} takes two arguments")
        elif not self.args:
            raise ValueError(f"{self.op.value} needs at least one argument")

    @property
    def is_copy(self) -> bool:
        return self.op == NodeOp.MIN and len(self.args) == 1

    def value(self, point: Mapping[int, Fraction]) -> Fraction:
        """Точное значение правой части"""
        if self.op == NodeOp.CONST:
            return self.const
        values = [point[a] for a in self.args]
        if self.op == NodeOp.MIN:
            return min(values)
        if self.op == NodeOp.MAX:
            return max(values)
        x, y = values
        if self.op == NodeOp.LUK_CONJ:
            return max(ZERO, x + y - 1)
        if self.op == NodeOp.LUK_IMPL:
            return min(ONE, 1 - x + y)
        if self.op == NodeOp.GODEL_IMPL:
            return ONE if x <= y else y
        if self.op == NodeOp.PROD_CONJ:
            return x * y
        return ONE if x <= y else y / x

    def holds(self, point: Mapping[int, Fraction]) -> bool:
        return point[self.target] == self.value(point)

    def pieces(self) -> List[Piece]:
        """Разбиение на линейные куски (объединение кусков покрывает всё)"""
        if self.op in NONLINEAR_OPS:
            raise UnsupportedAlgebra("product connectives are not piecewise linear")
        if self.op == NodeOp.CONST:
            return [Piece((), (), self.const)]
        if self.op in (NodeOp.MIN, NodeOp.MAX):
            out = []
            for chosen in self.args:
                conditions = []
                for other in self.args:
                    if other == chosen:
                        continue
                    if self.op == NodeOp.MIN:
                        conditions.append(le({chosen: 1, other: -1}, 0))
                    else:
                        conditions.append(ge({chosen: 1, other: -1}, 0))
                out.append(Piece(tuple(conditions), ((chosen, ONE),), ZERO))
            return out
        a, b = self.args
        if self.op == NodeOp.LUK_CONJ:
            return [
                Piece((le(_pair(a, 1, b, 1), 1),), (), ZERO),
                Piece((ge(_pair(a, 1, b, 1), 1),), _linear(_pair(a, 1, b, 1)), -ONE),
            ]
        if self.op == NodeOp.LUK_IMPL:
            return [
                Piece((le(_pair(a, 1, b, -1), 0),), (), ONE),
                Piece((ge(_pair(a, 1, b, -1), 0),), _linear(_pair(a, -1, b, 1)), ONE),
            ]
        return [
            Piece((le(_pair(a, 1, b, -1), 0),), (), ONE),
            Piece((gt(_pair(a, 1, b, -1), 0),), ((b, ONE),), ZERO),
        ]

    def satisfied_by(self, piece: Piece) -> List[LinearConstraint]:
        """Ограничения «кусок выбран и узел выполнен»"""
        coefs = {v: -c for v, c in piece.value}
        coefs[self.target] = coefs.get(self.target, ZERO) + 1
        return list(piece.conditions) + [eq(coefs, piece.offset)]

    def violated_by(self, piece: Piece) -> List[List[LinearConstraint]]:
        """Два случая нарушения внутри куска: target < value и target > value"""
        coefs = {v: -c for v, c in piece.value}
        coefs[self.target] = coefs.get(self.target, ZERO) + 1
        return [
            list(piece.conditions) + [lt(coefs, piece.offset)],
            list(piece.conditions) + [gt(coefs, piece.offset)],
        ]

    def remap(self, mapping: Mapping[int, int]) -> "Node":
        return Node(mapping[self.target], self.op, tuple(mapping[a] for a in self.args), self.const)

    def __str__(self) -> str:
        args = [f"${a}" for a in self.args]
        if self.const is not None:
            args.append(format_rational(self.const))
        return f"${self.target} = {self.op.value}({', '.join(args)})"


def _pair(a: int, ca: int, b: int, cb: int) -> Dict[int, int]:
    """ca·x_a + cb·x_b; при a == b коэффициенты складываются"""
    coefs = {a: ca}
    coefs[b] = coefs.get(b, 0) + cb
    return coefs


def _linear(coefs: Dict[int, int]) -> Tuple[Tuple[int, Fraction], ...]:
    return tuple(sorted((v, Fraction(c)) for v, c in coefs.items() if c != 0))


@dataclass(frozen=True)
class GoodnessProgram:
    """Узлы над координатами 0..width-1 в топологическом порядке"""
    width: int
    nodes: Tuple[Node, ...] = ()

    def __post_init__(self):
        seen = set()
        for node in self.nodes:
            for index in (node.target,) + node.args:
                if not 0 <= index < self.width:
                    raise ValueError(f"node {node} refers outside width {self.width}")
            if node.target in seen:
                raise ValueError(f"coordinate {node.target} is constrained twice")
            seen.add(node.target)

    @property
    def targets(self) -> frozenset:
        return frozenset(n.target for n in self.nodes)

    def free_coordinates(self) -> List[int]:
        targets = self.targets
        return [c for c in range(self.width) if c not in targets]

    def holds(self, point: Sequence[Fraction]) -> bool:
        values = dict(enumerate(point))
        return all(node.holds(values) for node in self.nodes)

    def violations(self, point: Sequence[Fraction]) -> List[Node]:
        values = dict(enumerate(point))
        return [node for node in self.nodes if not node.holds(values)]

    def is_linear(self) -> bool:
        return all(node.op not in NONLINEAR_OPS for node in self.nodes)

    def propagate(self, values: Dict[int, Fraction]) -> Dict[int, Fraction]:
        """Досчитать определённые координаты, чьи аргументы уже известны"""
        out = dict(values)
        for node in self.nodes:
            if node.target not in out and all(a in out for a in node.args):
                out[node.target] = node.value(out)
        return out


# === ПОСТРОЕНИЕ ===

def _node_ops(alg: Algebra) -> Dict[Connective, NodeOp]:
    if alg.family == Family.GODEL:
        conj, impl = NodeOp.MIN, NodeOp.GODEL_IMPL
    elif alg.family == Family.PRODUCT:
        conj, impl = NodeOp.PROD_CONJ, NodeOp.PROD_IMPL
    else:
        conj, impl = NodeOp.LUK_CONJ, NodeOp.LUK_IMPL
    return {Connective.MEET: NodeOp.MIN, Connective.JOIN: NodeOp.MAX, Connective.CONJ: conj, Connective.IMPL: impl}


def _dedupe(items: Iterable[int]) -> Tuple[int, ...]:
    out: List[int] = []
    for item in items:
        if item not in out:
            out.append(item)
    return tuple(out)


def build_program(alg: Algebra, components: Sequence[Component], layout: CoordLayout,
                  frame: Optional[Frame] = None) -> GoodnessProgram:
    """Узлы хорошести для списка компонент в данной раскладке.

    Связка, квантор или модальность получает узел, если все её
    непосредственные подформулы присутствуют в списке. Атомы с одинаковыми
    предикатом и аргументами, а также повторы компонент связываются копией.
    """
    if layout.modal and frame is None:
        raise ValueError("a modal layout needs a frame")
    if frame is not None and frame.worlds != layout.domain_size:
        raise ValueError(f"frame has {frame.worlds} worlds, layout expects {layout.domain_size}")
    ops = _node_ops(alg)
    first: Dict[Formula, int] = {}
    for index, component in enumerate(components):
        first.setdefault(component.formula, index)

    def coord_of(formula: Formula, assignment: Mapping[str, int], world: Optional[int]) -> int:
        index = first[formula]
        if layout.modal:
            return layout.coordinate(index, (world,))
        return layout.coordinate(index, tuple(assignment[v] for v in components[index].free_vars))

    entries: Dict[tuple, int] = {}
    nodes: List[Tuple[tuple, Node]] = []
    for index, component in enumerate(components):
        formula = component.formula
        level = depth(formula)
        for point in layout.grid(index):
            target = layout.coordinate(index, point)
            world = point[0] if layout.modal else None
            assignment = {} if layout.modal else dict(zip(component.free_vars, point))
            node = None
            if isinstance(formula, Atom):
                key = (formula.pred, (world,) if layout.modal else tuple(assignment[a] for a in formula.args))
                if key in entries:
                    node = Node(target, NodeOp.MIN, (entries[key],))
                else:
                    entries[key] = target
            elif isinstance(formula, Equality):
                crisp = ONE if assignment[formula.left] == assignment[formula.right] else ZERO
                node = Node(target, NodeOp.CONST, (), crisp)
            elif isinstance(formula, Constant):
                node = Node(target, NodeOp.CONST, (), formula.value)
            elif first[formula] != index:
                node = Node(target, NodeOp.MIN, (coord_of(formula, assignment, world),))
            elif isinstance(formula, Compound):
                if all(child in first for child in formula.children):
                    args = tuple(coord_of(child, assignment, world) for child in formula.children)
                    node = Node(target, ops[formula.conn], args)
            elif isinstance(formula, (Forall, Exists)):
                if formula.body in first:
                    args = _dedupe(
                        coord_of(formula.body, {**assignment, formula.var: e}, None)
                        for e in range(layout.domain_size)
                    )
                    node = Node(target, NodeOp.MIN if isinstance(formula, Forall) else NodeOp.MAX, args)
            elif isinstance(formula, (Box, Diamond)):
                if formula.body in first:
                    successors = frame.successors(world)
                    if not successors:
                        node = Node(target, NodeOp.CONST, (), ONE if isinstance(formula, Box) else ZERO)
                    else:
                        args = tuple(coord_of(formula.body, {}, v) for v in successors)
                        node = Node(target, NodeOp.MIN if isinstance(formula, Box) else NodeOp.MAX, args)
            if node is not None:
                nodes.append(((level, node.is_copy, target), node))
    nodes.sort(key=lambda item: item[0])
    program = GoodnessProgram(layout.width, tuple(node for _, node in nodes))
    logger.debug(f"🔧 Программа хорошести: {len(program.nodes)} узлов на ширине {layout.width}")
    return program


def compile_program(alg: Algebra, components: Sequence[Component], layout: CoordLayout,
                    frame: Optional[Frame] = None) -> GoodnessProgram:
    """Программа для решателя: только кусочно-линейные семейства"""
    if alg.family == Family.PRODUCT:
        raise UnsupportedAlgebra("product logic has no exact linear decision procedure")
    return build_program(alg, components, layout, frame)
