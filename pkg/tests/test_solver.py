"""
Тесты точного решателя: симплекс, программа хорошести, перебор случаев
"""
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from algebra import parse_algebra
from infoset.boxes import BoxList
from infoset.intervals import Interval, IntervalUnion
from infoset.layout import CoordLayout
from solver.linear import eq, ge, gt, le, lp_feasible, lt
from solver.program import Node, NodeOp, UnsupportedAlgebra, build_program, compile_program
from solver.search import BoxConstraint, CaseBudgetExceeded, search_cases
from syntax.parser import parse_component

F = Fraction
HALF = F(1, 2)


class TestLinear:
    """Точный симплекс"""

    def test_strict_infeasible(self):
        """x < 1/2 и x > 1/2 несовместны"""
        assert lp_feasible([lt({0: 1}, HALF), gt({0: 1}, HALF)]) is None

    def test_strict_feasible(self):
        witness = lp_feasible([lt({0: 1}, HALF), ge({0: 1}, 0)])
        assert witness is not None
        assert 0 <= witness[0] < HALF

    def test_open_segment_between_touching_bounds(self):
        assert lp_feasible([ge({0: 1}, HALF), le({0: 1}, HALF), lt({0: 1}, 1)]) == {0: HALF}

    def test_equalities(self):
        witness = lp_feasible([eq({0: 1, 1: 1}, 1), eq({0: 1, 1: -1}, 0)])
        assert witness == {0: HALF, 1: HALF}

    def test_negative_values_allowed(self):
        witness = lp_feasible([le({0: 1}, -1)])
        assert witness is not None and witness[0] <= -1

    def test_trivial_constraint(self):
        assert lp_feasible([lt({}, 0)]) is None
        assert lp_feasible([le({}, 0)]) == {}

    @given(st.fractions(min_value=0, max_value=1, max_denominator=20),
           st.fractions(min_value=0, max_value=1, max_denominator=20))
    def test_interval_feasibility(self, a, b):
        """a ≤ x < b совместно ровно при a < b"""
        witness = lp_feasible([ge({0: 1}, a), lt({0: 1}, b)])
        assert (witness is not None) == (a < b)
        if witness is not None:
            assert a <= witness[0] < b


class TestProgram:
    """Построение узлов хорошести"""

    def test_godel_join_is_max(self, godel):
        components = [parse_component(t) for t in ("A | B", "A", "B")]
        program = build_program(godel, components, CoordLayout(1, (0, 0, 0)))
        assert program.nodes == (Node(0, NodeOp.MAX, (1, 2)),)

    def test_lukasiewicz_conj(self, luk):
        components = [parse_component(t) for t in ("A", "B", "A & B")]
        program = build_program(luk, components, CoordLayout(1, (0, 0, 0)))
        assert program.nodes == (Node(2, NodeOp.LUK_CONJ, (0, 1)),)

    def test_quantifier_over_instances(self, l3):
        components = [parse_component(t) for t in ("P(x)", "forall x. P(x)")]
        program = build_program(l3, components, CoordLayout(2, (1, 0)))
        assert program.nodes == (Node(2, NodeOp.MIN, (0, 1)),)
        assert program.holds((HALF, 1, HALF))
        assert not program.holds((HALF, 1, 1))

    def test_missing_child_gives_no_node(self, l3):
        components = [parse_component(t) for t in ("A", "A -> B")]
        assert build_program(l3, components, CoordLayout(1, (0, 0))).nodes == ()

    def test_repeated_component_is_copied(self, l3):
        components = [parse_component(t) for t in ("A", "A")]
        program = build_program(l3, components, CoordLayout(1, (0, 0)))
        assert program.nodes == (Node(1, NodeOp.MIN, (0,)),)

    def test_equality_is_constant(self, l3):
        component = parse_component("x = y")
        program = build_program(l3, [component], CoordLayout(2, (2,)))
        values = [node.const for node in sorted(program.nodes, key=lambda n: n.target)]
        assert values == [1, 0, 0, 1]

    def test_product_not_compiled(self):
        product = parse_algebra("product")
        components = [parse_component(t) for t in ("A", "A & A")]
        with pytest.raises(UnsupportedAlgebra):
            compile_program(product, components, CoordLayout(1, (0, 0)))

    def test_node_printing(self):
        assert str(Node(2, NodeOp.MAX, (0, 1))) == "$2 = max($0, $1)"
        assert str(Node(0, NodeOp.CONST, (), HALF)) == "$0 = const(1/2)"

    def test_constant_node_needs_value(self):
        with pytest.raises(ValueError):
            Node(0, NodeOp.CONST)


class TestSearch:
    """Перебор случаев"""

    def test_lukasiewicz_conj_case(self):
        """x2 = x0 ⊙ x1 при x2 ≥ 1/2 требует x0, x1 ≥ 1/2"""
        node = Node(2, NodeOp.LUK_CONJ, (0, 1))
        boxes = BoxConstraint((2,), BoxList(1, ((IntervalUnion.closed(HALF, 1),),)))
        found = search_cases(3, [node], [boxes])
        assert found is not None
        assert found[2] >= HALF and found[0] >= HALF and found[1] >= HALF
        assert node.holds(found)

    def test_impossible_case(self):
        node = Node(2, NodeOp.LUK_CONJ, (0, 0))
        boxes = (
            BoxConstraint((0,), BoxList(1, ((IntervalUnion.closed(0, HALF),),))),
            BoxConstraint((2,), BoxList(1, ((IntervalUnion.closed(F(1, 10), 1),),))),
        )
        assert search_cases(3, [node], boxes) is None

    def test_fixed_values(self):
        node = Node(1, NodeOp.LUK_IMPL, (0, 0))
        assert search_cases(2, [node], fixed={0: HALF, 1: 1}) is not None
        assert search_cases(2, [node], fixed={0: HALF, 1: HALF}) is None

    def test_violation(self):
        """Точка, нарушающая узел max, находится, если она есть"""
        node = Node(2, NodeOp.MAX, (0, 1))
        found = search_cases(3, [], violated=[node])
        assert found is not None and not node.holds(found)
        assert search_cases(3, [node], violated=[node]) is None

    def test_budget(self):
        node = Node(2, NodeOp.LUK_CONJ, (0, 1))
        with pytest.raises(CaseBudgetExceeded) as info:
            search_cases(3, [node], budget=1)
        assert info.value.explored == 1

    def test_repeated_argument(self):
        """x1 = x0 ⊙ x0 = 1/2 только при x0 = 3/4"""
        node = Node(1, NodeOp.LUK_CONJ, (0, 0))
        found = search_cases(2, [node], fixed={1: HALF})
        assert found == {0: F(3, 4), 1: HALF}


# === СВЕРКА С СЕТКОЙ ===

N_FREE = 2
GRID = [F(i, 12) for i in range(13)]
QUARTERS = [F(i, 4) for i in range(5)]
FAMILY_OPS = {
    "lukasiewicz": [NodeOp.MIN, NodeOp.MAX, NodeOp.LUK_CONJ, NodeOp.LUK_IMPL, NodeOp.CONST],
    "godel": [NodeOp.MIN, NodeOp.MAX, NodeOp.GODEL_IMPL, NodeOp.CONST],
}


@st.composite
def node_systems(draw, family: str):
    """Узлы над двумя свободными переменными: каждый узел задаёт новую переменную"""
    nodes = []
    for i in range(draw(st.integers(min_value=1, max_value=3))):
        target = N_FREE + i
        op = draw(st.sampled_from(FAMILY_OPS[family]))
        if op == NodeOp.CONST:
            nodes.append(Node(target, op, (), draw(st.sampled_from(QUARTERS))))
            continue
        earlier = st.integers(min_value=0, max_value=target - 1)
        if op in (NodeOp.MIN, NodeOp.MAX):
            args = tuple(draw(st.lists(earlier, min_size=1, max_size=2, unique=True)))
        else:
            args = (draw(earlier), draw(earlier))
        nodes.append(Node(target, op, args))
    n_vars = N_FREE + len(nodes)

    constraints = []
    for _ in range(draw(st.integers(min_value=0, max_value=2))):
        lo, hi = sorted(draw(st.lists(st.sampled_from(QUARTERS), min_size=2, max_size=2)))
        interval = Interval(lo, hi, draw(st.booleans()), draw(st.booleans()))
        var = draw(st.integers(min_value=0, max_value=n_vars - 1))
        constraints.append(BoxConstraint((var,), BoxList(1, ((IntervalUnion.of([interval]),),))))
    return n_vars, nodes, constraints


def _grid_points(n_vars, nodes):
    """Точки с хорошими свободными координатами на сетке 1/12, остальное по узлам"""
    for free in product(GRID, repeat=N_FREE):
        point = dict(enumerate(free))
        for node in nodes:
            point[node.target] = node.value(point)
        yield point


def _piecewise_holds(node, point) -> bool:
    """Узел выполнен хотя бы на одном из своих линейных кусков"""
    return any(all(c.holds(point) for c in node.satisfied_by(piece)) for piece in node.pieces())


class TestSearchAgainstGrid:
    """Перебор случаев против перебора сетки на случайных системах"""

    @pytest.mark.parametrize("family", sorted(FAMILY_OPS))
    @given(data=st.data())
    def test_grid_solution_is_found(self, family, data):
        """Решение на сетке ⇒ перебор случаев находит проверяемого свидетеля"""
        n_vars, nodes, constraints = data.draw(node_systems(family))
        on_grid = any(
            all(bc.holds(point) for bc in constraints) and all(0 <= v <= 1 for v in point.values())
            for point in _grid_points(n_vars, nodes)
        )
        found = search_cases(n_vars, nodes, constraints)
        if on_grid:
            assert found is not None
        if found is not None:
            assert set(found) == set(range(n_vars))
            assert all(0 <= value <= 1 for value in found.values())
            assert all(node.holds(found) for node in nodes)
            assert all(_piecewise_holds(node, found) for node in nodes)
            assert all(bc.holds(found) for bc in constraints)

    @pytest.mark.parametrize("family", sorted(FAMILY_OPS))
    @given(data=st.data())
    def test_violation_against_grid(self, family, data):
        """Свидетель нарушения выполняет узлы и нарушает хотя бы один из violated"""
        n_vars, nodes, constraints = data.draw(node_systems(family))
        target = data.draw(st.integers(min_value=0, max_value=n_vars - 1))
        op = data.draw(st.sampled_from([NodeOp.MIN, NodeOp.MAX]))
        violated = [Node(target, op, (0, 1))]
        on_grid = any(
            all(bc.holds(point) for bc in constraints) and not violated[0].holds(point)
            for point in _grid_points(n_vars, nodes)
        )
        found = search_cases(n_vars, nodes, constraints, violated=violated)
        if on_grid:
            assert found is not None
        if found is not None:
            assert all(node.holds(found) for node in nodes)
            assert all(bc.holds(found) for bc in constraints)
            assert not violated[0].holds(found)
