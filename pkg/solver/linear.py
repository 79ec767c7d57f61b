"""
Линейные ограничения над точными рациональными и симплекс-метод.

Строгие неравенства: a·x < b заменяется на a·x + ε ≤ b, затем ε
максимизируется; система совместна, если на допустимом множестве ε > 0.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


class Relation(str, Enum):
    EQ = "="
    LE = "<="
    LT = "<"


@dataclass(frozen=True)
class LinearConstraint:
    """Σ c_i x_i (=|≤|<) bound"""
    coefficients: Tuple[Tuple[int, Fraction], ...]
    relation: Relation
    bound: Fraction

    @classmethod
    def build(cls, coefficients: Mapping[int, Fraction], relation: Relation, bound) -> "LinearConstraint":
        items = tuple(sorted((v, Fraction(c)) for v, c in coefficients.items() if c != 0))
        return cls(items, relation, Fraction(bound))

    def value(self, point: Mapping[int, Fraction]) -> Fraction:
        return sum((c * point[v] for v, c in self.coefficients), ZERO)

    def holds(self, point: Mapping[int, Fraction]) -> bool:
        lhs = self.value(point)
        if self.relation == Relation.EQ:
            return lhs == self.bound
        if self.relation == Relation.LE:
            return lhs <= self.bound
        return lhs < self.bound

    def variables(self) -> Tuple[int, ...]:
        return tuple(v for v, _ in self.coefficients)

    def __str__(self) -> str:
        terms = " + ".join(f"{c}*x{v}" for v, c in self.coefficients) or "0"
        return f"{terms} {self.relation.value} {self.bound}"


def le(coefficients: Mapping[int, Fraction], bound) -> LinearConstraint:
    return LinearConstraint.build(coefficients, Relation.LE, bound)


def lt(coefficients: Mapping[int, Fraction], bound) -> LinearConstraint:
    return LinearConstraint.build(coefficients, Relation.LT, bound)


def eq(coefficients: Mapping[int, Fraction], bound) -> LinearConstraint:
    return LinearConstraint.build(coefficients, Relation.EQ, bound)


def ge(coefficients: Mapping[int, Fraction], bound) -> LinearConstraint:
    return le({v: -c for v, c in coefficients.items()}, -Fraction(bound))


def gt(coefficients: Mapping[int, Fraction], bound) -> LinearConstraint:
    return lt({v: -c for v, c in coefficients.items()}, -Fraction(bound))


# === СИМПЛЕКС ===

class _Tableau:
    """Разреженная таблица: строки: словари столбец → коэффициент"""

    def __init__(self):
        self.rows: List[Dict[int, Fraction]] = []
        self.rhs: List[Fraction] = []
        self.basis: List[int] = []
        self.objective: Dict[int, Fraction] = {}
        self.value = ZERO

    def pivot(self, row: int, col: int) -> None:
        pivot_row = self.rows[row]
        factor = pivot_row[col]
        if factor != 1:
            for key in pivot_row:
                pivot_row[key] = pivot_row[key] / factor
            self.rhs[row] = self.rhs[row] / factor
        for index, other in enumerate(self.rows):
            if index == row:
                continue
            scale = other.get(col)
            if scale is None:
                continue
            for key, coef in pivot_row.items():
                updated = other.get(key, ZERO) - scale * coef
                if updated == 0:
                    other.pop(key, None)
                else:
                    other[key] = updated
            self.rhs[index] -= scale * self.rhs[row]
        scale = self.objective.get(col)
        if scale is not None:
            for key, coef in pivot_row.items():
                updated = self.objective.get(key, ZERO) - scale * coef
                if updated == 0:
                    self.objective.pop(key, None)
                else:
                    self.objective[key] = updated
            self.value += scale * self.rhs[row]
        self.basis[row] = col

    def maximize(self, stop_above: Optional[Fraction] = None) -> bool:
        """Правило Бленда; False если задача неограничена"""
        while True:
            if stop_above is not None and self.value > stop_above:
                return True
            entering = min((k for k, v in self.objective.items() if v > 0), default=None)
            if entering is None:
                return True
            best_row, best_ratio = None, None
            for index, row in enumerate(self.rows):
                coef = row.get(entering)
                if coef is None or coef <= 0:
                    continue
                ratio = self.rhs[index] / coef
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and self.basis[index] < self.basis[best_row])
                ):
                    best_row, best_ratio = index, ratio
            if best_row is None:
                return False
            self.pivot(best_row, entering)

    def set_objective(self, costs: Mapping[int, Fraction]) -> None:
        """Целевая функция z = Σ costs_j x_j, выраженная через небазисные"""
        self.objective = {k: Fraction(v) for k, v in costs.items() if v != 0}
        self.value = ZERO
        for index, basic in enumerate(self.basis):
            scale = self.objective.pop(basic, None)
            if scale is None:
                continue
            self.value += scale * self.rhs[index]
            for key, coef in self.rows[index].items():
                if key == basic:
                    continue
                updated = self.objective.get(key, ZERO) - scale * coef
                if updated == 0:
                    self.objective.pop(key, None)
                else:
                    self.objective[key] = updated


def lp_feasible(constraints: Sequence[LinearConstraint],
                nonnegative: bool = False) -> Optional[Dict[int, Fraction]]:
    """Точная проверка совместности; возвращает свидетеля или None"""
    variables = sorted({v for c in constraints for v, _ in c.coefficients})
    positive: Dict[int, int] = {}
    negative: Dict[int, int] = {}
    column = 0
    for var in variables:
        positive[var] = column
        column += 1
        if not nonnegative:
            negative[var] = column
            column += 1
    strict = any(c.relation == Relation.LT for c in constraints)
    eps = None
    if strict:
        eps = column
        column += 1

    table = _Tableau()
    artificials = set()

    def add_row(coefs: Dict[int, Fraction], relation: Relation, bound: Fraction) -> None:
        nonlocal column
        if bound < 0:
            coefs = {k: -v for k, v in coefs.items()}
            bound = -bound
            if relation == Relation.LE:
                relation = None  # ≥
        if relation == Relation.LE:
            coefs[column] = Fraction(1)
            table.basis.append(column)
            column += 1
        else:
            if relation is None:
                coefs[column] = Fraction(-1)
                column += 1
            coefs[column] = Fraction(1)
            artificials.add(column)
            table.basis.append(column)
            column += 1
        table.rows.append(coefs)
        table.rhs.append(bound)

    for constraint in constraints:
        coefs: Dict[int, Fraction] = {}
        for var, coef in constraint.coefficients:
            coefs[positive[var]] = coef
            if not nonnegative:
                coefs[negative[var]] = -coef
        relation = constraint.relation
        if relation == Relation.LT:
            coefs[eps] = Fraction(1)
            relation = Relation.LE
        if not coefs:
            if not constraint.holds({}):
                return None
            continue
        add_row(coefs, relation, constraint.bound)
    if strict:
        add_row({eps: Fraction(1)}, Relation.LE, Fraction(1))

    # Фаза 1: максимизируем −Σ искусственных
    if artificials:
        table.set_objective({a: -1 for a in artificials})
        table.maximize()
        if table.value < 0:
            return None
        _drive_out(table, artificials)

    # Фаза 2: максимизируем ε
    if strict:
        table.set_objective({eps: 1})
        table.maximize(stop_above=ZERO)
        if table.value <= 0:
            return None

    solution = {col: table.rhs[i] for i, col in enumerate(table.basis)}
    witness = {}
    for var in variables:
        value = solution.get(positive[var], ZERO)
        if not nonnegative:
            value -= solution.get(negative[var], ZERO)
        witness[var] = value
    return witness


def _drive_out(table: _Tableau, artificials: set) -> None:
    """Вывести искусственные переменные из базиса и удалить их столбцы"""
    index = 0
    while index < len(table.rows):
        if table.basis[index] in artificials:
            row = table.rows[index]
            candidate = min((k for k in row if k not in artificials), default=None)
            if candidate is None:
                del table.rows[index]
                del table.rhs[index]
                del table.basis[index]
                continue
            table.pivot(index, candidate)
        index += 1
    for row in table.rows:
        for key in [k for k in row if k in artificials]:
            del row[key]
    table.objective = {}
    table.value = ZERO
