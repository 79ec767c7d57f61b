"""
Алгебры истинностных значений над точными рациональными.

Семейства: Лукасевич, Гёдель, произведение на [0, 1], конечные цепи
Ł_n и G_n, классическая {0, 1}.
"""
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

TruthValue = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class AlgebraError(ValueError):
    """Ошибка операции алгебры"""


class Family(str, Enum):
    """Семейство алгебры"""
    LUKASIEWICZ = "lukasiewicz"
    GODEL = "godel"
    PRODUCT = "product"
    CLASSICAL = "classical"


class Connective(str, Enum):
    """Бинарные связки языка"""
    MEET = "meet"    # ∧ = min
    JOIN = "join"    # ∨ = max
    CONJ = "conj"    # & сильная конъюнкция
    IMPL = "impl"    # → резидуум


CONNECTIVE_ARITY: Dict[Connective, int] = {
    Connective.MEET: 2,
    Connective.JOIN: 2,
    Connective.CONJ: 2,
    Connective.IMPL: 2,
}


# === ОПЕРАЦИИ СЕМЕЙСТВ ===

def _luk_conj(x: Fraction, y: Fraction) -> Fraction:
    return max(ZERO, x + y - 1)


def _luk_impl(x: Fraction, y: Fraction) -> Fraction:
    return min(ONE, 1 - x + y)


def _godel_impl(x: Fraction, y: Fraction) -> Fraction:
    return ONE if x <= y else y


def _product_conj(x: Fraction, y: Fraction) -> Fraction:
    return x * y


def _product_impl(x: Fraction, y: Fraction) -> Fraction:
    return ONE if x <= y else y / x


_CONJ = {
    Family.LUKASIEWICZ: _luk_conj,
    Family.GODEL: min,
    Family.PRODUCT: _product_conj,
    Family.CLASSICAL: _luk_conj,
}

_IMPL = {
    Family.LUKASIEWICZ: _luk_impl,
    Family.GODEL: _godel_impl,
    Family.PRODUCT: _product_impl,
    Family.CLASSICAL: _luk_impl,
}


@dataclass(frozen=True)
class Algebra:
    """Алгебра: семейство + носитель (None = весь [0, 1], n = цепь из n значений)"""
    family: Family
    size: Optional[int] = None

    def __post_init__(self):
        if self.family == Family.CLASSICAL and self.size != 2:
            object.__setattr__(self, "size", 2)
        if self.size is not None and self.size < 2:
            raise AlgebraError(f"finite chain needs at least 2 values, got {self.size}")
        if self.family == Family.PRODUCT and self.size is not None and self.size > 2:
            raise AlgebraError("product logic has no finitely-valued version with more than 2 values")

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    @property
    def token(self) -> str:
        """Токен для CLI и заголовков файлов"""
        if self.family == Family.CLASSICAL:
            return "classical"
        if self.size is None:
            return self.family.value
        if self.family == Family.LUKASIEWICZ:
            return f"l{self.size}"
        if self.family == Family.GODEL:
            return f"g{self.size}"
        return "product"  # произведение с n=2 совпадает с классикой

    def __str__(self) -> str:
        return self.token

    def carrier(self) -> Tuple[Fraction, ...]:
        """Носитель конечной цепи по возрастанию"""
        if self.size is None:
            raise AlgebraError(f"{self.token} has the full interval as carrier")
        step = self.size - 1
        return tuple(Fraction(i, step) for i in range(self.size))

    def contains(self, value: Fraction) -> bool:
        """Лежит ли значение в носителе"""
        if not 0 <= value <= 1:
            return False
        if self.size is None:
            return True
        return (value * (self.size - 1)).denominator == 1

    def operation(self, conn: Connective) -> Callable[[Fraction, Fraction], Fraction]:
        """Сырая операция без проверок носителя"""
        if conn == Connective.MEET:
            return min
        if conn == Connective.JOIN:
            return max
        if conn == Connective.CONJ:
            return _CONJ[self.family]
        return _IMPL[self.family]

    def conj(self, x: Fraction, y: Fraction) -> Fraction:
        return _CONJ[self.family](x, y)

    def impl(self, x: Fraction, y: Fraction) -> Fraction:
        return _IMPL[self.family](x, y)

    def negation(self, x: Fraction) -> Fraction:
        """¬x := x → 0"""
        return self.impl(x, ZERO)


def apply(alg: Algebra, conn: Connective, args: Sequence[Fraction]) -> Fraction:
    """Значение связки с проверкой арности и носителя"""
    arity = CONNECTIVE_ARITY[conn]
    if len(args) != arity:
        raise AlgebraError(f"{conn.value} expects {arity} arguments, got {len(args)}")
    for value in args:
        if not alg.contains(value):
            raise AlgebraError(f"argument {value} outside the carrier of {alg.token}")
    return alg.operation(conn)(*args)


def inf_fin(alg: Algebra, values: Sequence[Fraction]) -> Fraction:
    """Точный минимум непустого списка"""
    if not values:
        raise AlgebraError("inf over an empty sequence")
    return min(values)


def sup_fin(alg: Algebra, values: Sequence[Fraction]) -> Fraction:
    """Точный максимум непустого списка"""
    if not values:
        raise AlgebraError("sup over an empty sequence")
    return max(values)


def enumerate_carrier(alg: Algebra) -> Tuple[Fraction, ...]:
    return alg.carrier()


# === РАЗБОР ТОКЕНОВ ===

ALGEBRA_TOKENS = {
    "lukasiewicz": Family.LUKASIEWICZ,
    "godel": Family.GODEL,
    "product": Family.PRODUCT,
    "classical": Family.CLASSICAL,
}

_CHAIN_TOKEN = re.compile(r"^([lg])(\d+)$")


def parse_algebra(token: str) -> Algebra:
    """lukasiewicz | godel | product | classical | l<n> | g<n>"""
    text = token.strip().lower()
    if text in ALGEBRA_TOKENS:
        return Algebra(ALGEBRA_TOKENS[text])
    match = _CHAIN_TOKEN.match(text)
    if not match:
        raise AlgebraError(f"unknown algebra token {token!r}")
    family = Family.LUKASIEWICZ if match.group(1) == "l" else Family.GODEL
    return Algebra(family, int(match.group(2)))
