"""
Абстрактный синтаксис: формулы, словарь, компоненты и MD-предложения.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from algebra import ZERO, Connective


class FormulaError(ValueError):
    """Некорректная формула или компонента"""


class VocabularyError(FormulaError):
    """Несоответствие словарю: неизвестный предикат, арность, режим"""


class Mode(str, Enum):
    """Режим языка"""
    FO = "fo"
    MODAL = "modal"


# === УЗЛЫ ФОРМУЛ ===

@dataclass(frozen=True)
class Atom:
    pred: str
    args: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Equality:
    left: str
    right: str


@dataclass(frozen=True)
class Constant:
    value: Fraction


@dataclass(frozen=True)
class Compound:
    """Применение связки к подформулам"""
    conn: Connective
    children: Tuple["Formula", ...]


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Box:
    body: "Formula"


@dataclass(frozen=True)
class Diamond:
    body: "Formula"


Formula = Union[Atom, Equality, Constant, Compound, Forall, Exists, Box, Diamond]

QUANTIFIERS = (Forall, Exists)
MODALITIES = (Box, Diamond)


def neg(formula: Formula) -> Formula:
    """¬φ := φ → 0"""
    return Compound(Connective.IMPL, (formula, Constant(ZERO)))


def is_negation(formula: Formula) -> bool:
    return (
        isinstance(formula, Compound)
        and formula.conn == Connective.IMPL
        and formula.children[1] == Constant(ZERO)
    )


def is_atomic(formula: Formula) -> bool:
    return isinstance(formula, (Atom, Equality, Constant))


def children(formula: Formula) -> Tuple[Formula, ...]:
    """Непосредственные подформулы"""
    if isinstance(formula, Compound):
        return formula.children
    if isinstance(formula, (Forall, Exists, Box, Diamond)):
        return (formula.body,)
    return ()


def subformulas(formula: Formula) -> List[Formula]:
    """Все подформулы в прямом порядке обхода, начиная с самой формулы"""
    out = []
    stack = [formula]
    while stack:
        current = stack.pop()
        out.append(current)
        stack.extend(reversed(children(current)))
    return out


def depth(formula: Formula) -> int:
    kids = children(formula)
    if not kids:
        return 0
    return 1 + max(depth(k) for k in kids)


def free_vars(formula: Formula) -> Tuple[str, ...]:
    """Свободные переменные в порядке первого вхождения"""
    out: List[str] = []

    def walk(node: Formula, bound: frozenset) -> None:
        if isinstance(node, Atom):
            names = node.args
        elif isinstance(node, Equality):
            names = (node.left, node.right)
        elif isinstance(node, QUANTIFIERS):
            walk(node.body, bound | {node.var})
            return
        else:
            for child in children(node):
                walk(child, bound)
            return
        for name in names:
            if name not in bound and name not in out:
                out.append(name)

    walk(formula, frozenset())
    return tuple(out)


def variables(formula: Formula) -> set:
    """Все имена переменных, свободные и связанные"""
    names = set()
    for node in subformulas(formula):
        if isinstance(node, Atom):
            names.update(node.args)
        elif isinstance(node, Equality):
            names.update((node.left, node.right))
        elif isinstance(node, QUANTIFIERS):
            names.add(node.var)
    return names


def predicates(formula: Formula) -> Dict[str, int]:
    """Предикаты формулы с арностями"""
    found: Dict[str, int] = {}
    for node in subformulas(formula):
        if isinstance(node, Atom):
            found.setdefault(node.pred, len(node.args))
    return found


def fresh_variable(formula: Formula) -> str:
    """Первая из y, z, w, v, u, y1, y2, ... не встречающаяся в формуле"""
    used = variables(formula)
    for name in ("y", "z", "w", "v", "u"):
        if name not in used:
            return name
    index = 1
    while f"y{index}" in used:
        index += 1
    return f"y{index}"


def substitute(formula: Formula, old: str, new: str) -> Formula:
    """Замена свободных вхождений old на new (new не должна связываться)"""
    if isinstance(formula, Atom):
        return Atom(formula.pred, tuple(new if a == old else a for a in formula.args))
    if isinstance(formula, Equality):
        return Equality(
            new if formula.left == old else formula.left,
            new if formula.right == old else formula.right,
        )
    if isinstance(formula, Constant):
        return formula
    if isinstance(formula, Compound):
        return Compound(formula.conn, tuple(substitute(c, old, new) for c in formula.children))
    if isinstance(formula, QUANTIFIERS):
        if formula.var == old:
            return formula
        if formula.var == new and old in free_vars(formula.body):
            raise FormulaError(f"substituting {new} for {old} would be captured by a binder")
        return type(formula)(formula.var, substitute(formula.body, old, new))
    return type(formula)(substitute(formula.body, old, new))


# === СЛОВАРЬ ===

@dataclass(frozen=True)
class Vocabulary:
    """Реляционный словарь: (имя, арность) и флаг равенства"""
    predicates: Tuple[Tuple[str, int], ...] = ()
    with_equality: bool = True

    def __post_init__(self):
        names = [name for name, _ in self.predicates]
        if len(set(names)) != len(names):
            raise VocabularyError(f"duplicate predicate names in {names}")
        for name, arity in self.predicates:
            if arity < 0:
                raise VocabularyError(f"negative arity for {name}")
            if name == "=":
                raise VocabularyError("equality cannot be redeclared as a predicate")

    @classmethod
    def of(cls, arities: Dict[str, int], with_equality: bool = True) -> "Vocabulary":
        return cls(tuple(arities.items()), with_equality)

    def arity(self, name: str) -> Optional[int]:
        for pred, arity in self.predicates:
            if pred == name:
                return arity
        return None

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.predicates)

    def is_propositional(self) -> bool:
        return all(arity == 0 for _, arity in self.predicates)

    def restrict(self, names: Sequence[str]) -> "Vocabulary":
        keep = set(names)
        return Vocabulary(tuple(p for p in self.predicates if p[0] in keep), self.with_equality)


def validate_formula(formula: Formula, vocab: Vocabulary, mode: Mode = Mode.FO) -> None:
    """Проверка формулы против словаря и режима"""
    for node in subformulas(formula):
        if isinstance(node, Atom):
            arity = vocab.arity(node.pred)
            if arity is None:
                raise VocabularyError(f"unknown predicate {node.pred}")
            if arity != len(node.args):
                raise VocabularyError(
                    f"arity mismatch for {node.pred}: declared {arity}, used with {len(node.args)}"
                )
            if mode == Mode.MODAL and arity != 0:
                raise VocabularyError(f"modal language allows only propositional variables, got {node.pred}/{arity}")
        elif isinstance(node, Equality):
            if mode == Mode.MODAL:
                raise VocabularyError("equality is not available in modal mode")
            if not vocab.with_equality:
                raise VocabularyError("equality is switched off for this vocabulary")
        elif isinstance(node, Constant):
            if not 0 <= node.value <= 1:
                raise VocabularyError(f"truth constant {node.value} outside [0, 1]")
        elif isinstance(node, MODALITIES) and mode != Mode.MODAL:
            raise VocabularyError("modal operator in first-order mode")
        elif isinstance(node, QUANTIFIERS) and mode != Mode.FO:
            raise VocabularyError("quantifier in modal mode")


# === КОМПОНЕНТЫ И MD-ПРЕДЛОЖЕНИЯ ===

@dataclass(frozen=True)
class Component:
    """Формула с явным списком свободных переменных"""
    formula: Formula
    free_vars: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.free_vars)) != len(self.free_vars):
            raise FormulaError(f"repeated variable in list {self.free_vars}")
        actual = free_vars(self.formula)
        if set(actual) != set(self.free_vars):
            raise FormulaError(
                f"variable list {list(self.free_vars)} differs from free variables {list(actual)}"
            )

    @classmethod
    def of(cls, formula: Formula) -> "Component":
        """Компонента со списком в порядке первого вхождения"""
        return cls(formula, free_vars(formula))

    @property
    def arity(self) -> int:
        return len(self.free_vars)

    @property
    def is_default_order(self) -> bool:
        return self.free_vars == free_vars(self.formula)


@dataclass(frozen=True)
class MDSentence:
    """⟨φ_1(x̄_1), …, φ_k(x̄_k); S⟩"""
    components: Tuple[Component, ...]
    info_set: Any
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.components:
            raise FormulaError("an MD-sentence needs at least one component")
        arities = tuple(c.arity for c in self.components)
        layout = getattr(self.info_set, "layout", None)
        if layout is not None and layout.arities != arities:
            raise FormulaError(
                f"info set layout {layout.arities} does not match component arities {arities}"
            )

    @property
    def layout(self):
        return self.info_set.layout

    @property
    def formulas(self) -> Tuple[Formula, ...]:
        return tuple(c.formula for c in self.components)

    def with_set(self, info_set) -> "MDSentence":
        return MDSentence(self.components, info_set, self.name)

    def is_sentence_only(self) -> bool:
        return all(c.arity == 0 for c in self.components)


def subformula_closure(components: Sequence[Component]) -> Tuple[Component, ...]:
    """Замыкание по подформулам; входные компоненты идут первыми"""
    out: List[Component] = []
    seen = set()

    def add(component: Component) -> None:
        key = (component.formula, component.free_vars)
        if key not in seen:
            seen.add(key)
            out.append(component)

    for component in components:
        add(component)
    for component in components:
        for sub in subformulas(component.formula)[1:]:
            add(Component.of(sub))
    return tuple(out)


def iter_atoms(formulas: Sequence[Formula]) -> Iterator[Atom]:
    for formula in formulas:
        for node in subformulas(formula):
            if isinstance(node, Atom):
                yield node
