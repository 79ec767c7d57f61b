"""
Правила вывода над MD-предложениями и проверка выводов.

Аксиома 1: ⟨φ̄; полное пространство⟩
Правило 2: перестановка компонент
Правило 3: добавление компонент (цилиндрификация)
Правило 4: пересечение при одинаковых компонентах
Правило 5: отбрасывание последних r компонент (проекция)
Правило 6: ослабление до надмножества
Правило 7: фильтр хороших кортежей
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional, Sequence, Tuple

from algebra import Algebra
from config import config
from infoset.goodness import good_filter
from infoset.layout import CoordLayout
from infoset.sets import (
    BoxUnionSet,
    cylindrify,
    describe,
    intersect,
    permute,
    project,
    same_set,
    subset_of,
)
from semantics.models import Frame
from syntax.formulas import Component, MDSentence, Mode

logger = logging.getLogger(__name__)


class RuleError(ValueError):
    """Правило неприменимо к посылкам"""


class Rule(str, Enum):
    AXIOM = "axiom"
    PREMISE = "premise"
    PERMUTE = "rule2"
    EXTEND = "rule3"
    INTERSECT = "rule4"
    PROJECT = "rule5"
    WEAKEN = "rule6"
    GOOD = "rule7"


@dataclass(frozen=True)
class Justification:
    """Обоснование шага; sources: номера более ранних шагов (с 1)"""
    rule: Rule
    sources: Tuple[int, ...] = ()
    premise: Optional[int] = None
    perm: Tuple[int, ...] = ()
    dropped: Optional[int] = None

    @classmethod
    def from_record(cls, kind: str, params: Tuple[Any, ...]) -> "Justification":
        """Сырая запись парсера → обоснование"""
        rule = Rule(kind)
        if rule == Rule.AXIOM:
            return cls(rule)
        if rule == Rule.PREMISE:
            return cls(rule, premise=params[0])
        if rule == Rule.PERMUTE:
            perm, source = params
            return cls(rule, (source,), perm=tuple(perm))
        if rule == Rule.INTERSECT:
            return cls(rule, tuple(params))
        if rule == Rule.PROJECT:
            dropped, source = params
            return cls(rule, (source,), dropped=dropped)
        return cls(rule, (params[0],))

    def to_text(self) -> str:
        if self.rule == Rule.AXIOM:
            return "axiom"
        if self.rule == Rule.PREMISE:
            return f"premise {self.premise}"
        if self.rule == Rule.PERMUTE:
            return f"rule2 [{', '.join(str(p) for p in self.perm)}] from {self.sources[0]}"
        if self.rule == Rule.INTERSECT:
            return f"rule4 from {self.sources[0]}, {self.sources[1]}"
        if self.rule == Rule.PROJECT:
            return f"rule5 {self.dropped} from {self.sources[0]}"
        return f"{self.rule.value} from {self.sources[0]}"


@dataclass(frozen=True)
class Step:
    md: MDSentence
    justification: Justification


@dataclass(frozen=True)
class Derivation:
    steps: Tuple[Step, ...] = ()

    @property
    def conclusion(self) -> Optional[MDSentence]:
        return self.steps[-1].md if self.steps else None

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class CheckReport:
    """Результат проверки вывода: первый неверный шаг и причина"""
    ok: bool
    step: Optional[int] = None
    reason: str = ""

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return f"step {self.step}: {self.reason}"


# === ПРИМЕНЕНИЕ ПРАВИЛ ===

class Calculus:
    """Правила для фиксированной алгебры и домена (или фрейма)"""

    def __init__(self, alg: Algebra, domain_size: Optional[int] = None, frame: Optional[Frame] = None):
        if frame is not None:
            domain_size = frame.worlds
        if domain_size is None or domain_size < 1:
            raise RuleError("a domain size of at least 1 is required")
        self.alg = alg
        self.domain_size = domain_size
        self.frame = frame

    @property
    def mode(self) -> Mode:
        return Mode.MODAL if self.frame is not None else Mode.FO

    def layout_for(self, components: Sequence[Component]) -> CoordLayout:
        layout = CoordLayout(self.domain_size, tuple(c.arity for c in components), self.frame is not None)
        layout.check_guard(config.MAX_WIDTH)
        return layout

    def check_md(self, md: MDSentence) -> None:
        layout = md.info_set.layout
        if layout.modal != (self.frame is not None):
            raise RuleError("modal and first-order sentences cannot be mixed")
        if layout.domain_size != self.domain_size:
            label = f"sentence {md.name}" if md.name else "a sentence"
            raise RuleError(
                f"{label} is laid out for domain {layout.domain_size}, "
                f"the calculus works over {self.domain_size}"
            )
        layout.check_guard(config.MAX_WIDTH)

    def axiom(self, components: Sequence[Component]) -> MDSentence:
        """Аксиома 1"""
        components = tuple(components)
        return MDSentence(components, BoxUnionSet.full(self.layout_for(components)))

    def permute(self, md: MDSentence, perm: Sequence[int]) -> MDSentence:
        """Правило 2: perm[j]: номер старой компоненты на месте j (с 0)"""
        perm = tuple(perm)
        if sorted(perm) != list(range(len(md.components))):
            raise RuleError(f"{list(perm)} is not a permutation of {len(md.components)} components")
        components = tuple(md.components[i] for i in perm)
        return MDSentence(components, permute(md.info_set, perm))

    def extend(self, md: MDSentence, added: Sequence[Component]) -> MDSentence:
        """Правило 3"""
        added = tuple(added)
        if not added:
            raise RuleError("rule 3 needs at least one new component")
        components = md.components + added
        self.layout_for(components)
        return MDSentence(components, cylindrify(md.info_set, tuple(c.arity for c in added)))

    def intersect(self, left: MDSentence, right: MDSentence) -> MDSentence:
        """Правило 4"""
        if left.components != right.components:
            raise RuleError("component mismatch")
        return MDSentence(left.components, intersect(left.info_set, right.info_set))

    def project(self, md: MDSentence, dropped: int) -> MDSentence:
        """Правило 5: отбросить последние dropped компонент, 0 < dropped < k"""
        k = len(md.components)
        if not 0 < dropped < k:
            raise RuleError(f"cannot drop {dropped} of {k} components")
        return MDSentence(md.components[:k - dropped], project(md.info_set, k - dropped))

    def weaken(self, md: MDSentence, target: MDSentence) -> MDSentence:
        """Правило 6: target с тем же списком компонент и S ⊆ S'"""
        if md.components != target.components:
            raise RuleError("component mismatch")
        if not subset_of(md.info_set, target.info_set):
            raise RuleError("information set is not a subset of the target")
        return target

    def good(self, md: MDSentence) -> MDSentence:
        """Правило 7"""
        return MDSentence(md.components, good_filter(self.alg, md.components, md.info_set, self.frame))

    def apply(self, justification: Justification, sources: Sequence[MDSentence],
              step_md: Optional[MDSentence] = None,
              premises: Sequence[MDSentence] = ()) -> MDSentence:
        """Заключение правила по посылкам; step_md нужен правилам 1, 3 и 6"""
        rule = justification.rule
        if rule == Rule.AXIOM:
            return self.axiom(step_md.components)
        if rule == Rule.PREMISE:
            index = justification.premise
            if not 1 <= index <= len(premises):
                raise RuleError(f"there is no premise {index}")
            return premises[index - 1]
        if rule == Rule.PERMUTE:
            return self.permute(sources[0], justification.perm)
        if rule == Rule.EXTEND:
            base = sources[0].components
            if step_md.components[:len(base)] != base:
                raise RuleError("component mismatch")
            return self.extend(sources[0], step_md.components[len(base):])
        if rule == Rule.INTERSECT:
            return self.intersect(sources[0], sources[1])
        if rule == Rule.PROJECT:
            return self.project(sources[0], justification.dropped)
        if rule == Rule.WEAKEN:
            return self.weaken(sources[0], step_md)
        return self.good(sources[0])


def _same_md(left: MDSentence, right: MDSentence) -> Tuple[bool, str]:
    if left.components != right.components:
        return False, "component mismatch"
    if not same_set(left.info_set, right.info_set):
        return False, "information set differs from the rule's conclusion"
    return True, ""


def check_derivation(calculus: Calculus, derivation: Derivation,
                     premises: Sequence[MDSentence]) -> CheckReport:
    """Каждый шаг заново выводится из предыдущих"""
    for md in premises:
        calculus.check_md(md)
    derived = []
    for number, step in enumerate(derivation.steps, start=1):
        justification = step.justification
        try:
            calculus.check_md(step.md)
            for source in justification.sources:
                if not 1 <= source < number:
                    return CheckReport(False, number, f"source {source} is not an earlier step")
            sources = [derived[s - 1] for s in justification.sources]
            expected = calculus.apply(justification, sources, step.md, premises)
            ok, reason = _same_md(expected, step.md)
        except ValueError as exc:
            ok, reason = False, str(exc)
        if not ok:
            logger.info(f"❌ Вывод отклонён на шаге {number}: {reason}")
            return CheckReport(False, number, reason)
        derived.append(step.md)
        logger.debug(f"✅ Шаг {number} ({justification.rule.value}): {describe(step.md.info_set)}")
    if not derivation.steps:
        return CheckReport(False, 0, "empty derivation")
    return CheckReport(True)
