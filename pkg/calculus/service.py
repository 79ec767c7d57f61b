"""
Сервис решения следования на конечном домене (или фиксированном фрейме).

Процедура строит вывод правилами 1-7: посылки дополняются до замыкания по
подформулам, фильтруются, выравниваются и пересекаются; затем цель
выносится вперёд и проецируется. Если полученное множество лежит в
множестве цели, вывод завершается правилом 6, иначе из лишнего кортежа
строится контрмодель.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from algebra import Algebra
from calculus.derivation import Calculus, Derivation, Justification, Rule, RuleError, Step
from calculus.extraction import confirm_countermodel, extract_model
from config import config
from infoset.sets import (
    BoxUnionSet,
    ExplicitSet,
    Point,
    describe,
    subset_of,
    witness_outside,
    with_layout,
)
from semantics.models import Frame, ModalModel, Model
from syntax.formulas import (
    Component,
    Constant,
    MDSentence,
    Vocabulary,
    subformula_closure,
    subformulas,
)
from syntax.parser import infer_vocabulary

logger = logging.getLogger(__name__)

AnyModel = Union[Model, ModalModel]


@dataclass(frozen=True)
class EntailmentVerdict:
    """Valid с выводом или Invalid с контрмоделью"""
    valid: bool
    derivation: Optional[Derivation] = None
    countermodel: Optional[AnyModel] = None
    violated_at: Optional[Point] = None

    def __str__(self) -> str:
        return "Valid" if self.valid else "Invalid"


class _StepLog:
    """Накопитель шагов вывода"""

    def __init__(self):
        self.steps: List[Step] = []

    def add(self, md: MDSentence, justification: Justification) -> int:
        self.steps.append(Step(md, justification))
        return len(self.steps)

    def derivation(self) -> Derivation:
        return Derivation(tuple(self.steps))


def _order_like(components: Sequence[Component], wanted: Sequence[Component]) -> List[int]:
    """Перестановка: сначала wanted по порядку (повторы по очереди), затем остальные"""
    used = set()
    perm = []
    for component in wanted:
        index = next(i for i, c in enumerate(components) if c == component and i not in used)
        used.add(index)
        perm.append(index)
    perm.extend(i for i in range(len(components)) if i not in used)
    return perm


def _repeats(components: Sequence[Component]) -> List[Component]:
    seen = set()
    out = []
    for component in components:
        if component in seen:
            out.append(component)
        seen.add(component)
    return out


class EntailmentService:
    """Γ ⊨ γ для фиксированной алгебры и домена"""

    def __init__(self, alg: Algebra, domain_size: Optional[int] = None,
                 frame: Optional[Frame] = None, vocab: Optional[Vocabulary] = None):
        self.calculus = Calculus(alg, domain_size, frame)
        self.alg = alg
        self.frame = frame
        self.vocab = vocab

    # === ПРОВЕРКИ ===

    def _check_inputs(self, premises: Sequence[MDSentence], goal: MDSentence) -> None:
        for md in (*premises, goal):
            self.calculus.check_md(md)
        if not self.alg.is_finite:
            return
        for number, md in enumerate(premises, start=1):
            if isinstance(md.info_set, ExplicitSet):
                for point in md.info_set.points:
                    if not all(self.alg.contains(v) for v in point):
                        raise RuleError(f"premise {number} has a point outside the carrier of {self.alg.token}")
        for md in (*premises, goal):
            for formula in md.formulas:
                for node in subformulas(formula):
                    if isinstance(node, Constant) and not self.alg.contains(node.value):
                        raise RuleError(f"truth constant {node.value} is outside the carrier of {self.alg.token}")

    def _vocabulary(self, premises: Sequence[MDSentence], goal: MDSentence) -> Vocabulary:
        if self.vocab is not None:
            return self.vocab
        formulas = [f for md in (*premises, goal) for f in md.formulas]
        return infer_vocabulary(formulas, with_equality=self.frame is None)

    # === ПРОЦЕДУРА ===

    def _align(self, log: _StepLog, number: int, md: MDSentence,
               closure: Sequence[Component]) -> Tuple[int, MDSentence]:
        """Посылка → χ_i с компонентами ровно closure"""
        calc = self.calculus
        missing = [c for c in closure if c not in md.components]
        if missing:
            md = calc.extend(md, missing)
            number = log.add(md, Justification(Rule.EXTEND, (number,)))
        md = calc.good(md)
        number = log.add(md, Justification(Rule.GOOD, (number,)))
        perm = _order_like(md.components, closure)
        if perm != list(range(len(perm))):
            md = calc.permute(md, perm)
            number = log.add(md, Justification(Rule.PERMUTE, (number,), perm=tuple(perm)))
        extra = len(md.components) - len(closure)
        if extra:
            md = calc.project(md, extra)
            number = log.add(md, Justification(Rule.PROJECT, (number,), dropped=extra))
        return number, md

    def entail(self, premises: Sequence[MDSentence], goal: MDSentence) -> EntailmentVerdict:
        """Вывод цели из посылок или контрмодель"""
        premises = list(premises)
        self._check_inputs(premises, goal)
        calc = self.calculus
        log = _StepLog()

        closure = subformula_closure([c for md in premises for c in md.components] + list(goal.components))
        logger.info(
            f"⚖️ Следование: {len(premises)} посылок, замыкание из {len(closure)} компонент, "
            f"алгебра {self.alg.token}, домен {calc.domain_size}"
        )

        aligned: List[Tuple[int, MDSentence]] = []
        if premises:
            for index, md in enumerate(premises, start=1):
                number = log.add(md, Justification(Rule.PREMISE, premise=index))
                aligned.append(self._align(log, number, md, closure))
        else:
            axiom = calc.axiom(goal.components)
            number = log.add(axiom, Justification(Rule.AXIOM))
            aligned.append(self._align(log, number, axiom, closure))

        number, chi = aligned[0]
        for other_number, other in aligned[1:]:
            chi = calc.intersect(chi, other)
            number = log.add(chi, Justification(Rule.INTERSECT, (number, other_number)))
        logger.debug(f"🔗 Пересечение: {describe(chi.info_set)}")

        repeats = _repeats(goal.components)
        if repeats:
            chi = calc.extend(chi, repeats)
            number = log.add(chi, Justification(Rule.EXTEND, (number,)))
            chi = calc.good(chi)
            number = log.add(chi, Justification(Rule.GOOD, (number,)))
        perm = _order_like(chi.components, goal.components)
        if perm != list(range(len(perm))):
            chi = calc.permute(chi, perm)
            number = log.add(chi, Justification(Rule.PERMUTE, (number,), perm=tuple(perm)))
        full = chi
        extra = len(chi.components) - len(goal.components)
        if extra:
            chi = calc.project(chi, extra)
            number = log.add(chi, Justification(Rule.PROJECT, (number,), dropped=extra))

        if subset_of(chi.info_set, goal.info_set):
            log.add(goal, Justification(Rule.WEAKEN, (number,)))
            logger.info(f"✅ Следование доказано, {len(log.steps)} шагов")
            return EntailmentVerdict(True, derivation=log.derivation())

        point = witness_outside(full.info_set, goal.info_set)
        if point is None:
            raise RuntimeError("no tuple outside the goal set although inclusion failed")
        model = extract_model(point, full.components, full.info_set.layout,
                              self._vocabulary(premises, goal), self.frame)
        if not confirm_countermodel(self.alg, model, premises, goal):
            raise RuntimeError("countermodel re-check failed")
        violated = point[:goal.info_set.layout.width]
        logger.info("❌ Следования нет, построена контрмодель")
        return EntailmentVerdict(False, countermodel=model, violated_at=violated)

    def satisfiable(self, md: MDSentence) -> Optional[AnyModel]:
        """Модель MD-предложения или None"""
        layout = md.info_set.layout
        empty = ExplicitSet(layout, frozenset()) if isinstance(md.info_set, ExplicitSet) else BoxUnionSet.empty(layout)
        verdict = self.entail([md], md.with_set(empty))
        return verdict.countermodel


# === ПЕРЕБОР КОНЕЧНЫХ ДОМЕНОВ ===

@dataclass(frozen=True)
class SweepReport:
    """Первый домен с контрмоделью или «нет контрмодели до N»"""
    max_size: int
    checked: Tuple[int, ...]
    countermodel_size: Optional[int] = None
    verdict: Optional[EntailmentVerdict] = None

    @property
    def found(self) -> bool:
        return self.countermodel_size is not None

    def __str__(self) -> str:
        if self.found:
            return f"countermodel at domain size {self.countermodel_size}"
        return f"no countermodel up to {self.max_size}"


def relayout(md: MDSentence, domain_size: int) -> MDSentence:
    """Предложение из одних предложений-компонент на другом домене"""
    if not md.is_sentence_only():
        raise RuleError("the sweep accepts sentence components only")
    return md.with_set(with_layout(md.info_set, md.info_set.layout.relabeled(domain_size)))


def _entail_at(task: Tuple[Algebra, int, Sequence[MDSentence], MDSentence, Optional[Vocabulary], int]
               ) -> Tuple[int, EntailmentVerdict]:
    alg, size, premises, goal, vocab, budget = task
    config.CASE_BUDGET = budget
    service = EntailmentService(alg, size, vocab=vocab)
    verdict = service.entail([relayout(md, size) for md in premises], relayout(goal, size))
    return size, verdict


def sweep(alg: Algebra, premises: Sequence[MDSentence], goal: MDSentence, max_size: int,
          jobs: int = 1, vocab: Optional[Vocabulary] = None) -> SweepReport:
    """Следование на доменах 1..max_size; находит наименьший контрпример"""
    if max_size < 1:
        raise RuleError("the sweep needs a maximal size of at least 1")
    for md in (*premises, goal):
        if md.info_set.layout.modal:
            raise RuleError("the sweep works with first-order sentences")
        relayout(md, 1)
    tasks = [(alg, size, tuple(premises), goal, vocab, config.CASE_BUDGET) for size in range(1, max_size + 1)]
    logger.info(f"🔁 Перебор доменов 1..{max_size}, процессов: {jobs}")

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_entail_at, tasks))
    else:
        results = []
        for task in tasks:
            size, verdict = _entail_at(task)
            results.append((size, verdict))
            if not verdict.valid:
                break

    checked = tuple(size for size, _ in results)
    for size, verdict in sorted(results, key=lambda item: item[0]):
        if not verdict.valid:
            logger.info(f"❌ Контрмодель на домене {size}")
            return SweepReport(max_size, checked, size, verdict)
    return SweepReport(max_size, checked)

