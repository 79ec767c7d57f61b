"""
Вычисление значений формул, таблиц интерпретаций и выполнимости MD-предложений.
"""
import logging
from fractions import Fraction
from typing import Mapping, Sequence, Tuple, Union

from algebra import ONE, ZERO, Algebra, inf_fin, sup_fin
from infoset.layout import CoordLayout
from infoset.sets import InfoSet, member
from semantics.models import FuncTable, ModalModel, Model, ModelError, grid
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
    MDSentence,
)

logger = logging.getLogger(__name__)

AnyModel = Union[Model, ModalModel]


# === ПЕРВЫЙ ПОРЯДОК ===

def evaluate(alg: Algebra, model: Model, formula: Formula, assignment: Mapping[str, int]) -> Fraction:
    """‖φ[ā]‖ в модели"""
    if isinstance(formula, Atom):
        try:
            args = tuple(assignment[a] for a in formula.args)
        except KeyError as exc:
            raise ModelError(f"variable {exc.args[0]} is not assigned") from None
        return model.value(formula.pred, args)
    if isinstance(formula, Equality):
        for name in (formula.left, formula.right):
            if name not in assignment:
                raise ModelError(f"variable {name} is not assigned")
        return ONE if assignment[formula.left] == assignment[formula.right] else ZERO
    if isinstance(formula, Constant):
        return formula.value
    if isinstance(formula, Compound):
        values = [evaluate(alg, model, child, assignment) for child in formula.children]
        return alg.operation(formula.conn)(*values)
    if isinstance(formula, (Forall, Exists)):
        values = [
            evaluate(alg, model, formula.body, {**assignment, formula.var: e})
            for e in range(model.domain_size)
        ]
        return inf_fin(alg, values) if isinstance(formula, Forall) else sup_fin(alg, values)
    raise ModelError("modal operator in a first-order model")


def interpret(alg: Algebra, model: Model, component: Component) -> FuncTable:
    """f_φ : M^n → [0,1] по списку свободных переменных компоненты"""
    entries = tuple(
        evaluate(alg, model, component.formula, dict(zip(component.free_vars, point)))
        for point in grid(model.domain_size, component.arity)
    )
    return FuncTable(component.arity, model.domain_size, entries)


# === МОДАЛЬНЫЙ СЛУЧАЙ ===

def evaluate_modal(alg: Algebra, model: ModalModel, formula: Formula, world: int) -> Fraction:
    """‖φ[w]‖; □ и ◇ вычисляются как inf и sup по преемникам (inf∅ = 1, sup∅ = 0)"""
    if isinstance(formula, Atom):
        return model.value(formula.pred, world)
    if isinstance(formula, Constant):
        return formula.value
    if isinstance(formula, Compound):
        values = [evaluate_modal(alg, model, child, world) for child in formula.children]
        return alg.operation(formula.conn)(*values)
    if isinstance(formula, (Box, Diamond)):
        successors = model.frame.successors(world)
        if not successors:
            return ONE if isinstance(formula, Box) else ZERO
        values = [evaluate_modal(alg, model, formula.body, v) for v in successors]
        return inf_fin(alg, values) if isinstance(formula, Box) else sup_fin(alg, values)
    raise ModelError(f"{type(formula).__name__} is not part of the modal language")


def interpret_modal(alg: Algebra, model: ModalModel, component: Component) -> Tuple[Fraction, ...]:
    """Значения компоненты-предложения по мирам"""
    if component.arity:
        raise ModelError("modal components must be sentences")
    return tuple(evaluate_modal(alg, model, component.formula, w) for w in range(model.frame.worlds))


# === MD-ПРЕДЛОЖЕНИЯ ===

def point_of(alg: Algebra, model: AnyModel, components: Sequence[Component]) -> Tuple[Fraction, ...]:
    """Кортеж таблиц компонент как точка [0,1]^D"""
    out = []
    for component in components:
        if isinstance(model, ModalModel):
            out.extend(interpret_modal(alg, model, component))
        else:
            out.extend(interpret(alg, model, component).entries)
    return tuple(out)


def _check_layout(layout: CoordLayout, model: AnyModel) -> None:
    modal = isinstance(model, ModalModel)
    if layout.modal != modal:
        raise ModelError("modal and first-order sentences and models cannot be mixed")
    if layout.domain_size != model.domain_size:
        raise ModelError(
            f"the information set is laid out for {layout.domain_size} elements, "
            f"the model has {model.domain_size}"
        )


def satisfies(alg: Algebra, model: AnyModel, md: MDSentence) -> bool:
    """𝔐 ⊨ ⟨φ_1, …, φ_k; S⟩"""
    info_set: InfoSet = md.info_set
    _check_layout(info_set.layout, model)
    return member(info_set, point_of(alg, model, md.components))


def satisfies_modal(alg: Algebra, model: ModalModel, md: MDSentence) -> bool:
    if not isinstance(model, ModalModel):
        raise ModelError("a modal model is required")
    return satisfies(alg, model, md)
