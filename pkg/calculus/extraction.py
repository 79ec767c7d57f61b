"""
Построение модели по хорошему кортежу над замкнутым по подформулам списком.

Значение P(ā) берётся из координаты любой атомарной компоненты, которая
накрывает запись ā; хорошесть гарантирует, что все такие координаты равны.
Незатронутые записи интерпретируются нулём.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Union

from algebra import ZERO, Algebra
from infoset.layout import CoordLayout
from semantics.evaluator import satisfies
from semantics.models import Frame, ModalModel, Model, grid_rank
from syntax.formulas import Atom, Component, MDSentence, Vocabulary

logger = logging.getLogger(__name__)

AnyModel = Union[Model, ModalModel]


def extract_model(point: Sequence[Fraction], components: Sequence[Component], layout: CoordLayout,
                  vocab: Vocabulary, frame: Optional[Frame] = None) -> AnyModel:
    """Модель, в которой атомарные компоненты принимают значения из point"""
    if len(point) != layout.width:
        raise ValueError(f"point of length {len(point)} for a layout of width {layout.width}")
    m = layout.domain_size
    # в модальном режиме строка оценки: по мирам
    tables: Dict[str, List[Fraction]] = {
        name: [ZERO] * (m if frame is not None else m ** arity) for name, arity in vocab.predicates
    }

    for index, component in enumerate(components):
        atom = component.formula
        if not isinstance(atom, Atom):
            continue
        if atom.pred not in tables:
            raise ValueError(f"predicate {atom.pred} is missing from the vocabulary")
        for grid_point in layout.grid(index):
            value = point[layout.coordinate(index, grid_point)]
            if frame is not None:
                tables[atom.pred][grid_point[0]] = value
                continue
            assignment = dict(zip(component.free_vars, grid_point))
            args = tuple(assignment[a] for a in atom.args)
            tables[atom.pred][grid_rank(args, m)] = value

    if frame is not None:
        return ModalModel.from_tables(frame, vocab, tables)
    return Model.from_tables(m, vocab, tables)


def confirm_countermodel(alg: Algebra, model: AnyModel, premises: Sequence[MDSentence],
                         goal: MDSentence) -> bool:
    """Модель выполняет все посылки и не выполняет цель"""
    for number, md in enumerate(premises, start=1):
        if not satisfies(alg, model, md):
            logger.error(f"❌ Контрмодель не выполняет посылку {number}")
            return False
    if satisfies(alg, model, goal):
        logger.error("❌ Контрмодель выполняет цель")
        return False
    return True
