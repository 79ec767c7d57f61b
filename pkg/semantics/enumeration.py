"""
Перебор и случайная генерация моделей над конечными алгебрами.

Порядок перебора: записи таблиц всех предикатов словаря выписаны подряд
(предикаты в порядке словаря, точки M^n лексикографически), и кортеж
записей пробегает носитель^N в лексикографическом порядке.
"""
import itertools
import logging
import random
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

from algebra import Algebra, AlgebraError
from config import config
from semantics.models import Frame, ModalModel, Model, ModelError
from syntax.formulas import Vocabulary

logger = logging.getLogger(__name__)


def entry_count(vocab: Vocabulary, domain_size: int) -> int:
    """Σ m^{n_P}"""
    return sum(domain_size ** arity for _, arity in vocab.predicates)


def count_models(alg: Algebra, vocab: Vocabulary, domain_size: int) -> int:
    if not alg.is_finite:
        raise AlgebraError(f"{alg.token} has infinitely many models")
    return alg.size ** entry_count(vocab, domain_size)


def _split(values: Sequence[Fraction], sizes: Sequence[int]) -> List[Tuple[Fraction, ...]]:
    out, start = [], 0
    for size in sizes:
        out.append(tuple(values[start:start + size]))
        start += size
    return out


def _check_cap(total: int, cap: int) -> None:
    if total > cap:
        raise ModelError(f"{total} models exceed the enumeration cap {cap}")


def enumerate_models(alg: Algebra, vocab: Vocabulary, domain_size: int,
                     cap: int = None) -> Iterator[Model]:
    """Все модели словаря на домене {0..m-1}"""
    total = count_models(alg, vocab, domain_size)
    _check_cap(total, config.MODEL_CAP if cap is None else cap)
    sizes = [domain_size ** arity for _, arity in vocab.predicates]
    logger.debug(f"📚 Перебор {total} моделей ({alg.token}, m={domain_size})")
    for values in itertools.product(alg.carrier(), repeat=sum(sizes)):
        yield Model(domain_size, vocab, tuple(_split(values, sizes)))


def enumerate_modal_models(alg: Algebra, frame: Frame, vocab: Vocabulary,
                           cap: int = None) -> Iterator[ModalModel]:
    """Все оценки пропозициональных переменных на фрейме"""
    if not alg.is_finite:
        raise AlgebraError(f"{alg.token} has infinitely many valuations")
    sizes = [frame.worlds for _ in vocab.predicates]
    total = alg.size ** sum(sizes)
    _check_cap(total, config.MODEL_CAP if cap is None else cap)
    for values in itertools.product(alg.carrier(), repeat=sum(sizes)):
        yield ModalModel(frame, vocab, tuple(_split(values, sizes)))


def random_model(alg: Algebra, vocab: Vocabulary, domain_size: int, rng: random.Random) -> Model:
    """Каждая запись равномерно из носителя"""
    carrier = alg.carrier()
    tables = tuple(
        tuple(rng.choice(carrier) for _ in range(domain_size ** arity))
        for _, arity in vocab.predicates
    )
    return Model(domain_size, vocab, tables)


def random_modal_model(alg: Algebra, frame: Frame, vocab: Vocabulary, rng: random.Random) -> ModalModel:
    carrier = alg.carrier()
    valuation = tuple(tuple(rng.choice(carrier) for _ in range(frame.worlds)) for _ in vocab.predicates)
    return ModalModel(frame, vocab, valuation)
