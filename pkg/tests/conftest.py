"""
Pytest fixtures для тестов движка MD-предложений
"""
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from algebra import parse_algebra
from syntax.formulas import Vocabulary
from syntax.parser import parse_document

# Профиль hypothesis: ограниченное время на любой машине
settings.register_profile("md", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("md")

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture
def l3():
    """Трёхзначная логика Лукасевича"""
    return parse_algebra("l3")


@pytest.fixture
def g4():
    return parse_algebra("g4")


@pytest.fixture
def luk():
    """Вещественная логика Лукасевича"""
    return parse_algebra("lukasiewicz")


@pytest.fixture
def godel():
    return parse_algebra("godel")


@pytest.fixture
def classical():
    return parse_algebra("classical")


@pytest.fixture
def vocab_p():
    """Одноместный предикат P"""
    return Vocabulary((("P", 1),))


@pytest.fixture
def vocab_ab():
    """Пропозициональные переменные A и B"""
    return Vocabulary((("A", 0), ("B", 0)))


@pytest.fixture
def samples():
    return SAMPLES


@pytest.fixture
def ex1_document():
    """Документ ex1: P(x) свободна, ∀x U(x) ∈ [1/2, 4/5)"""
    return parse_document((SAMPLES / "ex1.md").read_text(encoding="utf-8"))
