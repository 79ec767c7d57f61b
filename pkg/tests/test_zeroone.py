"""
Тесты экспериментов 0-1
"""
import math
from fractions import Fraction

import pytest
from pydantic import ValidationError

from zeroone.schemas import ExperimentConfig
from zeroone.service import (
    INCONCLUSIVE,
    TOWARD_ONE,
    TOWARD_ZERO,
    ExperimentError,
    exact_fraction,
    format_csv,
    run_experiment,
    run_size,
    sample_fraction,
    verdict,
    write_csv,
)

F = Fraction
DELTA = F(1, 20)


def _config(algebra="classical", components=("exists x. P(x)",), points=(("1",),), sizes=(1, 2, 3), **extra):
    data = {
        "algebra": algebra,
        "predicates": ["P/1"],
        "md": {"components": list(components), "points": [list(p) for p in points]},
        "sizes": list(sizes),
    }
    data.update(extra)
    return ExperimentConfig.model_validate(data)


def _exact(cfg, n):
    return exact_fraction(cfg.algebra_obj(), cfg.vocabulary(), cfg.md_sentence(n))


class TestExactFractions:
    """Точные доли"""

    def test_classical_exists(self):
        """∃x P на трёх элементах: 7/8"""
        assert _exact(_config(), 3) == (7, 8)

    def test_three_valued_exists(self):
        """Ł_3, ∃x P = 1 на двух элементах: 5/9"""
        assert _exact(_config(algebra="l3"), 2) == (5, 9)

    def test_classical_exists_all_sizes(self):
        cfg = _config(sizes=range(1, 11))
        for n in range(1, 11):
            hits, total = _exact(cfg, n)
            assert F(hits, total) == 1 - F(1, 2 ** n)

    def test_three_valued_exists_all_sizes(self):
        cfg = _config(algebra="l3")
        for n in range(1, 7):
            hits, total = _exact(cfg, n)
            assert F(hits, total) == 1 - F(2, 3) ** n

    def test_forall(self):
        cfg = _config(components=("forall x. P(x)",))
        for n in range(1, 8):
            hits, total = _exact(cfg, n)
            assert F(hits, total) == F(1, 2 ** n)

    def test_middle_value(self):
        """Ł_3, ∃x P = 1/2: (2^n − 1) / 3^n"""
        cfg = _config(algebra="l3", points=(("1/2",),))
        for n in range(1, 6):
            hits, total = _exact(cfg, n)
            assert F(hits, total) == F(2 ** n - 1, 3 ** n)

    def test_unreduced_counts(self):
        assert _exact(_config(components=("forall x. P(x)",)), 2) == (1, 4)

    def test_cap(self):
        cfg = _config()
        with pytest.raises(ExperimentError):
            exact_fraction(cfg.algebra_obj(), cfg.vocabulary(), cfg.md_sentence(3), cap=4)


class TestSampling:
    """Оценка выборкой"""

    def test_deterministic(self):
        cfg = _config(algebra="l3")
        md = cfg.md_sentence(4)
        first = sample_fraction(cfg.algebra_obj(), cfg.vocabulary(), md, 300, 11)
        second = sample_fraction(cfg.algebra_obj(), cfg.vocabulary(), md, 300, 11)
        assert first == second

    def test_close_to_exact(self):
        """Оценка в пределах четырёх стандартных ошибок от точной доли"""
        cfg = _config(algebra="l3")
        samples = 2000
        p = 1 - F(2, 3) ** 3
        hits, _ = sample_fraction(cfg.algebra_obj(), cfg.vocabulary(), cfg.md_sentence(3), samples, 7)
        sigma = math.sqrt(float(p * (1 - p)) / samples)
        assert abs(hits / samples - float(p)) <= 4 * sigma

    def test_sample_row(self):
        cfg = _config(modes={"3": "sample"}, sample_count=50, seed=3)
        row = run_size(cfg, 3)
        assert row.mode == "sample"
        assert row.samples == 50 and row.seed == 3
        assert row.numerator is None and row.stderr is not None


class TestVerdict:
    """Эвристический вердикт"""

    def test_toward_one(self):
        assert verdict([F(1, 2), F(96, 100), F(97, 100), F(99, 100)], DELTA) == TOWARD_ONE

    def test_toward_zero(self):
        assert verdict([F(1, 25), F(1, 50), F(1, 100)], DELTA) == TOWARD_ZERO

    def test_not_monotone(self):
        assert verdict([F(99, 100), F(96, 100), F(98, 100)], DELTA) == INCONCLUSIVE

    def test_too_few_sizes(self):
        assert verdict([F(1), F(1)], DELTA) == INCONCLUSIVE

    def test_middle(self):
        assert verdict([F(1, 2)] * 4, DELTA) == INCONCLUSIVE


class TestExperiment:
    """Полный прогон и CSV"""

    def test_sample_config(self, samples):
        cfg = ExperimentConfig.model_validate_json((samples / "zeroone.json").read_text(encoding="utf-8"))
        report = run_experiment(cfg)
        assert [row.n for row in report.rows] == list(range(1, 11))
        assert all(row.mode == "exact" for row in report.rows)
        assert report.verdict == TOWARD_ONE

    def test_forall_tends_to_zero(self):
        report = run_experiment(_config(components=("forall x. P(x)",), sizes=range(4, 9)))
        assert report.verdict == TOWARD_ZERO

    def test_csv(self):
        report = run_experiment(_config())
        lines = format_csv(report).splitlines()
        assert lines[0] == "n,mode,fraction_num,fraction_den,estimate,stderr,samples,seed"
        assert lines[3] == "3,exact,7,8,0.8750000000,,,"

    def test_csv_is_reproducible(self, tmp_path):
        cfg = _config(algebra="l3", modes={"3": "sample"}, sample_count=40, seed=5)
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(run_experiment(cfg), str(first))
        write_csv(run_experiment(cfg), str(second))
        assert first.read_text(encoding="utf-8") == second.read_text(encoding="utf-8")

    def test_custom_delta(self):
        report = run_experiment(_config(sizes=(3, 4, 5), delta="1/4"))
        assert report.delta == F(1, 4)
        assert report.verdict == TOWARD_ONE


class TestConfigValidation:
    """Проверка конфигурации"""

    @pytest.mark.parametrize("changes", [
        {"algebra": "lukasiewicz"},
        {"sizes": []},
        {"sizes": [0, 1]},
        {"points": (("1", "1"),)},
        {"points": (("3/2",),)},
        {"modes": {"2": "guess"}},
        {"delta": "1/2"},
        {"sample_count": 0},
    ])
    def test_rejected(self, changes):
        with pytest.raises(ValidationError):
            _config(**changes)

    def test_bad_signature(self):
        with pytest.raises(ValidationError):
            ExperimentConfig.model_validate({
                "algebra": "l3", "predicates": ["P"],
                "md": {"components": ["A"], "points": []}, "sizes": [1],
            })

    def test_open_component(self):
        cfg = _config(components=("P(x)",))
        with pytest.raises(ValueError):
            cfg.md_sentence(2)
