"""
Доли моделей домена {0..n-1}, выполняющих MD-предложение: точно и выборкой.

Выборка j для размера n берёт генератор random.Random(f"{seed}:{n}:{j}"),
так что результат не зависит от порядка и числа процессов.
"""
import csv
import io
import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from algebra import Algebra
from config import config
from semantics.enumeration import count_models, enumerate_models, random_model
from semantics.evaluator import satisfies
from syntax.formulas import MDSentence, Vocabulary
from zeroone.schemas import ExperimentConfig

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("n", "mode", "fraction_num", "fraction_den", "estimate", "stderr", "samples", "seed")

TOWARD_ONE = "toward 1"
TOWARD_ZERO = "toward 0"
INCONCLUSIVE = "inconclusive"


class ExperimentError(ValueError):
    """Эксперимент нельзя провести с такими параметрами"""


@dataclass(frozen=True)
class FractionRow:
    """Строка отчёта для одного размера домена"""
    n: int
    mode: str
    value: Fraction
    numerator: Optional[int] = None
    denominator: Optional[int] = None
    stderr: Optional[float] = None
    samples: Optional[int] = None
    seed: Optional[int] = None


@dataclass(frozen=True)
class FractionReport:
    rows: Tuple[FractionRow, ...]
    verdict: str
    delta: Fraction


# === ДОЛИ ===

def exact_fraction(alg: Algebra, vocab: Vocabulary, md: MDSentence, cap: Optional[int] = None) -> Tuple[int, int]:
    """(число выполняющих моделей, число всех моделей) без сокращения"""
    total = count_models(alg, vocab, md.info_set.layout.domain_size)
    cap = config.EXACT_CAP if cap is None else cap
    if total > cap:
        raise ExperimentError(f"{total} models exceed the exact-mode cap {cap}")
    hits = sum(1 for model in enumerate_models(alg, vocab, md.info_set.layout.domain_size, cap=total)
               if satisfies(alg, model, md))
    return hits, total


def sample_rng(seed: int, n: int, j: int) -> random.Random:
    return random.Random(f"{seed}:{n}:{j}")


def sample_fraction(alg: Algebra, vocab: Vocabulary, md: MDSentence, samples: int,
                    seed: int) -> Tuple[int, float]:
    """(число попаданий, стандартная ошибка доли)"""
    if samples < 1:
        raise ExperimentError("at least one sample is required")
    n = md.info_set.layout.domain_size
    hits = 0
    for j in range(samples):
        model = random_model(alg, vocab, n, sample_rng(seed, n, j))
        if satisfies(alg, model, md):
            hits += 1
    p = hits / samples
    return hits, math.sqrt(p * (1 - p) / samples)


def verdict(values: Sequence[Fraction], delta: Fraction) -> str:
    """Эвристика по трём последним долям"""
    if len(values) < 3:
        return INCONCLUSIVE
    last = list(values[-3:])
    if all(v > 1 - delta for v in last) and last == sorted(last):
        return TOWARD_ONE
    if all(v < delta for v in last) and last == sorted(last, reverse=True):
        return TOWARD_ZERO
    return INCONCLUSIVE


# === ЭКСПЕРИМЕНТ ===

def _mode(cfg: ExperimentConfig, n: int) -> str:
    mode = cfg.mode_for(n)
    if mode != "auto":
        return mode
    total = count_models(cfg.algebra_obj(), cfg.vocabulary(), n)
    return "exact" if total <= config.EXACT_CAP else "sample"


def run_size(cfg: ExperimentConfig, n: int) -> FractionRow:
    alg = cfg.algebra_obj()
    vocab = cfg.vocabulary()
    md = cfg.md_sentence(n)
    mode = _mode(cfg, n)
    if mode == "exact":
        hits, total = exact_fraction(alg, vocab, md)
        logger.info(f"🎯 n={n}: точно {hits}/{total}")
        return FractionRow(n, mode, Fraction(hits, total), numerator=hits, denominator=total)
    hits, stderr = sample_fraction(alg, vocab, md, cfg.sample_count, cfg.seed)
    logger.info(f"🎲 n={n}: {hits}/{cfg.sample_count} в выборке, seed={cfg.seed}")
    return FractionRow(n, mode, Fraction(hits, cfg.sample_count), stderr=stderr,
                       samples=cfg.sample_count, seed=cfg.seed)


def _run_size_task(task: Tuple[ExperimentConfig, int]) -> FractionRow:
    cfg, n = task
    return run_size(cfg, n)


def run_experiment(cfg: ExperimentConfig, jobs: int = 1) -> FractionReport:
    """Строки по всем размерам и вердикт"""
    logger.info(f"🧪 Эксперимент 0-1: {cfg.algebra}, размеры {cfg.sizes}, seed={cfg.seed}")
    sizes = list(cfg.sizes)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_run_size_task, [(cfg, n) for n in sizes]))
    else:
        rows = [run_size(cfg, n) for n in sizes]
    delta = cfg.delta_value()
    result = verdict([row.value for row in rows], delta)
    if result == INCONCLUSIVE:
        logger.warning("⚠️ Вердикт не определён по последним трём размерам")
    return FractionReport(tuple(rows), result, delta)


# === CSV ===

def _decimal(value: float) -> str:
    return f"{value:.10f}"


def format_csv(report: FractionReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report.rows:
        writer.writerow([
            row.n,
            row.mode,
            "" if row.numerator is None else row.numerator,
            "" if row.denominator is None else row.denominator,
            _decimal(float(row.value)),
            "" if row.stderr is None else _decimal(row.stderr),
            "" if row.samples is None else row.samples,
            "" if row.seed is None else row.seed,
        ])
    return buffer.getvalue()


def write_csv(report: FractionReport, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(format_csv(report))
