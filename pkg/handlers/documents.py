"""
Загрузка входных файлов и печать результатов команд.
"""
import json
import logging
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple, Union

from pydantic import BaseModel, model_validator

from algebra import Algebra, parse_algebra
from config import config
from semantics.models import Frame, ModalModel, Model
from syntax.formulas import MDSentence, Vocabulary, VocabularyError
from syntax.parser import Document, parse_document
from utils.rationals import format_rational

logger = logging.getLogger(__name__)

AnyModel = Union[Model, ModalModel]

FORMATS = ("text", "json")

# Обязательные параметры команд
REQUIRED: Dict[str, Tuple[str, ...]] = {
    "eval": ("model",),
    "sat": ("md",),
    "entail": ("goal",),
    "entail-modal": ("goal",),
    "checkproof": ("proof",),
    "filter": ("md",),
    "translate": ("algebra",),
    "zeroone": ("config_path",),
    "sweep": ("goal", "max_size"),
}


class InputError(ValueError):
    """Ошибка входных данных с именем файла"""


class CommandConfig(BaseModel):
    """Параметры одного вызова CLI"""
    command: str
    output_format: str = "text"
    algebra: Optional[str] = None
    domain: Optional[int] = None
    jobs: int = 1
    case_budget: Optional[int] = None
    max_width: Optional[int] = None
    seed: Optional[int] = None
    md: Optional[str] = None
    model: Optional[str] = None
    formula: Optional[str] = None
    assign: Optional[str] = None
    premises: Optional[str] = None
    goal: Optional[str] = None
    proof: Optional[str] = None
    value: Optional[str] = None
    sigma: bool = False
    config_path: Optional[str] = None
    out: Optional[str] = None
    max_size: Optional[int] = None

    @model_validator(mode="after")
    def required_present(self) -> "CommandConfig":
        if self.command not in REQUIRED:
            raise ValueError(f"unknown command {self.command}")
        if self.output_format not in FORMATS:
            raise ValueError(f"--format must be one of {FORMATS}")
        missing = [name for name in REQUIRED[self.command] if getattr(self, name) is None]
        if missing:
            flags = ", ".join("--" + name.replace("_path", "").replace("_", "-") for name in missing)
            raise ValueError(f"{self.command} needs {flags}")
        if self.algebra is not None:
            parse_algebra(self.algebra)
        for name in ("domain", "jobs", "case_budget", "max_width", "max_size"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")
        if self.command == "eval" and (self.formula is None) == (self.md is None):
            raise ValueError("eval needs exactly one of --formula and --md")
        if self.command == "translate" and self.md is None and self.formula is None:
            raise ValueError("translate needs --formula or --md")
        if self.command == "translate" and self.formula is not None and self.value is None and not self.sigma:
            raise ValueError("translate --formula needs --value (or --sigma)")
        return self

    @property
    def as_json(self) -> bool:
        return self.output_format == "json"

    def algebra_obj(self) -> Optional[Algebra]:
        return parse_algebra(self.algebra) if self.algebra is not None else None

    def apply_overrides(self) -> None:
        """Флаги перекрывают значения конфигурации на время вызова"""
        if self.case_budget is not None:
            config.CASE_BUDGET = self.case_budget
        if self.max_width is not None:
            config.MAX_WIDTH = self.max_width


# === ФАЙЛЫ ===

def read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from None


def load_document(path: str, algebra: Optional[Algebra] = None, domain_size: Optional[int] = None,
                  frame: Optional[Frame] = None) -> Document:
    text = read_text(path)
    try:
        document = parse_document(text, algebra, domain_size, frame)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
    logger.debug(f"📄 {path}: {len(document.sentences)} md-блоков")
    return document


def first_sentence(document: Document, path: str) -> MDSentence:
    if not document.sentences:
        raise InputError(f"{path}: no md block found")
    return document.sentences[0]


def require_algebra(document: Document, path: str) -> Algebra:
    if document.algebra is None:
        raise InputError(f"{path}: no algebra declared (use --algebra)")
    return document.algebra


def require_domain(document: Document, path: str) -> int:
    if document.domain_size is None:
        raise InputError(f"{path}: no domain declared (use --domain)")
    return document.domain_size


def merge_vocabularies(first: Vocabulary, second: Vocabulary) -> Vocabulary:
    """Объединение словарей посылок и цели"""
    merged = dict(first.predicates)
    for name, arity in second.predicates:
        if merged.setdefault(name, arity) != arity:
            raise VocabularyError(f"predicate {name} has arity {merged[name]} in one file and {arity} in another")
    return Vocabulary(tuple(merged.items()), first.with_equality and second.with_equality)


# === ВЫВОД ===

def format_model(alg: Algebra, model: AnyModel) -> str:
    lines = [f"% model over {alg.token}"]
    if isinstance(model, ModalModel):
        edges = "; ".join(f"({w},{v})" for w, v in model.frame.sorted_edges())
        lines.append(f"% frame {model.frame.worlds} {{ {edges} }}")
        rows = zip(model.vocab.names, model.valuation)
    else:
        lines.append(f"% domain {model.domain_size}")
        rows = zip(model.vocab.names, model.tables)
    for name, table in rows:
        lines.append(f"{name} = [{', '.join(format_rational(v) for v in table)}]")
    return "\n".join(lines)


def format_point(point: Sequence) -> str:
    return "(" + ", ".join(format_rational(v) for v in point) + ")"


def emit(out: TextIO, options: CommandConfig, text: str, payload: Any) -> None:
    """Текст или JSON на stdout"""
    if options.as_json:
        out.write(json.dumps(payload, ensure_ascii=False, indent=2) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def point_strings(point: Sequence) -> List[str]:
    return [format_rational(v) for v in point]
