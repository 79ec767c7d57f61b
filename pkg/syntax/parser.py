"""
Разбор текстового языка: формулы, литералы множеств, документы.

Документ разбирается в два прохода: lark-трансформер строит сырые записи,
затем заголовок (алгебра, домен, словарь, фрейм) задаёт раскладку, и
из сырых записей собираются MD-предложения и шаги вывода.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from lark import Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from algebra import Algebra, Connective, parse_algebra
from infoset.boxes import BoxList
from infoset.intervals import Interval, IntervalUnion
from infoset.layout import CoordLayout
from infoset.sets import BoxUnionSet, ConstrainedSet, ExplicitSet, InfoSet
from semantics.models import Frame
from solver.program import Node, NodeOp
from solver.search import BoxConstraint
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
    FormulaError,
    MDSentence,
    Mode,
    Vocabulary,
    VocabularyError,
    neg,
    predicates,
    validate_formula,
)
from syntax.grammar import parser
from utils.rationals import parse_rational

logger = logging.getLogger(__name__)


class ParseError(FormulaError):
    """Синтаксическая или смысловая ошибка с позицией"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


# === СЫРЫЕ ЗАПИСИ ===

@dataclass(frozen=True)
class RawSet:
    """Литерал множества до того, как известна раскладка"""
    kind: str
    data: Any
    line: Optional[int] = None


@dataclass(frozen=True)
class RawComponent:
    formula: Formula
    free_vars: Optional[Tuple[str, ...]]
    line: Optional[int] = None


@dataclass(frozen=True)
class RawBlock:
    name: Optional[str]
    components: Tuple[RawComponent, ...]
    info_set: RawSet
    line: Optional[int] = None


@dataclass(frozen=True)
class StepRecord:
    """Шаг вывода: номер, MD-предложение и сырое обоснование"""
    index: int
    md: MDSentence
    kind: str
    params: Tuple[Any, ...]
    line: Optional[int] = None


@dataclass
class Document:
    algebra: Optional[Algebra]
    domain_size: Optional[int]
    vocab: Vocabulary
    frame: Optional[Frame] = None
    sentences: List[MDSentence] = field(default_factory=list)
    steps: List[StepRecord] = field(default_factory=list)

    @property
    def mode(self) -> Mode:
        return Mode.MODAL if self.frame is not None else Mode.FO

    def sentence(self, name: str) -> MDSentence:
        for md in self.sentences:
            if md.name == name:
                return md
        raise ParseError(f"no md block named {name}")


def _line(meta) -> Optional[int]:
    return getattr(meta, "line", None) if meta is not None and not getattr(meta, "empty", True) else None


def _num(token: Token) -> Fraction:
    return parse_rational(str(token))


def _int(token: Token) -> int:
    value = _num(token)
    if value.denominator != 1:
        raise ParseError(f"expected an integer, got {token}", token.line, token.column)
    return int(value)


class _Builder(Transformer):
    """Дерево lark → формулы и сырые записи"""

    # --- формулы ---

    def formula_start(self, children):
        return children[0]

    def component_start(self, children):
        return children[0]

    def infoset_start(self, children):
        return children[0]

    def quantified(self, children):
        kind, var, body = children
        cls = Forall if kind.type == "FORALL" else Exists
        return cls(str(var), body)

    def impl(self, children):
        return Compound(Connective.IMPL, tuple(children))

    def join(self, children):
        return Compound(Connective.JOIN, tuple(children))

    def meet(self, children):
        return Compound(Connective.MEET, tuple(children))

    def conj(self, children):
        return Compound(Connective.CONJ, tuple(children))

    def neg(self, children):
        return neg(children[0])

    def box_op(self, children):
        return Box(children[0])

    def dia_op(self, children):
        return Diamond(children[0])

    def constant(self, children):
        text = str(children[0]).strip()[2:-1]
        value = parse_rational(text.replace(" ", ""))
        if not 0 <= value <= 1:
            raise ParseError(f"truth constant {text} outside [0, 1]", children[0].line, children[0].column)
        return Constant(value)

    def atom(self, children):
        return Atom(str(children[0]), tuple(str(c) for c in children[1:]))

    def equality(self, children):
        return Equality(str(children[0]), str(children[1]))

    def var_list(self, children):
        return tuple(str(c) for c in children)

    @v_args(meta=True)
    def component(self, meta, children):
        free = children[1] if len(children) > 1 else None
        return RawComponent(children[0], free, _line(meta))

    # --- множества ---

    @v_args(meta=True)
    def explicit(self, meta, children):
        return RawSet("explicit", tuple(children), _line(meta))

    def point(self, children):
        return tuple(_num(c) for c in children)

    @v_args(meta=True)
    def box_union(self, meta, children):
        return RawSet("boxes", tuple(children), _line(meta))

    def box_literal(self, children):
        return tuple(children)

    def full(self, children):
        return IntervalUnion.full()

    def empty(self, children):
        return IntervalUnion.empty()

    def pieces(self, children):
        return IntervalUnion.of(children)

    def interval(self, children):
        lower, lo, hi, upper = children
        return Interval(_num(lo), _num(hi), lower == "[", upper == "]")

    def singleton(self, children):
        return Interval.point(_num(children[0]))

    def lbound(self, children):
        return str(children[0])

    def rbound(self, children):
        return str(children[0])

    def on_block(self, children):
        variables = tuple(_int(c) for c in children if isinstance(c, Token))
        boxes = tuple(c for c in children if not isinstance(c, Token))
        return variables, boxes

    def node(self, children):
        target, op_name, *args = children
        try:
            op = NodeOp(str(op_name))
        except ValueError:
            raise ParseError(f"unknown node operation {op_name}", op_name.line, op_name.column) from None
        variables = tuple(int(str(a)[1:]) for a in args if a.type == "VAR")
        constants = [_num(a) for a in args if a.type == "NUM"]
        const = constants[0] if constants else None
        return Node(int(str(target)[1:]), op, variables, const)

    @v_args(meta=True)
    def constrained(self, meta, children):
        hidden = _int(children[0])
        blocks = tuple(c for c in children[1:] if isinstance(c, tuple))
        nodes = tuple(c for c in children[1:] if isinstance(c, Node))
        return RawSet("constrained", (hidden, blocks, nodes), _line(meta))

    # --- документ ---

    def md_body(self, children):
        return tuple(children[:-1]), children[-1]

    @v_args(meta=True)
    def md_block(self, meta, children):
        name, (components, raw_set) = children
        return "md", RawBlock(str(name), components, raw_set, _line(meta))

    @v_args(meta=True)
    def step_block(self, meta, children):
        index, (components, raw_set), justification = children
        return "step", (_int(index), RawBlock(None, components, raw_set, _line(meta)), justification)

    def j_axiom(self, children):
        return "axiom", ()

    def j_premise(self, children):
        return "premise", (_int(children[0]),)

    def j_rule2(self, children):
        *perm, source = children
        return "rule2", (tuple(_int(p) for p in perm), _int(source))

    def j_rule3(self, children):
        return "rule3", (_int(children[0]),)

    def j_rule4(self, children):
        return "rule4", (_int(children[0]), _int(children[1]))

    def j_rule5(self, children):
        return "rule5", (_int(children[0]), _int(children[1]))

    def j_rule6(self, children):
        return "rule6", (_int(children[0]),)

    def j_rule7(self, children):
        return "rule7", (_int(children[0]),)

    def algebra_decl(self, children):
        return "algebra", parse_algebra(str(children[0]))

    def domain_decl(self, children):
        return "domain", _int(children[0])

    def pred_sig(self, children):
        return str(children[0]), _int(children[1])

    def pred_decl(self, children):
        return "pred", tuple(children)

    def edge(self, children):
        return _int(children[0]), _int(children[1])

    def frame_decl(self, children):
        return "frame", Frame.of(_int(children[0]), children[1:])

    def equality_decl(self, children):
        return "equality_off", None

    def document(self, children):
        return list(children)


def _run(text: str, start: str):
    try:
        tree = parser.parse(text, start=start)
        return _Builder().transform(tree)
    except UnexpectedInput as exc:
        message = str(exc).strip().splitlines()[0]
        raise ParseError(message, exc.line, exc.column) from None
    except VisitError as exc:
        original = exc.orig_exc
        if isinstance(original, ParseError):
            raise original from None
        meta = getattr(exc.obj, "meta", None)
        line = _line(meta)
        if isinstance(exc.obj, Token):
            line = exc.obj.line
        if isinstance(original, ValueError):
            raise ParseError(str(original), line) from None
        raise


# === ПУБЛИЧНЫЕ ФУНКЦИИ ===

def parse_formula(text: str, vocab: Optional[Vocabulary] = None, mode: Mode = Mode.FO) -> Formula:
    """Текст → формула; при заданном словаре формула проверяется"""
    formula = _run(text, "formula_start")
    if vocab is not None:
        validate_formula(formula, vocab, mode)
    return formula


def parse_component(text: str, vocab: Optional[Vocabulary] = None, mode: Mode = Mode.FO) -> Component:
    raw = _run(text, "component_start")
    if vocab is not None:
        validate_formula(raw.formula, vocab, mode)
    return _component(raw)


def parse_infoset(text: str, layout: CoordLayout) -> InfoSet:
    return build_set(_run(text, "infoset_start"), layout)


def infer_vocabulary(formulas: Sequence[Formula], with_equality: bool = True) -> Vocabulary:
    """Словарь по употреблению предикатов"""
    found: Dict[str, int] = {}
    for formula in formulas:
        for name, arity in predicates(formula).items():
            if found.setdefault(name, arity) != arity:
                raise VocabularyError(f"predicate {name} is used with arities {found[name]} and {arity}")
    return Vocabulary(tuple(found.items()), with_equality)


def _component(raw: RawComponent) -> Component:
    try:
        if raw.free_vars is None:
            return Component.of(raw.formula)
        return Component(raw.formula, raw.free_vars)
    except FormulaError as exc:
        raise ParseError(str(exc), raw.line) from None


def build_set(raw: RawSet, layout: CoordLayout) -> InfoSet:
    """Сырой литерал множества в данной раскладке"""
    try:
        if raw.kind == "explicit":
            return ExplicitSet(layout, frozenset(raw.data))
        if raw.kind == "boxes":
            return BoxUnionSet(layout, BoxList(layout.width, raw.data))
        hidden, blocks, nodes = raw.data
        constraints = tuple(
            BoxConstraint(variables, BoxList(len(variables), boxes)) for variables, boxes in blocks
        )
        return ConstrainedSet(layout, hidden, constraints, nodes)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), raw.line) from None


def parse_document(text: str, algebra: Optional[Algebra] = None, domain_size: Optional[int] = None,
                   frame: Optional[Frame] = None) -> Document:
    """Файл с заголовком, md-блоками и шагами; параметры перекрывают заголовок"""
    items = _run(text, "document")
    header: Dict[str, Any] = {}
    declared: List[Tuple[str, int]] = []
    with_equality = True
    blocks: List[RawBlock] = []
    steps: List[Tuple[int, RawBlock, Tuple[str, tuple]]] = []
    for kind, value in items:
        if kind == "pred":
            declared.extend(value)
        elif kind == "equality_off":
            with_equality = False
        elif kind == "md":
            blocks.append(value)
        elif kind == "step":
            steps.append(value)
        else:
            if kind in header:
                raise ParseError(f"{kind} is declared twice")
            header[kind] = value

    alg = algebra or header.get("algebra")
    declared_frame = header.get("frame")
    if frame is not None and declared_frame is not None and declared_frame != frame:
        raise ParseError(
            f"frame {declared_frame.worlds} {declared_frame.sorted_edges()} differs from "
            f"the expected frame {frame.worlds} {frame.sorted_edges()}"
        )
    frame = frame or declared_frame
    mode = Mode.MODAL if frame is not None else Mode.FO
    if frame is not None:
        with_equality = False
        if domain_size is not None and domain_size != frame.worlds:
            raise ParseError(f"frame has {frame.worlds} worlds, domain {domain_size} requested")
        domain_size = frame.worlds
    else:
        domain_size = domain_size or header.get("domain")

    all_blocks = blocks + [block for _, block, _ in steps]
    try:
        if declared:
            vocab = Vocabulary(tuple(declared), with_equality)
        else:
            formulas = [c.formula for block in all_blocks for c in block.components]
            vocab = infer_vocabulary(formulas, with_equality)
    except VocabularyError as exc:
        raise ParseError(str(exc)) from None

    def assemble(block: RawBlock) -> MDSentence:
        components = []
        for raw in block.components:
            try:
                validate_formula(raw.formula, vocab, mode)
            except VocabularyError as exc:
                raise ParseError(str(exc), raw.line) from None
            components.append(_component(raw))
        if domain_size is None:
            raise ParseError("domain size is not declared", block.line)
        try:
            layout = CoordLayout(domain_size, tuple(c.arity for c in components), frame is not None)
            return MDSentence(tuple(components), build_set(block.info_set, layout), block.name)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc), block.line) from None

    document = Document(alg, domain_size, vocab, frame)
    document.sentences = [assemble(block) for block in blocks]
    for index, block, (kind, params) in steps:
        document.steps.append(StepRecord(index, assemble(block), kind, params, block.line))
    logger.debug(
        f"📄 Документ: {len(document.sentences)} md, {len(document.steps)} шагов, "
        f"алгебра {alg.token if alg else '-'}, домен {domain_size}"
    )
    return document
