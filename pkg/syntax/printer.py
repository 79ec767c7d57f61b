"""
Печать формул, множеств и документов в текстовом языке (обратно к парсеру).
"""
from typing import List, Optional, Sequence

from algebra import Algebra, Connective
from infoset.boxes import BoxList
from infoset.intervals import IntervalUnion
from infoset.sets import BoxUnionSet, ConstrainedSet, ExplicitSet, InfoSet
from semantics.models import Frame
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
    Vocabulary,
    is_negation,
)
from utils.rationals import format_rational

# Уровни связывания: чем больше, тем сильнее
QUANT, IMPL, JOIN, MEET, CONJ, UNARY = range(6)

_BINARY = {
    Connective.JOIN: (JOIN, "\\/", JOIN, MEET),
    Connective.MEET: (MEET, "/\\", MEET, CONJ),
    Connective.CONJ: (CONJ, "&", CONJ, UNARY),
    Connective.IMPL: (IMPL, "->", JOIN, QUANT),
}


def _wrap(text: str, level: int, context: int) -> str:
    return f"({text})" if context > level else text


def format_formula(formula: Formula, context: int = QUANT) -> str:
    if isinstance(formula, Atom):
        return formula.pred + (f"({', '.join(formula.args)})" if formula.args else "")
    if isinstance(formula, Equality):
        return f"{formula.left} = {formula.right}"
    if isinstance(formula, Constant):
        return f"c({format_rational(formula.value)})"
    if isinstance(formula, (Forall, Exists)):
        word = "forall" if isinstance(formula, Forall) else "exists"
        return _wrap(f"{word} {formula.var}. {format_formula(formula.body, QUANT)}", QUANT, context)
    if isinstance(formula, (Box, Diamond)):
        word = "box" if isinstance(formula, Box) else "dia"
        return _wrap(f"{word} {format_formula(formula.body, UNARY)}", UNARY, context)
    if is_negation(formula):
        return _wrap(f"~{format_formula(formula.children[0], UNARY)}", UNARY, context)
    level, symbol, left_ctx, right_ctx = _BINARY[formula.conn]
    left, right = formula.children
    text = f"{format_formula(left, left_ctx)} {symbol} {format_formula(right, right_ctx)}"
    return _wrap(text, level, context)


def format_component(component: Component) -> str:
    text = format_formula(component.formula)
    if not component.is_default_order:
        text += f" @ ({', '.join(component.free_vars)})"
    return text


# === МНОЖЕСТВА ===

def format_union(union: IntervalUnion) -> str:
    return str(union)


def format_boxes(boxes: BoxList) -> str:
    return "; ".join(" x ".join(format_union(c) for c in box) for box in boxes.boxes)


def format_infoset(s: InfoSet, indent: str = "") -> str:
    if isinstance(s, ExplicitSet):
        points = "; ".join(
            "(" + ", ".join(format_rational(v) for v in p) + ")" for p in s.sorted_points()
        )
        return f"explicit {{ {points} }}" if points else "explicit { }"
    if isinstance(s, BoxUnionSet):
        body = format_boxes(s.boxes)
        return f"boxes {{ {body} }}" if body else "boxes { }"
    inner = indent + "    "
    lines = ["constrained {", f"{inner}hidden {s.hidden};", f"{inner}boxes {{"]
    for constraint in s.constraints:
        variables = ", ".join(str(v) for v in constraint.variables)
        lines.append(f"{inner}    on ({variables}) {{ {format_boxes(constraint.boxes)} }}")
    lines.append(f"{inner}}};")
    lines.append(f"{inner}nodes {{")
    for node in s.nodes:
        lines.append(f"{inner}    {node};")
    lines.append(f"{inner}}}")
    lines.append(f"{indent}}}")
    return "\n".join(lines)


# === ДОКУМЕНТЫ ===

def format_md_body(md: MDSentence, indent: str = "    ") -> List[str]:
    components = "; ".join(format_component(c) for c in md.components)
    return [
        f"{indent}components: [{components}];",
        f"{indent}set: {format_infoset(md.info_set, indent)}",
    ]


def format_md(md: MDSentence, name: Optional[str] = None) -> str:
    name = name or md.name or "goal"
    return "\n".join([f"md {name} {{"] + format_md_body(md) + ["}"])


def format_header(alg: Optional[Algebra], domain_size: Optional[int], vocab: Vocabulary,
                  frame: Optional[Frame] = None) -> str:
    lines = []
    if alg is not None:
        lines.append(f"algebra {alg.token};")
    if frame is not None:
        edges = "; ".join(f"({w},{v})" for w, v in frame.sorted_edges())
        lines.append(f"frame {frame.worlds} {{ {edges} }};")
    elif domain_size is not None:
        lines.append(f"domain {domain_size};")
    if vocab.predicates:
        lines.append("pred " + ", ".join(f"{name}/{arity}" for name, arity in vocab.predicates) + ";")
    if not vocab.with_equality and frame is None:
        lines.append("equality off;")
    return "\n".join(lines)


def format_document(alg: Optional[Algebra], domain_size: Optional[int], vocab: Vocabulary,
                    sentences: Sequence[MDSentence], frame: Optional[Frame] = None) -> str:
    parts = [format_header(alg, domain_size, vocab, frame)]
    for index, md in enumerate(sentences):
        parts.append(format_md(md, md.name or f"s{index + 1}"))
    return "\n\n".join(parts) + "\n"
