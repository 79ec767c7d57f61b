"""
Форматы выводов: текстовый документ (тот же язык, что и md-файлы) и JSON.

Текст:
    algebra l3;
    domain 2;
    pred P/1;
    md p1 { components: [forall x. P(x)]; set: explicit { (1) } }
    step 1: { components: [forall x. P(x)]; set: explicit { (1) } } by premise 1;
    step 2: { ... } by rule3 from 1;
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, field_validator

from algebra import Algebra, parse_algebra
from calculus.derivation import Calculus, Derivation, Justification, Rule, Step
from infoset.layout import CoordLayout
from semantics.models import Frame
from semantics.schemas import FrameFile
from syntax.formulas import MDSentence, Mode, Vocabulary
from syntax.parser import Document, ParseError, parse_component, parse_document, parse_infoset
from syntax.printer import format_component, format_header, format_infoset, format_md, format_md_body


@dataclass(frozen=True)
class ProofBundle:
    """Всё, что нужно для проверки вывода"""
    calculus: Calculus
    vocab: Vocabulary
    premises: Tuple[MDSentence, ...]
    derivation: Derivation


# === ТЕКСТ ===

def format_step(number: int, step: Step) -> str:
    lines = [f"step {number}: {{"] + format_md_body(step.md) + [f"}} by {step.justification.to_text()};"]
    return "\n".join(lines)


def format_derivation(calculus: Calculus, vocab: Vocabulary, premises: Sequence[MDSentence],
                      derivation: Derivation) -> str:
    parts = [format_header(calculus.alg, calculus.domain_size, vocab, calculus.frame)]
    for index, md in enumerate(premises, start=1):
        parts.append(format_md(md, md.name or f"p{index}"))
    for number, step in enumerate(derivation.steps, start=1):
        parts.append(format_step(number, step))
    return "\n\n".join(parts) + "\n"


def bundle_from_document(document: Document) -> ProofBundle:
    """Документ с md-блоками посылок и шагами → вывод"""
    if document.algebra is None:
        raise ParseError("the derivation does not declare an algebra")
    steps = []
    for expected, record in enumerate(document.steps, start=1):
        if record.index != expected:
            raise ParseError(f"step {record.index} found where step {expected} was expected", record.line)
        steps.append(Step(record.md, Justification.from_record(record.kind, record.params)))
    calculus = Calculus(document.algebra, document.domain_size, document.frame)
    return ProofBundle(calculus, document.vocab, tuple(document.sentences), Derivation(tuple(steps)))


def parse_derivation(text: str) -> ProofBundle:
    return bundle_from_document(parse_document(text))


# === JSON ===

class SentenceFile(BaseModel):
    name: Optional[str] = None
    components: List[str]
    info_set: str


class StepFile(BaseModel):
    components: List[str]
    info_set: str
    rule: str
    sources: List[int] = []
    premise: Optional[int] = None
    perm: List[int] = []
    dropped: Optional[int] = None

    @field_validator("rule")
    @classmethod
    def rule_known(cls, v: str) -> str:
        Rule(v)
        return v


class DerivationFile(BaseModel):
    """Вывод в JSON; формулы и множества хранятся в текстовом языке"""
    algebra: str
    domain: Optional[int] = None
    frame: Optional[FrameFile] = None
    predicates: Dict[str, int] = {}
    equality: bool = True
    premises: List[SentenceFile] = []
    steps: List[StepFile] = []

    @field_validator("algebra")
    @classmethod
    def algebra_known(cls, v: str) -> str:
        parse_algebra(v)
        return v

    @classmethod
    def from_bundle(cls, bundle: ProofBundle) -> "DerivationFile":
        calculus = bundle.calculus
        frame = calculus.frame

        def sentence(md: MDSentence) -> Tuple[List[str], str]:
            return [format_component(c) for c in md.components], format_infoset(md.info_set)

        premises = []
        for md in bundle.premises:
            components, info_set = sentence(md)
            premises.append(SentenceFile(name=md.name, components=components, info_set=info_set))
        steps = []
        for step in bundle.derivation.steps:
            components, info_set = sentence(step.md)
            j = step.justification
            steps.append(StepFile(
                components=components, info_set=info_set, rule=j.rule.value,
                sources=list(j.sources), premise=j.premise, perm=list(j.perm), dropped=j.dropped,
            ))
        return cls(
            algebra=calculus.alg.token,
            domain=None if frame is not None else calculus.domain_size,
            frame=FrameFile(worlds=frame.worlds, edges=frame.sorted_edges()) if frame is not None else None,
            predicates=dict(bundle.vocab.predicates),
            equality=bundle.vocab.with_equality,
            premises=premises,
            steps=steps,
        )

    def to_bundle(self) -> ProofBundle:
        alg: Algebra = parse_algebra(self.algebra)
        frame: Optional[Frame] = self.frame.to_frame() if self.frame is not None else None
        vocab = Vocabulary(tuple(self.predicates.items()), self.equality and frame is None)
        calculus = Calculus(alg, self.domain, frame)
        mode = Mode.MODAL if frame is not None else Mode.FO

        def sentence(components: List[str], info_set: str, name: Optional[str] = None) -> MDSentence:
            parsed = tuple(parse_component(text, vocab, mode) for text in components)
            layout = CoordLayout(calculus.domain_size, tuple(c.arity for c in parsed), frame is not None)
            return MDSentence(parsed, parse_infoset(info_set, layout), name)

        premises = tuple(sentence(p.components, p.info_set, p.name) for p in self.premises)
        steps = tuple(
            Step(
                sentence(s.components, s.info_set),
                Justification(Rule(s.rule), tuple(s.sources), s.premise, tuple(s.perm), s.dropped),
            )
            for s in self.steps
        )
        return ProofBundle(calculus, vocab, premises, Derivation(steps))


def load_bundle(text: str) -> ProofBundle:
    """Текстовый документ или JSON: по первому символу"""
    if text.lstrip().startswith("{"):
        return DerivationFile.model_validate_json(text).to_bundle()
    return parse_derivation(text)
