"""
Команды CLI: по обработчику на подкоманду.

Каждый обработчик получает CommandConfig и поток вывода и возвращает код
выхода: 0: успех (Valid, true), 1: отрицательный ответ (Invalid, false).
"""
import argparse
import json
import logging
from typing import Dict, List, Optional, TextIO, Tuple

from algebra import Algebra
from calculus.derivation import check_derivation
from calculus.schemas import DerivationFile, ProofBundle, format_derivation, load_bundle
from calculus.service import EntailmentService, EntailmentVerdict, sweep
from handlers.documents import (
    CommandConfig,
    InputError,
    emit,
    first_sentence,
    format_model,
    format_point,
    load_document,
    merge_vocabularies,
    point_strings,
    read_text,
    require_algebra,
    require_domain,
)
from semantics.evaluator import evaluate, evaluate_modal, satisfies
from semantics.models import ModalModel
from semantics.schemas import dump_model, load_model
from syntax.formulas import MDSentence, Mode, Vocabulary, free_vars
from syntax.parser import Document, infer_vocabulary, parse_formula
from syntax.printer import format_component, format_formula, format_infoset, format_md
from translate.service import build_sigma, md_translate, translate_value
from utils.rationals import format_rational, parse_unit
from zeroone.schemas import ExperimentConfig
from zeroone.service import format_csv, run_experiment, write_csv

logger = logging.getLogger(__name__)

# === EVAL ===

def _assignment(text: Optional[str]) -> Dict[str, int]:
    """"x=0,y=1" → {"x": 0, "y": 1}"""
    out: Dict[str, int] = {}
    if not text:
        return out
    for item in text.split(","):
        name, sep, value = item.partition("=")
        if not sep or not value.strip().isdigit():
            raise InputError(f"bad assignment item {item!r}, expected name=element")
        out[name.strip()] = int(value)
    return out


def cmd_eval(options: CommandConfig, out: TextIO) -> int:
    alg, model = load_model(read_text(options.model))
    alg = options.algebra_obj() or alg
    modal = isinstance(model, ModalModel)

    if options.formula is not None:
        mode = Mode.MODAL if modal else Mode.FO
        formula = parse_formula(options.formula, model.vocab, mode)
        if modal:
            values = [evaluate_modal(alg, model, formula, w) for w in range(model.frame.worlds)]
            text = "\n".join(f"w{w}: {format_rational(v)}" for w, v in enumerate(values))
            emit(out, options, text, {"values": point_strings(values)})
            return 0
        assignment = _assignment(options.assign)
        missing = [v for v in free_vars(formula) if v not in assignment]
        if missing:
            raise InputError(f"free variables {missing} need --assign")
        value = evaluate(alg, model, formula, assignment)
        emit(out, options, format_rational(value), {"value": format_rational(value)})
        return 0

    frame = model.frame if modal else None
    document = load_document(options.md, alg, None if modal else model.domain_size, frame)
    results = []
    for index, md in enumerate(document.sentences, start=1):
        results.append((md.name or f"s{index}", satisfies(alg, model, md)))
    if not results:
        raise InputError(f"{options.md}: no md block found")
    text = "\n".join(f"{name}: {'true' if ok else 'false'}" for name, ok in results)
    emit(out, options, text, {"results": [{"name": name, "satisfied": ok} for name, ok in results]})
    return 0 if all(ok for _, ok in results) else 1


# === SAT / FILTER ===

def _service_for(document: Document, path: str, vocab: Optional[Vocabulary] = None) -> EntailmentService:
    alg = require_algebra(document, path)
    if document.frame is not None:
        return EntailmentService(alg, frame=document.frame, vocab=vocab or document.vocab)
    return EntailmentService(alg, require_domain(document, path), vocab=vocab or document.vocab)


def cmd_sat(options: CommandConfig, out: TextIO) -> int:
    document = load_document(options.md, options.algebra_obj(), options.domain)
    md = first_sentence(document, options.md)
    service = _service_for(document, options.md)
    model = service.satisfiable(md)
    if model is None:
        emit(out, options, "unsatisfiable", {"satisfiable": False})
        return 1
    emit(out, options, "satisfiable\n" + format_model(service.alg, model),
         {"satisfiable": True, "model": dump_model(service.alg, model)})
    return 0


def cmd_filter(options: CommandConfig, out: TextIO) -> int:
    document = load_document(options.md, options.algebra_obj(), options.domain)
    md = first_sentence(document, options.md)
    calculus = _service_for(document, options.md).calculus
    result = calculus.good(md)
    emit(out, options, format_md(result, md.name),
         {"components": [format_component(c) for c in result.components],
          "info_set": format_infoset(result.info_set)})
    return 0


# === ENTAIL ===

def _load_problem(options: CommandConfig, modal: bool, default_domain: Optional[int] = None
                  ) -> Tuple[Document, List[MDSentence], MDSentence, Vocabulary]:
    """Посылки и цель из двух файлов; заголовок файла посылок главный"""
    algebra = options.algebra_obj()
    premises: List[MDSentence] = []
    vocab: Optional[Vocabulary] = None
    frame = None
    domain = options.domain or default_domain
    if options.premises is not None:
        premise_doc = load_document(options.premises, algebra, None if modal else domain)
        premises = list(premise_doc.sentences)
        algebra = algebra or premise_doc.algebra
        frame = premise_doc.frame
        domain = domain or premise_doc.domain_size
        vocab = premise_doc.vocab
    goal_doc = load_document(options.goal, algebra, None if (modal or frame) else domain, frame)
    goal = first_sentence(goal_doc, options.goal)
    if modal and goal_doc.frame is None:
        raise InputError("entail-modal needs a frame declaration")
    if not modal and goal_doc.frame is not None:
        raise InputError("the files declare a frame, use entail-modal")
    if premises and frame is None and goal_doc.frame is not None:
        raise InputError(f"{options.premises}: the premises are first-order but the goal is modal")
    vocab = merge_vocabularies(vocab, goal_doc.vocab) if vocab is not None else goal_doc.vocab
    return goal_doc, premises, goal, vocab


def _verdict_output(options: CommandConfig, out: TextIO, service: EntailmentService,
                    vocab: Vocabulary, premises: List[MDSentence], verdict: EntailmentVerdict) -> int:
    if verdict.valid:
        bundle = ProofBundle(service.calculus, vocab, tuple(premises), verdict.derivation)
        text = "% verdict: Valid\n" + format_derivation(service.calculus, vocab, premises, verdict.derivation)
        emit(out, options, text, {"verdict": "valid", "derivation": DerivationFile.from_bundle(bundle).model_dump()})
        return 0
    text = (
        "% verdict: Invalid\n"
        f"% goal tuple outside the goal set: {format_point(verdict.violated_at)}\n"
        + format_model(service.alg, verdict.countermodel)
    )
    emit(out, options, text, {
        "verdict": "invalid",
        "violated_at": point_strings(verdict.violated_at),
        "countermodel": dump_model(service.alg, verdict.countermodel),
    })
    return 1


def _entail(options: CommandConfig, out: TextIO, modal: bool) -> int:
    goal_doc, premises, goal, vocab = _load_problem(options, modal)
    service = _service_for(goal_doc, options.goal, vocab)
    verdict = service.entail(premises, goal)
    return _verdict_output(options, out, service, vocab, premises, verdict)


def cmd_entail(options: CommandConfig, out: TextIO) -> int:
    return _entail(options, out, modal=False)


def cmd_entail_modal(options: CommandConfig, out: TextIO) -> int:
    return _entail(options, out, modal=True)


def cmd_sweep(options: CommandConfig, out: TextIO) -> int:
    goal_doc, premises, goal, vocab = _load_problem(options, modal=False, default_domain=1)
    alg = require_algebra(goal_doc, options.goal)
    report = sweep(alg, premises, goal, options.max_size, jobs=options.jobs, vocab=vocab)
    if not report.found:
        emit(out, options, str(report), {"countermodel_size": None, "max_size": report.max_size})
        return 0
    text = f"{report}\n" + format_model(alg, report.verdict.countermodel)
    emit(out, options, text, {
        "countermodel_size": report.countermodel_size,
        "max_size": report.max_size,
        "countermodel": dump_model(alg, report.verdict.countermodel),
    })
    return 1


# === CHECKPROOF ===

def cmd_checkproof(options: CommandConfig, out: TextIO) -> int:
    text = read_text(options.proof)
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        if isinstance(data, dict) and "derivation" in data:
            text = json.dumps(data["derivation"])
    try:
        bundle = load_bundle(text)
    except ValueError as exc:
        raise InputError(f"{options.proof}: {exc}") from None
    report = check_derivation(bundle.calculus, bundle.derivation, bundle.premises)
    emit(out, options, str(report), {"ok": report.ok, "step": report.step, "reason": report.reason})
    return 0 if report.ok else 1


# === TRANSLATE ===

def cmd_translate(options: CommandConfig, out: TextIO) -> int:
    alg: Algebra = options.algebra_obj()
    if options.md is not None:
        document = load_document(options.md, alg, options.domain or 1)
        md = first_sentence(document, options.md)
        formula = md_translate(alg, md)
        vocab = document.vocab
    else:
        parsed = parse_formula(options.formula)
        vocab = infer_vocabulary([parsed])
        formula = translate_value(alg, parse_unit(options.value), parsed) if options.value is not None else None

    lines = []
    payload = {}
    if formula is not None:
        lines.append(format_formula(formula))
        payload["formula"] = format_formula(formula)
    if options.sigma:
        sigma = [format_formula(s) for s in build_sigma(alg, vocab).sentences]
        lines.extend(f"% sigma\n{s}" if i == 0 else s for i, s in enumerate(sigma))
        payload["sigma"] = sigma
    emit(out, options, "\n".join(lines), payload)
    return 0


# === ZEROONE ===

def cmd_zeroone(options: CommandConfig, out: TextIO) -> int:
    try:
        cfg = ExperimentConfig.model_validate_json(read_text(options.config_path))
    except ValueError as exc:
        raise InputError(f"{options.config_path}: {exc}") from None
    if options.seed is not None:
        cfg = cfg.model_copy(update={"seed": options.seed})
    report = run_experiment(cfg, jobs=options.jobs)
    heuristic = f"% verdict (heuristic, delta={format_rational(report.delta)}): {report.verdict}"
    if options.out is not None:
        write_csv(report, options.out)
        emit(out, options, heuristic, {"verdict": report.verdict, "delta": format_rational(report.delta),
                                      "csv": options.out})
    else:
        emit(out, options, format_csv(report) + heuristic,
             {"verdict": report.verdict, "delta": format_rational(report.delta), "csv": format_csv(report)})
    return 0


# === РЕГИСТРАЦИЯ ===

def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--algebra", help="l3, g4, lukasiewicz, godel, product, classical, ...")
    parser.add_argument("--domain", type=int, help="domain size (overrides the file header)")


def register_handlers(subparsers) -> None:
    """Подкоманды и их обработчики"""
    p = subparsers.add_parser("eval", help="evaluate a formula or check md blocks in a model")
    p.add_argument("--model", required=True, help="model JSON file")
    p.add_argument("--formula")
    p.add_argument("--assign", help="x=0,y=1")
    p.add_argument("--md", help="document with md blocks")
    p.add_argument("--algebra")
    p.set_defaults(handler=cmd_eval)

    p = subparsers.add_parser("sat", help="find a model of an md-sentence")
    p.add_argument("--md", required=True)
    _common(p)
    p.set_defaults(handler=cmd_sat)

    p = subparsers.add_parser("filter", help="apply the good-tuple filter")
    p.add_argument("--md", required=True)
    _common(p)
    p.set_defaults(handler=cmd_filter)

    for name, handler in (("entail", cmd_entail), ("entail-modal", cmd_entail_modal)):
        p = subparsers.add_parser(name, help="decide entailment, print a derivation or a countermodel")
        p.add_argument("--premises", help="document with premise md blocks")
        p.add_argument("--goal", required=True, help="document whose first md block is the goal")
        _common(p)
        p.set_defaults(handler=handler)

    p = subparsers.add_parser("sweep", help="look for countermodels on domains 1..N")
    p.add_argument("--premises")
    p.add_argument("--goal", required=True)
    p.add_argument("--max-size", dest="max_size", type=int, required=True)
    p.add_argument("--algebra")
    p.set_defaults(handler=cmd_sweep)

    p = subparsers.add_parser("checkproof", help="check a derivation file")
    p.add_argument("proof", help="derivation document or JSON")
    p.set_defaults(handler=cmd_checkproof)

    p = subparsers.add_parser("translate", help="translate into classical logic")
    p.add_argument("--algebra", required=True)
    p.add_argument("--value")
    p.add_argument("--formula")
    p.add_argument("--md")
    p.add_argument("--domain", type=int)
    p.add_argument("--sigma", action="store_true", help="also print the theory Sigma")
    p.set_defaults(handler=cmd_translate)

    p = subparsers.add_parser("zeroone", help="run a 0-1 law experiment")
    p.add_argument("--config", dest="config_path", required=True)
    p.add_argument("--out", help="CSV report path")
    p.add_argument("--seed", type=int, help="overrides the seed of the config file")
    p.set_defaults(handler=cmd_zeroone)
