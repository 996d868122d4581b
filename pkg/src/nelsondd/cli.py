"""Command-line entry point: ``nelsondd <subcommand> ...``.

Exit codes: 0 success, 1 a checked negative result (proof rejected,
countermodel found, invalid model, failed sweep), 2 usage or input error.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import corpus as bundled
from .embedding import TranslationContext, UnsupportedConnective
from .kernel import CheckError, LogicId, Sequent, check_proof
from .proofscript import parse_script
from .search import (Bounds, find_countermodel, generate_formulas,
                     signature_for, sweep, sweep_descriptions)
from .semantics import (EvaluationError, ModelFormatError, dump_model, evaluate,
                        load_model, validate_model)
from .syntax import (LanguageError, ParseError, Signature, parse_formula, predicates,
                     to_text)

__all__ = ["main", "parse_sequent", "build_parser"]


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    p = Path(path)
    if not p.exists() and p.parts[:1] == ("corpus",) and p.suffix == ".nd":
        try:
            return bundled.corpus_text(p.stem)
        except bundled.UnknownCorpusEntry:
            pass
    try:
        return p.read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def parse_sequent(text: str, logic: LogicId) -> Sequent:
    """One assumption per line, then ``|- conclusion``; ``#`` comments."""
    language = "neg" if logic.nelson else "bot"
    hyps, concl = [], None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("|-"):
                if concl is not None:
                    raise ParseError("second conclusion line", 0, line)
                concl = parse_formula(line[2:], language=language)
            elif concl is not None:
                raise ParseError("assumption after the conclusion", 0, line)
            else:
                hyps.append(parse_formula(line, language=language))
        except (ParseError, LanguageError) as e:
            raise UsageError(f"line {lineno}: {e}") from None
    if concl is None:
        raise UsageError("missing '|- <conclusion>' line")
    return Sequent(frozenset(hyps), concl, logic)


def _emit(args, human: str, line: str):
    print(line if args.format == "lines" else human)


def _sequent_text(s: Sequent) -> str:
    hyps = ", ".join(sorted(map(to_text, s.assumptions)))
    return f"|-_{s.logic} derived: {to_text(s.conclusion)} from {{{hyps}}}"


# ------------------------------------------------------------ subcommands

def cmd_check(args) -> int:
    text = _read(args.file)
    try:
        script = parse_script(text, args.file)
    except ParseError as e:
        raise UsageError(f"{args.file}: {e}") from None
    logic = _logic(args.logic) if args.logic else script.logic
    try:
        s = check_proof(script.root, logic)
    except CheckError as e:
        _emit(args, f"rejected: {type(e).__name__}: {e.message} (at node {e.where})",
              f"check\t{args.file}\trejected\t{type(e).__name__}\t{e.where}\t{e.message}")
        return 1
    _emit(args, _sequent_text(s), f"check\t{args.file}\tok\t{logic}\t{s}")
    return 0


def cmd_translate(args) -> int:
    try:
        a = parse_formula(args.formula, language="neg")
    except (ParseError, LanguageError) as e:
        raise UsageError(str(e)) from None
    ctx = TranslationContext.of(signature_for([a], free="E!" in predicates(a)))
    try:
        out = ctx.translate(a)
    except UnsupportedConnective as e:
        raise UsageError(str(e)) from None
    if args.format == "lines":
        print(f"translate\t{to_text(a)}\t{to_text(out)}")
    else:
        print(to_text(out))
        sig = ", ".join(f"{p}/{n}" for p, n in ctx.primed_predicates())
        print(f"primed: {sig}")
    return 0


def _load_model_file(path: str):
    try:
        m = load_model(_read(path))
    except ModelFormatError as e:
        raise UsageError(f"{path}: {e}") from None
    problems = validate_model(m)
    return m, problems


def cmd_eval(args) -> int:
    m, problems = _load_model_file(args.model)
    if problems:
        raise UsageError(f"{args.model}: invalid model: {problems[0]}")
    language = "neg" if m.kind == "nelsonian" else "bot"
    try:
        a = parse_formula(args.formula, language=language)
        value = evaluate(m, args.world, a)
    except (ParseError, LanguageError, EvaluationError) as e:
        raise UsageError(str(e)) from None
    word = "true" if value else "false"
    _emit(args, word, f"eval\t{args.model}\t{args.world}\t{to_text(a)}\t{word}")
    return 0


def cmd_search(args) -> int:
    logic = _logic(args.logic_id)
    s = parse_sequent(_read(args.sequent), logic)
    forms = list(s.assumptions) + [s.conclusion]
    b = Bounds(args.worlds, args.objects, args.intensions,
               signature_for(forms, free=logic.free), logic.kind, logic.free,
               args.intension_cap)
    verdict = find_countermodel(s, b)
    if verdict.found:
        if args.format == "lines":
            print(f"search\t{args.sequent}\tcountermodel\t{verdict.world}\t"
                  f"{verdict.examined}\t{b.describe()}")
        else:
            # header lines are comments so the output loads as a model file
            print(f"# countermodel at world {verdict.world} "
                  f"(model {verdict.examined} of the enumeration, {b.describe()})")
            if verdict.assignment:
                names = verdict.model.intension_names  # k<i> names intension i
                print("# assignment " + " ".join(f"{x}={names[int(k[1:])]}"
                                                 for x, k in verdict.assignment))
            sys.stdout.write(dump_model(verdict.model))
        return 1
    _emit(args, f"no countermodel within bounds ({verdict.examined} models, {b.describe()})",
          f"search\t{args.sequent}\tnone\t-\t{verdict.examined}\t{b.describe()}")
    return 0


def cmd_validate(args) -> int:
    m, problems = _load_model_file(args.model)
    if not problems:
        _emit(args, "ok", f"validate-model\t{args.model}\tok")
        return 0
    for v in problems:
        _emit(args, str(v), f"validate-model\t{args.model}\tviolation\t{v}")
    return 1


def cmd_corpus(args) -> int:
    failures = 0
    for name in bundled.corpus_names():
        script = bundled.load_corpus(name)
        try:
            s = check_proof(script.root, script.logic)
            ok = name not in bundled.EXPECTED or s == bundled.expected_sequent(name)
            status = "ok" if ok else "unexpected-sequent"
        except CheckError as e:
            s, status = None, f"rejected {type(e).__name__} {e.where}"
        failures += status != "ok"
        _emit(args, f"{name}: {status}" + (f"  {s}" if s is not None else ""),
              f"corpus\t{name}\t{status}\t{s if s is not None else '-'}")
    if args.sweeps:
        failures += _corpus_sweeps(args)
    return 1 if failures else 0


def _corpus_sweeps(args) -> int:
    failures = 0
    sig = Signature.of({"P": 1}, {"a"})
    formulas = generate_formulas(args.depth)
    for free in (False, True):
        start = time.perf_counter()
        b = Bounds(args.worlds, args.objects, args.intensions, sig, free=free)
        rep = sweep(b, formulas)
        failures += rep.total != 0
        tag = "free" if free else "ordinary"
        _emit(args, f"pairing+heredity ({tag}): {rep.total} discrepancies over "
                    f"{rep.models} models, {rep.formulas} formulas "
                    f"[{time.perf_counter() - start:.1f}s]",
              f"sweep\tpairing+heredity\t{tag}\t{rep.total}\t{rep.models}\t{rep.formulas}")
    sig2 = Signature.of({"P": 1, "Q": 1}, {"a"})
    for kind in ("nelsonian", "intuitionistic"):
        for free in (False, True):
            b = Bounds(args.worlds, args.objects, args.intensions, sig2, kind, free)
            rep = sweep_descriptions(b)
            failures += rep.total != 0
            tag = f"{kind}{' free' if free else ''}"
            _emit(args, f"description unfolding ({tag}): {rep.total} discrepancies "
                        f"over {rep.models} models",
                  f"sweep\tdescription\t{tag}\t{rep.total}\t{rep.models}\t{rep.formulas}")
    for name in bundled.corpus_names():
        script = bundled.load_corpus(name)
        s = check_proof(script.root, script.logic)
        forms = list(s.assumptions) + [s.conclusion]
        b = Bounds(args.worlds, args.objects, args.intensions,
                   signature_for(forms, free=s.logic.free), s.logic.kind, s.logic.free)
        verdict = find_countermodel(s, b)
        failures += verdict.found
        status = f"countermodel at {verdict.world}" if verdict.found else "holds"
        _emit(args, f"soundness {name}: {status} ({verdict.examined} models)",
              f"sweep\tsoundness\t{name}\t{'countermodel' if verdict.found else 'holds'}"
              f"\t{verdict.examined}")
    return failures


def _logic(text: str) -> LogicId:
    try:
        return LogicId.parse(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


# ------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "lines"), default="human",
                        help="human-readable report or one tab-separated line per result")
    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("--worlds", type=int, default=1)
    bounds.add_argument("--objects", type=int, default=1)
    bounds.add_argument("--intensions", type=int, default=None)
    bounds.add_argument("--intension-cap", type=int, default=4,
                        help="use only constant intensions when worlds*objects exceeds this")

    p = argparse.ArgumentParser(prog="nelsondd",
                                description="Natural deduction, Kripke models and "
                                            "embeddings for N4 and Int with I.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="check a proof script")
    c.add_argument("file")
    c.add_argument("--logic", help="check under this logic instead of the script's")
    c.set_defaults(run=cmd_check)

    t = sub.add_parser("translate", parents=[common], help="translate a formula with tau")
    t.add_argument("formula")
    t.set_defaults(run=cmd_translate)

    e = sub.add_parser("eval", parents=[common], help="evaluate a closed formula at a world")
    e.add_argument("model")
    e.add_argument("world")
    e.add_argument("formula")
    e.set_defaults(run=cmd_eval)

    s = sub.add_parser("search", parents=[common, bounds], help="bounded countermodel search")
    s.add_argument("logic_id", metavar="LOGIC")
    s.add_argument("sequent")
    s.set_defaults(run=cmd_search)

    k = sub.add_parser("corpus", parents=[common, bounds],
                       help="check the bundled proofs and run property sweeps")
    k.add_argument("--depth", type=int, default=1)
    k.add_argument("--sweeps", action="store_true",
                   help="also run pairing, heredity, description and soundness sweeps")
    k.set_defaults(run=cmd_corpus)

    v = sub.add_parser("validate-model", parents=[common], help="list model violations")
    v.add_argument("model")
    v.set_defaults(run=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    for name in ("worlds", "objects", "intensions", "depth", "intension_cap"):
        value = getattr(args, name, None)
        if value is not None and value < (0 if name == "depth" else 1):
            print(f"nelsondd: error: --{name.replace('_', '-')} is out of range",
                  file=sys.stderr)
            return 2
    try:
        return args.run(args)
    except UsageError as e:
        print(f"nelsondd: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
