"""Bundled proof scripts and the sequents they are expected to derive."""
from __future__ import annotations

from importlib import resources

from ..kernel import LogicId, Sequent, check_proof
from ..proofscript import ProofScript, parse_script
from ..syntax import parse_formula

__all__ = ["UnknownCorpusEntry", "corpus_names", "corpus_text", "load_corpus",
           "expected_sequent", "check_corpus", "EXPECTED"]

_DESC = "I x[F(x), G(x)]"
_UNFOLDED = "forall x. ~F(x) | (exists y. F(y) & ~y = x) | ~G(x)"
_RUSSELL = "exists x. F(x) & (forall y. F(y) -> y = x) & G(x)"

# name -> (logic, open assumptions, conclusion)
EXPECTED = {
    "n4-negI-unfold-1": ("N4I", ("~" + _DESC,), _UNFOLDED),
    "n4-negI-unfold-2": ("N4I", (_UNFOLDED,), "~" + _DESC),
    "n4f-negI-unfold-1": ("N4FI", ("~" + _DESC,), _UNFOLDED),
    "n4f-negI-unfold-2": ("N4FI", ("E!(y)", _UNFOLDED), "~" + _DESC),
    "russell-expansion-fwd": ("N4I", (_DESC,), _RUSSELL),
    "russell-expansion-bwd": ("N4I", (_RUSSELL,), _DESC),
    "russell-expansion-fwd-free": ("N4FI", (_DESC,), _RUSSELL),
    "russell-expansion-bwd-free": ("N4FI", (_RUSSELL,), _DESC),
    "int-russell-expansion-fwd": ("INTI", (_DESC,), _RUSSELL),
    "int-explosion": ("INT", ("P(a)", "P(a) -> bot"), "Q(a)"),
    "int-eq-subst": ("INT", ("a = b", "P(a)"), "P(b)"),
    "n4-eq-subst": ("N4", ("a = b", "~P(a)"), "~P(b)"),
    "n4-neg-forall": ("N4", ("~(forall x. P(x))",), "exists x. ~P(x)"),
    "n4f-neg-exists": ("N4F", ("~(exists x. P(x))",), "forall x. ~P(x)"),
    "n4f-pd": ("N4F", ("~P(a)",), "a = a"),
    "n4-double-negation": ("N4", (), "~~P(a) -> P(a)"),
    "n4-de-morgan": ("N4", ("~(P(a) & Q(a))",), "~P(a) | ~Q(a)"),
    "n4-neg-implication": ("N4", ("~(P(a) -> Q(a))",), "P(a) & ~Q(a)"),
}


class UnknownCorpusEntry(KeyError):
    pass


def corpus_names() -> list[str]:
    files = resources.files(__name__).iterdir()
    return sorted(f.name[:-3] for f in files if f.name.endswith(".nd"))


def corpus_text(name: str) -> str:
    f = resources.files(__name__).joinpath(name + ".nd")
    if not f.is_file():
        raise UnknownCorpusEntry(name)
    return f.read_text(encoding="utf-8")


def load_corpus(name: str) -> ProofScript:
    return parse_script(corpus_text(name), name)


def expected_sequent(name: str) -> Sequent:
    if name not in EXPECTED:
        raise UnknownCorpusEntry(name)
    logic, hyps, concl = EXPECTED[name]
    return Sequent(frozenset(parse_formula(h) for h in hyps),
                   parse_formula(concl), LogicId.parse(logic))


def check_corpus(name: str) -> Sequent:
    script = load_corpus(name)
    return check_proof(script.root, script.logic)
