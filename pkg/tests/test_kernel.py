import time

import pytest

from nelsondd import corpus
from nelsondd.kernel import (CheckError, DischargeError, LanguageViolation, LogicId,
                             ParameterError, PatternMismatch, ProvisoViolation,
                             RuleNotInLogic, SubstitutionError, available_rules,
                             check_proof)
from nelsondd.proofscript import dump_script, parse_script
from nelsondd.syntax import parse_formula

# (corpus script, [(old, new), ...], expected error class)
MUTANTS = {
    "open-assumption-mentions-eigenvariable": (
        "russell-expansion-fwd",
        [("(impI F(y) -> y = x :discharge (2)", "(impI F(y) -> y = x")],
        ProvisoViolation),
    "free-generalisation-over-open-existence": (
        "n4f-neg-exists",
        [("(allI forall x. ~P(x) :discharge (1) :var x", "(allI forall x. ~P(x) :var x")],
        ProvisoViolation),
    "eigenvariable-in-conclusion": (
        "n4-neg-forall",
        [("(negallE' exists x. ~P(x)", "(negallE' ~P(x)"),
         ("(exI' exists x. ~P(x) :term x\n      (assume 1 ~P(x)))", "(assume 1 ~P(x))")],
        ProvisoViolation),
    "discharge-of-major-premise": (
        "n4-de-morgan",
        [("(assume 0 ~(P(a) & Q(a)))", "(assume 1 ~(P(a) & Q(a)))")],
        DischargeError),
    "label-discharges-nothing": (
        "n4-de-morgan",
        [(":discharge (1 2)", ":discharge (1 3)")],
        DischargeError),
    "label-reused-across-scopes": (
        "russell-expansion-fwd",
        [("(impI F(y) -> y = x :discharge (2)", "(impI F(y) -> y = x :discharge (1)"),
         ("(assume 2 F(y))", "(assume 1 F(y))")],
        DischargeError),
    "double-negation-elimination-in-int": (
        "n4-double-negation", [("(proof N4", "(proof INT")], RuleNotInLogic),
    "falsum-elimination-in-n4": (
        "int-explosion", [("(proof INT", "(proof N4")], RuleNotInLogic),
    "free-quantifier-rule-in-ordinary-logic": (
        "n4f-neg-exists", [("(proof N4F", "(proof N4")], RuleNotInLogic),
    "description-rule-without-descriptions": (
        "russell-expansion-fwd", [("(proof N4I", "(proof N4")], RuleNotInLogic),
    "identity-replacement-in-conjunction": (
        "int-eq-subst",
        [("(eqE P(b)", "(eqE P(b) & P(b)"), ("(assume 2 P(a))", "(assume 2 P(a) & P(a))")],
        ProvisoViolation),
    "identity-replacement-under-double-negation": (
        "n4-eq-subst",
        [("(eqE ~P(b)", "(eqE ~~P(b)"), ("(assume 2 ~P(a))", "(assume 2 ~~P(a))")],
        ProvisoViolation),
    "missing-eigenvariable": (
        "n4-neg-forall", [(" :discharge (1) :var x", " :discharge (1)")], ParameterError),
    "wrong-polarity-conclusion": (
        "n4-neg-implication", [("(negimpE2 ~Q(a)", "(negimpE2 Q(a)")], PatternMismatch),
    "wrong-witness-term": (
        "n4-neg-forall", [("(exI' exists x. ~P(x) :term x", "(exI' exists x. ~P(x) :term a")],
        PatternMismatch),
}

HANDWRITTEN = {
    "instance-captures-witness": ("""
        (proof N4 (allE' exists y. R(y, y) :term y
          (assume 0 forall x. exists y. R(x, y))))""", SubstitutionError),
    "free-instance-captures-witness": ("""
        (proof N4F (allE exists y. R(y, y) :term y
          (assume 0 forall x. exists y. R(x, y))
          (assume 1 E!(y))))""", SubstitutionError),
    "existential-witness-captured": ("""
        (proof INT (exI' exists x. forall y. R(x, y) :term y
          (assume 0 forall y. R(y, y))))""", SubstitutionError),
    "assumption-outside-discharge-scope": ("""
        (proof N4 (andI (P(a) -> P(a)) & P(a)
          (impI P(a) -> P(a) :discharge (1) (assume 1 P(a)))
          (assume 1 P(a))))""", DischargeError),
    "strong-negation-in-int": ("""
        (proof INT (eqE ~P(b) (assume 1 a = b) (assume 2 ~P(a))))""", LanguageViolation),
    "falsum-in-n4": ("""
        (proof N4 (impE bot (assume 1 P(a) -> bot) (assume 2 P(a))))""", LanguageViolation),
}


def mutate(name, edits):
    text = corpus.corpus_text(name)
    for old, new in edits:
        assert text.count(old) == 1, old
        text = text.replace(old, new)
    return text


def test_corpus_is_accepted_with_expected_sequents():
    start = time.perf_counter()
    for name in corpus.corpus_names():
        assert corpus.check_corpus(name) == corpus.expected_sequent(name), name
    assert time.perf_counter() - start < 1.0


def test_every_script_has_an_expectation():
    assert set(corpus.corpus_names()) == set(corpus.EXPECTED)
    assert len(corpus.corpus_names()) == 18


@pytest.mark.parametrize("mutant", sorted(MUTANTS))
def test_corpus_mutant_rejected(mutant):
    name, edits, error = MUTANTS[mutant]
    script = parse_script(mutate(name, edits))
    with pytest.raises(CheckError) as err:
        check_proof(script.root, script.logic)
    assert type(err.value) is error, err.value


@pytest.mark.parametrize("case", sorted(HANDWRITTEN))
def test_handwritten_mutant_rejected(case):
    text, error = HANDWRITTEN[case]
    script = parse_script(text)
    with pytest.raises(CheckError) as err:
        check_proof(script.root, script.logic)
    assert type(err.value) is error, err.value


def test_mutation_suite_covers_every_targeted_class():
    targets = {e for _, _, e in MUTANTS.values()} | {e for _, e in HANDWRITTEN.values()}
    assert {ProvisoViolation, SubstitutionError, DischargeError, RuleNotInLogic} <= targets
    assert len(MUTANTS) + len(HANDWRITTEN) >= 12


def test_rule_sets():
    n4, n4i, n4f = (available_rules(LogicId.parse(t)) for t in ("N4", "N4I", "N4F"))
    int_, intfi = available_rules(LogicId.parse("INT")), available_rules(LogicId.parse("INTFI"))
    assert n4 < n4i and "negnegE" in n4 and "negnegE" not in int_
    assert "botE" in int_ and "botE" not in n4
    assert "allI'" in n4 and "allI" not in n4 and "allI" in n4f
    assert "negII1" in n4i and "negII1'" not in n4i and "IE1'" in n4i
    assert "II" in intfi and "negIE" not in intfi


def test_logic_ids_round_trip():
    for text in ("N4", "N4F", "N4I", "N4FI", "INT", "INTF", "INTI", "INTFI"):
        assert str(LogicId.parse(text)) == text
    with pytest.raises(ValueError):
        LogicId.parse("S4")


def test_script_round_trip():
    for name in corpus.corpus_names():
        script = corpus.load_corpus(name)
        again = parse_script(dump_script(script))
        assert again.root == script.root and again.logic == script.logic


def test_error_reports_the_failing_node():
    script = parse_script(mutate("n4-neg-implication",
                                 [("(negimpE2 ~Q(a)", "(negimpE2 Q(a)")]))
    with pytest.raises(PatternMismatch) as err:
        check_proof(script.root, script.logic)
    assert err.value.where == "root.1"


def test_single_assumption_is_a_proof():
    script = parse_script("(proof N4 (assume 1 ~P(a)))")
    s = check_proof(script.root, script.logic)
    assert s.assumptions == {parse_formula("~P(a)")} and s.conclusion == parse_formula("~P(a)")
