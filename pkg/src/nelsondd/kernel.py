"""Natural-deduction proof trees and the rule checker.

Eight logics: N4 or Int, ordinary or negative free, with or without the
description quantifier.  Every node is re-derived from its premises with
exact pattern matching; eigenvariables and witness terms are given by the
proof, never inferred.

Discharge works by label.  A node lists the labels it discharges; within
each premise subtree the rule states which assumption formulas may be
closed, and every leaf carrying a listed label must be one of them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .syntax import (
    EQ, EX, And, Atom, Bot, CaptureError, Desc, Exists, Forall, Formula, Imp,
    Not, Or, Term, Var, exists_pred, free_vars, is_free_for, substitute,
    subformulas, term_vars, to_text,
)

__all__ = [
    "LogicId", "LOGICS", "Assumption", "Inference", "ProofNode", "Sequent",
    "CheckError", "RuleNotInLogic", "PatternMismatch", "ProvisoViolation",
    "DischargeError", "SubstitutionError", "ParameterError", "LanguageViolation",
    "ALL_RULES", "available_rules", "check_proof", "rule_parameters",
]


@dataclass(frozen=True)
class LogicId:
    base: str           # "N4" or "INT"
    free: bool = False
    with_i: bool = False

    def __post_init__(self):
        if self.base not in ("N4", "INT"):
            raise ValueError(f"unknown base logic {self.base!r}")

    @classmethod
    def parse(cls, text: str) -> "LogicId":
        try:
            return LOGICS[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown logic {text!r}; expected one of "
                             f"{', '.join(LOGICS)}") from None

    @property
    def kind(self) -> str:
        return "nelsonian" if self.base == "N4" else "intuitionistic"

    @property
    def nelson(self) -> bool:
        return self.base == "N4"

    def __str__(self):
        return self.base + ("F" if self.free else "") + ("I" if self.with_i else "")


LOGICS = {str(l): l for l in (LogicId(b, f, i) for b in ("N4", "INT")
                              for f in (False, True) for i in (False, True))}


@dataclass(frozen=True)
class Assumption:
    label: int
    formula: Formula


@dataclass(frozen=True)
class Inference:
    rule: str
    conclusion: Formula
    premises: tuple = ()
    discharges: tuple = ()
    var: Optional[str] = None
    term: Optional[Term] = None


ProofNode = (Assumption, Inference)


@dataclass(frozen=True)
class Sequent:
    assumptions: frozenset
    conclusion: Formula
    logic: Optional[LogicId] = None

    def __str__(self):
        lhs = ", ".join(sorted(map(to_text, self.assumptions)))
        return f"{lhs} |- {to_text(self.conclusion)}".lstrip()


class CheckError(Exception):
    def __init__(self, message: str, path=()):
        self.path = tuple(path)
        self.message = message
        super().__init__(f"{message} [at node {self.where}]")

    @property
    def where(self) -> str:
        return "root" + "".join(f".{i}" for i in self.path)


class RuleNotInLogic(CheckError):
    pass


class PatternMismatch(CheckError):
    pass


class ProvisoViolation(CheckError):
    pass


class DischargeError(CheckError):
    pass


class SubstitutionError(CheckError):
    pass


class ParameterError(CheckError):
    pass


class LanguageViolation(CheckError):
    pass


# ---------------------------------------------------------------- catalog

_SHARED = {"orI1", "orI2", "orE", "impI", "impE", "andI", "andE1", "andE2", "eqE"}
_NEGATED = {"negnegI", "negnegE", "negimpI", "negimpE1", "negimpE2", "negorI",
            "negorE1", "negorE2", "negandI1", "negandI2", "negandE"}
_QUANT = {"allI", "allE", "exI", "exE"}
_NEG_QUANT = {"negallI", "negallE", "negexI", "negexE"}
_IOTA = {"II", "IE1", "IE2"}
_NEG_IOTA = {"negIE", "negII1", "negII2", "negII3"}
_UNPRIMED_ONLY = {"negII1", "negII2"}


def _primed(rules):
    return {r if r in _UNPRIMED_ONLY else r + "'" for r in rules}


ALL_RULES = frozenset(
    _SHARED | _NEGATED | _QUANT | _NEG_QUANT | _primed(_QUANT | _NEG_QUANT)
    | {"eqI", "eqI'", "PD", "negPD", "botE"}
    | _IOTA | _NEG_IOTA | _primed(_IOTA | _NEG_IOTA))


def available_rules(logic: LogicId) -> frozenset:
    """The rule names admissible in ``logic``."""
    rules = set(_SHARED)
    quant, iota = set(_QUANT), set(_IOTA)
    if logic.nelson:
        rules |= _NEGATED
        quant |= _NEG_QUANT
        iota |= _NEG_IOTA
    else:
        rules.add("botE")
    if logic.free:
        rules |= quant | {"eqI", "PD"}
        if logic.nelson:
            rules.add("negPD")
    else:
        rules |= _primed(quant) | {"eqI'"}
        iota = _primed(iota)
    if logic.with_i:
        rules |= iota
    return frozenset(rules)


_NEEDS_VAR = {"allI", "negallE", "exE", "negexI", "II", "negIE", "IE1",
              "negII1", "negII2"}
_NEEDS_TERM = {"allE", "negallI", "exI", "negexE", "II", "negIE"}


def rule_parameters(rule: str) -> tuple:
    """(needs eigenvariable, needs witness term) for ``rule``."""
    base = rule.rstrip("'")
    return base in _NEEDS_VAR, base in _NEEDS_TERM


# ---------------------------------------------------------------- checking

class _Rule:
    """What a rule application asks of the generic discharge machinery."""

    def __init__(self):
        self.closable = {}      # premise index -> formulas it may discharge
        self.fresh = []         # (premise index, variable, rule text)

    def close(self, i, *formulas):
        self.closable[i] = [f for f in formulas if f is not None]

    def eigen(self, i, y, text):
        self.fresh.append((i, y, text))


class _Checker:
    def __init__(self, logic: LogicId):
        self.logic = logic
        self.rules = available_rules(logic)
        self.discharged_by = {}

    # helpers -------------------------------------------------------------
    def mismatch(self, path, msg):
        return PatternMismatch(msg, path)

    def subst(self, a, x, t, path):
        try:
            return substitute(a, x, t)
        except CaptureError as e:
            raise SubstitutionError(str(e), path) from None

    def free_for(self, t, x, a, path, where):
        if not is_free_for(t, x, a):
            raise SubstitutionError(f"{t} is not free for {x} in {where}", path)

    def language(self, a, path):
        for sub in subformulas(a):
            if isinstance(sub, Bot) and self.logic.nelson:
                raise LanguageViolation("bot in an N4-family proof", path)
            if isinstance(sub, Not) and not self.logic.nelson:
                raise LanguageViolation("~ in an Int-family proof", path)
            if isinstance(sub, Desc) and not self.logic.with_i:
                raise LanguageViolation(f"description in {self.logic}", path)
            if isinstance(sub, Atom) and sub.pred == EX and not self.logic.free:
                raise LanguageViolation(f"E! in non-free {self.logic}", path)
            if isinstance(sub, Atom) and sub.pred.endswith("'"):
                raise LanguageViolation(f"primed predicate {sub.pred} in a proof", path)

    # traversal -----------------------------------------------------------
    def check(self, node, path=()):
        """Open leaves of ``node`` as a list of (label, formula)."""
        if isinstance(node, Assumption):
            self.language(node.formula, path)
            return [(node.label, node.formula)]
        if not isinstance(node, Inference):
            raise PatternMismatch(f"not a proof node: {node!r}", path)
        rule = node.rule
        if rule not in ALL_RULES:
            raise RuleNotInLogic(f"unknown rule {rule}", path)
        if rule not in self.rules:
            raise RuleNotInLogic(f"rule {rule} is not a rule of {self.logic}", path)
        opens = [self.check(p, path + (i,)) for i, p in enumerate(node.premises)]
        self.language(node.conclusion, path)
        needs_var, needs_term = rule_parameters(rule)
        if needs_var != (node.var is not None):
            raise ParameterError(
                f"{rule} {'requires' if needs_var else 'takes no'} eigenvariable", path)
        if needs_term != (node.term is not None):
            raise ParameterError(
                f"{rule} {'requires' if needs_term else 'takes no'} witness term", path)
        arity = _ARITY[rule.rstrip("'")]
        if callable(arity):
            arity = arity(self.logic)
        if len(node.premises) != arity:
            raise PatternMismatch(
                f"{rule} takes {arity} premise(s), got {len(node.premises)}", path)
        spec = _Rule()
        prem = [p.conclusion if isinstance(p, Inference) else p.formula
                for p in node.premises]
        handler = getattr(self, "r_" + rule.rstrip("'"))
        handler(node, prem, spec, path)
        return self.discharge(node, opens, spec, path)

    def discharge(self, node, opens, spec, path):
        used = set()
        remaining = []
        for i, leaves in enumerate(opens):
            closable = spec.closable.get(i, [])
            rest = []
            for label, f in leaves:
                if label in node.discharges:
                    if f not in closable:
                        raise DischargeError(
                            f"label {label} marks {to_text(f)}, which {node.rule} "
                            f"cannot discharge in premise {i}", path)
                    used.add(label)
                else:
                    rest.append((label, f))
            remaining.append(rest)
        for label in node.discharges:
            if label not in used:
                raise DischargeError(f"label {label} discharges no assumption", path)
            if label in self.discharged_by:
                raise DischargeError(f"label {label} is discharged twice", path)
            self.discharged_by[label] = path
        for i, y, text in spec.fresh:
            for label, f in remaining[i]:
                if y in free_vars(f):
                    raise ProvisoViolation(
                        f"{text}: eigenvariable {y} free in undischarged "
                        f"assumption {to_text(f)}", path)
        return [leaf for rest in remaining for leaf in rest]

    # rule handlers -------------------------------------------------------
    # Each receives the node, the premise conclusions, the discharge spec
    # and the node path, and raises on any mismatch.

    def expect(self, got, want, path, what="conclusion"):
        if got != want:
            raise PatternMismatch(
                f"{what} should be {to_text(want)}, found {to_text(got)}", path)

    def shape(self, a, cls, path, what):
        if not isinstance(a, cls):
            raise PatternMismatch(f"{what} must be a {cls.__name__}: {to_text(a)}", path)
        return a

    def negated(self, a, cls, path, what):
        if not (isinstance(a, Not) and isinstance(a.body, cls)):
            raise PatternMismatch(f"{what} must be a negated {cls.__name__}: {to_text(a)}", path)
        return a.body

    def r_andI(self, n, p, s, path):
        self.expect(n.conclusion, And(p[0], p[1]), path)

    def r_andE1(self, n, p, s, path):
        a = self.shape(p[0], And, path, "premise")
        self.expect(n.conclusion, a.left, path)

    def r_andE2(self, n, p, s, path):
        a = self.shape(p[0], And, path, "premise")
        self.expect(n.conclusion, a.right, path)

    def r_orI1(self, n, p, s, path):
        c = self.shape(n.conclusion, Or, path, "conclusion")
        self.expect(p[0], c.left, path, "premise")

    def r_orI2(self, n, p, s, path):
        c = self.shape(n.conclusion, Or, path, "conclusion")
        self.expect(p[0], c.right, path, "premise")

    def r_orE(self, n, p, s, path):
        a = self.shape(p[0], Or, path, "major premise")
        self.expect(p[1], n.conclusion, path, "first minor premise")
        self.expect(p[2], n.conclusion, path, "second minor premise")
        s.close(1, a.left)
        s.close(2, a.right)

    def r_impI(self, n, p, s, path):
        c = self.shape(n.conclusion, Imp, path, "conclusion")
        self.expect(p[0], c.right, path, "premise")
        s.close(0, c.left)

    def r_impE(self, n, p, s, path):
        a = self.shape(p[0], Imp, path, "major premise")
        self.expect(p[1], a.left, path, "minor premise")
        self.expect(n.conclusion, a.right, path)

    def r_botE(self, n, p, s, path):
        self.shape(p[0], Bot, path, "premise")

    def r_negnegI(self, n, p, s, path):
        self.expect(n.conclusion, Not(Not(p[0])), path)

    def r_negnegE(self, n, p, s, path):
        inner = self.negated(p[0], Not, path, "premise")
        self.expect(n.conclusion, inner.body, path)

    def r_negimpI(self, n, p, s, path):
        b = self.shape(p[1], Not, path, "second premise")
        self.expect(n.conclusion, Not(Imp(p[0], b.body)), path)

    def r_negimpE1(self, n, p, s, path):
        a = self.negated(p[0], Imp, path, "premise")
        self.expect(n.conclusion, a.left, path)

    def r_negimpE2(self, n, p, s, path):
        a = self.negated(p[0], Imp, path, "premise")
        self.expect(n.conclusion, Not(a.right), path)

    def r_negorI(self, n, p, s, path):
        a = self.shape(p[0], Not, path, "first premise")
        b = self.shape(p[1], Not, path, "second premise")
        self.expect(n.conclusion, Not(Or(a.body, b.body)), path)

    def r_negorE1(self, n, p, s, path):
        a = self.negated(p[0], Or, path, "premise")
        self.expect(n.conclusion, Not(a.left), path)

    def r_negorE2(self, n, p, s, path):
        a = self.negated(p[0], Or, path, "premise")
        self.expect(n.conclusion, Not(a.right), path)

    def r_negandI1(self, n, p, s, path):
        c = self.negated(n.conclusion, And, path, "conclusion")
        self.expect(p[0], Not(c.left), path, "premise")

    def r_negandI2(self, n, p, s, path):
        c = self.negated(n.conclusion, And, path, "conclusion")
        self.expect(p[0], Not(c.right), path, "premise")

    def r_negandE(self, n, p, s, path):
        a = self.negated(p[0], And, path, "major premise")
        self.expect(p[1], n.conclusion, path, "first minor premise")
        self.expect(p[2], n.conclusion, path, "second minor premise")
        s.close(1, Not(a.left))
        s.close(2, Not(a.right))

    # quantifiers

    def existence(self, t, path, got, what="existence premise"):
        self.expect(got, exists_pred(t), path, what)

    def generality(self, y, x, body, path, rule):
        if y != x and y in free_vars(body):
            raise ProvisoViolation(
                f"{rule}: eigenvariable {y} is neither {x} nor absent from the "
                f"quantified formula", path)

    def r_allI(self, n, p, s, path):
        c = self.shape(n.conclusion, Forall, path, "conclusion")
        y = n.var
        self.expect(p[0], self.subst(c.body, c.var, Var(y), path), path, "premise")
        self.generality(y, c.var, c.body, path, n.rule)
        s.close(0, exists_pred(Var(y)) if self.logic.free else None)
        s.eigen(0, y, n.rule)

    def r_allE(self, n, p, s, path):
        a = self.shape(p[0], Forall, path, "major premise")
        self.free_for(n.term, a.var, a.body, path, to_text(a.body))
        self.expect(n.conclusion, substitute(a.body, a.var, n.term), path)
        if self.logic.free:
            self.existence(n.term, path, p[1])

    def r_negallI(self, n, p, s, path):
        c = self.negated(n.conclusion, Forall, path, "conclusion")
        self.free_for(n.term, c.var, c.body, path, to_text(c.body))
        self.expect(p[0], Not(substitute(c.body, c.var, n.term)), path, "premise")
        if self.logic.free:
            self.existence(n.term, path, p[1])

    def r_negallE(self, n, p, s, path):
        a = self.negated(p[0], Forall, path, "major premise")
        self._elim(n, p, s, path, a, Not(self.subst(a.body, a.var, Var(n.var), path)))

    def r_exI(self, n, p, s, path):
        c = self.shape(n.conclusion, Exists, path, "conclusion")
        self.free_for(n.term, c.var, c.body, path, to_text(c.body))
        self.expect(p[0], substitute(c.body, c.var, n.term), path, "premise")
        if self.logic.free:
            self.existence(n.term, path, p[1])

    def r_exE(self, n, p, s, path):
        a = self.shape(p[0], Exists, path, "major premise")
        self._elim(n, p, s, path, a, self.subst(a.body, a.var, Var(n.var), path))

    def _elim(self, n, p, s, path, quant, instance):
        y = n.var
        self.expect(p[1], n.conclusion, path, "minor premise")
        if y in free_vars(n.conclusion):
            raise ProvisoViolation(f"{n.rule}: eigenvariable {y} free in conclusion", path)
        self.generality(y, quant.var, quant.body, path, n.rule)
        s.close(1, instance, exists_pred(Var(y)) if self.logic.free else None)
        s.eigen(1, y, n.rule)

    def r_negexI(self, n, p, s, path):
        c = self.negated(n.conclusion, Exists, path, "conclusion")
        y = n.var
        self.expect(p[0], Not(self.subst(c.body, c.var, Var(y), path)), path, "premise")
        self.generality(y, c.var, c.body, path, n.rule)
        s.close(0, exists_pred(Var(y)) if self.logic.free else None)
        s.eigen(0, y, n.rule)

    def r_negexE(self, n, p, s, path):
        a = self.negated(p[0], Exists, path, "major premise")
        self.free_for(n.term, a.var, a.body, path, to_text(a.body))
        self.expect(n.conclusion, Not(substitute(a.body, a.var, n.term)), path)
        if self.logic.free:
            self.existence(n.term, path, p[1])

    # identity and existence

    def r_eqI(self, n, p, s, path):
        c = self.shape(n.conclusion, Atom, path, "conclusion")
        if c.pred != EQ or c.args[0] != c.args[1]:
            raise PatternMismatch(f"conclusion must be t = t: {to_text(c)}", path)
        if self.logic.free:
            self.existence(c.args[0], path, p[0])

    def r_eqE(self, n, p, s, path):
        e = self.shape(p[0], Atom, path, "identity premise")
        if e.pred != EQ:
            raise PatternMismatch(f"first premise must be an identity: {to_text(e)}", path)
        t1, t2 = e.args
        src, dst = p[1], n.conclusion
        allowed = "a literal" if self.logic.nelson else "an atomic formula"
        for f in (src, dst):
            ok = isinstance(f, Atom) or (
                self.logic.nelson and isinstance(f, Not) and isinstance(f.body, Atom))
            if not ok:
                raise ProvisoViolation(f"=E: {to_text(f)} is not {allowed}", path)
        if isinstance(src, Not) != isinstance(dst, Not):
            raise PatternMismatch("=E changes polarity", path)
        a, b = (src.body, dst.body) if isinstance(src, Not) else (src, dst)
        if a.pred != b.pred or len(a.args) != len(b.args):
            raise PatternMismatch(f"=E: {to_text(dst)} is not {to_text(src)} "
                                  f"with {t1} replaced by {t2}", path)
        for u, v in zip(a.args, b.args):
            if u != v and not (u == t1 and v == t2):
                raise PatternMismatch(f"=E: {to_text(dst)} is not {to_text(src)} "
                                      f"with {t1} replaced by {t2}", path)

    def _pd(self, n, atom, path):
        if atom.pred == EX:
            raise PatternMismatch("PD premise must not be an existence atom", path)
        c = self.shape(n.conclusion, Atom, path, "conclusion")
        if c.pred != EX or c.args[0] not in atom.args:
            raise PatternMismatch(f"conclusion must be E!(t) for an argument t of "
                                  f"{to_text(atom)}", path)

    def r_PD(self, n, p, s, path):
        self._pd(n, self.shape(p[0], Atom, path, "premise"), path)

    def r_negPD(self, n, p, s, path):
        self._pd(n, self.negated(p[0], Atom, path, "premise"), path)

    # descriptions

    def _iota_witness(self, d, t, y, path, rule):
        self.free_for(t, d.var, d.restrictor, path, "the restrictor")
        self.free_for(t, d.var, d.scope, path, "the scope")
        if y == d.var:
            raise ProvisoViolation(f"{rule}: {y} must differ from {d.var}", path)
        if y in term_vars(t):
            raise ProvisoViolation(f"{rule}: {y} is free in the witness {t}", path)

    def r_II(self, n, p, s, path):
        d = self.shape(n.conclusion, Desc, path, "conclusion")
        t, y, x = n.term, n.var, d.var
        self._iota_witness(d, t, y, path, n.rule)
        self.expect(p[0], substitute(d.restrictor, x, t), path, "first premise")
        self.expect(p[1], substitute(d.scope, x, t), path, "second premise")
        last = len(p) - 1
        if self.logic.free:
            self.existence(t, path, p[2])
        self.expect(p[last], Atom(EQ, (Var(y), t)), path, "identity premise")
        f_y = self.subst(d.restrictor, x, Var(y), path)
        s.close(last, f_y, exists_pred(Var(y)) if self.logic.free else None)
        s.eigen(last, y, n.rule)

    def r_negIE(self, n, p, s, path):
        d = self.negated(p[0], Desc, path, "major premise")
        t, y, x = n.term, n.var, d.var
        self._iota_witness(d, t, y, path, n.rule)
        for i in (1, 2, 3):
            self.expect(p[i], n.conclusion, path, f"minor premise {i}")
        s.close(1, Not(substitute(d.restrictor, x, t)))
        s.close(2, Not(substitute(d.scope, x, t)))
        s.close(3, self.subst(d.restrictor, x, Var(y), path),
                exists_pred(Var(y)) if self.logic.free else None,
                Not(Atom(EQ, (Var(y), t))))
        s.eigen(3, y, n.rule)

    def _description_generality(self, d, y, path, rule):
        if y != d.var and (y in free_vars(d.restrictor) or y in free_vars(d.scope)):
            raise ProvisoViolation(
                f"{rule}: {y} is neither {d.var} nor absent from F and G", path)

    def r_IE1(self, n, p, s, path):
        d = self.shape(p[0], Desc, path, "major premise")
        y, x = n.var, d.var
        self.expect(p[1], n.conclusion, path, "minor premise")
        if y in free_vars(n.conclusion):
            raise ProvisoViolation(f"{n.rule}: eigenvariable {y} free in conclusion", path)
        self._description_generality(d, y, path, n.rule)
        s.close(1, self.subst(d.restrictor, x, Var(y), path),
                self.subst(d.scope, x, Var(y), path),
                exists_pred(Var(y)) if self.logic.free else None)
        s.eigen(1, y, n.rule)

    def _neg_iota_intro(self, n, p, path, part):
        d = self.negated(n.conclusion, Desc, path, "conclusion")
        y = n.var
        self._description_generality(d, y, path, n.rule)
        body = d.restrictor if part == 1 else d.scope
        self.expect(p[0], Not(self.subst(body, d.var, Var(y), path)), path, "premise")

    def r_negII1(self, n, p, s, path):
        self._neg_iota_intro(n, p, path, 1)

    def r_negII2(self, n, p, s, path):
        self._neg_iota_intro(n, p, path, 2)

    def _two_instances(self, d, t1, t2, p, path):
        for t in (t1, t2):
            self.free_for(t, d.var, d.restrictor, path, "the restrictor")
        k = 1
        if self.logic.free:
            self.existence(t1, path, p[1], "first existence premise")
            self.existence(t2, path, p[2], "second existence premise")
            k = 3
        self.expect(p[k], substitute(d.restrictor, d.var, t1), path, "first instance")
        self.expect(p[k + 1], substitute(d.restrictor, d.var, t2), path, "second instance")

    def r_IE2(self, n, p, s, path):
        d = self.shape(p[0], Desc, path, "major premise")
        c = self.shape(n.conclusion, Atom, path, "conclusion")
        if c.pred != EQ:
            raise PatternMismatch(f"conclusion must be an identity: {to_text(c)}", path)
        self._two_instances(d, c.args[0], c.args[1], p, path)

    def r_negII3(self, n, p, s, path):
        d = self.negated(n.conclusion, Desc, path, "conclusion")
        e = self.negated(p[0], Atom, path, "first premise")
        if e.pred != EQ:
            raise PatternMismatch(f"first premise must be a negated identity", path)
        self._two_instances(d, e.args[0], e.args[1], p, path)


def _free_arity(free_n, ordinary_n):
    return lambda logic: free_n if logic.free else ordinary_n


_ARITY = {
    "andI": 2, "andE1": 1, "andE2": 1, "orI1": 1, "orI2": 1, "orE": 3,
    "impI": 1, "impE": 2, "botE": 1,
    "negnegI": 1, "negnegE": 1, "negimpI": 2, "negimpE1": 1, "negimpE2": 1,
    "negorI": 2, "negorE1": 1, "negorE2": 1, "negandI1": 1, "negandI2": 1,
    "negandE": 3,
    "allI": 1, "allE": _free_arity(2, 1), "negallI": _free_arity(2, 1),
    "negallE": 2, "exI": _free_arity(2, 1), "exE": 2, "negexI": 1,
    "negexE": _free_arity(2, 1),
    "eqI": _free_arity(1, 0), "eqE": 2, "PD": 1, "negPD": 1,
    "II": _free_arity(4, 3), "negIE": 4, "IE1": 2, "negII1": 1, "negII2": 1,
    "IE2": _free_arity(5, 3), "negII3": _free_arity(5, 3),
}


def check_proof(root, logic: LogicId) -> Sequent:
    """Check ``root`` in ``logic``; return its sequent or raise CheckError."""
    checker = _Checker(logic)
    leaves = checker.check(root)
    for label, f in leaves:
        if label in checker.discharged_by:
            raise DischargeError(
                f"assumption {to_text(f)} labelled {label} lies outside the "
                f"scope of its discharging node "
                f"{'root' + ''.join(f'.{i}' for i in checker.discharged_by[label])}")
    conclusion = root.formula if isinstance(root, Assumption) else root.conclusion
    return Sequent(frozenset(f for _, f in leaves), conclusion, logic)
