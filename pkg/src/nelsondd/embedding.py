"""Translation from the strong-negation language into the falsum language.

Strong negation is pushed inward until it reaches an atom, where ``~P``
becomes the fresh primed predicate ``P'``.  ``~(t = s)`` becomes
``t =' s`` and ``~E!(t)`` becomes ``E!'(t)``.  The result never contains
``~``.  Negated descriptions have no translation.
"""
from __future__ import annotations

from dataclasses import dataclass

from .semantics import INTUITIONISTIC, NELSONIAN, KripkeModel
from .syntax import (EQ, EQ_PRIMED, EX, EX_PRIMED, And, Atom, Bot, Desc, Exists,
                     Forall, Formula, Imp, Not, Or, Signature)

__all__ = ["UnsupportedConnective", "TranslationContext", "tau", "prime",
           "unprime", "pair_model", "unpair_model"]


class UnsupportedConnective(ValueError):
    pass


def prime(pred: str) -> str:
    if pred == EQ:
        return EQ_PRIMED
    if pred == EX:
        return EX_PRIMED
    return pred + "'"


def unprime(pred: str) -> str:
    if not pred.endswith("'"):
        raise ValueError(f"{pred} is not a primed predicate")
    return pred[:-1]


@dataclass(frozen=True)
class TranslationContext:
    """A source signature and the target signature with primed copies."""

    source: Signature
    target: Signature

    @classmethod
    def of(cls, source: Signature) -> "TranslationContext":
        return cls(source, source.extended())

    def primed_predicates(self) -> tuple:
        """(P', arity) for every predicate the translation may introduce."""
        out = [(prime(p), n) for p, n in self.source.predicates]
        out.append((EQ_PRIMED, 2))
        if self.source.free:
            out.append((EX_PRIMED, 1))
        return tuple(out)

    def translate(self, a: Formula) -> Formula:
        self.source.check(a)
        out = tau(a)
        self.target.check(out)
        return out


def tau(a: Formula) -> Formula:
    """Translate ``a``; raises UnsupportedConnective on ``~I x[F, G]``."""
    if isinstance(a, Atom):
        if a.pred.endswith("'"):
            raise UnsupportedConnective(f"{a.pred} already belongs to the target language")
        return a
    if isinstance(a, Bot):
        raise UnsupportedConnective("bot is not in the strong-negation language")
    if isinstance(a, And):
        return And(tau(a.left), tau(a.right))
    if isinstance(a, Or):
        return Or(tau(a.left), tau(a.right))
    if isinstance(a, Imp):
        return Imp(tau(a.left), tau(a.right))
    if isinstance(a, Forall):
        return Forall(a.var, tau(a.body))
    if isinstance(a, Exists):
        return Exists(a.var, tau(a.body))
    if isinstance(a, Desc):
        return Desc(a.var, tau(a.restrictor), tau(a.scope))
    if isinstance(a, Not):
        return _tau_neg(a.body)
    raise TypeError(f"not a formula: {a!r}")


def _tau_neg(b: Formula) -> Formula:
    """Translation of ``~b``."""
    if isinstance(b, Atom):
        if b.pred.endswith("'"):
            raise UnsupportedConnective(f"{b.pred} already belongs to the target language")
        return Atom(prime(b.pred), b.args)
    if isinstance(b, Not):
        return tau(b.body)
    if isinstance(b, Imp):
        return And(tau(b.left), _tau_neg(b.right))
    if isinstance(b, And):
        return Or(_tau_neg(b.left), _tau_neg(b.right))
    if isinstance(b, Or):
        return And(_tau_neg(b.left), _tau_neg(b.right))
    if isinstance(b, Forall):
        return Exists(b.var, _tau_neg(b.body))
    if isinstance(b, Exists):
        return Forall(b.var, _tau_neg(b.body))
    if isinstance(b, Desc):
        raise UnsupportedConnective("no translation is defined for a negated description")
    if isinstance(b, Bot):
        raise UnsupportedConnective("bot is not in the strong-negation language")
    raise TypeError(f"not a formula: {b!r}")


def pair_model(n: KripkeModel) -> KripkeModel:
    """Intuitionistic model reading each negative extension as a primed predicate.

    ``E!'`` gets no extension: the falsity of ``E!`` is not stored but
    computed from existence, and it does not persist along the order.
    """
    if n.kind != NELSONIAN:
        raise ValueError("pair_model expects a nelsonian model")
    pos = {p: dict(ext) for p, ext in n.pos.items()}
    for p, ext in n.neg.items():
        pos[prime(p)] = dict(ext)
    return n.with_(kind=INTUITIONISTIC, pos=pos, neg={})


def unpair_model(i: KripkeModel) -> KripkeModel:
    """Nelsonian model whose negative extensions are the primed predicates."""
    if i.kind != INTUITIONISTIC:
        raise ValueError("unpair_model expects an intuitionistic model")
    pos, neg = {}, {}
    for p, ext in i.pos.items():
        if p == EX_PRIMED:
            continue
        if p.endswith("'"):
            neg[unprime(p)] = dict(ext)
        else:
            pos[p] = dict(ext)
    return i.with_(kind=NELSONIAN, pos=pos, neg=neg)
