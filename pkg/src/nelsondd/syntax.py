"""Terms, formulas, parsing, printing and substitution.

One abstract syntax serves both object languages: the strong-negation
language (``~``) and the falsum language (``bot``), each optionally with the
binary description quantifier ``I x[F, G]``.  Identity, existence and the
primed copies produced by the embedding are all :class:`Atom` nodes with a
reserved predicate name (``=``, ``E!``, ``='``, ``E!'``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional, Union

__all__ = [
    "Var", "Const", "Term", "Atom", "Bot", "Not", "And", "Or", "Imp",
    "Forall", "Exists", "Desc", "Formula", "Signature",
    "ParseError", "CaptureError", "LanguageError",
    "EQ", "EX", "EQ_PRIMED", "EX_PRIMED",
    "eq", "exists_pred", "parse_formula", "parse_formula_prefix", "parse_term", "to_text",
    "free_vars", "term_vars", "constants", "predicates", "is_free_for",
    "substitute", "is_literal", "is_atomic", "check_language", "fresh_var",
    "russell_unfolding", "negated_description_unfolding", "subformulas",
    "is_variable_name", "is_injected_constant",
]

EQ = "="
EX = "E!"
EQ_PRIMED = "='"
EX_PRIMED = "E!'"
BUILTINS = frozenset({EQ, EX, EQ_PRIMED, EX_PRIMED})

_INJECTED = re.compile(r"k\d+$")


def is_variable_name(name: str) -> bool:
    return name[:1] in "uvwxyz"


def is_injected_constant(name: str) -> bool:
    return _INJECTED.match(name) is not None


class ParseError(ValueError):
    def __init__(self, message: str, pos: int = 0, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} (at position {pos})")


class CaptureError(ValueError):
    """Raised when a substitution would capture a variable of the term."""

    def __init__(self, term, var: str, binder: "Formula"):
        self.term = term
        self.var = var
        self.binder = binder
        super().__init__(
            f"{term} is not free for {var}: captured by binder "
            f"{_binder_head(binder)}")


class LanguageError(ValueError):
    pass


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("empty variable name")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("empty constant name")

    def __str__(self):
        return self.name


Term = Union[Var, Const]


# ------------------------------------------------------------- formulas
#
# Hashes are cached on first use: formulas are used as dictionary keys by
# the evaluator and hashing a deep tree on every lookup is quadratic.

class _Node:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


def _cached_hash(cls):
    fields_ = tuple(f.name for f in cls.__dataclass_fields__.values()
                    if f.name != "_h")

    def __hash__(self):
        h = self._h
        if h is None:
            h = hash((cls.__name__,) + tuple(getattr(self, n) for n in fields_))
            object.__setattr__(self, "_h", h)
        return h

    cls.__hash__ = __hash__
    return cls


_nohash = field(default=None, init=False, repr=False, compare=False)


@_cached_hash
@dataclass(frozen=True, eq=True)
class Atom(_Node):
    pred: str
    args: tuple
    _h: Optional[int] = _nohash

    @property
    def arity(self) -> int:
        return len(self.args)


@_cached_hash
@dataclass(frozen=True, eq=True)
class Bot(_Node):
    _h: Optional[int] = _nohash


@_cached_hash
@dataclass(frozen=True, eq=True)
class Not(_Node):
    body: "Formula"
    _h: Optional[int] = _nohash


@_cached_hash
@dataclass(frozen=True, eq=True)
class And(_Node):
    left: "Formula"
    right: "Formula"
    _h: Optional[int] = _nohash


@_cached_hash
@dataclass(frozen=True, eq=True)
class Or(_Node):
    left: "Formula"
    right: "Formula"
    _h: Optional[int] = _nohash


@_cached_hash
@dataclass(frozen=True, eq=True)
class Imp(_Node):
    left: "Formula"
    right: "Formula"
    _h: Optional[int] = _nohash


@_cached_hash
@dataclass(frozen=True, eq=True)
class Forall(_Node):
    var: str
    body: "Formula"
    _h: Optional[int] = _nohash


@_cached_hash
@dataclass(frozen=True, eq=True)
class Exists(_Node):
    var: str
    body: "Formula"
    _h: Optional[int] = _nohash


@_cached_hash
@dataclass(frozen=True, eq=True)
class Desc(_Node):
    """``I x[F, G]``: the F is G.  ``var`` binds in both arguments."""

    var: str
    restrictor: "Formula"
    scope: "Formula"
    _h: Optional[int] = _nohash


Formula = Union[Atom, Bot, Not, And, Or, Imp, Forall, Exists, Desc]
Binary = (And, Or, Imp)
Quant = (Forall, Exists)


def eq(t1: Term, t2: Term) -> Atom:
    return Atom(EQ, (t1, t2))


def exists_pred(t: Term) -> Atom:
    return Atom(EX, (t,))


def is_atomic(a: Formula) -> bool:
    return isinstance(a, Atom)


def is_literal(a: Formula) -> bool:
    return isinstance(a, Atom) or (isinstance(a, Not) and isinstance(a.body, Atom))


def subformulas(a: Formula) -> Iterator[Formula]:
    yield a
    if isinstance(a, Not):
        yield from subformulas(a.body)
    elif isinstance(a, Binary):
        yield from subformulas(a.left)
        yield from subformulas(a.right)
    elif isinstance(a, Quant):
        yield from subformulas(a.body)
    elif isinstance(a, Desc):
        yield from subformulas(a.restrictor)
        yield from subformulas(a.scope)


# ------------------------------------------------------------ signature

@dataclass(frozen=True)
class Signature:
    """Declared predicates (name -> arity) and constants.

    ``=`` and ``E!`` are built in.  ``free`` admits ``E!``; ``primed`` admits
    ``P'`` for every declared ``P`` (and ``='``, ``E!'``).
    """

    predicates: tuple = ()
    constants: frozenset = frozenset()
    free: bool = False
    primed: bool = False

    def __post_init__(self):
        preds = dict(self.predicates)
        for name, arity in preds.items():
            if name in BUILTINS or name.endswith("'"):
                raise ValueError(f"predicate {name!r} cannot be declared")
            if not name[:1].isupper() or name == "I":
                raise ValueError(f"bad predicate name {name!r}")
            if arity < 1:
                raise ValueError(f"arity of {name} must be positive")
        for c in self.constants:
            if is_variable_name(c) or not c[:1].islower():
                raise ValueError(f"bad constant name {c!r}")
            if is_injected_constant(c):
                raise ValueError(f"constant name {c!r} is reserved")
        object.__setattr__(self, "predicates", tuple(sorted(preds.items())))
        object.__setattr__(self, "constants", frozenset(self.constants))

    @classmethod
    def of(cls, predicates=None, constants=(), free=False, primed=False):
        return cls(tuple((predicates or {}).items()), frozenset(constants),
                   free, primed)

    def arity(self, pred: str) -> Optional[int]:
        """Arity of ``pred`` or None if the signature does not admit it."""
        if pred == EQ:
            return 2
        if pred == EX:
            return 1 if self.free else None
        if pred == EQ_PRIMED:
            return 2 if self.primed else None
        if pred == EX_PRIMED:
            return 1 if self.primed and self.free else None
        preds = dict(self.predicates)
        if pred.endswith("'"):
            if not self.primed:
                return None
            return preds.get(pred[:-1])
        return preds.get(pred)

    def extended(self) -> "Signature":
        """The signature with primed copies admitted."""
        return Signature(self.predicates, self.constants, self.free, True)

    def check(self, a: Formula) -> None:
        for sub in subformulas(a):
            if isinstance(sub, Atom):
                n = self.arity(sub.pred)
                if n is None:
                    raise LanguageError(f"unknown predicate {sub.pred}")
                if n != sub.arity:
                    raise LanguageError(
                        f"{sub.pred} has arity {n}, used with {sub.arity}")
                for t in sub.args:
                    if (isinstance(t, Const) and t.name not in self.constants
                            and not is_injected_constant(t.name)):
                        raise LanguageError(f"unknown constant {t.name}")


def predicates(a: Formula) -> dict:
    """Predicate name -> arity for every atom of ``a``."""
    out = {}
    for sub in subformulas(a):
        if isinstance(sub, Atom):
            out[sub.pred] = sub.arity
    return out


def constants(a: Formula) -> frozenset:
    return frozenset(t.name for sub in subformulas(a) if isinstance(sub, Atom)
                     for t in sub.args if isinstance(t, Const))


def check_language(a: Formula, language: str) -> None:
    """``language`` is ``"neg"`` (no bot) or ``"bot"`` (no ~)."""
    for sub in subformulas(a):
        if language == "neg" and isinstance(sub, Bot):
            raise LanguageError("bot does not occur in the strong-negation language")
        if language == "bot" and isinstance(sub, Not):
            raise LanguageError("~ does not occur in the falsum language")


# ------------------------------------------------------------- binding

def term_vars(t: Term) -> frozenset:
    return frozenset((t.name,)) if isinstance(t, Var) else frozenset()


@lru_cache(maxsize=1 << 16)
def free_vars(a: Formula) -> frozenset:
    if isinstance(a, Atom):
        return frozenset(t.name for t in a.args if isinstance(t, Var))
    if isinstance(a, Bot):
        return frozenset()
    if isinstance(a, Not):
        return free_vars(a.body)
    if isinstance(a, Binary):
        return free_vars(a.left) | free_vars(a.right)
    if isinstance(a, Quant):
        return free_vars(a.body) - {a.var}
    if isinstance(a, Desc):
        return (free_vars(a.restrictor) | free_vars(a.scope)) - {a.var}
    raise TypeError(f"not a formula: {a!r}")


def all_vars(a: Formula) -> set:
    out = set()
    for sub in subformulas(a):
        if isinstance(sub, Atom):
            out.update(t.name for t in sub.args if isinstance(t, Var))
        elif isinstance(sub, (Forall, Exists, Desc)):
            out.add(sub.var)
    return out


def fresh_var(avoid, base: str = "y") -> str:
    avoid = set(avoid)
    if base not in avoid:
        return base
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def _binder_head(a) -> str:
    if isinstance(a, Forall):
        return f"forall {a.var}"
    if isinstance(a, Exists):
        return f"exists {a.var}"
    if isinstance(a, Desc):
        return f"I {a.var}"
    return str(a)


def _capturing_binder(t: Term, x: str, a: Formula):
    """The binder that would capture ``t`` when substituted for ``x``, or None."""
    if isinstance(t, Const):
        return None
    y = t.name
    if isinstance(a, (Atom, Bot)):
        return None
    if isinstance(a, Not):
        return _capturing_binder(t, x, a.body)
    if isinstance(a, Binary):
        return _capturing_binder(t, x, a.left) or _capturing_binder(t, x, a.right)
    if a.var == x or x not in free_vars(a):
        return None
    if a.var == y:
        return a
    if isinstance(a, Desc):
        return (_capturing_binder(t, x, a.restrictor)
                or _capturing_binder(t, x, a.scope))
    return _capturing_binder(t, x, a.body)


def is_free_for(t: Term, x: str, a: Formula) -> bool:
    return _capturing_binder(t, x, a) is None


def substitute(a: Formula, x: str, t: Term, strict: bool = True) -> Formula:
    """``a`` with ``t`` for every free occurrence of variable ``x``.

    In strict mode a capture raises :class:`CaptureError`; otherwise the
    capturing bound variable is renamed apart.
    """
    if strict:
        binder = _capturing_binder(t, x, a)
        if binder is not None:
            raise CaptureError(t, x, binder)
    return _subst(a, x, t)


@lru_cache(maxsize=1 << 18)
def _subst(a: Formula, x: str, t: Term) -> Formula:
    if x not in free_vars(a):
        return a
    if isinstance(a, Atom):
        return Atom(a.pred, tuple(t if isinstance(s, Var) and s.name == x else s
                                  for s in a.args))
    if isinstance(a, Not):
        return Not(_subst(a.body, x, t))
    if isinstance(a, Binary):
        return type(a)(_subst(a.left, x, t), _subst(a.right, x, t))
    v = a.var
    if isinstance(t, Var) and t.name == v:
        # rename the bound variable apart (non-strict mode only)
        avoid = all_vars(a) | {x, t.name}
        nv = fresh_var(avoid, v)
        if isinstance(a, Desc):
            a = Desc(nv, _subst(a.restrictor, v, Var(nv)), _subst(a.scope, v, Var(nv)))
        else:
            a = type(a)(nv, _subst(a.body, v, Var(nv)))
        v = nv
    if isinstance(a, Desc):
        return Desc(v, _subst(a.restrictor, x, t), _subst(a.scope, x, t))
    return type(a)(v, _subst(a.body, x, t))


def russell_unfolding(d: Desc) -> Formula:
    """``exists x.(F & forall y.(F[y/x] -> y = x) & G)`` for ``I x[F, G]``."""
    x = d.var
    y = fresh_var(all_vars(d.restrictor) | all_vars(d.scope) | {x})
    f_y = substitute(d.restrictor, x, Var(y))
    unique = Forall(y, Imp(f_y, eq(Var(y), Var(x))))
    return Exists(x, And(And(d.restrictor, unique), d.scope))


def negated_description_unfolding(d: Desc) -> Formula:
    """``forall x.(~F | exists y.(F[y/x] & ~y = x) | ~G)`` for ``I x[F, G]``."""
    x = d.var
    y = fresh_var(all_vars(d.restrictor) | all_vars(d.scope) | {x})
    f_y = substitute(d.restrictor, x, Var(y))
    other = Exists(y, And(f_y, Not(eq(Var(y), Var(x)))))
    return Forall(x, Or(Or(Not(d.restrictor), other), Not(d.scope)))


# ------------------------------------------------------------- printing

_IMP, _OR, _AND, _NOT, _ATOM = 1, 2, 3, 4, 5
_QUANT = 0


def _prec(a) -> int:
    if isinstance(a, Imp):
        return _IMP
    if isinstance(a, Or):
        return _OR
    if isinstance(a, And):
        return _AND
    if isinstance(a, Not):
        return _NOT
    if isinstance(a, Quant):
        return _QUANT
    return _ATOM


def _show(a, need: int) -> str:
    if _prec(a) < need:
        return "(" + _show(a, 0) + ")"
    if isinstance(a, Atom):
        args = [str(t) for t in a.args]
        if a.pred in (EQ, EQ_PRIMED):
            return f"{args[0]} {a.pred} {args[1]}"
        return f"{a.pred}({','.join(args)})"
    if isinstance(a, Bot):
        return "bot"
    if isinstance(a, Not):
        return "~" + _show(a.body, _NOT)
    if isinstance(a, And):
        return f"{_show(a.left, _AND)} & {_show(a.right, _AND + 1)}"
    if isinstance(a, Or):
        return f"{_show(a.left, _OR)} | {_show(a.right, _OR + 1)}"
    if isinstance(a, Imp):
        return f"{_show(a.left, _IMP + 1)} -> {_show(a.right, _IMP)}"
    if isinstance(a, Forall):
        return f"forall {a.var}. {_show(a.body, 0)}"
    if isinstance(a, Exists):
        return f"exists {a.var}. {_show(a.body, 0)}"
    if isinstance(a, Desc):
        return f"I {a.var}[{_show(a.restrictor, 0)}, {_show(a.scope, 0)}]"
    raise TypeError(f"not a formula: {a!r}")


def to_text(a: Formula) -> str:
    return _show(a, 0)


# -------------------------------------------------------------- parsing

_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<op>->|E!'|E!|='|[~&|()\[\],.=])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*'?)
""", re.VERBOSE)

_KEYWORDS = {"bot", "forall", "exists", "I"}


def _token_at(text: str, pos: int):
    """Next non-blank token at or after ``pos`` as (kind, value, start, end)."""
    while True:
        if pos >= len(text):
            return ("eof", "", len(text), len(text))
        m = _TOKEN.match(text, pos)
        if m is None:
            return ("other", text[pos], pos, pos + 1)
        if m.lastgroup != "ws":
            return (m.lastgroup, m.group(), pos, m.end())
        pos = m.end()


class _Parser:
    def __init__(self, text: str, sig: Optional[Signature], language=None,
                 start: int = 0):
        self.text = text
        self.language = language
        self.pos = start
        self.tok = _token_at(text, start)
        self.sig = sig
        self.seen_arity = {}

    def peek(self):
        return self.tok

    def next(self):
        tok = self.tok
        if tok[0] == "other":
            raise ParseError(f"unexpected character {tok[1]!r}", tok[2], self.text)
        self.pos = tok[3]
        self.tok = _token_at(self.text, self.pos)
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok[2], self.text)

    def expect(self, value):
        tok = self.next()
        if tok[1] != value:
            shown = tok[1] or "end of input"
            raise self.error(f"expected {value!r}, found {shown!r}", tok)
        return tok

    def formula(self):
        left = self.disj()
        if self.peek()[1] == "->":
            self.next()
            return Imp(left, self.formula())
        return left

    def disj(self):
        left = self.conj()
        while self.peek()[1] == "|":
            self.next()
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.peek()[1] == "&":
            self.next()
            left = And(left, self.unary())
        return left

    def unary(self):
        kind, val, pos, _ = self.peek()
        if val == "~":
            if self.language == "bot":
                raise self.error("~ does not occur in the falsum language")
            self.next()
            return Not(self.unary())
        if val in ("forall", "exists"):
            self.next()
            var = self.variable()
            self.expect(".")
            body = self.formula()
            return (Forall if val == "forall" else Exists)(var, body)
        return self.primary()

    def variable(self):
        tok = self.next()
        if tok[0] != "ident" or not is_variable_name(tok[1]) or tok[1].endswith("'"):
            raise self.error(f"expected a variable, found {tok[1]!r}", tok)
        return tok[1]

    def term(self):
        tok = self.next()
        kind, val, pos, _ = tok
        if kind != "ident" or val in _KEYWORDS or not val[:1].islower() or val.endswith("'"):
            raise self.error(f"expected a term, found {val or 'end of input'!r}", tok)
        if is_variable_name(val):
            return Var(val)
        if (self.sig is not None and val not in self.sig.constants
                and not is_injected_constant(val)):
            raise self.error(f"unknown constant {val!r}", tok)
        return Const(val)

    def atom(self, pred, args, tok):
        n = len(args)
        if self.sig is not None:
            expected = self.sig.arity(pred)
            if expected is None:
                raise self.error(f"unknown predicate {pred!r}", tok)
        else:
            expected = self.seen_arity.setdefault(pred, n)
        if expected != n:
            raise self.error(f"{pred} expects {expected} argument(s), got {n}", tok)
        return Atom(pred, tuple(args))

    def primary(self):
        tok = self.peek()
        kind, val, pos, _ = tok
        if val == "bot":
            if self.language == "neg":
                raise self.error("bot does not occur in the strong-negation language")
            self.next()
            return Bot()
        if val == "(":
            self.next()
            inner = self.formula()
            self.expect(")")
            return inner
        if val in (EX, EX_PRIMED):
            self.next()
            self.expect("(")
            t = self.term()
            self.expect(")")
            return self.atom(val, [t], tok)
        if val == "I":
            self.next()
            var = self.variable()
            self.expect("[")
            f = self.formula()
            self.expect(",")
            g = self.formula()
            self.expect("]")
            return Desc(var, f, g)
        if kind == "ident" and val[:1].isupper():
            self.next()
            self.expect("(")
            args = [self.term()]
            while self.peek()[1] == ",":
                self.next()
                args.append(self.term())
            self.expect(")")
            return self.atom(val, args, tok)
        if kind == "ident" and val[:1].islower() and val not in _KEYWORDS:
            t1 = self.term()
            op = self.next()
            if op[1] not in (EQ, EQ_PRIMED):
                raise self.error(f"expected '=' after term, found {op[1]!r}", op)
            t2 = self.term()
            return self.atom(op[1], [t1, t2], op)
        raise self.error(f"unexpected {val or 'end of input'!r}", tok)


def parse_formula(text: str, sig: Optional[Signature] = None,
                  language: Optional[str] = None) -> Formula:
    """Parse ASCII formula syntax.

    Without a signature, predicate arities are inferred and must be used
    consistently.  ``language`` (``"neg"`` or ``"bot"``) rejects the other
    language's negation symbol.
    """
    p = _Parser(text, sig, language)
    a = p.formula()
    if p.peek()[0] != "eof":
        raise p.error(f"unexpected {p.peek()[1]!r}")
    return a


def parse_formula_prefix(text: str, start: int = 0, sig: Optional[Signature] = None,
                         language: Optional[str] = None):
    """Parse the longest formula starting at ``start``.

    Returns the formula and the offset of the first unconsumed token.
    """
    p = _Parser(text, sig, language, start)
    a = p.formula()
    return a, p.peek()[2]


def parse_term(text: str) -> Term:
    p = _Parser(text, None)
    t = p.term()
    if p.peek()[0] != "eof":
        raise p.error(f"unexpected {p.peek()[1]!r}")
    return t
