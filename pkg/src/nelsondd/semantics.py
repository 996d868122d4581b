"""Finite Kripke models for the intuitionistic and Nelsonian valuations.

A model is the seventuple (W, R, H, D, E, J, phi): worlds, a preorder on
them, objects, intensions (total maps from worlds to objects), per-world
domains and existents over the intensions, and per-world extensions over
objects.  ``J_w`` is derived from ``E_w``.  Nelsonian models additionally
carry negative extensions, including one for identity (key ``"="``).

Quantifiers are evaluated by substituting injected constants ``k0, k1, ...``
(one per intension, in declaration order) for the bound variable.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .syntax import (
    EQ, EX, And, Atom, Bot, Const, Desc, Exists, Forall, Formula, Imp, Not,
    Or, Var, _subst, free_vars, negated_description_unfolding,
    is_injected_constant,
)

__all__ = [
    "INTUITIONISTIC", "NELSONIAN", "KripkeModel", "Violation", "Environment",
    "EvaluationError", "OpenFormula", "UnknownConstant", "ModelFormatError",
    "validate_model", "eval_int", "eval_nelson", "evaluate", "holds_sequent",
    "countermodel_world", "load_model", "dump_model", "reflexive_transitive_closure",
]

INTUITIONISTIC = "intuitionistic"
NELSONIAN = "nelsonian"


class EvaluationError(ValueError):
    pass


class OpenFormula(EvaluationError):
    pass


class UnknownConstant(EvaluationError):
    pass


class ModelFormatError(ValueError):
    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def reflexive_transitive_closure(worlds, pairs) -> frozenset:
    rel = {(w, w) for w in worlds} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return frozenset(rel)


@dataclass(frozen=True, eq=False)
class KripkeModel:
    """A finite model; see the module docstring for the components.

    ``exists`` defaults to ``domain`` (ordinary models require E_w = D_w).
    Extensions map predicate -> world -> set of object tuples.
    """

    kind: str
    worlds: tuple
    rel: frozenset
    objects: tuple
    intensions: Mapping[str, Mapping[str, str]]
    domain: Mapping[str, frozenset]
    exists: Optional[Mapping[str, frozenset]] = None
    consts: Mapping[str, str] = field(default_factory=dict)
    pos: Mapping[str, Mapping[str, frozenset]] = field(default_factory=dict)
    neg: Mapping[str, Mapping[str, frozenset]] = field(default_factory=dict)
    free: bool = False

    def __post_init__(self):
        if self.exists is None:
            object.__setattr__(self, "exists", dict(self.domain))

    @cached_property
    def intension_names(self) -> tuple:
        return tuple(self.intensions)

    @cached_property
    def succ(self) -> dict:
        return {w: tuple(v for v in self.worlds if (w, v) in self.rel)
                for w in self.worlds}

    def value(self, d: str, w: str) -> str:
        return self.intensions[d][w]

    @cached_property
    def existent_objects(self) -> dict:
        """J_w for every world."""
        return {w: frozenset(self.intensions[d][w] for d in self.exists.get(w, ()))
                for w in self.worlds}

    @cached_property
    def _ext_cache(self):
        empty = frozenset()
        pos = {(p, w): ext.get(w, empty) for p, ext in self.pos.items()
               for w in self.worlds}
        neg = {(p, w): ext.get(w, empty) for p, ext in self.neg.items()
               for w in self.worlds}
        return pos, neg

    def positive(self, pred: str, w: str) -> frozenset:
        return self._ext_cache[0].get((pred, w), frozenset())

    def negative(self, pred: str, w: str) -> frozenset:
        return self._ext_cache[1].get((pred, w), frozenset())

    @cached_property
    def injected(self) -> dict:
        """Injected constant name -> intension."""
        return {f"k{i}": d for i, d in enumerate(self.intension_names)}

    @cached_property
    def quantifier_range(self) -> dict:
        """World -> injected constants of the existents at that world."""
        index = {d: Const(f"k{i}") for i, d in enumerate(self.intension_names)}
        return {w: tuple(index[d] for d in self.intension_names
                         if d in self.exists.get(w, ()))
                for w in self.worlds}

    def with_(self, **changes) -> "KripkeModel":
        data = {f: getattr(self, f) for f in self.__dataclass_fields__}
        data.update(changes)
        return KripkeModel(**data)

    def __eq__(self, other):
        if not isinstance(other, KripkeModel):
            return NotImplemented
        return dump_model(self) == dump_model(other)

    __hash__ = None


@dataclass(frozen=True)
class Violation:
    clause: str
    witness: tuple = ()

    def __str__(self):
        return f"{self.clause}: " + ", ".join(map(str, self.witness))


def _extension_arity(ext) -> set:
    return {len(t) for by_world in ext.values() for tuples in by_world.values()
            for t in tuples}


def validate_model(m: KripkeModel) -> list:
    """Every violated structural condition, as :class:`Violation` records."""
    out = []
    if m.kind not in (INTUITIONISTIC, NELSONIAN):
        return [Violation("kind", (m.kind,))]
    if not m.worlds:
        out.append(Violation("non-empty-worlds"))
    if not m.objects:
        out.append(Violation("non-empty-objects"))
    if not m.intensions:
        out.append(Violation("non-empty-intensions"))
    worlds = set(m.worlds)
    for (a, b) in m.rel:
        if a not in worlds or b not in worlds:
            out.append(Violation("relation-worlds", (a, b)))
    for w in m.worlds:
        if (w, w) not in m.rel:
            out.append(Violation("reflexivity", (w,)))
    for (a, b) in sorted(m.rel):
        for (c, d) in sorted(m.rel):
            if b == c and (a, d) not in m.rel:
                out.append(Violation("transitivity", (a, b, d)))
    objects = set(m.objects)
    for d, values in m.intensions.items():
        for w in m.worlds:
            if values.get(w) not in objects:
                out.append(Violation("intension-total", (d, w)))
    if out:
        return out
    names = set(m.intensions)
    for w in m.worlds:
        dw = m.domain.get(w, frozenset())
        ew = m.exists.get(w, frozenset())
        if not dw <= names:
            out.append(Violation("domain-intensions", (w, sorted(dw - names))))
        if not ew <= dw:
            out.append(Violation("existents-in-domain", (w, sorted(ew - dw))))
        if not m.free and ew != dw:
            out.append(Violation("ordinary-existence", (w,)))
    for c, d in sorted(m.consts.items()):
        if d not in names:
            out.append(Violation("constant", (c, d)))
        elif not m.free:
            for w in m.worlds:
                if d not in m.domain.get(w, ()):
                    out.append(Violation("constant-in-domain", (c, w)))
    if m.kind == INTUITIONISTIC and m.neg:
        out.append(Violation("negative-extension-in-intuitionistic-model",
                             tuple(sorted(m.neg))))
    carried = {}
    for (a, b) in sorted(m.rel):
        if a == b:
            continue
        # objects named alike at a stay named alike at b, so the order
        # induces a map on objects along which extensions must persist
        step = {}
        for d in m.intension_names:
            h, h2 = m.intensions[d][a], m.intensions[d][b]
            if step.setdefault(h, h2) != h2:
                out.append(Violation("identity-persistence", (a, b, h)))
        carried[a, b] = step
    for label, ext in (("", m.pos), ("negative-", m.neg)):
        for p in sorted(ext):
            if p == EX or (p == EQ and label == ""):
                out.append(Violation(f"{label}builtin-extension", (p,)))
            if len(_extension_arity({p: ext[p]})) > 1:
                out.append(Violation(f"{label}arity", (p,)))
            for w in m.worlds:
                jw = m.existent_objects[w]
                for tup in sorted(ext[p].get(w, ())):
                    if not set(tup) <= jw:
                        out.append(Violation(f"{label}strictness", (p, w, tup)))
            for (a, b) in sorted(m.rel):
                lost = ext[p].get(a, frozenset()) - ext[p].get(b, frozenset())
                for tup in sorted(lost):
                    out.append(Violation(f"{label}extension-monotonicity",
                                         (p, a, b, tup)))
                step = carried.get((a, b))
                if step is None:
                    continue
                target = ext[p].get(b, frozenset())
                for tup in sorted(ext[p].get(a, ())):
                    moved = tuple(step.get(h, h) for h in tup)
                    if moved not in target:
                        out.append(Violation(f"{label}extension-transport",
                                             (p, a, b, tup)))
    for (a, b) in sorted(m.rel):
        if not m.domain.get(a, frozenset()) <= m.domain.get(b, frozenset()):
            out.append(Violation("domain-monotonicity", (a, b)))
        if not m.exists.get(a, frozenset()) <= m.exists.get(b, frozenset()):
            out.append(Violation("existence-monotonicity", (a, b)))
    return out


@dataclass(frozen=True)
class Environment:
    """Constant table: model constants plus injected ``k_i`` for intension i."""

    table: Mapping[str, str]

    @classmethod
    def for_model(cls, m: KripkeModel) -> "Environment":
        table = dict(m.injected)
        table.update(m.consts)
        return cls(table)

    def denote(self, c: str) -> str:
        try:
            return self.table[c]
        except KeyError:
            raise UnknownConstant(f"unknown constant {c}") from None


class _Evaluator:
    def __init__(self, m: KripkeModel, nelson: bool, env: Environment):
        self.m = m
        self.nelson = nelson
        self.env = env
        # memo keyed by world then id(formula); entries keep the formula
        # alive so an id is never reused while cached
        self.pos_cache = {w: {} for w in m.worlds}
        self.neg_cache = {w: {} for w in m.worlds}
        self.rng = m.quantifier_range
        self.succ = m.succ
        self.J = m.existent_objects

    def val(self, t, w):
        if isinstance(t, Var):
            raise OpenFormula(f"free variable {t.name}")
        return self.m.intensions[self.env.denote(t.name)][w]

    def true(self, w, a) -> bool:
        cache = self.pos_cache[w]
        hit = cache.get(id(a))
        if hit is not None and hit[0] is a:
            return hit[1]
        r = self._true(w, a)
        cache[id(a)] = (a, r)
        return r

    def false(self, w, a) -> bool:
        cache = self.neg_cache[w]
        hit = cache.get(id(a))
        if hit is not None and hit[0] is a:
            return hit[1]
        r = self._false(w, a)
        cache[id(a)] = (a, r)
        return r

    def identical(self, kd, ke, w) -> bool:
        """The ``=`` clause for two injected constants."""
        h = self.val(kd, w)
        return h == self.val(ke, w) and h in self.J[w]

    def _true(self, w, a) -> bool:
        m = self.m
        if isinstance(a, Atom):
            if a.pred == EX:
                t = a.args[0]
                if isinstance(t, Var):
                    raise OpenFormula(f"free variable {t.name}")
                return self.env.denote(t.name) in m.exists[w]
            vals = tuple(self.val(t, w) for t in a.args)
            if a.pred == EQ:
                return vals[0] == vals[1] and vals[0] in self.J[w]
            return vals in m.positive(a.pred, w)
        if isinstance(a, Bot):
            if self.nelson:
                raise EvaluationError("bot is not in the Nelsonian language")
            return False
        if isinstance(a, Not):
            if not self.nelson:
                raise EvaluationError("~ is not in the intuitionistic language")
            return self.false(w, a.body)
        if isinstance(a, And):
            return self.true(w, a.left) and self.true(w, a.right)
        if isinstance(a, Or):
            return self.true(w, a.left) or self.true(w, a.right)
        if isinstance(a, Imp):
            return all(not self.true(v, a.left) or self.true(v, a.right)
                       for v in self.succ[w])
        if isinstance(a, Forall):
            return all(self.true(v, _subst(a.body, a.var, k))
                       for v in self.succ[w] for k in self.rng[v])
        if isinstance(a, Exists):
            return any(self.true(w, _subst(a.body, a.var, k)) for k in self.rng[w])
        if isinstance(a, Desc):
            return self._description(w, a)
        raise TypeError(f"not a formula: {a!r}")

    def _description(self, w, a: Desc) -> bool:
        x, f, g = a.var, a.restrictor, a.scope
        for kd in self.rng[w]:
            if not (self.true(w, _subst(f, x, kd)) and self.true(w, _subst(g, x, kd))):
                continue
            # the double successor layer mirrors the stated clause verbatim
            if all(not self.true(v2, _subst(f, x, ke))
                   or self.identical(kd, ke, v2)
                   for v1 in self.succ[w] for ke in self.rng[v1]
                   for v2 in self.succ[v1]):
                return True
        return False

    def _false(self, w, a) -> bool:
        m = self.m
        if isinstance(a, Atom):
            vals = tuple(self.val(t, w) for t in a.args)
            if a.pred == EX:
                return vals[0] not in self.J[w]
            return vals in m.negative(a.pred, w)
        if isinstance(a, Not):
            return self.true(w, a.body)
        if isinstance(a, Imp):
            return self.true(w, a.left) and self.false(w, a.right)
        if isinstance(a, And):
            return self.false(w, a.left) or self.false(w, a.right)
        if isinstance(a, Or):
            return self.false(w, a.left) and self.false(w, a.right)
        if isinstance(a, Forall):
            return any(self.false(w, _subst(a.body, a.var, k)) for k in self.rng[w])
        if isinstance(a, Exists):
            return all(self.false(v, _subst(a.body, a.var, k))
                       for v in self.succ[w] for k in self.rng[v])
        if isinstance(a, Desc):
            return self.true(w, negated_description_unfolding(a))
        if isinstance(a, Bot):
            raise EvaluationError("bot is not in the Nelsonian language")
        raise TypeError(f"not a formula: {a!r}")


def _evaluator(m: KripkeModel, nelson: bool, env: Optional[Environment]):
    if env is not None:
        return _Evaluator(m, nelson, env)
    # one memo table per model and valuation; models are immutable
    attr = "_nelson_eval" if nelson else "_int_eval"
    ev = m.__dict__.get(attr)
    if ev is None:
        ev = _Evaluator(m, nelson, Environment.for_model(m))
        m.__dict__[attr] = ev
    return ev


def _check_world(m, w):
    if w not in m.succ:
        raise EvaluationError(f"unknown world {w}")


def eval_int(m: KripkeModel, w: str, a: Formula,
             env: Optional[Environment] = None) -> bool:
    """Intuitionistic (negative free) forcing of closed ``a`` at ``w``."""
    _check_world(m, w)
    if free_vars(a):
        raise OpenFormula(f"free variables {sorted(free_vars(a))}")
    return _evaluator(m, False, env).true(w, a)


def eval_nelson(m: KripkeModel, w: str, a: Formula,
                env: Optional[Environment] = None) -> bool:
    """Nelsonian paradefinite verification of closed ``a`` at ``w``."""
    _check_world(m, w)
    if free_vars(a):
        raise OpenFormula(f"free variables {sorted(free_vars(a))}")
    return _evaluator(m, True, env).true(w, a)


def evaluate(m: KripkeModel, w: str, a: Formula,
             env: Optional[Environment] = None) -> bool:
    if m.kind == NELSONIAN:
        return eval_nelson(m, w, a, env)
    return eval_int(m, w, a, env)


def _assignments(m: KripkeModel, w: str, variables) -> Iterable[dict]:
    """Ways of reading free variables at ``w``: any intension in a free
    model, a domain member otherwise."""
    index = {d: Const(f"k{i}") for i, d in enumerate(m.intension_names)}
    pool = (m.intension_names if m.free
            else [d for d in m.intension_names if d in m.domain.get(w, ())])
    variables = sorted(variables)
    for choice in itertools.product(pool, repeat=len(variables)):
        yield {x: index[d] for x, d in zip(variables, choice)}


def _close(a: Formula, assignment: dict) -> Formula:
    for x, k in assignment.items():
        a = _subst(a, x, k)
    return a


def countermodel_world(m: KripkeModel, assumptions, conclusion,
                       env: Optional[Environment] = None):
    """First (world, assignment) where the inference fails, or None."""
    assumptions = list(assumptions)
    variables = set(free_vars(conclusion)).union(*map(free_vars, assumptions))
    for w in m.worlds:
        for asg in _assignments(m, w, variables):
            if all(evaluate(m, w, _close(a, asg), env) for a in assumptions) \
                    and not evaluate(m, w, _close(conclusion, asg), env):
                return w, asg
    return None


def holds_sequent(m: KripkeModel, s, env: Optional[Environment] = None) -> bool:
    """Truth preservation of sequent ``s`` at every world of ``m``."""
    logic = getattr(s, "logic", None)
    if logic is not None:
        expected = NELSONIAN if logic.base == "N4" else INTUITIONISTIC
        if m.kind != expected:
            raise EvaluationError(f"{logic} sequents need a {expected} model")
        if not logic.free and m.free:
            raise EvaluationError(f"{logic} is not a free logic; model is free")
    return countermodel_world(m, s.assumptions, s.conclusion, env) is None


# ----------------------------------------------------------- file format

_TUPLE = re.compile(r"\(([^()]*)\)")


def _names(text: str) -> list:
    return text.split()


def load_model(text: str) -> KripkeModel:
    """Read the line-oriented model format (see :func:`dump_model`)."""
    kind = None
    free = False
    worlds, objects, pairs = [], [], []
    intensions, domain, exists, consts = {}, {}, {}, {}
    pos, neg = {}, {}
    seen_exists = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        try:
            if line.startswith("intension "):
                name, eq_sign, spec = line[len("intension "):].partition("=")
                if not eq_sign or not name.strip():
                    raise ModelFormatError(f"cannot read {line!r}", lineno)
                values = {}
                for item in spec.split():
                    w, colon, h = item.partition(":")
                    if not (colon and w and h):
                        raise ModelFormatError(f"bad intension value {item!r}", lineno)
                    values[w] = h
                intensions[name.strip()] = values
            elif line.startswith("const "):
                name, _, d = line[len("const "):].partition("=")
                consts[name.strip()] = d.strip()
            elif not sep:
                raise ModelFormatError(f"cannot read {line!r}", lineno)
            elif head == "kind":
                words = rest.split()
                if not words or words[0] not in (INTUITIONISTIC, NELSONIAN) \
                        or words[1:] not in ([], ["free"]):
                    raise ModelFormatError(f"bad kind {rest.strip()!r}", lineno)
                kind, free = words[0], words[1:] == ["free"]
            elif head == "worlds":
                worlds = _names(rest)
            elif head == "objects":
                objects = _names(rest)
            elif head == "rel":
                for body in _TUPLE.findall(rest):
                    a, b = [s.strip() for s in body.split(",")]
                    pairs.append((a, b))
            elif head.startswith("domain "):
                domain[head[len("domain "):].strip()] = frozenset(_names(rest))
            elif head.startswith("exists "):
                seen_exists = True
                exists[head[len("exists "):].strip()] = frozenset(_names(rest))
            elif head.startswith("neg= "):
                w = head[len("neg= "):].strip()
                neg.setdefault(EQ, {})[w] = frozenset(_tuples(rest))
            elif head.startswith("pos ") or head.startswith("neg "):
                _, p, w = head.split()
                table = pos if head.startswith("pos ") else neg
                table.setdefault(p, {})[w] = frozenset(_tuples(rest))
            else:
                raise ModelFormatError(f"unknown section {head!r}", lineno)
        except ModelFormatError:
            raise
        except ValueError as e:
            raise ModelFormatError(str(e), lineno) from None
    if kind is None:
        raise ModelFormatError("missing 'kind:' line")
    rel = reflexive_transitive_closure(worlds, pairs)
    return KripkeModel(
        kind=kind, worlds=tuple(worlds), rel=rel, objects=tuple(objects),
        intensions=intensions,
        domain={w: domain.get(w, frozenset()) for w in worlds},
        exists=({w: exists.get(w, frozenset()) for w in worlds}
                if seen_exists or free else None),
        consts=consts, pos=pos, neg=neg, free=free)


def _tuples(text: str) -> list:
    return [tuple(s.strip() for s in body.split(",")) for body in _TUPLE.findall(text)]


def _fmt_tuples(tuples) -> str:
    return " ".join("(" + ",".join(t) + ")" for t in sorted(tuples))


def dump_model(m: KripkeModel) -> str:
    lines = [f"kind: {m.kind}" + (" free" if m.free else ""),
             "worlds: " + " ".join(m.worlds)]
    rel = sorted((a, b) for (a, b) in m.rel if a != b)
    lines.append(("rel: " + " ".join(f"({a},{b})" for a, b in rel)).rstrip())
    lines.append("objects: " + " ".join(m.objects))
    for d, values in m.intensions.items():
        lines.append(f"intension {d} = " + " ".join(f"{w}:{values[w]}" for w in m.worlds))
    order = {d: i for i, d in enumerate(m.intension_names)}
    for w in m.worlds:
        lines.append(f"domain {w}: " + " ".join(sorted(m.domain.get(w, ()), key=order.get)))
        lines[-1] = lines[-1].rstrip()
    if m.free:
        for w in m.worlds:
            lines.append((f"exists {w}: " + " ".join(
                sorted(m.exists.get(w, ()), key=order.get))).rstrip())
    for c, d in sorted(m.consts.items()):
        lines.append(f"const {c} = {d}")
    for p in sorted(m.pos):
        for w in m.worlds:
            lines.append(f"pos {p} {w}: {_fmt_tuples(m.pos[p].get(w, ()))}".rstrip())
    for p in sorted(m.neg):
        for w in m.worlds:
            if p == EQ:
                lines.append(f"neg= {w}: {_fmt_tuples(m.neg[p].get(w, ()))}".rstrip())
            else:
                lines.append(f"neg {p} {w}: {_fmt_tuples(m.neg[p].get(w, ()))}".rstrip())
    return "\n".join(lines) + "\n"
