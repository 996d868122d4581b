"""Bounded model enumeration, countermodel search and property sweeps.

Enumeration order is canonical: number of worlds, frame, number of objects,
intension set, constant interpretation, domains, existents, then extensions
as bit-vectors per world.  Candidates failing ``validate_model`` are
dropped, so every emitted model validates.

Two reductions keep the space finite and free of junk: every object is the
value of some intension somewhere, and in free models ``D_w`` is the whole
intension set (only ``E_w`` matters to evaluation there).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .batch import BatchEvaluator, FormulaTable, pack_skeletons, paired_reader
from .embedding import UnsupportedConnective, pair_model, tau, unpair_model
from .semantics import (INTUITIONISTIC, NELSONIAN, KripkeModel, countermodel_world,
                        evaluate, validate_model)
from .syntax import (EQ, EX, And, Atom, Bot, Const, Desc, Exists, Forall, Formula,
                     Imp, Not, Or, Signature, Var, _subst, constants, free_vars, predicates,
                     russell_unfolding, to_text)

__all__ = ["Bounds", "CountermodelFound", "NoCountermodelWithinBounds",
           "enumerate_models", "count_models", "find_countermodel",
           "generate_formulas", "check_pairing_lemma", "check_unpairing_lemma",
           "check_heredity", "check_description_unfolding", "Discrepancy",
           "frames", "signature_for", "translatable", "SweepReport", "sweep",
           "sweep_descriptions", "description_bodies", "sample_formulas",
           "Skeleton", "enumerate_skeletons"]


@dataclass(frozen=True)
class Bounds:
    max_worlds: int = 1
    max_objects: int = 1
    max_intensions: Optional[int] = None
    signature: Signature = field(default_factory=Signature)
    kind: str = NELSONIAN
    free: bool = False
    intension_cap: int = 4

    def __post_init__(self):
        if self.max_intensions is None:
            object.__setattr__(self, "max_intensions", self.max_objects)
        for name in ("max_worlds", "max_objects", "max_intensions", "intension_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if self.kind not in (INTUITIONISTIC, NELSONIAN):
            raise ValueError(f"unknown model kind {self.kind!r}")

    def describe(self) -> str:
        return (f"worlds<={self.max_worlds} objects<={self.max_objects} "
                f"intensions<={self.max_intensions} cap={self.intension_cap} "
                f"{self.kind}{' free' if self.free else ''}")


@dataclass(frozen=True)
class CountermodelFound:
    model: KripkeModel
    world: str
    assignment: tuple = ()
    examined: int = 0
    bounds: Optional[Bounds] = None

    found = True


@dataclass(frozen=True)
class NoCountermodelWithinBounds:
    bounds: Bounds
    examined: int

    found = False


# ------------------------------------------------------------ enumeration

def frames(n: int) -> list:
    """All reflexive transitive relations on ``w0..w{n-1}``, canonically ordered."""
    worlds = tuple(f"w{i}" for i in range(n))
    off = [(a, b) for a in worlds for b in worlds if a != b]
    out = []
    for bits in range(1 << len(off)):
        rel = {(w, w) for w in worlds}
        rel.update(p for i, p in enumerate(off) if bits >> i & 1)
        if all((a, d) in rel for (a, b) in rel for (c, d) in rel if b == c):
            out.append((worlds, frozenset(rel)))
    return out


def _monotone_families(worlds, rel, options) -> Iterator[dict]:
    """Assignments world -> option (a frozenset) that grow along ``rel``.

    ``options`` maps each world to its candidate subsets in bit-vector order.
    """
    pairs = [(a, b) for (a, b) in rel if a != b]
    for choice in itertools.product(*(options[w] for w in worlds)):
        fam = dict(zip(worlds, choice))
        if all(fam[a] <= fam[b] for a, b in pairs):
            yield fam


def _subsets(items) -> list:
    items = list(items)
    return [frozenset(x for i, x in enumerate(items) if bits >> i & 1)
            for bits in range(1 << len(items))]


def _steps(worlds, rel, intensions) -> Optional[dict]:
    """Object maps induced along each edge, or None when two intensions
    agree at a world and split at a successor."""
    steps = {}
    for (a, b) in rel:
        if a == b:
            continue
        step = {}
        for f in intensions.values():
            if step.setdefault(f[a], f[b]) != f[b]:
                return None
        steps[a, b] = step
    return steps


def _extensions(worlds, rel, J, arity, steps) -> list:
    options = {w: _subsets(itertools.product(sorted(J[w]), repeat=arity))
               for w in worlds}
    out = []
    for fam in _monotone_families(worlds, rel, options):
        if all(tuple(step[h] for h in tup) in fam[b]
               for (a, b), step in steps.items() for tup in fam[a]):
            out.append(fam)
    return out


@dataclass(frozen=True, eq=False)
class Skeleton:
    """Everything but the extensions.  ``slots`` lists (side, predicate,
    monotone families); a model picks one family per slot."""

    kind: str
    free: bool
    worlds: tuple
    rel: frozenset
    objects: tuple
    intensions: dict
    consts: dict
    domain: dict
    exists: dict
    slots: tuple

    @property
    def size(self) -> int:
        n = 1
        for _, _, fams in self.slots:
            n *= len(fams)
        return n

    def choice(self, index: int) -> tuple:
        """Family index per slot; the last slot varies fastest."""
        out = []
        for _, _, fams in reversed(self.slots):
            index, r = divmod(index, len(fams))
            out.append(r)
        return tuple(reversed(out))

    def model(self, index: int) -> KripkeModel:
        pos, neg = {}, {}
        for (side, p, fams), i in zip(self.slots, self.choice(index)):
            (pos if side == "pos" else neg)[p] = fams[i]
        return KripkeModel(
            kind=self.kind, worlds=self.worlds, rel=self.rel, objects=self.objects,
            intensions=self.intensions, domain=self.domain, exists=self.exists,
            consts=self.consts, pos=pos, neg=neg, free=self.free)

    def models(self) -> Iterator[KripkeModel]:
        for i in range(self.size):
            yield self.model(i)


def enumerate_skeletons(b: Bounds) -> Iterator[Skeleton]:
    nelson = b.kind == NELSONIAN
    preds = list(b.signature.predicates)
    consts = sorted(b.signature.constants)
    for n in range(1, b.max_worlds + 1):
        for worlds, rel in frames(n):
            for m in range(1, b.max_objects + 1):
                objects = tuple(f"h{i}" for i in range(m))
                if n * m > b.intension_cap:
                    pool = [tuple(h for _ in worlds) for h in objects]
                else:
                    pool = list(itertools.product(objects, repeat=n))
                for k in range(1, b.max_intensions + 1):
                    for chosen in itertools.combinations(pool, k):
                        if {h for f in chosen for h in f} != set(objects):
                            continue
                        names = tuple(f"d{i}" for i in range(k))
                        intensions = {d: dict(zip(worlds, f))
                                      for d, f in zip(names, chosen)}
                        if _steps(worlds, rel, intensions) is None:
                            continue
                        yield from _with_intensions(
                            b, nelson, preds, consts, worlds, rel, objects,
                            names, intensions)


def _with_intensions(b, nelson, preds, consts, worlds, rel, objects, names, intensions):
    kind = NELSONIAN if nelson else INTUITIONISTIC
    steps = _steps(worlds, rel, intensions)
    for cvals in itertools.product(names, repeat=len(consts)):
        cmap = dict(zip(consts, cvals))
        needed = frozenset(cvals)
        if b.free:
            domains = [{w: frozenset(names) for w in worlds}]
        else:
            opts = {w: [s for s in _subsets(names) if s and needed <= s] for w in worlds}
            domains = list(_monotone_families(worlds, rel, opts))
        for dom in domains:
            if b.free:
                exists_opts = {w: _subsets(names) for w in worlds}
                existents = list(_monotone_families(worlds, rel, exists_opts))
            else:
                existents = [dom]
            for ex in existents:
                J = {w: frozenset(intensions[d][w] for d in ex[w]) for w in worlds}
                slots = []
                for p, arity in preds:
                    slots.append(("pos", p, _extensions(worlds, rel, J, arity, steps)))
                    if nelson:
                        slots.append(("neg", p, _extensions(worlds, rel, J, arity, steps)))
                if nelson:
                    slots.append(("neg", EQ, _extensions(worlds, rel, J, 2, steps)))
                yield Skeleton(kind, b.free, worlds, rel, objects, intensions,
                               cmap, dom, ex, tuple(slots))


def enumerate_models(b: Bounds) -> Iterator[KripkeModel]:
    """Every validated model within ``b``, in canonical order."""
    for sk in enumerate_skeletons(b):
        for model in sk.models():
            if not validate_model(model):
                yield model


def count_models(b: Bounds) -> int:
    return sum(1 for _ in enumerate_models(b))


# ------------------------------------------------------------ countermodels

def signature_for(formulas, free: bool = False) -> Signature:
    """Smallest signature covering ``formulas`` (builtins excluded)."""
    preds, consts = {}, set()
    for a in formulas:
        for p, n in predicates(a).items():
            if p not in (EQ, EX) and not p.endswith("'"):
                preds[p] = n
        consts |= constants(a)
    return Signature.of(preds, consts, free=free)


def find_countermodel(s, b: Bounds):
    """First model (canonical order) where ``s`` fails, or the number examined.

    Each skeleton is scanned with the batched evaluator; the first failing
    model is then replayed with the scalar evaluator for the report.
    """
    hyps = list(s.assumptions)
    variables = sorted(set(free_vars(s.conclusion)).union(*map(free_vars, hyps)))
    examined = 0
    table = FormulaTable()
    for sk in enumerate_skeletons(b):
        ev = BatchEvaluator(sk, table=table)
        names = tuple(sk.intensions)
        fails = 0
        for w in sk.worlds:
            pool = names if sk.free else [d for d in names if d in sk.domain[w]]
            for choice in itertools.product(pool, repeat=len(variables)):
                asg = {x: Const(f"k{names.index(d)}") for x, d in zip(variables, choice)}
                mask = ev.all ^ ev.true(w, _close(s.conclusion, asg))
                for a in hyps:
                    if not mask:
                        break
                    mask &= ev.true(w, _close(a, asg))
                fails |= mask
        if fails:
            index = (fails & -fails).bit_length() - 1
            m = sk.model(index)
            w, asg = countermodel_world(m, hyps, s.conclusion)
            return CountermodelFound(m, w, tuple(sorted((x, k.name) for x, k in asg.items())),
                                     examined + index + 1, b)
        examined += sk.size
    return NoCountermodelWithinBounds(b, examined)


def _close(a: Formula, assignment: dict) -> Formula:
    for x, k in assignment.items():
        a = _subst(a, x, k)
    return a


# ------------------------------------------------------------ formula sets

def generate_formulas(depth: int, preds=("P",), const: str = "a", var: str = "x",
                      negation: bool = True, description: bool = True,
                      bot: bool = False, existence: bool = False) -> list:
    """All closed formulas of depth <= ``depth``.

    Terms are ``const`` and ``var``; atoms are the unary ``preds``,
    ``=``, and ``E!`` when ``existence`` is set.  Connectives are ``&``,
    ``|``, ``->``, the quantifiers over ``var``, optionally ``~``, ``bot``
    and ``I``.  Output is deduplicated by printed form and sorted by
    (depth, text).
    """
    terms = (Const(const), Var(var))
    atoms = [Atom(p, (t,)) for p in preds for t in terms]
    atoms += [Atom(EQ, (s, t)) for s in terms for t in terms]
    if existence:
        atoms += [Atom(EX, (t,)) for t in terms]
    if bot:
        atoms.append(Bot())
    layers = [atoms]
    # structural equality coincides with equal printed form (printing
    # round-trips), and is much cheaper to test
    seen = set(atoms)
    every = list(atoms)
    for d in range(1, depth + 1):
        prev = layers[-1]
        prev_set = set(prev)
        older = every[:]  # all formulas of depth < d
        new = []

        def add(f):
            if f not in seen:
                seen.add(f)
                new.append(f)
        for a in prev:
            if negation:
                add(Not(a))
            add(Forall(var, a))
            add(Exists(var, a))
        for a in older:
            a_new = a in prev_set
            for c in older:
                if not a_new and c not in prev_set:
                    continue
                add(And(a, c))
                add(Or(a, c))
                add(Imp(a, c))
                if description:
                    add(Desc(var, a, c))
        layers.append(new)
        every.extend(new)
    closed = [(i, f) for i, layer in enumerate(layers) for f in layer if not free_vars(f)]
    closed.sort(key=lambda p: (p[0], to_text(p[1])))
    return [f for _, f in closed]


def sample_formulas(depth: int, count: int, seed: int = 0, preds=("P",),
                    const: str = "a", var: str = "x", negation: bool = True,
                    description: bool = True, bot: bool = False) -> list:
    """``count`` distinct closed formulas of depth exactly ``depth``, drawn
    with a seeded generator over the same language as
    :func:`generate_formulas`.  ``var`` only occurs under a binder."""
    rng = random.Random(seed)
    unary = ["forall", "exists"] + (["not"] if negation else [])
    binary = [And, Or, Imp] + ([Desc] if description else [])

    def atom(bound):
        terms = [Const(const)] + ([Var(var)] if bound else [])
        pool = [Atom(p, (rng.choice(terms),)) for p in preds]
        pool.append(Atom(EQ, (rng.choice(terms), rng.choice(terms))))
        if bot:
            pool.append(Bot())
        return rng.choice(pool)

    def build(d, bound):
        if d == 0:
            return atom(bound)
        if rng.random() < 0.4:
            op = rng.choice(unary)
            if op == "not":
                return Not(build(d - 1, bound))
            body = build(d - 1, True)
            return Forall(var, body) if op == "forall" else Exists(var, body)
        op = rng.choice(binary)
        sides = [d - 1, rng.randrange(d)]
        rng.shuffle(sides)
        inner = bound or op is Desc
        return op(build(sides[0], inner), build(sides[1], inner)) if op is not Desc \
            else Desc(var, build(sides[0], True), build(sides[1], True))

    out, seen = [], set()
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        f = build(depth, False)
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out


# ------------------------------------------------------------ sweeps

def translatable(formulas) -> tuple:
    """The formulas tau accepts, and their translations."""
    kept, out = [], []
    for c in formulas:
        try:
            tc = tau(c)
        except UnsupportedConnective:
            continue
        kept.append(c)
        out.append(tc)
    return kept, out


@dataclass(frozen=True)
class Discrepancy:
    check: str
    model: KripkeModel
    world: str
    formula: Formula
    detail: str = ""

    def __str__(self):
        return f"{self.check} at {self.world}: {to_text(self.formula)} {self.detail}".rstrip()


def check_pairing_lemma(b: Bounds, depth: int = 0, formulas=None,
                        pair: Callable = pair_model, limit: int = 0) -> list:
    """(model, world, C) where C is verified but tau(C) is not forced on the
    paired model, or the reverse.  Expected empty."""
    if b.kind != NELSONIAN:
        raise ValueError("the pairing check enumerates nelsonian models")
    formulas, translated = translatable(
        generate_formulas(depth) if formulas is None else formulas)
    out = []
    for n in enumerate_models(b):
        i = pair(n)
        for w in n.worlds:
            for c, tc in zip(formulas, translated):
                left, right = evaluate(n, w, c), evaluate(i, w, tc)
                if left != right:
                    out.append(Discrepancy("pairing", n, w, c, f"N={left} I={right}"))
                    if limit and len(out) >= limit:
                        return out
    return out


def check_unpairing_lemma(b: Bounds, depth: int = 0, formulas=None,
                          unpair: Callable = unpair_model, limit: int = 0) -> list:
    """Dual direction: enumerate intuitionistic models over the primed
    signature and compare with the unpaired nelsonian model."""
    formulas, translated = translatable(
        generate_formulas(depth) if formulas is None else formulas)
    sig = b.signature
    primed = dict(sig.predicates)
    primed.update({p + "'": n for p, n in sig.predicates})
    ib = Bounds(b.max_worlds, b.max_objects, b.max_intensions,
                _PrimedSignature(tuple(sorted(primed.items())), sig.constants, sig.free),
                INTUITIONISTIC, b.free, b.intension_cap)
    out = []
    for i in enumerate_models(ib):
        n = unpair(i)
        for w in i.worlds:
            for c, tc in zip(formulas, translated):
                left, right = evaluate(n, w, c), evaluate(i, w, tc)
                if left != right:
                    out.append(Discrepancy("unpairing", n, w, c, f"N={left} I={right}"))
                    if limit and len(out) >= limit:
                        return out
    return out


@dataclass(frozen=True)
class _PrimedSignature:
    """Predicate table including primed names and ``='``; only read by the
    enumerator, which never validates names."""

    predicates: tuple
    constants: frozenset
    free: bool = False

    def __post_init__(self):
        preds = dict(self.predicates)
        preds["='"] = 2
        object.__setattr__(self, "predicates", tuple(sorted(preds.items())))


def check_heredity(b: Bounds, depth: int = 0, formulas=None, limit: int = 0) -> list:
    """(model, world, C) where C holds at a world but not at a successor."""
    formulas = generate_formulas(depth) if formulas is None else formulas
    out = []
    for m in enumerate_models(b):
        for c in formulas:
            for (w, v) in m.rel:
                if w != v and evaluate(m, w, c) and not evaluate(m, v, c):
                    out.append(Discrepancy("heredity", m, w, c, f"lost at {v}"))
                    if limit and len(out) >= limit:
                        return out
    return out


def check_description_unfolding(b: Bounds, var: str = "x", depth: int = 0,
                                limit: int = 0) -> list:
    """(model, world, I x[F, G]) whose value differs from its Russellian
    expansion.  F and G range over formulas of depth <= ``depth`` in the
    bound variable, built from the predicates of ``b``."""
    preds = tuple(p for p, n in b.signature.predicates if n == 1)
    bodies = _open_bodies(depth, preds, var, b.kind == NELSONIAN)
    pairs = [Desc(var, f, g) for f in bodies for g in bodies]
    expansions = [russell_unfolding(d) for d in pairs]
    out = []
    for m in enumerate_models(b):
        for w in m.worlds:
            for d, r in zip(pairs, expansions):
                left, right = evaluate(m, w, d), evaluate(m, w, r)
                if left != right:
                    out.append(Discrepancy("description", m, w, d,
                                           f"I={left} expansion={right}"))
                    if limit and len(out) >= limit:
                        return out
    return out


def _open_bodies(depth, preds, var, negation) -> list:
    x = Var(var)
    layer = [Atom(p, (x,)) for p in preds]
    out = list(layer)
    for _ in range(depth):
        nxt = []
        if negation:
            nxt += [Not(a) for a in layer]
        nxt += [op(a, c) for op in (And, Or, Imp) for a in out for c in out
                if a in layer or c in layer]
        out += nxt
        layer = nxt
    return out


# ------------------------------------------------------------ batched sweeps

@dataclass
class SweepReport:
    """Outcome of a batched sweep; discrepancies carry (check, model, world,
    formula) for the first ``limit`` hits of each check."""

    models: int = 0
    skeletons: int = 0
    formulas: int = 0
    checks: int = 0
    counts: dict = field(default_factory=dict)
    examples: list = field(default_factory=list)

    def record(self, check, ev, mask, w, formula, detail, limit):
        self.counts[check] = self.counts.get(check, 0) + bin(mask).count("1")
        if len(self.examples) < limit:
            index = (mask & -mask).bit_length() - 1
            self.examples.append(Discrepancy(check, ev.model(index), w, formula, detail))

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def sweep(b: Bounds, formulas, pairing: bool = True, heredity: bool = True,
          reader: Callable = paired_reader, limit: int = 10) -> SweepReport:
    """Pairing and heredity over every model within ``b`` in one pass.

    For nelsonian bounds, pairing compares each C against tau(C) read on
    the paired model (primed atoms read the negative slots), and heredity
    covers truth and falsity of C and truth of tau(C).  For
    intuitionistic bounds only heredity is checked.
    """
    nelson = b.kind == NELSONIAN
    pairing = pairing and nelson
    table = FormulaTable()
    formulas = [table.intern(c) for c in formulas]
    kept, translated = translatable(formulas) if pairing else (formulas, [])
    trans = {id(c): table.intern(tc) for c, tc in zip(kept, translated)}
    rep = SweepReport(formulas=len(formulas))
    for pack in pack_skeletons(enumerate_skeletons(b)):
        rep.skeletons += len(pack)
        ev = BatchEvaluator(pack, table=table)
        iv = BatchEvaluator(pack, nelson=False, reader=reader, table=table) if pairing else None
        rep.models += ev.size
        full = ev.all
        edges = [(w, v) for (w, v) in sorted(pack[0].rel) if w != v]
        for w in ev.worlds:
            for c in formulas:
                tc = trans.get(id(c))
                if tc is None:
                    continue
                rep.checks += ev.size
                diff = ev.true(w, c) ^ iv.true(w, tc)
                if diff:
                    rep.record("pairing", ev, diff, w, c, "", limit)
        if not heredity:
            continue
        for w, v in edges:
            for c in formulas:
                lost = ev.true(w, c) & (full ^ ev.true(v, c))
                if lost:
                    rep.record("heredity", ev, lost, w, c, f"truth lost at {v}", limit)
                if nelson:
                    lost = ev.false(w, c) & (full ^ ev.false(v, c))
                    if lost:
                        rep.record("heredity", ev, lost, w, c, f"falsity lost at {v}", limit)
                tc = trans.get(id(c))
                if tc is not None:
                    lost = iv.true(w, tc) & (full ^ iv.true(v, tc))
                    if lost:
                        rep.record("heredity-tau", ev, lost, w, tc, f"lost at {v}", limit)
                rep.checks += ev.size
    return rep


def description_bodies(preds=("P", "Q"), var: str = "x", negation: bool = True,
                       bot: bool = False) -> list:
    """Restrictors and scopes for the description check: the atoms of
    ``preds`` in ``var``, their strong negations or bot-negations, and
    identity with the bound variable's own value."""
    x = Var(var)
    atoms = [Atom(p, (x,)) for p in preds]
    out = list(atoms)
    if negation:
        out += [Not(a) for a in atoms]
    if bot:
        out += [Imp(a, Bot()) for a in atoms]
    return out


def sweep_descriptions(b: Bounds, bodies=None, var: str = "x",
                       limit: int = 10) -> SweepReport:
    """Compare ``I x[F, G]`` with its Russellian expansion at every world of
    every model within ``b``, for F and G drawn from ``bodies``."""
    nelson = b.kind == NELSONIAN
    if bodies is None:
        preds = tuple(p for p, n in b.signature.predicates if n == 1)
        bodies = description_bodies(preds, var, negation=nelson, bot=not nelson)
    table = FormulaTable()
    descs = [table.intern(Desc(var, f, g)) for f in bodies for g in bodies]
    expansions = [table.intern(russell_unfolding(d)) for d in descs]
    rep = SweepReport(formulas=len(descs))
    for pack in pack_skeletons(enumerate_skeletons(b)):
        rep.skeletons += len(pack)
        ev = BatchEvaluator(pack, table=table)
        rep.models += ev.size
        for w in ev.worlds:
            for d, r in zip(descs, expansions):
                rep.checks += ev.size
                diff = ev.true(w, d) ^ ev.true(w, r)
                if diff:
                    rep.record("description", ev, diff, w, d, "", limit)
    return rep
