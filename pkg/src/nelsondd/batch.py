"""Evaluation over every extension choice of a skeleton at once.

A skeleton fixes frame, intensions, constants, domains and existents; its
models differ only in which monotone family each predicate slot takes.
Model ``i`` of the skeleton corresponds to bit ``i`` of a Python integer,
so a formula's truth at a world over all models is one integer and the
connectives become bitwise operations.  The clauses mirror
``semantics._Evaluator`` one for one; the test suite checks the two
against each other model by model.
"""
from __future__ import annotations

from .embedding import prime
from .semantics import NELSONIAN
from .syntax import (EQ, EX, And, Atom, Binary, Bot, Const, Desc, Exists, Forall, Imp,
                     Not, Or, Var, negated_description_unfolding)

__all__ = ["BatchEvaluator", "FormulaTable", "pack_skeletons", "paired_reader"]


class FormulaTable:
    """Hash-consed formulas with memoised closing substitution.

    Structurally equal formulas come back as one object, so evaluator
    caches keyed by identity are shared between every formula that
    contains them.  One table can serve any number of evaluators.
    """

    def __init__(self):
        self._nodes = {}
        self._subst = {}
        self._unfold = {}
        self._free = {}

    def intern(self, a):
        if id(a) in self._free:  # already the canonical object
            return a
        if isinstance(a, Atom):
            key = ("atom", a.pred, a.args)
        elif isinstance(a, Bot):
            key = ("bot",)
        elif isinstance(a, Not):
            a = Not(self.intern(a.body))
            key = ("not", id(a.body))
        elif isinstance(a, Binary):
            a = type(a)(self.intern(a.left), self.intern(a.right))
            key = (type(a).__name__, id(a.left), id(a.right))
        elif isinstance(a, Desc):
            a = Desc(a.var, self.intern(a.restrictor), self.intern(a.scope))
            key = ("desc", a.var, id(a.restrictor), id(a.scope))
        else:
            a = type(a)(a.var, self.intern(a.body))
            key = (type(a).__name__, a.var, id(a.body))
        hit = self._nodes.get(key)
        if hit is None:
            hit = self._nodes[key] = a
            self._free[id(a)] = self._free_of(a)
        return hit

    def _free_of(self, a) -> frozenset:
        f = self._free
        if isinstance(a, Atom):
            return frozenset(t.name for t in a.args if isinstance(t, Var))
        if isinstance(a, Bot):
            return frozenset()
        if isinstance(a, Not):
            return f[id(a.body)]
        if isinstance(a, Binary):
            return f[id(a.left)] | f[id(a.right)]
        if isinstance(a, Desc):
            return (f[id(a.restrictor)] | f[id(a.scope)]) - {a.var}
        return f[id(a.body)] - {a.var}

    def subst(self, a, x: str, k: Const):
        """``a`` (interned) with the constant ``k`` for free ``x``."""
        key = (id(a), x, k.name)
        hit = self._subst.get(key)
        if hit is not None:
            return hit
        if x not in self._free[id(a)]:
            out = a
        elif isinstance(a, Atom):
            out = self.intern(Atom(a.pred, tuple(k if isinstance(t, Var) and t.name == x
                                                  else t for t in a.args)))
        elif isinstance(a, Not):
            out = self.intern(Not(self.subst(a.body, x, k)))
        elif isinstance(a, Binary):
            out = self.intern(type(a)(self.subst(a.left, x, k), self.subst(a.right, x, k)))
        elif isinstance(a, Desc):
            out = self.intern(Desc(a.var, self.subst(a.restrictor, x, k),
                                   self.subst(a.scope, x, k)))
        else:
            out = self.intern(type(a)(a.var, self.subst(a.body, x, k)))
        self._subst[key] = out
        return out

    def unfold_negated(self, a):
        hit = self._unfold.get(id(a))
        if hit is None:
            hit = self._unfold[id(a)] = self.intern(negated_description_unfolding(a))
        return hit


class _Part:
    """One skeleton inside a pack: its bit offset and lookup tables."""

    def __init__(self, sk, offset):
        self.sk = sk
        self.offset = offset
        self.size = sk.size
        self.range = ((1 << sk.size) - 1) << offset
        names = tuple(sk.intensions)
        self.table = {f"k{i}": d for i, d in enumerate(names)}
        self.table.update(sk.consts)
        self.J = {w: frozenset(sk.intensions[d][w] for d in sk.exists[w])
                  for w in sk.worlds}
        self.slot_index = {(side, p): i for i, (side, p, _) in enumerate(sk.slots)}

    def value(self, name, w):
        d = self.table.get(name)
        return None if d is None else self.sk.intensions[d][w]


class BatchEvaluator:
    """Truth masks for closed formulas over the models of one skeleton, or
    of several skeletons that share worlds and order.

    Skeletons are laid end to end: skeleton ``j`` owns bits
    ``[offset_j, offset_j + size_j)``.  Quantifiers range over the injected
    constants of every skeleton, each instance masked by the models whose
    range contains it.  ``nelson`` selects the paradefinite valuation;
    ``reader`` maps an atom's (side, predicate) to the slot holding its
    extension (default: ``pos``/``neg`` slots by name).
    """

    def __init__(self, skeletons, nelson=None, reader=None, table=None):
        if not isinstance(skeletons, (list, tuple)):
            skeletons = [skeletons]
        first = skeletons[0]
        for sk in skeletons:
            if sk.worlds != first.worlds or sk.rel != first.rel or sk.kind != first.kind:
                raise ValueError("packed skeletons must share worlds, order and kind")
        self.parts = []
        offset = 0
        for sk in skeletons:
            self.parts.append(_Part(sk, offset))
            offset += sk.size
        self.size = offset
        self.all = (1 << offset) - 1
        self.worlds = first.worlds
        self.table_ = table or FormulaTable()
        self.nelson = first.kind == NELSONIAN if nelson is None else nelson
        self.reader = reader or (lambda side, p: (side, p))
        self.succ = {w: tuple(v for v in first.worlds if (w, v) in first.rel)
                     for w in first.worlds}
        width = max(len(sk.intensions) for sk in skeletons)
        self.present = {}   # (world, constant) -> models whose range holds it
        for w in self.worlds:
            for i in range(width):
                mask = 0
                for part in self.parts:
                    d = part.table.get(f"k{i}")
                    if d is not None and d in part.sk.exists[w]:
                        mask |= part.range
                self.present[w, f"k{i}"] = mask
        self.rng = {w: tuple(Const(f"k{i}") for i in range(width)
                             if self.present[w, f"k{i}"]) for w in self.worlds}
        self.pos_cache = {w: {} for w in self.worlds}
        self.neg_cache = {w: {} for w in self.worlds}
        self._digit = {}
        self._atom = {}
        self._ident = {}
        self._rival_cache = {}

    def locate(self, bit: int) -> tuple:
        """(skeleton, model index) for a bit position."""
        for part in self.parts:
            if part.offset <= bit < part.offset + part.size:
                return part.sk, bit - part.offset
        raise IndexError(bit)

    def model(self, bit: int):
        sk, index = self.locate(bit)
        return sk.model(index)

    # -- atoms

    def digit_mask(self, j: int, s: int, i: int) -> int:
        """Models of skeleton ``j`` whose slot ``s`` takes family ``i``."""
        key = (j, s, i)
        hit = self._digit.get(key)
        if hit is not None:
            return hit
        part = self.parts[j]
        slots = part.sk.slots
        stride = 1
        for _, _, fams in slots[s + 1:]:
            stride *= len(fams)
        period = stride * len(slots[s][2])
        mask = ((1 << stride) - 1) << (i * stride)
        width = period
        while width < part.size:  # repeat the period by doubling
            mask |= mask << width
            width *= 2
        mask = (mask & ((1 << part.size) - 1)) << part.offset
        self._digit[key] = mask
        return mask

    def _where(self, test) -> int:
        """Union of the ranges of the skeletons satisfying ``test``."""
        mask = 0
        for part in self.parts:
            if test(part):
                mask |= part.range
        return mask

    def _values(self, part, args, w):
        vals = tuple(part.value(t.name, w) for t in args)
        return None if None in vals else vals

    def extension_mask(self, side: str, pred: str, w: str, args: tuple) -> int:
        key = (side, pred, w, args)
        hit = self._atom.get(key)
        if hit is not None:
            return hit
        mask = 0
        slot_key = self.reader(side, pred)
        for j, part in enumerate(self.parts):
            s = part.slot_index.get(slot_key)
            vals = self._values(part, args, w)
            if s is None or vals is None:
                continue
            for i, fam in enumerate(part.sk.slots[s][2]):
                if vals in fam.get(w, ()):
                    mask |= self.digit_mask(j, s, i)
        self._atom[key] = mask
        return mask

    def identical(self, kd, ke, w) -> int:
        """Models where ``kd`` and ``ke`` name the same existent at ``w``."""
        key = (kd.name, ke.name, w)
        hit = self._ident.get(key)
        if hit is None:
            def same(part):
                h = part.value(kd.name, w)
                return h is not None and h == part.value(ke.name, w) and h in part.J[w]
            hit = self._ident[key] = self._where(same)
        return hit

    # -- clauses

    def intern(self, a):
        return self.table_.intern(a)

    def true(self, w, a) -> int:
        """Mask of models where ``a`` is true at ``w``."""
        return self._t(w, self.table_.intern(a))

    def false(self, w, a) -> int:
        """Mask of models where ``a`` is false at ``w`` (strong negation)."""
        return self._f(w, self.table_.intern(a))

    def _t(self, w, a) -> int:
        cache = self.pos_cache[w]
        hit = cache.get(id(a))
        if hit is not None:
            return hit
        r = self._true(w, a)
        if r == self.all:
            r = self.all  # share one object for the common full mask
        cache[id(a)] = r
        return r

    def _f(self, w, a) -> int:
        cache = self.neg_cache[w]
        hit = cache.get(id(a))
        if hit is not None:
            return hit
        r = self._false(w, a)
        if r == self.all:
            r = self.all
        cache[id(a)] = r
        return r

    def _true(self, w, a) -> int:
        ALL = self.all
        if isinstance(a, Atom):
            for t in a.args:
                if isinstance(t, Var):
                    raise ValueError(f"free variable {t.name}")
            if a.pred == EX:
                name = a.args[0].name
                return self._where(lambda p: p.table.get(name) in p.sk.exists[w])
            if a.pred == EQ:
                return self.identical(a.args[0], a.args[1], w)
            return self.extension_mask("pos", a.pred, w, a.args)
        if isinstance(a, Bot):
            return 0
        if isinstance(a, Not):
            return self._f(w, a.body)
        if isinstance(a, And):
            return self._t(w, a.left) & self._t(w, a.right)
        if isinstance(a, Or):
            return self._t(w, a.left) | self._t(w, a.right)
        if isinstance(a, Imp):
            r = ALL
            for v in self.succ[w]:
                r &= (ALL ^ self._t(v, a.left)) | self._t(v, a.right)
            return r
        sub = self.table_.subst
        if isinstance(a, Forall):
            r = ALL
            for v in self.succ[w]:
                for k in self.rng[v]:
                    r &= (ALL ^ self.present[v, k.name]) | self._t(v, sub(a.body, a.var, k))
            return r
        if isinstance(a, Exists):
            r = 0
            for k in self.rng[w]:
                r |= self.present[w, k.name] & self._t(w, sub(a.body, a.var, k))
            return r
        if isinstance(a, Desc):
            return self._description(w, a)
        raise TypeError(f"not a formula: {a!r}")

    def _rivals(self, w, kd) -> tuple:
        """(world, constant, guard) triples: ``kd`` is the unique witness
        from ``w`` in the models where, for each triple, the restrictor
        fails for the constant at the world or the guard fails."""
        key = (w, kd.name)
        hit = self._rival_cache.get(key)
        if hit is None:
            guards = {}
            for v1 in self.succ[w]:
                for ke in self.rng[v1]:
                    for v2 in self.succ[v1]:
                        g = self.present[v1, ke.name] & (self.all ^ self.identical(kd, ke, v2))
                        if g:
                            guards[v2, ke] = guards.get((v2, ke), 0) | g
            hit = self._rival_cache[key] = tuple((v2, ke, g) for (v2, ke), g in guards.items())
        return hit

    def _description(self, w, a) -> int:
        ALL = self.all
        x, f, g = a.var, a.restrictor, a.scope
        sub = self.table_.subst
        r = 0
        for kd in self.rng[w]:
            m = self.present[w, kd.name] & self._t(w, sub(f, x, kd))
            if m:
                m &= self._t(w, sub(g, x, kd))
            for v2, ke, guard in self._rivals(w, kd):
                if not m:
                    break
                m &= ALL ^ (guard & self._t(v2, sub(f, x, ke)))
            r |= m
        return r

    def _false(self, w, a) -> int:
        ALL = self.all
        if isinstance(a, Atom):
            if a.pred == EX:
                name = a.args[0].name
                return self._where(lambda p: p.value(name, w) is not None
                                   and p.value(name, w) not in p.J[w])
            return self.extension_mask("neg", a.pred, w, a.args)
        if isinstance(a, Not):
            return self._t(w, a.body)
        if isinstance(a, Imp):
            return self._t(w, a.left) & self._f(w, a.right)
        if isinstance(a, And):
            return self._f(w, a.left) | self._f(w, a.right)
        if isinstance(a, Or):
            return self._f(w, a.left) & self._f(w, a.right)
        sub = self.table_.subst
        if isinstance(a, Forall):
            r = 0
            for k in self.rng[w]:
                r |= self.present[w, k.name] & self._f(w, sub(a.body, a.var, k))
            return r
        if isinstance(a, Exists):
            r = ALL
            for v in self.succ[w]:
                for k in self.rng[v]:
                    r &= (ALL ^ self.present[v, k.name]) | self._f(v, sub(a.body, a.var, k))
            return r
        if isinstance(a, Desc):
            return self._t(w, self.table_.unfold_negated(a))
        if isinstance(a, Bot):
            raise TypeError("bot has no falsity clause")
        raise TypeError(f"not a formula: {a!r}")


def pack_skeletons(skeletons, max_bits: int = 1 << 15):
    """Group consecutive skeletons sharing worlds and order into packs of at
    most ``max_bits`` models (a larger skeleton forms a pack alone)."""
    pack, bits = [], 0
    for sk in skeletons:
        if pack and (sk.worlds != pack[0].worlds or sk.rel != pack[0].rel
                     or bits + sk.size > max_bits):
            yield pack
            pack, bits = [], 0
        pack.append(sk)
        bits += sk.size
    if pack:
        yield pack


def paired_reader(side: str, pred: str):
    """Slot lookup for the intuitionistic reading of a nelsonian skeleton:
    ``P'`` (and ``='``) read the negative slot of ``P`` (and ``=``)."""
    if side == "pos" and pred.endswith("'"):
        base = pred[:-1]
        assert prime(base) == pred
        return ("neg", base)
    return (side, pred)
