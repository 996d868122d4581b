import pytest
from hypothesis import given
import hypothesis.strategies as st

from nelsondd.syntax import (And, Atom, Bot, CaptureError, Const, Desc, Exists, Forall,
                             Imp, LanguageError, Not, Or, ParseError, Signature, Var,
                             check_language, constants, eq, free_vars, is_free_for,
                             negated_description_unfolding, parse_formula,
                             parse_formula_prefix, parse_term, predicates,
                             russell_unfolding, substitute, to_text)

from conftest import CONSTS, VARS, formulas, terms

P = lambda t: Atom("P", (t,))
x, y, a = Var("x"), Var("y"), Const("a")


# ---- independent oracle: nameless (de Bruijn) form

def nameless(f, env=()):
    """Bound variables become their binder depth; free ones keep names."""
    def term(t):
        if isinstance(t, Var) and t.name in env:
            return ("bound", len(env) - 1 - env[::-1].index(t.name))
        return (type(t).__name__, t.name)
    if isinstance(f, Atom):
        return ("atom", f.pred, tuple(term(t) for t in f.args))
    if isinstance(f, Bot):
        return ("bot",)
    if isinstance(f, Not):
        return ("not", nameless(f.body, env))
    if isinstance(f, (And, Or, Imp)):
        return (type(f).__name__, nameless(f.left, env), nameless(f.right, env))
    if isinstance(f, (Forall, Exists)):
        return (type(f).__name__, nameless(f.body, env + (f.var,)))
    inner = env + (f.var,)
    return ("desc", nameless(f.restrictor, inner), nameless(f.scope, inner))


def nameless_subst(n, x, t):
    """Replace the free name ``x`` in a nameless form; nothing can capture."""
    if n[0] == "atom":
        return ("atom", n[1], tuple((type(t).__name__, t.name)
                                    if arg == ("Var", x) else arg for arg in n[2]))
    return tuple(nameless_subst(c, x, t) if isinstance(c, tuple) and c and
                 isinstance(c[0], str) and c[0] in ("atom", "bot", "not", "And", "Or",
                                                     "Imp", "Forall", "Exists", "desc")
                 else c for c in n)


# ---- printing and parsing

@pytest.mark.parametrize("text, expected", [
    ("P(a) & Q(a) | R(a, b)", Or(And(P(a), Atom("Q", (a,))), Atom("R", (a, Const("b"))))),
    ("P(a) -> P(a) -> P(a)", Imp(P(a), Imp(P(a), P(a)))),
    ("P(a) & P(a) & P(a)", And(And(P(a), P(a)), P(a))),
    ("~~P(a)", Not(Not(P(a)))),
    ("~x = a", Not(eq(x, a))),
    ("forall x. P(x) -> P(a)", Forall("x", Imp(P(x), P(a)))),
    ("(forall x. P(x)) -> P(a)", Imp(Forall("x", P(x)), P(a))),
    ("I x[P(x), ~P(x)]", Desc("x", P(x), Not(P(x)))),
    ("E!(a) & bot", And(Atom("E!", (a,)), Bot())),
    ("x =' a | E!'(x)", Or(Atom("='", (x, a)), Atom("E!'", (x,)))),
])
def test_parse_examples(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize("f, text", [
    (Imp(Imp(P(a), P(a)), P(a)), "(P(a) -> P(a)) -> P(a)"),
    (And(P(a), Or(P(a), P(a))), "P(a) & (P(a) | P(a))"),
    (Not(And(P(a), P(a))), "~(P(a) & P(a))"),
    (And(Exists("x", P(x)), P(a)), "(exists x. P(x)) & P(a)"),
    (Not(Forall("x", P(x))), "~(forall x. P(x))"),
    (Not(eq(y, x)), "~y = x"),
])
def test_printer_brackets_only_where_needed(f, text):
    assert to_text(f) == text


@given(formulas(bot=True))
def test_print_parse_round_trip(f):
    assert parse_formula(to_text(f)) == f


@pytest.mark.parametrize("text, pos", [
    ("forall x. P(x", 13),
    ("P(a) &", 6),
    ("P(a) $ Q(a)", 5),
    ("I x[P(x) G(x)]", 9),
])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_formula(text)
    assert err.value.pos == pos


def test_inconsistent_arity_is_rejected():
    with pytest.raises(ParseError):
        parse_formula("P(a) & P(a, b)")


def test_prefix_parse_stops_before_foreign_token():
    f, end = parse_formula_prefix("P(a) & Q(a) :var x", 0)
    assert to_text(f) == "P(a) & Q(a)" and end == 12


def test_parse_term():
    assert parse_term("x") == x and parse_term("a") == a
    with pytest.raises(ParseError):
        parse_term("P(a)")


# ---- languages and signatures

def test_language_separation():
    with pytest.raises(ParseError):
        parse_formula("~P(a)", language="bot")
    with pytest.raises(ParseError):
        parse_formula("bot", language="neg")
    check_language(parse_formula("P(a) -> bot"), "bot")
    with pytest.raises(LanguageError):
        check_language(Not(P(a)), "bot")


def test_signature_checks():
    sig = Signature.of({"P": 1}, {"a"})
    sig.check(parse_formula("forall x. P(x) -> x = a"))
    with pytest.raises(LanguageError):
        sig.check(parse_formula("E!(a)"))
    with pytest.raises(LanguageError):
        sig.check(parse_formula("P'(a)"))
    sig.extended().check(parse_formula("P'(a) & a =' a"))
    Signature.of({"P": 1}, {"a"}, free=True).check(parse_formula("E!(a)"))
    with pytest.raises(ValueError):
        Signature.of({"P": 1}, {"k0"})
    with pytest.raises(ValueError):
        Signature.of({"p": 1})


def test_predicates_and_constants():
    f = parse_formula("forall x. R(x, a) -> E!(b)")
    assert predicates(f) == {"R": 2, "E!": 1}
    assert constants(f) == {"a", "b"}


# ---- binding and substitution

def test_free_vars():
    assert free_vars(parse_formula("forall x. R(x, y)")) == {"y"}
    assert free_vars(parse_formula("I x[P(x), R(x, z)]")) == {"z"}


def test_strict_substitution_refuses_capture():
    f = Forall("y", Atom("R", (x, y)))
    assert not is_free_for(y, "x", f)
    with pytest.raises(CaptureError):
        substitute(f, "x", y)
    g = substitute(f, "x", y, strict=False)
    assert to_text(g) == "forall y1. R(y,y1)"


def test_substitution_leaves_bound_occurrences():
    f = parse_formula("P(x) & forall x. P(x)")
    assert to_text(substitute(f, "x", a)) == "P(a) & (forall x. P(x))"


@given(formulas(), st.sampled_from(VARS), terms)
def test_renaming_substitution_matches_nameless_oracle(f, v, t):
    out = substitute(f, v, t, strict=False)
    assert nameless(out) == nameless_subst(nameless(f), v, t)


@given(formulas(), st.sampled_from(VARS), terms)
def test_strict_substitution_raises_exactly_on_capture(f, v, t):
    if is_free_for(t, v, f):
        assert substitute(f, v, t) == substitute(f, v, t, strict=False)
    else:
        with pytest.raises(CaptureError):
            substitute(f, v, t)


@given(formulas(), st.sampled_from(VARS), st.sampled_from([Const(c) for c in CONSTS]))
def test_closing_substitution_removes_the_variable(f, v, c):
    assert free_vars(substitute(f, v, c)) == free_vars(f) - {v}


@given(formulas(), st.sampled_from(VARS))
def test_identity_substitution(f, v):
    assert substitute(f, v, Var(v)) == f


# ---- unfoldings

def test_russell_unfolding_shape():
    d = parse_formula("I x[F(x), G(x)]")
    assert to_text(russell_unfolding(d)) == \
        "exists x. F(x) & (forall y. F(y) -> y = x) & G(x)"
    assert to_text(negated_description_unfolding(d)) == \
        "forall x. ~F(x) | (exists y. F(y) & ~y = x) | ~G(x)"


def test_unfolding_picks_a_fresh_variable():
    d = parse_formula("I x[R(x, y), P(y)]")
    assert to_text(russell_unfolding(d)) == \
        "exists x. R(x,y) & (forall y1. R(y1,y) -> y1 = x) & P(y)"
