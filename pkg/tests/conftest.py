import hypothesis.strategies as st
from hypothesis import settings

from nelsondd.syntax import (EQ, EX, And, Atom, Bot, Const, Desc, Exists, Forall, Imp,
                             Not, Or, Var)

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")

VARS = ("x", "y", "z")
CONSTS = ("a", "b")

terms = st.one_of(st.sampled_from([Var(v) for v in VARS]),
                  st.sampled_from([Const(c) for c in CONSTS]))


def atoms(existence=True):
    parts = [
        st.builds(lambda t: Atom("P", (t,)), terms),
        st.builds(lambda t: Atom("Q", (t,)), terms),
        st.builds(lambda s, t: Atom("R", (s, t)), terms, terms),
        st.builds(lambda s, t: Atom(EQ, (s, t)), terms, terms),
    ]
    if existence:
        parts.append(st.builds(lambda t: Atom(EX, (t,)), terms))
    return st.one_of(*parts)


def formulas(negation=True, bot=False, description=True, existence=True, max_leaves=12):
    base = atoms(existence)
    if bot:
        base = st.one_of(base, st.just(Bot()))
    var = st.sampled_from(VARS)

    def extend(children):
        parts = [
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Imp, children, children),
            st.builds(Forall, var, children),
            st.builds(Exists, var, children),
        ]
        if negation:
            parts.append(st.builds(Not, children))
        if description:
            parts.append(st.builds(Desc, var, children, children))
        return st.one_of(*parts)

    return st.recursive(base, extend, max_leaves=max_leaves)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
