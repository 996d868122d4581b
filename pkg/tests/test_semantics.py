import itertools

import pytest
from hypothesis import given
import hypothesis.strategies as st

from nelsondd.kernel import LogicId, Sequent
from nelsondd.search import Bounds, enumerate_skeletons
from nelsondd.semantics import (EvaluationError, ModelFormatError, OpenFormula,
                                UnknownConstant, dump_model, eval_int, eval_nelson,
                                evaluate, holds_sequent, load_model, validate_model)
from nelsondd.syntax import Signature, parse_formula

ONE_WORLD_INT = """
kind: intuitionistic
worlds: w0
objects: h0
intension d0 = w0:h0
domain w0: d0
const a = d0
pos P w0: (h0)
"""

GLUT = """
kind: nelsonian
worlds: w0
objects: h0
intension d0 = w0:h0
domain w0: d0
const a = d0
pos P w0: (h0)
neg P w0: (h0)
pos Q w0:
neg Q w0: (h0)
"""


def model(text):
    m = load_model(text)
    assert validate_model(m) == []
    return m


def clauses(text):
    return {v.clause for v in validate_model(load_model(text))}


def holds(m, text, w="w0"):
    return evaluate(m, w, parse_formula(text))


# ---- validation

def test_one_world_model_is_valid():
    model(ONE_WORLD_INT)


def test_monotonicity_violation():
    text = """
kind: intuitionistic
worlds: w0 w1
rel: (w0,w1)
objects: h0
intension d0 = w0:h0 w1:h0
domain w0: d0
domain w1: d0
pos P w0: (h0)
pos P w1:
"""
    vs = validate_model(load_model(text))
    assert [str(v) for v in vs if v.clause == "extension-monotonicity"] == \
        ["extension-monotonicity: P, w0, w1, ('h0',)"]


def test_negative_extension_must_be_existent():
    text = """
kind: nelsonian free
worlds: w0
objects: h0
intension d0 = w0:h0
domain w0: d0
exists w0:
neg P w0: (h0)
"""
    assert "negative-strictness" in clauses(text)


@pytest.mark.parametrize("edit, clause", [
    ("domain w1: d0", "domain-monotonicity"),
    ("rel: (w1,w0)", "domain-monotonicity"),
])
def test_domain_must_grow_along_the_order(edit, clause):
    text = """
kind: intuitionistic
worlds: w0 w1
rel: (w0,w1)
objects: h0 h1
intension d0 = w0:h0 w1:h0
intension d1 = w0:h1 w1:h1
domain w0: d0 d1
domain w1: d0 d1
const a = d0
"""
    text = text.replace("domain w1: d0 d1", "domain w1: d0") if edit.startswith("domain") \
        else text.replace("domain w0: d0 d1", "domain w0: d0").replace("rel: (w0,w1)", edit)
    assert clause in clauses(text)


def test_objects_named_alike_stay_alike():
    text = """
kind: intuitionistic
worlds: w0 w1
rel: (w0,w1)
objects: h0 h1
intension d0 = w0:h0 w1:h0
intension d1 = w0:h0 w1:h1
domain w0: d0 d1
domain w1: d0 d1
"""
    assert "identity-persistence" in clauses(text)


def test_ordinary_models_need_existence_equal_to_domain():
    text = ONE_WORLD_INT.replace("domain w0: d0", "domain w0: d0\nexists w0:")
    assert "ordinary-existence" in clauses(text)


def test_relation_is_closed_on_load():
    text = ONE_WORLD_INT.replace("worlds: w0", "worlds: w0 w1 w2").replace(
        "intension d0 = w0:h0", "intension d0 = w0:h0 w1:h0 w2:h0")
    text += "domain w1: d0\ndomain w2: d0\nrel: (w0,w1) (w1,w2)\n"
    m = load_model(text)
    assert ("w0", "w2") in m.rel and ("w2", "w2") in m.rel


def test_structural_conditions_on_constructed_models():
    m = model(ONE_WORLD_INT)
    bad = m.with_(worlds=("w0", "w1"), rel=frozenset({("w0", "w0"), ("w0", "w1"),
                                                      ("w1", "w0")}))
    found = {v.clause for v in validate_model(bad)}
    assert {"reflexivity", "intension-total"} <= found
    bad = m.with_(rel=frozenset())
    assert {v.clause for v in validate_model(bad)} == {"reflexivity"}
    bad = m.with_(worlds=("w0", "w1", "w2"),
                  rel=frozenset({(w, w) for w in ("w0", "w1", "w2")} |
                                {("w0", "w1"), ("w1", "w2")}),
                  intensions={"d0": {"w0": "h0", "w1": "h0", "w2": "h0"}})
    assert "transitivity" in {v.clause for v in validate_model(bad)}


def test_intuitionistic_models_carry_no_negative_extensions():
    assert "negative-extension-in-intuitionistic-model" in \
        clauses(ONE_WORLD_INT + "neg P w0:\n")


@pytest.mark.parametrize("text", [
    "kind: modal\nworlds: w0\n",
    "worlds w0\n",
    "kind: intuitionistic\nworlds: w0\nintension d0 = w0\n",
])
def test_malformed_model_files(text):
    with pytest.raises(ModelFormatError):
        load_model(text)


# ---- intuitionistic evaluation

def test_atom_and_negation_surrogates():
    m = model(ONE_WORLD_INT)
    assert holds(m, "P(a)")
    assert not holds(m, "P(a) -> bot")
    assert holds(m, "(P(a) -> bot) -> bot")
    assert holds(m, "a = a") and not holds(m, "bot")


def test_excluded_middle_fails_at_the_root_of_a_two_world_chain():
    m = model("""
kind: intuitionistic
worlds: w0 w1
rel: (w0,w1)
objects: h0
intension d0 = w0:h0 w1:h0
domain w0: d0
domain w1: d0
const a = d0
pos P w0:
pos P w1: (h0)
""")
    assert not holds(m, "P(a) | (P(a) -> bot)", "w0")
    assert holds(m, "P(a) | (P(a) -> bot)", "w1")
    assert holds(m, "((P(a) -> bot) -> bot)", "w0")


def description_oracle(fs, gs, existents):
    """Single-world reading of the description clause: some existent is in
    F and G, and every existent in F is that same object."""
    return any(d in fs and d in gs and all(e == d for e in existents if e in fs)
               for d in existents)


def single_world(objects, f, g, existing, kind="intuitionistic"):
    lines = [f"kind: {kind} free", "worlds: w0", "objects: " + " ".join(objects)]
    lines += [f"intension d{o[1:]} = w0:{o}" for o in objects]
    lines.append("domain w0: " + " ".join(f"d{o[1:]}" for o in objects))
    lines.append("exists w0: " + " ".join(f"d{o[1:]}" for o in existing))
    lines.append("pos F w0: " + " ".join(f"({o})" for o in sorted(f)))
    lines.append("pos G w0: " + " ".join(f"({o})" for o in sorted(g)))
    return model("\n".join(lines) + "\n")


def test_description_examples():
    m = single_world(["h0"], {"h0"}, {"h0"}, ["h0"])
    assert holds(m, "I x[F(x), G(x)]")
    m = single_world(["h0", "h1"], {"h0", "h1"}, {"h0"}, ["h0", "h1"])
    assert not holds(m, "I x[F(x), G(x)]")


@pytest.mark.parametrize("kind", ["intuitionistic", "nelsonian"])
def test_description_matches_brute_force_on_single_worlds(kind):
    objects = ["h0", "h1", "h2"]
    subsets = [set(c) for r in range(4) for c in itertools.combinations(objects, r)]
    for existing in subsets:
        for f in subsets:
            for g in subsets:
                if not (f | g) <= existing:
                    continue
                m = single_world(objects, f, g, sorted(existing), kind)
                assert holds(m, "I x[F(x), G(x)]") == description_oracle(f, g, existing)


def test_description_uniqueness_looks_ahead():
    # unique F at w0, but a second F appears at w1
    m = model("""
kind: intuitionistic free
worlds: w0 w1
rel: (w0,w1)
objects: h0 h1
intension d0 = w0:h0 w1:h0
intension d1 = w0:h1 w1:h1
domain w0: d0 d1
domain w1: d0 d1
exists w0: d0
exists w1: d0 d1
pos F w0: (h0)
pos F w1: (h0) (h1)
pos G w0: (h0)
pos G w1: (h0)
""")
    assert not holds(m, "I x[F(x), G(x)]", "w0")
    assert holds(m, "exists x. F(x) & G(x)", "w0")


def test_free_quantifiers_range_over_existents():
    m = model("""
kind: intuitionistic free
worlds: w0
objects: h0 h1
intension d0 = w0:h0
intension d1 = w0:h1
domain w0: d0 d1
exists w0: d0
const a = d0
const b = d1
pos P w0: (h0)
""")
    assert holds(m, "forall x. P(x)") and holds(m, "E!(a)") and not holds(m, "E!(b)")
    assert not holds(m, "b = b")


# ---- nelsonian evaluation

def test_gluts():
    m = model(GLUT)
    assert holds(m, "P(a)") and holds(m, "~P(a)")
    assert holds(m, "~(P(a) & Q(a))") and not holds(m, "Q(a)")


@pytest.mark.parametrize("text", ["P(a)", "~P(a)", "Q(a)", "~Q(a)", "P(a) -> Q(a)"])
def test_double_negation_is_transparent(text):
    m = model(GLUT)
    assert holds(m, f"~~({text})") == holds(m, text)


def test_negated_existence_and_identity():
    m = model("""
kind: nelsonian free
worlds: w0
objects: h0 h1
intension d0 = w0:h0
intension d1 = w0:h1
domain w0: d0 d1
exists w0: d0
const a = d0
const b = d1
neg= w0: (h0,h0)
""")
    assert holds(m, "~E!(b)") and not holds(m, "~E!(a)")
    assert holds(m, "~a = a") and holds(m, "a = a")


def test_negated_description_uses_the_unfolding():
    m = single_world(["h0"], set(), set(), ["h0"], "nelsonian")
    assert not holds(m, "~I x[F(x), G(x)]")
    m2 = load_model(dump_model(m).replace("pos F w0:", "neg F w0: (h0)\npos F w0:"))
    assert holds(m2, "~I x[F(x), G(x)]")


def test_language_is_checked_against_kind():
    with pytest.raises(EvaluationError):
        eval_int(model(GLUT), "w0", parse_formula("~P(a)"))
    with pytest.raises(EvaluationError):
        eval_nelson(model(ONE_WORLD_INT), "w0", parse_formula("P(a) -> bot"))


def test_open_formula_and_unknown_constant():
    m = model(ONE_WORLD_INT)
    with pytest.raises(OpenFormula):
        holds(m, "P(x)")
    with pytest.raises(UnknownConstant):
        holds(m, "P(c)")


# ---- sequents

def test_sequents():
    m = model(GLUT)
    n4 = LogicId.parse("N4")
    pa, npa, qa = map(parse_formula, ("P(a)", "~P(a)", "Q(a)"))
    assert holds_sequent(m, Sequent(frozenset({pa}), pa, n4))
    assert not holds_sequent(m, Sequent(frozenset({pa, npa}), qa, n4))
    with pytest.raises(EvaluationError):
        holds_sequent(m, Sequent(frozenset(), pa, LogicId.parse("INT")))


# ---- file format

def sample_models():
    out = []
    for free in (False, True):
        for kind in ("nelsonian", "intuitionistic"):
            b = Bounds(2, 2, signature=Signature.of({"P": 1}, {"a"}), kind=kind, free=free)
            for i, sk in enumerate(enumerate_skeletons(b)):
                if i % 37 == 0:
                    out.append(sk.model(sk.size // 2))
    return out


SAMPLES = sample_models()


@given(st.sampled_from(SAMPLES))
def test_dump_load_round_trip(m):
    again = load_model(dump_model(m))
    assert again == m and dump_model(again) == dump_model(m)
    assert validate_model(again) == []
