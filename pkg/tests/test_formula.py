import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidlab import formula as fm
from rigidlab.errors import FormulaError

NAMES = ["p", "q", "r"]

leaf = st.one_of(st.sampled_from([("lit", n) for n in NAMES]),
                 st.sampled_from([("const", True), ("const", False)]))
trees = st.recursive(
    leaf,
    lambda kids: st.one_of(
        st.tuples(st.just("not"), kids),
        st.tuples(st.sampled_from(["and", "or", "imp", "iff"]), kids, kids)),
    max_leaves=8)


def classical(node, env):
    kind = node[0]
    if kind == "const":
        return node[1]
    if kind == "lit":
        return env[node[1]]
    if kind == "not":
        return not classical(node[1], env)
    a, b = classical(node[1], env), classical(node[2], env)
    return {"and": a and b, "or": a or b, "imp": (not a) or b, "iff": a == b}[kind]


def test_precedence():
    assert fm.parse("a & b -> c") == ("imp", ("and", ("lit", "a"), ("lit", "b")), ("lit", "c"))
    assert fm.parse("a -> b -> c") == ("imp", ("lit", "a"), ("imp", ("lit", "b"), ("lit", "c")))
    assert fm.parse("a | b & c")[0] == "or"
    assert fm.parse("!a <-> ~b") == ("iff", ("not", ("lit", "a")), ("not", ("lit", "b")))
    assert fm.parse("(a | b) & c")[0] == "and"


def test_presets_expand():
    node = fm.parse("q2.9")
    assert fm.literals(node) == ["sigma_rigid", "vn2_sigma_rigid"]
    assert fm.literals(fm.parse("drop_semicomm")) == [
        "sigma_rigid", "sigma_semicommutative", "skew_reduced_d1"]


@pytest.mark.parametrize("bad", ["", "a &", "(a", "a b", "& a", "a $ b", "a)"])
def test_parse_errors(bad):
    with pytest.raises(FormulaError):
        fm.parse(bad)


@settings(max_examples=200, deadline=None)
@given(trees)
def test_text_roundtrip(node):
    assert fm.parse(fm.to_text(node)) == node


@settings(max_examples=200, deadline=None)
@given(trees)
def test_two_valued_agrees_with_python(node):
    for values in itertools.product([False, True], repeat=len(NAMES)):
        env = dict(zip(NAMES, values))
        assert fm.evaluate(node, env.get) == classical(node, env)


@settings(max_examples=200, deadline=None)
@given(trees, st.sampled_from(NAMES))
def test_unknown_is_sound(node, hidden):
    # a definite answer with one literal unknown must match every completion
    for values in itertools.product([False, True], repeat=len(NAMES)):
        env = dict(zip(NAMES, values))
        partial = dict(env, **{hidden: None})
        got = fm.evaluate(node, partial.get)
        if got is not None:
            assert got == classical(node, env)


def test_lazy_implication():
    asked = []

    def lookup(name):
        asked.append(name)
        return False

    assert fm.evaluate(fm.parse("a -> b"), lookup) is True
    assert asked == ["a"]
