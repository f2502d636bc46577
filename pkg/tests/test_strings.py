import json

from hypothesis import given
from hypothesis import strategies as st

from gentle_ext.presentation import load_fixture, load_presentation
from gentle_ext.strings import (
    BandWord,
    StringWord,
    band_rotations,
    canonical_form,
    dimension_vector,
    enumerate_bands,
    enumerate_strings,
    is_band,
    is_string,
    parse_walk,
)
from strategies import algebra_and_word, algebras

LOOP = {"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}], "relations": [["x", "x"]]}


def walk(p, text):
    return parse_walk(text, p)


def test_is_string_examples():
    a2, c3 = load_fixture("a2"), load_fixture("c3")
    assert is_string(a2, walk(a2, "a"))
    assert not is_string(a2, walk(a2, "a a"))
    assert not is_string(c3, walk(c3, "b a"))


def test_is_band_examples():
    k = load_fixture("kronecker")
    loop = load_presentation(json.dumps(LOOP))
    assert is_band(k, walk(k, "b- a"))
    assert not is_band(loop, walk(loop, "x"))
    assert not is_band(k, walk(k, "b- a b- a"))


def test_canonical_form_examples():
    k, a2, p = load_fixture("kronecker"), load_fixture("a2"), load_fixture("paper-example")
    assert canonical_form(k, BandWord(walk(k, "a b-"))) == canonical_form(k, BandWord(walk(k, "b- a")))
    assert canonical_form(a2, StringWord(walk(a2, "a-"))) == canonical_form(a2, StringWord(walk(a2, "a")))
    assert canonical_form(p, StringWord(walk(p, "h- i"))) == canonical_form(p, StringWord(walk(p, "i- h")))


def test_enumerate_strings_examples():
    assert [str(w) for w in enumerate_strings(load_fixture("a2"), 2)] == ["1_1", "1_2", "a"]
    assert [str(w) for w in enumerate_strings(load_fixture("kronecker"), 1)] == ["1_1", "1_2", "a", "b"]
    assert len(enumerate_strings(load_fixture("c3"), 2)) == 6


def test_enumerate_bands_examples():
    assert enumerate_bands(load_fixture("a2"), 6) == []
    k = load_fixture("kronecker")
    assert enumerate_bands(k, 2) == [canonical_form(k, BandWord(walk(k, "b- a")))]
    assert enumerate_bands(load_fixture("c3"), 6) == []


def test_dimension_vector_examples():
    a2, k = load_fixture("a2"), load_fixture("kronecker")
    assert dimension_vector(a2, StringWord(walk(a2, "a"))) == {"1": 1, "2": 1}
    assert dimension_vector(a2, StringWord(walk(a2, "1_1"))) == {"1": 1, "2": 0}
    assert dimension_vector(k, BandWord(walk(k, "b- a"))) == {"1": 1, "2": 1}
    assert dimension_vector(k, StringWord(walk(k, "b- a"))) == {"1": 2, "2": 1}


@given(algebra_and_word(), st.data())
def test_canonical_form_invariance(pw, data):
    p, w = pw
    if w.is_band:
        variants = [BandWord(r) for r in band_rotations(p, w.walk)]
    else:
        variants = [w, StringWord(w.walk.inverse(p))]
    v = data.draw(st.sampled_from(variants))
    assert canonical_form(p, v) == canonical_form(p, w) == w
    assert canonical_form(p, canonical_form(p, v)) == canonical_form(p, v)


@given(algebras())
def test_band_rotations_are_strings(p):
    for b in enumerate_bands(p, 5):
        assert all(is_string(p, r) for r in band_rotations(p, b.walk))


@given(algebra_and_word())
def test_dimension_vector_invariance(pw):
    p, w = pw
    d = dimension_vector(p, w)
    if w.is_band:
        assert all(dimension_vector(p, BandWord(r)) == d for r in band_rotations(p, w.walk))
        assert sum(d.values()) == len(w.walk)
    else:
        assert dimension_vector(p, StringWord(w.walk.inverse(p))) == d
        assert sum(d.values()) == len(w.walk) + 1


@given(algebras())
def test_enumeration_monotone(p):
    sizes = [len(enumerate_strings(p, n)) for n in range(5)]
    assert sizes == sorted(sizes)
    assert set(enumerate_strings(p, 2)) <= set(enumerate_strings(p, 3))
