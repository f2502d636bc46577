from hypothesis import given

from gentle_ext.cohomology import cohomology
from gentle_ext.presentation import load_fixture
from gentle_ext.resolution import project
from gentle_ext.strings import BandWord, StringWord, canonical_form, parse_walk
from strategies import algebra_and_word


def test_simple_top_of_a2():
    a2 = load_fixture("a2")
    r = project(a2, StringWord(parse_walk("1_1", a2)))
    assert r.case_tag == 3
    assert str(r.core) == "a" and r.core.degrees() == [0, -1]


def test_projective_is_a_stalk():
    a2 = load_fixture("a2")
    r = project(a2, StringWord(parse_walk("a", a2)))
    assert r.case_tag == 4
    assert not r.core.letters and r.core.slots() == ["1"] and r.core.degrees() == [0]


def test_band_resolution():
    k = load_fixture("kronecker")
    r = project(k, BandWord(parse_walk("b- a", k)))
    assert r.case_tag == 5 and r.core.is_band
    assert set(r.core.degrees()) == {-1, 0}


def test_truncated_periodic_antipath():
    c3 = load_fixture("c3")
    r = project(c3, StringWord(parse_walk("1_1", c3)), min_degree=-4)
    assert r.case_tag == 3
    assert r.core.truncated_left and not r.core.truncated_right
    assert r.core.degrees() == [0, -1, -2, -3, -4]
    assert [str(x) for x in r.core.letters] == ["a", "b", "c", "a"]


@given(algebra_and_word())
def test_resolution_cohomology_is_the_module(pw):
    p, w = pw
    result = cohomology(p, project(p, w, min_degree=-5).core)
    got = {d: [canonical_form(p, s.word) for s in ss] for d, ss in result.reliable_summands().items()}
    assert got == {0: [canonical_form(p, w)]}


@given(algebra_and_word())
def test_resolution_shape(pw):
    p, w = pw
    core = project(p, w).core
    degs = core.degrees()
    assert max(degs) == 0
    if w.is_band:
        assert set(degs) == {-1, 0}
    for k, letter in enumerate(core.letters):
        if letter.length > 1:
            assert {degs[k], degs[k + 1]} <= {-1, 0}
