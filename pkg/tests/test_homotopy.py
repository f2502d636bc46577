import pytest
from hypothesis import given

from gentle_ext.homotopy import (
    HomotopyLetter,
    antipath,
    decompose_homotopy_letters,
    grade,
    homotopy_string_from_dict,
    homotopy_string_from_walk,
)
from gentle_ext.presentation import load_fixture
from gentle_ext.resolution import project
from gentle_ext.strings import Letter, Walk, parse_walk
from strategies import algebra_and_word, algebras

SIGMA = "i k- c- b- f- g- b- h- i l d"


def test_decompose_worked_example_walk():
    p = load_fixture("paper-example")
    letters = decompose_homotopy_letters(p, parse_walk("b- h- i l", p))
    assert [str(x) for x in letters] == ["i l", "b- h-"]
    assert [x.length for x in letters] == [2, 2]


def test_decompose_antipath_and_single_letter():
    c3, a2 = load_fixture("c3"), load_fixture("a2")
    assert [str(x) for x in decompose_homotopy_letters(c3, parse_walk("c b a", c3))] == ["a", "b", "c"]
    assert [str(x) for x in decompose_homotopy_letters(a2, parse_walk("a", a2))] == ["a"]


def test_decompose_rejects_cancellation():
    k = load_fixture("kronecker")
    with pytest.raises(ValueError):
        decompose_homotopy_letters(k, Walk("1", (Letter("a"), Letter("a", True))))


def test_antipath_examples():
    c3, a2, k = load_fixture("c3"), load_fixture("a2"), load_fixture("kronecker")
    cyc = antipath(c3, Letter("a"))
    assert cyc.prefix == () and cyc.cycle == ("a", "b", "c")
    assert antipath(a2, Letter("a")).arrows() == ("a",)
    assert antipath(k, Letter("a")).arrows() == ("a",)


def test_grade_examples():
    a2, k, p = load_fixture("a2"), load_fixture("kronecker"), load_fixture("paper-example")
    pi = grade([HomotopyLetter(a2.path(["a"]))], 0, start="1", p=a2)
    assert pi.slots() == ["1", "2"] and pi.degrees() == [0, -1]
    sigma = homotopy_string_from_walk(p, parse_walk(SIGMA, p), -1)
    assert sigma.slots()[0] == "4"
    assert list(reversed(sigma.degrees())) == [0, 1, 0, -1, -2, -3, -2, -1]
    band = grade([HomotopyLetter(k.path(["a"])), HomotopyLetter(k.path(["b"]), True)], 0, is_band=True, start="1", p=k)
    assert set(band.degrees()) == {-1, 0}


def test_grade_rejects_unbalanced_band():
    k = load_fixture("kronecker")
    with pytest.raises(ValueError):
        grade([HomotopyLetter(k.path(["a"]))], 0, is_band=True, start="1", p=k)


def test_json_round_trip():
    p = load_fixture("paper-example")
    sigma = homotopy_string_from_walk(p, parse_walk(SIGMA, p), -1)
    assert homotopy_string_from_dict(p, sigma.to_dict()) == sigma


@given(algebra_and_word())
def test_decompose_partitions_resolution_walks(pw):
    p, w = pw
    core = project(p, w).core
    walk = core.walk()
    if walk.is_trivial:
        return
    letters = decompose_homotopy_letters(p, walk, cyclic=core.is_band)
    flat = tuple(x for h in letters for x in h.walk_letters())
    if core.is_band:
        joined = flat + flat
        assert any(joined[k:k + len(flat)] == walk.letters for k in range(len(flat)))
    else:
        assert flat == walk.letters
    for x, y in zip(letters, letters[1:]):
        turn = x.inverse != y.inverse
        a, b = x.walk_letters()[-1], y.walk_letters()[0]
        crossed = not turn and (p.is_relation(b.arrow, a.arrow) if not a.inverse else p.is_relation(a.arrow, b.arrow))
        assert turn != crossed


@given(algebras())
def test_antipath_cycle_rotation(p):
    for a in p.arrows:
        ap = antipath(p, Letter(a.name))
        for x in ap.cycle:
            other = antipath(p, Letter(x))
            assert other.prefix == ()
            n = len(ap.cycle)
            assert any(other.cycle == ap.cycle[k:] + ap.cycle[:k] for k in range(n))


@given(algebras())
def test_antipaths_share_tails(p):
    n = 3 * len(p.arrows) + 3
    seqs = {a.name: antipath(p, Letter(a.name)).arrows(n) for a in p.arrows}
    for s in seqs.values():
        for t in seqs.values():
            common = set(s) & set(t)
            if not common:
                continue
            x = next(y for y in s if y in common)
            i, j = s.index(x), t.index(x)
            m = min(len(s) - i, len(t) - j)
            assert s[i:i + m] == t[j:j + m]
