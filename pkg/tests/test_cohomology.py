import pytest
from hypothesis import given
from hypothesis import strategies as st

from gentle_ext.cohomology import apply_rule, cohomology, summand_dimension_vector
from gentle_ext.homotopy import decompose_homotopy_letters, grade, homotopy_string_from_walk
from gentle_ext.oracle import complex_dimension_vectors, matrix_complex
from gentle_ext.presentation import load_fixture
from gentle_ext.resolution import project
from gentle_ext.strings import BandWord, Letter, StringWord, Walk, canonical_form, parse_walk
from strategies import algebras

SIGMA = "i k- c- b- f- g- b- h- i l d"
TAU = "r q p o m"


def _table(p, result):
    return {d: sorted(str(canonical_form(p, s.word)) for s in ss) for d, ss in result.summands.items()}


def _canon(p, text):
    return str(canonical_form(p, StringWord(parse_walk(text, p))))


def test_worked_example_sigma():
    p = load_fixture("paper-example")
    sigma = homotopy_string_from_walk(p, parse_walk(SIGMA, p), -1)
    assert _table(p, cohomology(p, sigma)) == {
        -2: [_canon(p, "h- i")],
        -1: [_canon(p, "c- b- h- m- n-")],
        0: [_canon(p, "n")],
        1: [_canon(p, "k- c-")],
    }


def test_worked_example_tau():
    p = load_fixture("paper-example")
    tau = homotopy_string_from_walk(p, parse_walk(TAU, p), 2)
    assert _table(p, cohomology(p, tau)) == {1: ["p"], 2: ["j"]}


def test_worked_example_rules():
    p = load_fixture("paper-example")
    sigma = homotopy_string_from_walk(p, parse_walk(SIGMA, p), -1)
    cok = apply_rule(p, sigma, "Cokernel", (1, 1))
    assert cok.output.degree == -1 and str(canonical_form(p, cok.output.word)) == _canon(p, "c- b- h- m- n-")
    ker = apply_rule(p, sigma, "Kernel", (7, 7))
    assert ker.output.degree == 0 and str(ker.output.word) == "n"
    assert apply_rule(p, sigma, "NontrivialLetter", (5, 5)).output is None
    with pytest.raises(ValueError):
        apply_rule(p, sigma, "Kernel", (2, 2))


def test_simple_resolution_of_a2():
    a2 = load_fixture("a2")
    result = cohomology(a2, project(a2, StringWord(Walk("1"))).core)
    assert _table(a2, result) == {0: ["1_1"]}


def test_kronecker_band():
    k = load_fixture("kronecker")
    band = BandWord(parse_walk("b- a", k))
    result = cohomology(k, project(k, band).core)
    assert list(result.summands) == [0]
    (s,) = result.summands[0]
    assert s.word.is_band and canonical_form(k, s.word) == canonical_form(k, band)


@st.composite
def homotopy_strings(draw):
    """Random finite graded homotopy strings: walks without backtracks, relations allowed."""
    p = draw(algebras())
    letters = [Letter(a.name, inv) for a in p.arrows for inv in (False, True)]
    first = draw(st.sampled_from(letters))
    walk = [first]
    for _ in range(draw(st.integers(0, 7))):
        options = [x for x in letters if x.source(p) == walk[-1].target(p)
                   and not (x.arrow == walk[-1].arrow and x.inverse != walk[-1].inverse)]
        if not options:
            break
        walk.append(draw(st.sampled_from(options)))
    try:
        hs = decompose_homotopy_letters(p, Walk(first.source(p), tuple(walk)))
    except ValueError:
        hs = None
    if hs is None or any(x.path is None for x in hs):
        return p, None
    return p, grade(hs, draw(st.integers(-3, 3)), start=first.source(p), p=p)


def _dims_by_degree(p, result):
    out = {}
    for d, ss in result.summands.items():
        vec = {}
        for s in ss:
            for x, c in summand_dimension_vector(p, s).items():
                if c:
                    vec[x] = vec.get(x, 0) + c
        if vec:
            out[d] = vec
    return out


@given(homotopy_strings())
def test_cohomology_matches_matrix_oracle(ps):
    p, sigma = ps
    if sigma is None:
        return
    assert _dims_by_degree(p, cohomology(p, sigma)) == matrix_complex(p, sigma).cohomology_dims(p.vertices)


@given(homotopy_strings())
def test_euler_characteristic(ps):
    p, sigma = ps
    if sigma is None:
        return
    h = _dims_by_degree(p, cohomology(p, sigma))
    q = complex_dimension_vectors(p, sigma)
    for x in p.vertices:
        lhs = sum((-1) ** (d % 2) * vec.get(x, 0) for d, vec in h.items())
        rhs = sum((-1) ** (d % 2) * vec.get(x, 0) for d, vec in q.items())
        assert lhs == rhs
