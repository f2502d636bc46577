import itertools
import json

import pytest
from hypothesis import given

from gentle_ext.presentation import (
    GentlenessError,
    Path,
    PresentationError,
    compose_modulo_I,
    load_fixture,
    load_presentation,
)
from strategies import algebras

A2 = {"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}], "relations": []}
C3 = {
    "vertices": ["1", "2", "3"],
    "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "2", "to": "3"},
               {"name": "c", "from": "3", "to": "1"}],
    "relations": [["b", "a"], ["c", "b"], ["a", "c"]],
}


def test_a2_loads():
    p = load_presentation(json.dumps(A2))
    assert p.vertices == ("1", "2") and [a.name for a in p.arrows] == ["a"]


def test_three_cycle_loads():
    p = load_presentation(json.dumps(C3))
    assert p.is_relation("b", "a")


def test_three_arrows_out_violates_clause_one():
    data = json.loads(json.dumps(A2))
    data["arrows"] += [{"name": "a2", "from": "1", "to": "2"}, {"name": "a3", "from": "1", "to": "2"}]
    with pytest.raises(GentlenessError) as exc:
        load_presentation(json.dumps(data))
    assert any(v.clause == 1 and v.witness == "vertex 1" for v in exc.value.violations)


def test_malformed_inputs():
    with pytest.raises(PresentationError):
        load_presentation("{not json")
    with pytest.raises(PresentationError):
        load_presentation(json.dumps({"vertices": ["1"], "arrows": [{"name": "a", "from": "1", "to": "9"}]}))


def test_compose_hits_relation():
    p = load_presentation(json.dumps(C3))
    assert compose_modulo_I(p, p.path(["b"]), p.path(["a"])) is None


def test_compose_with_identity():
    p = load_presentation(json.dumps(A2))
    a = p.path(["a"])
    assert compose_modulo_I(p, a, Path.trivial("1")) == a


def test_compose_length_two_path_in_worked_example():
    p = load_fixture("paper-example")
    il = compose_modulo_I(p, p.path(["i"]), p.path(["l"]))
    assert il is not None and il.arrows == ("l", "i")


def test_fixtures_load():
    for name in ("a2", "kronecker", "c3", "paper-example"):
        load_fixture(name)


@given(algebras())
def test_unique_continuations(p):
    for a in p.arrows:
        after = [b for b in p.out_arrows(a.target)]
        nonzero = [b for b in after if compose_modulo_I(p, p.path([b.name]), p.path([a.name])) is not None]
        zero = [b for b in after if compose_modulo_I(p, p.path([b.name]), p.path([a.name])) is None]
        assert len(nonzero) <= 1 and len(zero) <= 1


@given(algebras())
def test_compose_associative_and_unital(p):
    paths = [q for x in p.vertices for q in p.nonzero_paths_from(x)]
    for q in paths:
        assert compose_modulo_I(p, q, Path.trivial(q.source)) == q
        assert compose_modulo_I(p, Path.trivial(q.target), q) == q
    for r, q, s in itertools.product(paths[:12], repeat=3):
        if r.source != q.target or q.source != s.target:
            continue
        left = compose_modulo_I(p, compose_modulo_I(p, r, q), s)
        right = compose_modulo_I(p, r, compose_modulo_I(p, q, s))
        assert left == right


@given(algebras())
def test_serialize_round_trip(p):
    assert load_presentation(p.serialize()) == p
