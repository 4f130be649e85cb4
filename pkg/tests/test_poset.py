import json
import threading

import pytest
from hypothesis import given, settings, strategies as st

from bassline import (
    PosetError,
    SpectralPoset,
    UnknownElementError,
    cov_closure,
    emit_dot,
    height,
    is_saturated,
    is_specialization_closed,
    leq,
    load_poset,
    rel_height,
    rel_height_in_subset,
    structure_report,
    up_closure,
)
from bassline import fixtures
from bassline.functions import SpecFunction

from oracles import chain_lengths, closure_matrix

BATTERY = list(fixtures.named().values()) + fixtures.posets_up_to(4)


# -- load_poset ---------------------------------------------------------------


def test_load_chain():
    P = load_poset({"name": "C3", "elements": ["a", "b", "c"], "covers": [["a", "b"], ["b", "c"]]})
    assert P.elements == ("a", "b", "c")
    assert P.covers == (("a", "b"), ("b", "c"))
    assert P.name == "C3"


def test_load_v():
    P = load_poset({"elements": ["p", "q", "r", "m"], "covers": [["p", "r"], ["r", "m"], ["q", "m"]]})
    assert P == fixtures.v_poset()


@pytest.mark.parametrize(
    "desc, match",
    [
        ({"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}, "cycle"),
        ({"elements": ["a"], "covers": [["a", "a"]]}, "cycle"),
        ({"elements": ["a", "a"], "covers": []}, "duplicate"),
        ({"elements": ["a"], "covers": [["a", "z"]]}, "unknown"),
        ({"elements": ["a", "b", "c"], "covers": [["a", "b"], ["b", "c"], ["a", "c"]]}, "'b' lies strictly between"),
        ({"elements": ["a", "b"], "covers": [["a", "b"], ["a", "b"]]}, "twice"),
        ({"elements": [""]}, "nonempty"),
        ({"covers": []}, "elements"),
        ({"elements": "abc"}, "list"),
    ],
)
def test_load_errors(desc, match):
    with pytest.raises(PosetError, match=match):
        load_poset(desc)


def test_unknown_endpoint_is_its_own_error():
    with pytest.raises(UnknownElementError):
        load_poset({"elements": ["a"], "covers": [["a", "b"]]})


def test_ideal_names_are_fine():
    P = SpectralPoset(["(x)", "(y,z)", "(x,y,z)"], [("(x)", "(x,y,z)"), ("(y,z)", "(x,y,z)")])
    assert P.leq("(x)", "(x,y,z)")


# -- order queries --------------------------------------------------------------


def test_leq_examples(C3, V):
    assert leq(C3, "a", "c")
    assert not leq(V, "q", "r")
    assert leq(C3, "b", "b")
    with pytest.raises(UnknownElementError):
        leq(C3, "a", "z")


def test_is_saturated_examples(C3, V):
    assert is_saturated(C3, "a", "b")
    assert not is_saturated(C3, "a", "c")
    assert is_saturated(V, "q", "m")


def test_is_saturated_errors(C3, V):
    with pytest.raises(PosetError):
        is_saturated(C3, "a", "a")
    with pytest.raises(PosetError):
        is_saturated(V, "q", "r")


def test_up_closure_examples(C3, V):
    assert up_closure(V, {"p"}) == {"p", "r", "m"}
    assert up_closure(C3, set()) == set()
    assert up_closure(C3, {"c"}) == {"c"}
    with pytest.raises(UnknownElementError):
        up_closure(C3, {"z"})


def test_cov_closure_examples(C3, V):
    assert cov_closure(C3, {"b"}) == {"c"}
    assert cov_closure(V, {"p"}) == {"r"}
    assert cov_closure(V, {"p", "q"}) == {"r", "m"}


def test_specialization_closed_examples(C3, V):
    assert is_specialization_closed(C3, {"b", "c"})
    assert not is_specialization_closed(C3, {"b"})
    for P in (C3, V):
        assert is_specialization_closed(P, P.elements)


def test_heights(C3, V):
    assert rel_height(C3, "a", "c") == 2
    assert height(V, "m") == 2
    assert height(V, "q") == 0
    assert rel_height(C3, "b", "b") == 0
    with pytest.raises(PosetError):
        rel_height(V, "q", "r")


def test_rel_height_in_subset(C3, V):
    assert rel_height_in_subset(C3, {"a", "b", "c"}, "c") == 2
    assert rel_height_in_subset(C3, {"b"}, "c") == 1
    with pytest.raises(PosetError, match="no member"):
        rel_height_in_subset(V, {"q"}, "p")


# -- structure report -----------------------------------------------------------


def test_structure_v(V):
    r = structure_report(V)
    assert (r.poset_height, r.is_local, r.is_catenary) == (2, True, True)
    assert r.assh == {"p"}
    assert r.minimal == {"p", "q"}
    assert not r.is_graded_below


def test_structure_chain(C3):
    r = structure_report(C3)
    assert (r.poset_height, r.is_local, r.is_catenary, r.assh) == (2, True, True, {"a"})


def test_structure_diamond(D):
    r = structure_report(D)
    assert (r.poset_height, r.is_local, r.is_catenary, r.assh) == (2, True, True, {"0"})
    assert r.is_graded_below


def test_structure_non_catenary():
    r = structure_report(fixtures.non_catenary())
    assert r.is_local and not r.is_catenary
    assert r.poset_height == 3


def test_antichain_is_not_local():
    r = structure_report(fixtures.antichain(2))
    assert not r.is_local
    assert r.assh == r.minimal == {"a", "b"}


# -- DOT ---------------------------------------------------------------------------


def test_dot_counts(C3, V):
    for P, nodes, edges in ((C3, 3, 2), (V, 4, 3)):
        text = emit_dot(P)
        assert text.count("[label=") == nodes
        assert text.count("->") == edges
        assert "rankdir=BT" in text


def test_dot_labels(C3):
    text = emit_dot(C3, SpecFunction(C3, [0, 1, 2]))
    for label in ('"a:0"', '"b:1"', '"c:2"'):
        assert label in text


def test_dot_infinity_label(C3, inf):
    assert '"a:inf"' in emit_dot(C3, SpecFunction(C3, [inf, 0, 1]))


def test_dot_rejects_foreign_annotation(C3, V):
    with pytest.raises(PosetError):
        emit_dot(C3, SpecFunction(V, [0, 0, 1, 1]))


def test_dot_is_deterministic():
    P1 = SpectralPoset(["a", "b", "c"], [("b", "c"), ("a", "b")], name="C3")
    P2 = SpectralPoset(["a", "b", "c"], [("a", "b"), ("b", "c")], name="C3")
    assert emit_dot(P1) == emit_dot(P2)


# -- invariants over the battery ------------------------------------------------------


@pytest.mark.parametrize("P", BATTERY, ids=lambda P: P.name)
def test_leq_matches_closure_matrix(P):
    m = closure_matrix(P)
    for p in P.elements:
        for q in P.elements:
            assert P.leq(p, q) == m[p, q]


@pytest.mark.parametrize("P", BATTERY, ids=lambda P: P.name)
def test_rel_height_matches_chain_walk(P):
    m = closure_matrix(P)
    for p in P.elements:
        for q in P.elements:
            if m[p, q]:
                assert P.rel_height(p, q) == max(chain_lengths(P, p, q))


@pytest.mark.parametrize("P", BATTERY, ids=lambda P: P.name)
def test_catenary_iff_additive_heights(P):
    additive = True
    for p in P.elements:
        for q in P.above(p):
            for r in P.above(q):
                lhs, rhs = P.rel_height(p, r), P.rel_height(p, q) + P.rel_height(q, r)
                assert lhs >= rhs
                additive &= lhs == rhs
    assert additive == structure_report(P).is_catenary
    walk_catenary = all(len(chain_lengths(P, p, q)) == 1 for p in P.elements for q in P.above(p))
    assert walk_catenary == structure_report(P).is_catenary


@pytest.mark.parametrize("P", BATTERY, ids=lambda P: P.name)
def test_report_invariants(P):
    r = structure_report(P)
    assert r.assh <= r.minimal
    assert r.poset_height == max(P.height(e) for e in P.elements)
    if r.is_local and r.is_catenary:
        (top,) = r.maximal
        for e in up_closure(P, r.assh):
            assert P.height(e) == r.poset_height - P.rel_height(e, top)



@settings(max_examples=200, deadline=None)
@given(st.sampled_from(BATTERY), st.data())
def test_closure_laws(P, data):
    phi = frozenset(data.draw(st.sets(st.sampled_from(P.elements))))
    psi = phi | frozenset(data.draw(st.sets(st.sampled_from(P.elements))))
    up = up_closure(P, phi)
    assert phi <= up
    assert up_closure(P, up) == up
    assert up_closure(P, phi) <= up_closure(P, psi)
    assert cov_closure(P, phi) <= cov_closure(P, psi)
    assert phi | cov_closure(P, phi) <= up


def test_concurrent_reads():
    P = fixtures.assh_fan(3)
    expected = [P.height(e) for e in P.elements]
    results = []

    def work():
        results.append([P.height(e) for e in P.elements])

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert results == [expected] * 8


def test_report_as_dict_is_json(V):
    d = structure_report(V).as_dict(V)
    assert json.loads(json.dumps(d))["assh"] == ["p"]
    assert d["minimal"] == ["p", "q"]
