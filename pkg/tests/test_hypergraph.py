import json

import pytest
from hypothesis import given
import hypothesis.strategies as st

from hyperzero.errors import InputError
from hyperzero.hypergraph import (
    Hypergraph, classify, component_of, components, from_json, is_linear, load,
    reduce, remove_edges, remove_vertices, shrink,
)
from oracles import brute_z
from strategies import complex_vectors, hypergraphs

TRIANGLE = Hypergraph(3, ((0, 1), (1, 2), (0, 2)))
EDGE3 = Hypergraph(3, ((0, 1, 2),))


def test_validation():
    with pytest.raises(InputError):
        Hypergraph(2, ((0, 2),))
    with pytest.raises(InputError):
        Hypergraph(2, ((),))
    with pytest.raises(InputError):
        Hypergraph(2, ((1, 1),))
    with pytest.raises(InputError):
        Hypergraph(-1)
    assert Hypergraph(3, ((2, 0),)).edges == ((0, 2),)


def test_remove_vertices():
    H, mapping = remove_vertices(TRIANGLE, {0})
    assert H == Hypergraph(2, ((0, 1),))
    assert mapping == {1: 0, 2: 1}
    assert remove_vertices(TRIANGLE, set())[0] == TRIANGLE
    assert remove_vertices(EDGE3, {1})[0] == Hypergraph(2, ())
    with pytest.raises(InputError):
        remove_vertices(TRIANGLE, {5})


def test_shrink():
    assert shrink(EDGE3, {0})[0] == Hypergraph(2, ((0, 1),))
    assert shrink(Hypergraph(2, ((0, 1),)), {0})[0] == Hypergraph(1, ((0,),))
    assert shrink(EDGE3, set())[0] == EDGE3
    # edges inside S vanish, repeats survive
    H = Hypergraph(4, ((0, 1), (0, 2), (1, 2), (0, 1, 3)))
    assert shrink(H, {0, 1})[0].edges == ((0,), (0,), (1,))


def test_remove_edges():
    assert remove_edges(TRIANGLE, {0}) == Hypergraph(3, ((1, 2), (0, 2)))
    assert remove_edges(TRIANGLE, set()) == TRIANGLE
    assert remove_edges(TRIANGLE, {0, 1, 2}) == Hypergraph(3, ())
    with pytest.raises(InputError):
        remove_edges(TRIANGLE, {3})


def test_reduce_examples():
    red = reduce(Hypergraph(3, ((0,), (0, 1, 2))))
    assert red.graph == Hypergraph(2, ())
    assert red.forced_out == {0}
    assert reduce(Hypergraph(3, ((0, 1), (0, 1, 2)))).graph.edges == ((0, 1),)
    assert reduce(Hypergraph(4, ())).graph == Hypergraph(4, ())
    assert reduce(Hypergraph(3, ((0, 1), (1, 0)))).graph.edges == ((0, 1),)


def test_classify_examples():
    c = classify(TRIANGLE)
    assert (c.is_linear, c.is_linear_hypertree, c.uniformity, c.max_degree) == (True, False, 2, 2)
    c = classify(EDGE3)
    assert (c.is_linear, c.is_linear_hypertree, c.uniformity, c.max_degree) == (True, True, 3, 1)
    assert not is_linear(Hypergraph(4, ((0, 1, 2), (1, 2, 3))))
    assert classify(Hypergraph(4, ((0, 1),))).components == [[0, 1], [2], [3]]
    assert classify(Hypergraph(3, ((0, 1), (1, 2)))).uniformity == 2
    assert classify(Hypergraph(3, ((0, 1), (0, 1, 2)))).uniformity is None


def test_component_of():
    H = Hypergraph(5, ((0, 3), (1, 2), (2, 4)))
    C, mapping = component_of(H, 4)
    assert C == Hypergraph(3, ((0, 1), (1, 2)))
    assert mapping == {1: 0, 2: 1, 4: 2}
    assert components(H) == [[0, 3], [1, 2, 4]]


def test_json_round_trip(tmp_path):
    p = tmp_path / "h.json"
    p.write_text(json.dumps(TRIANGLE.to_json()))
    assert load(p) == TRIANGLE
    with pytest.raises(InputError):
        load(tmp_path / "missing.json")
    (tmp_path / "bad.json").write_text("{not json")
    with pytest.raises(InputError):
        load(tmp_path / "bad.json")
    with pytest.raises(InputError):
        from_json({"n": 2})


@given(hypergraphs(), st.data())
def test_remove_edges_composes(H, data):
    idx = list(range(len(H.edges)))
    F1 = set(data.draw(st.lists(st.sampled_from(idx), unique=True))) if idx else set()
    F2 = set(data.draw(st.lists(st.sampled_from(idx), unique=True))) if idx else set()
    # indices in the second step refer to the edges that survived the first
    survivors = [i for i in idx if i not in F1]
    step = remove_edges(remove_edges(H, F1), {survivors.index(i) for i in F2 if i in survivors})
    assert sorted(step.edges) == sorted(remove_edges(H, F1 | F2).edges)


@given(hypergraphs(), st.data())
def test_shrink_composes(H, data):
    S = set(data.draw(st.lists(st.integers(0, H.n - 1), unique=True)))
    T = set(data.draw(st.lists(st.integers(0, H.n - 1), unique=True))) - S
    once, _ = shrink(H, S | T)
    first, mapping = shrink(H, S)
    twice, _ = shrink(first, {mapping[t] for t in T})
    assert once.n == twice.n
    assert sorted(once.edges) == sorted(twice.edges)


@given(hypergraphs(max_n=8), st.data())
def test_reduce_preserves_z(H, data):
    red = reduce(H)
    assert reduce(red.graph).graph == red.graph
    assert all(len(e) >= 2 for e in red.graph.edges)
    lam = data.draw(complex_vectors(H.n, 2.0))
    inv = {new: old for old, new in red.vertex_map.items()}
    restricted = [lam[inv[i]] for i in range(red.graph.n)]
    assert abs(brute_z(red.graph, restricted) - brute_z(H, lam)) < 1e-12 * max(1, abs(brute_z(H, lam)))
