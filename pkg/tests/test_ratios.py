"""Exact ratio arithmetic, bipartitions, and cut predicates."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degratio.catalog import random_connected_graph
from degratio.errors import ParameterError
from degratio.graph import build_named, complete, cycle, path
from degratio.ratios import (Bipartition, crossing_edges, format_ratio,
                             is_matching, parse_ratio, partition_quality,
                             vertex_ratio)


def test_ratio_round_trip():
    assert parse_ratio("3/7") == Fraction(3, 7)
    assert parse_ratio("1") == Fraction(1)
    assert format_ratio(Fraction(6, 14)) == "3/7"
    with pytest.raises(ParameterError):
        parse_ratio("1/0")
    with pytest.raises(ParameterError):
        parse_ratio("three sevenths")


def test_bipartition_invariants():
    with pytest.raises(ParameterError):
        Bipartition((1, 1, 1))
    with pytest.raises(ParameterError):
        Bipartition((1, 3))
    P = Bipartition.from_string("1212")
    assert P.side(1) == frozenset({0, 2})
    assert P.flipped().side(2) == frozenset({0, 2})
    assert Bipartition.from_string(P.to_string()) == P


def test_vertex_ratio_examples():
    G = cycle(3)
    P = Bipartition.from_string("112")
    assert vertex_ratio(G, P, 0) == Fraction(2, 3)
    assert vertex_ratio(G, P, 2) == Fraction(1, 3)
    rep = partition_quality(G, P)
    assert rep.quality == Fraction(1, 3) and rep.witness_vertex == 2


def test_quality_witness_is_smallest_label():
    G = complete(4)
    rep = partition_quality(G, Bipartition.from_string("1122"))
    assert rep.quality == Fraction(1, 2)
    assert rep.witness_vertex == 0


def test_crossing_and_matching():
    G = cycle(4)
    P = Bipartition.from_string("1122")
    cross = crossing_edges(G, P)
    assert sorted(cross) == [(0, 3), (1, 2)]
    assert is_matching(G, cross)
    assert not is_matching(complete(3), [(0, 1), (1, 2)])
    with pytest.raises(ParameterError):
        is_matching(path(3), [(0, 2)])


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000), data=st.data())
def test_flip_preserves_quality(seed, data):
    rng = random.Random(seed)
    G = random_connected_graph(rng, rng.randint(3, 8))
    mask = data.draw(st.integers(1, (1 << G.n) - 2))
    P = Bipartition.from_mask(G.n, mask)
    assert partition_quality(G, P).quality == \
        partition_quality(G, P.flipped()).quality


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_vertex_ratios_sum_to_both_sides(seed):
    # every vertex ratio lies in (0, 1] and equals the closed-neighborhood
    # fraction computed by direct counting with cross-multiplication
    rng = random.Random(seed)
    G = random_connected_graph(rng, rng.randint(3, 8))
    P = Bipartition.from_mask(G.n, rng.randint(1, (1 << G.n) - 2))
    for v in range(G.n):
        r = vertex_ratio(G, P, v)
        kept = 1 + sum(1 for u in G.adj[v] if P.sides[u] == P.sides[v])
        assert 0 < r <= 1
        assert r.numerator * (len(G.adj[v]) + 1) == kept * r.denominator


def test_crossing_edges_partition_monotone():
    # moving a vertex across can only change ratios of its closed neighborhood
    G = build_named("petersen")
    P = Bipartition.from_string("1111122222")
    base = partition_quality(G, P).per_vertex
    sides = list(P.sides)
    sides[0] = 2
    Q = Bipartition(tuple(sides))
    after = partition_quality(G, Q).per_vertex
    for v in range(G.n):
        if v != 0 and v not in G.adj[0]:
            assert base[v] == after[v]
