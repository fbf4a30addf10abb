"""Gadget constructions: structural postconditions and decision
equivalences."""

from fractions import Fraction

import pytest

from degratio.errors import PreconditionError
from degratio.graph import (bipartition_classes, build_named, complete,
                            complete_bipartite, cycle, is_isomorphic,
                            regularity)
from degratio.reductions import (bipartite_double_cover, cover_plus_matching,
                                 is_matching_cut_set, product_with_fixed,
                                 twin_expand_then_K2, verify_equivalence)
from degratio.solver import find_matching_cut


def test_double_cover_structure():
    inst = bipartite_double_cover(complete(5), strict=True)
    H = inst.graph
    assert H.n == 10 and H.num_edges == 2 * complete(5).num_edges
    assert regularity(H) == 4
    assert bipartition_classes(H) is not None
    assert inst.gadget_vertices_of(3) == (6, 7)


def test_double_cover_of_odd_cycle_is_double_length_cycle():
    inst = bipartite_double_cover(cycle(5))
    assert is_isomorphic(inst.graph, cycle(10))


def test_double_cover_strict_bound():
    with pytest.raises(PreconditionError):
        bipartite_double_cover(cycle(5), strict=True)


def test_cover_plus_matching_structure():
    inst = cover_plus_matching(complete_bipartite(3, 3))
    H = inst.graph
    assert H.n == 12 and regularity(H) == 4
    assert bipartition_classes(H) is not None
    # degree goes up by exactly one everywhere
    assert all(H.degree(2 * v) == complete_bipartite(3, 3).degree(v) + 1
               for v in range(6))


def test_cover_plus_matching_gadget_keeps_copy_swap_cut():
    # existence of a matching-cut is NOT preserved: the copy-swap cut
    # {v1 v2} always crosses; only mapped cuts are equivalent
    inst = cover_plus_matching(complete_bipartite(3, 3))
    assert not find_matching_cut(inst.source).has_cut
    assert find_matching_cut(inst.graph).has_cut


def test_twin_expand_structure():
    inst = twin_expand_then_K2(cycle(6))
    H = inst.graph
    assert H.n == 24
    assert inst.claim.threshold == Fraction(4, 5)
    # twins keep degree 2 in the product (one twin edge + one rung)
    twin_vertices = [2 * (6 + v) + side for v in range(6) for side in (0, 1)]
    assert all(H.degree(t) == 2 for t in twin_vertices)


def test_twin_expand_strict_needs_34_biregular():
    with pytest.raises(PreconditionError):
        twin_expand_then_K2(cycle(6), strict=True)
    with pytest.raises(PreconditionError):
        twin_expand_then_K2(complete(4))  # not bipartite


def test_product_with_fixed_preconditions():
    with pytest.raises(PreconditionError):
        product_with_fixed(cycle(6), cycle(4))  # C4 has a matching-cut
    inst = product_with_fixed(cycle(6), complete(3))
    assert inst.claim.threshold == Fraction(4, 5)
    inst = product_with_fixed(cycle(6), complete(4))
    assert inst.claim.threshold == Fraction(5, 6)
    with pytest.raises(PreconditionError):
        product_with_fixed(cycle(6), complete(4), strict=True)  # degree < 4


def test_is_matching_cut_set():
    G = cycle(6)
    assert is_matching_cut_set(G, [(0, 1), (3, 4)])
    assert not is_matching_cut_set(G, [(0, 1)])  # one edge cannot disconnect C6
    assert not is_matching_cut_set(G, [(0, 1), (1, 2)])  # shares a vertex
    assert not is_matching_cut_set(G, [])


def test_verify_equivalence_instances():
    checks = [
        bipartite_double_cover(complete(5), strict=True),
        bipartite_double_cover(cycle(5)),
        cover_plus_matching(complete_bipartite(3, 3)),
        cover_plus_matching(cycle(6)),
        twin_expand_then_K2(complete(2)),
        twin_expand_then_K2(cycle(6)),
        product_with_fixed(cycle(6), complete(4)),
    ]
    for inst in checks:
        assert verify_equivalence(inst), inst.construction


def test_twin_expand_k2_small_case():
    inst = twin_expand_then_K2(complete(2))
    assert inst.graph.n == 8
    assert inst.claim.threshold == Fraction(3, 4)
    assert verify_equivalence(inst)
