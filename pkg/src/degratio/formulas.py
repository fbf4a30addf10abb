"""Class recognizers and exact closed-form values of the degree ratio,
each carrying a certifying witness partition where one is known.

Rule identifiers (also used by the CLI): upbound, tree, ktriangle, clique,
cubic, 4reg, prodcub, prodkregtree, lowbound, c3, d6.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NoApplicableRule, ParameterError, PreconditionError
from .graph import (Graph, bipartition_classes, build_named, cartesian_product,
                    complete, complete_bipartite, contains_subgraph, cycle,
                    is_connected, is_isomorphic, is_tree, k_triangle,
                    regularity)
from .ratios import Bipartition, partition_quality
from .solver import DEFAULT_BUDGET, find_matching_cut, lift_partition, solve_q


@dataclass(frozen=True)
class FormulaVerdict:
    value: Fraction
    rule: str
    witness: Bipartition | None = None


@dataclass(frozen=True)
class LowerBound:
    value: Fraction
    strict: bool  # True when the guarantee is value < q(G), not value <= q(G)
    rules: tuple[str, ...]


def two_fifths_family() -> tuple[Graph, ...]:
    """The four graphs of maximum degree at most 6 whose degree ratio is
    exactly 2/5."""
    return (build_named("K5"), build_named("K5-e"), build_named("T3"),
            build_named("coK2claw"))


# -- bounds -----------------------------------------------------------------


def edge_upper_bound(G: Graph) -> Fraction:
    """max over edges uv of min(d(u)/d[u], d(v)/d[v]); an upper bound on q(G)
    for connected graphs."""
    if not is_connected(G):
        raise PreconditionError("edge upper bound needs a connected graph")
    best = Fraction(0)
    for u, v in G.edges():
        cand = min(Fraction(G.degree(u), G.closed_degree(u)),
                   Fraction(G.degree(v), G.closed_degree(v)))
        if cand > best:
            best = cand
    return best


def _theorem_classes(G: Graph) -> dict[str, bool]:
    """Applicability of the degree-constrained partition theorems.

    Pattern containment is tested as SUBGRAPH containment: the theorem
    classes must exclude cliques (K7 contains K4ev as a subgraph but not
    induced, yet q(K7) = 3/7 < 1/2).  The triangle C3 is excluded from the
    K4ev-free class explicitly: its demanded partition does not exist.
    """
    t3 = k_triangle(3)  # isomorphic to K4-e+v
    k4ev_free = not contains_subgraph(G, t3) and not is_isomorphic(G, cycle(3))
    sparse_free = (
        not (contains_subgraph(G, cycle(4)) or contains_subgraph(G, complete(4))
             or contains_subgraph(G, build_named("diamond")))
        or not (contains_subgraph(G, cycle(3)) or contains_subgraph(G, cycle(8))
                or contains_subgraph(G, complete_bipartite(2, 3)))
    )
    return {"k4ev_free": k4ev_free, "sparse_free": sparse_free}


def class_lower_bound(G: Graph, budget: int = DEFAULT_BUDGET) -> LowerBound:
    """Best guaranteed lower bound on q(G) among the applicable class rules."""
    candidates: list[LowerBound] = []

    even_degrees = [G.degree(v) for v in range(G.n) if G.degree(v) % 2 == 0]
    if even_degrees:
        p = min(even_degrees) // 2
        value = min(Fraction(1, 2), Fraction(p, 2 * p + 1)) if p else Fraction(0)
        candidates.append(LowerBound(value, False, ("lowbound",)))
    else:
        candidates.append(LowerBound(Fraction(1, 2), False, ("lowbound",)))

    classes = _theorem_classes(G)
    if classes["k4ev_free"]:
        candidates.append(LowerBound(Fraction(1, 2), False, ("lowboundC3",)))
    if classes["sparse_free"] and G.min_degree >= 3:
        # demand functions ceil(d/2) need both demands >= 2
        candidates.append(LowerBound(Fraction(1, 2), True, ("lowboundC4free",)))

    if G.factors is not None:
        candidates.append(LowerBound(Fraction(1, 2), True, ("prodlowbound",)))
        Gf, Hf = G.factors
        if Gf.n <= 12 and Hf.n <= 12:
            factor_max = max(solve_q(Gf, budget=budget).q,
                             solve_q(Hf, budget=budget).q)
            candidates.append(LowerBound(factor_max, True, ("prodmax",)))

    best = max(candidates, key=lambda lb: (lb.value, lb.strict))
    rules = tuple(sorted({r for lb in candidates
                          if (lb.value, lb.strict) == (best.value, best.strict)
                          for r in lb.rules}))
    return LowerBound(best.value, best.strict, rules)


# -- exact formulas ---------------------------------------------------------


def tree_q(T: Graph) -> FormulaVerdict:
    """Exact value for trees: the edge upper bound is attained by splitting
    at a maximizing edge."""
    if not is_tree(T):
        raise PreconditionError("tree formula needs a tree")
    value = edge_upper_bound(T)
    for u, v in T.edges():
        cand = min(Fraction(T.degree(u), T.closed_degree(u)),
                   Fraction(T.degree(v), T.closed_degree(v)))
        if cand == value:
            side1 = {u}
            stack = [u]
            while stack:
                w = stack.pop()
                for x in T.adj[w]:
                    if (w, x) in ((u, v), (v, u)) or x in side1:
                        continue
                    side1.add(x)
                    stack.append(x)
            witness = Bipartition.from_side1(T.n, side1)
            return FormulaVerdict(value, "tree", witness)
    raise AssertionError("no maximizing edge found")


def ktriangle_q(k: int) -> FormulaVerdict:
    """q(T_k) = (floor(k/2)+1)/(k+2), attained by splitting the apexes."""
    if k < 1:
        raise ParameterError(f"k-triangle needs k >= 1, got {k}")
    half = k // 2
    value = Fraction(half + 1, k + 2)
    side1 = {0} | {2 + i for i in range(half)}
    witness = Bipartition.from_side1(k + 2, side1)
    return FormulaVerdict(value, "ktriangle", witness)


def clique_q(n: int) -> FormulaVerdict:
    """q(K_2p) = 1/2 and q(K_2p+1) = p/(2p+1), by an (almost) balanced split."""
    if n < 2:
        raise ParameterError(f"clique needs n >= 2, got {n}")
    p = n // 2
    value = Fraction(1, 2) if n % 2 == 0 else Fraction(p, 2 * p + 1)
    witness = Bipartition.from_side1(n, range(p))
    return FormulaVerdict(value, "clique", witness)


def cubic_q(G: Graph, budget: int = DEFAULT_BUDGET) -> FormulaVerdict:
    """Connected cubic graphs: 1/2 for K4 and K33, 3/4 with a matching-cut
    witness otherwise."""
    if regularity(G) != 3 or not is_connected(G):
        raise PreconditionError("cubic formula needs a connected 3-regular graph")
    if is_isomorphic(G, complete(4)):
        return FormulaVerdict(Fraction(1, 2), "cubic",
                              clique_q(4).witness)
    if is_isomorphic(G, complete_bipartite(3, 3)):
        res = solve_q(G, budget=budget)
        return FormulaVerdict(res.q, "cubic", res.optimal_partition)
    cert = find_matching_cut(G, budget=budget)
    if not cert.has_cut:
        raise AssertionError("cubic graph other than K4/K33 without matching-cut")
    return FormulaVerdict(Fraction(3, 4), "cubic", cert.partition)


def four_regular_q(G: Graph, budget: int = DEFAULT_BUDGET) -> FormulaVerdict:
    """Connected 4-regular graphs: 2/5 for K5; otherwise 4/5 exactly when a
    matching-cut exists, else 3/5 (witness solver-derived)."""
    if regularity(G) != 4 or not is_connected(G):
        raise PreconditionError("4-regular formula needs a connected 4-regular graph")
    if is_isomorphic(G, complete(5)):
        return FormulaVerdict(Fraction(2, 5), "4reg", clique_q(5).witness)
    cert = find_matching_cut(G, budget=budget)
    if cert.has_cut:
        return FormulaVerdict(Fraction(4, 5), "4reg", cert.partition)
    res = solve_q(G, budget=budget)
    if res.q != Fraction(3, 5):
        raise AssertionError(f"4-regular dichotomy violated: solver says {res.q}")
    return FormulaVerdict(Fraction(3, 5), "4reg", res.optimal_partition)


def product_kreg_tree_q(G: Graph, H: Graph) -> FormulaVerdict:
    """q(G box H) for G k-regular connected and H a tree, with a fiber-wise
    witness split along a maximizing tree edge."""
    k = regularity(G)
    if k is None or not is_connected(G):
        raise PreconditionError("left factor must be connected and regular")
    if not is_tree(H):
        raise PreconditionError("right factor must be a tree")
    value = Fraction(0)
    best_edge = None
    for u, v in H.edges():
        cand = min(Fraction(H.degree(u) + k, H.closed_degree(u) + k),
                   Fraction(H.degree(v) + k, H.closed_degree(v) + k))
        if cand > value:
            value, best_edge = cand, (u, v)
    u, v = best_edge
    side_u = {u}
    stack = [u]
    while stack:
        w = stack.pop()
        for x in H.adj[w]:
            if (w, x) in ((u, v), (v, u)) or x in side_u:
                continue
            side_u.add(x)
            stack.append(x)
    P = cartesian_product(G, H)
    h_part = Bipartition.from_side1(H.n, side_u)
    witness = lift_partition(P, h_part, "right")
    assert partition_quality(P, witness).quality == value
    return FormulaVerdict(value, "prodkregtree", witness)


def product_cubic_q(G: Graph, H: Graph,
                    budget: int = DEFAULT_BUDGET) -> FormulaVerdict:
    """q(G box H) for connected cubic factors: 5/7 when both factors are K4
    or K33, else 6/7 via a lifted matching-cut."""
    for F in (G, H):
        if regularity(F) != 3 or not is_connected(F):
            raise PreconditionError("both factors must be connected cubic graphs")
    P = cartesian_product(G, H)
    special = lambda F: (is_isomorphic(F, complete(4))
                         or is_isomorphic(F, complete_bipartite(3, 3)))
    if special(G) and special(H):
        # two adjacent left-factor fibers against the rest
        a = 0
        b = min(G.adj[a])
        side1 = {g * H.n + h for g in (a, b) for h in range(H.n)}
        witness = Bipartition.from_side1(P.n, side1)
        value = Fraction(5, 7)
    else:
        cert = find_matching_cut(P, budget=budget)
        if not cert.has_cut:
            raise AssertionError("cubic product dichotomy violated: no matching-cut")
        witness = cert.partition
        value = Fraction(6, 7)
    assert partition_quality(P, witness).quality == value
    return FormulaVerdict(value, "prodcub", witness)


def closed_form(G: Graph, budget: int = DEFAULT_BUDGET) -> FormulaVerdict:
    """Dispatch to the first applicable exact formula; raises
    :class:`NoApplicableRule` when the graph matches no proven class."""
    if not is_connected(G):
        raise PreconditionError("closed forms apply to connected graphs")
    if is_isomorphic(G, complete(G.n)):
        return clique_q(G.n)
    if G.n >= 3 and is_isomorphic(G, k_triangle(G.n - 2)):
        return ktriangle_q(G.n - 2)
    if is_tree(G):
        return tree_q(G)
    if G.factors is not None:
        Gf, Hf = G.factors
        if regularity(Gf) == 3 and regularity(Hf) == 3:
            return product_cubic_q(Gf, Hf, budget=budget)
        if regularity(Gf) is not None and is_tree(Hf):
            return product_kreg_tree_q(Gf, Hf)
        if regularity(Hf) is not None and is_tree(Gf):
            # the product is commutative up to relabeling; normalize
            v = product_kreg_tree_q(Hf, Gf)
            mapping = {g * Gf.n + h: h * Hf.n + g
                       for g in range(Hf.n) for h in range(Gf.n)}
            sides = [0] * G.n
            for old, new in mapping.items():
                sides[new] = v.witness.sides[old]
            return FormulaVerdict(v.value, v.rule, Bipartition(tuple(sides)))
    if regularity(G) == 3:
        return cubic_q(G, budget=budget)
    if regularity(G) == 4:
        return four_regular_q(G, budget=budget)
    raise NoApplicableRule("no applicable rule for this graph")


# -- characterizations ------------------------------------------------------


def characterize_third(G: Graph) -> bool:
    """q(G) = 1/3 holds exactly for the triangle."""
    return is_isomorphic(G, cycle(3))


def characterize_two_fifths(G: Graph) -> bool:
    """For maximum degree at most 6: q(G) = 2/5 exactly on the four-member
    family returned by :func:`two_fifths_family`."""
    if G.max_degree > 6:
        raise PreconditionError("characterization proven only for max degree <= 6")
    return any(is_isomorphic(G, F) for F in two_fifths_family())
