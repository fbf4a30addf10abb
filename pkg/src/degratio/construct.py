"""Witness-producing procedures: degree-constrained bipartitions, the
good-pair construction and its extension to a full partition, and
connectivity-based partitions.

The partition-existence theorems behind the degree-constrained demands are
non-constructive; here a potential-guided local search does the work, with
an exhaustive fallback for graphs up to 22 vertices.  A demand regime whose
preconditions hold but whose exhaustive search comes up empty is a fatal
internal error, never a silent miss.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BudgetExceededError, ParameterError, PreconditionError
from .formulas import _theorem_classes, two_fifths_family
from .graph import (Graph, adjacency_masks, connectivity, cycle, is_connected,
                    is_isomorphic)
from .ratios import Bipartition, partition_quality
from .solver import DEFAULT_BUDGET, solve_q

log = logging.getLogger(__name__)

_EXHAUSTIVE_LIMIT = 22
_ITERATION_FACTOR = 50


# -- degree-constrained partitions ------------------------------------------


@dataclass(frozen=True)
class DegreeDemands:
    """Per-vertex inner-degree demands under one of three regimes.

    stiebitz: d(x) >= f1(x) + f2(x) + 1, any graph;
    hou:      d(x) >= f1(x) + f2(x), demands >= 1, no K4-e+v subgraph;
    ma:       d(x) >= f1(x) + f2(x) - 1, demands >= 2, either no
              C4/K4/diamond subgraph or no K3/C8/K23 subgraph.
    """

    f1: tuple[int, ...]
    f2: tuple[int, ...]
    regime: str

    def validate(self, G: Graph):
        if len(self.f1) != G.n or len(self.f2) != G.n:
            raise ParameterError("demand vectors must cover every vertex")
        if any(x < 0 for x in self.f1 + self.f2):
            raise ParameterError("demands must be nonnegative")
        degs = [G.degree(v) for v in range(G.n)]
        if self.regime == "stiebitz":
            bad = [v for v in range(G.n) if degs[v] < self.f1[v] + self.f2[v] + 1]
            if bad:
                raise PreconditionError(f"d(x) >= f1+f2+1 fails at {bad[0]}")
        elif self.regime == "hou":
            if any(x < 1 for x in self.f1 + self.f2):
                raise PreconditionError("hou regime needs demands >= 1")
            bad = [v for v in range(G.n) if degs[v] < self.f1[v] + self.f2[v]]
            if bad:
                raise PreconditionError(f"d(x) >= f1+f2 fails at {bad[0]}")
            if not _theorem_classes(G)["k4ev_free"]:
                raise PreconditionError("hou regime needs a K4-e+v-subgraph-free graph")
        elif self.regime == "ma":
            if any(x < 2 for x in self.f1 + self.f2):
                raise PreconditionError("ma regime needs demands >= 2")
            bad = [v for v in range(G.n) if degs[v] < self.f1[v] + self.f2[v] - 1]
            if bad:
                raise PreconditionError(f"d(x) >= f1+f2-1 fails at {bad[0]}")
            if not _theorem_classes(G)["sparse_free"]:
                raise PreconditionError(
                    "ma regime needs a (C4,K4,diamond)- or (K3,C8,K23)-subgraph-free graph")
        else:
            raise ParameterError(f"unknown regime {self.regime!r}")


def stiebitz_demands(G: Graph) -> DegreeDemands:
    f = tuple((G.degree(v) - 1) // 2 for v in range(G.n))
    return DegreeDemands(f, f, "stiebitz")


def hou_demands(G: Graph) -> DegreeDemands:
    f = tuple(G.degree(v) // 2 for v in range(G.n))
    return DegreeDemands(f, f, "hou")


def ma_demands(G: Graph) -> DegreeDemands:
    f = tuple((G.degree(v) + 1) // 2 for v in range(G.n))
    return DegreeDemands(f, f, "ma")


def demands_satisfied(G: Graph, demands: DegreeDemands, P: Bipartition) -> bool:
    for v in range(G.n):
        inner = sum(1 for u in G.adj[v] if P.sides[u] == P.sides[v])
        need = demands.f1[v] if P.sides[v] == 1 else demands.f2[v]
        if inner < need:
            return False
    return True


def _exhaustive_demand_search(G: Graph, demands: DegreeDemands) -> Bipartition | None:
    masks = adjacency_masks(G)
    n = G.n
    f1, f2 = demands.f1, demands.f2
    for mask in range(1, (1 << n) - 1):
        ok = True
        for v in range(n):
            inner = (masks[v] & mask).bit_count() if mask >> v & 1 \
                else (masks[v] & ~mask).bit_count()
            need = f1[v] if mask >> v & 1 else f2[v]
            if inner < need:
                ok = False
                break
        if ok:
            return Bipartition.from_mask(n, mask)
    return None


def degree_constrained_partition(G: Graph, demands: DegreeDemands) -> Bipartition:
    """A nontrivial partition with inner degree >= f_i(x) on each side.

    Local search moves a deficient vertex across; the move strictly raises
    the potential e(V1) + e(V2) - sum of demands on the occupied sides, so
    the loop terminates.  When it stalls on side-emptiness (or hits the
    iteration cap) an exhaustive scan takes over for n <= 22.
    """
    demands.validate(G)
    n = G.n
    sides = [1 if i % 2 == 0 else 2 for i in range(n)]
    count = [0, n - n // 2, n // 2]
    cap = _ITERATION_FACTOR * n * n

    def deficiency(v):
        inner = sum(1 for u in G.adj[v] if sides[u] == sides[v])
        need = demands.f1[v] if sides[v] == 1 else demands.f2[v]
        return need - inner

    stalled = False
    for _ in range(cap):
        moved = False
        for v in range(n):
            if deficiency(v) > 0:
                if count[sides[v]] == 1:
                    stalled = True
                    continue
                count[sides[v]] -= 1
                sides[v] = 3 - sides[v]
                count[sides[v]] += 1
                moved = True
                stalled = False
                break
        if not moved:
            break
    else:
        stalled = True

    if not stalled:
        P = Bipartition(tuple(sides))
        if demands_satisfied(G, demands, P):
            return P

    if n > _EXHAUSTIVE_LIMIT:
        raise BudgetExceededError(
            f"local search stalled and n={n} exceeds the exhaustive range")
    P = _exhaustive_demand_search(G, demands)
    if P is None:
        raise RuntimeError(
            f"no demand-feasible partition exists under regime {demands.regime!r} "
            "although its preconditions hold")
    return P


@dataclass(frozen=True)
class LowerBoundWitness:
    value: Fraction
    strict: bool
    rule: str
    partition: Bipartition
    quality: Fraction


def lower_bound_witness(G: Graph) -> LowerBoundWitness:
    """Strongest applicable class bound together with a partition realizing
    it, built from the matching demand functions."""
    if not is_connected(G):
        raise PreconditionError("lower bound witness needs a connected graph")
    classes = _theorem_classes(G)
    if classes["sparse_free"] and G.min_degree >= 3:
        demands, value, strict, rule = (
            ma_demands(G), Fraction(1, 2), True, "lowboundC4free")
    elif classes["k4ev_free"] and G.min_degree >= 2:
        demands, value, strict, rule = (
            hou_demands(G), Fraction(1, 2), False, "lowboundC3")
    else:
        demands = stiebitz_demands(G)
        even = [G.degree(v) for v in range(G.n) if G.degree(v) % 2 == 0]
        if even:
            p = min(even) // 2
            value = min(Fraction(1, 2), Fraction(p, 2 * p + 1)) if p else Fraction(0)
        else:
            value = Fraction(1, 2)
        strict, rule = False, "lowbound"
    P = degree_constrained_partition(G, demands)
    quality = partition_quality(G, P).quality
    if quality < value or (strict and quality <= value):
        raise AssertionError(
            f"witness quality {quality} misses the {rule} bound {value}")
    return LowerBoundWitness(value, strict, rule, P, quality)


# -- good pairs -------------------------------------------------------------


@dataclass(frozen=True)
class GoodPair:
    """Two disjoint nonempty sets whose members already meet the threshold
    ratio within their own set."""

    A: frozenset[int]
    B: frozenset[int]
    threshold: Fraction
    case: str = ""


def is_good_pair(G: Graph, gp: GoodPair) -> bool:
    if not gp.A or not gp.B or gp.A & gp.B:
        return False
    for group in (gp.A, gp.B):
        for v in group:
            inside = 1 + sum(1 for u in G.adj[v] if u in group)
            if Fraction(inside, G.closed_degree(v)) < gp.threshold:
                return False
    return True


def _smallest_triangle(G: Graph) -> tuple[int, int, int] | None:
    for a in range(G.n):
        for b in sorted(G.adj[a]):
            if b <= a:
                continue
            common = sorted(c for c in G.adj[a] & G.adj[b] if c > b)
            if common:
                return (a, b, common[0])
    return None


def _cycle_within(G: Graph, allowed: frozenset[int]) -> list[int] | None:
    """Vertex list of some cycle of the subgraph induced by ``allowed``."""
    seen: set[int] = set()
    parent: dict[int, int] = {}
    for root in sorted(allowed):
        if root in seen:
            continue
        seen.add(root)
        parent[root] = -1
        stack = [root]
        while stack:
            v = stack.pop()
            for u in sorted(G.adj[v]):
                if u not in allowed:
                    continue
                if u not in seen:
                    seen.add(u)
                    parent[u] = v
                    stack.append(u)
                elif parent[v] != u and parent.get(u) is not None:
                    # walk both ancestor chains to their meeting point
                    anc_v = []
                    x = v
                    while x != -1:
                        anc_v.append(x)
                        x = parent[x]
                    chain = []
                    x = u
                    while x not in anc_v:
                        chain.append(x)
                        x = parent[x]
                    meet = x
                    cyc = chain + [meet]
                    x = v
                    while x != meet:
                        cyc.append(x)
                        x = parent[x]
                    if len(cyc) >= 3:
                        return cyc
        parent = {k: p for k, p in parent.items()}
    return None


def _tree_path(G: Graph, comp: frozenset[int], u: int, v: int) -> list[int]:
    prev = {u: None}
    queue = [u]
    while queue:
        x = queue.pop(0)
        if x == v:
            break
        for y in sorted(G.adj[x]):
            if y in comp and y not in prev:
                prev[y] = x
                queue.append(y)
    path = [v]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return path[::-1]


def _proof_candidates(G: Graph, tri: tuple[int, int, int]):
    """Generate (case, A, B) candidates following the case analysis for the
    3/7 threshold; each candidate is validated by the caller."""
    tset = frozenset(tri)
    rest = frozenset(range(G.n)) - tset

    if rest:
        cyc = _cycle_within(G, rest)
        if cyc is not None:
            yield ("triangle-cycle", tset, frozenset(cyc))
            return  # the remaining cases assume an acyclic remainder

    comps: list[frozenset[int]] = []
    unseen = set(rest)
    while unseen:
        root = min(unseen)
        comp = {root}
        stack = [root]
        while stack:
            v = stack.pop()
            for u in G.adj[v]:
                if u in unseen and u not in comp:
                    comp.add(u)
                    stack.append(u)
        unseen -= comp
        comps.append(frozenset(comp))

    def leaves(comp):
        return sorted(v for v in comp if sum(1 for u in G.adj[v] if u in comp) == 1)

    def is_path(comp):
        return len(comp) >= 2 and all(
            sum(1 for u in G.adj[v] if u in comp) <= 2 for v in comp)

    # two vertices of closed degree <= 4 in one component: triangle vs path
    for comp in comps:
        low = sorted(v for v in comp if G.closed_degree(v) <= 4)
        for u, v in combinations(low, 2):
            yield ("two-low-path", tset, frozenset(_tree_path(G, comp, u, v)))

    # a component with three leaves: a cycle through one triangle vertex
    for comp in comps:
        lvs = leaves(comp)
        if len(lvs) < 3:
            continue
        for w in lvs:
            for c in sorted(G.adj[w] & tset):
                ab = tset - {c}
                for u in lvs:
                    if u == w:
                        continue
                    for v in lvs:
                        if v in (u, w):
                            continue
                        P = frozenset(_tree_path(G, comp, v, w))
                        yield ("three-leaves", P | {c}, ab | {u})

    paths = [comp for comp in comps if is_path(comp)]
    isolated = sorted(min(comp) for comp in comps if len(comp) == 1)

    # two path components
    for C1 in paths:
        for C2 in paths:
            if C1 == C2:
                continue
            for u in leaves(C1):
                for c in sorted(G.adj[u] & tset):
                    for v2 in leaves(C2):
                        yield ("two-paths", C1 | {c}, (tset - {c}) | {v2})

    # one path plus an isolated vertex
    for C in paths:
        for w in isolated:
            lvs = leaves(C)
            for u in lvs:
                for v in lvs:
                    if v == u:
                        continue
                    for c in sorted(G.adj[u] & tset):
                        yield ("path-isolated", C | {c}, (tset - {c}) | {w})
                        yield ("path-isolated", frozenset({c, u, w}),
                               (tset - {c}) | {v})
                        for b in sorted(tset - {c}):
                            yield ("path-isolated", C | {b}, (tset - {b}) | {w})

    # a single path and nothing else
    if len(comps) == 1 and paths:
        C = paths[0]
        lvs = leaves(C)
        for u in lvs:
            for v in lvs:
                if v == u:
                    continue
                for c in sorted(G.adj[u] & tset):
                    if len(C) == 2:
                        yield ("single-path", tset - {c}, frozenset({c, u, v}))
                    w = next(x for x in sorted(G.adj[u]) if x in C)
                    yield ("single-path", frozenset({c, u, w}), (tset - {c}) | {v})
                    for c2 in sorted(G.adj[w] & tset):
                        yield ("single-path", frozenset({c2, u, w}),
                               (tset - {c2}) | {v})
                    for s in sorted(G.adj[w] & C - {u}):
                        for c2 in sorted(G.adj[s] & tset):
                            yield ("single-path", frozenset({c2, s, u, w}),
                                   (tset - {c2}) | {v})

    # every component is an isolated vertex
    if comps and all(len(comp) == 1 for comp in comps):
        by_degree = sorted(tri, key=lambda v: (G.degree(v), v))
        for c in by_degree:
            ab = tset - {c}
            outside = sorted(v for v in G.adj[c] if v not in tset)
            if G.degree(c) == 2:
                # the whole graph is a k-triangle on apexes rest
                a, b = sorted(ab)
                apexes = sorted(rest | {c})
                half = len(apexes) // 2
                A = frozenset({a} | set(apexes[:half]))
                yield ("ktriangle-split", A, frozenset(range(G.n)) - A)
            elif G.degree(c) == 3 and outside:
                pair = frozenset({c, outside[0]})
                yield ("isolated-deg3", pair, frozenset(range(G.n)) - pair)
            elif len(outside) >= 2:
                u, v = outside[0], outside[1]
                a, b = sorted(ab)
                for w in sorted(rest - {u, v}):
                    if a in G.adj[w] and b in G.adj[w]:
                        yield ("isolated-deg4plus", frozenset({c, u, v}),
                               frozenset({a, b, w}))


def find_good_pair(G: Graph, threshold: Fraction = Fraction(3, 7),
                   budget: int = DEFAULT_BUDGET) -> GoodPair:
    """A good pair via the structural case analysis around a smallest
    triangle; an exhaustive fallback (logged loudly) covers any gap."""
    if threshold == Fraction(3, 7):
        if not is_connected(G):
            raise PreconditionError("good pair search needs a connected graph")
        if G.max_degree > 6:
            raise PreconditionError("3/7 good pairs proven only for max degree <= 6")
        conn = connectivity(G)
        if conn.cut_vertices:
            raise PreconditionError("good pair search assumes a biconnected graph")
        excluded = two_fifths_family() + (cycle(3),)
        if any(is_isomorphic(G, F) for F in excluded):
            raise PreconditionError("graph is one of the excluded 2/5-value graphs")
    elif threshold == Fraction(3, 5):
        from .graph import regularity
        if regularity(G) != 4 or not is_connected(G):
            raise PreconditionError("3/5 good pairs apply to connected 4-regular graphs")
    else:
        raise ParameterError(f"unsupported good-pair threshold {threshold}")

    tri = _smallest_triangle(G)
    if tri is None:
        raise PreconditionError("good pair search needs a triangle")

    for case, A, B in _proof_candidates(G, tri):
        gp = GoodPair(frozenset(A), frozenset(B), threshold, case)
        if is_good_pair(G, gp):
            return gp

    log.warning("good-pair case analysis exhausted on %r; falling back to the "
                "exact solver (suspected case gap)", G)
    res = solve_q(G, budget=budget)
    if res.q < threshold:
        raise RuntimeError(
            f"no good pair exists at threshold {threshold}: q(G) = {res.q}")
    gp = GoodPair(res.optimal_partition.side(1), res.optimal_partition.side(2),
                  threshold, "fallback")
    assert is_good_pair(G, gp)
    return gp


def extend_good_pair(G: Graph, gp: GoodPair) -> Bipartition:
    """Grow a good pair into a full partition of quality >= its threshold.

    Leftover vertices that already meet the threshold among themselves form
    the second side wholesale; otherwise a violating vertex joins the side
    holding more of its neighbors (ties to A).  The leftover set strictly
    shrinks, so at most n iterations run.
    """
    if not is_good_pair(G, gp):
        raise PreconditionError("input does not satisfy the good-pair invariant")
    A, B = set(gp.A), set(gp.B)
    thr = gp.threshold
    while True:
        C = set(range(G.n)) - A - B
        if not C:
            P = Bipartition.from_side1(G.n, A)
            break
        if all(Fraction(1 + sum(1 for u in G.adj[v] if u in C),
                        G.closed_degree(v)) >= thr for v in C):
            P = Bipartition.from_side1(G.n, A | B)
            break
        v = min(v for v in C
                if Fraction(1 + sum(1 for u in G.adj[v] if u in C),
                            G.closed_degree(v)) < thr)
        if len(G.adj[v] & A) >= len(G.adj[v] & B):
            A.add(v)
        else:
            B.add(v)
    quality = partition_quality(G, P).quality
    if quality < thr:
        raise AssertionError(
            f"extension produced quality {quality} below threshold {thr}")
    return P


# -- connectivity-based partitions ------------------------------------------


def connectivity_partition(G: Graph) -> tuple[Fraction, Bipartition] | None:
    """Best cut-structure partition: bridge splits and cut-vertex splits.
    None when the graph is biconnected and bridgeless."""
    if not is_connected(G):
        raise PreconditionError("connectivity partition needs a connected graph")
    conn = connectivity(G)
    candidates: list[Bipartition] = []
    for u, v in sorted(conn.bridges):
        side1 = {u}
        stack = [u]
        while stack:
            w = stack.pop()
            for x in G.adj[w]:
                if (w, x) in ((u, v), (v, u)) or x in side1:
                    continue
                side1.add(x)
                stack.append(x)
        candidates.append(Bipartition.from_side1(G.n, side1))
    for c in sorted(conn.cut_vertices):
        comp_of: dict[int, frozenset[int]] = {}
        for v in range(G.n):
            if v == c or v in comp_of:
                continue
            comp = {v}
            stack = [v]
            while stack:
                w = stack.pop()
                for x in G.adj[w]:
                    if x != c and x not in comp:
                        comp.add(x)
                        stack.append(x)
            for w in comp:
                comp_of[w] = frozenset(comp)
        comp = min(set(comp_of.values()), key=lambda s: (len(s & G.adj[c]), sorted(s)))
        candidates.append(Bipartition.from_side1(G.n, comp))
    if not candidates:
        return None
    best = max(candidates, key=lambda P: partition_quality(G, P).quality)
    return partition_quality(G, best).quality, best
