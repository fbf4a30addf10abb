"""Exact computation of the optimal degree ratio q(G) and matching-cut
detection, by partition enumeration with admissible pruning.

The search fixes vertex 0 on side 1 (complement symmetry halves the space)
and abandons a branch only when some vertex whose cross-neighborhood is
partially decided can no longer beat the incumbent even if every undecided
neighbor lands on its side.  Failure to finish within the assignment budget
raises :class:`BudgetExceededError`; the answer is never silently inexact.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceededError, ParameterError, PreconditionError
from .graph import Graph, cartesian_product, components, connectivity, is_connected
from .ratios import (Bipartition, MatchingCutCertificate, crossing_edges,
                     is_matching, partition_quality)

DEFAULT_BUDGET = 1 << 26


@dataclass(frozen=True)
class SolveResult:
    q: Fraction
    optimal_partition: Bipartition
    explored: int
    method: str


@dataclass(frozen=True)
class DecideResult:
    satisfied: bool
    witness: Bipartition | None
    explored: int

    def __bool__(self):
        return self.satisfied


# -- seed partitions --------------------------------------------------------


def _bfs_order(G: Graph) -> list[int]:
    order = [0]
    seen = [False] * G.n
    seen[0] = True
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for u in sorted(G.adj[v]):
            if not seen[u]:
                seen[u] = True
                order.append(u)
    for v in range(G.n):  # disconnected leftovers
        if not seen[v]:
            order.append(v)
    return order


def _hill_climb(G: Graph, P: Bipartition, rounds: int | None = None) -> Bipartition:
    """Greedy single-vertex moves while the partition quality strictly improves."""
    if rounds is None:
        rounds = 4 * G.n
    cur = P
    cur_q = partition_quality(G, cur).quality
    for _ in range(rounds):
        best = None
        best_q = cur_q
        for v in range(G.n):
            if sum(1 for s in cur.sides if s == cur.sides[v]) == 1:
                continue  # would empty a side
            flipped = list(cur.sides)
            flipped[v] = 3 - flipped[v]
            cand = Bipartition(tuple(flipped))
            q = partition_quality(G, cand).quality
            if q > best_q:
                best, best_q = cand, q
        if best is None:
            break
        cur, cur_q = best, best_q
    return cur


def lift_partition(P: Graph, factor_partition: Bipartition, which: str) -> Bipartition:
    """Copy a factor partition fiber-wise onto a product graph."""
    if P.factors is None:
        raise PreconditionError("graph has no product provenance")
    G, H = P.factors
    if which == "left":
        sides = tuple(factor_partition.sides[v // H.n] for v in range(P.n))
    elif which == "right":
        sides = tuple(factor_partition.sides[v % H.n] for v in range(P.n))
    else:
        raise ParameterError(f"which must be 'left' or 'right', got {which!r}")
    return Bipartition(sides)


def _seed_partitions(G: Graph, budget: int) -> list[Bipartition]:
    seeds: list[Bipartition] = []
    comps = components(G)
    if len(comps) > 1:
        return [Bipartition.from_side1(G.n, comps[0])]  # quality 1, optimal

    conn = connectivity(G)
    for u, v in sorted(conn.bridges):
        side1 = {u}
        stack = [u]
        while stack:  # component of u in G minus the bridge
            w = stack.pop()
            for x in G.adj[w]:
                if (w, x) in ((u, v), (v, u)):
                    continue
                if x not in side1:
                    side1.add(x)
                    stack.append(x)
        if 0 < len(side1) < G.n:
            seeds.append(Bipartition.from_side1(G.n, side1))
    for c in sorted(conn.cut_vertices):
        rest = [v for v in range(G.n) if v != c]
        comp_of = {}
        for v in rest:
            if v in comp_of:
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
        choices = {comp_of[v] for v in rest}
        best_comp = min(choices, key=lambda s: (len(s & G.adj[c]), sorted(s)))
        seeds.append(Bipartition.from_side1(G.n, best_comp))

    if G.factors is not None:
        Gf, Hf = G.factors
        for which, F in (("left", Gf), ("right", Hf)):
            sub = solve_q(F, budget=budget)
            seeds.append(lift_partition(G, sub.optimal_partition, which))
            cert = find_matching_cut(F, budget=budget)
            if cert.has_cut:
                seeds.append(lift_partition(G, cert.partition, which))

    order = _bfs_order(G)
    half = set(order[: G.n // 2])
    seeds.append(Bipartition.from_side1(G.n, half))
    seeds.append(Bipartition.from_side1(G.n, {0}))

    improved = []
    seen = set()
    for p in seeds:
        p = _hill_climb(G, p)
        if p.sides not in seen:
            seen.add(p.sides)
            improved.append(p)
    return improved


# -- branch and bound for q(G) ----------------------------------------------


def _bb_max(G: Graph, order: list[int], prefix: tuple[int, ...],
            inc_num: int, inc_den: int, budget: int):
    """Exhaust all assignments extending ``prefix`` (sides for order[0..]),
    looking for partitions strictly better than inc_num/inc_den.

    Returns (best_num, best_den, best_sides_or_None, explored).
    """
    n = G.n
    adjl = [sorted(G.adj[v]) for v in range(n)]
    d1 = [G.closed_degree(v) for v in range(n)]
    side = [0] * n
    cross = [0] * n
    count2 = 0
    explored = 0
    best_num, best_den = inc_num, inc_den
    best_sides: tuple[int, ...] | None = None

    def try_assign(v: int, s: int):
        """Assign v to side s; returns undo info, or None when pruned."""
        opp = 3 - s
        touched: list[int] = []
        cv = 0
        ok = True
        for u in adjl[v]:
            su = side[u]
            if su == opp:
                cv += 1
                cross[u] += 1
                touched.append(u)
                if (d1[u] - cross[u]) * best_den <= best_num * d1[u]:
                    ok = False
                    break
        if ok:
            cross[v] = cv
            if (d1[v] - cv) * best_den <= best_num * d1[v]:
                ok = False
        if not ok:
            for u in touched:
                cross[u] -= 1
            cross[v] = 0
            return None
        side[v] = s
        return touched

    def undo(v: int, touched: list[int]):
        side[v] = 0
        cross[v] = 0
        for u in touched:
            cross[u] -= 1

    def rec(i: int):
        nonlocal explored, best_num, best_den, best_sides, count2
        if i == n:
            if count2 == 0:
                return
            mn, md = 2, 1
            for v in range(n):
                kept = d1[v] - cross[v]
                if kept * md < mn * d1[v]:
                    mn, md = kept, d1[v]
            if mn * best_den > best_num * md:
                best_num, best_den = mn, md
                best_sides = tuple(side)
            return
        v = order[i]
        for s in ((1,) if i == 0 else (1, 2)):
            explored += 1
            if explored > budget:
                raise BudgetExceededError(explored=explored)
            touched = try_assign(v, s)
            if touched is None:
                continue
            if s == 2:
                count2 += 1
            rec(i + 1)
            if s == 2:
                count2 -= 1
            undo(v, touched)

    # apply the forced prefix, then search below it
    applied: list[tuple[int, list[int]]] = []
    pruned = False
    for i, s in enumerate(prefix):
        v = order[i]
        touched = try_assign(v, s)
        if touched is None:
            pruned = True
            break
        if s == 2:
            count2 += 1
        applied.append((v, touched))
    if not pruned:
        rec(len(prefix))
    for v, touched in reversed(applied):
        undo(v, touched)
    return best_num, best_den, best_sides, explored


def _solve_prefix_worker(args):
    G, order, prefix, inc_num, inc_den, budget = args
    try:
        return ("ok", _bb_max(G, order, tuple(prefix), inc_num, inc_den, budget))
    except BudgetExceededError as exc:
        return ("budget", exc.explored)


def solve_q(G: Graph, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> SolveResult:
    """Exact optimum of the degree ratio over all nontrivial bipartitions."""
    seeds = _seed_partitions(G, budget)
    best_part = seeds[0]
    best_q = partition_quality(G, best_part).quality
    for p in seeds[1:]:
        q = partition_quality(G, p).quality
        if q > best_q:
            best_part, best_q = p, q
    if best_q == 1:  # disconnected optimum, nothing can beat it
        return SolveResult(best_q, best_part, 0, "pruned_search")

    order = _bfs_order(G)
    if jobs <= 1 or G.n < 6:
        num, den, sides, explored = _bb_max(
            G, order, (1,), best_q.numerator, best_q.denominator, budget)
    else:
        k = min(G.n - 2, max(1, (2 * jobs - 1).bit_length()))
        prefixes = [(1,) + tuple(1 + (bits >> j & 1) for j in range(k))
                    for bits in range(1 << k)]
        tasks = [(G, order, p, best_q.numerator, best_q.denominator, budget)
                 for p in prefixes]
        num, den = best_q.numerator, best_q.denominator
        sides = None
        explored = 0
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for status, payload in pool.map(_solve_prefix_worker, tasks):
                if status == "budget":
                    raise BudgetExceededError(explored=explored + payload)
                wnum, wden, wsides, wexplored = payload
                explored += wexplored
                if wsides is not None and wnum * den > num * wden:
                    num, den, sides = wnum, wden, wsides

    if sides is not None:
        best_part = Bipartition(sides)
        best_q = Fraction(num, den)
    return SolveResult(best_q, best_part, explored, "pruned_search")


# -- the decision problem ---------------------------------------------------


def decide(G: Graph, q: Fraction, budget: int = DEFAULT_BUDGET) -> DecideResult:
    """Is there a nontrivial partition of quality >= q?  Short-circuits on the
    first witness."""
    if not 0 < q <= 1:
        raise ParameterError(f"threshold must satisfy 0 < q <= 1, got {q}")
    for p in _seed_partitions(G, budget):
        if partition_quality(G, p).quality >= q:
            return DecideResult(True, p, 0)

    n = G.n
    order = _bfs_order(G)
    adjl = [sorted(G.adj[v]) for v in range(n)]
    d1 = [G.closed_degree(v) for v in range(n)]
    side = [0] * n
    cross = [0] * n
    explored = 0
    qn, qd = q.numerator, q.denominator

    def rec(i: int, count2: int):
        nonlocal explored
        if i == n:
            if count2 == 0:
                return None
            return Bipartition(tuple(side))
        v = order[i]
        for s in ((1,) if i == 0 else (1, 2)):
            explored += 1
            if explored > budget:
                raise BudgetExceededError(explored=explored)
            opp = 3 - s
            touched = []
            cv = 0
            ok = True
            for u in adjl[v]:
                if side[u] == opp:
                    cv += 1
                    cross[u] += 1
                    touched.append(u)
                    if (d1[u] - cross[u]) * qd < qn * d1[u]:
                        ok = False
                        break
            if ok:
                cross[v] = cv
                if (d1[v] - cv) * qd < qn * d1[v]:
                    ok = False
            if ok:
                side[v] = s
                found = rec(i + 1, count2 + (s == 2))
                side[v] = 0
                if found is not None:
                    for u in touched:
                        cross[u] -= 1
                    cross[v] = 0
                    return found
            for u in touched:
                cross[u] -= 1
            cross[v] = 0
        return None

    witness = rec(0, 0)
    if witness is not None and partition_quality(G, witness).quality < q:
        raise AssertionError("search produced an invalid witness")
    return DecideResult(witness is not None, witness, explored)


# -- matching cuts ----------------------------------------------------------


def _mc_search(G: Graph, budget: int) -> MatchingCutCertificate:
    """Exhaustive bipartition search; any vertex with two cross neighbors
    kills the branch, so a reached leaf is a matching-cut partition."""
    n = G.n
    order = _bfs_order(G)
    adjl = [sorted(G.adj[v]) for v in range(n)]
    side = [0] * n
    cross = [0] * n
    explored = 0

    def rec(i: int, count2: int):
        nonlocal explored
        if i == n:
            if count2 == 0:
                return None
            return Bipartition(tuple(side))
        v = order[i]
        for s in ((1,) if i == 0 else (1, 2)):
            explored += 1
            if explored > budget:
                raise BudgetExceededError(explored=explored)
            opp = 3 - s
            touched = []
            cv = 0
            ok = True
            for u in adjl[v]:
                if side[u] == opp:
                    cv += 1
                    cross[u] += 1
                    touched.append(u)
                    if cross[u] >= 2:
                        ok = False
                        break
            if ok and cv >= 2:
                ok = False
            if ok:
                cross[v] = cv
                side[v] = s
                found = rec(i + 1, count2 + (s == 2))
                side[v] = 0
                cross[v] = 0
                if found is not None:
                    for u in touched:
                        cross[u] -= 1
                    return found
            for u in touched:
                cross[u] -= 1
        return None

    witness = rec(0, 0)
    if witness is None:
        return MatchingCutCertificate(False, None, (), exhaustive=True)
    crossing = tuple(crossing_edges(G, witness))
    assert crossing and is_matching(G, crossing)
    return MatchingCutCertificate(True, witness, crossing, exhaustive=True)


def find_matching_cut(G: Graph, budget: int = DEFAULT_BUDGET,
                      use_product_rule: bool = True) -> MatchingCutCertificate:
    """Certificate for matching-cut existence in a connected graph.

    Product graphs with provenance are decided through their factors (the
    factor rule both finds a lifted cut and certifies absence); pass
    ``use_product_rule=False`` to force the raw exhaustive search.
    """
    if not is_connected(G):
        raise PreconditionError("matching-cut search needs a connected graph")
    if use_product_rule and G.factors is not None:
        return _product_certificate(G, budget)
    return _mc_search(G, budget)


def _product_certificate(P: Graph, budget: int) -> MatchingCutCertificate:
    Gf, Hf = P.factors
    for which, F in (("left", Gf), ("right", Hf)):
        cert = find_matching_cut(F, budget=budget)
        if cert.has_cut:
            lifted = lift_partition(P, cert.partition, which)
            crossing = tuple(crossing_edges(P, lifted))
            assert crossing and is_matching(P, crossing)
            return MatchingCutCertificate(True, lifted, crossing, exhaustive=True)
    return MatchingCutCertificate(False, None, (), exhaustive=True)


def product_matching_cut(G: Graph, H: Graph,
                         budget: int = DEFAULT_BUDGET) -> MatchingCutCertificate:
    """Matching-cut certificate for the cartesian product G box H, decided by
    the factor rule: the product has a matching-cut iff some factor has one,
    and a factor cut lifts fiber-wise."""
    for F in (G, H):
        if not is_connected(F):
            raise PreconditionError("product factors must be connected")
    P = cartesian_product(G, H)
    return _product_certificate(P, budget)
