"""Simple undirected graphs: representation, named constructions, cartesian
products with fiber provenance, induced-pattern detection and connectivity.

Vertices are dense integer labels 0..n-1.  Graph values are immutable after
construction and safe to share between workers.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import GraphParseError, ParameterError, PreconditionError


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph on vertices 0..n-1.

    ``factors`` keeps product provenance: when the graph was built by
    :func:`cartesian_product` it holds the two factor graphs, and vertex
    ``(g, h)`` of the product is the integer ``g * factors[1].n + h``.
    """

    n: int
    adj: tuple[frozenset[int], ...]
    name: str | None = field(default=None, compare=False)
    factors: tuple["Graph", "Graph"] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise ParameterError(f"graphs must have at least 2 vertices, got n={self.n}")
        if len(self.adj) != self.n:
            raise ParameterError("adjacency length does not match vertex count")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise ParameterError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise ParameterError(f"neighbor {u} of {v} out of range")
                if v not in self.adj[u]:
                    raise ParameterError(f"adjacency not symmetric at edge {v}-{u}")

    # -- basic quantities ---------------------------------------------------

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def closed_degree(self, v: int) -> int:
        """d[v] = d(v) + 1."""
        return len(self.adj[v]) + 1

    @property
    def num_edges(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    @property
    def min_degree(self) -> int:
        return min(len(s) for s in self.adj)

    @property
    def max_degree(self) -> int:
        return max(len(s) for s in self.adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def vertices(self) -> range:
        return range(self.n)

    def relabel(self, name: str) -> "Graph":
        return Graph(self.n, self.adj, name=name, factors=self.factors)

    def without_provenance(self) -> "Graph":
        """Drop product provenance so searches run on the raw graph."""
        return Graph(self.n, self.adj, name=self.name, factors=None)

    def __repr__(self):
        label = self.name or f"graph"
        return f"<{label}: n={self.n} m={self.num_edges}>"


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]], name: str | None = None,
                     factors: tuple[Graph, Graph] | None = None) -> Graph:
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise ParameterError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParameterError(f"edge {u}-{v} out of range for n={n}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(frozenset(s) for s in adj), name=name, factors=factors)


def adjacency_masks(G: Graph) -> list[int]:
    """Neighbor sets as integer bitmasks, for the search engines."""
    return [sum(1 << u for u in G.adj[v]) for v in range(G.n)]


# -- connectivity -----------------------------------------------------------


def components(G: Graph) -> list[frozenset[int]]:
    seen = [False] * G.n
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        comp = {s}
        seen[s] = True
        stack = [s]
        while stack:
            v = stack.pop()
            for u in G.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.add(u)
                    stack.append(u)
        out.append(frozenset(comp))
    return out


def is_connected(G: Graph) -> bool:
    return len(components(G)) == 1


@dataclass(frozen=True)
class Connectivity:
    components: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    bridges: frozenset[tuple[int, int]]


def connectivity(G: Graph) -> Connectivity:
    """Components, cut vertices and bridges via an iterative low-link pass."""
    comps = components(G)
    disc = [-1] * G.n
    low = [0] * G.n
    cut_vertices: set[int] = set()
    bridges: set[tuple[int, int]] = set()
    timer = 0
    for root in range(G.n):
        if disc[root] != -1:
            continue
        root_children = 0
        # stack entries: (vertex, parent, neighbor iterator)
        stack: list[tuple[int, int, Iterator[int]]] = [(root, -1, iter(sorted(G.adj[root])))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if u == parent:
                    continue
                if disc[u] == -1:
                    disc[u] = low[u] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((u, v, iter(sorted(G.adj[u]))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[u])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        bridges.add((min(p, v), max(p, v)))
                    if p != root and low[v] >= disc[p]:
                        cut_vertices.add(p)
        if root_children >= 2:
            cut_vertices.add(root)
    return Connectivity(tuple(comps), frozenset(cut_vertices), frozenset(bridges))


def is_biconnected(G: Graph) -> bool:
    conn = connectivity(G)
    return len(conn.components) == 1 and not conn.cut_vertices and G.n >= 3


def is_tree(G: Graph) -> bool:
    return is_connected(G) and G.num_edges == G.n - 1


def regularity(G: Graph) -> int | None:
    """The common degree k when G is k-regular, else None."""
    degs = {len(s) for s in G.adj}
    return degs.pop() if len(degs) == 1 else None


def bipartition_classes(G: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Two color classes when G is bipartite, else None."""
    color = [-1] * G.n
    for s in range(G.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            v = queue.pop()
            for u in G.adj[v]:
                if color[u] == -1:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    return (frozenset(v for v in range(G.n) if color[v] == 0),
            frozenset(v for v in range(G.n) if color[v] == 1))


def induced_subgraph(G: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph and the list mapping new labels to old ones."""
    order = sorted(set(vertices))
    if len(order) < 2:
        raise ParameterError("induced subgraph needs at least 2 vertices")
    index = {v: i for i, v in enumerate(order)}
    edges = [(index[u], index[v]) for u in order for v in G.adj[u] if v in index and u < v]
    return graph_from_edges(len(order), edges), order


# -- complement and products ------------------------------------------------


def complement(G: Graph) -> Graph:
    adj = tuple(frozenset(u for u in range(G.n) if u != v and u not in G.adj[v])
                for v in range(G.n))
    name = None
    if G.name:
        name = f"co-{G.name}"
    return Graph(G.n, adj, name=name)


def disjoint_union(G: Graph, H: Graph, name: str | None = None) -> Graph:
    edges = G.edges() + [(u + G.n, v + G.n) for u, v in H.edges()]
    return graph_from_edges(G.n + H.n, edges, name=name)


def cartesian_product(G: Graph, H: Graph) -> Graph:
    """Cartesian product G box H with factor provenance retained.

    Vertex (g, h) gets index g * H.n + h.  (g1,h1) ~ (g2,h2) iff g1 = g2 and
    h1 ~ h2, or h1 = h2 and g1 ~ g2.  Both factors must be connected with at
    least two vertices.
    """
    for F in (G, H):
        if not is_connected(F):
            raise PreconditionError("product factors must be connected")
    edges = []
    for g in range(G.n):
        for u, v in H.edges():
            edges.append((g * H.n + u, g * H.n + v))
    for h in range(H.n):
        for u, v in G.edges():
            edges.append((u * H.n + h, v * H.n + h))
    name = None
    if G.name and H.name:
        name = f"{G.name}x{H.name}"
    return graph_from_edges(G.n * H.n, edges, name=name, factors=(G, H))


def product_vertex(P: Graph, g: int, h: int) -> int:
    if P.factors is None:
        raise PreconditionError("graph has no product provenance")
    return g * P.factors[1].n + h


def product_coords(P: Graph, v: int) -> tuple[int, int]:
    if P.factors is None:
        raise PreconditionError("graph has no product provenance")
    nh = P.factors[1].n
    return divmod(v, nh)


def fiber(P: Graph, which: str, anchor: int) -> tuple[int, ...]:
    """Vertex set of one fiber of a product.

    ``which='left'`` with anchor g gives the copy of the right factor
    {(g, h) : h}, ``which='right'`` with anchor h the copy of the left factor.
    """
    if P.factors is None:
        raise PreconditionError("graph has no product provenance")
    G, H = P.factors
    if which == "left":
        if not 0 <= anchor < G.n:
            raise ParameterError(f"left anchor {anchor} out of range")
        return tuple(anchor * H.n + h for h in range(H.n))
    if which == "right":
        if not 0 <= anchor < H.n:
            raise ParameterError(f"right anchor {anchor} out of range")
        return tuple(g * H.n + anchor for g in range(G.n))
    raise ParameterError(f"which must be 'left' or 'right', got {which!r}")


# -- named constructions ----------------------------------------------------


def complete(n: int) -> Graph:
    if n < 2:
        raise ParameterError(f"K_n needs n >= 2, got {n}")
    return graph_from_edges(n, itertools.combinations(range(n), 2), name=f"K{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise ParameterError(f"C_n needs n >= 3, got {n}")
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def path(n: int) -> Graph:
    if n < 2:
        raise ParameterError(f"P_n needs n >= 2, got {n}")
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")


def complete_bipartite(m: int, n: int) -> Graph:
    if m < 1 or n < 1 or m + n < 2:
        raise ParameterError(f"K_mn needs m,n >= 1, got {m},{n}")
    edges = [(i, m + j) for i in range(m) for j in range(n)]
    return graph_from_edges(m + n, edges, name=f"K{m}{n}")


def k_triangle(k: int) -> Graph:
    """T_k: edge st plus k vertices adjacent to both s and t.  T_1 = C_3."""
    if k < 1:
        raise ParameterError(f"T_k needs k >= 1, got {k}")
    edges = [(0, 1)] + [(0, 2 + i) for i in range(k)] + [(1, 2 + i) for i in range(k)]
    return graph_from_edges(k + 2, edges, name=f"T{k}")


def claw() -> Graph:
    return complete_bipartite(1, 3).relabel("claw")


def diamond() -> Graph:
    # K_4 minus one edge; the missing edge is 2-3
    return graph_from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)], name="diamond")


def k4_minus_e_plus_v() -> Graph:
    """Diamond plus a vertex adjacent to its two degree-3 vertices."""
    return graph_from_edges(
        5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (4, 0), (4, 1)], name="K4ev")


def co_k2_claw() -> Graph:
    """Complement of the disjoint union K_2 + claw, on 6 vertices."""
    union = disjoint_union(complete(2), claw())
    return complement(union).relabel("coK2claw")


def prism() -> Graph:
    """Triangular prism: two triangles joined by a perfect matching."""
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    return graph_from_edges(6, edges, name="prism")


def cube() -> Graph:
    """The 3-cube Q_3."""
    edges = [(a, b) for a in range(8) for b in range(a + 1, 8)
             if bin(a ^ b).count("1") == 1]
    return graph_from_edges(8, edges, name="cube")


def wagner() -> Graph:
    """The Wagner graph V_8: C_8 plus the four long diagonals."""
    edges = [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)]
    return graph_from_edges(8, edges, name="wagner")


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return graph_from_edges(10, outer + spokes + inner, name="petersen")


def wheel(rim: int) -> Graph:
    """Hub vertex 0 joined to a rim cycle on ``rim`` vertices."""
    if rim < 3:
        raise ParameterError(f"wheel needs rim >= 3, got {rim}")
    edges = [(0, 1 + i) for i in range(rim)]
    edges += [(1 + i, 1 + (i + 1) % rim) for i in range(rim)]
    return graph_from_edges(rim + 1, edges, name=f"W{rim}")


_FIXED_NAMES = {
    "claw": claw,
    "diamond": diamond,
    "K4ev": k4_minus_e_plus_v,
    "coK2claw": co_k2_claw,
    "prism": prism,
    "cube": cube,
    "wagner": wagner,
    "petersen": petersen,
}


def build_named(name: str) -> Graph:
    """Resolve a string id to a graph.

    Accepted forms: ``K<n>`` clique (two digits mean a complete bipartite
    K_{m,n}, e.g. K33), ``K5-e`` clique minus an edge, ``C<n>`` cycle,
    ``P<n>`` path, ``T<k>`` k-triangle, ``W<n>`` wheel, the fixed names
    claw / diamond / K4ev / coK2claw / prism / cube / wagner / petersen,
    and ``prod:<a>,<b>`` for a cartesian product of two named graphs.
    """
    name = name.strip()
    if name.startswith("prod:"):
        body = name[len("prod:"):]
        parts = body.split(",")
        if len(parts) != 2:
            raise ParameterError(f"prod: takes exactly two factor names, got {body!r}")
        return cartesian_product(build_named(parts[0]), build_named(parts[1]))
    if name in _FIXED_NAMES:
        return _FIXED_NAMES[name]()
    m = re.fullmatch(r"K(\d+)-e", name)
    if m:
        k = int(m.group(1))
        base = complete(k)
        edges = [e for e in base.edges() if e != (0, 1)]
        return graph_from_edges(k, edges, name=f"K{k}-e")
    m = re.fullmatch(r"K(\d)(\d)", name)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"K(\d+)", name)
    if m:
        return complete(int(m.group(1)))
    m = re.fullmatch(r"C(\d+)", name)
    if m:
        return cycle(int(m.group(1)))
    m = re.fullmatch(r"P(\d+)", name)
    if m:
        return path(int(m.group(1)))
    m = re.fullmatch(r"T(\d+)", name)
    if m:
        return k_triangle(int(m.group(1)))
    m = re.fullmatch(r"W(\d+)", name)
    if m:
        return wheel(int(m.group(1)))
    raise ParameterError(f"unknown graph id {name!r}")


# -- pattern detection ------------------------------------------------------


def _embedding_exists(pattern: Graph, G: Graph, induced: bool) -> bool:
    """Backtracking search for an (induced) embedding of pattern into G."""
    k = pattern.n
    if k > G.n:
        return False
    # order pattern vertices so each one after the first touches a previous
    # vertex when possible; improves pruning a lot on connected patterns
    order: list[int] = []
    remaining = set(range(k))
    while remaining:
        attached = [v for v in remaining if any(u in order for u in pattern.adj[v])]
        pool = attached or list(remaining)
        v = max(pool, key=lambda x: pattern.degree(x))
        order.append(v)
        remaining.discard(v)
    mapping: dict[int, int] = {}
    used = [False] * G.n

    def extend(i: int) -> bool:
        if i == k:
            return True
        pv = order[i]
        for gv in range(G.n):
            if used[gv]:
                continue
            if G.degree(gv) < pattern.degree(pv):
                continue
            ok = True
            for pu, gu in mapping.items():
                adj_p = pu in pattern.adj[pv]
                adj_g = gu in G.adj[gv]
                if adj_p and not adj_g:
                    ok = False
                    break
                if induced and not adj_p and adj_g:
                    ok = False
                    break
            if ok:
                mapping[pv] = gv
                used[gv] = True
                if extend(i + 1):
                    return True
                del mapping[pv]
                used[gv] = False
        return False

    return extend(0)


def contains_induced(G: Graph, pattern: Graph) -> bool:
    """True iff some induced subgraph of G is isomorphic to pattern."""
    return _embedding_exists(pattern, G, induced=True)


def contains_subgraph(G: Graph, pattern: Graph) -> bool:
    """True iff pattern embeds into G as a (not necessarily induced) subgraph."""
    return _embedding_exists(pattern, G, induced=False)


def is_pattern_free(G: Graph, patterns) -> bool:
    """True iff no induced subgraph of G is isomorphic to any listed pattern.

    Patterns may be graphs or named-graph ids.  Patterns must have at most 8
    vertices; this is a fixed-size test, not a general isomorphism engine.
    """
    for p in patterns:
        if isinstance(p, str):
            p = build_named(p)
        if p.n > 8:
            raise ParameterError(f"pattern {p!r} exceeds the 8-vertex limit")
        if contains_induced(G, p):
            return False
    return True


def is_isomorphic(G: Graph, H: Graph) -> bool:
    """Isomorphism test for small graphs: degree prefilter plus backtracking."""
    if G.n != H.n or G.num_edges != H.num_edges:
        return False
    if sorted(len(s) for s in G.adj) != sorted(len(s) for s in H.adj):
        return False
    return _embedding_exists(G, H, induced=True)


# -- text format ------------------------------------------------------------


def parse_graph(text: str, name: str | None = None) -> Graph:
    """Parse the ``p <n> <m>`` / ``e <u> <v>`` text format (1-indexed)."""
    n = None
    m = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise GraphParseError("duplicate p line", lineno)
            if len(fields) != 3:
                raise GraphParseError("p line must be 'p <n> <m>'", lineno)
            try:
                n, m = int(fields[1]), int(fields[2])
            except ValueError:
                raise GraphParseError("p line has non-integer fields", lineno)
        elif fields[0] == "e":
            if n is None:
                raise GraphParseError("e line before p line", lineno)
            if len(fields) != 3:
                raise GraphParseError("e line must be 'e <u> <v>'", lineno)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise GraphParseError("e line has non-integer endpoints", lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphParseError(f"endpoint out of range 1..{n}", lineno)
            if u == v:
                raise GraphParseError("self-loop", lineno)
            edges.append((u - 1, v - 1))
        else:
            raise GraphParseError(f"unknown line type {fields[0]!r}", lineno)
    if n is None:
        raise GraphParseError("missing p line")
    dedup = sorted({(min(u, v), max(u, v)) for u, v in edges})
    if m is not None and m != len(dedup):
        raise GraphParseError(f"p line declares {m} edges but {len(dedup)} given")
    return graph_from_edges(n, dedup, name=name)


def emit_graph(G: Graph) -> str:
    """Canonical text emission; re-parsing and re-emitting is a fixed point."""
    lines = [f"p {G.n} {G.num_edges}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"
