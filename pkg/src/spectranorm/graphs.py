"""Graph representation, graph6 interchange, named families, and invariants.

Graphs are simple and undirected, stored as a bitset over unordered vertex
pairs in graph6 column order: pair (u, v) with u < v has index
v*(v-1)/2 + u. That makes graph6 round-trips and exhaustive enumeration by
increasing bitmask plain integer arithmetic.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

from .cmatrix import CMatrix
from .errors import (
    BadFamilyParams,
    LoopEdge,
    MalformedGraph6,
    OverflowRisk,
    TooLargeForExact,
    VertexOutOfRange,
)


def pair_index(u: int, v: int) -> int:
    """Bitset index of the unordered pair {u, v}."""
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def pair_list(n: int) -> list[tuple[int, int]]:
    """Pairs in index order: (0,1), (0,2), (1,2), (0,3), ..."""
    return [(u, v) for v in range(1, n) for u in range(v)]


class Graph:
    """Simple undirected graph on vertices 0..n-1, immutable."""

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: int = 0):
        if not isinstance(n, int) or n < 1:
            raise ValueError("graph order must be a positive integer")
        if mask < 0 or mask >> pair_count(n):
            raise ValueError("edge bitset out of range for this order")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, *_):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edge_list(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from (u, v) pairs; duplicates are collapsed."""
        mask = 0
        for u, v in edges:
            if u == v:
                raise LoopEdge(f"loop at vertex {u}")
            if not (0 <= u < n) or not (0 <= v < n):
                raise VertexOutOfRange(f"edge ({u},{v}) outside 0..{n - 1}")
            mask |= 1 << pair_index(u, v)
        return cls(n, mask)

    def num_edges(self) -> int:
        return self.mask.bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return bool((self.mask >> pair_index(u, v)) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for (u, v) in pair_list(self.n) if self.has_edge(u, v)]

    def neighbor_masks(self) -> list[int]:
        """Per-vertex neighbor bitsets (bit v set in entry u iff u ~ v)."""
        adj = [0] * self.n
        m = self.mask
        pairs = pair_list(self.n)
        while m:
            t = (m & -m).bit_length() - 1
            u, v = pairs[t]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            m &= m - 1
        return adj

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.neighbor_masks()]

    def adjacency_matrix(self) -> CMatrix:
        """0/1 symmetric adjacency matrix with zero diagonal."""
        a = np.zeros((self.n, self.n))
        for u, v in self.edges():
            a[u, v] = 1.0
            a[v, u] = 1.0
        return CMatrix.from_array(a)

    def complement(self) -> "Graph":
        return Graph(self.n, self.mask ^ ((1 << pair_count(self.n)) - 1))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.mask == other.mask

    def __hash__(self):
        return hash((self.n, self.mask))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges()})"


# --- graph6 -----------------------------------------------------------------

def write_graph6(g: Graph) -> str:
    """Header-less graph6 string; supports 1 <= n <= 62."""
    n = g.n
    if n > 62:
        raise MalformedGraph6(f"graph6 writer supports n <= 62, got {n}")
    npairs = pair_count(n)
    out = [chr(63 + n)]
    for group in range(0, npairs, 6):
        val = 0
        for i in range(6):
            t = group + i
            bit = (g.mask >> t) & 1 if t < npairs else 0
            val |= bit << (5 - i)
        out.append(chr(63 + val))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Parse a header-less graph6 string (n <= 62); strict about padding."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise MalformedGraph6("empty graph6 string")
    codes = [ord(ch) for ch in s]
    if any(c < 63 or c > 126 for c in codes):
        raise MalformedGraph6("character outside graph6 range")
    n = codes[0] - 63
    if n == 0:
        raise MalformedGraph6("order-0 graphs are not supported")
    if n == 63:
        raise MalformedGraph6("extended (n > 62) graph6 headers are not supported")
    npairs = pair_count(n)
    expected = 1 + (npairs + 5) // 6
    if len(codes) != expected:
        raise MalformedGraph6(
            f"expected {expected} characters for n={n}, got {len(codes)}"
        )
    mask = 0
    for gi, code in enumerate(codes[1:]):
        val = code - 63
        for i in range(6):
            t = gi * 6 + i
            bit = (val >> (5 - i)) & 1
            if t < npairs:
                mask |= bit << t
            elif bit:
                raise MalformedGraph6("nonzero padding bits")
    return Graph(n, mask)


# --- named families ----------------------------------------------------------

def complete(n: int) -> Graph:
    if n < 1:
        raise BadFamilyParams("complete(n) needs n >= 1")
    return Graph(n, (1 << pair_count(n)) - 1)


def empty_graph(n: int) -> Graph:
    if n < 1:
        raise BadFamilyParams("empty(n) needs n >= 1")
    return Graph(n)


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """Complete multipartite graph; vertices grouped part by part."""
    sizes = list(sizes)
    if not sizes or any((not isinstance(s, int)) or s < 1 for s in sizes):
        raise BadFamilyParams("part sizes must be positive integers")
    n = sum(sizes)
    part = []
    for i, s in enumerate(sizes):
        part.extend([i] * s)
    edges = [
        (u, v)
        for v in range(1, n)
        for u in range(v)
        if part[u] != part[v]
    ]
    return Graph.from_edge_list(n, edges)


def perfect_matching(n: int) -> Graph:
    """(n/2) disjoint edges."""
    if n < 2 or n % 2:
        raise BadFamilyParams("perfect_matching(n) needs even n >= 2")
    return Graph.from_edge_list(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise BadFamilyParams("cycle(n) needs n >= 3")
    return Graph.from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise BadFamilyParams("path(n) needs n >= 1")
    return Graph.from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def paley(q: int) -> Graph:
    """Paley graph on Z_q: x ~ y iff x - y is a nonzero quadratic residue.

    Requires q prime with q = 1 (mod 4), so that -1 is a residue and the
    relation is symmetric.
    """
    if not _is_prime(q):
        raise BadFamilyParams(f"paley({q}): order must be prime")
    if q % 4 != 1:
        raise BadFamilyParams(f"paley({q}): need q = 1 (mod 4)")
    residues = {(x * x) % q for x in range(1, q)}
    residues.discard(0)
    edges = [
        (u, v)
        for v in range(1, q)
        for u in range(v)
        if (v - u) % q in residues
    ]
    return Graph.from_edge_list(q, edges)


def with_isolated(g: Graph, t: int) -> Graph:
    """The same graph plus t extra isolated vertices."""
    if t < 0:
        raise BadFamilyParams("isolated vertex count must be >= 0")
    n = g.n + t
    return Graph.from_edge_list(n, g.edges()) if t else g


def blow_up(g: Graph, t: int) -> Graph:
    """Replace each vertex by an independent set of size t.

    Blobs are fully joined iff the original vertices were adjacent, so the
    adjacency matrix is A(G) (x) J_t.
    """
    if t < 1:
        raise BadFamilyParams("blow-up coefficient must be >= 1")
    if t == 1:
        return g
    n = g.n * t
    edges = []
    for u, v in g.edges():
        for a in range(t):
            for b in range(t):
                edges.append((u * t + a, v * t + b))
    return Graph.from_edge_list(n, edges)


_FAMILIES = {
    "complete": lambda params: complete(*params),
    "complete_multipartite": lambda params: complete_multipartite(params),
    "perfect_matching": lambda params: perfect_matching(*params),
    "cycle": lambda params: cycle(*params),
    "path": lambda params: path(*params),
    "paley": lambda params: paley(*params),
    "empty": lambda params: empty_graph(*params),
    "with_isolated": lambda params: with_isolated(*params),
}


def family(kind: str, params: Sequence[int]) -> Graph:
    """Dispatch to a named family by kind string (CLI entry point)."""
    try:
        builder = _FAMILIES[kind]
    except KeyError:
        raise BadFamilyParams(
            f"unknown family {kind!r}; choose from {sorted(_FAMILIES)}"
        ) from None
    try:
        return builder(list(params))
    except TypeError as exc:
        raise BadFamilyParams(f"bad parameters for {kind}: {exc}") from None


# --- chromatic number ---------------------------------------------------------

def _greedy_clique_bound(adj: list[int], order: list[int]) -> int:
    clique_mask = 0
    size = 0
    for v in order:
        if clique_mask & ~adj[v]:
            continue
        clique_mask |= 1 << v
        size += 1
    return size


def _greedy_coloring_bound(adj: list[int], order: list[int]) -> int:
    colors = {}
    used = 0
    for v in order:
        taken = {colors[u] for u in colors if (adj[v] >> u) & 1}
        c = 0
        while c in taken:
            c += 1
        colors[v] = c
        used = max(used, c + 1)
    return used


def _k_colorable(adj: list[int], order: list[int], k: int) -> bool:
    n = len(order)
    assign = [-1] * len(adj)

    def place(idx: int, used: int) -> bool:
        if idx == n:
            return True
        v = order[idx]
        # colors already introduced, plus at most one new one (symmetry break)
        limit = min(used + 1, k)
        forbidden = 0
        nb = adj[v]
        while nb:
            u = (nb & -nb).bit_length() - 1
            if assign[u] >= 0:
                forbidden |= 1 << assign[u]
            nb &= nb - 1
        for c in range(limit):
            if (forbidden >> c) & 1:
                continue
            assign[v] = c
            if place(idx + 1, max(used, c + 1)):
                return True
            assign[v] = -1
        return False

    return place(0, 0)


def chromatic_number_masks(adj: list[int]) -> int:
    """Exact chromatic number from per-vertex neighbor bitsets."""
    n = len(adj)
    if all(a == 0 for a in adj):
        return 1
    order = sorted(range(n), key=lambda v: adj[v].bit_count(), reverse=True)
    lb = _greedy_clique_bound(adj, order)
    ub = _greedy_coloring_bound(adj, order)
    lb = max(lb, 2)
    for k in range(lb, ub):
        if _k_colorable(adj, order, k):
            return k
    return ub


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number via branch and bound; order capped at 32."""
    if g.n > 32:
        raise TooLargeForExact(f"exact coloring capped at order 32, got {g.n}")
    return chromatic_number_masks(g.neighbor_masks())


# --- closed walks ---------------------------------------------------------------

def _int_matmul(x: list[list[int]], y: list[list[int]]) -> list[list[int]]:
    n = len(x)
    yt = [[y[i][j] for i in range(n)] for j in range(n)]
    return [[sum(a * b for a, b in zip(row, col)) for col in yt] for row in x]


def closed_walks(g: Graph, length: int) -> int:
    """Number of closed walks of the given even length: trace of A^length.

    Computed in exact integer arithmetic. Guarded to even length <= 16 and
    order <= 64.
    """
    if length < 2 or length % 2:
        raise OverflowRisk("walk length must be a positive even integer")
    if length > 16 or g.n > 64:
        raise OverflowRisk("guard: length <= 16 and order <= 64")
    n = g.n
    a = [[1 if g.has_edge(u, v) else 0 for v in range(n)] for u in range(n)]
    result = None
    power = a
    remaining = length
    while remaining:
        if remaining & 1:
            result = power if result is None else _int_matmul(result, power)
        remaining >>= 1
        if remaining:
            power = _int_matmul(power, power)
    return sum(result[i][i] for i in range(n))


# --- strongly regular detection -------------------------------------------------

def is_strongly_regular(g: Graph) -> Optional[tuple[int, int, int, int]]:
    """Parameters (n, k, lambda, mu) when G is strongly regular, else None.

    Adjacent pairs must share a constant lambda neighbors and nonadjacent
    pairs a constant mu. Vacuous slots are reported as 0: complete graphs
    come back as (n, n-1, n-2, 0) and empty graphs as (n, 0, 0, 0).
    """
    n = g.n
    adj = g.neighbor_masks()
    k = adj[0].bit_count()
    if any(a.bit_count() != k for a in adj):
        return None
    lam = None
    mu = None
    for v in range(1, n):
        for u in range(v):
            common = (adj[u] & adj[v]).bit_count()
            if (adj[u] >> v) & 1:
                if lam is None:
                    lam = common
                elif lam != common:
                    return None
            else:
                if mu is None:
                    mu = common
                elif mu != common:
                    return None
    return (n, k, lam if lam is not None else 0, mu if mu is not None else 0)
