"""
Finite simple graphs on the vertices 0..n-1.

Adjacency is stored as one neighbor bitmask per vertex, and vertex sets
(independent sets, covers, the subsets W of Hochster's formula) are plain
integer bitmasks. Graph values are immutable.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

from edgeideal.errors import GraphFormatError

logger = logging.getLogger(__name__)

MAX_VERTICES = 62

VertexSet = int
VertexSetLike = Union[int, Iterable[int]]


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def as_vertex_set(n: int, w: VertexSetLike) -> VertexSet:
    """Accept a bitmask or an iterable of vertices and return a checked bitmask."""
    if isinstance(w, int):
        if w < 0 or w >> n:
            raise GraphFormatError(f"vertex set {w:#x} is not a subset of 0..{n - 1}")
        return w
    mask = 0
    for v in w:
        if not 0 <= v < n:
            raise GraphFormatError(f"vertex {v} out of range for n={n}")
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    n: int
    adj: Tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphFormatError(f"n={self.n} outside the supported range 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphFormatError(f"expected {self.n} neighbor sets, got {len(self.adj)}")
        limit = full_mask(self.n)
        for v, nbrs in enumerate(self.adj):
            if nbrs & ~limit:
                raise GraphFormatError(f"vertex {v} has a neighbor index >= {self.n}")
            if nbrs >> v & 1:
                raise GraphFormatError(f"loop at vertex {v}")
            for u in iter_bits(nbrs):
                if not self.adj[u] >> v & 1:
                    raise GraphFormatError(f"adjacency not symmetric between {v} and {u}")

    @property
    def vertices(self) -> VertexSet:
        return full_mask(self.n)

    def neighbors(self, v: int) -> frozenset:
        return frozenset(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in iter_bits(self.adj[v] & full_mask(v))]

    @property
    def edge_count(self) -> int:
        return sum(popcount(m) for m in self.adj) // 2

    def is_independent(self, w: VertexSet) -> bool:
        return all(not (self.adj[v] & w) for v in iter_bits(w))

    def to_networkx(self):
        import networkx as nx

        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges())
        return h

    def __str__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph from vertex pairs; repeated pairs collapse to one edge."""
    if not 0 <= n <= MAX_VERTICES:
        raise GraphFormatError(f"n={n} outside the supported range 0..{MAX_VERTICES}")
    adj = [0] * n
    for edge in edges:
        pair = tuple(edge)
        if len(pair) == 1:
            # a set literal {v, v} arrives as a single vertex
            pair = pair * 2
        if len(pair) != 2:
            raise GraphFormatError(f"edge {edge!r} does not have two endpoints")
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge {{{u},{v}}} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphFormatError(f"loop edge {{{u},{v}}} is not allowed in a simple graph")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def induced_subgraph(g: Graph, w: VertexSetLike) -> Graph:
    """G_W with the members of W renumbered 0..|W|-1 in increasing order."""
    mask = as_vertex_set(g.n, w)
    order = list(iter_bits(mask))
    position = {v: i for i, v in enumerate(order)}
    adj = []
    for v in order:
        row = 0
        for u in iter_bits(g.adj[v] & mask):
            row |= 1 << position[u]
        adj.append(row)
    return Graph(len(order), tuple(adj))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Rename vertex v to perm[v]."""
    if sorted(perm) != list(range(g.n)):
        raise GraphFormatError(f"relabeling {list(perm)} is not a permutation of 0..{g.n - 1}")
    adj = [0] * g.n
    for v in range(g.n):
        for u in iter_bits(g.adj[v]):
            adj[perm[v]] |= 1 << perm[u]
    return Graph(g.n, tuple(adj))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    n = g1.n + g2.n
    if n > MAX_VERTICES:
        raise GraphFormatError(f"disjoint union would have {n} vertices (max {MAX_VERTICES})")
    return Graph(n, g1.adj + tuple(m << g1.n for m in g2.adj))


def cone_over_subset(g: Graph, s: VertexSetLike) -> Graph:
    """G^S: add vertex n joined to exactly the members of S."""
    mask = as_vertex_set(g.n, s)
    if g.n + 1 > MAX_VERTICES:
        raise GraphFormatError(f"cone would have {g.n + 1} vertices (max {MAX_VERTICES})")
    apex = 1 << g.n
    adj = tuple(row | apex if mask >> v & 1 else row for v, row in enumerate(g.adj))
    return Graph(g.n + 1, adj + (mask,))


def connected_components(g: Graph) -> List[VertexSet]:
    """Vertex sets of the components, ordered by their smallest vertex."""
    remaining = g.vertices
    components = []
    while remaining:
        frontier = remaining & -remaining
        component = 0
        while frontier:
            component |= frontier
            reach = 0
            for v in iter_bits(frontier):
                reach |= g.adj[v]
            frontier = reach & ~component
        components.append(component)
        remaining &= ~component
    return components


# graph6: size byte n+63, then the upper triangle in column order
# (0,1),(0,2),(1,2),(0,3),... packed six bits per byte, MSB first.

def _pair_bits(g: Graph) -> Iterator[int]:
    for j in range(1, g.n):
        for i in range(j):
            yield g.adj[i] >> j & 1


def graph6_encode(g: Graph) -> str:
    out = [chr(g.n + 63)]
    bits = list(_pair_bits(g))
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = value << 1 | b
        out.append(chr(value + 63))
    return "".join(out)


def graph6_decode(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"graph6 byte {ch!r} outside 63..126")
    n = ord(s[0]) - 63
    if n > MAX_VERTICES:
        raise GraphFormatError(f"graph6 header encodes n > {MAX_VERTICES}")
    pairs = n * (n - 1) // 2
    expected = 1 + (pairs + 5) // 6
    if len(s) != expected:
        raise GraphFormatError(f"graph6 string for n={n} needs {expected} bytes, got {len(s)}")
    padding = -pairs % 6
    if padding and (ord(s[-1]) - 63) & ((1 << padding) - 1):
        raise GraphFormatError(f"graph6 string {s!r} has nonzero padding bits")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(s[1 + k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


def parse_edge_list(text: str) -> Graph:
    """First significant line is n, then one `u v` pair per line; `#` starts a comment."""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    if not lines:
        raise GraphFormatError("edge list is empty (expected a vertex count)")
    number, header = lines[0]
    try:
        n = int(header)
    except ValueError:
        raise GraphFormatError(f"line {number}: expected vertex count, got {header!r}")
    edges = []
    for number, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {number}: expected 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(f"line {number}: non-integer vertex in {line!r}")
    return from_edge_list(n, edges)


def format_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges()]) + "\n"
