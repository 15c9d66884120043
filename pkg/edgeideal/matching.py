"""Maximum cardinality matching in general graphs (Edmonds' blossom search)."""
from __future__ import annotations

from collections import deque
from typing import List, Tuple

from edgeideal.graph import Graph, iter_bits

UNMATCHED = -1


class _AlternatingForest:
    """
    One augmenting-path search from a free root. Odd cycles (blossoms) are
    contracted by pointing every member's base at the blossom base.
    """

    def __init__(self, g: Graph, mate: List[int]):
        self.g = g
        self.mate = mate
        self.parent = [UNMATCHED] * g.n
        self.base = list(range(g.n))
        self.in_tree = [False] * g.n
        self.queue = deque()

    def _common_base(self, a: int, b: int) -> int:
        seen = [False] * self.g.n
        while True:
            a = self.base[a]
            seen[a] = True
            if self.mate[a] == UNMATCHED:
                break
            a = self.parent[self.mate[a]]
        while True:
            b = self.base[b]
            if seen[b]:
                return b
            b = self.parent[self.mate[b]]

    def _mark_blossom(self, v: int, blossom_base: int, child: int, in_blossom: List[bool]):
        while self.base[v] != blossom_base:
            in_blossom[self.base[v]] = in_blossom[self.base[self.mate[v]]] = True
            self.parent[v] = child
            child = self.mate[v]
            v = self.parent[self.mate[v]]

    def _contract(self, v: int, u: int):
        blossom_base = self._common_base(v, u)
        in_blossom = [False] * self.g.n
        self._mark_blossom(v, blossom_base, u, in_blossom)
        self._mark_blossom(u, blossom_base, v, in_blossom)
        for i in range(self.g.n):
            if in_blossom[self.base[i]]:
                self.base[i] = blossom_base
                if not self.in_tree[i]:
                    self.in_tree[i] = True
                    self.queue.append(i)

    def find_augmenting_end(self, root: int) -> int:
        self.in_tree[root] = True
        self.queue.append(root)
        while self.queue:
            v = self.queue.popleft()
            for u in iter_bits(self.g.adj[v]):
                if self.base[v] == self.base[u] or self.mate[v] == u:
                    continue
                even = u == root or (self.mate[u] != UNMATCHED and self.parent[self.mate[u]] != UNMATCHED)
                if even:
                    self._contract(v, u)
                elif self.parent[u] == UNMATCHED:
                    self.parent[u] = v
                    if self.mate[u] == UNMATCHED:
                        return u
                    self.in_tree[self.mate[u]] = True
                    self.queue.append(self.mate[u])
        return UNMATCHED


def maximum_matching(g: Graph) -> List[Tuple[int, int]]:
    mate = [UNMATCHED] * g.n
    for root in range(g.n):
        if mate[root] != UNMATCHED:
            continue
        forest = _AlternatingForest(g, mate)
        end = forest.find_augmenting_end(root)
        # flip the matched/unmatched edges along the path back to the root
        while end != UNMATCHED:
            previous = forest.parent[end]
            next_end = mate[previous]
            mate[end] = previous
            mate[previous] = end
            end = next_end
    return [(v, mate[v]) for v in range(g.n) if mate[v] > v]
