"""
Graph families with known edge-ideal invariants, and the cone construction
G^S used to build graphs with prescribed (regularity, deg h).

Every family comes with a Prediction that the invariants module can be
checked against. Vertex numbering is fixed so graph6 output is stable:
the ribbon center is vertex 0, and g_family(r) lists the five ribbon
vertices, then the pairs y_{k,1} y_{k,2} consecutively, then the clique Z.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from edgeideal.errors import UsageError
from edgeideal.graph import (
    Graph,
    VertexSetLike,
    as_vertex_set,
    cone_over_subset,
    disjoint_union,
    from_edge_list,
    full_mask,
    induced_subgraph,
    iter_bits,
    popcount,
    relabel,
)
from edgeideal.homology import GF2, Field
from edgeideal.invariants import hilbert_series, regularity
from edgeideal.poly import ONE, ONE_MINUS_T, T, IntPolynomial, RationalSeries

logger = logging.getLogger(__name__)

K2 = from_edge_list(2, [(0, 1)])


@dataclass(frozen=True)
class Prediction:
    source: str
    expected_series: Optional[RationalSeries] = None
    expected_reg: Optional[int] = None
    expected_deg_h: Optional[int] = None

    def __post_init__(self):
        if self.expected_series is None and self.expected_reg is None and self.expected_deg_h is None:
            raise ValueError("a prediction needs at least one expected value")

    def mismatches(self, series: RationalSeries, reg: Optional[int]) -> List[str]:
        """Human-readable differences between the prediction and computed values."""
        problems = []
        if self.expected_series is not None and series != self.expected_series:
            problems.append(f"Hilbert series {series.render()} != predicted {self.expected_series.render()}")
        if self.expected_deg_h is not None and series.num.degree != self.expected_deg_h:
            problems.append(f"deg h {series.num.degree} != predicted {self.expected_deg_h}")
        if self.expected_reg is not None and reg is not None and reg != self.expected_reg:
            problems.append(f"reg {reg} != predicted {self.expected_reg}")
        return problems


def _require(condition: bool, message: str):
    if not condition:
        logger.error(message)
        raise UsageError(message)


def complete_bipartite(a: int, b: int) -> Graph:
    _require(a >= 1 and b >= 1, f"complete_bipartite needs a, b >= 1, got ({a}, {b})")
    return from_edge_list(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def kdd_prediction(d: int) -> Prediction:
    return Prediction(
        source="complete bipartite K_{d,d}",
        expected_series=RationalSeries.of(2 - ONE_MINUS_T ** d, d),
        expected_reg=1,
        expected_deg_h=d,
    )


def star(n: int) -> Graph:
    """K_{1,n-1} with center 0."""
    _require(n >= 2, f"star needs n >= 2, got {n}")
    return from_edge_list(n, [(0, v) for v in range(1, n)])


def star_prediction(n: int) -> Prediction:
    # independent sets: any set of leaves, or the center alone
    return Prediction(
        source="star K_{1,n-1}",
        expected_series=RationalSeries.of(ONE + T * ONE_MINUS_T ** (n - 2), n - 1),
        expected_reg=1,
        expected_deg_h=n - 1,
    )


def matching_graph(m: int) -> Graph:
    """m disjoint edges {2k, 2k+1}."""
    _require(m >= 1, f"matching_graph needs m >= 1, got {m}")
    return from_edge_list(2 * m, [(2 * k, 2 * k + 1) for k in range(m)])


def matching_prediction(m: int) -> Prediction:
    return Prediction(
        source="m disjoint edges",
        expected_series=RationalSeries.of((ONE + T) ** m, m),
        expected_reg=m,
        expected_deg_h=m,
    )


def add_disjoint_edge(g: Graph) -> Graph:
    """g plus one new edge on two new vertices; reg and deg h both go up by one."""
    return disjoint_union(g, K2)


def ribbon() -> Graph:
    """Cone over all four vertices of two disjoint edges, relabeled so the apex is 0."""
    coned = cone_over_subset(matching_graph(2), full_mask(4))
    return relabel(coned, [1, 2, 3, 4, 0])


def ribbon_prediction() -> Prediction:
    return Prediction(
        source="ribbon",
        expected_series=RationalSeries.of(IntPolynomial([1, 3]), 2),
        expected_reg=2,
        expected_deg_h=1,
    )


RIBBON_SIZE = 5


def _z_level_sizes(r: int) -> List[int]:
    return [(1 << (i + 1)) - 1 for i in range(1, r - 1)]


def _y_first(k: int) -> int:
    """Index of y_{k,1} (k counted from 1); y_{k,2} follows it."""
    return RIBBON_SIZE + 2 * (k - 1)


def _family_graph(r: int, z_neighbors_of_level: Callable[[int], List[int]]) -> Graph:
    pairs = r - 2
    sizes = _z_level_sizes(r)
    z_start = RIBBON_SIZE + 2 * pairs
    n = z_start + sum(sizes)
    edges = list(ribbon().edges())
    edges += [(_y_first(k), _y_first(k) + 1) for k in range(1, pairs + 1)]
    z_vertices = list(range(z_start, n))
    edges += [(u, v) for i, u in enumerate(z_vertices) for v in z_vertices[i + 1:]]
    z = z_start
    for level, size in enumerate(sizes, start=1):
        outside = list(range(RIBBON_SIZE)) + z_neighbors_of_level(level)
        for _ in range(size):
            edges += [(z, u) for u in outside]
            z += 1
    return from_edge_list(n, edges)


def g_family(r: int) -> Graph:
    """
    The graph G^(r) with reg = r and h = 1 + (2^r - 1)t.

    Z has 2^{i+1} - 1 vertices on level i = 1..r-2, all pairwise adjacent and
    adjacent to the five ribbon vertices. A level-i vertex is also adjacent to
    y_{1,1}, ..., y_{i,1}, which is what the inductive cone chain produces
    (see lemma_b_chain).
    """
    _require(r >= 3, f"g_family needs r >= 3, got {r}")
    return _family_graph(r, lambda level: [_y_first(k) for k in range(1, level + 1)])


def g_family_uniform(r: int) -> Graph:
    """
    Same vertex set as g_family, but every Z vertex is adjacent to all of
    y_{1,1}, ..., y_{r-2,1}. Agrees with g_family for r = 3 only; from r = 4
    on the h-polynomial picks up higher terms (1 + 15t - 3t^2 + 3t^3 at r = 4).
    """
    _require(r >= 3, f"g_family_uniform needs r >= 3, got {r}")
    return _family_graph(r, lambda level: [_y_first(k) for k in range(1, r - 1)])


def g_family_prediction(r: int) -> Prediction:
    return Prediction(
        source="G^(r) family",
        expected_series=RationalSeries.of(IntPolynomial([1, (1 << r) - 1]), r),
        expected_reg=r,
        expected_deg_h=1,
    )


def _with_edges(g: Graph, count: int) -> Graph:
    for _ in range(count):
        g = add_disjoint_edge(g)
    return g


def realize(r: int, d: int) -> Graph:
    """A graph with reg(R/I(G)) = r and deg h = d, for any r, d >= 1."""
    _require(r >= 1 and d >= 1, f"realize needs r, d >= 1, got ({r}, {d})")
    if r <= d:
        k = d - r + 1
        return _with_edges(complete_bipartite(k, k), r - 1)
    if r == d + 1:
        return _with_edges(ribbon(), r - 2)
    return _with_edges(g_family(r - d + 1), d - 1)


def realize_prediction(r: int, d: int) -> Prediction:
    return Prediction(source=f"realization of (r, d) = ({r}, {d})", expected_reg=r, expected_deg_h=d)


@dataclass(frozen=True)
class LemmaAVerdict:
    """Which hypotheses of the cone lemma hold for (G, S)."""

    dim: int
    h: IntPolynomial
    reg: int
    dimension_ok: bool
    regularity_ok: bool
    cardinality_ok: bool
    dominated: bool
    complement_independent: bool

    @property
    def holds(self) -> bool:
        return self.dimension_ok and self.regularity_ok and self.cardinality_ok and self.dominated

    @property
    def conclusion_guaranteed(self) -> bool:
        """
        The stated hypotheses alone do not pin down H(G^S); the Hilbert series
        update also needs V \\ S to be independent (then (I : x) = (S)).
        """
        return self.holds and self.complement_independent

    def failed(self) -> List[str]:
        names = {
            "dimension": self.dimension_ok,
            "regularity": self.regularity_ok,
            "cardinality": self.cardinality_ok,
            "domination": self.dominated,
        }
        return [name for name, ok in names.items() if not ok]


def lemma_a_applicable(g: Graph, s: VertexSetLike, field: Field = GF2, desk_cap: Optional[int] = None,
                       reg: Optional[int] = None) -> LemmaAVerdict:
    """
    Check dim R/I(G) >= 2 with h of degree <= 2 and h_0 = 1, reg >= 2,
    |S| = n - dim + 2, and every vertex outside S has a neighbor in S.
    Pass `reg` when it is already known to skip the homology scan.
    """
    mask = as_vertex_set(g.n, s)
    series = hilbert_series(g)
    h, dim = series.num, series.denom_exp
    if reg is None:
        reg = regularity(g, field, desk_cap)
    outside = g.vertices & ~mask
    return LemmaAVerdict(
        dim=dim,
        h=h,
        reg=reg,
        dimension_ok=dim >= 2 and h[0] == 1 and h.degree <= 2,
        regularity_ok=reg >= 2,
        cardinality_ok=popcount(mask) == g.n - dim + 2,
        dominated=all(g.adj[u] & mask for u in iter_bits(outside)),
        complement_independent=g.is_independent(outside),
    )


def lemma_a_in_regime(h: IntPolynomial) -> bool:
    return h[2] >= 1


def lemma_a_predict(h: IntPolynomial, dim: int) -> RationalSeries:
    """(1 + (h1 + 1)t + (h2 - 1)t^2) / (1 - t)^dim."""
    if h[0] != 1 or h.degree > 2:
        message = f"cone prediction needs h = 1 + h1*t + h2*t^2, got {h.render()}"
        logger.error(message)
        raise UsageError(message)
    if not lemma_a_in_regime(h):
        logger.warning(f"h = {h.render()} has h2 = 0; prediction is outside the demonstrated regime")
    return RationalSeries.of(IntPolynomial([1, h[1] + 1, h[2] - 1]), dim)


def lemma_a_prediction(g: Graph, s: VertexSetLike, verdict: LemmaAVerdict) -> Optional[Prediction]:
    if not verdict.conclusion_guaranteed:
        return None
    series = lemma_a_predict(verdict.h, verdict.dim)
    return Prediction(
        source=f"cone over S = {sorted(iter_bits(as_vertex_set(g.n, s)))}",
        expected_series=series,
        expected_reg=verdict.reg,
        expected_deg_h=series.num.degree,
    )


def cone_series_by_colon(g: Graph, s: VertexSetLike) -> RationalSeries:
    """
    H(G^S) from the exact sequence for the new variable x:
    H(G^S) = H(G) + t * H(G_{V \\ S}) / (1 - t). Valid for any S.
    """
    mask = as_vertex_set(g.n, s)
    rest = hilbert_series(induced_subgraph(g, g.vertices & ~mask))
    shifted = RationalSeries(T * rest.num, rest.denom_exp + 1)
    return hilbert_series(g) + shifted


@dataclass(frozen=True)
class ConeStep:
    graph: Graph
    subset: int

    @property
    def result(self) -> Graph:
        return cone_over_subset(self.graph, self.subset)


def lemma_b_chain(r: int) -> List[ConeStep]:
    """
    Build G^(r) from G^(r-1) plus a disjoint edge by 2^{r-1} - 1 cones.

    The first cone is over the ribbon vertices, every y_{k,1} and the old Z;
    each later cone also covers the vertices added so far. The last step's
    result is g_family(r) after lemma_b_relabeling(r).
    """
    _require(r >= 3, f"lemma_b_chain needs r >= 3, got {r}")
    base = ribbon() if r == 3 else g_family(r - 1)
    current = add_disjoint_edge(base)
    subset = full_mask(RIBBON_SIZE)
    subset |= sum(1 << _y_first(k) for k in range(1, r - 2))
    subset |= 1 << base.n
    z_start = _y_first(r - 2)
    subset |= full_mask(base.n) & ~full_mask(z_start)
    steps = []
    for _ in range((1 << (r - 1)) - 1):
        steps.append(ConeStep(current, subset))
        subset |= 1 << current.n
        current = steps[-1].result
    return steps


def lemma_b_relabeling(r: int) -> List[int]:
    """perm[v] maps the chain's final vertex v to its index in g_family(r)."""
    _require(r >= 3, f"lemma_b_relabeling needs r >= 3, got {r}")
    base_n = RIBBON_SIZE + 2 * (r - 3) + sum(_z_level_sizes(r - 1))
    z_start = _y_first(r - 2)
    perm = list(range(z_start))
    perm += [v + 2 for v in range(z_start, base_n)]
    perm += [z_start, z_start + 1]
    new_z = (1 << (r - 1)) - 1
    perm += [base_n + 2 + j for j in range(new_z)]
    return perm


def ribbon_chain() -> List[ConeStep]:
    """G_0 = ribbon plus an edge, coned three times over everything except vertex 6."""
    return lemma_b_chain(3)


@dataclass(frozen=True)
class Family:
    build: Callable[..., Graph]
    predict: Callable[..., Prediction]
    params: Tuple[str, ...]


FAMILIES: Dict[str, Family] = {
    "kdd": Family(lambda d: complete_bipartite(d, d), kdd_prediction, ("d",)),
    "star": Family(star, star_prediction, ("n",)),
    "matching": Family(matching_graph, matching_prediction, ("m",)),
    "ribbon": Family(ribbon, ribbon_prediction, ()),
    "gr": Family(g_family, g_family_prediction, ("r",)),
    "realize": Family(realize, realize_prediction, ("r", "d")),
}