"""
Numerical invariants of R/I(G): f-vector, Hilbert series, h-polynomial,
graded Betti numbers via Hochster's formula, regularity, depth, and the
inequalities relating them.

Betti numbers are indexed for the minimal free resolution of R/I(G), so the
table always contains beta_{0,0} = 1 and reg = max{j - i : beta_{i,j} != 0, i >= 1}.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from multiprocessing import Pool
from typing import Dict, List, Mapping, Optional, Tuple

from edgeideal.errors import BoundViolation, DeskCapExceeded, PureResolutionViolation
from edgeideal.graph import Graph, graph6_encode, popcount
from edgeideal.homology import GF2, Field, induced_homology
from edgeideal.matching import maximum_matching
from edgeideal.poly import ONE_MINUS_T, IntPolynomial, RationalSeries, normalize

logger = logging.getLogger(__name__)

DEFAULT_DESK_CAP = 12
SERIES_CAP = 30
# below this many subsets a worker pool costs more than it saves
PARALLEL_THRESHOLD = 1 << 14


@dataclass(frozen=True)
class FVector:
    """counts[j] = number of independent sets of size j, i.e. f_{j-1}."""

    counts: Tuple[int, ...]

    @property
    def alpha(self) -> int:
        return len(self.counts) - 1

    def f(self, dim: int) -> int:
        return self.counts[dim + 1]


def _independence_polynomial(g: Graph) -> List[int]:
    @lru_cache(maxsize=None)
    def count(candidates: int) -> Tuple[int, ...]:
        if not candidates:
            return (1,)
        low = candidates & -candidates
        v = low.bit_length() - 1
        without_v = count(candidates ^ low)
        with_v = count(candidates & ~low & ~g.adj[v])
        size = max(len(without_v), len(with_v) + 1)
        return tuple(
            (without_v[k] if k < len(without_v) else 0) + (with_v[k - 1] if 0 < k <= len(with_v) else 0)
            for k in range(size)
        )

    return list(count(g.vertices))


def f_vector(g: Graph) -> FVector:
    if g.n > SERIES_CAP:
        raise DeskCapExceeded(g.n, SERIES_CAP, what="f-vector")
    return FVector(tuple(_independence_polynomial(g)))


def alpha(g: Graph) -> int:
    return f_vector(g).alpha


def cover_number(g: Graph) -> int:
    return g.n - alpha(g)


def matching_number(g: Graph) -> int:
    return len(maximum_matching(g))


def hilbert_series(g: Graph) -> RationalSeries:
    """
    H(t) = sum_i f_{i-1} t^i / (1-t)^i over the common denominator (1-t)^alpha.
    The numerator at t = 1 is f_{alpha-1}, so nothing cancels.
    """
    fv = f_vector(g)
    a = fv.alpha
    num = IntPolynomial()
    for i, count in enumerate(fv.counts):
        num = num + IntPolynomial.monomial(count, i) * ONE_MINUS_T ** (a - i)
    assert num.eval_at_one() == fv.counts[-1] > 0
    series = normalize(RationalSeries(num, a))
    assert series.denom_exp == a
    return series


def h_polynomial(g: Graph) -> IntPolynomial:
    return hilbert_series(g).num


def deg_h(g: Graph) -> int:
    return h_polynomial(g).degree


class BettiTable:
    """Graded Betti numbers beta_{i,j} of R/I(G); only nonzero entries are stored."""

    def __init__(self, entries: Mapping[Tuple[int, int], int]):
        self._entries = {key: value for key, value in sorted(entries.items()) if value}
        for (i, j), value in self._entries.items():
            if value < 0 or j < i or i < 0:
                raise ValueError(f"invalid Betti entry beta_{i},{j} = {value}")

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self._entries.get(key, 0)

    def items(self):
        return self._entries.items()

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return dict(self._entries)

    def __eq__(self, other):
        if isinstance(other, BettiTable):
            return self._entries == other._entries
        if isinstance(other, Mapping):
            return self._entries == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __repr__(self):
        return f"BettiTable({self._entries})"

    @property
    def projective_dimension(self) -> int:
        return max((i for i, _ in self._entries), default=0)

    @property
    def regularity(self) -> int:
        return max((j - i for i, j in self._entries if i >= 1), default=0)

    def is_pure(self) -> bool:
        degrees: Dict[int, set] = {}
        for i, j in self._entries:
            degrees.setdefault(i, set()).add(j)
        return all(len(js) == 1 for i, js in degrees.items() if i >= 1)

    def to_json(self) -> List[List[int]]:
        return [[i, j, value] for (i, j), value in self._entries.items()]

    def render(self) -> str:
        """Betti diagram: row r lists beta_{i,i+r} for i = 0..pd."""
        pd = self.projective_dimension
        reg = max((j - i for i, j in self._entries), default=0)
        totals = [sum(v for (i, _), v in self._entries.items() if i == col) for col in range(pd + 1)]
        width = max(len(str(v)) for v in totals) + 1
        lines = [
            "       " + "".join(str(i).rjust(width) for i in range(pd + 1)),
            "total: " + "".join(str(v).rjust(width) for v in totals),
        ]
        for r in range(reg + 1):
            cells = []
            for i in range(pd + 1):
                value = self[(i, i + r)]
                cells.append((str(value) if value else "-").rjust(width))
            lines.append(f"{r:>5}: " + "".join(cells))
        return "\n".join(lines)


def _check_cap(g: Graph, desk_cap: Optional[int]):
    cap = DEFAULT_DESK_CAP if desk_cap is None else desk_cap
    if g.n > cap:
        raise DeskCapExceeded(g.n, cap)


def _betti_slice(payload) -> Counter:
    n, adj, field, start, stop = payload
    g = Graph(n, adj)
    table = Counter()
    for w in range(start, stop):
        size = popcount(w)
        for degree, dim in induced_homology(g, w, field):
            table[(size - degree - 1, size)] += dim
    return table


def _subset_slices(n: int, workers: int) -> List[Tuple[int, int]]:
    total = 1 << n
    chunks = max(1, workers * 4)
    step = -(-total // chunks)
    return [(start, min(start + step, total)) for start in range(0, total, step)]


def betti_table(g: Graph, field: Field = GF2, desk_cap: Optional[int] = None, workers: int = 1) -> BettiTable:
    """
    Hochster: beta_{i,j}(R/I(G)) = sum over j-subsets W of dim H~_{j-i-1}(Ind(G_W)).
    All 2^n subsets are visited; W = {} contributes beta_{0,0} = 1.
    """
    _check_cap(g, desk_cap)
    if workers > 1 and (1 << g.n) >= PARALLEL_THRESHOLD:
        payloads = [(g.n, g.adj, field, start, stop) for start, stop in _subset_slices(g.n, workers)]
        table = Counter()
        with Pool(processes=workers) as pool:
            for part in pool.imap_unordered(_betti_slice, payloads):
                table.update(part)
    else:
        table = _betti_slice((g.n, g.adj, field, 0, 1 << g.n))
    return BettiTable(table)


def _regularity_slice(payload) -> int:
    n, adj, field, start, stop = payload
    g = Graph(n, adj)
    reg = 0
    for w in range(max(start, 1), stop):
        for degree, _ in induced_homology(g, w, field):
            reg = max(reg, degree + 1)
    return reg


def regularity(g: Graph, field: Field = GF2, desk_cap: Optional[int] = None, workers: int = 1) -> int:
    """max{l : H~_{l-1}(Ind(G_W)) != 0 for some nonempty W}, without storing the table."""
    _check_cap(g, desk_cap)
    if workers > 1 and (1 << g.n) >= PARALLEL_THRESHOLD:
        payloads = [(g.n, g.adj, field, start, stop) for start, stop in _subset_slices(g.n, workers)]
        with Pool(processes=workers) as pool:
            return max(pool.imap_unordered(_regularity_slice, payloads))
    return _regularity_slice((g.n, g.adj, field, 0, 1 << g.n))


def proj_dim(g: Graph, field: Field = GF2, desk_cap: Optional[int] = None) -> int:
    return betti_table(g, field, desk_cap).projective_dimension


def depth(g: Graph, field: Field = GF2, desk_cap: Optional[int] = None) -> int:
    # Auslander-Buchsbaum
    return g.n - proj_dim(g, field, desk_cap)


def hilbert_from_betti(bt: BettiTable, n: int) -> RationalSeries:
    num = IntPolynomial()
    for (i, j), value in bt.items():
        num = num + IntPolynomial.monomial(-value if i % 2 else value, j)
    return normalize(RationalSeries(num, n))


@dataclass
class InvariantReport:
    n: int
    edges: int
    alpha: int
    alpha_prime: int
    cover: int
    dim: int
    h_poly: IntPolynomial
    deg_h: int
    reg: int
    proj_dim: int
    depth: int
    field: str
    graph6: str = ""
    bounds: Dict[str, bool] = dataclass_field(default_factory=dict)

    @property
    def bounds_ok(self) -> bool:
        return all(self.bounds.values())

    def to_json(self) -> dict:
        return {
            "graph6": self.graph6,
            "n": self.n,
            "edges": self.edges,
            "alpha": self.alpha,
            "alphaPrime": self.alpha_prime,
            "cover": self.cover,
            "dim": self.dim,
            "hPoly": self.h_poly.render(),
            "degH": self.deg_h,
            "reg": self.reg,
            "projDim": self.proj_dim,
            "depth": self.depth,
            "field": self.field,
            "boundsOk": self.bounds_ok,
            "bounds": dict(self.bounds),
        }

    def to_tsv(self) -> str:
        record = self.to_json()
        del record["bounds"]
        return "\t".join(record) + "\n" + "\t".join(str(v) for v in record.values())

    def to_text(self) -> str:
        lines = [f"{key}: {value}" for key, value in self.to_json().items() if key != "bounds"]
        lines += [f"  {name}: {'ok' if ok else 'VIOLATED'}" for name, ok in self.bounds.items()]
        return "\n".join(lines)


def invariant_report(g: Graph, field: Field = GF2, desk_cap: Optional[int] = None, workers: int = 1,
                     betti: Optional[BettiTable] = None) -> InvariantReport:
    fv = f_vector(g)
    h = hilbert_series(g).num
    bt = betti if betti is not None else betti_table(g, field, desk_cap, workers)
    report = InvariantReport(
        n=g.n,
        edges=g.edge_count,
        alpha=fv.alpha,
        alpha_prime=matching_number(g),
        cover=g.n - fv.alpha,
        dim=fv.alpha,
        h_poly=h,
        deg_h=h.degree,
        reg=bt.regularity,
        proj_dim=bt.projective_dimension,
        depth=g.n - bt.projective_dimension,
        field=field.name,
        graph6=graph6_encode(g),
    )
    report.bounds = {name: lhs <= rhs for name, (lhs, rhs) in bound_sides(report).items()}
    return report


def bound_sides(report: InvariantReport) -> Dict[str, Tuple[int, int]]:
    """(lhs, rhs) of every inequality that must satisfy lhs <= rhs."""
    return {
        "reg<=matching": (report.reg, report.alpha_prime),
        "matching<=cover": (report.alpha_prime, report.cover),
        "degh+reg<=n": (report.deg_h + report.reg, report.n),
        "degh<=n-cover": (report.deg_h, report.n - report.cover),
        "degh<=alpha": (report.deg_h, report.alpha),
        "reg<=n/2": (report.reg, report.n // 2),
    }


def check_bounds(g: Graph, field: Field = GF2, strict: bool = True, desk_cap: Optional[int] = None,
                 report: Optional[InvariantReport] = None) -> Dict[str, bool]:
    """
    Evaluate every proven inequality. In strict mode a failure raises
    BoundViolation naming the graph and both sides.
    """
    report = report if report is not None else invariant_report(g, field, desk_cap)
    flags = {}
    for name, (lhs, rhs) in bound_sides(report).items():
        flags[name] = lhs <= rhs
        if strict and lhs > rhs:
            logger.error(f"Bound {name} violated for {report.graph6}: {lhs} > {rhs}")
            raise BoundViolation(report.graph6, name, lhs, rhs)
    return flags


def pure_resolution_check(bt: BettiTable, report: InvariantReport) -> Optional[bool]:
    """
    For a pure resolution, deg h - reg = dim - depth must hold. Returns None
    when the table is not pure (nothing to check), True when it holds.
    """
    if not bt.is_pure():
        logger.info(f"{report.graph6}: resolution not pure, check skipped")
        return None
    lhs = report.deg_h - report.reg
    rhs = report.dim - report.depth
    if lhs != rhs:
        raise PureResolutionViolation(
            f"{report.graph6}: pure resolution but deg h - reg = {lhs} != dim - depth = {rhs}"
        )
    return True
