"""
Isomorph-free graph generation and the (reg, deg h) realizability scan.

The canonical form of a graph is the smallest integer spelled by its
upper-triangle adjacency bits in graph6 column order ((0,1), (0,2), (1,2),
(0,3), ..., first pair most significant) over all vertex orders that respect
an invariant colour refinement. Generation grows the representatives on k-1
vertices by one vertex over every neighbor subset and keeps the distinct
canonical forms.
"""
from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache, partial
from itertools import combinations
from multiprocessing import Pool
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from tqdm import tqdm

from edgeideal.errors import CorpusParseError, DeskCapExceeded, GraphFormatError, UsageError
from edgeideal.graph import (
    Graph,
    connected_components,
    graph6_decode,
    graph6_encode,
    induced_subgraph,
    iter_bits,
    popcount,
)
from edgeideal.homology import GF2, RATIONALS, Field
from edgeideal.invariants import (
    InvariantReport,
    betti_table,
    check_bounds,
    hilbert_from_betti,
    hilbert_series,
    invariant_report,
)
from edgeideal.poly import ONE, RationalSeries

logger = logging.getLogger(__name__)

GENERATION_CAP = 10
BRUTE_FORCE_CAP = 7
CHECKS = ("reg-bound", "sum-bound", "hochster-hilbert", "lemma-additivity")


def _refined_cells(n: int, adj: Tuple[int, ...]) -> List[int]:
    """Vertex masks of the stable degree-refinement cells, in invariant order."""
    colors = [popcount(row) for row in adj]
    while True:
        signatures = [(colors[v], tuple(sorted(colors[u] for u in iter_bits(adj[v])))) for v in range(n)]
        palette = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
        refined = [palette[sig] for sig in signatures]
        stable = len(palette) == len(set(colors))
        colors = refined
        if stable:
            break
    cells = [0] * (max(colors) + 1)
    for v, c in enumerate(colors):
        cells[c] |= 1 << v
    return cells


def _twins(adj: Tuple[int, ...], u: int, v: int) -> bool:
    return adj[u] & ~(1 << v) == adj[v] & ~(1 << u)


@lru_cache(maxsize=1 << 18)
def _canonical_key(n: int, adj: Tuple[int, ...]) -> int:
    if n <= 1:
        return 0
    cells = _refined_cells(n, adj)
    slot_cell = [c for c, mask in enumerate(cells) for _ in range(popcount(mask))]
    total_bits = n * (n - 1) // 2
    remaining = list(cells)
    placed: List[int] = []
    best = [None]

    def search(k: int, prefix: int):
        if k == n:
            if best[0] is None or prefix < best[0]:
                best[0] = prefix
            return
        if best[0] is not None and prefix > best[0] >> (total_bits - k * (k - 1) // 2):
            return
        c = slot_cell[k]
        columns = {}
        for v in iter_bits(remaining[c]):
            column = 0
            for u in placed:
                column = column << 1 | (adj[u] >> v & 1)
            columns[v] = column
        lowest = min(columns.values())
        representatives: List[int] = []
        for v, column in columns.items():
            # swapping twins is an automorphism fixing everything placed so far
            if column == lowest and not any(_twins(adj, u, v) for u in representatives):
                representatives.append(v)
        extended = prefix << k | lowest
        for v in representatives:
            placed.append(v)
            remaining[c] &= ~(1 << v)
            search(k + 1, extended)
            remaining[c] |= 1 << v
            placed.pop()

    search(0, 0)
    return best[0]


def canonical_form(g: Graph) -> int:
    """Isomorphism key: equal for two graphs iff they are isomorphic."""
    return _canonical_key(g.n, g.adj)


def graph_from_key(n: int, key: int) -> Graph:
    total_bits = n * (n - 1) // 2
    adj = [0] * n
    position = total_bits - 1
    for j in range(1, n):
        for i in range(j):
            if key >> position & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            position -= 1
    return Graph(n, tuple(adj))


def _child_keys(parent_n: int, parent_adj: Tuple[int, ...]) -> Set[int]:
    new_vertex = 1 << parent_n
    keys = set()
    for mask in range(1 << parent_n):
        child = tuple(row | new_vertex if mask >> v & 1 else row for v, row in enumerate(parent_adj)) + (mask,)
        keys.add(_canonical_key(parent_n + 1, child))
    return keys


def _next_level(k: int, parent_keys: Sequence[int], workers: int, progress: bool) -> List[int]:
    parents = [graph_from_key(k - 1, key).adj for key in parent_keys]
    keys: Set[int] = set()
    bar = partial(tqdm, total=len(parents), desc=f"n={k}", disable=not progress, leave=False)
    if workers > 1 and len(parents) > workers:
        with Pool(processes=workers) as pool:
            chunksize = max(1, len(parents) // (workers * 16))
            for part in bar(pool.imap_unordered(partial(_child_keys, k - 1), parents, chunksize=chunksize)):
                keys |= part
    else:
        for adj in bar(parents):
            keys |= _child_keys(k - 1, adj)
    return sorted(keys)


def generate_nonisomorphic(n: int, workers: int = 1, connected_only: bool = False,
                           progress: bool = False) -> Iterator[Graph]:
    """One graph per isomorphism class on n vertices, in increasing canonical-key order."""
    if n < 0:
        raise UsageError(f"n must be nonnegative, got {n}")
    if n > GENERATION_CAP:
        raise DeskCapExceeded(n, GENERATION_CAP, what="graph generation")
    keys = [0]
    for k in range(1, n + 1):
        keys = _next_level(k, keys, workers, progress)
        logger.info(f"{len(keys)} isomorphism classes on {k} vertices")
    for key in keys:
        g = graph_from_key(n, key)
        if connected_only and len(connected_components(g)) != 1:
            continue
        yield g


def brute_force_classes(n: int) -> List[int]:
    """Canonical keys of all 2^(n choose 2) labeled graphs, deduplicated."""
    if n > BRUTE_FORCE_CAP:
        raise DeskCapExceeded(n, BRUTE_FORCE_CAP, what="brute-force dedupe")
    pairs = list(combinations(range(n), 2))
    keys = set()
    for edges in range(1 << len(pairs)):
        adj = [0] * n
        for bit, (u, v) in enumerate(pairs):
            if edges >> bit & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        keys.add(_canonical_key(n, tuple(adj)))
    return sorted(keys)


@dataclass
class RealizabilityTable:
    """(reg, deg h) histogram over isomorphism classes, with one witness per pair."""

    n: int
    field: Field = GF2
    counts: Dict[Tuple[int, int], int] = dataclass_field(default_factory=dict)
    witnesses: Dict[Tuple[int, int], str] = dataclass_field(default_factory=dict)
    total_graphs: int = 0
    cross_field: Optional["CrossFieldReport"] = None

    def record(self, reg: int, deg_h: int, graph6: str):
        key = (reg, deg_h)
        self.counts[key] = self.counts.get(key, 0) + 1
        if key not in self.witnesses or graph6 < self.witnesses[key]:
            self.witnesses[key] = graph6
        self.total_graphs += 1

    def merge(self, other: "RealizabilityTable") -> "RealizabilityTable":
        if other.field != self.field:
            raise UsageError(f"cannot merge tables over {self.field} and {other.field}")
        merged = RealizabilityTable(max(self.n, other.n), self.field, dict(self.counts), dict(self.witnesses),
                                    self.total_graphs + other.total_graphs)
        for key, count in other.counts.items():
            merged.counts[key] = merged.counts.get(key, 0) + count
            witness = other.witnesses[key]
            if key not in merged.witnesses or witness < merged.witnesses[key]:
                merged.witnesses[key] = witness
        return merged

    def pairs(self) -> List[Tuple[int, int]]:
        return sorted(self.counts)

    def present(self, pairs: Iterable[Tuple[int, int]]) -> List[Tuple[int, int]]:
        return [pair for pair in pairs if pair in self.counts]

    def missing_pairs(self) -> List[Tuple[int, int]]:
        """Pairs r, d >= 1 allowed by r + d <= n and r <= n/2 that no graph attains."""
        return [
            (r, d)
            for r in range(1, self.n // 2 + 1)
            for d in range(1, self.n - r + 1)
            if (r, d) not in self.counts
        ]

    def to_tsv(self) -> str:
        rows = ["r\td\tcount\twitness_graph6"]
        rows += [f"{r}\t{d}\t{self.counts[(r, d)]}\t{self.witnesses[(r, d)]}" for r, d in self.pairs()]
        return "\n".join(rows)

    def to_json(self) -> dict:
        record = {
            "n": self.n,
            "field": self.field.name,
            "totalGraphs": self.total_graphs,
            "rows": [
                {"r": r, "d": d, "count": self.counts[(r, d)], "witness": self.witnesses[(r, d)]}
                for r, d in self.pairs()
            ],
            "missingPairs": [list(pair) for pair in self.missing_pairs()],
        }
        if self.cross_field is not None:
            record["crossField"] = self.cross_field.to_json()
        return record

    def to_text(self) -> str:
        lines = [f"n={self.n} field={self.field.name} classes={self.total_graphs}"]
        lines += [f"  (r={r}, d={d}): {self.counts[(r, d)]}  e.g. {self.witnesses[(r, d)]}" for r, d in self.pairs()]
        lines.append(f"unrealized pairs: {self.missing_pairs()}")
        if self.cross_field is not None:
            report = self.cross_field
            lines.append(f"{report.other.name} cross-check: {report.checked} graphs, "
                         f"{len(report.mismatches)} disagree with {report.base.name}")
        return "\n".join(lines)


def _scan_one(payload) -> Tuple[int, int, str]:
    n, adj, field, desk_cap = payload
    g = Graph(n, adj)
    report = invariant_report(g, field, desk_cap)
    check_bounds(g, field, strict=True, report=report)
    return report.reg, report.deg_h, report.graph6


def scan(n: Optional[int], field: Field = GF2, workers: int = 1, connected_only: bool = False,
         graphs: Optional[Iterable[Graph]] = None, progress: bool = False,
         desk_cap: Optional[int] = None) -> RealizabilityTable:
    """
    (reg, deg h) of every graph in `graphs`, or of every isomorphism class on
    n vertices when no graphs are given. Each graph must pass check_bounds;
    the first violation aborts the scan. The result does not depend on the
    number of workers.
    """
    if graphs is None:
        if n is None:
            raise UsageError("scan needs n or an explicit list of graphs")
        graphs = list(generate_nonisomorphic(n, workers, connected_only, progress))
    else:
        graphs = [g for g in graphs if not connected_only or len(connected_components(g)) == 1]
        if n is None:
            n = max((g.n for g in graphs), default=0)
    logger.info(f"Scanning {len(graphs)} graphs on n={n} over {field}")
    table = RealizabilityTable(n, field)
    payloads = [(g.n, g.adj, field, desk_cap) for g in graphs]
    bar = partial(tqdm, total=len(payloads), desc="scan", disable=not progress)
    if workers > 1 and len(payloads) > workers:
        chunksize = max(1, len(payloads) // (workers * 32))
        with Pool(processes=workers) as pool:
            for reg, deg_h, graph6 in bar(pool.imap_unordered(_scan_one, payloads, chunksize=chunksize)):
                table.record(reg, deg_h, graph6)
    else:
        for payload in bar(payloads):
            table.record(*_scan_one(payload))
    return table


@dataclass
class CrossFieldReport:
    """Betti tables of a witness sample recomputed over a second field."""

    base: Field
    other: Field
    checked: int = 0
    mismatches: List[dict] = dataclass_field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "baseField": self.base.name,
            "field": self.other.name,
            "checked": self.checked,
            "mismatches": self.mismatches,
        }


def _edge_toggles(g: Graph) -> Iterator[Graph]:
    for u, v in combinations(range(g.n), 2):
        adj = list(g.adj)
        adj[u] ^= 1 << v
        adj[v] ^= 1 << u
        yield Graph(g.n, tuple(adj))


def cross_check_witnesses(table: RealizabilityTable, field: Field = RATIONALS, desk_cap: Optional[int] = None,
                          progress: bool = False) -> CrossFieldReport:
    """
    Recompute the Betti table of every witness in `table`, and of every graph
    one edge toggle away from a witness, over `field` and compare it with the
    table's own field. Disagreements are logged and reported, never raised;
    the table keeps its own field's counts. The report is attached to the
    table as `cross_field`.
    """
    if field == table.field:
        raise UsageError(f"cross-check field must differ from the table's field {table.field}")
    seen: Set[Tuple[int, int]] = set()
    sample: List[Graph] = []
    for pair in table.pairs():
        witness = graph6_decode(table.witnesses[pair])
        for g in [witness, *_edge_toggles(witness)]:
            key = (g.n, canonical_form(g))
            if key not in seen:
                seen.add(key)
                sample.append(g)
    logger.info(f"Cross-checking {len(sample)} witness-adjacent graphs over {table.field} and {field}")
    report = CrossFieldReport(table.field, field)
    for g in tqdm(sample, desc="cross-field", disable=not progress):
        base_table = betti_table(g, table.field, desk_cap)
        other_table = betti_table(g, field, desk_cap)
        report.checked += 1
        if base_table == other_table:
            continue
        graph6 = graph6_encode(g)
        report.mismatches.append({
            "graph6": graph6,
            "degH": hilbert_series(g).num.degree,
            "reg": {table.field.name: base_table.regularity, field.name: other_table.regularity},
        })
        logger.warning(f"{graph6}: Betti numbers over {table.field} and {field} disagree "
                       f"(reg {base_table.regularity} vs {other_table.regularity})")
    table.cross_field = report
    return report


@dataclass
class CorpusReport:
    reports: List[InvariantReport] = dataclass_field(default_factory=list)
    outcomes: Dict[str, Counter] = dataclass_field(default_factory=dict)
    failures: List[dict] = dataclass_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "graphs": len(self.reports),
            "checks": {name: {"passed": c["passed"], "failed": c["failed"]} for name, c in self.outcomes.items()},
            "failures": self.failures,
            "reports": [report.to_json() for report in self.reports],
        }


def _component_split_agrees(g: Graph, report: InvariantReport, field: Field, desk_cap: Optional[int]) -> bool:
    components = connected_components(g)
    if len(components) <= 1:
        return True
    reg, deg_h, series = 0, 0, RationalSeries(ONE, 0)
    for mask in components:
        part = induced_subgraph(g, mask)
        part_report = invariant_report(part, field, desk_cap)
        reg += part_report.reg
        deg_h += part_report.deg_h
        series = series * hilbert_series(part)
    return reg == report.reg and deg_h == report.deg_h and series == hilbert_series(g)


def verify_corpus(lines: Iterable[str], field: Field = GF2, checks: Optional[Sequence[str]] = None,
                  desk_cap: Optional[int] = None) -> CorpusReport:
    """Run the selected checks over a graph6 corpus, one graph per line; blank lines are skipped."""
    selected = list(CHECKS if not checks else checks)
    unknown = [name for name in selected if name not in CHECKS]
    if unknown:
        raise UsageError(f"unknown checks {unknown}; choose from {', '.join(CHECKS)}")
    result = CorpusReport(outcomes={name: Counter(passed=0, failed=0) for name in selected})
    for number, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            g = graph6_decode(text)
        except GraphFormatError as e:
            logger.error(f"Corpus line {number} is not graph6: {e}")
            raise CorpusParseError(number, str(e)) from e
        bt = betti_table(g, field, desk_cap)
        report = invariant_report(g, field, desk_cap, betti=bt)
        logger.info(json.dumps(report.to_json()))
        result.reports.append(report)
        verdicts = {
            "reg-bound": lambda: report.reg <= report.alpha_prime,
            "sum-bound": lambda: report.deg_h + report.reg <= report.n,
            "hochster-hilbert": lambda: hilbert_from_betti(bt, g.n) == hilbert_series(g),
            "lemma-additivity": lambda: _component_split_agrees(g, report, field, desk_cap),
        }
        for name in selected:
            if verdicts[name]():
                result.outcomes[name]["passed"] += 1
            else:
                result.outcomes[name]["failed"] += 1
                result.failures.append({"line": number, "graph6": report.graph6, "check": name})
                logger.warning(f"Check {name} failed for {report.graph6} (line {number})")
    return result
