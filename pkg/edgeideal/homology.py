"""
Independence complexes and their reduced simplicial homology over a field.

Faces are vertex bitmasks. Boundary matrices are built one dimension at a
time and thrown away after their rank is taken: over GF(2) every row is a
Python int and elimination is XOR on whole rows; over GF(p) and Q the
signed integer matrix goes to sympy's DomainMatrix for an exact rank.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import GF, QQ, ZZ, isprime
from sympy.polys.matrices import DomainMatrix

from edgeideal.errors import HomologyError, UsageError
from edgeideal.graph import Graph, VertexSet, iter_bits

logger = logging.getLogger(__name__)

_FIELD_PATTERN = re.compile(r"^(?:GF\(?(\d+)\)?|F(\d+)|Q|QQ|RATIONALS?)$", re.IGNORECASE)


@dataclass(frozen=True)
class Field:
    """Coefficient field: GF(p) for a prime p, or Q when characteristic is 0."""

    characteristic: int

    def __post_init__(self):
        if self.characteristic != 0 and not isprime(self.characteristic):
            raise UsageError(f"GF({self.characteristic}) is not a field: {self.characteristic} is not prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        match = _FIELD_PATTERN.match(text.strip())
        if not match:
            raise UsageError(f"unknown field {text!r} (use GF2, GF(p) or QQ)")
        digits = match.group(1) or match.group(2)
        if digits is None:
            return cls(0)
        if int(digits) == 0:
            raise UsageError(f"unknown field {text!r}: GF(p) needs a prime p, use QQ for the rationals")
        return cls(int(digits))

    @property
    def name(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __str__(self):
        return self.name


GF2 = Field(2)
RATIONALS = Field(0)


@dataclass(frozen=True)
class FaceList:
    """layers[d + 1] holds the faces of dimension d, sorted by bitmask."""

    layers: Tuple[Tuple[VertexSet, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.layers) - 2

    def faces(self, dim: int) -> Tuple[VertexSet, ...]:
        if -1 <= dim <= self.dimension:
            return self.layers[dim + 1]
        return ()

    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(layer) for layer in self.layers)


def independence_faces(g: Graph, within: Optional[VertexSet] = None) -> FaceList:
    """
    All independent sets of g (optionally restricted to the vertex set
    `within`), grouped by cardinality. The search only ever extends
    independent sets, so non-faces are never visited.
    """
    allowed = g.vertices if within is None else within
    by_size: List[List[int]] = [[0]]

    def extend(face: int, size: int, candidates: int):
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            grown = face | low
            if len(by_size) <= size + 1:
                by_size.append([])
            by_size[size + 1].append(grown)
            extend(grown, size + 1, candidates & ~g.adj[v])

    extend(0, 0, allowed)
    return FaceList(tuple(tuple(sorted(layer)) for layer in by_size))


def _facet_index(lower: Dict[int, int], face: int, v: int) -> int:
    try:
        return lower[face & ~(1 << v)]
    except KeyError:
        raise HomologyError(f"face {face:#b} is listed but its facet {face & ~(1 << v):#b} is not")


def boundary_rows(faces: FaceList, k: int) -> List[Dict[int, int]]:
    """
    Signed boundary of every k-face as {index of (k-1)-face: +-1}.

    The sign of a term is (-1)^position of the removed vertex within the face.
    """
    lower = {face: i for i, face in enumerate(faces.faces(k - 1))}
    rows = []
    for face in faces.faces(k):
        row = {}
        for position, v in enumerate(iter_bits(face)):
            row[_facet_index(lower, face, v)] = -1 if position % 2 else 1
        rows.append(row)
    return rows


def _gf2_rank(rows: Sequence[int]) -> int:
    pivots: Dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            pivot = pivots.get(top)
            if pivot is None:
                pivots[top] = row
                break
            row ^= pivot
    return len(pivots)


def _boundary_rank_gf2(faces: FaceList, k: int) -> int:
    lower = {face: i for i, face in enumerate(faces.faces(k - 1))}
    rows = []
    for face in faces.faces(k):
        row = 0
        for v in iter_bits(face):
            row |= 1 << _facet_index(lower, face, v)
        rows.append(row)
    return _gf2_rank(rows)


def _boundary_rank_exact(faces: FaceList, k: int, field: Field) -> int:
    rows = boundary_rows(faces, k)
    if not rows:
        return 0
    shape = (len(rows), len(faces.faces(k - 1)))
    matrix = DomainMatrix({i: {j: ZZ(c) for j, c in row.items()} for i, row in enumerate(rows)}, shape, ZZ)
    domain = QQ if field.characteristic == 0 else GF(field.characteristic)
    return matrix.convert_to(domain).rank()


def boundary_rank(faces: FaceList, k: int, field: Field) -> int:
    """Rank of the boundary map from k-chains to (k-1)-chains."""
    if k < 0 or k > faces.dimension:
        return 0
    if k == 0:
        # every vertex maps to the empty face
        return 1 if faces.faces(0) else 0
    if field.characteristic == 2:
        return _boundary_rank_gf2(faces, k)
    return _boundary_rank_exact(faces, k, field)


def reduced_homology_dims(faces: FaceList, field: Field = GF2) -> Tuple[int, ...]:
    """dim H~_k for k = -1, 0, ..., dim of the complex (entry 0 is degree -1)."""
    ranks = [boundary_rank(faces, k, field) for k in range(faces.dimension + 2)]
    dims = []
    for k in range(-1, faces.dimension + 1):
        incoming = ranks[k + 1] if k + 1 <= faces.dimension else 0
        outgoing = ranks[k] if k >= 0 else 0
        dims.append(len(faces.faces(k)) - outgoing - incoming)
    if min(dims) < 0:
        # rank d_k + rank d_{k+1} <= dim C_k whenever d_k d_{k+1} = 0
        logger.error(f"Negative homology dimensions {dims} over {field}")
        raise HomologyError(f"boundary ranks exceed chain dimensions over {field}: {dims}")
    return tuple(dims)


def boundary_composition(faces: FaceList, k: int) -> Dict[Tuple[int, int], int]:
    """Nonzero entries of d_k d_{k+1}, keyed by (k+1-face index, (k-1)-face index)."""
    upper = boundary_rows(faces, k + 1)
    lower = boundary_rows(faces, k)
    product: Dict[Tuple[int, int], int] = {}
    for i, row in enumerate(upper):
        for j, coefficient in row.items():
            for target, c in lower[j].items():
                product[(i, target)] = product.get((i, target), 0) + coefficient * c
    return {key: value for key, value in product.items() if value}


def check_chain_complex(faces: FaceList):
    """Raise HomologyError unless every composite of consecutive boundary maps vanishes."""
    for k in range(faces.dimension):
        nonzero = boundary_composition(faces, k)
        if nonzero:
            raise HomologyError(f"d_{k} d_{k + 1} has {len(nonzero)} nonzero entries")


@lru_cache(maxsize=1 << 17)
def _homology_of_pattern(adj: Tuple[int, ...], field: Field) -> Tuple[Tuple[int, int], ...]:
    dims = reduced_homology_dims(independence_faces(Graph(len(adj), adj)), field)
    return tuple((k - 1, d) for k, d in enumerate(dims) if d)


def induced_homology(g: Graph, w: VertexSet, field: Field = GF2) -> Tuple[Tuple[int, int], ...]:
    """
    Nonzero (degree, dim H~_degree) pairs of Ind(G_W).

    An isolated vertex of G_W is a cone point of Ind(G_W), so those subsets
    are answered without building the complex. The rest are memoized on the
    relabeled induced subgraph, which recurs constantly across the subsets of
    one graph and across the graphs of a scan.
    """
    if not w:
        return ((-1, 1),)
    order = list(iter_bits(w))
    for v in order:
        if not g.adj[v] & w:
            return ()
    position = {v: i for i, v in enumerate(order)}
    pattern = []
    for v in order:
        row = 0
        for u in iter_bits(g.adj[v] & w):
            row |= 1 << position[u]
        pattern.append(row)
    return _homology_of_pattern(tuple(pattern), field)
