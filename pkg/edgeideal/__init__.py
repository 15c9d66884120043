"""Edge-ideal invariants of finite simple graphs."""
from edgeideal.graph import Graph, cone_over_subset, disjoint_union, from_edge_list, graph6_decode, graph6_encode
from edgeideal.homology import GF2, RATIONALS, Field
from edgeideal.invariants import betti_table, check_bounds, h_polynomial, hilbert_series, invariant_report, regularity

__version__ = "0.1.0"
