"""Exact computations on graphical nested complexes and their compatibility fans.

Tubes of a graph are encoded as integer bitmasks over the graph's vertex
indices; all geometry is done in exact integer / rational arithmetic.
"""

from .graphs import Graph, make_family, parse_graph_spec
from .nested import maximal_tubings, tubes_of, are_compatible
from .compat import degree, compat_vector
from .fans import build_fan, build_nested_fan, verify_fan, product_fan

__all__ = [
    "Graph",
    "make_family",
    "parse_graph_spec",
    "maximal_tubings",
    "tubes_of",
    "are_compatible",
    "degree",
    "compat_vector",
    "build_fan",
    "build_nested_fan",
    "verify_fan",
    "product_fan",
]
