"""Longest paths of small graphs and how they intersect."""
from .graph import Graph, is_connected
from .graph6 import parse_graph6, to_graph6
from .paths import (
    KERNEL,
    LongestPathReport,
    brute_force_longest,
    canonical,
    enumerate_longest_paths,
    is_path,
    longest_path_order,
)

__all__ = [
    "KERNEL",
    "Graph",
    "LongestPathReport",
    "brute_force_longest",
    "canonical",
    "enumerate_longest_paths",
    "is_connected",
    "is_path",
    "longest_path_order",
    "parse_graph6",
    "to_graph6",
]
__version__ = "0.1.0"
