"""Blocked all-pairs shortest paths engine with a GPU memory-access model."""

from ._apsp import (
    blocks_per_mp,
    checksum,
    conflict_degree,
    load_graph,
    negative_cycle_vertex,
    random_graph,
    roofline_tasks_per_sec,
    save_matrix,
    shared_bytes,
    shortest_paths,
    tiled_offset,
)

__all__ = [
    "blocks_per_mp",
    "checksum",
    "conflict_degree",
    "load_graph",
    "negative_cycle_vertex",
    "random_graph",
    "roofline_tasks_per_sec",
    "save_matrix",
    "shared_bytes",
    "shortest_paths",
    "tiled_offset",
]
