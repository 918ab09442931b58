"""Built-in plumbing graphs addressable from the command line.

Vertices are named after their twist generators (t1, t2) so word strings like
"t1 t2" resolve directly against the graph.
"""

from __future__ import annotations

from .plumbing import PlumbingGraph
from .twist_engine import preset_action


def _a2(dimension: int, points: int) -> PlumbingGraph:
    return PlumbingGraph(
        dimension, ("t1", "t2"), tuple(("t1", "t2", 1) for _ in range(points))
    )


GRAPH_PRESETS: dict[str, PlumbingGraph] = {
    "a2-3pt-n3": _a2(3, 3),
    "a2-3pt-n2": _a2(2, 3),
    "a2-3pt-n1": preset_action("a2-3pt-n1-t1")[0],
    "a2-1pt-n3": _a2(3, 1),
    "a2-1pt-n5": _a2(5, 1),
}


def graph_preset(name: str) -> PlumbingGraph:
    try:
        return GRAPH_PRESETS[name]
    except KeyError:
        available = ", ".join(sorted(GRAPH_PRESETS))
        raise ValueError(f"unknown preset {name!r} (available: {available})") from None
