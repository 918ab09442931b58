"""Plumbings of cotangent sphere bundles as signed graphs.

A plumbing of copies of T*S^n is encoded by its plumbing graph: one vertex
per Lagrangian sphere, one signed edge per plumbing point (multi-edges allowed,
self-loops not). The graph determines

* the intersection form on middle homology H_n, with the orientation
  convention fixed so that the induced twist operators match the classical
  reflection matrices (see ``twist_engine``), and
* the full graded integer homology of the plumbing, which is free: the space
  deformation-retracts onto spheres glued at points, a wedge of |V| n-spheres
  and E - V + 1 circles.

For n = 1 the middle homology mixes sphere and arc classes and no intersection
form is derived from the graph; degree-1 twist actions are supplied externally
(``h1_actions`` / the built-in preset in ``twist_engine``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .exact_linalg import AbelianGroup, IntMatrix, det


@dataclass(frozen=True)
class PlumbingGraph:
    """Signed plumbing graph with ambient sphere dimension.

    ``h1_actions`` optionally carries, for dimension-1 graphs only, the matrix
    of a twist's action on H_1 for selected vertices (rank E + 1, unimodular).
    """

    dimension: int
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...]
    h1_actions: tuple[tuple[str, IntMatrix], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple((a, b, s) for (a, b, s) in self.edges))
        actions = self.h1_actions
        if isinstance(actions, Mapping):
            actions = tuple(actions.items())
        object.__setattr__(self, "h1_actions", tuple(actions))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def h1_action(self, vertex: str) -> IntMatrix | None:
        for label, matrix in self.h1_actions:
            if label == vertex:
                return matrix
        return None


class GradedGroup:
    """Degree-indexed abelian groups; degrees not stored are trivial."""

    __slots__ = ("_groups",)

    def __init__(self, groups: Mapping[int, AbelianGroup]):
        cleaned: dict[int, AbelianGroup] = {}
        for k in sorted(groups):
            if not isinstance(k, int) or k < 0:
                raise ValueError(f"degrees must be nonnegative integers, got {k!r}")
            g = groups[k]
            if not g.is_trivial():
                cleaned[k] = g
        self._groups = cleaned

    def group(self, degree: int) -> AbelianGroup:
        return self._groups.get(degree, AbelianGroup(0))

    def rank(self, degree: int) -> int:
        return self.group(degree).free_rank

    def degrees(self) -> tuple[int, ...]:
        return tuple(self._groups)

    def items(self) -> tuple[tuple[int, AbelianGroup], ...]:
        return tuple(self._groups.items())

    def is_free(self) -> bool:
        return all(not g.invariant_factors for g in self._groups.values())

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * g.free_rank for k, g in self._groups.items())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GradedGroup) and self._groups == other._groups

    def __hash__(self) -> int:
        return hash(tuple(self._groups.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {g}" for k, g in self._groups.items())
        return f"GradedGroup({{{body}}})"


def validate(graph: PlumbingGraph) -> list[str]:
    """Check the graph invariants; returns a list of violations (empty = ok)."""
    errors: list[str] = []
    if not isinstance(graph.dimension, int) or graph.dimension < 1:
        errors.append(f"dimension must be an integer >= 1, got {graph.dimension!r}")
    if not graph.vertices:
        errors.append("empty vertex list")
    seen: set[str] = set()
    for label in graph.vertices:
        if label in seen:
            errors.append(f"duplicate vertex label {label!r}")
        seen.add(label)
    known = set(graph.vertices)
    adjacency: dict[str, set[str]] = {v: set() for v in graph.vertices}
    for a, b, sign in graph.edges:
        if a not in known:
            errors.append(f"edge endpoint {a!r} is not a vertex")
        if b not in known:
            errors.append(f"edge endpoint {b!r} is not a vertex")
        if a == b:
            errors.append(f"self-loop at {a!r}")
        if sign not in (1, -1):
            errors.append(f"edge sign must be 1 or -1, got {sign!r}")
        if a in known and b in known and a != b:
            adjacency[a].add(b)
            adjacency[b].add(a)
    if graph.vertices and not [e for e in errors if "endpoint" in e or "duplicate" in e]:
        stack = [graph.vertices[0]]
        reached = {graph.vertices[0]}
        while stack:
            for nxt in adjacency[stack.pop()]:
                if nxt not in reached:
                    reached.add(nxt)
                    stack.append(nxt)
        if len(reached) != len(graph.vertices):
            errors.append("disconnected graph")
    errors.extend(_validate_h1_actions(graph))
    return errors


def _validate_h1_actions(graph: PlumbingGraph) -> list[str]:
    errors: list[str] = []
    if not graph.h1_actions:
        return errors
    if graph.dimension != 1:
        errors.append("h1_action entries only apply to dimension 1")
        return errors
    size = graph.edge_count + 1
    for label, matrix in graph.h1_actions:
        if label not in graph.vertices:
            errors.append(f"h1_action for unknown vertex {label!r}")
            continue
        if not matrix.is_square or matrix.rows != size:
            errors.append(
                f"h1_action for {label!r} must be {size}x{size}, got {matrix.rows}x{matrix.cols}"
            )
        elif det(matrix) not in (1, -1):
            errors.append(f"h1_action for {label!r} is not unimodular")
    return errors


def ensure_valid(graph: PlumbingGraph) -> None:
    errors = validate(graph)
    if errors:
        raise ValueError("invalid plumbing graph: " + "; ".join(errors))


def intersection_form(graph: PlumbingGraph) -> IntMatrix:
    """Intersection pairing on H_n in the vertex-order basis, n >= 2.

    Off-diagonal entries are the signed edge counts times (-1)^(n(n+1)/2);
    the pairing is symmetric for n even and antisymmetric for n odd, and the
    self-intersection of a sphere class is (-1)^(n(n+1)/2) (1 + (-1)^n).
    """
    if graph.dimension == 1:
        raise ValueError(
            "no intersection form is derived for dimension 1; "
            "use a preset or supply h1_action matrices in the graph file"
        )
    ensure_valid(graph)
    n = graph.dimension
    half_sign = (-1) ** (n * (n + 1) // 2)
    parity = (-1) ** n
    index = {label: i for i, label in enumerate(graph.vertices)}
    size = len(graph.vertices)
    weights = [[0] * size for _ in range(size)]
    for a, b, sign in graph.edges:
        i, j = index[a], index[b]
        if i > j:
            i, j = j, i
        weights[i][j] += sign
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        rows[i][i] = half_sign * (1 + parity)
        for j in range(i + 1, size):
            rows[i][j] = half_sign * weights[i][j]
            rows[j][i] = parity * rows[i][j]
    return IntMatrix.from_rows(rows, cols=size)


def base_homology(graph: PlumbingGraph) -> GradedGroup:
    """Graded integer homology of the plumbing (free in every degree).

    For n >= 2: H_0 = Z, H_1 = Z^(E - V + 1), H_n = Z^V. For n = 1 the two
    middle contributions merge: H_1 = Z^(E + 1).
    """
    ensure_valid(graph)
    nv = len(graph.vertices)
    ne = graph.edge_count
    n = graph.dimension
    groups = {0: AbelianGroup(1)}
    if n == 1:
        groups[1] = AbelianGroup(ne + 1)
    else:
        groups[1] = AbelianGroup(ne - nv + 1)
        groups[n] = AbelianGroup(nv)
    return GradedGroup(groups)


def graph_to_json(graph: PlumbingGraph) -> dict:
    """Canonical JSON-shaped dict for the graph file format."""
    data: dict = {
        "dimension": graph.dimension,
        "vertices": list(graph.vertices),
        "edges": [{"between": [a, b], "sign": sign} for a, b, sign in graph.edges],
    }
    if graph.h1_actions:
        data["h1_action"] = {label: m.to_rows() for label, m in graph.h1_actions}
    return data


def graph_from_json(data: object) -> PlumbingGraph:
    """Parse the graph file format; unknown keys are rejected."""
    if not isinstance(data, dict):
        raise ValueError("graph document must be a JSON object")
    allowed = {"dimension", "vertices", "edges", "h1_action"}
    for key in data:
        if key not in allowed:
            raise ValueError(f"unknown key {key!r} in graph document")
    for key in ("dimension", "vertices", "edges"):
        if key not in data:
            raise ValueError(f"graph document is missing {key!r}")
    dimension = data["dimension"]
    if not isinstance(dimension, int) or isinstance(dimension, bool):
        raise ValueError("dimension must be an integer")
    vertices = data["vertices"]
    if not isinstance(vertices, list) or any(not isinstance(v, str) for v in vertices):
        raise ValueError("vertices must be a list of labels")
    raw_edges = data["edges"]
    if not isinstance(raw_edges, list):
        raise ValueError("edges must be a list")
    edges = []
    for e in raw_edges:
        if not isinstance(e, dict) or set(e) != {"between", "sign"}:
            raise ValueError('each edge must be an object with exactly "between" and "sign"')
        between = e["between"]
        if (
            not isinstance(between, list)
            or len(between) != 2
            or any(not isinstance(v, str) for v in between)
        ):
            raise ValueError('edge "between" must be a pair of vertex labels')
        sign = e["sign"]
        if isinstance(sign, bool) or sign not in (1, -1):
            raise ValueError("edge sign must be 1 or -1")
        edges.append((between[0], between[1], sign))
    h1_actions = []
    if "h1_action" in data:
        raw = data["h1_action"]
        if not isinstance(raw, dict):
            raise ValueError("h1_action must map vertex labels to matrices")
        for label, rows in raw.items():
            if not isinstance(rows, list):
                raise ValueError(f"h1_action for {label!r} must be a matrix (list of rows)")
            h1_actions.append((label, IntMatrix.from_rows(rows)))
    graph = PlumbingGraph(dimension, tuple(vertices), tuple(edges), tuple(h1_actions))
    ensure_valid(graph)
    return graph


def parse_graph(text: str) -> PlumbingGraph:
    import json

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad graph document: {exc}") from None
    return graph_from_json(data)
