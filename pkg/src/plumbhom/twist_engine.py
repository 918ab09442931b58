"""Twist actions on the homology of a plumbing.

A twist along one of the plumbing spheres L acts on middle homology by the
Picard-Lefschetz reflection

    c  |->  c + (-1)^((n+1)(n+2)/2) <c, [L]> [L]

and by the identity in every other degree; <.,.> is the intersection form from
the plumbing graph. Words in the twists compose like functions: the word
"t1 t2" means the twist along t1 applied after the twist along t2, so its
matrix is the product T1 @ T2 in the vertex-order basis (columns are images of
basis vectors).

Dimension-1 graphs have no derived intersection data; their degree-1 actions
come from the built-in preset or from ``h1_actions`` entries on the graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .exact_linalg import IntMatrix, inverse_unimodular, mat_mul, mat_pow
from .plumbing import PlumbingGraph, ensure_valid, intersection_form


@dataclass(frozen=True)
class TwistWord:
    """Word in twist generators; leftmost letter is applied last."""

    letters: tuple[tuple[str, int], ...]

    def __post_init__(self):
        letters = tuple((label, exp) for label, exp in self.letters)
        object.__setattr__(self, "letters", letters)
        for label, exp in letters:
            if not label:
                raise ValueError("empty vertex label in word")
            if not isinstance(exp, int) or isinstance(exp, bool) or exp == 0:
                raise ValueError(f"word exponents must be nonzero integers, got {exp!r}")

    def __str__(self) -> str:
        return " ".join(
            label if exp == 1 else f"{label}^{exp}" for label, exp in self.letters
        )


def parse_word(text: str) -> TwistWord:
    """Parse the word grammar: whitespace-separated ``label`` or ``label^exp``."""
    letters = []
    for token in text.split():
        label, caret, tail = token.rpartition("^")
        if caret:
            try:
                exp = int(tail)
            except ValueError:
                raise ValueError(f"bad exponent in token {token!r}") from None
            if not label:
                raise ValueError(f"missing vertex label in token {token!r}")
            if exp == 0:
                raise ValueError(f"zero exponent in token {token!r}")
            letters.append((label, exp))
        else:
            letters.append((token, 1))
    return TwistWord(tuple(letters))


class GradedAction:
    """Degree-indexed square integer matrices; absent degrees act as identity.

    Twist-generated actions are always unimodular, but the class accepts any
    square integer matrix so that non-invertible self-maps (e.g. a degree-d
    circle map) can feed the same mapping-torus machinery. ``inverse`` is only
    defined when every stored matrix is unimodular.
    """

    __slots__ = ("_maps",)

    def __init__(self, degree_maps: Mapping[int, IntMatrix]):
        cleaned: dict[int, IntMatrix] = {}
        for k in sorted(degree_maps):
            if not isinstance(k, int) or k < 0:
                raise ValueError(f"degrees must be nonnegative integers, got {k!r}")
            m = degree_maps[k]
            if not isinstance(m, IntMatrix) or not m.is_square:
                raise ValueError(f"degree {k} map must be a square IntMatrix")
            cleaned[k] = m
        self._maps = cleaned

    def degrees(self) -> tuple[int, ...]:
        return tuple(self._maps)

    def items(self) -> tuple[tuple[int, IntMatrix], ...]:
        return tuple(self._maps.items())

    def matrix(self, degree: int, size: int | None = None) -> IntMatrix:
        m = self._maps.get(degree)
        if m is None:
            if size is None:
                raise KeyError(f"no stored matrix in degree {degree} and no size given")
            return IntMatrix.identity(size)
        return m

    def compose(self, other: "GradedAction") -> "GradedAction":
        """self applied after other (matrix product self @ other per degree)."""
        out: dict[int, IntMatrix] = {}
        for k in sorted(set(self._maps) | set(other._maps)):
            a = self._maps.get(k)
            b = other._maps.get(k)
            if a is None:
                out[k] = b
            elif b is None:
                out[k] = a
            else:
                if a.rows != b.rows:
                    raise ValueError(f"degree {k} size mismatch: {a.rows} vs {b.rows}")
                out[k] = mat_mul(a, b)
        return GradedAction(out)

    def power(self, k: int) -> "GradedAction":
        if not isinstance(k, int) or isinstance(k, bool):
            raise ValueError(f"exponent must be an integer, got {k!r}")
        base = self if k >= 0 else self.inverse()
        e = abs(k)
        return GradedAction({d: mat_pow(m, e) for d, m in base._maps.items()})

    def inverse(self) -> "GradedAction":
        return GradedAction({d: inverse_unimodular(m) for d, m in self._maps.items()})

    def is_identity(self) -> bool:
        return all(m.is_identity() for m in self._maps.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedAction):
            return NotImplemented
        for k in set(self._maps) | set(other._maps):
            a = self._maps.get(k)
            b = other._maps.get(k)
            if a is None:
                if not b.is_identity():
                    return False
            elif b is None:
                if not a.is_identity():
                    return False
            elif a != b:
                return False
        return True

    def __hash__(self) -> int:
        return hash(tuple((k, m) for k, m in self._maps.items() if not m.is_identity()))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {m}" for k, m in self._maps.items())
        return f"GradedAction({{{body}}})"


IDENTITY_ACTION = GradedAction({})


def twist_matrix(graph: PlumbingGraph, vertex: str) -> GradedAction:
    """Homology action of the twist along one plumbing sphere.

    Identity in every degree except the middle one; there, column i is the
    reflection image of the i-th sphere class. For dimension 1 the matrix is
    looked up from the graph's ``h1_actions`` (see module docstring).
    """
    ensure_valid(graph)
    if vertex not in graph.vertices:
        raise ValueError(f"unknown vertex {vertex!r}")
    n = graph.dimension
    if n == 1:
        stored = graph.h1_action(vertex)
        if stored is None:
            raise ValueError(
                f"dimension-1 twist action for {vertex!r} is not derived from the graph; "
                "use the built-in preset or an h1_action entry in the graph file"
            )
        return GradedAction({1: stored})
    form = intersection_form(graph)
    sign = (-1) ** ((n + 1) * (n + 2) // 2)
    v = graph.vertices.index(vertex)
    size = len(graph.vertices)
    rows = [
        [(1 if r == i else 0) + (sign * form.entry(i, v) if r == v else 0) for i in range(size)]
        for r in range(size)
    ]
    return GradedAction({n: IntMatrix.from_rows(rows, cols=size)})


def word_action(graph: PlumbingGraph, word: TwistWord) -> GradedAction:
    """Composite action of a twist word, leftmost letter applied last.

    Negative exponents use the exact integer inverse of the twist matrix.
    """
    ensure_valid(graph)
    n = graph.dimension
    degree = n if n >= 2 else 1
    size = len(graph.vertices) if n >= 2 else graph.edge_count + 1
    acc = GradedAction({degree: IntMatrix.identity(size)})
    cache: dict[str, GradedAction] = {}
    for label, exp in word.letters:
        if label not in cache:
            cache[label] = twist_matrix(graph, label)
        acc = acc.compose(cache[label].power(exp))
    return acc


_A2_3PT_N1_T1 = IntMatrix.from_rows(
    [
        [1, -3, -1, -1],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ]
)


def preset_action(preset_name: str) -> tuple[PlumbingGraph, GradedAction]:
    """Built-in (graph, action) pairs for dimensions where nothing is derived.

    ``a2-3pt-n1-t1``: two circles plumbed at three points; the action of the
    twist along the first circle on H_1 = Z^4, in the basis of the two circle
    classes and two cycle classes glued from arcs.
    """
    if preset_name != "a2-3pt-n1-t1":
        raise ValueError(f"unknown action preset {preset_name!r} (available: a2-3pt-n1-t1)")
    graph = PlumbingGraph(
        1,
        ("t1", "t2"),
        (("t1", "t2", 1), ("t1", "t2", 1), ("t1", "t2", 1)),
        (("t1", _A2_3PT_N1_T1),),
    )
    return graph, GradedAction({1: _A2_3PT_N1_T1})
