"""The k-indexed family of filling candidates and its homology classification.

For a plumbing V with a twist word phi, the representation (phi^k, Id) of the
once-punctured torus group gives a V-bundle E_k for every k >= 1. The graded
integer homology of E_k carries torsion coker(phi^k_* - Id) in the middle
degree, so the family is distinguished by exact homology alone. The report
records, per k, the full graded group, the torsion in the distinguished
degree, and a distinctness class; ks with trivial torsion are flagged rather
than assumed distinct.

``torsion_closed_form`` cross-checks the 2x2 determinant-1 case: with
eigenvalues l, 1/l the torsion cardinality is |det(M^k - I)| = |2 - t_k|,
where t_k = trace(M^k) satisfies t_k = t(M) t_{k-1} - t_{k-2}, t_0 = 2. The
recurrence stays in exact integers throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bundle_homology import Representation, boundary_check, surface_bundle_homology
from .exact_linalg import IntMatrix, det
from .plumbing import GradedGroup, PlumbingGraph, base_homology
from .twist_engine import GradedAction, TwistWord, preset_action, word_action

INDEXING_NOTE = (
    "cokernel torsion is reported in its own degree (mapping-cone orientation "
    "of the Wang sequence); the opposite reading places it one degree higher"
)


@dataclass(frozen=True)
class FillingEntry:
    k: int
    homology: GradedGroup
    torsion_factors: tuple[int, ...]
    torsion_cardinality: int
    boundary_ok: bool
    class_id: int


@dataclass(frozen=True)
class FillingReport:
    """Per-k homology of the filling family plus distinctness classes."""

    graph: PlumbingGraph
    word: str
    k_max: int
    torsion_degree: int
    indexing_note: str
    entries: tuple[FillingEntry, ...]
    distinct_classes: int
    trivial_torsion_ks: tuple[int, ...]


def filling_family(
    graph: PlumbingGraph, word: TwistWord | str, k_max: int
) -> FillingReport:
    """Build the family E_k, k = 1..k_max, and classify by graded homology.

    ``word`` is a TwistWord over the graph, or the name of a built-in action
    preset (whose graph must equal the one supplied).
    """
    if not isinstance(k_max, int) or k_max < 1:
        raise ValueError(f"k_max must be an integer >= 1, got {k_max!r}")
    if isinstance(word, str):
        preset_graph, generator = preset_action(word)
        if preset_graph != graph:
            raise ValueError(f"action preset {word!r} belongs to a different graph")
        word_text = word
    else:
        generator = word_action(graph, word)
        word_text = str(word)
    base = base_homology(graph)
    degree = graph.dimension
    identity = GradedAction({})
    homologies: list[GradedGroup] = []
    raw: list[tuple[int, GradedGroup, tuple[int, ...], int, bool]] = []
    for k in range(1, k_max + 1):
        rep = Representation(1, (generator.power(k), identity))
        check = boundary_check(rep)
        homology = surface_bundle_homology(base, rep)
        torsion = homology.group(degree)
        homologies.append(homology)
        raw.append((k, homology, torsion.invariant_factors, torsion.torsion_cardinality, check.ok))
    classes = classify_distinct(homologies)
    entries = tuple(
        FillingEntry(k, hom, factors, cardinality, ok, class_id)
        for (k, hom, factors, cardinality, ok), class_id in zip(raw, classes)
    )
    return FillingReport(
        graph=graph,
        word=word_text,
        k_max=k_max,
        torsion_degree=degree,
        indexing_note=INDEXING_NOTE,
        entries=entries,
        distinct_classes=len(set(classes)),
        trivial_torsion_ks=tuple(e.k for e in entries if e.torsion_cardinality == 1),
    )


def classify_distinct(reports: Sequence[GradedGroup]) -> list[int]:
    """Class ids (1-based, numbered by first occurrence) under exact equality."""
    ids: list[int] = []
    seen: list[GradedGroup] = []
    for group in reports:
        for idx, other in enumerate(seen):
            if group == other:
                ids.append(idx + 1)
                break
        else:
            seen.append(group)
            ids.append(len(seen))
    return ids


def torsion_closed_form(action: IntMatrix, k: int) -> int:
    """|2 - trace(M^k)| for a 2x2 determinant-1 matrix, by integer recurrence.

    Equals |det(M^k - I)|, the torsion cardinality of the cokernel of
    M^k - I when that matrix is nonsingular. No irrational arithmetic: the
    eigenvalues enter only through trace(M) and det(M) = 1.
    """
    if action.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got {action.rows}x{action.cols}")
    if det(action) != 1:
        raise ValueError(f"determinant must be 1, got {det(action)}")
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"k must be a nonnegative integer, got {k!r}")
    trace = action.entry(0, 0) + action.entry(1, 1)
    t_prev, t_cur = 2, trace
    if k == 0:
        return 0
    for _ in range(k - 1):
        t_prev, t_cur = t_cur, trace * t_cur - t_prev
    return abs(2 - t_cur)
