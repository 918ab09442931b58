"""Exact homology of mapping tori and of fiber bundles over punctured surfaces.

For a fiber V with free graded homology and monodromies phi^1, ..., phi^m
(one per circle in a wedge the base retracts to; a genus-g surface with one
boundary component gives m = 2g), form in each degree k the block difference
map

    D_k = [ phi^1_k - I | phi^2_k - I | ... | phi^m_k - I ],

an r_k x (m r_k) integer matrix, r_k = rank H_k(V). The mapping-cone long
exact sequence then splits the total-space homology as

    H_k(E) = coker(D_k)  (+)  Z^(kernel rank of D_{k-1}),

with no extension problem: the kernel term is a subgroup of a free group,
hence free. Note the orientation of the sequence: the cokernel contributes in
its own degree, the kernel one degree up. (Reading the Wang sequence the other
way shifts the torsion up by one; the mapping torus of a degree-d circle map,
with H_1 = Z + Z/(d-1), pins the orientation used here.)

``boundary_check`` verifies the commutator condition a genus-g representation
must satisfy on homology for the boundary to act trivially; it is a necessary
condition at homology level, not a sufficient one for an actual symplectic
representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .exact_linalg import (
    AbelianGroup,
    IntMatrix,
    cokernel_group,
    kernel_rank,
    mat_sub,
)
from .plumbing import GradedGroup
from .twist_engine import GradedAction


@dataclass(frozen=True)
class Representation:
    """Assignments for the 2g free generators a_1, b_1, ..., a_g, b_g."""

    genus: int
    assignments: tuple[GradedAction, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignments", tuple(self.assignments))
        if not isinstance(self.genus, int) or self.genus < 1:
            raise ValueError(f"genus must be an integer >= 1, got {self.genus!r}")
        if len(self.assignments) != 2 * self.genus:
            raise ValueError(
                f"expected {2 * self.genus} assignments for genus {self.genus}, "
                f"got {len(self.assignments)}"
            )


class WangPieces:
    """Per-degree cokernel and kernel rank of the block difference map."""

    __slots__ = ("_pieces",)

    def __init__(self, pieces: Mapping[int, tuple[AbelianGroup, int]]):
        self._pieces = {k: pieces[k] for k in sorted(pieces)}

    def degrees(self) -> tuple[int, ...]:
        return tuple(self._pieces)

    def coker(self, degree: int) -> AbelianGroup:
        piece = self._pieces.get(degree)
        return piece[0] if piece else AbelianGroup(0)

    def ker_rank(self, degree: int) -> int:
        piece = self._pieces.get(degree)
        return piece[1] if piece else 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WangPieces) and self._pieces == other._pieces

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: ({c}, ker {r})" for k, (c, r) in self._pieces.items())
        return f"WangPieces({{{body}}})"


def wang_pieces(base: GradedGroup, monodromies: Sequence[GradedAction]) -> WangPieces:
    """Cokernel and kernel rank of D_k in every degree where the base lives.

    The base must be free (true for every plumbing). Monodromies must respect
    the base ranks and fix degree 0, where connectivity forces the identity.
    """
    if not monodromies:
        raise ValueError("at least one monodromy is required")
    if not base.is_free():
        raise ValueError("base homology must be free in every degree")
    for action in monodromies:
        for k, m in action.items():
            if m.rows != base.rank(k):
                raise ValueError(
                    f"rank mismatch in degree {k}: base has rank {base.rank(k)}, "
                    f"action stores a {m.rows}x{m.cols} matrix"
                )
        zero = action.matrix(0, base.rank(0))
        if not zero.is_identity():
            raise ValueError("monodromies must act as the identity on degree 0")
    pieces: dict[int, tuple[AbelianGroup, int]] = {}
    for k in base.degrees():
        r = base.rank(k)
        ident = IntMatrix.identity(r)
        blocks = [mat_sub(action.matrix(k, r), ident) for action in monodromies]
        diff = _hconcat(blocks)
        pieces[k] = (cokernel_group(diff), kernel_rank(diff))
    return WangPieces(pieces)


def _hconcat(blocks: Sequence[IntMatrix]) -> IntMatrix:
    rows = blocks[0].rows
    out = []
    for i in range(rows):
        for b in blocks:
            out.extend(b.row(i))
    return IntMatrix(rows, sum(b.cols for b in blocks), out)


def _total_space_homology(base: GradedGroup, monodromies: Sequence[GradedAction]) -> GradedGroup:
    pieces = wang_pieces(base, monodromies)
    degrees = set(pieces.degrees()) | {k + 1 for k in pieces.degrees()}
    groups = {}
    for k in sorted(degrees):
        coker = pieces.coker(k)
        free = coker.free_rank + pieces.ker_rank(k - 1)
        groups[k] = AbelianGroup(free, coker.invariant_factors)
    return GradedGroup(groups)


def mapping_torus_homology(base: GradedGroup, phi: GradedAction) -> GradedGroup:
    """Homology of the mapping torus of phi (the m = 1 case)."""
    return _total_space_homology(base, [phi])


def surface_bundle_homology(base: GradedGroup, rep: Representation) -> GradedGroup:
    """Homology of the V-bundle over a genus-g one-boundary surface.

    Only the homotopy type of the base enters: the surface retracts to a wedge
    of 2g circles, whose monodromies are the representation's assignments.
    """
    return _total_space_homology(base, list(rep.assignments))


@dataclass(frozen=True)
class BoundaryCheck:
    """Outcome of the homology-level boundary condition."""

    ok: bool
    failing_degrees: tuple[int, ...] = ()


def boundary_check(rep: Representation) -> BoundaryCheck:
    """Check that the product of commutators [A_i, B_i] is the identity.

    This is what the boundary word of the surface evaluates to on homology;
    identity is necessary for the representation to send the boundary to the
    identity, not sufficient beyond homology.
    """
    total = GradedAction({})
    for i in range(rep.genus):
        a = rep.assignments[2 * i]
        b = rep.assignments[2 * i + 1]
        commutator = a.compose(b).compose(a.inverse()).compose(b.inverse())
        total = total.compose(commutator)
    failing = tuple(k for k, m in total.items() if not m.is_identity())
    return BoundaryCheck(not failing, failing)
