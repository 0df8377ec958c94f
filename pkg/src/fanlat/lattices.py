"""Canonical global and star-local lattice invariants of a fan.

The relation lattice is the integer kernel of the map sending the basis
vector of a ray to its primitive vector. Star variants restrict that
map to a star's ray set; the support policy decides whether the rays of
the defining cone participate (inclusive) or not (exclusive). Local
lattices are re-embedded into the global ray coordinates by extension
with zeros, so they can be compared and summed there.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import FanValidationError
from .fan import ConeRef, Fan, localize, star
from .intlin import IntMatrix, Sublattice, integer_kernel, snf, sublattice_index


class SupportPolicy(enum.Enum):
    """Which rays a star-supported relation may touch.

    INCLUSIVE takes the kernel over every ray of the star; EXCLUSIVE
    drops the rays of the cone itself first. The two readings genuinely
    disagree on some fans, so both are first-class and reports can
    compare them.
    """

    INCLUSIVE = "inclusive"
    EXCLUSIVE = "exclusive"


@dataclass(frozen=True)
class RayLattice:
    """Sublattice of the ambient lattice generated by the ray vectors."""

    sublattice: Sublattice
    index_in_ambient: Optional[int]  # None means infinite (rank deficient)

    @property
    def rank(self) -> int:
        return self.sublattice.rank


@dataclass(frozen=True)
class RelLattice:
    """Lattice of integer relations among labeled rays.

    ray_labels name the coordinates of the ambient free group; for
    star/internal lattices these are global ray indices, for localized
    lattices they are the base-ray origins of the quotient rays.
    """

    ray_labels: tuple
    sublattice: Sublattice

    @property
    def rank(self) -> int:
        return self.sublattice.rank

    @property
    def basis_rows(self):
        return self.sublattice.basis_rows


@dataclass(frozen=True)
class ClassGroup:
    free_rank: int
    torsion: tuple[int, ...]


def ray_lattice(fan: Fan) -> RayLattice:
    sub = Sublattice(fan.rank, fan.rays)
    return RayLattice(sublattice=sub, index_in_ambient=sublattice_index(sub))


def rel_lattice(fan: Fan) -> RelLattice:
    """Kernel of the full ray matrix, labeled by the fan's ray indices."""
    kernel = integer_kernel(fan.ray_matrix())
    return RelLattice(ray_labels=tuple(range(len(fan.rays))), sublattice=kernel)


def _embedded_kernel(fan: Fan, support: Sequence[int]) -> Sublattice:
    """Kernel over the given ray subset, zero-extended to global coordinates."""
    m = len(fan.rays)
    cols = IntMatrix.from_columns([fan.rays[i] for i in support], height=fan.rank)
    kernel = integer_kernel(cols)
    gens = []
    for row in kernel.basis_rows:
        vec = [0] * m
        for pos, i in enumerate(support):
            vec[i] = row[pos]
        gens.append(vec)
    return Sublattice(m, gens)


def rel_lattice_star(fan: Fan, tau: ConeRef, policy: SupportPolicy) -> RelLattice:
    """Relations supported on the star of tau, in global ray coordinates."""
    if not tau.ray_indices:
        raise FanValidationError("the zero cone has no star-supported relation lattice")
    _, ray_set = star(fan, tau)
    if policy is SupportPolicy.EXCLUSIVE:
        support = [i for i in ray_set if i not in tau.ray_indices]
    else:
        support = list(ray_set)
    return RelLattice(ray_labels=tuple(range(len(fan.rays))),
                      sublattice=_embedded_kernel(fan, support))


def rel_lattice_internal(fan: Fan, tau: ConeRef) -> RelLattice:
    """Relations among tau's own rays, in global ray coordinates."""
    tau = fan.cone(tau.ray_indices)
    return RelLattice(ray_labels=tuple(range(len(fan.rays))),
                      sublattice=_embedded_kernel(fan, list(tau.ray_indices)))


def rel_lattice_localized(fan: Fan, tau: ConeRef) -> RelLattice:
    """Relation lattice of the localized (quotient) fan at tau.

    Coordinates are the quotient rays; labels carry the base-ray index
    each quotient ray came from.
    """
    q = localize(fan, tau)
    cols = IntMatrix.from_columns(q.rays, height=q.quotient_rank)
    return RelLattice(ray_labels=q.ray_origin, sublattice=integer_kernel(cols))


def class_group(fan: Fan) -> ClassGroup:
    """Cokernel of the dual ray map, as free rank plus invariant factors.

    The map sends a dual vector to its pairings with every ray; its
    cokernel is computed from the Smith normal form. Requires the rays
    to span rationally.
    """
    m = len(fan.rays)
    a = IntMatrix(fan.rays, cols=fan.rank)  # m x n, rows pair dual vectors with rays
    s, _, _ = snf(a)
    diag = [s.entries[i][i] for i in range(min(s.rows, s.cols))]
    rank = sum(1 for d in diag if d)
    if rank < fan.rank:
        raise FanValidationError("rays do not span the ambient lattice rationally")
    torsion = tuple(d for d in diag if d > 1)
    return ClassGroup(free_rank=m - rank, torsion=torsion)
