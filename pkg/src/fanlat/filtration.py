"""Codimension filtration of the relation lattice and its generation check.

Level k of the filtration is the sublattice generated by star-supported
relations of all nonzero cones of codimension at most k. The depth of a
relation is the smallest level containing it (None when no level does,
which happens on non-complete fans and under the exclusive policy).

local_decompose implements the generation argument constructively: a
global relation is split into pieces, one per ray, each a relation
supported inside that ray's star. Correction mass is pushed between
overlapping stars along shortest admissible chains until every piece is
a relation on its own.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import NotARelationError, NotCompleteError, NotSimplicialError, RoutingError
from .fan import ConeRef, Fan, is_complete, star
from .intlin import IntMatrix, Sublattice, lattice_equal, lattice_sum, member, solve_columns
from .lattices import RelLattice, SupportPolicy, rel_lattice, rel_lattice_star


@dataclass(frozen=True)
class FiltrationProfile:
    """Filtration levels 0..n with the cones that fed each level.

    contributing[k] lists (cone, star-kernel rank) for the cones of
    codimension exactly k whose star kernel is nonzero.
    """

    policy: SupportPolicy
    levels: tuple[Sublattice, ...]
    contributing: tuple[tuple[tuple[ConeRef, int], ...], ...]
    relation_lattice: RelLattice

    def depth_of(self, relation: Sequence[int]) -> Optional[int]:
        for k, level in enumerate(self.levels):
            if member(relation, level):
                return k
        return None

    @property
    def level_ranks(self) -> tuple[int, ...]:
        return tuple(level.rank for level in self.levels)


@dataclass(frozen=True)
class Decomposition:
    """A relation written as a sum of star-supported relations.

    pieces maps a ray index to the piece assigned to its star; pieces
    sum to the relation, each annihilates the ray matrix, and each is
    supported inside its star's ray set.
    """

    relation: tuple[int, ...]
    pieces: dict[int, tuple[int, ...]]


@dataclass(frozen=True)
class GenerationReport:
    policy: SupportPolicy
    complete: bool
    relation_rank: int
    level_ranks: tuple[int, ...]
    generated_at_penultimate: bool
    generated_at_top: bool
    violates_local_generation: bool


def filtration(fan: Fan, policy: SupportPolicy) -> FiltrationProfile:
    """Build every filtration level of the fan under the given policy."""
    n = fan.rank
    rel = rel_lattice(fan)
    by_codim: dict[int, list] = {k: [] for k in range(n + 1)}
    for cone in fan.cones:
        if cone.ray_indices and 0 <= cone.codim <= n:
            by_codim[cone.codim].append(cone)
    levels = []
    contributing = []
    current = Sublattice(len(fan.rays))
    for k in range(n + 1):
        parts = [current]
        contribs = []
        for cone in by_codim[k]:
            local = rel_lattice_star(fan, cone, policy).sublattice
            if local.rank:
                contribs.append((cone, local.rank))
                parts.append(local)
        current = lattice_sum(parts, ambient_rank=len(fan.rays))
        levels.append(current)
        contributing.append(tuple(contribs))
    return FiltrationProfile(policy=policy, levels=tuple(levels),
                             contributing=tuple(contributing), relation_lattice=rel)


def _require_relation(fan: Fan, r: Sequence[int], rel: RelLattice) -> tuple[int, ...]:
    r = tuple(r)
    if len(r) != len(fan.rays):
        raise NotARelationError(
            f"vector length {len(r)} does not match {len(fan.rays)} rays")
    if not member(r, rel.sublattice):
        raise NotARelationError(f"{r} is not a relation of this fan")
    return r


def depth(fan: Fan, r: Sequence[int], policy: SupportPolicy) -> Optional[int]:
    """Smallest filtration level containing r; None if unreachable."""
    rel = rel_lattice(fan)
    r = _require_relation(fan, r, rel)
    if not any(r):
        raise NotARelationError("depth of the zero relation is undefined")
    return filtration(fan, policy).depth_of(r)


def check_generation(fan: Fan, policy: SupportPolicy) -> GenerationReport:
    """Compare the top filtration levels against the full relation lattice.

    On complete fans the inclusive policy is expected to generate
    everything by codimension n-1 ("local generation"); the report says
    whether the chosen policy actually did.
    """
    profile = filtration(fan, policy)
    rel = profile.relation_lattice.sublattice
    n = fan.rank
    penult = profile.levels[n - 1] if n >= 1 else profile.levels[0]
    pen_ok = lattice_equal(penult, rel)
    top_ok = lattice_equal(profile.levels[n], rel)
    try:
        complete = is_complete(fan)
    except NotSimplicialError:
        complete = False
    return GenerationReport(
        policy=policy, complete=complete, relation_rank=rel.rank,
        level_ranks=profile.level_ranks,
        generated_at_penultimate=pen_ok, generated_at_top=top_ok,
        violates_local_generation=complete and not pen_ok)


def _star_ray_sets(fan: Fan) -> list[frozenset[int]]:
    sets = []
    for i in range(len(fan.rays)):
        _, ray_set = star(fan, fan.cone((i,)))
        sets.append(frozenset(ray_set))
    return sets


def _ray_submatrix(fan: Fan, support: Sequence[int]) -> IntMatrix:
    return IntMatrix.from_columns([fan.rays[i] for i in support], height=fan.rank)


def local_decompose(fan: Fan, r: Sequence[int]) -> Decomposition:
    """Split a global relation into star-supported relation pieces.

    Start with each coordinate of r sitting in its own ray's slot, then
    sweep the rays in input order: a slot whose piece fails to be a
    relation pushes its defect along a shortest chain of overlapping
    stars to a later slot, re-expressed at each hop over the shared
    rays. A chain edge is usable only when the shared-star ray lattice
    actually contains the defect; if no chain works, the defect is split
    into single-ray summands and each is routed on its own. Complete
    fans are required; a routing dead end raises RoutingError and should
    be treated as a bug.
    """
    if not is_complete(fan):
        raise NotCompleteError("local decomposition requires a complete fan")
    rel = rel_lattice(fan)
    r = _require_relation(fan, r, rel)
    if not any(r):
        return Decomposition(relation=r, pieces={})

    m = len(fan.rays)
    stars = _star_ray_sets(fan)
    support = [i for i in range(m) if r[i]]

    # A relation inside a single star is already a valid one-piece answer.
    for i in range(m):
        if all(j in stars[i] for j in support):
            return Decomposition(relation=r, pieces={i: r})

    slots = [[0] * m for _ in range(m)]
    for i in support:
        slots[i][i] = r[i]

    neighbors = [
        sorted(j for j in range(m) if j != i and stars[i] & stars[j])
        for i in range(m)
    ]
    ray_mat = fan.ray_matrix()

    admissible_cache: dict[tuple[frozenset, tuple], bool] = {}

    def admissible(a: int, b: int, defect: tuple[int, ...]) -> bool:
        shared = stars[a] & stars[b]
        key = (shared, defect)
        hit = admissible_cache.get(key)
        if hit is None:
            sub = Sublattice(fan.rank, [fan.rays[i] for i in sorted(shared)])
            hit = member(defect, sub)
            admissible_cache[key] = hit
        return hit

    def find_chain(src: int, defect: tuple[int, ...]) -> Optional[list[int]]:
        """Shortest chain over admissible edges from src to any later ray."""
        parent = {src: None}
        frontier = deque([src])
        while frontier:
            level_targets = [v for v in frontier if v > src]
            if level_targets:
                best = min(level_targets)
                chain = [best]
                while parent[chain[-1]] is not None:
                    chain.append(parent[chain[-1]])
                return list(reversed(chain))
            nxt = deque()
            for v in frontier:
                for w in neighbors[v]:
                    if w not in parent and admissible(v, w, defect):
                        parent[w] = v
                        nxt.append(w)
            frontier = nxt
        return None

    def push(chain: list[int], defect: tuple[int, ...]) -> None:
        for a, b in zip(chain, chain[1:]):
            shared = sorted(stars[a] & stars[b])
            y = solve_columns(_ray_submatrix(fan, shared), defect)
            if y is None:
                raise RoutingError(
                    f"admissible hop {a}->{b} failed to express defect {defect}")
            for pos, i in enumerate(shared):
                slots[a][i] -= y[pos]
                slots[b][i] += y[pos]

    for k in range(m):
        defect = ray_mat.mul_vector(slots[k])
        if not any(defect):
            continue
        if k == m - 1:
            raise RoutingError("last slot carries a nonzero defect; sum invariant broken")
        chain = find_chain(k, defect)
        if chain is not None:
            push(chain, defect)
            continue
        # Split the defect into single-ray summands and route each.
        moved = False
        snapshot = list(slots[k])
        for c in range(m):
            if snapshot[c] == 0:
                continue
            part = tuple(snapshot[c] * x for x in fan.rays[c])
            sub_chain = find_chain(k, part)
            if sub_chain is None:
                raise RoutingError(
                    f"no admissible route for the {c}-summand of slot {k}")
            push(sub_chain, part)
            moved = True
        if not moved or any(ray_mat.mul_vector(slots[k])):
            raise RoutingError(f"slot {k} still carries a defect after routing")

    pieces = {}
    for i in range(m):
        if any(slots[i]):
            pieces[i] = tuple(slots[i])

    _verify_decomposition(fan, r, pieces, stars, ray_mat)
    return Decomposition(relation=r, pieces=pieces)


def _verify_decomposition(fan, r, pieces, stars, ray_mat) -> None:
    total = [0] * len(r)
    for i, piece in pieces.items():
        if any(ray_mat.mul_vector(piece)):
            raise RoutingError(f"piece at ray {i} is not a relation")
        if any(piece[j] and j not in stars[i] for j in range(len(piece))):
            raise RoutingError(f"piece at ray {i} leaves its star support")
        total = [a + b for a, b in zip(total, piece)]
    if tuple(total) != tuple(r):
        raise RoutingError("pieces do not sum to the relation")
