"""Rational fan data model.

Cones are stored combinatorially as sorted tuples of ray indices;
geometry is reconstructed from the primitive ray vectors on demand.
Simplicial fans get exact pairwise-intersection validation (Fourier-
Motzkin over the integers) up to a size guard, then a sampled fallback
that marks the fan partially validated. Non-simplicial input is
accepted only with an explicit full cone list and trust=True.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import FanValidationError, InternalCheckError, NotSimplicialError
from .intlin import IntMatrix, hnf, matrix_rank, snf
from .qsolve import FMSizeExceeded, cone_pair_proper, in_simplicial_cone

# Exact pairwise validation runs below these bounds; above them the
# sampled fallback is used and the fan is marked "partially validated".
FULL_VALIDATION_MAX_RANK = 4
FULL_VALIDATION_MAX_PAIRS = 2000
_SAMPLES_PER_CONE = 20
_COVER_SAMPLES = 40


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """v divided by the (positive) gcd of its entries; direction kept."""
    if not any(v):
        raise ValueError("zero vector has no primitive form")
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    return tuple(x // g for x in v)


@dataclass(frozen=True)
class ConeRef:
    """A cone of a fan: sorted ray indices plus cached dimension data."""

    ray_indices: tuple[int, ...]
    dim: int
    codim: int

    def sort_key(self):
        return (self.dim, self.ray_indices)


@dataclass(frozen=True)
class QuotientFan:
    """Image of a star in the quotient modulo the saturated span of tau.

    rays are the primitive images of the star rays outside tau, one per
    base ray (two base rays may share an image; they stay distinct here,
    with a warning recorded). ray_origin maps quotient ray index back to
    the base ray index.
    """

    base: "Fan"
    tau: ConeRef
    quotient_rank: int
    projection: IntMatrix
    rays: tuple[tuple[int, ...], ...]
    ray_origin: tuple[int, ...]
    cones: frozenset
    warnings: tuple[str, ...]


class Fan:
    """Validated rational fan: primitive rays plus a face-closed cone set."""

    __slots__ = ("rank", "rays", "simplicial", "name", "asserted_complete",
                 "validation", "warnings", "_cones", "_maximal")

    def __init__(self, rank, rays, cones, simplicial, name=None,
                 asserted_complete=None, validation="full", warnings=()):
        self.rank = rank
        self.rays = tuple(tuple(v) for v in rays)
        self._cones = dict(cones)
        self.simplicial = simplicial
        self.name = name
        self.asserted_complete = asserted_complete
        self.validation = validation
        self.warnings = tuple(warnings)
        self._maximal = None

    @property
    def cones(self) -> tuple[ConeRef, ...]:
        return tuple(sorted(self._cones.values(), key=ConeRef.sort_key))

    @property
    def maximal_cones(self) -> tuple[ConeRef, ...]:
        if self._maximal is None:
            keys = list(self._cones)
            maximal = []
            for k in keys:
                sk = set(k)
                if not any(sk < set(other) for other in keys):
                    maximal.append(self._cones[k])
            self._maximal = tuple(sorted(maximal, key=ConeRef.sort_key))
        return self._maximal

    @property
    def zero_cone(self) -> ConeRef:
        return self._cones[()]

    def cone(self, ray_indices: Iterable[int]) -> ConeRef:
        key = tuple(sorted(ray_indices))
        try:
            return self._cones[key]
        except KeyError:
            raise FanValidationError(f"no cone with ray indices {key}") from None

    def has_cone(self, ray_indices: Iterable[int]) -> bool:
        return tuple(sorted(ray_indices)) in self._cones

    def ray_matrix(self) -> IntMatrix:
        """rank x nrays matrix whose columns are the primitive ray vectors."""
        return IntMatrix.from_columns(self.rays, height=self.rank)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Fan):
            return NotImplemented
        return (self.rank == other.rank and self.rays == other.rays
                and set(self._cones) == set(other._cones))

    def __hash__(self) -> int:
        return hash((self.rank, self.rays, frozenset(self._cones)))

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return (f"Fan{label}(rank {self.rank}, {len(self.rays)} rays, "
                f"{len(self._cones)} cones)")


def _cone_dim(ray_vectors, idxs) -> int:
    if not idxs:
        return 0
    return matrix_rank(IntMatrix([ray_vectors[i] for i in idxs]))


def build_fan(rank: int, ray_vectors: Sequence[Sequence[int]],
              maximal_cones: Sequence[Iterable[int]], *,
              cones: Optional[Sequence[Iterable[int]]] = None,
              trust: bool = False, name: Optional[str] = None,
              assert_complete: Optional[bool] = None) -> Fan:
    """Validate input data and construct a Fan.

    Rays are normalized to primitive vectors (a duplicate after
    normalization is an error). For simplicial input every subset of a
    maximal cone becomes a face. Non-simplicial input needs an explicit
    full cone list and trust=True; trust also skips the pairwise
    intersection validation for simplicial fans.
    """
    if rank < 0:
        raise FanValidationError("rank must be nonnegative")
    rays = []
    for v in ray_vectors:
        v = tuple(v)
        if len(v) != rank:
            raise FanValidationError(f"ray {v} does not have length {rank}")
        if not any(v):
            raise FanValidationError("zero ray")
        p = primitive(v)
        if p in rays:
            raise FanValidationError(f"duplicate ray after primitivization: {p}")
        rays.append(p)

    gens = []
    for c in maximal_cones:
        key = tuple(sorted(c))
        if len(set(key)) != len(key):
            raise FanValidationError(f"repeated ray index in cone {key}")
        for i in key:
            if not 0 <= i < len(rays):
                raise FanValidationError(f"ray index {i} out of range")
        gens.append(key)
    used = {i for c in gens for i in c}
    if used != set(range(len(rays))):
        missing = sorted(set(range(len(rays))) - used)
        raise FanValidationError(f"rays {missing} appear in no maximal cone")

    simplicial = all(_cone_dim(rays, c) == len(c) for c in gens)
    warnings = []

    if simplicial:
        cone_map = {(): ConeRef((), 0, rank)}
        for c in gens:
            for size in range(1, len(c) + 1):
                for face in combinations(c, size):
                    cone_map.setdefault(face, ConeRef(face, size, rank - size))
        validation = "trusted" if trust else None
        fan = Fan(rank, rays, cone_map, True, name=name,
                  asserted_complete=assert_complete, validation=validation or "full")
        if not trust:
            level = _validate_pairwise(fan)
            fan.validation = level
            if level == "partial":
                warnings.append("pairwise intersection validation was sampled, not exact")
                fan.warnings = tuple(warnings)
        return fan

    # Non-simplicial path.
    if cones is None or not trust:
        raise FanValidationError(
            "non-simplicial input requires an explicit full cone list and trust=True")
    cone_map = {(): ConeRef((), 0, rank)}
    for c in cones:
        key = tuple(sorted(c))
        for i in key:
            if not 0 <= i < len(rays):
                raise FanValidationError(f"ray index {i} out of range in cone list")
        d = _cone_dim(rays, key)
        cone_map.setdefault(key, ConeRef(key, d, rank - d))
    for c in gens:
        if c not in cone_map:
            raise FanValidationError(f"maximal cone {c} missing from the full cone list")
    return Fan(rank, rays, cone_map, False, name=name,
               asserted_complete=assert_complete, validation="trusted",
               warnings=("non-simplicial fan accepted on trust",))


def _validate_pairwise(fan: Fan) -> str:
    """Exact FM check that maximal cones intersect in their common face.

    For simplicial fans it suffices to test maximal pairs: faces are
    generator subsets, so proper maximal intersections force proper
    intersections everywhere. Returns the achieved validation level.
    """
    maximal = [c.ray_indices for c in fan.maximal_cones if c.ray_indices]
    pairs = list(combinations(maximal, 2))
    if fan.rank <= FULL_VALIDATION_MAX_RANK and len(pairs) <= FULL_VALIDATION_MAX_PAIRS:
        try:
            for s1, s2 in pairs:
                if not cone_pair_proper(fan.rays, s1, s2):
                    raise FanValidationError(
                        f"cones {s1} and {s2} intersect outside their common face")
            return "full"
        except FMSizeExceeded:
            pass
    _validate_pairwise_sampled(fan, pairs)
    return "partial"


def _validate_pairwise_sampled(fan: Fan, pairs) -> None:
    rng = random.Random(20260811)
    for s1, s2 in pairs:
        shared = sorted(set(s1) & set(s2))
        shared_vecs = [fan.rays[i] for i in shared]
        for a, b in ((s1, s2), (s2, s1)):
            a_vecs = [fan.rays[i] for i in a]
            b_vecs = [fan.rays[i] for i in b]
            for _ in range(_SAMPLES_PER_CONE):
                coeffs = [rng.randint(0, 3) for _ in a]
                x = tuple(sum(c * v[j] for c, v in zip(coeffs, a_vecs))
                          for j in range(fan.rank))
                if not any(x) or not in_simplicial_cone(b_vecs, x):
                    continue
                if not in_simplicial_cone(shared_vecs, x):
                    raise FanValidationError(
                        f"sampled point of cone {a} lies in cone {b} outside the shared face")


def star(fan: Fan, tau: ConeRef) -> tuple[tuple[ConeRef, ...], tuple[int, ...]]:
    """All cones having tau as a face, plus the union of their ray indices."""
    if not fan.has_cone(tau.ray_indices):
        raise FanValidationError(f"cone {tau.ray_indices} is not in the fan")
    t = set(tau.ray_indices)
    members = [c for c in fan.cones if t <= set(c.ray_indices)]
    ray_set = sorted({i for c in members for i in c.ray_indices})
    return tuple(members), tuple(ray_set)


def is_complete(fan: Fan) -> bool:
    """Exact completeness test for simplicial fans.

    Checks full-dimensional maximal cones, every ridge shared by exactly
    two maximal cones, and a connected adjacency graph; a seeded sampled
    cover check guards the positive verdict. Non-simplicial fans are
    only handled through an explicit completeness assertion in their
    metadata.
    """
    if not fan.simplicial:
        if fan.asserted_complete is not None:
            return fan.asserted_complete
        raise NotSimplicialError(
            "completeness is only decided for simplicial fans; "
            "assert it via metadata for non-simplicial input")
    maximal = [c for c in fan.maximal_cones if c.ray_indices]
    if not maximal:
        return fan.rank == 0
    if any(c.dim != fan.rank for c in maximal):
        return False
    ridge_hits = {}
    for c in fan.cones:
        if c.dim == fan.rank - 1:
            ridge_hits[c.ray_indices] = []
    for ridge in ridge_hits:
        rs = set(ridge)
        for mc in maximal:
            if rs <= set(mc.ray_indices):
                ridge_hits[ridge].append(mc.ray_indices)
    if any(len(hits) != 2 for hits in ridge_hits.values()):
        return False
    # Connectivity of the facet-adjacency graph.
    index = {mc.ray_indices: i for i, mc in enumerate(maximal)}
    seen = {0}
    queue = [0]
    adj = {i: set() for i in range(len(maximal))}
    for hits in ridge_hits.values():
        a, b = index[hits[0]], index[hits[1]]
        adj[a].add(b)
        adj[b].add(a)
    while queue:
        cur = queue.pop()
        for nxt in adj[cur]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    if len(seen) != len(maximal):
        return False
    _cover_cross_check(fan, maximal)
    return True


def _cover_cross_check(fan: Fan, maximal) -> None:
    """Sampled points must land in some maximal cone when the fan looks complete."""
    rng = random.Random(0xC0FFEE)
    cone_vecs = [[fan.rays[i] for i in mc.ray_indices] for mc in maximal]
    for _ in range(_COVER_SAMPLES):
        x = tuple(rng.randint(-9, 9) for _ in range(fan.rank))
        if not any(x):
            continue
        if not any(in_simplicial_cone(vecs, x) for vecs in cone_vecs):
            raise InternalCheckError(
                f"completeness verdict contradicted: point {x} is uncovered")


def localize(fan: Fan, tau: ConeRef) -> QuotientFan:
    """The star of tau pushed to the quotient modulo tau's saturated span.

    The projection is read off the Smith normal form of the matrix of
    tau's ray vectors: the rows of the left transform past the rank
    form a basis of the maps vanishing on the saturated span.
    """
    tau = fan.cone(tau.ray_indices)
    tmat = IntMatrix.from_columns([fan.rays[i] for i in tau.ray_indices], height=fan.rank)
    s, u, _ = snf(tmat)
    d = sum(1 for i in range(min(s.rows, s.cols)) if s.entries[i][i])
    proj = IntMatrix([u.row(i) for i in range(d, fan.rank)], cols=fan.rank)
    for i in tau.ray_indices:
        if any(proj.mul_vector(fan.rays[i])):
            raise InternalCheckError("projection does not vanish on the cone's rays")
    star_cones, star_rays = star(fan, tau)
    outside = [i for i in star_rays if i not in tau.ray_indices]
    warnings = []
    images = []
    for i in outside:
        img = proj.mul_vector(fan.rays[i])
        if not any(img):
            raise InternalCheckError(
                f"star ray {i} outside the cone projects to zero")
        images.append(primitive(img))
    if len(set(images)) < len(images):
        warnings.append("distinct star rays share a primitive image; "
                        "kept as distinct labeled quotient rays")
    pos = {ray: k for k, ray in enumerate(outside)}
    qcones = frozenset(
        tuple(sorted(pos[i] for i in c.ray_indices if i in pos)) for c in star_cones)
    return QuotientFan(
        base=fan, tau=tau, quotient_rank=fan.rank - d, projection=proj,
        rays=tuple(images), ray_origin=tuple(outside), cones=qcones,
        warnings=tuple(warnings))


def apply_unimodular(fan: Fan, u: IntMatrix) -> Fan:
    """Image fan with rays u @ v; combinatorics are untouched."""
    if u.rows != fan.rank or u.cols != fan.rank:
        raise ValueError(f"transform must be {fan.rank}x{fan.rank}")
    h, _ = hnf(u)
    if h != IntMatrix.identity(fan.rank):
        raise ValueError("matrix is not unimodular")
    new_rays = []
    for v in fan.rays:
        w = u.mul_vector(v)
        if w != primitive(w):
            raise InternalCheckError("unimodular image of a primitive ray is imprimitive")
        new_rays.append(w)
    return Fan(fan.rank, new_rays, fan._cones, fan.simplicial, name=fan.name,
               asserted_complete=fan.asserted_complete, validation=fan.validation,
               warnings=fan.warnings)
