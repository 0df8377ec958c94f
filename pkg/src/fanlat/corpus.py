"""Built-in catalog of small fans with frozen expected invariants.

Every `known` block is recomputed by the test suite on each run; the
values here were produced by the library itself and cross-checked with
the independent brute-force oracles in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fan import Fan, build_fan
from .refine import stellar_subdivide


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    fan: Fan
    known: dict = field(default_factory=dict)


def _p2() -> Fan:
    return build_fan(2, [(1, 0), (0, 1), (-1, -1)],
                     [(0, 1), (1, 2), (2, 0)], name="p2")


def _p1xp1() -> Fan:
    return build_fan(2, [(1, 0), (0, 1), (-1, 0), (0, -1)],
                     [(0, 1), (1, 2), (2, 3), (3, 0)], name="p1xp1")


def _p3() -> Fan:
    rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]
    return build_fan(3, rays, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)], name="p3")


def _p2xp1() -> Fan:
    rays = [(1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1), (0, 0, -1)]
    maximal = [(0, 1, 3), (1, 2, 3), (2, 0, 3), (0, 1, 4), (1, 2, 4), (2, 0, 4)]
    return build_fan(3, rays, maximal, name="p2xp1")


def _blowup_p2() -> Fan:
    base = _p2()
    out = stellar_subdivide(base, base.cone((0, 1)), (1, 1))
    return build_fan(out.rank, out.rays, [c.ray_indices for c in out.maximal_cones],
                     name="blowup_p2")


def _halfplane2() -> Fan:
    return build_fan(2, [(1, 1), (1, -1)], [(0, 1)], name="halfplane2")


def _sigma_c() -> Fan:
    # Square cone over (1,0,1),(0,1,1),(-1,0,1),(0,-1,1) split into two
    # simplicial cones along the diagonal plane through rays 0 and 2
    # (the plane containing primitive(u1+u3) = (0,0,1)), completed below
    # by the apex (0,0,-1) with four side cones.
    rays = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (0, 0, -1)]
    maximal = [(0, 1, 2), (0, 2, 3), (0, 1, 4), (1, 2, 4), (2, 3, 4), (0, 3, 4)]
    return build_fan(3, rays, maximal, name="sigma_c")


def catalog() -> list[CatalogEntry]:
    """All catalog entries, freshly built and validated."""
    inc, exc = "inclusive", "exclusive"
    return [
        CatalogEntry("p2", _p2(), {
            "complete": True,
            "relation_basis": ((1, 1, 1),),
            "ray_lattice_index": 1,
            "class_group": (1, ()),
            "depths": {inc: {(1, 1, 1): 1}, exc: {(1, 1, 1): None}},
        }),
        CatalogEntry("p1xp1", _p1xp1(), {
            "complete": True,
            "relation_basis": ((1, 0, 1, 0), (0, 1, 0, 1)),
            "ray_lattice_index": 1,
            "class_group": (2, ()),
            "depths": {inc: {(1, 0, 1, 0): 1, (0, 1, 0, 1): 1},
                       exc: {(1, 0, 1, 0): 1, (0, 1, 0, 1): 1}},
        }),
        CatalogEntry("p3", _p3(), {
            "complete": True,
            "relation_basis": ((1, 1, 1, 1),),
            "ray_lattice_index": 1,
            "class_group": (1, ()),
            "depths": {inc: {(1, 1, 1, 1): 1}, exc: {(1, 1, 1, 1): None}},
        }),
        CatalogEntry("p2xp1", _p2xp1(), {
            "complete": True,
            "relation_basis": ((1, 1, 1, 0, 0), (0, 0, 0, 1, 1)),
            "ray_lattice_index": 1,
            "class_group": (2, ()),
            "depths": {inc: {(1, 1, 1, 0, 0): 1, (0, 0, 0, 1, 1): 1},
                       exc: {(1, 1, 1, 0, 0): 2, (0, 0, 0, 1, 1): 1}},
        }),
        CatalogEntry("blowup_p2", _blowup_p2(), {
            "complete": True,
            "relation_basis": ((1, 1, 0, -1), (0, 0, 1, 1)),
            "ray_lattice_index": 1,
            "class_group": (2, ()),
            "depths": {inc: {(1, 1, 0, -1): 1, (0, 0, 1, 1): 1},
                       exc: {(1, 1, 0, -1): None, (0, 0, 1, 1): 1}},
        }),
        CatalogEntry("halfplane2", _halfplane2(), {
            "complete": False,
            "relation_basis": (),
            "ray_lattice_index": 2,
            "class_group": (0, (2,)),
            "depths": {inc: {}, exc: {}},
        }),
        CatalogEntry("sigma_c", _sigma_c(), {
            "complete": True,
            "relation_basis": ((1, 0, 1, 0, 2), (0, 1, 0, 1, 2)),
            "ray_lattice_index": 1,
            "class_group": (2, ()),
            "depths": {inc: {(1, 0, 1, 0, 2): 1, (0, 1, 0, 1, 2): 1},
                       exc: {(1, 0, 1, 0, 2): 2, (0, 1, 0, 1, 2): 2}},
        }),
    ]


def catalog_entry(name: str) -> CatalogEntry:
    for entry in catalog():
        if entry.name == name:
            return entry
    raise KeyError(f"no catalog entry named {name!r}")
