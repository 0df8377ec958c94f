import random

import pytest

import oracles
from fanlat.corpus import catalog, catalog_entry
from fanlat.errors import FanValidationError, NotARelationError
from fanlat.fan import is_complete
from fanlat.lattices import SupportPolicy, rel_lattice
from fanlat.refine import (conjecture_scan, random_stellar_draw,
                           refinement_injection, stellar_subdivide)

INC = SupportPolicy.INCLUSIVE
EXC = SupportPolicy.EXCLUSIVE


class TestStellarSubdivide:
    def test_p2_blowup(self):
        fan = catalog_entry("p2").fan
        refined = stellar_subdivide(fan, fan.cone((0, 1)), (1, 1))
        assert len(refined.rays) == 4
        assert len(refined.maximal_cones) == 4
        assert is_complete(refined)

    def test_existing_ray_rejected(self):
        fan = catalog_entry("p2").fan
        with pytest.raises(FanValidationError, match="already a ray"):
            stellar_subdivide(fan, fan.cone((0, 1)), (1, 0))

    def test_boundary_point_rejected(self):
        fan = catalog_entry("p3").fan
        # (1, 1, 0) sits on a proper face of the cone over rays 0, 1, 2
        with pytest.raises(FanValidationError, match="relative interior"):
            stellar_subdivide(fan, fan.cone((0, 1, 2)), (1, 1, 0))

    def test_outside_point_rejected(self):
        fan = catalog_entry("p2").fan
        with pytest.raises(FanValidationError, match="relative interior"):
            stellar_subdivide(fan, fan.cone((0, 1)), (-1, -2))

    def test_p3_maximal_cone_counts(self):
        fan = catalog_entry("p3").fan
        refined = stellar_subdivide(fan, fan.cone((0, 1, 2)), (1, 1, 1))
        assert len(refined.rays) == 5
        assert len(refined.maximal_cones) == 6
        assert is_complete(refined)

    def test_input_ray_normalized(self):
        fan = catalog_entry("p2").fan
        refined = stellar_subdivide(fan, fan.cone((0, 1)), (2, 2))
        assert refined.rays[-1] == (1, 1)

    def test_completeness_preserved_across_catalog(self):
        rng = random.Random(99)
        for entry in catalog():
            draw = random_stellar_draw(entry.fan, rng)
            if draw is None:
                continue
            cone, w = draw
            refined = stellar_subdivide(entry.fan, cone, w)
            if entry.known["complete"]:
                assert is_complete(refined), entry.name


class TestRefinementInjection:
    def test_zero_padding(self):
        fan = catalog_entry("p2").fan
        refined = stellar_subdivide(fan, fan.cone((0, 1)), (1, 1))
        assert refinement_injection(fan, refined, (1, 1, 1)) == (1, 1, 1, 0)

    def test_zero_maps_to_zero(self):
        fan = catalog_entry("p2").fan
        refined = stellar_subdivide(fan, fan.cone((0, 1)), (1, 1))
        assert refinement_injection(fan, refined, (0, 0, 0)) == (0, 0, 0, 0)

    def test_image_annihilates_refined_rays(self):
        rng = random.Random(4)
        for name in ("p2xp1", "p1xp1", "sigma_c"):
            fan = catalog_entry(name).fan
            cone, w = random_stellar_draw(fan, rng)
            refined = stellar_subdivide(fan, cone, w)
            ray_rows = [list(v) for v in refined.rays]
            for r in rel_lattice(fan).basis_rows:
                padded = refinement_injection(fan, refined, r)
                assert not any(oracles.matmul([list(padded)], ray_rows)[0])

    def test_ray_mismatch_rejected(self):
        p2 = catalog_entry("p2").fan
        p1xp1 = catalog_entry("p1xp1").fan
        with pytest.raises(FanValidationError):
            refinement_injection(p2, p1xp1, (1, 1, 1))

    def test_non_relation_rejected(self):
        fan = catalog_entry("p2").fan
        refined = stellar_subdivide(fan, fan.cone((0, 1)), (1, 1))
        with pytest.raises(NotARelationError):
            refinement_injection(fan, refined, (1, 0, 0))

    def test_rank_grows_by_new_rays(self):
        rng = random.Random(12)
        for entry in catalog():
            draw = random_stellar_draw(entry.fan, rng)
            if draw is None:
                continue
            refined = stellar_subdivide(entry.fan, *draw)
            assert (rel_lattice(refined).rank
                    == rel_lattice(entry.fan).rank + 1), entry.name


def test_iterated_subdivisions_keep_invariants():
    from fanlat.filtration import check_generation

    rng = random.Random(31)
    fan = catalog_entry("p2xp1").fan
    base_rank = rel_lattice(fan).rank
    for step in range(1, 4):
        draw = random_stellar_draw(fan, rng)
        assert draw is not None
        fan = stellar_subdivide(fan, *draw)
        assert is_complete(fan)
        assert rel_lattice(fan).rank == base_rank + step
        report = check_generation(fan, INC)
        assert report.generated_at_penultimate
        assert not report.violates_local_generation


class TestConjectureScan:
    def test_p2_monotone(self):
        fan = catalog_entry("p2").fan
        traces = conjecture_scan(fan, INC, 10, seed=1)
        assert traces, "all trials were skipped"
        for tr in traces:
            for rec in tr.records:
                assert rec.depth_before == 1
                assert not rec.violation
                assert rec.depth_after is not None
                assert rec.depth_after <= rec.depth_before

    def test_zero_trials(self):
        assert conjecture_scan(catalog_entry("p2").fan, INC, 0, seed=3) == []

    def test_deterministic_given_seed(self):
        fan = catalog_entry("p2xp1").fan
        def snapshot(traces):
            return [
                (tr.trial_index, tr.subdivided_cone.ray_indices, tr.new_ray,
                 tuple((rec.relation, rec.depth_before, rec.depth_after,
                        rec.comparable, rec.violation) for rec in tr.records))
                for tr in traces
            ]
        a = snapshot(conjecture_scan(fan, EXC, 12, seed=7))
        b = snapshot(conjecture_scan(fan, EXC, 12, seed=7))
        assert a == b

    def test_unreachable_before_is_incomparable(self):
        traces = conjecture_scan(catalog_entry("p3").fan, EXC, 5, seed=2)
        assert traces
        for tr in traces:
            for rec in tr.records:
                assert rec.depth_before is None
                assert not rec.comparable
                assert not rec.violation

    def test_requires_complete_fan(self):
        from fanlat.errors import NotCompleteError
        with pytest.raises(NotCompleteError):
            conjecture_scan(catalog_entry("halfplane2").fan, INC, 1, seed=0)
