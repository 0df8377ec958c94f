from fanlat.corpus import catalog, catalog_entry
from fanlat.fan import is_complete
from fanlat.filtration import filtration
from fanlat.lattices import SupportPolicy, class_group, ray_lattice, rel_lattice

EXPECTED_NAMES = ["p2", "p1xp1", "p3", "p2xp1", "blowup_p2", "halfplane2", "sigma_c"]


def test_catalog_names():
    assert [e.name for e in catalog()] == EXPECTED_NAMES


def test_p2xp1_shape():
    entry = catalog_entry("p2xp1")
    assert len(entry.fan.rays) == 5
    assert len(entry.fan.maximal_cones) == 6


def test_known_blocks_recompute():
    for entry in catalog():
        fan = entry.fan
        known = entry.known
        assert is_complete(fan) is known["complete"], entry.name
        assert rel_lattice(fan).basis_rows == known["relation_basis"], entry.name
        assert ray_lattice(fan).index_in_ambient == known["ray_lattice_index"], entry.name
        cg = class_group(fan)
        assert (cg.free_rank, cg.torsion) == known["class_group"], entry.name
        for policy_name, expected in known["depths"].items():
            profile = filtration(fan, SupportPolicy(policy_name))
            for relation, want in expected.items():
                assert profile.depth_of(relation) == want, (entry.name, policy_name, relation)


def test_blowup_matches_direct_subdivision():
    entry = catalog_entry("blowup_p2")
    assert entry.fan.rays == ((1, 0), (0, 1), (-1, -1), (1, 1))
    assert len(entry.fan.maximal_cones) == 4
