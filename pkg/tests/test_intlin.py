import random

import pytest

import oracles
from fanlat.intlin import (IntMatrix, Sublattice, coefficients_in, hnf,
                           integer_kernel, lattice_equal, lattice_sum,
                           matrix_rank, member, member_by_enumeration,
                           saturation, snf, solve_columns, sublattice_index)


def rows(m):
    return [list(r) for r in m.entries]


class TestHNF:
    def test_identity_fixed(self):
        m = IntMatrix.identity(2)
        h, u = hnf(m)
        assert h == m
        assert u == m

    def test_worked_example(self):
        m = IntMatrix([[2, 4], [1, 1]])
        h, u = hnf(m)
        assert rows(h) == [[1, 1], [0, 2]]
        assert (u @ m) == h
        assert oracles.is_unimodular(rows(u))
        assert oracles.is_hnf(rows(h))

    def test_zero_matrix(self):
        m = IntMatrix.zero(3, 2)
        h, u = hnf(m)
        assert h == m
        assert u == IntMatrix.identity(3)

    def test_empty_shapes(self):
        for m in (IntMatrix([], cols=3), IntMatrix([[], []])):
            h, u = hnf(m)
            assert h.rows == m.rows and h.cols == m.cols
            assert u.rows == u.cols == m.rows

    def test_canonical_deterministic(self):
        m = IntMatrix([[3, -1, 2], [4, 4, 0], [-2, 5, 5]])
        assert hnf(m)[0] == hnf(IntMatrix(rows(m)))[0]


class TestSNF:
    def test_divisibility_example(self):
        m = IntMatrix([[2, 0], [0, 3]])
        s, u, w = snf(m)
        assert rows(s) == [[1, 0], [0, 6]]
        assert (u @ m @ w) == s
        assert oracles.is_unimodular(rows(u))
        assert oracles.is_unimodular(rows(w))

    def test_identity(self):
        m = IntMatrix.identity(3)
        s, u, w = snf(m)
        assert s == m

    def test_one_by_one(self):
        s, _, _ = snf(IntMatrix([[6]]))
        assert rows(s) == [[6]]


class TestIntegerKernel:
    def test_p2_columns(self):
        m = IntMatrix([[1, 0, -1], [0, 1, -1]])
        k = integer_kernel(m)
        assert k.basis_rows == ((1, 1, 1),)

    def test_p2xp1_columns(self):
        cols = [(1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1), (0, 0, -1)]
        m = IntMatrix.from_columns(cols)
        k = integer_kernel(m)
        assert k.rank == 2
        expected = Sublattice(5, [(1, 1, 1, 0, 0), (0, 0, 0, 1, 1)])
        assert lattice_equal(k, expected)

    def test_invertible_square(self):
        k = integer_kernel(IntMatrix([[2, 1], [1, 1]]))
        assert k.rank == 0

    def test_wide_zero_map(self):
        k = integer_kernel(IntMatrix([], cols=4))
        assert k.rank == 4


class TestMember:
    def test_multiple_of_generator(self):
        lat = Sublattice(3, [(1, 1, 1)])
        assert member((2, 2, 2), lat)

    def test_not_proportional(self):
        lat = Sublattice(3, [(1, 1, 1)])
        assert not member((1, 1, 0), lat)

    def test_dimension_mismatch(self):
        lat = Sublattice(3, [(1, 1, 1)])
        with pytest.raises(ValueError):
            member((1, 1), lat)

    def test_coefficients_reconstruct(self):
        lat = Sublattice(4, [(1, 0, 2, 0), (0, 3, 1, 0)])
        v = tuple(2 * a - 5 * b for a, b in zip(*lat.basis_rows))
        coeffs = coefficients_in(v, lat)
        assert coeffs == (2, -5)


class TestLatticeSum:
    def test_empty(self):
        assert lattice_sum([], ambient_rank=4).rank == 0

    def test_p2xp1_span(self):
        a = Sublattice(5, [(1, 1, 1, 0, 0)])
        b = Sublattice(5, [(0, 0, 0, 1, 1)])
        total = lattice_sum([a, b])
        assert total.rank == 2

    def test_idempotent(self):
        lat = Sublattice(3, [(1, 2, 3), (0, 1, 1)])
        assert lattice_equal(lattice_sum([lat, lat]), lat)

    def test_commutative_associative(self):
        rng = random.Random(5)
        for _ in range(25):
            parts = [Sublattice(4, [[rng.randint(-4, 4) for _ in range(4)]
                                    for _ in range(rng.randint(1, 2))])
                     for _ in range(3)]
            a, b, c = parts
            ab_c = lattice_sum([lattice_sum([a, b]), c])
            a_bc = lattice_sum([a, lattice_sum([b, c])])
            cba = lattice_sum([c, b, a])
            assert lattice_equal(ab_c, a_bc)
            assert lattice_equal(ab_c, cba)

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError):
            lattice_sum([Sublattice(2, [(1, 0)]), Sublattice(3, [(1, 0, 0)])])


class TestLatticeEqual:
    def test_sign_of_generator(self):
        assert lattice_equal(Sublattice(3, [(1, 1, 1)]), Sublattice(3, [(-1, -1, -1)]))

    def test_index_two_sublattice(self):
        assert not lattice_equal(Sublattice(2, [(1, 0)]), Sublattice(2, [(2, 0)]))

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError):
            lattice_equal(Sublattice(2, [(1, 0)]), Sublattice(3, [(1, 0, 0)]))


class TestSaturation:
    def test_stretched_generator(self):
        sat = saturation(Sublattice(2, [(2, 0)]))
        assert sat.basis_rows == ((1, 0),)

    def test_index_two_full_rank(self):
        sat = saturation(Sublattice(2, [(1, 1), (1, -1)]))
        assert lattice_equal(sat, Sublattice(2, [(1, 0), (0, 1)]))

    def test_idempotent(self):
        lat = Sublattice(3, [(1, 2, 0), (0, 0, 3)])
        once = saturation(lat)
        assert lattice_equal(saturation(once), once)
        assert once.rank == lat.rank


class TestSublatticeIndex:
    def test_full_lattice(self):
        assert sublattice_index(Sublattice(2, [(1, 0), (0, 1)])) == 1

    def test_index_two(self):
        assert sublattice_index(Sublattice(2, [(1, 1), (1, -1)])) == 2

    def test_rank_deficient(self):
        assert sublattice_index(Sublattice(2, [(1, 0)])) is None


class TestSolveColumns:
    def test_known_instance(self):
        m = IntMatrix.from_columns([(1, 0), (0, 1), (-1, -1)])
        x = solve_columns(m, (2, 3))
        assert x is not None
        assert m.mul_vector(x) == (2, 3)

    def test_unsolvable(self):
        m = IntMatrix.from_columns([(2, 0), (0, 2)])
        assert solve_columns(m, (1, 0)) is None

    def test_random(self):
        rng = random.Random(11)
        for _ in range(60):
            h = rng.randint(1, 4)
            k = rng.randint(1, 4)
            m = IntMatrix([[rng.randint(-5, 5) for _ in range(k)] for _ in range(h)])
            hidden = [rng.randint(-3, 3) for _ in range(k)]
            target = m.mul_vector(hidden)
            x = solve_columns(m, target)
            assert x is not None
            assert m.mul_vector(x) == target


def test_huge_entries_stay_exact():
    big = 10 ** 30
    m = IntMatrix([[big, big + 1], [big - 1, big]])
    h, u = hnf(m)
    assert (u @ m) == h
    assert oracles.is_unimodular(rows(u))
    # det = big^2 - (big+1)(big-1) = 1, so the matrix is itself unimodular
    assert rows(h) == [[1, 0], [0, 1]]
    s, su, sw = snf(m)
    assert rows(s) == [[1, 0], [0, 1]]
    assert (su @ m @ sw) == s
    lat = Sublattice(2, [(big, 0), (0, big)])
    assert sublattice_index(lat) == big * big
    assert member((big * 7, -big * 9), lat)
    assert not member((big * 7 + 1, 0), lat)


def test_member_matches_enumeration():
    rng = random.Random(3)
    for _ in range(40):
        gens = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(2)]
        lat = Sublattice(3, gens)
        probe = tuple(rng.randint(-4, 4) for _ in range(3))
        fast = member(probe, lat)
        slow = member_by_enumeration(probe, gens, 6)
        if slow:
            assert fast
        if not fast:
            assert not slow


def run_random_property_suite(num_matrices: int, seed: int = 20260811) -> None:
    """Random-matrix contract suite shared with the acceptance tests."""
    rng = random.Random(seed)
    for _ in range(num_matrices):
        height = rng.randint(1, 6)
        width = rng.randint(1, 6)
        m = IntMatrix([[rng.randint(-9, 9) for _ in range(width)] for _ in range(height)])
        h, u = hnf(m)
        assert (u @ m) == h
        assert oracles.is_unimodular(rows(u))
        assert oracles.is_hnf(rows(h))
        s, su, sw = snf(m)
        assert (su @ m @ sw) == s
        assert oracles.is_unimodular(rows(su))
        assert oracles.is_unimodular(rows(sw))
        assert oracles.is_snf(rows(s))
        k = integer_kernel(m)
        if k.rank:
            product = m @ k.basis.transpose()
            assert product.is_zero()
        assert k.rank + matrix_rank(m) == width
        assert lattice_equal(saturation(k), k)


def test_random_property_suite_smoke():
    run_random_property_suite(150, seed=404)
