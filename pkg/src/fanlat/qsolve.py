"""Exact rational linear solves and Fourier-Motzkin feasibility.

Backs the geometric validation: cone membership, relative-interior
tests, and the pairwise cone-intersection check. Solves use Fractions;
the elimination stays in integers (rows are only ever scaled by
positive factors, which preserves inequalities).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence


class FMSizeExceeded(Exception):
    """Row blow-up guard tripped during Fourier-Motzkin elimination."""


def solve_unique(columns: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[list[Fraction]]:
    """Solve sum_j x_j * columns[j] = target for independent columns.

    Returns the unique rational solution, or None if the system is
    inconsistent. Raises ValueError if the columns are dependent.
    """
    k = len(columns)
    n = len(target)
    rows = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    pivot_rows = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            raise ValueError("columns are linearly dependent")
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c] / pr[c]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        pivot_rows.append((r, c))
        r += 1
    for i in range(r, n):
        if rows[i][k]:
            return None
    sol = [Fraction(0)] * k
    for i, c in pivot_rows:
        sol[c] = rows[i][k] / rows[i][c]
    return sol


def in_simplicial_cone(ray_vectors: Sequence[Sequence[int]], x: Sequence[int]) -> bool:
    """Exact membership of x in the cone spanned by independent rays."""
    if not ray_vectors:
        return not any(x)
    coeffs = solve_unique(ray_vectors, x)
    return coeffs is not None and all(c >= 0 for c in coeffs)


def _normalize(coeffs: tuple[int, ...], const: int):
    g = 0
    for c in coeffs:
        g = gcd(g, abs(c))
    if g > 1 and const % g == 0:
        return tuple(c // g for c in coeffs), const // g
    return coeffs, const


def fm_feasible(rows: list[tuple[tuple[int, ...], int]], num_vars: int,
                max_rows: int = 20000) -> bool:
    """Feasibility of {z : coeffs . z >= const for every row} over Q.

    Eliminates variables left to right; each elimination combines every
    positive-coefficient row with every negative one. Returns False as
    soon as a contradictory constant row appears.
    """
    work = set()
    for coeffs, const in rows:
        coeffs, const = _normalize(tuple(coeffs), const)
        if not any(coeffs):
            if const > 0:
                return False
            continue
        work.add((coeffs, const))
    for v in range(num_vars):
        pos, neg, rest = [], [], []
        for coeffs, const in work:
            cv = coeffs[v]
            if cv > 0:
                pos.append((coeffs, const))
            elif cv < 0:
                neg.append((coeffs, const))
            else:
                rest.append((coeffs, const))
        new_rows = set(rest)
        for pc, pb in pos:
            for nc, nb in neg:
                a, b = pc[v], -nc[v]
                coeffs = tuple(b * x + a * y for x, y in zip(pc, nc))
                const = b * pb + a * nb
                coeffs, const = _normalize(coeffs, const)
                if not any(coeffs):
                    if const > 0:
                        return False
                    continue
                new_rows.add((coeffs, const))
        if len(new_rows) > max_rows:
            raise FMSizeExceeded(f"{len(new_rows)} rows while eliminating variable {v}")
        work = new_rows
    return True


def cone_pair_proper(ray_vectors: Sequence[Sequence[int]], s1: Sequence[int],
                     s2: Sequence[int], max_rows: int = 20000) -> bool:
    """Exact check that cone(s1) and cone(s2) meet in cone(s1 & s2).

    Both cones must be simplicial. A point of the intersection has a
    unique coefficient vector on each side, so the cones meet properly
    iff no point of the intersection puts positive weight on a
    non-shared generator. Each such generator yields one feasibility
    problem over the cone {a, b >= 0 : sum a_i v_i = sum b_j v_j}.
    """
    shared = set(s1) & set(s2)
    k1, k2 = len(s1), len(s2)
    n = len(ray_vectors[0]) if ray_vectors else 0
    nvars = k1 + k2
    base: list[tuple[tuple[int, ...], int]] = []
    for i in range(nvars):
        base.append((tuple(1 if j == i else 0 for j in range(nvars)), 0))
    for r in range(n):
        row = tuple(
            [ray_vectors[s1[i]][r] for i in range(k1)]
            + [-ray_vectors[s2[j]][r] for j in range(k2)]
        )
        base.append((row, 0))
        base.append((tuple(-x for x in row), 0))
    test_positions = [i for i in range(k1) if s1[i] not in shared]
    test_positions += [k1 + j for j in range(k2) if s2[j] not in shared]
    for pos in test_positions:
        probe = base + [(tuple(1 if j == pos else 0 for j in range(nvars)), 1)]
        if fm_feasible(probe, nvars, max_rows=max_rows):
            return False
    return True
