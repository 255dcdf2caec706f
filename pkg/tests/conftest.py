"""Shared fixtures, hypothesis strategies and independent oracles."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st
from scipy.optimize import linprog

from resurgia import exactgeom as eg
from resurgia import monomials as mono
from resurgia.monomials import Ring

XYZ = Ring(("x", "y", "z"))
XY = Ring(("x", "y"))

EXAMPLE_GENS = [(1, 1, 3), (2, 0, 3), (2, 1, 2), (0, 2, 4), (3, 2, 1), (4, 3, 0)]


@pytest.fixture
def example_ideal():
    """(x,y)^2 ∩ (y,z)^3 ∩ (x,z)^4, built by intersection."""
    p = [mono.power(mono.prime_ideal(XYZ, s), m) for s, m in (((0, 1), 2), ((1, 2), 3), ((0, 2), 4))]
    return mono.intersect(mono.intersect(p[0], p[1]), p[2])


@pytest.fixture
def triangle():
    return mono.minimalize(XYZ, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])


@pytest.fixture
def xy_max():
    return mono.minimalize(XY, [(1, 0), (0, 1)])


# --------------------------------------------------------------------------
# strategies
# --------------------------------------------------------------------------

small_rational = st.fractions(min_value=0, max_value=5, max_denominator=4)


@st.composite
def point_sets(draw, max_dim=4, max_points=5):
    dim = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_points))
    return [tuple(draw(small_rational) for _ in range(dim)) for _ in range(n)]


@st.composite
def origin_free_bodies(draw, max_dim=4, max_points=5):
    """Upward-closed bodies whose generating points are all nonzero."""
    pts = draw(point_sets(max_dim, max_points))
    pts = [p if any(p) else p[:-1] + (Fraction(1),) for p in pts]
    return eg.hull_plus_orthant(pts)


@st.composite
def body_pairs(draw, max_dim=4, max_points=5, max_denominator=4):
    coord = st.fractions(min_value=0, max_value=5, max_denominator=max_denominator)
    dim = draw(st.integers(1, max_dim))
    out = []
    for _ in range(2):
        n = draw(st.integers(1, max_points))
        pts = [tuple(draw(coord) for _ in range(dim)) for _ in range(n)]
        pts = [p if any(p) else p[:-1] + (Fraction(1),) for p in pts]
        out.append(eg.hull_plus_orthant(pts))
    return out


@st.composite
def squarefree_ideals(draw, max_vars=5):
    n = draw(st.integers(1, max_vars))
    ring = Ring(tuple(f"x{i}" for i in range(n)))
    gens = draw(st.lists(st.tuples(*[st.integers(0, 1)] * n).filter(any), min_size=1, max_size=6))
    return mono.minimalize(ring, gens)


@st.composite
def monomial_ideals(draw, max_vars=3, max_exp=3):
    n = draw(st.integers(1, max_vars))
    ring = Ring(tuple(f"x{i}" for i in range(n)))
    gens = draw(st.lists(st.tuples(*[st.integers(0, max_exp)] * n), min_size=1, max_size=4))
    return mono.minimalize(ring, gens)


# --------------------------------------------------------------------------
# oracles (independent of the double description code)
# --------------------------------------------------------------------------

def lp_in_hull_plus_orthant(points, x) -> bool:
    """Float LP feasibility: lambda >= 0, sum lambda = 1, sum lambda_i p_i <= x."""
    pts = np.array([[float(c) for c in p] for p in points])
    k, d = pts.shape
    res = linprog(np.zeros(k), A_ub=pts.T, b_ub=[float(c) + 1e-9 for c in x],
                  A_eq=np.ones((1, k)), b_eq=[1.0], bounds=[(0, None)] * k, method="highs")
    return res.status == 0


def solve_exact(rows, rhs):
    """Unique solution of a square rational system, or None if singular."""
    n = len(rows)
    m = [[Fraction(c) for c in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(m[i][n] / m[i][i] for i in range(n))


def brute_vertices(dim, constraints):
    """Vertices of {x >= 0, <h,x> >= c} by exhausting all dim-subsets of tight constraints."""
    rows = [(tuple(h), c) for h, c in constraints]
    rows += [(tuple(int(i == j) for j in range(dim)), 0) for i in range(dim)]
    found = set()
    for subset in itertools.combinations(rows, dim):
        x = solve_exact([h for h, _ in subset], [c for _, c in subset])
        if x is None:
            continue
        if all(sum(a * b for a, b in zip(h, x)) >= c for h, c in rows):
            found.add(x)
    return found


def brute_min_pairing(points_a, points_b):
    return min(sum(Fraction(a) * Fraction(b) for a, b in zip(u, v))
               for u in points_a for v in points_b)


def brute_minimal_covers(I):
    """Minimal variable subsets meeting every generator, by subset enumeration."""
    n = I.ring.n
    covers = [set(s) for k in range(n + 1) for s in itertools.combinations(range(n), k)
              if all(any(g[i] for i in s) for g in I.gens)]
    return sorted((frozenset(c) for c in covers if not any(o < c for o in covers)),
                  key=lambda s: (len(s), sorted(s)))


def grid(n, bound):
    return itertools.product(range(bound + 1), repeat=n)


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
