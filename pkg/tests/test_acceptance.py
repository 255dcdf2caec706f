"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line with its runtime; the lines are printed
at the end of the pytest session and when the module runs as a script:

    python3 tests/test_acceptance.py
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction as F
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from resurgia import exactgeom as eg
from resurgia import families as fam
from resurgia import monomials as mono
from resurgia import reespkg as rp
from resurgia import resurgence as res
from resurgia.monomials import Ring

from conftest import EXAMPLE_GENS, brute_min_pairing, brute_minimal_covers, brute_vertices

RESULTS: dict[int, str] = {}
XYZ = Ring(("x", "y", "z"))


class Checks:
    """Collects named clauses so a criterion reports every failing part."""

    def __init__(self, number: int, title: str, limit: float | None = None):
        self.number, self.title, self.limit = number, title, limit
        self.failed: list[str] = []

    def check(self, clause: str, ok: bool, detail: str = ""):
        if not ok:
            self.failed.append(f"{clause}: {detail}" if detail else clause)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc is not None:
            self.failed.append(f"raised {exc_type.__name__}: {exc}")
        if self.limit is not None:
            self.check(f"runtime < {self.limit} s", elapsed < self.limit, f"{elapsed:.2f} s")
        status = "PASS" if not self.failed else "FAIL"
        line = f"[{status}] criterion {self.number}: {self.title} ({elapsed:.2f} s)"
        if self.failed:
            line += "\n         " + "\n         ".join(self.failed)
        RESULTS[self.number] = line
        print(line)
        if exc is None and self.failed:
            pytest.fail("; ".join(self.failed), pytrace=False)
        return False


def _example_ideal():
    parts = [mono.power(mono.prime_ideal(XYZ, s), m)
             for s, m in (((0, 1), 2), ((1, 2), 3), ((0, 2), 4))]
    return mono.intersect(mono.intersect(parts[0], parts[1]), parts[2])


def _random_squarefree(rng: random.Random) -> mono.MonomialIdeal:
    n = rng.randint(1, 5)
    ring = Ring(tuple(f"x{i}" for i in range(n)))
    gens = []
    for _ in range(rng.randint(1, 6)):
        g = tuple(rng.randint(0, 1) for _ in range(n))
        if any(g):
            gens.append(g)
    if not gens:
        gens.append((1,) + (0,) * (n - 1))
    return mono.minimalize(ring, gens)


def _random_points(rng: random.Random, dim: int) -> list[tuple]:
    pts = []
    for _ in range(rng.randint(1, 5)):
        p = [F(rng.randint(0, 12), rng.randint(1, 4)) for _ in range(dim)]
        if not any(p):
            p[rng.randrange(dim)] = F(1)
        pts.append(tuple(p))
    return pts


# --------------------------------------------------------------------------

def test_criterion_1_example_end_to_end():
    with Checks(1, "prime-power intersection example end to end", limit=5) as c:
        I = _example_ideal()
        c.check("(a) generators", set(I.gens) == set(EXAMPLE_GENS), str(I))
        SP = mono.symbolic_polyhedron(I)
        sp_expected = {(4, 3, 0), (2, 0, 3), (0, 2, 4), (F(3, 2), F(1, 2), F(5, 2))}
        c.check("(b) SP vertices", set(SP.vertices) == sp_expected, str(SP.vertices))
        NP = mono.newton_polyhedron(I)
        c.check("(c) NP equals the hull of the listed points",
                NP == eg.hull_plus_orthant(EXAMPLE_GENS), str(NP.vertices))
        c.check("(c) NP vertices drawn from the listed points",
                set(NP.vertices) <= set(EXAMPLE_GENS), str(NP.vertices))
        r = res.asymptotic_resurgence(fam.symbolic_powers(I), fam.closure_powers(I))
        c.check("(d) asymptotic resurgence = 10/9", r.value == F(10, 9) and r.exact, str(r.value))
        exit_point = eg.ray_exit_point(NP, (F(3, 2), F(1, 2), F(5, 2)))
        c.check("(e) exit point", exit_point == (F(5, 3), F(5, 9), F(25, 9)), str(exit_point))
        c.check("(e) witness exit point", r.witness["exit_point"] == ["5/3", "5/9", "25/9"])


def test_criterion_2_symmetric_minors():
    with Checks(2, "symmetric minors, m = 3..8", limit=5) as c:
        for m in range(3, 9):
            pkg, vf = rp.symmetric_minors_family(m)
            value = rp.rees_resurgence(vf, pkg).value
            c.check(f"m={m} value", value == F(2 * (m - 1), m), str(value))
            table = rp.ReesValuedFamily.explicit(m, vf.to_table(8))
            cert = rp.gamma_body(table, budget=8)
            c.check(f"m={m} table body exact", cert.is_exact, cert.status)
            c.check(f"m={m} table body equals closed form",
                    cert.body == rp.SymmetricMinorsSymbolic(m).closed_form())


def test_criterion_3_override_family_suite():
    with Checks(3, "override family with I = (x,y) and its truncations", limit=10) as c:
        I = mono.minimalize(Ring(("x", "y")), [(1, 0), (0, 1)])
        b = fam.piecewise(I, 0, 1, 1, {2: mono.power(I, 2)})
        a = fam.powers(I)
        r = res.resurgence_search(a, b, 4, 6)
        c.check("search(b) = 1/2 at (1,2)",
                r.value == F(1, 2) and r.witness == {"s": 1, "r": 2}, f"{r.value} {r.witness}")
        for n in (5, 6, 7, 8):
            r = res.resurgence_search(a, fam.truncate(b, n), 3, 16)
            c.check(f"search(truncate(b,{n})) = 1/{n} at (1,{n + 1})",
                    r.value == F(1, n) and r.witness == {"s": 1, "r": n + 1},
                    f"got {eg.format_rational(r.value)} at {r.witness}")
        body = fam.okounkov_body(b)
        c.check("body of b is the orthant", body.body == eg.QPolyhedron.orthant(2))
        r = res.asymptotic_resurgence(a, b)
        c.check("asymptotic resurgence = -inf", r.value == eg.NEG_INF, str(r.value))


def test_criterion_4_duality_corpus():
    with Checks(4, "duality over 200 random squarefree ideals", limit=60) as c:
        rng = random.Random(20240611)
        for i in range(200):
            I = _random_squarefree(rng)
            d = mono.alexander_dual(I)
            c.check(f"#{i} duality_check {I}", res.duality_check(I))
            c.check(f"#{i} polar(SP) = NP(dual) {I}",
                    eg.polar(mono.symbolic_polyhedron(I)) == mono.newton_polyhedron(d))
            for P in (mono.symbolic_polyhedron(I), mono.newton_polyhedron(I)):
                c.check(f"#{i} bipolar {I}", eg.polar(eg.polar(P)) == P)


def test_criterion_5_formula_agreement():
    with Checks(5, "formula agreement on 100 random body pairs") as c:
        rng = random.Random(5150)
        finite = 0
        for i in range(100):
            dim = rng.randint(1, 4)
            p_pts, q_pts = _random_points(rng, dim), _random_points(rng, dim)
            P, Q = eg.hull_plus_orthant(p_pts), eg.hull_plus_orthant(q_pts)
            value = eg.sup_noncontainment(P, Q)
            if value not in (eg.POS_INF, eg.NEG_INF) and value > 0:
                finite += 1
                product = value * eg.min_pairing(P, eg.polar(Q))
                c.check(f"#{i} reciprocity", product == 1, str(product))
            # every generating point pair, not only the computed vertices
            c.check(f"#{i} min_pairing oracle",
                    eg.min_pairing(P, Q) == brute_min_pairing(p_pts, q_pts))
        c.check("corpus has finite values", finite >= 50, str(finite))


def test_criterion_6_truncation_convergence():
    with Checks(6, "truncation convergence for the triangle") as c:
        T = mono.minimalize(XYZ, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
        S, P = fam.symbolic_powers(T), fam.powers(T)
        full = res.resurgence_search(S, P)
        rows = res.truncation_resurgence_profile(S, P)
        values = [r.value for _, r in rows]
        c.check("profile non-decreasing", values == sorted(values), str(values))
        c.check("profile reaches the untruncated value", values[-1] == full.value,
                f"{values[-1]} vs {full.value}")
        c.check("profile bounded by the untruncated value", all(v <= full.value for v in values))
        walds = [res.waldschmidt(fam.truncate(S, n), (1, 1, 1)) for n in range(1, 13)]
        c.check("Waldschmidt non-increasing", walds == sorted(walds, reverse=True), str(walds))
        stab = fam.okounkov_body(fam.truncate(S, 12)).index or 12
        c.check("Waldschmidt reaches 3/2", all(w == F(3, 2) for w in walds[stab - 1:]), str(walds))


def test_criterion_7_triangle_benchmark():
    with Checks(7, "triangle against closure powers") as c:
        T = mono.minimalize(XYZ, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
        r = res.asymptotic_resurgence(fam.symbolic_powers(T), fam.closure_powers(T))
        c.check("value 4/3", r.value == F(4, 3) and r.exact, str(r.value))

        # oracle: bodies from exhaustive basic solutions, then every vertex pair
        def body_vertices(ideal):
            cons = [(tuple(int(i in p) for i in range(3)), 1) for p in brute_minimal_covers(ideal)]
            return brute_vertices(3, cons)

        dual = mono.alexander_dual(T)
        oracle = 1 / brute_min_pairing(body_vertices(T), body_vertices(dual))
        c.check("brute-force oracle agrees", oracle == r.value, str(oracle))


def summary_lines() -> list[str]:
    return [RESULTS[k] for k in sorted(RESULTS)]


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failures = 0
    for t in tests:
        try:
            t()
        except BaseException:
            failures += 1
    sys.exit(1 if failures else 0)
