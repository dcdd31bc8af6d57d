"""End-to-end acceptance gate.

One test per acceptance item, each wrapped so it prints a single
"ACCEPTANCE <id> PASS" or "... FAIL" line (visible with -s or in captured
output) plus a hard runtime budget where one is part of the contract.
"""

import contextlib
import itertools
import random
import time
from fractions import Fraction as F

import pytest

from shapecert.cli import main
from shapecert.complexes import (AbstractSimplicialComplex, Realization,
                                 SquaredLengthSpec, collision_distance_squared,
                                 length_jacobian, squared_lengths)
from shapecert.lcp import (LCPStatus, QPProblem, lemke_solve, qp_to_lcp,
                           simplex_square_distance)
from shapecert.linalg import RatMatrix, is_positive_definite
from shapecert.prove import prove_existence, render_proof_log
from shapecert.rationals import sqrt_bounds

from conftest import fixture_path, load_fixture


@contextlib.contextmanager
def criterion(tag):
    try:
        yield
    except BaseException:
        print("ACCEPTANCE %s FAIL" % tag)
        raise
    print("ACCEPTANCE %s PASS" % tag)


def timed_prove(name, digits=8):
    r, lengths, _ = load_fixture(name)
    start = time.perf_counter()
    report = prove_existence(r, lengths, digits=digits)
    return report, time.perf_counter() - start


def endpoints_near(iv, center, tol):
    return (abs(float(iv.lo) - center) < tol
            and abs(float(iv.hi) - center) < tol)


def overlaps(iv, lo, hi):
    return iv.lo <= hi and iv.hi >= lo


def test_acceptance_1_exact_hull_distance(capsys):
    with criterion(1):
        start = time.perf_counter()
        code = main(["distance", "[[3,0,0],[0,3,0],[0,0,3]]",
                     "[[0,1,1],[1,0,1]]"])
        elapsed = time.perf_counter() - start
        out = capsys.readouterr().out
        assert code == 0
        assert out == "(1 / 3, ([1 / 3, 4 / 3, 4 / 3], [0, 1, 1]))\n"
        # the witness pair must reproduce the exact minimum
        d2, wit = simplex_square_distance([(3, 0, 0), (0, 3, 0), (0, 0, 3)],
                                          [(0, 1, 1), (1, 0, 1)])
        assert d2 == F(1, 3)
        gap = sum((a - b) ** 2 for a, b in zip(wit.point_first, wit.point_second))
        assert gap == F(1, 3)
        assert elapsed < 1.0


def test_acceptance_2_triangle_proof():
    with criterion(2):
        report, elapsed = timed_prove("triangle")
        assert report.proven
        assert report.self_intersection.cd_squared == F(
            18749999713556450281734401664681,
            99999999862479730000000000000000)
        assert report.inequality3.rho_squared == F(
            6139541520423783,
            50000000000000000000000000000000)
        assert overlaps(report.inequality2.interval,
                        F(13255, 10**4), F(13257, 10**4))
        assert elapsed < 10.0


def test_acceptance_3_icosahedron_proof():
    with criterion(3):
        report, elapsed = timed_prove("icosahedron")
        assert report.proven
        assert report.inequality1.n_vertices == 12
        assert report.inequality1.n_edges == 30
        assert endpoints_near(report.self_intersection.cd_interval,
                              0.85065, 1e-4)
        assert overlaps(report.inequality2.interval,
                        F(15306, 10**4), F(15308, 10**4))
        assert elapsed < 60.0


def test_acceptance_4_four_simplex_proof():
    with criterion(4):
        report, elapsed = timed_prove("four_simplex")
        assert report.proven
        s1 = report.inequality1
        assert s1.d * s1.n_vertices == 20 >= s1.n_edges == 10
        assert endpoints_near(report.self_intersection.cd_interval,
                              0.6455, 1e-4)
        assert overlaps(report.inequality2.interval,
                        F(19998, 10**4), F(2, 1))
        assert elapsed < 30.0


def test_acceptance_5_antiprism_rejection():
    with criterion(5):
        report, elapsed = timed_prove("hex_antiprism")
        assert not report.proven
        assert report.failed_at == "inequality3"
        assert endpoints_near(report.inequality3.rho_interval, 0.0062, 1e-3)
        assert endpoints_near(report.inequality3.bound_interval, 0.00013, 1e-4)
        assert elapsed < 120.0


def test_acceptance_6a_sqrt_soundness():
    with criterion("6a"):
        rnd = random.Random(1001)
        for i in range(1000):
            if i % 3 == 0:
                x = F(rnd.randint(0, 10**9), rnd.randint(1, 10**6))
            elif i % 3 == 1:
                x = F(rnd.randint(0, 10**18), rnd.randint(1, 10**12))
            else:
                x = F(rnd.randint(0, 100), rnd.randint(1, 10**30))
            iv = sqrt_bounds(x, 8)
            assert iv.lo ** 2 <= x <= iv.hi ** 2
            assert iv.lo >= 0


def random_realization(rnd, complex, dim):
    def coord():
        return F(rnd.randint(-400, 400), rnd.randint(1, 100))

    return Realization(complex, dim,
                       {v: tuple(coord() for _ in range(dim))
                        for v in complex.vertices})


def test_acceptance_6b_jacobian_vs_finite_differences():
    with criterion("6b"):
        rnd = random.Random(77)
        k3 = AbstractSimplicialComplex.from_maximal_simplices(
            [["a", "b"], ["b", "c"], ["a", "c"]])
        strip = AbstractSimplicialComplex.from_maximal_simplices(
            [["a", "b", "c"], ["b", "c", "d"]])
        h = 1e-5
        for trial in range(50):
            c = k3 if trial % 2 else strip
            dim = 2 + trial % 2
            r = random_realization(rnd, c, dim)
            J = length_jacobian(r).to_float()
            flat = [float(x) for v in c.vertices for x in r.coords[v]]

            def lengths_at(vec):
                out = []
                for u, v in c.edges:
                    iu = c.vertex_index(u) * dim
                    iv = c.vertex_index(v) * dim
                    out.append(sum((vec[iu + k] - vec[iv + k]) ** 2
                                   for k in range(dim)))
                return out

            for col in range(len(flat)):
                plus = list(flat)
                minus = list(flat)
                plus[col] += h
                minus[col] -= h
                fp, fm = lengths_at(plus), lengths_at(minus)
                for row in range(c.n_edges):
                    fd = (fp[row] - fm[row]) / (2 * h)
                    assert abs(fd - J[row][col]) <= 1e-4 * max(1.0, abs(fd))


def test_acceptance_6c_exact_quadratic_remainder():
    with criterion("6c"):
        rnd = random.Random(78)
        c = AbstractSimplicialComplex.from_maximal_simplices(
            [["a", "b"], ["b", "c"], ["a", "c"], ["c", "d"]])
        for _ in range(50):
            base = random_realization(rnd, c, 3)
            eps = {v: tuple(F(rnd.randint(-50, 50), rnd.randint(1, 1000))
                            for _ in range(3))
                   for v in c.vertices}
            moved = Realization(c, 3,
                                {v: tuple(a + b for a, b in
                                          zip(base.coords[v], eps[v]))
                                 for v in c.vertices})
            J = length_jacobian(base)
            flat = [x for v in c.vertices for x in eps[v]]
            before, after = squared_lengths(base), squared_lengths(moved)
            for row, (u, v) in enumerate(c.edges):
                linear = sum(J.data[row][j] * flat[j] for j in range(J.cols))
                quad = sum((a - b) ** 2 for a, b in zip(eps[u], eps[v]))
                assert after[row] - before[row] - linear - quad == 0


def test_acceptance_6d_qp_complementarity_and_optimality():
    with criterion("6d"):
        rnd = random.Random(79)

        def draw(lo=-3, hi=3, den=4):
            return F(rnd.randint(lo, hi), rnd.randint(1, den))

        for _ in range(100):
            n, m = rnd.randint(1, 3), rnd.randint(1, 3)
            R = RatMatrix([[draw() for _ in range(n)] for _ in range(n)])
            G = R.transpose() @ R
            H = RatMatrix([[2 * G.data[i][j] + (2 if i == j else 0)
                            for j in range(n)] for i in range(n)])
            c = tuple(draw(-4, 4) for _ in range(n))
            A = RatMatrix([[draw() for _ in range(n)] for _ in range(m)])
            x0 = tuple(draw(0, 4) for _ in range(n))
            b = tuple(sum(A.data[i][j] * x0[j] for j in range(n)) - 1
                      for i in range(m))
            qp = QPProblem(H, c, A, b)
            sol = lemke_solve(qp_to_lcp(qp))
            assert sol.status is LCPStatus.SOLVED
            assert sum(z * w for z, w in zip(sol.z, sol.w)) == 0
            x = sol.z[:n]

            def objective(v):
                quad = sum(v[i] * H.data[i][j] * v[j]
                           for i in range(n) for j in range(n))
                return quad / 2 + sum(ci * vi for ci, vi in zip(c, v))

            fx = objective(x)
            # samples stay feasible by construction: x0 >= 0 gains a
            # non-negative nudge, and |A (y - x0)| <= 9/10 < slack 1
            for _ in range(1000):
                y = tuple(v + F(rnd.randint(0, 10), 100) for v in x0)
                assert fx <= objective(y)


def test_acceptance_6e_collision_distance_lipschitz():
    with criterion("6e"):
        r, _, _ = load_fixture("triangle")
        c = r.complex
        rnd = random.Random(80)
        cd_old = sqrt_bounds(collision_distance_squared(r).value, 8)
        for _ in range(50):
            v = rnd.choice(c.vertices)
            move = tuple(F(rnd.randint(-100, 100), 2000) for _ in range(r.dim))
            delta_hi = sqrt_bounds(sum(m * m for m in move), 8).hi
            coords = dict(r.coords)
            coords[v] = tuple(a + b for a, b in zip(coords[v], move))
            moved = Realization(c, r.dim, coords)
            cd_new = sqrt_bounds(collision_distance_squared(moved).value, 8)
            assert cd_new.lo <= cd_old.hi + delta_hi
            assert cd_old.lo <= cd_new.hi + delta_hi


def test_acceptance_6f_sigma_bounds_reverified():
    with criterion("6f"):
        for name in ("triangle", "icosahedron", "four_simplex",
                     "hex_antiprism"):
            r, lengths, _ = load_fixture(name)
            report = prove_existence(r, lengths)
            iv = report.inequality2.interval
            B = length_jacobian(r).gram()
            ident = RatMatrix.identity(B.rows)
            assert iv.lo > 0
            assert is_positive_definite(B - ident * (iv.lo * iv.lo))
            assert not is_positive_definite(B - ident * (iv.hi * iv.hi))


def test_acceptance_6g_end_to_end_soundness_smoke():
    with criterion("6g"):
        c = AbstractSimplicialComplex.from_maximal_simplices(
            [["a", "b"], ["a", "c"], ["b", "c"]])
        r = Realization(c, 2, {"a": (0, 0), "b": (3, 0), "c": (0, 4)})
        lengths = SquaredLengthSpec({("a", "b"): 9, ("a", "c"): 16,
                                     ("b", "c"): 25})
        report = prove_existence(r, lengths)
        assert report.proven
        assert report.inequality3.rho_squared == 0


def test_acceptance_7_determinism(tmp_path, capsys):
    with criterion(7):
        desc = {"data": [["a", "b"], ["b", "c"], ["a", "c"]], "dim": 2,
                "desired_sq_lengths": {"default": 1},
                "embed": {"rng_seed": 2}}
        src = tmp_path / "in.json"
        import json
        src.write_text(json.dumps(desc))
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["embed", str(src), "--out", str(out1)]) == 0
        assert main(["embed", str(src), "--out", str(out2)]) == 0
        capsys.readouterr()
        assert out1.read_bytes() == out2.read_bytes()

        r, lengths, _ = load_fixture("triangle")
        first = prove_existence(r, lengths)
        second = prove_existence(r, lengths)
        assert first.verdict == second.verdict
        assert first.self_intersection.cd_squared == second.self_intersection.cd_squared
        assert first.inequality2.interval == second.inequality2.interval
        assert first.inequality3.rho_squared == second.inequality3.rho_squared
        assert first.inequality4.lhs == second.inequality4.lhs
        assert render_proof_log(first) == render_proof_log(second)

        assert main(["prove", fixture_path("triangle")]) == 0
        log1 = capsys.readouterr().out
        assert main(["prove", fixture_path("triangle")]) == 0
        log2 = capsys.readouterr().out
        assert log1 == log2
