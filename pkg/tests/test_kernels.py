import os
import subprocess
import sys
from fractions import Fraction as F

import numpy as np
import pytest

import shapecert
import shapecert._kernels_py as kpy
from shapecert import _kernels

try:
    import shapecert._kernels_c as kc
except ImportError:
    kc = None

needs_compiled = pytest.mark.skipif(kc is None,
                                    reason="compiled backend not built")


def test_backend_is_declared():
    assert shapecert.kernel_backend in ("compiled", "python")
    assert shapecert.kernel_backend == _kernels.BACKEND


def embed_inputs(seed, n=5, dim=3):
    rng = np.random.Generator(np.random.Philox(key=seed))
    pos = np.ascontiguousarray(rng.random((n, dim)))
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if (i + j) % 2]
    edge_i = np.array([e[0] for e in edges], dtype=np.int64)
    edge_j = np.array([e[1] for e in edges], dtype=np.int64)
    target = np.ascontiguousarray(rng.random(len(edges)) + 0.5)
    return pos, edge_i, edge_j, target


@needs_compiled
@pytest.mark.parametrize("with_repulsion", [True, False])
def test_embed_phase_backends_bit_identical(with_repulsion):
    # both backends use the same operation order and the extension is built
    # without contraction, so the floats must agree exactly
    a = embed_inputs(99)
    b = tuple(np.copy(x) for x in a)
    kpy.run_embed_phase(*a, 0.2, 1.0, 0.05, 137, with_repulsion)
    kc.run_embed_phase(*b, 0.2, 1.0, 0.05, 137, with_repulsion)
    assert np.array_equal(a[0], b[0])
    assert a[0].dtype == b[0].dtype == np.float64


@needs_compiled
def test_embed_phase_coincident_points_agree():
    # repulsion between coincident vertices is skipped identically
    pos = np.zeros((3, 2))
    edge_i = np.array([0, 1], dtype=np.int64)
    edge_j = np.array([1, 2], dtype=np.int64)
    target = np.ones(2)
    other = np.copy(pos)
    kpy.run_embed_phase(pos, edge_i, edge_j, target, 0.2, 1.0, 0.05, 25, True)
    kc.run_embed_phase(other, edge_i, edge_j, target, 0.2, 1.0, 0.05, 25, True)
    assert np.array_equal(pos, other)


@needs_compiled
def test_bareiss_backends_agree():
    rng = np.random.Generator(np.random.Philox(key=5))
    for _ in range(25):
        n = int(rng.integers(1, 7))
        rows = [[int(rng.integers(-50, 50)) for _ in range(n)]
                for _ in range(n)]
        for stop in (False, True):
            got = kc.bareiss_leading_minors([r[:] for r in rows],
                                            stop_on_nonpositive=stop)
            want = kpy.bareiss_leading_minors([r[:] for r in rows],
                                              stop_on_nonpositive=stop)
            assert got == want


@needs_compiled
def test_lcp_pivot_backends_agree():
    def tableau():
        return [[F(a, b) for a, b in zip(row, (1, 2, 3, 4))]
                for row in ([2, -1, 3, 7], [1, 5, -2, 0], [-3, 2, 1, 9])]

    t1, t2 = tableau(), tableau()
    kpy.lcp_pivot(t1, 1, 2)
    kc.lcp_pivot(t2, 1, 2)
    assert t1 == t2
    # pivot row normalized, pivot column cleared
    assert t1[1][2] == 1
    assert t1[0][2] == t1[2][2] == 0


def test_bareiss_minors_are_exact_python_ints():
    minors = _kernels.bareiss_leading_minors([[10**30, 1], [1, 10**30]])
    assert minors == [10**30, 10**60 - 1]


def backend_in_subprocess(extra_env):
    env = dict(os.environ)
    env.pop("SHAPECERT_PURE_PYTHON", None)
    env.update(extra_env)
    out = subprocess.run(
        [sys.executable, "-c", "import shapecert; print(shapecert.kernel_backend)"],
        capture_output=True, text=True, env=env, check=True)
    return out.stdout.strip()


def test_env_var_forces_pure_python():
    assert backend_in_subprocess({"SHAPECERT_PURE_PYTHON": "1"}) == "python"


def test_default_backend_prefers_compiled():
    expected = "python" if kc is None else "compiled"
    assert backend_in_subprocess({}) == expected
