import os
import subprocess
import sys

import numpy as np
import pytest

from calgebra import all_vectors, kernels, vec

needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")


@pytest.mark.parametrize("width", [1, 2, 3])
def test_op_tables_match_vectors(width):
    tb = kernels.op_tables(width)
    vs = all_vectors(width)
    for i, a in enumerate(vs):
        assert vs[tb["neg"][i]] == ~a
        assert vs[tb["down"][i]] == a.down()
        for j, b in enumerate(vs):
            assert vs[tb["conj"][i, j]] == a & b
            assert vs[tb["disj"][i, j]] == a | b


def test_planes_and_index():
    t, f = kernels.planes(2)
    assert list(kernels.index_of(2, t, f)) == list(range(9))
    a = vec("TU")
    assert int(t[a.index]) == a.t and int(f[a.index]) == a.f


def test_table_bound():
    with pytest.raises(ValueError):
        kernels.op_tables(kernels.TABLE_MAX_WIDTH + 1)


def _random_seeds(n, k, rng):
    for _ in range(k):
        seed = rng.random(n) < 0.1
        seed[[0, 13, 26]] = True  # TTT, FFF, UUU
        yield seed


@needs_numba
def test_closure_backends_agree():
    tb = kernels.op_tables(3)
    rng = np.random.default_rng(0)
    for seed in _random_seeds(27, 50, rng):
        a = kernels.closure_numpy(tb["neg"], tb["conj"], seed)
        b = kernels.closure_numba(tb["neg"], tb["conj"], seed)
        assert np.array_equal(a, b)


@needs_numba
@pytest.mark.parametrize("width,nfree", [(2, 6), (3, 14)])
def test_sweep_backends_agree(width, nfree):
    tb = kernels.op_tables(width)
    base = [0, (3 ** width - 1) // 2, 3 ** width - 1]
    free = [i for i in range(3 ** width) if i not in base][:nfree]
    a = kernels.closed_subsets_numpy(tb["neg"], tb["conj"], base, free, chunk=1 << 10)
    b = kernels.closed_subsets_numba(tb["neg"], tb["conj"], base, free)
    assert np.array_equal(np.sort(a), np.sort(b))
    assert len(a) > 0


def test_sweep_count_width_2():
    tb = kernels.op_tables(2)
    base = [0, 4, 8]
    free = [i for i in range(9) if i not in base]
    assert len(kernels.closed_subsets(tb["neg"], tb["conj"], base, free)) == 5


def test_numpy_fallback_selected_by_env():
    env = dict(os.environ, CALGEBRA_NO_NUMBA="1")
    code = ("from calgebra import kernels, enumerate_subalgebras as e;"
            "print(kernels.BACKEND, len(e(2)), len(e(3)))")
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.split() == ["numpy", "5", "86"]


@needs_numba
def test_default_backend_is_numba():
    env = {k: v for k, v in os.environ.items() if k != "CALGEBRA_NO_NUMBA"}
    env["CALGEBRA_WORKERS"] = "2"
    proc = subprocess.run([sys.executable, "-c", "from calgebra import kernels; print(kernels.BACKEND)"],
                          env=env, capture_output=True, text=True)
    assert proc.stdout.strip() == "numba"
    assert "Warning" not in proc.stderr
