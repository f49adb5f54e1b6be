import subprocess
import sys

import numpy as np

from plantedmst import _kernels_numba, _kernels_numpy


def test_kruskal_backends_identical():
    rng = np.random.default_rng(0)
    for n in (2, 5, 40, 200):
        weights = rng.exponential(float(n), size=n * (n - 1) // 2)
        order = np.argsort(weights, kind="stable")
        us_a, vs_a = _kernels_numba.kruskal_select(order, n)
        us_b, vs_b = _kernels_numpy.kruskal_select(order, n)
        assert np.array_equal(us_a, us_b)
        assert np.array_equal(vs_a, vs_b)
        assert len(us_a) == n - 1
        assert np.all(us_a < vs_a)


def test_prufer_backends_identical():
    rng = np.random.default_rng(1)
    for n in (3, 4, 17, 300):
        for _ in range(5):
            code = rng.integers(0, n, size=n - 2).astype(np.int64)
            a = _kernels_numba.prufer_decode(code, n)
            b = _kernels_numpy.prufer_decode(code, n)
            assert np.array_equal(a[0], b[0])
            assert np.array_equal(a[1], b[1])


def _backend_in_subprocess(env_value):
    code = (
        "import plantedmst, sys; sys.stdout.write(plantedmst.ACTIVE_BACKEND)"
    )
    return subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"PLANTEDMST_BACKEND": env_value, "PATH": "/usr/bin:/bin"},
        timeout=300,
    )


def test_env_flag_selects_numpy():
    proc = _backend_in_subprocess("numpy")
    assert proc.returncode == 0
    assert proc.stdout == "numpy"


def test_env_flag_auto_prefers_numba():
    proc = _backend_in_subprocess("auto")
    assert proc.returncode == 0
    assert proc.stdout == "numba"


def test_env_flag_rejects_garbage():
    proc = _backend_in_subprocess("cuda")
    assert proc.returncode != 0
    assert "PLANTEDMST_BACKEND" in proc.stderr


def test_numpy_backend_runs_full_pipeline():
    proc = subprocess.run(
        [
            sys.executable, "-m", "plantedmst.cli", "simulate", "--model",
            "tree", "--n", "30", "--trials", "2", "--seed", "4",
        ],
        capture_output=True,
        text=True,
        env={"PLANTEDMST_BACKEND": "numpy", "PATH": "/usr/bin:/bin"},
        timeout=300,
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.startswith("trial,seed,overlap,weight")


def test_backend_choice_does_not_change_results():
    args = [
        sys.executable, "-m", "plantedmst.cli", "simulate", "--model", "path",
        "--n", "40", "--trials", "3", "--seed", "9", "--format", "json",
    ]
    a = subprocess.run(
        args, capture_output=True, text=True,
        env={"PLANTEDMST_BACKEND": "numba", "PATH": "/usr/bin:/bin"}, timeout=300,
    )
    b = subprocess.run(
        args, capture_output=True, text=True,
        env={"PLANTEDMST_BACKEND": "numpy", "PATH": "/usr/bin:/bin"}, timeout=300,
    )
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
