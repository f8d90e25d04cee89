import os
import subprocess
import sys

import numpy as np
import pytest

from paperrank import kernels
from paperrank import _pykernels
from paperrank.ranking import paperrank
from paperrank.synth import example_spec, gen_block_model

compiled = pytest.importorskip("paperrank._kernels", reason="Cython extension not built")


@pytest.fixture(scope="module")
def ex6():
    g = gen_block_model(example_spec(6), seed=1)
    inv_f = 1.0 / (g.out_degrees() + 1.0)
    return g, inv_f


def test_matvec_backends_agree(ex6):
    g, inv_f = ex6
    x = np.random.default_rng(0).random(g.n_papers)
    for diag in (1.0, 0.0):
        a = compiled.scaled_matvec(g.in_indptr, g.in_indices, inv_f, x, diag, 0)
        b = _pykernels.scaled_matvec(g.in_indptr, g.in_indices, inv_f, x, diag, 0)
        np.testing.assert_allclose(a, b, rtol=1e-13)


def test_power_backends_agree(ex6):
    g, inv_f = ex6
    va, ia, ha, ca = compiled.damped_power(g.in_indptr, g.in_indices, inv_f, 0.99, 1e-12, 5000, 0)
    vb, ib, hb, cb = _pykernels.damped_power(g.in_indptr, g.in_indices, inv_f, 0.99, 1e-12, 5000, 0)
    assert ca and cb
    assert abs(ia - ib) <= 1
    np.testing.assert_allclose(va, vb, atol=1e-12)
    da = compiled.dummy_power(g.in_indptr, g.in_indices, inv_f, 1e-12, 50000, 0)
    db = _pykernels.dummy_power(g.in_indptr, g.in_indices, inv_f, 1e-12, 50000, 0)
    np.testing.assert_allclose(da[0], db[0], atol=1e-12)


@pytest.mark.parametrize("threads", ["2", "4"])
def test_thread_count_does_not_change_bits(ex6, monkeypatch, threads):
    g, _ = ex6
    monkeypatch.setenv("PAPERRANK_THREADS", "0")
    serial, _ = paperrank(g, 0.99)
    monkeypatch.setenv("PAPERRANK_THREADS", threads)
    par, _ = paperrank(g, 0.99)
    assert serial.scores.tobytes() == par.scores.tobytes()


def test_bad_thread_env(monkeypatch):
    monkeypatch.setenv("PAPERRANK_THREADS", "many")
    with pytest.raises(ValueError):
        kernels.threads()


def test_pure_python_switch():
    code = "import paperrank.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, PAPERRANK_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    env["PAPERRANK_PURE_PYTHON"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "compiled"
