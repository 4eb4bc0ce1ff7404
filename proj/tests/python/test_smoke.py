import json
import math
import os
import subprocess

import numpy as np
import pytest

import sjk


def origin(n):
    return np.zeros(n, dtype=complex), np.zeros((n, n), dtype=complex)


def test_det_at_origin():
    z, W = origin(1)
    assert sjk.metric_det(z, W, 2.0, 1.0) == {"value": 1.0, "closed_form": 1.0, "constant_C": 1.0}


def test_metric_times_inverse():
    z, W = sjk.sample_jacobi_ball(2, 11)
    h = sjk.metric(z, W, 3.0, 1.5)["h"]
    hinv = sjk.metric_inverse(z, W, 3.0, 1.5)
    assert np.abs(h @ hinv - np.eye(5)).max() < 1e-10


def test_curvature_and_laplacian():
    z, W = sjk.sample_jacobi_ball(2, 3)
    assert sjk.curvature(z, W, 2.0, 1.0)["scalar_curvature"] == pytest.approx(-12.0)
    assert sjk.laplacian("lnG", z, W, 2.0, 1.0) == pytest.approx(12.0, rel=1e-5)


def test_kernels():
    a = sjk.sample_jacobi_ball(1, 1)
    b = sjk.sample_jacobi_ball(1, 2)
    assert sjk.epsilon(*a, 4.0, 1.0) == pytest.approx(1.0, abs=1e-10)
    r = sjk.kernel(*a, *b, 4.0, 1.0)
    assert 0.0 < r["berezin"] < 1.0
    assert sjk.normalization_constant(1, 5.0, 1.0) == pytest.approx(1.0 / math.pi**2)


def test_cayley_round_trip():
    z, W = sjk.sample_jacobi_ball(2, 5)
    u, V = sjk.partial_cayley_inverse(z, W)
    z2, W2 = sjk.partial_cayley(u, V)
    assert np.abs(W2 - W).max() < 1e-12
    assert np.abs(z2 - z).max() < 1e-12


def test_error_kind():
    z = np.zeros(1, dtype=complex)
    W = np.full((1, 1), 2.0, dtype=complex)
    with pytest.raises(sjk.SjkError) as info:
        sjk.metric(z, W, 2.0, 1.0)
    assert info.value.args[0] == "NotInBall"


def test_verify():
    report = sjk.verify("inverse", n=2, trials=3)
    assert report["pass"]
    assert {p["property"] for p in report["properties"]} >= {"inverse_identity"}


def test_cli_binary():
    exe = os.environ.get("SJK_CLI")
    if not exe:
        pytest.skip("SJK_CLI not set")
    out = subprocess.run([exe, "eval", "det", "--n", "1", "--point", "origin"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["value"] == 1.0
    code, text, _ = sjk.run_cli(["eval", "det", "--n", "1", "--point", "origin"])
    assert code == 0 and text == out.stdout
