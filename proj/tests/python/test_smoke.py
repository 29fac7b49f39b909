import json
import math
import os
import subprocess
from pathlib import Path

import numpy as np
import pytest

import qscovert

CLI = os.environ.get("QSCOVERT_CLI")
CONFIGS = Path(os.environ.get("QSCOVERT_CONFIGS", Path(__file__).resolve().parents[2] / "configs"))

RICIAN = {"kind": "rician", "k_factor": 10, "h_los": "ones"}


def test_version():
    assert qscovert.__version__ == "0.1.0"


def test_linalg():
    assert qscovert.spectral_norm(np.diag([3.0, 4.0]).astype(complex)) == pytest.approx(4.0)
    sv = qscovert.singular_values(np.eye(2, dtype=complex))
    assert list(sv) == pytest.approx([1.0, 1.0])
    x = np.array([[0, 2], [1 - 2j, 1], [2, 1 - 1j], [0, -1]])
    y = np.array(
        [
            [-0.35 - 0.27j, 2.39 - 0.19j],
            [1.77 - 1.66j, 1.13 - 1.30j],
            [1.46 + 0.11j, 0.91 - 0.82j],
            [0.23 - 0.19j, -1.25 + 0.53j],
        ]
    )
    angles = np.degrees(qscovert.principal_angles(x, y))
    assert angles[0] == pytest.approx(3.97, abs=0.05)
    assert angles[1] == pytest.approx(26.17, abs=0.05)
    assert qscovert.subspace_sin_sq(x, y) == pytest.approx(1e-3, abs=2e-4)
    q = qscovert.orthonormalize(x)
    assert np.allclose(q.conj().T @ q, np.eye(2))


def test_rank_deficiency_raises():
    m = np.ones((3, 2), dtype=complex)
    with pytest.raises(qscovert.QscovertError):
        qscovert.orthonormalize(m)


def test_covertness_helpers():
    assert qscovert.power_ach(1000, 0.01, 0.1) == pytest.approx(0.010, abs=1e-4)
    assert qscovert.power_con(1000, 0.01, 0.1) == pytest.approx(0.010, abs=1e-4)
    assert qscovert.pinsker_floor(0.1) == pytest.approx(1 - math.sqrt(0.05))
    kl = qscovert.kl_output_vs_noise(np.array([[0.01]], dtype=complex), 1000)
    assert kl == pytest.approx(1000 * (0.01 - math.log(1.01)))
    assert qscovert.delta_n(2000, 0.9) >= 0.99


def test_bounds():
    kappa = qscovert.kappa_epsilon(RICIAN, 1.0, 0.01, 20000, seed=3)
    assert kappa["value"] * math.sqrt(0.1) == pytest.approx(0.53, abs=0.03)
    r1 = qscovert.first_order_rate(400, 0.01, 0.1, 2.0)
    assert r1["rate"] == pytest.approx(2 * math.sqrt(0.1 / 400))
    ach = qscovert.ach_rate_bound(2000, 0.01, 0.1, RICIAN, 20000)
    con = qscovert.con_rate_bound(2000, 0.01, 0.1, RICIAN, 20000)
    assert ach["kind"] == "ach" and con["kind"] == "con"
    assert ach["rate"] == max(0.0, ach["raw_rate"])
    assert con["rate"] > ach["rate"]


def test_run_command_matches_across_workers():
    config = json.loads((CONFIGS / "fig5.json").read_text())
    config["n"] = [500, 1000]
    a = qscovert.run_command("bounds", config, trials=5000, workers=1)
    b = qscovert.run_command("bounds", config, trials=5000, workers=4)
    assert a == b
    assert a.startswith("# qscovert")


def test_run_command_rejects_bad_config():
    with pytest.raises(qscovert.QscovertError):
        qscovert.run_command("bounds", {"command": "bounds", "n": []})


@pytest.mark.skipif(not CLI, reason="CLI path not provided")
def test_cli_exit_codes_and_determinism(tmp_path):
    outs = []
    for workers in (1, 3):
        out = tmp_path / f"fig3_{workers}.csv"
        proc = subprocess.run(
            [CLI, "rate-first-order", "--config", str(CONFIGS / "fig3.json"), "--trials", "3000",
             "--workers", str(workers), "--out", str(out)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"command": "bounds", "n": [], "model": RICIAN}))
    proc = subprocess.run([CLI, "bounds", "--config", str(bad)], capture_output=True, text=True)
    assert proc.returncode == 2
    assert "error" in proc.stderr

    proc = subprocess.run([CLI, "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "0.1.0" in proc.stdout
