import json
import os
import subprocess

import pytest

CLI = os.environ.get("GDISCORD_CLI", "gdiscord")


def run(*args, **kwargs):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kwargs)


def test_compute_squeezed_pair(tmp_path):
    state = tmp_path / "state.json"
    state.write_text(json.dumps({"standard": {"a": 10, "b": 10, "c": 99**0.5, "d": -(99**0.5)}}))
    out = tmp_path / "report.json"
    r = run("compute", "--state", str(state), "--out", str(out))
    assert r.returncode == 0, r.stderr
    assert "ogd" in r.stdout
    rec = json.loads(out.read_text())
    assert abs(rec["ogd"] - 2.9932228461263809) < 1e-5
    assert rec["det_joint"] <= rec["det_local"]


def test_compute_rejects_unphysical_state(tmp_path):
    state = tmp_path / "bad.json"
    state.write_text(json.dumps({"standard": {"a": 1.2, "b": 1.2, "c": 1.1, "d": 1.1}}))
    r = run("compute", "--state", str(state))
    assert r.returncode == 2
    assert "below 1" in r.stderr


def test_compute_rejects_asymmetric_covariance(tmp_path):
    state = tmp_path / "asym.json"
    cov = [[3, 0, 1, 0], [0, 3, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]
    state.write_text(json.dumps({"cov": cov}))
    r = run("compute", "--state", str(state))
    assert r.returncode == 2
    assert "symmetry violation" in r.stderr


def test_sweep_is_deterministic(tmp_path):
    args = ("sweep", "--family", "cc_ca", "--param", "c=9",
            "--range", "q=-1:1:0.5", "--seed", "3")
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(*args, "--out", str(a)).returncode == 0
    assert run(*args, "--out", str(b)).returncode == 0
    assert a.read_bytes() == b.read_bytes()

    lines = a.read_text().splitlines()
    assert lines[0] == "sweep_value,ogd_numeric,ogd_closed_form,gqd,renyi2,det_local,det_joint,branch"
    assert len(lines) == 6
    last = lines[-1].split(",")
    assert last[0] == "1" and last[1] == "0" and last[-1] == "zero"
    assert b"\r" not in a.read_bytes()


def test_sweep_measure_subset(tmp_path):
    out = tmp_path / "cf.csv"
    r = run("sweep", "--family", "symmetric_t", "--param", "a=10",
            "--range", "0:1:0.5", "--measures", "closed_form", "--out", str(out))
    assert r.returncode == 0, r.stderr
    rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
    for row in rows:
        assert row[1] == "" and row[3] == ""  # numeric columns excluded
        assert row[2] != "" and row[7] != ""


def test_sweep_rejects_invalid_range():
    r = run("sweep", "--family", "cc_ca", "--param", "c=9", "--range", "q=-1:1:-0.5")
    assert r.returncode == 2
    r = run("sweep", "--family", "cc_ca", "--param", "c=9", "--range", "q=0:2:0.5")
    assert r.returncode == 2  # q past the family domain


def test_protocol_gap_vanishes_for_classical_state(tmp_path):
    out = tmp_path / "p.csv"
    r = run("protocol", "--family", "cc_ca", "--param", "c=9", "--param", "q=1",
            "--vs", "1,100", "--out", str(out))
    assert r.returncode == 0, r.stderr
    lines = out.read_text().splitlines()
    assert lines[0] == "vs,i_local,i_joint,gap,ogd,abs_gap_minus_ogd"
    for line in lines[1:]:
        assert abs(float(line.split(",")[3])) <= 1e-9


def test_unknown_flag_exits_2():
    assert run("compute", "--nope").returncode == 2
    assert run("frobnicate").returncode == 2


@pytest.mark.slow
def test_validate_inject_failure_exits_4():
    r = run("validate", "--inject-failure")
    assert r.returncode == 4
    assert "FAIL" in r.stdout
    assert "injected failure" in r.stdout
