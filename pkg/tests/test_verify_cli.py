import json
import subprocess
import sys

import pytest

from conftest import PAPER_G
from flowlorentz import verify
from flowlorentz.cli import main, parse_vector, InputError
from flowlorentz.multigraph import Multigraph, format_graph

SMALL = verify.SweepConfig(instance_count=12)


@pytest.fixture
def graph_file(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("# example\n" + format_graph(PAPER_G))
    return str(p)


def test_random_instances_are_deterministic_and_valid():
    for i in range(30):
        g, a = verify.random_instance(SMALL, i)
        assert (g, a) == verify.random_instance(SMALL, i)
        assert g.has_unique_sink and 2 <= g.n <= 4 and len(g.edges) <= 8
        assert sum(a) == 0 and all(0 <= x <= 3 for x in a[:-1]) and any(a[:-1])
    other = verify.SweepConfig(rng_seed=7)
    assert [verify.random_instance(other, i) for i in range(5)] != [verify.random_instance(SMALL, i) for i in range(5)]


def test_sweep_passes_and_is_reproducible():
    r1 = verify.cmd_verify_theorem(SMALL)
    r2 = verify.cmd_verify_theorem(SMALL)
    assert r1.ok
    assert verify.report_to_dict(r1, timing=False) == verify.report_to_dict(r2, timing=False)


def test_serial_and_parallel_agree():
    cfg = verify.SweepConfig(instance_count=6, parallel_workers=2)
    par = verify.cmd_verify_theorem(cfg)
    ser = verify.cmd_verify_theorem(verify.SweepConfig(instance_count=6))
    a = verify.report_to_dict(par, timing=False)
    b = verify.report_to_dict(ser, timing=False)
    a["config"].pop("parallel_workers")
    b["config"].pop("parallel_workers")
    assert a == b


def test_json_roundtrip():
    rep = verify.cmd_verify_theorem(verify.SweepConfig(instance_count=4))
    text = verify.cmd_report_format(rep, "json")
    back = verify.report_from_json(text)
    assert verify.report_to_dict(back) == json.loads(text)


def test_corrupt_hook_yields_certificate():
    cfg = verify.SweepConfig(instance_count=4, corrupt_instance=2)
    rep = verify.cmd_verify_theorem(cfg)
    assert not rep.ok
    assert rep.summary()["failed_instances"] == [2]
    bad = [c for c in rep.records[2].checks if not c.ok]
    assert [c.name for c in bad] == ["sigma_phi_modes_agree"]
    assert bad[0].detail["diff"]
    text = verify.cmd_report_format(rep, "text")
    assert "FAIL instance 2 sigma_phi_modes_agree" in text
    assert "--instance 2" in rep.records[2].reproduce


def test_instance_subset():
    rep = verify.cmd_verify_theorem(SMALL, indices=[3, 5])
    assert [r.index for r in rep.records] == [3, 5]


def test_window_vectors():
    vs = list(verify.window_vectors(3, 1))
    assert len(vs) == 7 and all(sum(v) == 0 for v in vs)


def test_graph_flip_and_log_concavity_checks():
    assert verify.graph_flip_check(PAPER_G, 2)[0]
    assert verify.kostant_log_concavity_check(Multigraph(3, ((1, 2), (1, 3), (2, 3))), 2)[0]


def test_parse_vector():
    assert parse_vector(["1,2", "-3"]) == (1, 2, -3)
    with pytest.raises(InputError):
        parse_vector(["1,a"])


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr()


def test_cli_kostant(graph_file, capsys):
    code, out = run(["kostant", graph_file, "2", "1", "1", "1", "-5"], capsys)
    assert code == 0 and out.out.strip() == "129"
    code, out = run(["--format", "json", "kostant", "--enumerate", graph_file, "1,0,0,0,-1"], capsys)
    assert code == 0 and json.loads(out.out)["count"] == 7  # 1-5, 1-2-5 (x2), 1-3-4-5 (x2), 1-2-3-4-5 (x2)


def test_cli_sigma_and_lorentzian(graph_file, capsys):
    code, out = run(["sigma", "--map", "psi", "--mode", "both", graph_file, "2,1,1,1,-5"], capsys)
    assert code == 0
    assert out.out.splitlines()[0] == "x_1 x_2 x_4"
    code, out = run(["check-lorentzian", "--map", "phi", graph_file, "2,1,1,1,-5"], capsys)
    assert code == 0 and out.out.startswith("LORENTZIAN")


def test_cli_volume_pipeline(tmp_path, capsys):
    g = tmp_path / "g0.txt"
    g.write_text("4\n1 2\n1 3\n2 3\n2 4\n3 4\n")
    code, out = run(["volume", str(g), "--verify-pipeline", "2,0,0,-2", "0,0,0"], capsys)
    assert code == 0 and "MATCH" in out.out
    code, out = run(["volume", str(g)], capsys)
    assert code == 0 and out.out.startswith("x_1 x_2 x_3")


def test_cli_inertia_and_log_concavity(tmp_path, capsys):
    m = tmp_path / "m.txt"
    m.write_text("0 0 1\n0 0 1\n1 1 2\n")
    code, out = run(["inertia", str(m), "--format", "json"], capsys)
    assert code == 0 and json.loads(out.out) == {"n_pos": 1, "n_neg": 1, "n_zero": 1}
    p = tmp_path / "p.txt"
    p.write_text("x_1 x_2\n1/1 2 0\n1/1 0 2\n")
    code, out = run(["log-concavity", "--poly", str(p)], capsys)
    assert code == 1 and "NOT LOG-CONCAVE" in out.out


def test_cli_admissible_and_points(tmp_path, graph_file, capsys):
    p = tmp_path / "pair.txt"
    p.write_text("2 1\n0 0\n1 0\n1 1\n")
    code, out = run(["admissible", str(p)], capsys)
    assert code == 0 and "holds" in out.out
    code, out = run(["lattice-points", "--set", "Q", graph_file, "2,1,1,1,-5"], capsys)
    assert code == 0 and len(out.out.splitlines()) == 9


def test_cli_verify_exit_codes(tmp_path, capsys):
    code, out = run(["verify-theorem", "--count", "3"], capsys)
    assert code == 0 and "verdict: PASS" in out.out
    dest = tmp_path / "r.json"
    code, _ = run(["--format", "json", "--out", str(dest), "verify-theorem", "--count", "3", "--corrupt", "1"], capsys)
    assert code == 1
    data = json.loads(dest.read_text())
    assert data["summary"]["failed_instances"] == [1]


def test_cli_input_errors(tmp_path, capsys):
    assert run(["kostant", str(tmp_path / "missing"), "1", "-1"], capsys)[0] == 2
    g = tmp_path / "bad.txt"
    g.write_text("3\n2 1\n")
    assert run(["kostant", str(g), "1", "0", "-1"], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["sigma", "--map", "chi", "x", "1"])
    assert exc.value.code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "flowlorentz", "verify-theorem", "--count", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and "PASS" in res.stdout
