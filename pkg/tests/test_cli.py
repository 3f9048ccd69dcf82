import json
import os
import subprocess
import sys
from pathlib import Path


from arquiver.cli import main

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_algebra_check(capsys):
    code, out, _ = run(capsys, "algebra", "check", DATA / "quantum_plane_f5.json")
    assert code == 0 and "4" in out


def test_algebra_check_rejects_non_admissible(capsys):
    code, _, err = run(capsys, "algebra", "check", DATA / "not_admissible.json")
    assert code == 2 and "error" in err


def test_missing_file_is_input_error(capsys):
    code, _, _ = run(capsys, "algebra", "check", DATA / "does_not_exist.json")
    assert code == 2


def test_bad_subcommand_and_depth(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "ar", "knit", DATA / "uniserial_2_q.json", "--depth", "99")[0] == 2


def test_rep_ops(capsys):
    code, out, _ = run(capsys, "rep", "ops", DATA / "uniserial_2_q.json")
    assert code == 0
    assert "len" in out.lower() or "length" in out.lower()


def test_rep_syzygy_with_parameter(capsys):
    code, out, _ = run(capsys, "rep", "syzygy", DATA / "m_gamma_f5.json", "--param", "gamma=1", "-n", "2")
    assert code == 0 and "Omega^2" in out


def test_missing_parameter_is_input_error(capsys):
    assert run(capsys, "rep", "syzygy", DATA / "m_gamma_f5.json")[0] == 2


def test_ar_tau_and_sequence(capsys):
    assert run(capsys, "ar", "tau", DATA / "m_gamma_f5.json", "--param", "gamma=2")[0] == 0
    code, out, _ = run(capsys, "ar", "sequence", DATA / "uniserial_2_q.json")
    assert code == 0 and out.strip()


def test_ar_tau_of_projective_fails(capsys, tmp_path):
    rep = {"algebra": str(DATA / "truncated_x4_q.json"), "dims": {"1": 4},
           "matrices": {"x": [["0", "0", "0", "0"], ["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"]]}}
    path = tmp_path / "proj.json"
    path.write_text(json.dumps(rep))
    assert run(capsys, "ar", "tau", path)[0] == 1


def test_ar_knit_json_and_dot(capsys, tmp_path):
    dot = tmp_path / "w.dot"
    code, out, _ = run(capsys, "ar", "knit", DATA / "uniserial_2_q.json", "--depth", "2", "--format", "json", "--dot", dot)
    assert code == 0
    data = json.loads(out)
    assert len(data["nodes"]) == 4
    assert dot.read_text().startswith("digraph")


def test_smash_build(capsys, tmp_path):
    out_file = tmp_path / "smash.json"
    code, _, _ = run(capsys, "smash", "build", DATA / "kronecker_f4.json", DATA / "action_c3.json", "-o", out_file)
    assert code == 0
    data = json.loads(out_file.read_text())
    assert data["vertices"] == ["e0", "e1", "e2"] and len(data["arrows"]) == 6


def test_smash_build_char_two_group_fails(capsys, tmp_path):
    act = tmp_path / "c2.json"
    act.write_text(json.dumps({"group": {"cyclic": [2]}, "arrows": {"x": {"element": [1]}, "y": {"element": [0]}}}))
    assert run(capsys, "smash", "build", DATA / "kronecker_f2.json", act)[0] == 2


def test_lengths_solve(capsys):
    code, out, _ = run(capsys, "lengths", "solve", "--tree", "D~5", "--boundary", "tips=1,-1", "--lmax", "16")
    assert code == 0
    assert "1 5 2 6 7 3" in out
    code, out, _ = run(capsys, "lengths", "solve", "--tree", "D~5", "--boundary", "tips=1,-1", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("l")


def test_lengths_require_l_min(capsys):
    # only l = 4 survives l >= 4, so l >= 5 leaves an empty table
    code, out, _ = run(capsys, "lengths", "solve", "--tree", "A~1,2", "--boundary", "0+1=1,-1", "--require-l-min", "4")
    assert code == 0 and [line.split()[0] for line in out.splitlines()[1:]] == ["4"]
    code, out, _ = run(capsys, "lengths", "solve", "--tree", "A~1,2", "--boundary", "0+1=1,-1", "--require-l-min", "5")
    assert code == 0 and len(out.splitlines()) == 1


def test_tq_commands(capsys):
    code, out, _ = run(capsys, "tq", "fpf", "--catalog", "euclidean")
    assert code == 0 and "D~7" in out and "E~6" not in out
    code, out, _ = run(capsys, "tq", "aut", "--tree", "D~7", "--window", "4")
    assert code == 0


def test_groth_dual_check(capsys):
    code, out, _ = run(capsys, "groth", "dual-check", DATA / "truncated_x4_q.json")
    assert code == 0 and "identity: True" in out


def test_paper_repro_cases(capsys):
    code, out, _ = run(capsys, "paper", "repro", "--case", "nakayama-aq")
    assert code == 0 and out.startswith("[PASS] criterion 1")
    assert run(capsys, "paper", "repro", "--case", "no-such-case")[0] == 2


def _cli(*argv, env=None):
    return subprocess.run([sys.executable, "-m", "arquiver.cli", *map(str, argv)], capture_output=True, env=env, check=False)


def test_output_is_byte_identical_across_runs():
    args = ("ar", "knit", DATA / "trivial_kronecker.json", "--depth", "2", "--format", "json")
    a, b = _cli(*args), _cli(*args)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_seed_from_environment():
    env = dict(os.environ, ARQ_SEED="7")
    args = ("rep", "ops", DATA / "uniserial_2_q.json")
    a = _cli(*args, env=env)
    b = _cli(*args, "--seed", "7")
    assert a.returncode == 0 and a.stdout == b.stdout
    bad = _cli(*args, env=dict(os.environ, ARQ_SEED="seven"))
    assert bad.returncode == 2
