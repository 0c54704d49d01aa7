import json
import subprocess
import sys

import pytest

from extq.cli import main, parse_weight


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_ext_json_example(capsys):
    code, out, _ = run(capsys, "ext", "--type", "A", "--rank", "1", "--ell", "3", "--lambda", "1", "--mu", "3", "--json", "--no-cache")
    assert code == 0
    (rec,) = records(out)
    assert rec["version"] == "1"
    assert rec["query"] == {"lambda": [1], "mu": [3]}
    assert rec["result"]["dimension"] == 1
    assert rec["result"]["case"] == "general-sum"
    assert out == json.dumps(rec, sort_keys=True) + "\n"


def test_mu_example(capsys):
    code, out, _ = run(capsys, "mu", "--type", "A", "--rank", "1", "--ell", "3", "--y", "e", "--w", "s0", "--json", "--no-cache")
    assert code == 0
    assert records(out)[0]["result"]["mu"] == 1


def test_human_output(capsys):
    code, out, _ = run(capsys, "dim", "--type", "C", "--rank", "3", "--lambda", "0,1,0")
    assert code == 0 and "14" in out
    code, out, _ = run(capsys, "verify-very-special", "--rank", "2")
    assert code == 0 and "all checks as expected" in out and "XFAIL" in out


@pytest.mark.parametrize("n", [2, 3, 4])
def test_verify_very_special_json(capsys, n):
    code, out, _ = run(capsys, "verify-very-special", "--rank", str(n), "--json")
    assert code == 0
    assert records(out)[0]["result"]["passed"] is True


def test_other_commands(capsys):
    cmds = [
        ["e1", "--type", "A", "--rank", "1", "--ell", "3", "--lambda", "1", "--mu", "0"],
        ["kl", "--type", "A", "--rank", "2", "--ell", "3", "--y", "e", "--w", "s0 s1 s2 s0"],
        ["tensor", "--type", "C", "--rank", "2", "--nu", "1,0", "--mu", "1,0"],
        ["char", "--type", "C", "--rank", "2", "--lambda", "1,0"],
        ["sumformula", "--type", "C", "--rank", "2", "--lambda", "2,0"],
        ["a0", "--type", "C", "--rank", "2", "--ell", "5"],
        ["alcove", "--type", "A", "--rank", "1", "--ell", "3", "--lambda", "3"],
        ["check-a0", "--type", "A", "--rank", "1", "--ell", "3"],
    ]
    results = {}
    for c in cmds:
        code, out, err = run(capsys, *c, "--json", "--no-cache")
        assert code == 0, (c, err)
        results[c[0]] = records(out)[0]["result"]
    assert results["kl"] == {"coefficients": [1, 1], "polynomial": "1 + t"}
    assert results["check-a0"]["passed"] is True
    assert results["tensor"]["decomposition"] == [[[0, 0], 1], [[0, 1], 1], [[2, 0], 1]]
    assert results["e1"]


def test_epsilon_basis(capsys):
    code, out, _ = run(capsys, "dim", "--type", "C", "--rank", "2", "--basis", "epsilon", "--lambda", "1,1", "--json")
    assert code == 0
    assert records(out)[0]["query"]["lambda"] == [0, 1]


def test_usage_errors(capsys):
    code, _, err = run(capsys, "ext", "--type", "A", "--rank", "1", "--ell", "3", "--lambda", "1,2", "--mu", "3")
    assert code == 64 and "coordinates" in err
    assert run(capsys, "ext", "--type", "A", "--rank", "1", "--lambda", "1", "--mu", "3")[0] == 64
    assert run(capsys, "ext", "--type", "A", "--rank", "1", "--ell", "3", "--lambda", "-1", "--mu", "3")[0] == 64
    assert run(capsys, "ext", "--type", "Q", "--rank", "1", "--ell", "3", "--lambda", "1", "--mu", "3")[0] == 64
    assert run(capsys, "ext", "--type", "C", "--rank", "2", "--ell", "3", "--lambda", "1,0", "--mu", "0,0")[0] == 64
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["ext", "--jobs", "0", "--ell", "3"])
    assert exc.value.code == 64


def test_not_covered_exit_status(capsys):
    code, out, _ = run(capsys, "ext", "--type", "C", "--rank", "2", "--ell", "2", "--lambda", "1,0", "--mu", "3,0", "--json", "--no-cache")
    assert code == 2
    assert records(out)[0]["result"]["case"] == "not-covered"


def test_cache_dir_and_mismatch(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("EXTQ_CACHE_DIR", str(tmp_path))
    argv = ["ext", "--type", "A", "--rank", "1", "--ell", "3", "--box", "12", "--json"]
    code, first, _ = run(capsys, *argv)
    assert code == 0
    cache = tmp_path / "klcache-A1-ell3.txt"
    assert cache.exists() and cache.read_text().startswith("klcache 1 A 1 3\n")
    code, second, _ = run(capsys, *argv)
    assert code == 0 and second == first
    code, _, err = run(capsys, "ext", "--type", "A", "--rank", "1", "--ell", "5", "--lambda", "0", "--mu", "8", "--cache-file", str(cache))
    assert code == 65 and "--no-cache" in err
    code, _, _ = run(capsys, "ext", "--type", "A", "--rank", "1", "--ell", "5", "--lambda", "0", "--mu", "8", "--cache-file", str(cache), "--no-cache")
    assert code == 0


def test_batch_file(tmp_path, capsys):
    batch = tmp_path / "q.txt"
    batch.write_text("# pairs\n1;3\n{\"lambda\": [0], \"mu\": [4]}\n\n3;6\n")
    code, out, _ = run(capsys, "ext", "--type", "A", "--rank", "1", "--ell", "3", "--batch", str(batch), "--json", "--no-cache")
    assert code == 0
    assert [r["result"]["dimension"] for r in records(out)] == [1, 1, 0]


@pytest.mark.parametrize("ell", [3, 5])
def test_jobs_output_identical(capsys, ell):
    base = ["ext", "--type", "A", "--rank", "1", "--ell", str(ell), "--box", "20", "--json", "--no-cache"]
    code1, one, _ = run(capsys, *base, "--jobs", "1")
    code4, four, _ = run(capsys, *base, "--jobs", "4")
    assert code1 == code4 == 0
    assert one == four and len(records(one)) == 21 * 21


def test_cache_roundtrip_command(tmp_path, capsys):
    code, out, _ = run(capsys, "cache-roundtrip", "--type", "A", "--rank", "1", "--ell", "3", "--length", "12", "--cache-dir", str(tmp_path), "--json")
    assert code == 0
    rep = records(out)[0]["result"]
    assert rep["passed"] and rep["checked"] == min(100, rep["entries"])


def test_parse_weight():
    assert parse_weight("(1, 2)") == (1, 2)
    assert parse_weight("[3]") == (3,)
    assert parse_weight("1 0 2") == (1, 0, 2)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "extq", "dim", "--type", "A", "--rank", "2", "--lambda", "1,1", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["dimension"] == 8
