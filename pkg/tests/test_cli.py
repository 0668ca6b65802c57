import json
import subprocess
import sys

import pytest

from kleinfour import __version__
from kleinfour.cli import main

ENVELOPE_KEYS = ["command", "version", "inputs", "result", "checks"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def envelope(out):
    data = json.loads(out)
    assert list(data) == ENVELOPE_KEYS
    assert data["version"] == __version__
    for c in data["checks"]:
        assert set(c) == {"name", "pass", "detail"} and isinstance(c["pass"], bool)
    return data


def test_classify_q7(capsys):
    code, out, _ = run(capsys, "classify", "--q", "7")
    assert code == 0
    data = envelope(out)
    assert data["result"]["transversal"] == [[5, 1, 4], [6, 1, 4]]
    assert data["result"]["isoclass_count"] == 2


def test_classify_csv(capsys):
    code, out, _ = run(capsys, "classify", "--p", "3", "--n", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "q,t,c1,c2,c3"
    assert len(lines) == 5 and all(line.startswith("9,") for line in lines[1:])


def test_admissible_degenerate(capsys):
    code, out, _ = run(capsys, "admissible", "--q", "7", "--c", "1,1,1")
    assert code == 0
    res = envelope(out)["result"]
    assert res["admissible"] is False
    assert res["reason"] == "(1-c1)c2 = 0"
    assert res["witness"] is not None


def test_admissible_member(capsys):
    code, out, _ = run(capsys, "admissible", "--q", "7", "--c", "5,1,4")
    res = envelope(out)["result"]
    assert code == 0 and res["admissible"] is True and res["witness"] is None


def test_code_literals(capsys):
    code, out, _ = run(capsys, "admissible", "--q", "9", "--c", "@3,1,@7")
    assert code == 0
    assert envelope(out)["result"]["c"] == [3, 1, 7]


def test_iso_and_aut(capsys):
    code, out, _ = run(capsys, "iso", "--q", "7", "--c", "5,1,4", "--d", "6,1,4")
    assert code == 0 and envelope(out)["result"]["isomorphic"] is False
    code, out, _ = run(capsys, "aut", "--q", "7", "--c", "5,1,4")
    res = envelope(out)["result"]
    assert code == 0 and res["tag"] == "KLEIN_FOUR" and res["order"] == 4


def test_failed_check_exit_1(capsys):
    code, out, _ = run(capsys, "aut", "--q", "7", "--c", "1,1,1")
    assert code == 1
    assert not all(c["pass"] for c in envelope(out)["checks"])


def test_orbits_dot_and_csv(capsys):
    code, out, _ = run(capsys, "orbits", "--q", "5", "--format", "dot")
    assert code == 0 and out.startswith("graph orbits_nu1")
    code, out, _ = run(capsys, "orbits", "--q", "5", "--format", "csv")
    assert out.splitlines()[0] == "orbit,c1,c2,c3"
    code, out, _ = run(capsys, "orbits", "--q", "5", "--nu", "0")
    assert code == 0 and envelope(out)["result"]["objects"] == []


def test_verify_q5(capsys):
    code, out, _ = run(capsys, "verify", "--q", "5", "--suite", "all", "--threads", "2")
    data = envelope(out)
    assert code == 0 and data["result"]["count"] == len(data["checks"]) > 20


def test_budget_exit_2(capsys, monkeypatch):
    code, _, err = run(capsys, "verify", "--q", "7", "--suite", "morphisms", "--budget", "5")
    assert code == 2 and "requires q <= 5" in err
    monkeypatch.setenv("KLEINFOUR_BUDGET", "5")
    code, _, err = run(capsys, "admissible", "--q", "7", "--c", "5,1,4")
    assert code == 2 and "budget exceeded" in err


@pytest.mark.parametrize("argv", [
    ["classify", "--q", "15"],
    ["classify"],
    ["admissible", "--q", "7", "--c", "1,2"],
    ["classify", "--q", "7", "--t", "2"],
    ["verify", "--q", "5", "--suite", "nope"],
    ["admissible", "--q", "7", "--c", "1,1,1", "--format", "csv"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_error_is_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_ordered(capsys):
    code, out, _ = run(capsys, "ordered", "check", "--c", "1,1,-2")
    res = envelope(out)["result"]
    assert code == 0 and res["in_TN1"] and res["certificate"] == "certified"
    code, out, _ = run(capsys, "ordered", "check", "--c", "1/4,0,-1")
    res = envelope(out)["result"]
    assert res["witness"] is not None and not res["in_C"]
    code, out, _ = run(capsys, "ordered", "report")
    assert code == 0 and envelope(out)["result"]["type_S"] == ["1", "0", "-1"]


def test_out_file_and_determinism(capsys, tmp_path):
    target = tmp_path / "r.json"
    assert main(["classify", "--q", "5", "--out", str(target)]) == 0
    first = target.read_text()
    main(["classify", "--q", "5", "--out", str(target)])
    assert target.read_text() == first
    envelope(first)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kleinfour.cli", "classify", "--q", "5"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["isoclass_count"] == 2
