import io
import json
import subprocess
import sys

import pytest

from crosswalks.cli import main
from crosswalks.walks import EndSet, sequence


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_table_tsv():
    code, out = run("table", "paper2", "--format", "tsv")
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()]
    assert len(rows) == 5
    assert rows[1] == ["vac-A2", "1", "2", "7", "30", "148", "806", "4716"]


def test_table_json_schema_and_determinism():
    code, out = run("table", "hesitating", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 4
    for rec in data:
        assert set(rec) == {"sequence", "anchor", "params"}
        assert all(isinstance(v, str) for v in rec["sequence"])
    assert data[3]["sequence"][-1] == "2074"
    assert run("table", "hesitating", "--format", "json")[1] == out


def test_count_and_partitions():
    code, out = run("count", "--endset", "A2", "--max-length", "6")
    assert code == 0
    assert out.split("\t")[1:] == ["1", "1", "2", "3", "7", "12", "30\n"]
    code, out = run("partitions", "--noncross-k", "3", "--bisymmetric", "--max-n", "6", "--format", "json")
    assert json.loads(out)["sequence"] == ["1", "2", "3", "7", "12", "30"]


def test_series_and_dump(tmp_path):
    path = tmp_path / "s.txt"
    code, out = run("series", "--flavor", "hesitating", "--endset", "A3", "-N", "6", "--dump-series", str(path))
    assert code == 0
    assert out.split("\t")[1:] == ["1", "2", "6", "22", "92", "422\n"]
    assert path.read_text().startswith("# order 6")


def test_series_window_too_small():
    code, _ = run("series", "-N", "8", "--window=-5,5")
    assert code == 2


def test_guess(tmp_path):
    path = tmp_path / "seq.txt"
    terms = sequence("vacillating", EndSet.parse("A2"), 30)
    path.write_text("# even-length counts\n" + "\n".join(map(str, terms)) + "\n")
    code, out = run("guess", "--in", str(path), "--max-order", "3", "--max-degree", "2")
    assert code == 0
    assert out.splitlines()[1:] == ["p0\t0\t54\t27", "p1\t-81\t-78\t-21", "p2\t-84\t-50\t-7", "p3\t25\t10\t1"]


def test_guess_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1\n2\nthree\n")
    assert run("guess", "--in", str(bad))[0] == 2
    short = tmp_path / "short.txt"
    short.write_text("1\n2\n3\n")
    assert run("guess", "--in", str(short))[0] == 2
    noise = tmp_path / "noise.txt"
    noise.write_text("\n".join(str((7**n) % 1009 + n * n) for n in range(25)))
    assert run("guess", "--in", str(noise), "--max-order", "2", "--max-degree", "2")[0] == 1


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


@pytest.mark.parametrize("suite", ["recurrences", "bijections"])
def test_verify_suites(suite):
    code, out = run("verify", suite)
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_bijection_demo():
    code, out = run("bijection", "demo")
    assert code == 0
    assert "theta(O)\t1101001" in out


def test_asymptotics_json():
    code, out = run("asymptotics", "vac-A4", "--n-max", "400", "--format", "json")
    assert code == 0
    (row,) = json.loads(out)
    assert row["row"] == "vac-A4" and row["alpha_used"] == 4


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "crosswalks", "table", "vacillating", "--terms", "3"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "vac-A1\t1\t1\t2"
