import json

import pytest

from a2tilde import cli, table, tripres
from a2tilde.errors import NotPrimePowerError, RowMismatchError


def run(capsys, *argv):
    rc = cli.main(list(argv))
    return rc, capsys.readouterr()


def test_reproduce_rows():
    rows = table.reproduce_paper_table()
    assert [r.q for r in rows] == [2, 3, 4, 5, 7, 8, 9, 11, 13]
    assert all(r.ok for r in rows)


def test_row_mismatch_detected(monkeypatch):
    bad = dict(table.TABLE)
    bad[8] = (bad[8][0], [(1, 8, 64), (2, 16, 37), (4, 32, 55)])
    monkeypatch.setattr(table, "TABLE", bad)
    with pytest.raises(RowMismatchError):
        table.reproduce_paper_table()


def test_pipeline_q2(tmp_path):
    man = table.pipeline(2, tmp_path)
    assert man["ok"]
    assert len(man["presentations"]) == 2 and len(man["groups"]) == 4
    assert (tmp_path / "plane.json").exists()
    for p in man["presentations"]:
        T = tripres.TrianglePres.from_json((tmp_path / p["file"]).read_text())
        assert tripres.verify(T)


def test_pipeline_q4_orbit_counts(tmp_path):
    man = table.pipeline(4, tmp_path)
    assert (man["f"], man["t"]) == (2, 1)


def test_pipeline_rejects_6(tmp_path):
    with pytest.raises(NotPrimePowerError):
        table.pipeline(6, tmp_path)


def test_pipeline_deterministic(tmp_path):
    table.pipeline(5, tmp_path / "a")
    table.pipeline(5, tmp_path / "b")
    for f in sorted((tmp_path / "a").iterdir()):
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()


def test_cli_exit_codes(capsys, tmp_path):
    assert run(capsys, "pds", "verify", "--set", "1,2,4", "--q", "2")[0] == 0
    assert run(capsys, "pds", "verify", "--set", "0,1,2", "--q", "2")[0] == 1
    assert run(capsys, "pipeline", "--q", "6")[0] == 2
    assert run(capsys, "pds", "multipliers", "--set", "0,1,2", "--q", "2")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_cli_tripres_round_trip(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "tripres", "build", "--set", "1,2,4", "--q", "2", "--out", str(a))[0] == 0
    assert run(capsys, "tripres", "build", "--set", "1,2,4", "--q", "2", "--m", "q2",
               "--out", str(b))[0] == 0
    assert run(capsys, "tripres", "verify", "--file", str(a))[0] == 0
    rc, out = run(capsys, "tripres", "equiv", "--a", str(a), "--b", str(b))
    assert rc == 0 and json.loads(out.out)["equivalent"]
    rc, out = run(capsys, "link", "cycles", "--in", str(a), "--count-only", "--format", "text")
    assert out.out.strip() == "28"
    rc, out = run(capsys, "group", "emit", "--kind", "gammaT", "--in", str(a))
    assert rc == 0 and out.out.startswith("F := FreeGroup(")


def test_cli_mixed_warning(capsys):
    rc, out = run(capsys, "tripres", "build", "--set", "1,5,17,22,23,25", "--q", "5",
                  "--m", "MASK:01")
    assert rc == 0 and "warning" in out.err


def test_cli_verify_fails_on_broken(capsys, tmp_path):
    T = tripres.construct(tripres.DiffSet(2, (1, 2, 4)))
    data = T.to_json()
    data["classes"] = data["classes"][1:]
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(data))
    assert run(capsys, "tripres", "verify", "--file", str(f))[0] == 1


def test_cli_deterministic(capsys):
    first = run(capsys, "tripres", "variants", "--set", "1,5,17,22,23,25", "--q", "5")[1].out
    second = run(capsys, "tripres", "variants", "--set", "1,5,17,22,23,25", "--q", "5")[1].out
    assert first == second


def test_cli_reproduce(capsys):
    rc, out = run(capsys, "reproduce-paper", "--format", "text")
    assert rc == 0 and out.out.count("PASS") == 9
