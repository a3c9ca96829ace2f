import json

import pytest

from randpart.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_count(capsys):
    assert run(capsys, "count", "--n", "100") == (0, "190569292", "")
    assert run(capsys, "count", "--prob", "4", "2", "1")[1] == "1/5"
    assert run(capsys, "count", "--n", "4", "--no-part", "1")[1] == "2"


def test_exit_codes(capsys):
    assert run(capsys, "count", "--n", "-3")[0] == 2
    assert run(capsys, "oracle", "--n", "50", "--proc", "1")[0] == 3
    assert run(capsys, "count", "--n", "10", "--table-limit", "5")[0] == 2
    assert run(capsys, "sample", "--n", "500", "--method", "fristedt", "--max-trials", "2")[0] == 3
    with pytest.raises(SystemExit) as info:
        main(["draw", "--n", "4", "--proc", "7"])
    assert info.value.code == 2


def test_series_side_by_side(capsys):
    code, out, _ = run(capsys, "series", "--verify-lemma1", "4", "1", "4", "--format", "json")
    row = json.loads(out)
    assert (row["printed"], row["direct"], row["enumeration"]) == (3, "4", 4)
    row = json.loads(run(capsys, "series", "--verify-lemma2", "4", "2", "4", "--format", "json")[1])
    assert (row["printed"], row["direct"], row["enumeration"]) == (2, "2", 2)


def test_expect(capsys):
    out = run(capsys, "expect", "--n", "4", "--stat", "zn")[1]
    assert out.split()[0] == "12/5"


def test_sample_and_draw_lines(capsys):
    code, out, err = run(capsys, "sample", "--n", "12", "--count", "5", "--seed", "3")
    lines = [json.loads(x) for x in out.splitlines()]
    assert len(lines) == 5
    assert all(sum(int(j) * a for j, a in lam.items()) == 12 for lam in lines)
    assert json.loads(err)["seed"] == 3
    assert run(capsys, "sample", "--n", "12", "--count", "5", "--seed", "3")[1] == out
    code, out, _ = run(capsys, "draw", "--n", "12", "--proc", "3", "--count", "4", "--seed", "3")
    recs = [json.loads(x) for x in out.splitlines()]
    assert all(r["procedure"] == 3 and r["sigma"] <= 12 for r in recs)


def test_oracle_csv(capsys):
    out = run(capsys, "oracle", "--n", "4", "--proc", "2", "--grid", "1,4")[1]
    lines = out.splitlines()
    assert lines[0] == "m_or_d,s,num,den,float"
    assert lines[-1].startswith("1,4,1,2,")


def test_limit_and_asymp(capsys):
    out = run(capsys, "limit", "--proc", "2", "--grid", "0:1:2", "--ms", "1")[1]
    assert out.splitlines()[0] == "m,t,joint,mult_marginal,size_marginal"
    out = run(capsys, "limit", "--proc", "1", "--grid", "0.5:1:2")[1]
    assert len(out.splitlines()) == 5
    out = run(capsys, "asymp", "--what", "pn", "--n", "100,1000")[1]
    rows = [r.split(",") for r in out.splitlines()[1:]]
    assert rows[0][1] == "190569292" and abs(float(rows[1][3])) < 0.05
    for what in ("saddle", "ez", "ey"):
        assert run(capsys, "asymp", "--what", what, "--n", "50,60")[0] == 0
    assert run(capsys, "asymp", "--what", "phi", "--n", "400", "--exact")[0] == 0


def test_simulate_and_compare_pipeline(capsys, tmp_path):
    draws = tmp_path / "draws.jsonl"
    assert main(["draw", "--n", "6", "--proc", "2", "--count", "300", "--seed", "8", "--out", str(draws)]) == 0
    capsys.readouterr()
    code, out, err = run(capsys, "compare", "--draws", str(draws), "--n", "6", "--proc", "2", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["empirical_mass"] == "1/1" and rep["metadata"]["samples"] == 300
    code, out, err = run(capsys, "simulate", "--n", "6", "--proc", "1", "--count", "200", "--seed", "8")
    assert code == 0 and "KS" in err and out.splitlines()[0] == "k,s,hits,empirical,reference,diff"
    out_file = tmp_path / "rep.json"
    assert main(["simulate", "--n", "6", "--proc", "3", "--count", "50", "--format", "json",
                 "--out", str(out_file)]) == 0
    assert json.loads(out_file.read_text())["metadata"]["seed"] == 0
