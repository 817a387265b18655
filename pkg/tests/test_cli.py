import json
import os

import pytest

import refdata
from monadkit import cli

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def golden(name):
    return os.path.join(GOLDEN, name)


def run_json(capsys, argv):
    code = cli.run(argv)
    out = capsys.readouterr().out
    report = json.loads(out) if out.strip() else None
    if report is not None:
        assert report["schema_version"] == "1"
    return code, report


def test_validate_golden_ok(capsys):
    code, rep = run_json(capsys, ["validate", golden("monad_span4.json")])
    assert code == 0
    assert rep["report"]["in_X0"] is True


def test_validate_bad_monad_exits_2(capsys):
    code, rep = run_json(capsys, ["validate", golden("monad_zero.json")])
    assert code == 2


def test_missing_file_exits_3(capsys):
    assert cli.run(["validate", "/nonexistent/file.json"]) == 3
    assert cli.run(["no-such-command"]) == 3


def test_normalize_n(capsys):
    code, rep = run_json(capsys, ["normalize-n", golden("n_span4.json")])
    assert code == 0
    assert rep["result"]["tag"] == "SPAN4"
    code, rep = run_json(capsys, ["normalize-n", golden("n_span3.json")])
    assert rep["result"]["tag"] == "SPAN3"


def test_classify_n1(capsys, tmp_path):
    path = tmp_path / "n1.json"
    path.write_text(json.dumps({"field": "Q", "entries": refdata.N1_REPS["U3"]}))
    code, rep = run_json(capsys, ["classify-n1", str(path)])
    assert code == 0
    assert rep["result"]["tag"] == "U3"


def test_syzygy_dimension(capsys):
    code, rep = run_json(capsys, ["syzygy", golden("n_span4.json")])
    assert code == 0
    assert rep["dimension"] == 10


def test_make_m_then_validate_pipeline(capsys, tmp_path):
    p = ",".join(str(c) for c in refdata.P_GOLDEN_SPAN4)
    q = ",".join(str(c) for c in refdata.Q_GOLDEN_SPAN4)
    out = tmp_path / "made.json"
    code = cli.run(
        [
            "make-m", golden("n_span4.json"),
            "--p", p, "--q", q, "--out", str(out),
        ]
    )
    capsys.readouterr()
    assert code == 0
    made = json.loads(out.read_text())
    assert made["report"]["in_X0"] is True
    # a make-m report is itself accepted as a monad file
    code, rep = run_json(capsys, ["validate", str(out)])
    assert code == 0
    assert rep["report"]["in_X0"] is True


def test_make_m_wrong_count_exits_3(capsys):
    code = cli.run(["make-m", golden("n_span4.json"), "--p", "1,2", "--q", "3"])
    assert code == 3


def test_dual_ranks(capsys):
    code, rep = run_json(capsys, ["dual", golden("monad_span4.json")])
    assert code == 0 and rep["rank"] == 8
    code, rep = run_json(capsys, ["dual", golden("monad_span3.json")])
    assert code == 0 and rep["rank"] == 7


def test_jump_generic_line(capsys):
    code, rep = run_json(
        capsys, ["jump", golden("monad_span4.json"), "--line", "e2;e4"]
    )
    assert code == 0
    assert rep["class"]["rank"] == 2


def test_jump_strata_quick(capsys, tmp_path):
    obj = json.loads(open(golden("monad_span4.json")).read())
    obj["field"] = "Fp:5"
    path = tmp_path / "monad_f5.json"
    path.write_text(json.dumps(obj))
    code, rep = run_json(capsys, ["jump-strata", str(path), "--q", "5", "--quick"])
    assert code == 0
    assert rep["lines_seen"] == 500
    assert rep["expected_total"] == 20306
    assert sum(rep["histogram"].values()) == 500


def test_splitting(capsys):
    code, rep = run_json(capsys, ["splitting", golden("monad_span4.json")])
    assert code == 0
    assert rep["found"] is True
    code, rep = run_json(capsys, ["splitting", golden("monad_span3.json")])
    assert code == 2


def test_smooth_check(capsys):
    code, rep = run_json(capsys, ["smooth-check", golden("monad_span4.json")])
    assert code == 0
    assert rep["jacobian_rank"] == 20
    assert rep["jacobian_shape"] == [20, 60]
    assert rep["stabilizer_rank_n"] == 6
    assert rep["stabilizer_rank_mn"] == 9


def test_stability(capsys):
    code, rep = run_json(
        capsys, ["stability", golden("monad_span4.json"), "--trials", "25"]
    )
    assert code == 0
    assert rep["report"]["all_stable"] is True


def test_det_quadric(capsys):
    code, rep = run_json(capsys, ["det-quadric", golden("n_span4.json")])
    assert code == 0 and rep["rank"] == 4
    code, rep = run_json(capsys, ["det-quadric", golden("n_span3.json")])
    assert code == 0 and rep["rank"] == 3


def test_sample_strata(capsys):
    code, rep = run_json(
        capsys,
        ["sample-strata", "--q", "5", "--trials", "2000", "--seed", "1"],
    )
    assert code == 0
    assert rep["report"]["counts"] == {
        "y0_pass": 1983,
        "span3": 82,
        "x0_pass": 1440,
        "rank7": 11,
        "spanM3": 3,
    }


def test_restrict(capsys):
    code, rep = run_json(capsys, ["restrict", golden("monad_span4.json")])
    assert code == 0
    assert rep["h0"] == 2
    assert rep["induced"] is not None
    code, rep = run_json(
        capsys,
        ["restrict", golden("monad_span4.json"), "--hyperplane", "e0;e1;e2;e3"],
    )
    assert code == 0
    assert rep["h0"] == 1


def test_scroll_test(capsys):
    on = "1,1,1,1,2,2,2,3,3,3"
    code, rep = run_json(capsys, ["scroll-test", golden("n_span4.json"), "--p", on])
    assert code == 0
    assert rep["tag"] == "SPAN4"
    assert rep["result"]["on_scroll"] is True
    off = "1,0,0,0,0,0,0,0,0,0"
    code, rep = run_json(capsys, ["scroll-test", golden("n_span4.json"), "--p", off])
    assert code == 0
    assert rep["result"]["on_scroll"] is False
