import json

import numpy as np
import pytest

from synhash.cli import build_parser, main, parse_source
from synhash.caps import DEFAULT_CAPS
from synhash.distributions import DensePmf, ProductBernoulli
from synhash.field import FieldSpec

F2 = FieldSpec(2)


def run(argv, capsys):
    rc = main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_bound_main_guarantee_json(capsys):
    rc, out, _ = run(["bound", "main-guarantee", "--m", "2", "--Hp", "9",
                      "--p", "2", "--q", "2"], capsys)
    assert rc == 0
    data = json.loads(out)
    assert data["results"][0]["value"] == 0.03125
    assert data["config"]["command"] == "bound"


def test_bound_corollary_csv_two_rows(capsys):
    rc, out, _ = run(["--format", "csv", "bound", "corollary", "--eps", "0.5",
                      "--p", "2", "--q", "2"], capsys)
    assert rc == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("# config:")
    assert lines[1] == "name,params,lhs,rhs,slack,passed,trials,seed"
    assert len(lines) == 4
    assert lines[2].startswith("corollary-divergence,")
    assert lines[3].startswith("corollary-distance,")


def test_bound_order_keyword_inf(capsys):
    rc, out, _ = run(["bound", "two-point-renyi", "--delta", "0.25", "--p", "inf"],
                     capsys)
    assert rc == 0
    value = json.loads(out)["results"][0]["value"]
    assert value == pytest.approx(0.4150374992788438)


def test_value_error_exits_one(capsys):
    rc, _, err = run(["bound", "phi", "--p", "0.5", "--eps", "1"], capsys)
    assert rc == 1
    assert "error" in err


def test_cap_refusal_exits_two(capsys):
    rc, _, err = run(["--dense-cap", "1000", "smooth", "--n", "12", "--k", "10",
                      "--source", "bernoulli:0.2", "--trials", "5"], capsys)
    assert rc == 2
    assert "refused" in err


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["smooth", "--n", "4"])  # missing required flags
    assert exc.value.code == 1
    capsys.readouterr()


def test_negative_control_counts_as_ok(capsys):
    rc, out, _ = run(["verify", "negative-control-overdraw", "--trials", "40"],
                     capsys)
    assert rc == 0
    row = json.loads(out)["results"][0]
    assert row["expected_failure"] is True
    assert row["passed"] is False


def test_collision_needs_order_two(capsys):
    rc, _, err = run(["smooth", "--n", "8", "--k", "6", "--p", "3", "--collision",
                      "--source", "bernoulli:0.2", "--trials", "5"], capsys)
    assert rc == 1
    assert "collision" in err


def test_smooth_and_bucket_pass(capsys):
    rc, out, _ = run(["smooth", "--n", "10", "--k", "8", "--source",
                      "bernoulli:0.2", "--trials", "50"], capsys)
    assert rc == 0
    row = json.loads(out)["results"][0]
    assert row["passed"] is True and row["trials"] == 50
    rc, out, _ = run(["bucket", "--n", "10", "--eps", "0.25", "--source",
                      "flat:8", "--trials", "30"], capsys)
    assert rc == 0
    assert json.loads(out)["results"][0]["parameters"]["m"] == 5


def test_verify_tuple_probability(capsys):
    rc, out, _ = run(["verify", "tuple-probability", "--n", "3", "--k", "1",
                      "--tuple", "3,3"], capsys)
    assert rc == 0
    row = json.loads(out)["results"][0]
    assert row["parameters"]["ensemble_probability"] == "1/7"


def test_suite_quick_deterministic(tmp_path, capsys):
    a, b, c = (tmp_path / name for name in ("a.json", "b.json", "c.json"))
    assert main(["--output", str(a), "suite", "--quick"]) == 0
    assert main(["--output", str(b), "suite", "--quick"]) == 0
    main(["--seed", "7", "--output", str(c), "suite", "--quick"])
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes() != c.read_bytes()


def test_rm_csv_stable_output(capsys):
    argv = ["--format", "csv", "--stable-output", "rm", "--m-range", "3:5"]
    rc, first, _ = run(argv, capsys)
    assert rc == 0
    lines = first.strip().split("\n")
    assert lines[0].startswith("# config:")
    assert lines[1].startswith("m,n,k,rate,")
    assert len(lines) == 5
    assert all(line.endswith(",0.0") for line in lines[2:])
    rc, second, _ = run(argv, capsys)
    assert first == second


def test_rm_json_m_range(capsys):
    rc, out, _ = run(["rm", "--m-range", "5,3"], capsys)
    assert rc == 0
    data = json.loads(out)
    assert data["config"]["m_range"] == [5, 3]
    assert [row["m"] for row in data["results"]] == [3, 5]


def test_file_source_roundtrip(tmp_path, capsys):
    path = tmp_path / "source.qpmf"
    raw = np.arange(1.0, 17.0)
    DensePmf(F2, 4, raw / raw.sum()).write_qpmf(path)
    rc, out, _ = run(["smooth", "--n", "4", "--k", "2", "--source",
                      f"file:{path}", "--trials", "20"], capsys)
    assert rc == 0
    assert json.loads(out)["results"][0]["parameters"]["n"] == 4
    # dimension mismatch is a usage problem, not a crash
    rc, _, err = run(["smooth", "--n", "5", "--k", "2", "--source",
                      f"file:{path}", "--trials", "5"], capsys)
    assert rc == 1
    assert "expected" in err


def test_source_grammar(capsys):
    caps = DEFAULT_CAPS
    assert isinstance(parse_source("uniform", F2, 3, 0, caps), DensePmf)
    assert isinstance(parse_source("bernoulli:0.3", F2, 3, 0, caps),
                      ProductBernoulli)
    flat = parse_source("flat:2", F2, 3, 0, caps)
    assert np.count_nonzero(flat.probs) == 4
    point = parse_source("point", F2, 3, 0, caps)
    assert point.probs[0] == 1.0
    with pytest.raises(ValueError, match="q = 2"):
        parse_source("bernoulli:0.3", FieldSpec(3), 2, 0, caps)
    with pytest.raises(ValueError, match="unknown source"):
        parse_source("gaussian", F2, 3, 0, caps)
    rc, _, err = run(["verify", "projection-identity", "--n", "4", "--k", "2",
                      "--q", "3", "--source", "bernoulli:0.2"], capsys)
    assert rc == 1


def test_parser_rejects_flags_after_subcommand_values():
    parser = build_parser()
    args = parser.parse_args(["--seed", "5", "--format", "csv", "suite", "--quick"])
    assert args.seed == 5 and args.command == "suite" and args.quick
