import json
import subprocess
import sys

import pytest

from blockosc.cli import main

CUBE1 = '{"type":"cube","k":1}'
CUBE2 = '{"type":"cube","k":2}'
CUBE8 = '{"type":"cube","k":8}'
PAIR_FAM = f"[{CUBE2},{CUBE2}]"
FIXTURE_FAM = f"[{CUBE1},{CUBE1}]"
SEQ_228 = f'{{"prefix":[{CUBE2},{CUBE2}],"tail":{CUBE8}}}'
SECTION6 = '{"type":"section6"}'
FIXTURE = '{"type":"even-pair"}'


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


class TestEnvelope:
    def test_schema_and_command(self, capsys):
        code, payload = run_json(capsys, "barrier", "rank",
                                 "--descriptor", '{"type":"cube","k":3}')
        assert code == 0
        assert payload["schema_version"] == 1
        assert payload["command"] == "barrier rank"
        assert payload["report"] == {"rank": "w^3", "confirmed": True,
                                     "method": "structural",
                                     "probe_bound": None}

    def test_deterministic_bytes(self, capsys):
        argv = ("oscillation", "gap", "--spec", FIXTURE,
                "--family", FIXTURE_FAM,
                "--universe", "[1,2,3,4,5,6,7,8]")
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second
        assert first.endswith("\n")

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "barrier", "rank",
                           "--descriptor", '{"type":"cube","k":3}',
                           "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "key,value"
        assert "report.rank,w^3" in lines
        assert "command,barrier rank" in lines

    def test_out_file_and_env_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("BLOCKOSC_OUT_DIR", str(tmp_path))
        code, out, _ = run(capsys, "barrier", "rank",
                           "--descriptor", '{"type":"schreier"}',
                           "--out", "rank.json")
        assert code == 0
        assert out == ""
        payload = json.loads((tmp_path / "rank.json").read_text())
        assert payload["report"]["rank"] == "≥w^w"

    def test_absolute_out_ignores_env_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("BLOCKOSC_OUT_DIR", str(tmp_path / "unused"))
        target = tmp_path / "direct.json"
        run(capsys, "barrier", "rank", "--descriptor", '{"type":"cube","k":1}',
            "--out", str(target))
        assert json.loads(target.read_text())["report"]["rank"] == "w"

    def test_at_file_input(self, capsys, tmp_path):
        desc = tmp_path / "barrier.json"
        desc.write_text('{"type":"cube","k":2}')
        code, payload = run_json(capsys, "barrier", "members",
                                 "--descriptor", f"@{desc}", "--bound", "4")
        assert code == 0
        assert payload["report"]["count"] == 6


class TestErrors:
    def test_unknown_type_exits_2(self, capsys):
        code, out, err = run(capsys, "barrier", "rank",
                             "--descriptor", '{"type":"dodecahedron"}')
        assert code == 2
        assert out == ""
        detail = json.loads(err)
        assert detail["error"] == "SchemaError"
        assert detail["path"] == "$.type"

    def test_malformed_json_exits_2(self, capsys):
        code, _, err = run(capsys, "barrier", "rank", "--descriptor", "{oops")
        assert code == 2
        assert "invalid JSON" in json.loads(err)["message"]

    def test_missing_at_file_exits_2(self, capsys, tmp_path):
        code, _, err = run(capsys, "barrier", "rank",
                           "--descriptor", f"@{tmp_path}/absent.json")
        assert code == 2
        assert "cannot read" in json.loads(err)["message"]

    def test_mono_requires_one_source(self, capsys):
        code, _, err = run(capsys, "ramsey", "find-mono",
                           "--coloring", '"parity-of-sum"',
                           "--universe", "[1,2,3]", "--target", "2")
        assert code == 2
        assert json.loads(err)["error"] == "InvalidArgumentError"


class TestBarrier:
    def test_members(self, capsys):
        _, payload = run_json(capsys, "barrier", "members",
                              "--descriptor", '{"type":"schreier"}',
                              "--bound", "3")
        assert payload["report"]["members"] == [[1], [2, 3]]

    def test_front(self, capsys):
        _, payload = run_json(capsys, "barrier", "front",
                              "--descriptor", CUBE2,
                              "--set", '{"kind":"arithmetic","start":2,"step":2}')
        assert payload["report"]["front"] == [2, 4]

    def test_axioms_pass(self, capsys):
        code, payload = run_json(capsys, "barrier", "axioms",
                                 "--descriptor", '{"type":"schreier"}',
                                 "--bound", "8")
        assert code == 0
        rep = payload["report"]
        assert rep["sperner_ok"] and rep["cover_ok"]
        assert rep["violations"] == []
        assert all(probe is not None for _, probe in rep["cover_probes"])

    def test_empirical_rank(self, capsys):
        # quotients of sums have no structural rule; rank probes the enumeration
        desc = json.dumps({
            "type": "quotient",
            "base": {"type": "sum", "parts": [{"type": "cube", "k": 1},
                                              {"type": "cube", "k": 1}]},
            "s": [1],
        })
        _, payload = run_json(capsys, "barrier", "rank",
                              "--descriptor", desc, "--probe-bound", "9")
        assert payload["report"] == {"rank": "w", "confirmed": False,
                                     "method": "empirical", "probe_bound": 9}


class TestBlocks:
    def test_enumerate(self, capsys):
        _, payload = run_json(capsys, "blocks", "enumerate",
                              "--family", PAIR_FAM, "--bound", "4")
        assert payload["report"] == {"blocks": [[[1, 2], [3, 4]]], "count": 1}

    def test_compare(self, capsys):
        _, payload = run_json(capsys, "blocks", "compare",
                              "--left", "[[1],[3]]", "--right", "[[2],[4]]")
        assert payload["report"] == {"relation": "less"}

    def test_join_then_split_round_trip(self, capsys):
        _, joined = run_json(capsys, "blocks", "join", "--family", PAIR_FAM,
                             "--block", "[[1,2],[5,9]]")
        assert joined["report"]["set"] == [1, 2, 5, 9]
        code, payload = run_json(capsys, "blocks", "split",
                                 "--family", PAIR_FAM, "--set", "[1,2,5,9]")
        assert code == 0
        assert payload["report"]["block"] == [[1, 2], [5, 9]]

    def test_split_miss_exits_1(self, capsys):
        code, payload = run_json(capsys, "blocks", "split",
                                 "--family", PAIR_FAM, "--set", "[1,2,3]")
        assert code == 1
        rep = payload["report"]
        assert rep["error"] == "not-in-sum"
        assert rep["consumed"] == [[1, 2]]
        assert rep["leftover"] == [3]


class TestRamsey:
    def test_find_mono_hit(self, capsys):
        code, payload = run_json(
            capsys, "ramsey", "find-mono", "--barrier", CUBE2,
            "--coloring", '"parity-of-sum"',
            "--universe", "[1,2,3,4,5,6,7,8]", "--target", "4")
        assert code == 0
        assert payload["report"]["witness"] == {
            "subset": [1, 3, 5, 7], "color": "even", "domain_size": 6}

    def test_find_mono_miss(self, capsys):
        code, payload = run_json(
            capsys, "ramsey", "find-mono", "--barrier", CUBE2,
            "--coloring", '"parity-of-sum"',
            "--universe", "[1,2,3,4]", "--target", "4")
        assert code == 1
        rep = payload["report"]
        assert rep["found"] is False and rep["witness"] is None
        assert rep["best"]["subset"] == [1, 2]

    def test_metric(self, capsys):
        values = json.dumps([
            {"block": [[i]], "value": "1" if i % 2 else "2"}
            for i in range(1, 7)
        ])
        code, payload = run_json(
            capsys, "ramsey", "metric", "--family", '[{"type":"cube","k":1}]',
            "--values", values, "--epsilon", "1/2",
            "--universe", "[1,2,3,4,5,6]", "--target", "3")
        assert code == 0
        assert payload["report"]["witness"]["subset"] == [1, 3, 5]
        assert payload["report"]["witness"]["max_gap"] == "0"

    def test_diagonal(self, capsys):
        values = json.dumps([{"block": [[i]], "value": "1"}
                             for i in range(1, 7)])
        code, payload = run_json(
            capsys, "ramsey", "diagonal", "--family", '[{"type":"cube","k":1}]',
            "--values", values, "--universe", "[1,2,3,4,5,6]")
        assert code == 0
        assert payload["report"]["selected"] == [1, 2, 3, 4, 5, 6]
        assert payload["report"]["completed"] is True


class TestNorm:
    def test_eval_exact(self, capsys):
        vec = json.dumps({str(i): "1" for i in range(1, 9)})
        code, payload = run_json(capsys, "norm", "eval",
                                 "--spec", SECTION6, "--vector", vec)
        assert code == 0
        assert payload["report"] == {"value": "9/2", "exact": True}

    def test_eval_inexact_root(self, capsys):
        code, payload = run_json(capsys, "norm", "eval",
                                 "--spec", '{"type":"lp","p":2}',
                                 "--vector", '{"1":"1","2":"1"}')
        assert code == 0
        assert payload["report"]["exact"] is False

    def test_axioms(self, capsys):
        code, payload = run_json(capsys, "norm", "axioms",
                                 "--spec", SECTION6, "--k", "2",
                                 "--grid-q", "2")
        assert code == 0
        assert payload["report"]["all_pass"] is True
        assert payload["report"]["witnesses"] == []

    def test_limit_demo(self, capsys):
        code, payload = run_json(capsys, "norm", "limit-demo",
                                 "--n-max", "8", "--grid-q", "4")
        assert code == 0
        rep = payload["report"]
        assert rep["limit_at_ones"] == "0"
        assert rep["limit_at_e1"] == "1"
        assert rep["collapses_exactly_at_positivity"] is True
        assert ["8", "1/8"] == [str(x) for x in rep["value_at_ones"][-1]]


class TestOscillation:
    def test_psi(self, capsys):
        code, payload = run_json(
            capsys, "oscillation", "psi", "--spec", SECTION6,
            "--family", PAIR_FAM, "--block", "[[1,2],[3,4]]",
            "--coeffs", '["1","1"]')
        assert code == 0
        assert payload["report"] == {"value": "3/2"}

    def test_gap(self, capsys):
        code, payload = run_json(
            capsys, "oscillation", "gap", "--spec", FIXTURE,
            "--family", FIXTURE_FAM,
            "--universe", "[1,2,3,4,5,6,7,8]")
        assert code == 0
        rep = payload["report"]
        assert rep["gap"] == "1/2"
        assert rep["witness_coeffs"] == ["1", "1"]
        assert rep["block_count"] == 28

    def test_stabilize_hit(self, capsys):
        code, payload = run_json(
            capsys, "oscillation", "stabilize", "--spec", FIXTURE,
            "--family", FIXTURE_FAM, "--epsilon", "1/4",
            "--universe", "[1,2,3,4,5,6,7,8,9,10]", "--target", "5")
        assert code == 0
        rep = payload["report"]
        assert rep["subset"] == [1, 3, 5, 7, 9]
        assert rep["report"]["gap"] == "0"
        assert rep["report"]["vacuous"] is False

    def test_stabilize_miss(self, capsys):
        code, payload = run_json(
            capsys, "oscillation", "stabilize", "--spec", FIXTURE,
            "--family", FIXTURE_FAM, "--epsilon", "1/4",
            "--universe", "[1,2,3,4]", "--target", "4")
        assert code == 1
        rep = payload["report"]
        assert rep["found"] is False and rep["subset"] is None
        assert rep["best_subset"] == [1, 2, 3, 4]
        assert rep["best_gap"] == "1/2"

    def test_asymptotic(self, capsys):
        code, payload = run_json(
            capsys, "oscillation", "asymptotic", "--spec", FIXTURE,
            "--family", FIXTURE_FAM, "--horizon", "12",
            "--stages", "2")
        assert code == 1
        stage1, stage2 = payload["report"]["stages"]
        assert stage1 == {"index": 1, "epsilon": "1/2", "threshold": 9,
                          "passed": True, "witness_pair": None,
                          "witness_coeffs": None, "witness_gap": None}
        assert stage2["passed"] is False
        assert stage2["witness_gap"] == "1/4"


class TestModel:
    def test_eval(self, capsys):
        code, payload = run_json(
            capsys, "model", "eval", "--spec", SECTION6,
            "--sequence", SEQ_228, "--coeffs", '["1","1"]')
        assert code == 0
        rep = payload["report"]
        assert rep["value"] == "3/2" and rep["stabilized"] is True
        # two coefficients: probes sit past span (2+2) + 8
        assert rep["tail_offset"] == 12 and len(rep["probes"]) == 3

    def test_eval_not_stabilized_exits_1(self, capsys):
        mixed_seq = f'{{"prefix":[{CUBE1}],"tail":{CUBE2}}}'
        code, payload = run_json(
            capsys, "model", "eval", "--spec", FIXTURE,
            "--sequence", mixed_seq, "--coeffs", '["1","1"]')
        assert code == 1
        assert payload["report"]["stabilized"] is False

    def test_consistency(self, capsys):
        code, payload = run_json(
            capsys, "model", "consistency", "--spec", SECTION6,
            "--sequence", SEQ_228, "--k-max", "3", "--grid-q", "2")
        assert code == 0
        assert payload["report"]["holds"] is True
        assert payload["report"]["violations"] == []

    def test_spreading_violation_exits_1(self, capsys):
        code, payload = run_json(
            capsys, "model", "spreading", "--spec", SECTION6,
            "--sequence", SEQ_228, "--k", "2",
            "--placements", "[[3,4]]", "--grid-q", "2")
        assert code == 1
        witness = payload["report"]["witness"]
        assert witness["placement"] == [3, 4]
        assert witness["identity_value"] == "3/2"
        assert witness["placed_value"] == "1"

    def test_equivalence(self, capsys):
        seq8 = f'{{"prefix":[],"tail":{CUBE8}}}'
        code, payload = run_json(
            capsys, "model", "equivalence", "--spec", SECTION6,
            "--seq1", seq8, "--seq2", SEQ_228,
            "--k-max", "3", "--grid-q", "2")
        assert code == 0
        assert payload["report"] == {"lo": "1", "hi": "2"}


class TestVerifySection6:
    NAMES = ["eights-model-closed-form", "two-two-eights-closed-form",
             "named-values", "sandwich-equivalence", "spreading-dichotomy"]

    def test_default_spec_passes(self, capsys):
        code, payload = run_json(capsys, "verify-section6")
        assert code == 0
        rep = payload["report"]
        assert rep["all_passed"] is True
        assert [c["name"] for c in rep["checks"]] == self.NAMES
        assert all(c["passed"] for c in rep["checks"])
        assert rep["grid_q"] == 4 and rep["k_max"] == 4

    def test_perturbed_spec_fails(self, capsys):
        spec = json.dumps({"type": "supfamily",
                           "terms": [{"w": "1/2", "m": 2},
                                     {"w": "9/16", "m": 8}]})
        code, payload = run_json(capsys, "verify-section6", "--spec", spec,
                                 "--k-max", "3", "--grid-q", "2")
        assert code == 1
        by_name = {c["name"]: c["passed"] for c in payload["report"]["checks"]}
        assert by_name["eights-model-closed-form"] is True
        assert by_name["two-two-eights-closed-form"] is False
        assert by_name["named-values"] is False

    def test_matches_golden_file(self, capsys, tmp_path):
        import pathlib
        golden = pathlib.Path(__file__).parent / "data" / "section6_golden.json"
        _, out, _ = run(capsys, "verify-section6")
        assert out == golden.read_text(encoding="utf-8")


def test_console_script_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "blockosc.cli", "barrier", "rank",
         "--descriptor", '{"type":"sum","parts":[{"type":"cube","k":2},'
                         '{"type":"cube","k":3}]}'],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["report"]["rank"] == "w^5"


@pytest.mark.parametrize("argv", [
    ("norm", "eval", "--spec", '{"type":"lp","p":0}', "--vector", '["1"]'),
    ("oscillation", "psi", "--spec", SECTION6, "--family", PAIR_FAM,
     "--block", "[[1,2],[3,4]]", "--coeffs", '["1"]'),
    ("oscillation", "psi", "--spec", SECTION6, "--family", PAIR_FAM,
     "--block", "[[1],[2]]", "--coeffs", '["1","1"]'),
    ("model", "eval", "--spec", SECTION6, "--sequence", SEQ_228,
     "--coeffs", '["1","1"]', "--probes", "0"),
])
def test_library_validation_exits_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert "error" in json.loads(err)
