import json

import pytest

import config
import quotients
from main import compute_completion, compute_dims, main
from storage import (
    build_report, compare_to_golden, input_digest, load_json, read_input,
    read_rules, report_rows, save_json, write_rules,
)
from suites import check_fixtures, run_suite
from tables import ArityTable


class TestDims:

    def test_cas3(self, capsys):
        assert main(["dims", "cas:3", "--n-max", "12", "--quiet"]) == config.EXIT_OK
        assert capsys.readouterr().out.strip() == "1 1 2 4 8 14 20 19 16 14 14 15"

    def test_cas3_matches_golden(self):
        ok, message = compare_to_golden(compute_dims("cas:3", 12), "dims", "cas3")
        assert ok, message

    def test_cubic_pair(self, capsys):
        assert main(["dims", "mag:1,2", "--n-max", "6"]) == config.EXIT_OK
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "1 1 2 4 8 16"
        assert out[1].startswith("✓ mag:1,2")

    def test_free_operad(self, capsys):
        main(["dims", "cas:1", "--n-max", "6", "--quiet"])
        assert capsys.readouterr().out.strip() == "1 1 2 5 14 42"

    def test_linear_route(self, capsys):
        main(["dims", "aas", "--n-max", "5", "--quiet"])
        assert capsys.readouterr().out.strip() == "1 1 1 0 0"
        report = compute_dims("cas:3", 5, linear=True)
        assert report["inputs"]["route"] == "linear"
        assert report["inputs"]["generators"] == ["2220000 - 2020200"]
        assert list(report["tables"]["dims"]["values"].values()) == [1, 1, 2, 4, 8]

    def test_budget_stops_early(self, monkeypatch, capsys):
        monkeypatch.setattr(config, "MAX_ENUM_ARITY", 6)
        assert main(["dims", "cas:3", "--n-max", "9"]) == config.EXIT_OK
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "1 1 2 4 8 14"
        assert out[1].startswith("⚠ Stopped at arity 7")

    @pytest.mark.parametrize("argv", [
        ["dims", "cas:0"],
        ["dims", "mag:2,2"],
        ["dims", "no-such-quotient"],
        ["dims", "cas:3", "--n-max", "0"],
        ["complete", "aas"],
    ])
    def test_input_errors(self, argv, capsys):
        assert main(argv) == config.EXIT_INPUT_ERROR
        assert capsys.readouterr().err.startswith("✗")

    def test_json_report(self, tmp_path):
        path = tmp_path / "mag12.json"
        main(["dims", "mag:1,2", "--n-max", "6", "--json", str(path), "--quiet"])
        report = load_json(str(path))
        assert report["status"] == "ok"
        ok, message = compare_to_golden(report, "dims", "mag12")
        assert ok, message

    def test_csv_report(self, tmp_path):
        path = tmp_path / "cas3.csv"
        main(["dims", "cas:3", "--n-max", "4", "--csv", str(path), "--quiet"])
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "table,n,value,verified"
        assert lines[4] == "dims,4,4,True"


class TestComplete:

    def test_associativity(self, capsys):
        assert main(["complete", "cas:2", "--quiet"]) == config.EXIT_OK
        assert capsys.readouterr().out.startswith("1 rules;")

    def test_rules_and_trace_written(self, tmp_path):
        rules = tmp_path / "as.rules"
        trace = tmp_path / "as.trace.json"
        main(["complete", "as", "--rules-out", str(rules), "--trace", str(trace), "--quiet"])
        assert "22000 -> 20200" in rules.read_text(encoding="utf-8")
        assert load_json(str(trace))["status"] == "completed"

    def test_budget_is_not_an_error(self, capsys):
        assert main(["complete", "cas:3", "--max-steps", "1"]) == config.EXIT_OK
        assert "⚠ cas:3: budget_exhausted" in capsys.readouterr().out

    def test_report_shape(self):
        report, trace = compute_completion("cas:2")
        assert report["inputs"]["algorithm"] == "buchberger"
        assert report["tables"]["final_rules"] == ["22000 -> 20200"]
        assert report["details"]["reference_counts"] == {
            "gamma": 2, "compared_through": 14, "differing": {},
        }
        assert trace.completed

    def test_non_comb_quotient_has_no_reference(self):
        report, _ = compute_completion("as")
        assert "details" not in report

    @pytest.mark.slow
    def test_reference_counts_match(self, capsys):
        assert main(["complete", "cas:3"]) == config.EXIT_OK
        out = capsys.readouterr().out
        assert "✓ cas:3: rules per arity match the reference counts through arity 14" in out

    def test_reference_counts_differ(self, monkeypatch, capsys):
        monkeypatch.setitem(quotients.TABLE_COMPLETION_COUNTS, 2, [0, 0, 2] + [0] * 24)
        report, _ = compute_completion("cas:2")
        assert report["details"]["reference_counts"]["differing"] == {
            "3": {"observed": 1, "reference": 2},
        }
        assert report["status"] == "completed"
        assert main(["complete", "cas:2"]) == config.EXIT_OK
        assert "⚠ cas:2: rules per arity differ from the reference counts at arity 3" in capsys.readouterr().out

    def test_partial_run_compares_completed_arities(self):
        report, trace = compute_completion("cas:3", max_steps=1)
        diff = report["details"]["reference_counts"]
        assert diff["compared_through"] == (trace.complete_through_arity or 0)
        assert report["details"]["reason"] == trace.reason

    @pytest.mark.slow
    def test_cas3_matches_golden(self):
        report, _ = compute_completion("cas:3")
        ok, message = compare_to_golden(report, "complete", "cas3")
        assert ok, message

    def test_rule_file(self, tmp_path):
        path = tmp_path / "assoc.rules"
        path.write_text("# associativity\n22000 -> 20200\n", encoding="utf-8")
        report, trace = compute_completion(str(path))
        assert report["inputs"]["spec"] == "assoc"
        assert report["status"] == "completed"


class TestVerify:

    def test_all_fails_fast_without_fixtures(self, golden_dir, capsys):
        assert main(["verify", "all", "--golden-dir", str(golden_dir)]) == config.EXIT_VERIFY_FAILED
        assert "✗ fixtures: missing golden fixture" in capsys.readouterr().out

    def test_run_suite_reports_fixture_failure(self, golden_dir):
        ok, results = run_suite("all", quiet=True, golden_dir=str(golden_dir))
        assert not ok
        assert [r["check"] for r in results] == ["fixtures"]

    def test_shipped_fixtures_present(self):
        ok, message = check_fixtures()
        assert ok, message

    def test_corrupt_fixture(self, golden_dir):
        for command in ("dims", "complete"):
            (golden_dir / command).mkdir(parents=True, exist_ok=True)
            (golden_dir / command / "cas3.json").write_text("{not json", encoding="utf-8")
        ok, message = check_fixtures(str(golden_dir))
        assert not ok
        assert "corrupt" in message

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run_suite("everything", quiet=True)

    @pytest.mark.slow
    def test_grassmann_suite(self):
        ok, results = run_suite("grassmann", quiet=True)
        assert ok, [r for r in results if not r["ok"]]


class TestCasLattice:

    @pytest.mark.parametrize("argv, expected", [
        (["caslattice", "meet", "3", "4"], "2"),
        (["caslattice", "join", "3", "4"], "7"),
        (["caslattice", "leq", "3", "5"], "true"),
        (["caslattice", "leq", "5", "3"], "false"),
    ])
    def test_operations(self, argv, expected, capsys):
        assert main(argv) == config.EXIT_OK
        assert capsys.readouterr().out.strip() == expected

    def test_missing_index(self, capsys):
        assert main(["caslattice", "meet", "3"]) == config.EXIT_INPUT_ERROR

    def test_bad_index(self, capsys):
        assert main(["caslattice", "join", "0", "3"]) == config.EXIT_INPUT_ERROR

    @pytest.mark.slow
    def test_verify(self, tmp_path):
        path = tmp_path / "lattice.json"
        assert main(["caslattice", "verify", "--quiet", "--json", str(path)]) == config.EXIT_OK
        assert load_json(str(path))["status"] == "passed"


class TestStorage:

    def test_load_json_tolerates_missing_and_corrupt(self, tmp_path):
        assert load_json(str(tmp_path / "missing.json")) == {}
        corrupt = tmp_path / "corrupt.json"
        corrupt.write_text("[1, 2", encoding="utf-8")
        assert load_json(str(corrupt)) == {}

    def test_save_json_sorts_keys(self, tmp_path, capsys):
        path = tmp_path / "nested" / "data.json"
        save_json(str(path), {"b": 1, "a": [1, 2]})
        assert "[OK] Wrote" in capsys.readouterr().out
        text = path.read_text(encoding="utf-8")
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {"a": [1, 2], "b": 1}

    def test_input_digest_ignores_key_order(self):
        assert input_digest({"a": 1, "b": [2]}) == input_digest({"b": [2], "a": 1})
        assert input_digest({"a": 1}) != input_digest({"a": 2})
        assert len(input_digest({})) == 64

    def test_golden_comparison_ignores_wall_time(self, golden_dir):
        table = ArityTable.from_sequence("dims x", [1, 1, 2])
        report = build_report("dims", {"spec": "x"}, {"dims": table}, "ok", wall_time=1.5)
        save_json(str(golden_dir / "dims" / "x.json"), dict(report, wall_time=0.0), verbose=False)
        ok, _ = compare_to_golden(report, "dims", "x", str(golden_dir))
        assert ok
        changed = build_report("dims", {"spec": "x"}, {"dims": table}, "budget_exhausted")
        ok, message = compare_to_golden(changed, "dims", "x", str(golden_dir))
        assert not ok
        assert "status" in message

    def test_missing_golden(self, golden_dir):
        ok, message = compare_to_golden({}, "dims", "absent", str(golden_dir))
        assert not ok
        assert "missing" in message

    def test_report_rows(self):
        table = ArityTable.from_sequence("dims x", [1, 1, 2])
        rows = report_rows(build_report("dims", {}, {"dims": table, "note": "text"}, "ok"))
        assert [(row["n"], row["value"]) for row in rows] == [(1, 1), (2, 1), (3, 2)]

    def test_read_input_formats(self, tmp_path):
        rules = tmp_path / "r.txt"
        rules.write_text("22000 -> 20200\n", encoding="utf-8")
        congruence = tmp_path / "c.txt"
        congruence.write_text("(L,(L,L)) ~ ((L,L),L)\n", encoding="utf-8")
        elements = tmp_path / "e.txt"
        elements.write_text("22000 + 20200  # anti-associativity\n", encoding="utf-8")

        from_rules = read_input(str(rules))
        assert len(from_rules.system) == 1 and len(from_rules.congruence) == 1
        from_congruence = read_input(str(congruence))
        assert from_congruence.system is None and len(from_congruence.congruence) == 1
        from_elements = read_input(str(elements))
        assert from_elements.congruence is None
        assert str(from_elements.linear[0]) == "22000 + 20200"

    def test_rule_file_round_trip(self, tmp_path, cas3):
        path = tmp_path / "rules" / "cas3.rules"
        write_rules(str(path), cas3, verbose=False)
        loaded = read_rules(str(path))
        assert loaded.name == "cas3"
        assert loaded.rules == cas3.rules

    def test_read_input_rejects_empty_file(self, tmp_path):
        empty = tmp_path / "empty.txt"
        empty.write_text("# nothing\n", encoding="utf-8")
        with pytest.raises(ValueError, match="no generators"):
            read_input(str(empty))
