"""The qfilt CLI: commands, job files, exit codes, determinism."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from qfilt.cli import main
from qfilt.oracle import OracleReport

JOBS = Path(__file__).resolve().parent.parent / "jobs"

A1 = '{"kind":"affine_line","field":"symbolic"}'
UZ = '{"kind":"disjoint_union","components":"Z"}'
P1 = '{"kind":"proj_line","field":"symbolic"}'


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, args):
    return runner.invoke(main, args, catch_exceptions=False)


class TestClassify:
    def test_json_document(self, runner):
        res = invoke(runner, ["classify", "--scheme", A1, "--filter",
                              '{"kind":"exponents","default":0,"exceptions":{"pt:a":2}}'])
        assert res.exit_code == 0
        doc = json.loads(res.output)
        assert doc["closed"] and not doc["localizing"]
        assert doc["subscheme"]["ideal"] == {"orders": {"pt:a": 2}}

    def test_table_format(self, runner):
        res = invoke(runner, ["classify", "--scheme", A1, "--filter",
                              '{"kind":"improper"}', "--format", "table"])
        assert res.exit_code == 0
        assert "bilocalizing" in res.output and "yes" in res.output

    def test_validation_error_exit_2(self, runner):
        res = invoke(runner, ["classify", "--scheme", '{"kind":"nope"}',
                              "--filter", '{"kind":"improper"}'])
        assert res.exit_code == 2
        assert "unknown scheme kind" in res.output

    def test_bad_json_reports_position(self, runner):
        res = invoke(runner, ["classify", "--scheme", '{"kind":', "--filter", "{}"])
        assert res.exit_code == 2
        assert "line 1" in res.output and "column" in res.output


class TestOps:
    def test_product(self, runner):
        res = invoke(runner, [
            "op", "product", "--scheme", A1,
            "--filter", '{"kind":"exponents","default":0,"exceptions":{"pt:a":2}}',
            "--filter", '{"kind":"exponents","default":0,"exceptions":{"pt:a":3}}'])
        assert res.exit_code == 0
        assert json.loads(res.output)["result"]["exceptions"] == {"pt:a": 5}

    def test_meet_join(self, runner):
        f = '{"kind":"exponents","default":0,"exceptions":{"pt:a":2}}'
        g = '{"kind":"exponents","default":0,"exceptions":{"pt:a":1,"pt:b":1}}'
        res = invoke(runner, ["op", "meet", "--scheme", A1, "--filter", f,
                              "--filter", g])
        assert json.loads(res.output)["result"]["exceptions"] == {"pt:a": 1}
        res = invoke(runner, ["op", "join", "--scheme", A1, "--filter", f,
                              "--filter", g])
        assert json.loads(res.output)["result"]["exceptions"] \
            == {"pt:a": 2, "pt:b": 1}

    def test_localize(self, runner):
        res = invoke(runner, [
            "op", "localize", "--scheme", A1, "--point", "pt:a",
            "--filter", '{"kind":"exponents","default":0,"exceptions":{"pt:a":2}}'])
        assert json.loads(res.output)["result"] == {"kind": "up_to", "bound": 2}

    def test_restrict(self, runner):
        res = invoke(runner, [
            "op", "restrict", "--scheme", P1, "--chart", "1",
            "--filter", '{"kind":"exponents","default":0,"exceptions":{"pt:inf":1}}'])
        assert json.loads(res.output)["result"]["exceptions"] == {"pt:inf": 1}

    def test_generate_reports_locality(self, runner):
        res = invoke(runner, ["op", "generate", "--scheme", UZ,
                              "--filter", '{"kind":"cofinite-family"}'])
        doc = json.loads(res.output)
        assert doc["local"] is False
        assert doc["result"] == {"kind": "improper"}

    def test_arity_checked(self, runner):
        res = invoke(runner, ["op", "meet", "--scheme", A1,
                              "--filter", '{"kind":"improper"}'])
        assert res.exit_code == 2

    def test_missing_point_checked(self, runner):
        res = invoke(runner, ["op", "localize", "--scheme", A1,
                              "--filter", '{"kind":"improper"}'])
        assert res.exit_code == 2


class TestMemberSpec:
    def test_member(self, runner):
        res = invoke(runner, [
            "member", "--scheme", A1,
            "--module", '{"divisors":{"pt:a":2}}',
            "--filter", '{"kind":"exponents","default":0,"exceptions":{"pt:a":1}}'])
        assert json.loads(res.output)["member"] is False

    def test_spec_counts(self, runner):
        res = invoke(runner, ["spec", "--scheme",
                              '{"kind":"affine_line","field":{"p":2}}',
                              "--degree-bound", "4"])
        doc = json.loads(res.output)
        assert len(doc["closed"]) == 8
        assert len(doc["specializations"]) == 8

    def test_spec_labels(self, runner):
        res = invoke(runner, ["spec", "--scheme", A1, "--labels", "a,b"])
        doc = json.loads(res.output)
        assert doc["closed"] == ["pt:a", "pt:b"]
        assert doc["symbolic_closed"] is True


class TestExplain:
    def test_chain_lines(self, runner):
        res = invoke(runner, ["explain", "--scheme", A1, "--filter",
                              '{"kind":"exponents","default":0}',
                              "--format", "table"])
        assert res.exit_code == 0
        assert "prelocalizing: yes" in res.output
        assert "localizing: yes" in res.output
        assert "bilocalizing: yes" in res.output


class TestOracleCommand:
    def test_verify_passes(self, runner):
        res = invoke(runner, ["oracle", "verify", "--ring", "p:2,mod:x^2"])
        assert res.exit_code == 0
        doc = json.loads(res.output)
        assert doc["passed"] and len(doc["checks"]) == 11

    def test_bad_ring_descriptor(self, runner):
        res = invoke(runner, ["oracle", "verify", "--ring", "mod:x^2"])
        assert res.exit_code == 2

    def test_mismatch_exits_3(self, runner, monkeypatch):
        from qfilt import cli as cli_mod

        def fake_verify(ring, length_bound):
            report = OracleReport(ring)
            report.record("forced", False, "synthetic failure")
            return report

        monkeypatch.setattr(cli_mod, "verify_ring", fake_verify)
        res = invoke(runner, ["oracle", "verify", "--ring", "p:2,mod:x^2"])
        assert res.exit_code == 3
        assert json.loads(res.output)["passed"] is False


class TestRun:
    def test_shipped_jobs_run_clean(self, runner, tmp_path):
        for job in sorted(JOBS.glob("*.json")):
            res = invoke(runner, ["run", str(job)])
            assert res.exit_code == 0, f"{job.name}: {res.output}"
            doc = json.loads(res.output)
            assert doc["schema"] == 1 and doc["results"]

    def test_byte_identical_reruns(self, runner):
        job = str(JOBS / "affine_line_table.json")
        outs = {invoke(runner, ["run", job]).output for _ in range(3)}
        assert len(outs) == 1

    def test_pipeline_names(self, runner, tmp_path):
        job = {
            "schema": 1,
            "scheme": json.loads(A1),
            "filters": {"F": {"kind": "exponents", "default": 0,
                              "exceptions": {"pt:a": 1}}},
            "commands": [
                {"cmd": "op", "op": "product", "args": ["F", "F"], "name": "FF"},
                {"cmd": "classify", "filter": "FF"},
            ],
        }
        path = tmp_path / "job.json"
        path.write_text(json.dumps(job))
        res = invoke(runner, ["run", str(path)])
        assert res.exit_code == 0
        doc = json.loads(res.output)
        assert doc["results"][1]["filter"]["exceptions"] == {"pt:a": 2}

    def test_empty_commands_silent_success(self, runner, tmp_path):
        path = tmp_path / "job.json"
        path.write_text(json.dumps({"schema": 1, "commands": []}))
        res = invoke(runner, ["run", str(path)])
        assert res.exit_code == 0 and res.output == ""

    def test_undefined_name_exit_2(self, runner, tmp_path):
        path = tmp_path / "job.json"
        path.write_text(json.dumps({
            "schema": 1, "scheme": json.loads(A1),
            "commands": [{"cmd": "table", "filters": ["GHOST"]}]}))
        res = invoke(runner, ["run", str(path)])
        assert res.exit_code == 2 and "GHOST" in res.output

    def test_wrong_schema_exit_2(self, runner, tmp_path):
        path = tmp_path / "job.json"
        path.write_text(json.dumps({"schema": 99, "commands": []}))
        res = invoke(runner, ["run", str(path)])
        assert res.exit_code == 2 and "schema" in res.output

    def test_out_writes_file(self, runner, tmp_path):
        out = tmp_path / "result.json"
        res = invoke(runner, ["run", str(JOBS / "product_law.json"),
                              "--out", str(out)])
        assert res.exit_code == 0 and res.output == ""
        doc = json.loads(out.read_text())
        assert doc["results"][0]["result"]["exceptions"] == {"pt:a": 5}
