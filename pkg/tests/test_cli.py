"""Tests for the CLI."""

import json
import re

from click.testing import CliRunner

from token_digraphs.cli import cli
from token_digraphs.suites import CHECKERS

C5 = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n"
ONE_CLAUSE = "c single clause\np cnf 3 1\n1 2 3 0\n"


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestBuildCommand:
    def test_build_to_stdout(self, tmp_path):
        src = _write(tmp_path, "c5.txt", C5)
        result = CliRunner().invoke(cli, ["build", src, "-k", "2"])
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == "10 15"

    def test_build_with_sidecar_and_dot(self, tmp_path):
        src = _write(tmp_path, "c5.txt", C5)
        out = str(tmp_path / "f2.txt")
        dot = str(tmp_path / "f2.dot")
        result = CliRunner().invoke(cli, ["build", src, "-k", "2", "-o", out, "--dot", dot])
        assert result.exit_code == 0
        assert f"Wrote F_2: 10 nodes to {out}" in result.output
        with open(f"{out}.nodes.json") as f:
            sidecar = json.load(f)
        assert sidecar["host_n"] == 5
        assert sidecar["k"] == 2
        assert sidecar["nodes"][0] == [0, 1]
        with open(dot) as f:
            assert f.read().startswith('digraph "F_2" {')

    def test_build_undirected(self, tmp_path):
        src = _write(tmp_path, "k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
        result = CliRunner().invoke(cli, ["build", src, "-k", "2", "--graph"])
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == "6 12"

    def test_k_out_of_range(self, tmp_path):
        src = _write(tmp_path, "c5.txt", C5)
        result = CliRunner().invoke(cli, ["build", src, "-k", "5"])
        assert result.exit_code == 2
        assert "Error:" in result.output

    def test_node_limit(self, tmp_path):
        src = _write(tmp_path, "c5.txt", C5)
        result = CliRunner().invoke(cli, ["build", src, "-k", "2", "--node-limit", "5"])
        assert result.exit_code == 2

    def test_malformed_input(self, tmp_path):
        src = _write(tmp_path, "bad.txt", "3 1\n0 0\n")
        result = CliRunner().invoke(cli, ["build", src, "-k", "1"])
        assert result.exit_code == 2
        assert "line 2" in result.output


class TestVerifyCommand:
    def test_girth_passes(self):
        result = CliRunner().invoke(
            cli, ["verify", "girth", "--n-max", "4", "--samples", "5", "--exhaustive-upto", "3"]
        )
        assert result.exit_code == 0
        assert "=== verify girth ===" in result.output
        assert "fail: 0" in result.output

    def test_json_report(self, tmp_path):
        out = str(tmp_path / "report.json")
        result = CliRunner().invoke(
            cli,
            ["verify", "eulerian", "--n-max", "3", "--json-output", "-o", out],
        )
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["command"] == "verify eulerian"
        assert payload["options"]["suites"] == ["eulerian"]
        assert payload["summary"]["fail"] == 0
        assert "elapsed_s" not in payload
        with open(out) as f:
            assert json.load(f) == payload

    def test_timings(self):
        result = CliRunner().invoke(
            cli, ["verify", "hamiltonian-cn", "--json-output", "--timings"]
        )
        assert result.exit_code == 0
        assert "elapsed_s" in json.loads(result.output)

    def test_deterministic(self):
        args = [
            "verify",
            "properties",
            "--n-max",
            "4",
            "--samples",
            "3",
            "--exhaustive-upto",
            "3",
            "--json-output",
        ]
        first = CliRunner().invoke(cli, args)
        second = CliRunner().invoke(cli, args)
        assert first.output == second.output

    def test_unknown_theorem(self):
        result = CliRunner().invoke(cli, ["verify", "nope"])
        assert result.exit_code == 2

    def test_bad_options(self):
        result = CliRunner().invoke(cli, ["verify", "girth", "--jobs", "0"])
        assert result.exit_code == 2
        assert "Error: jobs must be at least 1" in result.output

    def test_checker_error_is_a_failed_check(self, monkeypatch):
        real = CHECKERS["hamiltonian-cn"]

        def flaky(n):
            if n == 4:
                raise ValueError("bad host")
            return real(n)

        monkeypatch.setitem(CHECKERS, "hamiltonian-cn", flaky)
        result = CliRunner().invoke(cli, ["verify", "hamiltonian-cn"])
        assert result.exit_code == 1
        assert "pass: 4  fail: 1" in result.output
        assert "FAIL hamiltonian-cn [task hamiltonian-cn]: ValueError: bad host" in result.output
        assert "witness: [4]" in result.output


class TestReduceCommand:
    def test_reduce_writes_roles(self, tmp_path):
        src = _write(tmp_path, "f.cnf", ONE_CLAUSE)
        out = str(tmp_path / "gadget.txt")
        result = CliRunner().invoke(cli, ["reduce", src, "-o", out])
        assert result.exit_code == 0
        assert "Wrote gadget: 10 vertices, 18 arcs" in result.output
        with open(f"{out}.roles.json") as f:
            roles = json.load(f)
        assert roles["num_vars"] == 3
        assert roles["clauses"] == [[1, 2, 3]]
        assert roles["roles"][-1] == {"kind": "sink"}
        assert roles["roles"][1] == {"kind": "literal", "literal": -1, "label": "~x1"}
        with open(f"{out}.cnf") as f:
            assert f.read() == "p cnf 3 1\n1 2 3 0\n"

    def test_reduce_to_stdout(self, tmp_path):
        src = _write(tmp_path, "f.cnf", ONE_CLAUSE)
        result = CliRunner().invoke(cli, ["reduce", src])
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == "10 18"

    def test_reduce_rejects_wide_clause(self, tmp_path):
        src = _write(tmp_path, "f.cnf", "p cnf 4 1\n1 2 3 4 0\n")
        result = CliRunner().invoke(cli, ["reduce", src])
        assert result.exit_code == 2
        assert "exactly 3" in result.output


class TestKernelCommand:
    def test_odd_cycle_has_none(self, tmp_path):
        src = _write(tmp_path, "c5.txt", C5)
        result = CliRunner().invoke(cli, ["kernel", src])
        assert result.exit_code == 0
        assert "Kernel: none" in result.output

    def test_token_digraph_kernel(self, tmp_path):
        src = _write(tmp_path, "c5.txt", C5)
        result = CliRunner().invoke(cli, ["kernel", src, "-k", "2", "--json-output"])
        assert result.exit_code == 0
        (check,) = json.loads(result.output)["results"]
        assert check["data"] == {"found": True, "size": 5}
        assert sorted(check["witness"]) == [[0, 1], [0, 4], [1, 2], [2, 3], [3, 4]]

    def test_text_witness(self, tmp_path):
        src = _write(tmp_path, "p3.txt", "3 2\n0 1\n1 2\n")
        result = CliRunner().invoke(cli, ["kernel", src])
        assert result.exit_code == 0
        assert "Kernel (size 2): [0, 2]" in result.output


class TestScanCommand:
    def test_small_scan(self):
        result = CliRunner().invoke(cli, ["scan", "--n-max", "4"])
        assert result.exit_code == 0
        assert "COUNTEREXAMPLE" not in result.output
        assert "total: 8" in result.output

    def test_empty_corpus(self):
        result = CliRunner().invoke(cli, ["scan", "--n-max", "2", "--json-output"])
        assert result.exit_code == 0
        assert json.loads(result.output)["summary"]["total"] == 0

    def test_monotonicity_recorded(self):
        result = CliRunner().invoke(
            cli, ["scan", "--n-max", "4", "--monotonicity", "--json-output"]
        )
        assert result.exit_code == 0
        rows = json.loads(result.output)["results"]
        assert all("chi_Fk" in r["data"] for r in rows)

    def test_bad_jobs(self):
        result = CliRunner().invoke(cli, ["scan", "--jobs", "0"])
        assert result.exit_code == 2

    def test_dot_of_requested_graph(self, tmp_path):
        out = tmp_path / "dots"
        k4 = "n=4:0-1,0-2,0-3,1-2,1-3,2-3"
        result = CliRunner().invoke(
            cli, ["scan", "--n-max", "4", "--dot", str(out), "--dot-graph", k4]
        )
        assert result.exit_code == 0
        assert "Wrote 1 DOT file(s)" in result.output
        (path,) = out.glob("*.dot")
        text = path.read_text()
        assert text.startswith(f'graph "F_2({k4})" {{')
        assert 'label="{0,1}"' in text
        assert len(set(re.findall(r"class=(\d+)", text))) == 3

    def test_dot_without_counterexamples(self, tmp_path):
        out = tmp_path / "dots"
        result = CliRunner().invoke(cli, ["scan", "--n-max", "4", "--dot", str(out)])
        assert result.exit_code == 0
        assert "Wrote 0 DOT file(s)" in result.output
        assert list(out.glob("*.dot")) == []

    def test_dot_graph_needs_dot(self):
        result = CliRunner().invoke(cli, ["scan", "--dot-graph", "n=3:0-1,1-2"])
        assert result.exit_code == 2


class TestAnalyzeCommand:
    def test_json(self, tmp_path):
        src = _write(tmp_path, "c5.txt", C5)
        result = CliRunner().invoke(cli, ["analyze", src, "-k", "2", "--json-output"])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        host = payload["digraph"]
        assert host["girth"] == 5
        assert host["circumference"] == 5
        assert host["kernel"] is None
        assert host["odd_cycle"] is True
        assert host["dichromatic_number"] == 2
        assert host["cycle_bound"] == 2
        assert host["scc_sizes"] == [5]
        assert payload["k"] == 2
        assert payload["token_digraph"]["n"] == 10
        assert len(payload["token_digraph"]["kernel"]) == 5

    def test_text(self, tmp_path):
        src = _write(tmp_path, "p3.txt", "3 2\n0 1\n1 2\n")
        result = CliRunner().invoke(cli, ["analyze", src])
        assert result.exit_code == 0
        assert "=== Digraph ===" in result.output
        assert "cycle_bound" in result.output


class TestSearchCommand:
    def test_kernel_loss(self, tmp_path):
        out = str(tmp_path / "found.txt")
        result = CliRunner().invoke(cli, ["search", "kernel-loss", "-o", out])
        assert result.exit_code == 0
        assert "Found kernel-loss example" in result.output
        with open(out) as f:
            assert f.readline().split()[0] in {"3", "4"}

    def test_unknown_kind(self):
        result = CliRunner().invoke(cli, ["search", "nope"])
        assert result.exit_code == 2


class TestVersion:
    def test_version(self):
        result = CliRunner().invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert "0.1.0" in result.output
