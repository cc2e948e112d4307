"""Command-line behavior: exit codes, report shape, determinism."""

import json

import pytest

from milnorbook import cli
from milnorbook.errors import InternalInvariantError
from milnorbook.graphs import chain_graph, save_graph


@pytest.fixture
def a3_file(tmp_path):
    path = tmp_path / "a3.json"
    save_graph(chain_graph([-2, -2, -2]), path)
    return str(path)


@pytest.fixture
def flat_file(tmp_path):
    path = tmp_path / "flat.json"
    path.write_text(
        json.dumps({"vertices": [{"id": 0, "genus": 0, "euler": 0}], "edges": []})
    )
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_fillable_graph_exits_zero(self, capsys, a3_file):
        code, out, err = run(capsys, "check", a3_file)
        assert code == 0
        assert "verdict: Milnor fillable" in out
        assert err == ""

    def test_negative_verdict_exits_two_with_report(self, capsys, flat_file):
        code, out, _ = run(capsys, "check", flat_file)
        assert code == 2
        assert "not Milnor fillable" in out

    def test_openbook_negative_verdict_exits_two(self, capsys, flat_file):
        code, out, err = run(capsys, "openbook", flat_file)
        assert code == 2
        assert out == ""
        assert err.startswith("negative verdict:")

    def test_unreadable_file_exits_one(self, capsys, tmp_path):
        code, _, err = run(capsys, "check", str(tmp_path / "absent.json"))
        assert code == 1
        assert err.startswith("input error:")

    def test_usage_error_exits_one_via_systemexit(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["no-such-command"])
        assert info.value.code == 1

    def test_internal_invariant_exits_three(self, capsys, a3_file, monkeypatch):
        def explode(args):
            raise InternalInvariantError("forced for the test")

        monkeypatch.setitem(cli._HANDLERS, "check", explode)
        code, _, err = run(capsys, "check", a3_file)
        assert code == 3
        assert err.startswith("internal invariant failure:")

    def test_numerical_finding_exits_four(self, capsys):
        code, _, err = run(
            capsys,
            "contact", "adapt", "--ambient", "1", "--f", "z0 - 0.2",
            "--mesh", "200",
        )
        assert code == 4
        assert err.startswith("numerical finding:")

    def test_failed_check_exits_four_with_report(self, capsys):
        code, out, _ = run(
            capsys,
            "contact", "criterion", "--ambient", "1", "--f", "1",
            "--eta", "0.5", "--mesh", "50",
        )
        assert code == 4
        assert "open-book transversality certified on the mesh: False" in out

    def test_contact_requires_f(self, capsys):
        code, _, err = run(capsys, "contact", "identity")
        assert code == 1
        assert "requires --f" in err

    def test_conflicting_variety_options_exit_one(self, capsys):
        code, _, err = run(
            capsys,
            "contact", "spsh", "--hypersurface", "z0^2 + z1^2", "--ambient", "3",
        )
        assert code == 1
        assert "not both" in err

    def test_adapt_eta_validation(self, capsys):
        code, _, err = run(
            capsys,
            "contact", "adapt", "--ambient", "1", "--f", "z0",
            "--eta", "1.0", "--mesh", "100",
        )
        assert code == 1
        assert "eta" in err


class TestReports:
    def test_text_header_and_config_line(self, capsys, a3_file):
        code, out, _ = run(capsys, "check", a3_file)
        lines = out.splitlines()
        assert lines[0] == f"milnorbook {cli.__version__} check"
        assert lines[1].startswith("config: ")
        assert "format='text'" in lines[1]

    def test_structured_document_shape(self, capsys, a3_file):
        code, out, _ = run(capsys, "check", "--format", "structured", a3_file)
        assert code == 0
        document = json.loads(out)
        assert set(document) == {"version", "command", "config", "result"}
        assert document["command"] == "check"
        assert document["result"]["fillable"] is True
        assert document["result"]["vertices"] == 3

    def test_format_flag_accepted_after_subcommand(self, capsys, a3_file):
        code, out, _ = run(capsys, "check", a3_file, "--format", "structured")
        assert code == 0
        assert json.loads(out)["result"]["fillable"] is True

    def test_divisor_oracle_agreement(self, capsys, a3_file):
        code, out, _ = run(
            capsys, "divisor", a3_file, "--oracle", "--format", "structured"
        )
        assert code == 0
        document = json.loads(out)
        assert document["result"]["divisor"] == [2, 3, 2]
        assert document["result"]["oracle"] == {"bound": 40, "agrees": True}

    def test_openbook_emit_graph_round_trips(self, capsys, a3_file):
        code, out, _ = run(
            capsys, "openbook", a3_file, "--emit", "graph", "--format", "structured"
        )
        assert code == 0
        decorated = json.loads(out)["result"]["decorated_graph"]
        assert [v["arrowheads"] for v in decorated["vertices"]] == [1, 2, 1]
        assert decorated["edges"] == [[0, 1], [1, 2]]

    def test_identity_unscaled_is_exact(self, capsys):
        code, out, _ = run(
            capsys,
            "contact", "identity", "--ambient", "2", "--f", "z0 z1",
            "--c", "0", "--samples", "50", "--format", "structured",
        )
        assert code == 0
        result = json.loads(out)["result"]
        assert result["max_residual"] == 0.0
        assert result["tolerance"] == 1e-12

    def test_hypersurface_reeb_contract(self, capsys):
        code, out, _ = run(
            capsys,
            "contact", "reeb", "--hypersurface", "z0^2 + z1^3 + z2^5",
            "--samples", "20", "--format", "structured",
        )
        assert code == 0
        result = json.loads(out)["result"]
        assert result["pass"] is True
        assert result["max_alpha_deviation"] <= 1e-6

    def test_cone_report_on_the_line(self, capsys):
        code, out, _ = run(
            capsys,
            "contact", "cone", "--ambient", "1", "--f", "z0",
            "--samples", "30", "--format", "structured",
        )
        assert code == 0
        result = json.loads(out)["result"]
        assert result["qualifying"] == 30
        assert result["all_positive"] is True


class TestDeterminism:
    def test_structured_reports_are_byte_identical(self, capsys):
        argv = [
            "contact", "spsh", "--ambient", "2", "--samples", "50",
            "--seed", "3", "--format", "structured",
        ]
        code_a, out_a, _ = run(capsys, *argv)
        code_b, out_b, _ = run(capsys, *argv)
        assert code_a == code_b == 0
        assert out_a == out_b

    def test_seed_changes_samples_not_shape(self, capsys):
        base = ["contact", "spsh", "--hypersurface", "z0^2 + z1^3 + z2^5",
                "--samples", "30", "--format", "structured"]
        _, out_a, _ = run(capsys, *base, "--seed", "0")
        _, out_b, _ = run(capsys, *base, "--seed", "1")
        doc_a, doc_b = json.loads(out_a), json.loads(out_b)
        assert doc_a["result"]["min_levi_quotient"] != doc_b[
            "result"
        ]["min_levi_quotient"]
        assert set(doc_a["result"]) == set(doc_b["result"])
