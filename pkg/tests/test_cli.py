import json

import pytest

from liecoh.chevalley import build as build_algebra
from liecoh.cli import (
    CLIError,
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_REFUSAL,
    EXIT_VALIDATION,
    canonical_json,
    main,
    parse_element,
)
from liecoh.exactla import G_ONE, GaussianRational, RAT, ScaledScalar, as_gauss
from liecoh.rootsystem import build as build_rs


@pytest.fixture()
def alg():
    return build_algebra(build_rs("A1xA1"))


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def gauss(re, im=0):
    return GaussianRational(RAT(re), RAT(im))


class TestExpressionParser:
    def test_plain_cartan(self, alg):
        el = parse_element("1/3*H1", alg)
        coords = el.coords
        assert coords[alg.dim - 2] == as_gauss("1/3")
        assert all(c.is_zero() for i, c in enumerate(coords)
                   if i != alg.dim - 2)

    def test_scaled_sum(self, alg):
        el = parse_element("s*(H1+H2)", alg)
        assert el.is_scaled()
        for c in el.coords[-2:]:
            assert isinstance(c, ScaledScalar)
            assert c.scale == G_ONE

    def test_root_vectors_and_i(self, alg):
        el = parse_element("E+1 - i*E-2", alg)
        coords = el.coords
        assert coords[0] == gauss(1)
        assert coords[3] == gauss(0, -1)

    def test_unary_minus_and_products(self, alg):
        el = parse_element("-2*H2 + 3/2*H1", alg)
        assert el.coords[alg.dim - 1] == gauss(-2)
        assert el.coords[alg.dim - 2] == gauss(3, 0).__class__(RAT(3, 2), RAT(0))

    def test_rejects_bare_scalar(self, alg):
        with pytest.raises(CLIError):
            parse_element("3/2", alg)

    def test_rejects_vector_product(self, alg):
        with pytest.raises(CLIError):
            parse_element("H1*H2", alg)

    def test_rejects_trailing_garbage(self, alg):
        with pytest.raises(CLIError):
            parse_element("H1 H2", alg)

    def test_rejects_unbalanced_paren(self, alg):
        with pytest.raises(CLIError):
            parse_element("s*(H1+H2", alg)

    def test_rejects_bad_index(self, alg):
        with pytest.raises(CLIError):
            parse_element("H5", alg)

    def test_rejects_unknown_symbol(self, alg):
        with pytest.raises(CLIError):
            parse_element("H1 @ H2", alg)


class TestPipelines:
    def test_baseline_verdict(self, capsys):
        code = main(["verdict", "--preset", "su2su2", "--a", "0", "--b", "1"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "invariant_baseline" in out
        assert "7 vs invariant 7" in out

    def test_scaled_non_invariance(self, capsys):
        code = main(["verdict", "--preset", "su2su2", "--scaled",
                     "--x", "s*(H1+H2)"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "certified_non_invariant" in out
        assert "3 vs invariant 7" in out

    def test_resonant_tangent_refuses(self, capsys):
        code = main(["cohomology", "tangent", "--preset", "su2su2",
                     "--x", "1/3*H1"])
        err = capsys.readouterr().err
        assert code == EXIT_REFUSAL
        assert "lambda\":[3,0]" in err.replace(" ", "")
        assert "beta\":[\"1\"]" in err.replace(" ", "")

    def test_resonant_verdict_is_inconclusive(self, capsys):
        code = main(["verdict", "--preset", "su2su2", "--x", "1/3*H1"])
        out = capsys.readouterr().out
        assert code == EXIT_REFUSAL
        assert "inconclusive" in out

    def test_scan_reports_resonance_without_refusing(self, capsys):
        code = main(["resonance", "scan", "--preset", "su2su2",
                     "--x", "1/3*H1", "--rho", "2,0"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "resonant" in out
        assert "lambda=[3, 0]" in out

    def test_line_refuses_on_failed_certificate(self):
        code = main(["cohomology", "line", "--rho", "2,0",
                     "--preset", "su2su2", "--x", "1/3*H1"])
        assert code == EXIT_REFUSAL

    def test_line_json_payload(self, tmp_path, capsys):
        out_file = tmp_path / "line.json"
        code = main(["cohomology", "line", "--rho", "0,0",
                     "--preset", "su2su2", "--a", "0", "--b", "1",
                     "--json", str(out_file)])
        assert code == EXIT_OK
        payload = json.loads(out_file.read_text())
        assert payload["dims"] == [1, 1, 0, 0]
        assert payload["sections"]["dim"] == 1


class TestInputHandling:
    def test_deformation_file_roundtrip(self, tmp_path, capsys):
        spec = {
            "rootsystem": "A1xA1",
            "A": [["-1", "-1*i"]],
            "X": [{"H": {"1": "1/3"}}],
            "mode": "exact",
        }
        path = tmp_path / "deform.json"
        path.write_text(json.dumps(spec))
        code = main(["deform", "validate", "--deformation", str(path)])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "valid" in out

    def test_x_file(self, tmp_path, capsys):
        path = tmp_path / "x.json"
        path.write_text(json.dumps([{"H": {"1": "1/3"}}]))
        code = main(["resonance", "scan", "--preset", "su2su2",
                     "--x-file", str(path), "--rho", "2,0"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "resonant" in out

    def test_bad_expression_exits_2(self, capsys):
        assert main(["verdict", "--preset", "su2su2",
                     "--x", "H1+"]) == EXIT_VALIDATION

    def test_bad_rootsystem_exits_2(self, capsys):
        assert main(["rootsys", "show",
                     "--rootsystem", "Z9"]) == EXIT_VALIDATION

    def test_bad_weight_exits_2(self, capsys):
        assert main(["repn", "info", "--rootsystem", "A2",
                     "--lambda", "1"]) == EXIT_VALIDATION

    def test_missing_file_exits_2(self, capsys):
        assert main(["deform", "validate", "--deformation",
                     "no-such-file.json"]) == EXIT_VALIDATION

    def test_scaled_flag_without_s_exits_2(self, capsys):
        assert main(["verdict", "--preset", "su2su2", "--scaled",
                     "--x", "1/3*H1"]) == EXIT_VALIDATION

    def test_unknown_command_exits_2(self, capsys):
        assert main(["frobnicate"]) == EXIT_VALIDATION


class TestOracleCommands:
    def test_kostant(self, capsys):
        code = main(["oracle", "kostant", "--rootsystem", "A2",
                     "--lambda", "0,0"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "[1, 2, 2, 1]" in out

    def test_bwbd_matches(self, tmp_path, capsys):
        out_file = tmp_path / "bwbd.json"
        code = main(["oracle", "bwbd", "--rho", "2,0", "--lambda", "3,0",
                     "--preset", "su2su2", "--x", "1/3*H1",
                     "--json", str(out_file)])
        assert code == EXIT_OK
        payload = json.loads(out_file.read_text())
        assert payload["match"]
        assert payload["bwbd"] == payload["oracle"] == [1, 1, 0, 0]

    def test_sweep_matches(self, capsys):
        code = main(["oracle", "sweep", "--preset", "su2su2",
                     "--x", "1/3*H1", "--cutoff", "2"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "all match" in out


class TestReport:
    def test_report_bytes_reproduce(self, tmp_path, capsys):
        args = ["report", "--preset", "su2su2", "--scaled",
                "--x", "s*(H1+H2)"]
        first = tmp_path / "r1.json"
        second = tmp_path / "r2.json"
        assert main(args + ["--json", str(first)]) == EXIT_OK
        assert main(args + ["--json", str(second), "--no-cache"]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()

    def test_report_embeds_refusal(self, tmp_path, capsys):
        out_file = tmp_path / "report.json"
        code = main(["report", "--preset", "su2su2", "--x", "1/3*H1",
                     "--json", str(out_file)])
        assert code == EXIT_OK
        payload = json.loads(out_file.read_text())
        assert payload["verdict"]["verdict"] == "inconclusive"
        assert payload["refusal"]["rho"] == [2, 0]
        assert payload["refusal"]["witness"]["lambda"] == [3, 0]
        assert payload["tangent"] is None
        assert all(r["all_match"] for r in payload["oracle"])

    def test_scaled_report_records_specialization(self, tmp_path, capsys):
        out_file = tmp_path / "report.json"
        code = main(["report", "--preset", "su2su2", "--scaled",
                     "--x", "s*(H1+H2)", "--json", str(out_file),
                     "--no-cache"])
        assert code == EXIT_OK
        payload = json.loads(out_file.read_text())
        assert payload["oracle_specialization"] == "s=1"
        assert payload["tangent"]["dims"] == [3, 3]
        assert payload["h0_lie"] is not None
        assert payload["verdict"]["verdict"] == "certified_non_invariant"

    def test_cache_hit_reproduces_bytes(self, tmp_path, capsys):
        args = ["report", "--preset", "su2su2", "--x", "1/3*H1"]
        first = tmp_path / "r1.json"
        second = tmp_path / "r2.json"
        assert main(args + ["--json", str(first)]) == EXIT_OK
        assert (tmp_path / ".liecoh_cache").is_dir()
        assert main(args + ["--json", str(second)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()


def test_canonical_json_is_stable():
    a = canonical_json({"b": 1, "a": [1, 2]})
    b = canonical_json({"a": [1, 2], "b": 1})
    assert a == b
    assert a.endswith("\n")
    assert " " not in a
