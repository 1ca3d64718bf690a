"""Command-line surface: envelopes, renderings, exit codes, determinism."""

import json
import math
import subprocess
import sys

import pytest

from citechain import cli


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestEnvelope:
    def test_json_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "pmf", "--p", "0.5", "--gamma", "1", "--n-max", "5")
        assert code == 0
        parsed = json.loads(out)
        assert set(parsed) == {"command", "params", "payload", "diagnostics"}
        # re-emitting under the documented encoder settings reproduces the
        # output byte for byte
        assert json.dumps(parsed, indent=2, sort_keys=True) == out.rstrip("\n")

    def test_csv_has_header(self, capsys):
        code, out, _ = run_cli(
            capsys, "pmf", "--p", "0.5", "--gamma", "1", "--n-max", "3", "--format", "csv"
        )
        assert code == 0
        assert out.splitlines()[0] == "n,probability"


class TestPmfCommand:
    def test_geometric_values(self, capsys):
        env = run_json(capsys, "pmf", "--p", "0.5", "--gamma", "0", "--n-max", "3")
        assert env["payload"]["probabilities"] == pytest.approx([0.5, 0.25, 0.125])
        assert env["payload"]["start"] == 1
        assert env["payload"]["tail"] == pytest.approx(0.125)

    def test_conditional_requires_improper(self, capsys):
        code, _, err = run_cli(
            capsys, "pmf", "--p", "0.5", "--gamma", "1", "--n-max", "3", "--conditional"
        )
        assert code == 1
        assert "error:" in err and "gamma > 1" in err

    def test_conditional_normalizes(self, capsys):
        env = run_json(
            capsys, "pmf", "--p", "0.5", "--gamma", "2", "--n-max", "2000", "--conditional"
        )
        p = env["payload"]
        assert sum(p["probabilities"]) + p["tail"] == pytest.approx(1.0, abs=1e-9)
        assert p["probabilities"][0] == pytest.approx(0.5 / (1.0 - 0.3581877860132440177))

    def test_deep_cell_emitted_in_log_form(self, capsys):
        env = run_json(capsys, "pmf", "--p", "0.999", "--gamma", "0", "--n-max", "200")
        deep = env["payload"]["probabilities"][-1]
        assert isinstance(deep, dict) and set(deep) == {"log_value"}
        expected = math.log(0.999) + 199 * math.log(0.001)
        assert deep["log_value"] == pytest.approx(expected, rel=1e-12)

    def test_deep_cell_csv_rendering(self, capsys):
        code, out, _ = run_cli(
            capsys, "pmf", "--p", "0.999", "--gamma", "0", "--n-max", "200",
            "--format", "csv",
        )
        assert code == 0
        assert out.splitlines()[200].startswith("200,log:-")


class TestTailCommand:
    def test_sibuya_values(self, capsys):
        env = run_json(capsys, "tail", "--p", "0.5", "--gamma", "1", "--m-max", "4")
        assert env["payload"]["tails"] == pytest.approx([1.0, 0.5, 0.375, 0.3125])

    def test_csv_rows(self, capsys):
        code, out, _ = run_cli(
            capsys, "tail", "--p", "0.5", "--gamma", "1", "--m-max", "2", "--format", "csv"
        )
        lines = out.splitlines()
        assert lines[1] == "1,1.0"
        assert lines[2] == "2,0.5"


class TestImproperMass:
    def test_value(self, capsys):
        env = run_json(capsys, "improper-mass", "--p", "0.5", "--gamma", "2")
        assert env["payload"]["improper_mass"] == pytest.approx(
            0.3581877860132440177, abs=5e-15
        )

    def test_proper_regime_zero(self, capsys):
        env = run_json(capsys, "improper-mass", "--p", "0.5", "--gamma", "1")
        assert env["payload"]["improper_mass"] == 0.0


class TestAsymCommand:
    def test_payload(self, capsys):
        env = run_json(
            capsys, "asym", "--p", "0.5", "--gamma", "0.7", "--grid", "1000,3000,10000"
        )
        p = env["payload"]
        assert p["constant"] == pytest.approx(2.4914506268324415, rel=1e-6)
        assert p["spread"] < 0.02
        assert p["regime"] == "fractional_non_integer"
        assert len(p["ratios"]) == 3

    def test_bad_grid(self, capsys):
        code, _, err = run_cli(
            capsys, "asym", "--p", "0.5", "--gamma", "0.7", "--grid", "10000,10"
        )
        assert code == 1 and "increasing" in err
        code, _, err = run_cli(
            capsys, "asym", "--p", "0.5", "--gamma", "0.7", "--grid", "a,b,c"
        )
        assert code == 1 and "comma-separated" in err


class TestGrowingPmf:
    def test_values(self, capsys):
        env = run_json(capsys, "growing-pmf", "--q", "0.5", "--gamma", "1", "--n-max", "5")
        probs = env["payload"]["probabilities"]
        assert probs[0] == 0.5
        assert sum(probs) + env["payload"]["tail"] == pytest.approx(1.0, abs=1e-12)

    def test_deep_tail_log_form(self, capsys):
        env = run_json(capsys, "growing-pmf", "--q", "0.5", "--gamma", "1", "--n-max", "200")
        tail = env["payload"]["tail"]
        assert isinstance(tail, dict) and tail["log_value"] < -900.0
        code, out, _ = run_cli(
            capsys, "growing-pmf", "--q", "0.5", "--gamma", "1", "--n-max", "200",
            "--format", "csv",
        )
        assert out.splitlines()[-1].startswith("tail,log:-")


class TestAuthorPmf:
    def test_methods_agree(self, capsys):
        oracle = run_json(capsys, "author-pmf", "--p", "0.5", "--q", "0.5", "--s-max", "40")
        hyp = run_json(
            capsys, "author-pmf", "--p", "0.5", "--q", "0.5", "--s-max", "40",
            "--method", "hyp",
        )
        a = oracle["payload"]["probabilities"]
        b = hyp["payload"]["probabilities"]
        assert a == pytest.approx(b, abs=1e-12)
        assert a[0] == pytest.approx(1.0 - math.sqrt(0.5))

    def test_tail_complement(self, capsys):
        env = run_json(capsys, "author-pmf", "--p", "0.5", "--q", "0.5", "--s-max", "100")
        p = env["payload"]
        assert p["start"] == 0
        assert sum(p["probabilities"]) + p["tail"] == pytest.approx(1.0, abs=1e-12)


class TestHirschPmf:
    def test_payload(self, capsys):
        env = run_json(capsys, "hirsch-pmf", "--p", "0.5", "--q", "0.5", "--h-max", "50")
        p = env["payload"]
        assert p["probabilities"][0] == 0.5
        assert p["probabilities"][1] == pytest.approx(0.25)
        assert p["probabilities"][2] == pytest.approx(2.0 / 27.0)
        assert p["normalization_deficit"] == pytest.approx(0.1583116636661382, abs=1e-12)

    def test_csv_has_deficit_row(self, capsys):
        code, out, _ = run_cli(
            capsys, "hirsch-pmf", "--p", "0.5", "--q", "0.5", "--h-max", "3",
            "--format", "csv",
        )
        assert out.splitlines()[-1].startswith("normalization_deficit,")


class TestSampleCommand:
    def test_trial_deterministic_in_process(self, capsys):
        argv = ("sample", "--model", "trial", "--p", "0.5", "--gamma", "1",
                "--count", "10", "--seed", "42")
        _, out1, _ = run_cli(capsys, *argv)
        _, out2, _ = run_cli(capsys, *argv)
        assert out1 == out2

    def test_trial_payload_and_derivation(self, capsys):
        env = run_json(
            capsys, "sample", "--model", "trial", "--p", "0.5", "--gamma", "1",
            "--count", "10", "--seed", "42",
        )
        assert len(env["payload"]["values"]) == 10
        assert "SeedSequence(42)" in env["diagnostics"]["stream_derivation"]
        assert "censoring_fraction" in env["diagnostics"]

    def test_trial_censoring_payload(self, capsys):
        # gamma > 1 with a tiny cap guarantees censored chains
        env = run_json(
            capsys, "sample", "--model", "trial", "--p", "0.5", "--gamma", "2",
            "--count", "40", "--seed", "7", "--cap", "3",
        )
        values = env["payload"]["values"]
        censored = [v for v in values if isinstance(v, dict)]
        assert censored and all(v == {"censored_at": 3} for v in censored)
        frac = env["diagnostics"]["censoring_fraction"]
        assert frac == pytest.approx(len(censored) / 40)
        assert env["payload"]["censored_count"] == len(censored)

    def test_author_requires_q(self, capsys):
        code, _, err = run_cli(
            capsys, "sample", "--model", "author", "--p", "0.5",
            "--count", "5", "--seed", "1",
        )
        assert code == 1 and "requires --q" in err

    def test_author_fixes_gamma(self, capsys):
        code, _, err = run_cli(
            capsys, "sample", "--model", "author", "--p", "0.5", "--q", "0.5",
            "--gamma", "0.5", "--count", "5", "--seed", "1",
        )
        assert code == 1 and "gamma" in err

    def test_author_payload(self, capsys):
        env = run_json(
            capsys, "sample", "--model", "author", "--p", "0.5", "--q", "0.5",
            "--count", "20", "--seed", "42",
        )
        papers = env["payload"]["papers"]
        citations = env["payload"]["citations"]
        assert len(papers) == len(citations) == 20
        assert min(papers) >= 1 and min(citations) >= 0

    def test_hirsch_modes(self, capsys):
        env = run_json(
            capsys, "sample", "--model", "hirsch", "--p", "0.5", "--q", "0.5",
            "--count", "60", "--seed", "11", "--cap", "100000",
        )
        h = env["payload"]["h"]
        assert len(h) == 60
        assert env["payload"]["no_match_count"] == sum(1 for v in h if v is None)
        assert env["payload"]["no_match_count"] > 0  # ~16% of draws at these params
        env = run_json(
            capsys, "sample", "--model", "hirsch", "--p", "0.5", "--q", "0.5",
            "--count", "60", "--seed", "11", "--cap", "100000",
            "--hirsch-mode", "true",
        )
        assert env["payload"]["no_match_count"] == 0
        assert all(isinstance(v, int) for v in env["payload"]["h"])

    def test_count_validation(self, capsys):
        code, _, err = run_cli(
            capsys, "sample", "--model", "trial", "--p", "0.5", "--gamma", "1",
            "--count", "0", "--seed", "1",
        )
        assert code == 1 and "count" in err


class TestAnalyzeCommand:
    def test_physics_json(self, capsys):
        env = run_json(capsys, "analyze", "--fixture", "physics")
        p = env["payload"]
        assert p["rho1"] == pytest.approx(0.35735, abs=1e-4)
        assert p["rho2"] == pytest.approx(-0.57292, abs=1e-4)
        assert p["h_mean"] == pytest.approx(198.2, abs=0.05)
        assert p["kappa_le_5_count"] == 1
        assert p["kappa_5_6_count"] == 6
        assert len(p["kappa"]) == 10

    def test_physics_csv_rounding(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "--fixture", "physics", "--format", "csv")
        cells = dict(line.split(",", 1) for line in out.splitlines()[1:])
        assert cells["kappa_5"] == "4.88"
        assert cells["h_sample_sd"] == "21.73"
        # full ratio 5.5051 presents as 5.51 under plain 2 dp rounding
        assert cells["kappa_9"] == "5.51"
        assert cells["kappa_le_5_count"] == "1"

    def test_csv_input_file(self, capsys, tmp_path):
        path = tmp_path / "listing.csv"
        path.write_text(
            "rank,total_citations,h_index,max_paper_citations\n"
            "1,400,10,100\n2,90,3,40\n",
            encoding="utf-8",
        )
        env = run_json(capsys, "analyze", "--input", str(path))
        assert env["payload"]["kappa"] == [4.0, 10.0]

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "analyze", "--input", "/no/such/file.csv")
        assert code == 1 and "error:" in err

    def test_fixture_and_input_mutually_exclusive(self, capsys):
        code, _, _ = run_cli(
            capsys, "analyze", "--fixture", "physics", "--input", "x.csv"
        )
        assert code == 2


class TestExitCodes:
    def test_out_of_range_parameter(self, capsys):
        code, _, err = run_cli(capsys, "pmf", "--p", "1.5", "--gamma", "1", "--n-max", "3")
        assert code == 1
        assert err.startswith("error:")

    def test_negative_gamma(self, capsys):
        code, _, _ = run_cli(capsys, "pmf", "--p", "0.5", "--gamma", "-1", "--n-max", "3")
        assert code == 1

    def test_usage_errors(self, capsys):
        assert run_cli(capsys, "pmf", "--p", "0.5")[0] == 2  # missing required
        assert run_cli(capsys, "pmf", "--p", "x", "--gamma", "1", "--n-max", "3")[0] == 2
        assert run_cli(capsys, "nonsense")[0] == 2
        assert run_cli(capsys)[0] == 2
        assert run_cli(
            capsys, "pmf", "--p", "0.5", "--gamma", "1", "--n-max", "3",
            "--format", "xml",
        )[0] == 2


class TestSubprocess:
    def test_module_entry_point_byte_identical(self):
        argv = [
            sys.executable, "-m", "citechain", "sample", "--model", "trial",
            "--p", "0.5", "--gamma", "1", "--count", "10", "--seed", "42",
        ]
        first = subprocess.run(argv, capture_output=True, check=True)
        second = subprocess.run(argv, capture_output=True, check=True)
        assert first.stdout == second.stdout
        assert json.loads(first.stdout)["command"] == "sample"

    def test_console_exit_code(self):
        proc = subprocess.run(
            [sys.executable, "-m", "citechain", "pmf", "--p", "2", "--gamma", "1",
             "--n-max", "3"],
            capture_output=True,
        )
        assert proc.returncode == 1
