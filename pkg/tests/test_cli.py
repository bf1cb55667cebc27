"""End-to-end tests of the command-line front end."""

import json

import pytest

from binomci.cli import main
from binomci.intervals import cp_interval


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInterval:
    def test_cp_prints_twelve_significant_digits(self, capsys):
        code, out, _ = run_cli(
            capsys, ["interval", "--method", "cp", "--n", "10", "--y", "3",
                     "--alpha", "0.05"]
        )
        assert code == 0
        iv = cp_interval(10, 3, 0.05)
        assert f"lower: {iv.lower:.12g}" in out
        assert f"upper: {iv.upper:.12g}" in out
        assert "n: 10" in out and "y: 3" in out and "alpha: 0.05" in out

    def test_korn_from_bits(self, capsys):
        code, out, _ = run_cli(
            capsys, ["interval", "--method", "korn", "--bits", "11000",
                     "--alpha", "0.05"]
        )
        assert code == 0
        assert "rank: 1" in out
        assert "count: 10" in out

    def test_stevens_full_count_saturates(self, capsys):
        code, out, _ = run_cli(
            capsys, ["interval", "--method", "stevens", "--n", "10", "--y",
                     "10", "--v", "0.9", "--alpha", "0.05"]
        )
        assert code == 0
        assert "upper: 1" in out

    def test_split_from_group_counts(self, capsys):
        code, out, _ = run_cli(
            capsys, ["interval", "--method", "split", "--n", "10",
                     "--y1", "1", "--y2", "2"]
        )
        assert code == 0
        assert "n1: 3" in out and "n2: 7" in out

    def test_split_from_bits(self, capsys):
        code, out, _ = run_cli(
            capsys, ["interval", "--method", "split", "--bits", "1001001000"]
        )
        assert code == 0
        assert "y1: 1" in out and "y2: 2" in out

    def test_conflicting_bits_and_count_rejected(self, capsys):
        code, _, err = run_cli(
            capsys, ["interval", "--method", "cp", "--bits", "110", "--y", "1"]
        )
        assert code == 1
        assert "conflicts" in err

    def test_missing_aux_rejected(self, capsys):
        code, _, err = run_cli(
            capsys, ["interval", "--method", "stevens", "--n", "5", "--y", "2"]
        )
        assert code == 1
        assert "requires --v" in err

    def test_usage_error_exit_code(self):
        with pytest.raises(SystemExit) as exc:
            main(["interval", "--method", "nope", "--n", "5", "--y", "2"])
        assert exc.value.code == 2


class TestCoverage:
    def test_csv_schema_and_reproducibility(self, capsys, tmp_path):
        out = tmp_path / "cov.csv"
        argv = ["coverage", "--method", "cp", "--n", "6", "--alpha", "0.05",
                "--grid-points", "49", "--out", str(out)]
        assert main(argv) == 0
        first = out.read_bytes()
        assert main(argv) == 0
        assert out.read_bytes() == first
        text = first.decode()
        assert text.startswith("# binomci coverage schema=1\n")
        assert text.splitlines()[1] == (
            "theta,upper_noncoverage,lower_noncoverage,expected_length"
        )

    def test_json_output(self, capsys, tmp_path):
        out = tmp_path / "cov.json"
        assert main(["coverage", "--method", "stevens", "--n", "5",
                     "--grid-points", "19", "--format", "json",
                     "--out", str(out)]) == 0
        payload = json.loads(out.read_text())
        assert payload["method"] == "stevens"
        assert payload["schema"] == {"name": "coverage", "version": 1}
        assert len(payload["theta"]) == len(payload["upper_noncoverage"])

    def test_svg_output_is_self_contained(self, capsys, tmp_path):
        out = tmp_path / "cov.svg"
        assert main(["coverage", "--method", "cp", "--n", "5",
                     "--grid-points", "19", "--format", "svg",
                     "--out", str(out)]) == 0
        text = out.read_text()
        assert text.startswith('<?xml version="1.0"')
        assert text.count("<polyline") == 3
        assert "stroke-dasharray" in text  # the alpha/2 reference line
        assert "href" not in text  # no external assets

    def test_outdir_env_var(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("BINOMCI_OUTDIR", str(tmp_path))
        assert main(["coverage", "--method", "cp", "--n", "4",
                     "--grid-points", "9", "--out", "sub/c.csv"]) == 0
        assert (tmp_path / "sub" / "c.csv").exists()

    def test_discrete_needs_levels(self, capsys):
        code, _, err = run_cli(
            capsys, ["coverage", "--method", "discrete", "--n", "5"]
        )
        assert code == 1
        assert "m-levels" in err


class TestSimulate:
    def test_writes_csv_and_json_reproducibly(self, capsys, tmp_path):
        prefix = str(tmp_path / "sim")
        argv = ["simulate", "--source", "vdc", "--n", "8", "--theta", "0.4",
                "--alpha", "0.05", "--m", "400", "--seed", "7",
                "--out", prefix]
        assert main(argv) == 0
        csv_first = (tmp_path / "sim.csv").read_bytes()
        json_first = (tmp_path / "sim.json").read_bytes()
        assert main(argv) == 0
        assert (tmp_path / "sim.csv").read_bytes() == csv_first
        assert (tmp_path / "sim.json").read_bytes() == json_first
        payload = json.loads(json_first)
        assert payload["source"] == {"base": 2, "kind": "van_der_corput",
                                     "position": 0}
        assert payload["m"] == 400

    def test_periodic_source_with_custom_perm(self, capsys, tmp_path):
        prefix = str(tmp_path / "perm")
        assert main(["simulate", "--source", "perm", "--period", "4",
                     "--perm", "3,1,4,2", "--n", "6", "--theta", "0.3",
                     "--m", "200", "--seed", "2", "--out", prefix]) == 0
        payload = json.loads((tmp_path / "perm.json").read_text())
        assert payload["source"]["perm"] == [3, 1, 4, 2]

    def test_uniform_source_requires_its_own_seed(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, ["simulate", "--source", "uniform", "--n", "5",
                     "--theta", "0.5", "--m", "10", "--seed", "1",
                     "--out", str(tmp_path / "u")]
        )
        assert code == 1
        assert "seed" in err


class TestCompare:
    def test_cp_versus_stevens_summary(self, capsys, tmp_path):
        out = tmp_path / "cmp.csv"
        code, printed, _ = run_cli(
            capsys, ["compare", "--methods", "cp,stevens", "--n", "8",
                     "--grid-points", "29", "--out", str(out)]
        )
        assert code == 0
        assert "domination stevens vs cp: dominates" in printed
        header = out.read_text().splitlines()[1].split(",")
        assert header[0] == "theta"
        assert "cp_upper_noncoverage" in header
        assert "stevens_expected_length" in header

    def test_korn_versus_split_cardinalities(self, capsys, tmp_path):
        out = tmp_path / "ks.csv"
        code, printed, _ = run_cli(
            capsys, ["compare", "--methods", "korn,split", "--n", "12",
                     "--grid-points", "15", "--out", str(out)]
        )
        assert code == 0
        assert "cardinality korn: 2^12 = 4096 statistic values" in printed
        assert "cardinality split:" in printed
        assert "refinement split: no" in printed
        assert "rate anomaly" in printed

    def test_requires_two_methods(self, capsys):
        code, _, err = run_cli(capsys, ["compare", "--methods", "cp",
                                        "--n", "5"])
        assert code == 1
        assert "two methods" in err
