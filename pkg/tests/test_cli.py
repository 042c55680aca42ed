"""End-to-end tests for the command-line interface."""

from __future__ import annotations

import csv

import pytest

from dynkcenter import cli, core


def run_cli(*argv):
    return cli.main(list(argv))


class TestGen:
    def test_gen_random_writes_stream(self, tmp_path, capsys):
        out = tmp_path / "s.jsonl"
        rc = run_cli("gen", "--kind", "random", "--n", "30", "--seed", "7",
                     "--out", str(out))
        assert rc == 0
        points = core.load_stream_jsonl(str(out))
        assert len(points) == 30
        assert "wrote 30 points" in capsys.readouterr().out

    def test_gen_is_deterministic(self, tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        run_cli("gen", "--kind", "random", "--n", "25", "--seed", "3", "--out", str(a))
        run_cli("gen", "--kind", "random", "--n", "25", "--seed", "3", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_gen_adversarial_writes_matrix_sidecar(self, tmp_path):
        out = tmp_path / "adv.jsonl"
        mat = tmp_path / "adv.csv"
        rc = run_cli("gen", "--kind", "adversarial", "--n", "8",
                     "--out", str(out), "--matrix-out", str(mat))
        assert rc == 0
        table = core.load_matrix_csv(str(mat))
        assert len(table) == len(core.load_stream_jsonl(str(out))) == 16

    def test_gen_sliding_and_hbounded(self, tmp_path):
        for kind, extra in (("sliding", ["--window", "5"]),
                            ("hbounded", ["--h", "2"])):
            out = tmp_path / f"{kind}.jsonl"
            assert run_cli("gen", "--kind", kind, "--n", "20",
                           "--out", str(out), *extra) == 0
            assert len(core.load_stream_jsonl(str(out))) == 20


class TestRunVerify:
    @pytest.fixture()
    def stream_path(self, tmp_path):
        out = tmp_path / "s.jsonl"
        run_cli("gen", "--kind", "random", "--n", "30", "--seed", "11",
                "--max-life", "6", "--out", str(out))
        return out

    def test_run_writes_report(self, stream_path, tmp_path, capsys):
        report = tmp_path / "r.csv"
        rc = run_cli("run", "--algo", "two", "--k", "2", "--epsilon", "1.0",
                     "--prescan", "--stream", str(stream_path),
                     "--queries", "end", "--report", str(report))
        assert rc == 0
        with open(report, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 1
        assert float(rows[0]["radius"]) >= 0.0
        assert "t=" in capsys.readouterr().out

    def test_run_requires_bounds(self, stream_path, capsys):
        rc = run_cli("run", "--algo", "two", "--k", "2", "--epsilon", "1.0",
                     "--stream", str(stream_path))
        assert rc == 1
        assert "dmin" in capsys.readouterr().err

    def test_verify_two_passes(self, stream_path, capsys):
        rc = run_cli("verify", "--algo", "two", "--k", "2", "--epsilon", "1.0",
                     "--prescan", "--stream", str(stream_path),
                     "--queries", "every")
        assert rc == 0
        assert "verification passed" in capsys.readouterr().out

    def test_verify_six_passes(self, stream_path):
        assert run_cli("verify", "--algo", "six", "--k", "2", "--epsilon", "3.0",
                       "--prescan", "--stream", str(stream_path),
                       "--queries", "every") == 0

    def test_run_matrix_metric(self, tmp_path):
        out, mat = tmp_path / "adv.jsonl", tmp_path / "adv.csv"
        run_cli("gen", "--kind", "adversarial", "--n", "6",
                "--out", str(out), "--matrix-out", str(mat))
        rc = run_cli("run", "--algo", "two", "--k", "2", "--epsilon", "1.0",
                     "--prescan", "--stream", str(out),
                     "--metric", f"matrix:{mat}", "--queries", "end")
        assert rc == 0

    def test_queries_at_times(self, stream_path, tmp_path):
        report = tmp_path / "r.csv"
        rc = run_cli("run", "--algo", "two", "--k", "2", "--epsilon", "1.0",
                     "--prescan", "--stream", str(stream_path),
                     "--queries", "at:5,10", "--report", str(report))
        assert rc == 0
        with open(report, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert [int(r["time"]) for r in rows] == [5, 10]

    def test_report_is_deterministic(self, stream_path, tmp_path):
        paths = [tmp_path / "r1.csv", tmp_path / "r2.csv"]
        for p in paths:
            run_cli("verify", "--algo", "two", "--k", "2", "--epsilon", "1.0",
                    "--prescan", "--stream", str(stream_path),
                    "--queries", "every", "--report", str(p))
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestBench:
    def test_bench_adversarial(self, capsys):
        rc = run_cli("bench", "--sizes", "16,32", "--kind", "adversarial",
                     "--k", "2", "--no-reclustering")
        assert rc == 0
        out = capsys.readouterr().out
        lines = out.strip().splitlines()
        assert lines[0].startswith("n,structural_ops")
        assert len(lines) == 3

    def test_bench_random(self, capsys):
        rc = run_cli("bench", "--sizes", "50", "--kind", "random",
                     "--algo", "six", "--k", "2", "--epsilon", "3.0")
        assert rc == 0
        assert "50," in capsys.readouterr().out


class TestExitCodes:
    def test_bad_subcommand_is_usage_error(self, capsys):
        assert run_cli("frobnicate") == 1

    def test_bad_queries_spec(self, tmp_path, capsys):
        out = tmp_path / "s.jsonl"
        run_cli("gen", "--kind", "random", "--n", "10", "--out", str(out))
        rc = run_cli("run", "--algo", "two", "--k", "1", "--epsilon", "1.0",
                     "--prescan", "--stream", str(out), "--queries", "sometimes")
        assert rc == 1

    def test_bad_metric_spec(self, tmp_path):
        out = tmp_path / "s.jsonl"
        run_cli("gen", "--kind", "random", "--n", "10", "--out", str(out))
        rc = run_cli("run", "--algo", "two", "--k", "1", "--epsilon", "1.0",
                     "--prescan", "--stream", str(out), "--metric", "hamming")
        assert rc == 1

    def test_invalid_stream_bounds_fail(self, tmp_path, capsys):
        out = tmp_path / "s.jsonl"
        run_cli("gen", "--kind", "random", "--n", "10", "--seed", "1",
                "--out", str(out))
        # Declared bounds far tighter than the data: validation must fail.
        rc = run_cli("run", "--algo", "two", "--k", "1", "--epsilon", "1.0",
                     "--dmin", "0.9", "--dmax", "1.0", "--stream", str(out))
        assert rc == 1
