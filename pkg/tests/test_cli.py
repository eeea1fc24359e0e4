import json

import pytest

from gaussgcd.cli import main


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture()
def cache(tmp_path):
    return tmp_path / "cache"


class TestConstants:
    def test_prints_key_values(self, capsys):
        code, out = run(capsys, "constants")
        assert code == 0
        assert "1.50670300992" in out
        assert "0.66370080461" in out
        assert "0.52126939298" in out
        assert "0.82282524967" in out
        for v in ("0.67363", "0.37443", "0.27309", "0.21928"):
            assert v in out

    def test_json_output(self, capsys, tmp_path):
        path = tmp_path / "constants.json"
        code, _ = run(capsys, "constants", "--output", str(path), "--format", "json")
        assert code == 0
        names = {r["name"] for r in json.loads(path.read_text())}
        assert "sierpinski_constant" in names and "moment_constant_n5" in names


class TestDistribution:
    def test_csv_stdout(self, capsys, cache):
        code, out = run(capsys, "distribution", "--xmax", "2",
                        "--cache-dir", str(cache))
        assert code == 0
        assert out == "x,k,count\n2,1,3\n2,2,1\n"

    def test_oracle_flag_matches_fast(self, capsys, cache):
        _, fast = run(capsys, "distribution", "--xmax", "40",
                      "--cache-dir", str(cache))
        _, brute = run(capsys, "distribution", "--xmax", "40", "--oracle",
                       "--cache-dir", str(cache))
        assert fast == brute

    def test_oracle_guard_exit_code(self, capsys, cache):
        code, _ = run(capsys, "distribution", "--xmax", "2001", "--oracle",
                      "--cache-dir", str(cache))
        assert code == 3

    def test_json_mirror(self, capsys, cache, tmp_path):
        path = tmp_path / "d.json"
        code, _ = run(capsys, "distribution", "--xmax", "2", "--format", "json",
                      "--output", str(path), "--cache-dir", str(cache))
        assert code == 0
        assert json.loads(path.read_text()) == [
            {"x": 2, "k": 1, "count": 3},
            {"x": 2, "k": 2, "count": 1},
        ]

    def test_rerun_byte_identical(self, capsys, cache, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, "distribution", "--xmax", "500", "--output", str(a),
            "--cache-dir", str(cache))
        run(capsys, "distribution", "--xmax", "500", "--output", str(b),
            "--cache-dir", str(cache))
        assert a.read_bytes() == b.read_bytes()


class TestScalars:
    def test_probability_example(self, capsys, cache):
        code, out = run(capsys, "probability", "--xmax", "5",
                        "--cache-dir", str(cache))
        assert code == 0
        assert "0.76" in out

    def test_moment_trivial(self, capsys, cache):
        code, out = run(capsys, "moment", "--n", "2", "--xmax", "1",
                        "--cache-dir", str(cache))
        assert code == 0
        assert "1.0" in out

    def test_moment_bad_order(self, capsys, cache):
        code, _ = run(capsys, "moment", "--n", "9", "--xmax", "10",
                      "--cache-dir", str(cache))
        assert code == 2

    def test_expectation_fit(self, capsys, cache):
        code, out = run(capsys, "expectation", "--xmax", "4000",
                        "--grid-points", "25", "--cache-dir", str(cache))
        assert code == 0
        assert "a=" in out and "0.52127" in out


class TestUsageErrors:
    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_missing_command(self, capsys):
        assert main([]) == 2

    def test_bad_xmax(self, capsys, cache):
        code, _ = run(capsys, "distribution", "--xmax", "0",
                      "--cache-dir", str(cache))
        assert code == 2


class TestCacheHandling:
    def test_sieve_builds_cache(self, capsys, cache):
        code, out = run(capsys, "sieve", "--xmax", "100", "--cache-dir", str(cache))
        assert code == 0
        assert (cache / "tables-x100.gglab").exists()
        assert "79 ideals" in out and "316" in out

    def test_cache_reused_when_covering(self, capsys, cache):
        run(capsys, "sieve", "--xmax", "200", "--cache-dir", str(cache))
        code, out = run(capsys, "distribution", "--xmax", "5",
                        "--cache-dir", str(cache))
        assert code == 0
        assert list(cache.glob("*.gglab")) == [cache / "tables-x200.gglab"]

    def test_corrupt_cache_exits_io(self, capsys, cache):
        run(capsys, "sieve", "--xmax", "100", "--cache-dir", str(cache))
        path = cache / "tables-x100.gglab"
        path.write_bytes(path.read_bytes()[:-5])
        code, _ = run(capsys, "distribution", "--xmax", "50",
                      "--cache-dir", str(cache))
        assert code == 4

    def test_output_to_directory_exits_io(self, capsys, cache, tmp_path):
        code, _ = run(capsys, "distribution", "--xmax", "5",
                      "--output", str(tmp_path), "--cache-dir", str(cache))
        assert code == 4


class TestFitCommands:
    def test_fit_writes_csv_and_figure(self, capsys, cache, tmp_path):
        out_csv = tmp_path / "fit_n2.csv"
        code, out = run(capsys, "fit", "--n", "2", "--xmax", "3000",
                        "--grid-points", "40", "--output", str(out_csv),
                        "--cache-dir", str(cache))
        assert code == 0
        header = out_csv.read_text().splitlines()[0]
        assert header == "n,coeff_deg0,coeff_deg1,residual,conjectured,rel_err"
        assert "0.67364" in out_csv.read_text()
        svg = tmp_path / "fit_n2.svg"
        assert svg.exists() and "best fit:" in svg.read_text()

    def test_table1_small_smoke(self, capsys, cache, tmp_path):
        out_csv = tmp_path / "table1.csv"
        code, out = run(capsys, "reproduce-table1", "--xmax", "3000",
                        "--grid-points", "30", "--output", str(out_csv),
                        "--cache-dir", str(cache))
        assert code == 0
        lines = out_csv.read_text().splitlines()
        assert lines[0] == (
            "n,coeff_deg0,coeff_deg1,coeff_deg2,coeff_deg3,coeff_deg4,"
            "residual,conjectured,rel_err"
        )
        assert len(lines) == 5
        for digits in ("0.67364", "0.37444", "0.27309", "0.21928"):
            assert digits in out
            assert any(digits in line for line in lines[1:])

    def test_threads_bit_identical(self, capsys, cache, tmp_path):
        outs = {}
        for threads in ("1", "8"):
            path = tmp_path / f"t{threads}.csv"
            code, _ = run(capsys, "reproduce-table1", "--xmax", "2000",
                          "--grid-points", "25", "--output", str(path),
                          "--threads", threads, "--cache-dir", str(cache))
            assert code == 0
            outs[threads] = path.read_bytes()
        assert outs["1"] == outs["8"]

    def test_reproduce_figures(self, capsys, cache, tmp_path):
        out_dir = tmp_path / "figs"
        code, out = run(capsys, "reproduce-figures", "--xmax", "2000",
                        "--grid-points", "25", "--output", str(out_dir),
                        "--cache-dir", str(cache))
        assert code == 0
        for n in (2, 3, 4, 5):
            csv_path = out_dir / f"moment_n{n}.csv"
            svg_path = out_dir / f"moment_n{n}.svg"
            assert csv_path.exists() and svg_path.exists()
            assert csv_path.read_text().startswith("x,n,moment\n")
            assert "best fit:" in svg_path.read_text()
