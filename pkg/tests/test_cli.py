import csv
import io

from netdecomp.cli import main
from netdecomp.scenario import Scenario


def _rows(text):
    return list(csv.DictReader(ln for ln in io.StringIO(text) if not ln.startswith("#")))


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_run_default_protocol(capsys):
    code, out, _ = _run(capsys, "run", "--set", "M=10", "--set", "seeds=1..9", "--no-timestamp")
    assert code == 0
    rows = _rows(out)
    assert len(rows) == 27 + 3
    assert [r["seed"] for r in rows[-3:]] == ["mean"] * 3
    assert {r["algorithm"] for r in rows} == {"similarity", "stable", "spectral"}
    assert {r["convention"] for r in rows if r["algorithm"] == "spectral"} == {"switch_off"}


def test_header_line_and_timestamp(capsys):
    _, out, _ = _run(capsys, "run", "--set", "seeds=1", "--set", "algorithms=similarity")
    assert out.startswith("# generated ")


def test_empty_seed_list(capsys):
    code, out, _ = _run(capsys, "run", "--set", "seeds=", "--no-timestamp")
    assert code == 0
    assert out.strip().splitlines() == ["seed,algorithm,M_requested,M_effective,convention,"
                                        "interference_total,infinite_terms_count,runtime_ms"]


def test_unknown_algorithm_is_usage_error(capsys):
    code, _, err = _run(capsys, "run", "--set", "algorithms=kmeans")
    assert code == 2 and "kmeans" in err


def test_unknown_key_and_bad_value(capsys):
    assert _run(capsys, "run", "--set", "colour=red")[0] == 2
    assert _run(capsys, "run", "--set", "b=many")[0] == 2
    assert _run(capsys, "run", "--set", "M=200", "--set", "algorithms=similarity")[0] == 2


def test_sweep_row_count(capsys):
    code, out, _ = _run(capsys, "sweep", "--set", "b=100", "--set", "u=100", "--set", "M_range=2..30",
                        "--set", "seeds=1,2", "--set", "algorithms=similarity,matching", "--no-timestamp")
    assert code == 0
    rows = _rows(out)
    for alg in ("similarity", "matching"):
        assert [int(r["M"]) for r in rows if r["algorithm"] == alg] == list(range(2, 31))
    assert all(float(r["min"]) <= float(r["mean"]) <= float(r["max"]) for r in rows
               if r["mean"] != "inf")


def test_sweep_defaults_to_full_grid(capsys):
    code, out, _ = _run(capsys, "sweep", "--set", "seeds=1", "--set", "algorithms=similarity", "--no-timestamp")
    assert code == 0
    assert [int(r["M"]) for r in _rows(out)] == list(range(2, 41))


def test_oracle_guard(capsys):
    code, _, err = _run(capsys, "oracle", "--set", "b=7", "--set", "u=6", "--set", "M=2")
    assert code == 2 and "guard" in err


def test_oracle_small(capsys):
    code, out, _ = _run(capsys, "oracle", "--set", "b=3", "--set", "u=4", "--set", "M=1..3",
                        "--set", "seeds=1", "--set", "dist_max=2000", "--no-timestamp")
    assert code == 0
    rows = _rows(out)
    assert [r["M"] for r in rows] == ["1", "2", "3"]
    vals = [float(r["minimum"]) for r in rows]
    assert vals == sorted(vals)


def test_byte_identical_reruns(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("b = 30\nu = 40\nseeds = 1..3  # three seeds\nM = 4, 6\n"
                   "algorithms = similarity, matching, stable, spectral\n")
    outs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        assert main(["run", "-c", str(cfg), "-o", str(path), "--no-timestamp", "--no-timing"]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert b"runtime_ms" not in outs[0]


def test_scatter(capsys):
    code, out, _ = _run(capsys, "scatter", "--set", "b=100", "--set", "u=50", "--set", "seeds=8",
                        "--set", "M=30", "--set", "algorithms=similarity", "--no-timestamp")
    assert code == 0
    rows = _rows(out)
    assert len(rows) == 150
    assert sum(r["kind"] == "bs" for r in rows) == 100
    assert all(0 <= float(r["x"]) <= 1000 for r in rows)


def test_generate_round_trip(tmp_path):
    path = tmp_path / "s.txt"
    assert main(["generate", "--b", "5", "--u", "7", "--seed", "3", "-o", str(path)]) == 0
    s = Scenario.from_text(path.read_text())
    assert s.bs_positions.shape == (5, 2) and s.user_positions.shape == (7, 2)
    assert s.seed == 3


def test_degenerate_input_exit_code(capsys):
    code, _, err = _run(capsys, "run", "--set", "algorithms=spectral", "--set", "seeds=1",
                        "--set", "dist_min=0.001", "--set", "dist_max=0.01")
    assert code == 3 and err


def test_missing_config_file(capsys):
    assert _run(capsys, "run", "-c", "/nonexistent/exp.cfg")[0] == 2
