"""Command line behavior: output strings, exit codes, file round trips."""

import json

import pytest

from sandlab.cli import main
from sandlab.config import parse_config, periodic_config, save_config
from sandlab.geography import parse_graph
from sandlab.rules import RuleTable, format_table, gamma_table, save_table


@pytest.fixture
def vip_cfg(tmp_path):
    path = tmp_path / "vip.cfg"
    save_config(periodic_config((0, 1, 3, 1, 0)), path)
    return str(path)


@pytest.fixture
def zero_rule(tmp_path):
    path = tmp_path / "zero.rule"
    save_table(RuleTable(((0,) * 5,) * 5, name="zero"), path)
    return str(path)


class TestCensus:
    def test_preservation_text(self, capsys):
        assert main(["census", "preservation"]) == 0
        assert capsys.readouterr().out == "105 / 625 = 0.168\n"

    def test_antidiagonal_text(self, capsys):
        assert main(["census", "antidiagonal"]) == 0
        assert capsys.readouterr().out == "3124 / 3125 = 0.99968\n"

    def test_preservation_json(self, capsys):
        assert main(["census", "preservation", "--out", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["count"] == 105 and doc["fraction"] == "105/625"


class TestPredecessor:
    def test_orphan_reported(self, capsys):
        assert main(["predecessor", "--rule", "gamma", "--word", "100,3,2,100"]) == 0
        assert capsys.readouterr().out == "no predecessor\n"

    def test_witness_reported(self, capsys):
        assert main(["predecessor", "--rule", "gamma", "--word", "3,2"]) == 0
        assert capsys.readouterr().out == "predecessor 1,0 with boundary classes -2,1\n"

    def test_json_schema(self, capsys):
        assert main(["predecessor", "--rule", "gamma", "--word", "100,3,2,100", "--out", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["format"] == "sandlab-witness/1"
        assert doc["predecessor"] is None

    def test_bad_word_is_usage_error(self, capsys):
        assert main(["predecessor", "--rule", "gamma", "--word", "1,x"]) == 2
        assert "'--word'" in capsys.readouterr().err


class TestSimulate:
    def test_text_orbit(self, vip_cfg, capsys):
        assert main(["simulate", "--rule", "gamma", "--config", vip_cfg, "--steps", "2"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert len(out) == 3
        assert out[0].startswith("step 0:")

    def test_json_round_trip(self, vip_cfg, capsys):
        assert main(["simulate", "--rule", "gamma", "--config", vip_cfg, "--steps", "3", "--out", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["format"] == "sandlab-orbit/1"
        orbit = [parse_config(json.dumps(step)) for step in doc["steps"]]
        assert len(orbit) == 4
        # the inducing profile rises by exactly one per step
        for n, c in enumerate(orbit):
            assert c.at(0) == orbit[0].at(0) + n

    def test_csv_header(self, vip_cfg, capsys):
        assert main(["simulate", "--rule", "gamma", "--config", vip_cfg, "--steps", "1", "--out", "csv"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "# sandlab-orbit/1"
        assert lines[1].startswith("step,origin,left_word")
        assert len(lines) == 4

    def test_missing_config_is_usage_error(self, capsys):
        assert main(["simulate", "--rule", "gamma", "--config", "nope.cfg", "--steps", "1"]) == 2
        assert "error:" in capsys.readouterr().err


class TestSpacetime:
    def test_ascii_frames(self, vip_cfg, capsys):
        code = main(
            ["spacetime", "--rule", "gamma", "--config", vip_cfg, "--steps", "2",
             "--window=-4..4", "--height=-2..6"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert out.count("step ") == 3
        assert "#" in out and "." in out

    def test_pgm_frames(self, vip_cfg, tmp_path, capsys):
        out_base = tmp_path / "frames.pgm"
        code = main(
            ["spacetime", "--rule", "gamma", "--config", vip_cfg, "--steps", "1",
             "--window=-3..3", "--height=-2..5", "--render", "pgm", "--out", str(out_base)]
        )
        assert code == 0
        files = sorted(tmp_path.glob("frames_*.pgm"))
        assert len(files) == 2
        assert files[0].read_text().startswith("P2\n")

    def test_pgm_requires_out(self, vip_cfg, capsys):
        code = main(
            ["spacetime", "--rule", "gamma", "--config", vip_cfg, "--steps", "1",
             "--window=-3..3", "--height=-2..5", "--render", "pgm"]
        )
        assert code == 2
        assert "--out" in capsys.readouterr().err


class TestSearches:
    def test_goe_found(self, capsys):
        assert main(["goe-search", "--rule", "gamma", "--max-len", "4", "--heights", "2,3,100"]) == 0
        assert capsys.readouterr().out == "orphan word: 100,2,3,100\n"

    def test_goe_none(self, capsys):
        assert main(["goe-search", "--rule", "gamma", "--max-len", "1", "--heights", "0,1,2"]) == 1
        assert "no orphan word" in capsys.readouterr().out

    def test_find_vip_gamma(self, capsys):
        assert main(["find-vip", "--rule", "gamma"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("order 1 cycle:")
        assert "realization:" in out

    def test_find_vip_none(self, zero_rule, capsys):
        assert main(["find-vip", "--rule", zero_rule]) == 1
        assert "no inducing cycle" in capsys.readouterr().out

    def test_find_blocking_found(self, capsys):
        assert main(["find-blocking", "--rule", "gamma", "--max-len", "5", "--heights", "0..4"]) == 0
        assert capsys.readouterr().out == "blocking word: 0,2,1,2,0\n"

    def test_find_blocking_none(self, capsys):
        assert main(["find-blocking", "--rule", "linear:-2,-2", "--max-len", "5", "--heights", "0..4"]) == 1
        assert "no certified word" in capsys.readouterr().out


class TestChecks:
    def test_check_vip_pass(self, vip_cfg, capsys):
        code = main(["check-vip", "--rule", "gamma", "--config", vip_cfg, "--order", "1", "--horizon", "20"])
        assert code == 0
        assert "confirmed" in capsys.readouterr().out

    def test_check_vip_fail(self, vip_cfg, capsys):
        code = main(["check-vip", "--rule", "gamma", "--config", vip_cfg, "--order", "2", "--horizon", "3"])
        assert code == 1

    def test_check_blocking_pass(self, capsys):
        code = main(["check-blocking", "--rule", "gamma", "--word", "0,3,2,3,0", "--k", "1", "--s", "1"])
        assert code == 0
        assert "increments 2,2,2" in capsys.readouterr().out

    def test_check_blocking_fail(self, capsys):
        code = main(["check-blocking", "--rule", "gamma", "--word", "0,0,0", "--k", "1", "--s", "1"])
        assert code == 1
        assert "not verified" in capsys.readouterr().out

    def test_check_blocking_json(self, capsys):
        code = main(
            ["check-blocking", "--rule", "gamma", "--word", "0,3,2,3,0", "--k", "1", "--s", "1", "--out", "json"]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["verified"] is True and doc["increments"] == [2, 2, 2]


class TestClassify:
    def test_gamma(self, capsys):
        assert main(["classify", "--rule", "gamma"]) == 0
        out = capsys.readouterr().out
        assert out.count("preserved") == 4 and "not preserved" not in out

    def test_omega_json(self, capsys):
        assert main(["classify", "--rule", "omega", "--out", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc == {
            "format": "sandlab-classification/1",
            "peak": False,
            "valley": False,
            "upslope": False,
            "downslope": False,
        }


class TestSegments:
    def test_stdout_parses(self, capsys):
        assert main(["segments"]) == 0
        g = parse_graph(capsys.readouterr().out)
        assert len(g.segments) == 13

    def test_extended_to_file(self, tmp_path, capsys):
        out = tmp_path / "ext.json"
        assert main(["segments", "--extended", "--out", str(out)]) == 0
        g = parse_graph(out.read_text())
        assert len(g.segments) == 17 and g.heuristic

    def test_load_and_revalidate(self, tmp_path, capsys):
        path = tmp_path / "g.json"
        assert main(["segments", "--extended", "--out", str(path)]) == 0
        capsys.readouterr()
        assert main(["segments", "--graph", str(path)]) == 0
        assert parse_graph(capsys.readouterr().out).heuristic

    def test_malformed_graph_is_usage_error(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(
            json.dumps(
                {
                    "format": "sandlab-segment-graph/1",
                    "segments": [
                        {"label": "x", "pairs": [[0, 0]], "order": 0},
                        {"label": "y", "pairs": [[1, -1]], "order": 0},
                    ],
                    "edges": [["x", "y"]],
                }
            )
        )
        assert main(["segments", "--graph", str(path)]) == 2
        assert "breaks chaining" in capsys.readouterr().err


class TestAttractor:
    def test_csv_file(self, tmp_path, capsys):
        out = tmp_path / "series.csv"
        code = main(
            ["attractor", "--rule", "gamma", "--samples", "3", "--steps", "4",
             "--radius", "3", "--seed", "5", "--out", str(out)]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "# sandlab-attractor-series/1"
        assert len(lines) == 2 + 5

    def test_stdout(self, capsys):
        code = main(["attractor", "--rule", "gamma", "--samples", "2", "--steps", "3", "--radius", "2", "--seed", "5"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "# sandlab-attractor-series/1"
        assert lines[1] == "step,mean,sample_0,sample_1"


class TestUsageErrors:
    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            main(["nosuch"])
        assert exc.value.code == 2

    def test_unknown_flag(self):
        with pytest.raises(SystemExit) as exc:
            main(["census", "preservation", "--bogus"])
        assert exc.value.code == 2

    def test_bad_rule_spec(self, capsys):
        assert main(["classify", "--rule", "linear:9"]) == 2
        assert "error:" in capsys.readouterr().err
