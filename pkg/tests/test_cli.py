import json
import re

import numpy as np
import pytest

from hyplab.boundary import LimitSetSample
from hyplab.cli import RunConfig, _load_config_file, main, render_limit_set, run
from hyplab.groups import limit_set_sample, schottky_h2
from hyplab.minkowski import GeometryError, IdealPoint


def read_json(path):
    return json.loads(path.read_text())


class TestEmbedCommand:
    def test_report_and_exit(self, tmp_path):
        report = tmp_path / "embed.json"
        status = main(
            ["embed", "--lambda", "2", "--radius", "3", "--report", str(report)]
        )
        assert status == 0
        payload = read_json(report)
        assert payload["schema"] == 1
        assert payload["embedding"]["max_rel_residual"] <= 1e-8
        assert payload["command"] == "embed"

    def test_csv_columns(self, tmp_path):
        csv_path = tmp_path / "points.csv"
        main(["embed", "--radius", "1", "--csv", str(csv_path)])
        lines = csv_path.read_text().splitlines()
        assert lines[0].startswith("word,c0,c1")
        assert len(lines) == 6


class TestGammaProbeCommand:
    def test_empty_survivors(self, tmp_path):
        report = tmp_path / "probe.json"
        status = main(
            ["gamma-probe", "--x-radius", "3", "--test-radius", "2", "--report", str(report)]
        )
        assert status == 0
        assert read_json(report)["survivors"] == []


class TestScenarioCommand:
    def test_h4_with_svg(self, tmp_path):
        report = tmp_path / "h4.json"
        svg = tmp_path / "limit.svg"
        status = main(
            [
                "scenario",
                "h4",
                "--depth",
                "4",
                "--report",
                str(report),
                "--svg",
                str(svg),
            ]
        )
        assert status == 0
        payload = read_json(report)
        assert payload["overall_pass"] is True
        body = svg.read_text()
        dots = re.findall(r'cx="([0-9.]+)" cy="([0-9.]+)" r="2.5"', body)
        assert dots
        for cx, cy in dots:
            radius = np.hypot(float(cx) - 500.0, float(cy) - 500.0)
            assert radius == pytest.approx(450.0, abs=0.51)

    def test_failing_scenario_still_writes_report(self, tmp_path):
        report = tmp_path / "fail.json"
        status = main(
            [
                "scenario",
                "h4",
                "--theta",
                "0.00000001",
                "--depth",
                "4",
                "--report",
                str(report),
            ]
        )
        assert status == 1
        assert read_json(report)["overall_pass"] is False


class TestSchottkyCommand:
    def test_outputs(self, tmp_path):
        report = tmp_path / "s.json"
        csv_path = tmp_path / "orbit.csv"
        status = main(
            [
                "schottky",
                "--ell",
                "2",
                "--separation",
                "2",
                "--depth",
                "4",
                "--report",
                str(report),
                "--csv",
                str(csv_path),
            ]
        )
        assert status == 0
        payload = read_json(report)
        assert payload["collisions"] == 0
        assert csv_path.read_text().splitlines()[0] == "word,c0,c1,c2"

    def test_byte_identical_reports(self, tmp_path):
        # identical config (including the output path) and seed
        report = tmp_path / "a.json"
        args = ["schottky", "--depth", "4", "--report", str(report)]
        main(args)
        first = report.read_bytes()
        main(args)
        assert report.read_bytes() == first


class TestAuditCommand:
    def test_all_pass(self, tmp_path):
        report = tmp_path / "audit.json"
        status = main(["audit", "--depth", "4", "--radius", "5", "--report", str(report)])
        assert status == 0
        payload = read_json(report)
        assert payload["overall_pass"] is True


class TestUsageErrors:
    def test_unknown_flag_exits_two(self):
        with pytest.raises(SystemExit) as err:
            main(["embed", "--no-such-flag", "1"])
        assert err.value.code == 2

    def test_bad_parameters_exit_two(self, tmp_path):
        status = main(["schottky", "--separation", "0.1"])
        assert status == 2

    def test_missing_config_file(self):
        status = main(["embed", "--config", "/nonexistent/path.cfg"])
        assert status == 2


class TestConfigFile:
    def test_parse_and_override(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# sample\nell = 2.0\nseparation = 1.6\ndepth = 3\n")
        loaded = _load_config_file(cfg)
        assert loaded == {"ell": "2.0", "separation": "1.6", "depth": "3"}
        report = tmp_path / "r.json"
        main(["schottky", "--config", str(cfg), "--depth", "4", "--report", str(report)])
        params = read_json(report)["config"]["parameters"]
        assert params["separation"] == 1.6
        assert params["depth"] == 4

    def test_malformed_line(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("depth 3\n")
        with pytest.raises(ValueError):
            _load_config_file(cfg)


class TestRenderLimitSet:
    def test_two_point_render(self, tmp_path):
        spec = schottky_h2(2.0, 2.0)
        sample = limit_set_sample(spec, 3)
        path = tmp_path / "out.svg"
        render_limit_set(sample, path)
        body = path.read_text()
        assert body.count('r="2.5"') == len(sample)
        assert 'r="450"' in body

    def test_high_dimensional_sample_rejected(self, tmp_path):
        points = tuple(
            IdealPoint(np.array([1.0, np.cos(a), np.sin(a), 0.0, 0.0]))
            for a in (0.1, 1.0, 2.0)
        )
        sample = LimitSetSample(points, 1, "4d")
        with pytest.raises(GeometryError, match="restrict"):
            render_limit_set(sample, tmp_path / "no.svg")


def test_run_config_api(tmp_path):
    config = RunConfig(
        command="gamma-probe",
        parameters={"x_radius": 2, "test_radius": 1},
        report_path=str(tmp_path / "r.json"),
    )
    assert run(config) == 0
    assert read_json(tmp_path / "r.json")["survivors"] == []
