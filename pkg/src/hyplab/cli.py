"""Command-line entry point: scenarios, audits, exports, SVG renders.

Reports are JSON (schema 1) with sorted keys, so identical configuration
and seed reproduce identical bytes; wall time goes to stderr to keep it
that way.  Exit codes: 0 success, 1 scenario checks failed (report still
written), 2 usage or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .boundary import LimitSetSample
from .embedding import embed_tree_ball, minimal_subspace_restrict
from .freegroup import (
    ball,
    conjugate_intersection_probe,
    edge_audit,
    gamma,
    gamma_map,
    homomorphy_probe,
)
from .groups import (
    dirichlet_membership,
    discreteness_audit,
    enumerate_ball,
    fixed_point_sample,
    limit_set_sample,
    orbit_to_csv,
    schottky_h2,
)
from .minkowski import GeometryError, basepoint
from .scenarios import (
    Check,
    ScenarioReport,
    scenario_h4,
    scenario_nonrigidity,
    scenario_normal_subgroup,
)

_SCENARIOS = {
    "nonrigidity": scenario_nonrigidity,
    "h4": scenario_h4,
    "normal-subgroup": scenario_normal_subgroup,
}


@dataclass
class RunConfig:
    """One CLI invocation: a command, its parameters, and output paths."""

    command: str
    parameters: dict = field(default_factory=dict)
    report_path: str | None = None
    csv_path: str | None = None
    svg_path: str | None = None
    seed: int = 0


def _canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _write_report(config: RunConfig, payload: dict) -> None:
    if config.report_path is None:
        return
    envelope = {
        "schema": 1,
        "tool": "hyplab",
        "version": __version__,
        "command": config.command,
        "config": {
            "parameters": config.parameters,
            "report": config.report_path,
            "csv": config.csv_path,
            "svg": config.svg_path,
        },
        "seed": config.seed,
    }
    envelope.update(payload)
    path = Path(config.report_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_canonical_json(envelope))


def render_limit_set(sample: LimitSetSample, path) -> None:
    """Deterministic SVG: 1000x1000 canvas, unit circle, one dot per point."""
    if sample.dim != 2:
        raise GeometryError(
            "sample is not two-dimensional; restrict it with "
            "minimal_subspace_restrict before rendering"
        )
    _render_xy(sample.spatial_matrix(), path)


def _render_xy(xy: np.ndarray, path) -> None:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" width="1000" height="1000" '
        'viewBox="0 0 1000 1000">',
        '<rect width="1000" height="1000" fill="white"/>',
        '<circle cx="500" cy="500" r="450" fill="none" stroke="black" '
        'stroke-width="1"/>',
    ]
    for x, y in xy[:, :2]:
        cx = 500.0 + 450.0 * float(x)
        cy = 500.0 - 450.0 * float(y)
        lines.append(f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="2.5" fill="#1f4e79"/>')
    lines.append("</svg>")
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(lines) + "\n")


def _render_sample(sample: LimitSetSample, path) -> None:
    if sample.dim == 2:
        render_limit_set(sample, path)
        return
    restriction = minimal_subspace_restrict(list(sample.points))
    xy = np.vstack([p.vector[1:3] for p in restriction.restricted])
    _render_xy(xy, path)


def _checks_payload(checks: list[Check], extra: dict | None = None) -> dict:
    payload = {
        "checks": [c.to_json_dict() for c in checks],
        "overall_pass": all(c.passed for c in checks),
    }
    if extra:
        payload.update(extra)
    return payload


def _run_embed(config: RunConfig) -> int:
    lam = config.parameters["lam"]
    radius = config.parameters["radius"]
    embedding = embed_tree_ball(radius, lam)
    _write_report(
        config,
        {"embedding": embedding.to_json_dict(), "overall_pass": True},
    )
    if config.csv_path is not None:
        with open(config.csv_path, "w") as fh:
            fh.write("word," + ",".join(f"c{i}" for i in range(embedding.ambient_dim + 1)) + "\n")
            for word, row in zip(embedding.vertices, embedding.coords):
                fh.write(str(word) + "," + ",".join(repr(float(x)) for x in row) + "\n")
    print(
        f"embedded {len(embedding.vertices)} vertices in dimension "
        f"{embedding.ambient_dim}; max relative residual {embedding.max_rel_residual:.3e}"
    )
    return 0


def _run_gamma_probe(config: RunConfig) -> int:
    x_radius = config.parameters["x_radius"]
    test_radius = config.parameters["test_radius"]
    probe = conjugate_intersection_probe(x_radius, test_radius)
    survivors = [str(w) for w in probe.survivors]
    _write_report(
        config,
        {
            "survivors": survivors,
            "x_radius": x_radius,
            "test_radius": test_radius,
            "overall_pass": not survivors,
        },
    )
    print(f"survivors: {survivors}")
    return 0 if not survivors else 1


def _run_scenario(config: RunConfig) -> int:
    name = config.parameters["name"]
    kwargs = {k: v for k, v in config.parameters.items() if k != "name" and v is not None}
    report: ScenarioReport = _SCENARIOS[name](seed=config.seed, **kwargs)
    _write_report(config, report.to_json_dict())
    if config.svg_path is not None:
        _render_sample(_scenario_render_sample(name, report), config.svg_path)
    for check in report.checks:
        print(f"[{'pass' if check.passed else 'FAIL'}] {check.name} = {check.value}")
    print(f"overall: {'pass' if report.overall_pass else 'FAIL'}")
    return 0 if report.overall_pass else 1


def _scenario_render_sample(name: str, report: ScenarioReport) -> LimitSetSample:
    params = report.parameters
    if name == "h4":
        from .groups import build_h4_example

        example = build_h4_example(
            params["ell_g"], params["ell_h"], params["separation"], params["theta"]
        )
        return limit_set_sample(example.g1, params["depth"], group_label="plain")
    if name == "normal-subgroup":
        ambient = schottky_h2(params["ell"], params["separation"])
        return fixed_point_sample(ambient, min(params["ref_depth"], 8))
    embedding = embed_tree_ball(params["tree_radius"], params["lambda"])
    from .freegroup import shell
    from .scenarios import _transported_sample

    depth = params["sample_depths"][-1]
    return _transported_sample(embedding, shell(depth), depth, "plain")


def _run_schottky(config: RunConfig) -> int:
    ell = config.parameters["ell"]
    separation = config.parameters["separation"]
    depth = config.parameters["depth"]
    spec = schottky_h2(ell, separation)
    sample = limit_set_sample(spec, depth)
    orbit = enumerate_ball(spec, min(depth, 6))
    payload = {
        "certificate": spec.certificate,
        "sample_size": len(sample),
        "orbit_size": len(orbit),
        "collisions": len(orbit.collisions),
        "overall_pass": True,
    }
    _write_report(config, payload)
    if config.csv_path is not None:
        orbit_to_csv(orbit, config.csv_path)
    if config.svg_path is not None:
        render_limit_set(sample, config.svg_path)
    print(
        f"certificate min pairing {spec.certificate['min_pairing']:.6f}; "
        f"{len(sample)} boundary points at depth {depth}"
    )
    return 0


def _run_audit(config: RunConfig) -> int:
    ell = config.parameters["ell"]
    separation = config.parameters["separation"]
    depth = config.parameters["depth"]
    radius = config.parameters["radius"]
    checks: list[Check] = []
    spec = schottky_h2(ell, separation)
    checks.append(
        Check(
            "ping_pong_certificate",
            spec.certificate["min_pairing"],
            "> 1",
            spec.certificate["min_pairing"] > 1.0,
        )
    )
    orbit = enumerate_ball(spec, depth)
    checks.append(
        Check("orbit_collisions", len(orbit.collisions), "= 0", not orbit.collisions)
    )
    gap = discreteness_audit(orbit, 1e9).min_gap
    checks.append(Check("orbit_min_gap", gap, "> 0", gap > 0.0))
    member = dirichlet_membership(basepoint(2), orbit)
    checks.append(
        Check("basepoint_in_dirichlet_domain", member.is_member, "true", member.is_member)
    )
    audit = edge_audit(gamma_map(), radius)
    checks.append(
        Check(
            "gamma_edge_audit",
            audit.edges_checked,
            f"all edges of the radius-{radius} ball map to edges",
            audit.ok,
        )
    )
    involution_ok = all(gamma(gamma(w)) == w for w in ball(radius))
    checks.append(
        Check("gamma_involution", involution_ok, "gamma twice is the identity", involution_ok)
    )
    witnesses_ok = all(
        homomorphy_probe(w, 1).fails and len(homomorphy_probe(w, 1).witness_y) == 1
        for w in ball(3)
        if len(w) > 0
    )
    checks.append(
        Check(
            "homomorphy_witnesses",
            witnesses_ok,
            "length-1 witness for every word of length <= 3",
            witnesses_ok,
        )
    )
    _write_report(config, _checks_payload(checks))
    for check in checks:
        print(f"[{'pass' if check.passed else 'FAIL'}] {check.name} = {check.value}")
    return 0 if all(c.passed for c in checks) else 1


_COMMANDS = {
    "embed": _run_embed,
    "gamma-probe": _run_gamma_probe,
    "scenario": _run_scenario,
    "schottky": _run_schottky,
    "audit": _run_audit,
}


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    if config.command not in _COMMANDS:
        raise ValueError(f"unknown command {config.command!r}")
    return _COMMANDS[config.command](config)


def _load_config_file(path: str) -> dict:
    """Plain `key = value` lines; blank lines and # comments ignored."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyplab",
        description="hyperboloid-model group constructions: scenarios, audits, exports",
    )
    parser.add_argument("--version", action="version", version=f"hyplab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; explicit flags override")
    common.add_argument("--report", help="write a JSON report here")
    common.add_argument("--seed", type=int, help="random seed recorded in outputs")

    p = sub.add_parser("embed", parents=[common], help="embed a tree ball")
    p.add_argument("--lambda", dest="lam", type=float, help="growth base (> 1)")
    p.add_argument("--radius", type=int, help="tree ball radius")
    p.add_argument("--csv", help="write vertex coordinates here")

    p = sub.add_parser("gamma-probe", parents=[common], help="conjugate intersection probe")
    p.add_argument("--x-radius", type=int, help="radius of candidate words")
    p.add_argument("--test-radius", type=int, help="radius of the agreement ball")

    p = sub.add_parser("scenario", parents=[common], help="run a named scenario")
    p.add_argument("name", choices=sorted(_SCENARIOS))
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--tree-radius", type=int)
    p.add_argument("--word-depth", type=int)
    p.add_argument("--theta", type=float)
    p.add_argument("--ell", type=float)
    p.add_argument("--ell-g", type=float)
    p.add_argument("--ell-h", type=float)
    p.add_argument("--separation", type=float)
    p.add_argument("--n-conjugates", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--ref-depth", type=int)
    p.add_argument("--svg", help="render the scenario's boundary sample here")

    p = sub.add_parser("schottky", parents=[common], help="build and export a free pair")
    p.add_argument("--ell", type=float, help="translation length")
    p.add_argument("--separation", type=float, help="distance between the axes")
    p.add_argument("--depth", type=int, help="boundary sample depth")
    p.add_argument("--csv", help="write the orbit sample here")
    p.add_argument("--svg", help="render the boundary sample here")

    p = sub.add_parser("audit", parents=[common], help="run library self-audits")
    p.add_argument("--ell", type=float)
    p.add_argument("--separation", type=float)
    p.add_argument("--depth", type=int, help="orbit ball depth")
    p.add_argument("--radius", type=int, help="tree audit radius")

    return parser


_DEFAULTS = {
    "embed": {"lam": 2.0, "radius": 4},
    "gamma-probe": {"x_radius": 4, "test_radius": 2},
    "scenario": {},
    "schottky": {"ell": 2.0, "separation": 2.0, "depth": 6},
    "audit": {"ell": 2.0, "separation": 2.0, "depth": 5, "radius": 6},
}

_PARAM_KEYS = {
    "embed": ("lam", "radius"),
    "gamma-probe": ("x_radius", "test_radius"),
    "scenario": (
        "name",
        "lam",
        "tree_radius",
        "word_depth",
        "theta",
        "ell",
        "ell_g",
        "ell_h",
        "separation",
        "n_conjugates",
        "depth",
        "ref_depth",
    ),
    "schottky": ("ell", "separation", "depth"),
    "audit": ("ell", "separation", "depth", "radius"),
}

_SCENARIO_PARAM_NAMES = {
    "nonrigidity": {"lam": "lam", "tree_radius": "tree_radius", "word_depth": "word_depth"},
    "h4": {
        "theta": "theta",
        "ell_g": "ell_g",
        "ell_h": "ell_h",
        "separation": "separation",
        "depth": "depth",
    },
    "normal-subgroup": {
        "ell": "ell",
        "separation": "separation",
        "n_conjugates": "n_conjugates",
        "depth": "depth",
        "ref_depth": "ref_depth",
    },
}


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    values = vars(args).copy()
    command = values.pop("command")
    file_values = {}
    if values.get("config"):
        file_values = _load_config_file(values["config"])

    def resolve(key, cast):
        if values.get(key) is not None:
            return values[key]
        if key in file_values:
            return cast(file_values[key])
        return _DEFAULTS[command].get(key)

    casts = {
        "lam": float,
        "theta": float,
        "ell": float,
        "ell_g": float,
        "ell_h": float,
        "separation": float,
    }
    parameters = {}
    for key in _PARAM_KEYS[command]:
        if key == "name":
            parameters["name"] = values["name"]
            continue
        cast = casts.get(key, int)
        parameters[key] = resolve(key, cast)
    if command == "scenario":
        allowed = _SCENARIO_PARAM_NAMES[parameters["name"]]
        parameters = {"name": parameters["name"]} | {
            target: parameters[src]
            for src, target in allowed.items()
            if parameters.get(src) is not None
        }
        if "lam" in parameters:
            parameters["lam"] = float(parameters["lam"])
    seed = values.get("seed")
    if seed is None:
        seed = int(file_values.get("seed", 0))
    return RunConfig(
        command=command,
        parameters=parameters,
        report_path=values.get("report") or file_values.get("report"),
        csv_path=values.get("csv") or file_values.get("csv"),
        svg_path=values.get("svg") or file_values.get("svg"),
        seed=seed,
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        config = _config_from_args(args)
        status = run(config)
    except (GeometryError, ValueError, OSError) as exc:
        print(f"hyplab: error: {exc}", file=sys.stderr)
        return 2
    finally:
        print(f"wall time: {time.perf_counter() - started:.2f}s", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
