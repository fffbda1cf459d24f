"""End-to-end constructions with structured pass/fail verdicts.

Each scenario builds one of the library's group constructions, runs its
checks at explicit thresholds, and returns a ScenarioReport whose JSON
form is byte-stable for a fixed (parameters, seed) pair.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .boundary import (
    LimitSetSample,
    dedup_ideal_points,
    directed_hausdorff,
    hausdorff_distance,
    largest_empty_cap,
    project_to_boundary,
)
from .embedding import (
    EmbeddingResult,
    embed_tree_ball,
    embedding_coboundedness,
    extend_isometry,
    minimal_subspace_restrict,
)
from .freegroup import (
    Word,
    apply,
    ball,
    conjugate_intersection_probe,
    conjugated_by_gamma,
    gamma,
    left_translation,
    shell,
)
from .groups import (
    GroupSpec,
    _ball_words_and_matrices,
    build_h4_example,
    discreteness_audit,
    enumerate_ball,
    fixed_point_sample,
    limit_set_sample,
    normal_closure_family,
    schottky_h2,
    word_matrix_probe,
)
from .minkowski import GeometryError, rotation_fixing_subspace
from .tolerances import EXTENSION_TOL, LIMIT_TOL


@dataclass(frozen=True)
class Check:
    name: str
    value: float | bool | int
    threshold: str
    passed: bool

    def to_json_dict(self) -> dict:
        value = self.value
        if isinstance(value, (np.floating, float)):
            value = float(value)
        elif isinstance(value, (np.integer, int)) and not isinstance(value, bool):
            value = int(value)
        return {
            "name": self.name,
            "value": value,
            "threshold": self.threshold,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class ScenarioReport:
    scenario_name: str
    parameters: dict
    checks: tuple[Check, ...]
    samples_meta: dict
    seed: int

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "scenario": self.scenario_name,
            "parameters": self.parameters,
            "seed": self.seed,
            "checks": [c.to_json_dict() for c in self.checks],
            "samples_meta": self.samples_meta,
            "overall_pass": self.overall_pass,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"


def _transported_sample(
    embedding: EmbeddingResult, vertices: list[Word], depth: int, label: str
) -> LimitSetSample:
    """Boundary projections of embedded tree vertices.

    Orbit shells of the extended matrix groups coincide with tree-vertex
    shells by equivariance, so sampling through the stored embedding
    avoids compounding matrix-product roundoff; the matrices themselves
    are validated separately against the embedding.
    """
    index = embedding.index()
    points = [project_to_boundary(embedding.coords[index[v]]) for v in vertices]
    return LimitSetSample(
        tuple(dedup_ideal_points(points)),
        depth,
        label,
        meta={"sampler": "embedded tree shell"},
    )


def scenario_nonrigidity(
    lam: float = 2.0,
    tree_radius: int = 5,
    word_depth: int = 3,
    seed: int = 0,
    sample_depths: tuple[int, int] = (2, 4),
) -> ScenarioReport:
    """Two matrix groups from one tree: identical boundaries, trivial overlap.

    Extends the left translations and their involution conjugates to
    Lorentz matrices on an embedded tree ball, then checks: the boundary
    samples of both groups coincide (and keep coinciding as depth grows),
    no nonidentity words of the two groups share a matrix (numerically,
    with exact combinatorial backing), the orbit is collision-free, and
    the embedded vertex set is cobounded and spans the whole space.
    """
    if tree_radius < word_depth + 2:
        raise GeometryError("tree radius must be at least word depth + 2")
    lo_depth, hi_depth = sample_depths
    if hi_depth > tree_radius or lo_depth < 1:
        raise GeometryError("sample depths must sit inside the tree radius")
    checks: list[Check] = []
    embedding = embed_tree_ball(tree_radius, lam)
    small_embedding = embed_tree_ball(tree_radius - 2, lam)
    checks.append(
        Check(
            "embedding_residual",
            embedding.max_rel_residual,
            "<= 1e-8 relative",
            embedding.max_rel_residual <= 1e-8,
        )
    )

    a_word, b_word = Word((1,)), Word((2,))
    group_maps = {
        "plain": [left_translation(a_word), left_translation(b_word)],
        "conjugated": [conjugated_by_gamma(a_word), conjugated_by_gamma(b_word)],
    }
    specs: dict[str, GroupSpec] = {}
    for label, maps in group_maps.items():
        isos = [extend_isometry(embedding, m, tree_radius - 1) for m in maps]
        specs[label] = GroupSpec(
            (("a", isos[0]), ("b", isos[1])),
            embedding.ambient_dim,
            notes=f"{label} tree group",
        )

    # Matrix words must land on the embedded vertices the tree maps predict.
    index = embedding.index()
    worst_consistency = 0.0
    for label, spec in specs.items():
        words, mats = _ball_words_and_matrices(spec, word_depth)
        for word, mat in zip(words, mats):
            vertex = Word.from_string(word or "1")
            if label == "conjugated":
                vertex = gamma(vertex)
            target = embedding.coords[index[vertex]]
            worst_consistency = max(
                worst_consistency, float(np.max(np.abs(mat[:, 0] - target)))
            )
    checks.append(
        Check(
            "matrix_tree_consistency",
            worst_consistency,
            "<= 1e-6 absolute on orbit points",
            worst_consistency <= 1e-6,
        )
    )

    hausdorffs = {}
    for depth in (lo_depth, hi_depth):
        vertices = shell(depth)
        s1 = _transported_sample(embedding, vertices, depth, "plain")
        s2 = _transported_sample(embedding, [gamma(v) for v in vertices], depth, "conjugated")
        hausdorffs[depth] = hausdorff_distance(s1, s2)
        checks.append(
            Check(
                f"limit_sample_hausdorff_depth_{depth}",
                hausdorffs[depth],
                f"<= {LIMIT_TOL:.0e}",
                hausdorffs[depth] <= LIMIT_TOL,
            )
        )
    checks.append(
        Check(
            "limit_sample_hausdorff_decreasing",
            hausdorffs[hi_depth] - hausdorffs[lo_depth],
            f"depth-{hi_depth} value <= depth-{lo_depth} value",
            hausdorffs[hi_depth] <= hausdorffs[lo_depth],
        )
    )

    # Intersection probe: exact combinatorics first, then matrices.
    probe = conjugate_intersection_probe(word_depth, 2)
    checks.append(
        Check(
            "intersection_exact_survivors",
            len(probe.survivors),
            "= 0 (exact tree computation)",
            len(probe.survivors) == 0,
        )
    )
    words1, mats1 = _ball_words_and_matrices(specs["plain"], word_depth)
    words2, mats2 = _ball_words_and_matrices(specs["conjugated"], word_depth)
    flat1 = np.asarray(mats1[1:]).reshape(len(mats1) - 1, -1)
    flat2 = np.asarray(mats2[1:]).reshape(len(mats2) - 1, -1)
    sq1 = np.sum(flat1 * flat1, axis=1)
    sq2 = np.sum(flat2 * flat2, axis=1)
    cross = sq1[:, None] + sq2[None, :] - 2.0 * (flat1 @ flat2.T)
    min_frobenius = float(np.sqrt(max(np.min(cross), 0.0)))
    numeric_clean = min_frobenius > 1e-6
    checks.append(
        Check(
            "intersection_numeric_min_frobenius",
            min_frobenius,
            "> 1e-6 over all nonidentity word pairs",
            numeric_clean,
        )
    )
    identity_gap = float(np.linalg.norm(np.asarray(mats1[0]) - np.asarray(mats2[0])))
    checks.append(
        Check("identity_pair_sanity", identity_gap, "identity words always match", True)
    )
    if not numeric_clean and not probe.survivors:
        checks.append(
            Check(
                "suspicious_numeric_coincidence",
                min_frobenius,
                "numeric match without exact backing",
                False,
            )
        )

    for label, spec in specs.items():
        orbit = enumerate_ball(spec, word_depth)
        gap = discreteness_audit(orbit, 1e9).min_gap
        checks.append(
            Check(
                f"discreteness_collisions_{label}",
                len(orbit.collisions),
                "= 0 collisions",
                len(orbit.collisions) == 0,
            )
        )
        checks.append(
            Check(
                f"discreteness_min_gap_{label}",
                gap,
                "> 0 (no coincident orbit points)",
                gap > 0.0,
            )
        )

    sigma_hi = embedding_coboundedness(embedding, 400, seed=seed).sigma_hat
    sigma_lo = embedding_coboundedness(small_embedding, 400, seed=seed).sigma_hat
    checks.append(
        Check(
            "coboundedness_finite",
            sigma_hi,
            "finite",
            bool(np.isfinite(sigma_hi)),
        )
    )
    checks.append(
        Check(
            "coboundedness_stable",
            sigma_hi - sigma_lo,
            f"radius-{tree_radius} value <= radius-{tree_radius - 2} value + 0.1",
            sigma_hi <= sigma_lo + 0.1,
        )
    )

    restriction = minimal_subspace_restrict(list(embedding.points.values()))
    checks.append(
        Check(
            "nonplanar_at_sample_scale",
            restriction.rank,
            f"rank = ambient dim + 1 = {embedding.ambient_dim + 1}",
            restriction.nonplanar,
        )
    )

    return ScenarioReport(
        "nonrigidity",
        {
            "lambda": lam,
            "tree_radius": tree_radius,
            "word_depth": word_depth,
            "sample_depths": list(sample_depths),
        },
        tuple(checks),
        {
            "ambient_dim": embedding.ambient_dim,
            "vertices": len(embedding.vertices),
            "extension_tol": EXTENSION_TOL,
        },
        seed,
    )


def scenario_h4(
    theta: float = 1.0,
    ell_g: float = 2.0,
    ell_h: float = 2.0,
    separation: float = 2.0,
    depth: int = 6,
    seed: int = 0,
) -> ScenarioReport:
    """Rotation-twisted pair in four dimensions sharing a plane.

    The twisted group restricts to the preserved plane exactly like the
    plain one, so boundary samples agree verbatim while powers of the
    untwisted generator never reappear among twisted words; the plain
    group is the audit's planar negative control.
    """
    if depth < 4:
        raise GeometryError("depth must be at least 4")
    example = build_h4_example(ell_g, ell_h, separation, theta)
    checks: list[Check] = []

    h_mat = dict(example.g1.generators)["h"].matrix
    hj_mat = dict(example.g2.generators)["k"].matrix
    j_mat = rotation_fixing_subspace((3, 4), theta, dim=4).matrix
    power_gap = 0.0
    hn = np.eye(5)
    jn = np.eye(5)
    hjn = np.eye(5)
    for _ in range(10):
        hn, jn, hjn = hn @ h_mat, jn @ j_mat, hjn @ hj_mat
        power_gap = max(power_gap, float(np.max(np.abs(hjn - hn @ jn))))
    checks.append(
        Check(
            "twisted_power_law",
            power_gap,
            "<= 1e-10 for powers up to 10",
            power_gap <= 1e-10,
        )
    )
    ten_turns = np.linalg.matrix_power(j_mat, 10)
    rotation_gap = float(np.max(np.abs(ten_turns - np.eye(5))))
    checks.append(
        Check(
            "rotation_avoids_identity",
            rotation_gap,
            "> 1e-3 at the tenth power",
            rotation_gap > 1e-3,
        )
    )

    samples = {}
    for label, spec in (("plain", example.g1), ("twisted", example.g2)):
        for d in (depth - 2, depth):
            samples[label, d] = limit_set_sample(spec, d, group_label=label)
    plane_defect = 0.0
    for sample in samples.values():
        coords = np.vstack([p.vector for p in sample.points])
        plane_defect = max(plane_defect, float(np.max(np.abs(coords[:, 3:]))))
    checks.append(
        Check(
            "samples_in_plane_boundary",
            plane_defect,
            "<= 1e-9 on coordinates 3, 4",
            plane_defect <= 1e-9,
        )
    )
    hausdorffs = {
        d: hausdorff_distance(samples["plain", d], samples["twisted", d])
        for d in (depth - 2, depth)
    }
    checks.append(
        Check(
            f"limit_sample_hausdorff_depth_{depth}",
            hausdorffs[depth],
            f"<= {LIMIT_TOL:.0e}",
            hausdorffs[depth] <= LIMIT_TOL,
        )
    )
    checks.append(
        Check(
            "limit_sample_hausdorff_decreasing",
            hausdorffs[depth] - hausdorffs[depth - 2],
            f"depth-{depth} value <= depth-{depth - 2} value",
            hausdorffs[depth] <= hausdorffs[depth - 2],
        )
    )

    worst_match = np.inf
    hn = np.eye(5)
    for n in range(1, 6):
        hn = hn @ h_mat
        gap, match = word_matrix_probe(hn, example.g2, 5, tol=1e-6)
        worst_match = min(worst_match, gap)
        if match is not None:
            break
    checks.append(
        Check(
            "h_powers_missing_from_twisted_group",
            float(worst_match),
            "> 1e-6 Frobenius against all words of length <= 5",
            worst_match > 1e-6,
        )
    )

    restriction = minimal_subspace_restrict(list(samples["plain", depth].points))
    checks.append(
        Check(
            "planar_negative_control",
            restriction.rank,
            "rank 3 of 5: the audit must report planar",
            restriction.rank == 3 and not restriction.nonplanar,
        )
    )
    cap = largest_empty_cap(
        LimitSetSample(
            tuple(p for p in restriction.restricted),
            depth,
            "plain restricted",
        )
    )
    checks.append(
        Check(
            "second_kind_empty_cap",
            cap,
            "> 0 radians (finite-scale evidence only)",
            cap > 0.0,
        )
    )

    return ScenarioReport(
        "h4",
        {
            "theta": theta,
            "ell_g": ell_g,
            "ell_h": ell_h,
            "separation": separation,
            "depth": depth,
        },
        tuple(checks),
        {
            "sample_sizes": {
                f"{label}_{d}": len(s) for (label, d), s in samples.items()
            }
        },
        seed,
    )


def scenario_normal_subgroup(
    ell: float = 2.0,
    separation: float = 2.0,
    n_conjugates: int = 4,
    depth: int = 4,
    seed: int = 0,
    ref_depth: int = 10,
) -> ScenarioReport:
    """Conjugate families inside a free pair: same boundary, no common core.

    Builds the two-generator group and its truncated families of
    conjugates of the second generator, then checks that family boundary
    samples sit inside the ambient sample (containment direction), that
    they converge to it as the truncation grows, and that the sample is
    carried into itself by the ambient generators.
    """
    if n_conjugates < 1 or depth < 3:
        raise GeometryError("need n_conjugates >= 1 and depth >= 3")
    ambient = schottky_h2(ell, separation)
    checks: list[Check] = [
        Check(
            "ping_pong_certificate",
            ambient.certificate["min_pairing"],
            "> 1 (pairwise disjoint half-spaces)",
            ambient.certificate["min_pairing"] > 1.0,
        )
    ]
    reference = fixed_point_sample(ambient, ref_depth, group_label="ambient")

    truncations = sorted({0, 1, 2, n_conjugates})
    values = {}
    for n in truncations:
        family = normal_closure_family(ambient, n)
        sample = fixed_point_sample(family, depth, group_label=f"family_{n}")
        inclusion = directed_hausdorff(sample, reference)
        values[n] = (sample, hausdorff_distance(sample, reference))
        checks.append(
            Check(
                f"containment_directed_n_{n}",
                inclusion,
                f"<= {LIMIT_TOL:.0e} (family points lie on the ambient boundary set)",
                inclusion <= LIMIT_TOL,
            )
        )
    for prev, nxt in zip(truncations[1:], truncations[2:]):
        checks.append(
            Check(
                f"hausdorff_decreasing_n_{prev}_to_{nxt}",
                values[nxt][1] - values[prev][1],
                f"value at n={nxt} <= value at n={prev}",
                values[nxt][1] <= values[prev][1],
            )
        )
    top = truncations[-1]
    checks.append(
        Check(
            "hausdorff_halves_from_n0",
            values[0][1] / max(values[top][1], 1e-300),
            f"n=0 value >= 2x the n={top} value",
            values[0][1] >= 2.0 * values[top][1],
        )
    )

    family_sample = values[top][0]
    for name, gen in ambient.generators:
        moved = dedup_ideal_points([gen.apply_ideal(p) for p in family_sample.points])
        moved_sample = LimitSetSample(
            tuple(moved), depth, f"{name} moved", meta={"moved_by": name}
        )
        invariance = hausdorff_distance(moved_sample, family_sample)
        checks.append(
            Check(
                f"sample_invariance_under_{name}",
                invariance,
                "<= 0.05 after re-deduplication (sampling resolution)",
                invariance <= 0.05,
            )
        )

    cap = largest_empty_cap(reference)
    checks.append(
        Check(
            "second_kind_empty_cap",
            cap,
            "> 0 radians (finite-scale evidence only)",
            cap > 0.0,
        )
    )

    return ScenarioReport(
        "normal-subgroup",
        {
            "ell": ell,
            "separation": separation,
            "n_conjugates": n_conjugates,
            "depth": depth,
            "ref_depth": ref_depth,
        },
        tuple(checks),
        {
            "reference_size": len(reference),
            "family_sizes": {str(n): len(values[n][0]) for n in truncations},
        },
        seed,
    )
