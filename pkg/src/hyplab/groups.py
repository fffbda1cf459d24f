"""Finitely generated matrix groups: balls, orbits, audits, constructions.

Generators carry single lowercase-letter names; the inverse of generator
``x`` prints as ``X``.  Words are enumerated reduced (no adjacent inverse
pair) in length-lexicographic order over the alphabet
[g1, g1^-1, g2, g2^-1, ...].  Freeness is never assumed: words whose
orbit points collide are flagged, not dropped.
"""

from __future__ import annotations

import csv
import string
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .boundary import IdealPoint, LimitSetSample, dedup_ideal_points, project_to_boundary
from .minkowski import (
    GeometryError,
    HPoint,
    Isometry,
    basepoint,
    dist,
    geodesic_point,
    minkowski_metric,
    mink_inner,
    rotation_fixing_subspace,
    translation_along,
    translation_length,
)
from .tolerances import CHORDAL_DEDUP_TOL, COLLISION_TOL, STRUCTURAL_TOL


@dataclass(frozen=True)
class GroupSpec:
    """A finitely generated subgroup of the isometry group, by generators.

    ``boundary_seeds`` optionally records exact limit directions, one
    (attracting, repelling) pair per generator, supplied by a
    construction; the boundary-orbit sampler prefers them over
    eigenvector extraction, which loses accuracy on strongly conjugated
    generators.  ``generator_factors`` optionally decomposes each
    generator as a product of small-norm matrices (product order), so
    that samplers can apply a huge conjugated generator letter by letter
    instead of as one badly cancelling matrix.
    """

    generators: tuple[tuple[str, Isometry], ...]
    dimension: int
    notes: str = ""
    certificate: dict | None = None
    boundary_seeds: tuple[IdealPoint, ...] | None = None
    generator_factors: tuple[tuple[np.ndarray, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        names = [name for name, _ in self.generators]
        if len(set(names)) != len(names):
            raise GeometryError("generator names must be distinct")
        for name, iso in self.generators:
            if len(name) != 1 or name not in string.ascii_lowercase:
                raise GeometryError(f"generator name {name!r} must be one lowercase letter")
            if iso.dim != self.dimension:
                raise GeometryError(f"generator {name} has dimension {iso.dim}, spec says {self.dimension}")
        if self.generator_factors is not None and len(self.generator_factors) != len(
            self.generators
        ):
            raise GeometryError("generator_factors must align with generators")

    def letters(self) -> list[tuple[str, np.ndarray]]:
        """Generator alphabet with matrices: [g1, g1^-1, g2, g2^-1, ...]."""
        out = []
        for name, iso in self.generators:
            out.append((name, iso.matrix))
            out.append((name.upper(), iso.inverse().matrix))
        return out

    def letter_factors(self) -> list[list[np.ndarray]]:
        """Factor sequences aligned with letters(), inverses derived."""
        j = minkowski_metric(self.dimension)

        def inv(mat: np.ndarray) -> np.ndarray:
            return j @ mat.T @ j

        out = []
        for idx, (_, iso) in enumerate(self.generators):
            factors = (
                list(self.generator_factors[idx])
                if self.generator_factors is not None
                else [iso.matrix]
            )
            out.append(factors)
            out.append([inv(f) for f in reversed(factors)])
        return out

    @property
    def max_generator_tol(self) -> float:
        if not self.generators:
            return STRUCTURAL_TOL
        return max(iso.tol for _, iso in self.generators)


@dataclass(frozen=True)
class OrbitEntry:
    word: str
    point: HPoint
    dist_from_base: float


@dataclass(frozen=True)
class OrbitSample:
    """Orbit of the basepoint under all reduced words up to a length.

    collisions lists (word, earlier_word) pairs whose orbit points agree
    within the collision tolerance; entries are kept in enumeration order.
    """

    entries: tuple[OrbitEntry, ...]
    depth: int
    collisions: tuple[tuple[str, str], ...] = ()

    def points_matrix(self) -> np.ndarray:
        return np.vstack([e.point.vector for e in self.entries])

    def __len__(self) -> int:
        return len(self.entries)


def _ball_words_and_matrices(
    spec: GroupSpec, max_len: int
) -> tuple[list[str], list[np.ndarray]]:
    """Reduced words up to max_len with their matrices, length-lex order."""
    n1 = spec.dimension + 1
    letters = spec.letters()
    words: list[str] = [""]
    mats: list[np.ndarray] = [np.eye(n1)]
    frontier: list[tuple[str, np.ndarray, int]] = [("", np.eye(n1), -1)]
    for _ in range(max_len):
        nxt = []
        for word, mat, last in frontier:
            for idx, (name, gen) in enumerate(letters):
                if last >= 0 and (idx ^ 1) == last:
                    continue
                nxt.append((word + name, mat @ gen, idx))
        words.extend(w for w, _, _ in nxt)
        mats.extend(m for _, m, _ in nxt)
        frontier = nxt
    return words, mats


def _shell_matrices(spec: GroupSpec, depth: int) -> tuple[list[str], list[np.ndarray]]:
    words, mats = _ball_words_and_matrices(spec, depth)
    keep = [i for i, w in enumerate(words) if len(w) == depth]
    return [words[i] for i in keep], [mats[i] for i in keep]


def enumerate_ball(spec: GroupSpec, max_len: int, point_tol: float | None = None) -> OrbitSample:
    """Orbit sample over every reduced word of length <= max_len.

    Near-coincident orbit points are flagged as collisions (freeness is a
    conclusion, not an assumption).
    """
    if max_len < 0:
        raise GeometryError("max_len must be nonnegative")
    if point_tol is None:
        point_tol = max(STRUCTURAL_TOL, spec.max_generator_tol * 4.0 * (max_len + 1))
    words, mats = _ball_words_and_matrices(spec, max_len)
    entries = []
    for word, mat in zip(words, mats):
        vec = mat[:, 0].copy()
        point = HPoint(vec, tol=point_tol)
        entries.append(OrbitEntry(word, point, float(np.arccosh(max(vec[0], 1.0)))))
    coords = np.vstack([mat[:, 0] for mat in mats])
    collisions = []
    if len(entries) > 1:
        pairs = sorted(
            (max(i, j), min(i, j)) for i, j in cKDTree(coords).query_pairs(COLLISION_TOL)
        )
        collisions = [(words[i], words[j]) for i, j in pairs]
    return OrbitSample(tuple(entries), max_len, tuple(collisions))


@dataclass(frozen=True)
class DiscretenessReport:
    count: int
    min_gap: float


def discreteness_audit(sample: OrbitSample, radius: float) -> DiscretenessReport:
    """How many orbit points sit within the radius, and how separated they are.

    min_gap is the smallest pairwise hyperbolic distance among the points
    inside the ball (0 signals a collision); it is infinite when only the
    identity qualifies.
    """
    if radius <= 0.0:
        raise GeometryError("radius must be positive")
    inside = [e for e in sample.entries if e.dist_from_base <= radius]
    count = len(inside)
    if count < 2:
        return DiscretenessReport(count, float("inf"))
    coords = np.vstack([e.point.vector for e in inside])
    j = minkowski_metric(coords.shape[1] - 1)
    gram = coords @ j @ coords.T
    iu = np.triu_indices(count, k=1)
    gaps = np.arccosh(np.maximum(gram[iu], 1.0))
    return DiscretenessReport(count, float(np.min(gaps)))


def min_translation_length(spec: GroupSpec) -> float:
    if not spec.generators:
        return 0.0
    return min(translation_length(iso) for _, iso in spec.generators)


def limit_set_sample(
    spec: GroupSpec,
    depth: int,
    group_label: str | None = None,
    dedup_tol: float = CHORDAL_DEDUP_TOL,
) -> LimitSetSample:
    """Boundary projections of the depth-length orbit shell.

    A shell point is accepted when its time coordinate exceeds
    cosh(depth * minimal translation length) / 2, so that only points a
    definite fraction of the expected depth contribute boundary
    directions; accepted points are deduplicated chordally.
    """
    if depth < 1:
        raise GeometryError("depth must be at least 1")
    words, mats = _shell_matrices(spec, depth)
    if not words:
        raise GeometryError("empty orbit shell (no generators)")
    ell = min_translation_length(spec)
    threshold = 0.5 * float(np.cosh(depth * ell))
    point_tol = max(STRUCTURAL_TOL, spec.max_generator_tol * 4.0 * (depth + 1))
    accepted = []
    rejected = 0
    for mat in mats:
        vec = mat[:, 0]
        if vec[0] <= threshold or np.linalg.norm(vec[1:]) <= 1e-12 * abs(vec[0]):
            rejected += 1
            continue
        accepted.append(project_to_boundary(vec, tol=point_tol))
    if not accepted:
        raise GeometryError("every shell point fell below the projection threshold")
    points = dedup_ideal_points(accepted, dedup_tol)
    label = group_label if group_label is not None else (spec.notes or "group")
    return LimitSetSample(
        tuple(points),
        depth,
        label,
        meta={
            "accept_threshold": threshold,
            "min_translation_length": ell,
            "rejected": rejected,
            "shell_size": len(words),
        },
    )


def boundary_fixed_points(iso: Isometry) -> list[IdealPoint]:
    """Attracting and repelling fixed directions of a loxodromic element.

    Renormalized power iteration on the matrix and its inverse.  Raises
    when the iteration fails to settle on a lightlike direction (elliptic
    and parabolic elements, or the identity).
    """
    out = []
    for mat in (iso.matrix, iso.inverse().matrix):
        v = mat[:, 0].copy()
        norm = np.linalg.norm(v)
        if norm <= 0.0:
            raise GeometryError("degenerate matrix column")
        v /= norm
        converged = False
        for _ in range(200):
            w = mat @ v
            w /= np.linalg.norm(w)
            if np.linalg.norm(w - v) < 1e-15:
                v = w
                converged = True
                break
            v = w
        if not converged or v[0] <= 1e-12 or abs(mink_inner(v, v)) > 1e-9:
            raise GeometryError("no attracting boundary direction (element not loxodromic)")
        out.append(IdealPoint(v / v[0], tol=max(1e-7, iso.tol * 16.0)))
    return out


def _grid_dedup(coords: np.ndarray, tol: float) -> np.ndarray:
    """Indices of one representative per tol-sized grid cell, first wins."""
    cells = np.round(coords / tol).astype(np.int64)
    _, first = np.unique(cells, axis=0, return_index=True)
    return np.sort(first)


def fixed_point_sample(
    spec: GroupSpec,
    depth: int,
    group_label: str | None = None,
    dedup_tol: float = CHORDAL_DEDUP_TOL,
) -> LimitSetSample:
    """Boundary-orbit sample: each ball word applied to the attracting
    direction of its own last letter.

    Seeds come from the spec's ``boundary_seeds`` (pairs attracting,
    repelling per generator) when a construction supplied them, otherwise
    from the generators' fixed directions.  Matching the seed to the last
    letter keeps the innermost application contracting, and words grow by
    prepending letters (applied via their small-norm factor sequences),
    so a boundary point is only ever pushed forward one stable step at a
    time; forming the full word matrix first would cancel catastrophically
    for strongly conjugated generators.  Every produced point is an exact
    limit direction of the group up to roundoff, so containment
    comparisons against an ambient-group sample are meaningful at tight
    tolerances.  Deduplication is grid-based since these samples can run
    to millions of points.
    """
    if depth < 0:
        raise GeometryError("depth must be nonnegative")
    if spec.boundary_seeds is not None:
        pairs = [s.vector for s in spec.boundary_seeds]
        if len(pairs) != 2 * len(spec.generators):
            raise GeometryError("boundary_seeds must hold one pair per generator")
    else:
        pairs = []
        for _, iso in spec.generators:
            pairs.extend(fp.vector for fp in boundary_fixed_points(iso))
    if not pairs:
        raise GeometryError("no seed directions for the boundary orbit")
    factors = spec.letter_factors()
    n_letters = len(factors)
    # classes[i]: points of words whose first letter is i, at the current length
    classes: list[np.ndarray] = [np.asarray([pairs[i]]) for i in range(n_letters)]
    emitted = list(classes)
    for _ in range(1, depth):
        nxt: list[np.ndarray] = []
        for i in range(n_letters):
            blocks = [classes[k] for k in range(n_letters) if k != (i ^ 1) and len(classes[k])]
            if not blocks:
                nxt.append(np.empty((0, spec.dimension + 1)))
                continue
            pts = np.vstack(blocks)
            for f in reversed(factors[i]):
                pts = pts @ f.T
            nxt.append(pts)
        classes = nxt
        emitted.extend(classes)
    vecs = np.vstack(emitted) if emitted else np.empty((0, spec.dimension + 1))
    spatial = vecs[:, 1:]
    norms = np.linalg.norm(spatial, axis=1)
    good = norms > 1e-12 * np.maximum(1.0, np.abs(vecs[:, 0]))
    directions = spatial[good] / norms[good, None]
    keep = _grid_dedup(directions, dedup_tol)
    tol = max(1e-7, spec.max_generator_tol * 16.0)
    points = tuple(
        IdealPoint(np.concatenate(([1.0], d)), tol=tol) for d in directions[keep]
    )
    label = group_label if group_label is not None else (spec.notes or "group")
    return LimitSetSample(
        tuple(points),
        depth,
        label,
        meta={"sampler": "fixed-point orbit", "seeds": len(pairs)},
    )


@dataclass(frozen=True)
class DirichletReport:
    is_member: bool
    violating_word: str | None


def dirichlet_membership(x: HPoint, sample: OrbitSample) -> DirichletReport:
    """Is x at least as close to the basepoint as to every sampled orbit point?"""
    o = basepoint(x.dim)
    d_base = dist(o, x, clamp_tol=1e-6)
    for entry in sample.entries:
        if dist(entry.point, x, clamp_tol=1e-6) + 1e-9 < d_base:
            return DirichletReport(False, entry.word)
    return DirichletReport(True, None)


@dataclass(frozen=True)
class CoboundednessReport:
    sigma_hat: float
    pairs: int
    samples_per_pair: int
    seed: int


def coboundedness_audit(
    spec: GroupSpec,
    depth: int,
    samples_per_pair: int,
    n_pairs: int = 64,
    seed: int = 0,
) -> CoboundednessReport:
    """Empirical lower estimate of the orbit's coboundedness constant.

    Sample points on geodesic segments between random orbit-point pairs;
    sigma_hat is the largest distance from a sampled point to the nearest
    orbit point.
    """
    if samples_per_pair < 1:
        raise GeometryError("samples_per_pair must be positive")
    orbit = enumerate_ball(spec, depth)
    coords = orbit.points_matrix()
    j = minkowski_metric(spec.dimension)
    jc = coords @ j
    rng = np.random.default_rng(seed)
    n = len(orbit)
    sigma = 0.0
    for _ in range(n_pairs):
        i, k = (int(rng.integers(n)), int(rng.integers(n)))
        p, q = orbit.entries[i].point, orbit.entries[k].point
        d = dist(p, q, clamp_tol=1e-6)
        if d == 0.0:
            continue
        for s in range(samples_per_pair):
            t = (s + 0.5) / samples_per_pair * d
            mid = geodesic_point(p, q, t)
            gaps = np.arccosh(np.maximum(jc @ mid.vector, 1.0))
            sigma = max(sigma, float(np.min(gaps)))
    return CoboundednessReport(sigma, n_pairs, samples_per_pair, seed)


def _half_space_normals(spec: GroupSpec) -> list[tuple[str, np.ndarray]]:
    """Unit spacelike normals of the isometric-sphere half-spaces.

    For each generator letter x the half-space {dist(., x(o)) <= dist(., o)}
    is {B(., u) <= 0} with u proportional to x(o) - o.
    """
    o = basepoint(spec.dimension).vector
    normals = []
    for name, mat in spec.letters():
        p = mat @ o
        u = p - o
        norm2 = -mink_inner(u, u)
        if norm2 <= 1e-18:
            raise GeometryError(f"generator {name} does not move the basepoint")
        normals.append((name, u / np.sqrt(norm2)))
    return normals


def ping_pong_certificate(spec: GroupSpec, margin: float = 1e-9) -> dict:
    """Verify pairwise disjointness of the isometric-sphere half-spaces.

    Two half-spaces {B(., u) <= 0}, {B(., v) <= 0} with unit spacelike
    normals are disjoint exactly when B(u, v) > 1; the certificate records
    the minimal pairwise value and the implied hyperplane gaps.  Raises on
    the first overlapping pair.
    """
    normals = _half_space_normals(spec)
    pair_values = {}
    worst = np.inf
    for i in range(len(normals)):
        for k in range(i + 1, len(normals)):
            ni, nk = normals[i], normals[k]
            value = mink_inner(ni[1], nk[1])
            pair_values[ni[0] + nk[0]] = value
            worst = min(worst, value)
            if value < 1.0 + margin:
                raise GeometryError(
                    f"ping-pong certificate fails: half-spaces {ni[0]} and {nk[0]} "
                    f"overlap (pairing {value:.6f} <= 1)"
                )
    gaps = {k: float(np.arccosh(v)) for k, v in pair_values.items()}
    return {
        "kind": "isometric-sphere half-space disjointness",
        "min_pairing": float(worst),
        "min_gap": float(np.arccosh(worst)),
        "pair_gaps": gaps,
    }


def half_space_membership(sample: LimitSetSample, spec: GroupSpec, slack: float = 1e-9) -> float:
    """Max over sample points of min_i B(xi, u_i): <= 0 when every point
    lies in some closed half-space of the certificate."""
    normals = np.vstack([u for _, u in _half_space_normals(spec)])
    j = minkowski_metric(spec.dimension)
    vals = np.vstack([p.vector for p in sample.points]) @ j @ normals.T
    return float(np.max(np.min(vals, axis=1))) - slack


def _parallel_axes_pair(
    ell_g: float, ell_h: float, separation: float
) -> tuple[Isometry, Isometry, tuple[IdealPoint, ...]]:
    """Two loxodromics of the hyperbolic plane with ultraparallel axes.

    Both axes are perpendicular to the geodesic through the basepoint in
    the second spatial direction, at parameters -s and +s with
    s = separation/2, so their distance is exactly ``separation``; both
    translate the same way along the first spatial direction.  Returns
    the generators and their four axis endpoints.
    """
    if ell_g <= 0.0 or ell_h <= 0.0 or separation <= 0.0:
        raise GeometryError("lengths and separation must be positive")
    s = separation / 2.0

    def shifted_endpoints(offset: float) -> tuple[IdealPoint, IdealPoint]:
        c, t = np.cosh(offset), np.tanh(offset)
        plus = IdealPoint(np.array([1.0, 1.0 / c, t]))
        minus = IdealPoint(np.array([1.0, -1.0 / c, t]))
        return plus, minus

    g_ends = shifted_endpoints(-s)
    h_ends = shifted_endpoints(+s)
    g = translation_along(g_ends, ell_g, label="g")
    h = translation_along(h_ends, ell_h, label="h")
    return g, h, (*g_ends, *h_ends)


def schottky_h2(ell: float, separation: float) -> GroupSpec:
    """Free two-generator group of the hyperbolic plane with a certificate.

    Both generators translate by ``ell`` along disjoint axes at distance
    ``separation``.  Construction fails (with the offending overlap) when
    the isometric-sphere half-spaces are not pairwise disjoint.
    """
    g, h, seeds = _parallel_axes_pair(ell, ell, separation)
    spec = GroupSpec(
        (("g", g), ("h", h)),
        dimension=2,
        notes=f"schottky ell={ell} separation={separation}",
    )
    certificate = ping_pong_certificate(spec)
    return GroupSpec(spec.generators, 2, spec.notes, certificate, seeds)


_FAMILY_NAMES = [c for c in string.ascii_lowercase if c not in ("g", "h")]


def normal_closure_family(spec: GroupSpec, n: int) -> GroupSpec:
    """Conjugates of the second generator by powers of the first.

    Returns the spec generated by {g^-k h g^k : -n <= k <= n}; the k = 0
    conjugate keeps the original name.  The two-sided range is what makes
    the family's limit sets converge to the ambient group's: one-sided
    conjugation never produces words starting with a positive power of g,
    leaving a fixed boundary gap.
    """
    if len(spec.generators) != 2:
        raise GeometryError("the family construction needs exactly two generators")
    if n < 0:
        raise GeometryError("n must be nonnegative")
    if 2 * n > len(_FAMILY_NAMES):
        raise GeometryError(f"n = {n} exceeds the available generator names")
    (gname, g), (hname, h) = spec.generators
    ginv = g.inverse()
    h_seeds = (
        [s.vector for s in spec.boundary_seeds[2:4]]
        if spec.boundary_seeds is not None and len(spec.boundary_seeds) >= 4
        else [fp.vector for fp in boundary_fixed_points(h)]
    )
    gens = []
    seeds = []
    factors = []
    notes = []
    fresh = iter(_FAMILY_NAMES)
    for k in range(-n, n + 1):
        left_mat = (ginv if k > 0 else g).matrix
        right_mat = (g if k > 0 else ginv).matrix
        left = np.linalg.matrix_power(left_mat, abs(k))
        if k == 0:
            conj, name = h, hname
            factors.append((h.matrix,))
        else:
            right = np.linalg.matrix_power(right_mat, abs(k))
            conj = Isometry(
                left @ h.matrix @ right, tol=max(h.tol, g.tol) * 4.0 * (abs(k) + 1)
            )
            name = next(fresh)
            factors.append((left_mat,) * abs(k) + (h.matrix,) + (right_mat,) * abs(k))
        gens.append((name, conj))
        # Axis endpoints computed structurally as g^-k applied to the axis of
        # h; extracting them from the conjugated matrix itself is badly
        # conditioned once |k| grows.
        seeds.extend(IdealPoint(left @ s, tol=1e-7) for s in h_seeds)
        notes.append(f"{name}: {gname}^{-k} {hname} {gname}^{k}")
    return GroupSpec(
        tuple(gens),
        spec.dimension,
        notes="; ".join(notes),
        boundary_seeds=tuple(seeds),
        generator_factors=tuple(factors),
    )


def _embed_block(mat3: np.ndarray, dim: int) -> np.ndarray:
    out = np.eye(dim + 1)
    out[:3, :3] = mat3
    return out


@dataclass(frozen=True)
class H4Example:
    g1: GroupSpec
    g2: GroupSpec
    p_projector: np.ndarray


def build_h4_example(
    ell_g: float, ell_h: float, separation: float, theta: float
) -> H4Example:
    """Two four-dimensional groups that agree on a plane but differ off it.

    g and h act on the plane P spanned by coordinates 0..2 and fix the
    rest; j rotates coordinates (3, 4) by theta and fixes P pointwise.
    The twisted group <g, hj> restricts to P exactly like <g, h>, so both
    have identical boundary samples in the circle at infinity of P, yet
    powers of h never reappear in the twisted group while the rotation
    angle stays away from full turns.
    """
    if not (0.0 < theta < 2.0 * np.pi):
        raise GeometryError("theta must lie strictly between 0 and 2*pi")
    g3, h3, seeds3 = _parallel_axes_pair(ell_g, ell_h, separation)
    g = Isometry(_embed_block(g3.matrix, 4), label="g")
    h = Isometry(_embed_block(h3.matrix, 4), label="h")
    j = rotation_fixing_subspace((3, 4), theta, dim=4)
    hj_mat = h.matrix @ j.matrix
    if not np.array_equal(hj_mat, j.matrix @ h.matrix):
        raise GeometryError("h and the plane-fixing rotation fail to commute exactly")
    hn = np.eye(5)
    jn = np.eye(5)
    hjn = np.eye(5)
    for _ in range(10):
        hn, jn, hjn = hn @ h.matrix, jn @ j.matrix, hjn @ hj_mat
        if np.max(np.abs(hjn - hn @ jn)) > 1e-10:
            raise GeometryError("(h j)^n deviates from h^n j^n beyond 1e-10")
    for mat, name in ((g.matrix, "g"), (h.matrix, "h")):
        if np.any(mat[:3, 3:] != 0.0) or np.any(mat[3:, :3] != 0.0):
            raise GeometryError(f"generator {name} does not preserve the plane block")
    hj = Isometry(hj_mat, label="hj")
    seeds = tuple(
        IdealPoint(np.concatenate((s.vector, [0.0, 0.0]))) for s in seeds3
    )
    notes = f"ell_g={ell_g} ell_h={ell_h} separation={separation} theta={theta}"
    spec1 = GroupSpec((("g", g), ("h", h)), 4, notes="plain pair; " + notes)
    spec2 = GroupSpec((("g", g), ("k", hj)), 4, notes="twisted pair (k = h.j); " + notes)
    cert1 = ping_pong_certificate(spec1)
    cert2 = ping_pong_certificate(spec2)
    projector = np.zeros((5, 5))
    projector[0, 0] = projector[1, 1] = projector[2, 2] = 1.0
    return H4Example(
        GroupSpec(spec1.generators, 4, spec1.notes, cert1, seeds),
        GroupSpec(spec2.generators, 4, spec2.notes, cert2, seeds),
        projector,
    )


def word_matrix_probe(
    target: np.ndarray, spec: GroupSpec, max_len: int, tol: float = 1e-6
) -> tuple[float, str | None]:
    """Closest ball word to a target matrix in Frobenius distance.

    Returns (min distance, matching word or None); a word counts as a
    match only below ``tol``.
    """
    words, mats = _ball_words_and_matrices(spec, max_len)
    best, best_word = np.inf, None
    for word, mat in zip(words, mats):
        d = float(np.linalg.norm(mat - target))
        if d < best:
            best, best_word = d, word
    return best, (best_word if best <= tol else None)


def orbit_to_csv(sample: OrbitSample, path) -> None:
    """Columns word,c0,c1,...; the identity word prints as "1"."""
    dim1 = sample.entries[0].point.vector.shape[0]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["word"] + [f"c{i}" for i in range(dim1)])
        for e in sample.entries:
            writer.writerow([e.word or "1"] + [repr(float(x)) for x in e.point.vector])


def limit_to_csv(sample: LimitSetSample, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index"] + [f"c{i}" for i in range(sample.dim + 1)])
        for i, p in enumerate(sample.points):
            writer.writerow([i] + [repr(float(x)) for x in p.vector])
