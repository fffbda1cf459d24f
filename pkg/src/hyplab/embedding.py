"""Exponential tree embeddings via Gram factorization.

A finite vertex set of the rank-2 Cayley tree embeds into a hyperboloid
so that cosh of hyperbolic distance equals lambda^(tree distance).  The
matrix of prescribed pairwise products lambda^d has exactly one positive
eigenvalue, so an eigendecomposition reconstructs points in Minkowski
space realizing it; tree maps then extend to Lorentz matrices by solving
on a spanning frame and completing the orthogonal complement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .freegroup import TreeMap, Word, apply, ball, tree_dist
from .minkowski import (
    GeometryError,
    HPoint,
    IdealPoint,
    Isometry,
    dist,
    geodesic_point,
    mink_inner,
    minkowski_metric,
)
from .tolerances import (
    EXTENSION_TOL,
    FRAME_PIVOT_TOL,
    GRAM_POSITIVE_FACTOR,
    SPAN_RANK_TOL,
    STRUCTURAL_TOL,
)


def gram_matrix(vertices: list[Word], lam: float) -> np.ndarray:
    """Matrix of lambda^(tree distance) over a vertex list; unit diagonal."""
    if lam <= 1.0:
        raise GeometryError("lambda must exceed 1")
    n = len(vertices)
    if len(set(vertices)) != n:
        raise GeometryError("vertices must be distinct")
    out = np.ones((n, n))
    for i in range(n):
        for k in range(i + 1, n):
            out[i, k] = out[k, i] = lam ** tree_dist(vertices[i], vertices[k])
    return out


@dataclass(frozen=True)
class FactorizationResult:
    points: list[HPoint]
    spectrum: np.ndarray


def lorentz_factorize(matrix: np.ndarray) -> FactorizationResult:
    """Recover hyperboloid points whose pairwise products realize a matrix.

    Eigendecompose M = sum mu_i v_i v_i^T and require exactly one
    eigenvalue above tol = 1e-8 * n: the corresponding eigenvector scaled
    by sqrt(mu) gives time coordinates (sign fixed so they are positive,
    valid because M has positive entries and its top eigenvector is
    sign-constant), eigenvectors of eigenvalues below -tol give spatial
    coordinates, and near-zero modes are dropped.  The reconstruction is
    checked to 1e-8 relative accuracy.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise GeometryError("need a square matrix")
    if np.max(np.abs(m - m.T)) > 0.0:
        m = 0.5 * (m + m.T)
    if np.max(np.abs(np.diag(m) - 1.0)) > 1e-12:
        raise GeometryError("need a unit diagonal")
    n = m.shape[0]
    tol = GRAM_POSITIVE_FACTOR * n
    vals, vecs = np.linalg.eigh(m)
    positive = np.nonzero(vals > tol)[0]
    if len(positive) != 1:
        raise GeometryError(
            f"not Lorentz-realizable at this tolerance: {len(positive)} positive "
            f"eigenvalues above {tol:.3e}"
        )
    top = positive[0]
    time_vec = vecs[:, top]
    if np.sum(time_vec) < 0.0:
        time_vec = -time_vec
    if np.min(time_vec) <= 0.0:
        raise GeometryError("top eigenvector is not sign-constant")
    negative = [i for i in range(n) if vals[i] < -tol]
    # at least one spatial coordinate, so degenerate inputs still give points
    coords = np.zeros((n, max(2, 1 + len(negative))))
    coords[:, 0] = np.sqrt(vals[top]) * time_vec
    for col, i in enumerate(negative, start=1):
        coords[:, col] = np.sqrt(-vals[i]) * vecs[:, i]
    j = minkowski_metric(coords.shape[1] - 1)
    recon = coords @ j @ coords.T
    rel = np.max(np.abs(recon - m) / np.maximum(np.abs(m), 1.0))
    if rel > 1e-8:
        raise GeometryError(f"factorization residual {rel:.3e} exceeds 1e-8")
    point_tol = max(STRUCTURAL_TOL, 4.0 * rel)
    points = [HPoint(coords[i], tol=point_tol) for i in range(n)]
    return FactorizationResult(points, vals)


@dataclass(frozen=True)
class EmbeddingResult:
    """Vertex embedding realizing cosh(distance) = lambda^(tree distance).

    coords rows follow ``vertices``; gram_spectrum is the full eigenvalue
    list of the realized Gram matrix (exactly one positive entry), and
    max_rel_residual bounds |cosh d - lambda^d| / lambda^d over all pairs.
    """

    lam: float
    vertices: tuple[Word, ...]
    coords: np.ndarray
    gram_spectrum: np.ndarray
    max_rel_residual: float

    @property
    def ambient_dim(self) -> int:
        return self.coords.shape[1] - 1

    @property
    def points(self) -> dict[Word, HPoint]:
        tol = max(STRUCTURAL_TOL, 4.0 * self.max_rel_residual)
        return {w: HPoint(self.coords[i], tol=tol) for i, w in enumerate(self.vertices)}

    def point(self, w: Word) -> HPoint:
        i = self.vertices.index(w)
        return HPoint(self.coords[i], tol=max(STRUCTURAL_TOL, 4.0 * self.max_rel_residual))

    def index(self) -> dict[Word, int]:
        return {w: i for i, w in enumerate(self.vertices)}

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "lambda": self.lam,
            "ambient_dim": self.ambient_dim,
            "max_rel_residual": self.max_rel_residual,
            "vertices": [str(w) for w in self.vertices],
            "points": [[float(x) for x in row] for row in self.coords],
            "gram_spectrum": [float(x) for x in self.gram_spectrum],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"


def _reflection_to_basepoint(p: np.ndarray) -> np.ndarray:
    """Point reflection exchanging a hyperboloid point with the basepoint."""
    o = np.zeros_like(p)
    o[0] = 1.0
    m = o + p
    m = m / np.sqrt(mink_inner(m, m))
    j = minkowski_metric(len(p) - 1)
    return 2.0 * np.outer(m, j @ m) - np.eye(len(p))


def embed_vertices(vertices: list[Word], lam: float) -> EmbeddingResult:
    """Embed an arbitrary finite vertex set of the tree.

    Coordinates are normalized so the base vertex (the identity word when
    present, otherwise the first vertex) sits at the canonical basepoint;
    orbit computations with extended matrices then share the library's
    basepoint conventions.
    """
    gram = gram_matrix(vertices, lam)
    fact = lorentz_factorize(gram)
    coords = np.vstack([p.vector for p in fact.points])
    base_row = vertices.index(Word(())) if Word(()) in vertices else 0
    base = coords[base_row]
    if np.max(np.abs(base[1:])) > 1e-15 or abs(base[0] - 1.0) > 1e-15:
        coords = coords @ _reflection_to_basepoint(base).T
    j = minkowski_metric(coords.shape[1] - 1)
    recon = coords @ j @ coords.T
    rel = float(np.max(np.abs(recon - gram) / gram))
    return EmbeddingResult(lam, tuple(vertices), coords, fact.spectrum, rel)


def embed_tree_ball(radius: int, lam: float) -> EmbeddingResult:
    """Embed the radius ball of the Cayley tree."""
    if radius < 1:
        raise GeometryError("radius must be at least 1")
    return embed_vertices(ball(radius), lam)


def _select_frame(gram: np.ndarray, pivot_tol: float = FRAME_PIVOT_TOL) -> list[int]:
    """Greedy pivoted elimination picking a nondegenerate Gram minor.

    Diagonal pivoting on the Schur complement; stops once the largest
    remaining diagonal magnitude falls below the pivot threshold.
    """
    work = np.array(gram, dtype=float)
    n = work.shape[0]
    alive = list(range(n))
    selected: list[int] = []
    while alive:
        diag = np.array([abs(work[i, i]) for i in alive])
        best = int(np.argmax(diag))
        if diag[best] <= pivot_tol:
            break
        i = alive.pop(best)
        selected.append(i)
        row = work[i, :] / work[i, i]
        work -= np.outer(work[:, i], row)
    return sorted(selected)


def _lorentz_complement_basis(frame: np.ndarray, dim1: int) -> np.ndarray:
    """Orthonormal basis (for -B) of the B-orthogonal complement of a frame.

    The complement of a subspace containing a timelike vector is negative
    definite, so -B restricts to an inner product there.
    """
    j = minkowski_metric(dim1 - 1)
    null = np.linalg.svd(frame.T @ j)[2][frame.shape[1]:].T
    if null.shape[1] == 0:
        return null
    s = -(null.T @ j @ null)
    chol = np.linalg.cholesky(0.5 * (s + s.T))
    return null @ np.linalg.inv(chol).T


def extend_isometry(
    embedding: EmbeddingResult, m: TreeMap, domain_radius: int
) -> Isometry:
    """Lorentz matrix realizing a tree map on the embedded ball.

    Solves L F = F' on a maximal nondegenerate frame of domain points
    (exactly consistent since tree distances, hence Gram products, are
    invariant under the map) and completes the action on the orthogonal
    complement by matching arbitrary Lorentz-orthonormal bases.  Verified
    on every domain point; only the action on the embedded span is
    contractual.
    """
    if domain_radius < 0:
        raise GeometryError("domain radius must be nonnegative")
    index = embedding.index()
    domain = ball(domain_radius)
    rows = []
    image_rows = []
    for w in domain:
        if w not in index:
            raise GeometryError("domain ball is not contained in the embedded vertex set")
        target = apply(m, w)
        if target not in index:
            raise GeometryError(
                f"map sends {w} to {target}, outside the embedded vertex set"
            )
        rows.append(index[w])
        image_rows.append(index[target])
    x = embedding.coords[rows]
    y = embedding.coords[image_rows]
    gram = np.array(
        [[embedding.lam ** tree_dist(u, v) for v in domain] for u in domain]
    )
    frame_idx = _select_frame(gram)
    f = x[frame_idx].T
    f_img = y[frame_idx].T
    g_frame = gram[np.ix_(frame_idx, frame_idx)]
    dim1 = embedding.coords.shape[1]
    j = minkowski_metric(dim1 - 1)
    # L = F' G^-1 F^T J on the span, completed on the complement.
    span_part = f_img @ np.linalg.solve(g_frame, f.T @ j)
    k = _lorentz_complement_basis(f, dim1)
    k_img = _lorentz_complement_basis(f_img, dim1)
    matrix = span_part - k_img @ (k.T @ j)
    residual = float(np.max(np.abs(matrix @ x.T - y.T)))
    if residual > EXTENSION_TOL:
        raise GeometryError(
            f"extension residual {residual:.3e} exceeds {EXTENSION_TOL:.0e}: "
            "domain too small or the map is not a tree isometry on it"
        )
    return Isometry(matrix, label=str(m), tol=EXTENSION_TOL)


@dataclass(frozen=True)
class EmbeddingCoboundedness:
    sigma_hat: float
    samples: int
    seed: int


def embedding_coboundedness(
    embedding: EmbeddingResult, samples: int, seed: int = 0
) -> EmbeddingCoboundedness:
    """Largest distance from sampled between-vertex geodesic points to the
    embedded vertex set; an empirical coboundedness estimate."""
    n = len(embedding.vertices)
    if n < 2:
        raise GeometryError("need at least two embedded vertices")
    if samples < 1:
        raise GeometryError("need a positive sample count")
    rng = np.random.default_rng(seed)
    coords = embedding.coords
    j = minkowski_metric(coords.shape[1] - 1)
    jc = coords @ j
    tol = max(STRUCTURAL_TOL, 4.0 * embedding.max_rel_residual)
    sigma = 0.0
    for _ in range(samples):
        i, k = int(rng.integers(n)), int(rng.integers(n))
        if i == k:
            continue
        p = HPoint(coords[i], tol=tol)
        q = HPoint(coords[k], tol=tol)
        t = float(rng.uniform(0.0, 1.0)) * dist(p, q, clamp_tol=1e-6)
        mid = geodesic_point(p, q, t)
        gaps = np.arccosh(np.maximum(jc @ mid.vector, 1.0))
        sigma = max(sigma, float(np.min(gaps)))
    return EmbeddingCoboundedness(sigma, samples, seed)


@dataclass(frozen=True)
class SubspaceRestriction:
    """Isometric restriction onto the minimal Minkowski subspace of a set.

    projector maps ambient coordinates to subspace coordinates (rows are
    J-paired dual vectors, so pairwise products are preserved exactly);
    nonplanar records whether the span already fills the ambient space.
    """

    projector: np.ndarray
    restricted: list
    rank: int
    ambient_dim: int
    nonplanar: bool


def minimal_subspace_restrict(points: list) -> SubspaceRestriction:
    """Change coordinates onto the smallest Minkowski subspace holding the
    input points (interior or ideal).

    Rank is decided by singular values relative to the largest; the
    restricted form must have signature (1, rank-1).  Samples spanning a
    proper subspace witness planarity; full rank witnesses nonplanarity
    at sample scale.
    """
    if not points:
        raise GeometryError("need at least one point")
    vectors = np.vstack([np.asarray(p.vector, dtype=float) for p in points])
    dim1 = vectors.shape[1]
    _, s, vt = np.linalg.svd(vectors, full_matrices=False)
    rank = int(np.sum(s > SPAN_RANK_TOL * s[0]))
    if rank < 2:
        raise GeometryError("span is a single direction; no subspace to restrict to")
    basis = vt[:rank].T
    j = minkowski_metric(dim1 - 1)
    small = basis.T @ j @ basis
    vals, vecs = np.linalg.eigh(0.5 * (small + small.T))
    if np.sum(vals > 1e-12) != 1 or np.sum(vals < -1e-12) != rank - 1:
        raise GeometryError("span is degenerate (no timelike direction)")
    time_axis = basis @ vecs[:, -1] / np.sqrt(vals[-1])
    if float(np.mean(vectors @ j @ time_axis)) < 0.0:
        time_axis = -time_axis
    axes = [time_axis]
    for i in range(rank - 1):
        axes.append(basis @ vecs[:, i] / np.sqrt(-vals[i]))
    signs = np.concatenate(([1.0], -np.ones(rank - 1)))
    projector = signs[:, None] * (np.vstack(axes) @ j)
    restricted = []
    for p in points:
        new_vec = projector @ np.asarray(p.vector, dtype=float)
        if isinstance(p, IdealPoint):
            restricted.append(IdealPoint(new_vec, tol=max(1e-7, p.tol)))
        else:
            restricted.append(HPoint(new_vec, tol=max(1e-7, getattr(p, "tol", 1e-9))))
    return SubspaceRestriction(projector, restricted, rank, dim1 - 1, rank == dim1)
