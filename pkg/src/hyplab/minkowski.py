"""Minkowski linear algebra and hyperboloid-model primitives.

Vectors are numpy arrays of length d+1, coordinate 0 being the time
coordinate; the bilinear form is B(u, v) = u0*v0 - sum_{i>=1} ui*vi.
Points of d-dimensional hyperbolic space are unit future timelike vectors
(B(p, p) = 1, p0 > 0).  Isometries are Lorentz matrices preserving the
form and the upper sheet; hyperbolic distance is acosh(B(p, q)).

Structural defects (|B(v,v) - 1| for points, the max entry of M^T J M - J
for matrices) are validated relative to the squared scale of the data,
since double precision cannot hold an absolute 1e-9 defect once entries
reach e^10.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tolerances import STRUCTURAL_TOL


class GeometryError(ValueError):
    """A geometric invariant or precondition is violated."""


def minkowski_metric(dim: int) -> np.ndarray:
    """Matrix of the bilinear form on R^{1,d}: diag(1, -1, ..., -1)."""
    j = -np.eye(dim + 1)
    j[0, 0] = 1.0
    return j


def _as_vector(v) -> np.ndarray:
    arr = np.asarray(getattr(v, "vector", v), dtype=float)
    if arr.ndim != 1:
        raise GeometryError(f"expected a vector, got shape {arr.shape}")
    return arr


def mink_inner(u, v) -> float:
    """Minkowski product u0*v0 - sum_{i>=1} ui*vi.

    Accepts raw arrays or any object carrying a ``vector`` attribute.
    """
    uu, vv = _as_vector(u), _as_vector(v)
    if uu.shape != vv.shape:
        raise GeometryError(
            f"dimension mismatch: {uu.shape[0] - 1} vs {vv.shape[0] - 1}"
        )
    return float(uu[0] * vv[0] - uu[1:] @ vv[1:])


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class HPoint:
    """Point on the upper hyperboloid sheet: B(v, v) = 1 and v0 > 0."""

    vector: np.ndarray
    tol: float = STRUCTURAL_TOL

    def __post_init__(self):
        vec = _freeze(_as_vector(self.vector))
        object.__setattr__(self, "vector", vec)
        if vec.shape[0] < 2:
            raise GeometryError("need a time coordinate and at least one spatial one")
        if not np.all(np.isfinite(vec)):
            raise GeometryError("non-finite coordinates")
        if vec[0] <= 0.0:
            raise GeometryError("time coordinate must be positive (upper sheet)")
        scale = max(1.0, float(vec @ vec))
        defect = abs(mink_inner(vec, vec) - 1.0)
        if defect > self.tol * scale:
            raise GeometryError(f"not on the unit hyperboloid: |B(v,v)-1| = {defect:.3e}")

    @property
    def dim(self) -> int:
        return self.vector.shape[0] - 1

    @property
    def spatial(self) -> np.ndarray:
        return self.vector[1:]


@dataclass(frozen=True)
class IdealPoint:
    """Boundary direction: lightlike vector normalized to time coordinate 1.

    The input may be any future lightlike vector; it is rescaled so its
    time coordinate is exactly 1, which makes the spatial part a Euclidean
    unit vector and renders chordal comparisons canonical.
    """

    vector: np.ndarray
    tol: float = STRUCTURAL_TOL

    def __post_init__(self):
        vec = _as_vector(self.vector)
        if vec.shape[0] < 2:
            raise GeometryError("need a time coordinate and at least one spatial one")
        if not np.all(np.isfinite(vec)):
            raise GeometryError("non-finite coordinates")
        if vec[0] <= 0.0:
            raise GeometryError("ideal point must be future pointing (time > 0)")
        vec = _freeze(vec / vec[0])
        object.__setattr__(self, "vector", vec)
        if abs(mink_inner(vec, vec)) > self.tol:
            raise GeometryError("vector is not lightlike")
        if abs(float(np.linalg.norm(vec[1:])) - 1.0) > self.tol:
            raise GeometryError("spatial part is not a unit vector")

    @property
    def dim(self) -> int:
        return self.vector.shape[0] - 1

    @property
    def spatial(self) -> np.ndarray:
        return self.vector[1:]


def basepoint(dim: int) -> HPoint:
    """The canonical point (1, 0, ..., 0)."""
    vec = np.zeros(dim + 1)
    vec[0] = 1.0
    return HPoint(vec)


def lorentz_defect(matrix: np.ndarray, dim: int | None = None) -> float:
    """Max-norm of M^T J M - J (zero for an exact Lorentz matrix)."""
    m = np.asarray(matrix, dtype=float)
    j = minkowski_metric((m.shape[0] - 1) if dim is None else dim)
    return float(np.max(np.abs(m.T @ j @ m - j)))


@dataclass(frozen=True)
class Isometry:
    """Lorentz matrix preserving the form and the upper sheet.

    ``label`` optionally records how the matrix was produced (a word in
    some generating set).  Validation is relative: the defect is compared
    against tol * max(1, ||M||_inf^2).
    """

    matrix: np.ndarray
    label: str | None = None
    tol: float = STRUCTURAL_TOL

    def __post_init__(self):
        m = np.array(np.asarray(self.matrix, dtype=float))
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
            raise GeometryError(f"isometry matrix must be square, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise GeometryError("non-finite matrix entries")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        scale = max(1.0, float(np.max(np.abs(m))) ** 2)
        defect = lorentz_defect(m)
        if defect > self.tol * scale:
            raise GeometryError(f"Lorentz defect {defect:.3e} exceeds tolerance")
        if m[0, 0] <= 0.0:
            raise GeometryError("matrix swaps the hyperboloid sheets (entry (0,0) <= 0)")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0] - 1

    def __matmul__(self, other: "Isometry") -> "Isometry":
        if self.dim != other.dim:
            raise GeometryError("composing isometries of different dimensions")
        return Isometry(self.matrix @ other.matrix, tol=max(self.tol, other.tol))

    def inverse(self) -> "Isometry":
        """Exact inverse J M^T J: transpose with sign flips, no solving."""
        j = minkowski_metric(self.dim)
        return Isometry(j @ self.matrix.T @ j, tol=self.tol)

    def apply(self, p: HPoint) -> HPoint:
        if p.dim != self.dim:
            raise GeometryError("dimension mismatch between isometry and point")
        return HPoint(self.matrix @ p.vector, tol=4.0 * max(self.tol, p.tol))

    def apply_ideal(self, xi: IdealPoint) -> IdealPoint:
        if xi.dim != self.dim:
            raise GeometryError("dimension mismatch between isometry and ideal point")
        return IdealPoint(self.matrix @ xi.vector, tol=4.0 * max(self.tol, xi.tol))


def identity_isometry(dim: int) -> Isometry:
    return Isometry(np.eye(dim + 1))


def dist(p: HPoint, q: HPoint, clamp_tol: float = STRUCTURAL_TOL) -> float:
    """Hyperbolic distance acosh(B(p, q)).

    Bit-identical inputs return exactly 0.  Products in [1 - clamp_tol, 1]
    clamp to 1; anything lower means an input is off the sheet and raises.
    """
    if np.array_equal(p.vector, q.vector):
        return 0.0
    b = mink_inner(p, q)
    if b < 1.0 - clamp_tol:
        raise GeometryError(f"B(p,q) = {b!r} < 1: inputs are off the hyperboloid sheet")
    return float(np.arccosh(max(b, 1.0)))


def geodesic_point(p: HPoint, q: HPoint, t: float) -> HPoint:
    """Point at arclength t from p on the geodesic segment [p, q].

    r = (sinh(D - t) p + sinh(t) q) / sinh(D) with D = dist(p, q).
    """
    d = dist(p, q)
    if t < -1e-12 or t > d + 1e-12:
        raise GeometryError(f"parameter t = {t} outside [0, {d}]")
    if d == 0.0:
        if abs(t) <= 1e-12:
            return p
        raise GeometryError("coincident endpoints admit only t = 0")
    t = min(max(t, 0.0), d)
    vec = (np.sinh(d - t) * p.vector + np.sinh(t) * q.vector) / np.sinh(d)
    return HPoint(vec, tol=4.0 * max(p.tol, q.tol))


def translation_along(
    axis_endpoints: tuple[IdealPoint, IdealPoint],
    length: float,
    label: str | None = None,
) -> Isometry:
    """Loxodromic translation along the geodesic with the given endpoints.

    The first endpoint is the attracting one: points on the axis move
    toward it by ``length``.  With endpoints (1,+1,0), (1,-1,0) this is
    the standard boost [[cosh l, sinh l], [sinh l, cosh l]] + identity.
    Swapping the endpoints yields the inverse.
    """
    if length <= 0.0:
        raise GeometryError("translation length must be positive")
    xi_to, xi_from = axis_endpoints
    if xi_to.dim != xi_from.dim:
        raise GeometryError("endpoints live in different dimensions")
    u, w = xi_to.vector, xi_from.vector
    c = mink_inner(u, w)
    if c <= 1e-12:
        raise GeometryError("coincident axis endpoints")
    j = minkowski_metric(xi_to.dim)
    el = float(np.exp(length))
    mat = (
        np.eye(xi_to.dim + 1)
        + ((el - 1.0) / c) * np.outer(u, j @ w)
        + ((1.0 / el - 1.0) / c) * np.outer(w, j @ u)
    )
    return Isometry(mat, label=label)


def rotation_fixing_subspace(
    plane_coords: tuple[int, int], angle: float, dim: int
) -> Isometry:
    """Rotation by ``angle`` in the plane of two spatial coordinates.

    Fixes every point whose coordinates vanish at the two named indices,
    in particular the whole hyperbolic subspace spanned by the others.
    """
    i, k = plane_coords
    if i == k:
        raise GeometryError("plane coordinates must be distinct")
    if not (1 <= i <= dim and 1 <= k <= dim):
        raise GeometryError(f"spatial indices must lie in [1, {dim}]")
    if i > k:
        i, k = k, i
    mat = np.eye(dim + 1)
    c, s = float(np.cos(angle)), float(np.sin(angle))
    mat[i, i] = c
    mat[i, k] = -s
    mat[k, i] = s
    mat[k, k] = c
    return Isometry(mat)


def parabolic_h2(shear: float) -> Isometry:
    """Parabolic isometry of the hyperbolic plane fixing (1, 1, 0).

    One-parameter group: parabolic_h2(s) @ parabolic_h2(t) equals
    parabolic_h2(s + t).  Useful as the standard non-radial orbit source.
    """
    s = float(shear)
    mat = np.array(
        [
            [1.0 + s * s / 2.0, -s * s / 2.0, s],
            [s * s / 2.0, 1.0 - s * s / 2.0, s],
            [s, -s, 1.0],
        ]
    )
    return Isometry(mat)


def translation_length(iso: Isometry | np.ndarray) -> float:
    """Axis translation length: log of the spectral radius.

    Zero for elliptic and parabolic elements (up to ~1e-5 for parabolics,
    whose defective unit eigenvalue perturbs at the cube root of machine
    precision); for a loxodromic with eigenvalues e^{+l}, e^{-l} on its
    axis this returns l, independent of where the axis sits relative to
    the basepoint.
    """
    m = np.asarray(getattr(iso, "matrix", iso), dtype=float)
    radius = float(np.max(np.abs(np.linalg.eigvals(m))))
    return max(0.0, float(np.log(radius)))
