import numpy as np
import pytest

from conftest import random_hpoint, random_ideal_point, random_isometry
from hyplab.boundary import (
    LimitSetSample,
    busemann,
    busemann_limit_oracle,
    chordal,
    dedup_ideal_points,
    directed_hausdorff,
    f_min,
    gromov_limit_oracle,
    gromov_product,
    hausdorff_distance,
    horospherical_audit,
    largest_empty_cap,
    project_to_boundary,
    radial_audit,
    ray_point,
)
from hyplab.minkowski import GeometryError, HPoint, IdealPoint, basepoint, parabolic_h2


@pytest.fixture
def xi():
    return IdealPoint(np.array([1.0, 1.0, 0.0]))


def on_ray(t):
    return HPoint(np.array([np.cosh(t), np.sinh(t), 0.0]))


class TestBusemann:
    def test_equal_points(self, xi, origin3):
        assert busemann(xi, origin3, origin3) == 0.0

    def test_ray_value(self, xi, origin3):
        for t in (0.5, 1.0, 2.5):
            assert busemann(xi, origin3, on_ray(t)) == pytest.approx(t, abs=1e-12)

    def test_antisymmetry_exact(self, rng, xi):
        y, z = random_hpoint(rng, 2), random_hpoint(rng, 2)
        assert busemann(xi, y, z) == -busemann(xi, z, y)

    def test_cocycle(self, rng):
        for _ in range(30):
            xi = random_ideal_point(rng, 3)
            x, y, z = (random_hpoint(rng, 3) for _ in range(3))
            total = busemann(xi, x, y) + busemann(xi, y, z)
            assert busemann(xi, x, z) == pytest.approx(total, abs=1e-9)

    def test_isometry_equivariance(self, rng):
        for _ in range(20):
            g = random_isometry(rng, 3)
            xi = random_ideal_point(rng, 3)
            y, z = random_hpoint(rng, 3), random_hpoint(rng, 3)
            lhs = busemann(g.apply_ideal(xi), g.apply(y), g.apply(z))
            assert lhs == pytest.approx(busemann(xi, y, z), abs=1e-8)


class TestBusemannOracle:
    def test_equal_points_vanish(self, xi, origin3):
        for t in (0.0, 5.0, 30.0):
            assert busemann_limit_oracle(xi, origin3, origin3, t) == 0.0

    def test_ray_example_at_thirty(self, xi, origin3):
        value = busemann_limit_oracle(xi, origin3, on_ray(1.0), 30.0)
        assert value == pytest.approx(1.0, abs=1e-6)

    def test_agreement_with_closed_form(self, rng):
        for _ in range(100):
            xi = random_ideal_point(rng, 2)
            y, z = random_hpoint(rng, 2), random_hpoint(rng, 2)
            oracle = busemann_limit_oracle(xi, y, z, 30.0)
            assert abs(oracle - busemann(xi, y, z)) <= 1e-6

    def test_negative_parameter_rejected(self, xi, origin3):
        with pytest.raises(GeometryError):
            ray_point(xi, -1.0)


class TestGromovProduct:
    def test_base_with_itself(self, xi, origin3):
        assert gromov_product(origin3, xi, origin3) == 0.0

    def test_point_on_ray(self, xi, origin3):
        for t in (0.5, 1.5, 3.0):
            assert gromov_product(on_ray(t), xi, origin3) == pytest.approx(t, abs=1e-9)

    def test_point_on_opposite_ray(self, xi, origin3):
        away = HPoint(np.array([np.cosh(2.0), -np.sinh(2.0), 0.0]))
        assert gromov_product(away, xi, origin3) == pytest.approx(0.0, abs=1e-9)

    def test_agreement_with_limit_oracle(self, rng):
        for _ in range(100):
            xi = random_ideal_point(rng, 2)
            y, base = random_hpoint(rng, 2), random_hpoint(rng, 2)
            oracle = gromov_limit_oracle(y, xi, base, 30.0)
            assert abs(oracle - gromov_product(y, xi, base)) <= 1e-6

    def test_nonnegative_and_bounded(self, rng):
        from hyplab.minkowski import dist

        for _ in range(50):
            xi = random_ideal_point(rng, 3)
            y, base = random_hpoint(rng, 3), random_hpoint(rng, 3)
            value = gromov_product(y, xi, base)
            assert value >= -1e-9
            assert value <= dist(y, base) + 1e-9


class TestRadialAudit:
    def test_ray_sequence_vanishes(self, xi, origin3):
        points = [on_ray(t) for t in (1.0, 2.0, 4.0, 8.0)]
        report = radial_audit(points, xi, origin3)
        assert report.sup_product <= 1e-9

    def test_constant_sequence(self, xi, origin3):
        report = radial_audit([origin3, origin3], xi, origin3)
        assert report.sup_product == 0.0

    def test_parabolic_orbit_grows(self, xi, origin3):
        h = parabolic_h2(1.0)
        points = []
        current = origin3
        for _ in range(100):
            current = h.apply(current)
            points.append(current)
        report = radial_audit(points, xi, origin3)
        values = np.array(report.values)
        assert values[-1] > 3.0
        assert values[-1] > values[49] + 0.1
        # logarithmic growth: values exceed log(n) - C for a fixed C
        n = np.arange(1, 101)
        assert np.all(values - np.log(n) > -1.0)

    def test_empty_sequence_rejected(self, xi, origin3):
        with pytest.raises(GeometryError):
            radial_audit([], xi, origin3)


class TestHorosphericalAudit:
    def test_single_base_orbit(self, xi, origin3):
        report = horospherical_audit([origin3], xi, origin3)
        assert report.max_busemann == 0.0
        assert report.witness is None

    def test_ray_point_witness(self, xi, origin3):
        report = horospherical_audit([origin3, on_ray(1.0)], xi, origin3)
        assert report.max_busemann == pytest.approx(1.0, abs=1e-9)
        assert report.witness is not None

    def test_opposite_ray_no_witness(self, xi, origin3):
        away = HPoint(np.array([np.cosh(1.0), -np.sinh(1.0), 0.0]))
        report = horospherical_audit([away], xi, origin3)
        assert report.max_busemann < 0.0
        assert report.witness is None


class TestFMin:
    def test_at_base(self, xi, origin3):
        assert f_min(origin3, xi, origin3) == 0.0

    def test_on_ray(self, xi, origin3):
        assert f_min(on_ray(2.0), xi, origin3) == pytest.approx(0.0, abs=1e-9)

    def test_bounded_by_distance(self, rng):
        from hyplab.minkowski import dist

        for _ in range(30):
            xi = random_ideal_point(rng, 2)
            y, base = random_hpoint(rng, 2), random_hpoint(rng, 2)
            assert f_min(y, xi, base) <= dist(base, y) + 1e-9


def make_sample(spatials, depth=1, label="test"):
    points = tuple(IdealPoint(np.concatenate(([1.0], s))) for s in spatials)
    return LimitSetSample(points, depth, label)


class TestHausdorff:
    def test_identical_samples(self):
        a = make_sample([[1.0, 0.0], [0.0, 1.0]])
        assert hausdorff_distance(a, a) == 0.0

    def test_antipodal_singletons(self):
        a = make_sample([[1.0, 0.0]])
        b = make_sample([[-1.0, 0.0]])
        assert hausdorff_distance(a, b) == pytest.approx(2.0, abs=1e-12)

    def test_subset_directed_zero(self):
        a = make_sample([[1.0, 0.0]])
        b = make_sample([[1.0, 0.0], [0.0, 1.0]])
        assert directed_hausdorff(a, b) == 0.0

    def test_symmetry_exact(self, rng):
        a = make_sample([v / np.linalg.norm(v) for v in rng.normal(size=(5, 2))])
        b = make_sample([v / np.linalg.norm(v) for v in rng.normal(size=(7, 2))])
        assert hausdorff_distance(a, b) == hausdorff_distance(b, a)

    def test_triangle_inequality(self, rng):
        samples = []
        for n in (4, 6, 5):
            samples.append(
                make_sample([v / np.linalg.norm(v) for v in rng.normal(size=(n, 3))])
            )
        a, b, c = samples
        lhs = hausdorff_distance(a, c)
        assert lhs <= hausdorff_distance(a, b) + hausdorff_distance(b, c) + 1e-12

    def test_empty_sample_rejected(self):
        with pytest.raises(GeometryError):
            make_sample([])


class TestProjection:
    def test_ray_points_project_to_target(self, xi):
        for t in (1.0, 5.0):
            assert chordal(project_to_boundary(on_ray(t)), xi) <= 1e-12

    def test_basepoint_has_no_direction(self, origin3):
        with pytest.raises(GeometryError):
            project_to_boundary(origin3)

    def test_dedup_keeps_first(self):
        a = IdealPoint(np.array([1.0, 1.0, 0.0]))
        b = IdealPoint(np.array([1.0, np.cos(1e-9), np.sin(1e-9)]))
        c = IdealPoint(np.array([1.0, 0.0, 1.0]))
        kept = dedup_ideal_points([a, b, c], tol=1e-7)
        assert kept == [a, c]


def test_largest_empty_cap_quarter_circle():
    angles = np.linspace(0.0, np.pi / 2.0, 10)
    sample = make_sample([[np.cos(a), np.sin(a)] for a in angles])
    assert largest_empty_cap(sample) == pytest.approx(1.5 * np.pi, abs=1e-9)
