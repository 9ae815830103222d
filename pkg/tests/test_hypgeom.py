import math
import random
from fractions import Fraction

import pytest

from smallsys.exactfield import KElem, SQRT2
from smallsys.hypgeom import (
    GeodesicHyperplane,
    GeometryError,
    HPoint,
    apply_isometry,
    axis_point,
    basepoint,
    bilinear,
    dist_hyperplanes,
    dist_points,
    gauge_interval,
    orthogeodesic,
    pair_points,
    systole_witness,
)
from smallsys.lorentz import (
    Isometry,
    QuadForm,
    block_g1,
    block_g2,
    param_block,
    translation_length,
)

F1 = QuadForm.standard(1, 2)
F2 = QuadForm.standard(3, 2)
LEN1 = 2.4484524476780758
LEN2 = 1.6829481783974669


def e(i, n):
    return tuple(KElem(1 if j == i else 0) for j in range(n + 1))


class TestBilinear:
    def test_diagonal_values(self):
        assert bilinear(F2, e(0, 2), e(0, 2)) == KElem(3)
        assert bilinear(F2, e(1, 2), e(1, 2)) == KElem(1)
        assert bilinear(F2, e(2, 2), e(2, 2)) == -SQRT2

    def test_off_diagonal_vanishes(self):
        assert bilinear(F1, e(0, 2), e(1, 2)) == KElem(0)

    def test_polarization_identity(self):
        rng = random.Random(83)
        for _ in range(100):
            x = tuple(KElem(rng.randint(-5, 5), rng.randint(-2, 2)) for _ in range(3))
            y = tuple(KElem(rng.randint(-5, 5), rng.randint(-2, 2)) for _ in range(3))
            xy = tuple(a + b for a, b in zip(x, y))
            fx = bilinear(F1, x, x)
            fy = bilinear(F1, y, y)
            fxy = bilinear(F1, xy, xy)
            assert bilinear(F1, x, y) == (fxy - fx - fy) / 2


class TestPoints:
    def test_basepoint_is_exact_and_on_plane(self):
        p = basepoint(F1)
        assert p.is_exact()
        h = GeodesicHyperplane.coordinate(F1)
        assert h.contains(p)
        last = p.coords(64)[-1]
        assert float(last) == pytest.approx(2 ** -0.25, abs=1e-15)

    def test_axis_point_satisfies_form(self):
        rng = random.Random(89)
        for _ in range(50):
            s = rng.uniform(-3, 3)
            c = KElem(rng.randint(1, 4))
            coords = axis_point(c, s, 3, 96).coords(96)
            total = None
            for cf, x in zip(QuadForm.standard(c, 3).diagonal(), coords):
                term = x * x * cf.embed(96)
                total = term if total is None else total + term
            assert -1 in total

    def test_axis_point_zero_is_basepoint(self):
        p = axis_point(KElem(1), 0, 2)
        assert p.is_exact()
        assert p.scaled == (KElem(0), KElem(0), KElem(1))

    def test_invalid_point_rejected(self):
        with pytest.raises(GeometryError):
            HPoint(F1, scaled=[KElem(1), KElem(0), KElem(1)])
        with pytest.raises(GeometryError):
            HPoint(F1, scaled=[KElem(0), KElem(0), KElem(-1)])

    def test_distance_to_self_is_zero(self):
        p = basepoint(F1)
        d = dist_points(p, p)
        assert d.lo == 0
        assert d.hi < Fraction(1, 10 ** 15)

    def test_distance_along_axis_recovers_parameter(self):
        base = basepoint(F1)
        for s in (0.5, 1.0, 2.0):
            p = axis_point(KElem(1), s, 2, 96)
            assert float(dist_points(base, p, 96)) == pytest.approx(s, abs=1e-12)

    def test_distance_symmetry(self):
        rng = random.Random(97)
        for _ in range(30):
            p = axis_point(KElem(1), rng.uniform(0.1, 2), 2, 80)
            q = axis_point(KElem(1), rng.uniform(-2, -0.1), 2, 80)
            d1 = dist_points(p, q, 80)
            d2 = dist_points(q, p, 80)
            assert d1.overlaps(d2)


class TestAxisTranslation:
    def test_block_translates_basepoint_along_axis(self):
        g = block_g1()
        moved = apply_isometry(g.to_isometry(), basepoint(F1))
        assert moved.is_exact()
        target = axis_point(KElem(1), translation_length(g, 96), 2, 96)
        for a, b in zip(moved.coords(96), target.coords(96)):
            assert a.overlaps(b)

    def test_translated_distance_is_length(self):
        g = block_g1()
        base = basepoint(F1)
        moved = apply_isometry(g.to_isometry(), base)
        d = dist_points(base, moved, 96)
        ell = translation_length(g, 96)
        assert d.overlaps(ell)

    def test_isometry_invariance_of_distance(self):
        rng = random.Random(101)
        swap = Isometry((
            (KElem(0), KElem(1), KElem(0)),
            (KElem(1), KElem(0), KElem(0)),
            (KElem(0), KElem(0), KElem(1)),
        ), F1)
        for _ in range(25):
            t = KElem(rng.randint(1, 12), rng.randint(0, 4))
            m = param_block(KElem(1), t, 2).to_isometry()
            if rng.random() < 0.5:
                m = m * swap
            p = axis_point(KElem(1), rng.uniform(-1.5, 1.5), 2, 96)
            q = axis_point(KElem(1), rng.uniform(-1.5, 1.5), 2, 96)
            d0 = dist_points(p, q, 96)
            d1 = dist_points(apply_isometry(m, p, 96), apply_isometry(m, q, 96), 96)
            assert d0.overlaps(d1)


class TestHyperplanes:
    def test_identical_hyperplanes_intersect_at_zero(self):
        h = GeodesicHyperplane.coordinate(F1)
        rel = dist_hyperplanes(h, h)
        assert rel.kind == "intersecting"
        assert float(rel.angle) == pytest.approx(0.0, abs=1e-9)

    def test_g1_image_distance_equals_translation_length(self):
        h = GeodesicHyperplane.coordinate(F1)
        g = block_g1()
        rel = dist_hyperplanes(h, h.image(g.to_isometry()), 96)
        assert rel.kind == "disjoint"
        assert rel.cosh_sq == g.alpha * g.alpha
        assert float(rel.distance) == pytest.approx(LEN1, abs=1e-12)

    def test_g2_image_distance(self):
        h = GeodesicHyperplane.coordinate(F2)
        g = block_g2()
        rel = dist_hyperplanes(h, h.image(g.to_isometry()), 96)
        assert rel.kind == "disjoint"
        assert float(rel.distance) == pytest.approx(LEN2, abs=1e-12)

    def test_cosh_identity_random_blocks(self):
        rng = random.Random(103)
        for _ in range(200):
            c = KElem(rng.choice([1, 3]))
            t = KElem(rng.randint(2, 20), rng.randint(0, 6))
            g = param_block(c, t, 2)
            h = GeodesicHyperplane.coordinate(g.form())
            image = h.image(g.to_isometry())
            rel = dist_hyperplanes(h, image)
            assert rel.cosh_sq == g.alpha * g.alpha
            ell = translation_length(g)
            assert rel.distance.overlaps(ell)
            om = orthogeodesic(h, image, g)
            assert om.length.overlaps(ell)

    def test_intersecting_pair(self):
        h1 = GeodesicHyperplane.coordinate(F1)
        h2 = GeodesicHyperplane(e(1, 2), F1)
        rel = dist_hyperplanes(h1, h2)
        assert rel.kind == "intersecting"
        assert float(rel.angle) == pytest.approx(math.pi / 2, abs=1e-9)

    def test_timelike_normal_rejected(self):
        with pytest.raises(GeometryError):
            GeodesicHyperplane(e(2, 2), F1)


class TestOrthogeodesic:
    def test_g1_orthogeodesic(self):
        g = block_g1()
        h = GeodesicHyperplane.coordinate(F1)
        om = orthogeodesic(h, h.image(g.to_isometry()), g, 96)
        assert float(om.length) == pytest.approx(LEN1, abs=1e-12)
        assert om.foot.is_exact()
        assert h.contains(om.foot)
        mid_last = om.midpoint.coords(96)[-1]
        assert float(mid_last) == pytest.approx(
            math.cosh(LEN1 / 2) * 2 ** -0.25, abs=1e-9)

    def test_foot_to_image_distance_is_length(self):
        g = block_g1()
        h = GeodesicHyperplane.coordinate(F1)
        om = orthogeodesic(h, h.image(g.to_isometry()), g, 96)
        moved = apply_isometry(g.to_isometry(), om.foot)
        d = dist_points(om.foot, moved, 96)
        assert d.overlaps(om.length)

    def test_non_disjoint_rejected(self):
        g = block_g1()
        h = GeodesicHyperplane.coordinate(F1)
        with pytest.raises(GeometryError):
            orthogeodesic(h, h, g)

    def test_mismatched_block_rejected(self):
        g = block_g1()
        other = param_block(KElem(1), KElem(2), 2)
        h = GeodesicHyperplane.coordinate(F1)
        with pytest.raises(GeometryError):
            orthogeodesic(h, h.image(g.to_isometry()), other)


class TestSystoleWitness:
    def test_worked_instance(self):
        assert systole_witness(LEN1, LEN2) == pytest.approx(8.262801252151085, abs=1e-12)

    def test_budget_algebra(self):
        eps = 0.3
        delta = 1e-4
        assert systole_witness(eps / 4 - delta, eps / 4 - delta) < eps

    def test_wired_to_small_element_search(self):
        from smallsys.lorentz import find_small_element
        for eps in (0.5, 0.1, 0.02):
            l1 = float(translation_length(find_small_element(KElem(1), eps / 4, 10 ** 4)))
            l2 = float(translation_length(find_small_element(KElem(3), eps / 4, 10 ** 4)))
            assert systole_witness(l1, l2) < eps

    def test_simple(self):
        assert systole_witness(0.1, 0.2) == pytest.approx(0.6)

    def test_positive_required(self):
        with pytest.raises(ValueError):
            systole_witness(0.0, 1.0)


def test_gauge_interval():
    iv = gauge_interval(96)
    assert float(iv) == pytest.approx(2 ** -0.25, abs=1e-18)
