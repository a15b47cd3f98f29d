from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftcurve.curvature import (analyze, bending_energy, curvature_density, curvature_force,
                               signed_turning_angles, smooth_inscribed_arcs, spindle_contains, tantrix,
                               total_curvature, total_curvature_star, turning_angles)
from ftcurve.curve import PolyCurve, circle, length, regular_polygon, sample_uniform, torus_knot, unit_square
from ftcurve.errors import AmbiguousSign, CuspError, DegenerateCurve, PreconditionFailed
from ftcurve.generators import cusp_arc, random_polygon, trefoil, two_gon

# frozen value for the 200-vertex trefoil sample
TREFOIL_TC = 17.807296716487368  # extended-precision angle sum of the catalog formula


def unit_edge_ngon(n):
    return regular_polygon(n, radius=0.5 / math.sin(math.pi / n))


def mp_turning_sum(V, closed, dps=40):
    """Independent angle sum in extended precision using acos of the normalized dot product."""
    with mpmath.workdps(dps):
        P = [[mpmath.mpf(float(x)) for x in v] for v in V]
        n = len(P)
        edges = []
        m = n if closed else n - 1
        for i in range(m):
            a, b = P[i], P[(i + 1) % n]
            edges.append([bb - aa for aa, bb in zip(a, b)])
        total = mpmath.mpf(0)
        pairs = range(m) if closed else range(1, m)
        for i in pairs:
            u, w = edges[i - 1], edges[i]
            dot = sum(x * y for x, y in zip(u, w))
            nu = mpmath.sqrt(sum(x * x for x in u))
            nw = mpmath.sqrt(sum(x * x for x in w))
            total += mpmath.acos(dot / (nu * nw))
        return float(total)


class TestTurningAngles:
    def test_collinear(self):
        assert turning_angles(PolyCurve([[0, 0], [1, 0], [2, 0]]))[0] == 0.0

    def test_right_angle(self):
        assert turning_angles(PolyCurve([[0, 0], [1, 0], [1, 1]]))[0] == pytest.approx(math.pi / 2, abs=1e-15)

    def test_cusp(self):
        assert turning_angles(cusp_arc())[0] == math.pi

    def test_duplicates_rejected(self):
        with pytest.raises(DegenerateCurve):
            turning_angles(PolyCurve([[0, 0], [0, 0], [1, 0]]))

    def test_stable_near_zero(self):
        eps = 1e-12
        c = PolyCurve([[0, 0], [1, 0], [2, eps]])
        assert turning_angles(c)[0] == pytest.approx(eps, rel=1e-6)


class TestSigned:
    def test_ccw_square(self):
        phi, tn = signed_turning_angles(unit_square())
        np.testing.assert_allclose(phi, math.pi / 2, atol=1e-15)
        assert tn == 1

    def test_cw_square(self):
        phi, tn = signed_turning_angles(unit_square(clockwise=True))
        np.testing.assert_allclose(phi, -math.pi / 2, atol=1e-15)
        assert tn == -1

    def test_cusp(self):
        with pytest.raises(AmbiguousSign):
            signed_turning_angles(cusp_arc())

    def test_figure_eight(self):
        c = PolyCurve([[1, 1], [2, 0], [1, -1], [-1, 1], [-2, 0], [-1, -1]], closed=True)
        assert signed_turning_angles(c)[1] == 0


class TestTotalCurvature:
    def test_square(self):
        assert total_curvature(unit_square()) == pytest.approx(2 * math.pi, abs=1e-14)

    def test_two_gon(self):
        assert total_curvature(two_gon()) == 2 * math.pi

    @pytest.mark.parametrize("n", [3, 4, 7, 50, 100, 1000])
    def test_ngon_exact(self, n):
        assert abs(total_curvature(regular_polygon(n)) - 2 * math.pi) <= 1e-12

    def test_trefoil_frozen(self):
        tc = total_curvature(trefoil())
        assert tc == pytest.approx(TREFOIL_TC, abs=1e-12)
        assert tc >= 4 * math.pi

    def test_trefoil_mpmath(self):
        c = trefoil()
        assert abs(total_curvature(c) - mp_turning_sum(c.vertices, True)) <= 1e-12

    def test_trefoil_cauchy(self):
        pc = torus_knot(2, 3)
        tcs = [total_curvature(sample_uniform(pc, n).polygon) for n in (50, 100, 200, 400, 800, 1600)]
        diffs = np.abs(np.diff(tcs))
        assert np.all(diffs[1:] < diffs[:-1])
        assert diffs[-1] < 1e-3

    def test_fenchel_random(self):
        rng = np.random.default_rng(5)
        for _ in range(300):
            c = random_polygon(rng, int(rng.integers(3, 21)), int(rng.integers(2, 5)))
            assert total_curvature(c) >= 2 * math.pi - 1e-9

    def test_deletion_monotone(self):
        rng = np.random.default_rng(6)
        for _ in range(1000):
            closed = bool(rng.integers(2))
            n = int(rng.integers(4 if closed else 3, 10))
            c = random_polygon(rng, n, int(rng.integers(2, 5)), closed)
            i = int(rng.integers(0, n)) if closed else int(rng.integers(1, n - 1))
            d = PolyCurve(np.delete(c.vertices, i, axis=0), closed)
            assert total_curvature(d) <= total_curvature(c) + 1e-12

    def test_deletion_collinear_equality(self):
        c = PolyCurve([[0, 0], [1, 0], [2, 0], [2, 1], [0, 2]], closed=True)
        d = PolyCurve(np.delete(c.vertices, 1, axis=0), closed=True)
        assert total_curvature(d) == pytest.approx(total_curvature(c), abs=1e-15)

    def test_subsample_monotone(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            c = random_polygon(rng, 12, 3, closed=True)
            keep = np.sort(rng.choice(12, size=int(rng.integers(3, 12)), replace=False))
            assert total_curvature(PolyCurve(c.vertices[keep], True)) <= total_curvature(c) + 1e-12


class TestTantrix:
    def test_square(self):
        np.testing.assert_allclose(tantrix(unit_square()).points, [[1, 0], [0, 1], [-1, 0], [0, -1]], atol=0)

    def test_straight(self):
        t = tantrix(PolyCurve([[0, 0], [1, 0], [3, 0]]))
        np.testing.assert_array_equal(t.points[0], t.points[1])

    def test_lengths_trefoil(self):
        c = trefoil()
        t = tantrix(c)
        assert abs(t.spherical_length() - total_curvature(c)) <= 1e-12
        assert abs(t.euclidean_length() - total_curvature_star(c)) <= 1e-12
        np.testing.assert_allclose(np.linalg.norm(t.points, axis=1), 1.0, atol=1e-12)

    @settings(max_examples=100)
    @given(st.integers(0, 10**6))
    def test_lengths_random(self, seed):
        c = random_polygon(seed, 9, 3, closed=bool(seed % 2))
        t = tantrix(c)
        assert abs(t.spherical_length() - total_curvature(c)) <= 1e-12
        assert abs(t.euclidean_length() - total_curvature_star(c)) <= 1e-12
        assert len(t.points) == c.n_edges


class TestForce:
    def test_square_corner(self):
        K = curvature_force(unit_square())
        np.testing.assert_allclose(K.mass(), math.sqrt(2), rtol=1e-15)

    def test_collinear(self):
        K = curvature_force(PolyCurve([[0, 0], [1, 0], [2, 0]]))
        np.testing.assert_array_equal(K.atoms, [[0, 0]])

    def test_boundary(self):
        K = curvature_force(PolyCurve([[0, 0], [2, 0], [2, 3]]))
        np.testing.assert_allclose(K.boundary, [[1, 0], [0, -1]])

    def test_mass_identity(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            c = random_polygon(rng, 10, 4, bool(rng.integers(2)))
            np.testing.assert_allclose(curvature_force(c).mass(), 2 * np.sin(turning_angles(c) / 2), atol=1e-12)


class TestTCStar:
    def test_square(self):
        assert total_curvature_star(unit_square()) == pytest.approx(4 * math.sqrt(2), rel=1e-15)

    def test_two_gon(self):
        assert total_curvature_star(two_gon()) == 4.0

    def test_straight(self):
        assert total_curvature_star(PolyCurve([[0, 0], [1, 0], [5, 0]])) == 0.0

    def test_le_tc(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            c = random_polygon(rng, 8, 3)
            assert total_curvature_star(c) <= total_curvature(c)


class TestDensity:
    @pytest.mark.parametrize("n", [3, 6, 11])
    def test_ngon_models(self, n):
        c = unit_edge_ngon(n)
        np.testing.assert_allclose(curvature_density(c, "arc")[0], 2 * math.tan(math.pi / n), rtol=1e-13)
        np.testing.assert_allclose(curvature_density(c, "chord")[0], 2 * math.sin(math.pi / n), rtol=1e-13)
        np.testing.assert_allclose(curvature_density(c, "angle")[0], 2 * math.pi / n, rtol=1e-13)

    def test_ordering(self):
        rng = np.random.default_rng(10)
        for _ in range(100):
            c = random_polygon(rng, 8, 3)
            ch, an, ar = (curvature_density(c, m)[0] for m in ("chord", "angle", "arc"))
            assert np.all(ch <= an + 1e-15) and np.all(an <= ar + 1e-15)

    def test_cusp(self):
        with pytest.raises(CuspError) as info:
            curvature_density(cusp_arc(), "arc")
        assert info.value.vertex == 1

    def test_unknown_model(self):
        with pytest.raises(ValueError):
            curvature_density(unit_square(), "spline")


class TestBending:
    def test_straight(self):
        assert bending_energy(PolyCurve([[0, 0], [1, 0], [2, 0]])) == 0.0

    @pytest.mark.parametrize("n", [4, 5, 9])
    def test_ngon(self, n):
        assert bending_energy(unit_edge_ngon(n)) == pytest.approx(n * (2 * math.tan(math.pi / n)) ** 2, rel=1e-13)

    def test_blowup(self):
        es = []
        for t in [1e-1, 1e-2, 1e-3, 1e-4]:
            c = PolyCurve([[0, 0], [1, 0], [0, t]])
            es.append(bending_energy(c))
        assert all(b > 10 * a for a, b in zip(es, es[1:]))


class TestSmoothing:
    def test_square(self):
        s = smooth_inscribed_arcs(unit_square())
        assert s.length == pytest.approx(math.pi, abs=1e-12)
        arcs = s.arcs
        assert len(arcs) == 4
        for a in arcs:
            assert a.radius == pytest.approx(0.5, abs=1e-15)
            assert a.density == pytest.approx(2.0, abs=1e-12)
        assert abs(s.total_turning - 2 * math.pi) <= 1e-12
        assert s.joint_mismatch() <= 1e-9

    def test_straight(self):
        s = smooth_inscribed_arcs(PolyCurve([[0, 0], [1, 0], [2, 0]]))
        assert not s.arcs and s.length == pytest.approx(2.0)

    def test_hexagon(self):
        s = smooth_inscribed_arcs(unit_edge_ngon(6))
        assert len(s.arcs) == 6
        for a in s.arcs:
            assert a.turn == pytest.approx(math.pi / 3, abs=1e-12)
        assert abs(s.total_turning - 2 * math.pi) <= 1e-12

    def test_random(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            c = random_polygon(rng, 9, 3, bool(rng.integers(2)))
            s = smooth_inscribed_arcs(c)
            assert s.length < length(c)
            assert abs(s.total_turning - total_curvature(c)) <= 1e-12
            assert s.joint_mismatch() <= 1e-9 and s.gap_mismatch() <= 1e-9

    def test_cusp(self):
        with pytest.raises(CuspError):
            smooth_inscribed_arcs(cusp_arc())


class TestSpindle:
    def test_segment(self):
        assert spindle_contains(PolyCurve([[0, 0], [0.5, 0], [1, 0]])).contained

    def test_circular_arc(self):
        phi = 2.0
        t = np.linspace(0, phi, 30)
        arc = PolyCurve(np.column_stack([np.sin(t), 1 - np.cos(t)]))
        rep = spindle_contains(arc)
        assert rep.contained
        # inscribed-angle theorem: every vertex sees the chord with turning phi/2
        np.testing.assert_allclose(rep.angles, phi / 2, atol=1e-12)

    def test_corner_tight(self):
        from ftcurve.generators import symmetric_corner
        rep = spindle_contains(symmetric_corner(1.2))
        assert rep.contained
        assert rep.angles[0] == pytest.approx(rep.phi, abs=1e-15)

    def test_violation(self):
        arc = PolyCurve([[0, 0], [0.5, 0.01], [1, 0]])
        rep = spindle_contains(arc, phi=0.01)
        assert not rep.contained and rep.violations == [0]

    def test_random_low_curvature(self):
        from ftcurve.generators import random_low_curvature_arc
        rng = np.random.default_rng(13)
        for _ in range(200):
            a = random_low_curvature_arc(rng, int(rng.integers(3, 12)), 3)
            assert spindle_contains(a, edge_samples=3).contained

    def test_precondition(self):
        with pytest.raises(PreconditionFailed):
            spindle_contains(PolyCurve([[0, 0], [1, 0], [1, 1], [0, 1], [0, 0.5]]))


class TestReport:
    def test_square_fields(self):
        d = analyze(unit_square()).to_dict()
        assert d["tc"] == pytest.approx(2 * math.pi, abs=1e-14)
        assert d["tc_star"] == pytest.approx(4 * math.sqrt(2), rel=1e-15)
        assert d["turning_number"] == 1
        assert set(d["vertices"][0]) == {"index", "theta", "k_mass", "density_angle", "density_chord", "density_arc"}

    def test_circle_catalog(self):
        d = analyze(sample_uniform(circle(), 12).polygon).to_dict()
        assert d["tc_star"] <= d["tc"]
