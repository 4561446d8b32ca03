"""Tests for orbits, growth witnesses, hull membership and density scans."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from convex_cyclic import dynamics, interpolation, suite
from convex_cyclic.dynamics import Bounded, DensityReport, GrowthWitness, HullQuery
from convex_cyclic.errors import (
    DimensionMismatch,
    OverflowReached,
    PreconditionViolated,
    PremiseViolated,
    ZeroFunctional,
)
from convex_cyclic.jordan_forms import (
    DiagonalEntrySpec,
    DirectSumSpec,
    JordanBlockSpec,
    build,
)


class TestOrbit:
    def test_frozen_diagonal_orbit(self):
        trace = dynamics.orbit(np.diag([-2.0, -3.0]), [1.0, 1.0], 3)
        assert trace.horizon == 3
        expected = np.array([[1.0, 1.0], [-2.0, -3.0], [4.0, 9.0], [-8.0, -27.0]])
        assert np.array_equal(trace.points, expected)

    def test_complex_matrix_keeps_complex_dtype(self):
        trace = dynamics.orbit(np.diag([2j]), [1.0 + 0.0j], 2)
        assert np.iscomplexobj(trace.points)
        assert trace.points[2, 0] == -4.0 + 0.0j

    def test_preconditions(self):
        with pytest.raises(PreconditionViolated):
            dynamics.orbit(np.diag([-2.0]), [1.0], -1)
        with pytest.raises(DimensionMismatch):
            dynamics.orbit(np.diag([-2.0, -3.0]), [1.0], 2)


class TestGrowthWitness:
    def test_frozen_witness_index(self):
        outcome = dynamics.growth_witness(
            np.diag([-2.0, -3.0]), [1.0, 1.0], [1.0, 0.0], threshold=100.0, max_n=50
        )
        assert isinstance(outcome, GrowthWitness)
        assert outcome.index == 8
        assert outcome.value == 256.0
        assert outcome.to_jsonable()["witnessed"] is True

    def test_bounded_reports_best_value(self):
        outcome = dynamics.growth_witness(
            np.diag([-2.0, -3.0]), [1.0, 1.0], [1.0, 0.0], threshold=1e9, max_n=20
        )
        assert isinstance(outcome, Bounded)
        assert outcome.max_observed == 2.0**20
        assert outcome.max_n == 20
        assert outcome.to_jsonable()["witnessed"] is False

    def test_complex_pairing_conjugates_the_functional(self):
        # <T^n x, f> with f = i picks out the imaginary part of the orbit
        outcome = dynamics.growth_witness(np.diag([2j]), [1.0 + 0.0j], [1.0j], 1.5, 10)
        assert isinstance(outcome, GrowthWitness)
        assert outcome.index == 1
        assert outcome.value == pytest.approx(2.0)

    def test_disk_spectrum_suite_entries_stay_bounded(self):
        entries = [
            e for e in suite.golden_suite() if e.note == "all eigenvalues inside the open disk"
        ]
        assert len(entries) >= 3
        for entry in entries:
            matrix = build(entry.spec)
            x = np.ones(matrix.dimension, dtype=complex if matrix.field == "complex" else float)
            outcome = dynamics.growth_witness(matrix, x, x, threshold=10.0, max_n=300)
            assert isinstance(outcome, Bounded), entry.name

    def test_zero_functional_rejected(self):
        with pytest.raises(ZeroFunctional):
            dynamics.growth_witness(np.diag([-2.0]), [1.0], [0.0], 10.0, 10)

    def test_overflow_surfaces_before_the_cap(self):
        with pytest.raises(OverflowReached):
            dynamics.growth_witness(np.diag([1e200]), [1.0], [-1.0], 10.0, 10)


class TestHullContains:
    TRIANGLE = (np.array([0.0, 0.0]), np.array([1.0, 0.0]), np.array([0.0, 1.0]))

    def test_barycentric_grid_is_inside(self):
        steps = np.linspace(0.0, 1.0, 6)
        for a, b in itertools.product(steps, steps):
            if a + b > 1.0:
                continue
            target = a * self.TRIANGLE[1] + b * self.TRIANGLE[2]
            result = dynamics.hull_contains(HullQuery(self.TRIANGLE, target))
            assert result.contained
            assert result.residual <= 1e-9
            assert result.weights.sum() == pytest.approx(1.0)
            assert np.all(result.weights >= 0.0)

    def test_outside_residual_matches_euclidean_distance(self):
        result = dynamics.hull_contains(HullQuery(self.TRIANGLE, np.array([1.0, 1.0])))
        assert not result.contained
        assert result.residual == pytest.approx(math.sqrt(0.5), rel=1e-6)

    def test_verdict_is_scale_invariant(self):
        # the unit-sum row weight tracks the target norm, so a scaled copy
        # of an interior query must not flip the verdict
        points = tuple(1e6 * p for p in self.TRIANGLE)
        target = 1e6 * np.array([0.25, 0.25])
        result = dynamics.hull_contains(HullQuery(points, target, tolerance=1e-3))
        assert result.contained

    def test_complex_points_embed_as_plane_points(self):
        result = dynamics.hull_contains(HullQuery((1.0 + 0.0j,), 1.0j))
        assert not result.contained
        assert result.residual == pytest.approx(math.sqrt(2.0), rel=1e-9)
        same = dynamics.hull_contains(HullQuery((1.0 + 0.0j,), 1.0 + 0.0j))
        assert same.contained

    def test_preconditions(self):
        with pytest.raises(PreconditionViolated):
            dynamics.hull_contains(HullQuery((), np.array([0.0])))
        with pytest.raises(DimensionMismatch):
            dynamics.hull_contains(HullQuery((np.array([0.0, 1.0]),), np.array([0.0])))


class TestDensityScan:
    def test_negative_diagonal_grid_fully_captured(self):
        grid = np.linspace(-8.0, 8.0, 3)
        targets = [np.array([a, b]) for a in grid for b in grid]
        report = dynamics.empirical_density_scan(
            np.diag([-2.0, -3.0]), np.ones(2), targets, poly_budget=400
        )
        assert report.fraction == 1.0
        assert report.captured == report.total == 9
        assert report.miss_indices == ()

    def test_conjugate_pair_obstruction_never_captured(self):
        report = dynamics.empirical_density_scan(
            np.diag([2j, -2j]),
            np.ones(2, dtype=complex),
            [np.array([1.0, 0.0], dtype=complex)],
            poly_budget=64,
        )
        assert report.fraction == 0.0
        assert report.miss_indices == (0,)

    def test_empty_targets_count_as_captured(self):
        report = dynamics.empirical_density_scan(np.diag([-2.0]), [1.0], [])
        assert report == DensityReport(0, 0, 1.0, (), 0)

    def test_report_jsonable_shape(self):
        report = dynamics.empirical_density_scan(
            np.diag([-2.0, -3.0]), np.ones(2), [np.array([1.0, 1.0])], poly_budget=50
        )
        payload = report.to_jsonable()
        assert payload["total"] == 1
        assert 0.0 <= payload["fraction"] <= 1.0
        assert payload["generators_used"] <= 50

    def test_budget_precondition(self):
        with pytest.raises(PreconditionViolated):
            dynamics.empirical_density_scan(np.diag([-2.0]), [1.0], [[1.0]], poly_budget=0)


class TestDirectSumVector:
    FIRST = DirectSumSpec((DiagonalEntrySpec(-3.0), DiagonalEntrySpec(-4.0)))
    SECOND = DirectSumSpec((JordanBlockSpec(2, -2.0),))

    @staticmethod
    def _annihilator():
        cert = interpolation.vanishing_annihilator(
            [(-2.0, 2)], value_nodes=[(-3.0, -2.5), (-4.0, -3.5)]
        )
        assert cert.status == interpolation.STATUS_FEASIBLE
        return cert.polynomial

    def test_single_summand_passes_through(self):
        p = self._annihilator()
        v = dynamics.direct_sum_vector([(self.FIRST, [1.0, 2.0])], p)
        assert np.array_equal(v, [1.0, 2.0])

    def test_two_summands_concatenate(self):
        p = self._annihilator()
        v = dynamics.direct_sum_vector([(self.FIRST, [1.0, 1.0]), (self.SECOND, [1.0, 0.0])], p)
        assert np.array_equal(v, [1.0, 1.0, 1.0, 0.0])

    def test_zero_lead_coordinate_rejected(self):
        p = self._annihilator()
        with pytest.raises(PremiseViolated):
            dynamics.direct_sum_vector([(self.FIRST, [0.0, 1.0])], p)

    def test_second_summand_must_be_annihilated(self):
        # the identity polynomial leaves the second block invertible
        from convex_cyclic.convex_poly import ConvexPolynomial

        identity = ConvexPolynomial([0.0, 1.0])
        with pytest.raises(PremiseViolated):
            dynamics.direct_sum_vector(
                [(self.FIRST, [1.0, 1.0]), (self.SECOND, [1.0, 0.0])], identity
            )

    def test_first_summand_must_stay_convex_cyclic(self):
        # squaring sends the negative spectrum to positive reals
        from convex_cyclic.convex_poly import ConvexPolynomial

        square = ConvexPolynomial([0.0, 0.0, 1.0])
        with pytest.raises(PremiseViolated):
            dynamics.direct_sum_vector(
                [(self.FIRST, [1.0, 1.0]), (self.SECOND, [1.0, 0.0])], square
            )

    def test_summand_count_and_descriptor_checks(self):
        p = self._annihilator()
        with pytest.raises(PreconditionViolated):
            dynamics.direct_sum_vector([], p)
        with pytest.raises(PreconditionViolated):
            dynamics.direct_sum_vector(
                [(self.FIRST, [1.0, 1.0])] * 3, p
            )
        with pytest.raises(PreconditionViolated):
            dynamics.direct_sum_vector([(np.diag([-2.0]), [1.0])], p)
