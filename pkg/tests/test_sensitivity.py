"""Profiles, finite-difference sensitivity, and marching-squares level sets."""

import numpy as np
import pytest

import coinknn as ck
from coinknn.errors import InvalidInputError

EUCLID = ck.Euclidean()
DISS = ck.CoincidenceDissimilarity(3, 1)


class TestProfile:
    def test_euclidean_example(self):
        curve = ck.profile(EUCLID, 4.0, [2.0, 4.0, 6.0])
        assert curve.values.tolist() == [2.0, 0.0, 2.0]

    def test_dissimilarity_example(self):
        curve = ck.profile(ck.CoincidenceDissimilarity(1, 1), 4.0, [2.0, 4.0, 8.0])
        assert curve.values.tolist() == [0.5, 0.0, 0.5]

    def test_zero_at_reference_for_both_metrics(self):
        grid = ck.reference_grid(4.0)
        at_ref = grid == 4.0
        assert at_ref.sum() == 1
        for kind in (EUCLID, DISS):
            curve = ck.profile(kind, 4.0, grid)
            assert curve.values[at_ref][0] == 0.0
            assert curve.values.min() == 0.0

    def test_dissimilarity_profile_is_asymmetric(self):
        curve = ck.profile(DISS, 4.0, np.array([3.0, 4.0, 5.0]))
        assert curve.values[0] != curve.values[2]

    def test_euclidean_profile_is_exactly_symmetric(self):
        grid = ck.reference_grid(4.0, lo=1.0, hi=7.0, step=0.5)
        curve = ck.profile(EUCLID, 4.0, grid)
        assert np.array_equal(curve.values, curve.values[::-1])

    def test_grid_validation(self):
        with pytest.raises(InvalidInputError):
            ck.profile(EUCLID, 4.0, [3.0, 3.0, 5.0])

    def test_normalized_peaks_at_one(self):
        grid = ck.reference_grid(4.0)
        for kind in (EUCLID, DISS):
            scaled = ck.profile(kind, 4.0, grid).normalized()
            assert scaled.values.max() == 1.0
            assert scaled.values.min() == 0.0


class TestReferenceGrid:
    def test_defaults(self):
        grid = ck.reference_grid(4.0)
        assert grid[0] == pytest.approx(0.5, abs=1e-12)
        assert grid[-1] == pytest.approx(8.0, abs=1e-12)
        assert (grid == 4.0).any()
        steps = np.diff(grid)
        assert steps.max() - steps.min() < 1e-12

    def test_validation(self):
        with pytest.raises(InvalidInputError):
            ck.reference_grid(4.0, lo=5.0, hi=8.0)
        with pytest.raises(InvalidInputError):
            ck.reference_grid(4.0, step=0.0)


class TestSensitivity:
    def test_euclidean_unit_slope(self):
        grid = ck.reference_grid(4.0)
        sens = ck.sensitivity_curve(ck.profile(EUCLID, 4.0, grid))
        off_ref = grid != 4.0
        assert sens[off_ref] == pytest.approx(1.0, abs=1e-9)

    def test_reference_is_reported_as_gap(self):
        grid = ck.reference_grid(4.0)
        for kind in (EUCLID, DISS):
            sens = ck.sensitivity_curve(ck.profile(kind, 4.0, grid))
            assert np.isnan(sens[grid == 4.0][0])
            assert np.isfinite(sens[grid != 4.0]).all()

    def test_constant_profile_has_zero_sensitivity(self):
        curve = ck.ProfileCurve(
            kind=EUCLID,
            reference=-1.0,  # off the grid: no gap marker
            grid=np.linspace(1, 2, 11),
            values=np.full(11, 0.25),
        )
        assert ck.sensitivity_curve(curve).tolist() == [0.0] * 11

    def test_short_grid_rejected(self):
        curve = ck.profile(EUCLID, 4.0, [3.0, 5.0])
        with pytest.raises(InvalidInputError):
            ck.sensitivity_curve(curve)

    def test_dissimilarity_sharper_than_distance_near_reference(self):
        # on profiles brought to a common scale, the dissimilarity slope
        # dominates near the comparison peak (grid step 1e-3)
        grid = ck.reference_grid(4.0)
        sens = {}
        for kind in (EUCLID, DISS):
            sens[kind] = ck.sensitivity_curve(ck.profile(kind, 4.0, grid).normalized())
        near = (np.abs(grid - 4.0) <= 0.5) & (grid != 4.0)
        assert np.all(sens[DISS][near] > sens[EUCLID][near])


class TestLevelSets:
    def test_euclidean_contours_are_circles(self):
        reference = [2.0, 2.0]
        grid = ck.level_set_grid(
            EUCLID, reference, (0.0, 4.0, 0.0, 4.0), resolution=256, levels=[0.7, 1.5]
        )
        cell_diag = np.hypot(4.0 / 255, 4.0 / 255)
        for level, polylines in zip(grid.levels, grid.contours):
            assert polylines
            for poly in polylines:
                radii = np.hypot(poly[:, 0] - 2.0, poly[:, 1] - 2.0)
                assert np.abs(radii - level).max() < 0.02 * cell_diag

    def test_contours_closed_or_end_on_boundary(self):
        reference = [1.0, 1.0]
        rect = (0.0, 4.0, 0.0, 4.0)
        grid = ck.level_set_grid(
            EUCLID, reference, rect, resolution=128, levels=[0.5, 2.0, 3.5]
        )
        tol = 1e-9
        for polylines in grid.contours:
            for poly in polylines:
                closed = np.array_equal(poly[0], poly[-1])
                if not closed:
                    for endpoint in (poly[0], poly[-1]):
                        on_edge = (
                            min(
                                abs(endpoint[0] - rect[0]),
                                abs(endpoint[0] - rect[1]),
                                abs(endpoint[1] - rect[2]),
                                abs(endpoint[1] - rect[3]),
                            )
                            < tol
                        )
                        assert on_edge

    def test_dissimilarity_contours_stretch_away_from_origin(self):
        # the scale-invariant index reaches measurably farther on the
        # away-from-origin side of the reference than toward the origin;
        # Euclidean circles are exactly symmetric
        for ref in ([4.0, 4.0], [8.0, 10.0], [256.0, 1024.0]):
            reference = np.array(ref)
            span = 4.0 * reference.max()
            grid = ck.level_set_grid(
                DISS, reference, (0.0, span, 0.0, span), resolution=256, levels=[0.5]
            )
            vertices = np.concatenate(grid.contours[0])
            radial = reference / np.linalg.norm(reference)
            along = (vertices - reference) @ radial
            outward, inward = along.max(), -along.min()
            assert outward > 1.2 * inward

            euclid = ck.level_set_grid(
                EUCLID,
                reference,
                (0.0, span, 0.0, span),
                resolution=256,
                levels=[0.2 * float(np.linalg.norm(reference))],
            )
            vertices = np.concatenate(euclid.contours[0])
            along = (vertices - reference) @ radial
            assert along.max() == pytest.approx(-along.min(), rel=1e-2)

    def test_pure_ratio_mode_gives_diamond_iso_values(self):
        # with the interiority factor off, vertices must satisfy the
        # dissimilarity iso-equation up to interpolation error
        kind = ck.CoincidenceDissimilarity(3, 0)
        reference = np.array([4.0, 4.0])
        grid = ck.level_set_grid(
            kind, reference, (0.0, 12.0, 0.0, 12.0), resolution=512, levels=[0.4]
        )
        vertices = np.concatenate(grid.contours[0])
        values = ck.compare_many(kind, reference, vertices)
        assert np.abs(values - 0.4).max() < 5e-3

    def test_validation(self):
        with pytest.raises(InvalidInputError):
            ck.level_set_grid(EUCLID, [1.0], (0, 1, 0, 1), levels=[0.5])
        with pytest.raises(InvalidInputError):
            ck.level_set_grid(EUCLID, [5.0, 5.0], (0, 1, 0, 1), levels=[0.5])
        with pytest.raises(InvalidInputError):
            ck.level_set_grid(EUCLID, [0.5, 0.5], (0, 1, 0, 1), resolution=1)
        with pytest.raises(InvalidInputError):
            ck.level_set_grid(DISS, [0.5, 0.5], (-1, 1, 0, 1), levels=[0.5])
