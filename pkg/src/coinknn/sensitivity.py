"""Comparator profiles, finite-difference sensitivities, and 2-D level sets.

A profile fixes a reference value and evaluates a comparator against a grid
of candidate values; its sensitivity is the absolute slope of that curve.
Both comparators have a kink at the reference (the profile minimum), so the
derivative is not defined there and the sensitivity reports a gap (NaN) at
that abscissa.

Level sets evaluate a comparator on a 2-D lattice around a reference point
and extract iso-contours by marching squares with linear interpolation
along cell edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError
from .similarity import ComparatorKind, CoincidenceDissimilarity, compare_many

__all__ = [
    "ProfileCurve",
    "reference_grid",
    "profile",
    "sensitivity_curve",
    "LevelSetGrid",
    "level_set_grid",
]


@dataclass(frozen=True, eq=False)
class ProfileCurve:
    """Comparator values against a fixed scalar reference over a grid."""

    kind: ComparatorKind
    reference: float
    grid: np.ndarray
    values: np.ndarray

    def normalized(self) -> "ProfileCurve":
        """Rescale values by their maximum over the grid.

        Puts an unbounded distance and a [0, 1] dissimilarity on one common
        scale, which is how the two profiles (and their sensitivities) are
        compared and plotted together.
        """
        peak = float(np.max(self.values))
        if peak <= 0:
            return self
        return ProfileCurve(
            kind=self.kind,
            reference=self.reference,
            grid=self.grid,
            values=self.values / peak,
        )


def reference_grid(
    reference: float,
    lo: float | None = None,
    hi: float | None = None,
    step: float = 1e-3,
) -> np.ndarray:
    """Uniform grid that contains ``reference`` exactly.

    Defaults span reference/8 to 2*reference.  The grid is built outward
    from the reference so the kink lands on a grid point and the
    non-differentiable gap is detectable exactly.
    """
    if lo is None:
        lo = reference / 8.0
    if hi is None:
        hi = 2.0 * reference
    if not (lo < reference < hi):
        raise InvalidInputError("grid bounds must bracket the reference")
    if step <= 0:
        raise InvalidInputError("step must be positive")
    below = int(round((reference - lo) / step))
    above = int(round((hi - reference) / step))
    offsets = np.arange(-below, above + 1, dtype=np.float64)
    return reference + offsets * step


def profile(
    kind: ComparatorKind, reference: float, grid: Iterable[float]
) -> ProfileCurve:
    """Evaluate ``compare(kind, [reference], [g])`` over the grid."""
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0:
        raise InvalidInputError("grid must be a non-empty 1-D array")
    if not np.all(np.diff(grid) > 0):
        raise InvalidInputError("grid must be strictly increasing")
    values = compare_many(kind, [reference], grid.reshape(-1, 1))
    return ProfileCurve(
        kind=kind, reference=float(reference), grid=grid, values=values
    )


def sensitivity_curve(curve: ProfileCurve) -> np.ndarray:
    """Absolute slope of a profile by finite differences.

    Central differences on interior points, one-sided at the grid ends.
    The reference abscissa itself (where the profile has its kink) is
    reported as NaN: no derivative exists there.
    """
    grid = curve.grid
    values = curve.values
    if grid.size < 3:
        raise InvalidInputError("sensitivity needs a grid of at least 3 points")
    out = np.empty_like(values)
    out[1:-1] = (values[2:] - values[:-2]) / (grid[2:] - grid[:-2])
    out[0] = (values[1] - values[0]) / (grid[1] - grid[0])
    out[-1] = (values[-1] - values[-2]) / (grid[-1] - grid[-2])
    out = np.abs(out)
    out[grid == curve.reference] = np.nan
    return out


@dataclass(frozen=True, eq=False)
class LevelSetGrid:
    """Comparator values on a lattice plus extracted iso-contours.

    ``values[iy, ix]`` is the comparator at (xs[ix], ys[iy]).  ``contours``
    holds, per level, a tuple of polylines as (m, 2) arrays of (x, y)
    vertices; each polyline is closed or ends on the lattice boundary.
    """

    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray
    levels: tuple[float, ...]
    contours: tuple[tuple[np.ndarray, ...], ...]


def level_set_grid(
    kind: ComparatorKind,
    reference: Iterable[float],
    rect: tuple[float, float, float, float],
    resolution: int = 512,
    levels: Sequence[float] = (),
) -> LevelSetGrid:
    """Evaluate a comparator over a rectangle and extract its level sets.

    ``rect`` is (x_min, x_max, y_min, y_max) and must contain the reference;
    the coincidence comparator additionally requires the rectangle to stay
    in the non-negative quadrant.
    """
    ref = np.asarray(reference, dtype=np.float64)
    if ref.shape != (2,):
        raise InvalidInputError("level sets need a 2-D reference point")
    x_min, x_max, y_min, y_max = (float(v) for v in rect)
    if not (x_min < x_max and y_min < y_max):
        raise InvalidInputError("rect must satisfy x_min < x_max and y_min < y_max")
    if not (x_min <= ref[0] <= x_max and y_min <= ref[1] <= y_max):
        raise InvalidInputError("reference must lie inside rect")
    if resolution < 2:
        raise InvalidInputError("resolution must be >= 2")
    if isinstance(kind, CoincidenceDissimilarity) and (x_min < 0 or y_min < 0):
        raise InvalidInputError(
            "coincidence level sets require a non-negative rectangle"
        )

    xs = np.linspace(x_min, x_max, resolution)
    ys = np.linspace(y_min, y_max, resolution)
    gx, gy = np.meshgrid(xs, ys)
    points = np.column_stack([gx.ravel(), gy.ravel()])
    values = compare_many(kind, ref, points).reshape(resolution, resolution)

    contours = tuple(
        tuple(_marching_squares(xs, ys, values, float(level))) for level in levels
    )
    return LevelSetGrid(
        xs=xs,
        ys=ys,
        values=values,
        levels=tuple(float(level) for level in levels),
        contours=contours,
    )


# Segment table for marching squares.  Corner bits: 1=bottom-left,
# 2=bottom-right, 4=top-right, 8=top-left ("inside" means value > level).
# Edges are named B(ottom), R(ight), T(op), L(eft).  Cases 5 and 10 are
# saddles resolved with the cell-center mean.
_CASE_SEGMENTS = {
    1: [("L", "B")],
    2: [("B", "R")],
    3: [("L", "R")],
    4: [("R", "T")],
    6: [("B", "T")],
    7: [("L", "T")],
    8: [("T", "L")],
    9: [("B", "T")],
    11: [("R", "T")],
    12: [("R", "L")],
    13: [("B", "R")],
    14: [("L", "B")],
}
_SADDLE = {
    (5, True): [("L", "T"), ("B", "R")],
    (5, False): [("L", "B"), ("T", "R")],
    (10, True): [("L", "B"), ("T", "R")],
    (10, False): [("B", "R"), ("T", "L")],
}


def _edge_key(edge: str, ix: int, iy: int) -> tuple[str, int, int]:
    # canonical lattice-edge id shared between the two adjacent cells
    if edge == "B":
        return ("h", ix, iy)
    if edge == "T":
        return ("h", ix, iy + 1)
    if edge == "L":
        return ("v", ix, iy)
    return ("v", ix + 1, iy)


def _marching_squares(
    xs: np.ndarray, ys: np.ndarray, values: np.ndarray, level: float
) -> list[np.ndarray]:
    inside = values > level

    bl = inside[:-1, :-1]
    br = inside[:-1, 1:]
    tr = inside[1:, 1:]
    tl = inside[1:, :-1]
    case = (
        bl.astype(np.int8)
        + 2 * br.astype(np.int8)
        + 4 * tr.astype(np.int8)
        + 8 * tl.astype(np.int8)
    )
    active = np.argwhere((case > 0) & (case < 15))

    # adjacency between edge crossings: every lattice edge hosts at most one
    # crossing and joins at most two segments, so chains are unambiguous
    links: dict[tuple, list[tuple]] = {}
    for iy, ix in active:
        c = int(case[iy, ix])
        if c in (5, 10):
            center = 0.25 * (
                values[iy, ix]
                + values[iy, ix + 1]
                + values[iy + 1, ix]
                + values[iy + 1, ix + 1]
            )
            segments = _SADDLE[(c, bool(center > level))]
        else:
            segments = _CASE_SEGMENTS[c]
        for edge_a, edge_b in segments:
            key_a = _edge_key(edge_a, ix, iy)
            key_b = _edge_key(edge_b, ix, iy)
            links.setdefault(key_a, []).append(key_b)
            links.setdefault(key_b, []).append(key_a)

    def interpolate(key: tuple) -> tuple[float, float]:
        orientation, ix, iy = key
        if orientation == "h":
            v0 = values[iy, ix]
            v1 = values[iy, ix + 1]
            t = (level - v0) / (v1 - v0)
            return (xs[ix] + t * (xs[ix + 1] - xs[ix]), ys[iy])
        v0 = values[iy, ix]
        v1 = values[iy + 1, ix]
        t = (level - v0) / (v1 - v0)
        return (xs[ix], ys[iy] + t * (ys[iy + 1] - ys[iy]))

    visited: set[tuple] = set()

    def walk(start: tuple) -> list[tuple]:
        chain = [start]
        visited.add(start)
        current = start
        while True:
            nxt = None
            for cand in links[current]:
                if cand not in visited:
                    nxt = cand
                    break
            if nxt is None:
                break
            chain.append(nxt)
            visited.add(nxt)
            current = nxt
        return chain

    polylines: list[np.ndarray] = []
    # open chains first (start from degree-1 endpoints), then closed loops
    endpoints = [k for k, nbrs in links.items() if len(nbrs) == 1]
    for start in endpoints:
        if start in visited:
            continue
        chain = walk(start)
        polylines.append(np.array([interpolate(k) for k in chain]))
    for start in links:
        if start in visited:
            continue
        chain = walk(start)
        chain.append(chain[0])  # close the loop
        polylines.append(np.array([interpolate(k) for k in chain]))
    return polylines
