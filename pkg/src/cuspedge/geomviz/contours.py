"""Profiles of a cuspidal edge under orthogonal projection.

For a direction ``v`` the projection ``P_v o phi`` becomes
``h(x, y) = g(x, y^2, y^3)`` on the model edge.  Its Jacobian is ``y S``;
``y = 0`` maps to the image of the singular set and ``S = 0`` is the contour
generator, whose image is the proper profile.  ``S`` is computed exactly and
traced numerically on a regular grid.
"""

from __future__ import annotations

import numpy as np
from skimage import measure

from ..jetalg import Jet, jet_compose_with_model
from ..recognize import EdgeCoefficients, jacobian_factor, projection_germ
from .polyline import Polyline2

PROFILE_DEGREE = 8
DEFAULT_WINDOW = (-0.5, 0.5, -0.5, 0.5)
DEFAULT_RESOLUTION = 512
MIN_RESOLUTION = 8


def np_eval(jet: Jet, X, Y):
    """Evaluate a two-variable polynomial jet on numpy arrays."""
    out = np.zeros_like(np.asarray(X, dtype=float) + np.asarray(Y, dtype=float))
    for (i, j), c in jet.items():
        out = out + float(c) * X ** i * Y ** j
    return out


class ProjectionProfile:
    """The exact data ``h`` and ``S`` of the projection of ``E`` along ``v``."""

    def __init__(self, E: EdgeCoefficients, v):
        E.check()
        if not any(v):
            raise ValueError("direction must be nonzero")
        self.E = E
        self.v = v
        self.h = jet_compose_with_model(projection_germ(E, v, PROFILE_DEGREE))
        self.S = jacobian_factor(self.h)
        self.Sx, self.Sy = self.S.diff(0), self.S.diff(1)

    def image(self, X, Y):
        return np_eval(self.h[0], X, Y), np_eval(self.h[1], X, Y)

    def singular_image_jets(self) -> tuple:
        """``h(x, 0)`` as exact one-variable coefficient lists."""
        out = []
        for comp in self.h:
            cs = [0] * (comp.deg + 1)
            for (i, j), c in comp.items():
                if j == 0:
                    cs[i] = c
            out.append(cs)
        return tuple(out)

    def refine(self, pts: np.ndarray, steps: int = 4) -> np.ndarray:
        """Move points onto ``S = 0`` by Newton steps along the gradient."""
        x, y = pts[:, 0].copy(), pts[:, 1].copy()
        for _ in range(steps):
            s = np_eval(self.S, x, y)
            gx, gy = np_eval(self.Sx, x, y), np_eval(self.Sy, x, y)
            g2 = gx * gx + gy * gy
            ok = g2 > 1e-24
            step = np.where(ok, s / np.where(ok, g2, 1.0), 0.0)
            x, y = x - step * gx, y - step * gy
        return np.column_stack([x, y])


def _check(window, resolution):
    x0, x1, y0, y1 = (float(t) for t in window)
    if not (x0 < x1 and y0 < y1):
        raise ValueError("window must be (xmin, xmax, ymin, ymax) with positive extent")
    if resolution < MIN_RESOLUTION:
        raise ValueError(f"resolution must be at least {MIN_RESOLUTION} cells")
    return x0, x1, y0, y1


def contour_generator(prof: ProjectionProfile, window=DEFAULT_WINDOW,
                      resolution: int = DEFAULT_RESOLUTION, refine: bool = True) -> list:
    """Zero set of ``S`` in the window as ``(n, 2)`` arrays of ``(x, y)``."""
    x0, x1, y0, y1 = _check(window, resolution)
    xs = np.linspace(x0, x1, resolution + 1)
    ys = np.linspace(y0, y1, resolution + 1)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    grid = np_eval(prof.S, X, Y)
    if np.all(grid > 0) or np.all(grid < 0):
        return []
    dx, dy = (x1 - x0) / resolution, (y1 - y0) / resolution
    out = []
    for c in measure.find_contours(grid, 0.0):
        pts = np.column_stack([x0 + c[:, 0] * dx, y0 + c[:, 1] * dy])
        if refine:
            pts = prof.refine(pts)
        out.append(pts)
    return out


def profile_curves(E: EdgeCoefficients, v, window=DEFAULT_WINDOW,
                   resolution: int = DEFAULT_RESOLUTION, refine: bool = True) -> list:
    """Singular-set image and proper profile of the projection of ``E`` along ``v``."""
    x0, x1, _, _ = _check(window, resolution)
    prof = ProjectionProfile(E, v)
    xs = np.linspace(x0, x1, resolution + 1)
    sx, sy = prof.image(xs, np.zeros_like(xs))
    lines = [Polyline2(list(zip(sx, sy)), "singular_image")]
    for pts in contour_generator(prof, window, resolution, refine):
        px, py = prof.image(pts[:, 0], pts[:, 1])
        pl = Polyline2(list(zip(px, py)), "proper_profile")
        if len(pl) >= 2:
            lines.append(pl)
    return lines


def contact_order(E: EdgeCoefficients, v, window=(-0.3, 0.3, -0.3, 0.3),
                  resolution: int = DEFAULT_RESOLUTION, fit_range=(0.03, 0.2)) -> float:
    """Slope of ``log dist(proper profile, singular image)`` against ``log r`` at the origin.

    The singular image must be regular at the origin.  Its tangent line
    becomes the horizontal axis, the image is fitted as a graph over that
    axis and the vertical gaps of the nearby profile points are regressed on
    their horizontal distance ``r`` within ``fit_range``.
    """
    prof = ProjectionProfile(E, v)
    j1, j2 = prof.singular_image_jets()
    t = np.array([float(j1[1]), float(j2[1])])
    if not np.any(t):
        raise ValueError("singular image is not regular at the origin")
    t = t / np.linalg.norm(t)
    n = np.array([-t[1], t[0]])
    xs = np.linspace(-0.5, 0.5, 2001) * (window[1] - window[0])
    sx, sy = prof.image(xs, np.zeros_like(xs))
    U, V = sx * t[0] + sy * t[1], sx * n[0] + sy * n[1]
    keep = np.abs(U) <= fit_range[1] * 1.5
    poly = np.polyfit(U[keep], V[keep], 8)
    rs, ds = [], []
    for pts in contour_generator(prof, window, resolution):
        px, py = prof.image(pts[:, 0], pts[:, 1])
        pu, pv = px * t[0] + py * t[1], px * n[0] + py * n[1]
        r = np.abs(pu)
        sel = (r >= fit_range[0]) & (r <= fit_range[1])
        rs.extend(r[sel])
        ds.extend(np.abs(pv[sel] - np.polyval(poly, pu[sel])))
    rs, ds = np.array(rs), np.array(ds)
    good = ds > 0
    if good.sum() < 4:
        raise ValueError("not enough profile points near the origin")
    return float(np.polyfit(np.log(rs[good]), np.log(ds[good]), 1)[0])
