"""Rotation numbers of closed trigonometric curves about points.

Two independent algorithms are provided:

* :func:`rotation_number_ray` counts signed crossings of a horizontal ray,
  which needs only the roots of the vertical component on one level;
* :func:`rotation_number_angle` accumulates the turning angle of
  ``curve(t) - x`` over an adaptively refined partition.

Both refuse points closer than ``OFF_CURVE_RTOL * diameter`` to the curve.
Distances and the angle partition are certified with the chord bound: an
arc over a parameter step ``h`` stays within ``M2 h**2 / 8`` of its chord,
where ``M2`` bounds the acceleration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree

from .errors import DegenerateLevel, DegenerateRay, NonConvergent, OnCurve
from .trigpoly import TWO_PI, TrigPoly, critical_points, derivative, roots_on_level, roots_on_levels

OFF_CURVE_RTOL = 1e-6
RAY_PERTURB_RTOL = 1e-7
IMMERSION_RTOL = 1e-8
N_SAMPLES = 4096
MAX_ANGLE_INTERVALS = 1 << 20
#: sentinel stored in region maps for nodes too close to the curve
SENTINEL = int(np.iinfo(np.int64).min)


class Point(NamedTuple):
    a: float
    b: float


class Curve:
    """Closed plane curve ``t -> (F(t), G(t))`` with TrigPoly components."""

    def __init__(self, x_component: TrigPoly, y_component: TrigPoly):
        self.x_component = x_component
        self.y_component = y_component

    def __repr__(self):
        return f"Curve({self.x_component!r}, {self.y_component!r})"

    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return self.x_component == other.x_component and self.y_component == other.y_component

    def __hash__(self):
        return hash((self.x_component, self.y_component))

    def __call__(self, t):
        return self.x_component(t), self.y_component(t)

    def complex_at(self, t):
        return self.x_component(t) + 1j * self.y_component(t)

    def derivative(self) -> "Curve":
        return Curve(derivative(self.x_component), derivative(self.y_component))

    def linear_image(self, matrix, offset=(0.0, 0.0)) -> "Curve":
        """``L(curve) + offset`` for a 2x2 matrix ``L``."""
        (l11, l12), (l21, l22) = np.asarray(matrix, dtype=float)
        x, y = self.x_component, self.y_component
        return Curve(l11 * x + l12 * y + offset[0], l21 * x + l22 * y + offset[1])

    @cached_property
    def sample_t(self) -> np.ndarray:
        return np.arange(N_SAMPLES) * (TWO_PI / N_SAMPLES)

    @cached_property
    def samples(self) -> np.ndarray:
        """Complex positions at :attr:`sample_t`."""
        return self.complex_at(self.sample_t)

    @cached_property
    def vertex_tree(self) -> cKDTree:
        z = self.samples
        return cKDTree(np.column_stack([z.real, z.imag]))

    @cached_property
    def accel_bound(self) -> float:
        """Upper bound on ``|curve''(t)|`` over the whole period."""
        return math.hypot(self.x_component.derivative_bound(2), self.y_component.derivative_bound(2))

    @cached_property
    def bbox(self) -> tuple[float, float, float, float]:
        """Outer bound ``(x0, y0, x1, y1)`` of the curve's bounding box."""
        h = TWO_PI / N_SAMPLES
        z = self.samples
        out = []
        for comp, vals in ((self.x_component, z.real), (self.y_component, z.imag)):
            # near an extremum the sampled value is off by at most M2 h^2 / 8
            pad = comp.derivative_bound(2) * h * h / 8
            out.append((float(vals.min()) - pad, float(vals.max()) + pad))
        (x0, x1), (y0, y1) = out
        return x0, y0, x1, y1

    @cached_property
    def diameter(self) -> float:
        x0, y0, x1, y1 = self.bbox
        return math.hypot(x1 - x0, y1 - y0)

    @property
    def off_curve_tol(self) -> float:
        return OFF_CURVE_RTOL * self.diameter

    def is_immersed(self) -> bool:
        d = self.derivative()
        speed2 = np.abs(d.complex_at(self.sample_t)) ** 2
        scale = d.x_component.l1_norm() + d.y_component.l1_norm()
        return bool(speed2.min() > (IMMERSION_RTOL * scale) ** 2)

    def to_json(self) -> dict:
        return {"x": self.x_component.to_json(), "y": self.y_component.to_json()}


def _segment_distance(z0, z1):
    """Distance from the origin to segments ``[z0, z1]`` (broadcasting)."""
    d = z1 - z0
    dd = (d * d.conjugate()).real
    with np.errstate(invalid="ignore", divide="ignore"):
        u = np.where(dd > 0, -(z0.conjugate() * d).real / dd, 0.0)
    u = np.clip(u, 0.0, 1.0)
    return np.abs(z0 + u * d)


def min_distance(curve: Curve, x, *, threshold: float | None = None, rtol: float = 1e-6) -> float:
    """Certified lower bound on the distance from ``x`` to ``curve``.

    Branch and bound over parameter intervals. With ``threshold`` set, returns
    as soon as the bound is known to lie on one side of it.
    """
    x = complex(x[0], x[1])
    m2 = curve.accel_bound
    h = TWO_PI / N_SAMPLES
    t_lo = curve.sample_t
    z_lo = curve.samples - x
    z_hi = np.roll(z_lo, -1)
    upper = float(np.abs(z_lo).min())
    atol = 1e-14 * max(curve.diameter, 1e-300)
    while True:
        lower = _segment_distance(z_lo, z_hi) - m2 * h * h / 8
        best = float(lower.min())
        if threshold is not None and (best > threshold or upper <= threshold):
            return max(best, 0.0)
        target = upper * (1 - rtol) - atol
        if best >= target or upper == 0.0:
            return max(best, 0.0)
        keep = lower < target
        if 2 * keep.sum() > MAX_ANGLE_INTERVALS:
            raise NonConvergent("distance refinement exceeded its interval budget")
        t_lo, z_lo, z_hi = t_lo[keep], z_lo[keep], z_hi[keep]
        h /= 2
        t_mid = t_lo + h
        z_mid = curve.complex_at(t_mid) - x
        upper = min(upper, float(np.abs(z_mid).min()))
        t_lo = np.concatenate([t_lo, t_mid])
        z_lo, z_hi = np.concatenate([z_lo, z_mid]), np.concatenate([z_mid, z_hi])


def off_curve_mask(curve: Curve, points: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Boolean mask of points (complex array) at distance > ``tol`` from the curve."""
    tol = curve.off_curve_tol if tol is None else tol
    pts = np.asarray(points, dtype=complex).ravel()
    z = curve.samples
    zn = np.roll(z, -1)
    h = TWO_PI / N_SAMPLES
    slack = curve.accel_bound * h * h / 8
    # every segment lies within its length of its first vertex
    reach = tol + float(np.abs(zn - z).max()) + slack
    dv, _ = curve.vertex_tree.query(np.column_stack([pts.real, pts.imag]))
    out = dv > reach
    for i in np.flatnonzero(~out):
        p = pts[i]
        z0 = z - p
        lower = float(_segment_distance(z0, zn - p).min()) - slack
        if lower > tol:
            out[i] = True
        elif float(np.abs(z0).min()) > tol:
            out[i] = min_distance(curve, (p.real, p.imag), threshold=tol) > tol
    return out.reshape(np.shape(points))


def _require_off_curve(curve: Curve, x) -> None:
    tol = curve.off_curve_tol
    d = min_distance(curve, x, threshold=tol)
    if d <= tol:
        raise OnCurve(f"point {tuple(x)} is within {tol:.3g} of the curve", distance=d)


@dataclass(frozen=True)
class CrossingEvent:
    """One transversal crossing of a horizontal line."""

    t: float
    x_pos: float
    direction: str  # "up" | "down"
    slope: float

    @property
    def sign(self) -> int:
        return 1 if self.direction == "up" else -1


def _events(curve: Curve, roots) -> list[CrossingEvent]:
    if not roots:
        return []
    ts = np.array([r.t for r in roots])
    xs = curve.x_component(ts)
    return [
        CrossingEvent(float(t), float(xp), "up" if r.slope > 0 else "down", r.slope)
        for t, xp, r in zip(ts, xs, roots)
    ]


def crossings_with_line(curve: Curve, b: float) -> list[CrossingEvent]:
    """All crossings of ``curve`` with ``{y = b}`` sorted by parameter."""
    try:
        roots = roots_on_level(curve.y_component, b)
    except DegenerateLevel as exc:
        raise DegenerateRay(str(exc), level=b, t=exc.t) from exc
    return _events(curve, roots)


def crossings_with_lines(curve: Curve, levels) -> list[list[CrossingEvent] | None]:
    """Batched :func:`crossings_with_line`; tangential levels map to None."""
    return [
        None if isinstance(r, DegenerateLevel) else _events(curve, r)
        for r in roots_on_levels(curve.y_component, levels)
    ]


def _ray_counts(events: list[CrossingEvent], a_values, side: str = "right") -> np.ndarray:
    """Signed crossing counts of the rays from ``(a, b)`` for many ``a``."""
    a = np.asarray(a_values, dtype=float)
    if not events:
        return np.zeros(a.shape, dtype=np.int64)
    xs = np.array([e.x_pos for e in events])
    signs = np.array([e.sign for e in events], dtype=np.int64)
    if side == "right":
        hit = xs[None, :] > a.reshape(-1, 1)
        return (hit * signs).sum(axis=1).reshape(a.shape)
    hit = xs[None, :] < a.reshape(-1, 1)
    return -(hit * signs).sum(axis=1).reshape(a.shape)


def rotation_number_ray(curve: Curve, x, *, side: str = "right") -> int:
    """Signed count of crossings of the horizontal ray from ``x``.

    Upward crossings of the rightward ray count +1, downward -1; the
    leftward ray (``side="left"``) uses the opposite signs. A tangential
    level raises :class:`DegenerateRay`; see :func:`rotation_number`.
    """
    _require_off_curve(curve, x)
    return int(_ray_counts(crossings_with_line(curve, x[1]), x[0], side))


def perturbation_step(curve: Curve) -> float:
    x0, y0, x1, y1 = curve.bbox
    return RAY_PERTURB_RTOL * (y1 - y0)


def rotation_number(curve: Curve, x, *, side: str = "right") -> tuple[int, float]:
    """Ray rotation number with the tangential-level fallback.

    Returns ``(value, delta)`` where ``delta`` is the vertical shift that was
    applied to the ray (0.0 when none was needed). On a tangential level both
    ``b + delta`` and ``b - delta`` are tried and must agree.
    """
    _require_off_curve(curve, x)
    try:
        return int(_ray_counts(crossings_with_line(curve, x[1]), x[0], side)), 0.0
    except DegenerateRay:
        pass
    delta = perturbation_step(curve)
    vals = [int(_ray_counts(crossings_with_line(curve, x[1] + s), x[0], side)) for s in (delta, -delta)]
    if vals[0] != vals[1]:
        raise DegenerateRay(f"perturbed rays disagree at {tuple(x)}: {vals}", level=x[1])
    return vals[0], delta


def rotation_number_angle(curve: Curve, x, *, max_intervals: int = MAX_ANGLE_INTERVALS) -> tuple[int, float]:
    """Winding number from accumulated turning angle, with its rounding residual.

    An interval is accepted once the chord subtends less than pi/2 as seen
    from ``x`` and the chord bound keeps the arc away from ``x``; in that
    case the principal angle increment is the exact increment along the arc.
    """
    _require_off_curve(curve, x)
    p = complex(x[0], x[1])
    m2 = curve.accel_bound
    h = TWO_PI / N_SAMPLES
    t_lo = curve.sample_t
    z_lo = curve.samples - p
    z_hi = np.roll(z_lo, -1)
    total = 0.0
    used = t_lo.size
    while t_lo.size:
        dtheta = np.angle(z_hi / z_lo)
        ok = (np.abs(dtheta) < math.pi / 2) & (_segment_distance(z_lo, z_hi) > m2 * h * h / 8)
        total += math.fsum(dtheta[ok])
        bad = ~ok
        if not bad.any():
            break
        used += int(bad.sum())
        if used > max_intervals:
            raise NonConvergent(f"angle refinement exceeded {max_intervals} intervals")
        t_lo, z_lo, z_hi = t_lo[bad], z_lo[bad], z_hi[bad]
        h /= 2
        t_mid = t_lo + h
        z_mid = curve.complex_at(t_mid) - p
        t_lo = np.concatenate([t_lo, t_mid])
        z_lo, z_hi = np.concatenate([z_lo, z_mid]), np.concatenate([z_mid, z_hi])
    raw = total / TWO_PI
    k = round(raw)
    return int(k), abs(raw - k)


def whitney_winding(curve: Curve) -> int:
    """Winding number of the velocity curve about the origin."""
    if not curve.is_immersed():
        raise DegenerateLevel("curve is not immersed")
    return rotation_number_angle(curve.derivative(), (0.0, 0.0))[0]


@dataclass(frozen=True)
class AxisCrossing:
    t: float
    kind: str  # "min" | "max" of f
    tangent: tuple[float, float]
    orientation: str  # "right" | "left"
    ok: bool


def orthogonal_axis_crossings(curve: Curve, tol: float = 1e-8) -> list[AxisCrossing]:
    """Check the tangent of a holonomic curve ``(f', f)`` on the vertical axis.

    At each critical point of ``f`` the tangent ``(f'', f')`` must be
    horizontal (relative to ``tol``), pointing right at minima and left at
    maxima.
    """
    f = curve.y_component
    if not curve.x_component.allclose(derivative(f), rtol=1e-12):
        raise ValueError("curve is not of the form (f', f)")
    d = curve.derivative()
    scale = d.x_component.l1_norm() + d.y_component.l1_norm()
    out = []
    for cp in critical_points(f):
        tx, ty = float(d.x_component(cp.t)), float(d.y_component(cp.t))
        orientation = "right" if tx > 0 else "left"
        expected = "right" if cp.kind == "min" else "left"
        ok = abs(ty) <= tol * max(scale, 1.0) and orientation == expected
        out.append(AxisCrossing(cp.t, cp.kind, (tx, ty), orientation, ok))
    return out


def wall_crossing_pair(curve: Curve, t: float, eps: float | None = None) -> tuple[int, int, float]:
    """Rotation numbers just left and right of ``curve(t)``.

    The probes sit at ``curve(t) + eps_l * n`` and ``curve(t) - eps_r * n``
    with ``n`` the unit left normal. Each side starts at ``1e-3 * diameter``
    (or ``eps``), capped at half the distance to the next branch crossing
    the normal line on that side, and is halved until the probe is off the
    curve. Returns ``(r_left, r_right, max(eps_l, eps_r))``.
    """
    fx, fy = curve.x_component, curve.y_component
    px, py = float(fx(t)), float(fy(t))
    d = curve.derivative()
    tx, ty = float(d.x_component(t)), float(d.y_component(t))
    speed = math.hypot(tx, ty)
    ux, uy = tx / speed, ty / speed
    nx, ny = -uy, ux
    start = 1e-3 * curve.diameter if eps is None else eps
    tol = curve.off_curve_tol
    # parameters where the curve meets the normal line through curve(t)
    along = ux * (fx - px) + uy * (fy - py)
    hits = [r.t for r in roots_on_level(along, 0.0, strict=False)]
    offsets = [nx * (float(fx(s)) - px) + ny * (float(fy(s)) - py) for s in hits]
    others = [o for s, o in zip(hits, offsets) if _circ_dist(s, t) > 1e-9]
    values, used = [], []
    for side in (1.0, -1.0):
        near = min((abs(o) for o in others if o * side > 0), default=math.inf)
        e = min(start, near / 2)
        while e > tol:
            try:
                values.append(rotation_number(curve, (px + side * e * nx, py + side * e * ny))[0])
                used.append(e)
                break
            except OnCurve:
                e /= 2
        else:
            raise OnCurve(f"no clean normal segment at t={t}", distance=near)
    return values[0], values[1], max(used)


def _circ_dist(s, t):
    d = abs(s - t) % TWO_PI
    return min(d, TWO_PI - d)


@dataclass(frozen=True)
class RegionMap:
    bounds: tuple[float, float, float, float]
    nx: int
    ny: int
    values: np.ndarray  # shape (ny, nx), row j is y = y0 + j * dy
    perturbed_rows: tuple[int, ...] = ()

    sentinel = SENTINEL

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.bounds[0], self.bounds[2], self.nx)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.bounds[1], self.bounds[3], self.ny)

    def valid(self) -> np.ndarray:
        return self.values != SENTINEL

    def to_json(self) -> dict:
        return {
            "bounds": [float(v) for v in self.bounds],
            "nx": self.nx,
            "ny": self.ny,
            "values": [int(v) for v in self.values.ravel()],
            "sentinel": SENTINEL,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RegionMap":
        vals = np.array(data["values"], dtype=np.int64).reshape(data["ny"], data["nx"])
        return cls(tuple(data["bounds"]), data["nx"], data["ny"], vals)


def rotation_numbers_at(curve: Curve, points) -> tuple[np.ndarray, list[dict], dict]:
    """Ray rotation numbers at many points, sharing root isolation per level.

    ``points`` is a complex array. Nodes within the off-curve tolerance get
    :data:`SENTINEL`. A tangential level is recomputed at ``b +/- delta``;
    if the two shifted rays disagree on any off-curve point of that level,
    :class:`DegenerateRay` is raised. Returns ``(values, perturbations,
    events)`` where ``events`` maps each evaluated level to its crossings.
    """
    pts = np.asarray(points, dtype=complex)
    flat = pts.ravel()
    mask = off_curve_mask(curve, flat)
    values = np.full(flat.shape, SENTINEL, dtype=np.int64)
    levels, inverse = np.unique(flat.imag, return_inverse=True)
    live = np.unique(inverse[mask])
    perturbations = []
    events_by_level = {}
    rows = crossings_with_lines(curve, levels[live]) if live.size else []
    for li, events in zip(live, rows):
        b = float(levels[li])
        sel = (inverse == li) & mask
        a = flat.real[sel]
        if events is not None:
            vals = _ray_counts(events, a)
        else:
            delta = perturbation_step(curve)
            events = crossings_with_line(curve, b + delta)
            vals = _ray_counts(events, a)
            if np.any(vals != _ray_counts(crossings_with_line(curve, b - delta), a)):
                raise DegenerateRay(f"perturbed rays disagree on level y={b}", level=b)
            perturbations.append({"kind": "ray_level", "y": b, "delta": delta})
        events_by_level[b] = events
        values[sel] = vals
    return values.reshape(pts.shape), perturbations, events_by_level


def grid_rotation_numbers(curve: Curve, xs, ys) -> tuple[np.ndarray, list[dict]]:
    """:func:`rotation_numbers_at` on the grid ``xs`` x ``ys``; rows are y values."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    values, perturbations, _ = rotation_numbers_at(curve, xs[None, :] + 1j * ys[:, None])
    return values, perturbations


def region_map(curve: Curve, bounds, nx: int, ny: int) -> RegionMap:
    """Rotation numbers at the ``nx`` x ``ny`` nodes spanning ``bounds``."""
    if nx < 2 or ny < 2:
        raise ValueError("region map needs at least 2x2 nodes")
    x0, y0, x1, y1 = (float(v) for v in bounds)
    values, perturbations = grid_rotation_numbers(curve, np.linspace(x0, x1, nx), np.linspace(y0, y1, ny))
    ys = np.linspace(y0, y1, ny)
    rows = tuple(int(np.argmin(np.abs(ys - p["y"]))) for p in perturbations)
    return RegionMap((x0, y0, x1, y1), nx, ny, values, rows)


def padded_bounds(curve: Curve, factor: float = 1.2) -> tuple[float, float, float, float]:
    """The curve's bounding box scaled about its center by ``factor``."""
    x0, y0, x1, y1 = curve.bbox
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    hw, hh = (x1 - x0) / 2 * factor, (y1 - y0) / 2 * factor
    return cx - hw, cy - hh, cx + hw, cy + hh
