"""Real trigonometric polynomials on the circle of length 2*pi.

A :class:`TrigPoly` stores ``mean + sum_k a_k cos(kt) + b_k sin(kt)`` for
``k = 1..N``. Differentiation acts blockwise on the pairs ``(a_k, b_k)``, so
every derived function (f', f'' - f, p(d/dt) f, ...) is again a TrigPoly.

Root isolation on level sets is certified rather than sampled: a uniform scan
is refined until each interval is either excluded by a second-order Taylor
bound or known to be monotone, and only then polished by safeguarded Newton.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DegenerateLevel

TWO_PI = 2.0 * math.pi

#: relative tolerance below which |f'| at a root counts as tangential
TRANSVERSAL_RTOL = 1e-8
#: root refinement stops once brackets are this narrow in t
ROOT_TTOL = 1e-12
#: refinement budget for root isolation (intervals alive at once)
_MAX_LIVE_INTERVALS = 1 << 20


class TrigPoly:
    """Immutable real trigonometric polynomial of period 2*pi."""

    __slots__ = ("_mean", "_coeffs")

    def __init__(self, mean=0.0, coeffs=()):
        arr = np.array(coeffs, dtype=float).reshape(-1, 2)
        mean = float(mean)
        if not (math.isfinite(mean) and np.all(np.isfinite(arr))):
            raise ValueError("TrigPoly coefficients must be finite")
        nz = np.flatnonzero(np.any(arr != 0.0, axis=1))
        arr = arr[: nz[-1] + 1] if nz.size else arr[:0]
        arr.setflags(write=False)
        object.__setattr__(self, "_mean", mean)
        object.__setattr__(self, "_coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("TrigPoly is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, value: float) -> "TrigPoly":
        return cls(value)

    @classmethod
    def harmonic(cls, k: int, cos: float = 0.0, sin: float = 0.0) -> "TrigPoly":
        """``cos * cos(kt) + sin * sin(kt)``; ``harmonic(1, sin=1)`` is sin t."""
        if k < 0:
            raise ValueError("frequency must be non-negative")
        if k == 0:
            return cls(cos)
        coeffs = np.zeros((k, 2))
        coeffs[k - 1] = (cos, sin)
        return cls(0.0, coeffs)

    # -- accessors ------------------------------------------------------------

    @property
    def mean(self) -> float:
        return self._mean

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only ``(N, 2)`` array of ``(a_k, b_k)`` rows, k = 1..N."""
        return self._coeffs

    @property
    def degree(self) -> int:
        return self._coeffs.shape[0]

    @property
    def frequencies(self) -> np.ndarray:
        return np.arange(1, self.degree + 1, dtype=float)

    @property
    def complex_coeffs(self) -> np.ndarray:
        """``a_k - i b_k``, so that ``f = mean + Re sum c_k e^{ikt}``."""
        return self._coeffs[:, 0] - 1j * self._coeffs[:, 1]

    def is_constant(self) -> bool:
        return self.degree == 0

    def l1_norm(self) -> float:
        """``|mean| + sum |a_k| + |b_k|``, a bound on ``max |f|``."""
        return abs(self._mean) + float(np.abs(self._coeffs).sum())

    def derivative_bound(self, order: int = 1) -> float:
        """Upper bound ``sum k**order (|a_k| + |b_k|)`` on ``max |f^(order)|``."""
        if order == 0:
            return self.l1_norm()
        return float(self.frequencies**order @ np.abs(self._coeffs).sum(axis=1))

    # -- evaluation -----------------------------------------------------------

    def __call__(self, t):
        return evaluate(self, t)

    def derivative(self) -> "TrigPoly":
        return derivative(self)

    # -- linear structure -----------------------------------------------------

    def _padded(self, n):
        out = np.zeros((n, 2))
        out[: self.degree] = self._coeffs
        return out

    def __add__(self, other):
        if isinstance(other, (int, float)):
            return TrigPoly(self._mean + other, self._coeffs)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        n = max(self.degree, other.degree)
        return TrigPoly(self._mean + other._mean, self._padded(n) + other._padded(n))

    __radd__ = __add__

    def __neg__(self):
        return TrigPoly(-self._mean, -self._coeffs)

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            return self + (-other)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, float, np.floating, np.integer)):
            return NotImplemented
        return TrigPoly(self._mean * scalar, self._coeffs * scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self._mean == other._mean and np.array_equal(self._coeffs, other._coeffs)

    def __hash__(self):
        return hash((self._mean, self._coeffs.tobytes()))

    def allclose(self, other: "TrigPoly", rtol=1e-10, atol=0.0) -> bool:
        """Coefficientwise comparison, tolerance relative to the larger l1 norm."""
        n = max(self.degree, other.degree)
        diff = abs(self._mean - other._mean) + np.abs(self._padded(n) - other._padded(n)).max(initial=0.0)
        return diff <= atol + rtol * max(self.l1_norm(), other.l1_norm())

    def __repr__(self):
        return f"TrigPoly(mean={self._mean!r}, coeffs={self._coeffs.tolist()!r})"

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {"mean": self._mean, "coeffs": self._coeffs.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "TrigPoly":
        return cls(data["mean"], data["coeffs"])


def evaluate(tp: TrigPoly, t):
    """Value of ``tp`` at ``t`` (scalar or array)."""
    t_arr = np.asarray(t, dtype=float)
    if tp.degree == 0:
        out = np.full(t_arr.shape, tp.mean)
    else:
        # powers of e^{it} by repeated multiplication: one exp per point
        z = np.exp(1j * t_arr.ravel())
        powers = np.cumprod(np.broadcast_to(z[:, None], (z.size, tp.degree)), axis=1)
        out = tp.mean + (powers @ tp.complex_coeffs).real
        out = out.reshape(t_arr.shape)
    return float(out) if out.ndim == 0 else out


def derivative(tp: TrigPoly) -> TrigPoly:
    """Termwise derivative: ``(a_k, b_k) -> (k b_k, -k a_k)``."""
    k = tp.frequencies
    a, b = tp.coeffs[:, 0], tp.coeffs[:, 1]
    return TrigPoly(0.0, np.column_stack([k * b, -k * a]))


@dataclass(frozen=True)
class ParamRoot:
    """A parameter ``t`` in ``[0, 2*pi)`` where a TrigPoly meets a level."""

    t: float
    multiplicity_hint: Literal["transversal", "tangential"]
    residual: float
    slope: float
    kind: Literal["min", "max"] | None = None

    @property
    def transversal(self) -> bool:
        return self.multiplicity_hint == "transversal"


def transversality_tol(tp: TrigPoly) -> float:
    return TRANSVERSAL_RTOL * (1.0 + tp.l1_norm())


def _isolate_brackets(tp: TrigPoly, levels: np.ndarray, oversample: int):
    """Certified isolation of the roots of ``tp - c`` on ``[0, 2*pi)`` for each level ``c``.

    Returns ``(lo, hi, idx, stuck, stuck_idx)``: bracket endpoints that each
    hold exactly one simple root of ``tp - levels[idx]``, plus midpoints of
    intervals that could not be resolved because ``|tp'|`` is below the
    transversality tolerance there.
    """
    dtp = derivative(tp)
    m2 = tp.derivative_bound(2)
    tol = transversality_tol(tp)
    # below this width a non-excluded, non-monotone interval has |tp'| < tol
    h_min = max(2.0 * tol / m2, 1e-15) if m2 > 0 else 1e-15

    m = 64 * max(tp.degree, 1) * max(int(oversample), 1)
    nl = levels.size
    grid = np.arange(m) * (TWO_PI / m)
    base = evaluate(tp, grid)
    # the first pass shares samples across levels
    base_mid = evaluate(tp, grid + np.pi / m)
    dbase_mid = evaluate(dtp, grid + np.pi / m)
    lo = np.tile(grid, nl)
    hi = np.tile(np.append(grid[1:], TWO_PI), nl)
    idx = np.repeat(np.arange(nl), m)
    c = levels[idx]
    vlo = np.tile(base, nl) - c
    vhi = np.tile(np.roll(base, -1), nl) - c
    vm = np.tile(base_mid, nl) - c
    dm = np.tile(dbase_mid, nl)

    out_lo, out_hi, out_idx, stuck_mid, stuck_idx = [], [], [], [], []
    while lo.size:
        if lo.size > _MAX_LIVE_INTERVALS:
            raise DegenerateLevel("root isolation did not converge")
        h = hi - lo
        mid = 0.5 * (lo + hi)
        if vm is None:
            c = levels[idx]
            vm = evaluate(tp, mid) - c
            dm = evaluate(dtp, mid)
        excluded = np.abs(vm) > np.abs(dm) * h / 2 + m2 * h * h / 8
        monotone = np.abs(dm) > m2 * h / 2
        # half-open [lo, hi): a zero at hi belongs to the next interval
        change = (vlo == 0.0) | (vlo * vhi < 0.0)
        found = ~excluded & monotone & change
        out_lo.append(lo[found])
        out_hi.append(hi[found])
        out_idx.append(idx[found])
        open_ = ~excluded & ~monotone
        stuck = open_ & (h < h_min)
        stuck_mid.append(mid[stuck])
        stuck_idx.append(idx[stuck])
        split = open_ & ~stuck
        lo_s, hi_s, mid_s, idx_s = lo[split], hi[split], mid[split], idx[split]
        vlo_s, vhi_s, vm_s = vlo[split], vhi[split], vm[split]
        lo = np.concatenate([lo_s, mid_s])
        hi = np.concatenate([mid_s, hi_s])
        idx = np.concatenate([idx_s, idx_s])
        vlo = np.concatenate([vlo_s, vm_s])
        vhi = np.concatenate([vm_s, vhi_s])
        vm = dm = None

    cat = np.concatenate
    return cat(out_lo), cat(out_hi), cat(out_idx), cat(stuck_mid), cat(stuck_idx)


def _polish(tp: TrigPoly, c: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Safeguarded Newton on brackets where ``tp - c`` is monotone with one root."""
    dtp = derivative(tp)
    lo, hi = lo.copy(), hi.copy()
    vlo = evaluate(tp, lo) - c
    t = 0.5 * (lo + hi)
    active = np.arange(t.size)
    for _ in range(200):
        if not active.size:
            break
        ta, la, ha, va = t[active], lo[active], hi[active], vlo[active]
        v = evaluate(tp, ta) - c[active]
        d = evaluate(dtp, ta)
        # cos(k t) carries absolute error ~ eps * k * t; no point going below that
        noise = np.finfo(float).eps * (4.0 + tp.degree * np.abs(ta)) * tp.l1_norm()
        hit = np.abs(v) <= noise
        right = (v * va > 0.0) & ~hit
        la = np.where(right | hit, ta, la)
        ha = np.where(~right | hit, ta, ha)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = ta - v / d
        inside = (step > la) & (step < ha)
        new = np.where(hit, ta, np.where(inside, step, 0.5 * (la + ha)))
        done = hit | (np.abs(new - ta) <= 1e-15 * (1.0 + np.abs(ta))) | (ha - la <= 1e-15)
        t[active], lo[active], hi[active], vlo[active] = new, la, ha, np.where(right, v, va)
        active = active[~done]
    return t


def roots_on_levels(tp: TrigPoly, levels, *, oversample: int = 1) -> list[list[ParamRoot] | DegenerateLevel]:
    """Batched :func:`roots_on_level` in strict mode.

    Entry ``i`` is the sorted root list for ``levels[i]``, or the
    :class:`DegenerateLevel` instance describing why that level is tangential.
    """
    if tp.is_constant():
        raise ValueError("roots_on_level needs a non-constant TrigPoly")
    levels = np.asarray(levels, dtype=float).ravel()
    lo, hi, idx, stuck, stuck_idx = _isolate_brackets(tp, levels, oversample)
    ts = _polish(tp, levels[idx], lo, hi) % TWO_PI
    ts = np.where(ts >= TWO_PI, 0.0, ts)
    slopes = evaluate(derivative(tp), ts)
    resid = np.abs(evaluate(tp, ts) - levels[idx])
    tol = transversality_tol(tp)
    out: list = [[] for _ in range(levels.size)]
    for i in np.unique(stuck_idx):
        t = float(stuck[stuck_idx == i][0])
        out[i] = DegenerateLevel(f"level {float(levels[i])!r} is a critical value", level=float(levels[i]), t=t)
    for i in np.unique(idx[np.abs(slopes) <= tol]):
        if not isinstance(out[i], DegenerateLevel):
            t = float(ts[(idx == i) & (np.abs(slopes) <= tol)][0])
            out[i] = DegenerateLevel(f"level {float(levels[i])!r} touched tangentially", level=float(levels[i]), t=t)
    order = np.lexsort((ts, idx))
    for j in order:
        entry = out[idx[j]]
        if isinstance(entry, list):
            entry.append(ParamRoot(float(ts[j]), "transversal", float(resid[j]), float(slopes[j])))
    return out


def roots_on_level(tp: TrigPoly, c: float, *, strict: bool = True, oversample: int = 1) -> list[ParamRoot]:
    """All ``t`` in ``[0, 2*pi)`` with ``tp(t) == c``, sorted ascending.

    With ``strict`` (the default) a tangential contact raises
    :class:`DegenerateLevel`; otherwise it is returned tagged ``tangential``.
    Degenerate levels are never perturbed here.
    """
    if tp.is_constant():
        raise ValueError("roots_on_level needs a non-constant TrigPoly")
    c = float(c)
    if strict:
        (res,) = roots_on_levels(tp, [c], oversample=oversample)
        if isinstance(res, DegenerateLevel):
            raise res
        return res
    lo, hi, idx, stuck, _ = _isolate_brackets(tp, np.array([c]), oversample)
    ts = _polish(tp, np.full(lo.size, c), lo, hi)
    dtp = derivative(tp)
    tol = transversality_tol(tp)
    roots = []
    for t, hint in [(t, "transversal") for t in ts] + [(t, "tangential") for t in _merge_close(stuck)]:
        t = float(t) % TWO_PI
        slope = float(evaluate(dtp, t))
        if abs(slope) <= tol:
            hint = "tangential"
        roots.append(ParamRoot(t, hint, abs(float(evaluate(tp, t)) - c), slope))
    roots.sort(key=lambda r: r.t)
    return roots


def _merge_close(ts: np.ndarray, gap: float = 1e-9) -> np.ndarray:
    """Collapse clusters of adjacent stuck intervals into one representative."""
    if ts.size == 0:
        return ts
    ts = np.sort(ts)
    keep = np.append(True, np.diff(ts) > gap)
    return ts[keep]


def critical_points(tp: TrigPoly, *, strict: bool = True) -> list[ParamRoot]:
    """Zeros of ``tp'``, each tagged ``min`` or ``max`` by the sign of ``tp''``."""
    if tp.is_constant():
        raise ValueError("a constant TrigPoly has no isolated critical points")
    d1 = derivative(tp)
    out = []
    for r in roots_on_level(d1, 0.0, strict=strict):
        # the slope of tp' is tp'' at the root
        kind = None if not r.transversal else ("min" if r.slope > 0 else "max")
        out.append(ParamRoot(r.t, r.multiplicity_hint, r.residual, r.slope, kind))
    return out


def random_trigpoly(seed: int, degree: int, amplitude: float = 1.0) -> TrigPoly:
    """Random TrigPoly with mean and all coefficients uniform in ``[-amplitude, amplitude]``."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    if not amplitude > 0:
        raise ValueError("amplitude must be positive")
    rng = np.random.default_rng(seed)
    draws = rng.uniform(-amplitude, amplitude, size=2 * degree + 1)
    return TrigPoly(draws[0], draws[1:].reshape(degree, 2))
