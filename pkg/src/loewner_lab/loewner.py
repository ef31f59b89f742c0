"""Executable checks of Loewner's theorem and the steps of its proof.

For an interlaced pair ``(p, q)`` and a periodic ``f`` the curve
``Gamma = (p(d/dt) f, q(d/dt) f)`` has non-negative rotation number about
every point off it. This module builds such instances, verifies the two base
cases (the holonomic curve ``(f', f)`` and Bol's curve ``(f'' - f, f')``),
traces the deformation that lowers the degree of ``p`` by one, and runs
seeded Monte Carlo sweeps over all of it.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateInstance,
    DegenerateLevel,
    DegenerateRay,
    LemmaViolation,
    NotApplicable,
    OnCurve,
    TangentialEvent,
)
from .polyops import (
    InterlacedPair,
    RealPoly,
    apply_operator,
    divide_step,
    random_interlaced_pair,
    verify_division_lemma,
)
from .trigpoly import TWO_PI, TrigPoly, derivative, random_trigpoly, roots_on_level, transversality_tol
from .winding import (
    SENTINEL,
    Curve,
    Point,
    min_distance,
    off_curve_mask,
    padded_bounds,
    rotation_number,
    rotation_numbers_at,
)

#: named pairs: ``x`` gives the holonomic curve, ``x2-1`` gives Bol's curve
PRESETS = {
    "x": ((0.0,), ()),
    "x2-1": ((-1.0, 1.0), (0.0,)),
}

IDENTITY_RTOL = 1e-9
PERTURB_RTOL = 1e-7
MAX_PERTURB_ATTEMPTS = 3


def preset_pair(name: str) -> InterlacedPair:
    a, b = PRESETS[name]
    return InterlacedPair.from_roots(a, b)


def holonomic_curve(f: TrigPoly) -> Curve:
    """``(f', f)``."""
    return Curve(derivative(f), f)


def bol_curve(f: TrigPoly) -> Curve:
    """``(f'' - f, f')``."""
    d1 = derivative(f)
    return Curve(derivative(d1) - f, d1)


# -- instances ---------------------------------------------------------------


@dataclass(frozen=True)
class LoewnerInstance:
    pair: InterlacedPair
    f: TrigPoly
    F: TrigPoly
    G: TrigPoly
    c: float
    r: RealPoly
    H: TrigPoly
    Gamma: Curve
    gamma_next: Curve

    @property
    def n(self) -> int:
        return self.pair.n

    def deformed(self, s: float) -> Curve:
        """``Gamma_s = ((1 - s) G' - c G - H, G)``; ``Gamma_0`` is ``Gamma``."""
        return Curve((1.0 - s) * derivative(self.G) - self.c * self.G - self.H, self.G)

    @property
    def end_map(self) -> np.ndarray:
        """Linear map taking ``gamma_next = (G, H)`` to ``Gamma_1``; determinant 1."""
        return np.array([[-self.c, -1.0], [1.0, 0.0]])


def build_instance(pair: InterlacedPair, f: TrigPoly) -> LoewnerInstance:
    """Apply ``p``, ``q`` and the division remainder ``r`` to ``f``.

    Raises :class:`DegenerateInstance` if ``Gamma`` is not immersed or the
    identity ``F = G' - c G - H`` fails to hold coefficientwise.
    """
    if f.is_constant():
        raise ValueError("f must be non-constant")
    F = apply_operator(pair.p, f)
    G = apply_operator(pair.q, f)
    c, r = divide_step(pair)
    H = apply_operator(r, f)
    if not F.allclose(derivative(G) - c * G - H, rtol=IDENTITY_RTOL):
        raise DegenerateInstance("F != G' - cG - H")
    Gamma = Curve(F, G)
    if G.is_constant() or F.is_constant() or not Gamma.is_immersed():
        raise DegenerateInstance("Gamma is not immersed")
    return LoewnerInstance(pair, f, F, G, c, r, H, Gamma, Curve(G, H))


# -- reports -----------------------------------------------------------------


@dataclass
class VerificationReport:
    """Aggregate outcome of a rotation-number sweep.

    ``violations`` holds one witness per tested point with a negative
    rotation number, so it is empty exactly when ``min_rotation >= 0``.
    ``certificates`` collects counts from auxiliary checks; any entry named
    ``*_failures`` that is non-zero fails the report as well.
    """

    seed: int | None = None
    n: int | None = None
    f_degree: int | None = None
    trials: int = 0
    points_tested: int = 0
    excluded_points: int = 0
    min_rotation: int | None = None
    violations: list = field(default_factory=list)
    perturbations: list = field(default_factory=list)
    degenerate: list = field(default_factory=list)
    certificates: dict = field(default_factory=dict)
    elapsed_ms: float | None = None

    @property
    def certificate_failures(self) -> int:
        return sum(v for k, v in self.certificates.items() if k.endswith("_failures"))

    @property
    def passed(self) -> bool:
        return not self.violations and not self.certificate_failures

    def absorb(self, other: "VerificationReport") -> None:
        self.points_tested += other.points_tested
        self.excluded_points += other.excluded_points
        if other.min_rotation is not None:
            self.min_rotation = (
                other.min_rotation if self.min_rotation is None else min(self.min_rotation, other.min_rotation)
            )
        self.violations += other.violations
        self.perturbations += other.perturbations
        self.degenerate += other.degenerate
        for k, v in other.certificates.items():
            self.certificates[k] = self.certificates.get(k, 0) + v

    def to_json(self, *, include_timing: bool = False) -> dict:
        return {
            "seed": self.seed,
            "n": self.n,
            "f_degree": self.f_degree,
            "trials": self.trials,
            "points_tested": self.points_tested,
            "excluded_points": self.excluded_points,
            "min_rotation": self.min_rotation,
            "violations": self.violations,
            "perturbations": self.perturbations,
            "degenerate": self.degenerate,
            "certificates": dict(sorted(self.certificates.items())),
            "elapsed_ms": round(self.elapsed_ms, 3) if include_timing and self.elapsed_ms is not None else None,
        }


def _as_complex(points) -> np.ndarray:
    return np.array([complex(p[0], p[1]) for p in points], dtype=complex)


def check_points(curve: Curve, points, *, context: dict | None = None) -> tuple[VerificationReport, dict]:
    """Rotation numbers of ``curve`` at ``points``; negative values become violations."""
    pts = points if isinstance(points, np.ndarray) else _as_complex(points)
    values, perturbations, events = rotation_numbers_at(curve, pts)
    flat_v, flat_p = values.ravel(), pts.ravel()
    ok = flat_v != SENTINEL
    report = VerificationReport(points_tested=int(ok.sum()), excluded_points=int((~ok).sum()))
    if ok.any():
        report.min_rotation = int(flat_v[ok].min())
    for i in np.flatnonzero(ok & (flat_v < 0)):
        report.violations.append(
            {**(context or {}), "point": [float(flat_p[i].real), float(flat_p[i].imag)], "rotation": int(flat_v[i])}
        )
    report.perturbations = [{**(context or {}), **p} for p in perturbations]
    return report, events


def grid_for(curve: Curve, nx: int, ny: int, factor: float = 1.2) -> np.ndarray:
    """``ny`` x ``nx`` complex grid over the bounding box scaled by ``factor``."""
    x0, y0, x1, y1 = padded_bounds(curve, factor)
    return np.linspace(x0, x1, nx)[None, :] + 1j * np.linspace(y0, y1, ny)[:, None]


# -- the holonomic curve (f', f) ---------------------------------------------


def verify_claim1(f: TrigPoly, points, *, context: dict | None = None) -> VerificationReport:
    """Rotation numbers of ``(f', f)`` at ``points`` plus the direction certificate.

    On every horizontal level through a test point, crossings in the right
    half-plane (``f' > 0``) must go up and those in the left half-plane must
    go down.
    """
    curve = holonomic_curve(f)
    report, events = check_points(curve, points, context=context)
    checked = failures = 0
    for level_events in events.values():
        for e in level_events:
            if e.x_pos == 0.0:
                continue
            checked += 1
            if (e.x_pos > 0) != (e.direction == "up"):
                failures += 1
    report.certificates = {"direction_checked": checked, "direction_failures": failures}
    return report


# -- Bol's pairing on (f'' - f, f') ------------------------------------------


@dataclass(frozen=True)
class BolPairing:
    t1: float
    t2: float  # real parameter, may exceed 2*pi when the next extremum wraps
    x1: float
    x2: float
    g2_second: float  # g''(t2) = f''(t2)
    g_drop: float  # g(t2) - g(t1)
    certified: bool


@dataclass(frozen=True)
class BolReport:
    point: Point
    side: str
    crossings: int
    pairings: tuple[BolPairing, ...]

    @property
    def passed(self) -> bool:
        return all(p.certified for p in self.pairings)

    def to_json(self) -> dict:
        return {
            "point": list(self.point),
            "side": self.side,
            "crossings": self.crossings,
            "pairings": [p.__dict__ for p in self.pairings],
            "passed": self.passed,
        }


def verify_bol_pairing(f: TrigPoly, x, *, leftward: bool = False) -> BolReport:
    """Pair every wrong-way crossing of the ray from ``x`` with the next extremum of ``g``.

    With ``g(t) = f(t) - b t`` the curve ``(f'' - f, f')`` meets ``{y = b}``
    exactly at critical points of ``g``: maxima are downward crossings and
    minima upward ones. For the rightward ray (``b <= 0``) each downward
    crossing at ``t1`` must be followed by a minimum of ``g`` at the next
    critical point ``t2 > t1`` whose curve point lies strictly further right.
    The leftward ray (``b >= 0``) is the mirror image: upward crossings are
    followed by a maximum lying strictly further left.
    """
    a, b = float(x[0]), float(x[1])
    if not leftward and b > 0:
        raise NotApplicable("rightward pairing needs b <= 0; use the leftward ray")
    if leftward and b < 0:
        raise NotApplicable("leftward pairing needs b >= 0")
    curve = bol_curve(f)
    tol = curve.off_curve_tol
    if min_distance(curve, (a, b), threshold=tol) <= tol:
        raise OnCurve(f"point {(a, b)} is on the curve")
    d1 = derivative(f)
    d2 = derivative(d1)
    roots = roots_on_level(d1, b)
    ts = np.array([r.t for r in roots])
    xs = curve.x_component(ts) if ts.size else ts
    pairings = []
    for i, r in enumerate(roots):
        up = r.slope > 0
        if leftward:
            wrong = up and xs[i] < a
        else:
            wrong = (not up) and xs[i] > a
        if not wrong:
            continue
        j = (i + 1) % len(roots)
        t1 = float(ts[i])
        t2 = float(ts[j]) + (TWO_PI if j <= i else 0.0)
        x1, x2 = float(xs[i]), float(xs[j])
        g2 = float(d2(t2))
        g_drop = (float(f(t2)) - b * t2) - (float(f(t1)) - b * t1)
        if leftward:
            ok = g2 < 0 and g_drop > 0 and x2 < x1 and roots[j].slope < 0
        else:
            ok = g2 > 0 and g_drop < 0 and x2 > x1 and roots[j].slope > 0
        pairings.append(BolPairing(t1, t2, x1, x2, g2, g_drop, bool(ok and t2 > t1)))
    return BolReport(Point(a, b), "left" if leftward else "right", len(roots), tuple(pairings))


# -- the deformation of the induction step -----------------------------------


@dataclass(frozen=True)
class DeformationEvent:
    sigma: float
    tau: float
    determinant: float
    delta_r: int
    g_prime: float
    position_error: float


def deformation_events(instance: LoewnerInstance, x) -> list[DeformationEvent]:
    """All ``(sigma, tau)`` in ``(0, 1) x [0, 2*pi)`` with ``Gamma_sigma(tau) = x``.

    ``G(tau) = b`` fixes the candidate ``tau``; the first coordinate is affine
    in ``s``, giving ``sigma`` directly. The determinant of the tangent and
    the velocity of the moving point is evaluated from its columns, and the
    jump of the rotation number is ``-sign(det)``: the curve moving across a
    fixed point is the point crossing the curve the other way.
    """
    a, b = float(x[0]), float(x[1])
    for s in (0.0, 1.0):
        curve = instance.deformed(s)
        if min_distance(curve, (a, b), threshold=curve.off_curve_tol) <= curve.off_curve_tol:
            raise OnCurve(f"point {(a, b)} lies on Gamma_{s:g}")
    G, H, c = instance.G, instance.H, instance.c
    dG = derivative(G)
    ddG = derivative(dG)
    dH = derivative(H)
    try:
        roots = roots_on_level(G, b)
    except DegenerateLevel as exc:
        raise TangentialEvent(f"G is tangent to level {b}") from exc
    tol = transversality_tol(G)
    events = []
    for r in roots:
        tau = r.t
        gp = float(dG(tau))
        rhs = a + c * float(G(tau)) + float(H(tau))
        if abs(gp) <= tol:
            if abs(rhs) <= tol:
                raise TangentialEvent(f"G'(tau) vanishes at tau={tau}")
            continue
        sigma = 1.0 - rhs / gp
        if not 0.0 < sigma < 1.0:
            continue
        tangent = np.array([(1 - sigma) * float(ddG(tau)) - c * gp - float(dH(tau)), gp])
        velocity = np.array([-gp, 0.0])
        det = float(tangent[0] * velocity[1] - tangent[1] * velocity[0])
        pos = instance.deformed(sigma)(tau)
        err = math.hypot(pos[0] - a, pos[1] - b)
        events.append(DeformationEvent(sigma, tau, det, -int(np.sign(det)), gp, err))
    events.sort(key=lambda e: e.sigma)
    return events


@dataclass(frozen=True)
class DeformationReport:
    point: Point
    r_start: int
    r_end: int
    r_next: int
    events: tuple[DeformationEvent, ...]
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_monotone_deformation(instance: LoewnerInstance, x) -> DeformationReport:
    """Check ``r(Gamma_0, x) - r(Gamma_1, x)`` equals the number of passages through ``x``.

    Also checks that every passage has determinant ``G'(tau)**2 > 0`` and
    that ``Gamma_1`` is the orientation-preserving linear image of
    ``gamma_next``, so ``r(Gamma_1, x) = r(gamma_next, L^-1 x)``.
    """
    x = Point(float(x[0]), float(x[1]))
    events = deformation_events(instance, x)
    r0 = rotation_number(instance.Gamma, x)[0]
    gamma1 = instance.deformed(1.0)
    r1 = rotation_number(gamma1, x)[0]
    L = instance.end_map
    pre = np.linalg.solve(L, np.array(x))
    r_next = rotation_number(instance.gamma_next, (float(pre[0]), float(pre[1])))[0]

    failures = []
    if np.linalg.det(L) <= 0:
        failures.append("end map reverses orientation")
    if not instance.gamma_next.linear_image(L) == gamma1 and not _curves_close(
        instance.gamma_next.linear_image(L), gamma1
    ):
        failures.append("Gamma_1 is not L(gamma_next)")
    if r1 != r_next:
        failures.append(f"r(Gamma_1)={r1} but r(gamma_next, L^-1 x)={r_next}")
    for e in events:
        if not e.determinant > 0:
            failures.append(f"non-positive determinant at sigma={e.sigma}")
        if abs(e.determinant - e.g_prime**2) > 1e-9 * e.g_prime**2:
            failures.append(f"determinant != G'(tau)^2 at sigma={e.sigma}")
    drop = -sum(e.delta_r for e in events)
    if r0 - r1 != drop or drop != len(events):
        failures.append(f"r drop {r0 - r1} vs {len(events)} events")
    if r0 < r1:
        failures.append("rotation number increased along the deformation")
    return DeformationReport(x, r0, r1, r_next, tuple(events), tuple(failures))


def _curves_close(u: Curve, v: Curve) -> bool:
    return u.x_component.allclose(v.x_component, rtol=1e-12) and u.y_component.allclose(v.y_component, rtol=1e-12)


# -- the degree-lowering recursion -------------------------------------------


@dataclass(frozen=True)
class ChainStage:
    pair: InterlacedPair  # (q, r / leading(r)) produced by this step
    c: float
    scale: float  # leading coefficient of r, strictly positive


def recursion_chain(pair: InterlacedPair) -> list[ChainStage]:
    """Divide repeatedly, normalizing each remainder to be monic, down to ``n = 1``."""
    chain = []
    while pair.n > 1:
        report = verify_division_lemma(pair)
        r_monic, scale = report.r.monic()
        if not scale > 0:
            raise LemmaViolation("non-positive remainder scale", witness=report.to_json())
        nxt = InterlacedPair(pair.q, r_monic, pair.q_roots, report.r_roots)
        chain.append(ChainStage(nxt, report.c, scale))
        pair = nxt
    return chain


# -- seeded sweeps -----------------------------------------------------------


def trial_seeds(seed: int, index: int, count: int = 4) -> list[int]:
    """Independent integer seeds for trial ``index`` of a sweep."""
    return [int(s) for s in np.random.SeedSequence([seed, index]).generate_state(count)]


def perturb(f: TrigPoly, seed: int, magnitude: float) -> TrigPoly:
    rng = np.random.default_rng(seed)
    noise = rng.uniform(-magnitude, magnitude, size=1 + 2 * f.degree)
    return TrigPoly(f.mean + noise[0], f.coeffs + noise[1:].reshape(-1, 2))


@dataclass(frozen=True)
class TheoremConfig:
    seed: int = 42
    n_max: int = 8
    f_degree: int = 10
    grid: tuple[int, int] = (20, 20)
    trials: int = 1000
    amplitude: float = 1.0
    spread: float = 1.0
    pair: str | None = None  # preset name, or None for random pairs
    exact_degree: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.trials < 0 or self.n_max < 1 or self.f_degree < 1:
            raise ValueError("trials >= 0, n_max >= 1, f_degree >= 1 required")
        if self.grid[0] < 2 or self.grid[1] < 2:
            raise ValueError("grid needs at least 2x2 nodes")
        if self.pair is not None and self.pair not in PRESETS:
            raise ValueError(f"unknown preset {self.pair!r}")


def draw_trial(config: TheoremConfig, index: int) -> tuple[InterlacedPair, TrigPoly, list[int]]:
    s_pair, s_f, s_shape, s_perturb = trial_seeds(config.seed, index)
    shape = np.random.default_rng(s_shape)
    if config.pair is not None:
        pair = preset_pair(config.pair)
    else:
        pair = random_interlaced_pair(s_pair, int(shape.integers(1, config.n_max + 1)), config.spread)
    degree = config.f_degree if config.exact_degree else int(shape.integers(1, config.f_degree + 1))
    return pair, random_trigpoly(s_f, degree, config.amplitude), [s_perturb]


def _run_trial(config: TheoremConfig, index: int) -> VerificationReport:
    pair, f, (s_perturb,) = draw_trial(config, index)
    nx, ny = config.grid
    ctx = {"trial": index}
    notes = []
    for attempt in range(MAX_PERTURB_ATTEMPTS + 1):
        try:
            instance = build_instance(pair, f)
            points = grid_for(instance.Gamma, nx, ny)
            if config.pair == "x":
                report = verify_claim1(f, points, context=ctx)
            else:
                report, _ = check_points(instance.Gamma, points, context=ctx)
        except (DegenerateInstance, DegenerateRay) as exc:
            magnitude = PERTURB_RTOL * config.amplitude
            f = perturb(f, s_perturb + attempt, magnitude)
            notes.append({**ctx, "kind": "f_coeffs", "attempt": attempt, "magnitude": magnitude, "reason": str(exc)})
            continue
        for v in report.violations:
            v.update({"pair": pair.to_json(), "f": f.to_json()})
        report.perturbations = notes + report.perturbations
        return report
    report = VerificationReport(perturbations=notes)
    report.degenerate.append({**ctx, "pair": pair.to_json(), "f": f.to_json(), "reason": notes[-1]["reason"]})
    return report


def _run_chunk(args) -> list[VerificationReport]:
    config, indices = args
    return [_run_trial(config, i) for i in indices]


def verify_theorem(config: TheoremConfig) -> VerificationReport:
    """Seeded sweep: draw a pair and ``f`` per trial and test ``r >= 0`` on a grid.

    The grid covers the bounding box of ``Gamma`` scaled by 1.2. Degenerate
    draws are retried with ``f`` perturbed by seeded noise of size
    ``1e-7 * amplitude``; trials that stay degenerate are listed under
    ``degenerate``. Trials may run in worker processes; results are merged
    in trial order so the report does not depend on scheduling.
    """
    start = time.perf_counter()
    total = VerificationReport(
        seed=config.seed,
        n=1 if config.pair == "x" else 2 if config.pair == "x2-1" else config.n_max,
        f_degree=config.f_degree,
        trials=config.trials,
    )
    indices = list(range(config.trials))
    if config.workers > 1 and config.trials > 1:
        size = math.ceil(config.trials / (4 * config.workers))
        chunks = [(config, indices[i : i + size]) for i in range(0, config.trials, size)]
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = [r for chunk in pool.map(_run_chunk, chunks) for r in chunk]
    else:
        results = [_run_trial(config, i) for i in indices]
    for r in results:
        total.absorb(r)
    total.elapsed_ms = (time.perf_counter() - start) * 1e3
    return total


# -- sweeps over the individual proof steps ----------------------------------


@dataclass
class SweepSummary:
    """Counts from a sweep of one proof step, with witnesses for any failure."""

    name: str
    seed: int
    instances: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "seed": self.seed,
            "instances": self.instances,
            "checks": self.checks,
            "failures": self.failures,
            "skipped": self.skipped,
            "stats": dict(sorted(self.stats.items())),
            "passed": self.passed,
        }


def _random_off_curve_point(rng, curve: Curve, bounds, *, b_max: float | None = None, b_min: float | None = None):
    x0, y0, x1, y1 = bounds
    if b_max is not None:
        y1 = min(y1, b_max)
    if b_min is not None:
        y0 = max(y0, b_min)
    for _ in range(100):
        p = complex(rng.uniform(x0, x1), rng.uniform(y0, y1))
        if off_curve_mask(curve, np.array([p]))[0]:
            return p
    raise OnCurve("could not draw an off-curve point")


def sweep_bol(seed: int, instances: int = 200, degree: int = 10, amplitude: float = 1.0) -> SweepSummary:
    """Bol pairing on ``instances`` seeded ``(f, x)`` with ``b <= 0`` (rightward ray)."""
    summary = SweepSummary("bol_pairing", seed)
    pairs = with_pairs = 0
    for i in range(instances):
        s_f, s_pt, _, _ = trial_seeds(seed, i)
        f = random_trigpoly(s_f, degree, amplitude)
        curve = bol_curve(f)
        rng = np.random.default_rng(s_pt)
        for attempt in range(MAX_PERTURB_ATTEMPTS + 1):
            p = _random_off_curve_point(rng, curve, padded_bounds(curve, 1.0), b_max=0.0)
            try:
                report = verify_bol_pairing(f, (p.real, p.imag))
                break
            except (DegenerateLevel, OnCurve) as exc:
                summary.skipped.append({"instance": i, "attempt": attempt, "reason": str(exc)})
        else:
            summary.failures.append({"instance": i, "reason": "no usable point"})
            continue
        summary.instances += 1
        pairs += len(report.pairings)
        with_pairs += bool(report.pairings)
        summary.checks += len(report.pairings)
        for pr in report.pairings:
            if not pr.certified:
                summary.failures.append({"instance": i, "f": f.to_json(), **report.to_json()})
                break
    summary.stats = {"pairings": pairs, "instances_with_pairings": with_pairs}
    return summary


def sweep_deformation(
    seed: int, instances: int = 100, n_max: int = 6, f_degree: int = 10, points: int = 10, spread: float = 1.0
) -> SweepSummary:
    """Deformation certificate on seeded instances with ``2 <= n <= n_max``."""
    summary = SweepSummary("deformation", seed)
    events_total = 0
    for i in range(instances):
        s_pair, s_f, s_shape, s_pt = trial_seeds(seed, i)
        shape = np.random.default_rng(s_shape)
        pair = random_interlaced_pair(s_pair, int(shape.integers(2, n_max + 1)), spread)
        f = random_trigpoly(s_f, int(shape.integers(1, f_degree + 1)), 1.0)
        rng = np.random.default_rng(s_pt)
        try:
            inst = build_instance(pair, f)
        except DegenerateInstance as exc:
            summary.skipped.append({"instance": i, "reason": str(exc)})
            continue
        summary.instances += 1
        g0, g1 = inst.deformed(0.0), inst.deformed(1.0)
        bx = np.array([g0.bbox, g1.bbox])
        bounds = (bx[:, 0].min(), bx[:, 1].min(), bx[:, 2].max(), bx[:, 3].max())
        done = 0
        while done < points:
            p = _random_off_curve_point(rng, g0, bounds)
            try:
                rep = verify_monotone_deformation(inst, (p.real, p.imag))
            except (OnCurve, TangentialEvent, DegenerateRay) as exc:
                summary.skipped.append({"instance": i, "point": [p.real, p.imag], "reason": str(exc)})
                continue
            done += 1
            summary.checks += 1
            events_total += len(rep.events)
            if not rep.passed:
                summary.failures.append(
                    {"instance": i, "pair": pair.to_json(), "f": f.to_json(), "point": list(rep.point), "failures": rep.failures}
                )
    summary.stats = {"events": events_total}
    return summary


def sweep_division(seed: int, pairs: int = 1000, n_max: int = 12, spread: float = 1.0) -> SweepSummary:
    """Division lemma on seeded interlaced pairs with ``2 <= n <= n_max``."""
    summary = SweepSummary("division_lemma", seed)
    worst = 0.0
    for i in range(pairs):
        s_pair, _, s_shape, _ = trial_seeds(seed, i)
        n = int(np.random.default_rng(s_shape).integers(2, n_max + 1))
        pair = random_interlaced_pair(s_pair, n, spread)
        summary.instances += 1
        summary.checks += 1
        try:
            report = verify_division_lemma(pair)
        except LemmaViolation as exc:
            summary.failures.append({"instance": i, **exc.witness})
            continue
        worst = max(worst, report.reconstruction_error)
    summary.stats = {"max_reconstruction_error": worst}
    return summary

