"""The nine acceptance criteria at their stated sizes and tolerances.

Each test records one PASS/FAIL line that the terminal summary prints.
"""

import time

import numpy as np

from loewner_lab import cli
from loewner_lab.errors import OnCurve
from loewner_lab.loewner import (
    TheoremConfig,
    holonomic_curve,
    sweep_bol,
    sweep_deformation,
    sweep_division,
    trial_seeds,
    verify_theorem,
)
from loewner_lab.trigpoly import TWO_PI, critical_points, random_trigpoly
from loewner_lab.winding import (
    SENTINEL,
    off_curve_mask,
    orthogonal_axis_crossings,
    padded_bounds,
    rotation_number,
    rotation_number_angle,
    rotation_numbers_at,
    wall_crossing_pair,
    whitney_winding,
)

SEED = 42


def _sweep_line(rep):
    return (
        f"{rep.trials} trials, {rep.points_tested} points, min r = {rep.min_rotation}, "
        f"{len(rep.violations)} violations, {len(rep.perturbations)} perturbations, {len(rep.degenerate)} degenerate"
    )


def _sweep_ok(rep):
    return rep.passed and rep.min_rotation is not None and rep.min_rotation >= 0 and not rep.degenerate


def test_1_claim1_sweep(record):
    start = time.perf_counter()
    rep = verify_theorem(TheoremConfig(seed=SEED, pair="x", f_degree=10, exact_degree=True, grid=(20, 20), trials=1000))
    elapsed = time.perf_counter() - start
    ok = _sweep_ok(rep) and rep.trials == 1000 and elapsed < 60.0
    certs = rep.certificates
    record(
        1,
        ok,
        f"{_sweep_line(rep)}, direction certificate {certs['direction_checked'] - certs['direction_failures']}"
        f"/{certs['direction_checked']}, {elapsed:.1f} s (target < 60 s)",
    )
    assert ok


def test_2_claim2_sweep_and_bol(record):
    rep = verify_theorem(TheoremConfig(seed=SEED, pair="x2-1", f_degree=10, exact_degree=True, grid=(20, 20), trials=1000))
    bol = sweep_bol(SEED, instances=200, degree=10)
    ok = _sweep_ok(rep) and bol.passed and bol.instances == 200
    record(
        2,
        ok,
        f"{_sweep_line(rep)}; Bol pairing on {bol.instances} instances: {bol.stats['pairings']} pairings, "
        f"{len(bol.failures)} uncertified",
    )
    assert ok


def test_3_theorem_sweep(record):
    rep = verify_theorem(TheoremConfig(seed=SEED, n_max=8, f_degree=10, grid=(20, 20), trials=1000))
    ok = _sweep_ok(rep) and rep.trials == 1000
    record(3, ok, f"n <= 8, degree <= 10: {_sweep_line(rep)}")
    assert ok


def test_4_dual_oracle(record):
    evaluations = mismatches = 0
    worst = 0.0
    for i in range(500):
        s_f, s_pt, _, _ = trial_seeds(SEED, i)
        curve = holonomic_curve(random_trigpoly(s_f, 10))
        rng = np.random.default_rng(s_pt)
        x0, y0, x1, y1 = padded_bounds(curve)
        pts = np.empty(0, dtype=complex)
        while pts.size < 100:
            cand = rng.uniform(x0, x1, 128) + 1j * rng.uniform(y0, y1, 128)
            pts = np.concatenate([pts, cand[off_curve_mask(curve, cand)]])
        pts = pts[:100]
        ray, _, _ = rotation_numbers_at(curve, pts)
        for p, r in zip(pts, ray):
            k, residual = rotation_number_angle(curve, (p.real, p.imag))
            evaluations += 1
            mismatches += int(k != r or r == SENTINEL)
            worst = max(worst, residual)
    ok = evaluations >= 50_000 and mismatches == 0 and worst < 0.05
    record(4, ok, f"{evaluations} evaluations, {mismatches} disagreements, max angle residual {worst:.2e} (< 0.05)")
    assert ok


def test_5_division_lemma(record):
    summary = sweep_division(SEED, pairs=1000, n_max=12)
    err = summary.stats["max_reconstruction_error"]
    ok = summary.passed and summary.checks == 1000 and err < 1e-9
    record(5, ok, f"{summary.checks} pairs, {len(summary.failures)} failures, max relative reconstruction error {err:.1e}")
    assert ok


def test_6_deformation(record):
    summary = sweep_deformation(SEED, instances=100, n_max=6, f_degree=10, points=10)
    ok = summary.passed and summary.instances == 100 and summary.checks == 1000
    record(
        6,
        ok,
        f"{summary.instances} instances x 10 points, {summary.stats['events']} events, "
        f"{len(summary.failures)} failures, {len(summary.skipped)} redrawn points",
    )
    assert ok


def test_7_structural(record):
    # wall crossing at 1000 transversal crossings
    walls = wall_bad = 0
    for i in range(100):
        s_f, s_t, _, _ = trial_seeds(SEED, i)
        curve = holonomic_curve(random_trigpoly(s_f, 10))
        for t in np.random.default_rng(s_t).uniform(0, TWO_PI, 10):
            left, right, _ = wall_crossing_pair(curve, t)
            walls += 1
            wall_bad += int(left - right != 1)

    # zero outside the bounding box
    outside = outside_bad = 0
    for i in range(100):
        curve = holonomic_curve(random_trigpoly(trial_seeds(SEED + 1, i)[0], 10))
        x0, y0, x1, y1 = curve.bbox
        w, h = x1 - x0, y1 - y0
        rng = np.random.default_rng(i)
        u = rng.uniform(-1, 2, 40)
        pts = np.concatenate(
            [
                x0 - rng.uniform(1e-3, 1, 10) * w + 1j * (y0 + u[:10] * h),
                x1 + rng.uniform(1e-3, 1, 10) * w + 1j * (y0 + u[10:20] * h),
                x0 + u[20:30] * w + 1j * (y1 + rng.uniform(1e-3, 1, 10) * h),
                x0 + u[30:] * w + 1j * (y0 - rng.uniform(1e-3, 1, 10) * h),
            ]
        )
        vals, _, _ = rotation_numbers_at(curve, pts)
        outside += pts.size
        outside_bad += int(np.count_nonzero(vals != 0))

    # invariance under 100 orientation-preserving linear maps
    maps = map_points = map_bad = 0
    rng = np.random.default_rng(SEED)
    while maps < 100:
        m = rng.normal(size=(2, 2))
        if np.linalg.det(m) < 0.05:
            continue
        offset = rng.normal(size=2)
        curve = holonomic_curve(random_trigpoly(int(rng.integers(2**31)), 10))
        image = curve.linear_image(m, offset)
        x0, y0, x1, y1 = curve.bbox
        for _ in range(10):
            p = np.array([rng.uniform(x0, x1), rng.uniform(y0, y1)])
            try:
                before = rotation_number(curve, p)[0]
                after = rotation_number(image, m @ p + offset)[0]
            except OnCurve:
                continue
            map_points += 1
            map_bad += int(before != after)
        maps += 1

    # orthogonal vertical-axis crossings on 100 holonomic curves
    axis = axis_bad = 0
    for i in range(100):
        out = orthogonal_axis_crossings(holonomic_curve(random_trigpoly(trial_seeds(SEED + 2, i)[0], 10)))
        axis += len(out)
        axis_bad += sum(not c.ok for c in out)

    ok = walls == 1000 and not wall_bad and not outside_bad and maps == 100 and not map_bad and axis and not axis_bad
    record(
        7,
        ok,
        f"wall crossing {walls - wall_bad}/{walls}; outside bbox {outside - outside_bad}/{outside} zero; "
        f"linear maps {maps} ({map_points} points, {map_bad} changed); axis crossings {axis - axis_bad}/{axis} orthogonal",
    )
    assert ok


def test_8_whitney(record, capsys):
    rows = []
    for i in range(100):
        f = random_trigpoly(trial_seeds(SEED, i)[0], 10)
        rows.append((whitney_winding(holonomic_curve(f)), len(critical_points(f))))
    bad = [r for r in rows if 2 * r[0] != r[1]]
    with capsys.disabled():
        print("\nwinding of the tangent of (f', f) = (number of critical points of f) / 2, i.e. half the")
        print("number of vertical-axis crossings; per f: whitney_winding / critical points")
        print(" ".join(f"{w}/{c}" for w, c in rows))
    ok = not bad
    windings = [w for w, _ in rows]
    record(
        8,
        ok,
        f"{len(rows) - len(bad)}/100 f satisfy winding = critical points / 2 "
        f"(windings {min(windings)} to {max(windings)})",
    )
    assert ok


def test_9_determinism(record, tmp_path):
    runs = []
    for k in range(2):
        files = {
            "verify": tmp_path / f"verify{k}.json",
            "bol": tmp_path / f"bol{k}.json",
            "deform": tmp_path / f"deform{k}.json",
            "divide": tmp_path / f"divide{k}.json",
            "plot_json": tmp_path / f"plot{k}.json",
            "plot_svg": tmp_path / f"plot{k}.svg",
        }
        codes = [
            cli.main(["verify", "-s", "42", "-n", "8", "-d", "10", "-t", "100", "-o", str(files["verify"])]),
            cli.main(["bol", "-s", "42", "-t", "50", "--pairings", "50", "-o", str(files["bol"])]),
            cli.main(["deform", "-s", "42", "-t", "10", "-o", str(files["deform"])]),
            cli.main(["divide", "-s", "42", "-n", "12", "-o", str(files["divide"])]),
            cli.main(["plot", "-s", "7", "-p", "x", "-d", "10", "-g", "100x100", "-f", "json", "-o", str(files["plot_json"])]),
            cli.main(["plot", "-s", "7", "-p", "x", "-d", "10", "-g", "400x400", "-o", str(files["plot_svg"])]),
        ]
        runs.append((codes, {k: p.read_bytes() for k, p in files.items()}))
    same = [name for name in runs[0][1] if runs[0][1][name] == runs[1][1][name]]
    ok = runs[0][0] == runs[1][0] == [0] * 6 and len(same) == 6
    record(9, ok, f"{len(same)}/6 outputs byte-identical across two runs (JSON reports and 400x400 SVG)")
    assert ok
