"""Command-line front end.

Exit status: 0 when every check passed, 1 when a violation was found (its
witness is in the report), 2 when a degenerate input could not be resolved
by perturbation, 64 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .errors import DegenerateInstance, DegenerateRay, LemmaViolation
from .loewner import (
    PRESETS,
    TheoremConfig,
    build_instance,
    preset_pair,
    recursion_chain,
    sweep_bol,
    sweep_deformation,
    verify_theorem,
)
from .polyops import InterlacedPair, random_interlaced_pair
from .render import render_svg
from .trigpoly import random_trigpoly
from .winding import padded_bounds, region_map

EXIT_OK, EXIT_VIOLATION, EXIT_DEGENERATE, EXIT_USAGE = 0, 1, 2, 64
COMMANDS = ("verify", "claim1", "bol", "divide", "deform", "plot")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int | None = None
    n: int = 8
    f_degree: int = 10
    amplitude: float = 1.0
    spread: float = 1.0
    grid: tuple[int, int] = (20, 20)
    bounds: tuple[float, float, float, float] | None = None
    trials: int = 1000
    points: int = 10
    pairings: int = 200
    pair: str | None = None
    a_roots: tuple[float, ...] | None = None
    b_roots: tuple[float, ...] | None = None
    workers: int = 1
    output: str | None = None
    format: str = "json"
    timing: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if min(self.grid) < 2:
            raise UsageError("grid needs at least 2x2 nodes")
        if self.n < 1 or self.f_degree < 1 or self.trials < 0 or self.points < 1 or self.workers < 1:
            raise UsageError("n, f-degree, points, workers must be positive and trials non-negative")
        if self.amplitude <= 0 or self.spread <= 0:
            raise UsageError("amplitude and spread must be positive")
        uses_roots = self.a_roots is not None or self.b_roots is not None
        if self.seed is None and not (self.command == "divide" and uses_roots):
            raise UsageError(f"{self.command} needs --seed")
        if self.pair is not None and self.pair not in PRESETS:
            raise UsageError(f"unknown pair preset {self.pair!r}; choose from {sorted(PRESETS)}")
        if self.format not in ("json", "text", "svg"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.format == "svg" and self.command != "plot":
            raise UsageError("svg output is only available for plot")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(config: RunConfig, text: str) -> None:
    if config.output:
        with open(config.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _status(passed: bool, degenerate: bool) -> int:
    if not passed:
        return EXIT_VIOLATION
    return EXIT_DEGENERATE if degenerate else EXIT_OK


def _pair_from(config: RunConfig) -> InterlacedPair:
    if config.a_roots is not None or config.b_roots is not None:
        try:
            return InterlacedPair.from_roots(config.a_roots or (), config.b_roots or ())
        except ValueError as exc:
            raise UsageError(f"invalid pair: {exc}") from exc
    if config.pair is not None:
        return preset_pair(config.pair)
    return random_interlaced_pair(config.seed, config.n, config.spread)


def _report_text(name: str, report) -> str:
    lines = [
        f"{name}: {'PASS' if report.passed else 'FAIL'}",
        f"  seed={report.seed} n={report.n} f_degree={report.f_degree} trials={report.trials}",
        f"  points tested={report.points_tested} excluded={report.excluded_points} min rotation={report.min_rotation}",
        f"  violations={len(report.violations)} perturbations={len(report.perturbations)} degenerate={len(report.degenerate)}",
    ]
    lines += [f"  {k}={v}" for k, v in sorted(report.certificates.items())]
    return "\n".join(lines) + "\n"


def _summary_text(summary) -> str:
    lines = [
        f"{summary.name}: {'PASS' if summary.passed else 'FAIL'}",
        f"  seed={summary.seed} instances={summary.instances} checks={summary.checks}",
        f"  failures={len(summary.failures)} skipped={len(summary.skipped)}",
    ]
    lines += [f"  {k}={v}" for k, v in sorted(summary.stats.items())]
    return "\n".join(lines) + "\n"


def _theorem(config: RunConfig, pair: str | None) -> int:
    cfg = TheoremConfig(
        seed=config.seed,
        n_max=config.n,
        f_degree=config.f_degree,
        grid=config.grid,
        trials=config.trials,
        amplitude=config.amplitude,
        spread=config.spread,
        pair=pair,
        exact_degree=pair is not None,
        workers=config.workers,
    )
    report = verify_theorem(cfg)
    if pair is None:
        name = "theorem"
    else:
        name = "claim1" if pair == "x" else "claim2"
    if config.command == "bol":
        bol = sweep_bol(config.seed, config.pairings, config.f_degree, config.amplitude)
        if config.format == "text":
            _emit(config, _report_text(name, report) + _summary_text(bol))
        else:
            _emit(config, _dump({"sweep": report.to_json(include_timing=config.timing), "bol_pairing": bol.to_json()}))
        return _status(report.passed and bol.passed, bool(report.degenerate))
    if config.format == "text":
        text = _report_text(name, report)
        if config.timing:
            text += f"  elapsed_ms={report.elapsed_ms:.1f}\n"
        _emit(config, text)
    else:
        _emit(config, _dump(report.to_json(include_timing=config.timing)))
    return _status(report.passed, bool(report.degenerate))


def _divide(config: RunConfig) -> int:
    pair = _pair_from(config)
    try:
        chain = recursion_chain(pair)
    except LemmaViolation as exc:
        _emit(config, _dump({"violation": str(exc), "witness": exc.witness}))
        return EXIT_VIOLATION
    if config.format == "text":
        lines = [f"n={pair.n} a={list(pair.p_roots)} b={list(pair.q_roots)}"]
        for k, st in enumerate(chain, 1):
            lines.append(
                f"step {k}: c={st.c:.12g} scale={st.scale:.12g} -> n={st.pair.n} "
                f"a={[round(v, 12) for v in st.pair.p_roots]} b={[round(v, 12) for v in st.pair.q_roots]}"
            )
        _emit(config, "\n".join(lines) + "\n")
    else:
        _emit(
            config,
            _dump(
                {
                    "pair": pair.to_json(),
                    "chain": [{"c": st.c, "scale": st.scale, "pair": st.pair.to_json()} for st in chain],
                }
            ),
        )
    return EXIT_OK


def _deform(config: RunConfig) -> int:
    if config.n < 2:
        raise UsageError("deform needs --n >= 2")
    summary = sweep_deformation(config.seed, config.trials, config.n, config.f_degree, config.points, config.spread)
    _emit(config, _summary_text(summary) if config.format == "text" else _dump(summary.to_json()))
    return _status(summary.passed, False)


def _plot(config: RunConfig) -> int:
    pair = _pair_from(config)
    f = random_trigpoly(config.seed, config.f_degree, config.amplitude)
    try:
        curve = build_instance(pair, f).Gamma
        bounds = config.bounds or padded_bounds(curve, 1.2)
        rmap = region_map(curve, bounds, config.grid[0], config.grid[1])
    except (DegenerateInstance, DegenerateRay) as exc:
        sys.stderr.write(f"degenerate input: {exc}\n")
        return EXIT_DEGENERATE
    if config.format == "json":
        _emit(config, _dump({"curve": curve.to_json(), "region_map": rmap.to_json()}))
    else:
        _emit(config, render_svg(curve, rmap))
    valid = rmap.values[rmap.valid()]
    return _status(bool(valid.size == 0 or valid.min() >= 0), False)


def run(config: RunConfig) -> int:
    """Dispatch ``config`` and return the exit status."""
    try:
        if config.command == "verify":
            return _theorem(config, config.pair)
        if config.command == "claim1":
            return _theorem(config, "x")
        if config.command == "bol":
            return _theorem(config, "x2-1")
        if config.command == "divide":
            return _divide(config)
        if config.command == "deform":
            return _deform(config)
        return _plot(config)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _floats(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _grid(text: str) -> tuple[int, int]:
    try:
        nx, ny = (int(v) for v in text.lower().split("x"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected NXxNY, got {text!r}") from exc
    return nx, ny


def _bounds(text: str) -> tuple[float, float, float, float]:
    vals = _floats(text)
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("bounds need x0,y0,x1,y1")
    return vals


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="loewner-lab", description="Verify Loewner's theorem on seeded random instances.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "verify": "theorem sweep over random interlaced pairs",
        "claim1": "sweep of the holonomic curve (f', f) with the direction certificate",
        "bol": "sweep of (f'' - f, f') plus Bol's pairing certificate",
        "divide": "run the division recursion on a pair of root lists",
        "deform": "deformation certificate of the induction step",
        "plot": "SVG of a curve over its rotation-number regions",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("-s", "--seed", type=int)
        p.add_argument("-n", "--n", type=int, default=8 if name != "deform" else 6)
        p.add_argument("-d", "--f-degree", type=int, default=10)
        p.add_argument("-a", "--amplitude", type=float, default=1.0)
        p.add_argument("--spread", type=float, default=1.0)
        p.add_argument("-g", "--grid", type=_grid, default=(200, 200) if name == "plot" else (20, 20))
        p.add_argument("-b", "--bounds", type=_bounds)
        p.add_argument("-t", "--trials", type=int, default=100 if name == "deform" else 1000)
        p.add_argument("--points", type=int, default=10)
        p.add_argument("--pairings", type=int, default=200)
        p.add_argument("-p", "--pair", choices=sorted(PRESETS))
        p.add_argument("--a-roots", type=_floats)
        p.add_argument("--b-roots", type=_floats)
        p.add_argument("-w", "--workers", type=int, default=1)
        p.add_argument("-o", "--output")
        p.add_argument("-f", "--format", default="svg" if name == "plot" else "json")
        p.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte determinism)")
    return parser


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--a-roots -1,0,1`` into ``--a-roots=-1,0,1`` so argparse accepts it."""
    out = []
    it = iter(range(len(argv)))
    for i in it:
        tok = argv[i]
        if tok in ("--a-roots", "--b-roots", "--bounds", "-b") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            next(it, None)
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ns = build_parser().parse_args(_glue_negative_values(argv))
    try:
        config = RunConfig(
            command=ns.command,
            seed=ns.seed,
            n=ns.n,
            f_degree=ns.f_degree,
            amplitude=ns.amplitude,
            spread=ns.spread,
            grid=ns.grid,
            bounds=ns.bounds,
            trials=ns.trials,
            points=ns.points,
            pairings=ns.pairings,
            pair=ns.pair,
            a_roots=ns.a_roots,
            b_roots=ns.b_roots,
            workers=ns.workers,
            output=ns.output,
            format=ns.format,
            timing=ns.timing,
        )
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    raise SystemExit(main())
