"""Command-line front end.

Exit codes: 0 on success, 1 on invalid input, 2 when a check suite fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import hemisphere as hem
from . import schema, svg, suites
from .config import ValidationError, ZeroNotFoundError
from .operator_zoo import KINDS, ZooSpec, build
from .scan_engine import Plane, Region, grid_scan, radial_profile, universal_scan, zero_mask

log = logging.getLogger("cliffps")

COMMANDS = ("scan", "slice", "curve", "oracle-check", "property-suite", "report")
FORMATS = ("csv", "json", "svg")
CURVE_BS = (1.0, 2.0, 2.05)


@dataclass
class RunConfig:
    command: str
    spec: ZooSpec | None = None
    region: Region | None = None
    epsilon: float | None = None
    which: tuple[str, ...] = ("C",)
    axes: tuple[int, ...] | None = None
    out: Path = Path("out")
    formats: tuple[str, ...] = FORMATS
    workers: int = 1
    seed: int = 0
    samples: int = 10_000
    bs: tuple[float, ...] = CURVE_BS
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        if self.epsilon is not None and not self.epsilon > 0:
            raise ValidationError(f"--epsilon must be > 0, got {self.epsilon}")
        if self.workers < 1:
            raise ValidationError(f"--workers must be >= 1, got {self.workers}")
        if self.samples < 1:
            raise ValidationError(f"--samples must be >= 1, got {self.samples}")
        bad = set(self.formats) - set(FORMATS)
        if bad:
            raise ValidationError(f"unknown --format {sorted(bad)}; choose from {','.join(FORMATS)}")
        self.out.mkdir(parents=True, exist_ok=True)
        if not os.access(self.out, os.W_OK):
            raise ValidationError(f"output directory {self.out} is not writable")


def parse_region(text: str, res: str | int) -> Region:
    """``lo:hi^d`` (a cube) or comma-separated ``lo:hi`` per axis."""
    try:
        if "^" in text:
            box, d = text.rsplit("^", 1)
            lo, hi = (float(v) for v in box.split(":"))
            los, his = [lo] * int(d), [hi] * int(d)
        else:
            pairs = [p.split(":") for p in text.split(",")]
            los = [float(p[0]) for p in pairs]
            his = [float(p[1]) for p in pairs]
        counts = [int(r) for r in str(res).split(",")]
    except (ValueError, IndexError):
        raise ValidationError(f"cannot parse --region {text!r} / --res {res!r}; expected e.g. -2:2^2 and 101") from None
    if len(counts) == 1:
        counts *= len(los)
    return Region(tuple(los), tuple(his), tuple(counts))


def _spec_from_args(args) -> ZooSpec:
    if args.spec:
        text = Path(args.spec).read_text() if os.path.exists(args.spec) else args.spec
        try:
            return ZooSpec.from_json(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"--spec is neither a file nor valid JSON: {exc}") from None
    if not args.zoo:
        raise ValidationError("give --zoo KIND or --spec JSON")
    params: dict = {}
    if args.zoo == "two_projection" and args.z is not None:
        params["z"] = args.z
    if args.zoo == "hemisphere":
        if args.b is not None:
            params["b"] = args.b[0]
        if args.n_trunc is not None:
            params["n"] = args.n_trunc
    if args.zoo == "position_momentum" and args.n_trunc is not None:
        params["n"] = args.n_trunc
    if args.zoo == "universal_pair" and args.z_step is not None:
        params["z_step"] = args.z_step
    return ZooSpec(args.zoo, params)


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        epsilon=args.epsilon,
        which=tuple(sorted({w.strip().upper() for w in args.which.split(",") if w.strip()})),
        out=Path(args.out),
        formats=tuple(f.strip() for f in args.format.split(",") if f.strip()),
        workers=args.workers,
        seed=args.seed,
        samples=args.samples,
    )
    if set(cfg.which) - {"C", "Q", "W"}:
        raise ValidationError(f"--which takes letters from c,q,w, got {args.which!r}")
    if args.b is not None:
        cfg.bs = tuple(args.b)
    if args.axes:
        try:
            cfg.axes = tuple(int(v) for v in args.axes.split(","))
        except ValueError:
            raise ValidationError(f"--axes must be comma-separated indices, got {args.axes!r}") from None
    if args.command in ("scan", "slice"):
        cfg.spec = _spec_from_args(args)
    if args.command == "scan":
        default_region = "-2:2^2" if cfg.spec.kind in ("universal_pair", "two_projection") else None
        text = args.region or default_region
        if text is None:
            d = len(cfg.axes) if cfg.axes else cfg.spec.d
            text = f"-1.5:1.5^{d}"
        cfg.region = parse_region(text, args.res)
    cfg.validate()
    return cfg


def _write(cfg: RunConfig, name: str, text: str) -> Path:
    path = cfg.out / name
    path.write_text(text)
    log.info("wrote %s", path)
    return path


def cmd_scan(cfg: RunConfig) -> list[Path]:
    spec, region = cfg.spec, cfg.region
    if spec.kind == "universal_pair":
        grid = universal_scan(region, spec.params["z_step"])
        if cfg.epsilon is not None:
            grid.epsilon = cfg.epsilon
    else:
        a = build(spec)
        plane = None
        if cfg.axes is not None:
            if len(cfg.axes) != region.d or any(not 0 <= ax < a.d for ax in cfg.axes):
                raise ValidationError(f"--axes {cfg.axes} does not fit a {region.d}-axis region in d={a.d}")
            plane = Plane.coordinate(a.d, cfg.axes)
        elif region.d != a.d:
            raise ValidationError(f"region has {region.d} axes but {spec.kind} has d={a.d}; pass --axes")
        grid = grid_scan(a, region, cfg.which, plane=plane, epsilon=cfg.epsilon, workers=cfg.workers)
    grid.meta["spec"] = json.loads(spec.to_json())
    written = []
    if "csv" in cfg.formats:
        written.append(_write(cfg, "grid.csv", grid.to_csv()))
    if "json" in cfg.formats:
        written.append(_write(cfg, "grid.json", grid.to_json()))
    if "svg" in cfg.formats:
        field_name = "C" if "C" in grid.which else grid.which[0]
        values = grid.field(field_name).reshape(region.resolution)
        mask = zero_mask(grid, which=field_name).reshape(region.resolution)
        labels = [f"lambda_{ax + 1}" for ax in (cfg.axes or range(region.d))]
        extent = None
        if region.d >= 2:
            extent = (region.lo[0], region.hi[0], region.lo[1], region.hi[1])
        title = f"mu^{field_name} {spec.kind}"
        written.append(_write(cfg, "heatmap.svg", svg.heatmap(values, mask, labels[:2] if len(labels) > 1 else (labels[0], ""), extent, title)))
        if "Q" in grid.which and spec.kind == "universal_pair":
            qmask = zero_mask(grid, which="Q").reshape(region.resolution)
            written.append(_write(cfg, "heatmap_q.svg", svg.heatmap(grid.mu_q.reshape(region.resolution), qmask, labels, extent, "mu^Q universal_pair")))
    zeros = int(np.count_nonzero(zero_mask(grid, which=grid.which[0])))
    print(f"scan {spec.kind}: {len(grid.lambdas)} points, {zeros} with mu^{grid.which[0]} <= {grid.epsilon:.4g}")
    return written


def cmd_slice(cfg: RunConfig, direction, t_range: str, res: int) -> list[Path]:
    a = build(cfg.spec)
    try:
        t_lo, t_hi = (float(v) for v in t_range.split(":"))
        u = [float(v) for v in direction.split(",")]
    except ValueError:
        raise ValidationError(f"cannot parse --t {t_range!r} or --direction {direction!r}") from None
    ts = np.linspace(t_lo, t_hi, res)
    prof = radial_profile(a, u, ts, cfg.which)
    rows = ["t,mu_c,mu_q,mu_w"]
    for t, s in zip(ts, prof):
        rows.append(",".join([format(t, ".17g")] + ["" if v is None else format(v, ".17g") for v in (s.mu_c, s.mu_q, s.mu_w)]))
    written = [_write(cfg, "slice.csv", "\n".join(rows) + "\n")]
    if "json" in cfg.formats:
        obj = {"direction": u, "t": ts.tolist(), "samples": [s.__dict__ for s in prof]}
        written.append(_write(cfg, "slice.json", json.dumps(obj, sort_keys=True)))
    return written


def f_sign_field(b: float, xs: np.ndarray, zs: np.ndarray) -> np.ndarray:
    """sign of f on the (x, z) lattice; rows follow z, columns follow x."""
    xx, zz = np.meshgrid(xs, zs)
    return np.sign(hem.f_poly(xx, zz, b)).astype(int)


def curve_json(b: float, points: list, xs: np.ndarray, zs: np.ndarray) -> dict:
    def num(v):
        return None if v is None or not np.isfinite(v) else float(v)

    return {
        "schema": "cliffps.curve/1",
        "b": b,
        "experimental": b != 1.0,
        "validated": b <= hem.B_VALIDATED_MAX,
        "points": [
            {"x": num(p.x), "z": p.z, "e": num(p.e_val), "f": num(p.f_val), "eig_small": num(p.eig_small),
             "residual": num(p.residual), "accepted": p.accepted, "cause": p.cause}
            for p in points
        ],
        "f_sign": {"x": xs.tolist(), "z": zs.tolist(), "sign": f_sign_field(b, xs, zs).tolist()},
    }


def cmd_curve(cfg: RunConfig, res: int = 201) -> list[Path]:
    written, series = [], []
    xs = np.linspace(0.0, hem.R_SEARCH_MAX, 61)
    for b in cfg.bs:
        if b > hem.B_VALIDATED_MAX:
            log.warning("b = %g is beyond the validated range b <= %g", b, hem.B_VALIDATED_MAX)
        zs = np.linspace(0.0, b, res) if b > 0 else np.zeros(1)
        pts = hem.curve_trace(b, zs)
        tag = f"b{b:.2f}"
        obj = curve_json(b, pts, xs, np.linspace(0.0, max(b, 1.0), 61))
        if "json" in cfg.formats:
            written.append(_write(cfg, f"curve_{tag}.json", json.dumps(obj, sort_keys=True)))
        if "csv" in cfg.formats:
            rows = ["z,x,e,f,eig_small,residual,accepted,cause"]
            for p in pts:
                rows.append(",".join([format(p.z, ".17g")] + [format(v, ".17g") for v in (p.x, p.e_val, p.f_val, p.eig_small, p.residual)] + [str(int(p.accepted)), p.cause]))
            written.append(_write(cfg, f"curve_{tag}.csv", "\n".join(rows) + "\n"))
        acc = [p for p in pts if p.accepted]
        series.append((f"b = {b:.2f}: {len(acc)} accepted of {len(pts)}", np.array([p.x for p in acc]), np.array([p.z for p in acc])))
        print(f"curve b={b:.2f}: {len(acc)} accepted points" + ("" if b <= hem.B_VALIDATED_MAX else " (outside validated range)"))
    if "svg" in cfg.formats:
        top = max(max(cfg.bs), 1.0)
        written.append(_write(cfg, "curves.svg", svg.curves(series, (0.0, hem.R_SEARCH_MAX, 0.0, top))))
    return written


def _run_suite(cfg: RunConfig, result: suites.SuiteResult) -> int:
    for c in result.checks:
        print(c.line())
    print(f"{result.suite}: {'PASS' if result.passed else 'FAIL'}")
    if "json" in cfg.formats:
        _write(cfg, f"{result.suite}.json", json.dumps(result.to_json_obj(), sort_keys=True, indent=1))
    return 0 if result.passed else 2


def cmd_report(cfg: RunConfig) -> int:
    """Regenerate the figure set into subdirectories of --out and summarize it."""
    jobs = {
        "pauli": (ZooSpec("pauli"), Region.cube(-1.5, 1.5, 3, 31), None),
        "two_projection_z0.50": (ZooSpec("two_projection", {"z": 0.5}), Region.cube(-2, 2, 2, 101), None),
        "universal_pair": (ZooSpec("universal_pair"), Region.cube(-2, 2, 2, 101), None),
        "hemisphere_b1": (ZooSpec("hemisphere", {"b": 1.0, "n": 256}), Region((-1.5, -0.5), (1.5, 1.5), (61, 41)), (0, 2)),
    }
    index = {}
    for name, (spec, region, axes) in jobs.items():
        sub = RunConfig("scan", spec, region, cfg.epsilon, ("C", "Q") if spec.kind == "universal_pair" else ("C",),
                        axes, cfg.out / name, cfg.formats, cfg.workers)
        sub.validate()
        index[name] = [str(p.relative_to(cfg.out)) for p in cmd_scan(sub)]
    sub = RunConfig("curve", out=cfg.out / "curves", formats=cfg.formats, bs=cfg.bs)
    sub.validate()
    index["curves"] = [str(p.relative_to(cfg.out)) for p in cmd_curve(sub)]
    _write(cfg, "index.json", json.dumps(index, indent=1, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cliffps", description="Clifford and quadratic pseudospectra of Hermitian tuples.")
    p.add_argument("--schema", action="store_true", help="print the JSON schemas and exit")
    sub = p.add_subparsers(dest="command")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--zoo", choices=KINDS)
    common.add_argument("--spec", help="ZooSpec as JSON text or a path to a JSON file")
    common.add_argument("--b", type=float, action="append", help="corner height (repeatable for curve)")
    common.add_argument("--z", type=float, help="two_projection parameter")
    common.add_argument("--z-step", type=float, help="fiber spacing for universal_pair")
    common.add_argument("--n-trunc", type=int, help="truncation size")
    common.add_argument("--region", help="lo:hi^d or lo:hi,lo:hi,...")
    common.add_argument("--res", default="41", help="samples per axis (one value or comma list)")
    common.add_argument("--axes", help="coordinate axes the region spans, e.g. 0,2 for the (x, 0, z) plane")
    common.add_argument("--epsilon", type=float, help="zero-set threshold (default: grid spacing)")
    common.add_argument("--which", default="c", help="subset of c,q,w")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=10_000, help="random samples for property-suite")
    common.add_argument("--out", default="out", help="output directory")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--format", default="csv,json,svg")
    common.add_argument("-v", "--verbose", action="store_true")
    for name, text in [
        ("scan", "grid scan with zero-set overlay"),
        ("slice", "pseudospectra along a ray"),
        ("curve", "hemisphere curve data for b in {1, 2, 2.05}"),
        ("oracle-check", "closed-form oracle comparisons"),
        ("property-suite", "randomized property checks"),
        ("report", "regenerate all figure data"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=text)
        if name == "slice":
            sp.add_argument("--direction", default="1,0,0")
            sp.add_argument("--t", default="0:2", help="t range lo:hi")
    return p


_VALUE_OPTIONS = ("--region", "--direction", "--t", "--z", "--b")


def _join_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--region -2:2^2`` into ``--region=-2:2^2`` so argparse does not read the value as a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(sys.argv[1:] if argv is None else list(argv)))
    if args.schema:
        print(schema.dumps())
        return 0
    if not args.command:
        parser.print_help()
        return 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = config_from_args(args)
        if cfg.command == "scan":
            cmd_scan(cfg)
        elif cfg.command == "slice":
            cmd_slice(cfg, args.direction, args.t, int(str(args.res).split(",")[0]))
        elif cfg.command == "curve":
            cmd_curve(cfg)
        elif cfg.command == "oracle-check":
            return _run_suite(cfg, suites.oracle_suite(cfg.seed))
        elif cfg.command == "property-suite":
            return _run_suite(cfg, suites.property_suite(cfg.seed, cfg.samples))
        elif cfg.command == "report":
            return cmd_report(cfg)
    except (ValidationError, ZeroNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0
