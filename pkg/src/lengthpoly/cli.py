"""Command-line front end: assemble polygons, run verification suites,
probe the degenerate limits, sweep parameter paths, and draw SVG figures.

JSON and CSV payloads spell every real number as a decimal string at the
configured precision (never a rounded binary double), so identical
configurations produce byte-identical reports.  SVG output is plain
hand-assembled markup with a version comment and fixed-format floats.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Callable

from mpmath import mp, mpf

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - python < 3.11
    import tomli as tomllib

from . import asymptotics, degenerate, farey, markoff, polygon
from ._mp import PrecisionError, boundary_tol, check_bits, default_bits, real_str
from .farey import INFINITY, ZERO, Slope
from .markoff import MarkoffTriple, NotGeometricError, classify
from .polygon import Chart, ConvexityError, FamilyEdge

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

DEPTH_CAP = 16

_VERSION_COMMENT = "lengthpoly 0.1.0"

_GEOMETRIC_KINDS = ("cone", "cusp", "funnel")


class UsageError(Exception):
    """Bad flag combination or unusable input; maps to exit code 2."""


# ---------------------------------------------------------------------------
# argument plumbing


def _parse_slope(text: str) -> Slope:
    t = text.strip()
    if t in ("inf", "infinity", "oo"):
        return INFINITY
    if "/" in t:
        p_s, q_s = t.split("/", 1)
        try:
            return Slope(int(p_s), int(q_s))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse slope {text!r}: {exc}") from exc
    try:
        return Slope(int(t), 1)
    except ValueError as exc:
        raise UsageError(f"cannot parse slope {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lengthpoly",
        description=("Length-increasing deformation polygons of singular "
                     "hyperbolic tori"))
    sub = parser.add_subparsers(dest="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bits", type=int, default=None,
                        help="working precision in bits (>= 64)")
    common.add_argument("--tol", default=None,
                        help="tolerance override (decimal string)")
    common.add_argument("--out", default=None,
                        help="report path (default: stdout)")
    common.add_argument("--workers", type=int, default=None,
                        help="parallel workers for per-slope computation")
    common.add_argument("--config", default=None,
                        help="TOML file with defaults for any flag")
    common.add_argument("--allow-invalid", action="store_true",
                        help="skip the classification gate on input triples")
    common.add_argument("--allow-deep", action="store_true",
                        help=f"allow --depth beyond the cap {DEPTH_CAP}")

    triple_in = argparse.ArgumentParser(add_help=False)
    triple_in.add_argument("--A", default=None, help="first base trace")
    triple_in.add_argument("--B", default=None, help="second base trace")
    triple_in.add_argument("--C", default=None, help="third base trace")
    triple_in.add_argument("--l", default=None,
                           help="translation length coordinate (with --x/--y)")
    triple_in.add_argument("--x", default=None, help="offset coordinate")
    triple_in.add_argument("--y", default=None, help="scale coordinate")

    p_poly = sub.add_parser("polygon", parents=[common, triple_in],
                            help="assemble the polygon and emit a JSON report")
    p_poly.add_argument("--depth", type=int, default=None)
    p_poly.add_argument("--chart", choices=("L1", "octant"), default=None)
    p_poly.add_argument("--region", default=None,
                        help="chart region slope for L1 charts (p/q)")
    p_poly.add_argument("--index0", default=None,
                        help="seed neighbor fixing the family indexing")

    p_verify = sub.add_parser("verify", parents=[common, triple_in],
                              help="run every verification suite")
    p_verify.add_argument("--depth", type=int, default=None)
    p_verify.add_argument("--n-max", type=int, default=None,
                          help="family index range for endpoint suites")
    p_verify.add_argument("--fault-eps", default=None,
                          help="fault injection: perturb the closed-form "
                               "endpoints by this relative amount")

    p_limits = sub.add_parser("limits", parents=[common],
                              help="check a degenerate limit regime")
    p_limits.add_argument("--mode", choices=("one_pinch", "euclidean"),
                          required=True)
    p_limits.add_argument("--l", default=None, help="first squared length")
    p_limits.add_argument("--m", default=None, help="second squared length")
    p_limits.add_argument("--n", default=None, help="third squared length")
    p_limits.add_argument("--steps", type=int, default=None,
                          help="number of shrink samples t = 1, 1/2, ...")
    p_limits.add_argument("--depth", type=int, default=None)
    p_limits.add_argument("--y", default=None,
                          help="pinched-chart scale (one_pinch mode)")
    p_limits.add_argument("--N", type=int, default=None,
                          help="station window for the gap fraction")
    p_limits.add_argument("--n-range", type=int, default=None,
                          help="certificate range n in [-n_range, n_range]")
    p_limits.add_argument("--share-tol", default=None,
                          help="relative tolerance on the gap fraction")

    p_sweep = sub.add_parser("sweep", parents=[common, triple_in],
                             help="sample a parameter path into CSV")
    p_sweep.add_argument("--mode", choices=("shrink", "intercept",
                                            "pinch-share"), required=True)
    p_sweep.add_argument("--m", default=None, help="second squared length")
    p_sweep.add_argument("--n", default=None, help="third squared length")
    p_sweep.add_argument("--steps", type=int, default=None)
    p_sweep.add_argument("--depth", type=int, default=None)
    p_sweep.add_argument("--n-min", type=int, default=None)
    p_sweep.add_argument("--n-max", type=int, default=None)
    p_sweep.add_argument("--y-list", default=None,
                         help="comma list of pinched-chart scales")
    p_sweep.add_argument("--N", type=int, default=None)

    p_render = sub.add_parser("render", parents=[common, triple_in],
                              help="draw the polygon (or a limit) as SVG")
    p_render.add_argument("--depth", type=int, default=None)
    p_render.add_argument("--chart", choices=("L1", "octant"), default=None)
    p_render.add_argument("--region", default=None)
    p_render.add_argument("--index0", default=None)
    p_render.add_argument("--svg", required=True, help="output SVG path")
    p_render.add_argument("--n-min", type=int, default=None,
                          help="first labeled family index")
    p_render.add_argument("--n-max", type=int, default=None,
                          help="last labeled family index")
    p_render.add_argument("--quad", action="store_true",
                          help="overlay the four-sided inner approximation "
                               "(octant chart only)")
    p_render.add_argument("--pinch-y", default=None,
                          help="draw the one-pinch picture for this scale")
    p_render.add_argument("--triples", default=None,
                          help="semicolon list A,B,C;A,B,C;... drawn "
                               "together in the octant chart")
    return parser


# Built-in defaults, applied only after a config file has had its say, so
# precedence is: explicit flag > config file > these.
_DEFAULTS: dict[str, dict] = {
    "polygon": {"depth": 6, "chart": "L1", "region": "1/0", "index0": "0/1"},
    "verify": {"depth": 8, "n_max": 8, "fault_eps": "0"},
    "limits": {"steps": 4, "depth": 6, "N": 50, "n_range": 10,
               "share_tol": "0.01"},
    "sweep": {"steps": 4, "depth": 6, "n_min": -10, "n_max": 10,
              "y_list": "1.1,1.5,2,3", "N": 50},
    "render": {"depth": 5, "chart": "L1", "region": "1/0", "index0": "0/1",
               "n_min": -3, "n_max": 4},
}


def _apply_defaults(args: argparse.Namespace) -> None:
    if getattr(args, "workers", None) is None:
        args.workers = 1
    for key, value in _DEFAULTS.get(args.command, {}).items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)


def _merge_config(args: argparse.Namespace) -> None:
    """Fill unset flags from the TOML config file, if one was given."""
    path = getattr(args, "config", None)
    if not path:
        return
    try:
        with open(path, "rb") as fh:
            table = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for key, value in table.items():
        dest = key.replace("-", "_")
        if not hasattr(args, dest):
            raise UsageError(f"config key {key!r} does not match any flag")
        current = getattr(args, dest)
        if current is None or current is False:
            setattr(args, dest, value)


def _resolve_bits(args: argparse.Namespace) -> int:
    bits = args.bits if args.bits is not None else default_bits()
    try:
        return check_bits(int(bits))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _check_depth(args: argparse.Namespace) -> int:
    depth = int(args.depth)
    if depth < 0:
        raise UsageError("depth must be nonnegative")
    if depth > DEPTH_CAP and not args.allow_deep:
        raise UsageError(
            f"depth {depth} exceeds the cap {DEPTH_CAP}; pass --allow-deep "
            "to override")
    return depth


def _resolve_triple(args: argparse.Namespace, bits: int,
                    require_geometric: bool = True) -> MarkoffTriple:
    have_abc = all(getattr(args, k) is not None for k in "ABC")
    have_lxy = all(getattr(args, k) is not None for k in ("l", "x", "y"))
    if have_abc == have_lxy:
        raise UsageError("give exactly one input form: --A/--B/--C traces "
                         "or --l/--x/--y coordinates")
    if have_lxy:
        t = markoff.triple_from_coords(args.l, args.x, args.y, bits=bits,
                                       mode="raw")
    else:
        t = MarkoffTriple(args.A, args.B, args.C, bits=bits, mode="raw")
    kind = classify(t).kind
    if args.allow_invalid:
        return t
    if kind == "invalid":
        raise UsageError(
            "input triple classifies as invalid; pass --allow-invalid to "
            "proceed anyway")
    if require_geometric and kind not in _GEOMETRIC_KINDS:
        raise UsageError(
            f"input triple classifies as {kind}, not a geometric triple; "
            "use the limits command for degenerate regimes")
    return t


def _emit_text(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, path: str | None) -> None:
    _emit_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", path)


def _emit_csv(header: list[str], rows: list[list[str]],
              path: str | None) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _emit_text(buf.getvalue(), path)


def _classification_payload(t: MarkoffTriple) -> dict:
    c = classify(t)
    return {
        "kind": c.kind,
        "K": real_str(c.K, t.bits),
        "cone_angle": (real_str(c.cone_angle, t.bits)
                       if c.cone_angle is not None else None),
        "boundary_length": (real_str(c.boundary_length, t.bits)
                            if c.boundary_length is not None else None),
    }


# ---------------------------------------------------------------------------
# polygon


def _cmd_polygon(args: argparse.Namespace) -> int:
    bits = _resolve_bits(args)
    depth = _check_depth(args)
    t = _resolve_triple(args, bits)
    region = _parse_slope(args.region)
    index0 = _parse_slope(args.index0)
    chart = Chart(args.chart, region, index0)
    poly = polygon.assemble(t, depth, chart, workers=args.workers)
    suggested = polygon.suggest_assembly_bits(
        float(t.A), float(t.B), float(t.C), depth)
    report = {
        "command": "polygon",
        "triple": {k: real_str(v, bits)
                   for k, v in zip("ABC", t.as_tuple())},
        "classification": _classification_payload(t),
        "depth": depth,
        "bits": bits,
        "suggested_bits": suggested,
        "chart": {"kind": chart.kind, "region": str(chart.region),
                  "index0": str(chart.index0)},
        "orientation": poly.orientation,
        "interior": [real_str(v, bits) for v in poly.interior],
        "edge_count": len(poly.edges),
        "edges": [
            {
                "slope": str(e.slope),
                "P_minus": [real_str(v, bits) for v in e.P_minus.vec],
                "P_plus": [real_str(v, bits) for v in e.P_plus.vec],
                "ratio": real_str(e.ratio, bits),
            }
            for e in poly.edges
        ],
        "vertices": [[real_str(x, bits), real_str(y, bits)]
                     for x, y in poly.vertices],
    }
    _emit_json(report, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _suite(name: str, worst, tolerance, passed: bool, bits: int,
           detail: str = "") -> dict:
    return {
        "name": name,
        "passed": bool(passed),
        "worst": real_str(worst, bits) if worst is not None else None,
        "tolerance": real_str(tolerance, bits) if tolerance is not None
        else None,
        "detail": detail,
    }


def run_verification(t: MarkoffTriple, depth: int, n_max: int = 8,
                     tol=None, fault_eps=0, workers: int = 1) -> dict:
    """Run every verification suite on one triple; returns the report.

    `fault_eps` perturbs the closed-form endpoint formula by a relative
    amount before the comparison suite runs, so a nonzero value must
    make the report fail (used to prove the exit-code contract).
    """
    bits = t.bits
    suites: list[dict] = []
    with mp.workprec(bits):
        base_tol = (mpf(str(tol)) if tol is not None
                    else boundary_tol(bits))
        fault = mpf(str(fault_eps))

        # 1. the commutator-trace combination is the same in every region
        dev = markoff.k_constancy_check(t, min(depth, 8))
        suites.append(_suite("trace-constancy", dev, base_tol,
                             dev <= base_tol, bits,
                             f"depth {min(depth, 8)} sweep"))

        # 2. closed-form sides match the linear-solver sides
        c = markoff.half_trace_coords(t)
        bc = markoff.basis_change(c)
        form_tol = (mpf(str(tol)) if tol is not None else mpf("1e-20"))
        worst = mpf(0)
        for n in range(-n_max, n_max + 1):
            fe = polygon.edge_closed_form(c, n)
            if fault != 0:
                fe = FamilyEdge(
                    fe.n, fe.slope,
                    (fe.minus[0], fe.minus[1] * (1 + fault)),
                    (fe.plus[0], fe.plus[1] * (1 + fault)))
            approx = polygon.family_edge_to_global(c, fe, bc)
            exact = polygon.edge_global(t, fe.slope)
            worst = max(worst,
                        polygon.proj_distance(approx.P_minus, exact.P_minus),
                        polygon.proj_distance(approx.P_plus, exact.P_plus))
        suites.append(_suite("closed-form-endpoints", worst, form_tol,
                             worst <= form_tol, bits,
                             f"family indices [{-n_max}, {n_max}]"))

        # 3. neighbor traces satisfy the three-term recursion
        worst = mpf(0)
        phi_r = markoff.value_at(t, INFINITY)
        for n in range(-n_max, n_max + 1):
            lhs = c.neighbor_value(n + 1) + c.neighbor_value(n - 1)
            rhs = phi_r * c.neighbor_value(n)
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), mpf(1)))
        suites.append(_suite("family-recursion", worst, base_tol,
                             worst <= base_tol, bits, ""))

        # 4. assembled boundary is strictly convex
        bits_needed = max(bits, polygon.suggest_assembly_bits(
            float(t.A), float(t.B), float(t.C), depth))
        t_deep = (t if bits_needed == bits else
                  MarkoffTriple(t.A, t.B, t.C, bits=bits_needed, mode="raw"))
        try:
            poly = polygon.assemble(t_deep, depth, workers=workers)
            suites.append(_suite(
                "convexity", None, None, True, bits,
                f"depth {depth} at {bits_needed} bits, "
                f"{len(poly.vertices)} vertices, "
                f"orientation {poly.orientation}"))
        except ConvexityError as exc:
            suites.append(_suite("convexity", None, None, False, bits,
                                 str(exc)))

        # 5. membership: the interior point is inside, its mirror outside
        inner = polygon.interior_point(t)
        res_in = polygon.membership(t, inner, min(depth, 10))
        mirrored = (-inner[0], inner[1], inner[2])
        res_out = polygon.membership(t, mirrored, min(depth, 10))
        ok = (res_in.kind == "inside" and res_out.kind == "outside"
              and res_out.witness == INFINITY)
        suites.append(_suite(
            "membership", None, None, ok, bits,
            f"interior {res_in.kind}; mirrored {res_out.kind} with witness "
            f"{res_out.witness}"))

        # 6. every side's extension meets the reference axis at its index
        int_tol = (mpf(str(tol)) if tol is not None else mpf("1e-25"))
        worst = mpf(0)
        for n in (-5, 0, 7):
            worst = max(worst, abs(asymptotics.axis_intercept(c, n) - n))
        suites.append(_suite("axis-intercept", worst, int_tol,
                             worst <= int_tol, bits, "indices -5, 0, 7"))

        # 7. side slopes match y tanh(xi) and interleave with chords
        n0 = asymptotics.interleaving_threshold(c)
        worst = mpf(0)
        for n in range(n0, n0 + 6):
            sigma = asymptotics.side_slope(c, n)
            worst = max(worst, abs(sigma - c.y * mp.tanh(c.xi(n))))
        inter_ok = asymptotics.slope_interleaving_ok(c, n0, n0 + 10)
        suites.append(_suite(
            "slope-interleaving", worst, int_tol,
            worst <= int_tol and inter_ok, bits,
            f"from threshold index {n0}"))

    return {
        "command": "verify",
        "triple": {k: real_str(v, bits)
                   for k, v in zip("ABC", t.as_tuple())},
        "classification": _classification_payload(t),
        "depth": depth,
        "bits": bits,
        "fault_eps": real_str(fault, bits),
        "suites": suites,
        "ok": all(s["passed"] for s in suites),
    }


def _cmd_verify(args: argparse.Namespace) -> int:
    bits = _resolve_bits(args)
    depth = _check_depth(args)
    t = _resolve_triple(args, bits)
    report = run_verification(t, depth, n_max=args.n_max, tol=args.tol,
                              fault_eps=args.fault_eps, workers=args.workers)
    for s in report["suites"]:
        status = "pass" if s["passed"] else "FAIL"
        print(f"[{status}] {s['name']}: worst={s['worst']} "
              f"tol={s['tolerance']} {s['detail']}", file=sys.stderr)
    _emit_json(report, args.out)
    return EXIT_OK if report["ok"] else EXIT_VERIFY


# ---------------------------------------------------------------------------
# limits


def _cmd_limits(args: argparse.Namespace) -> int:
    bits = _resolve_bits(args)
    if args.mode == "euclidean":
        if any(getattr(args, k) is None for k in ("l", "m", "n")):
            raise UsageError("euclidean mode needs --l --m --n")
        rc = degenerate.round_cone_test(args.l, args.m, args.n, bits=bits)
        if rc.kind != "inside" and not args.allow_invalid:
            raise UsageError(
                f"squared lengths are {rc.kind} the admissible cone; pass "
                "--allow-invalid to proceed anyway")
        depth = _check_depth(args)
        shrink_bits = max(bits, 320)
        distances = []
        with mp.workprec(shrink_bits):
            for k in range(args.steps):
                t_val = mpf(1) / (2 ** k)
                trip = degenerate.shrink_family(args.l, args.m, args.n,
                                                t_val, bits=shrink_bits,
                                                mode="raw")
                poly = polygon.assemble(trip, depth, Chart("octant"),
                                        workers=args.workers)
                distances.append(degenerate.hausdorff_to_disk(poly))
        decreasing = all(b < a for a, b in zip(distances, distances[1:]))
        tangency = degenerate.octant_tangency_certificate()
        tangent_ok = all(f["tangent"] for f in tangency.values())
        (cx, cy), radius = degenerate.disk_center_radius(bits)
        report = {
            "command": "limits",
            "mode": "euclidean",
            "squared_lengths": [real_str(v, bits)
                                for v in (args.l, args.m, args.n)],
            "cone_verdict": rc.kind,
            "discriminant": real_str(rc.discriminant, bits),
            "hausdorff": [f"{d:.12f}" for d in distances],
            "strictly_decreasing": decreasing,
            "octant_tangency": tangency,
            "disk": {"center": [real_str(cx, bits), real_str(cy, bits)],
                     "radius": real_str(radius, bits)},
            "ok": decreasing and tangent_ok,
        }
        _emit_json(report, args.out)
        return EXIT_OK if report["ok"] else EXIT_VERIFY

    if args.y is None:
        raise UsageError("one_pinch mode needs --y")
    with mp.workprec(bits):
        y = mpf(str(args.y))
        cert_tol = (mpf(str(args.tol)) if args.tol is not None
                    else boundary_tol(bits))
        certs = degenerate.parabola_certificates(
            y, range(-args.n_range, args.n_range + 1), bits)
        worst = max(certs.values())
        share = degenerate.pinch_side_share(y, args.N, bits)
        target = mp.sqrt(y * y - 1) / y
        share_err = abs(share - target) / target
        share_tol = mpf(str(args.share_tol))
        model_ok = worst <= cert_tol and share_err <= share_tol
        report = {
            "command": "limits",
            "mode": "one_pinch",
            "y": real_str(y, bits),
            "circle_length": real_str(2 * mp.acosh(y), bits),
            "certificates": {k: real_str(v, bits) for k, v in certs.items()},
            "certificate_tolerance": real_str(cert_tol, bits),
            "gap_fraction": real_str(share, bits),
            "gap_fraction_target": real_str(target, bits),
            "gap_fraction_error": real_str(share_err, bits),
            "window": args.N,
            "ok": bool(model_ok),
        }
    _emit_json(report, args.out)
    return EXIT_OK if report["ok"] else EXIT_VERIFY


# ---------------------------------------------------------------------------
# sweep


def _cmd_sweep(args: argparse.Namespace) -> int:
    bits = _resolve_bits(args)
    header = ["mode", "param", "value", "K", "y", "gap_proportion",
              "hausdorff"]
    rows: list[list[str]] = []

    if args.mode == "shrink":
        if any(getattr(args, k) is None for k in ("l", "m", "n")):
            raise UsageError("shrink mode needs --l --m --n")
        depth = _check_depth(args)
        shrink_bits = max(bits, 320)
        with mp.workprec(shrink_bits):
            for k in range(args.steps):
                t_val = mpf(1) / (2 ** k)
                trip = degenerate.shrink_family(args.l, args.m, args.n,
                                                t_val, bits=shrink_bits,
                                                mode="raw")
                kind = classify(trip)
                poly = polygon.assemble(trip, depth, Chart("octant"),
                                        workers=args.workers)
                d = degenerate.hausdorff_to_disk(poly)
                rows.append(["shrink", real_str(t_val, bits), "",
                             real_str(kind.K, shrink_bits), "", "",
                             f"{d:.12f}"])
    elif args.mode == "intercept":
        t = _resolve_triple(args, bits)
        c = markoff.half_trace_coords(t)
        k_val = classify(t).K
        with mp.workprec(bits):
            for n in range(args.n_min, args.n_max + 1):
                val = asymptotics.axis_intercept(c, n)
                rows.append(["intercept", str(n), real_str(val, bits),
                             real_str(k_val, bits), real_str(c.y, bits),
                             "", ""])
    else:  # pinch-share
        with mp.workprec(bits):
            for y_text in args.y_list.split(","):
                y = mpf(y_text.strip())
                if not y > 1:
                    raise UsageError(f"pinch scale must exceed 1, got {y}")
                share = degenerate.pinch_side_share(y, args.N, bits)
                rows.append(["pinch_share", real_str(y, bits), "", "",
                             real_str(y, bits), real_str(share, bits), ""])

    _emit_csv(header, rows, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# render


def _fmt(x: float) -> str:
    return f"{x:.6f}"


class _SvgCanvas:
    """Minimal deterministic SVG assembler with y pointing up."""

    def __init__(self, xmin, xmax, ymin, ymax, width=720.0):
        pad = 0.06 * max(xmax - xmin, ymax - ymin, 1e-9)
        self.xmin, self.xmax = xmin - pad, xmax + pad
        self.ymin, self.ymax = ymin - pad, ymax + pad
        self.width = width
        self.scale = width / (self.xmax - self.xmin)
        self.height = (self.ymax - self.ymin) * self.scale
        self.parts: list[str] = []

    def pt(self, x: float, y: float) -> tuple[float, float]:
        return ((x - self.xmin) * self.scale,
                (self.ymax - y) * self.scale)

    def line(self, a, b, stroke="#1a1a1a", width=1.5, dash="") -> None:
        (x1, y1), (x2, y2) = self.pt(*a), self.pt(*b)
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
            f'y2="{_fmt(y2)}" stroke="{stroke}" '
            f'stroke-width="{_fmt(width)}"{d} />')

    def path(self, points, stroke="#777777", width=1.0, dash="4 3",
             close=False) -> None:
        cmds = []
        for i, (x, y) in enumerate(points):
            px, py = self.pt(x, y)
            cmds.append(f"{'M' if i == 0 else 'L'} {_fmt(px)} {_fmt(py)}")
        if close:
            cmds.append("Z")
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<path d="{" ".join(cmds)}" fill="none" stroke="{stroke}" '
            f'stroke-width="{_fmt(width)}"{d} />')

    def dot(self, p, r=3.0, fill="#d62728") -> None:
        x, y = self.pt(*p)
        self.parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" '
            f'fill="{fill}" />')

    def text(self, p, label: str, size=11.0, fill="#1a1a1a") -> None:
        x, y = self.pt(*p)
        self.parts.append(
            f'<text x="{_fmt(x + 4)}" y="{_fmt(y - 4)}" '
            f'font-family="monospace" font-size="{_fmt(size)}" '
            f'fill="{fill}">{label}</text>')

    def document(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" '
                f'viewBox="0 0 {_fmt(self.width)} {_fmt(self.height)}">')
        return "\n".join(
            ['<?xml version="1.0" encoding="UTF-8"?>',
             f"<!-- {_VERSION_COMMENT} -->", head,
             '<rect width="100%" height="100%" fill="#ffffff" />',
             *self.parts, "</svg>"]) + "\n"


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b")


def _polygon_figure(poly: polygon.PolygonApprox, quad_overlay,
                    n_min: int, n_max: int) -> str:
    pts = [(float(x), float(y)) for x, y in poly.vertices]
    if not pts:
        raise UsageError("nothing to draw: the assembled polygon is empty")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    canvas = _SvgCanvas(min(xs), max(xs), min(ys), max(ys))

    closed = poly.chart.kind == "octant"
    if closed:
        canvas.path([(0.0, 0.0), (1.0, 0.0), (0.5, 0.8660254037844386)],
                    stroke="#bbbbbb", width=1.0, dash="2 3", close=True)
    else:
        top = canvas.ymax - 0.02 * (canvas.ymax - canvas.ymin)
        canvas.line((canvas.xmin, top), (canvas.xmax, top),
                    stroke="#999999", width=1.0, dash="2 4")

    for i in range(0, len(pts) - 1, 2):
        canvas.line(pts[i], pts[i + 1], stroke="#1f77b4", width=1.8)
    for i in range(1, len(pts) - 1, 2):
        canvas.line(pts[i], pts[i + 1], stroke="#aaaaaa", width=1.0,
                    dash="3 3")
    if closed:
        canvas.line(pts[-1], pts[0], stroke="#aaaaaa", width=1.0, dash="3 3")

    if poly.chart.kind == "L1":
        wanted = {}
        for n in range(n_min, n_max + 1):
            wanted[farey.neighbor_sequence(poly.chart.region,
                                           poly.chart.index0, n)] = n
        for j, (slope, sign) in enumerate(poly.vertex_edges):
            if slope in wanted:
                n = wanted[slope]
                tag = "+" if sign > 0 else "-"
                canvas.text(pts[j], f"P{n}{tag}")

    if quad_overlay is not None:
        canvas.path(quad_overlay, stroke="#d62728", width=1.2, dash="6 3",
                    close=True)
    return canvas.document()


def _pinch_figure(y: mpf, n_min: int, n_max: int, bits: int) -> str:
    if n_max < n_min:
        raise UsageError("nothing to draw: empty station range")
    edges = [degenerate.one_pinch_edge(y, n, bits)
             for n in range(n_min, n_max + 1)]
    pts = []
    for e in edges:
        pts.append((float(e.minus[0]), float(e.minus[1])))
        pts.append((float(e.plus[0]), float(e.plus[1])))
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    canvas = _SvgCanvas(min(xs), max(xs), min(ys), max(ys))

    yf = float(y)
    drop = (yf - 1.0 / yf) / 4.0
    for dy, color in ((0.0, "#2ca02c"), (-drop, "#9467bd")):
        samples = []
        for k in range(201):
            x = canvas.xmin + (canvas.xmax - canvas.xmin) * k / 200.0
            samples.append((x, x * x / (4.0 * yf) + dy))
        canvas.path(samples, stroke=color, width=1.0, dash="4 3")

    for i in range(0, len(pts) - 1, 2):
        canvas.line(pts[i], pts[i + 1], stroke="#1f77b4", width=1.8)
    for i in range(1, len(pts) - 1, 2):
        canvas.line(pts[i], pts[i + 1], stroke="#aaaaaa", width=1.0,
                    dash="3 3")
    for j, e in enumerate(edges):
        n = n_min + j
        canvas.text(pts[2 * j], f"P{n}-")
        canvas.text(pts[2 * j + 1], f"P{n}+")
    return canvas.document()


def _multi_figure(triples: list[MarkoffTriple], depth: int,
                  workers: int) -> str:
    canvas = _SvgCanvas(0.0, 1.0, 0.0, 0.8660254037844386)
    canvas.path([(0.0, 0.0), (1.0, 0.0), (0.5, 0.8660254037844386)],
                stroke="#bbbbbb", width=1.0, dash="2 3", close=True)
    for i, t in enumerate(triples):
        poly = polygon.assemble(t, depth, Chart("octant"), workers=workers)
        pts = [(float(x), float(y)) for x, y in poly.vertices]
        canvas.path(pts, stroke=_PALETTE[i % len(_PALETTE)], width=1.5,
                    dash="", close=True)
    return canvas.document()


def _cmd_render(args: argparse.Namespace) -> int:
    bits = _resolve_bits(args)

    if args.pinch_y is not None:
        with mp.workprec(bits):
            y = mpf(str(args.pinch_y))
        svg = _pinch_figure(y, args.n_min, args.n_max, bits)
        _emit_text(svg, args.svg)
        return EXIT_OK

    if args.triples is not None:
        depth = _check_depth(args)
        triples = []
        for spec in args.triples.split(";"):
            fields = [f.strip() for f in spec.split(",")]
            if len(fields) != 3:
                raise UsageError(f"bad triple {spec!r}: need A,B,C")
            trip = MarkoffTriple(*fields, bits=bits, mode="raw")
            if classify(trip).kind not in _GEOMETRIC_KINDS:
                raise UsageError(f"triple {spec!r} is not geometric")
            triples.append(trip)
        if not triples:
            raise UsageError("no triples to draw")
        svg = _multi_figure(triples, depth, args.workers)
        _emit_text(svg, args.svg)
        return EXIT_OK

    depth = _check_depth(args)
    t = _resolve_triple(args, bits)
    chart = Chart(args.chart, _parse_slope(args.region),
                  _parse_slope(args.index0))
    poly = polygon.assemble(t, depth, chart, workers=args.workers)
    quad_overlay = None
    if args.quad:
        if chart.kind != "octant":
            raise UsageError("--quad needs the octant chart (two of its "
                             "corners sit at infinity in an L1 chart)")
        mapper = polygon.chart_mapper(t, chart)
        quad = polygon.quadrilateral(t)
        quad_overlay = []
        for corner in quad.corners:
            vec = corner.vec
            if vec[0] + vec[1] + vec[2] < 0:
                vec = tuple(-v for v in vec)
            quad_overlay.append(tuple(map(float, mapper(vec))))
    svg = _polygon_figure(poly, quad_overlay, args.n_min, args.n_max)
    _emit_text(svg, args.svg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry points


_DISPATCH: dict[str, Callable[[argparse.Namespace], int]] = {
    "polygon": _cmd_polygon,
    "verify": _cmd_verify,
    "limits": _cmd_limits,
    "sweep": _cmd_sweep,
    "render": _cmd_render,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        _merge_config(args)
        _apply_defaults(args)
        return _DISPATCH[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotGeometricError, farey.NotNeighborsError,
            farey.BaseRegionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PrecisionError, ConvexityError) as exc:
        slope = getattr(exc, "slope", None)
        report = {
            "error": str(exc),
            "kind": type(exc).__name__,
            "slope": str(slope) if slope is not None else None,
        }
        _emit_json(report, getattr(args, "out", None))
        return EXIT_NUMERIC


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
