"""slope-nav command line.

Exit codes: 0 success, 1 usage error, 2 numeric or admissibility error.
Data goes to --out (or stdout), diagnostics to stderr. Every subcommand also
accepts --config FILE, a JSON object keyed by flag names; flags given on the
command line win over the file.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

from .convexity import bound_surface, gbar_bound, max_steepness
from .errors import NumericError, SlopeNavError
from .front import envelope_bounds, time_front
from .geodesic import integrate
from .metric import indicatrix
from .params import CORNERS, as_params, classify
from .surface import parse_surface, point_geometry

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2

COLORS = {"MAT": "green", "ZNP": "blue", "CROSS": "red", "RIEM": "white"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kw):
        kw.setdefault("allow_abbrev", False)
        super().__init__(*args, **kw)

    def error(self, message):
        raise UsageError(message)


def fmt(v):
    return format(float(v), ".17g")


def _floats(text, n=None, name="value"):
    if isinstance(text, (list, tuple)):
        vals = [float(v) for v in text]
    elif isinstance(text, (int, float)):
        vals = [float(text)]
    else:
        try:
            vals = [float(v) for v in str(text).split(",") if v.strip()]
        except ValueError:
            raise UsageError(f"bad {name}: {text!r}") from None
    if n is not None and len(vals) != n:
        raise UsageError(f"{name} needs {n} comma-separated numbers, got {text!r}")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"{name} must be finite: {text!r}")
    return vals


def _pairs(text):
    """'0.7:0.8,1:0' or a JSON list of pairs; corner names allowed."""
    if isinstance(text, list):
        items = text
    else:
        items = [s for s in str(text).split(",") if s.strip()]
    out = []
    for it in items:
        if isinstance(it, (list, tuple)):
            out.append((float(it[0]), float(it[1])))
        elif it.strip().upper() in CORNERS:
            out.append(CORNERS[it.strip().upper()])
        else:
            try:
                a, b = it.split(":")
                out.append((float(a), float(b)))
            except ValueError:
                raise UsageError(f"bad (eta, etaTilde) pair {it!r}; use eta:etaTilde") from None
    return out


# defaults per subcommand; argparse defaults stay None so config values can fill in
DEFAULTS = {
    "common": {"surface": "gauss3", "eta": 0.0, "eta_tilde": 0.0, "gbar": 1.0, "out": None,
               "svg": None},
    "indicatrix": {"at": "0,0", "n": 256},
    "geodesic": {"at": "0,0", "theta": 0.0, "T": 1.0, "dt": 1e-3, "drift_tol": 1e-6,
                 "renormalize": False},
    "front": {"center": "0,0", "t": "1", "rays": 32, "dt": 1e-3},
    "envelope": {"center": "0,0", "t": "1", "rays": 64, "dt": 1e-3},
    "convexity": {"region": "-3,-3,3,3", "grid": 256},
    "bound-surface": {"grid": 64, "ceiling": 5.0},
    "sweep": {"center": "0,0", "t": "1", "rays": 32, "dt": 1e-3, "gbars": None, "pairs": None},
}


def build_parser():
    p = _Parser(prog="slope-nav", description="Time-optimal navigation on slippery slopes.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    def common(sp, params=True, gbar=True, svg=True):
        sp.add_argument("--config", help="JSON file with flag values")
        sp.add_argument("--surface", help="gauss3, incline:<a> or expr:<formula>")
        if params:
            sp.add_argument("--eta", type=float)
            sp.add_argument("--eta-tilde", dest="eta_tilde", type=float)
        if gbar:
            sp.add_argument("--gbar", type=float)
        sp.add_argument("--out", help="CSV output file (default stdout)")
        if svg:
            sp.add_argument("--svg", help="also write an SVG plot")

    s = sub.add_parser("indicatrix", help="indicatrix at a point: theta,X,Y,y1,y2")
    common(s)
    s.add_argument("--at")
    s.add_argument("--n", type=int)

    s = sub.add_parser("geodesic", help="one time geodesic: t,x1,x2,y1,y2,Fdrift")
    common(s)
    s.add_argument("--at")
    s.add_argument("--theta", type=float, help="self-velocity angle from steepest descent, radians")
    s.add_argument("--T", type=float)
    s.add_argument("--dt", type=float)
    s.add_argument("--drift-tol", dest="drift_tol", type=float)
    s.add_argument("--renormalize", action="store_const", const=True)

    s = sub.add_parser("front", help="time fronts: t,k,theta,x1,x2,ok")
    common(s)
    s.add_argument("--center")
    s.add_argument("--t", help="comma-separated times")
    s.add_argument("--rays", type=int)
    s.add_argument("--dt", type=float)

    s = sub.add_parser("envelope", help="ZNP/RIEM/MAT/CROSS fronts: case,t,k,theta,x1,x2")
    common(s, params=False)
    s.add_argument("--center")
    s.add_argument("--t")
    s.add_argument("--rays", type=int)
    s.add_argument("--dt", type=float)

    s = sub.add_parser("convexity", help="max steepness m, its location and the gbar bound")
    common(s, gbar=False, svg=False)
    s.add_argument("--region", help="x1min,x2min,x1max,x2max")
    s.add_argument("--grid", type=int)
    s.add_argument("--worst", action="store_const", const=True,
                   help="bound valid for every (eta, etaTilde) (the default when --eta is absent)")

    s = sub.add_parser("bound-surface", help="b0 over the (eta, etaTilde) square")
    s.add_argument("--config")
    s.add_argument("--grid", type=int)
    s.add_argument("--ceiling", type=float)
    s.add_argument("--out")

    s = sub.add_parser("sweep", help="fronts over several gbar values or (eta, etaTilde) pairs")
    common(s)
    s.add_argument("--center")
    s.add_argument("--t")
    s.add_argument("--rays", type=int)
    s.add_argument("--dt", type=float)
    s.add_argument("--gbars", help="comma-separated gbar values")
    s.add_argument("--pairs", help="eta:etaTilde,... or corner names")
    return p


def resolve(args):
    """Merge defaults < config file < command-line flags."""
    cfg = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
        cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    merged = dict(DEFAULTS["common"])
    merged.update(DEFAULTS[args.command])
    known = set(vars(args)) - {"command", "config"}
    for k, v in cfg.items():
        if k not in known:
            raise UsageError(f"unknown config key {k!r} for {args.command}")
        merged[k] = v
    for k in known:
        v = getattr(args, k)
        if v is not None:
            merged[k] = v
        merged.setdefault(k, None)
    merged["_eta_given"] = ("eta" in cfg or getattr(args, "eta", None) is not None
                            or "eta_tilde" in cfg or getattr(args, "eta_tilde", None) is not None)
    return argparse.Namespace(command=args.command, **merged)


def _params(a):
    try:
        return classify(a.eta, a.eta_tilde)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    for r in rows:
        lines.append(",".join(c if isinstance(c, str) else fmt(c) for c in r))
    text = "\n".join(lines) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def case_name(params):
    p = as_params(params)
    for name, pair in CORNERS.items():
        if (p.eta, p.etaTilde) == pair:
            return name
    return None


def write_svg(path, series):
    """series: list of (label, color name or None, list of (x, y) polylines, closed, dashed)."""
    pts = [pt for _, _, lines, _, _ in series for line in lines for pt in line
           if math.isfinite(pt[0]) and math.isfinite(pt[1])]
    if not pts:
        pts = [(0.0, 0.0)]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    w = max(x1 - x0, 1e-9)
    hgt = max(y1 - y0, 1e-9)
    mx, my = 0.05 * w, 0.05 * hgt
    vb = (x0 - mx, -(y1 + my), w + 2 * mx, hgt + 2 * my)
    sw = 0.004 * max(w, hgt)
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           '<svg xmlns="http://www.w3.org/2000/svg" viewBox="%s">' % " ".join(f"{v:.6g}" for v in vb),
           '<rect x="%.6g" y="%.6g" width="%.6g" height="%.6g" fill="white"/>' % vb]
    for label, color, lines, closed, dashed in series:
        for line in lines:
            good = [(x, y) for x, y in line if math.isfinite(x) and math.isfinite(y)]
            if len(good) < 2:
                continue
            if closed:
                good = good + [good[0]]
            d = " ".join(f"{x:.6g},{-y:.6g}" for x, y in good)
            dash = f' stroke-dasharray="{3 * sw:.4g},{2 * sw:.4g}"' if dashed else ""
            title = f"<title>{label}</title>" if label else ""
            if color == "white":
                # RIEM is drawn white on a gray underlay
                out.append(f'<polyline points="{d}" fill="none" stroke="gray" '
                           f'stroke-width="{3 * sw:.4g}"/>')
            c = color or "black"
            out.append(f'<polyline points="{d}" fill="none" stroke="{c}" '
                       f'stroke-width="{sw:.4g}"{dash}>{title}</polyline>')
    out.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(out) + "\n")


def _warn(msg):
    print(f"slope-nav: {msg}", file=sys.stderr)


def cmd_indicatrix(a):
    p = _params(a)
    x1, x2 = _floats(a.at, 2, "--at")
    n = int(a.n)
    if n < 1:
        raise UsageError("--n must be positive")
    geom = point_geometry(a.surface, x1, x2, a.gbar)
    thetas = [2.0 * math.pi * k / n for k in range(n)]
    pts = indicatrix(geom, p, thetas)
    _write_csv(a.out, ["theta", "X", "Y", "y1", "y2"],
               [(q.theta, q.X, q.Y, q.y[0], q.y[1]) for q in pts])
    if a.svg:
        write_svg(a.svg, [(case_name(p) or "indicatrix", COLORS.get(case_name(p)),
                           [[(q.X, q.Y) for q in pts]], True, False)])


def cmd_geodesic(a):
    p = _params(a)
    x0 = _floats(a.at, 2, "--at")
    rows = None
    try:
        path = integrate(a.surface, x0, a.theta, p, a.gbar, a.T, a.dt, a.drift_tol,
                         bool(a.renormalize))
        rows = path.data
        return path
    except NumericError as exc:
        part = getattr(exc, "path", None)
        if part is not None:
            rows = part.data
            _warn(f"partial path of {len(rows)} states written")
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    finally:
        if rows is not None:
            _write_csv(a.out, ["t", "x1", "x2", "y1", "y2", "Fdrift"], rows)
            if a.svg:
                write_svg(a.svg, [("geodesic", COLORS.get(case_name(p)),
                                   [[(r[1], r[2]) for r in rows]], False, False)])


def _times(a):
    ts = _floats(a.t, None, "--t")
    if not ts or any(t <= 0 for t in ts):
        raise UsageError("--t needs positive times")
    return ts


def _rays(a):
    n = int(a.rays)
    if n < 8:
        raise UsageError("--rays must be at least 8")
    return n


def _front_rows(fr, prefix=()):
    rows = []
    for k, (th, e) in enumerate(fr.samples):
        if e is None:
            rows.append(prefix + (fr.t, k, th, math.nan, math.nan, 0))
        else:
            rows.append(prefix + (fr.t, k, th, e[0], e[1], 1))
    return rows


def _report_gaps(fr, label=""):
    if fr.errors:
        k, msg = next(iter(fr.errors.items()))
        _warn(f"{label}t={fr.t:g}: {len(fr.errors)} ray(s) failed, first (ray {k}): {msg}")


def cmd_front(a):
    p = _params(a)
    center = _floats(a.center, 2, "--center")
    n = _rays(a)
    rows, series, fronts = [], [], []
    for t in _times(a):
        fr = time_front(a.surface, center, p, a.gbar, t, n, a.dt, keep_paths=bool(a.svg))
        _report_gaps(fr)
        fronts.append(fr)
        rows += _front_rows(fr)
    _write_csv(a.out, ["t", "k", "theta", "x1", "x2", "ok"], rows)
    if a.svg:
        # geodesics of the longest front dashed, fronts solid
        longest = max(fronts, key=lambda f: f.t)
        series.append(("geodesics", None,
                       [[(r[1], r[2]) for r in pth.data] for pth in longest.paths if pth is not None],
                       False, True))
        for fr in fronts:
            series.append((f"t={fr.t:g}", COLORS.get(case_name(p)),
                           [[tuple(e) for e in fr.endpoints]], True, False))
        write_svg(a.svg, series)


def cmd_envelope(a):
    center = _floats(a.center, 2, "--center")
    n = _rays(a)
    rows, series = [], []
    for t in _times(a):
        env = envelope_bounds(a.surface, center, a.gbar, t, n, a.dt)
        for name in ("ZNP", "RIEM", "MAT", "CROSS"):
            fr = env.fronts[name]
            rows += _front_rows(fr, (name,))
            series.append((f"{name} t={t:g}", COLORS[name], [[tuple(e) for e in fr.endpoints]],
                           True, False))
    _write_csv(a.out, ["case", "t", "k", "theta", "x1", "x2", "ok"], rows)
    if a.svg:
        write_svg(a.svg, series)


def cmd_convexity(a):
    region = _floats(a.region, 4, "--region")
    grid = int(a.grid)
    try:
        surface = parse_surface(a.surface)
        m, (x1, x2) = max_steepness(surface, region, grid)
        params = None if (a.worst or not a._eta_given) else _params(a)
        delta = gbar_bound(surface, region, params, grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    b0 = 0.5 if params is None else params.windBound
    _write_csv(a.out, ["m", "x1", "x2", "b0", "gbar_bound"], [(m, x1, x2, b0, delta)])


def cmd_bound_surface(a):
    try:
        E, Et, B = bound_surface(int(a.grid), a.ceiling)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [(E[i, k], Et[i, k], B[i, k]) for i in range(E.shape[0]) for k in range(E.shape[1])]
    _write_csv(a.out, ["eta", "etaTilde", "b0"], rows)


def cmd_sweep(a):
    center = _floats(a.center, 2, "--center")
    n = _rays(a)
    if (a.gbars is None) == (a.pairs is None):
        raise UsageError("sweep needs exactly one of --gbars or --pairs")
    if a.gbars is not None:
        p = _params(a)
        cases = [(g, p) for g in _floats(a.gbars, None, "--gbars")]
    else:
        try:
            cases = [(a.gbar, classify(*pr)) for pr in _pairs(a.pairs)]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    rows, series = [], []
    palette = ["black", "blue", "red", "green", "purple", "orange", "brown", "teal"]
    for i, (g, p) in enumerate(cases):
        for t in _times(a):
            fr = time_front(a.surface, center, p, g, t, n, a.dt)
            _report_gaps(fr, f"gbar={g:g} ({p.eta:g},{p.etaTilde:g}) ")
            rows += _front_rows(fr, (g, p.eta, p.etaTilde))
            series.append((f"gbar={g:g} eta={p.eta:g} etaTilde={p.etaTilde:g} t={t:g}",
                           COLORS.get(case_name(p), palette[i % len(palette)]),
                           [[tuple(e) for e in fr.endpoints]], True, False))
    _write_csv(a.out, ["gbar", "eta", "etaTilde", "t", "k", "theta", "x1", "x2", "ok"], rows)
    if a.svg:
        write_svg(a.svg, series)


COMMANDS = {"indicatrix": cmd_indicatrix, "geodesic": cmd_geodesic, "front": cmd_front,
            "envelope": cmd_envelope, "convexity": cmd_convexity,
            "bound-surface": cmd_bound_surface, "sweep": cmd_sweep}


_NEG = re.compile(r"^-[\d.]")


def _glue_negatives(argv):
    """'--region -3,-3,3,3' -> '--region=-3,-3,3,3' so argparse does not take it for a flag."""
    out = []
    for tok in argv:
        if out and _NEG.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = out[-1] + "=" + tok
        else:
            out.append(tok)
    return out


def run(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        ns = parser.parse_args(_glue_negatives(list(argv)))
        if ns.command is None:
            raise UsageError("missing subcommand (" + ", ".join(COMMANDS) + ")")
        a = resolve(ns)
        COMMANDS[a.command](a)
    except UsageError as exc:
        _warn(f"usage error: {exc}")
        return EXIT_USAGE
    except NumericError as exc:
        _warn(f"{type(exc).__name__}: {exc}")
        return EXIT_NUMERIC
    except SlopeNavError as exc:
        # bad surface expressions are input errors
        _warn(f"usage error: {exc}")
        return EXIT_USAGE
    except OSError as exc:
        _warn(str(exc))
        return EXIT_USAGE
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
