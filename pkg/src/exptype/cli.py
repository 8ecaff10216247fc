"""Command-line front end: ``exptype <command> [options]``.

Every command writes CSV (9 significant digits, header row) or, with
``--json``, a JSON document (17 significant digits). Options may also come
from a JSON config file (``--config``); flags given on the command line win.

Exit codes: 0 pass, 1 check failure, 2 input error, 3 numeric failure.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings

import numpy as np

from ._validation import RangeError, as_complex
from .borel import borel_closed_form, borel_series, singular_hull
from .carleman import (
    BoundaryZeroError,
    QuadratureError,
    carleman_table,
    density_bound,
    locate_zeros,
    obstruction_check,
    residual_summary,
)
from .expfun import (
    ZERO,
    FunctionExpr,
    block,
    exact_type,
    exp_term,
    frequency_hull,
    indicator_estimate,
    sine_expr,
)
from .expk import (
    ConditioningError,
    ExpKNorm,
    UnboundedNormError,
    criterion_series_check,
    density_fit,
    membership,
    norm_estimate,
    van_der_corput_alphas,
)
from .fhc import (
    GrowthSpec,
    MembershipError,
    UniversalCandidate,
    build_candidate,
    dyadic_schedule,
    enumerate_targets,
    growth_report,
    identity_target,
    recurrence_report,
    sparse_schedule,
)
from .geometry import ConvexCompact, hull, indicator_of_set, is_horizontal, segment_on_imaginary_axis

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


class InputError(ValueError):
    pass


# -- parsing helpers -----------------------------------------------------------

def _load_json_text(text, what):
    if os.path.isfile(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: {exc.msg} at line {exc.lineno} column {exc.colno} (char {exc.pos})") from exc


def _complex_arg(text):
    """``"1.5"``, ``"2+3j"`` or ``"re,im"``."""
    text = text.strip()
    if "," in text:
        re, im = text.split(",")
        return complex(float(re), float(im))
    return complex(text.replace(" ", ""))


def parse_function(text):
    """A function from JSON text / file, or a shorthand.

    Shorthands: ``zero``, ``sine`` or ``sine:SCALE``, ``exp:A``, ``block:A``,
    ``identity`` (``z + O(z^3)`` from two blocks); ``A`` is ``re,im`` or a
    Python complex literal.
    """
    if text is None:
        raise InputError("a function is required (--function)")
    head, _, arg = text.partition(":")
    try:
        if head == "zero":
            return ZERO
        if head == "sine":
            return sine_expr(float(arg)) if arg else sine_expr()
        if head == "exp":
            return exp_term(_complex_arg(arg))
        if head == "block":
            return block(_complex_arg(arg))
        if head == "identity":
            return identity_target(float(arg) if arg else 1.0)
    except ValueError as exc:
        raise InputError(f"cannot parse function shorthand {text!r}: {exc}") from exc
    data = _load_json_text(text, "function")
    try:
        return FunctionExpr.from_json(data)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"function: {exc}") from exc


def parse_set(text):
    """``segment:a,b`` for ``[-ia, ia] + ib``, or JSON ``{"vertices": [[re, im], ...]}`` / a bare vertex list."""
    if text.startswith("segment:"):
        a, b = (float(v) for v in text[len("segment:"):].split(","))
        return segment_on_imaginary_axis(a, b)
    data = _load_json_text(text, "K")
    try:
        if isinstance(data, list):
            return hull([as_complex(v, "vertex") for v in data])
        return ConvexCompact.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"K: {exc}") from exc


def _floats(text):
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError as exc:
        raise InputError(f"expected a comma-separated list of numbers, got {text!r}") from exc


def _ints(text):
    return [int(v) for v in _floats(text)]


# -- output --------------------------------------------------------------------

def _json_value(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if x is None:
        return "null"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return '"nan"'
        if math.isinf(x):
            return '"inf"' if x > 0 else '"-inf"'
        return format(x, ".17g")
    if isinstance(x, (complex, np.complexfloating)):
        return "[" + _json_value(x.real) + ", " + _json_value(x.imag) + "]"
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, dict):
        return "{" + ", ".join(json.dumps(str(k)) + ": " + _json_value(v) for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_json_value(v) for v in x) + "]"
    raise TypeError(f"cannot serialise {type(x).__name__}")


def dumps(obj):
    """JSON with 17 significant digits per float; complex numbers as ``[re, im]``."""
    return _json_value(obj) + "\n"


def _csv_cell(x):
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".9g")
    if isinstance(x, (complex, np.complexfloating)):
        return format(complex(x), ".9g")
    return str(x)


def to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


class Result:
    """Table rows plus a summary dict; rendered as CSV or JSON."""

    def __init__(self, header, rows, summary, status=EXIT_OK):
        self.header = header
        self.rows = rows
        self.summary = summary
        self.status = status

    def render(self, as_json):
        if as_json:
            recs = [dict(zip(self.header, r)) for r in self.rows]
            return dumps({"rows": recs, "summary": self.summary})
        out = to_csv(self.header, self.rows)
        if self.summary:
            out += "# " + " ".join(f"{k}={_csv_cell(v)}" for k, v in self.summary.items()) + "\n"
        return out


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


# -- commands ------------------------------------------------------------------

def cmd_indicator(a):
    f = parse_function(a.function)
    thetas = _floats(a.thetas) if a.thetas else list(np.linspace(0, 2 * np.pi, a.n_thetas, endpoint=False))
    K = frequency_hull(f) if not f.is_zero else None
    rows, unstable = [], 0
    for t in thetas:
        try:
            s = indicator_estimate(f, t, r_max=a.r_max)
        except RangeError as exc:
            raise RangeError(f"theta={t}: {exc}") from exc
        h = indicator_of_set(K, t) if K is not None else -math.inf
        rows.append((t, s.value, h, s.stable))
        unstable += not s.stable
    return Result(["theta", "estimate", "hull_support", "stable"], rows, {"unstable": unstable})


def _norm_of(a):
    return ExpKNorm(parse_set(a.K), a.n)


def cmd_norm(a):
    f = parse_function(a.function)
    est = norm_estimate(f, _norm_of(a), r_max=a.r_max)
    header = ["value", "certified", "tail_bound"]
    if est.unbounded:
        return Result(header, [], {"unbounded": True, "theta": est.witness_theta}, EXIT_CHECK)
    argmax = "" if est.argmax is None else est.argmax
    return Result(header, [(est.value, est.certified, est.tail_bound)], {"argmax": argmax})


def cmd_membership(a):
    f = parse_function(a.function)
    inside, witness = membership(f, parse_set(a.K))
    return Result(["inside", "witness_theta"], [(inside, "" if witness is None else witness)],
                  {"inside": inside}, EXIT_OK if inside else EXIT_CHECK)


def cmd_series_check(a):
    f = parse_function(a.function)
    rep = criterion_series_check(f, _norm_of(a), k_max=a.k_max, r_max=a.r_max)
    rows = [(int(k), float(v), float(s)) for k, v, s in zip(rep.k, rep.a, rep.partial_sums)]
    lo = max(1, a.k_max // 2)
    summary = {
        "exponent": rep.exponent,
        "converges": bool(rep.converges),
        "max_increment": rep.max_increment(lo, a.k_max),
        "spread": rep.spread(lo, a.k_max),
    }
    return Result(["k", "a_k", "partial_sum"], rows, summary, EXIT_OK if rep.converges else EXIT_CHECK)


def cmd_density_fit(a):
    target = parse_function(a.function)
    norm = _norm_of(a)
    rows = []
    for size in _ints(a.sizes):
        fit = density_fit(target, van_der_corput_alphas(size, a.half_width), norm, r_max=a.r_max)
        rows.append((size, fit.residual_l2, fit.residual_max, fit.condition))
    res = [r[1] for r in rows]
    decreasing = all(y < x for x, y in zip(res, res[1:]))
    return Result(["size", "residual_l2", "residual_max", "condition"], rows, {"strictly_decreasing": decreasing},
                  EXIT_OK if decreasing else EXIT_CHECK)


def cmd_borel(a):
    f = parse_function(a.function)
    if f.is_zero:
        return Result(["z", "closed_form", "series", "abs_diff"], [], {"poles": 0})
    tau = exact_type(f)
    rng = np.random.default_rng(a.seed)
    radius = a.factor * max(tau, 1e-3)
    zs = radius * (1 + rng.random(a.points)) * np.exp(2j * np.pi * rng.random(a.points))
    closed = borel_closed_form(f) if not f.blocks else None
    rows, worst = [], 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for z in zs:
            s, _ = borel_series(f, z, a.terms)
            c = closed(z) if closed is not None else s
            worst = max(worst, abs(s - c))
            rows.append((f"{z.real:.9g}{z.imag:+.9g}j", s.real, s.imag, abs(s - c)))
    summary = {"max_abs_diff": worst, "type": tau}
    ok = worst <= a.tol
    if closed is not None:
        hull_ok = set(singular_hull(closed).vertices) == set(frequency_hull(f).vertices)
        summary["hull_matches"] = hull_ok
        ok = ok and hull_ok
    return Result(["z", "series_re", "series_im", "abs_diff"], rows, summary, EXIT_OK if ok else EXIT_CHECK)


def _candidate(a):
    if getattr(a, "candidate", None):
        try:
            return UniversalCandidate.from_json(_load_json_text(a.candidate, "candidate"))
        except (KeyError, TypeError) as exc:
            raise InputError(f"candidate: {exc}") from exc
    K = parse_set(a.K) if a.K else segment_on_imaginary_axis(a.d, 0.0)
    if a.schedule == "sparse":
        sched = sparse_schedule(GrowthSpec.parse(a.sparse_q), a.sparse_count, max(1, a.targets))
    else:
        gap = 1 if a.schedule == "full" else a.gap
        sched = dyadic_schedule(a.targets, a.horizon, gap)
    return build_candidate(enumerate_targets(a.d, a.targets), sched, K)


def cmd_construct(a):
    K = parse_set(a.K) if a.K else segment_on_imaginary_axis(a.d, 0.0)
    if is_horizontal(K):
        msg = f"K is horizontal: density bound {density_bound(K):g}, no frequently recurrent function exists"
        print(f"exptype: {msg}", file=sys.stderr)
        return Result(["target", "scheduled", "measured"], [], {"aborted": msg}, EXIT_CHECK)
    c = _candidate(a)
    rows, ok = [], True
    for p in range(1, len(c.targets) + 1):
        rep = recurrence_report(c, p, a.radius, a.epsilon)
        sched = len(c.schedule.slots(p)) and 2.0 ** -p / (1 if a.schedule == "full" else a.gap)
        rows.append((p, sched, rep.density))
        ok &= rep.density >= 0.5 * sched
        if a.out_dir:
            _write(os.path.join(a.out_dir, f"recurrence_{p}.csv"), rep.to_csv())
    g = growth_report(c, a.x_max, GrowthSpec.parse(a.q))
    ok &= g.sup_ratio <= a.growth_limit
    if a.out_dir:
        _write(os.path.join(a.out_dir, "candidate.json"), dumps(c.to_json()))
        _write(os.path.join(a.out_dir, "growth.csv"), g.to_csv())
    summary = {"growth_ratio": g.sup_ratio, "terms": c.expr.n_terms, "pass": bool(ok)}
    return Result(["target", "scheduled_density", "measured_density"], rows, summary,
                  EXIT_OK if ok else EXIT_CHECK)


def cmd_recurrence(a):
    c = _candidate(a)
    rep = recurrence_report(c, a.target, a.radius, a.epsilon)
    rows = [(int(n), bool(e < a.epsilon), float(e)) for n, e in zip(rep.slots, rep.sup_error)]
    return Result(["slot", "pass", "sup_error"], rows, {"density": rep.density})


def cmd_growth(a):
    c = _candidate(a)
    g = growth_report(c, a.x_max, GrowthSpec.parse(a.q))
    rows = [(int(n), float(x), float(v), float(r)) for n, x, v, r in zip(g.cells, g.argmax, g.value, g.ratio)]
    ok = a.limit is None or g.sup_ratio <= a.limit
    return Result(["cell", "x", "abs_f", "ratio"], rows, {"sup_ratio": g.sup_ratio},
                  EXIT_OK if ok else EXIT_CHECK)


def cmd_zeros(a):
    f = parse_function(a.function)
    box = _floats(a.box)
    if len(box) != 4:
        raise InputError("--box needs x0,x1,y0,y1")
    zl = locate_zeros(f, box, a.resolution)
    rows = [(z.real, z.imag, m) for z, m in zl.zeros]
    return Result(["re", "im", "multiplicity"], rows, {"count": int(sum(m for _, m in zl.zeros))})


def cmd_carleman(a):
    f = parse_function(a.function)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        table = carleman_table(f, _floats(a.radii), a.t_min, strip=a.strip)
    rows = [(r.R, r.lhs, r.rhs, r.residual) for r in table]
    spread, slope = residual_summary(table)
    ok = spread <= a.max_range and abs(slope) <= a.max_slope
    return Result(["R", "lhs", "rhs", "residual"], rows, {"residual_range": spread, "trend_slope": slope},
                  EXIT_OK if ok else EXIT_CHECK)


def cmd_obstruct(a):
    f = _candidate(a) if a.candidate else parse_function(a.function)
    rep = obstruction_check(f, a.horizon, a.radius, a.epsilon)
    rows = [(z.real, z.imag, m) for z, m in rep.zeros.zeros]
    return Result(["re", "im", "multiplicity"], rows, rep.to_json(),
                  EXIT_OK if rep.verdict == "CONSISTENT" else EXIT_CHECK)


# -- parser --------------------------------------------------------------------

def _common(p):
    p.add_argument("--config", help="JSON file with option values (flags win)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")


def _function_opt(p):
    p.add_argument("--function", "-f",
                   help="function JSON (text or file) or shorthand: zero, sine[:s], exp:A, block:A, identity[:d]")


def _norm_opts(p):
    p.add_argument("--K", default="segment:1,0", help="segment:a,b for [-ia,ia]+ib, or vertex JSON")
    p.add_argument("--n", type=int, default=1, help="index of the weight")


def _candidate_opts(p):
    p.add_argument("--candidate", help="candidate JSON written by construct")
    p.add_argument("--d", type=float, default=1.0)
    p.add_argument("--targets", type=int, default=3)
    p.add_argument("--horizon", type=int, default=4096)
    p.add_argument("--gap", type=int, default=8)
    p.add_argument("--K", default=None)
    p.add_argument("--schedule", choices=["dyadic", "full", "sparse"], default="dyadic")
    p.add_argument("--sparse-q", default="log", help="growth spec for the sparse schedule")
    p.add_argument("--sparse-count", type=int, default=4)


def build_parser():
    parser = argparse.ArgumentParser(prog="exptype", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("indicator", help="indicator estimate vs. support function of the frequency hull")
    _common(p); _function_opt(p)
    p.add_argument("--thetas", help="comma-separated angles")
    p.add_argument("--n-thetas", type=int, default=64)
    p.add_argument("--r-max", type=float, default=200.0)
    p.set_defaults(run=cmd_indicator)

    p = sub.add_parser("norm", help="weighted sup norm estimate")
    _common(p); _function_opt(p); _norm_opts(p)
    p.add_argument("--r-max", type=float, default=50.0)
    p.set_defaults(run=cmd_norm)

    p = sub.add_parser("membership", help="is the diagram inside K")
    _common(p); _function_opt(p)
    p.add_argument("--K", default="segment:1,0")
    p.set_defaults(run=cmd_membership)

    p = sub.add_parser("series-check", help="norms of translates and their partial sums")
    _common(p); _function_opt(p); _norm_opts(p)
    p.add_argument("--k-max", type=int, default=200)
    p.add_argument("--r-max", type=float, default=50.0)
    p.set_defaults(run=cmd_series_check)

    p = sub.add_parser("density-fit", help="least-squares residuals on nested alpha grids")
    _common(p); _function_opt(p); _norm_opts(p)
    p.add_argument("--sizes", default="6,12,24")
    p.add_argument("--half-width", type=float, default=0.5)
    p.add_argument("--r-max", type=float, default=30.0)
    p.set_defaults(run=cmd_density_fit)

    p = sub.add_parser("borel", help="Borel series vs. closed form")
    _common(p); _function_opt(p)
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--terms", type=int, default=60)
    p.add_argument("--factor", type=float, default=2.0, help="sample |z| in [factor, 2 factor] * type")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_borel)

    for name, fn, help_ in (("construct", cmd_construct, "build a candidate and check it"),
                            ("recurrence", cmd_recurrence, "recurrence sweep for one target"),
                            ("growth", cmd_growth, "growth ratio on the real line")):
        p = sub.add_parser(name, help=help_)
        _common(p); _candidate_opts(p)
        if name in ("construct", "recurrence"):
            p.add_argument("--radius", type=float, default=0.5)
            p.add_argument("--epsilon", type=float, default=0.5)
        if name in ("construct", "growth"):
            p.add_argument("--q", default="power:2", help="power:c, log or table:r=q,...")
            p.add_argument("--x-max", type=float, default=2000.0)
        if name == "construct":
            p.add_argument("--growth-limit", type=float, default=10.0)
            p.add_argument("--out-dir", help="directory for candidate.json, recurrence_*.csv, growth.csv")
        if name == "recurrence":
            p.add_argument("--target", type=int, default=1)
        if name == "growth":
            p.add_argument("--limit", type=float, default=None)
        p.set_defaults(run=fn)

    p = sub.add_parser("zeros", help="locate zeros in a box")
    _common(p); _function_opt(p)
    p.add_argument("--box", required=False, default="0.5,10.5,-1,1", help="x0,x1,y0,y1")
    p.add_argument("--resolution", type=float, default=1e-6)
    p.set_defaults(run=cmd_zeros)

    p = sub.add_parser("carleman", help="Carleman sums vs. boundary integrals")
    _common(p); _function_opt(p)
    p.add_argument("--radii", default="10,20,40,80,160")
    p.add_argument("--t-min", type=float, default=1e-3)
    p.add_argument("--strip", type=float, default=None, help="half-height of the zero search region")
    p.add_argument("--max-range", type=float, default=1.5)
    p.add_argument("--max-slope", type=float, default=0.1)
    p.set_defaults(run=cmd_carleman)

    p = sub.add_parser("obstruct", help="near-identity translates, their zeros and the density bound")
    _common(p); _function_opt(p); _candidate_opts(p)
    p.set_defaults(horizon=200)
    p.add_argument("--radius", type=float, default=0.5)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.set_defaults(run=cmd_obstruct)
    return parser


def _apply_config(parser, argv):
    """Reparse with the config file's values installed as subcommand defaults."""
    args = parser.parse_args(argv)
    if not args.config:
        return args
    cfg = _load_json_text(args.config, "config")
    if not isinstance(cfg, dict):
        raise InputError("config must be a JSON object")
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction)).choices[args.command]
    known = {a.dest for a in sub._actions}
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    unknown = sorted(set(cfg) - known)
    if unknown:
        raise InputError(f"config keys not understood by {args.command}: {unknown}")
    sub.set_defaults(**cfg)
    return parser.parse_args(argv)


def _validate(a):
    for name in ("r_max", "x_max", "t_min", "radius", "epsilon", "tol", "resolution", "max_range", "max_slope"):
        v = getattr(a, name, None)
        if v is not None and not (isinstance(v, (int, float)) and v > 0):
            raise InputError(f"--{name.replace('_', '-')} must be positive, got {v!r}")
    h = getattr(a, "horizon", None)
    if h is not None and h < 64:
        raise InputError("--horizon must be at least 64")
    if getattr(a, "function", None) is None and a.command not in ("construct", "recurrence", "growth") \
            and not getattr(a, "candidate", None):
        raise InputError("--function is required")


def main(argv=None):
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        _validate(args)
        result = args.run(args)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_INPUT if exc.code else EXIT_OK
    except (InputError, MembershipError) as exc:
        print(f"exptype: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (RangeError, BoundaryZeroError, QuadratureError, ConditioningError, UnboundedNormError,
            np.linalg.LinAlgError, ArithmeticError) as exc:
        print(f"exptype: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, TypeError, KeyError, OSError) as exc:
        print(f"exptype: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = result.render(args.json)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
