"""Command-line front end.

Commands: check-axioms, check-derived, check-convexity, check-condition,
iterate, bound.  Exit codes: 0 = all checks passed, 1 = violations or
divergence found, 2 = configuration error.

All reals are serialized with 17 significant digits so outputs
round-trip exactly; reruns with an identical configuration are
byte-identical.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import analysis, contractions, convexity, mann, spaces
from .core import CheckReport, SamplePlan
from .spaces import UnknownSpaceError

CSV_HEADER = "n,alpha_n,residual,true_error,bound,slack"


class ConfigError(ValueError):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_point(p) -> str:
    return "(" + ";".join(_fmt(c) for c in p) + ")"


def _default_seed() -> int:
    env = os.environ.get("GFIX_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"GFIX_SEED must be an integer, got {env!r}")
    return 0


def _parse_coords(text: str, sep: str = ",") -> tuple:
    try:
        return tuple(float(v) for v in text.split(sep))
    except ValueError:
        raise ConfigError(f"cannot parse coordinates from {text!r}")


def _parse_kv(text: str) -> dict:
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise ConfigError(f"expected key=value, got {part!r}")
        key, value = part.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def parse_mapping(text: str, dim: int) -> contractions.Mapping:
    """``affine:k=0.5,center=1;2`` or ``translation:offset=1;0``.
    Center/offset coordinates are semicolon-separated; both default to
    the origin-sized vector when omitted."""
    kind, _, params = text.partition(":")
    kv = _parse_kv(params) if params else {}
    if kind == "affine":
        if "k" not in kv:
            raise ConfigError("affine mapping needs k=<factor>")
        try:
            k = float(kv["k"])
        except ValueError:
            raise ConfigError(f"bad affine factor {kv['k']!r}")
        center = (_parse_coords(kv["center"], ";") if "center" in kv
                  else (0.0,) * dim)
        if len(center) != dim:
            raise ConfigError("center dimension does not match space")
        if k < 0:
            raise ConfigError("affine factor must be >= 0")
        return contractions.make_affine_contraction(center, k)
    if kind == "translation":
        if "offset" not in kv:
            raise ConfigError("translation mapping needs offset=<coords>")
        offset = _parse_coords(kv["offset"], ";")
        if len(offset) != dim:
            raise ConfigError("offset dimension does not match space")
        return contractions.make_translation(offset)
    raise ConfigError(f"unknown mapping kind {kind!r}")


_CONDITIONS = {k.value: k for k in contractions.ConditionKind}


def parse_condition(name: str, coeff: Optional[str]) -> contractions.ContractionSpec:
    if name not in _CONDITIONS:
        raise ConfigError(f"unknown condition {name!r} "
                          f"(choose from {sorted(_CONDITIONS)})")
    if not coeff:
        raise ConfigError("--coeff is required with --condition")
    kv = _parse_kv(coeff)
    try:
        coeffs = {k: float(v) for k, v in kv.items()}
        return contractions.ContractionSpec(_CONDITIONS[name], coeffs)
    except ValueError as exc:
        raise ConfigError(str(exc))


def parse_schedule(text: str, alpha: Optional[float]) -> mann.StepSchedule:
    """``constant`` (uses --alpha), ``constant:0.5``, ``harmonic``,
    ``power:2`` or ``explicit:1;0.5;0.25``."""
    kind, _, param = text.partition(":")
    try:
        if kind == "constant":
            a = float(param) if param else alpha
            if a is None:
                raise ConfigError("constant schedule needs --alpha")
            return mann.constant_schedule(a)
        if kind == "harmonic":
            return mann.harmonic_schedule()
        if kind == "power":
            if not param:
                raise ConfigError("power schedule needs an exponent, e.g. power:2")
            return mann.power_schedule(float(param))
        if kind == "explicit":
            return mann.explicit_schedule(_parse_coords(param, ";"))
    except ValueError as exc:
        raise ConfigError(str(exc))
    raise ConfigError(f"unknown schedule {text!r}")


def load_config(path: str) -> dict:
    """Flat key=value file mirroring the flags; '#' starts a comment."""
    values = {}
    try:
        with open(path) as fh:
            for raw in fh:
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"bad config line {line!r} in {path}")
                key, value = line.split("=", 1)
                values[key.strip()] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    return values


class Settings:
    """Flag/file/default resolution: explicit flags win over the config
    file, which wins over built-in defaults."""

    def __init__(self, args: argparse.Namespace, defaults: dict):
        self._flags = vars(args)
        self._file = load_config(args.config) if getattr(args, "config", None) else {}
        self._defaults = defaults

    def get(self, key: str):
        attr = key.replace("-", "_")
        flag = self._flags.get(attr)
        if flag is not None:
            return flag
        if key in self._file:
            return self._file[key]
        return self._defaults.get(key)

    def resolved(self, keys) -> dict:
        return {key: self.get(key) for key in keys}


def _write_lines(path: Optional[str], lines) -> None:
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_lines(cmd: str, config: dict, report: CheckReport) -> list:
    lines = [f"# gfix {cmd}",
             "# config: " + " ".join(f"{k}={v}" for k, v in sorted(config.items())
                                     if v is not None)]
    lines.append(f"result: {'PASS' if report.passed else 'FAIL'}")
    lines.append(f"total_checks: {report.total_checks}")
    lines.append(f"violations: {report.violation_count}")
    lines.append(f"worst_margin: {_fmt(report.worst_margin)}")
    if report.worst_ratio is not None:
        lines.append(f"worst_ratio: {_fmt(report.worst_ratio)}")
    for v in report.violations:
        witness = "|".join(_fmt_point(p) if isinstance(p, tuple) else _fmt(p)
                           for p in v.witness)
        lines.append(f"violation: {v.check_id} lhs={_fmt(v.lhs)} "
                     f"rhs={_fmt(v.rhs)} margin={_fmt(v.margin)} "
                     f"witness={witness}")
    return lines


def _resolve_space(key: str):
    return spaces.get_space(key)


def _bare_space(obj):
    return obj.space if isinstance(obj, convexity.ConvexGSpace) else obj


_CHECK_DEFAULTS = {
    "samples": 1000,
    "min-separation": 1e-3,
    "tol": 1e-9,
}


def _plan_from(settings: Settings) -> SamplePlan:
    return SamplePlan(seed=int(settings.get("seed")),
                      count=int(settings.get("samples")),
                      min_separation=float(settings.get("min-separation")))


def _cmd_check_space(args: argparse.Namespace, which: str) -> int:
    settings = Settings(args, {**_CHECK_DEFAULTS, "seed": _default_seed()})
    key = settings.get("space")
    if not key:
        raise ConfigError("--space is required")
    target = _resolve_space(str(key))
    plan = _plan_from(settings)
    tol = float(settings.get("tol"))
    if which == "check-axioms":
        from .core import check_axioms
        report = check_axioms(_bare_space(target), plan, tol)
    elif which == "check-derived":
        from .core import check_derived
        report = check_derived(_bare_space(target), plan, tol)
    else:
        if not isinstance(target, convexity.ConvexGSpace):
            raise ConfigError(f"space {key!r} carries no convex structure")
        report = convexity.check_convexity(target, plan, tol)
    config = settings.resolved(["space", "samples", "seed",
                                "min-separation", "tol"])
    _write_lines(args.out, _report_lines(which, config, report))
    return 0 if report.passed else 1


def _cmd_check_condition(args: argparse.Namespace) -> int:
    settings = Settings(args, {**_CHECK_DEFAULTS, "seed": _default_seed()})
    for required in ("space", "mapping", "condition"):
        if not settings.get(required):
            raise ConfigError(f"--{required} is required")
    target = _resolve_space(str(settings.get("space")))
    space = _bare_space(target)
    mapping = parse_mapping(str(settings.get("mapping")), space.dim)
    spec = parse_condition(str(settings.get("condition")), settings.get("coeff"))
    plan = _plan_from(settings)
    report = contractions.check_condition(spec, space, mapping, plan,
                                          float(settings.get("tol")))
    config = settings.resolved(["space", "mapping", "condition", "coeff",
                                "samples", "seed", "min-separation", "tol"])
    _write_lines(args.out, _report_lines("check-condition", config, report))
    return 0 if report.passed else 1


def _delta_for(spec: contractions.ContractionSpec):
    """(delta, vacuous) for an applicable spec; None when no rate formula
    targets the kind's coefficients as given."""
    kind = spec.kind
    K = contractions.ConditionKind
    if kind in (K.FOUR_TERM, K.FOUR_TERM_ALT, K.SUM, K.MAX):
        return analysis.delta_four_term(spec["a"], spec["b"]), False
    if kind is K.THREE_TERM:
        cf = analysis.delta_three_term(spec["a"])
        return cf.value, cf.vacuous
    cf = analysis.delta_three_term(spec["k"])
    return cf.value, cf.vacuous


_ITERATE_DEFAULTS = {
    "schedule": "constant",
    "alpha": 0.5,
    "x0": "1",
    "max-iters": 10000,
    "residual-tol": 1e-10,
}


def _cmd_iterate(args: argparse.Namespace) -> int:
    settings = Settings(args, {**_ITERATE_DEFAULTS, "seed": _default_seed()})
    key = settings.get("space")
    if not key or not settings.get("mapping"):
        raise ConfigError("--space and --mapping are required")
    target = _resolve_space(str(key))
    if not isinstance(target, convexity.ConvexGSpace):
        raise ConfigError(f"space {key!r} carries no convex structure; "
                          "the averaged iteration needs one")
    space = target.space
    mapping = parse_mapping(str(settings.get("mapping")), space.dim)
    alpha = settings.get("alpha")
    sched = parse_schedule(str(settings.get("schedule")),
                           float(alpha) if alpha is not None else None)
    x0 = _parse_coords(str(settings.get("x0")))
    if len(x0) != space.dim:
        raise ConfigError("x0 dimension does not match space")
    stop = mann.StoppingRule(max_iters=int(settings.get("max-iters")),
                             residual_tol=float(settings.get("residual-tol")))

    warnings = []
    spec = None
    if settings.get("condition"):
        spec = parse_condition(str(settings.get("condition")),
                               settings.get("coeff"))

    trace = mann.run_mann(target, mapping, x0, sched, stop)

    delta = None
    bound_report = None
    if spec is not None:
        verdict = contractions.check_applicability(spec)
        if not verdict.satisfied:
            warnings.append(
                "coefficients outside the applicable region "
                f"({verdict.residuals}); bound columns omitted")
        elif mapping.fixed_point is None:
            warnings.append("mapping has no known fixed point; "
                            "bound columns omitted")
        else:
            delta, vacuous = _delta_for(spec)
            if vacuous:
                warnings.append(f"delta={_fmt(delta)} >= 1: bound is "
                                "vacuous; bound columns omitted")
                delta = None
            else:
                bound_report = analysis.verify_bound(trace, delta)

    rows = [CSV_HEADER]
    if bound_report is not None:
        products = analysis.trace_products(trace, delta)
        e0 = trace.true_errors[0]
    for n in range(len(trace)):
        err = _fmt(trace.true_errors[n]) if trace.true_errors else ""
        if bound_report is not None:
            bound = _fmt(products[n] * e0)
            slack = _fmt(bound_report.slacks[n])
        else:
            bound = slack = ""
        rows.append(f"{n},{_fmt(trace.alphas[n])},{_fmt(trace.residuals[n])},"
                    f"{err},{bound},{slack}")
    _write_lines(args.out, rows)

    config = settings.resolved(["space", "mapping", "condition", "coeff",
                                "schedule", "alpha", "x0", "max-iters",
                                "residual-tol", "seed"])
    summary = ["# gfix iterate",
               "# config: " + " ".join(f"{k}={v}" for k, v in sorted(config.items())
                                       if v is not None),
               f"status: {trace.status}",
               f"steps: {len(trace) - 1}",
               f"final_residual: {_fmt(trace.residuals[-1])}",
               f"divergent_sum: {sched.divergent_sum}"]
    if delta is not None:
        summary.append(f"delta: {_fmt(delta)}")
    if bound_report is not None:
        summary.append(f"bound_holds: {str(bound_report.holds).lower()}")
        summary.append(f"min_slack: {_fmt(bound_report.min_slack)}")
    for w in warnings:
        summary.append(f"warning: {w}")
    print("\n".join(summary))
    return 1 if trace.status == mann.STATUS_DIVERGED else 0


def _cmd_bound(args: argparse.Namespace) -> int:
    settings = Settings(args, {"schedule": "constant", "alpha": 0.5,
                               "max-iters": 100})
    if settings.get("delta") is None:
        raise ConfigError("--delta is required")
    delta = float(settings.get("delta"))
    alpha = settings.get("alpha")
    sched = parse_schedule(str(settings.get("schedule")),
                           float(alpha) if alpha is not None else None)
    n = int(settings.get("max-iters"))
    try:
        rb = analysis.product_bound(delta, sched, n)
    except ValueError as exc:
        raise ConfigError(str(exc))
    rows = ["n,alpha_n,factor,B_n", f"0,,,{_fmt(rb.products[0])}"]
    for k, (f, b) in enumerate(zip(rb.factors, rb.products[1:])):
        rows.append(f"{k + 1},{_fmt(sched.alpha_at(k))},{_fmt(f)},{_fmt(b)}")
    _write_lines(args.out, rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gfix",
        description="Verify G-metric/convexity axioms and run the averaged "
                    "fixed-point iteration with rate-bound checking.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--min-separation", type=float, default=None)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--config", default=None)

    for name in ("check-axioms", "check-derived", "check-convexity"):
        p = sub.add_parser(name)
        p.add_argument("--space", default=None)
        add_common(p)

    p = sub.add_parser("check-condition")
    p.add_argument("--space", default=None)
    p.add_argument("--mapping", default=None)
    p.add_argument("--condition", default=None)
    p.add_argument("--coeff", default=None)
    add_common(p)

    p = sub.add_parser("iterate")
    p.add_argument("--space", default=None)
    p.add_argument("--mapping", default=None)
    p.add_argument("--condition", default=None)
    p.add_argument("--coeff", default=None)
    p.add_argument("--schedule", default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--x0", default=None)
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--residual-tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None)

    p = sub.add_parser("bound")
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--schedule", default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command in ("check-axioms", "check-derived", "check-convexity"):
            return _cmd_check_space(args, args.command)
        if args.command == "check-condition":
            return _cmd_check_condition(args)
        if args.command == "iterate":
            return _cmd_iterate(args)
        return _cmd_bound(args)
    except (ConfigError, UnknownSpaceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
