"""Command-line front end.

Subcommands: constants, classify, branch, profile, pendulum, coexist,
expansion-check.  Exit codes: 0 success, 1 numerical failure (saturation,
singularity, integration), 2 invalid input.  Flag values override config
file values, which override built-in defaults.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace

import numpy as np

from . import branch as branch_mod
from . import pendulum as pendulum_mod
from .config import RunConfig
from .errors import (
    ConfigError,
    DomainError,
    EventNotFoundError,
    IntegrationError,
    OutOfRangeError,
    ParityError,
    SaturationError,
    SingularityError,
)
from .export import format_float, write_table
from .special import constants

# slope beyond which a branch point sits in the numerical saturation band;
# outputs are still produced but a warning is emitted
ALPHA_WARN = 1e4


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="muskat",
        description=(
            "Steady fingering interfaces in a periodic Hele-Shaw cell: "
            "bifurcation branches, blow-up regimes, pendulum correspondence."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--g", type=float, default=None, help="gravitational acceleration")
        sp.add_argument("--rho-plus", type=float, default=None, help="density of the upper fluid")
        sp.add_argument("--rho-minus", type=float, default=None, help="density of the lower fluid")
        sp.add_argument("--h", type=float, default=None, help="cell half-height")
        sp.add_argument("--tol", type=float, default=None, help="sets quadrature, ODE and root tolerances")
        sp.add_argument("--config", default=None, help="JSON config file")
        sp.add_argument("--out", default=None, help="output path (stdout when omitted)")
        sp.add_argument("--format", choices=("csv", "json"), default=None, help="table format")

    sp = sub.add_parser("constants", help="threshold constants and regime classification")
    common(sp)
    sp.add_argument("--l", type=int, default=5, help="list bifurcation points up to this mode")

    sp = sub.add_parser("classify", help="blow-up regime for the configured cell height")
    common(sp)

    sp = sub.add_parser("branch", help="trace a bifurcation branch to a table")
    common(sp)
    sp.add_argument("--l", type=int, default=1, help="mode number (minimal period 2*pi/l)")
    sp.add_argument("--n", type=int, default=None, help="number of branch points")

    sp = sub.add_parser("profile", help="export one steady profile over a 2*pi window")
    common(sp)
    sp.add_argument("--l", type=int, default=1, help="mode number")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--lambda", dest="lam", type=float, help="base branch parameter in (lambda_h, 1]")
    group.add_argument("--gamma", dest="gamma", type=float, help="scaled surface tension (alternative to --lambda)")
    sp.add_argument("--parity", choices=("odd", "even"), default="odd")
    sp.add_argument("--sign", choices=("plus", "minus"), default="plus")
    sp.add_argument("--n", type=int, default=None, help="number of samples")

    sp = sub.add_parser("pendulum", help="export the pendulum swing matched to a profile")
    common(sp)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--lambda", dest="lam", type=float, help="branch parameter in (lambda_star, 1]")
    group.add_argument("--gamma", dest="gamma", type=float, help="surface tension (alternative to --lambda)")
    sp.add_argument("--n", type=int, default=None, help="number of samples")

    sp = sub.add_parser("coexist", help="gamma windows where consecutive branches coexist")
    common(sp)
    sp.add_argument("--l-max", type=int, default=6, help="largest mode to examine")

    sp = sub.add_parser(
        "expansion-check", help="fit the quadratic gamma coefficient near a bifurcation point"
    )
    common(sp)
    sp.add_argument("--l", type=int, default=1, help="mode number")
    sp.add_argument(
        "--eps", default="0.02,0.04,0.08", help="comma-separated amplitude parameters in (0, 0.1]"
    )

    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    overrides = dict(
        grav=args.g,
        rho_plus=getattr(args, "rho_plus"),
        rho_minus=getattr(args, "rho_minus"),
        h=args.h,
        format=args.format,
        out=args.out,
    )
    if args.tol is not None:
        overrides.update(quad_tol=args.tol, ode_tol=args.tol, root_tol=args.tol)
    n = getattr(args, "n", None)
    if n is not None:
        overrides.update(n_points=n, n_samples=n)
    cfg = cfg.updated(**overrides)
    cfg.validate()
    return cfg


def _emit_text(cfg: RunConfig, lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _regime_lines(cfg: RunConfig) -> list[str]:
    p = cfg.physical()
    reg = branch_mod.lambda_h(p, cfg.root_tol, cfg.alpha_max)
    fmt = lambda v: format_float(v, cfg.precision)
    return [
        f"cell half-height h = {p.h:g}: regime ({reg.kind.roman}) {reg.kind.value}",
        f"  lambda_h = {fmt(reg.lambda_h)}",
        f"  gamma_h  = {fmt(reg.gamma_h)}",
    ]


def cmd_constants(cfg: RunConfig, args) -> None:
    c = constants()
    p = cfg.physical()
    fmt = lambda v: format_float(v, cfg.precision)
    lines = [
        f"lambda_star = {fmt(c.lambda_star)}   (B(3/4,1/2)^2 / (2 pi^2), via log-gamma)",
        f"h_star      = {fmt(c.h_star)}   (sqrt(2 / lambda_star))",
        f"gamma_star  = {fmt(p.weight / c.lambda_star)}   (g (rho_plus - rho_minus) / lambda_star)",
        "bifurcation points gamma_bar_l = g (rho_plus - rho_minus) / l^2:",
    ]
    for l in range(1, max(1, args.l) + 1):
        lines.append(f"  l={l}: {fmt(branch_mod.gamma_bar(p, l))}")
    lines.extend(_regime_lines(cfg))
    _emit_text(cfg, lines)


def cmd_classify(cfg: RunConfig, args) -> None:
    _emit_text(cfg, _regime_lines(cfg))


def cmd_branch(cfg: RunConfig, args) -> None:
    p = cfg.physical()
    br = branch_mod.trace_branch(p, l=args.l, n_points=cfg.n_points, tol=cfg.root_tol, alpha_max=cfg.alpha_max)
    n_trunc = sum(pt.truncated for pt in br.points)
    if n_trunc:
        _warn(f"{n_trunc} branch point(s) near lambda_star saturated the slope cap and carry NaN data")
    metadata = {
        "kind": "branch",
        "l": br.l,
        "n_points": len(br.points),
        "grav": p.grav,
        "rho_plus": p.rho_plus,
        "rho_minus": p.rho_minus,
        "h": p.h,
        "regime": br.regime.kind.value,
        "lambda_h_base": br.regime.lambda_h,
        "gamma_h_base": br.regime.gamma_h,
        "n_truncated": n_trunc,
        "units": "lambda,alpha,max_slope:dimensionless gamma:force/length amplitude:length quarter_period:radian",
    }
    columns = {
        "lambda": br.column("lam"),
        "gamma": br.column("gamma"),
        "alpha": br.column("alpha"),
        "amplitude": br.column("amplitude"),
        "max_slope": br.column("alpha"),
        "quarter_period": br.column("quarter_period"),
        "truncated": np.array([int(pt.truncated) for pt in br.points]),
    }
    write_table(cfg.out, metadata, columns, fmt=cfg.format, precision=cfg.precision)


def _base_lambda(cfg: RunConfig, args, l: int) -> float:
    p = cfg.physical()
    if getattr(args, "lam", None) is not None:
        return args.lam
    # scaled gamma -> base lambda: gamma_scaled = weight / (lam * l^2)
    return branch_mod.lambda_of_gamma(p, args.gamma * l * l)


def cmd_profile(cfg: RunConfig, args) -> None:
    p = cfg.physical()
    l = args.l
    if l < 1:
        raise DomainError(f"mode number must be >= 1, got {l}")
    lam = _base_lambda(cfg, args, l)
    window = branch_mod.lambda_h(replace(p, h=l * p.h), cfg.root_tol, cfg.alpha_max)
    if not window.lambda_h < lam <= 1.0:
        raise OutOfRangeError(
            lam,
            (window.lambda_h, 1.0),
            f"lambda={lam:.9g} outside feasible window ({window.lambda_h:.9g}, 1] "
            f"for l={l}, h={p.h:g}",
        )
    prof = branch_mod.profile_at(
        lam, n_samples=cfg.n_samples, ode_tol=cfg.ode_tol, root_tol=cfg.root_tol, alpha_max=cfg.alpha_max
    )
    if prof.alpha > ALPHA_WARN:
        _warn(
            f"slope alpha={prof.alpha:.3e} is in the saturation band near the blow-up end; "
            "profile export may be slow or degraded"
        )
    prof = branch_mod.scale_profile(prof, l)
    if args.parity == "even":
        prof = branch_mod.translate_even(prof, l)
    if args.sign == "minus":
        prof = branch_mod.negate_profile(prof)
    res_ode, res_mean = branch_mod.residual(prof)
    xs = np.linspace(0.0, 2.0 * math.pi, cfg.n_samples)
    f, fp = prof.evaluate(xs)
    metadata = {
        "kind": "profile",
        "lambda": prof.lam,
        "gamma": branch_mod.gamma_of_lambda(p, lam) / (l * l),
        "l": l,
        "alpha": prof.alpha,
        "period": prof.period,
        "parity": prof.parity,
        "sign": args.sign,
        "residual_ode": res_ode,
        "residual_mean": res_mean,
        "units": "x:radian f:length f_prime:dimensionless",
    }
    write_table(cfg.out, metadata, {"x": xs, "f": f, "f_prime": fp}, fmt=cfg.format, precision=cfg.precision)


def cmd_pendulum(cfg: RunConfig, args) -> None:
    p = cfg.physical()
    lam = _base_lambda(cfg, args, 1)
    prof = branch_mod.profile_at(
        lam, n_samples=cfg.n_samples, ode_tol=cfg.ode_tol, root_tol=cfg.root_tol, alpha_max=cfg.alpha_max
    )
    if prof.alpha > ALPHA_WARN:
        _warn(
            f"slope alpha={prof.alpha:.3e} is in the saturation band near the blow-up end; "
            "swing export may be slow or degraded"
        )
    even = branch_mod.translate_even(prof, 1)
    traj = pendulum_mod.to_pendulum(even, n_samples=cfg.n_samples)
    L_formula = pendulum_mod.pendulum_period(
        lam, tol=cfg.quad_tol, root_tol=cfg.root_tol, alpha_max=cfg.alpha_max
    )
    metadata = {
        "kind": "pendulum",
        "lambda": lam,
        "alpha": prof.alpha,
        "theta_max": traj.theta_max,
        "L_formula": L_formula,
        "L_arclength": traj.period_L,
        "L_abs_diff": abs(L_formula - traj.period_L),
        "units": "s:length theta:radian theta_prime:radian/length",
    }
    columns = {"s": traj.s, "theta": traj.theta, "theta_prime": traj.theta_prime}
    write_table(cfg.out, metadata, columns, fmt=cfg.format, precision=cfg.precision)


def cmd_coexist(cfg: RunConfig, args) -> None:
    p = cfg.physical()
    levels = branch_mod.coexistence_levels(p, args.l_max)
    metadata = {
        "kind": "coexist",
        "l_max": args.l_max,
        "lambda_star": constants().lambda_star,
        "gamma_star": p.weight / constants().lambda_star,
        "n_levels": len(levels),
    }
    columns = {
        "l": np.array([l for l, _ in levels], dtype=int),
        "gamma_low": np.array([w[0] for _, w in levels], dtype=float),
        "gamma_high": np.array([w[1] for _, w in levels], dtype=float),
    }
    write_table(cfg.out, metadata, columns, fmt=cfg.format, precision=cfg.precision)


def cmd_expansion_check(cfg: RunConfig, args) -> None:
    p = cfg.physical()
    try:
        eps_list = tuple(float(tok) for tok in args.eps.split(",") if tok.strip())
    except ValueError as exc:
        raise ConfigError(f"--eps must be a comma-separated float list, got {args.eps!r}") from exc
    fit = branch_mod.expansion_check(p, l=args.l, eps_list=eps_list, root_tol=cfg.root_tol, ode_tol=cfg.ode_tol)
    metadata = {
        "kind": "expansion-check",
        "l": fit.l,
        "gamma_bar": branch_mod.gamma_bar(p, fit.l),
        "fitted_coefficient": fit.coefficient,
        "expected_coefficient": fit.expected,
        "relative_deviation": abs(fit.coefficient - fit.expected) / fit.expected,
    }
    columns = {
        "eps": np.array(fit.eps),
        "gamma": np.array(fit.gammas),
        "ratio": np.array(fit.ratios),
    }
    write_table(cfg.out, metadata, columns, fmt=cfg.format, precision=cfg.precision)


_HANDLERS = {
    "constants": cmd_constants,
    "classify": cmd_classify,
    "branch": cmd_branch,
    "profile": cmd_profile,
    "pendulum": cmd_pendulum,
    "coexist": cmd_coexist,
    "expansion-check": cmd_expansion_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
        _HANDLERS[args.command](cfg, args)
    except (ConfigError, DomainError, OutOfRangeError, ParityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SaturationError, SingularityError, EventNotFoundError, IntegrationError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
