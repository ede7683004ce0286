"""Command-line front end.

Every subcommand writes JSON (default) or CSV to stdout, or to ``--out``.
Exit codes: 0 success, 2 bad input, 1 anything unexpected.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional

from .extensions import ExtensionClass, ExtensionSpec, build_extension
from .figures import figure_data, series_to_csv
from .game import (
    NormalizedPD,
    RawPD,
    StrategyProfile,
    affine_transform,
    as_rational,
    format_rational,
    normalize,
    pure_nash_equilibria,
)
from .regions import RegionQuery, ne_condition, ne_region_table
from .verify import DEFAULT_SEED, GridSpec, max_equal_payoff, sweep_verify

CLASSES = [c.value for c in ExtensionClass]


class UsageError(Exception):
    """Bad flag value; reported with exit code 2."""


def _rational(args, flag: str) -> Optional[Fraction]:
    raw = getattr(args, flag.lstrip("-").replace("-", "_"), None)
    if raw is None:
        return None
    try:
        return as_rational(raw)
    except (TypeError, ValueError):
        raise UsageError(f"{flag}: malformed rational {raw!r}") from None


def _raw_pd(args) -> Optional[RawPD]:
    vals = {k: _rational(args, f"--{k}") for k in ("T", "R", "P", "S")}
    given = [k for k, v in vals.items() if v is not None]
    if not given:
        return None
    missing = [f"--{k}" for k, v in vals.items() if v is None]
    if missing:
        raise UsageError(f"{', '.join(missing)}: raw payoffs need all of --T --R --P --S")
    try:
        return RawPD(**vals)
    except ValueError as exc:
        raise UsageError(f"--T/--R/--P/--S: {exc}") from None


def _pd(args, required: bool = True) -> tuple[Optional[NormalizedPD], Optional[RawPD]]:
    """Normalized game from --p/--r or from the raw payoffs, plus the raw form if any."""
    raw = _raw_pd(args)
    p, r = _rational(args, "--p"), _rational(args, "--r")
    if raw is not None:
        if p is not None or r is not None:
            raise UsageError("--p/--r: give either --p/--r or --T/--R/--P/--S, not both")
        return normalize(raw), raw
    if p is None or r is None:
        if required:
            raise UsageError("--p/--r: both are required (or pass --T --R --P --S)")
        return None, None
    try:
        return NormalizedPD(r=r, p=p), None
    except ValueError as exc:
        raise UsageError(f"--p/--r: {exc}") from None


def _param(args, cls: ExtensionClass) -> Optional[Fraction]:
    a, t = _rational(args, "--a"), _rational(args, "--t")
    name = cls.param_name
    if name is None:
        if a is not None or t is not None:
            raise UsageError(f"--{'a' if a is not None else 't'}: class {cls} takes no parameter")
        return None
    other = "t" if name == "a" else "a"
    if (a if other == "a" else t) is not None:
        raise UsageError(f"--{other}: class {cls} is parameterized by {name}")
    value = a if name == "a" else t
    if value is None:
        raise UsageError(f"--{name}: required for class {cls}")
    try:
        ExtensionSpec(cls, value)
    except ValueError as exc:
        raise UsageError(f"--{name}: {exc}") from None
    return value


def _class(args) -> ExtensionClass:
    if args.cls is None:
        raise UsageError("--class: required")
    return ExtensionClass(args.cls)


def _profile(args) -> Optional[StrategyProfile]:
    if args.profile is None:
        return None
    try:
        i, j = (int(x) for x in args.profile.split(","))
    except ValueError:
        raise UsageError(f"--profile: expected 'i,j', got {args.profile!r}") from None
    if not (1 <= i <= 4 and 1 <= j <= 4):
        raise UsageError(f"--profile: ({i},{j}) outside 1..4")
    return StrategyProfile(i, j)


def _scale(args, raw: Optional[RawPD]) -> tuple[Fraction, Fraction]:
    if args.scale == "normalized":
        return Fraction(1), Fraction(0)
    if raw is None:
        raise UsageError("--scale: classic scale needs the raw payoffs --T --R --P --S")
    return raw.T - raw.S, raw.S


def _step(args, flag: str) -> Optional[Fraction]:
    value = _rational(args, flag)
    if value is not None and not 0 < value < 1:
        raise UsageError(f"{flag}: step must lie in (0, 1)")
    return value


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# -- subcommands ---------------------------------------------------------------


def cmd_normalize(args):
    raw = _raw_pd(args)
    if raw is None:
        raise UsageError("--T/--R/--P/--S: all four raw payoffs are required")
    pd = normalize(raw)
    data = {"r": format_rational(pd.r), "p": format_rational(pd.p)}
    return data, _csv(["r", "p"], [[data["r"], data["p"]]])


def cmd_build(args):
    cls = _class(args)
    pd, raw = _pd(args)
    spec = ExtensionSpec(cls, _param(args, cls))
    scale, shift = _scale(args, raw)
    game = build_extension(spec, pd)
    if args.scale == "classic":
        game = affine_transform(game, scale, shift)
    data = {**spec.to_json(), "scale": args.scale, "game": game.to_json()}
    rows = [
        [i + 1, j + 1, format_rational(u1), format_rational(u2)]
        for i, row in enumerate(game.entries)
        for j, (u1, u2) in enumerate(row)
    ]
    return data, _csv(["row", "col", "payoff1", "payoff2"], rows)


def cmd_ne(args):
    cls = _class(args)
    pd, raw = _pd(args)
    spec = ExtensionSpec(cls, _param(args, cls))
    scale, shift = _scale(args, raw)
    game = build_extension(spec, pd)
    eqs = pure_nash_equilibria(game)
    payoffs = [[format_rational(u * scale + shift) for u in game.payoff(*e)] for e in eqs]
    data = {"equilibria": [list(e) for e in eqs], "payoffs": payoffs}
    rows = [[f"{e.row},{e.col}", *pay] for e, pay in zip(eqs, payoffs)]
    return data, _csv(["profile", "payoff1", "payoff2"], rows)


def cmd_region(args):
    cls = _class(args)
    pd, _ = _pd(args)
    x = _param(args, cls)
    prof = _profile(args)
    if prof is None:
        table = ne_region_table(cls, pd, x)
        data = {"class": cls.value, "equilibria": [list(e) for e in table]}
        return data, _csv(["profile"], [[f"{e.row},{e.col}"] for e in table])
    verdict = ne_condition(RegionQuery(cls, prof, pd, x))
    data = {
        "class": cls.value,
        "profile": list(prof),
        "is_ne": verdict.is_ne,
        "active_branch": verdict.active_branch,
    }
    return data, _csv(
        ["profile", "is_ne", "active_branch"],
        [[f"{prof.row},{prof.col}", str(verdict.is_ne).lower(), verdict.active_branch]],
    )


def cmd_sweep(args):
    cls = _class(args)
    pd, _ = _pd(args, required=False)
    step = _step(args, "--grid-step")
    kwargs = {"param_step": _step(args, "--param-step"), "pd": pd}
    if step is not None:
        kwargs.update(p_step=step, r_step=step)
    if args.workers < 1:
        raise UsageError("--workers: must be at least 1")
    report = sweep_verify(cls, GridSpec(**kwargs), workers=args.workers)
    return report.to_json(), report.to_csv()


def cmd_extremal(args):
    cls = _class(args)
    pd, raw = _pd(args)
    scale, shift = _scale(args, raw)
    prof = _profile(args)
    profiles = [prof] if prof else [StrategyProfile(i, j) for i in range(1, 5) for j in range(i, 5)]
    step = _step(args, "--param-step")
    results = [max_equal_payoff(cls, pd, q, param_step=step) for q in profiles]
    data = {"class": cls.value, "scale": args.scale, "results": [r.to_json(scale, shift) for r in results]}
    rows = []
    for res in data["results"]:
        rows.append(
            [
                ",".join(map(str, res["profile"])),
                str(res["found"]).lower(),
                res.get("param_star") or "",
                res.get("payoff_star", ""),
                str(res.get("is_supremum_only", False)).lower(),
                str(res.get("is_approximate", False)).lower(),
            ]
        )
    header = ["profile", "found", "param_star", "payoff_star", "is_supremum_only", "is_approximate"]
    return data, _csv(header, rows)


def cmd_figure_data(args):
    cls = _class(args)
    if args.axis == "param":
        if cls.param_name is None:
            raise UsageError(f"--class: class {cls} has no parameter for --axis param")
        pd, raw = _pd(args)
        _scale(args, raw)
        series = figure_data(cls, pd, "param", param_step=_step(args, "--param-step"), scale=args.scale, raw=raw)
    else:
        T = _rational(args, "--T")
        T = Fraction(5) if T is None else T
        if T <= 0:
            raise UsageError("--T: must be positive")
        step = _rational(args, "--grid-step")
        step = Fraction(1, 2) if step is None else step
        if step <= 0:
            raise UsageError("--grid-step: must be positive")
        series = figure_data(
            cls, axis="PR", param_step=_step(args, "--param-step"), scale=args.scale, T=T, pr_step=step
        )
    data = {"class": cls.value, "axis": args.axis, "scale": args.scale, "series": [s.to_json() for s in series]}
    return data, series_to_csv(series)


def cmd_report(args):
    from .reproduce import run_all

    results = run_all(seed=args.seed)
    data = {
        "seed": args.seed,
        "all_passed": all(r.passed for r in results),
        "criteria": [r.to_json() for r in results],
    }
    rows = [[r.number, r.title, "PASS" if r.passed else "FAIL", f"{r.seconds:.6f}"] for r in results]
    for r in results:
        print(r.line(), file=sys.stderr)
    return data, _csv(["criterion", "title", "status", "seconds"], rows)


COMMANDS = {
    "normalize": (cmd_normalize, "normalize raw (T, R, P, S) payoffs to (r, p)"),
    "build": (cmd_build, "print the 4x4 extension game"),
    "ne": (cmd_ne, "pure Nash equilibria of an extension by enumeration"),
    "region": (cmd_region, "closed-form equilibrium conditions"),
    "sweep": (cmd_sweep, "check conditions against enumeration over a grid"),
    "extremal": (cmd_extremal, "best equal equilibrium payoff over the class parameter"),
    "figure-data": (cmd_figure_data, "plot-ready payoff series"),
    "report": (cmd_report, "run every reproduction check"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--class", dest="cls", choices=CLASSES, help="extension class")
    common.add_argument("--p", help="normalized punishment payoff, e.g. 1/5 or 0.2")
    common.add_argument("--r", help="normalized reward payoff")
    common.add_argument("--a", help="A-class parameter in [0, 1]")
    common.add_argument("--t", help="C/D/E-class parameter in (0, 1)")
    for name in ("T", "R", "P", "S"):
        common.add_argument(f"--{name}", help=f"raw payoff {name}")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--scale", choices=["normalized", "classic"], default="normalized")
    common.add_argument("--grid-step", help="(p, r) grid step for sweep; P/R step for figure-data")
    common.add_argument("--param-step", help="grid step of the class parameter")
    common.add_argument("--profile", help="strategy profile as i,j")
    common.add_argument("--axis", choices=["param", "PR"], default="param")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="ewl-pd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse itself exits with 2 on bad syntax
    handler = COMMANDS[args.command][0]
    try:
        data, csv_text = handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    text = csv_text if args.format == "csv" else json.dumps(data, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "report" and not data["all_passed"]:
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
