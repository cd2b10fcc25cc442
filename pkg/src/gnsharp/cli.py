"""Command-line front end: bounds, sharp constants, maximizer tabulation and reference tables.

Every numeric output field carries a rounding tag: "down" for lower bounds,
"up" for upper bounds, "nearest" for exact values and profile samples.
"""
from __future__ import annotations

import csv
import functools
import io
import json
import math
import sys
import time
from fractions import Fraction

import click
import numpy as np

from . import bounds_engine as be
from . import maximizer_profiles as mp
from . import tables as tb
from .config import QuadratureConfig, read_config_file
from .errors import GnsError, ParameterError, RegimeError
from .mellin_barnes import format_g, format_number

SCHEMA_VERSION = "1"
LOWER_FIELDS = ("g_minus", "g_minusminus", "s_minus", "s_minusminus", "best_lower_g", "best_lower_s")
UPPER_FIELDS = ("g_plus", "g_plusplus", "s_plus", "s_plusplus", "best_upper_g", "best_upper_s")
EXACT_FIELDS = ("exact_g", "exact_s")


# ---------------------------------------------------------------- parsing

def parse_number(text: str, inexact: bool = False):
    """Exact rational from 'p/q' or an integer; decimals only when inexact is set."""
    text = text.strip()
    try:
        if "/" in text or text.lstrip("+-").isdigit():
            return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"cannot parse {text!r} as a rational") from exc
    if not inexact:
        raise ParameterError(f"{text!r} is not an exact rational; write it as p/q or pass --inexact")
    try:
        return float(text)
    except ValueError as exc:
        raise ParameterError(f"cannot parse {text!r} as a number") from exc


def number_text(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


def build_config(config_path: str | None, overrides: tuple) -> QuadratureConfig:
    """Defaults, then the key=value file, then --set overrides."""
    mapping = read_config_file(config_path) if config_path else {}
    for item in overrides:
        if "=" not in item:
            raise ParameterError(f"--set expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        mapping[key.strip()] = value.strip()
    return QuadratureConfig.from_mapping(mapping)


def tagged(value, rounding: str, digits: int):
    if value is None:
        return None
    if isinstance(value, float) and math.isinf(value):
        return {"value": "inf", "rounded": "inf", "rounding": rounding}
    return {"value": float(value), "rounded": tb.round_to(value, digits, rounding), "rounding": rounding}


def params_record(params: be.GnsParams) -> dict:
    return {"d": params.d, "j": number_text(params.j), "n": number_text(params.n),
            "theta": number_text(params.theta), "r": number_text(params.r) if not math.isinf(params.r) else "inf"}


def emit_json(record: dict):
    click.echo(json.dumps(record, indent=2, sort_keys=True))


def handle_errors(func):
    """Map library errors to the exit-code contract (2 parameters, 3 numerics)."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except GnsError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(exc.exit_code)
    return wrapper


def common_options(func):
    func = click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
                        help="key=value file with quadrature settings.")(func)
    func = click.option("--set", "overrides", multiple=True, metavar="KEY=VALUE",
                        help="Override one quadrature setting (repeatable).")(func)
    func = click.option("--inexact", is_flag=True, help="Accept decimal parameters.")(func)
    return func


@click.group()
def main():
    """Sharp constants, bounds and maximizers for L2 Gagliardo-Nirenberg and Sobolev inequalities."""


# ---------------------------------------------------------------- bounds

@main.command()
@click.option("--d", "dim", type=int, required=True, help="Space dimension.")
@click.option("--j", "j_text", required=True, help="Intermediate derivative order.")
@click.option("--n", "n_text", required=True, help="Top derivative order.")
@click.option("--theta", "theta_text", required=True, help="Interpolation exponent.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@click.option("--digits", type=int, default=3, show_default=True)
@click.option("--no-minus", is_flag=True, help="Skip the eps-grid lower bound G-.")
@click.option("--table-iii-rounding", is_flag=True, help="Mark the best lower and upper bounds.")
@click.option("--timing", is_flag=True, help="Include wall time (breaks byte-identical output).")
@common_options
@handle_errors
def bounds(dim, j_text, n_text, theta_text, fmt, digits, no_minus, table_iii_rounding, timing,
           config_path, overrides, inexact):
    """Every applicable bound on G and S, plus exact values where known."""
    cfg = build_config(config_path, overrides)
    params = be.GnsParams(dim, parse_number(j_text, inexact), parse_number(n_text, inexact),
                          parse_number(theta_text, inexact))
    start = time.perf_counter()
    rep = be.best_bounds(params, cfg, with_minus=not no_minus)
    elapsed = time.perf_counter() - start
    values = {}
    for name in LOWER_FIELDS:
        values[name] = tagged(getattr(rep, name), "down", digits)
    for name in UPPER_FIELDS:
        values[name] = tagged(getattr(rep, name), "up", digits)
    for name in EXACT_FIELDS:
        values[name] = tagged(getattr(rep, name), "nearest", digits)
    values["best_eps"] = tagged(rep.best_eps, "nearest", 2)
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": "bounds",
        "params": params_record(params),
        "regime": {"kind": rep.regime.kind.value, "plus": rep.regime.plus, "plusplus": rep.regime.plusplus,
                   "minusminus": rep.regime.minusminus},
        "values": values,
        "best_lower_source": rep.best_lower_source(),
        "best_upper_source": rep.best_upper_source(),
        "exact_reason": rep.exact_reason,
        "method": {"eps_min": cfg.eps_min, "eps_max": cfg.eps_max, "eps_step": cfg.eps_step,
                   "eps_count": len(cfg.eps_grid()), "rel_tol": cfg.rel_tol, "abs_tol": cfg.abs_tol,
                   "mb_tol": cfg.mb_tol},
    }
    if timing:
        record["timing"] = {"seconds": elapsed}
    if fmt == "json":
        emit_json(record)
        return
    click.echo(f"d={params.d} j={number_text(params.j)} n={number_text(params.n)} "
               f"theta={number_text(params.theta)} r={record['params']['r']} regime={rep.regime.kind.value}")
    if rep.exact_g is not None:
        click.echo(f"  exact G = {rep.exact_g!r}  S = {rep.exact_s!r}  ({rep.exact_reason})")
    bold = {rep.best_lower_source(), rep.best_upper_source()} if table_iii_rounding else set()
    for name in ("g_minus", "g_minusminus", "g_plus", "g_plusplus"):
        cell = values[name]
        if cell is None:
            continue
        mark = "*" if name in bold else " "
        arrow = "v" if cell["rounding"] == "down" else "^"
        click.echo(f" {mark}{name:<13} {cell['rounded']} {arrow}  ({cell['value']!r})")
    click.echo(f"  best lower {values['best_lower_g']['rounded']}  best upper {values['best_upper_g']['rounded']}")
    if timing:
        click.echo(f"  time {elapsed:.3f} s")


# ---------------------------------------------------------------- sharp

@main.command()
@click.option("--d", "dim", type=int, required=True)
@click.option("--j", "j_text", required=True)
@click.option("--n", "n_text", required=True)
@click.option("--theta", "theta_text", default=None,
              help="Defaults to the sup-norm exponent j/n + d/(2n).")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@click.option("--digits", type=int, default=3, show_default=True)
@common_options
@handle_errors
def sharp(dim, j_text, n_text, theta_text, fmt, digits, config_path, overrides, inexact):
    """Exact sharp constants (j = theta n, theta = 1, or the sup-norm case)."""
    build_config(config_path, overrides)
    j, n = parse_number(j_text, inexact), parse_number(n_text, inexact)
    if theta_text is None:
        if n == 0:
            raise ParameterError("n = 0 needs an explicit --theta")
        exact = isinstance(j, Fraction) and isinstance(n, Fraction)
        theta = j / n + Fraction(dim, 2) / n if exact else float(j) / float(n) + dim / (2 * float(n))
    else:
        theta = parse_number(theta_text, inexact)
    params = be.GnsParams(dim, j, n, theta)
    kind = be.classify(params).kind
    if kind is be.RegimeKind.HOLDER:
        G, S = be.sharp_holder(params)
        source = "j = theta n: G = 1, S = sqrt((1-theta)^(1-theta) theta^theta)"
    elif kind is be.RegimeKind.THETA_ONE:
        G = S = be.sharp_theta1(params.j, params.n, dim)
        source = "theta = 1: Gamma-function closed form"
    elif kind is be.RegimeKind.LINFINITY:
        _, S, G = be.sharp_linf(params.j, params.n, dim)
        source = "sup norm: S = 1/(2^(d/2) pi^(d/4-1/2) sqrt(Gamma(d/2) n sin(pi theta)))"
    else:
        raise RegimeError("no exact value is known for these parameters; use the 'bounds' command")
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": "sharp",
        "params": params_record(params),
        "regime": {"kind": kind.value},
        "values": {"G": tagged(G, "nearest", digits), "S": tagged(S, "nearest", digits)},
        "source": source,
    }
    if fmt == "json":
        emit_json(record)
        return
    click.echo(f"theta = {number_text(params.theta)}")
    click.echo(f"S = {S!r}")
    click.echo(f"G = {G!r}")
    click.echo(f"({source})")


# ---------------------------------------------------------------- maximizer

def _rho_grid(rho_text: str | None, rho_max: float, points: int) -> np.ndarray:
    if rho_text:
        vals = [float(x) for x in rho_text.split(",") if x.strip()]
        if any(v < 0 for v in vals):
            raise ParameterError("rho values must be nonnegative")
        return np.asarray(vals)
    if points < 1 or rho_max < 0:
        raise ParameterError("need points >= 1 and rho-max >= 0")
    return np.linspace(0.0, rho_max, points)


@main.command()
@click.option("--kind", type=click.Choice(["linf", "theta1", "trial"]), required=True)
@click.option("--d", "dim", type=int, required=True)
@click.option("--j", "j_text", required=True)
@click.option("--n", "n_text", required=True)
@click.option("--eps", type=float, default=None, help="Regularization of the trial profile.")
@click.option("--rho", "rho_text", default=None, help="Comma-separated radii.")
@click.option("--rho-max", type=float, default=10.0, show_default=True)
@click.option("--points", type=int, default=51, show_default=True)
@click.option("--method", type=click.Choice(list(mp.METHODS)), default=None,
              help="Evaluator for the sup-norm maximizer.")
@click.option("--spec", "show_spec", is_flag=True, help="Print the normalized Meijer G spec instead.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@common_options
@handle_errors
def maximizer(kind, dim, j_text, n_text, eps, rho_text, rho_max, points, method, show_spec, fmt,
              config_path, overrides, inexact):
    """Tabulate a maximizer (or trial) profile on a rho grid."""
    cfg = build_config(config_path, overrides)
    j, n = parse_number(j_text, inexact), parse_number(n_text, inexact)
    if show_spec:
        if kind != "linf":
            raise RegimeError("--spec is available for --kind linf only")
        if not (isinstance(j, Fraction) and isinstance(n, Fraction)):
            raise ParameterError("--spec needs exact rational j and n")
        g, pref, scale = tb.linf_g_spec(j, n, dim)
        text = f"{pref:.15g} * {format_g(g)} | (rho/{scale})^{scale}"
        if fmt == "json":
            emit_json({"schema_version": SCHEMA_VERSION, "command": "maximizer", "kind": kind,
                       "params": {"d": dim, "j": number_text(j), "n": number_text(n)},
                       "prefactor": pref, "arg_scale": scale,
                       "g": {k: [format_number(x) for x in getattr(g, k)] for k in ("a", "a_star", "b", "b_star")},
                       "text": text})
        else:
            click.echo(text)
        return
    rho = _rho_grid(rho_text, rho_max, points)
    if kind == "linf":
        values = mp.f_linf(j, n, dim, rho, method, cfg)
    elif kind == "theta1":
        values = mp.theta1_maximizer(j, n, dim, rho)
    else:
        if eps is None:
            raise ParameterError("--kind trial needs --eps")
        values = mp.m_profile(j, n, eps, dim, rho, cfg)
    values = np.atleast_1d(np.asarray(values, dtype=float))
    if fmt == "json":
        emit_json({"schema_version": SCHEMA_VERSION, "command": "maximizer", "kind": kind,
                   "params": {"d": dim, "j": number_text(j), "n": number_text(n),
                              "eps": None if eps is None else eps},
                   "rho": [float(x) for x in rho],
                   "values": [{"value": float(v), "rounding": "nearest"} for v in values]})
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rho", "value"])
    for r, v in zip(rho, values):
        writer.writerow([repr(float(r)), repr(float(v))])
    click.echo(buf.getvalue(), nl=False)


# ---------------------------------------------------------------- tables

def _markdown(header, rows) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _pair(j, n, partner=None) -> str:
    base = f"({format_number(j)},{format_number(n)})"
    return base if partner is None else f"{base} or ({format_number(partner)},{format_number(n)})"


def _truncated(value: float) -> str:
    # the relative nudge keeps closed forms like 1 - 1e-16 from truncating to 0.999
    return tb.round_to(value * (1 + 1e-13), 3, "down") + "..."


def _table_i(verify):
    header = ["d", "(j,n)", "theta", "S", "G"] + (["check"] if verify else [])
    rows, failures = [], 0
    for r in tb.table_i():
        theta = str(r["theta"])
        if r["partner_j"] is not None:
            theta += f" or {1 - r['theta']}"
        row = [r["d"], _pair(r["j"], r["n"], r["partner_j"]), theta,
               _truncated(r["S"]), _truncated(r["G"])]
        ok = r["theta_ok"] and r["S_ok"] and r["G_ok"]
        failures += not ok
        if verify:
            row.append("pass" if ok else "FAIL")
        rows.append(row)
    return header, rows, failures


def _table_ii(verify):
    header = ["d", "(j,n)", "F_jn(rho)"] + (["check"] if verify else [])
    rows, failures = [], 0
    for fixture, r in zip(tb.TABLE_II, tb.table_ii()):
        spec = f"{fixture.prefactor_text} * {format_g(r['g'])} | (rho/{r['arg_scale']})^{r['arg_scale']}"
        if r["elementary"]:
            spec = f"{r['elementary']} = {spec}"
        row = [r["d"], _pair(r["j"], r["n"]), spec]
        failures += not r["spec_ok"]
        if verify:
            row.append("pass" if r["spec_ok"] else "FAIL")
        rows.append(row)
    return header, rows, failures


def _table_iii(verify, cfg):
    header = ["d", "(j,n)", "theta", "r", "G-", "G--", "G+", "G++"]
    if verify:
        header += ["printed G-", "printed G--", "printed G+", "printed G++", "check"]
    rows, failures = [], 0
    for res in tb.table_iii(cfg):
        bold = {res.bold_lower, res.bold_upper}
        cells = []
        for col in tb.TABLE_III_COLUMNS:
            c = res.cells[col]
            text = "" if c.rounded is None else c.rounded
            cells.append(f"**{text}**" if text and col in bold else text)
        row = [res.row.d, _pair(res.row.j, res.row.n), str(res.row.theta), str(res.row.r)] + cells
        bad = [col for col, c in res.cells.items() if c.ok is False]
        if res.bold_lower != res.row.bold_lower:
            bad.append("bold lower")
        if res.bold_upper != res.row.bold_upper:
            bad.append("bold upper")
        failures += len(bad)
        if verify:
            row += [res.cells[col].printed or "" for col in tb.TABLE_III_COLUMNS]
            row.append("pass" if not bad else "FAIL: " + ", ".join(bad))
        rows.append(row)
    return header, rows, failures


@main.command()
@click.option("--which", type=click.Choice(["I", "II", "III"]), required=True)
@click.option("--format", "fmt", type=click.Choice(["markdown", "csv"]), default="markdown")
@click.option("--verify", is_flag=True, help="Compare every cell with the printed reference values.")
@common_options
@handle_errors
def tables(which, fmt, verify, config_path, overrides, inexact):
    """Regenerate a reference table with its rounding conventions."""
    cfg = build_config(config_path, overrides)
    if which == "I":
        header, rows, failures = _table_i(verify)
    elif which == "II":
        header, rows, failures = _table_ii(verify)
    else:
        header, rows, failures = _table_iii(verify, cfg)
    click.echo(_markdown(header, rows) if fmt == "markdown" else _csv(header, rows))
    if verify:
        click.echo(f"{failures} mismatching cell(s)", err=True)


if __name__ == "__main__":
    main()
