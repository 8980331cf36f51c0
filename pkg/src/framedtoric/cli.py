"""Command-line front end: duality runs, mirror-web reports, and fixture
replay.  Exit codes: 0 success, 1 verification failure, 2 parse error,
3 unsupported framing regime, 4 size guard."""

from __future__ import annotations

import json
import sys

import click

from . import mirrorweb, serialize
from .ftv import (PartitionedFtv, UnsupportedFramingError, f_dual,
                  render_family)
from .scenarios import scenario, SCENARIO_NAMES

EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_REGIME = 3
EXIT_SIZE = 4


def _load_input(scenario_name, input_file):
    if (scenario_name is None) == (input_file is None):
        click.echo("exactly one of --scenario / --input is required", err=True)
        sys.exit(EXIT_PARSE)
    if scenario_name is not None:
        try:
            return scenario(scenario_name)
        except (KeyError, ValueError) as exc:
            click.echo(f"unknown scenario: {exc}", err=True)
            sys.exit(EXIT_PARSE)
    try:
        with open(input_file, encoding="utf-8") as fh:
            data = json.load(fh)
        fan = serialize.dec_mat(data["fan_matrix"])
        blocks = serialize.dec_mat(data["blocks"])
        return PartitionedFtv(fan, blocks).validate()
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        click.echo(f"malformed input: {exc}", err=True)
        sys.exit(EXIT_PARSE)


def _emit(payload, fmt):
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        _emit_text(payload)


def _emit_text(payload, indent=0):
    pad = "  " * indent
    if isinstance(payload, dict):
        for k, v in payload.items():
            if isinstance(v, (dict, list)):
                click.echo(f"{pad}{k}:")
                _emit_text(v, indent + 1)
            else:
                click.echo(f"{pad}{k}: {v}")
    elif isinstance(payload, list):
        for v in payload:
            if isinstance(v, (dict, list)):
                _emit_text(v, indent)
            else:
                click.echo(f"{pad}{v}")
    else:
        click.echo(f"{pad}{payload}")


@click.group()
def main():
    """Exact-arithmetic toolkit for framed toric varieties and their duals."""


@main.command()
@click.option("--scenario", "scenario_name", default=None,
              help=f"one of {', '.join(SCENARIO_NAMES)} or ydd:<d>")
@click.option("--input", "input_file", default=None, type=click.Path(),
              help="JSON file with fan_matrix and blocks")
@click.option("--format", "fmt", default="json",
              type=click.Choice(["json", "text"]))
def dual(scenario_name, input_file, fmt):
    """Forward duality: dual fan matrix, dual framing, mirror family."""
    X = _load_input(scenario_name, input_file)
    try:
        model = f_dual(X)
    except UnsupportedFramingError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_REGIME)
    _emit(serialize.model_to_json(model, render_family(model)), fmt)


@main.command()
@click.option("--scenario", "scenario_name", required=True)
@click.option("--find-w", is_flag=True, default=False,
              help="report the full admissible-W scan")
@click.option("--subsets", default="none",
              help='"all", "none", or semicolon-separated comma lists')
@click.option("--jobs", default=1, type=int)
@click.option("--format", "fmt", default="json",
              type=click.Choice(["json", "text"]))
def web(scenario_name, find_w, subsets, jobs, fmt):
    """Mirror web: admissible-W scan and intermediate models."""
    try:
        base = scenario(scenario_name)
        lam, origins = mirrorweb.ordered_dual_fan_matrix(base)
    except (KeyError, ValueError) as exc:
        click.echo(f"unknown scenario: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    all_reduced = all(base.delta(k) == 1 for k in range(len(base.blocks)))
    b_blocks = (mirrorweb.indicator_blocks(origins, len(base.blocks))
                if all_reduced else None)
    if subsets != "none" and b_blocks is None:
        click.echo("intermediate models need the reduced regime "
                   "(all block excesses 1)", err=True)
        sys.exit(EXIT_REGIME)
    if subsets == "all":
        n, ncols = len(lam), len(lam[0])
        if ncols - (n + 1) > 20:
            click.echo("exceptional set too large; pass explicit subsets "
                       "instead of 'all'", err=True)
            sys.exit(EXIT_SIZE)
    report = {}
    admissibles = None
    if find_w or subsets != "none":
        admissibles = mirrorweb.find_admissible_W(base, lam, origins,
                                                  b_blocks, jobs=jobs)
        report["admissible_W"] = [{
            "columns": serialize.enc_vec(w.column_list),
            "q": serialize.enc_vec(w.q),
            "torsion": serialize.enc_vec(w.torsion),
            "aug_det": serialize.enc_int(w.aug_det),
            "passes_C": w.passes_C,
        } for w in admissibles]
    if subsets != "none":
        chosen = next((w for w in admissibles if w.passes_C), None)
        if chosen is None:
            click.echo("no admissible W passes the reverse-dual check",
                       err=True)
            sys.exit(EXIT_VERIFY)
        n_exceptional = (len(origins) - len(chosen.column_list))
        if subsets == "all":
            if n_exceptional > 20:
                click.echo("exceptional set too large; pass explicit "
                           "subsets instead of 'all'", err=True)
                sys.exit(EXIT_SIZE)
            wanted = "all"
        else:
            try:
                wanted = [tuple(int(x) for x in part.split(",") if x != "")
                          for part in subsets.split(";")]
            except ValueError as exc:
                click.echo(f"bad --subsets: {exc}", err=True)
                sys.exit(EXIT_PARSE)
        try:
            built = mirrorweb.build_web(base, lam, origins, b_blocks,
                                        chosen, wanted)
        except ValueError as exc:
            click.echo(str(exc), err=True)
            sys.exit(EXIT_PARSE)
        report["chosen_W"] = serialize.enc_vec(chosen.column_list)
        report["models"] = {
            key: serialize.model_to_json(m, render_family(m))
            for key, m in sorted(built.models.items())}
    _emit(report, fmt)


@main.command("verify-appendix")
@click.argument("which", type=click.Choice(["A", "B", "C"],
                                           case_sensitive=False))
@click.option("--format", "fmt", default="text",
              type=click.Choice(["json", "text"]))
def verify_appendix(which, fmt):
    """Replay the shipped fixtures and report per-entry pass/fail."""
    results = mirrorweb.verify_appendix(which)
    payload = [{"entry": r["A"], "ok": r["ok"], "detail": r["detail"]}
               for r in results]
    _emit(payload, fmt)
    if not all(r["ok"] for r in results):
        sys.exit(EXIT_VERIFY)


if __name__ == "__main__":
    main()
