"""Command-line interface: analyze, prioritize, revise, simulate, serve."""

from __future__ import annotations

import json
import os
import sys

import click

from ..errors import CopAhpError, RevisionInfeasible, TimeLimitReached
from ..prioritize import MethodId
from ..revise import RevisionConstraints, revise
from ..simbench import GenConfig, run_nv_experiment, run_revision_experiment, rows_to_csv
from .io import load_matrix
from .report import analysis_payload, prioritize_payload, revision_payload

_METHODS = [m.value.lower() for m in MethodId]


def _time_limit(default: float = 600.0) -> float:
    raw = os.environ.get("COP_AHP_TIME_LIMIT")
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise click.UsageError(f"COP_AHP_TIME_LIMIT is not a number: {raw!r}")


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
        return
    for key, value in payload.items():
        click.echo(f"{key}: {value}")


def _parse_pin(spec: str):
    try:
        pos, value = spec.split("=", 1)
        i, j = (int(t) for t in pos.split(","))
    except ValueError:
        raise click.UsageError(
            f"pin must look like i,j=value (1-based), got {spec!r}"
        )
    from .io import parse_value

    return (i - 1, j - 1), parse_value(value)


@click.group()
def cli():
    """Order-preservation diagnostics and repair for comparison matrices."""


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def analyze(path, as_json):
    """Report CR, GCI, transitivity, exchangeability, and ranking."""
    pcm, labels = load_matrix(path)
    _emit(analysis_payload(pcm, labels), as_json)


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--method", type=click.Choice(_METHODS), default="llsm")
@click.option("--mnv", is_flag=True, help="Minimize violations first.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def prioritize(path, method, mnv, as_json):
    """Derive a priority vector and report its violation count."""
    pcm, _ = load_matrix(path)
    payload = prioritize_payload(
        pcm, MethodId[method.upper()], mnv, time_limit=_time_limit(60.0)
    )
    _emit(payload, as_json)


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--gci-bar", type=float, default=None, help="Consistency cap.")
@click.option("--alpha", type=float, default=1000.0, help="NPR weight in J.")
@click.option("--pin", "pins", multiple=True, help="i,j=value (1-based).")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def revise_cmd(path, gci_bar, alpha, pins, as_json):
    """Repair the matrix onto the scale with minimal changes."""
    pcm, _ = load_matrix(path)
    pinned = dict(_parse_pin(spec) for spec in pins)
    constraints = RevisionConstraints(
        gci_bar=gci_bar, alpha=alpha, pinned=pinned,
        time_limit=_time_limit(600.0),
    )
    result = revise(pcm, constraints)
    _emit(revision_payload(result), as_json)


# click derives the command name from the function name; keep "revise".
revise_cmd.name = "revise"


@cli.command()
@click.option("--n", type=int, required=True)
@click.option("--count", type=int, default=200)
@click.option("--seed", type=int, default=0)
@click.option("--mode", type=click.Choice(["nv", "revision"]), default="nv")
@click.option("--methods", default="LLSM,MNVDM", help="Comma-separated list.")
@click.option("--cr-band", default=None, help="lo,hi acceptance band on CR.")
def simulate(n, count, seed, mode, methods, cr_band):
    """Run a Monte Carlo experiment and print the CSV table."""
    cr_filter = None
    if cr_band is not None:
        try:
            lo, hi = (float(t) for t in cr_band.split(","))
        except ValueError:
            raise click.UsageError(f"cr-band must be lo,hi, got {cr_band!r}")
        cr_filter = (lo, hi)
    cfg = GenConfig(n=n, count=count, seed=seed, cr_filter=cr_filter)
    limit = _time_limit(60.0)
    if mode == "nv":
        rows = run_nv_experiment(
            cfg, [m.strip().upper() for m in methods.split(",")],
            time_limit=limit,
        )
        click.echo(rows_to_csv(rows, seed), nl=False)
    else:
        summary = run_revision_experiment(cfg, time_limit=limit)
        click.echo(
            "n,mean_npr,mean_aoc,mean_nv,count,skipped,widened\n"
            f"{summary.n},{summary.mean_npr:.6g},{summary.mean_aoc:.6g},"
            f"{summary.mean_nv:.6g},{summary.count},{summary.skipped},"
            f"{summary.widened}"
        )


@cli.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Start the HTTP service."""
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=host, port=port)


def run() -> int:
    try:
        cli.main(standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.Abort:
        return 130
    except RevisionInfeasible as exc:
        click.echo(f"infeasible: {exc} (pins: {exc.pins})", err=True)
        return 2
    except TimeLimitReached as exc:
        click.echo(f"time limit: {exc}", err=True)
        return 3
    except CopAhpError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
