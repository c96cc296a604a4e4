"""``dixmier-lab`` command line entry point."""

import sys

import click

from .experiments import REGISTRY, UnknownExperimentError, run_experiment
from .report import reports_to_json, run_many, thread_cap, to_csv, to_json


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.argument("experiment_id")
@click.option("--symbol", help='Symbol text, e.g. "w^2 + 3*w" (w is conj(z)).')
@click.option("--alpha", help="Weight parameter(s), comma separated.")
@click.option("--dim", type=int, help="Truncation dimension (power of two).")
@click.option("--count", type=int, help="Spectrum length or index range.")
@click.option("--grid", help='Grid: comma-separated values or "geom:J0:J1".')
@click.option("--tol", type=float, help="Tolerance for the pass criterion.")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), help="Write output here instead of stdout.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
def main(experiment_id, out, fmt, **options):
    """Run EXPERIMENT_ID and print its report.

    Use "list" to show the registered experiments and "all" to run every one
    of them in a worker pool capped by DIXMIER_LAB_THREADS.  The exit status is
    0 when every check passes, 1 when one fails and 2 on bad input.
    """
    given = {k: v for k, v in options.items() if v is not None}
    if experiment_id == "list":
        for id, exp in REGISTRY.items():
            click.echo(f"{id:22s} {exp.summary}")
        return
    try:
        if experiment_id == "all":
            if given or fmt != "json":
                raise click.UsageError('"all" takes no experiment options and only --format json')
            reports = run_many([(id, None) for id in REGISTRY], thread_cap())
            _emit(reports_to_json(reports), out)
            sys.exit(0 if all(r.passed for r in reports) else 1)
        report = run_experiment(experiment_id, given)
        _emit(to_csv(report) if fmt == "csv" else to_json(report), out)
    except (UnknownExperimentError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    sys.exit(0 if report.passed else 1)


if __name__ == "__main__":
    main()
