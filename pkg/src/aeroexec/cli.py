"""Command line interface.

    aeroexec run --config run.json [--seed N] [--out DIR]
    aeroexec campaign --spec campaign.json --out report/ [--jobs N]
    aeroexec fsm validate table.json
    aeroexec plan validate plan.json
    aeroexec serve --config run.json [--host H] [--port P]

Exit codes: campaign returns 0 when every trial verified, 3 on any
transition-verification mismatch, 4 on any crash classification;
the validators return 0 on pass and 2 on fail.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .fsm.table import TransitionTable, canonical_table, validate_table
from .mission_plan import PlanError, parse_plan, validate_plan
from .montecarlo import (
    TrialSpec,
    build_fig6_trials,
    build_table1_trials,
    run_campaign,
    run_trial,
    write_reports,
)


@click.group()
def main() -> None:
    """Autonomous mission executive: simulation, campaigns and validation."""


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_dir", type=click.Path(), default=None,
              help="Write trial outcome, cycle log and telemetry trace here.")
def run(config_path: str, seed: int, out_dir: str | None) -> None:
    """Run a single mission from a run configuration."""
    base_config = json.loads(Path(config_path).read_text())
    spec = TrialSpec(seed=seed)
    if "plan" in base_config and isinstance(base_config["plan"], str):
        plan_path = Path(config_path).parent / base_config["plan"]
        base_config = dict(base_config)
        base_config["plan"] = json.loads(plan_path.read_text())
    if base_config.get("plan"):
        spec.plan = base_config["plan"]
    outcome = run_trial(spec, base_config, trace=bool(out_dir))
    click.echo(json.dumps(outcome.to_dict(), indent=2))
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "outcome.json").write_text(json.dumps(outcome.to_dict(), indent=2) + "\n")
        if outcome.trace_rows:
            (out / "trace.csv").write_text("\n".join(outcome.trace_rows) + "\n")
    sys.exit(0 if outcome.classification != "Crash" else 4)


@main.command()
@click.option("--spec", "spec_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--jobs", default=1, show_default=True)
def campaign(spec_path: str, out_dir: str, jobs: int) -> None:
    """Run a Monte Carlo campaign and write report artifacts."""
    doc = json.loads(Path(spec_path).read_text())
    kind = doc.get("campaign", "explicit")
    base_seed = int(doc.get("base_seed", 1000))
    if kind == "table1":
        specs = build_table1_trials(base_seed)
    elif kind == "fig6":
        specs = build_fig6_trials(base_seed)
    elif kind == "explicit":
        specs = [TrialSpec.from_dict(t) for t in doc.get("trials", [])]
    else:
        raise click.ClickException(f"unknown campaign kind {kind!r}")
    base_config = doc.get("config")
    report = run_campaign(specs, base_config, jobs=jobs)
    write_reports(report, out_dir)
    counts = report.classification_counts()
    click.echo(f"trials: {report.n_trials}  " +
               "  ".join(f"{k}: {v}" for k, v in counts.items()))
    click.echo(f"transition verification: "
               f"{'PASS' if report.all_verified else 'FAIL'}")
    sys.exit(report.exit_code())


@main.group()
def fsm() -> None:
    """Transition table tools."""


@fsm.command("validate")
@click.argument("table_file", type=click.Path(exists=True))
def fsm_validate(table_file: str) -> None:
    """Validate reachability and final-path existence for a table."""
    table = TransitionTable.from_json(Path(table_file).read_text())
    report = validate_table(table)
    click.echo(report.as_text())
    sys.exit(0 if report.passed else 2)


@fsm.command("show-default")
def fsm_show_default() -> None:
    """Print the canonical transition table as JSON."""
    click.echo(json.dumps(canonical_table().to_dict(), indent=2))


@main.group(name="plan")
def plan_group() -> None:
    """Mission plan tools."""


@plan_group.command("validate")
@click.argument("plan_file", type=click.Path(exists=True))
def plan_validate(plan_file: str) -> None:
    """Parse a plan and check it against vehicle limits."""
    try:
        plan = parse_plan(Path(plan_file).read_bytes())
    except PlanError as e:
        click.echo(f"parse error: {e}")
        sys.exit(2)
    report = validate_plan(plan)
    click.echo(f"waypoints: {len(plan.waypoints)}  "
               f"path length: {plan.total_length():.1f} m")
    click.echo(report.as_text())
    sys.exit(0 if report.passed else 2)


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8642, show_default=True)
def serve(config_path: str, host: str, port: int) -> None:
    """Start the ground-control service (HTTP + WebSocket telemetry)."""
    import uvicorn

    from .service.app import create_app

    app = create_app(Path(config_path))
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
