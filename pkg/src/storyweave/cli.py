"""Command-line entry points: serve, replay, telemetry, fixtures."""

from __future__ import annotations

import json
import sys

import click

from . import fixtures_build, gateway
from . import session as session_mod
from .api import create_app
from .config import load_config
from .store import read_event_log


@click.group()
def main():
    """Recursive divergence/convergence scaffolding for story ideation."""


@main.command()
@click.option("--config", "config_file", type=click.Path(exists=True), default=None)
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.option("--mode", type=click.Choice(["full", "baseline"]), default=None)
@click.option("--data-dir", default=None)
@click.option("--fixtures-dir", default=None)
@click.option("--provider-kind", type=click.Choice(["mock", "http"]), default=None)
def serve(config_file, host, port, mode, data_dir, fixtures_dir, provider_kind):
    """Run the HTTP service."""
    import uvicorn

    overrides = {
        "host": host,
        "port": port,
        "mode": mode,
        "data_dir": data_dir,
        "fixtures_dir": fixtures_dir,
        "provider_kind": provider_kind,
    }
    config = load_config(config_file, overrides=overrides)
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")


@main.command()
@click.argument("logfile", type=click.Path(exists=True))
def replay(logfile):
    """Reconstruct a session from an event log and print its snapshot."""
    events = read_event_log(logfile)
    session = session_mod.replay(events)
    click.echo(json.dumps(session.snapshot(), indent=2, ensure_ascii=False))


@main.command()
@click.argument("logfile", type=click.Path(exists=True))
def telemetry(logfile):
    """Print interaction-log aggregates for one session log."""
    events = read_event_log(logfile)
    summary = session_mod.telemetry_from_events(events)
    depth = summary.directions_by_depth
    cardinality = summary.converged_cardinality
    click.echo(json.dumps(summary.to_dict(), indent=2, ensure_ascii=False))
    depth_cells = " ".join(f"d{k}:{v}" for k, v in sorted(depth.items()))
    conv_cells = " ".join(f"k{k}:{v}" for k, v in sorted(cardinality.items()))
    click.echo(
        f"row | depth {depth_cells or '-'} | converged {conv_cells or '-'} | "
        f"added {summary.manual_added}"
        + (f": {', '.join(summary.manual_labels)}" if summary.manual_labels else "")
    )


@main.group()
def fixtures():
    """Mock fixture corpus maintenance."""


@fixtures.command()
@click.option("--target", default=str(gateway.DEFAULT_FIXTURES_DIR), show_default=True)
def build(target):
    """Regenerate the default fixture corpus."""
    written = fixtures_build.build_corpus(target)
    click.echo(f"wrote {len(written)} files to {target}")


@fixtures.command()
@click.option("--target", default=str(gateway.DEFAULT_FIXTURES_DIR), show_default=True)
def verify(target):
    """Check that the manifest and the files on disk agree."""
    problems = gateway.verify_fixtures(target)
    if problems:
        for problem in problems:
            click.echo(f"FAIL {problem}", err=True)
        sys.exit(1)
    click.echo("fixtures ok")


if __name__ == "__main__":
    main()
