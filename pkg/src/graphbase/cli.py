"""Command-line interface: serve, convert, analyze, generate, import, token."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import formats
from .analysis import AnalysisConfig, analyze
from .api import ServiceConfig, create_app
from .errors import GraphbaseError
from .generators import (MutationConfig, SuitabilityFilter, mutate_rome,
                         north_provenance, rome_provenance, sanitize_north)
from .model import build_graph
from .store import ArchiveStore


@click.group()
def main():
    """Self-hostable graph archive."""


@main.command()
@click.option("--data-dir", envvar="OGA_DATA_DIR", default="./data",
              show_default=True, help="Archive storage directory.")
@click.option("--listen", envvar="OGA_LISTEN_ADDR", default="127.0.0.1:8747",
              show_default=True, help="host:port to bind.")
@click.option("--open-mode", envvar="OGA_OPEN_MODE", is_flag=True,
              help="Allow writes without API tokens.")
@click.option("--vertex-threshold", envvar="OGA_VERTEX_THRESHOLD",
              default=100_000, show_default=True,
              help="Graphs with at least this many vertices skip analysis.")
def serve(data_dir, listen, open_mode, vertex_threshold):
    """Run the archive HTTP service."""
    import uvicorn

    host, _, port = listen.rpartition(":")
    config = ServiceConfig(data_dir=Path(data_dir), listen_addr=listen,
                           open_mode=open_mode,
                           vertex_threshold=vertex_threshold)
    app = create_app(config)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))


@main.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("output_file", type=click.Path(dir_okay=False))
@click.option("--from", "from_format", default=None,
              help="Input format (default: detect).")
@click.option("--to", "to_format", required=True,
              help="Output format: " + ", ".join(formats.format_ids()))
def convert(input_file, output_file, from_format, to_format):
    """Convert a graph file between formats, reporting any loss."""
    data = Path(input_file).read_bytes()
    try:
        if from_format is None:
            from_format = formats.detect_format(data)
        out, report = formats.convert(data, from_format, to_format)
    except GraphbaseError as exc:
        raise click.ClickException(str(exc))
    Path(output_file).write_bytes(out)
    if report.lossless:
        click.echo("lossless conversion")
    else:
        click.echo("conversion dropped:")
        for item in report.dropped_items:
            click.echo(f"  {item.kind} x{item.count}: {item.message}")


@main.command("analyze")
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", default=None,
              help="Input format (default: detect).")
@click.option("--vertex-threshold", default=100_000, show_default=True)
def analyze_cmd(input_file, fmt, vertex_threshold):
    """Print the property set of a graph file as JSON."""
    data = Path(input_file).read_bytes()
    try:
        if fmt is None:
            fmt = formats.detect_format(data)
        g = formats.parse(data, fmt)
        props = analyze(g, AnalysisConfig(vertex_threshold=vertex_threshold))
    except GraphbaseError as exc:
        raise click.ClickException(str(exc))
    click.echo(json.dumps(props.to_dict(), indent=2, sort_keys=True))


@main.command()
@click.argument("pipeline", type=click.Choice(["rome", "north"]))
@click.option("--seed", default=0, show_default=True, help="RNG seed.")
@click.option("--config", "config_file", type=click.Path(exists=True),
              default=None, help="JSON file overriding generator defaults.")
@click.option("--out", "out_dir", default="./generated", show_default=True,
              help="Directory for the generated GML files.")
def generate(pipeline, seed, config_file, out_dir):
    """Generate a reproducible graph collection.

    rome: mutate seed cycles through rounds of primitive operations.
    north: sanitize random digraphs into connected DAGs.
    """
    options = {}
    if config_file:
        options = json.loads(Path(config_file).read_text())
    out_path = Path(out_dir)
    out_path.mkdir(parents=True, exist_ok=True)

    if pipeline == "rome":
        graphs, provenance = _generate_rome(seed, options)
    else:
        graphs, provenance = _generate_north(seed, options)

    for i, g in enumerate(graphs):
        data, _ = formats.serialize(g, "gml")
        (out_path / f"{pipeline}_{i:05d}.gml").write_bytes(data)
    (out_path / "provenance.txt").write_text(provenance + "\n")
    click.echo(f"wrote {len(graphs)} graphs to {out_path}")


def _generate_rome(seed: int, options: dict):
    seed_n = int(options.get("seed_cycle", 10))
    ids = [str(i + 1) for i in range(seed_n)]
    seed_graph = build_graph(False, ids,
                             [(ids[i], ids[(i + 1) % seed_n])
                              for i in range(seed_n)])
    filter_opts = options.get("filter", {})
    cfg = MutationConfig(
        rounds=int(options.get("rounds", 100)),
        ops_per_round=int(options.get("ops_per_round", 5)),
        op_probabilities=tuple(options.get("op_probabilities",
                                           (0.2, 0.2, 0.2, 0.2, 0.2))),
        perturbation=float(options.get("perturbation", 0.02)),
        size_bounds=tuple(options.get("size_bounds", (10, 100))),
        rng_seed=seed,
        filter=SuitabilityFilter(
            require_connected=filter_opts.get("require_connected", True),
            density_bounds=tuple(filter_opts.get("density_bounds",
                                                 (0.0, 1.0))),
            max_degree_seq_distance=filter_opts.get(
                "max_degree_seq_distance", 2.0)))
    graphs = mutate_rome(seed_graph, cfg)
    return graphs, rome_provenance(f"cycle of {seed_n}", cfg)


def _generate_north(seed: int, options: dict):
    import random

    count = int(options.get("count", 100))
    min_n = int(options.get("min_nodes", 10))
    max_n = int(options.get("max_nodes", 100))
    rng = random.Random(seed)
    inputs = []
    for _ in range(count):
        n = rng.randint(min_n, max_n)
        ids = [str(i + 1) for i in range(n)]
        arcs = set()
        for _ in range(rng.randint(n, 2 * n)):
            u, v = rng.choice(ids), rng.choice(ids)
            if u != v:
                arcs.add((u, v))
        inputs.append(build_graph(True, ids, sorted(arcs)))
    graphs = sanitize_north(inputs, rng_seed=seed)
    return graphs, north_provenance(count, seed)


@main.command("import")
@click.argument("zip_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--data-dir", envvar="OGA_DATA_DIR", default="./data",
              show_default=True)
@click.option("--creator", default="importer", show_default=True)
def import_cmd(zip_file, data_dir, creator):
    """Bulk-import a zip of graph files straight into the archive."""
    store = ArchiveStore(Path(data_dir))
    try:
        results = store.import_zip(Path(zip_file).read_bytes(),
                                   creator=creator)
    except GraphbaseError as exc:
        raise click.ClickException(str(exc))
    finally:
        store.close()
    ok = sum(1 for r in results if r.graph_id)
    for r in results:
        if r.graph_id:
            click.echo(f"{r.filename}: {r.graph_id}")
        else:
            click.echo(f"{r.filename}: ERROR {r.error}")
    click.echo(f"imported {ok}/{len(results)} files")
    if ok < len(results):
        sys.exit(1)


@main.command()
@click.argument("owner")
@click.option("--data-dir", envvar="OGA_DATA_DIR", default="./data",
              show_default=True)
def token(owner, data_dir):
    """Issue an API token for an account."""
    store = ArchiveStore(Path(data_dir))
    try:
        click.echo(store.create_token(owner))
    finally:
        store.close()


if __name__ == "__main__":
    main()
