"""Command-line interface.

Every subcommand accepts --config pointing at a key=value file; flags
override configuration values.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .config import AppConfig, build_scaffolder
from .evaluation import (
    audit_aggregate,
    bench_pipeline,
    coverage_report,
    read_audit_csv,
    render_audit_table,
    render_coverage_table,
    render_latency_table,
)
from .pipeline import PipelineSettings, scaffold_to_json
from .store import PictoStore
from .vector_store import precompute_definition_embeddings


def _load_config(config_path: str | None) -> AppConfig:
    return AppConfig.from_file(config_path) if config_path else AppConfig()


@click.group()
def main():
    """Multilingual text-to-pictogram scaffolding."""


@main.command("ingest-snapshot")
@click.argument("path", type=click.Path(exists=True))
@click.option("--langs", default="en,fr,it,es,ar", show_default=True, help="Comma-separated language codes to index.")
def ingest_snapshot_cmd(path, langs):
    """Validate and index a snapshot, print its manifest as JSON."""
    store = PictoStore(lang.strip() for lang in langs.split(","))
    manifest = store.ingest_snapshot(path)
    click.echo(json.dumps(manifest.to_dict(), indent=2))


@main.command("precompute-embeddings")
@click.argument("snapshot", type=click.Path(exists=True))
@click.option("--langs", default="en,fr,it,es,ar", show_default=True)
@click.option("--embedder", "embedder_id", default="hashed-ngram-64", show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
def precompute_embeddings_cmd(snapshot, langs, embedder_id, out_path):
    """Embed every non-empty definition into a binary embedding store."""
    from .embedding import get_embedder

    store = PictoStore(lang.strip() for lang in langs.split(","))
    store.ingest_snapshot(snapshot)
    embedding_store = precompute_definition_embeddings(store, get_embedder(embedder_id), out_path)
    click.echo(f"wrote {len(embedding_store)} vectors (dim {embedding_store.dim}) to {out_path}")


@main.command("scaffold")
@click.argument("file", type=click.Path(exists=True))
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--lang", default=None, help="Override language detection.")
@click.option("--json", "as_json", is_flag=True, help="Emit canonical JSON.")
@click.option("--timing/--no-timing", default=True, show_default=True)
def scaffold_cmd(file, config_path, lang, as_json, timing):
    """Scaffold a text file sentence by sentence."""
    config = _load_config(config_path)
    scaffolder = build_scaffolder(config)
    settings = PipelineSettings(
        k_keywords=config.k_keywords,
        language_override=lang,
        mode=config.mode,
        matcher=scaffolder.settings.matcher,
    )
    text = Path(file).read_text(encoding="utf-8")
    scaffolded = scaffolder.scaffold_document(text, settings)
    if as_json:
        click.echo(scaffold_to_json(scaffolded, include_timing=timing))
        return
    for item in scaffolded:
        click.echo(f"[{item.sentence.index}] {item.sentence.text}")
        for kw in item.keywords:
            match = next((m for m in item.matches if m.keyword == kw), None)
            if match is None:
                click.echo(f"    {kw.rank}. {kw.text} (score {kw.score:.4f}) -> no pictogram")
            else:
                click.echo(
                    f"    {kw.rank}. {kw.text} (score {kw.score:.4f}) -> "
                    f"pictogram {match.pictogram_id} (sim {match.similarity:.3f}, {match.method})"
                )


@main.command("evaluate-coverage")
@click.argument("corpus", type=click.Path(exists=True))
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--lang", required=True)
@click.option("--json", "as_json", is_flag=True)
def evaluate_coverage_cmd(corpus, config_path, lang, as_json):
    """Coverage metrics of the pipeline over a corpus file."""
    config = _load_config(config_path)
    scaffolder = build_scaffolder(config)
    settings = PipelineSettings(
        k_keywords=config.k_keywords,
        language_override=lang,
        mode=config.mode,
        matcher=scaffolder.settings.matcher,
    )
    text = Path(corpus).read_text(encoding="utf-8")
    scaffolded = scaffolder.scaffold_document(text, settings)
    report = coverage_report(scaffolded, lang)
    if as_json:
        click.echo(json.dumps(report.to_dict(), indent=2))
    else:
        click.echo(render_coverage_table([report]))


@main.command("bench-latency")
@click.argument("corpus", type=click.Path(exists=True))
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--lang", required=True)
@click.option("--warmup", default=5, show_default=True)
@click.option("--samples-out", type=click.Path(), default=None, help="Write raw samples, one float per line.")
@click.option("--json", "as_json", is_flag=True)
def bench_latency_cmd(corpus, config_path, lang, warmup, samples_out, as_json):
    """End-to-end per-sentence latency over a corpus file."""
    config = _load_config(config_path)
    scaffolder = build_scaffolder(config)
    settings = PipelineSettings(
        k_keywords=config.k_keywords,
        language_override=lang,
        mode=config.mode,
        matcher=scaffolder.settings.matcher,
    )
    report, samples = bench_pipeline(corpus, scaffolder, settings, warmup, lang)
    if samples_out:
        Path(samples_out).write_text("".join(f"{s}\n" for s in samples), encoding="utf-8")
    if as_json:
        click.echo(json.dumps(report.to_dict(), indent=2))
    else:
        click.echo(render_latency_table([report]))


@main.command("audit-report")
@click.argument("csv_path", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
def audit_report_cmd(csv_path, as_json):
    """Aggregate C/A/I audit records from a CSV file."""
    report = audit_aggregate(read_audit_csv(csv_path))
    if as_json:
        click.echo(json.dumps(report.to_dict(), indent=2))
    else:
        click.echo(render_audit_table(report))


@main.command("serve")
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--mode", type=click.Choice(["cached", "remote"]), default=None)
def serve_cmd(config_path, host, port, mode):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    config = _load_config(config_path)
    if mode:
        config.mode = mode
    scaffolder = build_scaffolder(config)
    app = create_app(
        scaffolder,
        image_dir=config.image_cache_dir or None,
        audit_path=config.audit_store_path,
        session_persist_dir=config.session_persist_dir or None,
    )
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main(sys.argv[1:])
