"""Operator command line: audit, evaluate, repair, tune, serve, import/export.

Exit codes: 0 ok, 1 input error, 2 quality gate failed (red corpus flag),
3 internal error. Every command with --json emits valid JSON on stdout.
"""

from __future__ import annotations

import json
import sys

import click

from . import metrics, robustify
from .autofix import autofix as run_autofix
from .config import COMPONENTS, ThresholdConfig
from .embeddings import EmbeddingFormatError, load_embeddings
from .metrics import TuningError
from .proxy import TrainingError, train_proxy
from .samples import Sample, State, ValidationError, read_jsonl, write_jsonl
from .service import CurationService

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_GATE = 2
EXIT_INTERNAL = 3


def _fail(message: str, code: int = EXIT_INPUT):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_store(path):
    if path is None:
        _fail("no embeddings file given (flag --embeddings or BENCH_EMBEDDINGS)")
    try:
        return load_embeddings(path)
    except (EmbeddingFormatError, OSError) as exc:
        _fail(f"embeddings: {exc}")


def _load_config(path) -> ThresholdConfig:
    if path is None:
        return ThresholdConfig()
    try:
        return ThresholdConfig.load(path)
    except (OSError, ValueError, KeyError) as exc:
        _fail(f"config: {exc}")


def _load_corpus(path) -> list[Sample]:
    try:
        return read_jsonl(path)
    except OSError as exc:
        _fail(f"corpus: {exc}")
    except ValueError as exc:
        _fail(f"corpus: {exc}")


def _emit(data: dict, out):
    text = json.dumps(data, indent=2, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


embeddings_option = click.option(
    "--embeddings", envvar="BENCH_EMBEDDINGS", type=click.Path(), default=None
)
config_option = click.option(
    "--config", "config_path", envvar="BENCH_CONFIG", type=click.Path(), default=None
)
seed_option = click.option("--seed", type=int, default=0, show_default=True)


class _Toolkit(click.Group):
    """Maps unexpected exceptions to the internal-error exit code."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (click.ClickException, click.Abort, SystemExit):
            raise
        except Exception as exc:  # noqa: BLE001 - boundary of the process
            click.echo(f"internal error: {exc}", err=True)
            sys.exit(EXIT_INTERNAL)


@click.group(cls=_Toolkit)
def main():
    """Benchmark curation toolkit."""


@main.command()
@click.argument("corpus_path", type=click.Path())
@embeddings_option
@config_option
@seed_option
@click.option("--json", "as_json", flag_value=True, default=True)
@click.option("--markdown", "as_json", flag_value=False)
@click.option("--top", type=int, default=5, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def audit(corpus_path, embeddings, config_path, seed, as_json, top, out):
    """Score a corpus file and gate on corpus-level red flags."""
    store = _load_store(embeddings)
    config = _load_config(config_path)
    samples = _load_corpus(corpus_path)
    try:
        corpus, reports = metrics.build_corpus(samples, store, config)
    except ValidationError as exc:
        _fail(f"corpus: {exc}")
    agg = corpus.component_aggregates()
    components = []
    any_red = False
    for i, c in enumerate(COMPONENTS):
        f = metrics.flag(float(agg[i]), c, config)
        any_red = any_red or f == "red"
        offenders = sorted(
            ((float(corpus.artifacts[sid][i]), sid) for sid in corpus.order),
            key=lambda p: (-p[0], p[1]),
        )[:top]
        hist = {"green": 0, "yellow": 0, "red": 0}
        for sid in corpus.order:
            hist[metrics.flag(float(corpus.artifacts[sid][i]), c, config)] += 1
        components.append(
            {
                "component": c,
                "aggregate": float(agg[i]),
                "flag": f,
                "flag_histogram": hist,
                "worst": [{"id": sid, "artifact": a} for a, sid in offenders],
            }
        )
    report = {
        "size": len(corpus),
        "components": components,
        "samples": [r.to_dict() for r in reports],
    }
    if as_json:
        _emit(report, out)
    else:
        lines = ["| component | aggregate | flag | worst |", "|---|---|---|---|"]
        for c in components:
            worst = ", ".join(f"{w['id']}({w['artifact']:.2f})" for w in c["worst"])
            lines.append(
                f"| {c['component']} | {c['aggregate']:.3f} | {c['flag']} | {worst} |"
            )
        text = "\n".join(lines)
        if out:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            click.echo(text)
    sys.exit(EXIT_GATE if any_red else EXIT_OK)


def _candidate_sample(premise, hypothesis, label, split) -> Sample:
    return Sample(id="candidate", premise=premise, hypothesis=hypothesis, label=label, split=split)


@main.command()
@click.argument("corpus_path", type=click.Path())
@click.option("--premise", required=True)
@click.option("--hypothesis", required=True)
@click.option("--label", required=True)
@click.option("--split", default="train", show_default=True)
@embeddings_option
@config_option
@seed_option
@click.option("--out", type=click.Path(), default=None)
def evaluate(corpus_path, premise, hypothesis, label, split, embeddings, config_path, seed, out):
    """Score one candidate sample against a corpus file."""
    store = _load_store(embeddings)
    config = _load_config(config_path)
    samples = _load_corpus(corpus_path)
    try:
        corpus, _ = metrics.build_corpus(samples, store, config)
        report = metrics.evaluate(
            _candidate_sample(premise, hypothesis, label, split), corpus, config
        )
    except ValidationError as exc:
        _fail(str(exc))
    _emit(report.to_dict(), out)


@main.command(name="autofix")
@click.argument("corpus_path", type=click.Path())
@click.option("--premise", required=True)
@click.option("--hypothesis", required=True)
@click.option("--label", required=True)
@click.option("--split", default="train", show_default=True)
@click.option("--target", default="yellow", show_default=True)
@click.option("--max-iter", type=int, default=10, show_default=True)
@click.option("--trace/--no-trace", default=True, show_default=True)
@embeddings_option
@config_option
@seed_option
@click.option("--out", type=click.Path(), default=None)
def autofix_cmd(
    corpus_path, premise, hypothesis, label, split, target, max_iter, trace,
    embeddings, config_path, seed, out,
):
    """Repair a candidate sample one word per iteration."""
    store = _load_store(embeddings)
    config = _load_config(config_path)
    samples = _load_corpus(corpus_path)
    try:
        corpus, _ = metrics.build_corpus(samples, store, config)
        result = run_autofix(
            _candidate_sample(premise, hypothesis, label, split),
            corpus,
            config,
            target=target,
            max_iter=max_iter,
        )
    except ValidationError as exc:
        _fail(str(exc))
    data = result.to_dict()
    if not trace:
        data.pop("iterations")
    _emit(data, out)


@main.command()
@click.argument("corpus_path", type=click.Path())
@click.option("--m", type=int, default=16, show_default=True)
@click.option("--train-frac", type=float, default=0.8, show_default=True)
@click.option("--tau-pred", type=float, default=0.75, show_default=True)
@click.option("--max-removed-frac", type=float, default=0.5, show_default=True)
@embeddings_option
@seed_option
@click.option("--out", type=click.Path(), default=None)
def aflite(corpus_path, m, train_frac, tau_pred, max_removed_frac, embeddings, seed, out):
    """Bin samples into good/bad by out-of-partition predictability."""
    store = _load_store(embeddings)
    samples = _load_corpus(corpus_path)
    try:
        report = robustify.aflite_bin(
            samples, store, m=m, train_frac=train_frac, tau_pred=tau_pred,
            max_removed_frac=max_removed_frac, seed=seed,
        )
    except (robustify.BinningError, TrainingError) as exc:
        _fail(str(exc))
    data = report.to_dict()
    data["summary"] = {"good": len(report.good), "bad": len(report.bad)}
    click.echo(
        f"binned {len(report.bad)} bad / {len(report.good)} good "
        f"over {report.partitions} partitions",
        err=True,
    )
    _emit(data, out)


@main.command()
@click.argument("corpus_path", type=click.Path())
@click.option("--premise", required=True)
@click.option("--hypothesis", required=True)
@click.option("--label", required=True)
@click.option("--tau-sem", type=float, default=0.5, show_default=True)
@click.option("--k", type=int, default=50, show_default=True)
@embeddings_option
@seed_option
@click.option("--out", type=click.Path(), default=None)
def repair(corpus_path, premise, hypothesis, label, tau_sem, k, embeddings, seed, out):
    """Adversarially repair one sample against a proxy trained on the corpus."""
    store = _load_store(embeddings)
    samples = _load_corpus(corpus_path)
    try:
        model = train_proxy(samples, store, seed=seed)
    except TrainingError as exc:
        _fail(str(exc))
    result = robustify.tf_repair(
        _candidate_sample(premise, hypothesis, label, "train"), model, store,
        tau_sem=tau_sem, k=k,
    )
    _emit(result.to_dict(), out)


@main.command()
@click.argument("corpus_path", type=click.Path())
@click.option("--out", type=click.Path(), required=True)
@embeddings_option
@seed_option
def tune(corpus_path, out, embeddings, seed):
    """Derive a threshold configuration from a trusted seed corpus."""
    store = _load_store(embeddings)
    samples = _load_corpus(corpus_path)
    try:
        cfg = metrics.tune_thresholds(samples, store)
    except (TuningError, ValidationError) as exc:
        _fail(str(exc))
    cfg.save(out)
    click.echo(f"wrote {out}", err=True)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--data-dir", envvar="BENCH_DATA_DIR", type=click.Path(), required=True)
@embeddings_option
@config_option
@seed_option
def serve(host, port, data_dir, embeddings, config_path, seed):
    """Run the HTTP service."""
    import uvicorn

    from .api import create_app

    store = _load_store(embeddings)
    config = _load_config(config_path)
    service = CurationService(data_dir, store, config, seed=seed)
    uvicorn.run(create_app(service), host=host, port=port)


@main.command(name="import")
@click.argument("corpus_path", type=click.Path())
@click.option("--data-dir", envvar="BENCH_DATA_DIR", type=click.Path(), required=True)
@embeddings_option
@config_option
@seed_option
def import_cmd(corpus_path, data_dir, embeddings, config_path, seed):
    """Load a corpus file into a service data directory, replaying lifecycle."""
    store = _load_store(embeddings)
    config = _load_config(config_path)
    samples = _load_corpus(corpus_path)
    service = CurationService(data_dir, store, config, seed=seed)
    for s in samples:
        service.create_sample(
            premise=s.premise, hypothesis=s.hypothesis, label=s.label,
            split=s.split, author=s.author, sample_id=s.id,
        )
        if s.state == State.DRAFT:
            continue
        service.evaluate_sample(s.id)
        if s.state == State.EVALUATED:
            continue
        result = service.submit(s.id)
        if s.state == State.PENDING:
            continue
        action = "reject" if s.state == State.REJECTED else "accept"
        service.decide(result["batch_id"], s.id, action, analyst="import")
    click.echo(f"imported {len(samples)} samples into {data_dir}", err=True)


@main.command()
@click.argument("out_path", type=click.Path())
@click.option("--data-dir", envvar="BENCH_DATA_DIR", type=click.Path(), required=True)
@embeddings_option
@config_option
@seed_option
def export(out_path, data_dir, embeddings, config_path, seed):
    """Write all samples in a service data directory to a corpus file."""
    store = _load_store(embeddings)
    config = _load_config(config_path)
    service = CurationService(data_dir, store, config, seed=seed)
    write_jsonl(list(service.samples.values()), out_path)
    click.echo(f"wrote {len(service.samples)} samples to {out_path}", err=True)


if __name__ == "__main__":
    main()
