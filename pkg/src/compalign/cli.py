"""Command-line surface: alignment, production, probability and learning
jobs over pattern files, with figure-style renders and CSV reports.

All output is deterministic: identical inputs and flags produce
byte-identical output.  The ``SP_SEED`` environment variable is accepted
for compatibility but has no effect; the engine uses no randomness.
"""

from __future__ import annotations

import csv
import io
import pathlib
import sys

import click

from .align import AlignParams, build_alignments, produce_from_code, surface_sequence
from .codetable import CostModel, compute_code_sizes
from .learn import (
    LearnParams,
    grammar_costs,
    grammar_store,
    raw_size,
    search_grammars,
)
from .patterns import PatternParseError, PatternStore, Role
from .prob import ProbabilityMode, relative_probabilities
from .render import render_alignment

ALIGN_CSV_HEADER = ["rank", "CD", "B_N", "B_E", "code"]
PROB_CSV_HEADER = ["rank", "L", "p_ABS", "p_REL", "code"]
METRICS_CSV_HEADER = ["i", "O", "G", "E", "T", "T_over_O"]


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _read(path: str) -> str:
    try:
        return pathlib.Path(path).read_text()
    except OSError as exc:
        _fail(str(exc))


def _load_store(old: str, new: str | None = None, new_text: str | None = None):
    store = PatternStore()
    try:
        store.add_text(_read(old), Role.OLD)
        if new is not None:
            store.add_text(_read(new), Role.NEW)
        if new_text is not None:
            store.add_text(new_text, Role.NEW)
    except PatternParseError as exc:
        _fail(str(exc))
    return store


def _write_out(text: str, out: str | None) -> None:
    if out:
        pathlib.Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _align_params(beam_driving, beam_target, max_alignments, budget) -> AlignParams:
    return AlignParams(
        beam_driving=beam_driving,
        beam_target=beam_target,
        max_alignments=max_alignments,
        budget=budget,
    )


_cost_model_option = click.option(
    "--cost-model",
    type=click.Choice(["fractional", "sfe"]),
    default="fractional",
    show_default=True,
    help="Symbol cost model: fractional Shannon sizes or integer prefix codes.",
)


def _search_options(fn):
    for opt in reversed(
        [
            click.option("--beam-driving", type=int, default=20, show_default=True),
            click.option("--beam-target", type=int, default=200, show_default=True),
            click.option("--max-alignments", type=int, default=100, show_default=True),
            click.option("--budget", type=int, default=10_000, show_default=True),
        ]
    ):
        fn = opt(fn)
    return fn


@click.group()
def main() -> None:
    """Information compression by multiple alignment of symbol patterns.

    Pattern files hold one pattern per line (symbols separated by spaces,
    optional trailing "(N)" frequency) plus "%id" directives declaring
    identification-symbol names.  SP_SEED in the environment is accepted
    but ignored: every command is deterministic.
    """


@main.command()
@click.option("--old", required=True, help="Stored (Old) pattern file.")
@click.option("--new", required=True, help="Incoming (New) pattern file.")
@_cost_model_option
@_search_options
@click.option("--probabilities", is_flag=True, help="Append the probability CSV.")
@click.option("--lgen", is_flag=True, help="Charge unmatched New symbols in probabilities.")
@click.option("--orientation", type=click.Choice(["rows", "columns"]), default="rows", show_default=True)
@click.option("--top", type=int, default=1, show_default=True, help="Alignments to render.")
@click.option("--out", type=str, default=None, help="Write the CSV here instead of stdout.")
def align(
    old, new, cost_model, beam_driving, beam_target, max_alignments, budget,
    probabilities, lgen, orientation, top, out,
):
    """Build alignments of each New pattern against the Old patterns."""
    store = _load_store(old, new=new)
    if not store.new_patterns:
        _fail(f"{new}: no New patterns")
    table = compute_code_sizes(store, CostModel(cost_model))
    params = _align_params(beam_driving, beam_target, max_alignments, budget)
    any_result = False
    csv_rows = []
    prob_rows = []
    for pat in store.new_patterns:
        results = build_alignments(pat, store, table, params)
        if not results:
            continue
        any_result = True
        for sa in results[:top]:
            click.echo(render_alignment(sa, store, orientation), nl=False)
            click.echo()
        for rank, sa in enumerate(results, start=1):
            code = " ".join(store.table.name(s) for s in sa.code)
            csv_rows.append(
                [rank, f"{sa.CD:.6f}", f"{sa.B_N:.6f}", f"{sa.B_E:.6f}", code]
            )
        if probabilities:
            mode = ProbabilityMode.LGEN if lgen else ProbabilityMode.STRICT
            ref = relative_probabilities(results, pat, table, mode)
            for rank, (sa, p) in enumerate(zip(ref.members, ref.p_rel), start=1):
                code = " ".join(store.table.name(s) for s in sa.code)
                prob_rows.append(
                    [rank, f"{sa.B_E:.6f}", f"{2.0 ** -sa.B_E:.6g}", f"{p:.6f}", code]
                )
    text = _csv_text(ALIGN_CSV_HEADER, csv_rows)
    if probabilities:
        text += _csv_text(PROB_CSV_HEADER, prob_rows)
    _write_out(text, out)
    if not any_result:
        sys.exit(2)


@main.command()
@click.option("--old", required=True, help="Stored (Old) pattern file.")
@click.option("--code", "code_literal", default=None, help="Code pattern, as one quoted string.")
@click.option("--new", "code_file", default=None, help="File of code patterns, one per line.")
@_cost_model_option
@_search_options
@click.option("--orientation", type=click.Choice(["rows", "columns"]), default="rows", show_default=True)
@click.option("--out", type=str, default=None, help="Write the decoded sequences here.")
def produce(
    old, code_literal, code_file, cost_model,
    beam_driving, beam_target, max_alignments, budget, orientation, out,
):
    """Regenerate the original pattern(s) from code pattern(s)."""
    if code_literal is None and code_file is None:
        _fail("produce needs --code or --new")
    store = _load_store(old, new=code_file, new_text=code_literal)
    if not store.new_patterns:
        _fail("no code patterns supplied")
    table = compute_code_sizes(store, CostModel(cost_model))
    params = AlignParams(
        beam_driving=beam_driving,
        beam_target=beam_target,
        max_alignments=max_alignments,
        budget=budget,
        patience=10,
        prefer_explained=False,
    )
    lines = []
    any_result = False
    for pat in store.new_patterns:
        sa = produce_from_code(pat, store, table, params)
        if sa is None:
            lines.append("")
            continue
        any_result = True
        click.echo(render_alignment(sa, store, orientation), nl=False)
        click.echo()
        lines.append(" ".join(store.table.name(s) for s in surface_sequence(sa, store)))
    _write_out("\n".join(lines) + "\n", out)
    if not any_result:
        sys.exit(2)


@main.command()
@click.option("--old", required=True, help="Stored (Old) pattern file.")
@click.option("--new", required=True, help="Incoming (New) pattern file.")
@_cost_model_option
@_search_options
@click.option("--lgen", is_flag=True, help="Charge unmatched New symbols; compare across coverage.")
@click.option("--out", type=str, default=None, help="Write the CSV here instead of stdout.")
def probs(
    old, new, cost_model, beam_driving, beam_target, max_alignments, budget, lgen, out
):
    """Relative probabilities over the reference set of each New pattern."""
    store = _load_store(old, new=new)
    if not store.new_patterns:
        _fail(f"{new}: no New patterns")
    table = compute_code_sizes(store, CostModel(cost_model))
    params = _align_params(beam_driving, beam_target, max_alignments, budget)
    mode = ProbabilityMode.LGEN if lgen else ProbabilityMode.STRICT
    rows = []
    any_result = False
    for pat in store.new_patterns:
        results = build_alignments(pat, store, table, params)
        if not results:
            continue
        any_result = True
        ref = relative_probabilities(results, pat, table, mode)
        for rank, (sa, p) in enumerate(zip(ref.members, ref.p_rel), start=1):
            code = " ".join(store.table.name(s) for s in sa.code)
            rows.append(
                [rank, f"{sa.B_E:.6f}", f"{2.0 ** -sa.B_E:.6g}", f"{p:.6f}", code]
            )
    _write_out(_csv_text(PROB_CSV_HEADER, rows), out)
    if not any_result:
        sys.exit(2)


@main.command()
@click.option("--new", required=True, help="Corpus file: one pattern per line.")
@_cost_model_option
@click.option("--tree-width", type=int, default=16, show_default=True)
@click.option("--branch", type=int, default=4, show_default=True)
@click.option("--metrics", "metrics_path", type=str, default=None, help="Write the per-pattern metrics CSV here.")
@click.option("--out", type=str, default=None, help="Write the winning grammar here instead of stdout.")
def learn(new, cost_model, tree_width, branch, metrics_path, out):
    """Learn a grammar for the corpus by minimum-length-encoding search."""
    try:
        corpus_store = PatternStore()
        corpus_store.add_text(_read(new), Role.NEW)
    except PatternParseError as exc:
        _fail(str(exc))
    news = [
        [corpus_store.table.name(s) for s in pat.symbols]
        for pat in corpus_store.new_patterns
    ]
    if not news:
        _fail(f"{new}: empty corpus")
    params = LearnParams(
        tree_width=tree_width, branch=branch, cost_model=CostModel(cost_model)
    )
    final, metrics = search_grammars(news, params)
    best = final[0]
    _write_out(grammar_store(best).serialize(Role.OLD), out)
    if metrics_path:
        rows = [
            [m.index, f"{m.O:.6f}", f"{m.G:.6f}", f"{m.E:.6f}", f"{m.T:.6f}", f"{m.T_over_O:.6f}"]
            for m in metrics
        ]
        pathlib.Path(metrics_path).write_text(_csv_text(METRICS_CSV_HEADER, rows))
    O = sum(raw_size(toks) for toks in news)
    ratio = best.T / O if O else 1.0
    click.echo(f"T={best.T:.6f} O={O:.6f} T/O={ratio:.6f}", err=True)


@main.command()
@click.option("--old", required=True, help="Stored (Old) pattern file.")
@click.option("--new", required=True, help="Incoming (New) pattern file.")
@_cost_model_option
@_search_options
@click.option("--orientation", type=click.Choice(["rows", "columns"]), default="rows", show_default=True)
@click.option("--out", type=str, default=None, help="Write the render here instead of stdout.")
def render(
    old, new, cost_model, beam_driving, beam_target, max_alignments, budget,
    orientation, out,
):
    """Render the best alignment of each New pattern."""
    store = _load_store(old, new=new)
    if not store.new_patterns:
        _fail(f"{new}: no New patterns")
    table = compute_code_sizes(store, CostModel(cost_model))
    params = _align_params(beam_driving, beam_target, max_alignments, budget)
    chunks = []
    for pat in store.new_patterns:
        results = build_alignments(pat, store, table, params)
        if results:
            chunks.append(render_alignment(results[0], store, orientation))
    if not chunks:
        _write_out("", out)
        sys.exit(2)
    _write_out("\n".join(chunks), out)


if __name__ == "__main__":  # pragma: no cover
    main()
