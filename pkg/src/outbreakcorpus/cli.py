"""Command-line entry points.

Every subcommand is deterministic given its inputs, flags and --seed, and
failures print one "error-class: message" line to stderr and exit 1.
"""

from __future__ import annotations

import functools
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path

import click

from . import __version__
from .analytics import corpus_stats, lda_prepare, mention_ratio, pattern_counts
from .config import load_config
from .corpusio import (
    list_document_dirs,
    load_corpus,
    process_document,
    read_raw_document,
    write_document,
)
from .errors import CorpusError, FileFormatError
from .indexing import BuildOptions, build_index, load_index, save_index
from .model import AnnotatedDocument, DocumentMetadata, validate_document
from .resources import default_dictionary, default_stopwords, load_wordlist
from .service import SnapshotHolder, create_app
from .standoff import emit_standoff, parse_standoff
from .topics import lda_train, top_words


def _guard(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except CorpusError as exc:
            click.echo(f"{exc.code}: {exc}", err=True)
            sys.exit(1)
    return wrapper


def _split_words(raw: str):
    return [w for w in (part.strip() for part in raw.split(",")) if w]


def _fragment_document(text: str, ann: str) -> AnnotatedDocument:
    # placeholder metadata (in-range year): only annotations matter here
    frag = parse_standoff(text, ann)
    meta = DocumentMetadata(doc_id="-", title="-", publication_year=1900)
    return AnnotatedDocument(metadata=meta, text=text,
                             zones=frag.zones, entities=frag.entities)


@click.group()
@click.version_option(__version__)
def main():
    """Build and explore an annotated corpus of outbreak reports."""


@main.group()
def pipeline():
    """Raw-text ingestion."""


@pipeline.command("run")
@click.option("--in", "in_dir", required=True,
              type=click.Path(exists=True, file_okay=False),
              help="Corpus root of raw document directories.")
@click.option("--out", "out_dir", required=True,
              type=click.Path(file_okay=False),
              help="Where processed documents are written.")
@click.option("--jobs", default=1, show_default=True,
              type=click.IntRange(min=1), help="Parallel workers.")
@click.option("--vocabulary", "vocabulary_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Word list for hyphenation repair (default: bundled).")
@_guard
def pipeline_run(in_dir, out_dir, jobs, vocabulary_path):
    """Process every document directory under --in and write the results."""
    vocabulary = load_wordlist(vocabulary_path) if vocabulary_path else None
    dirs = list_document_dirs(in_dir)

    def one(path):
        return process_document(read_raw_document(path), vocabulary)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            docs = list(pool.map(one, dirs))
    else:
        docs = [one(path) for path in dirs]
    # write in doc-id order so reruns produce identical trees
    root = Path(out_dir)
    for doc in sorted(docs, key=lambda d: d.metadata.doc_id):
        write_document(doc, root / doc.metadata.doc_id)
    click.echo(f"processed {len(docs)} documents into {out_dir}")


@main.group()
def ann():
    """Standoff annotation round-trips."""


@ann.command("import")
@click.argument("text_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("ann_file", type=click.Path(exists=True, dir_okay=False))
@_guard
def ann_import(text_file, ann_file):
    """Parse an annotation file and print it back in canonical form."""
    doc = _fragment_document(Path(text_file).read_text("utf-8"),
                             Path(ann_file).read_text("utf-8"))
    click.echo(emit_standoff(doc), nl=False)


@ann.command("export")
@click.argument("doc_dir", type=click.Path(exists=True, file_okay=False))
@_guard
def ann_export(doc_dir):
    """Ingest one raw document directory and print its annotations."""
    doc = process_document(read_raw_document(doc_dir))
    click.echo(emit_standoff(doc), nl=False)


@ann.command("validate")
@click.argument("ann_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--text", "text_file", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Text the offsets refer to (default: sibling .txt).")
@_guard
def ann_validate(ann_file, text_file):
    """Check one annotation file; lists violations and exits 1 on any."""
    ann_path = Path(ann_file)
    text_path = Path(text_file) if text_file else ann_path.with_suffix(".txt")
    if not text_path.is_file():
        raise FileFormatError("no text file to validate against",
                              path=str(text_path))
    doc = _fragment_document(text_path.read_text("utf-8"),
                             ann_path.read_text("utf-8"))
    violations = validate_document(doc)
    for violation in violations:
        click.echo(str(violation))
    if violations:
        sys.exit(1)
    click.echo("ok")


@main.group()
def index():
    """Search index maintenance."""


@index.command("build")
@click.option("--in", "in_dir", required=True,
              type=click.Path(exists=True, file_okay=False),
              help="Corpus root of raw document directories.")
@click.option("--out", "out_dir", required=True,
              type=click.Path(file_okay=False),
              help="Directory the index is written to.")
@click.option("--exclude-tables/--include-tables", default=True,
              show_default=True, help="Drop table zones from search.")
@click.option("--exclude-header-footer/--include-header-footer", default=True,
              show_default=True, help="Drop running heads from search.")
@_guard
def index_build(in_dir, out_dir, exclude_tables, exclude_header_footer):
    """Ingest a corpus and write a searchable index."""
    options = BuildOptions(exclude_table_zones=exclude_tables,
                           exclude_header_footer=exclude_header_footer)
    built = build_index(load_corpus(in_dir), options)
    version = save_index(built, out_dir)
    click.echo(f"indexed {built.doc_count} documents, version {version}")


@main.command()
@click.option("--index", "index_dir", default=None,
              type=click.Path(exists=True, file_okay=False))
@click.option("--port", default=None, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--pages", "page_image_dir", default=None,
              type=click.Path(file_okay=False),
              help="Directory of page images served at /pages/.")
@click.option("--cors", "cors_origin", default=None)
@click.option("--config", "config_file", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="key=value config file; flags override it.")
@_guard
def serve(index_dir, port, host, page_image_dir, cors_origin, config_file):
    """Serve the search API over HTTP."""
    config = load_config(config_file)
    if port is not None:
        config = replace(config, port=port)
    if index_dir is not None:
        config = replace(config, index_dir=index_dir)
    if page_image_dir is not None:
        config = replace(config, page_image_dir=page_image_dir)
    if cors_origin is not None:
        config = replace(config, cors_origin=cors_origin)
    if config.index_dir is None:
        raise CorpusError("no index directory given (use --index or a config file)")
    holder = SnapshotHolder()
    holder.swap(load_index(config.index_dir))
    app = create_app(holder, config)

    import uvicorn

    uvicorn.run(app, host=host, port=config.port, log_level="warning")


@main.command()
@click.option("--in", "in_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@_guard
def stats(in_dir):
    """Print corpus size statistics as JSON."""
    result = corpus_stats(load_corpus(in_dir))

    def series(s):
        if s is None:
            return None
        return {"min": s.minimum, "max": s.maximum,
                "mean": s.mean, "stddev": s.stddev}

    payload = {
        "documents": len(result.per_doc),
        "total_sentences": result.total_sentences,
        "total_words": result.total_words,
        "sentences": series(result.sentence_stats),
        "words": series(result.word_stats),
        "histogram": dict(result.histogram),
        "per_document": {doc_id: {"sentences": s, "words": w}
                         for doc_id, (s, w) in result.per_doc.items()},
    }
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


@main.command()
@click.option("--in", "in_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--pos", "pos_class", required=True,
              help="Part-of-speech class of the counted word.")
@click.option("--targets", required=True,
              help="Comma-separated words that must immediately follow.")
@_guard
def freq(in_dir, pos_class, targets):
    """Count words of a POS class occurring right before target words."""
    counts = pattern_counts(load_corpus(in_dir), pos_class,
                            _split_words(targets))
    for term, count in counts:
        click.echo(f"{term}\t{count}")


@main.command()
@click.option("--in", "in_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--a", "words_a", required=True,
              help="Comma-separated numerator word set.")
@click.option("--b", "words_b", required=True,
              help="Comma-separated denominator word set.")
@_guard
def ratio(in_dir, words_a, words_b):
    """Occurrence counts of two word sets and their quotient."""
    result = mention_ratio(load_corpus(in_dir), _split_words(words_a),
                           _split_words(words_b))
    shown = "undefined" if result.undefined else f"{result.ratio:.6f}"
    click.echo(f"{result.count_a} / {result.count_b} = {shown}")


@main.command()
@click.option("--in", "in_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--zone", "zone_label", required=True,
              help="Zone label whose text is modeled.")
@click.option("--years", required=True, help="Publication year range LO:HI.")
@click.option("--k", required=True, type=click.IntRange(min=2),
              help="Number of topics.")
@click.option("--iters", default=200, show_default=True,
              type=click.IntRange(min=1))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--alpha", default=None, type=float,
              help="Document-topic smoothing (default: 50/K).")
@click.option("--beta", default=0.01, show_default=True, type=float)
@click.option("--stopwords", "stopwords_path", default=None,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--dictionary", "dictionary_path", default=None,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--top", default=5, show_default=True,
              type=click.IntRange(min=1), help="Words shown per topic.")
@_guard
def topics(in_dir, zone_label, years, k, iters, seed, alpha, beta,
           stopwords_path, dictionary_path, top):
    """Train a topic model on zone text and print top words per topic."""
    parts = years.split(":")
    if len(parts) != 2:
        raise click.BadParameter("expected LO:HI", param_hint="--years")
    try:
        year_range = (int(parts[0]), int(parts[1]))
    except ValueError:
        raise click.BadParameter("expected LO:HI", param_hint="--years")
    stop = (load_wordlist(stopwords_path) if stopwords_path
            else default_stopwords())
    dictionary = (load_wordlist(dictionary_path) if dictionary_path
                  else default_dictionary())
    bags = lda_prepare(load_corpus(in_dir), zone_label, year_range,
                       stop, dictionary)
    model = lda_train(bags, k=k, iterations=iters, alpha=alpha, beta=beta,
                      seed=seed)
    for topic in range(model.k):
        click.echo(f"topic {topic}: " + " ".join(top_words(model, topic, top)))


if __name__ == "__main__":
    main()
