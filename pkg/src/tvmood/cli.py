"""Command-line front end.

Subcommands: ``lexicon-validate``, ``score``, ``features``, ``synth``,
``evaluate``. All randomness flows from ``--seed`` (default 42), so every
invocation is replayable. Exit status is 0 exactly when all requested
outputs were fully written.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from datetime import datetime, timedelta, timezone

from . import affect, evaluation, features, synth
from .corpus import Corpus, CorpusError, load_corpus_file, corpus_to_jsonl
from .lexicon import LexiconError, load_lexicon

_WINDOW_RE = re.compile(r"^(\d+)([dw])$")

SCORE_VALUE_COLUMNS = (
    "valence",
    "arousal",
    "dominance",
    "valence_sd",
    "arousal_sd",
    "dominance_sd",
    "matched_distinct_terms",
    "matched_tokens",
)


def parse_window(spec: str) -> timedelta:
    """Parse a window length such as ``7d`` or ``4w``."""
    match = _WINDOW_RE.match(spec.strip().lower())
    if not match or int(match.group(1)) == 0:
        raise ValueError(f"invalid window {spec!r}; use forms like '7d' or '4w'")
    amount = int(match.group(1))
    return timedelta(days=amount) if match.group(2) == "d" else timedelta(weeks=amount)


def default_origin(corpus: Corpus) -> datetime:
    """Earliest document timestamp, truncated to midnight UTC."""
    stamps = [doc.timestamp for doc in corpus.documents if doc.timestamp is not None]
    if not stamps:
        raise ValueError("corpus has no timestamped documents")
    return min(stamps).replace(hour=0, minute=0, second=0, microsecond=0)


def _write_text(path: str, content: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(content)


def _score_row(score: affect.AffectScore, spread: affect.AffectSpread) -> list[str]:
    return [
        repr(score.valence),
        repr(score.arousal),
        repr(score.dominance),
        repr(spread.valence),
        repr(spread.arousal),
        repr(spread.dominance),
        str(score.matched_distinct_terms),
        str(score.matched_token_total),
    ]


def cmd_lexicon_validate(args: argparse.Namespace) -> int:
    lexicon = load_lexicon(args.lexicon)
    ranges = []
    for dim in affect.DIMENSIONS:
        means = [getattr(entry, dim).mean for entry in lexicon.entries.values()]
        ranges.append(f"{dim} [{min(means):.4f}, {max(means):.4f}]")
    print(f"{lexicon.size} entries; " + "; ".join(ranges))
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    lexicon = load_lexicon(args.lexicon)
    corpus = load_corpus_file(args.corpus, args.format)

    if args.window is not None:
        window = parse_window(args.window)
        origin = (
            default_origin(corpus)
            if args.origin is None
            else _parse_cli_timestamp(args.origin)
        )
        series = [
            affect.score_windows(corpus, channel, lexicon, window, origin)
            for channel in corpus.channels()
        ]
        _write_text(args.out, affect.series_to_csv(series))
        points = sum(len(s.points) for s in series)
        print(f"wrote {points} series points to {args.out}")
        return 0

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    skipped: list[tuple[str, str]] = []
    rows = 0
    if args.per_document:
        writer.writerow(("id", "channel") + SCORE_VALUE_COLUMNS)
        for doc in corpus.documents:
            try:
                score, spread = affect.score_counts_with_spread(
                    doc.term_counts, lexicon
                )
            except affect.NoSignalError:
                skipped.append((doc.id, "no lexicon matches"))
                continue
            writer.writerow([doc.id, doc.channel] + _score_row(score, spread))
            rows += 1
    else:
        writer.writerow(("channel",) + SCORE_VALUE_COLUMNS)
        for channel in corpus.channels():
            try:
                score, spread = affect.score_channel(corpus, channel, lexicon)
            except affect.NoSignalError:
                skipped.append((channel, "no lexicon matches"))
                continue
            writer.writerow([channel] + _score_row(score, spread))
            rows += 1

    if skipped:
        writer.writerow([])
        writer.writerow(("skipped_id", "reason"))
        for item, reason in skipped:
            writer.writerow((item, reason))
    if rows == 0:
        print("error: no document or channel matched the lexicon", file=sys.stderr)
        return 2
    _write_text(args.out, buffer.getvalue())
    print(f"wrote {rows} rows ({len(skipped)} skipped) to {args.out}")
    return 0


def cmd_features(args: argparse.Namespace) -> int:
    lexicon = load_lexicon(args.lexicon)
    corpus = load_corpus_file(args.corpus, args.format)
    _write_text(args.out, features.features_to_csv(corpus, lexicon))
    print(f"wrote {len(corpus)} feature rows to {args.out}")
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    lexicon = load_lexicon(args.lexicon)
    with open(args.profiles, encoding="utf-8") as handle:
        raw = json.load(handle)
    if not isinstance(raw, list):
        raise ValueError("profiles file must hold a JSON array")
    profiles = []
    for item in raw:
        profiles.append(
            synth.GenreProfile(
                label=item["label"],
                document_count=item["document_count"],
                bias=item.get("bias", 1.0),
                target=tuple(item["target"]),
                token_range=tuple(item.get("token_range", (30, 80))),
                channel=item.get("channel"),
            )
        )
    start = (
        synth.DEFAULT_START
        if args.start is None
        else _parse_cli_timestamp(args.start)
    )
    corpus = synth.generate(profiles, lexicon, args.seed, start=start)
    _write_text(args.out, corpus_to_jsonl(corpus))
    print(f"wrote {len(corpus)} documents to {args.out}")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    from .corpus import filter_min_genre_support

    lexicon = load_lexicon(args.lexicon)
    corpus = load_corpus_file(args.corpus, args.format)
    corpus = filter_min_genre_support(corpus, args.min_genre_support)
    if len(corpus) == 0:
        raise ValueError(
            f"no genre reaches the minimum support of {args.min_genre_support}"
        )

    nb_kind = args.nb
    if nb_kind is None:
        nb_kind = "gaussian" if args.rep == "meta" else "multinomial"
    config = evaluation.ClassifierConfig(kind=nb_kind, alpha=args.alpha)
    report = evaluation.run_cv(
        corpus, lexicon, args.rep, args.folds, args.seed, config
    )

    prefix = args.out[:-5] if args.out.endswith(".json") else args.out
    json_path = prefix + ".json"
    csv_path = prefix + ".csv"
    _write_text(json_path, evaluation.report_to_json(report))
    _write_text(csv_path, evaluation.report_to_csv(report))
    print(
        f"weighted_average tp_rate={report.weighted_tp_rate:.4f} "
        f"fp_rate={report.weighted_fp_rate:.4f} auc={report.weighted_auc:.4f}"
    )
    print(f"wrote {json_path} and {csv_path}")
    return 0


def _parse_cli_timestamp(value: str) -> datetime:
    from .corpus import parse_timestamp

    try:
        return parse_timestamp(value)
    except ValueError:
        # bare dates are common on the command line
        return datetime.strptime(value, "%Y-%m-%d").replace(tzinfo=timezone.utc)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tvmood",
        description=(
            "Affect scoring and genre classification for television "
            "transcripts, driven by a valence/arousal/dominance word lexicon."
        ),
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def common(sub: argparse.ArgumentParser, corpus: bool = True) -> None:
        sub.add_argument("--lexicon", required=True, help="lexicon CSV path")
        if corpus:
            sub.add_argument("--corpus", required=True, help="corpus JSONL path")
            sub.add_argument(
                "--format",
                choices=("text", "counts"),
                default="text",
                help="corpus record mode (default: text)",
            )
        sub.add_argument("--seed", type=int, default=42, help="RNG seed (default 42)")

    sub = subparsers.add_parser(
        "lexicon-validate", help="parse a lexicon and print a summary"
    )
    sub.add_argument("--lexicon", required=True, help="lexicon CSV path")
    sub.set_defaults(handler=cmd_lexicon_validate)

    sub = subparsers.add_parser(
        "score", help="score channels (or documents, or time windows) to CSV"
    )
    common(sub)
    sub.add_argument("--out", required=True, help="output CSV path")
    sub.add_argument(
        "--per-document", action="store_true", help="one row per document"
    )
    sub.add_argument(
        "--window", help="window length such as 7d or 4w; emits a series CSV"
    )
    sub.add_argument(
        "--origin",
        help="window origin (ISO-8601); default: earliest timestamp at midnight UTC",
    )
    sub.set_defaults(handler=cmd_score)

    sub = subparsers.add_parser(
        "features", help="export the 19-feature matrix as CSV"
    )
    common(sub)
    sub.add_argument("--out", required=True, help="output CSV path")
    sub.set_defaults(handler=cmd_features)

    sub = subparsers.add_parser(
        "synth", help="generate a synthetic labeled corpus"
    )
    common(sub, corpus=False)
    sub.add_argument(
        "--profiles", required=True, help="JSON array of genre profiles"
    )
    sub.add_argument("--out", required=True, help="output JSONL path")
    sub.add_argument("--start", help="first document timestamp (ISO-8601)")
    sub.set_defaults(handler=cmd_synth)

    sub = subparsers.add_parser(
        "evaluate", help="stratified cross-validation; writes JSON + CSV reports"
    )
    common(sub)
    sub.add_argument("--out", required=True, help="output path prefix (or .json path)")
    sub.add_argument(
        "--rep", choices=evaluation.REPRESENTATIONS, default="vsm",
        help="document representation (default: vsm)",
    )
    sub.add_argument(
        "--nb",
        choices=("gaussian", "multinomial"),
        default=None,
        help="classifier variant (default: gaussian for meta, multinomial for vsm)",
    )
    sub.add_argument(
        "--alpha", type=float, default=1.0, help="multinomial smoothing (default 1.0)"
    )
    sub.add_argument(
        "--folds", type=int, default=5, help="fold count (default 5)"
    )
    sub.add_argument(
        "--min-genre-support",
        type=int,
        default=20,
        help="drop genres with fewer documents (default 20)",
    )
    sub.set_defaults(handler=cmd_evaluate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (LexiconError, CorpusError, affect.NoSignalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
