"""Command line: annotate and score, batch files only."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import score
from .annotate import SUPPORTED, CorpusError, UnsupportedLanguage
from .jobs import SidecarJob, run_job
from .score import TriplesError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlpsidecar",
        description="Batch annotation and MT-quality scoring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("annotate",
                       help="tag a corpus into a materials-style directory")
    p.add_argument("--input", required=True,
                   help="corpus file (.jsonl with sample_id+source, or text lines)")
    p.add_argument("--language", required=True, metavar="LANG",
                   help=f"one of: {', '.join(SUPPORTED)}")
    p.add_argument("--output", required=True,
                   help="directory for annotations.conllu, ne_spans.tsv, "
                        "transliterations.tsv")
    p.add_argument("--engine", choices=("auto", "rule", "stanza"),
                   default="auto")

    p = sub.add_parser("score", help="score source/hypothesis/reference triples")
    p.add_argument("--input", required=True, help="triples JSONL file")
    p.add_argument("--output", required=True,
                   help="score records file (sample_id, metric, value)")
    p.add_argument("--engine", choices=("auto", "proxy", "xcomet"),
                   default="auto")
    p.add_argument("--metric", default="xcomet",
                   help="metric name to stamp on records (default: xcomet)")
    p.add_argument("--model", help="local checkpoint path for the neural engine")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "annotate":
            job = SidecarJob(kind="annotate", input_path=Path(args.input),
                             output_path=Path(args.output),
                             language=args.language, engine=args.engine)
            summary = run_job(job)
            print(f"annotated {summary['sentences']} sentences "
                  f"({summary['entities']} entities, {summary['engine']} engine) "
                  f"-> {args.output}")
        else:
            summary = score.run(Path(args.input), Path(args.output),
                                engine=args.engine, metric=args.metric,
                                model=args.model)
            print(f"scored {summary['triples']} triples "
                  f"({summary['engine']} engine) -> {args.output}")
    except (CorpusError, TriplesError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except ImportError as exc:
        print(f"engine unavailable: {exc} (install the matching extra)",
              file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
