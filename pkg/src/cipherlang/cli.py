"""Command-line entry points.

Subcommands mirror the run lifecycle: ``cipher`` for map plumbing,
``prepare`` to stage materials, ``run-mt``/``run-task``/``probe`` to
execute, ``score`` and ``report`` to evaluate. Exit codes: 0 success,
1 runtime failure, 2 bad usage or config.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from .cipher import build_map, load_map, save_map
from .gateway import GatewayError
from .materials import MissingFile
from .metrics import (
    ScoredSample,
    aggregate,
    format_report,
    ingest_external_scores,
)
from .runner import (
    ConfigError,
    ExperimentConfig,
    LeakageError,
    ProbeRecord,
    RunRecord,
    TaskRecord,
    balanced_sample,
    build_gateway,
    load_config,
    map_path,
    prepare_materials,
    read_records,
    run_mt,
    run_probe,
    run_task,
    score_mt,
    score_probe,
    score_tasks,
    write_records,
)
from .strategies import MissingMaterial, strategy

RECORD_KINDS = {"mt": RunRecord, "task": TaskRecord, "probe": ProbeRecord}
SCORERS = {"mt": score_mt, "task": score_tasks, "probe": score_probe}


def _add_config_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="experiment config (YAML)")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--backend", choices=("live", "replay", "mock"),
                        help="override the config backend")
    parser.add_argument("--samples", type=int, help="override the sample count")
    parser.add_argument("--strategies", help="comma-separated strategy override")
    parser.add_argument("--workdir", help="override the working directory")
    parser.add_argument("--model", help="override the model id")


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    overrides: dict = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.backend is not None:
        overrides["backend"] = args.backend
    if args.samples is not None:
        overrides["samples"] = args.samples
    if args.strategies is not None:
        overrides["strategies"] = tuple(
            s.strip() for s in args.strategies.split(",") if s.strip()
        )
    if args.workdir is not None:
        overrides["workdir"] = Path(args.workdir)
    if args.model is not None:
        overrides["model"] = args.model
    return load_config(args.config, **overrides)


def _read_text_arg(value: str) -> str:
    return sys.stdin.read() if value == "-" else value


def cmd_cipher(args: argparse.Namespace) -> int:
    if args.map:
        map_ = load_map(args.map)
    else:
        if not args.language:
            raise ConfigError("cipher needs --language (or --map)")
        map_ = build_map(args.language, args.seed, cl_name=args.cl_name)
    if args.save:
        save_map(map_, args.save)
        print(f"wrote {args.save}")
    if args.apply is not None:
        print(map_.apply(_read_text_arg(args.apply)))
    elif args.invert is not None:
        print(map_.invert(_read_text_arg(args.invert)))
    elif not args.save:
        print(f"language: {map_.language}")
        print(f"script: {map_.script}")
        print(f"seed: {map_.seed}")
        print(f"cl_name: {map_.cl_name}")
        print(f"pairs: {len(map_.forward)}")
        print(f"sha256: {map_.content_hash}")
    return 0


def cmd_prepare(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    prepared = prepare_materials(cfg)
    bundle = prepared.bundle
    print(f"map: {map_path(cfg)}")
    print(f"manifest: {Path(cfg.workdir) / 'manifest.json'}")
    print(f"cl_name: {bundle.cl_name}")
    print(f"samples: {len(prepared.samples)}")
    print(f"exemplars: {len(bundle.exemplars)}")
    if bundle.lexicon is not None:
        print(f"lexicon entries: {len(bundle.lexicon.entries)}")
    if bundle.oracle_lexicon is not None:
        print(f"oracle entries: {len(bundle.oracle_lexicon.entries)}")
    return 0


def _dry_run_mt(cfg: ExperimentConfig) -> int:
    prepared = prepare_materials(cfg)
    samples = balanced_sample(prepared.samples, cfg.samples, cfg.seed)
    total = 0
    for name in cfg.strategies:
        cfg_s = strategy(name)
        for sample in samples:
            if cfg.direction == "to-eng":
                shown = (
                    prepared.map.apply(sample.source) if cfg_s.ciphered else sample.source
                )
            else:
                shown = sample.target
            if cfg_s.pivot:
                plan = prepared.factory.pivot_plan(cfg_s, shown, sample_id=sample.sample_id)
                chars = len(plan.stage1_prompt.full_prompt)
                print(f"{sample.sample_id}\t{name}:stage1\t{chars} chars")
            elif cfg_s.llm:
                prompt = prepared.factory.render(cfg_s, shown, sample_id=sample.sample_id)
                print(f"{sample.sample_id}\t{name}\t{len(prompt.full_prompt)} chars")
            else:
                print(f"{sample.sample_id}\t{name}\tno prompt (word-for-word)")
            total += 1
    print(f"dry run: {total} prompts over {len(samples)} samples, no backend calls")
    return 0


def cmd_run_mt(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    if args.dry_run:
        return _dry_run_mt(cfg)
    records = run_mt(cfg)
    out = Path(args.out) if args.out else Path(cfg.workdir) / "records-mt.jsonl"
    write_records(out, records)
    print(f"wrote {len(records)} records to {out}")
    return 0


def cmd_run_task(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    if args.dry_run:
        prepared = prepare_materials(cfg)
        from .runner import format_task_item, load_task_items

        items = load_task_items(cfg.materials, args.task)
        for item in items:
            text = format_task_item(args.task, item, prepared.map)
            print(f"{item['id']}\t{len(text)} chars")
        print(f"dry run: {len(items)} items, no backend calls")
        return 0
    records = run_task(cfg, args.task, mode=args.mode, limit=args.limit)
    out = (
        Path(args.out)
        if args.out
        else Path(cfg.workdir) / f"records-{args.task}-{args.mode}.jsonl"
    )
    write_records(out, records)
    correct = sum(1 for r in records if r.correct)
    print(f"wrote {len(records)} records to {out} ({correct}/{len(records)} correct)")
    return 0


def cmd_probe(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    if args.dry_run:
        prepared = prepare_materials(cfg)
        samples = balanced_sample(prepared.samples, cfg.probe_samples, cfg.seed)
        from .probe import build_probe_prompt, leakage_check

        allow = tuple(prepared.bundle.ne_glossary.values())
        for sample in samples:
            ciphered = prepared.map.apply(sample.source)
            prompt = build_probe_prompt(
                prepared.bundle, ciphered,
                include_materials=cfg.probe_materials, e=cfg.e,
            )
            leaks = leakage_check(prompt.full_prompt, sample.source, allow)
            status = "LEAK: " + ", ".join(leaks) if leaks else "clean"
            print(f"{sample.sample_id}\t{len(prompt.full_prompt)} chars\t{status}")
        print(f"dry run: {len(samples)} probe prompts, no backend calls")
        return 0
    records = run_probe(cfg)
    out = Path(args.out) if args.out else Path(cfg.workdir) / "records-probe.jsonl"
    write_records(out, records)
    parsed = sum(1 for r in records if r.parse_ok)
    print(f"wrote {len(records)} records to {out} ({parsed}/{len(records)} parsed)")
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    cls = RECORD_KINDS[args.kind]
    records = read_records(args.records, cls)
    scored = SCORERS[args.kind](records)
    out = Path(args.out) if args.out else Path(args.records).with_suffix(".scores.jsonl")
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8") as handle:
        for sample in scored:
            handle.write(json.dumps(asdict(sample), ensure_ascii=False, sort_keys=True) + "\n")
    print(f"wrote {len(scored)} scored samples to {out}")
    return 0


def _load_scored(path: Path) -> list[ScoredSample]:
    out = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            out.append(ScoredSample(**json.loads(line)))
    return out


def cmd_report(args: argparse.Namespace) -> int:
    scored: list[ScoredSample] = []
    for path in args.scores:
        scored.extend(_load_scored(Path(path)))
    if args.external:
        unmatched = ingest_external_scores(
            scored, Path(args.external).read_text(encoding="utf-8")
        )
        if unmatched:
            print(
                f"warning: {len(unmatched)} external rows had no matching sample",
                file=sys.stderr,
            )
    text = format_report(aggregate(scored))
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cipherlang",
        description="Constructed-language translation experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cipher", help="build, inspect or apply a cipher map")
    p.add_argument("--language", help="language code, e.g. spa")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cl-name", default=None, help="constructed language name")
    p.add_argument("--map", help="load an existing map file instead of building")
    p.add_argument("--save", help="write the serialized map here")
    p.add_argument("--apply", help="text to encipher ('-' reads stdin)")
    p.add_argument("--invert", help="text to decipher ('-' reads stdin)")
    p.set_defaults(func=cmd_cipher)

    p = sub.add_parser("prepare", help="build the map and stage materials")
    _add_config_args(p)
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("run-mt", help="run translation strategies")
    _add_config_args(p)
    p.add_argument("--out", help="records output path")
    p.add_argument("--dry-run", action="store_true",
                   help="render prompts without calling the backend")
    p.set_defaults(func=cmd_run_mt)

    p = sub.add_parser("run-task", help="run a reasoning task")
    _add_config_args(p)
    p.add_argument("--task", required=True, choices=("nli", "mmlu", "storycloze"))
    p.add_argument("--mode", default="direct", choices=("direct", "cascade"))
    p.add_argument("--limit", type=int, help="cap the item count")
    p.add_argument("--out", help="records output path")
    p.add_argument("--dry-run", action="store_true",
                   help="render items without calling the backend")
    p.set_defaults(func=cmd_run_task)

    p = sub.add_parser("probe", help="probe decipherment of the constructed language")
    _add_config_args(p)
    p.add_argument("--out", help="records output path")
    p.add_argument("--dry-run", action="store_true",
                   help="leak-check prompts without calling the backend")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("score", help="score a records file")
    p.add_argument("--records", required=True, help="records JSONL from a run")
    p.add_argument("--kind", required=True, choices=sorted(RECORD_KINDS))
    p.add_argument("--out", help="scored-samples output path")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("report", help="aggregate scored samples into a table")
    p.add_argument("--scores", nargs="+", action="extend", required=True,
                   help="scored-samples JSONL file(s), flag may repeat")
    p.add_argument("--external", help="sample_id<TAB>metric<TAB>value file to merge")
    p.add_argument("--out", help="report output path (default: stdout)")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (MissingFile, MissingMaterial, GatewayError, LeakageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
