"""Module CLI.

Entry point of the `geomsign` command. Exit codes: 0 on success, 2 when a
validation finds violations or an input file is malformed, 1 on runtime
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from pathlib import Path

import pandas as pd
from diff_engine import EngineError
from fold_planner import (
    BLOCK_KIND,
    NOVEL_KIND,
    PlanError,
    check_plan,
    load_plan,
    make_blocks,
    make_novel_signer_split,
    save_plans,
)
from multiview_synth import SynthError, generate_dataset
from sign_data import (
    ALL_VIEWS,
    DatasetManifest,
    ManifestFormatError,
    SignDataError,
    ViewAngle,
    Violation,
    dataset_quality,
    dataset_stats,
    ingest_directory,
    load_manifest,
    load_pose_file,
    validate_manifest,
)
from sign_data.quality import write_quality_csv
from sign_graph import default_edges, default_node_map, dump_graph, normalized_adjacency
from temporal_ponita import ConfigError, ModelError, Variant, load_checkpoint
from utilities import logger, settings

from .config import load_run_config
from .data import SignDataset
from .errors import HarnessError
from .evaluation import evaluate
from .experiment import MetricsTable, relative_drops, run_experiment
from .report import FORMATS, report
from .training import train

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_INVALID = 2

RUNTIME_ERRORS = (SignDataError, PlanError, SynthError, EngineError, ModelError, HarnessError, OSError)
INVALID_INPUT_ERRORS = (ManifestFormatError, ConfigError)


def parse_views(text: str) -> tuple[ViewAngle, ...]:
    """Views from their letter code, e.g. `lfr` or `f`."""
    letters = {view.letter: view for view in ALL_VIEWS}
    unknown = sorted(set(text) - set(letters))

    if not text or unknown:
        msg = f"views must be letters among l, f, r; got {text!r}"
        raise argparse.ArgumentTypeError(msg)

    return tuple(letters[letter] for letter in dict.fromkeys(text))


def parse_view(text: str) -> ViewAngle | None:
    """One view by name (`Front`) or letter (`f`); `all` gives None."""
    if text.lower() == "all":
        return None

    for view in ALL_VIEWS:
        if text in {view.value, view.letter}:
            return view

    msg = f"unknown view {text!r}, expected Left, Front, Right, a letter or all"
    raise argparse.ArgumentTypeError(msg)


def _write_json(document: object, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(document, indent=2, default=str) + "\n", encoding="utf-8")
    return path


def _num_classes(manifest: DatasetManifest) -> int:
    return max(manifest.gloss_ids(), default=0) + 1


def _print(text: str) -> None:
    sys.stdout.write(text + "\n")


def _report_violations(violations: Sequence[Violation | str]) -> int:
    for violation in violations:
        logger.error_(str(violation))

    if violations:
        logger.error_(f"{len(violations)} violations")
        return EXIT_INVALID

    logger.info_("No violations")
    return EXIT_OK


def cmd_ingest(args: argparse.Namespace) -> int:
    """Convert `.npy` rasters into pose files and a manifest."""
    manifest = ingest_directory(args.source, args.vocabulary, args.out)
    logger.info_(f"Ingested {len(manifest.entries)} clips into {args.out}")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    """Check manifest rules and, optionally, that every pose file decodes."""
    manifest = load_manifest(args.manifest)
    violations = validate_manifest(manifest)

    if args.check_files:
        for entry in manifest.entries:
            try:
                load_pose_file(manifest.resolve(entry), entry)
            except (OSError, SignDataError) as err:
                violations.append(Violation(entry.clip_id, "unreadable pose file", str(err)))

    return _report_violations(violations)


def cmd_stats(args: argparse.Namespace) -> int:
    """Write the per-clip quality CSV and a JSON summary next to it."""
    manifest = load_manifest(args.manifest)
    quality = dataset_quality(manifest, args.workers)
    stats = dataset_stats(manifest)
    out = Path(args.out)

    write_quality_csv(quality, out)
    summary = {
        "dataset_success": quality.dataset_success,
        "human_success": quality.human_success,
        "synthetic_success": quality.synthetic_success,
        "per_sign_success": {str(key): val for key, val in quality.per_sign_success.items()},
        "failed_counts": {str(key): val for key, val in quality.failed_counts.items()},
        "per_sign_view_success": {f"{key[0]}_{key[1]}": val for key, val in quality.per_sign_view_success.items()},
        "clips_per_signer": stats.clips_per_signer,
        "clips_per_view": stats.clips_per_view,
        "handedness": stats.handedness,
        "strong_handshapes": stats.strong_handshapes,
        "weak_handshapes": stats.weak_handshapes,
        "notes": quality.notes(),
    }
    _write_json(summary, out.with_suffix(".json"))

    for note in quality.notes():
        logger.info_(note)

    logger.info_(f"Wrote {out} and {out.with_suffix('.json')}")
    return EXIT_OK


def cmd_split(args: argparse.Namespace) -> int:
    """Write fold plans, one JSON file each."""
    manifest = load_manifest(args.manifest)

    if args.protocol == BLOCK_KIND:
        plans = make_blocks(
            manifest,
            args.views,
            args.include_sb,
            seed=args.seed,
            test_view=args.test_view,
            rotate_signers=args.rotate_signers,
        )
    else:
        plans = [
            make_novel_signer_split(
                manifest,
                args.include_sb,
                args.include_avatar,
                seed=args.seed,
                views=args.views,
                avatar_views=args.avatar_views,
            ),
        ]

    save_plans(plans, args.out)
    return _report_violations([f"{plan.name}: {problem}" for plan in plans for problem in check_plan(plan)])


def cmd_synth(args: argparse.Namespace) -> int:
    """Generate a synthetic multi-view dataset."""
    manifest = generate_dataset(args.classes, args.signers, args.frames, args.seed, args.out, workers=args.workers)
    logger.info_(f"Generated {len(manifest.entries)} clips into {args.out}")
    return EXIT_OK


def cmd_train(args: argparse.Namespace) -> int:
    """Train one fold plan."""
    manifest = load_manifest(args.manifest)
    config, train_settings = load_run_config(args.config, _num_classes(manifest))

    if args.variant is not None:
        config = config.with_overrides(variant=args.variant)

    dataset = SignDataset(manifest, train_settings.frames)
    run = train(load_plan(args.plan), config, args.seed, dataset, train_settings, args.out)
    logger.info_(f"Best epoch {run.best_epoch}, validation Top-1 {run.best_val_top1:.4f}, saved to {args.out}")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    """Score a checkpoint on the test clips of a plan in one or every view."""
    manifest = load_manifest(args.manifest)
    plan = load_plan(args.plan)
    _, train_settings = load_run_config(args.config)
    dataset = SignDataset(manifest, train_settings.frames)
    views = [args.view] if args.view is not None else list(ALL_VIEWS)
    checkpoint = load_checkpoint(args.checkpoint)

    scores = {view.value: evaluate(checkpoint, plan, view, dataset)._asdict() for view in views}
    _print(json.dumps(scores, indent=2))

    if args.out is not None:
        _write_json(scores, Path(args.out))

    return EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    """Run a whole protocol and write its metrics."""
    manifest = load_manifest(args.manifest)
    config, train_settings = load_run_config(args.config, _num_classes(manifest))
    out = Path(args.out)

    table = run_experiment(
        manifest,
        args.views,
        args.variant or config.variant,
        args.include_sb,
        args.include_avatar,
        args.seeds,
        protocol=args.protocol,
        config=config,
        train_settings=train_settings,
        out=out / "runs",
        workers=args.workers,
        avatar_views=args.avatar_views,
    )

    report([table], out)
    table.scores_frame().to_csv(out / "scores.csv", index=False, float_format="%.10g")
    relative_drops(table).to_csv(out / "drops.csv", index=False, float_format="%.10g")
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    """Render metrics CSV files as one combined report."""
    tables = [MetricsTable.from_frame(pd.read_csv(path)) for path in args.metrics]
    for path in report(tables, args.out, args.format, args.stem):
        logger.info_(f"Wrote {path}")
    return EXIT_OK


def cmd_graph(args: argparse.Namespace) -> int:
    """Print the node map, edges and normalized adjacency degrees as JSON."""
    node_map, edges = default_node_map(), default_edges()
    document = dump_graph(node_map, edges)

    if args.dump_map:
        document["normalized_degree"] = normalized_adjacency(edges).sum(axis=1).round(12).tolist()
        _print(json.dumps(document, indent=2))
    else:
        _print(f"{len(document['nodes'])} nodes, {len(document['edges'])} edges")

    return EXIT_OK


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="Run configuration JSON (model and training keys).")
    parser.add_argument("--seed", type=int, default=0, help="Experiment seed.")
    parser.add_argument(
        "--variant",
        type=Variant.parse,
        default=None,
        help="invariant or baseline; overrides the config.",
    )


def build_parser() -> argparse.ArgumentParser:
    """The `geomsign` argument parser."""
    parser = argparse.ArgumentParser(prog="geomsign", description="Multi-view isolated sign recognition.")
    parser.add_argument("--debug", action="store_true", help="Log with severity DEBUG.")
    commands = parser.add_subparsers(dest="command", required=True)

    ingest = commands.add_parser("ingest", help="Convert .npy rasters into pose files.")
    ingest.add_argument("--source", required=True, help="Directory of {gloss}_{signer}_{view}.npy files.")
    ingest.add_argument("--vocabulary", required=True, help="Vocabulary JSON list.")
    ingest.add_argument("--out", required=True, help="Output directory.")
    ingest.set_defaults(handler=cmd_ingest)

    validate = commands.add_parser("validate", help="Check a manifest.")
    validate.add_argument("manifest")
    validate.add_argument("--check-files", action="store_true", help="Also decode every pose file.")
    validate.set_defaults(handler=cmd_validate)

    stats = commands.add_parser("stats", help="Keypoint quality and composition statistics.")
    stats.add_argument("manifest")
    stats.add_argument("--out", default="report.csv", help="Quality CSV; the summary JSON goes next to it.")
    stats.add_argument("--workers", type=int, default=settings.workers)
    stats.set_defaults(handler=cmd_stats)

    split = commands.add_parser("split", help="Write fold plans.")
    split.add_argument("manifest")
    split.add_argument("--views", type=parse_views, default=ALL_VIEWS, help="Training views, e.g. lfr or f.")
    split.add_argument("--protocol", choices=[BLOCK_KIND, NOVEL_KIND], default=BLOCK_KIND)
    split.add_argument("--include-sb", action="store_true")
    split.add_argument("--include-avatar", action="store_true")
    split.add_argument("--avatar-views", type=parse_views, default=None)
    split.add_argument("--rotate-signers", action="store_true", help="Rotate the test signer across glosses.")
    split.add_argument("--test-view", type=parse_view, default=None)
    split.add_argument("--seed", type=int, default=0)
    split.add_argument("--blocks", "--out", dest="out", required=True, help="Directory for the plan files.")
    split.set_defaults(handler=cmd_split)

    synth = commands.add_parser("synth", help="Generate a synthetic multi-view dataset.")
    synth.add_argument("--classes", type=int, default=10)
    synth.add_argument("--signers", type=int, default=4)
    synth.add_argument("--frames", type=int, default=32)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--workers", type=int, default=settings.workers)
    synth.add_argument("--out", required=True)
    synth.set_defaults(handler=cmd_synth)

    train_parser = commands.add_parser("train", help="Train one fold plan.")
    train_parser.add_argument("manifest")
    train_parser.add_argument("--plan", required=True, help="Fold plan JSON.")
    train_parser.add_argument("--out", required=True, help="Run directory.")
    _add_run_options(train_parser)
    train_parser.set_defaults(handler=cmd_train)

    eval_parser = commands.add_parser("eval", help="Evaluate a checkpoint.")
    eval_parser.add_argument("manifest")
    eval_parser.add_argument("--plan", required=True)
    eval_parser.add_argument("--checkpoint", required=True, help="Checkpoint directory.")
    eval_parser.add_argument("--view", type=parse_view, default=None, help="Front, Left, Right or all.")
    eval_parser.add_argument("--config", default=None, help="Run configuration JSON (for frames).")
    eval_parser.add_argument("--out", default=None, help="Scores JSON.")
    eval_parser.set_defaults(handler=cmd_eval)

    experiment = commands.add_parser("experiment", help="Train and evaluate a whole protocol.")
    experiment.add_argument("manifest")
    experiment.add_argument("--views", type=parse_views, default=ALL_VIEWS)
    experiment.add_argument("--protocol", choices=[BLOCK_KIND, NOVEL_KIND], default=BLOCK_KIND)
    experiment.add_argument("--include-sb", action="store_true")
    experiment.add_argument("--include-avatar", action="store_true")
    experiment.add_argument("--avatar-views", type=parse_views, default=None)
    experiment.add_argument("--seeds", type=int, nargs="+", default=[0])
    experiment.add_argument("--workers", type=int, default=settings.workers)
    experiment.add_argument("--out", required=True)
    experiment.add_argument("--config", default=None)
    experiment.add_argument("--variant", type=Variant.parse, default=None)
    experiment.set_defaults(handler=cmd_experiment)

    report_parser = commands.add_parser("report", help="Render metrics CSV files.")
    report_parser.add_argument("metrics", nargs="+", help="Metrics CSV files.")
    report_parser.add_argument("--out", required=True)
    report_parser.add_argument("--format", nargs="+", choices=FORMATS, default=list(FORMATS))
    report_parser.add_argument("--stem", default="metrics")
    report_parser.set_defaults(handler=cmd_report)

    graph = commands.add_parser("graph", help="Describe the 27-node sign graph.")
    graph.add_argument("--dump-map", action="store_true", help="Print the node map and edges as JSON.")
    graph.set_defaults(handler=cmd_graph)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run the `geomsign` command.

    Parameters
    ----------
    argv : Sequence[str] | None, optional
        Arguments without the program name, by default `sys.argv[1:]`.

    Returns
    -------
    int
        The exit code.
    """
    args = build_parser().parse_args(argv)

    if args.debug:
        logger.configure(debugging=True)

    try:
        return args.handler(args)
    except INVALID_INPUT_ERRORS as err:
        logger.error_(f"{args.command}: {err}")
        return EXIT_INVALID
    except RUNTIME_ERRORS as err:
        logger.error_(f"{args.command}: {err}")
        return EXIT_RUNTIME
