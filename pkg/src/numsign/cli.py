"""Command-line interface: classify, watch, render, eval, synth."""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import harness, raster, report, synth
from .errors import NumSignError
from .pipeline import Analysis, Config, analyze
from .skeleton import Classification, Vocabulary
from .stream import Debouncer

EXIT_OK, EXIT_UNKNOWN, EXIT_ERROR = 0, 1, 2
IMAGE_SUFFIXES = {".bmp", ".pgm", ".ppm"}


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key=value configuration file")
    common.add_argument("--tau", type=float, help="edge threshold (edge.tau)")
    common.add_argument("--window", type=int, help="consecutive frames required (stream.window)")
    common.add_argument("--vocab", type=Path, help="vocabulary file")
    common.add_argument("--emit-unknown", action="store_true", help="report unknown-sign events in watch")
    common.add_argument("--format", choices=("table", "records"), default="table")
    common.add_argument("--timestamps", action="store_true", help="add a wall-clock time to records")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="numsign", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a single frame")
    p.add_argument("image", type=Path)

    p = sub.add_parser("watch", parents=[common], help="debounce a sequence of frames")
    p.add_argument("source", nargs="?", default="-",
                   help="directory of frames (lexicographic order) or '-' for paths on stdin")

    p = sub.add_parser("render", parents=[common], help="write a debug overlay (PPM)")
    p.add_argument("image", type=Path)
    p.add_argument("output", type=Path)
    p.add_argument("--figure", type=Path, help="also save a matplotlib figure of the model")

    p = sub.add_parser("eval", parents=[common], help="success rates over a labelled manifest")
    p.add_argument("manifest", type=Path)
    p.add_argument("--figure", type=Path, help="also save a bar chart of the rates")

    p = sub.add_parser("synth", parents=[common], help="render synthetic hand fixtures")
    p.add_argument("digit", type=int, nargs="?", choices=range(10))
    p.add_argument("output", type=Path, nargs="?", help=".bmp or .ppm file")
    p.add_argument("--golden", type=Path, metavar="DIR",
                   help="write all ten digits plus manifest.csv into DIR")
    p.add_argument("--dx", type=int, default=0)
    p.add_argument("--dy", type=int, default=0)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--rounded", action="store_true", help="bevel fingertip corners at 45 degrees")
    return parser


def _settings(args) -> tuple[Config, Vocabulary]:
    config = Config()
    if args.config is not None:
        config = Config.load(args.config, config)
    config = config.updated(tau=args.tau, window=args.window)
    vocab = Vocabulary.load(args.vocab) if args.vocab is not None else Vocabulary.default()
    return config, vocab


def _emit(record: dict, args) -> None:
    if args.timestamps:
        record["time"] = datetime.now(timezone.utc).isoformat()
    sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
    sys.stdout.flush()


def _outcome(digit: int | None):
    return "unknown" if digit is None else digit


def classification_record(c: Classification, frame: str) -> dict:
    model = c.model
    return {
        "frame": frame,
        "outcome": _outcome(c.digit),
        "reason": c.reason,
        "signature": c.signature.as_dict() if model else None,
        "thumb": model.thumb if model else None,
        "palm": model.palm.as_dict() if model else None,
        "tips": [[f.tip.row, f.tip.column] for f in model.fingers] if model else [],
        "fingers": [
            {"joint": f.joint, "tip": [f.tip.row, f.tip.column], "length": round(f.length, 3)}
            for f in model.fingers
        ] if model else [],
        "bent": [[t.row, t.column] for t in model.bent] if model else [],
    }


def _analyze_path(path: Path, config: Config, vocab: Vocabulary) -> Analysis:
    return analyze(raster.decode_image(path.read_bytes()), config, vocab)


def cmd_classify(args) -> int:
    config, vocab = _settings(args)
    analysis = _analyze_path(args.image, config, vocab)
    c = analysis.classification
    _emit(classification_record(c, str(args.image)), args)
    return EXIT_OK if c.known else EXIT_UNKNOWN


def _frame_paths(source: str):
    if source == "-":
        for line in sys.stdin:
            line = line.strip()
            if line:
                yield Path(line)
        return
    root = Path(source)
    if not root.is_dir():
        raise NumSignError(f"{source} is not a directory")
    yield from sorted(p for p in root.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES)


def cmd_watch(args) -> int:
    config, vocab = _settings(args)
    debouncer = Debouncer(config.window)
    for index, path in enumerate(_frame_paths(args.source)):
        try:
            c = _analyze_path(path, config, vocab).classification
        except (OSError, NumSignError) as exc:
            print(f"frame {index} ({path}): {exc}", file=sys.stderr)
            c = Classification(None, None, "unreadable")
        event = debouncer.push(c)
        if event is not None and (event.digit is not None or args.emit_unknown):
            _emit({
                "outcome": _outcome(event.digit),
                "first_frame": event.first_frame,
                "last_frame": event.last_frame,
                "frame": str(path),
            }, args)
    return EXIT_OK


def cmd_render(args) -> int:
    config, vocab = _settings(args)
    analysis = _analyze_path(args.image, config, vocab)
    args.output.write_bytes(raster.encode_ppm(report.draw_overlay(analysis)))
    if args.figure is not None:
        report.plot_analysis(analysis, args.figure)
    return EXIT_OK


def cmd_eval(args) -> int:
    config, vocab = _settings(args)
    entries = harness.load_manifest(args.manifest)

    def predict(path):
        try:
            return _analyze_path(path, config, vocab).classification.digit
        except (OSError, NumSignError) as exc:
            print(f"{path}: {exc}", file=sys.stderr)
            return None

    result = harness.evaluate(entries, predict)
    if args.format == "records":
        sys.stdout.write(result.format_records())
    else:
        sys.stdout.write(result.format_table())
    if args.figure is not None:
        report.plot_eval(result, args.figure)
    return EXIT_OK


def cmd_synth(args) -> int:
    def spec_for(digit):
        spec = synth.golden_spec(digit, rounded=args.rounded)
        return spec.scaled(args.scale).translated(args.dy, args.dx)

    if args.golden is not None:
        args.golden.mkdir(parents=True, exist_ok=True)
        lines = []
        for digit in range(10):
            name = f"digit_{digit}.bmp"
            raster.save_image(synth.render(spec_for(digit)), args.golden / name)
            lines.append(f"{name},{digit},golden\n")
        (args.golden / "manifest.csv").write_text("".join(lines))
        return EXIT_OK
    if args.digit is None or args.output is None:
        raise NumSignError("synth needs DIGIT and OUTPUT, or --golden DIR")
    if args.output.suffix.lower() not in (".bmp", ".ppm"):
        raise NumSignError("synth output must end in .bmp or .ppm")
    raster.save_image(synth.render(spec_for(args.digit)), args.output)
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "watch": cmd_watch,
    "render": cmd_render,
    "eval": cmd_eval,
    "synth": cmd_synth,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (OSError, NumSignError) as exc:
        print(f"numsign {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
