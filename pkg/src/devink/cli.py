"""devink command line: one verb per pipeline stage.

synth       generate labelled synthetic strokes
preprocess  smooth a stroke file (raw passthrough, dwt, spline)
features    dump critical points and all three direction encodings
train       fit a classifier and write the model file
eval        stratified cross-validation with an N-best report
recognize   rank primitives for each stroke in a file
serve       start the HTTP recognition service

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
Identical argv and seed produce byte-identical output files.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import pipeline
from .classifiers import load_model, save_model
from .errors import (
    DegenerateStrokeError,
    ModelFormatError,
    SequenceTooShortError,
    StrokeFormatError,
    TrainingDataError,
    UnknownPrimitiveError,
)
from .features import feature_record
from .harness import emit_report, evaluate
from .ink import Dataset, load_strokes, save_strokes
from .pipeline import preprocess_stroke, recognize, train_model
from .primitives import primitive_by_name
from .synth import SynthConfig, generate_synthetic

log = logging.getLogger("devink")

# anything wrong with the user's files or their contents
_DATA_ERRORS = (
    StrokeFormatError,
    UnknownPrimitiveError,
    TrainingDataError,
    ModelFormatError,
    DegenerateStrokeError,
    SequenceTooShortError,
    FileNotFoundError,
)


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; our contract reserves
    2 for data problems, so usage failures are remapped to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _comma_ints(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (default: 42 for synth, 0 for eval)")
    common.add_argument("--verbose", action="store_true",
                        help="log progress to the diagnostic stream")

    parser = _Parser(prog="devink", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="subcommand", required=True,
                                 parser_class=_Parser)

    p = subs.add_parser("synth", parents=[common],
                        help="generate labelled synthetic strokes")
    p.add_argument("--primitives", default=None,
                   help="comma-separated primitive names (default: all with skeletons)")
    p.add_argument("--writers", type=int, default=SynthConfig.writers)
    p.add_argument("--samples", type=int, default=SynthConfig.samples_per_writer)
    p.add_argument("--jitter", type=float, default=SynthConfig.jitter_sigma,
                   help="coordinate noise sigma in device units")
    p.add_argument("--rotation", type=float, default=SynthConfig.rotation_range,
                   help="per-writer rotation range in radians")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_synth)

    p = subs.add_parser("preprocess", parents=[common], help="smooth a stroke file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--method", choices=pipeline.PREPROCESS_METHODS, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_preprocess)

    p = subs.add_parser("features", parents=[common],
                        help="dump critical points and direction encodings")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None, help="output path (default: standard output)")
    p.set_defaults(func=_cmd_features)

    p = subs.add_parser("train", parents=[common],
                        help="fit a classifier and write the model file")
    p.add_argument("--in", dest="infile", required=True)
    _pipeline_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_train)

    p = subs.add_parser("eval", parents=[common],
                        help="stratified cross-validation with an N-best report")
    p.add_argument("--in", dest="infile", required=True)
    _pipeline_flags(p)
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--nbest", type=_comma_ints, default=(1, 2, 5),
                   help="comma-separated candidate-list depths (default 1,2,5)")
    p.add_argument("--report", required=True, help="JSON report path")
    p.add_argument("--csv", default=None, help="also write a one-row CSV summary")
    p.set_defaults(func=_cmd_eval)

    p = subs.add_parser("recognize", parents=[common],
                        help="rank primitives for each stroke in a file")
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--top", type=int, default=5)
    p.set_defaults(func=_cmd_recognize)

    p = subs.add_parser("serve", parents=[common],
                        help="start the HTTP recognition service")
    p.add_argument("--model", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8600)
    p.add_argument("--record", default=None,
                   help="append labelled submissions to this JSONL file")
    p.set_defaults(func=_cmd_serve)

    return parser


def _pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preprocess", choices=pipeline.PREPROCESS_METHODS, required=True)
    p.add_argument("--feature", choices=pipeline.FEATURE_KINDS, required=True)
    p.add_argument("--classifier", choices=pipeline.CLASSIFIER_KINDS, required=True)
    p.add_argument("--svm-c", type=float, default=10.0)
    p.add_argument("--svm-gamma", type=float, default=1.0)
    p.add_argument("--dtw-tau", type=float, default=0.0)


def _cmd_synth(args) -> int:
    if args.primitives is None:
        prims = None
    else:
        prims = tuple(
            primitive_by_name(name) for name in args.primitives.split(",") if name
        )
    kwargs = dict(
        writers=args.writers,
        samples_per_writer=args.samples,
        jitter_sigma=args.jitter,
        rotation_range=args.rotation,
        seed=args.seed if args.seed is not None else 42,
    )
    if prims is not None:
        kwargs["primitives"] = prims
    cfg = SynthConfig(**kwargs)
    ds = generate_synthetic(cfg)
    save_strokes(ds, args.out)
    log.info("wrote %d strokes to %s", len(ds), args.out)
    return 0


def _cmd_preprocess(args) -> int:
    ds = load_strokes(args.infile)
    out = Dataset(
        strokes=tuple(preprocess_stroke(s, args.method) for s in ds.strokes),
        source=ds.source,
    )
    save_strokes(out, args.out)
    log.info("smoothed %d strokes with %s", len(out), args.method)
    return 0


def _cmd_features(args) -> int:
    ds = load_strokes(args.infile)
    lines = [
        json.dumps(feature_record(s), sort_keys=True, separators=(",", ":"))
        for s in ds.strokes
    ]
    text = "".join(line + "\n" for line in lines)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def _cmd_train(args) -> int:
    ds = load_strokes(args.infile)
    pipeline.validate_combo(args.preprocess, args.feature, args.classifier)
    tm = train_model(
        ds,
        preprocess=args.preprocess,
        feature=args.feature,
        classifier=args.classifier,
        svm_c=args.svm_c,
        svm_gamma=args.svm_gamma,
        dtw_tau=args.dtw_tau,
    )
    save_model(tm, args.out)
    log.info("trained %s/%s/%s on %d strokes", args.preprocess, args.feature,
             args.classifier, len(ds))
    return 0


def _cmd_eval(args) -> int:
    ds = load_strokes(args.infile)
    report = evaluate(
        ds,
        preprocess=args.preprocess,
        feature=args.feature,
        classifier=args.classifier,
        folds=args.folds,
        alphas=args.nbest,
        seed=args.seed if args.seed is not None else 0,
        svm_c=args.svm_c,
        svm_gamma=args.svm_gamma,
        dtw_tau=args.dtw_tau,
    )
    emit_report(report, args.report)
    if args.csv is not None:
        emit_report([report], args.csv, fmt="csv")
    for alpha in args.nbest:
        log.info("accuracy at alpha=%d: %.4f", alpha, report.accuracy[alpha])
    return 0


def _cmd_recognize(args) -> int:
    if args.top < 1:
        raise ValueError("--top must be >= 1")
    tm = load_model(args.model)
    ds = load_strokes(args.infile)
    out = []
    for s in ds.strokes:
        ranked = recognize(tm, s)
        for rank, (pid, score) in enumerate(ranked.top(args.top), start=1):
            out.append(f"{s.id}\t{rank}\t{pid.name}\t{score:.6g}")
    sys.stdout.write("".join(line + "\n" for line in out))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    tm = load_model(args.model)
    app = create_app(tm, record_path=args.record)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except _DATA_ERRORS as exc:
        print(f"devink: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"devink: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # numeric failures and genuine bugs
        print(f"devink: internal error: {exc!r}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
