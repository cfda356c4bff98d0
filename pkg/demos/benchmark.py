#!/usr/bin/env python3
"""End-to-end benchmark on the synthetic set.

Reproduces the two headline tables: accuracy by preprocessing method
(fuzzy features + Gaussian) and accuracy by feature encoding (SVM),
each with N-best columns. Pass --full for the calibrated 12-class set;
the default is a faster reduced run with the same trends.
"""

import argparse
import time

from devink.harness import evaluate
from devink.synth import SynthConfig, generate_synthetic

ALPHAS = (1, 2, 5)


def row(label: str, report) -> str:
    cells = " ".join(f"{report.accuracy[a] * 100:6.2f}" for a in ALPHAS)
    return f"{label:>10} | {cells}"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--full", action="store_true",
                    help="use the full 12-class benchmark set (slower)")
    args = ap.parse_args()

    cfg = SynthConfig() if args.full else SynthConfig(writers=8, samples_per_writer=5)
    t0 = time.time()
    ds = generate_synthetic(cfg)
    print(f"{len(ds)} strokes, {len(cfg.primitives)} classes, "
          f"jitter {cfg.jitter_sigma}, seed {cfg.seed}")
    header = "           | " + " ".join(f"top-{a:<2}" for a in ALPHAS)

    print()
    print("preprocessing (fdf + gaussian, 5-fold)")
    print(header)
    for prep in ("raw", "dwt", "spline"):
        r = evaluate(ds, preprocess=prep, feature="fdf", classifier="gaussian",
                     folds=5, alphas=ALPHAS, seed=0)
        print(row(prep, r))

    print()
    print("feature encoding (spline + svm, 5-fold)")
    print(header)
    for feat in ("df", "edf", "fdf"):
        r = evaluate(ds, preprocess="spline", feature=feat, classifier="svm",
                     folds=5, alphas=ALPHAS, seed=0)
        print(row(feat, r))

    print()
    print(f"done in {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
