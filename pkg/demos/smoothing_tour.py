#!/usr/bin/env python3
"""Why smoothing comes before feature extraction.

Renders one primitive at increasing jitter, runs each preprocessing
method, and prints how many curvature critical points survive. Raw counts
explode with noise while the spline holds nearly constant, which is the
whole reason the pipeline smooths first.
"""

import numpy as np

from devink.features import extract_critical_points
from devink.pipeline import preprocess_stroke
from devink.primitives import primitive_by_name
from devink.synth import SynthConfig, generate_synthetic


def counts_for(sigma: float) -> dict[str, list[int]]:
    cfg = SynthConfig(
        primitives=(primitive_by_name("u"),),
        writers=10,
        samples_per_writer=10,
        jitter_sigma=sigma,
    )
    ds = generate_synthetic(cfg)
    out: dict[str, list[int]] = {"raw": [], "dwt": [], "spline": []}
    for s in ds.strokes:
        for method in out:
            sm = preprocess_stroke(s, method)
            out[method].append(len(extract_critical_points(sm).indices))
    return out


def main() -> None:
    print("critical points on 100 renderings of 'u' (mean / variance)")
    print(f"{'jitter':>8} | {'raw':>16} | {'dwt':>16} | {'spline':>16}")
    print("-" * 64)
    for sigma in (0.0, 0.8, 1.6, 2.4):
        by_method = counts_for(sigma)
        cells = []
        for method in ("raw", "dwt", "spline"):
            c = np.asarray(by_method[method])
            cells.append(f"{c.mean():6.1f} / {c.var():7.2f}")
        print(f"{sigma:>8.1f} | " + " | ".join(cells))
    print()
    print("a stable count means stable direction features downstream;")
    print("the variance column is what the classifier actually feels.")


if __name__ == "__main__":
    main()
