"""Reproduce the simulation benchmarks: suites, recovery scores, timing.

Generates the canonical short suite (10 profiles x 5000 points, five planted
segments each) at three signal-to-noise ratios, segments every profile, and
reports per-position precision/recall/F1 against the ground truth. Then
times the short and long suites to show the sparse-signal scaling behavior.
Run with:

    python demos/02_benchmark_suites.py
"""

import time

import numpy as np

from segscan import benchmark_suite, positions_mask, score, segment_profile

# ---------------------------------------------------------------------------
# Recovery vs noise level. SNR 0.5 is the hard case, 2.0 the easy one.
# ---------------------------------------------------------------------------
print("short suite recovery (10 profiles each):")
print(f"{'snr':>5} {'precision':>10} {'recall':>8} {'f1':>7}")
for snr in (0.5, 1.0, 2.0):
    reports = []
    for profile, truth in benchmark_suite("short", snr=snr, seed=0):
        result = segment_profile(profile)
        reports.append(score(positions_mask(result.significant(), len(profile)),
                             positions_mask(truth, len(profile))))
    print(f"{snr:5.1f} {np.mean([r.precision for r in reports]):10.3f} "
          f"{np.mean([r.recall for r in reports]):8.3f} "
          f"{np.mean([r.f1 for r in reports]):7.3f}")

# ---------------------------------------------------------------------------
# Timing: the long suite holds 20x the data but signal occupies ~1% of it,
# so the runtime grows far less than the data size.
# ---------------------------------------------------------------------------
print("\ntiming (sum over 10 profiles, best of 3):")
for kind in ("short", "long"):
    suite = benchmark_suite(kind, snr=1.0, seed=0)
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        for profile, _ in suite:
            segment_profile(profile)
        best = min(best, time.perf_counter() - t0)
    n = len(suite[0][0])
    print(f"  {kind:5s} suite (10 x {n:>6d}): {best:6.3f} s")
