"""Sampling-distribution experiment: is Fhat(x) approximately normal?

Repeats the fit M times on fresh Beta(3,3) samples, evaluates at x = 0.4
and compares the spread of the estimates with the reference law
Normal(F(x), F(x)(1-F(x))/n), printing a text histogram.
"""

import numpy as np

import smoothcdf as sc

dist = sc.make_beta(3.0, 3.0)
x, n, M = 0.4, 500, 2000

for spec in ({"kind": "edf"}, {"kind": "szasz", "m": 89}, {"kind": "kernel", "h": 0.05}):
    res = sc.normality_experiment(dist, spec, x, n, M, master_seed=42)
    print(f"\n{spec}: mean={res.values.mean():.4f} (F(x)={res.reference_mean:.4f}), "
          f"sd={res.values.std(ddof=1):.4f} (reference {res.reference_sd:.4f})")
    print(f"  Kolmogorov-Smirnov distance to the reference normal: {res.ks_distance:.4f}")
    lo = res.reference_mean - 3.5 * res.reference_sd
    hi = res.reference_mean + 3.5 * res.reference_sd
    counts, edges = np.histogram(res.values, bins=21, range=(lo, hi))
    peak = counts.max()
    for c, left in zip(counts, edges[:-1]):
        bar = "#" * int(round(40.0 * c / peak))
        print(f"  {left:7.4f} |{bar}")
