"""A small-scale run of the Monte Carlo MISE comparison.

Sweeps each estimator's smoothing parameter over its grid with common
random numbers and reports the minimal MISE, like the full study but with
M=300 repetitions so it finishes in about a minute.
"""

import time

import smoothcdf as sc

M, n = 300, 50
dists = {
    "Exp(2)": sc.make_exponential(2.0),
    "Weibull mix 1": sc.make_weibull_mixture([[0.5, 1.0, 1.0], [0.5, 4.0, 4.0]]),
}

szasz_grid = tuple(range(2, 201))
kernel_grid = tuple(i / 1000.0 for i in range(2, 201, 2))
hermite_grid = tuple(range(2, 61))

for name, dist in dists.items():
    print(f"\n=== {name}, n={n}, M={M} (MISE x 1e3) ===")
    t0 = time.time()
    edf, se = sc.mise_monte_carlo(
        sc.ExperimentConfig(dist, "edf", (0,), n=n, M=M, master_seed=1), 0)
    print(f"  edf          : {edf * 1e3:6.2f}  (se {se * 1e3:.2f}; analytic 1/(6n) = "
          f"{1e3 / (6 * n):.2f})")
    for family, grid, label in (
        ("szasz", szasz_grid, "szasz"),
        ("kernel", kernel_grid, "kernel"),
        ("hermite_half", hermite_grid, "hermite"),
    ):
        cfg = sc.ExperimentConfig(dist, family, grid, n=n, M=M, master_seed=1)
        res = sc.parameter_sweep(cfg, workers=2)
        print(f"  {label:13s}: {res.argmin_mise * 1e3:6.2f}  at parameter "
              f"{res.argmin_param:g}")
    cfg = sc.ExperimentConfig(dist, "hermite_half", hermite_grid, n=n, M=M,
                              master_seed=1, standardize=True)
    res = sc.parameter_sweep(cfg, workers=2)
    print(f"  hermite (std): {res.argmin_mise * 1e3:6.2f}  at parameter "
          f"{res.argmin_param:g}   [{time.time() - t0:.0f}s]")

print("\nthe smooth half-line estimator should show the smallest minimum in "
      "every row; rescaling helps the Hermite series a lot on Exp(2) but "
      "not on the mixture, matching the full-scale study.")
