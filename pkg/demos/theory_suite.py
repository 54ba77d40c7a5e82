"""Exact finite-scale checks of the Poisson-weight machinery.

Shows the squared-weight kernel converging to its asymptotic form, the
exact-moment oracle recovering the bias and variance coefficients, and
the full identity report that the theory-check CLI command prints.
"""

import math

import smoothcdf as sc

print("squared-weight kernel L_m(x) against (4 pi m x)^(-1/2):")
for m in (100, 1_000, 10_000):
    for x in (0.5, 2.0):
        ratio = math.sqrt(4.0 * math.pi * m * x) * sc.L_m(m, x)
        print(f"  m={m:6d} x={x:3.1f}: ratio = {ratio:.6f}")

print("\nmin-index sum R~_1 against -sqrt(x/pi):")
for m in (100, 1_000, 10_000):
    ratio = sc.R_tilde_1(m, 1.0) / (-math.sqrt(1.0 / math.pi))
    print(f"  m={m:6d}: ratio = {ratio:.6f}")

print("\ntermwise weighted integral vs closed form sqrt(m/(a(a+4m))):")
for m, a in ((3, 4.0), (50, 1.0), (500, 0.25)):
    term, closed, diff = sc.weighted_L_integral(m, a)
    print(f"  m={m:4d} a={a:5.2f}: termwise={term:.12f} closed={closed:.12f} "
          f"diff={diff:+.1e}")

dist = sc.make_exponential(2.0)
co = sc.pointwise_coeffs(dist, 1.0)
print("\nexact moments converging to the bias/variance coefficients at x=1:")
print(f"  targets: bS = {co.bS:.5f}, VS = {co.VS:.5f}")
for m in (100, 1_000, 10_000):
    em = sc.szasz_exact_moments(dist, m, 1, 1.0)
    print(f"  m={m:6d}: m*bias = {m * em.bias:.5f}   "
          f"(sigma2 - var)*sqrt(m) = {(co.sigma2 - em.variance) * math.sqrt(m):.5f}")

print("\nfull identity report (fast level):")
report = sc.run_theory_checks("fast")
for check in report["checks"]:
    mark = "ok " if check["passed"] else "BAD"
    print(f"  [{mark}] {check['name']}")
print(f"overall: {'all passed' if report['passed'] else 'FAILURES PRESENT'}")
