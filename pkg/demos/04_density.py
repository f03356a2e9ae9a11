# ## How fast does a_n grow?
#
# a_n / n^2 has limit points filling [1/6, 1/2].

from fractions import Fraction

from iptm import analysis, seqgen as S

# exact hits of the upper end
for k in range(6):
    n = 4 * 2 ** k
    print(n, Fraction(S.a_seq(n), n * n))

# ### Scan

summary = analysis.density_scan(1 << 20)
print("min a_n/n^2:", summary.min_ratio, "=", float(summary.min_ratio), "at", summary.argmins)
print("max a_n/n^2:", summary.max_ratio, "at", summary.argmaxes)
print("b_k/(4k^2) range:", summary.b_quarter_min, "..", summary.b_quarter_max)
print("bounds on b hold:", summary.bound_check.passed)

# ### Steering towards a target
#
# The greedy doubles w and appends a binary digit, keeping b_w/w^2 >= 4q.

for q in (Fraction(1, 5), Fraction(1, 4), Fraction(1, 3), Fraction(9, 20)):
    res = analysis.density_greedy(q, Fraction(1, 1000))
    print(f"q={q}: n={res.n}, a_n/n^2={res.ratio} ({float(res.ratio):.5f}) after {res.iterations} steps")
    print("   w:", res.trace)
