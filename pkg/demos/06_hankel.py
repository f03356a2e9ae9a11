# ## Hankel determinants of c
#
# H(p, n) = det (c_{p+i+j})_{0 <= i, j < n}

from iptm import hankel as H
from iptm.seqgen import mdb_pred

for p in range(6):
    print(p, [H.hankel_det(p, n) for n in range(16)])

# ### The whole grid stays in {-1, 0, 1}

rep = H.conjecture_report(64, 16)
print("all values in {-1, 0, 1}:", rep.bounded)
print("Bareiss vs cofactor disagreements:", rep.oracle_mismatches)

# ### H(n, n) and sums of distinct powers of 4

print([n for n in range(65) if rep.value(n, n) == 1])
print([n for n in range(65) if mdb_pred(n)])

# ### H(0, n)
#
# The nonzero values sit near (4^m - 1)/3; n = 2, 10, 42 carry a -1 that the
# conjectured sets do not list.

print("nonzero H(0, n):", rep.h0_nonzero)
print("(n, conjectured, actual):", rep.h0_mismatches)
