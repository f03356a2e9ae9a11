# ## The sequences built from c
#
# c     coefficients of G
# a     positions of the ones of c
# b     binary digits of n read in base 4, doubled
# d, u  positions of the zeros of c, and their compressed form
# z     (u_n - n) mod 2

import numpy as np

from iptm import seqgen as S

for name in ("t", "c", "a", "b", "d", "u", "z", "o", "e"):
    h = S.sequence(name)
    print(f"{name}: {h.batch(16)}")

# ### Four ways to compute c

limit = 1 << 16
ref = S.iptm_batch(limit)
for method in S.IPTM_METHODS:
    print(f"{method:12s} agrees below 2^16: {np.array_equal(S.iptm_batch(limit, method), ref)}")

# ### a via b
#
# a_{4k+r} = 4 b_k + r, so the ones of c sit in blocks of four around 4 b_k.

for k in range(1, 6):
    print(k, S.b_seq(k), [S.a_seq(4 * k + r) for r in (-1, 0, 1, 2)])

# ### Gaps between consecutive ones
#
# Every gap is (4^m - 1)/3; m depends on the 2-adic valuation of n + 1.

a = S.a_batch(64)
print("gaps:", np.diff(a).tolist())

# ### t at the ones of c

n = np.arange(12)
t = S.thue_morse_batch(13)
print("t(a_n):       ", [S.thue_morse(int(x)) for x in S.a_batch(12)])
print("t_n / t_(n+1):", [int(t[k // 2]) if k % 2 == 0 else int(t[k // 2 + 1]) for k in n])
