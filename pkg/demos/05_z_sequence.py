# ## The parity sequence z
#
# z_n = 1 exactly when n is a sum of distinct g_m = 2^(m-1)(2^m - 1), m >= 2.

from iptm import analysis, seqgen as S

print("generators:", [S.generator(m) for m in range(2, 9)])
z = S.z_batch(200)
print("ones of z below 200:", [n for n in range(200) if z[n]])
print("decompositions:", {n: S.z_char_decompose(n) for n in (34, 126, 154)})

# ### Long zero windows
#
# z vanishes on [4^m, 4^(m+1)/3] for every m >= 2.

for m in range(2, 8):
    lo, hi = 4 ** m, 4 ** (m + 1) // 3
    print(m, (lo, hi), analysis.z_window_check(m, m).passed)

# ### Every m divides some n with z_n = 1

for m in (2, 3, 10, 12, 97, 200):
    n = analysis.divisor_witness(m)
    print(f"m={m}: witness has {n.bit_length()} bits, generators {S.z_char_decompose(n)[:4]}...")
