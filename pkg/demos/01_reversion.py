# ## Reversing the Thue-Morse series
#
# F(X) = sum t_n X^n over F_2, where t_n is the parity of the binary digit
# sum.  Its compositional inverse G has coefficients c_n.

import numpy as np

from iptm import fps
from iptm.fps import TruncatedSeries

order = 4096
F = fps.ptm_series(order)
G = fps.series_reverse(F)

print("F:", F)
print("G:", G)
print("first coefficients of G:", list(G.coeffs[:16]))

# ### Both compositions give X back

X = TruncatedSeries.x(order)
print("F(G) == X:", fps.series_compose(F, G) == X)
print("G(F) == X:", fps.series_compose(G, F) == X)

# ### Algebraic equations
#
# Each polynomial in (X, Y) vanishes on its series, so the residual is zero.

for name, poly, s in [("F", fps.PTM_EQUATION, F),
                      ("G, cubic", fps.G_CUBIC_EQUATION, G),
                      ("G, quartic", fps.G_QUARTIC_EQUATION, G)]:
    res = fps.equation_residual(poly, s)
    print(f"{name:11s} residual zero to order {order}: {res.is_zero()}")

# ### The same construction over F_p

for p in (3, 5, 7):
    Fp = fps.sp_series(p, 64)
    Gp = fps.series_reverse(Fp)
    ok = fps.series_compose(Fp, Gp) == TruncatedSeries.x(64, p)
    print(f"p={p}: G_p starts {list(Gp.coeffs[:12])}, F_p(G_p) = X: {ok}")

# ### Newton vs term-by-term
#
# The slow reversion solves for one coefficient at a time; it is the oracle
# for the Newton iteration.

small = fps.ptm_series(48)
print("naive == newton at order 48:", fps.series_reverse(small) == fps.series_reverse_naive(small))

# Density of ones among the first 4097 coefficients
print("fraction of ones in G:", np.mean(G.array()))
