# ## Iterating F
#
# F composed with itself m times, over F_2.  Negative m iterates G instead.

import numpy as np

from iptm import fps

order = 63
F = fps.ptm_series(order)
G = fps.series_reverse(F)

for m in (1, 2, 3, 4, -1, -2, -3):
    s = fps.iterate_compose(F if m > 0 else G, abs(m))
    print(f"{m:3d}", "".join(map(str, s.coeffs)))

# F^(m) and G^(m) undo each other

for m in (2, 5):
    fm = fps.iterate_compose(F, m)
    gm = fps.iterate_compose(G, m)
    print(m, fps.series_compose(fm, gm) == fps.TruncatedSeries.x(order))

# the m-th iterate for m a power of two

for m in (2, 4, 8):
    s = fps.iterate_compose(F, m).array()
    print(m, np.flatnonzero(s)[:12])
