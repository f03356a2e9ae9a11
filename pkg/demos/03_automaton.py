# ## A five-state automaton for c
#
# The automaton reads the base-4 digits of n, least significant first, and
# outputs c_n.

from iptm import automata as A
from iptm.seqgen import iptm_batch

fig = A.figure1_dfao()
print("states:", fig.state_count, "reading order:", fig.reading_order)
print([fig(n) for n in range(16)])

# ### Which reading order?
#
# Both orders are tried against the generator; only one survives.

c = iptm_batch(1 << 18)
for order, d in A.figure1_candidates().items():
    rep = A.dfao_equiv(d, lambda n: int(c[n]), 1024, order)
    print(rep)

# ### Rebuilding it from the 4-kernel

built = A.kernel_dfao(lambda n: int(c[n]), 4, probe_limit=1 << 10)
print("kernel automaton states:", built.state_count)
print(A.dfao_equiv(fig, built, 1 << 18, "figure vs kernel"))

# ### Graphviz

print(A.export_dot(fig, "iptm"))
