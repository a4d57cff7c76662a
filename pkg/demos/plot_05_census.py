"""
======================
A small census
======================

Number of weakly Schreier extensions of H by N, up to isomorphism, for
the small named monoids.  Groups only ever give semidirect products.
"""

# %%

from wschreier import chain, classify_extensions, cyclic_group, trivial_monoid

named = {"1": trivial_monoid(), "C2": cyclic_group(2), "C3": cyclic_group(3), "S2": chain(2), "chain3": chain(3)}

print("N \\ H".ljust(8) + "".join(h.rjust(8) for h in named))
for n_name, N in named.items():
    row = [len(classify_extensions(N, H)) for H in named.values()]
    print(n_name.ljust(8) + "".join(str(x).rjust(8) for x in row))

# %%
# Schreier (discrete quotient) versus genuinely weak ones
# -------------------------------------------------------

c = classify_extensions(chain(3), chain(3))
discrete = sum(obj.quotient.is_discrete() for obj in c)
print(len(c), "in total,", discrete, "Schreier")
