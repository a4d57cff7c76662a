"""
================================
Schreier retractions of a glueing
================================

The glueing of S2 along the identity has three elements, and the element
(bottom, bottom) factors in two ways, so there are two retractions.
"""

# %%
# Build the extension
# -------------------

from wschreier import (
    canonical_quotient,
    chain,
    check_retraction_properties,
    enumerate_schreier_retractions,
    is_schreier,
    semilattice_glueing,
    validate_hom,
    weak_semidirect_presentation,
)
from wschreier.extension import witness_sets

S2 = chain(2)
ext = semilattice_glueing(validate_hom(S2, S2, [0, 1]))
print("G =", ext.G.rows())
print("witness sets:", witness_sets(ext))

# %%
# Every retraction satisfies the three identities
# -----------------------------------------------

for q in enumerate_schreier_retractions(ext):
    print(q.q, check_retraction_properties(ext, q), "alpha =", q.action().tolist())

# %%
# The canonical quotient lumps the fibre over bottom
# ---------------------------------------------------

cq = canonical_quotient(ext)
print(cq.quotient.fibers.tolist(), cq.num_classes, "classes; Schreier:", is_schreier(ext))

pres = weak_semidirect_presentation(ext)
print("table on classes:", pres.monoid.rows())
