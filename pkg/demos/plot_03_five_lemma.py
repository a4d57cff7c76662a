"""
======================================
A morphism that is not an isomorphism
======================================

For weakly Schreier extensions a morphism need not be invertible even
though it is the identity on N and H.  The smallest case: glueings of S2
along the constant-top map and along the identity.
"""

# %%
# Two glueings
# ------------

from wschreier import chain, extensions_isomorphic, morphism_exists, semilattice_glueing, validate_hom
from wschreier.wact import search_morphisms

S2 = chain(2)
gl_top = semilattice_glueing(validate_hom(S2, S2, [0, 0]))  # the product, 4 elements
gl_id = semilattice_glueing(validate_hom(S2, S2, [0, 1]))  # 3 elements
print(gl_top.G.order, gl_id.G.order)

# %%
# One morphism each way at most
# -----------------------------

m = morphism_exists(gl_top, gl_id)
print("forward:", m.map.map, "bijective:", m.is_bijective())
print("backward:", morphism_exists(gl_id, gl_top))
print("isomorphic:", extensions_isomorphic(gl_top, gl_id))

# exhaustive search agrees: exactly one morphism forward
print(len(list(search_morphisms(gl_top, gl_id))), len(list(search_morphisms(gl_id, gl_top))))
