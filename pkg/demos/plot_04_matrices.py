"""
=====================================
Conjugation on 2x2 matrices over F2
=====================================

The right invertible matrices are the invertible ones; lumping every
fibre over a singular matrix gives the coarse quotient, and conjugation
by invertible matrices is an action relative to it.
"""

# %%
# The monoid
# ----------

import numpy as np

from wschreier import coarse_action_compatible, coarse_quotient, is_action, matrix_monoid, right_invertible_submonoid
from wschreier import is_weakly_schreier, weak_semidirect_product

mm = matrix_monoid(2, 2)
M = mm.monoid
print(M.order, "matrices,", len(mm.invertible()), "invertible")
print(sorted(right_invertible_submonoid(M).L.members) == mm.invertible())

# %%
# The coarse quotient and the action
# ----------------------------------

Q = coarse_quotient(M, M)
print(Q.num_classes, "classes")
print("is an action:", bool(is_action(Q, mm.conjugation)), coarse_action_compatible(M, M, mm.conjugation))

ext = weak_semidirect_product(Q, mm.conjugation)
print("|G| =", ext.G.order, "weakly Schreier:", bool(is_weakly_schreier(ext)))

# %%
# Fibre sizes: discrete over invertibles, one class elsewhere
# -----------------------------------------------------------

inv = mm.invertible()
sizes = np.array(Q.fiber_sizes)
print("fibre sizes over invertibles:", set(sizes[inv].tolist()), "elsewhere:", set(np.delete(sizes, inv).tolist()))
