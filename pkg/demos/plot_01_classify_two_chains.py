"""
===========================================
Classifying extensions of a 2-chain by itself
===========================================

Every weakly Schreier extension of H by N is determined by an admissible
quotient of N x H and an action class on it.  Here N = H = S2, the
two-element meet-semilattice with the identity as top.
"""

# %%
# The ingredients
# ---------------
#
# Index 0 is the identity (top), index 1 the bottom element.

from wschreier import chain, classify_extensions, enumerate_admissible_quotients, enumerate_action_classes, functor_S

S2 = chain(2)
print(S2.rows())

quotients = enumerate_admissible_quotients(S2, S2)
for Q in quotients:
    print(Q.fibers.tolist(), "->", len(enumerate_action_classes(Q)), "action class(es)")

# %%
# The classification and its order
# --------------------------------
#
# Row i, column j of ``leq`` says a morphism from extension i to j exists.

c = classify_extensions(S2, S2)
for i, obj in enumerate(c):
    G = functor_S(obj).G
    print(i, "quotient", obj.quotient.fibers.tolist(), "action", obj.action.class_valued.tolist(), "|G| =", G.order)
print(c.leq.astype(int))

# %%
# Cross-check by brute force
# --------------------------
#
# The oracle enumerates every monoid of order <= 4 and every (k, e, s).

from wschreier.oracle import brute_force_classify

print(len(brute_force_classify(S2, S2)), "extensions found by exhaustion")
