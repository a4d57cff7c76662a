"""Shared fixtures data: small monoids and hand-built extensions."""

from functools import lru_cache

from wschreier import (
    MonoidHom,
    SplitExtension,
    chain,
    classify_extensions,
    cyclic_group,
    functor_S,
    product_monoid,
    trivial_monoid,
    validate_hom,
    validate_split_extension,
    validate_monoid,
)
from wschreier.oracle import monoids_of_order

TRIV = trivial_monoid()
C2 = cyclic_group(2)
C3 = cyclic_group(3)
S2 = chain(2)  # 0 = top (identity), 1 = bottom
CHAIN3 = chain(3)
NAMED = {"1": TRIV, "C2": C2, "C3": C3, "S2": S2, "chain3": CHAIN3}

# every monoid of order <= 4 up to isomorphism (1 + 2 + 7 + 35)
CATALOG = [m for n in range(1, 5) for m in monoids_of_order(n)]
UP_TO_3 = [m for n in range(1, 4) for m in monoids_of_order(n)]


def semilattices(max_order=4):
    return [m for n in range(1, max_order + 1) for m in monoids_of_order(n) if m.is_commutative() and m.is_idempotent()]


def product_extension(N, H) -> SplitExtension:
    """N -> N x H -> H, pair (n, h) at index n * |H| + h."""
    G = product_monoid(N, H)
    nh = H.order
    k = validate_hom(N, G, [n * nh for n in N.elements()])
    e = validate_hom(G, H, [g % nh for g in G.elements()])
    s = validate_hom(H, G, list(H.elements()))
    return validate_split_extension(N, G, H, k, e, s)


def twist_extension() -> SplitExtension:
    """S2 x S2 with (n, h)(n', h') = (n * alpha(h, n'), h h'), alpha(bottom, .) = top."""
    pairs = [(n, h) for n in range(2) for h in range(2)]
    alpha = {(0, 0): 0, (0, 1): 1, (1, 0): 0, (1, 1): 0}
    idx = {p: i for i, p in enumerate(pairs)}
    table = [[idx[(S2.mul(n, alpha[(h, n2)]), S2.mul(h, h2))] for n2, h2 in pairs] for n, h in pairs]
    G = validate_monoid(4, table)
    k = validate_hom(S2, G, [idx[(n, 0)] for n in range(2)])
    e = validate_hom(G, S2, [h for _, h in pairs])
    s = validate_hom(S2, G, [idx[(0, h)] for h in range(2)])
    return validate_split_extension(S2, G, S2, k, e, s)


def gl_id_by_hand() -> SplitExtension:
    """Pairs n <= h in S2 x S2: (top, top), (bottom, top), (bottom, bottom)."""
    pairs = [(0, 0), (1, 0), (1, 1)]
    idx = {p: i for i, p in enumerate(pairs)}
    table = [[idx[(max(n, n2), max(h, h2))] for n2, h2 in pairs] for n, h in pairs]
    G = validate_monoid(3, table)
    k = MonoidHom(S2, G, [0, 1])
    e = MonoidHom(G, S2, [0, 0, 1])
    s = MonoidHom(S2, G, [0, 2])
    return validate_split_extension(S2, G, S2, k, e, s)


@lru_cache(maxsize=None)
def desk_objects():
    """(N, H, classification) for every pair of monoids of order <= 3."""
    return [(N, H, classify_extensions(N, H)) for N in UP_TO_3 for H in UP_TO_3]


@lru_cache(maxsize=None)
def desk_extensions():
    """Groups of extensions S(obj), one group per (N, H) pair."""
    return [[functor_S(o) for o in c] for _, _, c in desk_objects()]
