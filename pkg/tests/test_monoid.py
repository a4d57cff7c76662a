import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import C2, CATALOG, S2, TRIV
from wschreier import (
    congruence_closure,
    cyclic_group,
    find_isomorphism,
    identity_hom,
    is_cokernel,
    kernel,
    product_monoid,
    quotient_monoid,
    validate_hom,
    validate_monoid,
    zero_hom,
)
from wschreier.errors import (
    AssociativityViolation,
    IdentityNotPreserved,
    IdentityViolation,
    MultiplicationNotPreserved,
    ShapeError,
)
from wschreier.monoid import MonoidHom, iter_homs, iter_isomorphisms


# --- validate_monoid -------------------------------------------------------

def test_trivial_monoid():
    m = validate_monoid(1, [[0]])
    assert m.order == 1 and m.is_group()


def test_c2_table():
    m = validate_monoid(2, [[0, 1], [1, 0]])
    assert m.is_group() and m == C2


def test_s2_table():
    m = validate_monoid(2, [[0, 1], [1, 1]])
    assert m.is_idempotent() and not m.is_group() and m == S2


def test_non_associative_names_witness():
    # identity row/column fine, (1 1) 2 = 2 2 = 2 but 1 (1 2) = 1 0 = 1
    table = [[0, 1, 2], [1, 2, 0], [2, 2, 2]]
    with pytest.raises(AssociativityViolation) as info:
        validate_monoid(3, table)
    a, b, c = info.value.a, info.value.b, info.value.c
    t = np.array(table)
    assert t[t[a, b], c] != t[a, t[b, c]]


def test_identity_violation():
    with pytest.raises(IdentityViolation):
        validate_monoid(2, [[0, 0], [1, 1]])


def test_shape_error():
    with pytest.raises(ShapeError):
        validate_monoid(2, [[0, 1]])
    with pytest.raises(ShapeError):
        validate_monoid(2, [[0, 1], [1, 2]])


def test_catalog_counts():
    # monoids of order 1..4 up to isomorphism
    from wschreier.oracle import monoids_of_order

    assert [len(monoids_of_order(n)) for n in range(1, 5)] == [1, 2, 7, 35]


# --- homomorphisms ---------------------------------------------------------

def test_identity_hom_valid():
    assert validate_hom(C2, C2, [0, 1]) == identity_hom(C2)


def test_constant_identity_is_zero():
    f = validate_hom(C2, C2, [0, 0])
    assert f.is_zero() and f == zero_hom(C2, C2)


def test_c2_to_s2_rejected():
    with pytest.raises(MultiplicationNotPreserved) as info:
        validate_hom(C2, S2, [0, 1])
    assert (info.value.a, info.value.b) == (1, 1)


def test_identity_not_preserved():
    with pytest.raises(IdentityNotPreserved):
        validate_hom(S2, S2, [1, 1])


@pytest.mark.parametrize("m", CATALOG, ids=repr)
def test_iter_homs_matches_brute_force(m):
    brute = []
    for images in itertools.product(range(m.order), repeat=m.order):
        if images[0] == 0 and all(images[m.mul(a, b)] == m.mul(images[a], images[b]) for a in m.elements() for b in m.elements()):
            brute.append(list(images))
    assert [list(f.map) for f in iter_homs(m, m)] == brute


# --- congruences -----------------------------------------------------------

def test_closure_empty_seed_discrete():
    assert congruence_closure(C2, []).is_discrete()


def test_closure_collapses_c2():
    assert congruence_closure(C2, [(0, 1)]).num_classes == 1


def test_closure_collapses_s2():
    assert congruence_closure(S2, [(0, 1)]).num_classes == 1


def _is_smallest(m, seeds, cong):
    """Compare with a naive fixpoint of reflexive/symmetric/transitive/compatible closure."""
    rel = {(a, a) for a in m.elements()} | set(seeds) | {(b, a) for a, b in seeds}
    changed = True
    while changed:
        changed = False
        new = set(rel)
        for a, b in rel:
            for x in m.elements():
                new.add((m.mul(x, a), m.mul(x, b)))
                new.add((m.mul(a, x), m.mul(b, x)))
            for c, d in rel:
                if b == c:
                    new.add((a, d))
        if new != rel:
            rel, changed = new, True
    return all(cong.related(a, b) == ((a, b) in rel) for a in m.elements() for b in m.elements())


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_closure_is_smallest_compatible(data):
    m = data.draw(st.sampled_from(CATALOG))
    pair = st.tuples(st.integers(0, m.order - 1), st.integers(0, m.order - 1))
    seeds = data.draw(st.lists(pair, max_size=3))
    cong = congruence_closure(m, seeds)
    assert cong.is_compatible()
    assert all(cong.related(a, b) for a, b in seeds)
    assert _is_smallest(m, seeds, cong)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_quotient_projection_is_surjective_hom(data):
    m = data.draw(st.sampled_from(CATALOG))
    pair = st.tuples(st.integers(0, m.order - 1), st.integers(0, m.order - 1))
    cong = congruence_closure(m, data.draw(st.lists(pair, max_size=2)))
    q, proj = quotient_monoid(m, cong)
    assert q.order == cong.num_classes
    validate_hom(m, q, proj.map)
    assert proj.is_surjective()


def test_quotient_discrete_c2():
    q, proj = quotient_monoid(C2, congruence_closure(C2, []))
    assert find_isomorphism(q, C2) is not None and proj.is_bijective()


def test_quotient_all_in_one_c2():
    q, _ = quotient_monoid(C2, congruence_closure(C2, [(0, 1)]))
    assert q == TRIV


def test_quotient_of_s2xs2_over_bottom():
    P = product_monoid(S2, S2)  # (n, h) at 2n + h
    cong = congruence_closure(P, [(0 * 2 + 1, 1 * 2 + 1)])
    q, _ = quotient_monoid(P, cong)
    assert q.order == 3


# --- kernels and cokernels -------------------------------------------------

def test_kernel_of_identity():
    sub, inc = kernel(identity_hom(C2))
    assert list(sub.members) == [0]


def test_kernel_of_zero():
    sub, _ = kernel(zero_hom(C2, C2))
    assert list(sub.members) == [0, 1]


def test_kernel_of_projection():
    P = product_monoid(S2, S2)
    e = validate_hom(P, S2, [g % 2 for g in P.elements()])
    sub, inc = kernel(e)
    # pairs (n, top) for both n
    assert list(sub.members) == [0, 2]
    assert find_isomorphism(sub.as_monoid(), S2) is not None


@pytest.mark.parametrize("m", CATALOG, ids=repr)
def test_kernel_then_e_is_zero(m):
    for e in iter_homs(m, m):
        _, inc = kernel(e)
        assert inc.then(e).is_zero()


def test_cokernel_of_projection():
    P = product_monoid(S2, S2)
    e = validate_hom(P, S2, [g % 2 for g in P.elements()])
    _, inc = kernel(e)
    assert is_cokernel(inc, e)


def test_identity_not_cokernel_of_identity():
    assert not is_cokernel(identity_hom(C2), identity_hom(C2))


def test_identity_cokernel_of_zero():
    assert is_cokernel(zero_hom(TRIV, C2), identity_hom(C2))


def _universal_cokernel(k, e):
    """e is surjective, kills k, and every f killing k factors through e (tested against all f: G -> G)."""
    G = e.dom
    if not e.is_surjective() or any(e(x) != 0 for x in k.map):
        return False
    for cod in [G] + list(CATALOG[:3]):
        for f in iter_homs(G, cod):
            if any(f(x) != 0 for x in k.map):
                continue
            # factorisation exists iff f is constant on fibres of e
            if any(e(a) == e(b) and f(a) != f(b) for a in G.elements() for b in G.elements()):
                return False
    return True


@pytest.mark.parametrize("G", CATALOG[:10], ids=repr)
def test_is_cokernel_agrees_with_universal_property(G):
    for H in CATALOG[:3]:
        for e in iter_homs(G, H):
            sub, inc = kernel(e)
            assert is_cokernel(inc, e) == _universal_cokernel(inc, e)


# --- isomorphisms ----------------------------------------------------------

def test_find_isomorphism_c2():
    assert list(find_isomorphism(C2, C2).map) == [0, 1]


def test_find_isomorphism_group_vs_nongroup():
    assert find_isomorphism(C2, S2) is None


def test_find_isomorphism_swap():
    # S2 x C2 against C2 x S2; (a, b) -> (b, a)
    m1, m2 = product_monoid(S2, C2), product_monoid(C2, S2)
    assert list(find_isomorphism(m1, m2).map) == [0, 2, 1, 3]


def test_product_swap_of_equal_factors_is_identical():
    assert product_monoid(S2, S2) == product_monoid(S2, S2)


@pytest.mark.parametrize("m", CATALOG, ids=repr)
def test_isomorphism_symmetric_and_relabel(m):
    rng = np.random.default_rng(m.order * 7 + int(m.table.sum()))
    perm = [0] + list(rng.permutation(range(1, m.order)) if m.order > 1 else [])
    inv = np.argsort(perm)
    t = np.array(perm)[m.table[inv[:, None], inv[None, :]]]
    other = validate_monoid(m.order, t)
    f = find_isomorphism(m, other)
    g = find_isomorphism(other, m)
    assert f is not None and g is not None
    # f then g is an automorphism of m
    assert f.then(g) in set(iter_isomorphisms(m, m))


def test_catalog_pairwise_non_isomorphic():
    for a, b in itertools.combinations(CATALOG, 2):
        if a.order == b.order:
            assert find_isomorphism(a, b) is None


def test_monoid_hom_then():
    f = validate_hom(C2, C2, [0, 1])
    z = MonoidHom(C2, C2, [0, 0])
    assert f.then(z).is_zero()
    assert cyclic_group(3).order == 3


@pytest.mark.parametrize("m", CATALOG[10:], ids=repr)
def test_iter_isomorphisms_are_bijective_homs(m):
    for other in CATALOG:
        for f in iter_isomorphisms(m, other):
            assert f.is_bijective()
            validate_hom(m, other, f.map)
