import numpy as np
import pytest

from helpers import C2, S2, TRIV, desk_extensions, gl_id_by_hand, product_extension, twist_extension
from wschreier import (
    canonical_quotient,
    check_retraction_properties,
    enumerate_schreier_retractions,
    extensions_isomorphic,
    find_isomorphism,
    identity_hom,
    is_admissible,
    is_schreier,
    is_weakly_schreier,
    validate_hom,
    validate_monoid,
    validate_split_extension,
    weak_semidirect_presentation,
    disjoint_union_extension,
)
from wschreier.errors import CokernelMismatch, KernelMismatch, NotWeaklySchreier, RetractionCapExceeded, SectionNotSplitting
from wschreier.extension import SchreierRetraction, count_schreier_retractions, witness_sets
from wschreier.wact import is_extension_morphism

ALL_DESK = [x for group in desk_extensions() for x in group]


# --- validation ------------------------------------------------------------

def test_product_c2_c2_valid():
    ext = product_extension(C2, C2)
    assert ext.G.order == 4


def test_identity_triple_kernel_mismatch():
    i = identity_hom(C2)
    with pytest.raises(KernelMismatch):
        validate_split_extension(C2, C2, C2, i, i, i)


def test_gl_id_valid():
    assert gl_id_by_hand().G.order == 3


def test_left_zero_collapse_rejected():
    # {1, a, b} with a x = a, b x = b for x != 1; e sends a, b to bottom
    G = validate_monoid(3, [[0, 1, 2], [1, 1, 1], [2, 2, 2]])
    k = validate_hom(TRIV, G, [0])
    e = validate_hom(G, S2, [0, 1, 1])
    s = validate_hom(S2, G, [0, 1])
    with pytest.raises(CokernelMismatch):
        validate_split_extension(TRIV, G, S2, k, e, s)


def test_section_not_splitting():
    ext = product_extension(S2, S2)
    bad_s = validate_hom(S2, ext.G, [0, 0])  # e s (bottom) = top
    with pytest.raises(SectionNotSplitting):
        validate_split_extension(S2, ext.G, S2, ext.k, ext.e, bad_s)


# --- weakly Schreier and retractions ---------------------------------------

def test_product_witness_sets_singletons():
    ext = product_extension(C2, C2)
    v = is_weakly_schreier(ext)
    assert v and all(len(w) == 1 for w in witness_sets(ext))


def test_gl_id_witness_sets():
    ext = gl_id_by_hand()
    assert is_weakly_schreier(ext)
    # (bottom, bottom) = k(n) s(bottom) for both n
    assert [len(w) for w in witness_sets(ext)] == [1, 1, 2]


def test_not_weakly_schreier_detected():
    # S2 x S2 with s(bottom) = (bottom, bottom): (top, bottom) has no factorisation
    ext = product_extension(S2, S2)
    s = validate_hom(S2, ext.G, [0, 3])
    ext2 = validate_split_extension(S2, ext.G, S2, ext.k, ext.e, s)
    v = is_weakly_schreier(ext2)
    assert not v and v.witness == 1
    with pytest.raises(NotWeaklySchreier):
        canonical_quotient(ext2)


def test_product_one_retraction():
    assert len(enumerate_schreier_retractions(product_extension(C2, C2))) == 1


def test_gl_id_two_retractions():
    rs = enumerate_schreier_retractions(gl_id_by_hand())
    assert [r.q for r in rs] == [(0, 1, 0), (0, 1, 1)]


def test_retraction_cap():
    with pytest.raises(RetractionCapExceeded):
        enumerate_schreier_retractions(gl_id_by_hand(), cap=1)


@pytest.mark.parametrize("ext", ALL_DESK[:200])
def test_schreier_iff_one_retraction(ext):
    assert is_schreier(ext) == (count_schreier_retractions(ext) == 1)


def test_retraction_properties_examples():
    ext = product_extension(C2, C2)
    assert check_retraction_properties(ext, enumerate_schreier_retractions(ext)[0])
    gl = gl_id_by_hand()
    assert all(check_retraction_properties(gl, q) for q in enumerate_schreier_retractions(gl))


def test_corrupted_retraction_fails():
    gl = gl_id_by_hand()
    assert not check_retraction_properties(gl, (1, 1, 0))
    assert not SchreierRetraction(gl, (1, 1, 0)).is_valid()


# --- canonical quotient ----------------------------------------------------

def test_product_canonical_quotient_discrete():
    cq = canonical_quotient(product_extension(C2, C2))
    assert cq.num_classes == 4 and cq.is_discrete()


def test_gl_id_canonical_quotient():
    cq = canonical_quotient(gl_id_by_hand())
    Q = cq.quotient
    assert cq.num_classes == 3
    assert Q.fibers.tolist() == [[0, 1], [0, 0]]


def test_schreier_flags():
    assert is_schreier(product_extension(C2, C2))
    assert not is_schreier(gl_id_by_hand())
    assert not is_schreier(disjoint_union_extension(S2, S2))


@pytest.mark.parametrize("group", desk_extensions()[:60], ids=lambda g: f"n{len(g)}")
def test_canonical_quotient_is_admissible(group):
    for ext in group:
        Q = canonical_quotient(ext).quotient
        assert is_admissible(ext.N, ext.H, Q.fibers)


# --- presentation ----------------------------------------------------------

def test_presentation_product():
    pres = weak_semidirect_presentation(product_extension(C2, C2))
    from wschreier import product_monoid

    assert find_isomorphism(pres.monoid, product_monoid(C2, C2)) is not None


def test_presentation_twist_table():
    ext = twist_extension()
    pres = weak_semidirect_presentation(ext)
    # classes are discrete: [n, h] has id 2h + n; compare against the twisted rule
    alpha = {(0, 0): 0, (0, 1): 1, (1, 0): 0, (1, 1): 0}
    expected = np.zeros((4, 4), dtype=int)
    for n in range(2):
        for h in range(2):
            for n2 in range(2):
                for h2 in range(2):
                    expected[2 * h + n, 2 * h2 + n2] = 2 * max(h, h2) + max(n, alpha[(h, n2)])
    assert pres.monoid.table.tolist() == expected.tolist()


def test_presentation_gl_id_is_chain():
    from helpers import CHAIN3

    pres = weak_semidirect_presentation(gl_id_by_hand())
    assert find_isomorphism(pres.monoid, CHAIN3) is not None


@pytest.mark.parametrize("ext", ALL_DESK[::7])
def test_presentation_is_isomorphism(ext):
    pres = weak_semidirect_presentation(ext)
    assert pres.iso.is_bijective()
    assert is_extension_morphism(pres.extension, ext, pres.iso)
    assert is_weakly_schreier(pres.extension)
    assert extensions_isomorphic(ext, pres.extension)
