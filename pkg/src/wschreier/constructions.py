"""Factories for concrete weakly Schreier extensions: glueings along a
homomorphism into a commutative monoid, the coarse quotient, prime-ideal
quotients, disjoint unions and matrix monoids over a prime field.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable

import numpy as np

from .action import ActionClass, PreAction, is_action
from .errors import (
    ComplementNotSubmonoid,
    HHasRightInvertibles,
    IdealContainsRightInvertible,
    NotAnIdeal,
    NotCommutative,
    NotSemilattice,
    UnsupportedField,
)
from .extension import SplitExtension, validate_split_extension
from .monoid import FiniteMonoid, MonoidHom, Submonoid, validate_monoid
from .quotient import AdmissibleQuotient, is_admissible


@dataclass(frozen=True)
class RightInvertibleDecomposition:
    H: FiniteMonoid
    L: Submonoid
    complement: tuple

    def complement_is_two_sided(self) -> bool:
        comp = set(self.complement)
        return all(self.H.mul(x, y) in comp for y in comp for x in self.H.elements())


def right_invertible_submonoid(H: FiniteMonoid) -> RightInvertibleDecomposition:
    L = Submonoid(H, H.right_invertible())
    if not L.is_closed():
        raise AssertionError("right invertible elements are not closed under multiplication")
    comp = tuple(x for x in H.elements() if x not in L)
    cs = set(comp)
    if any(H.mul(y, x) not in cs for y in comp for x in H.elements()):
        raise AssertionError("non right invertible elements do not form a right ideal")
    return RightInvertibleDecomposition(H, L, comp)


def _assert_admissible(N, H, fibers) -> AdmissibleQuotient:
    verdict = is_admissible(N, H, fibers)
    if not verdict:
        raise AssertionError(f"constructed quotient is not admissible: {verdict.condition} at {verdict.witness}")
    return AdmissibleQuotient(N, H, fibers)


def lumped_over(N: FiniteMonoid, H: FiniteMonoid, lumped: Iterable[int]) -> AdmissibleQuotient:
    """One class over each ``h`` in ``lumped``, singletons elsewhere."""
    lumped = set(lumped)
    fibers = [[0] * N.order if h in lumped else list(range(N.order)) for h in H.elements()]
    return _assert_admissible(N, H, fibers)


def coarse_quotient(N: FiniteMonoid, H: FiniteMonoid) -> AdmissibleQuotient:
    return lumped_over(N, H, right_invertible_submonoid(H).complement)


def restriction_is_action(N: FiniteMonoid, H: FiniteMonoid, L: Iterable[int], alpha) -> bool:
    """Whether ``alpha`` restricted to ``L x N`` is an ordinary monoid action of L on N."""
    a = alpha.alpha if isinstance(alpha, PreAction) else np.asarray(alpha)
    L = sorted(L)
    ns = N.elements()
    if any(int(a[0, n]) != n for n in ns):
        return False
    for x in L:
        if int(a[x, 0]) != 0:
            return False
        if any(int(a[x, N.mul(n, m)]) != N.mul(int(a[x, n]), int(a[x, m])) for n in ns for m in ns):
            return False
        if any(int(a[H.mul(x, y), n]) != int(a[x, int(a[y, n])]) for y in L for n in ns):
            return False
    return True


def coarse_action_compatible(N: FiniteMonoid, H: FiniteMonoid, alpha) -> bool:
    """Whether ``alpha`` is an action relative to the coarse quotient.

    With a two-sided complement of L(H) this holds exactly when ``alpha`` is
    an action of L(H) on N; otherwise (and N non-trivial) it never holds.
    """
    dec = right_invertible_submonoid(H)
    if N.order == 1:
        return True
    if not dec.complement_is_two_sided():
        return False
    return restriction_is_action(N, H, dec.L.members, alpha)


def glueing_quotient(N: FiniteMonoid, f: MonoidHom) -> tuple[AdmissibleQuotient, ActionClass]:
    """``(n, h) ~ (n', h)`` iff ``n f(h) = n' f(h)``, with the trivial action."""
    if not N.is_commutative():
        raise NotCommutative("the glueing quotient needs a commutative N")
    if f.cod != N:
        raise ValueError("f must land in N")
    H = f.dom
    fibers = [[N.mul(n, f(h)) for n in N.elements()] for h in H.elements()]
    Q = _assert_admissible(N, H, fibers)
    act = ActionClass.trivial(Q)
    verdict = is_action(Q, act)
    if not verdict:
        raise AssertionError(f"trivial action fails condition {verdict.condition}")
    return Q, act


def glueing_collisions(N: FiniteMonoid, H: FiniteMonoid) -> list[list[MonoidHom]]:
    """Groups of two or more homs H -> N whose glueing extensions are isomorphic.

    Every glueing carries the trivial action class, so two of them are
    isomorphic exactly when their quotients coincide.
    """
    from .monoid import iter_homs

    groups: dict = {}
    for f in iter_homs(H, N):
        Q, _ = glueing_quotient(N, f)
        groups.setdefault(Q.key(), []).append(f)
    return [g for _, g in sorted(groups.items()) if len(g) > 1]


def _is_semilattice(N: FiniteMonoid) -> bool:
    return N.is_commutative() and N.is_idempotent()


def semilattice_glueing(f: MonoidHom) -> SplitExtension:
    """Gl(f): pairs ``(n, h)`` with ``n <= f(h)`` under ``(n ∧ n', h h')``."""
    N, H = f.cod, f.dom
    if not _is_semilattice(N):
        raise NotSemilattice("N must be commutative and idempotent")
    pairs = [(n, h) for h in H.elements() for n in N.elements() if N.leq(n, f(h))]
    index = {p: i for i, p in enumerate(pairs)}
    table = [[index[(N.mul(n, n2), H.mul(h, h2))] for n2, h2 in pairs] for n, h in pairs]
    G = validate_monoid(len(pairs), table)
    k = MonoidHom(N, G, [index[(n, 0)] for n in N.elements()])
    e = MonoidHom(G, H, [h for _, h in pairs])
    s = MonoidHom(H, G, [index[(f(h), h)] for h in H.elements()])
    return validate_split_extension(N, G, H, k, e, s)


def disjoint_union_extension(N: FiniteMonoid, H: FiniteMonoid) -> SplitExtension:
    """N ⊔ (H - {1}) with ``n h = h = h n``."""
    dec = right_invertible_submonoid(H)
    if len(dec.L) > 1:
        raise HHasRightInvertibles(f"H has right invertible elements {list(dec.L.members)[1:]}")
    nN = N.order
    size = nN + H.order - 1

    def idx(h):  # element of H - {1} as an index of the union
        return nN + h - 1

    t = np.empty((size, size), dtype=np.int64)
    for a in range(size):
        for b in range(size):
            if a < nN and b < nN:
                t[a, b] = N.mul(a, b)
            elif a >= nN and b >= nN:
                t[a, b] = idx(H.mul(a - nN + 1, b - nN + 1))
            else:
                t[a, b] = a if a >= nN else b
    G = validate_monoid(size, t)
    k = MonoidHom(N, G, range(nN))
    e = MonoidHom(G, H, [0] * nN + list(range(1, H.order)))
    s = MonoidHom(H, G, [0] + [idx(h) for h in range(1, H.order)])
    return validate_split_extension(N, G, H, k, e, s)


def is_prime_ideal(H: FiniteMonoid, Y: Iterable[int]) -> bool:
    Y = set(Y)
    comp = set(H.elements()) - Y
    two_sided = all(H.mul(x, y) in Y and H.mul(y, x) in Y for y in Y for x in H.elements())
    return two_sided and 0 in comp and all(H.mul(a, b) in comp for a in comp for b in comp)


def prime_ideal_quotient(N: FiniteMonoid, H: FiniteMonoid, Y: Iterable[int]) -> AdmissibleQuotient:
    """Lump every fibre over the ideal Y, keep the rest discrete."""
    Y = set(int(y) for y in Y)
    if any(H.mul(x, y) not in Y or H.mul(y, x) not in Y for y in Y for x in H.elements()):
        raise NotAnIdeal(f"{sorted(Y)} is not a two-sided ideal")
    ri = set(H.right_invertible())
    if Y & ri:
        raise IdealContainsRightInvertible(f"Y contains right invertible {sorted(Y & ri)}")
    comp = set(H.elements()) - Y
    if any(H.mul(a, b) not in comp for a in comp for b in comp):
        raise ComplementNotSubmonoid("complement of Y is not closed under multiplication")
    return lumped_over(N, H, Y)


# --- matrices over F_p -----------------------------------------------------

@dataclass(frozen=True)
class MatrixMonoid:
    monoid: FiniteMonoid
    matrices: tuple
    conjugation: PreAction
    field_size: int
    dim: int

    def index_of(self, matrix) -> int:
        return self.matrices.index(tuple(np.asarray(matrix).ravel().tolist()))

    def determinant(self, i: int) -> int:
        return _det(np.asarray(self.matrices[i]).reshape(self.dim, self.dim), self.field_size)

    def invertible(self) -> list[int]:
        return [i for i in range(len(self.matrices)) if self.determinant(i) != 0]


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _det(m: np.ndarray, p: int) -> int:
    """Leibniz expansion mod p; dimensions here are tiny."""
    n = m.shape[0]
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= int(m[i, perm[i]])
        total += term
    return total % p


def matrix_monoid(dim: int, field_size: int) -> MatrixMonoid:
    """All dim x dim matrices over F_p under multiplication.

    The identity matrix comes first; the rest follow in row-major order of
    their entry tuples.  The pre-action conjugates by invertible matrices and
    is the identity otherwise.
    """
    p = field_size
    if not _is_prime(p):
        raise UnsupportedField(f"field size {p} is not prime")
    ident = tuple(np.eye(dim, dtype=np.int64).ravel().tolist())
    mats = [ident] + [m for m in product(range(p), repeat=dim * dim) if m != ident]
    index = {m: i for i, m in enumerate(mats)}
    arr = np.array(mats, dtype=np.int64).reshape(-1, dim, dim)
    prods = np.einsum("aij,bjk->abik", arr, arr) % p
    size = len(mats)
    table = np.array([[index[tuple(prods[a, b].ravel().tolist())] for b in range(size)] for a in range(size)])
    M = validate_monoid(size, table, name=f"M{dim}(F{p})")
    inverse = {}
    for b in range(size):
        if _det(arr[b], p) != 0:
            inverse[b] = int(np.nonzero(table[b] == 0)[0][0])
    alpha = np.tile(np.arange(size), (size, 1))
    for b, binv in inverse.items():
        alpha[b] = table[table[b], binv]  # B A B^-1 for every A
    return MatrixMonoid(M, tuple(mats), PreAction(alpha), p, dim)
