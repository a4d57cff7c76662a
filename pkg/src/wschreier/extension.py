"""Split extensions N -k-> G -e-> H (section s), Schreier retractions and the
canonical quotient of N x H induced by ``(n, h) -> k(n) s(h)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import prod
from typing import Iterator

import numpy as np

from .errors import (
    CokernelMismatch,
    DomainMismatch,
    KernelMismatch,
    NotWeaklySchreier,
    RetractionCapExceeded,
    SectionNotSplitting,
)
from .monoid import (
    FiniteMonoid,
    MonoidHom,
    canonical_labels,
    congruence_closure,
    kernel_pair,
)
from .quotient import AdmissibleQuotient, Verdict

DEFAULT_RETRACTION_CAP = 10**6


@dataclass(frozen=True)
class SplitExtension:
    N: FiniteMonoid
    G: FiniteMonoid
    H: FiniteMonoid
    k: MonoidHom
    e: MonoidHom
    s: MonoidHom

    def phi(self, n: int, h: int) -> int:
        """``k(n) * s(h)`` in G."""
        return self.G.mul(self.k(n), self.s(h))

    @cached_property
    def phi_table(self) -> np.ndarray:
        """``phi_table[n, h] = k(n) s(h)``."""
        k = np.asarray(self.k.map)
        s = np.asarray(self.s.map)
        return self.G.table[k[:, None], s[None, :]]


def validate_split_extension(N, G, H, k: MonoidHom, e: MonoidHom, s: MonoidHom) -> SplitExtension:
    """Check the kernel, cokernel and splitting axioms; raise with a witness."""
    for hom, dom, cod, label in ((k, N, G, "k"), (e, G, H, "e"), (s, H, G, "s")):
        if hom.dom != dom or hom.cod != cod:
            raise DomainMismatch(f"{label} has the wrong domain or codomain")
    seen: dict = {}
    for n, g in enumerate(k.map):
        if g in seen:
            raise KernelMismatch((seen[g], n), "k is not injective")
        seen[g] = n
    ker = {g for g in G.elements() if e(g) == 0}
    img = set(k.map)
    if ker != img:
        g = min(ker ^ img)
        raise KernelMismatch(g, "image of k differs from e^-1(1)")
    missing = set(H.elements()) - set(e.map)
    if missing:
        raise CokernelMismatch(min(missing), "e is not surjective")
    closure = congruence_closure(G, [(g, 0) for g in k.map]).class_of
    pair = kernel_pair(e)
    if closure != pair:
        for a in G.elements():
            for b in G.elements():
                if (closure[a] == closure[b]) != (pair[a] == pair[b]):
                    raise CokernelMismatch((a, b), "kernel pair of e differs from the congruence generated by k")
    for h in H.elements():
        if e(s(h)) != h:
            raise SectionNotSplitting(h)
    return SplitExtension(N, G, H, k, e, s)


def witness_sets(ext: SplitExtension) -> list[list[int]]:
    """For each g, the n with ``g = k(n) s(e(g))``."""
    out: list[list[int]] = [[] for _ in ext.G.elements()]
    for g in ext.G.elements():
        sg = ext.s(ext.e(g))
        out[g] = [n for n in ext.N.elements() if ext.G.mul(ext.k(n), sg) == g]
    return out


def is_weakly_schreier(ext: SplitExtension) -> Verdict:
    """True iff every witness set is non-empty; ``witness`` holds the sets."""
    ws = witness_sets(ext)
    for g, w in enumerate(ws):
        if not w:
            return Verdict(False, "no-factorisation", g)
    return Verdict(True, witness=ws)


def _require_weakly_schreier(ext: SplitExtension) -> list[list[int]]:
    ws = witness_sets(ext)
    for g, w in enumerate(ws):
        if not w:
            raise NotWeaklySchreier(g)
    return ws


@dataclass(frozen=True)
class SchreierRetraction:
    ext: SplitExtension
    q: tuple

    def __call__(self, g: int) -> int:
        return self.q[g]

    def is_valid(self) -> bool:
        ext = self.ext
        return all(ext.G.mul(ext.k(self.q[g]), ext.s(ext.e(g))) == g for g in ext.G.elements())

    def action(self) -> np.ndarray:
        """``alpha[h, n] = q(s(h) k(n))``."""
        ext = self.ext
        q = np.asarray(self.q)
        k = np.asarray(ext.k.map)
        s = np.asarray(ext.s.map)
        return q[ext.G.table[s[:, None], k[None, :]]]


def count_schreier_retractions(ext: SplitExtension) -> int:
    return prod(len(w) for w in _require_weakly_schreier(ext))


def iter_schreier_retractions(ext: SplitExtension) -> Iterator[SchreierRetraction]:
    """Every choice function through the witness sets, lexicographically."""
    ws = _require_weakly_schreier(ext)
    for q in product(*ws):
        yield SchreierRetraction(ext, q)


def enumerate_schreier_retractions(ext: SplitExtension, cap: int = DEFAULT_RETRACTION_CAP) -> list[SchreierRetraction]:
    count = count_schreier_retractions(ext)
    if count > cap:
        raise RetractionCapExceeded(count, cap)
    return list(iter_schreier_retractions(ext))


def first_retraction(ext: SplitExtension) -> SchreierRetraction:
    ws = _require_weakly_schreier(ext)
    return SchreierRetraction(ext, tuple(w[0] for w in ws))


def check_retraction_properties(ext: SplitExtension, q) -> bool:
    """``q k = 1``, ``q(1) = 1`` and ``k q(s(h) k(n)) s(h) = s(h) k(n)``."""
    q = tuple(q.q) if isinstance(q, SchreierRetraction) else tuple(q)
    G = ext.G
    if any(q[ext.k(n)] != n for n in ext.N.elements()):
        return False
    if q[0] != 0:
        return False
    for h in ext.H.elements():
        sh = ext.s(h)
        for n in ext.N.elements():
            g = G.mul(sh, ext.k(n))
            if G.mul(ext.k(q[g]), sh) != g:
                return False
    return True


@dataclass(frozen=True)
class CanonicalQuotient:
    """Classes of N x H under ``k(n) s(h) = k(n') s(h')``."""

    ext: SplitExtension
    quotient: AdmissibleQuotient
    element_of: tuple

    @property
    def class_of(self) -> np.ndarray:
        """``class_of[n, h]`` is the global class id of ``(n, h)``."""
        return self.quotient.class_table

    @property
    def representatives(self) -> tuple:
        return self.quotient.representatives

    @property
    def num_classes(self) -> int:
        return self.quotient.num_classes

    def phi_bar(self, cid: int) -> int:
        return self.element_of[cid]

    def is_discrete(self) -> bool:
        return self.quotient.is_discrete()


def canonical_quotient(ext: SplitExtension) -> CanonicalQuotient:
    _require_weakly_schreier(ext)
    phi = ext.phi_table
    fibers = [canonical_labels(phi[:, h].tolist()) for h in ext.H.elements()]
    # distinct fibres never share an image, since e(k(n) s(h)) = h
    Q = AdmissibleQuotient(ext.N, ext.H, fibers)
    element_of = tuple(int(phi[n, h]) for n, h in Q.representatives)
    return CanonicalQuotient(ext, Q, element_of)


def is_schreier(ext: SplitExtension) -> bool:
    if not is_weakly_schreier(ext):
        return False
    return canonical_quotient(ext).is_discrete()


@dataclass(frozen=True)
class WeakSemidirectPresentation:
    monoid: FiniteMonoid
    iso: MonoidHom
    extension: SplitExtension
    quotient: CanonicalQuotient


def weak_semidirect_presentation(ext: SplitExtension) -> WeakSemidirectPresentation:
    """Transport G's multiplication to the classes of N x H.

    ``iso`` sends ``[n, h]`` to ``k(n) s(h)``.
    """
    cq = canonical_quotient(ext)
    Q = cq.quotient
    to_g = np.asarray(cq.element_of)
    from_g = np.empty(ext.G.order, dtype=np.int64)
    from_g[to_g] = np.arange(len(to_g))
    table = from_g[ext.G.table[to_g[:, None], to_g[None, :]]]
    M = FiniteMonoid(table)
    k2 = MonoidHom(ext.N, M, [Q.cls(n, 0) for n in ext.N.elements()])
    e2 = MonoidHom(M, ext.H, [h for _, h in Q.representatives])
    s2 = MonoidHom(ext.H, M, [Q.cls(0, h) for h in ext.H.elements()])
    new = validate_split_extension(ext.N, M, ext.H, k2, e2, s2)
    return WeakSemidirectPresentation(M, MonoidHom(M, ext.G, to_g), new, cq)
