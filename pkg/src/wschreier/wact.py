"""The preorder of (quotient, action class) pairs and its equivalence with
weakly Schreier extensions.

``functor_T`` reads a pair off an extension, ``functor_S`` builds the
extension of a pair, and morphisms between extensions are decided through
``wact_leq``: there is at most one, and it sends ``[n, h]`` to ``[n, h]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .action import ActionClass, enumerate_action_classes, weak_semidirect_product
from .errors import NotWeaklySchreier, SignatureMismatch
from .extension import (
    DEFAULT_RETRACTION_CAP,
    SplitExtension,
    canonical_quotient,
    count_schreier_retractions,
    first_retraction,
    is_weakly_schreier,
    iter_schreier_retractions,
)
from .monoid import MonoidHom, check_schedule
from .quotient import DEFAULT_QUOTIENT_BOUND, enumerate_admissible_quotients
from .action import DEFAULT_ACTION_BOUND


@dataclass(frozen=True)
class WActObject:
    quotient: object
    action: ActionClass

    def __post_init__(self):
        if self.action.quotient != self.quotient:
            raise SignatureMismatch("action class is relative to a different quotient")

    def key(self) -> tuple:
        return (self.quotient.key(), self.action.key())


@dataclass(frozen=True)
class ExtensionMorphism:
    source: SplitExtension
    target: SplitExtension
    map: MonoidHom

    def is_injective(self) -> bool:
        return self.map.is_injective()

    def is_bijective(self) -> bool:
        return self.map.is_bijective()


def _same_signature(a, b):
    if a.N != b.N or a.H != b.H:
        raise SignatureMismatch("objects are over different N or H")


def wact_leq(a: WActObject, b: WActObject) -> bool:
    """``a <= b``: a's quotient refines b's, and the actions agree in b's classes."""
    Qa, Qb = a.quotient, b.quotient
    _same_signature(Qa, Qb)
    if not Qa.refines(Qb):
        return False
    # with Qa finer, every member of an Qa-class lies in one Qb-class
    ga = a.action.global_table
    gb = b.action.global_table
    for h in Qa.H.elements():
        for n in Qa.N.elements():
            m = Qa.representatives[int(ga[h, n])][0]
            if Qb.cls(m, h) != gb[h, n]:
                return False
    return True


def functor_T(ext: SplitExtension, check_all: bool = True, cap: int = DEFAULT_RETRACTION_CAP) -> WActObject:
    """``(E(e, s), [alpha])`` with ``alpha(h, n) = q(s(h) k(n))``.

    With ``check_all`` every retraction (up to ``cap``) is confirmed to give
    the same class; this raises ``AssertionError`` if that ever fails.
    """
    verdict = is_weakly_schreier(ext)
    if not verdict:
        raise NotWeaklySchreier(verdict.witness)
    Q = canonical_quotient(ext).quotient
    q = first_retraction(ext)
    cls = ActionClass.from_preaction(Q, q.action())
    if check_all and count_schreier_retractions(ext) <= cap:
        for other in iter_schreier_retractions(ext):
            if ActionClass.from_preaction(Q, other.action()) != cls:
                raise AssertionError(f"retraction {other.q} gives a different action class")
    return WActObject(Q, cls)


def functor_S(obj: WActObject) -> SplitExtension:
    return weak_semidirect_product(obj.quotient, obj.action)


def _candidate_map(ext1: SplitExtension, ext2: SplitExtension) -> Optional[list[int]]:
    """``k1(n) s1(h) -> k2(n) s2(h)``, or None when that is not a function."""
    phi1, phi2 = ext1.phi_table, ext2.phi_table
    img = [-1] * ext1.G.order
    for n in ext1.N.elements():
        for h in ext1.H.elements():
            g, t = int(phi1[n, h]), int(phi2[n, h])
            if img[g] < 0:
                img[g] = t
            elif img[g] != t:
                return None
    return img


def is_extension_morphism(ext1: SplitExtension, ext2: SplitExtension, f) -> bool:
    """A monoid map G1 -> G2 commuting with k, e and s."""
    f = list(f.map if isinstance(f, MonoidHom) else f)
    G1, G2 = ext1.G, ext2.G
    if f[0] != 0:
        return False
    t1, t2 = G1.table.tolist(), G2.table.tolist()
    for a in G1.elements():
        for b in G1.elements():
            if f[t1[a][b]] != t2[f[a]][f[b]]:
                return False
    return (
        all(f[ext1.k(n)] == ext2.k(n) for n in ext1.N.elements())
        and all(f[ext1.s(h)] == ext2.s(h) for h in ext1.H.elements())
        and all(ext2.e(f[g]) == ext1.e(g) for g in G1.elements())
    )


def morphism_exists(ext1: SplitExtension, ext2: SplitExtension) -> Optional[ExtensionMorphism]:
    """The unique morphism ext1 -> ext2 of split extensions, if there is one."""
    _same_signature(ext1, ext2)
    if not wact_leq(functor_T(ext1, check_all=False), functor_T(ext2, check_all=False)):
        return None
    img = _candidate_map(ext1, ext2)
    if img is None or not is_extension_morphism(ext1, ext2, img):
        raise AssertionError("order relation holds but [n,h] -> [n,h] is not a morphism")
    return ExtensionMorphism(ext1, ext2, MonoidHom(ext1.G, ext2.G, img))


def extensions_isomorphic(ext1: SplitExtension, ext2: SplitExtension) -> bool:
    return morphism_exists(ext1, ext2) is not None and morphism_exists(ext2, ext1) is not None


def search_morphisms(ext1: SplitExtension, ext2: SplitExtension) -> Iterator[MonoidHom]:
    """Every monoid map G1 -> G2 commuting with the squares, by exhaustive search."""
    G1, G2 = ext1.G, ext2.G
    n = G1.order
    t2 = G2.table.tolist()
    e1 = ext1.e.map
    e2 = ext2.e.map
    img = [-1] * n
    img[0] = 0
    fixed = {}
    for x in ext1.N.elements():
        fixed.setdefault(ext1.k(x), set()).add(ext2.k(x))
    for h in ext1.H.elements():
        fixed.setdefault(ext1.s(h), set()).add(ext2.s(h))
    if any(len(v) > 1 for v in fixed.values()):
        return

    schedule = check_schedule(G1)

    def consistent(x: int) -> bool:
        return all(img[c] == t2[img[a]][img[b]] for a, b, c in schedule[x])

    def rec(x: int):
        if x == n:
            yield MonoidHom(G1, G2, img)
            return
        options = fixed[x] if x in fixed else range(G2.order)
        for c in sorted(options):
            if e2[c] != e1[x]:
                continue
            img[x] = c
            if consistent(x):
                yield from rec(x + 1)
        img[x] = -1

    if 0 in fixed and fixed[0] != {0}:
        return
    yield from rec(1)


@dataclass(frozen=True)
class Classification:
    objects: tuple
    leq: np.ndarray

    def __len__(self) -> int:
        return len(self.objects)

    def __iter__(self):
        return iter(self.objects)

    def __getitem__(self, i):
        return self.objects[i]


def _actions_for(args):
    Q, bound = args
    return [WActObject(Q, a) for a in enumerate_action_classes(Q, bound=bound)]


def classify_extensions(N, H, quotient_bound=DEFAULT_QUOTIENT_BOUND, action_bound=DEFAULT_ACTION_BOUND, threads: int = 1) -> Classification:
    """All weakly Schreier extensions of H by N up to isomorphism, with the order matrix."""
    quotients = enumerate_admissible_quotients(N, H, bound=quotient_bound)
    jobs = [(Q, action_bound) for Q in quotients]
    if threads > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_actions_for, jobs))
    else:
        chunks = [_actions_for(j) for j in jobs]
    objects = sorted((o for chunk in chunks for o in chunk), key=WActObject.key)
    leq = np.array([[wact_leq(a, b) for b in objects] for a in objects], dtype=bool).reshape(len(objects), len(objects))
    return Classification(tuple(objects), leq)
