"""Brute-force classification, independent of the quotient/action machinery.

Enumerates every monoid G of order at most |N||H| up to isomorphism, every
triple (k, e, s) of homomorphisms, keeps the weakly Schreier split
extensions and merges those joined by morphisms both ways, where morphisms
are found by exhaustive search rather than through the order on pairs.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Optional

import numpy as np

from .errors import BoundExceeded, WSchreierError
from .extension import SplitExtension, is_weakly_schreier, validate_split_extension
from .monoid import FiniteMonoid, iter_homs
from .wact import search_morphisms

MAX_ORACLE_ORDER = 6


def _associative_tables(n: int):
    """Every associative table on ``0..n-1`` with identity 0 (labelled)."""
    t = [[-1] * n for _ in range(n)]
    for x in range(n):
        t[0][x] = x
        t[x][0] = x
    cells = [(a, b) for a in range(1, n) for b in range(1, n)]

    def ok(a: int, b: int) -> bool:
        v = t[a][b]
        for z in range(n):
            # (a b) z = a (b z)
            bz = t[b][z]
            vz = t[v][z]
            if bz >= 0 and vz >= 0:
                r = t[a][bz]
                if r >= 0 and r != vz:
                    return False
        for x in range(n):
            # (x a) b = x (a b)
            xa = t[x][a]
            xv = t[x][v]
            if xa >= 0 and xv >= 0:
                r = t[xa][b]
                if r >= 0 and r != xv:
                    return False
        for x in range(n):
            for y in range(n):
                # (x y) b with x y = a
                if t[x][y] == a:
                    yb = t[y][b]
                    if yb >= 0:
                        r = t[x][yb]
                        if r >= 0 and r != v:
                            return False
                # a (y z) with y z = b, here y = x and z = y
                if t[x][y] == b:
                    ax = t[a][x]
                    if ax >= 0:
                        r = t[ax][y]
                        if r >= 0 and r != v:
                            return False
        return True

    def rec(i: int):
        if i == len(cells):
            yield [row[:] for row in t]
            return
        a, b = cells[i]
        for v in range(n):
            t[a][b] = v
            if ok(a, b):
                yield from rec(i + 1)
        t[a][b] = -1

    yield from rec(0)


@lru_cache(maxsize=None)
def _perm_data(n: int):
    perms = np.array([(0,) + p for p in permutations(range(1, n))], dtype=np.int64).reshape(-1, n)
    inv = np.argsort(perms, axis=1)
    return perms, inv


def canonical_form(table) -> tuple:
    """Least row-major relabelled table over identity-fixing relabellings."""
    t = np.asarray(table, dtype=np.int64)
    n = t.shape[0]
    perms, inv = _perm_data(n)
    relabelled = np.take_along_axis(perms, t[inv[:, :, None], inv[:, None, :]].reshape(len(perms), -1), axis=1)
    order = np.lexsort(relabelled.T[::-1])
    return tuple(relabelled[order[0]].tolist())


@lru_cache(maxsize=None)
def monoids_of_order(n: int) -> tuple:
    """One representative of each isomorphism class of monoids of order n."""
    if n > MAX_ORACLE_ORDER:
        raise BoundExceeded(f"monoid enumeration is capped at order {MAX_ORACLE_ORDER}")
    if n == 1:
        return (FiniteMonoid([[0]]),)
    seen = set()
    for t in _associative_tables(n):
        seen.add(canonical_form(t))
    return tuple(FiniteMonoid(np.array(c).reshape(n, n)) for c in sorted(seen))


def raw_extensions(N: FiniteMonoid, G: FiniteMonoid, H: FiniteMonoid) -> list[SplitExtension]:
    """Every (k, e, s) on this G giving a weakly Schreier split extension."""
    out = []
    for s in iter_homs(H, G):
        if not s.is_injective():
            continue
        fixed = {s(h): h for h in H.elements()}
        for e in iter_homs(G, H, fixed=fixed):
            ker = sorted(g for g in G.elements() if e(g) == 0)
            if len(ker) != N.order:
                continue
            for k in iter_homs(N, G):
                if sorted(k.map) != ker:
                    continue
                try:
                    ext = validate_split_extension(N, G, H, k, e, s)
                except WSchreierError:
                    continue
                if is_weakly_schreier(ext):
                    out.append(ext)
    return out


def oracle_morphism(ext1: SplitExtension, ext2: SplitExtension) -> bool:
    return next(search_morphisms(ext1, ext2), None) is not None


def brute_force_classify(N: FiniteMonoid, H: FiniteMonoid, max_order: Optional[int] = None) -> list[SplitExtension]:
    """Weakly Schreier extensions of H by N up to isomorphism, by exhaustion."""
    top = N.order * H.order if max_order is None else min(max_order, N.order * H.order)
    if max_order is not None and max_order < max(N.order, H.order):
        raise ValueError("max_order must be at least max(|N|, |H|)")
    if top > MAX_ORACLE_ORDER:
        raise BoundExceeded(f"oracle would need monoids of order {top} > {MAX_ORACLE_ORDER}")
    classes: list[SplitExtension] = []
    for order in range(max(N.order, H.order), top + 1):
        for G in monoids_of_order(order):
            for ext in raw_extensions(N, G, H):
                if not any(
                    c.G.order == ext.G.order and oracle_morphism(c, ext) and oracle_morphism(ext, c)
                    for c in classes
                ):
                    classes.append(ext)
    return classes


def oracle_leq(exts: list[SplitExtension]) -> np.ndarray:
    """``[i, j]`` is true iff some morphism ext_i -> ext_j exists (exhaustive search)."""
    m = len(exts)
    return np.array([[oracle_morphism(a, b) for b in exts] for a in exts], dtype=bool).reshape(m, m)
