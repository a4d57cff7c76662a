"""Finite monoids as Cayley tables, homomorphisms, congruences and quotients.

Every monoid here has its identity at index 0.  Tables are read-only numpy
integer arrays with ``table[a, b] = a * b`` (row is the left factor).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import (
    AssociativityViolation,
    DomainMismatch,
    IdentityNotPreserved,
    IdentityViolation,
    MultiplicationNotPreserved,
    ShapeError,
)


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=np.int64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    table: np.ndarray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        t = _frozen(self.table)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise ShapeError(f"table must be a non-empty square array, got shape {t.shape}")
        object.__setattr__(self, "table", t)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def elements(self) -> range:
        return range(self.order)

    def __eq__(self, other):
        if not isinstance(other, FiniteMonoid):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.order, self.table.tobytes()))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteMonoid{label} order={self.order}>"

    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def is_idempotent(self) -> bool:
        return bool(np.all(np.diagonal(self.table) == np.arange(self.order)))

    def is_group(self) -> bool:
        return all(0 in row for row in self.table.tolist())

    def right_invertible(self) -> list[int]:
        """Elements ``x`` with some ``y`` such that ``x * y = 1``."""
        return [x for x in self.elements() if bool(np.any(self.table[x] == 0))]

    def leq(self, a: int, b: int) -> bool:
        """Meet-semilattice order ``a <= b`` iff ``a * b = a``."""
        return self.mul(a, b) == a


def validate_monoid(order: int, table, name: str = "") -> FiniteMonoid:
    t = np.asarray(table, dtype=np.int64)
    if t.shape != (order, order):
        raise ShapeError(f"expected a {order}x{order} table, got shape {t.shape}")
    if order < 1:
        raise ShapeError("a monoid has at least one element")
    if t.min() < 0 or t.max() >= order:
        raise ShapeError(f"table entries must lie in [0, {order})")
    idx = np.arange(order)
    bad = np.nonzero((t[0] != idx) | (t[:, 0] != idx))[0]
    if bad.size:
        raise IdentityViolation(int(bad[0]))
    # (ab)c against a(bc) for every triple at once
    left = t[t, :]  # left[a,b,c] = t[t[a,b], c]
    right = t[:, t]  # right[a,b,c] = t[a, t[b,c]]
    diff = np.argwhere(left != right)
    if diff.size:
        a, b, c = (int(v) for v in diff[0])
        raise AssociativityViolation(a, b, c)
    return FiniteMonoid(t, name=name)


# --- standard small monoids ------------------------------------------------

def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid([[0]], name="1")


def cyclic_group(n: int) -> FiniteMonoid:
    idx = np.arange(n)
    return FiniteMonoid((idx[:, None] + idx[None, :]) % n, name=f"C{n}")


def chain(n: int) -> FiniteMonoid:
    """The n-element chain as a meet-semilattice: 0 is the top, n-1 the bottom."""
    idx = np.arange(n)
    return FiniteMonoid(np.maximum(idx[:, None], idx[None, :]), name=f"S{n}" if n == 2 else f"chain{n}")


def product_monoid(m1: FiniteMonoid, m2: FiniteMonoid) -> FiniteMonoid:
    """Direct product; the pair ``(a, b)`` has index ``a * |m2| + b``."""
    n2 = m2.order
    a = np.repeat(np.arange(m1.order), n2)
    b = np.tile(np.arange(n2), m1.order)
    t = m1.table[a[:, None], a[None, :]] * n2 + m2.table[b[:, None], b[None, :]]
    name = f"{m1.name}x{m2.name}" if m1.name and m2.name else ""
    return FiniteMonoid(t, name=name)


def relabel(m: FiniteMonoid, perm: Sequence[int]) -> FiniteMonoid:
    """Monoid isomorphic to ``m`` where old element ``x`` gets index ``perm[x]``."""
    p = np.asarray(perm)
    if p[0] != 0:
        raise ValueError("relabelling must fix the identity")
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p))
    return FiniteMonoid(p[m.table[inv[:, None], inv[None, :]]])


# --- homomorphisms ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MonoidHom:
    dom: FiniteMonoid
    cod: FiniteMonoid
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        if len(self.map) != self.dom.order:
            raise ShapeError(f"map has length {len(self.map)}, domain has order {self.dom.order}")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other):
        if not isinstance(other, MonoidHom):
            return NotImplemented
        return self.map == other.map and self.dom == other.dom and self.cod == other.cod

    def __hash__(self):
        return hash((self.map, self.dom, self.cod))

    def __repr__(self):
        return f"MonoidHom({list(self.map)})"

    def image(self) -> list[int]:
        return sorted(set(self.map))

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.cod.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def then(self, other: "MonoidHom") -> "MonoidHom":
        """Composite ``other ∘ self``."""
        if other.dom != self.cod:
            raise DomainMismatch("codomain of the first map is not the domain of the second")
        return MonoidHom(self.dom, other.cod, [other.map[x] for x in self.map])

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.map)


def validate_hom(dom: FiniteMonoid, cod: FiniteMonoid, mapping) -> MonoidHom:
    f = list(int(x) for x in mapping)
    if len(f) != dom.order or any(not 0 <= x < cod.order for x in f):
        raise ShapeError("map must send each domain element to a codomain index")
    if f[0] != 0:
        raise IdentityNotPreserved(f[0])
    fa = np.asarray(f)
    bad = np.argwhere(fa[dom.table] != cod.table[fa[:, None], fa[None, :]])
    if bad.size:
        a, b = (int(v) for v in bad[0])
        raise MultiplicationNotPreserved(a, b)
    return MonoidHom(dom, cod, f)


def identity_hom(m: FiniteMonoid) -> MonoidHom:
    return MonoidHom(m, m, range(m.order))


def zero_hom(dom: FiniteMonoid, cod: FiniteMonoid) -> MonoidHom:
    return MonoidHom(dom, cod, [0] * dom.order)


def check_schedule(m: FiniteMonoid) -> list[list[tuple]]:
    """``schedule[x]``: the triples ``(a, b, a b)`` whose largest index is x.

    A backtracking search assigning images in index order checks
    ``schedule[x]`` once x is assigned; then every product is checked
    exactly once, as soon as all three of its elements have images.
    """
    out = [[] for _ in range(m.order)]
    t = m.table.tolist()
    for a in range(m.order):
        for b in range(m.order):
            c = t[a][b]
            out[max(a, b, c)].append((a, b, c))
    return out


def iter_homs(dom: FiniteMonoid, cod: FiniteMonoid, fixed: Optional[dict] = None) -> Iterator[MonoidHom]:
    """All homomorphisms ``dom -> cod`` (agreeing with ``fixed``), lexicographically.

    Plain backtracking over images of ``1..n-1``; see ``check_schedule``.
    """
    n = dom.order
    ct = cod.table.tolist()
    fixed = dict(fixed or {})
    if fixed.get(0, 0) != 0:
        return
    img = [-1] * n
    img[0] = 0

    schedule = check_schedule(dom)

    def consistent(x: int) -> bool:
        return all(img[c] == ct[img[a]][img[b]] for a, b, c in schedule[x])

    def rec(x: int):
        if x == n:
            yield MonoidHom(dom, cod, img)
            return
        choices = [fixed[x]] if x in fixed else range(cod.order)
        for c in choices:
            img[x] = c
            if consistent(x):
                yield from rec(x + 1)
        img[x] = -1

    yield from rec(1)


# --- congruences -----------------------------------------------------------

def canonical_labels(labels: Sequence[int]) -> tuple:
    """Renumber class labels by first occurrence."""
    seen: dict = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class Congruence:
    monoid: FiniteMonoid
    class_of: tuple

    @property
    def num_classes(self) -> int:
        return max(self.class_of) + 1

    def related(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def is_discrete(self) -> bool:
        return self.num_classes == self.monoid.order

    def is_compatible(self) -> bool:
        c = np.asarray(self.class_of)
        t = self.monoid.table
        # compatibility on each side separately is equivalent to two-sided compatibility
        for x in self.monoid.elements():
            left = c[t[x]]
            right = c[t[:, x]]
            for img in (left, right):
                seen: dict = {}
                for cls, v in zip(c.tolist(), img.tolist()):
                    if seen.setdefault(cls, v) != v:
                        return False
        return True


def _closure(m: FiniteMonoid, seeds: Iterable, *, left: bool, right: bool, base=None) -> tuple:
    t = m.table.tolist()
    n = m.order
    uf = _UnionFind(n)
    work = []
    if base is not None:
        for x, cls in enumerate(base):
            work.append((x, base.index(cls)))
    work.extend((int(a), int(b)) for a, b in seeds)
    while work:
        a, b = work.pop()
        if not uf.union(a, b):
            continue
        for x in range(n):
            if left:
                work.append((t[x][a], t[x][b]))
            if right:
                work.append((t[a][x], t[b][x]))
    return canonical_labels([uf.find(x) for x in range(n)])


def congruence_closure(m: FiniteMonoid, seed_pairs: Iterable = ()) -> Congruence:
    """Smallest two-sided congruence on ``m`` containing ``seed_pairs``."""
    return Congruence(m, _closure(m, seed_pairs, left=True, right=True))


def left_congruence_closure(m: FiniteMonoid, seed_pairs: Iterable = (), base: Optional[Sequence[int]] = None) -> tuple:
    """Smallest equivalence containing ``base`` and the seeds, stable under ``x -> n*x``."""
    return _closure(m, seed_pairs, left=True, right=False, base=base)


def quotient_monoid(m: FiniteMonoid, cong: Congruence) -> tuple[FiniteMonoid, MonoidHom]:
    c = cong.class_of
    k = cong.num_classes
    rep = [c.index(i) for i in range(k)]
    t = [[c[m.mul(rep[i], rep[j])] for j in range(k)] for i in range(k)]
    q = FiniteMonoid(t)
    return q, MonoidHom(m, q, c)


def kernel_pair(f: MonoidHom) -> tuple:
    return canonical_labels(f.map)


# --- submonoids, kernels, cokernels ----------------------------------------

@dataclass(frozen=True)
class Submonoid:
    monoid: FiniteMonoid
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(int(x) for x in self.members))))

    def __contains__(self, x) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def is_closed(self) -> bool:
        mem = set(self.members)
        return 0 in mem and all(self.monoid.mul(a, b) in mem for a in mem for b in mem)

    def as_monoid(self) -> FiniteMonoid:
        pos = {x: i for i, x in enumerate(self.members)}
        return FiniteMonoid([[pos[self.monoid.mul(a, b)] for b in self.members] for a in self.members])

    def inclusion(self) -> MonoidHom:
        return MonoidHom(self.as_monoid(), self.monoid, self.members)


def kernel(e: MonoidHom) -> tuple[Submonoid, MonoidHom]:
    sub = Submonoid(e.dom, [g for g in e.dom.elements() if e(g) == 0])
    return sub, sub.inclusion()


def is_cokernel(k: MonoidHom, e: MonoidHom) -> bool:
    """Kernel-pair test: ``e`` is onto and identifies exactly what ``k(N) ~ 1`` generates."""
    if k.cod != e.dom:
        raise DomainMismatch("cod(k) must equal dom(e)")
    if not e.is_surjective():
        return False
    closure = congruence_closure(e.dom, [(x, 0) for x in k.map])
    return closure.class_of == kernel_pair(e)


# --- isomorphism -----------------------------------------------------------

def _element_profile(m: FiniteMonoid) -> list[tuple]:
    """Isomorphism-invariant data per element, used to prune bijections."""
    t = m.table
    n = m.order
    out = []
    for x in range(n):
        powers = [x]
        while True:
            nxt = int(t[powers[-1], x])
            if nxt in powers:
                break
            powers.append(nxt)
        out.append((
            len(powers),
            int(t[x, x] == x),
            int(np.sum(t[x] == x)),
            int(np.sum(t[:, x] == x)),
            len(set(t[x].tolist())),
            len(set(t[:, x].tolist())),
            int(np.any(t[x] == 0)),
        ))
    return out


def iter_isomorphisms(m1: FiniteMonoid, m2: FiniteMonoid) -> Iterator[MonoidHom]:
    """All isomorphisms ``m1 -> m2`` in lexicographic order of their maps."""
    n = m1.order
    if m2.order != n:
        return
    p1, p2 = _element_profile(m1), _element_profile(m2)
    if sorted(p1) != sorted(p2):
        return
    t2 = m2.table.tolist()
    img = [-1] * n
    img[0] = 0
    used = [False] * n
    used[0] = True

    schedule = check_schedule(m1)

    def consistent(x: int) -> bool:
        return all(img[c] == t2[img[a]][img[b]] for a, b, c in schedule[x])

    def rec(x: int):
        if x == n:
            yield MonoidHom(m1, m2, img)
            return
        for c in range(1, n):
            if used[c] or p2[c] != p1[x]:
                continue
            img[x] = c
            used[c] = True
            if consistent(x):
                yield from rec(x + 1)
            used[c] = False
        img[x] = -1

    yield from rec(1)


def find_isomorphism(m1: FiniteMonoid, m2: FiniteMonoid) -> Optional[MonoidHom]:
    return next(iter_isomorphisms(m1, m2), None)
