"""Admissible quotients of N x H.

A quotient is stored fibre by fibre: row ``h`` of ``fibers`` labels the
elements of N, and ``(n, h) ~ (n', h)`` iff the labels agree.  Pairs in
different fibres are never related, so that condition holds by construction.

Classes get global ids ordered by ``(h, local label)``; with labels numbered
by first occurrence this puts ``[1, 1]`` at id 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Optional

import numpy as np

from .errors import BoundExceeded, ShapeError
from .monoid import FiniteMonoid, canonical_labels, left_congruence_closure

DEFAULT_QUOTIENT_BOUND = 36


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome of a check, with the failing condition when false."""

    ok: bool
    condition: str = ""
    witness: Any = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=False)
class AdmissibleQuotient:
    N: FiniteMonoid
    H: FiniteMonoid
    fibers: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.fibers, dtype=np.int64)
        if f.shape != (self.H.order, self.N.order):
            raise ShapeError(f"fibers must have shape ({self.H.order}, {self.N.order}), got {f.shape}")
        f = np.array([canonical_labels(row) for row in f.tolist()], dtype=np.int64).reshape(f.shape)
        f.setflags(write=False)
        object.__setattr__(self, "fibers", f)

    def key(self) -> tuple:
        return tuple(self.fibers.ravel().tolist())

    def __eq__(self, other):
        if not isinstance(other, AdmissibleQuotient):
            return NotImplemented
        return self.N == other.N and self.H == other.H and np.array_equal(self.fibers, other.fibers)

    def __hash__(self):
        return hash((self.N, self.H, self.key()))

    def __repr__(self):
        return f"AdmissibleQuotient(classes={self.num_classes}, fibers={self.fibers.tolist()})"

    @cached_property
    def fiber_sizes(self) -> tuple:
        """Number of classes in each fibre."""
        return tuple(int(row.max()) + 1 for row in self.fibers)

    @cached_property
    def offsets(self) -> tuple:
        return tuple(int(x) for x in np.concatenate([[0], np.cumsum(self.fiber_sizes)[:-1]]))

    @property
    def num_classes(self) -> int:
        return sum(self.fiber_sizes)

    def local(self, n: int, h: int) -> int:
        return int(self.fibers[h, n])

    def cls(self, n: int, h: int) -> int:
        """Global id of the class ``[n, h]``."""
        return self.offsets[h] + int(self.fibers[h, n])

    @cached_property
    def class_table(self) -> np.ndarray:
        """``class_table[n, h]`` is the global id of ``[n, h]``."""
        t = (self.fibers + np.asarray(self.offsets)[:, None]).T.copy()
        t.setflags(write=False)
        return t

    @cached_property
    def representatives(self) -> tuple:
        """Least pair ``(n, h)`` of each class, indexed by global id."""
        reps = []
        for h in self.H.elements():
            row = self.fibers[h].tolist()
            reps.extend((row.index(c), h) for c in range(self.fiber_sizes[h]))
        return tuple(reps)

    def fiber_of(self, cid: int) -> int:
        return self.representatives[cid][1]

    def members(self, cid: int) -> list[int]:
        n, h = self.representatives[cid]
        lab = self.fibers[h, n]
        return [int(x) for x in np.nonzero(self.fibers[h] == lab)[0]]

    def related(self, n1: int, n2: int, h: int) -> bool:
        return self.fibers[h, n1] == self.fibers[h, n2]

    def is_discrete(self) -> bool:
        return self.num_classes == self.N.order * self.H.order

    @cached_property
    def left_star(self) -> np.ndarray:
        """``left_star[m, c]`` is the class ``m * [n, h] = [m n, h]``."""
        ct = self.class_table
        nt = self.N.table
        out = np.empty((self.N.order, self.num_classes), dtype=np.int64)
        for c, (n, h) in enumerate(self.representatives):
            out[:, c] = ct[nt[:, n], h]
        out.setflags(write=False)
        return out

    @cached_property
    def right_star(self) -> np.ndarray:
        """``right_star[c, x]`` is the class ``[n, h] * x = [n, h x]``."""
        ct = self.class_table
        ht = self.H.table
        out = np.empty((self.num_classes, self.H.order), dtype=np.int64)
        for c, (n, h) in enumerate(self.representatives):
            out[c, :] = ct[n, ht[h, :]]
        out.setflags(write=False)
        return out

    def refines(self, other: "AdmissibleQuotient") -> bool:
        """Every pair related here is related in ``other``."""
        return all(_refines(a, b) for a, b in zip(self.fibers.tolist(), other.fibers.tolist()))

    def lumped_pairs(self) -> set:
        out = set()
        for h in self.H.elements():
            row = self.fibers[h].tolist()
            for a in range(len(row)):
                for b in range(a + 1, len(row)):
                    if row[a] == row[b]:
                        out.add((a, b, h))
        return out


def _refines(p, q) -> bool:
    seen: dict = {}
    return all(seen.setdefault(a, b) == b for a, b in zip(p, q))


def discrete_quotient(N: FiniteMonoid, H: FiniteMonoid) -> AdmissibleQuotient:
    return AdmissibleQuotient(N, H, np.tile(np.arange(N.order), (H.order, 1)))


def is_admissible(N: FiniteMonoid, H: FiniteMonoid, fibers) -> Verdict:
    """Check the four admissibility conditions; name the first failure."""
    f = np.asarray(fibers)
    if f.shape != (H.order, N.order):
        return Verdict(False, "shape", f.shape)
    rows = f.tolist()
    # over the identity of H the fibre is discrete
    if len(set(rows[0])) != N.order:
        row = rows[0]
        for a in range(N.order):
            for b in range(a + 1, N.order):
                if row[a] == row[b]:
                    return Verdict(False, "identity-fiber-discrete", (a, b))
    nt = N.table.tolist()
    ht = H.table.tolist()
    for h in H.elements():
        row = rows[h]
        for a in range(N.order):
            for b in range(a + 1, N.order):
                if row[a] != row[b]:
                    continue
                for n in N.elements():
                    if row[nt[n][a]] != row[nt[n][b]]:
                        return Verdict(False, "left-stability", (a, b, h, n))
                for x in H.elements():
                    hx = rows[ht[h][x]]
                    if hx[a] != hx[b]:
                        return Verdict(False, "right-stability", (a, b, h, x))
    return Verdict(True)


def left_congruences(N: FiniteMonoid) -> list[tuple]:
    """Every equivalence on N stable under left multiplication, sorted.

    Each is a join of principal ones, so close the discrete relation under
    joining with single pairs.
    """
    n = N.order
    discrete = tuple(range(n))
    found = {discrete}
    frontier = [discrete]
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    while frontier:
        c = frontier.pop()
        for a, b in pairs:
            if c[a] == c[b]:
                continue
            d = left_congruence_closure(N, [(a, b)], base=c)
            if d not in found:
                found.add(d)
                frontier.append(d)
    return sorted(found)


def enumerate_admissible_quotients(N: FiniteMonoid, H: FiniteMonoid, bound: Optional[int] = DEFAULT_QUOTIENT_BOUND) -> list[AdmissibleQuotient]:
    """All admissible quotients of N x H in canonical order."""
    if bound is not None and N.order * H.order > bound:
        raise BoundExceeded(f"|N|*|H| = {N.order * H.order} exceeds the quotient bound {bound}")
    if N.order == 1 or H.order == 1:
        return [discrete_quotient(N, H)]

    parts = left_congruences(N)
    discrete_idx = parts.index(tuple(range(N.order)))
    leq = [[_refines(p, q) for q in parts] for p in parts]
    ht = H.table.tolist()
    right_invertible = set(H.right_invertible())
    # below[h] = {h x : x in H}; each fibre must refine the fibres over its right multiples
    below = [set(row) for row in ht]

    m = H.order
    choice = [-1] * m
    results = []

    def rec(h: int):
        if h == m:
            results.append(AdmissibleQuotient(N, H, [parts[i] for i in choice]))
            return
        options = [discrete_idx] if h in right_invertible else range(len(parts))
        for i in options:
            ok = True
            for g in range(h):
                j = choice[g]
                if g in below[h] and not leq[i][j]:
                    ok = False
                    break
                if h in below[g] and not leq[j][i]:
                    ok = False
                    break
            if ok:
                choice[h] = i
                rec(h + 1)
        choice[h] = -1

    choice[0] = discrete_idx
    rec(1)
    results.sort(key=AdmissibleQuotient.key)
    return results
