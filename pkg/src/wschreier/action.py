"""Actions of H on N relative to an admissible quotient, and the monoid Q_alpha.

Only the classes ``[alpha(h, n), h]`` matter, so an action class is stored as
an |H| x |N| table of local class labels (row h labels a class in the fibre
over h).  All checks run on these tables; whenever an element of a class is
needed, every member of the class is tried.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Union

import numpy as np

from .errors import BoundExceeded, NotAnAction, ShapeError, SignatureMismatch
from .extension import SplitExtension, validate_split_extension
from .monoid import FiniteMonoid, MonoidHom, validate_monoid
from .quotient import AdmissibleQuotient, Verdict

DEFAULT_ACTION_BOUND = 16


@dataclass(frozen=True, eq=False)
class PreAction:
    """A raw map ``H x N -> N`` stored as ``alpha[h, n]``."""

    alpha: np.ndarray

    def __post_init__(self):
        a = np.array(self.alpha, dtype=np.int64)
        if a.ndim != 2:
            raise ShapeError("a pre-action is a 2-d table indexed [h, n]")
        a.setflags(write=False)
        object.__setattr__(self, "alpha", a)

    def __call__(self, h: int, n: int) -> int:
        return int(self.alpha[h, n])

    def __eq__(self, other):
        return isinstance(other, PreAction) and np.array_equal(self.alpha, other.alpha)

    def __hash__(self):
        return hash(self.alpha.tobytes())

    @classmethod
    def trivial(cls, N: FiniteMonoid, H: FiniteMonoid) -> "PreAction":
        return cls(np.tile(np.arange(N.order), (H.order, 1)))


@dataclass(frozen=True, eq=False)
class ActionClass:
    quotient: AdmissibleQuotient
    class_valued: np.ndarray

    def __post_init__(self):
        t = np.array(self.class_valued, dtype=np.int64)
        Q = self.quotient
        if t.shape != (Q.H.order, Q.N.order):
            raise ShapeError(f"class table must have shape ({Q.H.order}, {Q.N.order})")
        t.setflags(write=False)
        object.__setattr__(self, "class_valued", t)

    def key(self) -> tuple:
        return tuple(self.class_valued.ravel().tolist())

    def __eq__(self, other):
        if not isinstance(other, ActionClass):
            return NotImplemented
        return self.quotient == other.quotient and np.array_equal(self.class_valued, other.class_valued)

    def __hash__(self):
        return hash((self.quotient, self.key()))

    def __repr__(self):
        return f"ActionClass({self.class_valued.tolist()})"

    @cached_property
    def global_table(self) -> np.ndarray:
        """``global_table[h, n]`` is the global id of ``[alpha(h, n), h]``."""
        return self.class_valued + np.asarray(self.quotient.offsets)[:, None]

    def representative(self) -> PreAction:
        """The pre-action choosing the least member of each class."""
        Q = self.quotient
        return PreAction([[Q.representatives[c][0] for c in row] for row in self.global_table.tolist()])

    @classmethod
    def from_preaction(cls, Q: AdmissibleQuotient, alpha) -> "ActionClass":
        a = _alpha_array(alpha, Q)
        return cls(Q, [[Q.local(int(a[h, n]), h) for n in Q.N.elements()] for h in Q.H.elements()])

    @classmethod
    def trivial(cls, Q: AdmissibleQuotient) -> "ActionClass":
        return cls.from_preaction(Q, PreAction.trivial(Q.N, Q.H))


def _alpha_array(alpha, Q: AdmissibleQuotient) -> np.ndarray:
    a = alpha.alpha if isinstance(alpha, PreAction) else np.asarray(alpha, dtype=np.int64)
    if a.shape != (Q.H.order, Q.N.order):
        raise ShapeError(f"pre-action must have shape ({Q.H.order}, {Q.N.order}), got {a.shape}")
    return a


class _Ctx:
    """Tables shared by the condition checks for one quotient."""

    def __init__(self, Q: AdmissibleQuotient):
        self.Q = Q
        self.nt = Q.N.table.tolist()
        self.ht = Q.H.table.tolist()
        self.L = Q.left_star.tolist()
        self.R = Q.right_star.tolist()
        self.off = Q.offsets
        self.members = [Q.members(c) for c in range(Q.num_classes)]
        fib = Q.fibers.tolist()
        # pairs n1 < n2 related in each fibre
        self.lumped = [
            [(a, b) for a in range(Q.N.order) for b in range(a + 1, Q.N.order) if fib[h][a] == fib[h][b]]
            for h in range(Q.H.order)
        ]

    def cond1_ok(self, c: int, h: int) -> bool:
        L = self.L
        return all(L[a][c] == L[b][c] for a, b in self.lumped[h])


def _check_class_table(Q: AdmissibleQuotient, A: list, ctx: Optional[_Ctx] = None) -> Verdict:
    """Conditions (1)-(6) on a global class table ``A[h][n]``."""
    ctx = ctx or _Ctx(Q)
    nN, nH = Q.N.order, Q.H.order
    L, R, nt, ht, mem = ctx.L, ctx.R, ctx.nt, ctx.ht, ctx.members
    for h in range(nH):
        for n in range(nN):
            if not ctx.cond1_ok(A[h][n], h):
                a, b = next((a, b) for a, b in ctx.lumped[h] if L[a][A[h][n]] != L[b][A[h][n]])
                return Verdict(False, "1", (a, b, h, n))
    for h in range(nH):
        for h2 in range(nH):
            for a, b in ctx.lumped[h2]:
                if R[A[h][a]][h2] != R[A[h][b]][h2]:
                    return Verdict(False, "2", (a, b, h2, h))
    for h in range(nH):
        row = A[h]
        for n in range(nN):
            for n2 in range(nN):
                target = row[nt[n][n2]]
                if any(L[m][row[n2]] != target for m in mem[row[n]]):
                    return Verdict(False, "3", (h, n, n2))
    for h in range(nH):
        for h2 in range(nH):
            hh = ht[h][h2]
            for n in range(nN):
                target = A[hh][n]
                if any(R[A[h][m]][h2] != target for m in mem[A[h2][n]]):
                    return Verdict(False, "4", (h, h2, n))
    for h in range(nH):
        if A[h][0] != Q.cls(0, h):
            return Verdict(False, "5", h)
    for n in range(nN):
        if A[0][n] != Q.cls(n, 0):
            return Verdict(False, "6", n)
    return Verdict(True)


def is_action(Q: AdmissibleQuotient, alpha) -> Verdict:
    """Whether a pre-action (or action class) is an action relative to Q."""
    if isinstance(alpha, ActionClass):
        if alpha.quotient != Q:
            raise SignatureMismatch("action class belongs to a different quotient")
        return _check_class_table(Q, alpha.global_table.tolist())
    a = _alpha_array(alpha, Q)
    if a.min() < 0 or a.max() >= Q.N.order:
        return Verdict(False, "shape", "values outside N")
    A = Q.class_table[a.T, np.arange(Q.H.order)[None, :]].T
    return _check_class_table(Q, A.tolist())


def _row_candidates(ctx: _Ctx, h: int) -> list[list[int]]:
    """Rows for fibre h meeting conditions (1), (2), (3) and (5)."""
    Q = ctx.Q
    nN = Q.N.order
    L, R, nt, mem = ctx.L, ctx.R, ctx.nt, ctx.members
    lo = Q.offsets[h]
    allowed = [c for c in range(lo, lo + Q.fiber_sizes[h]) if ctx.cond1_ok(c, h)]
    pairs2 = [(a, b, x) for x in range(Q.H.order) for a, b in ctx.lumped[x]]
    row = [-1] * nN
    row[0] = Q.cls(0, h)
    if row[0] not in allowed:
        return []
    out = []

    def consistent(n: int) -> bool:
        for a, b, x in pairs2:
            if n in (a, b):
                ra, rb = row[a], row[b]
                if ra >= 0 and rb >= 0 and R[ra][x] != R[rb][x]:
                    return False
        for p in range(n + 1):
            for p2 in range(n + 1):
                if n not in (p, p2):
                    continue
                t = row[nt[p][p2]]
                if t < 0:
                    continue
                if any(L[m][row[p2]] != t for m in mem[row[p]]):
                    return False
        # products landing on n from earlier pairs
        for p in range(n):
            for p2 in range(n):
                if nt[p][p2] == n and any(L[m][row[p2]] != row[n] for m in mem[row[p]]):
                    return False
        return True

    def rec(n: int):
        if n == nN:
            out.append(list(row))
            return
        for c in allowed:
            row[n] = c
            if consistent(n):
                rec(n + 1)
        row[n] = -1

    if consistent(0):
        rec(1)
    return out


def enumerate_action_classes(Q: AdmissibleQuotient, bound: Optional[int] = DEFAULT_ACTION_BOUND) -> list[ActionClass]:
    """Every class of actions relative to Q, in canonical order (possibly empty)."""
    N, H = Q.N, Q.H
    if bound is not None and N.order * H.order > bound:
        raise BoundExceeded(f"|H|*|N| = {N.order * H.order} exceeds the action bound {bound}")
    if N.order == 1 or H.order == 1:
        cand = ActionClass.trivial(Q)
        return [cand] if is_action(Q, cand) else []

    ctx = _Ctx(Q)
    nH, nN = H.order, N.order
    ht, R, mem = ctx.ht, ctx.R, ctx.members
    rows = [[[Q.cls(n, 0) for n in range(nN)]]] + [_row_candidates(ctx, h) for h in range(1, nH)]
    A: list = [None] * nH
    A[0] = rows[0][0]
    found = []

    def cond4(h: int, h2: int) -> bool:
        hh = ht[h][h2]
        for n in range(nN):
            target = A[hh][n]
            if any(R[A[h][m]][h2] != target for m in mem[A[h2][n]]):
                return False
        return True

    def rec(h: int):
        if h == nH:
            if _check_class_table(Q, A, ctx):
                found.append(ActionClass(Q, [[c - Q.offsets[i] for c in A[i]] for i in range(nH)]))
            return
        for cand in rows[h]:
            A[h] = cand
            ok = all(
                cond4(a, b)
                for a in range(h + 1)
                for b in range(h + 1)
                if ht[a][b] <= h and h in (a, b, ht[a][b])
            )
            if ok:
                rec(h + 1)
        A[h] = None

    rec(1)
    found.sort(key=ActionClass.key)
    return found


def actions_equivalent(Q: AdmissibleQuotient, alpha, alpha2) -> bool:
    """Same classes ``[alpha(h, n), h]`` everywhere."""
    classes = []
    for a in (alpha, alpha2):
        if not is_action(Q, a):
            raise NotAnAction(f"not an action relative to the quotient: {is_action(Q, a).condition}")
        classes.append(a if isinstance(a, ActionClass) else ActionClass.from_preaction(Q, a))
    return bool(np.array_equal(classes[0].class_valued, classes[1].class_valued))


def semidirect_table(Q: AdmissibleQuotient, action: ActionClass) -> np.ndarray:
    """``[n, h][n', h'] = n * [alpha(h, n'), h] * h'`` on global class ids."""
    A = action.global_table
    L = Q.left_star
    R = Q.right_star
    reps = Q.representatives
    n_of = np.array([n for n, _ in reps])
    h_of = np.array([h for _, h in reps])
    mid = A[h_of[:, None], n_of[None, :]]  # [alpha(h, n'), h]
    left = L[n_of[:, None], mid]
    return R[left, h_of[None, :]]


def weak_semidirect_product(Q: AdmissibleQuotient, action: Union[ActionClass, PreAction, np.ndarray]) -> SplitExtension:
    """The extension N -> Q_alpha -> H with k(n)=[n,1], e[n,h]=h, s(h)=[1,h]."""
    if not isinstance(action, ActionClass):
        action = ActionClass.from_preaction(Q, action)
    elif action.quotient != Q:
        raise SignatureMismatch("action class belongs to a different quotient")
    verdict = is_action(Q, action)
    if not verdict:
        raise NotAnAction(f"condition {verdict.condition} fails at {verdict.witness}")
    table = semidirect_table(Q, action)
    G = validate_monoid(Q.num_classes, table)
    k = MonoidHom(Q.N, G, [Q.cls(n, 0) for n in Q.N.elements()])
    e = MonoidHom(G, Q.H, [h for _, h in Q.representatives])
    s = MonoidHom(Q.H, G, [Q.cls(0, h) for h in Q.H.elements()])
    return validate_split_extension(Q.N, G, Q.H, k, e, s)
