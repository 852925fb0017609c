"""Words in the reflection group of an abstract cubic.

A word is a tuple of point indices; letter ``i`` stands for the involution
t_i.  Relations: t_i^2 = 1, and t_a t_b t_c = t_c t_b t_a for (a, b, c) in L.
Since every generator is an involution, the inverse of a word is its
reversal.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .abstract_cubic import AbstractCubic

DEFAULT_BUDGET = 200_000

Word = tuple


class BudgetExceeded(RuntimeError):
    """The rewrite closure outgrew its budget; no answer is claimed."""


def inverse(w) -> Word:
    return tuple(reversed(w))


def free_reduce(w) -> Word:
    out: list = []
    for a in w:
        if out and out[-1] == a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def rewrite_neighbors(w, P: AbstractCubic) -> set:
    """Words reachable by one move [a, b, c] -> [c, b, a], (a, b, c) in L."""
    out = set()
    for i in range(len(w) - 2):
        a, b, c = w[i], w[i + 1], w[i + 2]
        if a != c and c in P.compose(a, b):
            out.add(w[:i] + (c, b, a) + w[i + 3:])
    return out


def _has_cancellation(w) -> bool:
    return any(w[i] == w[i + 1] for i in range(len(w) - 1))


@dataclass(frozen=True)
class NormalForm:
    word: Word
    minimal: bool
    closure_size: int
    budget_hit: bool


def normal_form(w, P: AbstractCubic, budget: int = DEFAULT_BUDGET) -> NormalForm:
    """Lexicographically least word of the terminal rewrite closure.

    The closure under length-preserving moves is explored breadth first; as
    soon as a member admits a cancellation the search restarts from the
    shorter word.  If a closure outgrows ``budget`` the result carries
    ``budget_hit`` and its word is only some representative.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    cur = free_reduce(tuple(w))
    explored = 0
    while True:
        seen = {cur}
        queue = deque([cur])
        shorter = None
        while queue:
            u = queue.popleft()
            for v in sorted(rewrite_neighbors(u, P)):
                if v in seen:
                    continue
                if _has_cancellation(v):
                    shorter = free_reduce(v)
                    break
                seen.add(v)
                queue.append(v)
                if len(seen) > budget:
                    return NormalForm(min(seen), False, explored + len(seen), True)
            if shorter is not None:
                break
        explored += len(seen)
        if shorter is None:
            return NormalForm(min(seen), True, explored, False)
        cur = shorter


def _nf(w, P, budget) -> Word:
    r = normal_form(w, P, budget)
    if r.budget_hit:
        raise BudgetExceeded(f"rewrite closure exceeded {budget} words")
    return r.word


def words_equal(w1, w2, P: AbstractCubic, budget: int = DEFAULT_BUDGET) -> bool:
    return _nf(tuple(w1) + inverse(w2), P, budget) == ()


def ord_x(w, P: AbstractCubic, x: int, budget: int = DEFAULT_BUDGET) -> int:
    """Occurrences of t_x in the normal form of w."""
    return _nf(w, P, budget).count(x)


def delta(w, P: AbstractCubic, budget: int = DEFAULT_BUDGET) -> frozenset:
    return frozenset(_nf(w, P, budget))


def delta_tilde(w, P: AbstractCubic, budget: int = DEFAULT_BUDGET) -> frozenset:
    counts = Counter(_nf(w, P, budget))
    return frozenset(x for x, k in counts.items() if k % 2)


@dataclass(frozen=True)
class PsiVector:
    """An element of the F_2 vector space on the points, by its support."""

    support: frozenset

    def __add__(self, other: "PsiVector") -> "PsiVector":
        return PsiVector(self.support ^ other.support)

    def is_zero(self) -> bool:
        return not self.support


def psi(w, P: AbstractCubic, budget: int = DEFAULT_BUDGET) -> PsiVector:
    return PsiVector(delta_tilde(w, P, budget))


def act_on_quotient(w, Q, cls: int) -> int:
    """Image of class ``cls`` under the group element of w acting on Q.

    t_X acts by Y -> X∘Y; the rightmost letter acts first, so
    [x1, ..., xn] sends Y to X1∘(X2∘(...(Xn∘Y))).
    """
    for a in reversed(w):
        cls = Q.compose(Q.class_of[a], cls)
    return cls


def subgroup_generators(kind: str, P: AbstractCubic, budget: int = DEFAULT_BUDGET) -> list:
    """Generator words of B0, B1 or the commutator family, at most ``budget``."""
    out: list = []
    ordered = sorted({(x, y, z) for (x, y), zs in P.pair_index.items() for z in zs}
                     | {(y, x, z) for (x, y), zs in P.pair_index.items() for z in zs})
    if kind == "B1":
        out = [t for t in ordered]
    elif kind == "B0":
        by_mid: dict = {}
        for x, y, z in ordered:
            by_mid.setdefault(y, []).append((x, z))
        for y in sorted(by_mid):
            for x, z in by_mid[y]:
                for x2, z2 in by_mid[y]:
                    out.append((x, y, z, x2, y, z2))
                    if len(out) >= budget:
                        return out
    elif kind == "Commutator":
        out = [(x, y, x, y) for x in range(P.n) for y in range(P.n) if x != y]
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return out[:budget]
