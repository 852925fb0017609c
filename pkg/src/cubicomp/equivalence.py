"""Admissible equivalences on abstract cubics and their quotient quasigroups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .abstract_cubic import AbstractCubic
from .words import DEFAULT_BUDGET, act_on_quotient


class UnionFind:
    """Union-find whose roots are always the least member of their class."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        parent = self.parent
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True


@dataclass(frozen=True)
class Partition:
    """Equivalence on 0..n-1 given by each index's least class member."""

    labels: tuple

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def from_union_find(cls, uf: UnionFind) -> "Partition":
        return cls(tuple(uf.find(i) for i in range(len(uf.parent))))

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "Partition":
        uf = UnionFind(n)
        for a, b in pairs:
            uf.union(a, b)
        return cls.from_union_find(uf)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def n_classes(self) -> int:
        return len(set(self.labels))

    def same(self, a: int, b: int) -> bool:
        return self.labels[a] == self.labels[b]

    def classes(self) -> list[list[int]]:
        out: dict = {}
        for i, r in enumerate(self.labels):
            out.setdefault(r, []).append(i)
        return [out[r] for r in sorted(out)]

    def refines(self, other: "Partition") -> bool:
        """Every class of self lies inside a class of other."""
        return all(other.labels[i] == other.labels[r] for i, r in enumerate(self.labels))

    def to_json(self) -> list[int]:
        return list(self.labels)


@dataclass
class SaturationTrace:
    stages: list = field(default_factory=list)
    stabilized_at: int = 0


def _entries(P: AbstractCubic):
    return sorted((u, v, tuple(sorted(zs))) for (u, v), zs in P.pair_index.items())


def _merge_pass(entries, classify, uf: UnionFind) -> bool:
    """Union all third points whose (unordered) class pairs coincide."""
    anchor: dict = {}
    changed = False
    for u, v, zs in entries:
        a, b = classify(u), classify(v)
        key = (a, b) if a <= b else (b, a)
        for z in zs:
            first = anchor.get(key)
            if first is None:
                anchor[key] = z
            elif uf.union(first, z):
                changed = True
    return changed


def saturate(P: AbstractCubic, seed=()) -> Partition:
    """Finest equivalence containing ``seed`` that is compatible with L."""
    uf = UnionFind(P.n)
    for a, b in seed:
        uf.union(a, b)
    entries = _entries(P)
    while _merge_pass(entries, uf.find, uf):
        pass
    return Partition.from_union_find(uf)


def approximant_step(P: AbstractCubic, R: Partition, entries=None) -> Partition:
    """One stage: z ~ z' when (u,v,z), (u',v',z') in L with u R u', v R v'."""
    uf = UnionFind(P.n)
    _merge_pass(entries if entries is not None else _entries(P), R.labels.__getitem__, uf)
    return Partition.from_union_find(uf)


def universal(P: AbstractCubic, max_stages: int = 10_000) -> tuple[Partition, SaturationTrace]:
    """The universal equivalence and the staged approximants leading to it.

    Each stage is recomputed from scratch out of the previous one, so the
    refinement order between consecutive stages is a genuine check rather
    than a consequence of the data structure.
    """
    entries = _entries(P)
    R = Partition.identity(P.n)
    trace = SaturationTrace(stages=[(0, R)])
    for i in range(1, max_stages + 1):
        nxt = approximant_step(P, R, entries)
        trace.stages.append((i, nxt))
        if nxt == R:
            trace.stabilized_at = i - 1
            return R, trace
        R = nxt
    raise RuntimeError("approximants did not stabilize")


def stage(trace: SaturationTrace, i) -> Partition:
    """≈_i from a trace; indices past stabilization (or None) give the limit."""
    if i is None or i >= len(trace.stages):
        return trace.stages[-1][1]
    return trace.stages[i][1]


def diagonal_values(P: AbstractCubic) -> list[tuple[int, int]]:
    return [(x, z) for x in range(P.n) for z in sorted(P.compose(x, x))]


def u3(P: AbstractCubic) -> Partition:
    """Finest admissible equivalence with X∘X = X."""
    return saturate(P, diagonal_values(P))


def u2(P: AbstractCubic) -> Partition:
    """Finest admissible equivalence with X∘X a single class."""
    zs = sorted({z for _, z in diagonal_values(P)})
    if not zs:
        raise ValueError("no diagonal composition values: U2 is undefined")
    return saturate(P, [(zs[0], z) for z in zs[1:]])


def meet(P: AbstractCubic, A: Partition, B: Partition) -> Partition:
    if A.n != B.n or A.n != P.n:
        raise ValueError("partitions on different ground sets")
    first: dict = {}
    return Partition(tuple(first.setdefault((a, b), i) for i, (a, b) in enumerate(zip(A.labels, B.labels))))


def is_admissible(P: AbstractCubic, R: Partition, strict: bool = False) -> bool:
    """Class compositions single-valued (and, if strict, total)."""
    values: dict = {}
    for (u, v), zs in P.pair_index.items():
        a, b = R.labels[u], R.labels[v]
        key = (a, b) if a <= b else (b, a)
        got = values.setdefault(key, set())
        got.update(R.labels[z] for z in zs)
        if len(got) > 1:
            return False
    if strict:
        reps = sorted(set(R.labels))
        return all((a, b) in values for a, b in itertools.combinations_with_replacement(reps, 2))
    return True


class NotAdmissible(ValueError):
    pass


@dataclass
class QuasigroupTable:
    """Composition table of classes; ``table[i][j]`` is None where undefined.

    Classes are numbered by increasing least representative; ``class_of``
    maps point indices to class numbers.
    """

    m: int
    table: list
    reps: list = field(default_factory=list)
    class_of: list = field(default_factory=list)

    def compose(self, a: int, b: int) -> int:
        v = self.table[a][b]
        if v is None:
            raise KeyError(f"composition of classes {a}, {b} is undefined")
        return v

    def is_total(self) -> bool:
        return all(v is not None for row in self.table for v in row)

    def to_json(self) -> dict:
        return {"m": self.m, "table": self.table, "reps": self.reps}


def quotient(P: AbstractCubic, R: Partition, strict: bool = True) -> QuasigroupTable:
    if not is_admissible(P, R):
        raise NotAdmissible("partition is not admissible")
    reps = sorted(set(R.labels))
    num = {r: i for i, r in enumerate(reps)}
    class_of = [num[r] for r in R.labels]
    m = len(reps)
    table = [[None] * m for _ in range(m)]
    for (u, v), zs in P.pair_index.items():
        a, b = class_of[u], class_of[v]
        for z in zs:
            table[a][b] = table[b][a] = class_of[z]
    Q = QuasigroupTable(m, table, reps, class_of)
    if strict and not Q.is_total():
        raise NotAdmissible("quotient composition is not total")
    return Q


@dataclass
class CHReport:
    ok: bool
    commutative: bool
    involutive: bool
    abelian_triples: bool
    subquasigroups_checked: int
    failures: list = field(default_factory=list)


def _generated(Q: QuasigroupTable, gens) -> frozenset:
    S = set(gens)
    frontier = list(S)
    while frontier:
        new = []
        for a in frontier:
            for b in list(S):
                c = Q.table[a][b]
                if c is not None and c not in S:
                    S.add(c)
                    new.append(c)
        frontier = new
    return frozenset(S)


def _abelian_via(Q: QuasigroupTable, S, e) -> bool:
    t = Q.table
    add = {(x, y): t[e][t[x][y]] for x in S for y in S}
    if any(v not in S for v in add.values()):
        return False
    for x in S:
        if add[(x, e)] != x:
            return False
        if not any(add[(x, y)] == e for y in S):
            return False
        for y in S:
            if add[(x, y)] != add[(y, x)]:
                return False
            for z in S:
                if add[(add[(x, y)], z)] != add[(x, add[(y, z)])]:
                    return False
    return True


def ch_axioms_check(Q: QuasigroupTable) -> CHReport:
    """Commutativity, X∘(X∘Y) = Y, and abelian groups on 3-generated pieces."""
    failures = []
    if not Q.is_total():
        return CHReport(False, False, False, False, 0, ["table is not total"])
    t, m = Q.table, Q.m
    comm = all(t[a][b] == t[b][a] for a in range(m) for b in range(m))
    if not comm:
        failures.append("not commutative")
    inv = all(t[a][t[a][b]] == b for a in range(m) for b in range(m))
    if not inv:
        failures.append("X∘(X∘Y) != Y")
    seen = set()
    ab = True
    if comm and inv:
        for trip in itertools.combinations_with_replacement(range(m), 3):
            S = _generated(Q, trip)
            if S in seen:
                continue
            seen.add(S)
            for e in sorted(S):
                if not _abelian_via(Q, S, e):
                    ab = False
                    failures.append(f"generated by {trip}: no abelian group with identity {e}")
                    break
    else:
        ab = False
    return CHReport(comm and inv and ab, comm, inv, ab, len(seen), failures)


def group_structure(Q: QuasigroupTable, e: int) -> list[int]:
    """Orders of the elements of (Q, e∘(x∘y)), sorted."""
    t = Q.table
    orders = []
    for x in range(Q.m):
        acc, k = x, 1
        while acc != e:
            acc = t[e][t[acc][x]]
            k += 1
            if k > Q.m + 1:
                raise ValueError("not a group")
        orders.append(k)
    return sorted(orders)


def universal_pair_via_action(P: AbstractCubic, x: int, y: int, budget: int = DEFAULT_BUDGET,
                              U: Partition | None = None, Q: QuasigroupTable | None = None) -> bool:
    """Whether t_x t_y acts trivially on the universal quotient."""
    if U is None:
        U, _ = universal(P)
    if Q is None:
        Q = quotient(P, U, strict=True)
    return all(act_on_quotient((x, y), Q, c) == c for c in range(Q.m))
