"""Finite abstract cubics: a point set with a symmetric ternary relation L."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class AxiomViolation(ValueError):
    pass


def _canon(t) -> tuple[int, int, int]:
    return tuple(sorted(t))


class AbstractCubic:
    """Points are 0..n-1; ``triples`` is L stored as sorted index triples.

    ``line_pairs`` holds the unordered distinct pairs lying on a line of the
    source surface; only they may compose to more than one value.
    """

    def __init__(self, n: int, triples, line_pairs=(), labels=None):
        if n < 0:
            raise ValueError("n must be >= 0")
        self.n = n
        ts = set()
        for t in triples:
            t = _canon(t)
            if len(t) != 3 or t[0] < 0 or t[2] >= n:
                raise ValueError(f"triple {t} out of range for n={n}")
            ts.add(t)
        self.triples = frozenset(ts)
        self.line_pairs = frozenset(tuple(sorted(p)) for p in line_pairs)
        self.labels = list(labels) if labels is not None else None
        index: dict = {}
        for a, b, c in self.triples:
            for x, y, z in {(a, b, c), (a, c, b), (b, c, a)}:
                index.setdefault((x, y), set()).add(z)
        self.pair_index = {k: frozenset(v) for k, v in index.items()}

    def compose(self, x: int, y: int) -> frozenset:
        """{z : (x, y, z) in L}."""
        if x > y:
            x, y = y, x
        return self.pair_index.get((x, y), frozenset())

    def __eq__(self, other):
        return (isinstance(other, AbstractCubic) and self.n == other.n
                and self.triples == other.triples and self.line_pairs == other.line_pairs)

    def __hash__(self):
        return hash((self.n, self.triples))

    def __repr__(self):
        return f"AbstractCubic(n={self.n}, |L|={len(self.triples)}, line_pairs={len(self.line_pairs)})"

    def sorted_triples(self) -> list[tuple[int, int, int]]:
        return sorted(self.triples)

    def to_json(self) -> dict:
        return {"n": self.n, "triples": [list(t) for t in self.sorted_triples()],
                "line_pairs": [list(p) for p in sorted(self.line_pairs)]}

    @classmethod
    def from_json(cls, obj) -> "AbstractCubic":
        return cls(int(obj["n"]), obj.get("triples", []), obj.get("line_pairs", []))


def from_triples(n: int, triples, line_pairs=()) -> AbstractCubic:
    return AbstractCubic(n, triples, line_pairs)


def compose(P: AbstractCubic, x: int, y: int) -> frozenset:
    return P.compose(x, y)


@dataclass
class ValidationReport:
    valid: bool
    violations: list = field(default_factory=list)


def validate(P: AbstractCubic, strict: bool = True) -> ValidationReport:
    """Check functionality of L on distinct pairs.

    Permutation invariance holds by construction.  In lenient mode a
    distinct pair flagged in ``line_pairs`` may have several third points.
    """
    bad = []
    for (x, y), zs in sorted(P.pair_index.items()):
        if x == y or len(zs) <= 1:
            continue
        if not strict and (x, y) in P.line_pairs:
            continue
        bad.append({"pair": [x, y], "values": sorted(zs)})
    return ValidationReport(not bad, bad)


def is_total_single_valued(P: AbstractCubic) -> bool:
    for x, y in itertools.combinations_with_replacement(range(P.n), 2):
        if len(P.compose(x, y)) != 1:
            return False
    return True
