"""Generation closures under the composition of an abstract cubic."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .abstract_cubic import AbstractCubic
from .equivalence import Partition, SaturationTrace, quotient, stage, universal


@dataclass(frozen=True)
class ClosureConfig:
    """``rule`` is "std", "distinct" or "a"; ``stage`` is i for rule A_i
    (None means A_infinity)."""

    rule: str = "std"
    stage: int | None = 0
    max_rounds: int = 10_000
    max_set: int = 10**9

    def __post_init__(self):
        if self.rule not in ("std", "distinct", "a"):
            raise ValueError(f"unknown rule {self.rule!r}")
        if self.max_rounds < 1 or self.max_set < 1:
            raise ValueError("caps must be positive")

    @classmethod
    def parse(cls, text: str, **caps) -> "ClosureConfig":
        """std | distinct | a:<i> | a:inf"""
        if text in ("std", "distinct"):
            return cls(text, **caps)
        if text.startswith("a:"):
            arg = text[2:]
            return cls("a", None if arg == "inf" else int(arg), **caps)
        raise ValueError(f"bad rule {text!r}")


@dataclass
class ClosureResult:
    reached: frozenset
    rounds: int
    complete: bool
    generated_all: bool
    history: list = field(default_factory=list)


def closure(P: AbstractCubic, seed, cfg: ClosureConfig = ClosureConfig(),
            trace: SaturationTrace | None = None) -> ClosureResult:
    """Round-based fixpoint of the chosen composition rule.

    A round adds every composition value of every pair of reached points;
    the last counted round is the one that adds nothing.
    """
    seed = set(seed)
    if not seed:
        raise ValueError("seed must be nonempty")
    expand = None
    if cfg.rule == "a":
        if trace is None:
            _, trace = universal(P)
        classes = stage(trace, cfg.stage).classes()
        member = {i: c for c in classes for i in c}
        expand = lambda pts: {j for i in pts for j in member[i]}
        seed = expand(seed)
    reached = set(seed)
    history = [len(reached)]
    rounds = 0
    while rounds < cfg.max_rounds:
        rounds += 1
        new = set()
        pts = sorted(reached)
        for i, x in enumerate(pts):
            for y in pts[i:]:
                if x == y and cfg.rule == "distinct":
                    continue
                new |= P.compose(x, y)
        if expand is not None:
            new = expand(new)
        new -= reached
        reached |= new
        history.append(len(reached))
        if not new:
            return ClosureResult(frozenset(reached), rounds, True, len(reached) == P.n, history)
        if len(reached) > cfg.max_set:
            break
    return ClosureResult(frozenset(reached), rounds, False, len(reached) == P.n, history)


def generation_index(P: AbstractCubic, seed_budget: int, max_i: int,
                     max_seeds: int | None = None):
    """Smallest i <= max_i such that a seed of size <= seed_budget
    A_i-generates P, as ``(i, seed)``; None if there is none.

    Seeds are tried by size, then lexicographically.
    """
    _, trace = universal(P)
    tried = 0
    for i in range(max_i + 1):
        cfg = ClosureConfig("a", i)
        for k in range(1, min(seed_budget, P.n) + 1):
            for seed in itertools.combinations(range(P.n), k):
                tried += 1
                if max_seeds is not None and tried > max_seeds:
                    raise RuntimeError("seed search cap exhausted")
                if closure(P, seed, cfg, trace).generated_all:
                    return i, seed
    return None


@dataclass
class Claim341Report:
    std_generates: bool
    quotient_generated: bool
    a_inf_generates: bool
    direction_i: bool
    direction_ii: bool
    vacuous_i: bool
    vacuous_ii: bool

    @property
    def ok(self) -> bool:
        return self.direction_i and self.direction_ii


def quotient_generated(Q, classes) -> frozenset:
    S = set(classes)
    while True:
        new = {Q.table[a][b] for a in S for b in S} - {None} - S
        if not new:
            return frozenset(S)
        S |= new


def claim_341_check(P: AbstractCubic, seed, U: Partition | None = None) -> Claim341Report:
    """Seed generation of P versus generation of the quotient by U."""
    U_, trace = universal(P)
    U = U or U_
    Q = quotient(P, U, strict=False)
    std = closure(P, seed, ClosureConfig("std")).generated_all
    qgen = len(quotient_generated(Q, {Q.class_of[s] for s in seed})) == Q.m
    ainf = closure(P, seed, ClosureConfig("a", None), trace).generated_all
    d1 = (not std) or qgen
    d2 = (not qgen) or ainf
    return Claim341Report(std, qgen, ainf, d1, d2, not std, not qgen)
