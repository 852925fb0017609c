import itertools
import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from cubicomp.abstract_cubic import from_triples
from cubicomp.corpus import entry, one_point_cubic
from cubicomp.equivalence import universal
from cubicomp.generation import (ClosureConfig, claim_341_check, closure, generation_index)

CURVE = entry("fermat-curve-F2").cubic
STD, DISTINCT = ClosureConfig("std"), ClosureConfig("distinct")


def test_config_parse():
    assert ClosureConfig.parse("a:inf") == ClosureConfig("a", None)
    assert ClosureConfig.parse("a:2").stage == 2
    assert ClosureConfig.parse("distinct").rule == "distinct"
    with pytest.raises(ValueError):
        ClosureConfig.parse("b")
    with pytest.raises(ValueError):
        ClosureConfig("std", max_rounds=0)


def test_closure_examples():
    assert closure(CURVE, {0}, STD).reached == {0}
    assert closure(CURVE, {0, 1}, DISTINCT).reached == {0, 1, 2}
    P = entry("fermat-surface-F4").cubic
    r = closure(P, range(P.n), STD)
    assert r.generated_all and r.rounds == 1 and r.complete


def test_closure_rejects_empty_seed():
    with pytest.raises(ValueError):
        closure(CURVE, set(), STD)


def test_round_cap_is_reported():
    P = entry("fermat-surface-F7").cubic
    r = closure(P, {0, 1}, ClosureConfig("std", max_rounds=1))
    assert not r.complete


def test_generation_index_examples():
    assert generation_index(CURVE, 2, 3) == (0, (0, 1))
    assert generation_index(one_point_cubic(), 1, 0) == (0, (0,))
    empty = from_triples(2, [])
    assert generation_index(empty, 1, 3) is None
    # the whole point set is always a seed of itself
    assert generation_index(empty, 2, 3) == (0, (0, 1))


def test_generation_comparison_examples():
    rep = claim_341_check(CURVE, {0, 1})
    assert rep.ok and rep.std_generates and rep.quotient_generated
    rep = claim_341_check(CURVE, {0})
    assert rep.ok and rep.vacuous_i
    P = entry("fermat-surface-F2").cubic
    rep = claim_341_check(P, {0})
    assert rep.direction_ii


NAMES = ["fermat-surface-F2", "random-surface-F3-2", "nine-point-surface-F4", "fermat-curve-F7",
         "weierstrass-F3-a2b1", "random-surface-F4-1", "three-point-eckardt-F2"]


@settings(max_examples=80, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(NAMES), st.randoms(use_true_random=False))
def test_closures_nest(name, rnd):
    P = entry(name).cubic
    _, trace = universal(P)
    seed = set(rnd.sample(range(P.n), rnd.randint(1, min(3, P.n))))
    chain = [closure(P, seed, DISTINCT).reached, closure(P, seed, STD).reached]
    for i in range(len(trace.stages)):
        chain.append(closure(P, seed, ClosureConfig("a", i), trace).reached)
    chain.append(closure(P, seed, ClosureConfig("a", None), trace).reached)
    assert seed <= chain[0]
    for a, b in zip(chain, chain[1:]):
        assert a <= b


@settings(max_examples=40, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(NAMES), st.randoms(use_true_random=False))
def test_a_infinity_closure_is_union_of_classes(name, rnd):
    P = entry(name).cubic
    U, trace = universal(P)
    seed = set(rnd.sample(range(P.n), rnd.randint(1, min(3, P.n))))
    reached = closure(P, seed, ClosureConfig("a", None), trace).reached
    for c in U.classes():
        assert set(c) <= reached or not (set(c) & reached)


@settings(max_examples=40, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(NAMES), st.randoms(use_true_random=False))
def test_fixpoint_independent_of_order(name, rnd):
    """The closure equals the least fixpoint computed by a shuffled worklist."""
    P = entry(name).cubic
    seed = set(rnd.sample(range(P.n), rnd.randint(1, min(3, P.n))))
    reached = set(seed)
    work = list(itertools.combinations_with_replacement(sorted(reached), 2))
    while work:
        rnd.shuffle(work)
        x, y = work.pop()
        for z in P.compose(x, y):
            if z not in reached:
                work.extend((min(z, w), max(z, w)) for w in reached | {z})
                reached.add(z)
    assert closure(P, seed, STD).reached == reached


def test_generation_comparison_on_corpus_seeds():
    rng = random.Random(5)
    for name in NAMES:
        P = entry(name).cubic
        for _ in range(10):
            seed = set(rng.sample(range(P.n), rng.randint(1, min(3, P.n))))
            assert claim_341_check(P, seed).ok
