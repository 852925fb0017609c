"""A fixed, reproducible collection of cubic curves and surfaces."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .abstract_cubic import AbstractCubic
from .fields import ff_make
from .geometry import CubicForm, collinearity, form_points, is_eckardt, is_smooth, lines_in_form, monomials


@dataclass
class CorpusEntry:
    name: str
    form: CubicForm | None
    cubic: AbstractCubic


def fermat(p: int, e: int, dim: int, last=None) -> CubicForm:
    K = ff_make(p, e)
    terms = {}
    for v in range(dim + 1):
        exp = [0] * (dim + 1)
        exp[v] = 3
        terms[tuple(exp)] = K.one
    if last is not None:
        exp = [0] * (dim + 1)
        exp[dim] = 3
        terms[tuple(exp)] = last
    return CubicForm.from_terms(K, dim, terms)


def nine_point_surface() -> CubicForm:
    """X^3 + Y^3 + Z^3 + a W^3 over F_4, a a generator."""
    K = ff_make(2, 2)
    return fermat(2, 2, 3, last=K.generator)


def weierstrass(p: int, a: int, b: int) -> CubicForm:
    """Y^2 Z = X^3 + a X Z^2 + b Z^3."""
    K = ff_make(p)
    terms = {(3, 0, 0): K.one, (0, 2, 1): K.neg(K.one)}
    if a % p:
        terms[(1, 0, 2)] = K.from_int(a)
    if b % p:
        terms[(0, 0, 3)] = K.from_int(b)
    return CubicForm.from_terms(K, 2, terms)


def random_smooth(p: int, e: int, dim: int, seed: int, min_points: int = 1) -> CubicForm:
    K = ff_make(p, e)
    rng = random.Random(seed)
    n = len(monomials(dim))
    while True:
        coeffs = [rng.randrange(K.q) for _ in range(n)]
        if not any(coeffs):
            continue
        F = CubicForm(K, dim, coeffs)
        if len(form_points(F)) >= min_points and is_smooth(F):
            return F


@lru_cache(maxsize=None)
def three_point_eckardt_surface(rational_lines: int = 0) -> CubicForm:
    """Least (in encoding order) smooth surface over F_2 with exactly three
    rational points, all Eckardt, and the given number of rational lines.

    With no rational line nothing can be blown down over F_2 one line at a
    time, which is the situation of minimal surfaces.
    """
    from .enumeration import form_from_int, smooth_mask_f2

    scan = smooth_mask_f2()
    for n in scan.forms():
        F = form_from_int(int(n))
        pts = form_points(F)
        if (len(pts) == 3 and all(is_eckardt(F, x) for x in pts)
                and len(lines_in_form(F)) == rational_lines):
            return F
    raise LookupError("no such surface")


def one_point_cubic() -> AbstractCubic:
    return AbstractCubic(1, [(0, 0, 0)])


def _builders():
    yield "fermat-curve-F2", lambda: fermat(2, 1, 2)
    yield "fermat-curve-F4", lambda: fermat(2, 2, 2)
    yield "fermat-curve-F7", lambda: fermat(7, 1, 2)
    yield "weierstrass-F3-a2b1", lambda: weierstrass(3, 2, 1)
    yield "weierstrass-F3-a1b0", lambda: weierstrass(3, 1, 0)
    yield "random-curve-F5", lambda: random_smooth(5, 1, 2, seed=11)
    yield "random-curve-F7", lambda: random_smooth(7, 1, 2, seed=12)
    yield "fermat-surface-F2", lambda: fermat(2, 1, 3)
    yield "fermat-surface-F4", lambda: fermat(2, 2, 3)
    yield "fermat-surface-F7", lambda: fermat(7, 1, 3)
    yield "nine-point-surface-F4", nine_point_surface
    yield "three-point-eckardt-F2", three_point_eckardt_surface
    yield "three-point-on-line-F2", lambda: three_point_eckardt_surface(rational_lines=1)
    for s in (1, 2, 3):
        yield f"random-surface-F2-{s}", lambda s=s: random_smooth(2, 1, 3, seed=100 + s)
    for s in (1, 2, 3):
        yield f"random-surface-F3-{s}", lambda s=s: random_smooth(3, 1, 3, seed=200 + s)
    yield "random-surface-F4-1", lambda: random_smooth(2, 2, 3, seed=301)
    yield "random-surface-F7-1", lambda: random_smooth(7, 1, 3, seed=401)


def _split_form():
    from .split_surface import default_surface
    return default_surface().V


def names(include_split: bool = True) -> list[str]:
    out = [n for n, _ in _builders()]
    if include_split:
        out.append("split-surface-F7")
    return out + ["one-point"]


@lru_cache(maxsize=None)
def entry(name: str) -> CorpusEntry:
    if name == "one-point":
        return CorpusEntry(name, None, one_point_cubic())
    if name == "split-surface-F7":
        V = _split_form()
        return CorpusEntry(name, V, collinearity(V))
    for n, make in _builders():
        if n == name:
            F = make()
            return CorpusEntry(name, F, collinearity(F))
    raise KeyError(f"no corpus entry {name!r}")


@lru_cache(maxsize=None)
def corpus(include_split: bool = True) -> tuple[CorpusEntry, ...]:
    return tuple(entry(n) for n in names(include_split))
