"""Small dense linear algebra over a :class:`FieldSpec`, on element codes."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .fields import FieldSpec


def normalize(F: FieldSpec, vec) -> tuple[int, ...]:
    """Scale so the first nonzero entry is 1."""
    for c in vec:
        if c:
            if c == F.one:
                return tuple(vec)
            inv = F.inv(c)
            return tuple(F.mul(inv, v) for v in vec)
    raise ValueError("zero vector has no projective point")


def point_key(pt):
    """Canonical order: position of the leading 1, then the tail."""
    for i, c in enumerate(pt):
        if c:
            return (i, pt)
    raise ValueError("zero vector")


def rref(F: FieldSpec, rows):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        s = F.inv(M[r][c])
        M[r] = [F.mul(s, v) for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = F.neg(M[i][c])
                Mi, Mr = M[i], M[r]
                M[i] = [F.add(a, F.mul(f, b)) for a, b in zip(Mi, Mr)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return [tuple(row) for row in M[:r]], pivots


def rank(F: FieldSpec, rows) -> int:
    return len(rref(F, rows)[1])


def nullspace(F: FieldSpec, rows, ncols: int) -> list[tuple[int, ...]]:
    """Basis of {v : rows . v = 0}, one vector per free column, in order."""
    R, pivots = rref(F, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = F.one
        for row, pc in zip(R, pivots):
            if row[f]:
                v[pc] = F.neg(row[f])
        basis.append(tuple(v))
    return basis


def dot(F: FieldSpec, a, b) -> int:
    add, mul = F.add, F.mul
    s = 0
    for x, y in zip(a, b):
        if x and y:
            s = add(s, mul(x, y))
    return s


def lincomb(F: FieldSpec, coeffs, vectors) -> tuple[int, ...]:
    n = len(vectors[0])
    out = [0] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i in range(n):
                if v[i]:
                    out[i] = F.add(out[i], F.mul(c, v[i]))
    return tuple(out)


@lru_cache(maxsize=None)
def proj_points(F: FieldSpec, n: int) -> tuple[tuple[int, ...], ...]:
    """All normalized points of P^n(F) in canonical order."""
    pts = []
    for lead in range(n + 1):
        for tail in itertools.product(range(F.q), repeat=n - lead):
            pts.append((0,) * lead + (F.one,) + tail)
    return tuple(pts)


def subspace_points(F: FieldSpec, basis) -> list[tuple[int, ...]]:
    """Projective points of the span of linearly independent ``basis``."""
    k = len(basis)
    pts = {normalize(F, lincomb(F, c, basis)) for c in proj_points(F, k - 1)}
    return sorted(pts, key=point_key)


def solve_in_span(F: FieldSpec, basis, target):
    """Coefficients c with sum c_i basis_i = target, or None."""
    k = len(basis)
    n = len(target)
    # columns are basis vectors; augment with target
    rows = [[basis[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    R, pivots = rref(F, rows)
    if k in pivots:
        return None
    c = [0] * k
    for row, pc in zip(R, pivots):
        c[pc] = row[k]
    return tuple(c)
