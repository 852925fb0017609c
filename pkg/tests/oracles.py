"""Slow, independent recomputations used to check the fast code paths."""

from __future__ import annotations

import itertools


def poly_mulmod(a, b, modulus, p):
    """Schoolbook product of coefficient lists (constant term first) mod a
    monic modulus."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    e = len(modulus) - 1
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for i, m in enumerate(modulus):
                prod[k - e + i] = (prod[k - e + i] - c * m) % p
    return (prod + [0] * e)[:e]


def poly_irreducible_bruteforce(m, p) -> bool:
    """No monic factor of degree 1..deg/2, by trial division over all of them."""
    e = len(m) - 1
    for d in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            f = list(tail) + [1]
            r = list(m)
            for k in range(len(r) - 1, d - 1, -1):
                c = r[k]
                if c:
                    for i, fi in enumerate(f):
                        r[k - d + i] = (r[k - d + i] - c * fi) % p
            if not any(r[:d]):
                return False
    return True


def points_on_line_naive(K, x, y):
    """Normalized points s*x + t*y, (s, t) over all of P^1."""
    from cubicomp.linalg import normalize
    out = set()
    for s, t in [(K.one, c) for c in K.elements()] + [(0, K.one)]:
        v = tuple(K.add(K.mul(s, a), K.mul(t, b)) for a, b in zip(x, y))
        out.add(normalize(K, v))
    return out


def line_in_form_naive(F, x, y) -> bool:
    """Containment tested on at least five points of the line, passing to
    an extension field when the line has fewer rational points."""
    from cubicomp.fields import embedding, ff_make
    K = F.field
    if K.q >= 4:
        return all(F(z) == 0 for z in points_on_line_naive(K, x, y))
    L = ff_make(K.p, 2 * K.e)
    emb = embedding(K, L)
    G = F.embed(L)
    xs, ys = tuple(map(emb, x)), tuple(map(emb, y))
    return all(G(z) == 0 for z in points_on_line_naive(L, xs, ys))


def third_point_naive(F, x, y):
    """The residual intersection by scanning the line: None if the line lies
    in F, else the unique other zero (x or y itself when tangent there)."""
    K = F.field
    pts = points_on_line_naive(K, x, y)
    zeros = [z for z in pts if F(z) == 0]
    if line_in_form_naive(F, x, y):
        return "line"
    others = [z for z in zeros if z not in (x, y)]
    if len(others) == 1:
        return others[0]
    # No third zero: the line is tangent at x or y.  The restriction to the
    # line is s*t*(a*s + b*t) with a = grad F(x).y, b = grad F(y).x; b = 0
    # makes y the double root.
    if not others:
        return y if F.polar(y, x) == 0 else x
    raise AssertionError("a cubic meets a line in at most three points")


def all_partitions(n):
    """Set partitions of range(n) as label lists (restricted growth)."""
    def rec(i, labels, m):
        if i == n:
            yield tuple(labels)
            return
        for c in range(m + 1):
            labels.append(c)
            yield from rec(i + 1, labels, max(m, c + 1))
            labels.pop()
    yield from rec(0, [], 0)


def is_admissible_naive(P, labels) -> bool:
    comp = {}
    for x in range(P.n):
        for y in range(P.n):
            for z in P.compose(x, y):
                key = (labels[x], labels[y])
                comp.setdefault(key, set()).add(labels[z])
    return all(len(v) == 1 for v in comp.values())


def finest_admissible_containing(P, pairs):
    """Brute-force: among admissible partitions containing ``pairs``, the
    one with the most classes; checks it is unique and refines the rest."""
    cands = [lab for lab in all_partitions(P.n)
             if all(lab[a] == lab[b] for a, b in pairs) and is_admissible_naive(P, lab)]
    best = max(cands, key=lambda lab: len(set(lab)))
    for lab in cands:
        for i in range(P.n):
            for j in range(P.n):
                if best[i] == best[j]:
                    assert lab[i] == lab[j], "finest admissible relation is not unique"
    return best


def group_table_associative(table, elems) -> bool:
    return all(table[(table[(a, b)], c)] == table[(a, table[(b, c)])]
               for a in elems for b in elems for c in elems)
