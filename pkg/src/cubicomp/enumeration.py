"""Bulk enumeration of cubic surfaces over F_2.

A form over F_2 is encoded as a 20-bit integer, the coefficient of the
m-th canonical monomial sitting at bit 19 - m (so integer order is the
lexicographic order of coefficient tuples).

Being singular at a fixed point P over F_{2^d} is an F_2-linear condition
on the coefficients: the d bit-components of F(P) and of the four partial
derivatives must vanish.  The singular forms are therefore the union of
the kernels of these conditions over all points of degree <= 6, one
point per Frobenius orbit.  A cubic surface that is singular somewhere
has a singular point of degree <= 4 unless its singular locus is a
curve, which also has points of low degree, so the scan is exhaustive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .fields import ff_make
from .geometry import CubicForm, monomials

NBITS = 20
SCAN_DEGREES = (4, 5, 6)  # F_16, F_32, F_64 contain all points of degree 1..6


def form_from_int(n: int) -> CubicForm:
    F2 = ff_make(2)
    return CubicForm(F2, 3, [(n >> (NBITS - 1 - m)) & 1 for m in range(NBITS)])


def form_to_int(F: CubicForm) -> int:
    if F.field.q != 2 or F.dim != 3:
        raise ValueError("form must be a surface over F_2")
    return sum(c << (NBITS - 1 - m) for m, c in enumerate(F.coeffs))


def _orbit_reps(d: int):
    """Normalized points of P^3(F_{2^d}) that are least in their Frobenius orbit."""
    K = ff_make(2, d)
    K.tables()
    q = K.q
    sq = K.mul_array[np.arange(q), np.arange(q)]
    pts = []
    for lead in range(4):
        tails = list(itertools.product(range(q), repeat=3 - lead))
        tail = np.array(tails, dtype=np.int64).reshape(len(tails), 3 - lead)
        block = np.zeros((len(tail), 4), dtype=np.int64)
        block[:, lead] = K.one
        block[:, lead + 1:] = tail
        pts.append(block)
    P = np.concatenate(pts)
    weights = q ** np.arange(3, -1, -1, dtype=np.int64)
    key = P @ weights
    best = key.copy()
    conj = P.copy()
    for _ in range(1, d):
        conj = sq[conj]
        best = np.minimum(best, conj @ weights)
    return K, P[best == key]


def _condition_rows(K, P: np.ndarray) -> np.ndarray:
    """For each point, the F_2 rows (as 20-bit ints) of 'F(P) = 0 and grad F(P) = 0'."""
    mul = K.mul_array
    mons = monomials(3)
    n = len(P)
    d = K.e
    rows = np.zeros((n, 5 * d), dtype=np.int64)

    def mono_value(exps):
        v = np.full(n, K.one, dtype=np.int64)
        for var, k in enumerate(exps):
            for _ in range(k):
                v = mul[v, P[:, var]]
        return v

    for m, e in enumerate(mons):
        bit = 1 << (NBITS - 1 - m)
        vals = [mono_value(e)]
        for var in range(4):
            if e[var] % 2:
                rest = list(e)
                rest[var] -= 1
                vals.append(mono_value(rest))
            else:
                vals.append(np.zeros(n, dtype=np.int64))
        for c, v in enumerate(vals):
            for b in range(d):
                on = (v >> (d - 1 - b)) & 1
                rows[:, c * d + b] |= on * bit
    return rows


def _kernel_basis(rows) -> list[int]:
    """Basis of {c in F_2^20 : popcount(c & r) even for every row r}."""
    pivots: dict = {}
    for r in rows:
        r = int(r)
        for pb, pr in pivots.items():
            if r >> pb & 1:
                r ^= pr
        if r:
            pb = r.bit_length() - 1
            for k in list(pivots):
                if pivots[k] >> pb & 1:
                    pivots[k] ^= r
            pivots[pb] = r
    basis = []
    for f in range(NBITS):
        if f in pivots:
            continue
        v = 1 << f
        for pb, pr in pivots.items():
            if pr >> f & 1:
                v |= 1 << pb
        basis.append(v)
    return basis


def _span(basis) -> np.ndarray:
    span = np.zeros(1, dtype=np.int64)
    for b in basis:
        span = np.concatenate([span, span ^ b])
    return span


@dataclass
class SmoothScan:
    smooth: np.ndarray          # boolean mask over all 2^20 encodings
    points_scanned: int

    @property
    def count(self) -> int:
        return int(self.smooth.sum())

    def forms(self):
        return np.flatnonzero(self.smooth)


def smooth_mask_f2() -> SmoothScan:
    """Mask of the nonsingular cubic surfaces over F_2 (index 0, the zero
    form, is excluded)."""
    singular = np.zeros(1 << NBITS, dtype=bool)
    singular[0] = True
    scanned = 0
    seen_kernels = set()
    for d in SCAN_DEGREES:
        K, P = _orbit_reps(d)
        rows = _condition_rows(K, P)
        scanned += len(P)
        for r in rows:
            basis = tuple(_kernel_basis(r))
            if not basis or basis in seen_kernels:
                continue
            seen_kernels.add(basis)
            singular[_span(basis)] = True
    return SmoothScan(~singular, scanned)


def point_count_f2(n: int) -> int:
    from .geometry import form_points
    return len(form_points(form_from_int(n)))


def _parity(x: np.ndarray) -> np.ndarray:
    for shift in (16, 8, 4, 2, 1):
        x = x ^ (x >> shift)
    return x & 1


def point_counts_f2(encodings) -> np.ndarray:
    """Number of F_2-points of each encoded surface, vectorized."""
    pts = np.array([P for P in itertools.product((0, 1), repeat=4) if any(P)], dtype=np.int64)
    enc = np.asarray(encodings, dtype=np.int64)
    counts = np.zeros(len(enc), dtype=np.int64)
    for P in pts:
        mask = sum(int(np.prod(P ** np.array(e))) << (NBITS - 1 - m) for m, e in enumerate(monomials(3)))
        counts += 1 - _parity(enc & mask)
    return counts


# -- plane cubics over a prime field ---------------------------------------

def _plane_condition_rows(p: int, d: int):
    """Per point of P^2(F_{p^d}): F_p-rows of 'F(P) = 0 and grad F(P) = 0'
    as linear conditions on the 10 coefficients."""
    from .linalg import proj_points
    K = ff_make(p, d)
    mons = monomials(2)
    for P in proj_points(K, 2):
        rows = []
        for part in range(4):
            vals = []
            for e in mons:
                if part == 0:
                    coef, exps = 1, e
                else:
                    var = part - 1
                    coef = e[var] % p
                    exps = list(e)
                    exps[var] -= 1
                v = K.from_int(coef) if coef else 0
                if coef:
                    for var2, k in enumerate(exps):
                        for _ in range(k):
                            v = K.mul(v, P[var2])
                vals.append(K.to_coeffs(v))
            rows.extend([vals[m][j] for m in range(len(mons))] for j in range(d))
        yield rows


def smooth_plane_cubics(p: int) -> list[tuple[int, ...]]:
    """Coefficient tuples of all nonsingular plane cubics over F_p, in
    lexicographic order.

    A singular plane cubic has a singular point of degree 1, 2 or 3 over
    F_p: an irreducible one has a unique, hence rational, singular point;
    otherwise singular points are meets of components, and the components
    are defined over F_p, F_{p^2} or F_{p^3}.  Scanning F_{p^2} and
    F_{p^3} therefore suffices.
    """
    from .linalg import nullspace
    K = ff_make(p)
    n = len(monomials(2))
    weights = np.array([p ** (n - 1 - m) for m in range(n)], dtype=np.int64)
    singular = np.zeros(p ** n, dtype=bool)
    singular[0] = True
    seen = set()
    for d in (2, 3):
        for rows in _plane_condition_rows(p, d):
            basis = tuple(nullspace(K, rows, n))
            if not basis or basis in seen:
                continue
            seen.add(basis)
            B = np.array(basis, dtype=np.int64)
            combos = np.array(list(itertools.product(range(p), repeat=len(basis))), dtype=np.int64)
            vecs = (combos @ B) % p
            singular[vecs @ weights] = True
    digits = lambda k: tuple(int(k // p ** (n - 1 - m)) % p for m in range(n))
    return [digits(k) for k in np.flatnonzero(~singular)]
