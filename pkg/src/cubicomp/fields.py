"""Exact arithmetic in small finite fields F_{p^e}.

Elements are dense coefficient vectors ``(c0, c1, ..., c_{e-1})`` of a
polynomial in the generator, reduced modulo a fixed monic irreducible.
Hot loops elsewhere in the package work with integer *codes*: the rank of
the coefficient tuple in lexicographic order, so that sorting codes is the
canonical element order.  For prime fields the code is the residue itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ORDER = 2**16
TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- polynomials over F_p as coefficient lists, constant term first --------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _poly_trim(a)
    m = _poly_trim(m)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _poly_trim(a)
    return a


def _is_irreducible(m, p) -> bool:
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    d = len(m) - 1
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            f = list(low) + [1]
            if not _poly_mod(m, f, p):
                return False
    return True


def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree e.

    Candidates are compared by their coefficient tuple read from the
    constant term upward.
    """
    if e == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=e):
        m = list(low) + [1]
        if m[0] == 0:
            continue
        if _is_irreducible(m, p):
            return tuple(m)
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")


class FieldSpec:
    """The field F_{p^e}; construct through :func:`ff_make`."""

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        self._weights = [p ** (e - 1 - i) for i in range(e)]
        self.zero = 0
        self.one = self._weights[0]
        self._add = None
        self._mul = None
        self._neg = None
        self._inv = None
        self._digits = None

    def __repr__(self):
        return f"F_{self.q}" if self.e == 1 else f"F_{self.p}^{self.e}"

    def __reduce__(self):
        return (ff_make, (self.p, self.e))

    # codes <-> coefficient vectors

    def to_coeffs(self, code: int) -> tuple[int, ...]:
        out = []
        for w in self._weights:
            out.append(code // w)
            code %= w
        return tuple(out)

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.e:
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
        coeffs = [c % self.p for c in coeffs] + [0] * (self.e - len(coeffs))
        return sum(c * w for c, w in zip(coeffs, self._weights))

    def from_int(self, n: int) -> int:
        return (n % self.p) * self.one

    @property
    def generator(self) -> int:
        """Residue class of x (for prime fields, the element 1)."""
        if self.e == 1:
            return self.one
        return self._weights[1]

    def elements(self) -> range:
        return range(self.q)

    # tables

    def _digit_array(self):
        if self._digits is None:
            codes = np.arange(self.q, dtype=np.int64)
            self._digits = np.stack([(codes // w) % self.p for w in self._weights], axis=1)
        return self._digits

    def _encode_array(self, digits):
        return (digits * np.array(self._weights, dtype=np.int64)).sum(axis=-1)

    def _build_tables(self):
        if self.q > TABLE_LIMIT:
            raise FieldError(f"tables not available for q={self.q} > {TABLE_LIMIT}")
        p, e, q = self.p, self.e, self.q
        dig = self._digit_array()
        add = self._encode_array((dig[:, None, :] + dig[None, :, :]) % p)
        neg = self._encode_array((-dig) % p)
        # dense product of coefficient vectors, then reduction by the modulus
        prod = np.zeros((q, q, 2 * e - 1), dtype=np.int64)
        for i in range(e):
            for j in range(e):
                prod[:, :, i + j] += dig[:, None, i] * dig[None, :, j]
        prod %= p
        m = np.array(self.modulus, dtype=np.int64)
        for top in range(2 * e - 2, e - 1, -1):
            c = prod[:, :, top].copy()
            for i in range(e + 1):
                prod[:, :, top - e + i] = (prod[:, :, top - e + i] - c * m[i]) % p
        mul = self._encode_array(prod[:, :, :e])
        inv = np.zeros(q, dtype=np.int64)
        hits = mul[1:] == self.one
        inv[1:] = hits.argmax(axis=1)
        self.add_array, self.mul_array, self.neg_array, self.inv_array = add, mul, neg, inv
        self._add = add.tolist()
        self._mul = mul.tolist()
        self._neg = neg.tolist()
        self._inv = inv.tolist()

    def tables(self):
        """(add, mul, neg, inv) as nested Python lists indexed by code."""
        if self._add is None:
            self._build_tables()
        return self._add, self._mul, self._neg, self._inv

    # scalar arithmetic on codes

    def add(self, a: int, b: int) -> int:
        if self.q <= TABLE_LIMIT:
            return self.tables()[0][a][b]
        da, db = self.to_coeffs(a), self.to_coeffs(b)
        return self.from_coeffs([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.q <= TABLE_LIMIT:
            return self.tables()[2][a]
        return self.from_coeffs([(-x) % self.p for x in self.to_coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.q <= TABLE_LIMIT:
            return self.tables()[1][a][b]
        da, db = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.from_coeffs(_poly_mod([c % self.p for c in prod], self.modulus, self.p))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.q <= TABLE_LIMIT:
            return self.tables()[3][a]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def sum(self, values) -> int:
        s = 0
        for v in values:
            s = self.add(s, v)
        return s

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)


@lru_cache(maxsize=None)
def ff_make(p: int, e: int = 1) -> FieldSpec:
    """Return the (cached, hence identical) field F_{p^e}."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if e < 1:
        raise FieldError("extension degree must be >= 1")
    if p**e > MAX_ORDER:
        raise FieldError(f"field order {p}^{e} exceeds guard {MAX_ORDER}")
    return FieldSpec(p, e, least_irreducible(p, e))


def ff_enumerate(spec: FieldSpec) -> list["FieldElem"]:
    return [FieldElem(spec, c) for c in spec.elements()]


@dataclass(frozen=True)
class FieldElem:
    """An element of ``spec`` carried by its code."""

    spec: FieldSpec
    code: int

    @classmethod
    def from_coeffs(cls, spec: FieldSpec, coeffs) -> "FieldElem":
        return cls(spec, spec.from_coeffs(coeffs))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.to_coeffs(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.spec is not self.spec:
                raise FieldError(f"field mismatch: {self.spec} vs {other.spec}")
            return other.code
        if isinstance(other, int):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElem(self.spec, self.spec.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.spec, self.spec.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.spec, self.spec.sub(self._other(other), self.code))

    def __neg__(self):
        return FieldElem(self.spec, self.spec.neg(self.code))

    def __mul__(self, other):
        return FieldElem(self.spec, self.spec.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.spec, self.spec.div(self.code, self._other(other)))

    def __pow__(self, n: int):
        return FieldElem(self.spec, self.spec.pow(self.code, n))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.spec, self.spec.inv(self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        if self.spec.e == 1:
            return f"{self.code} in {self.spec!r}"
        return f"{list(self.coeffs)} in {self.spec!r}"


def ff_arith(op: str, a: FieldElem, b=None) -> FieldElem:
    """Dispatch one of add|sub|mul|inv|pow|cube."""
    if op == "inv":
        return a.inverse()
    if op == "cube":
        return a ** 3
    if op == "pow":
        return a ** int(b)
    if not isinstance(b, FieldElem) or b.spec is not a.spec:
        raise FieldError("operands must share a field")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise FieldError(f"unknown op {op!r}")


class FieldEmbedding:
    """Ring embedding F_{p^e} -> F_{p^{em}} sending the generator to the
    least root (in canonical order) of its minimal polynomial."""

    def __init__(self, source: FieldSpec, target: FieldSpec):
        if source.p != target.p or target.e % source.e:
            raise FieldError(f"cannot embed {source} into {target}")
        self.source = source
        self.target = target
        if source.e == 1:
            root = target.one
        else:
            root = next(r for r in target.elements() if self._eval_modulus(r) == 0)
        self.root = root
        powers = [target.one]
        for _ in range(source.e - 1):
            powers.append(target.mul(powers[-1], root))
        image = []
        for code in source.elements():
            acc = 0
            for c, pw in zip(source.to_coeffs(code), powers):
                if c:
                    acc = target.add(acc, target.mul(target.from_int(c), pw))
            image.append(acc)
        self.image = image
        self.preimage = {v: k for k, v in enumerate(image)}

    def _eval_modulus(self, r: int) -> int:
        t = self.target
        acc = 0
        for c in reversed(self.source.modulus):
            acc = t.add(t.mul(acc, r), t.from_int(c))
        return acc

    def __call__(self, code: int) -> int:
        return self.image[code]

    def restrict(self, code: int):
        """Preimage of a target code, or None when it is not in the image."""
        return self.preimage.get(code)


@lru_cache(maxsize=None)
def embedding(source: FieldSpec, target: FieldSpec) -> FieldEmbedding:
    return FieldEmbedding(source, target)


def ff_embed(a: FieldElem, target: FieldSpec) -> FieldElem:
    return FieldElem(target, embedding(a.spec, target)(a.code))


def field_from_json(obj) -> FieldSpec:
    return ff_make(int(obj["p"]), int(obj.get("e", 1)))


def field_to_json(spec: FieldSpec) -> dict:
    return {"p": spec.p, "e": spec.e}


def elem_to_json(spec: FieldSpec, code: int) -> list[int]:
    return list(spec.to_coeffs(code))


def elem_from_json(spec: FieldSpec, obj) -> int:
    if isinstance(obj, int):
        return spec.from_int(obj)
    return spec.from_coeffs(obj)
