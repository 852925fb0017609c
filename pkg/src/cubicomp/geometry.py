"""Projective geometry of cubic forms in P^2 and P^3 over small finite fields.

Points are plain tuples of element codes, normalized so the first nonzero
coordinate is 1 (see :func:`cubicomp.linalg.normalize`).  Everything here is
exact; the only enumeration-heavy operation is :func:`lines_in_form`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .fields import FieldSpec, elem_from_json, elem_to_json, embedding, field_from_json, field_to_json
from .linalg import dot, lincomb, normalize, nullspace, proj_points, rref, solve_in_span, subspace_points

Point = tuple


class GeometryError(ValueError):
    pass


class SingularPointError(GeometryError):
    pass


@lru_cache(maxsize=None)
def monomials(dim: int) -> tuple[tuple[int, ...], ...]:
    """Degree-3 exponent tuples in dim+1 variables, lexicographically descending."""
    exps = [e for e in itertools.product(range(4), repeat=dim + 1) if sum(e) == 3]
    return tuple(sorted(exps, reverse=True))


def _exp_to_vars(e):
    out = []
    for v, k in enumerate(e):
        out.extend([v] * k)
    return tuple(out)


class CubicForm:
    """A nonzero homogeneous cubic over ``field`` in dim+1 variables."""

    def __init__(self, field: FieldSpec, dim: int, coeffs):
        if dim not in (2, 3):
            raise GeometryError("dim must be 2 or 3")
        coeffs = tuple(int(c) for c in coeffs)
        mons = monomials(dim)
        if len(coeffs) != len(mons):
            raise GeometryError(f"expected {len(mons)} coefficients, got {len(coeffs)}")
        if not any(coeffs):
            raise GeometryError("cubic form is identically zero")
        self.field = field
        self.dim = dim
        self.coeffs = coeffs
        F = field
        self._terms = [(c,) + _exp_to_vars(e) for c, e in zip(coeffs, mons) if c]
        grad = [[] for _ in range(dim + 1)]
        for c, e in zip(coeffs, mons):
            if not c:
                continue
            for v in range(dim + 1):
                if e[v]:
                    k = F.mul(c, F.from_int(e[v]))
                    if k:
                        rest = list(e)
                        rest[v] -= 1
                        grad[v].append((k,) + _exp_to_vars(rest))
        self._grad_terms = grad
        self._grad_cache: dict = {}

    @classmethod
    def from_terms(cls, field: FieldSpec, dim: int, terms: dict) -> "CubicForm":
        """Build from ``{exponent tuple: code}``."""
        index = {e: i for i, e in enumerate(monomials(dim))}
        coeffs = [0] * len(index)
        for e, c in terms.items():
            coeffs[index[tuple(e)]] = field.add(coeffs[index[tuple(e)]], c)
        return cls(field, dim, coeffs)

    def __eq__(self, other):
        return (isinstance(other, CubicForm) and self.field is other.field
                and self.dim == other.dim and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.q, self.dim, self.coeffs))

    def __repr__(self):
        parts = []
        names = "XYZW"
        for c, e in zip(self.coeffs, monomials(self.dim)):
            if c:
                mon = "".join(names[v] + (f"^{k}" if k > 1 else "") for v, k in enumerate(e) if k)
                coef = "" if c == self.field.one else f"[{','.join(map(str, self.field.to_coeffs(c)))}]"
                parts.append(coef + mon)
        return f"CubicForm({' + '.join(parts)} over {self.field!r})"

    def __call__(self, P) -> int:
        add, mul = self.field._add, self.field._mul
        if add is None:
            self.field.tables()
            add, mul = self.field._add, self.field._mul
        acc = 0
        for c, i, j, k in self._terms:
            a = P[i]
            if a:
                b = P[j]
                if b:
                    d = P[k]
                    if d:
                        acc = add[acc][mul[c][mul[mul[a][b]][d]]]
        return acc

    def grad(self, P) -> tuple[int, ...]:
        g = self._grad_cache.get(P)
        if g is not None:
            return g
        add, mul = self.field._add, self.field._mul
        if add is None:
            self.field.tables()
            add, mul = self.field._add, self.field._mul
        out = []
        for terms in self._grad_terms:
            acc = 0
            for c, i, j in terms:
                a = P[i]
                if a:
                    b = P[j]
                    if b:
                        acc = add[acc][mul[c][mul[a][b]]]
            out.append(acc)
        g = tuple(out)
        if len(self._grad_cache) < 100000:
            self._grad_cache[P] = g
        return g

    def polar(self, P, Q) -> int:
        """grad F(P) . Q, the s^2 t coefficient of F(sP + tQ)."""
        return dot(self.field, self.grad(P), Q)

    def embed(self, target: FieldSpec) -> "CubicForm":
        emb = embedding(self.field, target)
        return CubicForm(target, self.dim, [emb(c) for c in self.coeffs])

    def to_json(self) -> dict:
        return {"field": field_to_json(self.field), "dim": self.dim,
                "coeffs": [elem_to_json(self.field, c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "CubicForm":
        F = field_from_json(obj["field"])
        return cls(F, int(obj["dim"]), [elem_from_json(F, c) for c in obj["coeffs"]])


def is_smooth_point(F: CubicForm, P) -> bool:
    return any(F.grad(P))


# -- points, lines, planes ----------------------------------------------------

def enumerate_proj_points(dim: int, spec: FieldSpec) -> list[Point]:
    if dim not in (2, 3):
        raise GeometryError("dim must be 2 or 3")
    return list(proj_points(spec, dim))


def form_points(F: CubicForm, spec: FieldSpec | None = None) -> list[Point]:
    """Rational zeros of F, over ``spec`` (default: F's own field)."""
    if spec is not None and spec is not F.field:
        F = F.embed(spec)
    return [P for P in proj_points(F.field, F.dim) if F(P) == 0]


@dataclass(frozen=True)
class Line:
    """Line of P^dim spanned by the two rows of a reduced echelon basis."""

    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis[0]) - 1

    def points(self, F: FieldSpec) -> list[Point]:
        return subspace_points(F, self.basis)

    def contains(self, F: FieldSpec, P) -> bool:
        return solve_in_span(F, self.basis, P) is not None


def line_through(F: FieldSpec, x, y) -> Line:
    R, _ = rref(F, [x, y])
    if len(R) != 2:
        raise GeometryError("points coincide")
    return Line(tuple(R))


@dataclass(frozen=True)
class Plane:
    """Plane sum c_i X_i = 0 of P^3, coefficients normalized."""

    coeffs: tuple

    def contains(self, F: FieldSpec, P) -> bool:
        return dot(F, self.coeffs, P) == 0

    def basis(self, F: FieldSpec) -> list[tuple]:
        return nullspace(F, [self.coeffs], 4)

    def points(self, F: FieldSpec) -> list[Point]:
        return subspace_points(F, self.basis(F))


def make_plane(F: FieldSpec, coeffs) -> Plane:
    return Plane(normalize(F, coeffs))


def planes_through(F: FieldSpec, pts) -> list[Plane]:
    """All rational planes containing the given points, canonical order."""
    basis = nullspace(F, [tuple(p) for p in pts], 4)
    if not basis:
        return []
    return [Plane(c) for c in subspace_points(F, basis)]


def all_planes(F: FieldSpec) -> list[Plane]:
    return [Plane(c) for c in proj_points(F, 3)]


def line_plane_meet(F: FieldSpec, line: Line, T: Plane):
    """Intersection point, or None when the line lies in the plane."""
    A, B = line.basis
    a, b = dot(F, T.coeffs, A), dot(F, T.coeffs, B)
    if a == 0 and b == 0:
        return None
    return normalize(F, lincomb(F, (b, F.neg(a)), (A, B)))


def line_in_plane(F: FieldSpec, line: Line, T: Plane) -> bool:
    return all(dot(F, T.coeffs, v) == 0 for v in line.basis)


# -- composition --------------------------------------------------------------

@dataclass(frozen=True)
class ThirdResult:
    """``unique`` with a point, ``line`` (the secant lies on the form), or
    ``none`` (no rational residual point)."""

    tag: str
    point: tuple | None = None

    @staticmethod
    def unique(z):
        return ThirdResult("unique", z)


LINE_IN_V = ThirdResult("line")
NO_RATIONAL_THIRD = ThirdResult("none")


def _check_on_smooth(F: CubicForm, P):
    if F(P) != 0:
        raise GeometryError(f"point {P} is not on the form")
    if not any(F.grad(P)):
        raise SingularPointError(f"point {P} is singular")


def _residual(F: CubicForm, x, y, alpha, beta):
    """Third root of F(s x + t y) = s t (alpha s + beta t), i.e. beta x - alpha y."""
    K = F.field
    return normalize(K, lincomb(K, (beta, K.neg(alpha)), (x, y)))


def third_point(F: CubicForm, x, y) -> ThirdResult:
    """Residual intersection of the secant xy with F (x != y)."""
    if x == y:
        raise GeometryError("x == y: use tangent_compose")
    _check_on_smooth(F, x)
    _check_on_smooth(F, y)
    alpha = F.polar(x, y)
    beta = F.polar(y, x)
    if alpha == 0 and beta == 0:
        return LINE_IN_V
    return ThirdResult.unique(_residual(F, x, y, alpha, beta))


def tangent_plane(F: CubicForm, x) -> Plane:
    if F.dim != 3:
        raise GeometryError("tangent_plane needs a surface")
    g = F.grad(x)
    if not any(g):
        raise SingularPointError(f"point {x} is singular")
    return Plane(normalize(F.field, g))


def _tangent_space_points(F: CubicForm, x):
    g = F.grad(x)
    if not any(g):
        raise SingularPointError(f"point {x} is singular")
    return subspace_points(F.field, nullspace(F.field, [g], F.dim + 1))


def tangent_compose(F: CubicForm, x, spec: FieldSpec | None = None) -> set:
    """All rational z with (x, x, z) collinear.

    Every rational line through x inside the tangent space meets F at x
    with multiplicity >= 2; its residual point is z (possibly x itself).
    Lines contained in F contribute all their rational points.
    """
    if spec is not None and spec is not F.field:
        F = F.embed(spec)
    _check_on_smooth(F, x)
    K = F.field
    out = set()
    seen_lines = set()
    for y in _tangent_space_points(F, x):
        if y == x:
            continue
        fy = F(y)
        b = F.polar(y, x)
        if fy == 0 and b == 0:
            ln = line_through(K, x, y)
            if ln not in seen_lines:
                seen_lines.add(ln)
                out.update(ln.points(K))
        else:
            # F(s x + t y) = t^2 (b s + F(y) t)
            out.add(normalize(K, lincomb(K, (fy, K.neg(b)), (x, y))))
    return out


def lines_in_form(F: CubicForm, spec: FieldSpec | None = None) -> list[Line]:
    """Exhaustive scan of the rational lines of P^dim lying on F."""
    if spec is not None and spec is not F.field:
        F = F.embed(spec)
    K = F.field
    n = F.dim + 1
    out = []
    for c1, c2 in itertools.combinations(range(n), 2):
        free1 = [c for c in range(c1 + 1, n) if c != c2]
        free2 = list(range(c2 + 1, n))
        for v1 in itertools.product(range(K.q), repeat=len(free1)):
            A = [0] * n
            A[c1] = K.one
            for c, v in zip(free1, v1):
                A[c] = v
            A = tuple(A)
            if F(A) != 0:
                continue
            for v2 in itertools.product(range(K.q), repeat=len(free2)):
                B = [0] * n
                B[c2] = K.one
                for c, v in zip(free2, v2):
                    B[c] = v
                B = tuple(B)
                if F(B) == 0 and F.polar(A, B) == 0 and F.polar(B, A) == 0:
                    out.append(Line((A, B)))
    return out


def is_eckardt(F: CubicForm, x) -> bool:
    """Whether the tangent-plane section has a triple point at x.

    In F(s x + y) the coefficient of s is the quadratic form
    Q(y) = grad F(y) . x; x is a triple point of the section iff Q vanishes
    identically on a complement of x inside the tangent plane.
    """
    if F.dim != 3:
        raise GeometryError("is_eckardt needs a surface")
    _check_on_smooth(F, x)
    K = F.field
    basis = nullspace(K, [F.grad(x)], 4)
    comp = None
    for a, b in itertools.combinations(basis, 2):
        if len(rref(K, [x, a, b])[0]) == 3:
            comp = (a, b)
            break
    a, b = comp
    q = lambda y: F.polar(y, x)
    ab = tuple(K.add(u, v) for u, v in zip(a, b))
    cross = K.sub(K.sub(q(ab), q(a)), q(b))
    return q(a) == 0 and q(b) == 0 and cross == 0


# -- plane sections and plane curves -------------------------------------------

def substitute(F: CubicForm, linear) -> CubicForm:
    """F(linear . u): ``linear[i]`` is the linear form replacing X_i, given
    as coefficients in the new variables u_0..u_m."""
    K = F.field
    m = len(linear[0]) - 1
    acc: dict = {}
    for term in F._terms:
        c, idx = term[0], term[1:]
        poly = {(0,) * (m + 1): c}
        for v in idx:
            nxt: dict = {}
            for e, a in poly.items():
                for u, b in enumerate(linear[v]):
                    if b:
                        e2 = list(e)
                        e2[u] += 1
                        e2 = tuple(e2)
                        nxt[e2] = K.add(nxt.get(e2, 0), K.mul(a, b))
            poly = nxt
        for e, a in poly.items():
            acc[e] = K.add(acc.get(e, 0), a)
    return CubicForm.from_terms(K, m, acc)


@dataclass
class PlaneCubic:
    """The section V ∩ T carried to P^2 by a chart of the plane T.

    ``basis`` holds the images in P^3 of (1:0:0), (0:1:0), (0:0:1); the
    unit point (1:1:1) goes to their sum.
    """

    form: CubicForm
    plane: Plane
    basis: tuple
    field: FieldSpec = field(repr=False)

    def pull(self, u) -> Point:
        """P^2 -> P^3."""
        return normalize(self.field, lincomb(self.field, u, self.basis))

    def push(self, P) -> Point:
        """P^3 (point on the plane) -> P^2."""
        c = solve_in_span(self.field, self.basis, P)
        if c is None:
            raise GeometryError(f"{P} is not on the plane")
        return normalize(self.field, c)


def plane_section(F: CubicForm, T: Plane) -> PlaneCubic:
    if F.dim != 3:
        raise GeometryError("plane_section needs a surface")
    K = F.field
    basis = tuple(T.basis(K))
    linear = [tuple(b[i] for b in basis) for i in range(4)]
    try:
        form = substitute(F, linear)
    except GeometryError:
        raise GeometryError("plane lies on the surface") from None
    return PlaneCubic(form, T, basis, K)


def _as_form(C) -> CubicForm:
    return C.form if isinstance(C, PlaneCubic) else C


def curve_third(C, x, y) -> ThirdResult:
    """Composition on a plane cubic; x == y uses the tangent line at x."""
    F = _as_form(C)
    if x != y:
        return third_point(F, x, y)
    _check_on_smooth(F, x)
    K = F.field
    for d in _tangent_space_points(F, x):
        if d != x:
            break
    fd = F(d)
    b = F.polar(d, x)
    if fd == 0 and b == 0:
        return LINE_IN_V
    return ThirdResult.unique(normalize(K, lincomb(K, (fd, K.neg(b)), (x, d))))


def curve_compose(C, x, y) -> set:
    """All rational z with (x, y, z) collinear on the plane curve C."""
    F = _as_form(C)
    r = curve_third(F, x, y)
    if r.tag == "unique":
        return {r.point}
    K = F.field
    if x == y:
        g = F.grad(x)
        return set(subspace_points(K, nullspace(K, [g], 3)))
    return set(line_through(K, x, y).points(K))


def curve_add(C, e, x, y) -> Point:
    """x + y := e∘(x∘y)."""
    F = _as_form(C)
    r = curve_third(F, x, y)
    if r.tag != "unique":
        raise GeometryError("curve is not smooth: composition is not single-valued")
    s = curve_third(F, e, r.point)
    if s.tag != "unique":
        raise GeometryError("curve is not smooth: composition is not single-valued")
    return s.point


def section_third(F: CubicForm, T: Plane, x, y) -> ThirdResult:
    """Composition inside the plane section V ∩ T without charting.

    For x != y this is the ordinary residual point; for x == y the tangent
    line of the section at x is T ∩ T_x V.
    """
    if x != y:
        return third_point(F, x, y)
    _check_on_smooth(F, x)
    K = F.field
    g = F.grad(x)
    sub = nullspace(K, [g, T.coeffs], 4)
    if len(sub) != 2:
        raise SingularPointError(f"section by {T.coeffs} is singular at {x}")
    d = next(p for p in subspace_points(K, sub) if p != x)
    fd = F(d)
    b = F.polar(d, x)
    if fd == 0 and b == 0:
        return LINE_IN_V
    return ThirdResult.unique(normalize(K, lincomb(K, (fd, K.neg(b)), (x, d))))


# -- collinearity -----------------------------------------------------------------

def collinearity(F: CubicForm, spec: FieldSpec | None = None, check: bool = True):
    """The abstract cubic (S, L) of the smooth rational points of F."""
    from .abstract_cubic import AbstractCubic, AxiomViolation, validate

    if spec is not None and spec is not F.field:
        F = F.embed(spec)
    K = F.field
    pts = [P for P in form_points(F) if any(F.grad(P))]
    if not pts:
        raise GeometryError("form has no smooth rational points")
    index = {P: i for i, P in enumerate(pts)}
    triples = set()
    lines = set()
    n = len(pts)
    grads = [F.grad(P) for P in pts]
    add, mul, neg = K._add, K._mul, K._neg
    for i in range(n):
        x, gx = pts[i], grads[i]
        for j in range(i + 1, n):
            y, gy = pts[j], grads[j]
            alpha = 0
            beta = 0
            for a, b, c, d in zip(gx, y, gy, x):
                if a and b:
                    alpha = add[alpha][mul[a][b]]
                if c and d:
                    beta = add[beta][mul[c][d]]
            if alpha == 0 and beta == 0:
                lines.add(line_through(K, x, y))
                continue
            z = normalize(K, [add[mul[beta][u]][neg[mul[alpha][v]]] for u, v in zip(x, y)])
            k = index.get(z)
            if k is not None:
                triples.add(tuple(sorted((i, j, k))))
    for i, x in enumerate(pts):
        for z in tangent_compose(F, x):
            k = index.get(z)
            if k is not None:
                triples.add(tuple(sorted((i, i, k))))
    line_pairs = set()
    for ln in lines:
        idx = sorted(index[P] for P in ln.points(K) if P in index)
        for t in itertools.combinations_with_replacement(idx, 3):
            triples.add(t)
        for a, b in itertools.combinations(idx, 2):
            line_pairs.add((a, b))
    P = AbstractCubic(n, triples, line_pairs, labels=pts)
    if check:
        report = validate(P, strict=False)
        if not report.valid:
            raise AxiomViolation(report.violations[:5])
    return P


# -- smoothness ---------------------------------------------------------------------

def has_rational_singular_point(F: CubicForm) -> bool:
    return any(F(P) == 0 and not any(F.grad(P)) for P in proj_points(F.field, F.dim))


def is_smooth(F: CubicForm) -> bool:
    """No singular point over the algebraic closure.

    Decided exactly by Gröbner bases over F_p (the generator of F_{p^e} is
    adjoined as a variable subject to its minimal polynomial), one affine
    chart X_i = 1 at a time.  Singular cubics with rational singular points
    are rejected by a direct scan first.
    """
    if has_rational_singular_point(F):
        return False
    import sympy

    K = F.field
    n = F.dim + 1
    X = sympy.symbols(f"x0:{n}")
    a = sympy.Symbol("a")

    def lift(code):
        return sum(c * a**i for i, c in enumerate(K.to_coeffs(code)))

    poly = sum(lift(c) * sympy.Mul(*[X[v] ** k for v, k in enumerate(e)])
               for c, e in zip(F.coeffs, monomials(F.dim)) if c)
    eqs = [poly] + [sympy.diff(poly, v) for v in X]
    extra = [sum(c * a**i for i, c in enumerate(K.modulus))] if K.e > 1 else []
    for chart in range(n):
        gens = [v for v in X if v is not X[chart]]
        sys_ = [sympy.expand(f.subs(X[chart], 1)) for f in eqs]
        sys_ = [f for f in sys_ if f != 0] + extra
        if not sys_:
            return False
        all_gens = ([a] if extra else []) + gens
        G = sympy.groebner(sys_, *all_gens, modulus=K.p, order="grevlex")
        if list(G.exprs) != [1]:
            return False
    return True
