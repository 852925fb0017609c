"""Split cubic surfaces as blow-ups of six plane points, and the modified
compositions defined through the blow-down map p: V -> P^2.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .fields import FieldSpec, embedding, ff_make
from .generation import ClosureResult
from .geometry import (
    CubicForm,
    GeometryError,
    Line,
    Plane,
    SingularPointError,
    all_planes,
    curve_third,
    form_points,
    line_in_plane,
    line_plane_meet,
    line_through,
    lines_in_form,
    monomials,
    planes_through,
    section_third,
)
from .linalg import dot, lincomb, normalize, nullspace, point_key, proj_points, rank, rref


class SplitSurfaceError(ValueError):
    pass


class SectionContainsExceptional(SplitSurfaceError):
    pass


class UndefinedComposition(SplitSurfaceError):
    pass


class HypothesisViolation(SplitSurfaceError):
    pass


def monomial_row(K: FieldSpec, dim: int, P) -> tuple:
    """Values of the cubic monomials (canonical order) at P."""
    mul = K.mul
    row = []
    for e in monomials(dim):
        v = K.one
        for c, k in zip(P, e):
            for _ in range(k):
                v = mul(v, c)
        row.append(v)
    return tuple(row)


def conic_row(K: FieldSpec, P) -> tuple:
    x, y, z = P
    m = K.mul
    return (m(x, x), m(y, y), m(z, z), m(x, y), m(x, z), m(y, z))


def check_general_position(K: FieldSpec, pts) -> bool:
    """No three collinear and no conic through all six."""
    pts = [tuple(p) for p in pts]
    if len(pts) != 6:
        raise SplitSurfaceError("need exactly 6 points")
    if len(set(normalize(K, p) for p in pts)) != 6:
        raise SplitSurfaceError("points are not distinct")
    if any(rank(K, list(t)) < 3 for t in itertools.combinations(pts, 3)):
        return False
    return rank(K, [conic_row(K, p) for p in pts]) == 6


def find_general_position(K: FieldSpec):
    """The four standard points plus the canonically least pair completing
    them to a general-position 6-tuple; None if no completion exists."""
    std = [(K.one, 0, 0), (0, K.one, 0), (0, 0, K.one), (K.one, K.one, K.one)]
    rest = [p for p in proj_points(K, 2) if p not in std]
    for a, b in itertools.combinations(rest, 2):
        if check_general_position(K, std + [a, b]):
            return std + [a, b]
    return None


@dataclass
class BaseConfig:
    field: FieldSpec
    base_points: list

    def __post_init__(self):
        self.base_points = [normalize(self.field, p) for p in self.base_points]
        if not check_general_position(self.field, self.base_points):
            raise SplitSurfaceError("base points are not in general position")

    def to_json(self) -> dict:
        K = self.field
        return {"field": {"p": K.p, "e": K.e},
                "base_points": [[list(K.to_coeffs(c)) for c in p] for p in self.base_points]}

    @classmethod
    def from_json(cls, obj) -> "BaseConfig":
        from .fields import elem_from_json, field_from_json
        K = field_from_json(obj["field"])
        return cls(K, [tuple(elem_from_json(K, c) for c in p) for p in obj["base_points"]])


@dataclass
class SplitSurface:
    base: BaseConfig
    system: list                     # 4 plane cubics through the base points
    V: CubicForm
    exceptional: list                # E_1..E_6 as Lines of P^3
    forward: dict                    # P^2(k) minus base -> V(k)
    inverse: dict                    # image of forward -> P^2(k)
    interpolation_points: int = 0
    meta: dict = field(default_factory=dict)

    @property
    def field(self) -> FieldSpec:
        return self.base.field

    def map_point(self, u) -> tuple:
        """p^{-1} on P^2(k) minus the base points."""
        K = self.field
        return normalize(K, [F(u) for F in self.system])

    def exceptional_index(self, x):
        for i, E in enumerate(self.exceptional):
            if E.contains(self.field, x):
                return i
        return None

    def p(self, x) -> tuple:
        """The blow-down map on rational points of V."""
        i = self.exceptional_index(x)
        if i is not None:
            return self.base.base_points[i]
        try:
            return self.inverse[x]
        except KeyError:
            raise SplitSurfaceError(f"{x} is not a rational point of V") from None

    @property
    def complement(self) -> list:
        """P: rational points of V off the exceptional lines, canonical order."""
        return sorted(self.inverse, key=point_key)

    def image_curve(self, T: Plane) -> CubicForm:
        """p(V ∩ T): the zero set of sum_k T_k F_k on P^2."""
        K = self.field
        coeffs = [0] * 10
        for t, F in zip(T.coeffs, self.system):
            if t:
                coeffs = [K.add(a, K.mul(t, b)) for a, b in zip(coeffs, F.coeffs)]
        return CubicForm(K, 2, coeffs)

    def lift(self, u, T: Plane):
        """Point of V ∩ T over u in P^2: forward image, or E_k ∩ T over a base point."""
        K = self.field
        if u in self.base.base_points:
            k = self.base.base_points.index(u)
            z = line_plane_meet(K, self.exceptional[k], T)
            if z is None:
                raise SectionContainsExceptional(f"plane contains E_{k + 1}")
            return z
        return self.forward[u]


def build(cfg: BaseConfig, ext_degree: int = 3, rng_seed: int = 0, check_smooth: bool = True) -> SplitSurface:
    """Blow up the six base points: cubic system, surface equation,
    exceptional lines and the forward/inverse point tables."""
    K = cfg.field
    rows = [monomial_row(K, 2, p) for p in cfg.base_points]
    basis = nullspace(K, rows, 10)
    if len(basis) != 4:
        raise SplitSurfaceError(f"cubic system has dimension {len(basis)}, expected 4")
    system = [CubicForm(K, 2, b) for b in basis]

    # surface equation by interpolation through images of random points over an extension
    L = ff_make(K.p, K.e * ext_degree)
    emb = embedding(K, L)
    sysL = [F.embed(L) for F in system]
    rng = random.Random(rng_seed)
    base_L = {tuple(emb(c) for c in p) for p in cfg.base_points}
    eqs: list = []
    used = 0
    for _ in range(10_000):
        coords = [rng.randrange(L.q) for _ in range(3)]
        if not any(coords):
            continue
        u = normalize(L, coords)
        if u in base_L:
            continue
        img = tuple(F(u) for F in sysL)
        used += 1
        eqs.append(monomial_row(L, 3, img))
        if len(eqs) >= 19 and rank(L, eqs) == 19:
            break
    ker = nullspace(L, eqs, 20)
    if len(ker) != 1:
        raise SplitSurfaceError(f"surface interpolation kernel has dimension {len(ker)}")
    coeffsL = normalize(L, ker[0])
    coeffs = [emb.restrict(c) for c in coeffsL]
    if any(c is None for c in coeffs):
        raise SplitSurfaceError("surface equation is not defined over the base field")
    V = CubicForm(K, 3, coeffs)

    exceptional = []
    for b in cfg.base_points:
        J = [F.grad(b) for F in system]          # 4 x 3 Jacobian at the base point
        cols = [tuple(J[k][j] for k in range(4)) for j in range(3)]
        R, _ = rref(K, cols)
        if len(R) != 2:
            raise SplitSurfaceError("Jacobian at a base point does not have rank 2")
        exceptional.append(Line(tuple(R)))

    forward, inverse = {}, {}
    for u in proj_points(K, 2):
        if u in cfg.base_points:
            continue
        x = normalize(K, [F(u) for F in system])
        forward[u] = x
        inverse[x] = u
    S = SplitSurface(cfg, system, V, exceptional, forward, inverse, used)
    _check_surface(S, check_smooth)
    return S


def _check_surface(S: SplitSurface, check_smooth: bool):
    K, V = S.field, S.V
    if any(V(x) != 0 for x in S.inverse):
        raise SplitSurfaceError("forward image off the surface")
    for E in S.exceptional:
        A, B = E.basis
        if V(A) or V(B) or V.polar(A, B) or V.polar(B, A):
            raise SplitSurfaceError("exceptional line not on the surface")
    for E1, E2 in itertools.combinations(S.exceptional, 2):
        if rank(K, list(E1.basis) + list(E2.basis)) != 4:
            raise SplitSurfaceError("exceptional lines meet")
    if len(S.inverse) != len(S.forward):
        raise SplitSurfaceError("forward map is not injective")
    if check_smooth:
        from .geometry import is_smooth
        if not is_smooth(V):
            raise SplitSurfaceError("surface is singular")


def default_surface(p: int = 7) -> SplitSurface:
    K = ff_make(p)
    pts = find_general_position(K)
    if pts is None:
        raise SplitSurfaceError(f"no general-position 6-tuple over F_{p}")
    return build(BaseConfig(K, pts))


def bookkeeping(S: SplitSurface) -> dict:
    K = S.field
    pts = form_points(S.V)
    on_E = sum(len(E.points(K)) for E in S.exceptional)
    plane = len(proj_points(K, 2))
    return {"V_points": len(pts), "P": len(S.inverse), "plane_points": plane,
            "exceptional_points": on_E, "balanced": len(pts) == plane - 6 + on_E}


# -- lines of the split surface --------------------------------------------

def classify_lines(S: SplitSurface) -> dict:
    """Name the rational lines: exceptional E_i, strict transforms L_ij of
    lines through two base points, and G_j of conics through five."""
    K = S.field
    lines = lines_in_form(S.V)
    names = {}
    bp = S.base.base_points
    for ln in lines:
        if ln in S.exceptional:
            names[ln] = ("E", S.exceptional.index(ln))
            continue
        imgs = [S.p(x) for x in ln.points(K)]
        hit = sorted({bp.index(u) for u in imgs if u in bp})
        if rank(K, imgs) == 2:
            names[ln] = ("L",) + tuple(hit)
        else:
            missing = [j for j in range(6) if j not in hit]
            names[ln] = ("G",) + tuple(missing)
    return names


def exceptional_transform(S: SplitSurface, i: int, j: int) -> Line:
    """L_ij: strict transform of the line through base points i and j."""
    K = S.field
    bp = S.base.base_points
    pts = [S.forward[u] for u in line_through(K, bp[i], bp[j]).points(K) if u in S.forward]
    return line_through(K, pts[0], pts[1])


# -- twisted cubics --------------------------------------------------------

@dataclass
class TwistedCubic:
    line: Line
    points: frozenset
    base_hits: tuple


def twisted_cubic(S: SplitSurface, l: Line) -> TwistedCubic:
    """p^{-1}(l) off the base points; base points on l are reported, not lifted."""
    K = S.field
    pts = l.points(K)
    bp = S.base.base_points
    hits = tuple(sorted(bp.index(u) for u in pts if u in bp))
    return TwistedCubic(l, frozenset(S.forward[u] for u in pts if u in S.forward), hits)


def twisted_cubic_tangent(S: SplitSurface, u, v) -> Line:
    """Tangent line at p^{-1}(u) of the image of the plane line through u
    and v: spanned by the image point and the Jacobian applied to v."""
    K = S.field
    x = S.forward[u]
    d = tuple(dot(K, F.grad(u), v) for F in S.system)
    R, _ = rref(K, [x, d])
    if len(R) != 2:
        raise SplitSurfaceError("degenerate tangent direction")
    return Line(tuple(R))


# -- the modified composition through p ------------------------------------

def _cycle_compose(K: FieldSpec, G: CubicForm, a, b) -> tuple[set, Line | None]:
    """Residual points of the intersection cycle 2a + z (a == b) or
    a + b + z of lines with the plane cubic G, singular points included.

    Returns the residual points together with the first joining line that
    lies on G (whose points are then all residual), or None.
    """
    if a != b:
        alpha, beta = G.polar(a, b), G.polar(b, a)
        if alpha == 0 and beta == 0:
            ln = line_through(K, a, b)
            return set(ln.points(K)), ln
        return {normalize(K, lincomb(K, (beta, K.neg(alpha)), (a, b)))}, None
    g = G.grad(a)
    if any(g):
        r = curve_third(G, a, a)
        if r.tag == "unique":
            return {r.point}, None
        ln = Line(tuple(rref(K, nullspace(K, [g], 3))[0]))
        return set(ln.points(K)), ln
    # singular point: every line through it meets G doubly there
    out: set = set()
    first = None
    for d in proj_points(K, 2):
        if d == a or rank(K, [a, d]) < 2:
            continue
        fd, bd = G(d), G.polar(d, a)
        if fd == 0 and bd == 0:
            ln = line_through(K, a, d)
            out.update(ln.points(K))
            first = first or ln
        else:
            out.add(normalize(K, lincomb(K, (fd, K.neg(bd)), (a, d))))
    return out, first


def compose_Cp(S: SplitSurface, T: Plane, x, y, extended: bool = False) -> frozenset:
    """x ∘_(C,p) y for the section C = V ∩ T.

    p(C) is the plane cubic sum_k T_k F_k = 0.  The composition of p(x) and
    p(y) on it is lifted back; when the joining (or tangent) line is a
    component of p(C) every rational point of that line is a value.  Values
    over a base point p_k are the point E_k ∩ T of C.

    By default C must not contain an exceptional line and p(x), p(y) must be
    smooth on p(C).  With ``extended`` both restrictions are dropped: the
    intersection-cycle rule is applied at singular points (a line through a
    double point meets it twice), and a value over p_k with E_k inside T
    stands for all rational points of E_k.
    """
    K = S.field
    inside = [k for k, E in enumerate(S.exceptional) if line_in_plane(K, E, T)]
    if inside and not extended:
        raise SectionContainsExceptional(f"plane contains E_{inside[0] + 1}")
    if not (T.contains(K, x) and T.contains(K, y)):
        raise SplitSurfaceError("points are not on the plane")
    G = S.image_curve(T)
    a, b = S.p(x), S.p(y)
    if not extended:
        for c in (a, b):
            if not any(G.grad(c)):
                raise SingularPointError(f"{c} is singular on the image curve")
    vals, _ = _cycle_compose(K, G, a, b)
    out = set()
    for u in vals:
        if u in S.base.base_points and S.base.base_points.index(u) in inside:
            out.update(S.exceptional[S.base.base_points.index(u)].points(K))
        else:
            out.add(S.lift(u, T))
    return frozenset(out)


def compose_Cp_unique(S: SplitSurface, T: Plane, x, y):
    vals = compose_Cp(S, T, x, y)
    if len(vals) != 1:
        raise UndefinedComposition(f"composition has {len(vals)} values")
    return next(iter(vals))


def image_curve_by_interpolation(S: SplitSurface, T: Plane, ext_degree: int = 2) -> CubicForm:
    """Independent route to p(C): interpolate a plane cubic through p of the
    points of V ∩ T over an extension, p inverted by a full lookup table."""
    K = S.field
    L = ff_make(K.p, K.e * ext_degree)
    emb = embedding(K, L)
    sysL = [F.embed(L) for F in S.system]
    bpL = {tuple(emb(c) for c in b) for b in S.base.base_points}
    table = {}
    for u in proj_points(L, 2):
        if u not in bpL:
            table[normalize(L, [F(u) for F in sysL])] = u
    VL = S.V.embed(L)
    TL = Plane(tuple(emb(c) for c in T.coeffs))
    rows = []
    for c in TL.points(L):
        if VL(c) == 0 and c in table:
            rows.append(monomial_row(L, 2, table[c]))
    ker = nullspace(L, rows, 10)
    if len(ker) != 1:
        raise SplitSurfaceError(f"image curve interpolation has kernel dimension {len(ker)}")
    coeffs = [emb.restrict(c) for c in normalize(L, ker[0])]
    if any(c is None for c in coeffs):
        raise SplitSurfaceError("image curve not defined over the base field")
    return CubicForm(K, 2, coeffs)


# -- smooth sections ------------------------------------------------------

def section_points(S: SplitSurface, T: Plane) -> list:
    K = S.field
    return [x for x in T.points(K) if S.V(x) == 0]


def section_is_smooth(S: SplitSurface, T: Plane, lines=None) -> bool:
    """Smoothness of V ∩ T for a split surface.

    A singular section either contains a line of V (all of them rational
    here) or is irreducible with a unique, hence rational, singular point.
    """
    K = S.field
    if lines is None:
        lines = S.meta.setdefault("lines", lines_in_form(S.V))
    if any(line_in_plane(K, ln, T) for ln in lines):
        return False
    sub = [x for x in section_points(S, T)]
    for x in sub:
        g = S.V.grad(x)
        if rank(K, [g, T.coeffs]) < 2:
            return False
    return True


# -- line triples and the composition through them ------------------------

def lines_meet(K: FieldSpec, a: Line, b: Line) -> bool:
    return rank(K, list(a.basis) + list(b.basis)) < 4


@dataclass(frozen=True)
class LineTriple:
    l1: Line
    l2: Line
    m: Line

    def satisfies_A(self, K: FieldSpec) -> bool:
        return (not lines_meet(K, self.l1, self.l2) and lines_meet(K, self.m, self.l1)
                and lines_meet(K, self.m, self.l2))


def _third(F: CubicForm, T: Plane, a, b):
    r = section_third(F, T, a, b)
    if r.tag != "unique":
        raise UndefinedComposition(f"composition of {a} and {b} is not single-valued ({r.tag})")
    return r.point


def compose_TLambda(V: CubicForm, lam: LineTriple, T: Plane, u, w, field: FieldSpec | None = None):
    """(x∘y)∘[z∘(u∘w)] with x, y, z the meets of l1, l2, m with T.

    The lines may be defined over an extension ``field`` of V's field; plane
    and points are then embedded and the result is a point over ``field``.
    """
    K = V.field
    if field is not None and field is not K:
        emb = embedding(K, field)
        V = V.embed(field)
        T = Plane(tuple(emb(c) for c in T.coeffs))
        u = tuple(emb(c) for c in u)
        w = tuple(emb(c) for c in w)
        K = field
    if not lam.satisfies_A(K):
        raise HypothesisViolation("line triple does not satisfy property (A)")
    pts = []
    for ln in (lam.l1, lam.l2, lam.m):
        z = line_plane_meet(K, ln, T)
        if z is None:
            raise SplitSurfaceError("plane contains a line of the triple")
        pts.append(z)
    x, y, z = pts
    return _third(V, T, _third(V, T, x, y), _third(V, T, z, _third(V, T, u, w)))


def restrict_point(src: FieldSpec, target: FieldSpec, P):
    """Point over ``src`` as a point over the subfield ``target``, or None."""
    emb = embedding(target, src)
    P = normalize(src, P)
    out = tuple(emb.restrict(c) for c in P)
    return None if any(c is None for c in out) else out


# -- checks -------------------------------------------------------------------

@dataclass
class CheckResult:
    ok: bool
    checked: int
    skipped: int
    failures: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    detail: dict = field(default_factory=dict)


def claim_576_check(S: SplitSurface, T: Plane, x, y, u, w) -> bool:
    """u ∘_(C,p) w against (x∘y)∘[(x ∘_(C,p) y)∘(u∘w)] on C = V ∩ T."""
    V = S.V
    lhs = compose_Cp_unique(S, T, u, w)
    xy = compose_Cp_unique(S, T, x, y)
    rhs = _third(V, T, _third(V, T, x, y), _third(V, T, xy, _third(V, T, u, w)))
    return lhs == rhs


def claim_577_check(S: SplitSurface, lam: LineTriple, T: Plane) -> bool:
    """With l1, l2 exceptional and p(m) a line: m ∩ T = x ∘_(C,p) y."""
    K = S.field
    if lam.l1 not in S.exceptional or lam.l2 not in S.exceptional:
        raise HypothesisViolation("l1 and l2 must be exceptional lines")
    if not lam.satisfies_A(K):
        raise HypothesisViolation("line triple does not satisfy property (A)")
    if lam.m in S.exceptional:
        raise HypothesisViolation("m is exceptional")
    if rank(K, [S.p(q) for q in lam.m.points(K)]) != 2:
        raise HypothesisViolation("p(m) is not a line")
    pts = []
    for ln in (lam.l1, lam.l2, lam.m):
        z = line_plane_meet(K, ln, T)
        if z is None:
            raise SplitSurfaceError("plane contains a line of the triple")
        pts.append(z)
    x, y, z = pts
    return compose_Cp(S, T, x, y) == frozenset({z})


def claim_577_configs(S: SplitSurface) -> list:
    """All (Λ, T) with Λ = (E_i, E_j, L_ij), i != j, and T a rational plane."""
    K = S.field
    out = []
    for i, j in itertools.permutations(range(6), 2):
        lam = LineTriple(S.exceptional[i], S.exceptional[j], exceptional_transform(S, i, j))
        out.extend((lam, T) for T in all_planes(K))
    return out


def group_law_table(V: CubicForm, T: Plane, pts, a):
    """Abelian law xy = a∘(x∘y) on the rational points of a smooth section."""
    idx = {p: i for i, p in enumerate(pts)}
    mul = {}
    for p, q in itertools.combinations_with_replacement(pts, 2):
        r = idx[_third(V, T, a, _third(V, T, p, q))]
        mul[(idx[p], idx[q])] = mul[(idx[q], idx[p])] = r
    e = idx[a]
    inv = {i: next(j for j in range(len(pts)) if mul[(i, j)] == e) for i in range(len(pts))}
    return idx, mul, inv


def eq51_check(S: SplitSurface, T: Plane, x, y, u, w, a=None) -> bool:
    """u*w = (x*y)(x∘y)^{-1}(u∘w) with * = ∘_(C,p) and the product a∘(·∘·)."""
    V = S.V
    pts = section_points(S, T)
    if a is None:
        a = pts[0]
    idx, mul, inv = group_law_table(V, T, pts, a)
    lhs = idx[compose_Cp_unique(S, T, u, w)]
    xy_star = idx[compose_Cp_unique(S, T, x, y)]
    xy = idx[_third(V, T, x, y)]
    uw = idx[_third(V, T, u, w)]
    rhs = mul[(mul[(xy_star, inv[xy])], uw)]
    return lhs == rhs


def theorem_53_check(S: SplitSurface, x, witnesses: bool = False, extended: bool = True) -> CheckResult:
    """Whether {x ∘_(C,p) x : C a rational plane section through x} ⊇ P.

    ``extended`` lets C run through every rational section through x (see
    :func:`compose_Cp`); otherwise sections containing an exceptional line
    or singular at x are skipped.
    """
    K = S.field
    if S.exceptional_index(x) is not None:
        raise SplitSurfaceError("x lies on an exceptional line")
    if x not in S.inverse:
        raise SplitSurfaceError("x is not a point of P")
    covered: dict = {}
    skipped = 0
    for T in planes_through(K, [x]):
        try:
            vals = compose_Cp(S, T, x, x, extended)
        except (SectionContainsExceptional, SingularPointError):
            skipped += 1
            continue
        for v in vals:
            covered.setdefault(v, T.coeffs)
    P = S.complement
    missing = [y for y in P if y not in covered]
    wit = {str(y): list(covered[y]) for y in P if y in covered} if witnesses else {}
    return CheckResult(not missing, len(planes_through(K, [x])) - skipped, skipped,
                       [list(y) for y in missing], wit)


def theorem_53_witness_plane(S: SplitSurface, x, y) -> Plane:
    """Plane through x, y and the tangent at x of the twisted cubic Γ(x, y)."""
    K = S.field
    u, v = S.p(x), S.p(y)
    if len(twisted_cubic(S, line_through(K, u, v)).base_hits) >= 2:
        raise SplitSurfaceError("the curve through x and y is a line on V")
    tl = twisted_cubic_tangent(S, u, v)
    basis = nullspace(K, [y, *tl.basis], 4)
    if len(basis) != 1:
        raise SplitSurfaceError("witness plane is not unique")
    return Plane(normalize(K, basis[0]))


class _PairCache:
    def __init__(self, S: SplitSurface):
        self.S = S
        self.cache: dict = {}
        self.calls = 0

    def values(self, a, b) -> frozenset:
        key = (a, b) if a <= b else (b, a)
        got = self.cache.get(key)
        if got is None:
            S, K = self.S, self.S.field
            out = set()
            for T in planes_through(K, [a, b]):
                try:
                    out |= compose_Cp(S, T, a, b)
                    self.calls += 1
                except (SectionContainsExceptional, SingularPointError):
                    continue
            got = frozenset(v for v in out if v in S.inverse)
            self.cache[key] = got
        return got


def theorem_52_closure(S: SplitSurface, seed, max_rounds: int = 1000, cache: _PairCache | None = None) -> ClosureResult:
    """Closure of ``seed`` ⊆ P under ∘_(C,p) applied to distinct points,
    C running through all rational plane sections containing both."""
    cache = cache or _PairCache(S)
    reached = set(seed)
    if not reached <= set(S.inverse):
        raise SplitSurfaceError("seed must lie in P")
    done = set()
    history = [len(reached)]
    for rounds in range(1, max_rounds + 1):
        new = set()
        pts = sorted(reached, key=point_key)
        for a, b in itertools.combinations(pts, 2):
            if (a, b) in done:
                continue
            done.add((a, b))
            new |= cache.values(a, b)
        new -= reached
        reached |= new
        history.append(len(reached))
        if not new:
            return ClosureResult(frozenset(reached), rounds, True, len(reached) == len(S.inverse), history)
    return ClosureResult(frozenset(reached), max_rounds, False, len(reached) == len(S.inverse), history)


def theorem_52_seed_search(S: SplitSurface, min_size: int = 1, max_size: int = 6, max_seeds: int = 10_000):
    """First seed (by size, then canonical order) whose closure is P."""
    P = S.complement
    cache = _PairCache(S)
    tried = 0
    for k in range(min_size, max_size + 1):
        for seed in itertools.combinations(P, k):
            tried += 1
            if tried > max_seeds:
                return None, tried
            res = theorem_52_closure(S, seed, cache=cache)
            if res.generated_all:
                return (seed, res), tried
    return None, tried


def lemma_56_check(C: CubicForm, reflections, x, y, P=None, U3=None) -> bool:
    """t^{-1}(t(x)∘t(y)) ≡ x∘y mod U3, t the product of the reflections."""
    from .equivalence import u3 as _u3
    from .geometry import collinearity
    if C.dim != 2:
        raise GeometryError("lemma_56_check needs a plane cubic")
    if P is None:
        P = collinearity(C)
    if U3 is None:
        U3 = _u3(P)
    index = {lab: i for i, lab in enumerate(P.labels)}

    def comp(a, b):
        r = curve_third(C, a, b)
        if r.tag != "unique":
            raise UndefinedComposition("composition is not single-valued")
        return r.point

    def t(pt, seq):
        for z in reversed(seq):
            pt = comp(z, pt)
        return pt

    lhs = t(comp(t(x, reflections), t(y, reflections)), list(reversed(reflections)))
    return U3.same(index[lhs], index[comp(x, y)])


def corollary_54_check(S: SplitSurface) -> tuple[bool, int]:
    from .equivalence import u3
    from .geometry import collinearity
    P = collinearity(S.V)
    n = u3(P).n_classes
    return n == 1, n
