"""Quintic plane models of trigonal genus-5 curves and their singularity analysis.

A model is a homogeneous quintic whose z^3-part is xy (split node),
x^2 - eps*y^2 (non-split node) or x^2 (cusp); the singular point sits at
(0:0:1).  Classification of arbitrary quintics certifies uniqueness of the
singular point over the algebraic closure via radical membership, never by
point sampling alone.
"""

from dataclasses import dataclass, field as dfield

from .ffield import FieldElem, elem
from .groebner import Ideal, buchberger, basis_is_trivial, radical_vanishes
from .mpoly import MPoly, PolyRing
from .ffield import _poly_gcd, _poly_trim

CASE_SPLIT1 = "split1"
CASE_SPLIT2 = "split2"
CASE_NONSPLIT1 = "nonsplit1"
CASE_NONSPLIT2 = "nonsplit2"
CASE_NONSPLIT3 = "nonsplit3"
CASE_CUSP = "cusp"

SPLIT_CASES = (CASE_SPLIT1, CASE_SPLIT2)
NONSPLIT_CASES = (CASE_NONSPLIT1, CASE_NONSPLIT2, CASE_NONSPLIT3)

KIND_SPLIT = "split_node"
KIND_NONSPLIT = "nonsplit_node"
KIND_CUSP = "cusp"

STATUS_SMOOTH = "smooth"
STATUS_UNIQUE = "unique_double"
STATUS_MULTIPLE = "multiple_or_worse"


class ModelError(ValueError):
    pass


_GEOM_RINGS = {}


def geometry_ring(ctx) -> PolyRing:
    ring = _GEOM_RINGS.get(ctx)
    if ring is None:
        ring = PolyRing(ctx, ("x", "y", "z"))
        _GEOM_RINGS[ctx] = ring
    return ring


@dataclass(frozen=True)
class QuinticModel:
    ctx: object
    case: str
    form: MPoly
    params: dict = dfield(default_factory=dict)
    eps: object = None  # raw nonsquare for the non-split cases

    def is_split_or_cusp(self):
        return self.case in SPLIT_CASES or self.case == CASE_CUSP

    def is_nonsplit(self):
        return self.case in NONSPLIT_CASES


def make_model(ctx, case, form, params=None, eps=None) -> QuinticModel:
    """Validated model constructor; checks the fixed leading structure."""
    if form.is_zero() or not form.is_homogeneous() or form.total_degree() != 5:
        raise ModelError("form must be a nonzero homogeneous quintic")
    c_x2 = form.coeff((2, 0, 3)).raw
    c_xy = form.coeff((1, 1, 3)).raw
    c_y2 = form.coeff((0, 2, 3)).raw
    for bad in ((0, 0, 5), (1, 0, 4), (0, 1, 4)):
        if form.coeff(bad).raw != ctx.zero:
            raise ModelError("model must be singular at (0:0:1): no z^5/x*z^4/y*z^4 terms")
    if case in SPLIT_CASES:
        if (c_x2, c_xy, c_y2) != (ctx.zero, ctx.one, ctx.zero):
            raise ModelError("split-node model needs z^3-part exactly xy")
    elif case in NONSPLIT_CASES:
        if eps is None:
            raise ModelError("non-split model needs eps")
        eps = elem(ctx, eps).raw
        if ctx.is_square(eps):
            raise ModelError("eps must be a non-square")
        if (c_x2, c_xy, c_y2) != (ctx.one, ctx.zero, ctx.neg(eps)):
            raise ModelError("non-split model needs z^3-part exactly x^2 - eps*y^2")
    elif case == CASE_CUSP:
        if (c_x2, c_xy, c_y2) != (ctx.one, ctx.zero, ctx.zero):
            raise ModelError("cusp model needs z^3-part exactly x^2")
        if form.coeff((0, 3, 2)).raw == ctx.zero:
            raise ModelError("cusp model needs a nonzero y^3*z^2 coefficient")
    else:
        raise ModelError(f"unknown case {case!r}")
    return QuinticModel(ctx, case, form, dict(params or {}), eps)


@dataclass
class SingularityReport:
    status: str
    kind: str = None
    point: tuple = None  # projective coordinates as raws
    genus5_ok: bool = False
    details: dict = dfield(default_factory=dict)


def node_split_type(ctx, a, b, c):
    """Type of the binary quadratic a*x^2 + b*xy + c*y^2 from its discriminant."""
    a, b, c = (elem(ctx, v).raw for v in (a, b, c))
    disc = ctx.sub(ctx.mul(b, b), ctx.mul(ctx.from_int(4), ctx.mul(a, c)))
    if disc == ctx.zero:
        return "degenerate"
    return "split" if ctx.is_square(disc) else "nonsplit"


def classify_singularity(F: MPoly, budget=None) -> SingularityReport:
    """Certified singularity analysis of a homogeneous quintic.

    Uniqueness of a double point is decided over the algebraic closure by
    Rabinowitsch radical membership in the affine chart plus an exact check
    that the Jacobian variety avoids the line z = 0.
    """
    ring = F.ring
    ctx = ring.field
    if F.is_zero() or not F.is_homogeneous() or F.total_degree() != 5:
        raise ModelError("input must be a nonzero homogeneous quintic")

    Fx, Fy, Fz = (F.derivative(nm) for nm in ("x", "y", "z"))
    rational = _rational_singular_points(ctx, Fx, Fy, Fz)
    if len(rational) >= 2:
        return SingularityReport(STATUS_MULTIPLE, details={"rational_singular_points": len(rational)})
    if not rational:
        if _jacobian_empty_over_closure(ctx, ring, Fx, Fy, Fz, budget):
            return SingularityReport(STATUS_SMOOTH)
        return SingularityReport(
            STATUS_MULTIPLE,
            details={"note": "singular locus is nonempty but has no rational point; "
                             "a unique singular point would be rational"})

    point = rational[0]
    G = F
    if point != (ctx.zero, ctx.zero, ctx.one):
        G = _translate_to_origin(F, point)
        Fx, Fy, Fz = (G.derivative(nm) for nm in ("x", "y", "z"))

    qa = G.coeff((2, 0, 3)).raw
    qb = G.coeff((1, 1, 3)).raw
    qc = G.coeff((0, 2, 3)).raw
    if (qa, qb, qc) == (ctx.zero, ctx.zero, ctx.zero):
        return SingularityReport(STATUS_MULTIPLE, point=point,
                                 details={"note": "multiplicity at least 3"})

    unique = _unique_at_origin(ctx, ring, Fx, Fy, Fz, budget)
    if not unique:
        return SingularityReport(STATUS_MULTIPLE, point=point,
                                 details={"note": "second singular point over the closure"})

    qtype = node_split_type(ctx, qa, qb, qc)
    if qtype == "split":
        return SingularityReport(STATUS_UNIQUE, KIND_SPLIT, point, True)
    if qtype == "nonsplit":
        return SingularityReport(STATUS_UNIQUE, KIND_NONSPLIT, point, True)
    # rank 1: cusp; genus-5 needs a nonzero y^3 z^2 term once Q is normalized to x^2
    H = _normalize_rank1(G, qa, qb, qc)
    ok = H.coeff((0, 3, 2)).raw != ctx.zero
    return SingularityReport(STATUS_UNIQUE, KIND_CUSP, point, ok,
                             details={} if ok else {"note": "vanishing y^3z^2 term: genus <= 4"})


def _rational_singular_points(ctx, Fx, Fy, Fz):
    pts = []
    one, zero = ctx.one, ctx.zero
    for pt in _projective_points(ctx):
        if (Fx.evaluate(pt) == zero and Fy.evaluate(pt) == zero
                and Fz.evaluate(pt) == zero):
            pts.append(pt)
            if len(pts) > 1:
                break
    return pts


def _projective_points(ctx):
    one, zero = ctx.one, ctx.zero
    yield (zero, zero, one)
    for z in ctx.elements():
        yield (zero, one, z)
    for y in ctx.elements():
        for z in ctx.elements():
            yield (one, y, z)


def _translate_to_origin(F, point):
    """Coordinate change moving a rational point to (0:0:1)."""
    ring = F.ring
    ctx = ring.field
    u, v, w = point
    x, y, z = ring.var("x"), ring.var("y"), ring.var("z")
    if w != ctx.zero:
        winv = FieldElem(ctx, ctx.inv(w))
        # (x, y, z) -> (x + (u/w) z, y + (v/w) z, z)
        return F.substitute({
            "x": x + z.scale(FieldElem(ctx, u) * winv),
            "y": y + z.scale(FieldElem(ctx, v) * winv),
        })
    if v != ctx.zero:
        # swap y and z, then recurse
        G = F.substitute({"y": z, "z": y})
        return _translate_to_origin(G, (u, w, v))
    G = F.substitute({"x": z, "z": x})
    return _translate_to_origin(G, (w, v, u))


def _affine_chart_ideal(ctx, Fx, Fy, Fz):
    R2 = PolyRing(ctx, ("x", "y"))
    gens = []
    for g in (Fx, Fy, Fz):
        h = g.pin({"z": 1})
        d = {}
        for (ex, ey, _), c in h.iter_terms():
            d[R2.pack((ex, ey))] = c
        if d:
            gens.append(MPoly(R2, d))
        elif not g.is_zero():
            pass  # identically zero on the chart
    return R2, gens


def _unique_at_origin(ctx, ring, Fx, Fy, Fz, budget):
    """Certify the Jacobian variety is contained in {(0:0:1)}."""
    R2, gens = _affine_chart_ideal(ctx, Fx, Fy, Fz)
    if not gens:
        return False
    ideal = Ideal(R2, gens)
    if not radical_vanishes(R2.var("x"), ideal, budget):
        return False
    if not radical_vanishes(R2.var("y"), ideal, budget):
        return False
    return _line_z0_empty(ctx, Fx, Fy, Fz)


def _jacobian_empty_over_closure(ctx, ring, Fx, Fy, Fz, budget):
    R2, gens = _affine_chart_ideal(ctx, Fx, Fy, Fz)
    if not gens:
        return False
    if not basis_is_trivial(buchberger(Ideal(R2, gens), budget)):
        return False
    return _line_z0_empty(ctx, Fx, Fy, Fz)


def _line_z0_empty(ctx, Fx, Fy, Fz):
    """No common projective zero of the partials on the line z = 0 (over closure)."""
    binaries = []
    for g in (Fx, Fy, Fz):
        coeffs = {}
        for (ex, ey, ez), c in g.iter_terms():
            if ez == 0:
                coeffs[(ex, ey)] = c
        binaries.append(coeffs)
    if all(not b for b in binaries):
        return False  # whole line is singular
    # check the point (1:0:0) directly
    deg = {}
    at_100 = all(b.get((max((e for e, _ in b), default=0), 0)) is None or
                 _eval_at_100(ctx, b) == ctx.zero for b in binaries)
    if all(_eval_at_100(ctx, b) == ctx.zero for b in binaries):
        return False
    # dehomogenize at y = 1: common roots over the closure iff gcd nonconstant
    polys = []
    for b in binaries:
        if not b:
            continue
        d = max(e for e, _ in b)
        dense = [ctx.zero] * (d + 1)
        for (ex, _), c in b.items():
            dense[ex] = c
        polys.append(_poly_trim(dense, ctx.zero))
    nonzero = [p for p in polys if p]
    if not nonzero:
        return False
    g = nonzero[0]
    for h in nonzero[1:]:
        g = _poly_gcd(ctx, g, h)
        if len(g) == 1:
            return True
    return len(g) == 1


def _eval_at_100(ctx, coeffs):
    # value of the binary form at (x, y) = (1, 0): the x^deg coefficient,
    # i.e. the coefficient of the pure-x monomial
    tot = None
    for (ex, ey), c in coeffs.items():
        d = ex + ey
        tot = d if tot is None else max(tot, d)
    if tot is None:
        return ctx.zero
    return coeffs.get((tot, 0), ctx.zero)


def _normalize_rank1(G, qa, qb, qc):
    """Linear change making a rank-1 quadratic part proportional to x^2."""
    ring = G.ring
    ctx = ring.field
    x, y = ring.var("x"), ring.var("y")
    if qa != ctx.zero:
        # Q = qa*(x + (qb/(2qa)) y)^2; shift x by -(qb/(2qa)) y... substitute x -> x - t*y
        t = ctx.mul(qb, ctx.inv(ctx.mul(ctx.from_int(2), qa)))
        return G.substitute({"x": x - y.scale(FieldElem(ctx, t))})
    # qa == 0 and disc == 0 force qb == 0, so Q = qc*y^2: swap x and y
    return G.substitute({"x": y, "y": x})
