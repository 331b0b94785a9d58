"""Absolute-irreducibility test for quintic forms via unknown-coefficient systems.

A quintic with unit x^5-coefficient is reducible iff it factors as
(quadratic)x(cubic) or (linear)x(quartic); each shape becomes a polynomial
system in the unknown factor coefficients, solvable over the closure iff the
reduced Groebner basis is nontrivial.  Field equations restrict the same test
to F_{q^s}.
"""

import itertools

from .ffield import FieldElem
from .groebner import Ideal, buchberger, basis_is_trivial, eliminate_constant_linears
from .mpoly import PolyRing


def _monomials_of_degree(d):
    out = []
    for i in range(d, -1, -1):
        for j in range(d - i, -1, -1):
            out.append((i, j, d - i - j))
    return out


def _shape_system(F, degrees):
    """Coefficient-matching ideal for F = g_low * g_high with the given split.

    Both factors are normalized to have x^degree coefficient 1, matching the
    normalization of F itself.
    """
    ring = F.ring
    ctx = ring.field
    d_lo, d_hi = degrees
    mon_lo = [m for m in _monomials_of_degree(d_lo) if m != (d_lo, 0, 0)]
    mon_hi = [m for m in _monomials_of_degree(d_hi) if m != (d_hi, 0, 0)]
    names = [f"b{i+1}" for i in range(len(mon_lo) + len(mon_hi))]
    bring = PolyRing(ctx, tuple(names))
    mixed = PolyRing(ctx, ("x", "y", "z") + tuple(names))

    def factor_poly(monos, name_offset, lead_deg):
        f = mixed.monomial((lead_deg, 0, 0) + (0,) * len(names))
        for i, (a, b, c) in enumerate(monos):
            exps = [a, b, c] + [0] * len(names)
            exps[3 + name_offset + i] = 1
            f = f + mixed.monomial(tuple(exps))
        return f

    g_lo = factor_poly(mon_lo, 0, d_lo)
    g_hi = factor_poly(mon_hi, len(mon_lo), d_hi)
    prod = g_lo * g_hi
    Fm = F.lift_to(mixed)
    diff = prod - Fm
    coeffs = diff.split_by(("x", "y", "z"), None, bring)
    return Ideal(bring, [g for g in coeffs.values() if not g.is_zero()])


_NORMALIZE_POINTS = None


def _normalize_unit_x5(F):
    """Return a form with x^5-coefficient 1 defining a projectively equivalent curve.

    Uses a fixed, documented sequence of coordinate changes: scan projective
    points in canonical order for one where F does not vanish, move it to
    (1:0:0), then scale.  Deterministic; the verdict is invariant under
    invertible linear changes and scaling.
    """
    ring = F.ring
    ctx = ring.field
    c = F.coeff((5, 0, 0))
    if c.raw != ctx.zero:
        return F.scale(c.inverse()) if c.raw != ctx.one else F

    def points():
        for y, z in itertools.product(ctx.elements(), repeat=2):
            yield (ctx.one, y, z)
        for z in ctx.elements():
            yield (ctx.zero, ctx.one, z)
        yield (ctx.zero, ctx.zero, ctx.one)

    for pt in points():
        if F.evaluate(pt) != ctx.zero:
            u, v, w = pt
            break
    else:
        raise ValueError("form vanishes on the whole plane")
    # complete (u,v,w) to an invertible matrix whose first column is the point
    cols = [(u, v, w)]
    for e in ((ctx.one, ctx.zero, ctx.zero), (ctx.zero, ctx.one, ctx.zero),
              (ctx.zero, ctx.zero, ctx.one)):
        trial = cols + [e]
        if _rank3(ctx, trial) == len(trial):
            cols.append(e)
        if len(cols) == 3:
            break
    m = list(zip(*cols))  # columns -> matrix
    x, y, z = ring.var("x"), ring.var("y"), ring.var("z")

    def image(row):
        img = ring.zero()
        for c_, v_ in zip(row, (x, y, z)):
            img = img + v_.scale(FieldElem(ctx, c_))
        return img

    G = F.substitute({"x": image(m[0]), "y": image(m[1]), "z": image(m[2])})
    c = G.coeff((5, 0, 0))
    assert c.raw != ctx.zero
    return G.scale(c.inverse())


def _rank3(ctx, vecs):
    from .linalg import mat_rank
    return mat_rank(ctx, [list(v) for v in vecs])


def is_absolutely_irreducible(F, scope="closure", s=1, budget=None):
    """Decide irreducibility of a quintic form over the closure (or F_{q^s}).

    scope: "closure" tests over the algebraic closure; "power" appends field
    equations b^{q^s} - b and tests rational factorizations over F_{q^s}.
    """
    if F.is_zero() or not F.is_homogeneous() or F.total_degree() != 5:
        raise ValueError("input must be a nonzero homogeneous quintic")
    G = _normalize_unit_x5(F)
    for degrees in ((1, 4), (2, 3)):
        ideal = _shape_system(G, degrees)
        gens, _ = eliminate_constant_linears(ideal.generators, ideal.ring)
        if not gens:
            return False  # system collapsed to 0 = 0: a factorization exists
        if scope == "power":
            q_s = G.ring.field.q ** s
            live = set()
            for g in gens:
                for exps, _ in g.iter_terms():
                    live.update(nm for nm, e in zip(ideal.ring.names, exps) if e)
            fe = [ideal.ring.var(nm, q_s) - ideal.ring.var(nm) for nm in sorted(live)]
            gens = gens + fe
        basis = buchberger(Ideal(ideal.ring, gens), budget)
        if not basis_is_trivial(basis):
            return False
    return True
