"""Buchberger-style Groebner engine over small finite fields.

Covers the three uses in this project: solving coefficient systems for
rational roots (field equations appended), Rabinowitsch radical-membership
certificates for singularity analysis, and the unknown-coefficient systems
behind irreducibility and isomorphism testing.
"""

import itertools
from dataclasses import dataclass, field as dfield

from .ffield import FieldElem, elem, univariate_roots
from .mpoly import MPoly, PolyRing, _BITS, _MAXEXP


class BudgetExceeded(RuntimeError):
    """A resource cap tripped; partial results are never passed off as complete."""

    def __init__(self, what, counters=None):
        super().__init__(what)
        self.counters = counters or {}


@dataclass
class Budget:
    max_pairs: int = 50_000
    max_basis: int = 4_000
    max_poly_terms: int = 2_000_000
    max_solver_nodes: int = 20_000_000


DEFAULT_BUDGET = Budget()


@dataclass
class Ideal:
    ring: PolyRing
    generators: list

    def __post_init__(self):
        self.generators = [g for g in self.generators if not g.is_zero()]
        for g in self.generators:
            if g.ring != self.ring:
                raise ValueError("generator ring mismatch")


@dataclass
class SolutionSet:
    variables: tuple
    solutions: list  # list of tuples of FieldElem, aligned with `variables`
    complete: bool
    method: str


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------

def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _monomial_shift(poly, ring, offset_key, scale_raw):
    fld = ring.field
    mul = fld.mul
    return {k + offset_key: mul(c, scale_raw) for k, c in poly.terms.items()}


def normal_form(f, basis):
    """Unique remainder of f modulo a (Groebner) basis, fully reduced."""
    if not basis or f.is_zero():
        return f
    lead = [(g.leading()[0], g) for g in basis if not g.is_zero()]
    return MPoly(f.ring, _reduce_terms(dict(f.terms), lead, f.ring, head_only=False))


def _reduce_terms(work, lead, ring, head_only):
    """Reduce a term dict against (lt_exps, monic poly) pairs; mutates `work`."""
    import heapq

    fld = ring.field
    z = fld.zero
    unpack, pack, gkey = ring.unpack, ring.pack, ring.grevlex_key
    heap = [(_neg_gkey(gkey(unpack(k))), k) for k in work]
    heapq.heapify(heap)
    queued = set(work)
    out = {}
    while heap:
        _, k = heapq.heappop(heap)
        queued.discard(k)
        c = work.pop(k, z)
        if c == z:
            continue
        exps = unpack(k)
        for ltexps, g in lead:
            if _divides(ltexps, exps):
                off = pack(tuple(a - b for a, b in zip(exps, ltexps)))
                # work -= c * x^off * g   (g is monic)
                for k2, c2 in g.terms.items():
                    kk = k2 + off
                    if kk == k:
                        continue
                    s = fld.sub(work.get(kk, z), fld.mul(c, c2))
                    if s == z:
                        work.pop(kk, None)
                    else:
                        work[kk] = s
                        if kk not in queued:
                            heapq.heappush(heap, (_neg_gkey(gkey(unpack(kk))), kk))
                            queued.add(kk)
                break
        else:
            if head_only:
                work[k] = c
                return work
            out[k] = c
    return out


def _neg_gkey(gk):
    deg, tail = gk
    return (-deg, tuple(-t for t in tail))


def eliminate_constant_linears(gens, ring, protect=()):
    """Repeatedly substitute away variables pinned by c*v + r with constant c.

    Returns (reduced generators, eliminated {name: image MPoly}).  Sound for
    solvability questions: the variety maps bijectively onto the reduced one,
    and 1 lies in the original ideal iff it lies in the reduced ideal.
    """
    fld = ring.field
    z = fld.zero
    protect = {ring._index[nm] for nm in protect}
    gens = [g for g in gens if not g.is_zero()]
    eliminated = {}
    changed = True
    while changed:
        changed = False
        for gi, g in enumerate(gens):
            if len(g.terms) == 1 and 0 in g.terms:
                return [ring.one()], eliminated  # inconsistent
            target = None
            for k in g.terms:
                if k and (k & (k - 1)) == 0 and (k.bit_length() - 1) % _BITS == 0:
                    pos = (k.bit_length() - 1) // _BITS
                    if pos in protect:
                        continue
                    # v appears exactly linearly and in no other term of g
                    mask = _MAXEXP << (_BITS * pos)
                    if all(kk == k or not (kk & mask) for kk in g.terms):
                        target = (pos, k)
                        break
            if target is None:
                continue
            pos, k = target
            c = g.terms[k]
            cinv = fld.inv(c)
            rest = {kk: fld.neg(fld.mul(cc, cinv)) for kk, cc in g.terms.items() if kk != k}
            image = MPoly(ring, rest)
            name = ring.names[pos]
            eliminated[name] = image
            new_gens = []
            for gj, h in enumerate(gens):
                if gj == gi:
                    continue
                h2 = h.substitute({name: image})
                if not h2.is_zero():
                    new_gens.append(h2)
            for nm, img in list(eliminated.items()):
                if nm != name:
                    eliminated[nm] = img.substitute({name: image})
            gens = new_gens
            changed = True
            break
    return gens, eliminated


def _monic(f):
    _, lc = f.leading()
    fld = f.ring.field
    if lc == fld.one:
        return f
    return f.scale(FieldElem(fld, fld.inv(lc)))


def buchberger(ideal, budget=None):
    """Reduced Groebner basis under the ring's grevlex order."""
    import heapq

    budget = budget or DEFAULT_BUDGET
    ring = ideal.ring
    fld = ring.field
    gkey = ring.grevlex_key
    pack = ring.pack
    z = fld.zero

    def lcm_exps(a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    G = []
    lead = []  # [(lt_exps, poly)] shared view, kept in sync with G
    lts = []

    def add_poly(r):
        r = _monic(r)
        G.append(r)
        lt = r.leading()[0]
        lts.append(lt)
        lead.append((lt, r))
        return len(G) - 1

    pair_heap = []
    pending = set()

    def push_pairs(new):
        for k in range(new):
            lij = lcm_exps(lts[k], lts[new])
            heapq.heappush(pair_heap, (gkey(lij), (k, new)))
            pending.add((k, new))

    for g in sorted(ideal.generators, key=lambda f: gkey(f.leading()[0])):
        r = MPoly(ring, _reduce_terms(dict(g.terms), lead, ring, head_only=True))
        if not r.is_zero():
            idx = add_poly(r)
            push_pairs(idx)

    processed = 0
    while pair_heap:
        _, (i, j) = heapq.heappop(pair_heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        processed += 1
        if processed > budget.max_pairs:
            raise BudgetExceeded("groebner pair budget",
                                 {"pairs": processed, "basis": len(G)})
        lij = lcm_exps(lts[i], lts[j])
        # first criterion: coprime leading terms
        if all(x + y == l for x, y, l in zip(lts[i], lts[j], lij)):
            continue
        # chain criterion
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if _divides(lts[k], lij):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pending and pjk not in pending:
                    skip = True
                    break
        if skip:
            continue
        off_i = pack(tuple(a - b for a, b in zip(lij, lts[i])))
        off_j = pack(tuple(a - b for a, b in zip(lij, lts[j])))
        s_terms = _monomial_shift(G[i], ring, off_i, fld.one)
        for k, c in _monomial_shift(G[j], ring, off_j, fld.one).items():
            s = fld.sub(s_terms.get(k, z), c)
            if s == z:
                s_terms.pop(k, None)
            else:
                s_terms[k] = s
        rt = _reduce_terms(s_terms, lead, ring, head_only=True)
        if not rt:
            continue
        idx = add_poly(MPoly(ring, rt))
        if len(G) > budget.max_basis:
            raise BudgetExceeded("groebner basis-size budget",
                                 {"pairs": processed, "basis": len(G)})
        push_pairs(idx)

    return _reduce_basis(G)


def _reduce_basis(G):
    if not G:
        return []
    ring = G[0].ring
    gkey = ring.grevlex_key
    # drop generators whose leading term another leading term divides
    keep = []
    lts = [g.leading()[0] for g in G]
    for i, g in enumerate(G):
        if any(j != i and _divides(lts[j], lts[i]) and
               (not _divides(lts[i], lts[j]) or j < i) for j in range(len(G))):
            continue
        keep.append(g)
    # tail-reduce
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = normal_form(g, others)
        if not r.is_zero():
            reduced.append(_monic(r))
    reduced.sort(key=lambda g: gkey(g.leading()[0]), reverse=True)
    return reduced


def basis_is_trivial(basis):
    return len(basis) == 1 and basis[0].total_degree() == 0


def quotient_dimension(basis, ring):
    """Number of standard monomials of a zero-dimensional ideal; None if infinite."""
    lts = [g.leading()[0] for g in basis]
    n = ring.n
    bounds = []
    for i in range(n):
        pures = [lt[i] for lt in lts if all(e == 0 for j, e in enumerate(lt) if j != i)]
        if not pures:
            return None
        bounds.append(min(pures))
    count = 0
    for combo in itertools.product(*[range(b) for b in bounds]):
        if not any(_divides(lt, combo) for lt in lts):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Radical membership (Rabinowitsch)
# ---------------------------------------------------------------------------

def radical_vanishes(f, ideal, budget=None):
    """True iff f vanishes on V(ideal) over the algebraic closure."""
    ring = ideal.ring
    ext = PolyRing(ring.field, ring.names + ("w_rad",))
    gens = [g.lift_to(ext) for g in ideal.generators]
    gens.append(f.lift_to(ext) * ext.var("w_rad") - ext.one())
    basis = buchberger(Ideal(ext, gens), budget)
    return basis_is_trivial(basis)


def variety_is_empty(ideal, budget=None):
    """True iff the generators have no common zero over the algebraic closure."""
    return basis_is_trivial(buchberger(ideal, budget))


# ---------------------------------------------------------------------------
# Rational solving: field equations + certified extraction
# ---------------------------------------------------------------------------

def field_equations(ring):
    q = ring.field.q
    out = []
    for nm in ring.names:
        out.append(ring.var(nm, q) - ring.var(nm))
    return out


def solve_over_Fq(ideal, budget=None, use_groebner=True, first_only=False):
    """All F_q-rational common zeros, certified complete.

    Appends field equations, optionally runs Buchberger for extra pruning
    generators, then extracts solutions by recursive specialization with
    exhaustive root scanning (complete regardless of whether the basis
    computation finished inside budget).
    """
    budget = budget or DEFAULT_BUDGET
    ring = ideal.ring
    gens = list(ideal.generators)
    method = "backtracking"
    if use_groebner:
        try:
            basis = buchberger(Ideal(ring, gens + field_equations(ring)), budget)
            if basis_is_trivial(basis):
                return SolutionSet(ring.names, [], True, "groebner")
            gens = gens + [g for g in basis if g.max_var_exp() < ring.field.q]
            method = "groebner+backtracking"
        except BudgetExceeded:
            method = "backtracking(fallback)"
    sols = solve_system(gens, ring, budget=budget, first_only=first_only)
    out = []
    for sol in sols:
        for g in ideal.generators:
            if g.evaluate([sol[nm].raw for nm in ring.names]) != ring.field.zero:
                raise AssertionError("solver emitted a non-root")
        out.append(tuple(sol[nm] for nm in ring.names))
    complete = not first_only or not out
    return SolutionSet(ring.names, out, complete, method)


def _subst_dict(terms, pos, powers, fld):
    z = fld.zero
    mul, add = fld.mul, fld.add
    mask = ~(_MAXEXP << (_BITS * pos))
    out = {}
    for k, c in terms.items():
        e = (k >> (_BITS * pos)) & _MAXEXP
        if e:
            c = mul(c, powers[e] if e < len(powers) else fld.pow(powers[1], e))
            if c == z:
                continue
            k &= mask
        s = add(out.get(k, z), c)
        if s == z:
            out.pop(k, None)
        else:
            out[k] = s
    return out


def _support_vars(terms, n):
    seen = 0
    for k in terms:
        seen |= _support_mask(k, n)
    return seen


def _support_mask(key, n):
    m = 0
    for i in range(n):
        if (key >> (_BITS * i)) & _MAXEXP:
            m |= 1 << i
    return m


def solve_system(gens, ring, budget=None, first_only=False, branch_order=None):
    """Certified-complete search for common zeros over the ring's field.

    Recursive specialization: constants prune, univariate constraints are
    root-scanned (linear ones propagate), remaining variables branch over the
    whole field in declared order.  Works over any field context, including
    extensions, which makes it double as the witness-space search.
    """
    budget = budget or DEFAULT_BUDGET
    fld = ring.field
    n = ring.n
    z = fld.zero
    if branch_order is None:
        branch_order = list(range(n - 1, -1, -1))  # order-least variable first
    else:
        branch_order = [ring._index[nm] for nm in branch_order]

    start = []
    for g in gens:
        if g.is_zero():
            continue
        if list(g.terms) == [0]:
            return []  # nonzero constant generator
        start.append(dict(g.terms))

    solutions = []
    nodes = 0
    elements = list(fld.elements())

    def record(assign, free_positions):
        # unconstrained variables range over the whole field
        if not free_positions:
            solutions.append({ring.names[i]: FieldElem(fld, v) for i, v in assign.items()})
            return not first_only
        i = free_positions[0]
        rest = free_positions[1:]
        for v in elements:
            assign[i] = v
            if not record(assign, rest):
                del assign[i]
                return False
        del assign[i]
        return True

    def recurse(gen_dicts, assign):
        nonlocal nodes
        nodes += 1
        if nodes > budget.max_solver_nodes:
            raise BudgetExceeded("solver node budget", {"nodes": nodes})
        live = []
        for d in gen_dicts:
            if not d:
                continue
            if len(d) == 1 and 0 in d:
                return True  # nonzero constant: dead branch
            live.append(d)
        unassigned = [i for i in branch_order if i not in assign]
        if not live:
            return record(assign, unassigned)
        if not unassigned:
            return True  # cannot happen: live gens with no vars are constants
        # univariate constraint first (linear preferred)
        best = None
        for d in live:
            sup = _support_vars(d, n)
            if sup and (sup & (sup - 1)) == 0:
                pos = sup.bit_length() - 1
                deg = max((k >> (_BITS * pos)) & _MAXEXP for k in d)
                if best is None or deg < best[0]:
                    best = (deg, pos, d)
        if best is not None:
            deg, pos, d = best
            if deg == 1:
                c1 = d.get(1 << (_BITS * pos), z)
                c0 = d.get(0, z)
                roots = [fld.mul(fld.neg(c0), fld.inv(c1))]
            else:
                coeffs = [z] * (deg + 1)
                for k, c in d.items():
                    coeffs[(k >> (_BITS * pos)) & _MAXEXP] = c
                roots = sorted(univariate_roots(fld, coeffs))
            for v in roots:
                powers = [fld.one]
                for _ in range(deg):
                    powers.append(fld.mul(powers[-1], v))
                assign[pos] = v
                nxt = [_subst_dict(d2, pos, powers, fld) for d2 in live]
                if not recurse(nxt, assign):
                    del assign[pos]
                    return False
            assign.pop(pos, None)
            return True
        # branch over the whole field on the first unassigned variable
        pos = unassigned[0]
        maxdeg = 0
        for d in live:
            for k in d:
                e = (k >> (_BITS * pos)) & _MAXEXP
                if e > maxdeg:
                    maxdeg = e
        for v in elements:
            powers = [fld.one]
            for _ in range(maxdeg):
                powers.append(fld.mul(powers[-1], v))
            assign[pos] = v
            nxt = [_subst_dict(d2, pos, powers, fld) for d2 in live]
            if not recurse(nxt, assign):
                del assign[pos]
                return False
        assign.pop(pos, None)
        return True

    recurse(start, {})
    canon = sorted(solutions, key=lambda s: tuple(_raw_key(s[nm]) for nm in ring.names))
    return canon


def _raw_key(e):
    r = e.raw
    return r if isinstance(r, (int, tuple)) else tuple(r)
