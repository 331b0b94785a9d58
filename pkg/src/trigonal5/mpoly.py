"""Sparse multivariate polynomials over a field context.

Exponent vectors are packed into a single integer, 8 bits per variable
(variable 0 in the low byte), so monomial products are plain integer adds.
Coefficients are stored as raw field values; the ring carries the context.
"""

import re

from .ffield import FieldElem, elem

_BITS = 8
_MAXEXP = (1 << _BITS) - 1


class PolyError(ValueError):
    pass


class PolyRing:
    """Polynomial ring over a field context in named variables.

    The name order doubles as the grevlex precedence (first name largest).
    """

    __slots__ = ("field", "names", "n", "_index")

    def __init__(self, field, names):
        self.field = field
        self.names = tuple(names)
        self.n = len(self.names)
        self._index = {nm: i for i, nm in enumerate(self.names)}
        if len(self._index) != self.n:
            raise PolyError("duplicate variable names")

    def pack(self, exps):
        key = 0
        for i, e in enumerate(exps):
            if e < 0 or e > _MAXEXP:
                raise PolyError(f"exponent {e} out of packing range")
            key |= e << (_BITS * i)
        return key

    def unpack(self, key):
        return tuple((key >> (_BITS * i)) & _MAXEXP for i in range(self.n))

    def zero(self):
        return MPoly(self, {})

    def one(self):
        return MPoly(self, {0: self.field.one})

    def constant(self, value):
        c = elem(self.field, value).raw
        return MPoly(self, {0: c} if c != self.field.zero else {})

    def var(self, name, exp=1):
        return MPoly(self, {self.pack_single(name, exp): self.field.one})

    def pack_single(self, name, exp):
        return exp << (_BITS * self._index[name])

    def monomial(self, exps, coeff=1):
        c = elem(self.field, coeff).raw
        if c == self.field.zero:
            return self.zero()
        return MPoly(self, {self.pack(exps): c})

    def from_terms(self, terms):
        """Terms as an iterable of (exponent tuple, coefficient)."""
        d = {}
        z = self.field.zero
        for exps, c in terms:
            c = elem(self.field, c).raw
            k = self.pack(exps)
            c = self.field.add(d.get(k, z), c)
            if c == z:
                d.pop(k, None)
            else:
                d[k] = c
        return MPoly(self, d)

    def grevlex_key(self, expvec):
        return (sum(expvec), tuple(-e for e in reversed(expvec)))

    def parse(self, text):
        return _parse(self, text)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.names == other.names)

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {'/'.join(self.names)})"


class MPoly:
    """Immutable-by-convention sparse polynomial; `terms` maps packed keys to raw coeffs."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- basic structure -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        unpack = self.ring.unpack
        return max(sum(unpack(k)) for k in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        unpack = self.ring.unpack
        degs = {sum(unpack(k)) for k in self.terms}
        return len(degs) == 1

    def max_var_exp(self):
        if not self.terms:
            return 0
        unpack = self.ring.unpack
        return max(max(unpack(k)) for k in self.terms)

    def coeff(self, exps):
        """Coefficient of the given exponent vector (zero when absent)."""
        if len(exps) != self.ring.n:
            raise PolyError("exponent vector arity mismatch")
        return FieldElem(self.ring.field, self.terms.get(self.ring.pack(exps), self.ring.field.zero))

    def iter_terms(self):
        unpack = self.ring.unpack
        for k, c in self.terms.items():
            yield unpack(k), c

    def sorted_terms(self):
        key = self.ring.grevlex_key
        unpack = self.ring.unpack
        return sorted(((unpack(k), c) for k, c in self.terms.items()),
                      key=lambda t: key(t[0]), reverse=True)

    def leading(self):
        """(exponent vector, raw coeff) of the grevlex-leading term."""
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        key = self.ring.grevlex_key
        unpack = self.ring.unpack
        best = max(self.terms, key=lambda k: key(unpack(k)))
        return unpack(best), self.terms[best]

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, MPoly) or other.ring != self.ring:
            raise PolyError("ring mismatch")

    def __add__(self, other):
        self._check(other)
        fld = self.ring.field
        z = fld.zero
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        add = fld.add
        for k, c in b.items():
            s = add(out.get(k, z), c)
            if s == z:
                out.pop(k, None)
            else:
                out[k] = s
        return MPoly(self.ring, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        neg = self.ring.field.neg
        return MPoly(self.ring, {k: neg(c) for k, c in self.terms.items()})

    def scale(self, value):
        fld = self.ring.field
        c = elem(fld, value).raw
        if c == fld.zero:
            return self.ring.zero()
        mul = fld.mul
        return MPoly(self.ring, {k: mul(v, c) for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        if self.max_var_exp() + other.max_var_exp() > _MAXEXP:
            raise PolyError("product exponent exceeds packing range")
        fld = self.ring.field
        z = fld.zero
        out = {}
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if getattr(fld, "a", None) == 1:
            p = fld.p
            for k1, c1 in a.items():
                for k2, c2 in b.items():
                    k = k1 + k2
                    s = (out.get(k, 0) + c1 * c2) % p
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        else:
            mul, add = fld.mul, fld.add
            for k1, c1 in a.items():
                for k2, c2 in b.items():
                    k = k1 + k2
                    s = add(out.get(k, z), mul(c1, c2))
                    if s == z:
                        out.pop(k, None)
                    else:
                        out[k] = s
        return MPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise PolyError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- substitution -----------------------------------------------------

    def substitute(self, images):
        """Substitute polynomials (or constants) for variables, within this ring.

        `images` maps variable names to MPoly/FieldElem/int; unmapped
        variables stay themselves.
        """
        ring = self.ring
        full = []
        for nm in ring.names:
            img = images.get(nm)
            if img is None:
                full.append(ring.var(nm))
            elif isinstance(img, MPoly):
                if img.ring != ring:
                    raise PolyError("image ring mismatch")
                full.append(img)
            else:
                full.append(ring.constant(img))
        return self._subst_into(ring, full)

    def substitute_into(self, target_ring, images, coeff_map=None):
        """Ring-changing substitution: every variable needs an image in `target_ring`.

        `coeff_map` lifts raw coefficients between fields (default: identity,
        valid when both rings share one field).
        """
        full = []
        for nm in self.ring.names:
            img = images[nm]
            if not isinstance(img, MPoly):
                img = target_ring.constant(img)
            full.append(img)
        return self._subst_into(target_ring, full, coeff_map)

    def _subst_into(self, ring, images, coeff_map=None):
        out = ring.zero()
        pow_cache = [dict() for _ in images]
        for exps, c in self.iter_terms():
            term = ring.one()
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                cache = pow_cache[i]
                if e not in cache:
                    cache[e] = images[i] ** e
                term = term * cache[e]
            if coeff_map is not None:
                c = coeff_map(c)
            out = out + term.scale(FieldElem(ring.field, c))
        return out

    def pin(self, values):
        """Fast specialization of some variables to field values.

        `values` maps variable names to raw/int/FieldElem; returns a poly in
        the same ring with those variables eliminated (exponent bytes zeroed).
        """
        ring = self.ring
        fld = ring.field
        z = fld.zero
        cooked = []
        for nm, v in values.items():
            i = ring._index[nm]
            raw = elem(fld, v).raw
            powers = [fld.one]
            for _ in range(self.max_var_exp()):
                powers.append(fld.mul(powers[-1], raw))
            cooked.append((i, powers))
        out = {}
        add, mul = fld.add, fld.mul
        for k, c in self.terms.items():
            for i, powers in cooked:
                e = (k >> (_BITS * i)) & _MAXEXP
                if e:
                    c = mul(c, powers[e])
                    k &= ~(_MAXEXP << (_BITS * i))
            if c == z:
                continue
            s = add(out.get(k, z), c)
            if s == z:
                out.pop(k, None)
            else:
                out[k] = s
        return MPoly(ring, out)

    def evaluate(self, point):
        """Full evaluation at a tuple of raw/int/FieldElem values; returns raw."""
        fld = self.ring.field
        vals = [elem(fld, v).raw for v in point]
        acc = fld.zero
        for exps, c in self.iter_terms():
            t = c
            for v, e in zip(vals, exps):
                if e:
                    t = fld.mul(t, fld.pow(v, e))
            acc = fld.add(acc, t)
        return acc

    def derivative(self, name):
        ring = self.ring
        fld = ring.field
        i = ring._index[name]
        z = fld.zero
        out = {}
        for k, c in self.terms.items():
            e = (k >> (_BITS * i)) & _MAXEXP
            if e == 0:
                continue
            c2 = fld.mul(c, fld.from_int(e))
            if c2 == z:
                continue
            k2 = k - (1 << (_BITS * i))
            s = fld.add(out.get(k2, z), c2)
            if s == z:
                out.pop(k2, None)
            else:
                out[k2] = s
        return MPoly(ring, out)

    def restrict_to(self, subring, positions=None):
        """Reinterpret in a ring on a subset of variables (others must not occur)."""
        if positions is None:
            positions = [self.ring._index[nm] for nm in subring.names]
        out = {}
        for exps, c in self.iter_terms():
            used = [i for i, e in enumerate(exps) if e]
            if any(i not in positions for i in used):
                raise PolyError("polynomial involves variables outside the subring")
            out[subring.pack(tuple(exps[i] for i in positions))] = c
        return MPoly(subring, out)

    def lift_to(self, superring, coeff_map=None):
        """Reinterpret in a ring containing this ring's variables by name."""
        pos = [superring._index[nm] for nm in self.ring.names]
        out = {}
        for exps, c in self.iter_terms():
            key = 0
            for i, e in zip(pos, exps):
                key |= e << (_BITS * i)
            out[key] = c if coeff_map is None else coeff_map(c)
        return MPoly(superring, out)

    def split_by(self, front_names, front_ring, rest_ring):
        """Group terms by the exponents of `front_names`.

        Returns {front exponent tuple: MPoly in rest_ring}; the classic use
        splits a mixed geometry/unknowns polynomial into coefficient
        polynomials per geometric monomial.
        """
        ring = self.ring
        fpos = [ring._index[nm] for nm in front_names]
        rpos = [ring._index[nm] for nm in rest_ring.names]
        groups = {}
        for exps, c in self.iter_terms():
            fkey = tuple(exps[i] for i in fpos)
            rkey = rest_ring.pack(tuple(exps[i] for i in rpos))
            groups.setdefault(fkey, {})[rkey] = c
        return {fk: MPoly(rest_ring, d) for fk, d in groups.items()}

    # -- text -------------------------------------------------------------

    def __repr__(self):
        return poly_to_text(self)


def poly_to_text(f: MPoly) -> str:
    if not f.terms:
        return "0"
    fld = f.ring.field
    parts = []
    for exps, c in f.sorted_terms():
        cs = fld.elem_str(c)
        if any(ch in cs for ch in "+-") and len(cs) > 1:
            cs = f"({cs})"
        factors = []
        for nm, e in zip(f.ring.names, exps):
            if e == 1:
                factors.append(nm)
            elif e > 1:
                factors.append(f"{nm}^{e}")
        if not factors:
            parts.append(cs)
        elif cs == "1":
            parts.append("*".join(factors))
        else:
            parts.append(cs + "*" + "*".join(factors))
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+|\*\*|[()^+\-*])")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolyError(f"bad character in polynomial text at {text[pos:]!r}")
        tok = m.group(1)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


def _parse(ring, text):
    """Recursive-descent parser for the +,-,*,^ grammar with parentheses."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_expr():
        node = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term():
        node = parse_power()
        while peek() == "*":
            take()
            node = node * parse_power()
        return node

    def parse_power():
        base = parse_atom()
        if peek() == "^":
            take()
            tok = take()
            if not tok.isdigit():
                raise PolyError("exponent must be a nonnegative integer")
            return base ** int(tok)
        return base

    def parse_atom():
        tok = peek()
        if tok is None:
            raise PolyError("unexpected end of polynomial text")
        if tok == "(":
            take()
            node = parse_expr()
            if peek() != ")":
                raise PolyError("unbalanced parentheses")
            take()
            return node
        if tok == "-":
            take()
            return -parse_atom()
        if tok == "+":
            take()
            return parse_atom()
        take()
        if tok.isdigit():
            return ring.constant(int(tok))
        if tok in ring._index:
            return ring.var(tok)
        if tok == "s" and getattr(ring.field, "a", 1) == 2:
            return ring.constant(FieldElem(ring.field, ring.field.encode((0, 1))))
        if tok == "t" and hasattr(ring.field, "gen"):
            return ring.constant(FieldElem(ring.field, ring.field.gen()))
        raise PolyError(f"unknown symbol {tok!r}")

    node = parse_expr()
    if pos != len(tokens):
        raise PolyError(f"trailing tokens in polynomial text: {tokens[pos:]}")
    return node
