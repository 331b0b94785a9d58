"""Exact arithmetic in small finite fields F_p and F_{p^2}, plus their extensions.

Elements are stored as small integer encodings (prime fields: the residue;
quadratic fields: c0 + p*c1 for c0 + c1*t).  Extension fields of a base field
use coefficient tuples.  All contexts are immutable and hashable.
"""

import itertools

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in _SMALL_PRIMES:
        if n % d == 0:
            return n == d
    d = 49
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FieldError(ValueError):
    pass


class FieldCtx:
    """Descriptor of F_q with q = p^a, a in {1, 2}; carries a primitive element.

    Raw encoding: integers in [0, q).  For a = 2 an element c0 + c1*t is
    encoded as c0 + p*c1, where t is a root of the (irreducible, monic)
    modulus t^2 + m1*t + m0.
    """

    __slots__ = ("p", "a", "q", "modulus", "zeta", "_mul_table", "_inv_table", "_t_sq")

    def __init__(self, p, a=1, modulus=None, zeta=None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p < 5:
            raise FieldError("characteristic must be at least 5")
        if a not in (1, 2):
            raise FieldError("extension degree must be 1 or 2")
        self.p = p
        self.a = a
        self.q = p ** a
        if a == 1:
            if modulus is not None:
                raise FieldError("prime field takes no modulus")
            self.modulus = None
            self._t_sq = None
            self._mul_table = None
        else:
            if modulus is None:
                modulus = _default_quadratic_modulus(p)
            m0, m1 = modulus[0] % p, modulus[1] % p
            # irreducible over F_p <=> no root among the p candidates
            for r in range(p):
                if (r * r + m1 * r + m0) % p == 0:
                    raise FieldError(f"modulus t^2+{m1}t+{m0} is reducible mod {p}")
            self.modulus = (m0, m1)
            self._t_sq = ((-m0) % p, (-m1) % p)  # t^2 = t_sq[0] + t_sq[1]*t
            self._mul_table = self._build_mul_table()
        self._inv_table = None
        if zeta is None:
            zeta = self._find_primitive()
        self._check_primitive(zeta)
        self.zeta = zeta

    # -- raw arithmetic ------------------------------------------------

    def add(self, u, v):
        p = self.p
        if self.a == 1:
            return (u + v) % p
        return (u % p + v % p) % p + p * ((u // p + v // p) % p)

    def sub(self, u, v):
        p = self.p
        if self.a == 1:
            return (u - v) % p
        return (u % p - v % p) % p + p * ((u // p - v // p) % p)

    def neg(self, u):
        p = self.p
        if self.a == 1:
            return (-u) % p
        return (-u % p) % p + p * ((-(u // p)) % p)

    def mul(self, u, v):
        if self.a == 1:
            return (u * v) % self.p
        return self._mul_table[u][v]

    def inv(self, u):
        if u == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.a == 1:
            return pow(u, self.p - 2, self.p)
        if self._inv_table is None:
            self._inv_table = [0] * self.q
            for w in range(1, self.q):
                self._inv_table[w] = self.pow(w, self.q - 2)
        return self._inv_table[u]

    def pow(self, u, e):
        if e < 0:
            return self.pow(self.inv(u), -e)
        if self.a == 1:
            return pow(u, e, self.p)
        r, b = 1, u
        while e:
            if e & 1:
                r = self._mul_table[r][b]
            b = self._mul_table[b][b]
            e >>= 1
        return r

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def _build_mul_table(self):
        p = self.p
        s0, s1 = self._t_sq
        table = []
        for u in range(self.q):
            u0, u1 = u % p, u // p
            row = []
            for v in range(self.q):
                v0, v1 = v % p, v // p
                c = u1 * v1
                r0 = (u0 * v0 + c * s0) % p
                r1 = (u0 * v1 + u1 * v0 + c * s1) % p
                row.append(r0 + p * r1)
            table.append(row)
        return table

    # -- structure -----------------------------------------------------

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def encode(self, coords):
        """Raw value from residue coordinates (c0,) or (c0, c1)."""
        if self.a == 1:
            return coords[0] % self.p
        return coords[0] % self.p + self.p * (coords[1] % self.p)

    def coords(self, u):
        if self.a == 1:
            return (u,)
        return (u % self.p, u // self.p)

    def from_int(self, n):
        """Embed an ordinary integer (the image of n*1)."""
        return n % self.p

    def is_square(self, u):
        if u == 0:
            return True
        return self.pow(u, (self.q - 1) // 2) == 1

    def frob(self, u):
        """Absolute Frobenius x -> x^p."""
        return self.pow(u, self.p)

    def _find_primitive(self):
        if self.p == 7 and self.a == 2 and self.modulus == (1, 0):
            # canonical F_49 = F_7[t]/(t^2 - 6): take -3 - t
            return self.encode((-3, -1))
        for u in range(2, self.q):
            if self._has_full_order(u):
                return u
        raise FieldError("no primitive element found")

    def _multiplicative_order_factors(self):
        n = self.q - 1
        fs = []
        d = 2
        while d * d <= n:
            if n % d == 0:
                fs.append(d)
                while n % d == 0:
                    n //= d
            d += 1
        if n > 1:
            fs.append(n)
        return fs

    def _has_full_order(self, u):
        n = self.q - 1
        return all(self.pow(u, n // r) != 1 for r in self._multiplicative_order_factors())

    def _check_primitive(self, u):
        if u == 0 or self.pow(u, self.q - 1) != 1 or not self._has_full_order(u):
            raise FieldError("given zeta is not a primitive element")

    # -- text / descriptors ---------------------------------------------

    def elem_str(self, u):
        if self.a == 1:
            return str(u)
        c0, c1 = self.coords(u)
        if c1 == 0:
            return str(c0)
        if c0 == 0:
            return f"{c1}*s" if c1 != 1 else "s"
        return f"{c0}+{c1}*s" if c1 != 1 else f"{c0}+s"

    def parse_elem(self, text):
        text = text.replace(" ", "")
        if self.a == 1:
            return int(text) % self.p
        c0, c1 = 0, 0
        for piece in text.replace("-", "+-").split("+"):
            if not piece:
                continue
            if piece.endswith("*s"):
                c1 += int(piece[:-2])
            elif piece == "s":
                c1 += 1
            elif piece == "-s":
                c1 -= 1
            else:
                c0 += int(piece)
        return self.encode((c0, c1))

    def descriptor(self):
        d = {"p": self.p, "a": self.a, "zeta": list(self.coords(self.zeta))}
        if self.a == 2:
            d["modulus"] = [self.modulus[0], self.modulus[1], 1]
        return d

    @staticmethod
    def from_descriptor(d):
        mod = d.get("modulus")
        ctx = FieldCtx(d["p"], d["a"], (mod[0], mod[1]) if mod else None)
        zeta = ctx.encode(tuple(d["zeta"]))
        if zeta != ctx.zeta:
            ctx = FieldCtx(d["p"], d["a"], (mod[0], mod[1]) if mod else None, zeta=zeta)
        return ctx

    def __repr__(self):
        if self.a == 1:
            return f"F_{self.p}"
        return f"F_{self.q}(t^2+{self.modulus[1]}t+{self.modulus[0]})"

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.p == other.p and self.a == other.a
                and self.modulus == other.modulus and self.zeta == other.zeta)

    def __hash__(self):
        return hash((self.p, self.a, self.modulus, self.zeta))


def _default_quadratic_modulus(p):
    if p == 7:
        return (1, 0)  # t^2 - 6
    for c in range(2, p):
        if pow(c, (p - 1) // 2, p) == p - 1:
            return ((-c) % p, 0)
    raise FieldError("no quadratic nonresidue found")


def make_field(p, a=1, modulus=None):
    """Build F_{p^a} (a in {1,2}) with a verified primitive element."""
    return FieldCtx(p, a, modulus)


# ---------------------------------------------------------------------------
# Extensions of a base context (used for sqrt(eps), point counts, witnesses).
# ---------------------------------------------------------------------------

class ExtField:
    """F_{q^s} presented as base[t]/(modulus), raw elements = coeff tuples."""

    __slots__ = ("base", "s", "modulus", "q", "zero", "one", "_redrow")

    def __init__(self, base, modulus):
        # modulus: tuple of s base-raws, the low coefficients of a monic
        # degree-s polynomial t^s + m_{s-1} t^{s-1} + ... + m_0
        self.base = base
        self.s = len(modulus)
        self.modulus = tuple(modulus)
        self.q = base.q ** self.s
        self.zero = (base.zero,) * self.s
        one = [base.zero] * self.s
        one[0] = base.one
        self.one = tuple(one)
        self._redrow = tuple(base.neg(m) for m in modulus)  # t^s = sum redrow[i] t^i
        if not _is_irreducible(base, list(modulus) + [base.one]):
            raise FieldError("extension modulus is reducible")

    @property
    def p(self):
        return self.base.p

    def add(self, u, v):
        b = self.base
        return tuple(b.add(x, y) for x, y in zip(u, v))

    def sub(self, u, v):
        b = self.base
        return tuple(b.sub(x, y) for x, y in zip(u, v))

    def neg(self, u):
        b = self.base
        return tuple(b.neg(x) for x in u)

    def mul(self, u, v):
        b, s = self.base, self.s
        acc = [b.zero] * (2 * s - 1)
        for i, x in enumerate(u):
            if x == b.zero:
                continue
            for j, y in enumerate(v):
                if y != b.zero:
                    acc[i + j] = b.add(acc[i + j], b.mul(x, y))
        red = self._redrow
        for k in range(2 * s - 2, s - 1, -1):
            c = acc[k]
            if c != b.zero:
                acc[k] = b.zero
                for i, r in enumerate(red):
                    if r != b.zero:
                        acc[k - s + i] = b.add(acc[k - s + i], b.mul(c, r))
        return tuple(acc[:s])

    def inv(self, u):
        if u == self.zero:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(u, self.q - 2)

    def pow(self, u, e):
        if e < 0:
            return self.pow(self.inv(u), -e)
        r, b = self.one, u
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def lift(self, u):
        """Embed a base-field raw as a constant."""
        t = [self.base.zero] * self.s
        t[0] = u
        return tuple(t)

    def gen(self):
        """The adjoined root t."""
        t = [self.base.zero] * self.s
        t[1] = self.base.one
        return tuple(t)

    def in_base(self, u):
        return all(c == self.base.zero for c in u[1:])

    def to_base(self, u):
        if not self.in_base(u):
            raise FieldError("element does not lie in the base field")
        return u[0]

    def from_int(self, n):
        return self.lift(self.base.from_int(n))

    def elements(self):
        for combo in itertools.product(self.base.elements(), repeat=self.s):
            yield combo

    def units(self):
        for u in self.elements():
            if u != self.zero:
                yield u

    def encode_index(self, idx):
        """Element from an integer index (mixed-radix over base encodings)."""
        digs = []
        for _ in range(self.s):
            digs.append(idx % self.base.q)
            idx //= self.base.q
        return tuple(digs)

    def is_square(self, u):
        if u == self.zero:
            return True
        return self.pow(u, (self.q - 1) // 2) == self.one

    def elem_str(self, u):
        parts = []
        for i, c in enumerate(u):
            if c == self.base.zero:
                continue
            cs = self.base.elem_str(c)
            if "+" in cs or "-" in cs:
                cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            else:
                tpow = "t" if i == 1 else f"t^{i}"
                parts.append(tpow if cs == "1" else f"{cs}*{tpow}")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"Ext({self.base!r}, deg {self.s})"

    def __eq__(self, other):
        return (isinstance(other, ExtField) and self.base == other.base
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.base, self.modulus))


# --- univariate helpers over an arbitrary context (lists, low to high) -----

def _poly_trim(f, zero):
    while f and f[-1] == zero:
        f.pop()
    return f

def _poly_mulmod(field, f, g, m):
    z = field.zero
    acc = [z] * (len(f) + len(g) - 1) if f and g else []
    for i, x in enumerate(f):
        if x == z:
            continue
        for j, y in enumerate(g):
            if y != z:
                acc[i + j] = field.add(acc[i + j], field.mul(x, y))
    return _poly_divmod(field, acc, m)[1]

def _poly_divmod(field, f, g):
    z = field.zero
    f = list(f)
    _poly_trim(f, z)
    g = list(g)
    _poly_trim(g, z)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    ginv = field.inv(g[-1])
    quo = [z] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g):
        c = field.mul(f[-1], ginv)
        d = len(f) - len(g)
        quo[d] = c
        for i, gc in enumerate(g):
            f[d + i] = field.sub(f[d + i], field.mul(c, gc))
        _poly_trim(f, z)
    return quo, f

def _poly_gcd(field, f, g):
    z = field.zero
    f, g = list(f), list(g)
    _poly_trim(f, z)
    _poly_trim(g, z)
    while g:
        f, g = g, _poly_divmod(field, f, g)[1]
    if f:
        c = field.inv(f[-1])
        f = [field.mul(c, x) for x in f]
    return f

def _poly_powmod_x(field, e, m):
    """x^e mod m."""
    z, o = field.zero, field.one
    r = [o]
    b = _poly_divmod(field, [z, o], m)[1]
    while e:
        if e & 1:
            r = _poly_mulmod(field, r, b, m)
        b = _poly_mulmod(field, b, b, m)
        e >>= 1
    return r

def _poly_powmod(field, f, e, m):
    r = [field.one]
    b = _poly_divmod(field, f, m)[1]
    while e:
        if e & 1:
            r = _poly_mulmod(field, r, b, m)
        b = _poly_mulmod(field, b, b, m)
        e >>= 1
    return r

def _is_irreducible(field, f):
    """Monic f over `field` irreducible (degree >= 1)."""
    z, o = field.zero, field.one
    n = len(f) - 1
    if n < 1:
        return False
    xq = _poly_powmod_x(field, field.q ** n, f)
    if _poly_trim([field.sub(a, b) for a, b in
                   itertools.zip_longest(xq, [z, o], fillvalue=z)], z):
        return False
    for r in _distinct_prime_factors(n):
        xqk = _poly_powmod_x(field, field.q ** (n // r), f)
        diff = [field.sub(a, b) for a, b in
                itertools.zip_longest(xqk, [z, o], fillvalue=z)]
        if len(_poly_gcd(field, diff, f)) > 1:
            return False
    return True

def _distinct_prime_factors(n):
    fs = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            fs.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        fs.append(n)
    return fs


def find_irreducible(base, s):
    """Deterministic monic irreducible of degree s over `base` (smallest encoding)."""
    one = base.one
    if s == 1:
        return (base.zero,)
    # prefer t^s - c when available
    for c in base.elements():
        cand = [base.neg(c)] + [base.zero] * (s - 1) + [one]
        if c != base.zero and _is_irreducible(base, cand):
            return tuple(cand[:-1])
    for combo in itertools.product(base.elements(), repeat=s):
        cand = list(combo) + [one]
        if _is_irreducible(base, cand):
            return tuple(combo)
    raise FieldError("no irreducible modulus found")


def extension(ctx, s):
    """F_{q^s} over ctx with a deterministic modulus choice."""
    if s == 1:
        return ctx
    return ExtField(ctx, find_irreducible(ctx, s))


def univariate_roots(field, coeffs):
    """All roots in `field` of the univariate poly given by low-to-high coeffs.

    Scans small fields directly; for larger ones splits the radical
    gcd(f, x^q - x) with a deterministic shift sequence.
    """
    z = field.zero
    f = _poly_trim(list(coeffs), z)
    if not f:
        raise FieldError("root-finding on the zero polynomial")
    if len(f) == 1:
        return []
    if field.q <= 4096:
        roots = []
        for v in field.elements():
            acc = z
            for c in reversed(f):
                acc = field.add(field.mul(acc, v), c)
            if acc == z:
                roots.append(v)
        return roots
    # radical part with all roots rational
    xq = _poly_powmod_x(field, field.q, f)
    o = field.one
    diff = [field.sub(a, b) for a, b in
            itertools.zip_longest(xq, [z, o], fillvalue=z)]
    g = _poly_gcd(field, diff, f)
    roots = []
    _split_linear(field, g, roots)
    return roots


def _split_linear(field, g, out):
    z, o = field.zero, field.one
    while True:
        if len(g) <= 1:
            return
        if len(g) == 2:
            out.append(field.neg(g[0]))  # monic x + g0
            return
        # deterministic shifts delta: (x+delta)^((q-1)/2) - 1 splits distinct roots
        for delta in field.elements():
            h = _poly_powmod(field, [delta, o], (field.q - 1) // 2, g)
            h = list(h)
            if h:
                h[0] = field.sub(h[0], o)
            else:
                h = [field.neg(o)]
            d = _poly_gcd(field, h, g)
            if 1 < len(d) < len(g):
                _split_linear(field, d, out)
                g = _poly_divmod(field, g, d)[0]
                break
        else:
            raise FieldError("failed to split a squarefree product of linears")


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

class FieldElem:
    """Immutable wrapper pairing a field context with a raw value."""

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, *a):
        raise AttributeError("FieldElem is immutable")

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldError("field mismatch")
            return other.raw
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        r = self._coerce(other)
        return FieldElem(self.field, self.field.add(self.raw, r))

    __radd__ = __add__

    def __sub__(self, other):
        r = self._coerce(other)
        return FieldElem(self.field, self.field.sub(self.raw, r))

    def __rsub__(self, other):
        r = self._coerce(other)
        return FieldElem(self.field, self.field.sub(r, self.raw))

    def __mul__(self, other):
        r = self._coerce(other)
        return FieldElem(self.field, self.field.mul(self.raw, r))

    __rmul__ = __mul__

    def __truediv__(self, other):
        r = self._coerce(other)
        return FieldElem(self.field, self.field.mul(self.raw, self.field.inv(r)))

    def __rtruediv__(self, other):
        r = self._coerce(other)
        return FieldElem(self.field, self.field.mul(r, self.field.inv(self.raw)))

    def __pow__(self, e):
        return FieldElem(self.field, self.field.pow(self.raw, e))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.raw))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.raw == self.field.from_int(other)
        return (isinstance(other, FieldElem) and self.field == other.field
                and self.raw == other.raw)

    def __hash__(self):
        return hash((id(self.field.__class__), self.field.q, self.raw))

    def __bool__(self):
        return self.raw != self.field.zero

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.raw))

    def is_square(self):
        return self.field.is_square(self.raw)

    def __repr__(self):
        return self.field.elem_str(self.raw)


def elem(field, value):
    """FieldElem from an int, coordinate tuple, or raw passthrough."""
    if isinstance(value, FieldElem):
        return value
    if isinstance(value, int):
        return FieldElem(field, field.from_int(value))
    return FieldElem(field, value)


# ---------------------------------------------------------------------------
# Representative computations backing the normal-form reductions
# ---------------------------------------------------------------------------

def primitive_element(ctx) -> FieldElem:
    return FieldElem(ctx, ctx.zeta)


def nonsquare(ctx) -> FieldElem:
    """Canonical non-square: least integer non-residue for prime fields,
    zeta for quadratic ones."""
    if ctx.a == 1:
        for n in range(2, ctx.p):
            if not ctx.is_square(n):
                return FieldElem(ctx, n)
        raise FieldError("no nonsquare (is q even?)")
    return FieldElem(ctx, ctx.zeta)


def sqrt_eps(ctx, eps) -> FieldElem:
    """A square root of eps inside the quadratic extension F_{q^2} = F_q[t]/(t^2-eps)."""
    e = elem(ctx, eps).raw
    if ctx.is_square(e):
        raise FieldError("eps is a square; no quadratic extension needed")
    ext = ExtField(ctx, (ctx.neg(e), ctx.zero))
    return FieldElem(ext, ext.gen())


def cube_class_reps(ctx):
    """Coset representatives of F_q^x modulo cubes: [1] or [1, zeta, zeta^2]."""
    if (ctx.q - 1) % 3 != 0:
        return [FieldElem(ctx, ctx.one)]
    z = ctx.zeta
    return [FieldElem(ctx, ctx.one), FieldElem(ctx, z), FieldElem(ctx, ctx.mul(z, z))]


def nonsplit_b_reps(ctx):
    """Admissible b-values of the non-split node normal form.

    For q = -1 mod 3 the lines spanned by (1, b) fall into three classes
    under the cube subgroup of the nonsplit torus acting on the weight-3
    summand of binary cubics; we return 0 for the base class and the
    largest residue of each remaining class (reproducing the published
    tables).  Otherwise the reduction leaves only b = 0.
    """
    if ctx.q % 3 != 2:
        return [FieldElem(ctx, ctx.zero)]
    eps = nonsquare(ctx).raw
    ext = ExtField(ctx, (ctx.neg(eps), ctx.zero))
    classes = _b_line_classes(ctx, ext, eps)
    reps = []
    for cl in classes:
        finite = [b for b in cl if b is not None]
        if ctx.zero in finite:
            reps.append(ctx.zero)
        else:
            reps.append(max(finite))
    return [FieldElem(ctx, b) for b in sorted(reps)]


def _b_line_classes(ctx, ext, eps):
    """Partition of P^1 lines (1,b) / (0,1) under the cube torus action."""
    cubes = {ext.pow(u, 3) for u in ext.units()}

    def line(v0, v1):
        if v0 != ctx.zero:
            return ctx.mul(v1, ctx.inv(v0))
        return None  # the (0,1) direction

    def act(alpha, b):
        r, s = alpha  # alpha = r + s*sqrt(eps) acts via [[r, eps*s], [s, r]]
        if b is None:
            v = (ctx.mul(eps, s), r)
        else:
            v = (ctx.add(r, ctx.mul(ctx.mul(eps, s), b)), ctx.add(s, ctx.mul(r, b)))
        return line(*v)

    classes = []
    seen = set()
    for b in list(ctx.elements()) + [None]:
        if b in seen:
            continue
        orbit = {act(alpha, b) for alpha in cubes}
        seen |= orbit
        classes.append(orbit)
    return classes
