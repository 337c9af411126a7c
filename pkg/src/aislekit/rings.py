"""Exact polynomial rings, ideals and the Groebner layer.

Coefficients are either arbitrary-precision rationals (``fractions.Fraction``
in lowest terms) or canonical residues of a prime field.  The monomial order
is fixed to degree-reverse-lexicographic over the declared variable sequence,
so reduced bases and every serialized output are reproducible bit for bit.
"""

import re
import threading
from fractions import Fraction
from math import gcd, lcm

from . import engine
from .errors import ParseError, PreconditionError, RingMismatchError


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """The rationals or a prime field GF(p)."""

    __slots__ = ("char",)

    def __init__(self, char=0):
        if char != 0 and not _is_prime(char):
            raise PreconditionError("field characteristic must be 0 or prime, got %r" % char)
        self.char = char

    @staticmethod
    def rationals():
        return Field(0)

    @staticmethod
    def prime_field(p):
        return Field(p)

    @property
    def is_rationals(self):
        return self.char == 0

    def coerce(self, value):
        """Canonical coefficient from an int, Fraction or coefficient."""
        if self.char:
            if isinstance(value, Fraction):
                if value.denominator % self.char == 0:
                    raise ZeroDivisionError("denominator divisible by %d" % self.char)
                return (
                    value.numerator
                    * pow(value.denominator, self.char - 2, self.char)
                ) % self.char
            return int(value) % self.char
        if isinstance(value, Fraction):
            return value
        return Fraction(value)

    def str_coeff(self, c):
        if self.char:
            return str(c)
        if c.denominator == 1:
            return str(c.numerator)
        return "%d/%d" % (c.numerator, c.denominator)

    def __eq__(self, other):
        return isinstance(other, Field) and self.char == other.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return "QQ" if self.char == 0 else "GF(%d)" % self.char


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


class PolyRing:
    """Multivariate polynomial ring with the fixed degrevlex order."""

    __slots__ = ("field", "vars", "nvars", "_index", "zero", "one")

    def __init__(self, field, variables):
        variables = tuple(variables)
        if not variables:
            raise PreconditionError("a polynomial ring needs at least one variable")
        seen = set()
        for v in variables:
            if not _NAME_RE.match(v):
                raise PreconditionError("bad variable name %r" % v)
            if v in seen:
                raise PreconditionError("duplicate variable name %r" % v)
            seen.add(v)
        self.field = field
        self.vars = variables
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}
        self.zero = Poly(self, ())
        one = self.field.coerce(1)
        self.one = Poly(self, (((0,) * self.nvars, one),))

    @property
    def mod(self):
        return self.field.char

    def var(self, name):
        try:
            i = self._index[name]
        except KeyError:
            raise PreconditionError("unknown variable %r" % name) from None
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, ((mono, self.field.coerce(1)),))

    def gens(self):
        return [self.var(v) for v in self.vars]

    def constant(self, value):
        c = self.field.coerce(value)
        if not c:
            return self.zero
        return Poly(self, (((0,) * self.nvars, c),))

    def monomial(self, exponents, coeff=1):
        exponents = tuple(exponents)
        if len(exponents) != self.nvars or any(e < 0 for e in exponents):
            raise PreconditionError("bad exponent vector %r" % (exponents,))
        c = self.field.coerce(coeff)
        if not c:
            return self.zero
        return Poly(self, ((exponents, c),))

    def poly(self, term_map):
        """Polynomial from {exponent tuple: coefficient}."""
        terms = {}
        for mono, c in term_map.items():
            mono = tuple(mono)
            c = self.field.coerce(c)
            if c:
                terms[mono] = terms.get(mono, self.field.coerce(0)) + c
        return Poly(self, _sorted_terms(terms, self.field))

    def parse(self, text):
        return parse_poly(self, text)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.vars == other.vars
        )

    def __hash__(self):
        return hash((self.field, self.vars))

    def __repr__(self):
        return "%r[%s]" % (self.field, ",".join(self.vars))


def _sorted_terms(term_map, field):
    items = [(m, c) for m, c in term_map.items() if c]
    items.sort(key=lambda t: engine.kernel.order_key(0, t[0]), reverse=True)
    return tuple(items)


def same_ring(a, b):
    if a.ring != b.ring:
        raise RingMismatchError("operands live over different rings")


class Poly:
    """Immutable polynomial: terms sorted strictly descending in degrevlex."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- queries ------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and sum(self.terms[0][0]) == 0)

    def is_unit(self):
        return len(self.terms) == 1 and sum(self.terms[0][0]) == 0

    def lead_monomial(self):
        return self.terms[0][0]

    def lead_coeff(self):
        return self.terms[0][1]

    def constant_coeff(self):
        if self.terms and sum(self.terms[-1][0]) == 0:
            return self.terms[-1][1]
        return self.ring.field.coerce(0)

    def total_degree(self):
        """-1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m, _ in self.terms)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        same_ring(self, other)
        acc = dict(self.terms)
        zero = self.ring.field.coerce(0)
        for m, c in other.terms:
            s = acc.get(m, zero) + c
            if self.ring.mod:
                s %= self.ring.mod
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return Poly(self.ring, _sorted_terms(acc, self.ring.field))

    def __neg__(self):
        if self.ring.mod:
            p = self.ring.mod
            return Poly(self.ring, tuple((m, (-c) % p) for m, c in self.terms))
        return Poly(self.ring, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        same_ring(self, other)
        if not self.terms or not other.terms:
            return self.ring.zero
        mod = self.ring.mod
        acc = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = engine.kernel.mono_mul(m1, m2)
                c = acc.get(m, 0) + c1 * c2
                acc[m] = c % mod if mod else c
        return Poly(self.ring, _sorted_terms(acc, self.ring.field))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __pow__(self, n):
        if n < 0:
            raise PreconditionError("negative polynomial power")
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return self.ring.constant(other)

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.terms))

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return "<%s>" % poly_str(self)


# ---------------------------------------------------------------------------
# serialization


def poly_str(p):
    if not p.terms:
        return "0"
    field = p.ring.field
    parts = []
    for i, (mono, coeff) in enumerate(p.terms):
        neg = field.char == 0 and coeff < 0
        mag = -coeff if neg else coeff
        factors = []
        cstr = field.str_coeff(mag)
        if sum(mono) == 0 or cstr != "1":
            factors.append(cstr)
        for name, e in zip(p.ring.vars, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append("%s^%d" % (name, e))
        body = "*".join(factors)
        if i == 0:
            parts.append("-" + body if neg else body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            bad = pos
            while text[bad].isspace():
                bad += 1
            raise ParseError(
                "unexpected character %r" % text[bad],
                line=1 + text.count("\n", 0, bad),
                column=bad - text.rfind("\n", 0, bad),
            )
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def parse_poly(ring, text):
    """Parse the ASCII syntax: terms joined by +/-, factors by optional '*',
    powers with '^', rational coefficients as 'a/b'."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text")
    n = len(tokens)
    i = 0
    result = ring.zero

    def fail(msg, idx):
        offset = tokens[idx][2] if idx < n else len(text)
        raise ParseError(msg, line=1 + text.count("\n", 0, offset),
                         column=offset - text.rfind("\n", 0, offset))

    while i < n:
        sign = 1
        while i < n and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        if i >= n:
            fail("dangling sign", i)
        coeff = Fraction(sign)
        mono = [0] * ring.nvars
        saw_factor = False
        expect_factor = True
        while i < n:
            kind, val, off = tokens[i]
            if kind == "op" and val in "+-":
                break
            if kind == "op" and val == "*":
                if not saw_factor:
                    fail("misplaced '*'", i)
                i += 1
                expect_factor = True
                continue
            if kind == "num":
                num = int(val)
                i += 1
                if i < n and tokens[i][0] == "op" and tokens[i][1] == "/":
                    i += 1
                    if i >= n or tokens[i][0] != "num":
                        fail("expected denominator", i)
                    den = int(tokens[i][1])
                    if den == 0:
                        fail("zero denominator", i - 1)
                    coeff *= Fraction(num, den)
                    i += 1
                else:
                    coeff *= num
                saw_factor = True
                expect_factor = False
                continue
            if kind == "name":
                if val not in ring._index:
                    fail("unknown variable %r" % val, i)
                idx = ring._index[val]
                i += 1
                e = 1
                if i < n and tokens[i][0] == "op" and tokens[i][1] == "^":
                    i += 1
                    if i >= n or tokens[i][0] != "num":
                        fail("expected exponent", i)
                    e = int(tokens[i][1])
                    i += 1
                mono[idx] += e
                saw_factor = True
                expect_factor = False
                continue
            fail("unexpected token %r" % val, i)
        if not saw_factor:
            fail("empty term", i)
        result = result + ring.monomial(mono, ring.field.coerce(coeff))
    return result


# ---------------------------------------------------------------------------
# kernel conversions


def poly_to_vec(p, pos=0):
    """Kernel terms of a polynomial at the given position, cleared to
    integers.  Returns ``(terms, scale)`` with ``p == scale * terms``."""
    if not p.terms:
        return [], Fraction(1)
    if p.ring.mod:
        return [(pos, m, c) for m, c in p.terms], Fraction(1)
    den = 1
    for _, c in p.terms:
        den = lcm(den, c.denominator)
    ints = [c.numerator * (den // c.denominator) for _, c in p.terms]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if ints[0] < 0:
        g = -g
    return (
        [(pos, m, v // g) for (m, _), v in zip(p.terms, ints)],
        Fraction(g, den),
    )


def column_to_vec(entries):
    """Kernel vector for a column of polynomials (entry i at position i)."""
    ring = entries[0].ring if entries else None
    terms = []
    if ring is not None and ring.mod:
        for i, p in enumerate(entries):
            terms.extend((i, m, c) for m, c in p.terms)
        terms.sort(key=lambda t: engine.kernel.order_key(t[0], t[1]), reverse=True)
        return terms, Fraction(1)
    den = 1
    for p in entries:
        for _, c in p.terms:
            den = lcm(den, c.denominator)
    g = 0
    ints = []
    for i, p in enumerate(entries):
        for m, c in p.terms:
            v = c.numerator * (den // c.denominator)
            ints.append((i, m, v))
            g = gcd(g, v)
    if not ints:
        return [], Fraction(1)
    ints.sort(key=lambda t: engine.kernel.order_key(t[0], t[1]), reverse=True)
    if ints[0][2] < 0:
        g = -g
    return [(i, m, v // g) for i, m, v in ints], Fraction(g, den)


def vec_to_polys(vec, nrows, ring, scale=Fraction(1)):
    """Back-conversion: kernel vector to a column of ``nrows`` polynomials."""
    per_row = [{} for _ in range(nrows)]
    for pos, mono, c in vec:
        per_row[pos][mono] = c
    out = []
    for acc in per_row:
        if ring.mod:
            p = ring.mod
            s = (scale.numerator * pow(scale.denominator, p - 2, p)) % p
            terms = {m: (c * s) % p for m, c in acc.items()}
        else:
            terms = {m: Fraction(c) * scale for m, c in acc.items()}
        out.append(ring.poly(terms))
    return out


def vec_to_poly(vec, ring, scale=Fraction(1)):
    return vec_to_polys(vec, 1, ring, scale)[0]


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Ideal given by generators, with a lazily cached reduced basis."""

    def __init__(self, ring, gens):
        self.ring = ring
        gens = tuple(g if isinstance(g, Poly) else ring.parse(g) for g in gens)
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator from a different ring")
        self.gens = gens
        self._lock = threading.Lock()
        self._gb = None
        self._gb_vecs = None
        self._gb_index = None

    def groebner(self):
        """The reduced Groebner basis: monic, pairwise irreducible, unique."""
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._compute_gb()
        return self._gb

    def _compute_gb(self):
        cols = []
        for g in self.gens:
            vec, _ = poly_to_vec(g)
            if vec:
                cols.append(vec)
        basis = engine.reduced_basis(cols, self.ring.mod, True)
        polys = []
        for b in basis:
            p = vec_to_poly(b, self.ring)
            lc = p.lead_coeff()
            if lc != self.ring.field.coerce(1):
                if self.ring.mod:
                    p = p * self.ring.constant(engine.kernel.inv_mod(lc, self.ring.mod))
                else:
                    p = p * self.ring.constant(Fraction(1, 1) / lc)
            polys.append(p)
        self._gb_vecs = basis
        self._gb_index = engine.kernel.group_by_pos(basis)
        self._gb = tuple(polys)

    def normal_form(self, f):
        """The unique remainder of f modulo the reduced basis."""
        if not isinstance(f, Poly):
            f = self.ring.parse(f)
        if f.ring != self.ring:
            raise RingMismatchError("polynomial from a different ring")
        self.groebner()
        vec, scale = poly_to_vec(f)
        rem, mult = engine.normal_form(vec, self._gb_index, self.ring.mod)
        return vec_to_poly(rem, self.ring, scale / mult)

    def contains_poly(self, f):
        return self.normal_form(f).is_zero()

    def contains(self, other):
        """True when every generator of ``other`` lies in this ideal."""
        if not isinstance(other, Ideal):
            raise PreconditionError("expected an Ideal")
        same_ring_ideal(self, other)
        return all(self.contains_poly(g) for g in other.gens)

    def is_unit(self):
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_unit()

    def is_zero(self):
        return not self.groebner()

    def is_proper(self):
        return not self.is_unit()

    def sum(self, other):
        same_ring_ideal(self, other)
        return Ideal(self.ring, self.gens + other.gens)

    def product(self, other):
        same_ring_ideal(self, other)
        gens = [a * b for a in self.gens for b in other.gens]
        return Ideal(self.ring, gens)

    def _row_syzygies(self, polys):
        """Syzygy generators of the 1-row matrix with the given entries."""
        s = len(polys)
        cols = []
        for j, g in enumerate(polys):
            col = [g] + [self.ring.zero] * s
            col[1 + j] = self.ring.one
            cols.append(column_to_vec(col)[0])
        aug = engine.AugmentedBasis(cols, 1, self.ring.mod)
        return [vec_to_polys(syz, s, self.ring) for syz in aug.syzygies()]

    def intersection(self, other):
        """Syzygy method: relations of the concatenated generator row give
        the elements writable in both ideals."""
        same_ring_ideal(self, other)
        left = [g for g in self.gens if not g.is_zero()]
        right = [g for g in other.gens if not g.is_zero()]
        if not left or not right:
            return Ideal(self.ring, ())
        gens = []
        for coeffs in self._row_syzygies(left + right):
            h = self.ring.zero
            for a, g in zip(coeffs[: len(left)], left):
                h = h + a * g
            if not h.is_zero():
                gens.append(h)
        return Ideal(self.ring, gens)

    def colon(self, other):
        """(I : J) = {r | r·J ⊆ I}, intersected over the generators of J."""
        same_ring_ideal(self, other)
        result = None
        base = [g for g in self.gens if not g.is_zero()]
        for g in other.gens:
            if g.is_zero():
                continue
            gens = []
            for coeffs in self._row_syzygies([g] + base):
                if not coeffs[0].is_zero():
                    gens.append(coeffs[0])
            part = Ideal(self.ring, gens)
            result = part if result is None else result.intersection(part)
        if result is None:
            return Ideal(self.ring, (self.ring.one,))
        return result

    def dimension(self):
        """Krull dimension of R/I; -1 for the unit ideal."""
        gb = self.groebner()
        if self.is_unit():
            return -1
        leads = [g.lead_monomial() for g in gb]
        n = self.ring.nvars
        best = 0
        # subset S of variables is independent iff no lead monomial is
        # supported entirely inside S
        for mask in range(1 << n):
            size = bin(mask).count("1")
            if size <= best:
                continue
            ok = True
            for m in leads:
                if all(e == 0 or (mask >> i) & 1 for i, e in enumerate(m)):
                    ok = False
                    break
            if ok:
                best = size
        return best

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and self.ring == other.ring
            and self.groebner() == other.groebner()
        )

    def __hash__(self):
        return hash((self.ring, self.groebner()))

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(poly_str(g) for g in self.gens)


def same_ring_ideal(a, b):
    if a.ring != b.ring:
        raise RingMismatchError("ideals over different rings")
