"""Prime-field scalars, monomial orders, and multivariate polynomial arithmetic.

Coefficients are plain Python ints in ``[0, p)``; :class:`PrimeField` supplies
the modulus, inverses and the balanced representative used for printing.

Monomials are packed into single integers, per ring, so that

* integer comparison of two packed monomials coincides with the ring's
  monomial order,
* monomial multiplication is integer addition,
* ``max()`` over a term dict yields the leading monomial with no key function.

For graded reverse lexicographic order over ``n`` variables the layout is
``deg * B**n - sum(e[i] * B**i)`` with ``B = 2**16`` (variable 0 in the least
significant digit).  The elimination order used internally prepends the digit
of the eliminated variable.  Exponents and total degrees must stay below
``2**16``, far beyond anything this library produces.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence

from .errors import ParseError, RingMismatchError, ValidationError

DEFAULT_PRIME = 32003

EXP_BITS = 16
_EXP_MASK = (1 << EXP_BITS) - 1

# Witnesses making Miller-Rabin exact below 3.3e24, i.e. for any sane modulus.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """F_p arithmetic on canonical representatives ``0 <= a < p``."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 3:
            raise ValidationError("coefficient prime must be an integer >= 3, got %r" % (p,))
        if not is_prime(p):
            raise ValidationError("%d is not prime" % p)
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return "F_%d" % self.p

    def normalize(self, a: int) -> int:
        return a % self.p

    def inverse(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_%d" % self.p)
        return pow(a, self.p - 2, self.p)

    def signed(self, a: int) -> int:
        """Balanced representative in ``(-p/2, p/2]``, used for printing."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a


class MonomialOrder:
    """Base for the packed-monomial orders.  All packed values are >= 0."""

    kind = "abstract"
    nvars = 0

    def pack(self, exps: Sequence[int]) -> int:
        raise NotImplementedError

    def exponents(self, m: int) -> tuple:
        raise NotImplementedError

    def total_degree(self, m: int) -> int:
        raise NotImplementedError

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.exponents(a), self.exponents(b)
        return self.pack(tuple(x if x >= y else y for x, y in zip(ea, eb)))

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.exponents(a), self.exponents(b)
        return all(x == 0 or y == 0 for x, y in zip(ea, eb))

    def divides(self, a: int, b: int) -> bool:
        ea, eb = self.exponents(a), self.exponents(b)
        return all(x <= y for x, y in zip(ea, eb))

    def compare(self, e1: Sequence[int], e2: Sequence[int]) -> int:
        """-1, 0 or 1 comparing two exponent vectors; the spec's LT/EQ/GT."""
        if len(e1) != self.nvars or len(e2) != self.nvars:
            raise RingMismatchError("exponent vectors do not match the ring's variable count")
        a, b = self.pack(e1), self.pack(e2)
        return (a > b) - (a < b)

    def __eq__(self, other):
        return type(self) is type(other) and self.nvars == other.nvars

    def __hash__(self):
        return hash((type(self).__name__, self.nvars))

    def __repr__(self):
        return "%s(%d)" % (type(self).__name__, self.nvars)


class DegRevLex(MonomialOrder):
    """Graded reverse lexicographic order; higher degree first, ties broken by
    the smaller exponent on the latest variable that differs."""

    kind = "degrevlex"

    def __init__(self, nvars: int):
        self.nvars = nvars
        self._shift = EXP_BITS * nvars
        self._low = (1 << self._shift) - 1

    def pack(self, exps):
        x = 0
        deg = 0
        for i, e in enumerate(exps):
            deg += e
            x |= e << (i * EXP_BITS)
        return (deg << self._shift) - x

    def exponents(self, m):
        x = -m & self._low
        return tuple((x >> (i * EXP_BITS)) & _EXP_MASK for i in range(self.nvars))

    def total_degree(self, m):
        d = m >> self._shift
        return d + 1 if m & self._low else d


class ElimFirstVar(MonomialOrder):
    """Block order eliminating variable 0: any monomial containing it beats any
    monomial free of it; within a block, degrevlex on the remaining variables."""

    kind = "elim1"

    def __init__(self, nvars: int):
        if nvars < 2:
            raise ValidationError("elimination order needs at least two variables")
        self.nvars = nvars
        self._rest = nvars - 1
        self._rest_shift = EXP_BITS * self._rest
        self._aux_shift = EXP_BITS * nvars
        self._low = (1 << self._rest_shift) - 1

    def pack(self, exps):
        x = 0
        deg = 0
        for i, e in enumerate(exps[1:]):
            deg += e
            x |= e << (i * EXP_BITS)
        return (exps[0] << self._aux_shift) + (deg << self._rest_shift) - x

    def exponents(self, m):
        e0 = m >> self._aux_shift
        x = -m & self._low
        return (e0,) + tuple((x >> (i * EXP_BITS)) & _EXP_MASK for i in range(self._rest))

    def total_degree(self, m):
        e0 = m >> self._aux_shift
        d = (m >> self._rest_shift) & _EXP_MASK
        return e0 + (d + 1 if m & self._low else d)

    def has_aux(self, m: int) -> bool:
        return m >> self._aux_shift != 0


_VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|([-+*^/])|(\S))")


class PolynomialRing:
    """``F_p[v_0, ..., v_{n-1}]`` with a fixed monomial order.

    Variables are ordered by declaration, ``v_0 > v_1 > ...``.  Rings compare
    by value, so independently constructed equal rings interoperate.
    """

    __slots__ = ("variables", "field", "order", "_mono_cache", "_var_index")

    def __init__(self, variables, prime=DEFAULT_PRIME, order: MonomialOrder | None = None):
        if isinstance(variables, str):
            variables = tuple(v.strip() for v in variables.split(","))
        variables = tuple(variables)
        if not variables:
            raise ValidationError("a polynomial ring needs at least one variable")
        for v in variables:
            if not _VAR_RE.match(v):
                raise ValidationError("invalid variable name %r" % (v,))
        if len(set(variables)) != len(variables):
            raise ValidationError("duplicate variable names in %r" % (variables,))
        self.variables = variables
        self.field = prime if isinstance(prime, PrimeField) else PrimeField(prime)
        self.order = order if order is not None else DegRevLex(len(variables))
        if self.order.nvars != len(variables):
            raise RingMismatchError("order is over %d variables, ring has %d"
                                    % (self.order.nvars, len(variables)))
        self._mono_cache = {}
        self._var_index = {v: i for i, v in enumerate(variables)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing)
                and self.variables == other.variables
                and self.field == other.field
                and self.order == other.order)

    def __hash__(self):
        return hash((self.variables, self.field.p, self.order))

    def __repr__(self):
        return "F_%d[%s]" % (self.field.p, ",".join(self.variables))

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return Polynomial(self, ((0, 1),))

    def constant(self, c: int) -> "Polynomial":
        c %= self.field.p
        return Polynomial(self, ((0, c),) if c else ())

    def variable(self, which) -> "Polynomial":
        i = self._var_index[which] if isinstance(which, str) else which
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, ((self.order.pack(exps), 1),))

    def gens(self) -> tuple:
        return tuple(self.variable(i) for i in range(self.nvars))

    def monomial(self, exps, coeff: int = 1) -> "Polynomial":
        c = coeff % self.field.p
        if not c:
            return self.zero()
        return Polynomial(self, ((self.order.pack(exps), c),))

    def from_terms(self, terms: Iterable) -> "Polynomial":
        """Build from (exponent vector, coefficient) pairs; merges duplicates."""
        acc = {}
        p = self.field.p
        for exps, c in terms:
            if len(exps) != self.nvars:
                raise RingMismatchError("exponent vector of length %d in a %d-variable ring"
                                        % (len(exps), self.nvars))
            m = self.order.pack(exps)
            acc[m] = (acc.get(m, 0) + c) % p
        return self._from_dict(acc)

    def _from_dict(self, d: dict) -> "Polynomial":
        return Polynomial(self, tuple(sorted(((m, c) for m, c in d.items() if c),
                                             reverse=True)))

    def monomials_of_degree(self, d: int) -> tuple:
        """All packed monomials of total degree d, descending."""
        if d < 0:
            raise ValidationError("degree must be >= 0")
        cached = self._mono_cache.get(d)
        if cached is None:
            n = self.nvars
            out = []

            def fill(i, rem, exps):
                if i == n - 1:
                    exps[i] = rem
                    out.append(self.order.pack(exps))
                    return
                for e in range(rem + 1):
                    exps[i] = e
                    fill(i + 1, rem - e, exps)
                exps[i] = 0

            fill(0, d, [0] * n)
            out.sort(reverse=True)
            cached = self._mono_cache[d] = tuple(out)
        return cached

    def random_form(self, degree: int, rng) -> "Polynomial":
        """Dense random form: every degree-``degree`` monomial gets a fresh
        coefficient drawn uniformly from the field (the zero form is redrawn).

        Draws happen in descending monomial order, so the output is a pure
        function of the rng's stream position.
        """
        monos = self.monomials_of_degree(degree)
        p = self.field.p
        while True:
            terms = tuple((m, c) for m in monos for c in (rng.randrange(p),) if c)
            if terms:
                return Polynomial(self, terms)

    def parse(self, text: str) -> "Polynomial":
        return _parse_polynomial(self, text)


class Polynomial:
    """Immutable multivariate polynomial; terms sorted descending in the ring order.

    Supports ``+``, ``-``, ``*`` (with polynomials or ints) and ``**``.  The
    printed form is re-parseable and uses balanced coefficient representatives,
    e.g. ``y^2 - x*z`` rather than ``y^2 + 32002*x*z``.
    """

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: PolynomialRing, terms: tuple):
        self.ring = ring
        self._terms = terms

    # -- basic inspection ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return self.ring.order.total_degree(self._terms[0][0])

    def is_homogeneous(self) -> bool:
        deg = self.ring.order.total_degree
        return len({deg(m) for m, _ in self._terms}) <= 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def leading_packed(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self._terms[0][0]

    def leading_monomial(self) -> tuple:
        return self.ring.order.exponents(self.leading_packed())

    def leading_coefficient(self) -> int:
        if not self._terms:
            return 0
        return self._terms[0][1]

    def packed_items(self) -> tuple:
        return self._terms

    def terms(self) -> Iterator:
        """Yield (exponent vector, coefficient) pairs, descending."""
        exps = self.ring.order.exponents
        for m, c in self._terms:
            yield exps(m), c

    def coefficient(self, exps) -> int:
        m = self.ring.order.pack(exps)
        for mm, c in self._terms:
            if mm == m:
                return c
        return 0

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials from different rings: %r vs %r"
                                    % (self.ring, other.ring))

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check_ring(other)
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ring.field.p
        acc = dict(self._terms)
        for m, c in other._terms:
            v = (acc.get(m, 0) + c) % p
            if v:
                acc[m] = v
            elif m in acc:
                del acc[m]
        return self.ring._from_dict(acc)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        return Polynomial(self.ring, tuple((m, p - c) for m, c in self._terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.ring.field.p
            if not c:
                return self.ring.zero()
            p = self.ring.field.p
            return Polynomial(self.ring, tuple((m, cc * c % p) for m, cc in self._terms))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ring.field.p
        acc = {}
        get = acc.get
        for m1, c1 in self._terms:
            for m2, c2 in other._terms:
                m = m1 + m2
                acc[m] = (get(m, 0) + c1 * c2) % p
        return self.ring._from_dict(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValidationError("negative polynomial powers are not supported")
        out = self.ring.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        lc = self._terms[0][1]
        if lc == 1:
            return self
        return self * self.ring.field.inverse(lc)

    def partial_derivative(self, var_index: int) -> "Polynomial":
        """Formal partial derivative; exponent factors reduced mod p."""
        if not 0 <= var_index < self.ring.nvars:
            raise ValidationError("variable index %d out of range" % var_index)
        order = self.ring.order
        p = self.ring.field.p
        out = []
        for m, c in self._terms:
            exps = list(order.exponents(m))
            e = exps[var_index]
            if e == 0:
                continue
            cc = c * e % p
            if not cc:
                continue
            exps[var_index] = e - 1
            out.append((order.pack(exps), cc))
        out.sort(reverse=True)
        return Polynomial(self.ring, tuple(out))

    def exact_div(self, g: "Polynomial") -> "Polynomial":
        """Quotient self / g when g divides self exactly; raises otherwise."""
        self._check_ring(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        order = self.ring.order
        p = self.ring.field.p
        ginv = self.ring.field.inverse(g._terms[0][1])
        glt = g._terms[0][0]
        gtail = g._terms[1:]
        work = dict(self._terms)
        quot = {}
        while work:
            m = max(work)
            c = work.pop(m)
            if not order.divides(glt, m):
                raise ValidationError("%s does not divide evenly" % (g,))
            q = m - glt
            qc = c * ginv % p
            quot[q] = qc
            for mg, cg in gtail:
                mm = q + mg
                v = (work.get(mm, 0) - qc * cg) % p
                if v:
                    work[mm] = v
                elif mm in work:
                    del work[mm]
        return self.ring._from_dict(quot)

    def map_to(self, ring: PolynomialRing) -> "Polynomial":
        """Reinterpret in an equal-variable ring (possibly different order)."""
        if ring.variables != self.ring.variables or ring.field != self.ring.field:
            raise RingMismatchError("target ring has different variables or field")
        src, dst = self.ring.order, ring.order
        return Polynomial(ring, tuple(sorted(((dst.pack(src.exponents(m)), c)
                                              for m, c in self._terms), reverse=True)))

    # -- equality and printing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return (isinstance(other, Polynomial) and self.ring == other.ring
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.ring, self._terms))

    def _format_monomial(self, exps) -> str:
        parts = []
        for v, e in zip(self.ring.variables, exps):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append("%s^%d" % (v, e))
        return "*".join(parts)

    def __str__(self):
        if not self._terms:
            return "0"
        field = self.ring.field
        chunks = []
        for i, (exps, c) in enumerate(self.terms()):
            s = field.signed(c)
            mono = self._format_monomial(exps)
            mag = abs(s)
            if not mono:
                body = "%d" % mag
            elif mag == 1:
                body = mono
            else:
                body = "%d*%s" % (mag, mono)
            if i == 0:
                chunks.append("-" + body if s < 0 else body)
            else:
                chunks.append(("- " if s < 0 else "+ ") + body)
        return " ".join(chunks)

    def __repr__(self):
        return "<%s | %r>" % (self, self.ring)


def spanned_degree(polys: Iterable[Polynomial]) -> int:
    """Max total degree over a family, -1 if all zero."""
    return max((f.degree for f in polys), default=-1)


# -- parsing ------------------------------------------------------------------


def _position(text: str, offset: int) -> tuple:
    line = text.count("\n", 0, offset) + 1
    last = text.rfind("\n", 0, offset)
    return line, offset - last


def _parse_polynomial(ring: PolynomialRing, text: str) -> Polynomial:
    """Recursive-descent parser for the shared polynomial grammar.

    poly   := ('+'|'-')? term (('+'|'-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    factor := var ('^' nat)?
    coeff  := nat | nat '/' nat
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        num, name, op, junk = m.groups()
        start = m.end() - len(m.group().lstrip())
        if junk is not None:
            line, col = _position(text, start)
            raise ParseError("unexpected character %r" % junk, line, col)
        if num is not None:
            tokens.append(("num", int(num), start))
        elif name is not None:
            tokens.append(("name", name, start))
        elif op is not None:
            tokens.append(("op", op, start))
        pos = m.end()

    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else ("end", None, len(text))

    def fail(message, at=None):
        offset = at if at is not None else peek()[2]
        line, col = _position(text, offset)
        raise ParseError(message, line, col)

    def take():
        nonlocal idx
        tok = peek()
        idx += 1
        return tok

    field = ring.field
    nvars = ring.nvars
    acc = {}

    def parse_factor(exps):
        kind, value, at = take()
        if kind != "name":
            fail("expected a variable")
        vi = ring._var_index.get(value)
        if vi is None:
            fail("unknown variable %r" % value, at)
        e = 1
        if peek()[:2] == ("op", "^"):
            take()
            kind, value, at = take()
            if kind != "num":
                fail("expected an integer exponent")
            e = value
        exps[vi] += e

    def parse_term(sign):
        coeff = 1
        exps = [0] * nvars
        kind, value, at = peek()
        if kind == "num":
            take()
            coeff = value
            if peek()[:2] == ("op", "/"):
                take()
                kind, value, at = take()
                if kind != "num":
                    fail("expected a denominator")
                if value % field.p == 0:
                    fail("denominator %d is divisible by the coefficient prime %d"
                         % (value, field.p), at)
                coeff = coeff * field.inverse(value)
            while peek()[:2] == ("op", "*"):
                take()
                parse_factor(exps)
        elif kind == "name":
            parse_factor(exps)
            while peek()[:2] == ("op", "*"):
                take()
                parse_factor(exps)
        else:
            fail("expected a term")
        m = ring.order.pack(exps)
        acc[m] = (acc.get(m, 0) + sign * coeff) % field.p

    sign = 1
    if peek()[:2] in (("op", "+"), ("op", "-")):
        sign = 1 if take()[1] == "+" else -1
    parse_term(sign)
    while True:
        kind, value, at = peek()
        if kind == "end":
            break
        if kind == "op" and value in "+-":
            take()
            parse_term(1 if value == "+" else -1)
        else:
            fail("expected '+' or '-'")
    return ring._from_dict(acc)
