"""Ideal-level operations: intersection, quotients, saturation, Hilbert data.

Intersections adjoin an auxiliary variable ``t`` under a block elimination
order and eliminate it from ``t*I + (1-t)*J``.  Quotients reduce to
intersections, saturations iterate quotients to stabilization, and the
saturation by an ideal intersects the saturations by its generators.

Projective dimension and degree come from the Hilbert series of the
leading-term ideal, presented as ``HS(t) = N(t) / (1-t)**v`` with ``v`` the
number of ring variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .errors import InvariantError, RingMismatchError, ValidationError
from .groebner import (GroebnerBasis, buchberger_reduced_gb, interreduce,
                       normal_form)
from .polynomials import ElimFirstVar, Polynomial, PolynomialRing


class Ideal:
    """Homogeneous ideal with lazily cached reduced Groebner basis.

    Generators must be homogeneous and no positive generator degree may be
    divisible by the coefficient prime (partial derivatives would degenerate).
    Zero generators are stripped.
    """

    __slots__ = ("ring", "generators", "_gb", "_hilbert")

    def __init__(self, ring: PolynomialRing, generators: Iterable[Polynomial] = ()):
        self.ring = ring
        gens = []
        p = ring.field.p
        for i, f in enumerate(generators):
            if f.ring != ring:
                raise RingMismatchError("generator %d lives in a different ring" % (i + 1))
            if f.is_zero():
                continue
            if not f.is_homogeneous():
                raise ValidationError("generator %d is not homogeneous" % (i + 1))
            if f.degree > 0 and f.degree % p == 0:
                raise ValidationError(
                    "generator %d has degree %d divisible by the coefficient prime %d"
                    % (i + 1, f.degree, p))
            gens.append(f)
        self.generators = tuple(gens)
        self._gb = None
        self._hilbert = None

    @classmethod
    def _from_gb(cls, gb: GroebnerBasis) -> "Ideal":
        ideal = cls(gb.ring, gb.elements)
        ideal._gb = gb
        return ideal

    def groebner_basis(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger_reduced_gb(self.generators, ring=self.ring)
        return self._gb

    def hilbert_data(self) -> "HilbertData":
        if self._hilbert is None:
            lead = self.groebner_basis().leading_monomials()
            self._hilbert = hilbert_data_from_leading_terms(lead, self.ring.nvars)
        return self._hilbert

    @property
    def proj_dim(self) -> int:
        return self.hilbert_data().proj_dim

    @property
    def degree(self):
        return self.hilbert_data().degree

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def is_unit_ideal(self) -> bool:
        return bool(self.generators) and self.groebner_basis().is_unit()

    def max_generator_degree(self) -> int:
        return max((f.degree for f in self.generators), default=-1)

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        return normal_form(f, self.groebner_basis()).is_zero()

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return self.groebner_basis().elements == other.groebner_basis().elements

    __hash__ = None

    def __add__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return Ideal(self.ring, tuple(f * g for f in self.generators
                                      for g in other.generators))

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(str(f) for f in self.generators)


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")


# -- Hilbert series machinery --------------------------------------------------


def _minimalize(gens):
    """Inclusion-minimal subset of a family of exponent tuples."""
    out = []
    for g in sorted(set(gens), key=sum):
        if not any(all(a <= b for a, b in zip(m, g)) for m in out):
            out.append(g)
    return out


def _poly_mul_one_minus(poly, d):
    """Multiply an integer coefficient list by (1 - t**d)."""
    out = poly + [0] * d
    for i, c in enumerate(poly):
        out[i + d] -= c
    return out


def hilbert_numerator(leading_terms: Sequence, nvars: int) -> tuple:
    """Numerator N(t) of the Hilbert series N(t)/(1-t)**nvars of R/M for the
    monomial ideal M generated by the given exponent vectors.

    Uses the pivot recursion N(M + (P)) plus t**deg(P) * N(M : P), with the
    pivot a pure power of the most shared variable.
    """
    gens = _minimalize(tuple(tuple(g) for g in leading_terms))
    memo = {}

    def rec(gens_key):
        gens = list(gens_key)
        if not gens:
            return [1]
        if any(sum(g) == 0 for g in gens):
            return [0]
        if len(gens) == 1:
            return _poly_mul_one_minus([1], sum(gens[0]))
        cached = memo.get(gens_key)
        if cached is not None:
            return cached

        n = len(gens[0])
        counts = [0] * n
        for g in gens:
            for j, e in enumerate(g):
                if e:
                    counts[j] += 1
        best = max(range(n), key=lambda j: counts[j])
        if counts[best] <= 1:
            # pairwise coprime generators: the series factors
            out = [1]
            for g in gens:
                out = _poly_mul_one_minus(out, sum(g))
            memo[gens_key] = out
            return out

        exps = sorted(g[best] for g in gens if g[best])
        m = exps[(len(exps) - 1) // 2]
        pivot = tuple(m if j == best else 0 for j in range(n))
        with_pivot = tuple([g for g in gens if g[best] < m] + [pivot])
        colon = tuple(_minimalize(
            tuple(e - m if j == best and e >= m else (0 if j == best else e)
                  for j, e in enumerate(g)) for g in gens))

        left = rec(with_pivot)
        right = rec(colon)
        out = list(left) + [0] * max(0, m + len(right) - len(left))
        for i, c in enumerate(right):
            out[i + m] += c
        memo[gens_key] = out
        return out

    out = rec(tuple(gens))
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class HilbertData:
    """Dimension and degree data extracted from a Hilbert series numerator.

    ``proj_dim`` is the dimension of Proj(R/I); -1 means projectively empty
    (including the unit ideal), in which case ``degree`` is None.
    """

    nvars: int
    numerator: tuple
    proj_dim: int
    degree: int | None

    def hilbert_function(self, t: int) -> int:
        """dim_F (R/I)_t read off from the numerator."""
        v = self.nvars
        return sum(c * comb(v - 1 + t - j, v - 1)
                   for j, c in enumerate(self.numerator) if t - j >= 0)


def hilbert_data_from_leading_terms(leading_terms, nvars: int) -> HilbertData:
    numerator = hilbert_numerator(leading_terms, nvars)
    coeffs = list(numerator)
    if not coeffs:
        return HilbertData(nvars, numerator, -1, None)
    pole_drop = 0
    while sum(coeffs) == 0:
        # exact division by (1 - t): partial sums
        acc = 0
        quot = []
        for c in coeffs[:-1]:
            acc += c
            quot.append(acc)
        while quot and quot[-1] == 0:
            quot.pop()
        coeffs = quot
        pole_drop += 1
    krull = nvars - pole_drop
    if krull <= 0:
        return HilbertData(nvars, numerator, -1, None)
    return HilbertData(nvars, numerator, krull - 1, sum(coeffs))


def proj_dim_and_degree(I: Ideal) -> HilbertData:
    """Projective dimension and degree of Proj(R/I); degree counts the
    top-dimensional part with multiplicity."""
    return I.hilbert_data()


def is_projectively_empty(I: Ideal) -> bool:
    return I.hilbert_data().proj_dim == -1


# -- intersection, quotient, saturation ----------------------------------------


def _aux_ring(ring: PolynomialRing) -> PolynomialRing:
    name = "t0"
    i = 0
    while name in ring.variables:
        i += 1
        name = "t%d" % i
    return PolynomialRing((name,) + ring.variables, ring.field,
                          ElimFirstVar(ring.nvars + 1))


def _lift(f: Polynomial, aux: PolynomialRing, t_exp: int) -> list:
    pack = aux.order.pack
    src = f.ring.order
    return [(pack((t_exp,) + src.exponents(m)), c) for m, c in f.packed_items()]


def _project(g: Polynomial, ring: PolynomialRing) -> Polynomial:
    src = g.ring.order
    pack = ring.order.pack
    return Polynomial(ring, tuple(sorted(((pack(src.exponents(m)[1:]), c)
                                          for m, c in g.packed_items()), reverse=True)))


def intersection(I: Ideal, J: Ideal) -> Ideal:
    """Generators of I meet J, via elimination of t from t*I + (1-t)*J."""
    _same_ring(I, J)
    ring = I.ring
    if I.is_zero_ideal() or J.is_zero_ideal():
        return Ideal(ring)
    if I.is_unit_ideal():
        return J
    if J.is_unit_ideal():
        return I
    aux = _aux_ring(ring)
    gens = [Polynomial(aux, tuple(sorted(_lift(f, aux, 1), reverse=True)))
            for f in I.generators]
    for g in J.generators:
        terms = _lift(g, aux, 0)
        neg = [(m, ring.field.p - c) for m, c in _lift(g, aux, 1)]
        gens.append(Polynomial(aux, tuple(sorted(terms + neg, reverse=True))))
    basis = buchberger_reduced_gb(gens, ring=aux)
    kept = tuple(_project(g, ring) for g in basis
                 if not aux.order.has_aux(g.leading_packed()))
    return Ideal._from_gb(GroebnerBasis(ring, kept))


def quotient_by_poly(I: Ideal, f: Polynomial) -> Ideal:
    """The colon ideal (I : f), computed as (1/f) * (I meet (f))."""
    if f.ring != I.ring:
        raise RingMismatchError("polynomial lives in a different ring")
    if f.is_zero():
        raise ValidationError("colon ideal by the zero polynomial")
    if I.is_zero_ideal() or f.is_constant():
        return I
    K = intersection(I, Ideal(I.ring, (f,)))
    gens = [h.exact_div(f) for h in K.generators]
    reduced = interreduce(gens) if gens else []
    return Ideal._from_gb(GroebnerBasis(I.ring, tuple(reduced)))


def quotient_by_ideal(I: Ideal, J: Ideal) -> Ideal:
    """(I : J), the intersection of (I : g) over the generators of J."""
    _same_ring(I, J)
    if J.is_zero_ideal():
        raise ValidationError("colon ideal by the zero ideal")
    out = None
    for g in J.generators:
        q = quotient_by_poly(I, g)
        out = q if out is None else intersection(out, q)
    return out


def saturation_by_poly(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f**inf), by iterating the quotient until it stabilizes."""
    if f.is_zero():
        raise ValidationError("saturation by the zero polynomial")
    current = I
    while True:
        step = quotient_by_poly(current, f)
        if step.groebner_basis().elements == current.groebner_basis().elements:
            return current
        current = step


def saturation_by_ideal(J: Ideal, I: Ideal) -> Ideal:
    """(J : I**inf), intersecting the single-polynomial saturations over the
    generators of I."""
    _same_ring(J, I)
    if I.is_zero_ideal():
        raise ValidationError("saturation by the zero ideal")
    parts = []
    for f in I.generators:
        s = saturation_by_poly(J, f)
        if s.is_unit_ideal():
            continue
        if any(s.groebner_basis().elements == q.groebner_basis().elements
               for q in parts):
            continue
        parts.append(s)
    if not parts:
        return Ideal._from_gb(GroebnerBasis(J.ring, (J.ring.one(),)))
    out = parts[0]
    for q in parts[1:]:
        out = intersection(out, q)
    return out


# -- geometry helpers -----------------------------------------------------------


def jacobian_ideal(f: Polynomial) -> Ideal:
    """Ideal of the singularity subscheme of V(f): f plus all its partials.

    f is kept as a generator even though the Euler relation usually makes it
    redundant; this keeps the scheme structure honest for exponents that
    vanish mod p.
    """
    if f.is_zero():
        raise ValidationError("jacobian ideal of the zero polynomial")
    gens = [f] + [f.partial_derivative(i) for i in range(f.ring.nvars)]
    return Ideal(f.ring, gens)


def random_ideal_element(I: Ideal, d: int, rng) -> Polynomial:
    """Random degree-d element of I: sum of generators times dense random
    forms of complementary degree.  Redrawn on total cancellation."""
    if I.is_zero_ideal():
        raise ValidationError("the zero ideal has no nonzero elements")
    top = I.max_generator_degree()
    if d < top:
        raise ValidationError("degree %d is below the maximal generator degree %d"
                              % (d, top))
    ring = I.ring
    for _ in range(100):
        g = ring.zero()
        for f in I.generators:
            g = g + ring.random_form(d - f.degree, rng) * f
        if not g.is_zero():
            return g
    raise InvariantError("100 consecutive random combinations vanished")
