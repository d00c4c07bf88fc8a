"""Buchberger engine: reduced bases, normal forms, membership, equality.

Pair handling uses the Gebauer-Moeller refinements of Buchberger's product and
chain criteria; pair selection is the normal strategy (smallest lcm in the
ambient order first).  Reduction is heap-driven so the working polynomial never
has to be resorted.
"""

from __future__ import annotations

import heapq
from bisect import insort
from dataclasses import dataclass
from operator import ge
from typing import Iterable, Sequence

from .errors import RingMismatchError, ValidationError
from .polynomials import Polynomial, PolynomialRing


def _prep_divisor(terms, order, inv_lc=1):
    lt = terms[0][0]
    return (order.total_degree(lt), lt, order.exponents(lt), inv_lc, terms[1:])


def _reduce(work, divisors, order, p, sorted_divisors=True, quotients=None):
    """Divide the term dict ``work`` by prepared divisors; returns the remainder dict.

    ``divisors`` entries are ``(lt_degree, lt, lt_exps, inv_lc, tail)``.  With
    ``sorted_divisors`` the scan stops once leading degrees exceed the current
    monomial.  ``quotients``, when given, is a list of dicts aligned with
    ``divisors`` that accumulates the division quotients.
    """
    heap = [-m for m in work]
    heapq.heapify(heap)
    exponents = order.exponents
    total_degree = order.total_degree
    rem = {}
    while heap:
        m = -heapq.heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        mdeg = total_degree(m)
        mexps = exponents(m)
        hit = -1
        for i, (ldeg, lt, lexps, inv_lc, tail) in enumerate(divisors):
            if ldeg > mdeg:
                if sorted_divisors:
                    break
                continue
            if all(map(ge, mexps, lexps)):
                hit = i
                break
        if hit < 0:
            rem[m] = c
            continue
        _, lt, _, inv_lc, tail = divisors[hit]
        q = m - lt
        qc = c * inv_lc % p
        if quotients is not None:
            qd = quotients[hit]
            qd[q] = (qd.get(q, 0) + qc) % p
        for mg, cg in tail:
            mm = q + mg
            v = work.get(mm)
            if v is None:
                vv = -qc * cg % p
                if vv:
                    work[mm] = vv
                    heapq.heappush(heap, -mm)
            else:
                vv = (v - qc * cg) % p
                if vv:
                    work[mm] = vv
                else:
                    del work[mm]
    return rem


def _canon(d):
    return tuple(sorted(d.items(), reverse=True))


def _spoly_dict(f, g, order, p):
    """Term dict of the s-polynomial of two monic term tuples."""
    ltf, ltg = f[0][0], g[0][0]
    l = order.lcm(ltf, ltg)
    sf, sg = l - ltf, l - ltg
    acc = {}
    for m, c in f:
        acc[m + sf] = c
    for m, c in g:
        mm = m + sg
        v = (acc.get(mm, 0) - c) % p
        if v:
            acc[mm] = v
        elif mm in acc:
            del acc[mm]
    return acc


def _gm_update(pairs, pair_heap, lts, t, order):
    """Gebauer-Moeller pair update after appending element ``t``."""
    lcm = order.lcm
    divides = order.divides
    coprime = order.coprime
    mh = lts[t]

    # chain criterion against existing pairs
    drop = [pr for pr in pairs
            if divides(mh, pairs[pr])
            and lcm(lts[pr[0]], mh) != pairs[pr]
            and lcm(lts[pr[1]], mh) != pairs[pr]]
    for pr in drop:
        del pairs[pr]

    # group candidate pairs (i, t) by lcm, keep divisibility-minimal groups
    groups = {}
    for i in range(t):
        groups.setdefault(lcm(lts[i], mh), []).append(i)
    kept = []
    for l in sorted(groups):
        if not any(divides(l2, l) for l2 in kept):
            kept.append(l)
    for l in kept:
        # product criterion: a coprime pair in the group retires the whole group
        if any(coprime(lts[i], mh) for i in groups[l]):
            continue
        i = min(groups[l])
        pairs[(i, t)] = l
        heapq.heappush(pair_heap, (l, i, t))


def _buchberger(term_tuples, order, p):
    """Reduced Groebner basis from monic term tuples; returns term tuples."""
    basis = []
    lts = []
    divisors = []
    pairs = {}
    pair_heap = []

    def add(terms):
        t = len(basis)
        basis.append(terms)
        lts.append(terms[0][0])
        _gm_update(pairs, pair_heap, lts, t, order)
        insort(divisors, _prep_divisor(terms, order))

    for terms in sorted(term_tuples, key=lambda ts: ts[0][0]):
        rem = _reduce(dict(terms), divisors, order, p)
        if rem:
            lc = rem[max(rem)]
            if lc != 1:
                inv = pow(lc, p - 2, p)
                rem = {m: c * inv % p for m, c in rem.items()}
            add(_canon(rem))

    while pair_heap:
        l, i, j = heapq.heappop(pair_heap)
        if pairs.pop((i, j), None) is None:
            continue
        rem = _reduce(_spoly_dict(basis[i], basis[j], order, p), divisors, order, p)
        if rem:
            lc = rem[max(rem)]
            if lc != 1:
                inv = pow(lc, p - 2, p)
                rem = {m: c * inv % p for m, c in rem.items()}
            add(_canon(rem))

    return _interreduce_terms(basis, order, p)


def _interreduce_terms(basis, order, p):
    """Minimalize and tail-reduce a Groebner basis given as monic term tuples."""
    minimal = []
    for terms in sorted(basis, key=lambda ts: ts[0][0]):
        lt = terms[0][0]
        lexps = order.exponents(lt)
        if not any(all(map(ge, lexps, kept[2])) for kept in minimal):
            insort(minimal, _prep_divisor(terms, order))
    reduced = []
    for k, entry in enumerate(minimal):
        _, lt, _, _, tail = entry
        others = minimal[:k] + minimal[k + 1:]
        rem = _reduce(dict(tail), others, order, p)
        rem[lt] = 1
        reduced.append(_canon(rem))
    reduced.sort(key=lambda ts: ts[0][0], reverse=True)
    return reduced


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, auto-reduced, leading terms descending.

    Unique for a given ideal and order, hence directly comparable.
    """

    ring: PolynomialRing
    elements: tuple

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def leading_packed(self) -> tuple:
        return tuple(g.leading_packed() for g in self.elements)

    def leading_monomials(self) -> tuple:
        return tuple(g.leading_monomial() for g in self.elements)

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()


def _common_ring(polys: Sequence[Polynomial], ring=None) -> PolynomialRing:
    for f in polys:
        if ring is None:
            ring = f.ring
        elif f.ring != ring:
            raise RingMismatchError("generators live in different rings")
    if ring is None:
        raise ValidationError("cannot infer the ring from an empty generator list")
    return ring


def buchberger_reduced_gb(generators: Iterable[Polynomial], order=None,
                          ring: PolynomialRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``generators``.

    Zero generators are discarded.  When ``order`` differs from the ring's
    ambient order the basis is computed (and returned) in a ring clone carrying
    that order.
    """
    gens = list(generators)
    ring = _common_ring(gens, ring)
    if order is not None and order != ring.order:
        ring = PolynomialRing(ring.variables, ring.field, order)
        gens = [f.map_to(ring) for f in gens]
    tuples = [f.monic().packed_items() for f in gens if not f.is_zero()]
    reduced = _buchberger(tuples, ring.order, ring.field.p)
    return GroebnerBasis(ring, tuple(Polynomial(ring, ts) for ts in reduced))


def interreduce(polys: Sequence[Polynomial]) -> list:
    """Reduced basis from polynomials already known to form a Groebner basis."""
    ring = _common_ring(polys)
    tuples = [f.monic().packed_items() for f in polys if not f.is_zero()]
    reduced = _interreduce_terms(tuples, ring.order, ring.field.p)
    return [Polynomial(ring, ts) for ts in reduced]


def _gb_divisors(gb: GroebnerBasis):
    return sorted(_prep_divisor(g.packed_items(), gb.ring.order) for g in gb.elements)


def normal_form(f: Polynomial, gb) -> Polynomial:
    """Remainder of f on division by the basis; no term of the result is
    divisible by any basis leading term.  Idempotent."""
    elements = gb.elements if isinstance(gb, GroebnerBasis) else tuple(gb)
    ring = gb.ring if isinstance(gb, GroebnerBasis) else _common_ring(elements)
    if f.ring != ring:
        raise RingMismatchError("polynomial and basis live in different rings")
    if not elements:
        return f
    divisors = sorted(_prep_divisor(g.packed_items(), ring.order)
                      for g in elements if not g.is_zero())
    rem = _reduce(dict(f.packed_items()), divisors, ring.order, ring.field.p)
    return ring._from_dict(rem)


def division(f: Polynomial, divisors: Sequence[Polynomial]):
    """Divide by an ordered family: returns (quotients, remainder) with
    ``f == sum(q_i * g_i) + r`` and no remainder term divisible by any lt(g_i)."""
    ring = f.ring
    prepped = []
    for g in divisors:
        if g.ring != ring:
            raise RingMismatchError("divisors live in a different ring")
        if g.is_zero():
            raise ZeroDivisionError("zero divisor in division")
        prepped.append(_prep_divisor(g.packed_items(), ring.order,
                                     ring.field.inverse(g.leading_coefficient())))
    quotients = [{} for _ in prepped]
    rem = _reduce(dict(f.packed_items()), prepped, ring.order, ring.field.p,
                  sorted_divisors=False, quotients=quotients)
    return [ring._from_dict(q) for q in quotients], ring._from_dict(rem)


def ideal_membership(f: Polynomial, gb: GroebnerBasis) -> bool:
    return normal_form(f, gb).is_zero()


def ideal_equality(gb1: GroebnerBasis, gb2: GroebnerBasis) -> bool:
    if gb1.ring != gb2.ring:
        raise RingMismatchError("bases computed over different rings or orders")
    return gb1.elements == gb2.elements


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.ring != g.ring:
        raise RingMismatchError("polynomials from different rings")
    if f.is_zero() or g.is_zero():
        raise ValidationError("s-polynomial of a zero polynomial")
    ring = f.ring
    d = _spoly_dict(f.monic().packed_items(), g.monic().packed_items(),
                    ring.order, ring.field.p)
    return ring._from_dict(d)
