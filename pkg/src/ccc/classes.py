"""Chow-ring arithmetic and the characteristic-class computations.

Everything lives in the pushforward picture: a class on a k-dimensional
subscheme X of P^n is stored as an integer vector c_0..c_n with
``sum(c_j H**j)`` in ``Z[H]/(H**(n+1))``, index = codimension.  The degree of
the dimension-p piece of a class is the coefficient of ``H**(n-p)``.

The pipeline: random hypersurfaces of one degree d through X leave residual
intersections whose degrees determine the Segre class degrees through an
exact triangular system; Chern(-Fulton) classes follow by multiplying with
``(1+H)**(n+1)``; CSM classes of hypersurfaces combine the Segre class of the
singularity subscheme (dualized and twisted by O(d)) with the closed-form
Segre class of the hypersurface itself; CSM classes of arbitrary ideals come
from inclusion-exclusion over products of generators, and the Euler
characteristic is the coefficient of H**n of the CSM class.
"""

from __future__ import annotations

import random
import threading
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .errors import GenericityError, InvariantError, RingMismatchError, ValidationError
from .ideals import Ideal, jacobian_ideal, random_ideal_element, saturation_by_ideal
from .polynomials import Polynomial

_MASK64 = (1 << 64) - 1

_RESIDUAL_TAG = 0x01
_SUBSET_TAG = 0x02
_VERIFY_TAG = 0x03


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def _child_seed(seed: int, *tags: int) -> int:
    x = seed & _MASK64
    for t in tags:
        x = _splitmix64(x ^ (t & _MASK64))
    return x


class RunStats:
    """Write-only counters shared by one computation and its derived streams."""

    __slots__ = ("_lock", "retries")

    def __init__(self):
        self._lock = threading.Lock()
        self.retries = 0

    def count_retry(self):
        with self._lock:
            self.retries += 1


@dataclass
class RandomPolicy:
    """Seed, retry budget and verification switch for all random choices.

    Identical (inputs, seed) give identical outputs, including the retry
    sequence; every internal task derives its own stream from the seed and an
    integer tag, so scheduling cannot change results.
    """

    seed: int
    max_retries: int = 5
    verify: bool = False
    stats: RunStats = field(default_factory=RunStats, compare=False, repr=False)

    def child(self, *tags: int) -> "RandomPolicy":
        return RandomPolicy(_child_seed(self.seed, *tags), self.max_retries,
                            False, stats=self.stats)


class ChowClass:
    """Integer-coefficient class in Z[H]/(H**(n+1)); coefficient index is the
    codimension.  Supports +, -, * (with classes or ints) and **."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence[int] = ()):
        if len(coeffs) > n + 1:
            raise ValidationError("coefficient vector longer than n+1")
        self.n = n
        self.coeffs = tuple(coeffs) + (0,) * (n + 1 - len(coeffs))

    @classmethod
    def hyperplane_power(cls, n: int, j: int, coeff: int = 1) -> "ChowClass":
        if not 0 <= j <= n:
            raise ValidationError("power %d outside 0..%d" % (j, n))
        return cls(n, (0,) * j + (coeff,))

    @classmethod
    def ambient_tangent(cls, n: int) -> "ChowClass":
        """Pushforward of the total tangent class of P^n: (1+H)**(n+1) truncated."""
        return cls(n, tuple(comb(n + 1, j) for j in range(n + 1)))

    def __getitem__(self, j: int) -> int:
        return self.coeffs[j]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "ChowClass"):
        if self.n != other.n:
            raise ValidationError("classes on projective spaces of different dimension")

    def __add__(self, other):
        self._check(other)
        return ChowClass(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return ChowClass(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return ChowClass(self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return ChowClass(self.n, tuple(a * other for a in self.coeffs))
        self._check(other)
        out = [0] * (self.n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs[:self.n + 1 - i]):
                out[i + j] += a * b
        return ChowClass(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ChowClass(self.n, (1,))
        for _ in range(k):
            out = out * self
        return out

    def dual(self) -> "ChowClass":
        """Sign flip by codimension parity; an involution."""
        return ChowClass(self.n, tuple(c if j % 2 == 0 else -c
                                       for j, c in enumerate(self.coeffs)))

    def tensor_line(self, d: int) -> "ChowClass":
        """Twist by O(dH): the codimension-j piece picks up (1+dH)**(-j)."""
        out = [0] * (self.n + 1)
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            for i in range(self.n + 1 - j):
                out[j + i] += c * comb(j + i - 1, i) * (-d) ** i
        return ChowClass(self.n, out)

    def degrees(self, k: int) -> tuple:
        """Degree list [a_k, ..., a_0] by descending dimension."""
        return tuple(self.coeffs[self.n - p] for p in range(k, -1, -1))

    def __eq__(self, other):
        return (isinstance(other, ChowClass) and self.n == other.n
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __str__(self):
        chunks = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                body = "%d" % abs(c)
            else:
                mono = "H" if j == 1 else "H^%d" % j
                body = mono if abs(c) == 1 else "%d*%s" % (abs(c), mono)
            if not chunks:
                chunks.append("-" + body if c < 0 else body)
            else:
                chunks.append(("- " if c < 0 else "+ ") + body)
        return " ".join(chunks) if chunks else "0"

    def __repr__(self):
        return "ChowClass(n=%d, %s)" % (self.n, self)


@dataclass(frozen=True)
class ClassReport:
    """Degrees plus pushforward of one computed class.

    ``degrees[i]`` is the degree of the dimension-(k-i) piece, equal to the
    coefficient of H**(n-(k-i)) in ``chow``; empty schemes give an empty list
    and the zero class.  ``d`` is the working hypersurface degree where one was
    used; ``euler`` is filled for CSM reports only.
    """

    kind: str
    n: int
    k: int
    d: int | None
    degrees: tuple
    chow: ChowClass
    seed: int
    euler: int | None = None


# -- residual degrees and the Segre class ---------------------------------------


def residual_degree(I: Ideal, d: int, e: int, policy: RandomPolicy) -> int:
    """Degree of the residual left by e random degree-d hypersurfaces through
    the scheme of I, zero when the residual is empty or of defect dimension.

    A residual of excess dimension means the draw missed the generic position
    promised by the Bertini-type theorem: redraw, up to the retry budget.
    """
    n = I.ring.nvars - 1
    k = I.hilbert_data().proj_dim
    if k < 0:
        raise ValidationError("residuals need a nonempty scheme")
    if not n - k <= e <= n:
        raise ValidationError("hypersurface count %d outside %d..%d" % (e, n - k, n))
    for attempt in range(policy.max_retries + 1):
        rng = random.Random(_child_seed(policy.seed, _RESIDUAL_TAG, e, attempt))
        cuts = [random_ideal_element(I, d, rng) for _ in range(e)]
        residual = saturation_by_ideal(Ideal(I.ring, cuts), I)
        hd = residual.hilbert_data()
        if hd.proj_dim == n - e:
            return hd.degree
        if hd.proj_dim < n - e:
            return 0
        policy.stats.count_retry()
    raise GenericityError(
        "residual dimension stayed above the expected %d after %d retries"
        % (n - e, policy.max_retries), seed=policy.seed)


def segre_from_residuals(n: int, k: int, d: int, residuals: Sequence[int]) -> tuple:
    """Solve the exact triangular system tying residual degrees to Segre
    degrees: for e = n-p,

        d**e = R_e + sum_{q=p..k} C(e, q-p) * d**(q-p) * s_q.

    Returns [s_k, ..., s_0] by descending dimension.
    """
    if len(residuals) != k + 1:
        raise ValidationError("expected %d residual degrees, got %d"
                              % (k + 1, len(residuals)))
    s = [0] * (k + 1)
    for p in range(k, -1, -1):
        e = n - p
        val = d ** e - residuals[k - p]
        for q in range(p + 1, k + 1):
            val -= comb(e, q - p) * d ** (q - p) * s[q]
        s[p] = val
    return tuple(s[p] for p in range(k, -1, -1))


def _residual_roundtrip(n: int, k: int, d: int, residuals: Sequence[int],
                        degrees: Sequence[int]):
    """Re-derive every residual degree from the solved Segre degrees."""
    s = {k - i: degrees[i] for i in range(k + 1)}
    for i, r in enumerate(residuals):
        e = n - k + i
        p = n - e
        expected = d ** e - sum(comb(e, q - p) * d ** (q - p) * s[q]
                                for q in range(p, k + 1))
        if expected != r:
            raise InvariantError(
                "solved class degrees do not reproduce residual %d at e=%d" % (r, e))


def _segre_degrees(I: Ideal, n: int, k: int, d: int, policy: RandomPolicy) -> tuple:
    residuals = [residual_degree(I, d, e, policy) for e in range(n - k, n + 1)]
    degrees = segre_from_residuals(n, k, d, residuals)
    _residual_roundtrip(n, k, d, residuals, degrees)
    return degrees


def _chow_from_degrees(n: int, k: int, degrees: Sequence[int]) -> ChowClass:
    coeffs = [0] * (n + 1)
    for i, a in enumerate(degrees):
        coeffs[n - (k - i)] = a
    return ChowClass(n, coeffs)


def segre_class(I: Ideal, policy: RandomPolicy) -> ClassReport:
    """Degrees and pushforward of the Segre class of the normal cone of V(I)."""
    n = I.ring.nvars - 1
    if I.is_zero_ideal():
        degrees = (1,) + (0,) * n
        return ClassReport("segre", n, n, None, degrees,
                           _chow_from_degrees(n, n, degrees), policy.seed)
    if I.hilbert_data().proj_dim == -1:
        return ClassReport("segre", n, -1, None, (), ChowClass(n), policy.seed)
    k = I.hilbert_data().proj_dim
    d = I.max_generator_degree()
    degrees = _segre_degrees(I, n, k, d, policy)
    if policy.verify:
        check = _segre_degrees(I, n, k, d, policy.child(_VERIFY_TAG))
        if check != degrees:
            raise GenericityError(
                "verification run with an independent seed disagrees: %s vs %s"
                % (degrees, check), seed=policy.seed)
    return ClassReport("segre", n, k, d, degrees,
                       _chow_from_degrees(n, k, degrees), policy.seed)


def chern_class(I: Ideal, policy: RandomPolicy) -> ClassReport:
    """Chern class of the tangent bundle for smooth V(I) (the Chern-Fulton
    class in general): (1+H)**(n+1) times the Segre pushforward."""
    base = segre_class(I, policy)
    chow = ChowClass.ambient_tangent(base.n) * base.chow
    degrees = chow.degrees(base.k) if base.k >= 0 else ()
    return ClassReport("chern", base.n, base.k, base.d, degrees, chow, policy.seed)


# -- CSM classes and the Euler characteristic ------------------------------------


def csm_hypersurface(f: Polynomial, policy: RandomPolicy) -> ChowClass:
    """CSM class pushforward of the hypersurface V(f), f squarefree.

    Combines the closed-form Segre class d*H/(1+d*H) of the hypersurface with
    the correction carried by the singularity subscheme Y:

        csm = (1+H)**(n+1) * ( s(V) + (1+dH)**(-1) * (dual(s(Y)) twisted by O(d)) )

    The (1+dH)**(-1) factor only moves classes below the top codimension, so
    isolated singularities do not feel it; curve-or-larger singular loci do.
    """
    if f.is_zero():
        raise ValidationError("CSM class of the zero polynomial")
    if not f.is_homogeneous():
        raise ValidationError("CSM input must be homogeneous")
    n = f.ring.nvars - 1
    d = f.degree
    hyper = ChowClass(n, [0] + [-(-d) ** j for j in range(1, n + 1)])
    sing = segre_class(jacobian_ideal(f), policy).chow
    line_inv = ChowClass(n, [(-d) ** j for j in range(n + 1)])
    return ChowClass.ambient_tangent(n) * (hyper + line_inv * sing.dual().tensor_line(d))


def csm_class(I: Ideal, policy: RandomPolicy, jobs: int = 1) -> ClassReport:
    """CSM class of V(I) by inclusion-exclusion over products of generators.

    Every nonempty subset of generators contributes the CSM class of the
    hypersurface cut out by the product, with alternating sign.  Subset terms
    use seed streams derived from the subset's binary index, so evaluation
    order (or thread scheduling under ``jobs``) cannot change the result.
    """
    n = I.ring.nvars - 1
    if I.is_zero_ideal():
        chow = ChowClass.ambient_tangent(n)
        return ClassReport("csm", n, n, None, chow.degrees(n), chow,
                           policy.seed, euler=chow[n])
    m = len(I.generators)
    if m > 8:
        warnings.warn("inclusion-exclusion over %d generators needs %d "
                      "hypersurface terms" % (m, 2 ** m - 1))

    def term(index: int) -> ChowClass:
        product = I.ring.one()
        for b in range(m):
            if index >> b & 1:
                product = product * I.generators[b]
        sign = 1 if bin(index).count("1") % 2 == 1 else -1
        return sign * csm_hypersurface(product, policy.child(_SUBSET_TAG, index))

    indices = range(1, 2 ** m)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(term, indices))
    else:
        parts = [term(i) for i in indices]
    chow = ChowClass(n)
    for part in parts:
        chow = chow + part
    k = I.hilbert_data().proj_dim
    degrees = chow.degrees(k) if k >= 0 else ()
    return ClassReport("csm", n, k, None, degrees, chow, policy.seed,
                       euler=chow[n])


def euler_characteristic(I: Ideal, policy: RandomPolicy, jobs: int = 1) -> int:
    """Topological Euler characteristic: the degree of the dimension-0 piece
    of the CSM class."""
    return csm_class(I, policy, jobs=jobs).euler


def euler_complement(I: Ideal, J: Ideal, policy: RandomPolicy, jobs: int = 1) -> int:
    """Euler characteristic of the open complement V(I) minus V(J)."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    total = euler_characteristic(I, policy, jobs=jobs)
    cut = euler_characteristic(I + J, policy, jobs=jobs)
    return total - cut
