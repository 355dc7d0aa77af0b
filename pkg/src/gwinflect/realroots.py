"""Sturm-sequence real root isolation and exactly represented algebraic reals.

Sturm chains are kept as primitive integer coefficient tuples (positive
rescaling preserves all sign data) so chain evaluation is pure integer
arithmetic: the sign of p(n/d) is the sign of sum c_i n^i d^(deg-i).

An AlgebraicReal is a squarefree rational minimal-candidate polynomial plus
an open isolating interval with rational non-root endpoints; lo == hi marks
an exactly known rational value.  Refinement bisects and never changes
which root is isolated.
"""

from fractions import Fraction
import math

from .errors import GwinflectError, ZeroIsolation
from .fields import QQ
from .poly import DensePoly


def _primitive_int(coeffs):
    """Scale Fraction coefficients by a positive rational into primitive ints."""
    fracs = [Fraction(c) for c in coeffs]
    if not any(fracs):
        return ()
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in fracs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return tuple(v // g for v in ints)


def _int_sign_at(coeffs, point):
    """Sign of the polynomial with integer coeffs at a Fraction point.

    Evaluates d^deg * p(n/d), an integer with the sign of p(n/d).
    """
    n, d = point.numerator, point.denominator
    acc = 0
    dp = 1
    for i in range(len(coeffs) - 1, -1, -1):
        acc = acc * n + coeffs[i] * dp
        dp *= d
    return (acc > 0) - (acc < 0)


def primitive_poly(poly):
    """The positively rescaled primitive integer version of a Q-polynomial."""
    return DensePoly(QQ, [Fraction(v) for v in _primitive_int(c.payload for c in poly.coeffs)])


def gcd_primitive(a, b):
    """Monic gcd over Q with per-step primitive reduction (no blowup)."""
    a = primitive_poly(a)
    b = primitive_poly(b)
    while not b.is_zero():
        r = a % b
        if not r.is_zero():
            r = primitive_poly(r)
        a, b = b, r
    return a.monic()


def squarefree_part(poly):
    """Primitive squarefree part of a Q-polynomial."""
    d = poly.derivative()
    if d.is_zero():
        raise GwinflectError("vanishing derivative")
    g = gcd_primitive(poly, d)
    if g.degree() == 0:
        return primitive_poly(poly)
    return primitive_poly(poly.exact_div(g))


_CHAIN_CACHE = {}
_SQFREE_CACHE = {}


def sturm_chain(poly):
    """Sturm chain of a Q-polynomial as primitive integer tuples; memoized."""
    if poly.field != QQ:
        raise GwinflectError("Sturm chains are computed over Q")
    cached = _CHAIN_CACHE.get(poly)
    if cached is not None:
        return cached
    chain = []
    f0 = poly
    f1 = poly.derivative()
    cur = _primitive_int(c.payload for c in f0.coeffs)
    if cur:
        chain.append(cur)
    nxt = _primitive_int(c.payload for c in f1.coeffs)
    if nxt:
        chain.append(nxt)
    a, b = f0, f1
    while not b.is_zero() and b.degree() > 0:
        r = -(a % b)
        if r.is_zero():
            break
        chain.append(_primitive_int(c.payload for c in r.coeffs))
        # primitive-part reduction keeps the chain's integer growth in check
        a, b = b, DensePoly(QQ, [Fraction(v) for v in chain[-1]])
    if len(_CHAIN_CACHE) > 256:
        _CHAIN_CACHE.clear()
    _CHAIN_CACHE[poly] = chain
    return chain


def _variations(signs):
    count = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _variations_at(chain, point):
    return _variations([_int_sign_at(c, point) for c in chain])


def count_real_roots(chain, lo, hi):
    """Distinct real roots in (lo, hi]; endpoints must not be roots of chain[0]."""
    return _variations_at(chain, lo) - _variations_at(chain, hi)


def cauchy_bound(poly):
    """B with every real root of poly strictly inside (-B, B)."""
    lc = abs(Fraction(poly.lc().payload))
    m = max((abs(Fraction(c.payload)) for c in poly.coeffs[:-1]), default=Fraction(0))
    return 1 + m / lc


class AlgebraicReal:
    """One real root of a squarefree rational polynomial, isolated exactly."""

    __slots__ = ("minpoly", "lo", "hi", "_chain")

    def __init__(self, minpoly, lo, hi, _chain=None):
        self.minpoly = minpoly
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self._chain = _chain

    @classmethod
    def from_rational(cls, value):
        value = Fraction(value)
        mp = DensePoly(QQ, [-value, 1])
        return cls(mp, value, value)

    @property
    def exact(self):
        return self.lo == self.hi

    def chain(self):
        if self._chain is None:
            self._chain = sturm_chain(self.minpoly)
        return self._chain

    def width(self):
        return self.hi - self.lo

    def refine(self, rounds=1):
        """Bisect; the isolated root never changes, width at least halves."""
        for _ in range(rounds):
            if self.exact:
                return self
            mid = (self.lo + self.hi) / 2
            s = _sign_of_poly_at(self.minpoly, mid)
            if s == 0:
                self.lo = self.hi = mid
                return self
            if _sign_of_poly_at(self.minpoly, self.lo) * s < 0:
                self.hi = mid
            else:
                self.lo = mid
        return self

    def refine_below(self, width):
        while not self.exact and self.width() > width:
            self.refine()
        return self

    def sign(self):
        return self.sign_of(DensePoly.x(QQ))

    def sign_of(self, g):
        """Exact sign of g(root) for a Q-polynomial g."""
        if g.field != QQ:
            raise GwinflectError("sign queries take Q-polynomials")
        if g.is_zero():
            return 0
        if g.degree() == 0 or self.exact:
            point = self.lo if self.exact else (self.lo + self.hi) / 2
            v = g.eval(point).payload
            return (v > 0) - (v < 0)
        h = gcd_primitive(self.minpoly, g)
        if h.degree() >= 1:
            # roots of h are roots of minpoly; the only one in our interval is self
            if _sign_of_poly_at(h, self.lo) * _sign_of_poly_at(h, self.hi) < 0:
                return 0
            hc = sturm_chain(h)
            if _int_sign_at(hc[0], self.lo) != 0 and _int_sign_at(hc[0], self.hi) != 0:
                if count_real_roots(hc, self.lo, self.hi) > 0:
                    return 0
        gs = _SQFREE_CACHE.get(g)
        if gs is None:
            if len(_SQFREE_CACHE) > 128:
                _SQFREE_CACHE.clear()
            gs = _SQFREE_CACHE[g] = squarefree_part(g)
        gc = sturm_chain(gs)
        while True:
            lo_sign = _sign_of_poly_at(gs, self.lo)
            hi_sign = _sign_of_poly_at(gs, self.hi)
            if lo_sign != 0 and hi_sign != 0 and count_real_roots(gc, self.lo, self.hi) == 0:
                v = g.eval((self.lo + self.hi) / 2).payload
                if v != 0:
                    return (v > 0) - (v < 0)
            self.refine()
            if self.exact:
                return self.sign_of(g)

    def compare_rational(self, q):
        return self.sign_of(DensePoly(QQ, [-Fraction(q), 1]))

    def compare(self, other):
        """-1/0/1 comparison against another AlgebraicReal, exact."""
        if not isinstance(other, AlgebraicReal):
            return self.compare_rational(other)
        if self.exact:
            return -other.compare_rational(self.lo)
        if other.exact:
            return self.compare_rational(other.lo)
        while True:
            if self.hi <= other.lo:
                return -1
            if other.hi <= self.lo:
                return 1
            g = gcd_primitive(self.minpoly, other.minpoly)
            if g.degree() >= 1:
                lo = max(self.lo, other.lo)
                hi = min(self.hi, other.hi)
                if lo < hi and _sign_of_poly_at(g, lo) != 0 and _sign_of_poly_at(g, hi) != 0:
                    if count_real_roots(sturm_chain(g), lo, hi) > 0:
                        return 0
            self.refine()
            other.refine()
            if self.exact or other.exact:
                return self.compare(other)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __eq__(self, other):
        if isinstance(other, AlgebraicReal):
            return self.compare(other) == 0
        return NotImplemented

    def __hash__(self):
        raise TypeError("AlgebraicReal is mutable under refinement; not hashable")

    def approx(self, width=Fraction(1, 1 << 24)):
        self.refine_below(width)
        return float((self.lo + self.hi) / 2)

    def __repr__(self):
        if self.exact:
            return f"AlgebraicReal({self.lo})"
        return f"AlgebraicReal(({self.lo}, {self.hi}))"


def _sign_of_poly_at(poly, point):
    v = poly.eval(Fraction(point)).payload
    return (v > 0) - (v < 0)


def sign_at(poly, point):
    """Exact sign of a Q-polynomial at a rational point."""
    return _sign_of_poly_at(poly, Fraction(point))


def algebraic_sign(gamma, g):
    """Exact sign of g(gamma); zero is certified through gcd with the minpoly."""
    return gamma.sign_of(g)


def _split_point(poly, lo, hi):
    # a non-root point near the middle; terminates since roots are finite
    denom = 2
    while True:
        for k in range(1, denom, 2):
            c = lo + (hi - lo) * Fraction(k, denom)
            if _sign_of_poly_at(poly, c) != 0:
                return c
        denom *= 2


def isolate_real_roots(poly):
    """One AlgebraicReal per distinct real root, sorted increasingly.

    Input is any nonzero Q-polynomial; isolation runs on its squarefree part.
    """
    if poly.field != QQ:
        raise GwinflectError("real-root isolation runs over Q")
    if poly.is_zero():
        raise ZeroIsolation("cannot isolate roots of the zero polynomial")
    if poly.degree() == 0:
        return []
    s = squarefree_part(poly)
    if s.degree() == 0:
        return []
    chain = sturm_chain(s)
    bound = cauchy_bound(s)
    total = count_real_roots(chain, -bound, bound)
    out = []
    stack = [(-bound, bound, total)]
    while stack:
        lo, hi, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            out.append(AlgebraicReal(s, lo, hi, _chain=chain))
            continue
        mid = _split_point(s, lo, hi)
        left = count_real_roots(chain, lo, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, cnt - left))
    out.sort(key=lambda r: (r.lo, r.hi))
    return out
