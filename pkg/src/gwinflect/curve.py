"""Hyperelliptic curve model, coordinate ring, Wronskians, lattice paths.

The affine model is y^2 = f(x) with f squarefree of odd degree 2g + 1; the
second chart (w^2 = h(z) with h(z) = z^(2g+2) f(1/z)) covers the single
point above x = infinity.  Functions on either chart live in a rank-2
module over the polynomial ring: a(x) + b(x) y, reduced through y^2 -> f.

Hasse derivatives of y enter as D^n y = P_n f^(-n) y with P_n the atomic
inflection polynomial, so Wronskian matrices can be cleared of
denominators row by row: the determinant of (f^i D^i lambda_j) equals
f^C(r+1,2) w(lambda).
"""

from dataclasses import dataclass
import math

from .errors import DependentBasis, GwinflectError
from .fields import FieldElement
from .inflection import atomic
from .poly import DensePoly, det_ring
from .series import TruncatedSeries, expand_curve_series


class QuadraticRing:
    """Functions a + b*y on y^2 = modulus(x); the reduction is immediate."""

    __slots__ = ("field", "modulus")

    def __init__(self, modulus):
        self.field = modulus.field
        self.modulus = modulus

    def __eq__(self, other):
        return isinstance(other, QuadraticRing) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("QuadraticRing", self.modulus))

    def element(self, a, b=None):
        zero = DensePoly(self.field)
        if isinstance(a, CurveFunction):
            return a
        if not isinstance(a, DensePoly):
            a = DensePoly.constant(self.field, a)
        if b is None:
            b = zero
        elif not isinstance(b, DensePoly):
            b = DensePoly.constant(self.field, b)
        return CurveFunction(self, a, b)

    def zero(self):
        return self.element(DensePoly(self.field))

    def one(self):
        return self.element(DensePoly.constant(self.field, 1))

    def y(self):
        return self.element(DensePoly(self.field), DensePoly.constant(self.field, 1))

    def x(self):
        return self.element(DensePoly.x(self.field))


class CurveFunction:
    """a(x) + b(x)*y in a quadratic coordinate ring; unique representation."""

    __slots__ = ("ring", "a", "b")

    def __init__(self, ring, a, b):
        self.ring = ring
        self.a = a
        self.b = b

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, CurveFunction):
            return NotImplemented
        return self.ring == other.ring and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __add__(self, other):
        other = self.ring.element(other)
        return CurveFunction(self.ring, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return CurveFunction(self.ring, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self.ring.element(other))

    def __mul__(self, other):
        if isinstance(other, (DensePoly, FieldElement, int)):
            other = self.ring.element(other)
        return CurveFunction(self.ring,
                             self.a * other.a + self.b * other.b * self.ring.modulus,
                             self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def divisible_by(self, poly):
        return (self.a % poly).is_zero() and (self.b % poly).is_zero()

    def exact_div_poly(self, poly):
        return CurveFunction(self.ring, self.a.exact_div(poly), self.b.exact_div(poly))

    def evaluate(self, x0, y0):
        return self.a.eval(x0) + self.b.eval(x0) * y0

    def eval_series(self, x_series, y_series):
        field = x_series.field
        prec = min(x_series.prec, y_series.prec)
        acc = TruncatedSeries.zero(field, prec)
        for c in reversed(self.a.coeffs):
            acc = acc * x_series + c
        accb = TruncatedSeries.zero(field, prec)
        for c in reversed(self.b.coeffs):
            accb = accb * x_series + c
        return acc + accb * y_series

    def __str__(self):
        if self.b.is_zero():
            return str(self.a)
        ys = f"({self.b})*y" if self.b.degree() > 0 or "/" in str(self.b) else f"{self.b}*y"
        if self.a.is_zero():
            return ys
        return f"{self.a} + {ys}"

    def __repr__(self):
        return f"CurveFunction({self})"


class HyperellipticCurve:
    """y^2 = f(x), deg f = 2g + 1 odd, f squarefree, char != 2."""

    __slots__ = ("f", "genus", "ring", "_infinity_ring")

    def __init__(self, f):
        field = f.field
        if field.characteristic == 2:
            raise GwinflectError("characteristic 2 is excluded")
        d = f.degree()
        if d < 3 or d % 2 == 0:
            raise GwinflectError("the model needs deg f = 2g + 1 >= 3")
        d1 = f.derivative()
        if d1.is_zero() or f.gcd(d1).degree() != 0:
            raise GwinflectError("f must be squarefree (smooth affine curve)")
        self.f = f
        self.genus = (d - 1) // 2
        self.ring = QuadraticRing(f)
        self._infinity_ring = None

    @property
    def field(self):
        return self.f.field

    def __repr__(self):
        return f"HyperellipticCurve(y^2 = {self.f})"

    def curve_at_infinity(self):
        """h(z) = z^(2g+2) f(1/z); (D^1 h)(0) is the leading coefficient of f."""
        coeffs = [self.field.zero()]
        for i in range(self.f.degree(), -1, -1):
            coeffs.append(self.f[i])
        return DensePoly(self.field, coeffs)

    def infinity_ring(self):
        if self._infinity_ring is None:
            self._infinity_ring = QuadraticRing(self.curve_at_infinity())
        return self._infinity_ring

    def hasse_derivative_y(self, n):
        """(P_n, n) with D^n y = P_n f^(-n) y; n = 0 gives (1, 0)."""
        if n < 0:
            raise ValueError("negative derivative order")
        if n == 0:
            return DensePoly.constant(self.field, 1), 0
        return atomic(n, self.f), n


def monomial_basis(curve, ell):
    """Basis of H^0(O(2*ell*infinity)) in the fixed order of the index formulas.

    ell <= g: (1, x, ..., x^ell); ell > g: (1, y, x, x y, ...,
    x^(ell-g-1), x^(ell-g-1) y; x^(ell-g), ..., x^ell).
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    ring = curve.ring
    g = curve.genus
    x = DensePoly.x(curve.field)
    if ell <= g:
        return [ring.element(x ** k) for k in range(ell + 1)]
    out = []
    for k in range(ell - g):
        out.append(ring.element(x ** k))
        out.append(CurveFunction(ring, DensePoly(curve.field), x ** k))
    for k in range(ell - g, ell + 1):
        out.append(ring.element(x ** k))
    return out


def infinity_basis_exponents(curve, ell):
    """Local representations of the basis on the infinity chart.

    Under the z^ell trivialization, x^k becomes z^(ell-k) and x^k y becomes
    z^(ell-g-1-k) w; returned as (z-exponent, w-exponent) pairs in the same
    order as monomial_basis.
    """
    g = curve.genus
    if ell <= g:
        return [(ell - k, 0) for k in range(ell + 1)]
    out = []
    for k in range(ell - g):
        out.append((ell - k, 0))
        out.append((ell - g - 1 - k, 1))
    for k in range(ell - g, ell + 1):
        out.append((ell - k, 0))
    return out


def hasse_wronskian(curve, basis, coordinate="x"):
    """(numerator CurveFunction, e) with w(basis) = numerator * f^(-e).

    The Wronskian matrix (D^i lambda_j) in the given etale coordinate has
    row i cleared by f^i, so e starts at C(r+1, 2) and common f-factors of
    the determinant are cancelled.  coordinate "x" works on the affine
    chart; "w" takes basis elements of the infinity chart (in z and w) and
    differentiates with respect to z, clearing powers of h.
    """
    if coordinate == "x":
        ring = curve.ring
        modulus = curve.f
    elif coordinate == "w":
        ring = curve.infinity_ring()
        modulus = ring.modulus
    else:
        raise ValueError("coordinate must be 'x' or 'w'")
    n = len(basis)
    field = curve.field
    atoms = [DensePoly.constant(field, 1)]
    fpow = [DensePoly.constant(field, 1)]
    for k in range(1, n):
        atoms.append(atomic(k, modulus))
        fpow.append(fpow[-1] * modulus)
    rows = []
    for i in range(n):
        row = []
        for lam in basis:
            # f^i D^i (a + b y) = f^i D^i a + sum_k (D^k b) P_(i-k) f^k y
            apart = lam.a.hasse_derivative(i) * fpow[i]
            bpart = DensePoly(field)
            for k in range(0, i + 1):
                dkb = lam.b.hasse_derivative(k)
                if dkb.is_zero():
                    continue
                bpart = bpart + dkb * atoms[i - k] * fpow[k]
            row.append(CurveFunction(ring, apart, bpart))
        rows.append(row)
    det = det_ring(rows, ring.one())
    if det.is_zero():
        raise DependentBasis("Wronskian vanishes identically")
    e = n * (n - 1) // 2
    while e > 0 and det.divisible_by(modulus):
        det = det.exact_div_poly(modulus)
        e -= 1
    return det, e


def wronskian_permutation_sign(g, ell):
    """Sign relating w(basis) to (f^-(ell+1) y)^mu P_{g,ell} for ell > g.

    The interleaved basis (1, y, x, x y, ...) reorders to
    (1, x, ..., x^ell; y, ..., x^(mu-1) y) with mu*ell - C(mu,2) inversions.
    For ell odd this equals the simplified sign (-1)^C(mu+1,2); for even
    ell the two differ by (-1)^mu, which callers working outside the
    ell = 1 mod 4 orientation regime must keep in mind.
    """
    mu = ell - g
    return -1 if (mu * ell - mu * (mu - 1) // 2) % 2 else 1


def matrix_M(ell, g):
    """(g+1)x(g+1) integer matrix with entries C(ell-g+j, 2j-i)."""
    if not ell > g >= 1:
        raise ValueError("need ell > g >= 1")
    return [[math.comb(ell - g + j, 2 * j - i) if 0 <= 2 * j - i <= ell - g + j else 0
             for j in range(g + 1)] for i in range(g + 1)]


def det_M(ell, g):
    return det_ring(matrix_M(ell, g), 1)


def gv_path_count(ell, g):
    """Vertex-disjoint tuples of monotone lattice paths, counted exhaustively.

    Path i runs from (i, -i) on x + y = 0 to (2i, ell - g - i) on
    x + 2y = 2(ell - g) with unit East/North steps; the count matches
    det_M(ell, g) by the Gessel-Viennot lemma, which is exactly what the
    tests assert.
    """
    if not ell > g >= 1:
        raise ValueError("need ell > g >= 1")
    starts = [(i, -i) for i in range(g + 1)]
    ends = [(2 * i, ell - g - i) for i in range(g + 1)]

    def paths_from(pos, end, blocked, acc):
        if pos == end:
            yield acc
            return
        x, y = pos
        ex, ey = end
        if x < ex:
            nxt = (x + 1, y)
            if nxt not in blocked:
                yield from paths_from(nxt, end, blocked, acc + [nxt])
        if y < ey:
            nxt = (x, y + 1)
            if nxt not in blocked:
                yield from paths_from(nxt, end, blocked, acc + [nxt])

    def count_tuples(i, blocked):
        if i == g + 1:
            return 1
        start, end = starts[i], ends[i]
        if start in blocked:
            return 0
        total = 0
        for path in paths_from(start, end, blocked, [start]):
            total += count_tuples(i + 1, blocked | set(path))
        return total

    return count_tuples(0, frozenset())


@dataclass(frozen=True)
class RamificationPoint:
    """A point of the ramification locus: infinity, or an affine root datum.

    gamma is one of: a FieldElement (rational root of f), a monic
    irreducible factor of f (closed point over a finite field), or an
    AlgebraicReal (real viewpoint).
    """

    at_infinity: bool
    gamma: object = None

    @classmethod
    def infinity(cls):
        return cls(True)

    @classmethod
    def affine(cls, gamma):
        return cls(False, gamma)


class ExpandedPoint:
    """Series coordinates of the curve at a point, in a Nisnevich parameter.

    Affine points use s = (y - y0) - b (x - x0); infinity uses s = w.  The
    stored series are the full coordinates (x, y) or (z, w).
    """

    __slots__ = ("x_series", "y_series", "at_infinity", "slope")

    def __init__(self, x_series, y_series, at_infinity, slope):
        self.x_series = x_series
        self.y_series = y_series
        self.at_infinity = at_infinity
        self.slope = slope


def expand_at_point(curve, point, b, order):
    """Solve the curve equation for the coordinates as series at a point.

    point: (x0, y0) pair of field elements, or RamificationPoint.  The
    linear coefficient data follows the curve equation exactly; the
    expansion is verified by resubstitution before being returned.
    """
    field = curve.field
    if order < 1:
        raise ValueError("order must be >= 1")
    if isinstance(point, RamificationPoint) and point.at_infinity:
        h = curve.curve_at_infinity()
        z, w = expand_curve_series(h.taylor_expand(field.zero()), field.zero(),
                                   field.zero(), order)
        return ExpandedPoint(z, w, True, field.zero())
    if isinstance(point, RamificationPoint):
        x0, y0 = point.gamma, field.zero()
    else:
        x0, y0 = point
    x0 = field(x0)
    y0 = field(y0)
    if y0 * y0 != curve.f.eval(x0):
        raise GwinflectError("point does not lie on the curve")
    b = field(b)
    xp, yp = expand_curve_series(curve.f.taylor_expand(x0), y0, b, order)
    x_full = xp + TruncatedSeries.constant(field, x0, order)
    y_full = yp + TruncatedSeries.constant(field, y0, order)
    return ExpandedPoint(x_full, y_full, False, b)
