"""Dense exact univariate polynomials over any supported field.

Coefficients are stored lowest degree first as a tuple of FieldElements
with no trailing zeros; the zero polynomial is the empty tuple.  Divided
powers enter through the Hasse derivative

    D^k(sum a_i x^i) = sum_{i>=k} C(i,k) a_i x^{i-k},

whose binomial coefficients are computed as integers and then mapped into
the coefficient field, so everything stays correct in characteristic p.
"""

from fractions import Fraction
import math

from .errors import FieldMismatch, GwinflectError, UndefinedResultant
from .fields import FieldElement, FunctionField, PrimeField, QQ, RatFn


def binomial_in(field, n, k):
    """C(n, k) as an element of field (0 when k < 0 or k > n)."""
    if k < 0 or k > n:
        return field.zero()
    return FieldElement(field, field.from_int(math.comb(n, k)))


class DensePoly:
    """Dense univariate polynomial; immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        elems = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.field != field:
                    raise FieldMismatch(f"coefficient over {c.field}, polynomial over {field}")
                elems.append(c)
            else:
                elems.append(field(c))
        while elems and not elems[-1]:
            elems.pop()
        self.field = field
        self.coeffs = tuple(elems)

    # -- constructors ---------------------------------------------------------
    @classmethod
    def x(cls, field):
        return cls(field, (field.zero(), field.one()))

    @classmethod
    def constant(cls, field, value):
        return cls(field, (field(value),))

    @classmethod
    def monomial(cls, field, k, coefficient=1):
        return cls(field, (0,) * k + (coefficient,))

    # -- structure ------------------------------------------------------------
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        if not self.coeffs:
            return self.field.zero()
        return self.coeffs[-1]

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, DensePoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.field.kind, tuple(c.key() for c in self.coeffs)))

    def __bool__(self):
        return bool(self.coeffs)

    def key(self):
        return tuple(c.key() for c in self.coeffs)

    # -- arithmetic -----------------------------------------------------------
    def _coerce_other(self, other):
        if isinstance(other, DensePoly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        return DensePoly(self.field, (other,))

    def __add__(self, other):
        other = self._coerce_other(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DensePoly(self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return DensePoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce_other(other))

    def __rsub__(self, other):
        return self._coerce_other(other) - self

    def __mul__(self, other):
        if isinstance(other, FieldElement) or not isinstance(other, DensePoly):
            scalar = self.field(other)
            return DensePoly(self.field, [c * scalar for c in self.coeffs])
        other = self._coerce_other(other)
        if self.is_zero() or other.is_zero():
            return DensePoly(self.field)
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return DensePoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = DensePoly.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce_other(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return DensePoly(self.field), self
        quo = [self.field.zero()] * (dq + 1)
        inv_lc = other.lc().inverse()
        db = other.degree()
        while len(rem) - 1 >= db and rem:
            c = rem[-1] * inv_lc
            k = len(rem) - 1 - db
            quo[k] = c
            for j in range(db + 1):
                rem[k + j] = rem[k + j] - c * other.coeffs[j]
            rem.pop()
            while rem and not rem[-1]:
                rem.pop()
        return DensePoly(self.field, quo), DensePoly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise GwinflectError("division was not exact")
        return q

    def scale(self, scalar):
        return self * self.field(scalar)

    def monic(self):
        if self.is_zero():
            return self
        return self * self.lc().inverse()

    # -- calculus -------------------------------------------------------------
    def hasse_derivative(self, k):
        """k-th Hasse derivative; binomials as integers mapped into the field."""
        if k < 0:
            raise ValueError("negative derivative order")
        if k == 0:
            return self
        out = []
        for i in range(k, len(self.coeffs)):
            out.append(binomial_in(self.field, i, k) * self.coeffs[i])
        return DensePoly(self.field, out)

    def derivative(self):
        """Usual first derivative (coincides with the first Hasse derivative)."""
        return self.hasse_derivative(1)

    def taylor_expand(self, a):
        """Coefficients of self in powers of (x - a); entry i is (D^i self)(a)."""
        a = self.field(a)
        shift = DensePoly(self.field, (-a, self.field.one()))
        rest = self
        out = []
        while not rest.is_zero():
            rest, r = divmod(rest, shift)
            out.append(r[0])
        return tuple(out)

    def eval(self, a):
        a = self.field(a) if not isinstance(a, FieldElement) else a
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def compose(self, other):
        """self(other(x))."""
        other = self._coerce_other(other)
        acc = DensePoly(self.field)
        for c in reversed(self.coeffs):
            acc = acc * other + DensePoly(self.field, (c,))
        return acc

    def shift_up(self, k):
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return DensePoly(self.field, (self.field.zero(),) * k + self.coeffs)

    # -- gcd / resultants -------------------------------------------------------
    def gcd(self, other):
        a, b = self, self._coerce_other(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def is_squarefree(self):
        d = self.derivative()
        if d.is_zero():
            return self.degree() <= 0
        return self.gcd(d).degree() == 0

    def squarefree_part(self):
        """self / gcd(self, self'); valid over perfect fields and Q."""
        if self.degree() <= 0:
            return self.monic()
        d = self.derivative()
        if d.is_zero():
            raise GwinflectError("vanishing derivative; use the factorizer for p-th powers")
        return self.exact_div(self.gcd(d)).monic()

    def resultant(self, other):
        """Res(self, other) by a remainder sequence with lc corrections; exact."""
        other = self._coerce_other(other)
        F = self.field
        if self.is_zero() and other.is_zero():
            raise UndefinedResultant("Res(0, 0) is undefined")
        if self.is_zero() or other.is_zero():
            return F.zero()
        a, b = self, other
        acc = F.one()
        sign = 1
        if a.degree() < b.degree():
            if (a.degree() * b.degree()) % 2 == 1:
                sign = -sign
            a, b = b, a
        while b.degree() > 0:
            r = a % b
            if r.is_zero():
                return F.zero()
            if (a.degree() * b.degree()) % 2 == 1:
                sign = -sign
            acc = acc * b.lc() ** (a.degree() - r.degree())
            a, b = b, r
        acc = acc * b.lc() ** a.degree()
        if sign < 0:
            acc = -acc
        return acc

    def discriminant(self):
        """disc(self) = (-1)^(d(d-1)/2) Res(self, D^1 self) / lc(self)."""
        d = self.degree()
        if d < 1:
            raise GwinflectError("discriminant needs degree >= 1")
        res = self.resultant(self.derivative())
        res = res * self.lc().inverse()
        if (d * (d - 1) // 2) % 2 == 1:
            res = -res
        return res

    # -- formatting / reductions ------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"DensePoly({self.field!r}, {format_poly(self)})"

    def map_coefficients(self, target_field, convert):
        return DensePoly(target_field, [convert(c) for c in self.coeffs])


def format_poly(poly, var="x"):
    if poly.is_zero():
        return "0"
    terms = []
    for i in range(poly.degree(), -1, -1):
        c = poly[i]
        if not c:
            continue
        cs = str(c)
        if i == 0:
            terms.append(cs)
            continue
        mono = var if i == 1 else f"{var}^{i}"
        if cs == "1":
            terms.append(mono)
        elif cs == "-1":
            terms.append(f"-{mono}")
        elif "/" in cs or " " in cs:
            terms.append(f"({cs})*{mono}")
        else:
            terms.append(f"{cs}*{mono}")
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def _fraction_denominators(poly):
    dens = []
    for c in poly.coeffs:
        p = c.payload
        if isinstance(p, Fraction):
            dens.append(p.denominator)
        elif isinstance(p, RatFn):
            if p.den != (Fraction(1),):
                return None
            dens.extend(fr.denominator for fr in p.num)
        else:
            return None
    return dens


def format_poly_cleared(poly, var="x"):
    """Render with the common denominator pulled out: '(3*x^4 + ...)/8'.

    Works over Q and over Q(param) when all coefficients are polynomial in
    the parameter; falls back to plain formatting otherwise.
    """
    dens = _fraction_denominators(poly)
    if dens is None:
        return format_poly(poly, var)
    lcm = 1
    for d in dens:
        lcm = lcm * d // math.gcd(lcm, d)
    if lcm == 1:
        return format_poly(poly, var)
    return f"({format_poly(poly * poly.field(lcm), var)})/{lcm}"


def reduce_poly_mod_p(poly, target):
    """Reduce a Q-coefficient polynomial mod p into GF(p).

    Raises BadReductionPrime when p divides some coefficient denominator.
    """
    if poly.field != QQ:
        raise GwinflectError("reduction expects a polynomial over Q")
    if not isinstance(target, PrimeField):
        raise GwinflectError("reduction target must be a prime field")
    return DensePoly(target, [target(c.payload) for c in poly.coeffs])


def lift_poly_to_qq(poly):
    """Lift a GF(p) polynomial to Q with coefficients in {0, ..., p-1}."""
    if not isinstance(poly.field, PrimeField):
        raise GwinflectError("lift expects a prime-field polynomial")
    return DensePoly(QQ, [Fraction(c.payload) for c in poly.coeffs])


def det_ring(rows, one):
    """Division-free determinant over any commutative ring.

    Entries need only +, unary -, *; expansion by dynamic programming over
    column subsets (n * 2^n products), fine for the small matrices used here.
    """
    n = len(rows)
    if n == 0:
        raise GwinflectError("empty matrix")
    if any(len(r) != n for r in rows):
        raise GwinflectError("matrix is not square")
    dp = {0: one}
    for k in range(n):
        nxt = {}
        row = rows[k]
        for mask, minor in dp.items():
            pos = 0
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    pos += 1
                    continue
                term = minor * row[j]
                if (pos + k) % 2:
                    term = -term
                new = mask | bit
                if new in nxt:
                    nxt[new] = nxt[new] + term
                else:
                    nxt[new] = term
        dp = nxt
    return dp[(1 << n) - 1]


def poly_over_function_field(ff, coeff_rows):
    """Polynomial over Q(var) from rows of numerator coefficient sequences."""
    if not isinstance(ff, FunctionField):
        raise GwinflectError("expected a rational function field")
    return DensePoly(ff, [ff.from_coeffs(row) if isinstance(row, (tuple, list)) else ff(row)
                          for row in coeff_rows])
