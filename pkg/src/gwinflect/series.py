"""Truncated power series with explicit precision, and curve expansions.

A TruncatedSeries holds the coefficients 0..prec-1 of a series known
modulo s^prec.  Addition and multiplication stay honest about precision
(the result is known modulo s^min(prec)); Hasse derivatives drop it by the
derivative order.  Over a prime field, multiplication packs coefficients
into one big integer so the convolution runs as a single int multiply.

expand_curve_series solves (y0 + s + b*X)^2 = f(x0 + X) for X as a series
in the local parameter s of the linear projection y - b*x, by fixed-point
iteration; one order of precision is gained per pass and the result is
verified against the defining equation before it is returned.
"""

from .errors import GwinflectError, SingularExpansion, TruncationTooShort
from .fields import FieldElement, PrimeField
from .poly import binomial_in


class TruncatedSeries:
    __slots__ = ("field", "coeffs", "prec")

    def __init__(self, field, coeffs, prec):
        if prec < 1:
            raise GwinflectError("series precision must be >= 1")
        elems = []
        for c in coeffs[:prec]:
            elems.append(c if isinstance(c, FieldElement) else field(c))
        zero = field.zero()
        while len(elems) < prec:
            elems.append(zero)
        self.field = field
        self.coeffs = tuple(elems)
        self.prec = prec

    @classmethod
    def zero(cls, field, prec):
        return cls(field, (), prec)

    @classmethod
    def constant(cls, field, value, prec):
        return cls(field, (value,), prec)

    @classmethod
    def parameter(cls, field, prec):
        return cls(field, (0, 1), prec)

    def truncate(self, prec):
        if prec > self.prec:
            raise TruncationTooShort("cannot extend known precision")
        return TruncatedSeries(self.field, self.coeffs[:prec], prec)

    def __add__(self, other):
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        return TruncatedSeries(self.field,
                               [self.coeffs[i] + other.coeffs[i] for i in range(prec)], prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.field, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if other.field != self.field:
                raise GwinflectError("series over different fields")
            return other
        return TruncatedSeries(self.field, (self.field(other),), self.prec)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            scalar = self.field(other)
            return TruncatedSeries(self.field, [c * scalar for c in self.coeffs], self.prec)
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        field = self.field
        if isinstance(field, PrimeField):
            out = _mul_mod_p([c.payload for c in self.coeffs[:prec]],
                             [c.payload for c in other.coeffs[:prec]], field.p, prec)
            return TruncatedSeries(field, [FieldElement(field, v) for v in out], prec)
        zero = field.zero()
        out = [zero] * prec
        for i, a in enumerate(self.coeffs[:prec]):
            if not a:
                continue
            for j, b in enumerate(other.coeffs[:prec - i]):
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(field, out, prec)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise GwinflectError("negative series power")
        result = TruncatedSeries.constant(self.field, self.field.one(), self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.field == other.field and self.prec == other.prec
                and self.coeffs == other.coeffs)

    def hasse_derivative(self, k):
        """k-th Hasse derivative in the series parameter; precision drops by k."""
        if k == 0:
            return self
        prec = self.prec - k
        if prec < 1:
            raise TruncationTooShort(f"precision {self.prec} cannot support D^{k}")
        out = []
        for i in range(prec):
            out.append(binomial_in(self.field, i + k, k) * self.coeffs[i + k])
        return TruncatedSeries(self.field, out, prec)

    def is_zero_to_prec(self):
        return all(not c for c in self.coeffs)

    def valuation_and_lead(self):
        """(order of vanishing, leading coefficient); raises if zero to precision."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i, c
        raise TruncationTooShort(f"series vanishes to the known precision {self.prec}")

    def __repr__(self):
        terms = [f"{c}*s^{i}" for i, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"({body} + O(s^{self.prec}))"


def _mul_mod_p(a, b, p, prec):
    """Convolution mod p via Kronecker packing into a single integer."""
    n = min(len(a), prec)
    m = min(len(b), prec)
    if n == 0 or m == 0:
        return [0] * prec
    bits = ((p - 1) * (p - 1) * min(n, m)).bit_length() + 1
    pa = 0
    for i in range(n - 1, -1, -1):
        pa = (pa << bits) | a[i]
    pb = 0
    for i in range(m - 1, -1, -1):
        pb = (pb << bits) | b[i]
    prod = pa * pb
    mask = (1 << bits) - 1
    out = []
    for _ in range(prec):
        out.append((prod & mask) % p)
        prod >>= bits
    return out


def series_from_poly_shifted(poly, center, prec):
    """The series of poly(center + X) in X: Taylor coefficients at center."""
    return TruncatedSeries(poly.field, poly.taylor_expand(center), prec)


def expand_curve_series(taylor, y0, b, prec):
    """Solve (y0 + s + b*X)^2 = sum_k taylor[k] X^k for X(s), X(0) = 0.

    taylor[k] = (D^k f)(x0), so taylor[0] must equal y0^2 (the point lies on
    the curve).  Returns (X, Y) with Y = s + b*X, both known mod s^prec.
    Raises SingularExpansion when the linearization taylor[1] - 2*y0*b is
    not invertible (f not squarefree at the point, or a bad slope).
    """
    field = y0.field
    t = list(taylor)
    if t[0] != y0 * y0:
        raise GwinflectError("expansion point does not lie on the curve")
    t1 = t[1] if len(t) > 1 else field.zero()
    c_lin = t1 - (y0 + y0) * b
    if not c_lin:
        raise SingularExpansion("non-invertible linearization at the expansion point")
    c_inv = c_lin.inverse()
    s = TruncatedSeries.parameter(field, prec)
    x_part = TruncatedSeries.zero(field, prec)
    two_y0 = y0 + y0
    tail = t[2:]
    for _ in range(prec):
        y_part = s + b * x_part
        acc = TruncatedSeries.zero(field, prec)
        for coeff in reversed(tail):
            acc = acc * x_part + coeff
        x_new = (two_y0 * s + y_part * y_part - acc * x_part * x_part) * c_inv
        if x_new == x_part:
            break
        x_part = x_new
    y_part = s + b * x_part
    lhs = y_part + y0
    total = lhs * lhs
    rhs = TruncatedSeries.zero(field, prec)
    for coeff in reversed(t):
        rhs = rhs * x_part + coeff
    if not (total - rhs).is_zero_to_prec():
        raise GwinflectError("curve expansion failed verification")
    return x_part, y_part


def det_series(matrix):
    """Determinant of a square matrix of series, division-free.

    Expansion by dynamic programming over column subsets; the result is
    known modulo s^min(entry precisions).
    """
    n = len(matrix)
    if n == 0:
        raise GwinflectError("empty matrix")
    field = matrix[0][0].field
    prec = min(e.prec for row in matrix for e in row)
    rows = [[e.truncate(prec) for e in row] for row in matrix]
    if any(len(row) != n for row in rows):
        raise GwinflectError("matrix is not square")
    # dp over bitmask of used columns; dp[mask] = minor of first popcount(mask) rows
    dp = {0: TruncatedSeries.constant(field, field.one(), prec)}
    for k in range(n):
        nxt = {}
        row = rows[k]
        for mask, minor in dp.items():
            pos = 0  # used columns left of j; expansion along row k gives (-1)^(k+pos)
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
