"""Inflection polynomials of y^2 = f(x): recursion, determinant, direct.

The atomic polynomial of index n is the polynomial P_n with

    D^n y = P_n * f^(-n) * y,

computed from the seed P_1 = (D^1 f)/2 by

    P_{m+1} = ((D^1 P_m) f + (1/2 - m) P_m (D^1 f)) / (m + 1).

In characteristic p the division by m+1 may be impossible; the polynomial
is then obtained by running the recursion on an integral lift of f over Q,
checking that every coefficient is p-integral, and reducing.  The general
polynomial for parameters (g, ell), ell > g, is the mu x mu determinant
(mu = ell - g) with (i, j) entry the atomic polynomial of index
ell + 1 + j - i; the independent construction, used as an oracle, expands
the defining Wronskian corner determinant det(D^j x^i y) through the
Hasse-Leibniz rule and strips the forced f-power.
"""

from dataclasses import dataclass

from .errors import GwinflectError, InternalInconsistency, LiftRequired, NonIntegralLift
from .fields import PrimeField
from .poly import DensePoly, binomial_in, det_ring, lift_poly_to_qq, reduce_poly_mod_p

_ATOMIC_CACHE = {}  # (field, f) -> [P_1, P_2, ...]; read-mostly, last write wins


def _atomic_list_char0(f, n):
    """P_1..P_n over a characteristic-0 coefficient field, by the recursion."""
    field = f.field
    if field.characteristic != 0:
        raise GwinflectError("the plain recursion requires characteristic 0")
    cached = _ATOMIC_CACHE.get(f)
    if cached is None or len(cached) < n:
        d1f = f.hasse_derivative(1)
        half = field(1) / field(2)
        ps = list(cached) if cached else [d1f.scale(half)]
        while len(ps) < n:
            m = len(ps)
            pm = ps[-1]
            nxt = pm.hasse_derivative(1) * f + pm * d1f.scale(half - field(m))
            ps.append(nxt.scale(field(m + 1).inverse()))
        _ATOMIC_CACHE[f] = ps
        cached = ps
    return cached[:n]


def atomic_p(n, f):
    """Atomic inflection polynomial P_n over a characteristic-0 field."""
    if n < 1:
        raise ValueError("atomic index must be >= 1")
    return _atomic_list_char0(f, n)[n - 1]


def atomic_p_charp(n, f, lift=None):
    """P_n over GF(p) through a characteristic-0 lift.

    lift defaults to coefficients in {0, ..., p-1}.  Every coefficient of the
    lifted P_n must be p-integral; a p in a denominator raises
    NonIntegralLift, which doubles as a test of the lifting theorem.
    """
    field = f.field
    if not isinstance(field, PrimeField):
        raise LiftRequired("the lift path needs a prime base field")
    p = field.p
    if lift is None:
        lift = lift_poly_to_qq(f)
    else:
        if reduce_poly_mod_p(lift, field) != f:
            raise GwinflectError("supplied lift does not reduce to f")
    lifted = atomic_p(n, lift)
    for c in lifted.coeffs:
        if c.payload.denominator % p == 0:
            raise NonIntegralLift(f"P_{n} has p={p} in a denominator; offending index {n}")
    return reduce_poly_mod_p(lifted, field)


def atomic_p_charp_direct(n, f):
    """P_n over GF(q) by running the recursion directly; needs p > n."""
    field = f.field
    p = field.characteristic
    if p and p <= n:
        raise LiftRequired(f"recursion divides by {p} before reaching P_{n}")
    d1f = f.hasse_derivative(1)
    half = field(1) / field(2)
    pm = d1f.scale(half)
    for m in range(1, n):
        nxt = pm.hasse_derivative(1) * f + pm * d1f.scale(half - field(m))
        pm = nxt.scale(field(m + 1).inverse())
    return pm


def atomic(n, f):
    """P_n over any supported coefficient field, choosing the valid route.

    Characteristic 0 runs the recursion; characteristic p runs it directly
    when every division by 2..n is invertible (p > n, provably equal to
    the lift route) and falls back to the lift over a prime base field.
    """
    field = f.field
    if field.characteristic == 0:
        return atomic_p(n, f)
    cached = _ATOMIC_CACHE.get(f)
    if cached is not None and len(cached) >= n:
        return cached[n - 1]
    if field.characteristic > n:
        d1f = f.hasse_derivative(1)
        half = field(1) / field(2)
        ps = list(cached) if cached else [d1f.scale(half)]
        while len(ps) < n:
            m = len(ps)
            pm = ps[-1]
            nxt = pm.hasse_derivative(1) * f + pm * d1f.scale(half - field(m))
            ps.append(nxt.scale(field(m + 1).inverse()))
        _ATOMIC_CACHE[f] = ps
        return ps[n - 1]
    if isinstance(field, PrimeField):
        return atomic_p_charp(n, f)
    raise LiftRequired(f"no lift route for P_{n} over {field!r}")


def inflection_poly(g, ell, f):
    """P_{g,ell} as the determinant of atomic polynomials, ell > g >= 1.

    Entry (i, j) is the atomic polynomial of index ell + 1 + j - i.  (The
    index is fixed by the defining determinant below: the mu = 1 case must
    reduce to the atomic polynomial of index g + 2.)
    """
    _check_gl(g, ell)
    mu = ell - g
    atoms = {k: atomic(k, f) for k in range(ell + 2 - mu, ell + mu + 1)}
    rows = [[atoms[ell + 1 + j - i] for j in range(mu)] for i in range(mu)]
    return det_ring(rows, DensePoly.constant(f.field, 1))


def inflection_poly_direct(g, ell, f):
    """P_{g,ell} from the defining corner Wronskian, as an independent oracle.

    Builds f^j D^j(x^i y) = sum_k C(i,k) x^(i-k) P_(j-k) f^k by the
    Hasse-Leibniz rule for 0 <= i <= mu-1, ell+1 <= j <= 2*ell-g, takes the
    determinant and strips the forced factor f^C(mu,2) exactly.
    """
    _check_gl(g, ell)
    field = f.field
    mu = ell - g
    top = 2 * ell - g
    atoms = {k: atomic(k, f) for k in range(ell + 2 - mu, top + 1)}
    x = DensePoly.x(field)
    xpow = [DensePoly.constant(field, 1)]
    fpow = [DensePoly.constant(field, 1)]
    for _ in range(mu):
        xpow.append(xpow[-1] * x)
        fpow.append(fpow[-1] * f)
    rows = []
    for i in range(mu):
        row = []
        for j in range(ell + 1, top + 1):
            acc = DensePoly(field)
            for k in range(0, min(i, j) + 1):
                b = binomial_in(field, i, k)
                if not b:
                    continue
                acc = acc + xpow[i - k] * atoms[j - k] * fpow[k] * b
            row.append(acc)
        rows.append(row)
    det = det_ring(rows, DensePoly.constant(field, 1))
    strip = f ** (mu * (mu - 1) // 2)
    quotient, rem = divmod(det, strip)
    if not rem.is_zero():
        raise InternalInconsistency("corner Wronskian is not divisible by the forced f-power")
    return quotient


def _check_gl(g, ell):
    if g < 1:
        raise ValueError("genus must be >= 1")
    if ell <= g:
        raise ValueError("inflection polynomials need ell > g")


@dataclass(frozen=True)
class InflectionPolynomial:
    """Record of one computed inflection polynomial with its provenance."""

    g: int
    ell: int
    poly: DensePoly
    provenance: str  # "recursion" | "determinant" | "direct"

    @classmethod
    def build(cls, g, ell, f, provenance="determinant"):
        if provenance == "determinant":
            poly = inflection_poly(g, ell, f)
        elif provenance == "direct":
            poly = inflection_poly_direct(g, ell, f)
        elif provenance == "recursion":
            if ell != g + 1:
                raise GwinflectError("the recursion route is the atomic case ell = g + 1")
            poly = atomic(g + 2, f)
        else:
            raise ValueError(f"unknown provenance {provenance!r}")
        return cls(g, ell, poly, provenance)

    @property
    def atomic_index(self):
        return self.g + 2 if self.ell == self.g + 1 else None
