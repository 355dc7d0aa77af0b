"""Complete factorization over odd finite fields.

Pipeline: squarefree decomposition (with p-th-root descent when the
derivative vanishes), distinct-degree splitting by Frobenius powers, then
randomized Cantor-Zassenhaus equal-degree splitting.  The randomness comes
from a caller-seeded generator so runs are reproducible; the output is
canonically sorted, so equal inputs give byte-equal factor lists.
"""

import random

from .errors import GwinflectError, ZeroFactorization
from .fields import ExtensionField, PrimeField
from .poly import DensePoly


def _require_finite(field):
    if not isinstance(field, (PrimeField, ExtensionField)) or field.order is None:
        raise GwinflectError("factorization requires a finite field")
    if field.characteristic == 2:
        raise GwinflectError("characteristic 2 is excluded")


def _powmod(base, e, mod):
    result = DensePoly.constant(mod.field, 1)
    base = base % mod
    while e:
        if e & 1:
            result = result * base % mod
        base = base * base % mod
        e >>= 1
    return result


def _pth_root(f):
    """g with g^p = f, for f a polynomial in x^p over GF(p^n)."""
    field = f.field
    p = field.characteristic
    n = getattr(field, "n", 1)
    coeffs = []
    for i in range(0, f.degree() + 1, p):
        c = f[i]
        coeffs.append(c ** (p ** (n - 1)))
    for i in range(f.degree() + 1):
        if i % p and f[i]:
            raise GwinflectError("polynomial is not a p-th power")
    return DensePoly(field, coeffs)


def squarefree_decomposition(f):
    """Monic squarefree parts with multiplicities: f = lc * prod g_i^{e_i}."""
    _require_finite(f.field)
    if f.is_zero():
        raise ZeroFactorization("cannot factor the zero polynomial")
    p = f.field.characteristic
    out = []

    def rec(g, multiplier):
        g = g.monic()
        if g.degree() == 0:
            return
        dg = g.derivative()
        if dg.is_zero():
            rec(_pth_root(g), multiplier * p)
            return
        c = g.gcd(dg)
        w = g.exact_div(c)
        i = 1
        while w.degree() > 0:
            y = w.gcd(c)
            z = w.exact_div(y)
            if z.degree() > 0:
                out.append((z, i * multiplier))
            w = y
            c = c.exact_div(y)
            i += 1
        if c.degree() > 0:
            rec(_pth_root(c), multiplier * p)

    rec(f, 1)
    out.sort(key=lambda t: (t[1], t[0].degree(), t[0].key()))
    return out


def distinct_degree_split(f):
    """[(product of irreducibles of degree d, d)] for monic squarefree f."""
    field = f.field
    q = field.order
    x = DensePoly.x(field)
    out = []
    h = x
    d = 0
    rest = f
    while rest.degree() > 2 * (d + 1) - 1 and rest.degree() > 0:
        d += 1
        h = _powmod(h, q, rest)
        g = rest.gcd(h - x)
        if g.degree() > 0:
            out.append((g, d))
            rest = rest.exact_div(g)
            h = h % rest
    if rest.degree() > 0:
        out.append((rest, rest.degree()))
    return out


def equal_degree_split(f, d, rng):
    """Cantor-Zassenhaus split of monic squarefree f into its degree-d factors."""
    field = f.field
    q = field.order
    n = f.degree()
    if n == d:
        return [f]
    exponent = (q ** d - 1) // 2
    while True:
        r = DensePoly(field, [field.random_element(rng) for _ in range(n)])
        if r.degree() < 1:
            continue
        g = f.gcd(r)
        if 0 < g.degree() < n:
            break
        g = (_powmod(r, exponent, f) - 1).gcd(f)
        if 0 < g.degree() < n:
            break
    left = equal_degree_split(g.monic(), d, rng)
    right = equal_degree_split(f.exact_div(g).monic(), d, rng)
    return left + right


def factor_over_fq(f, seed=0):
    """Full factorization over GF(q), q odd.

    Returns (leading unit, [(monic irreducible, multiplicity)]) sorted by
    (degree, coefficient key); the product of factor powers times the unit
    reproduces the input exactly.
    """
    _require_finite(f.field)
    if f.is_zero():
        raise ZeroFactorization("cannot factor the zero polynomial")
    rng = random.Random(seed)
    unit = f.lc()
    factors = []
    for part, mult in squarefree_decomposition(f):
        for prod, d in distinct_degree_split(part):
            for irr in equal_degree_split(prod.monic(), d, rng):
                factors.append((irr, mult))
    factors.sort(key=lambda t: (t[0].degree(), t[0].key(), t[1]))
    return unit, factors


def roots_in_field(f, seed=0):
    """[(root, multiplicity)] over the coefficient field itself."""
    _, factors = factor_over_fq(f, seed=seed)
    out = []
    for irr, mult in factors:
        if irr.degree() == 1:
            out.append((-irr[0], mult))
    return out


def is_irreducible(f, seed=0):
    if f.degree() <= 0:
        return False
    if f.degree() == 1:
        return True
    _, factors = factor_over_fq(f, seed=seed)
    return len(factors) == 1 and factors[0][1] == 1
