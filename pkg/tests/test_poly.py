import math
import random
from fractions import Fraction
from itertools import product

import pytest

from gwinflect.errors import UndefinedResultant, ZeroFactorization, ZeroIsolation
from gwinflect.factor import factor_over_fq, roots_in_field
from gwinflect.fields import GF, FunctionField, QQ
from gwinflect.poly import DensePoly, format_poly
from gwinflect.realroots import isolate_real_roots

from conftest import random_poly, random_squarefree


def test_hasse_derivative_examples():
    x2 = DensePoly(QQ, [0, 0, 1])
    assert x2.hasse_derivative(1) == DensePoly(QQ, [0, 2])
    x5 = DensePoly(GF(5), [0] * 5 + [1])
    assert x5.hasse_derivative(2).is_zero()            # C(5,2) = 10 = 0 mod 5
    for p in (3, 5, 7):
        xp = DensePoly(GF(p), [0] * p + [1])
        assert xp.hasse_derivative(p) == DensePoly.constant(GF(p), 1)
        # the p-fold usual derivative dies
        usual = xp
        for _ in range(p):
            usual = usual.derivative()
        assert usual.is_zero()


def test_taylor_examples():
    x2 = DensePoly(QQ, [0, 0, 1])
    assert x2.taylor_expand(1) == (QQ(1), QQ(2), QQ(1))
    c = DensePoly.constant(QQ, 7)
    assert c.taylor_expand(3) == (QQ(7),)


def test_taylor_round_trip(rng):
    f7 = GF(7)
    for _ in range(20):
        p = random_poly(f7, 6, rng)
        a = f7(3)
        coeffs = p.taylor_expand(a)
        shift = DensePoly(f7, [-a, f7.one()])
        acc = DensePoly(f7)
        for c in reversed(coeffs):
            acc = acc * shift + DensePoly.constant(f7, c)
        assert acc == p
        # entry i is the i-th Hasse derivative at a
        for i, c in enumerate(coeffs):
            assert p.hasse_derivative(i).eval(a) == c


def test_hasse_leibniz(rng):
    for field in (QQ, GF(5), GF(13)):
        for _ in range(40):
            f = random_poly(field, rng.randint(0, 5), rng)
            g = random_poly(field, rng.randint(0, 5), rng)
            k = rng.randint(0, 5)
            lhs = (f * g).hasse_derivative(k)
            rhs = DensePoly(field)
            for i in range(k + 1):
                rhs = rhs + f.hasse_derivative(i) * g.hasse_derivative(k - i)
            assert lhs == rhs


def test_composition_rule(rng):
    # D^1 D^n = (n+1) D^(n+1)
    for field in (QQ, GF(7)):
        for _ in range(30):
            f = random_poly(field, rng.randint(1, 7), rng)
            n = rng.randint(0, 4)
            lhs = f.hasse_derivative(n).hasse_derivative(1)
            rhs = f.hasse_derivative(n + 1) * field(n + 1)
            assert lhs == rhs


def test_k_factorial_relation(rng):
    for _ in range(25):
        f = random_poly(QQ, rng.randint(0, 7), rng)
        k = rng.randint(0, 4)
        usual = f
        for _ in range(k):
            usual = usual.derivative()
        assert f.hasse_derivative(k) * QQ(math.factorial(k)) == usual


def _hasse_faa_di_bruno(f, g, k):
    """D^k(f o g) via the partition formula, as an independent oracle."""
    field = f.field
    out = DensePoly(field)
    for cs in _compositions(k):
        total = sum(cs)
        coeff = math.factorial(total)
        for c in cs:
            coeff //= math.factorial(c)
        term = f.hasse_derivative(total).compose(g) * field(coeff)
        for j, c in enumerate(cs, start=1):
            term = term * g.hasse_derivative(j) ** c
        out = out + term
    return out


def _compositions(k):
    """All (c_1, ..., c_k) with sum i*c_i = k, c_i >= 0."""
    if k == 0:
        return [()]
    results = []

    def rec(i, remaining, acc):
        if i > k:
            if remaining == 0:
                results.append(tuple(acc))
            return
        for c in range(remaining // i + 1):
            rec(i + 1, remaining - i * c, acc + [c])

    rec(1, k, [])
    return results


def test_faa_di_bruno(rng):
    for field in (QQ, GF(7)):
        for _ in range(12):
            f = random_poly(field, rng.randint(1, 5), rng)
            g = random_poly(field, rng.randint(1, 5), rng)
            for k in range(0, 7):
                assert f.compose(g).hasse_derivative(k) == _hasse_faa_di_bruno(f, g, k)


def test_resultant_examples():
    qb = FunctionField("b")
    for c in (0, 1, 2, 5):
        pol = DensePoly(qb, [c, qb.gen(), 1])
        disc = pol.discriminant()
        assert disc == qb.from_coeffs([-4 * c, 0, 1])   # b^2 - 4c
    a, b = QQ(3), QQ(7)
    res = DensePoly(QQ, [-a, QQ.one()]).resultant(DensePoly(QQ, [-b, QQ.one()]))
    assert res == a - b
    with pytest.raises(UndefinedResultant):
        DensePoly(QQ).resultant(DensePoly(QQ))


def test_resultant_vs_root_product(rng):
    f13 = GF(13)
    for _ in range(15):
        f = random_squarefree(f13, 3, rng)
        g = random_poly(f13, 2, rng)
        if g.degree() < 2:
            continue
        res = f.resultant(g)
        expected = f13.one()
        count = 0
        for r, _ in roots_in_field(f):
            expected = expected * g.eval(r)
            count += 1
        if count == 3:   # f splits: Res(f, g) = lc(f)^deg g * prod g(root)
            assert res == expected * f.lc() ** g.degree()


def test_factorization_examples():
    f7 = GF(7)
    _, fac = factor_over_fq(DensePoly(f7, [-1, 0, 1]))
    assert [(str(i), m) for i, m in fac] == [("x + 1", 1), ("x + 6", 1)]
    _, fac = factor_over_fq(DensePoly(f7, [1, 0, 1]))
    assert len(fac) == 1 and fac[0][0].degree() == 2    # -1 nonsquare mod 7 (7 = 3 mod 4)
    f5 = GF(5)
    _, fac = factor_over_fq(DensePoly(f5, [-2, 1]) ** 3)
    assert len(fac) == 1 and fac[0][1] == 3
    with pytest.raises(ZeroFactorization):
        factor_over_fq(DensePoly(f5))


def test_factorization_remultiplies(rng):
    for field in (GF(13), GF(5), GF(3, 2)):
        for _ in range(10):
            f = random_poly(field, rng.randint(1, 12), rng)
            if f.is_zero():
                continue
            unit, fac = factor_over_fq(f, seed=5)
            prod = DensePoly.constant(field, unit)
            for irr, mult in fac:
                prod = prod * irr ** mult
            assert prod == f


def test_real_root_isolation_examples():
    roots = isolate_real_roots(DensePoly(QQ, [-2, 0, 1]))
    assert len(roots) == 2 and roots[0].sign() == -1 and roots[1].sign() == 1
    assert isolate_real_roots(DensePoly(QQ, [1, 0, 1])) == []
    cube = isolate_real_roots(DensePoly(QQ, [0, -1, 0, 1]))
    assert [r.sign() for r in cube] == [-1, 0, 1]
    with pytest.raises(ZeroIsolation):
        isolate_real_roots(DensePoly(QQ))


def test_isolation_count_on_constructed_polys(rng):
    # polynomials assembled from known real roots and negative-discriminant
    # quadratics, so the expected count is forced
    for _ in range(20):
        real_roots = sorted(set(rng.randint(-8, 8) for _ in range(rng.randint(0, 4))))
        p = DensePoly.constant(QQ, rng.choice([1, 2, -3]))
        for r in real_roots:
            p = p * DensePoly(QQ, [-r, 1])
        for _ in range(rng.randint(0, 2)):
            b = rng.randint(-3, 3)
            c = rng.randint((b * b) // 4 + 1, (b * b) // 4 + 5)
            p = p * DensePoly(QQ, [c, b, 1])     # b^2 - 4c < 0
        if p.degree() < 1:
            continue
        found = isolate_real_roots(p)
        assert len(found) == len(real_roots)
        for ours, expected in zip(found, real_roots):
            assert ours.compare_rational(expected) == 0


def test_format_poly():
    f = DensePoly(QQ, [Fraction(-1, 2), 0, 1])
    assert format_poly(f) == "x^2 - 1/2"
