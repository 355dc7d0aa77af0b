from fractions import Fraction

import pytest

from gwinflect.errors import BadReductionPrime
from gwinflect.explorer import (
    count_points_projective,
    discriminant_in_parameter,
    hasse_weil_table,
    sato_tate_c2,
    specialize_at,
    sweep_weierstrass,
    weierstrass_family,
    _cmp_normalized,
)
from gwinflect.fields import FunctionField, QQ
from gwinflect.poly import DensePoly
from gwinflect.realroots import sign_at


def test_count_smooth_conic():
    ff = FunctionField("a")
    conic = DensePoly(ff, [ff.from_coeffs([1, 0, 1]), 0, 1])   # x^2 + a^2 + 1
    assert count_points_projective(conic, 3) == 4              # p + 1


def test_count_line():
    ff = FunctionField("a")
    line = DensePoly(ff, [ff.gen(), 1])                        # x + a
    for p in (5, 7, 11):
        assert count_points_projective(line, p) == p + 1


def test_count_bad_reduction():
    ff = FunctionField("a")
    poly = DensePoly(ff, [Fraction(1, 5), 0, 1])
    with pytest.raises(BadReductionPrime):
        count_points_projective(poly, 5)


def test_c2_identity_small():
    report = sato_tate_c2(60)
    assert report.identity_failures == []
    assert all(r.hasse_weil_bound_holds for r in report.records)
    assert sum(f for _, _, f in report.histogram) <= report.split_primes


def test_hasse_weil_table():
    records = hasse_weil_table([2, 3], 60)
    assert records and all(r.hasse_weil_bound_holds for r in records)
    for r in records:
        assert r.count == r.p + 1 + r.e
        assert r.denominator_convention().startswith(str((2 * r.n - 1) * (2 * r.n - 2)))


def test_specialization_and_disc():
    fam = weierstrass_family(2)
    at0 = specialize_at(fam, 0)
    # P_2 at a = 0: (3x^4 + 24 x)/8
    assert at0 == DensePoly(QQ, [0, 3, 0, 0, Fraction(3, 8)])
    disc = discriminant_in_parameter(fam)
    assert sign_at(disc, Fraction(-3)) == 0      # singular fiber artifact
    # exactness cross-check against the direct discriminant at sample values
    for a in (Fraction(1), Fraction(-2), Fraction(5, 2)):
        direct = specialize_at(fam, a)
        assert disc.eval(QQ(a)) == direct.discriminant()


def test_sweep_n4():
    grid = [Fraction(-4), Fraction(-3), Fraction(-2), Fraction(0), Fraction(2)]
    result = sweep_weierstrass(4, grid)
    assert result.expected_locus_size == 1
    assert len(result.separability_locus) == 1
    assert result.singular_fiber_in_disc
    excluded = [e for e in result.entries if e.excluded]
    assert [e.a for e in excluded] == [Fraction(-3)]
    below = next(e for e in result.entries if e.a == -4)
    assert below.root_count == 2 and sum(1 for s in below.f_signs if s > 0) == 1
    assert result.monotone_nonincreasing


def test_cmp_normalized_exact():
    # e/(M sqrt(p)) vs rational edges, all integer arithmetic
    assert _cmp_normalized(0, 12, 5, Fraction(0)) == 0
    assert _cmp_normalized(5, 12, 5, Fraction(0)) == 1
    assert _cmp_normalized(-5, 12, 5, Fraction(0)) == -1
    # 5/(12 sqrt(5)) = sqrt(5)/12 = 0.1863...: below 1/5, above 3/20
    assert _cmp_normalized(5, 12, 5, Fraction(1, 5)) == -1
    assert _cmp_normalized(5, 12, 5, Fraction(3, 20)) == 1


def test_legendre_p3_roots_match_factored_form(rng=None):
    import random
    from gwinflect.inflection import atomic_p
    from gwinflect.realroots import isolate_real_roots

    rng = random.Random(8)
    qk = FunctionField("k")
    kk = qk.gen()
    f = DensePoly(qk, [0, 1]) * DensePoly(qk, [-1, 1]) * DensePoly(qk, [-kk, qk.one()])
    p3 = atomic_p(3, f)
    for _ in range(20):
        kappa = Fraction(rng.randint(-40, 40), rng.randint(1, 8))
        if kappa in (0, 1):
            continue
        spec = specialize_at(p3, kappa)
        direct = len(isolate_real_roots(spec)) if spec.degree() > 0 else 0
        # roots of the three quadratics k - x^2, x^2 - 2x + k, x^2 - 2k x + k
        quads = [DensePoly(QQ, [kappa, 0, -1]), DensePoly(QQ, [kappa, -2, 1]),
                 DensePoly(QQ, [kappa, -2 * kappa, 1])]
        union = []
        for q in quads:
            union.extend(isolate_real_roots(q))
        distinct = 0
        for i, r in enumerate(union):
            if not any(r.compare(s) == 0 for s in union[:i]):
                distinct += 1
        assert direct == distinct


def test_disc_p2_root_is_separability_failure():
    # the only real root of disc_x(P_2) in a is a = -3, where P_2 and its
    # derivative genuinely share a factor
    fam = weierstrass_family(2)
    disc = discriminant_in_parameter(fam)
    from gwinflect.realroots import isolate_real_roots

    roots = isolate_real_roots(disc)
    assert len(roots) == 1 and roots[0].compare_rational(Fraction(-3)) == 0
    at = specialize_at(fam, Fraction(-3))
    assert at.gcd(at.derivative()).degree() >= 1
