import random
from fractions import Fraction

import pytest

from gwinflect.curve import HyperellipticCurve, RamificationPoint, det_M
from gwinflect.errors import GwinflectError, ImpossibleClass, NotAnInflectionPoint, \
    TheoremHypothesisFailed
from gwinflect.factor import roots_in_field
from gwinflect.fields import GF, QQ, RR, sqrt_in_finite_field
from gwinflect.gw import GWClass, gw_invariants
from gwinflect.indices import (
    DISC_INDETERMINATE,
    RANK_ONLY,
    audit,
    global_class,
    index_by_series_oracle,
    index_class_from_order_and_lead,
    index_infinity,
    index_ramified,
    index_unramified,
    local_index_1d,
    orientation_coherent,
)
from gwinflect.inflection import inflection_poly
from gwinflect.poly import DensePoly
from gwinflect.realroots import isolate_real_roots
from gwinflect.series import TruncatedSeries

from conftest import random_squarefree


def test_local_index_lemma_shapes():
    s = TruncatedSeries(QQ, [0, 1], 6)                       # sigma = x
    assert local_index_1d(s) == GWClass.span(QQ, 1)
    s2 = TruncatedSeries(QQ, [0, 0, 5, 1], 6)                # x^2 (5 + x)
    assert local_index_1d(s2) == GWClass.hyperbolic_multiple(QQ, 1)
    s3 = TruncatedSeries(QQ, [0, 0, 0, 3], 6)                # 3 x^3
    assert local_index_1d(s3) == GWClass(QQ, (3,), 1)
    assert index_class_from_order_and_lead(QQ, 4, QQ(2)).rank() == 4


def test_index_ramified_real_signature():
    # (g = 2, ell = 1, monic): signature at (gamma, 0) is the sign of f'(gamma)
    f = DensePoly(RR, [0, -4, 0, 0, 0, 1])                   # x^5 - 4x, roots 0, +-sqrt2
    X = HyperellipticCurve(f)
    fq = DensePoly(QQ, [0, -4, 0, 0, 0, 1])
    for rho in isolate_real_roots(fq):
        rep = index_ramified(X, rho, 1)
        sig = gw_invariants(rep.index).detail[1]
        assert sig == rho.sign_of(fq.derivative())
        assert rep.multiplicity == 1
    inf = index_infinity(X, 1)
    assert gw_invariants(inf.index).detail == ("signature", -1)   # sign of -lc(f)


def test_l_equals_one_cross_check():
    # <f'(gamma)/2> and <2/f'(gamma)> are the same square class
    f13 = GF(13)
    f = DensePoly(f13, [2, 1, 0, 1])
    X = HyperellipticCurve(f)
    gamma = roots_in_field(f)[0][0]
    rep = index_ramified(X, gamma, 1)
    fp = f.derivative().eval(gamma)
    assert rep.index == GWClass.span(f13, 2 / fp)
    h = X.curve_at_infinity()
    inf = index_infinity(X, 1)
    assert inf.index == GWClass.span(f13, -2 / h.derivative().eval(f13.zero()))


def test_index_ramified_f13_example():
    # (g=1, ell=2, F_13): generator <det M(2,1) * 2 * f'(gamma)^(1 + 2)> with
    # rank C(2,2) = 1
    f13 = GF(13)
    f = next(DensePoly(f13, [c0, 1, 0, 1]) for c0 in range(13)
             if DensePoly(f13, [c0, 1, 0, 1]).is_squarefree()
             and roots_in_field(DensePoly(f13, [c0, 1, 0, 1])))
    X = HyperellipticCurve(f)
    gamma = roots_in_field(f)[0][0]
    rep = index_ramified(X, gamma, 2)
    assert rep.multiplicity == 1 and rep.index.rank() == 1
    fp = f.derivative().eval(gamma)
    expected = GWClass.span(f13, f13(det_M(2, 1)) * 2 * fp ** (1 + 2 * 1))
    assert rep.index == expected
    assert RANK_ONLY in rep.flags                            # ell = 2 is not 1 mod 4


def test_index_infinity_f7_example():
    # (g=1, ell=2, F_7, f monic): odd branch with sign (-1)^(1 + C(1,2)) = -1
    f7 = GF(7)
    f = DensePoly(f7, [3, 1, 0, 1])
    X = HyperellipticCurve(f)
    rep = index_infinity(X, 2)
    assert rep.index == GWClass.span(f7, -1 * det_M(2, 1) * 2 * 1)
    assert gw_invariants(rep.index).detail == ("disc_is_square", False)  # -4 ~ -1 nonsquare


def test_theorem_hypothesis_det_m():
    f3 = GF(3)
    f = DensePoly(f3, [2, 1, 0, 1])
    X = HyperellipticCurve(f)
    assert det_M(3, 1) == 3
    with pytest.raises(TheoremHypothesisFailed):
        index_infinity(X, 3)


def test_index_unramified_sheets():
    f13 = GF(13)
    f = DensePoly(f13, [2, 2, 0, 1])
    X = HyperellipticCurve(f)
    P = inflection_poly(1, 5, f)
    rational = [r for r, _ in roots_in_field(P)]
    assert rational, "fixture curve needs a rational inflection point"
    gamma = rational[0]
    non_root = next(f13(k) for k in range(13) if P.eval(f13(k)) and f.eval(f13(k)))
    with pytest.raises(NotAnInflectionPoint):
        index_unramified(X, 5, non_root, inflection=P)
    plus = index_unramified(X, 5, gamma, sheet=1, inflection=P)
    minus = index_unramified(X, 5, gamma, sheet=-1, inflection=P)
    mu = 4
    if f13.is_square(f.eval(gamma)):
        # ell - g even: both sheets carry the same index
        assert plus.index == minus.index
        assert plus.index.rank() == plus.multiplicity
    else:
        assert DISC_INDETERMINATE in plus.flags
        assert plus.residue_degree == 2


def test_global_class_values():
    assert global_class(1, 5, QQ) == GWClass.hyperbolic_multiple(QQ, 50)
    assert global_class(2, 5, QQ) == GWClass.hyperbolic_multiple(QQ, 81)
    assert global_class(2, 1, QQ).rank() == 6
    assert global_class(3, 2, QQ).rank() == 24


def test_orientation_coherence_table():
    assert orientation_coherent(1, 5) and orientation_coherent(4, 5)
    assert orientation_coherent(2, 1) and orientation_coherent(5, 1)
    assert not orientation_coherent(2, 5) and not orientation_coherent(3, 5)
    assert not orientation_coherent(1, 2)   # ell not 1 mod 4


def test_oracle_matches_closed_forms_f13():
    f13 = GF(13)
    f = DensePoly(f13, [2, 1, 0, 1])
    X = HyperellipticCurve(f)
    for gamma, _ in roots_in_field(f):
        closed = index_ramified(X, gamma, 5)
        orc = index_by_series_oracle(X, 5, RamificationPoint.affine(gamma))
        assert closed.multiplicity == orc.multiplicity
        assert gw_invariants(closed.index) == gw_invariants(orc.index)
    ci = index_infinity(X, 5)
    oi = index_by_series_oracle(X, 5, RamificationPoint.infinity())
    assert gw_invariants(ci.index) == gw_invariants(oi.index)


def test_oracle_matches_unramified_f13():
    f13 = GF(13)
    f = DensePoly(f13, [2, 2, 0, 1])
    X = HyperellipticCurve(f)
    P = inflection_poly(1, 5, f)
    hits = 0
    for gamma, _ in roots_in_field(P):
        fg = f.eval(gamma)
        if not f13.is_square(fg):
            continue
        delta = sqrt_in_finite_field(f13, fg)
        for sheet, y0 in ((1, delta), (-1, -delta)):
            closed = index_unramified(X, 5, gamma, sheet=sheet, inflection=P)
            orc = index_by_series_oracle(X, 5, (gamma, y0))
            assert gw_invariants(closed.index) == gw_invariants(orc.index)
            hits += 1
    assert hits >= 2, "fixture curve should have split rational inflection points"


def test_audit_f13_cubic():
    f13 = GF(13)
    X = HyperellipticCurve(DensePoly(f13, [2, 1, 0, 1]))
    result = audit(X, 5)
    assert result.total.rank() == 100
    assert result.expected == GWClass.hyperbolic_multiple(f13, 50)
    assert result.verdict["rank"] == "pass"
    if result.verdict["invariants"] == "pass":
        assert gw_invariants(result.total).detail == ("disc_is_square", True)


def test_audit_real_quintic_l1():
    X = HyperellipticCurve(DensePoly(RR, [1, 2, 0, 0, 0, 1]))   # y^2 = x^5 + 2x + 1
    result = audit(X, 1)
    assert result.total.rank() == 6
    assert gw_invariants(result.total).detail == ("signature", 0)
    assert result.verdict == {"rank": "pass", "invariants": "pass"}


def test_audit_rank_only_policy():
    f13 = GF(13)
    X = HyperellipticCurve(DensePoly(f13, [2, 1, 0, 1]))
    result = audit(X, 2)
    assert result.verdict["invariants"] == "rank_only"
    assert any("1 mod 4" in r for r in result.reasons)


def test_audit_rational_rank_only():
    X = HyperellipticCurve(DensePoly(QQ, [2, 1, 0, 1]))
    result = audit(X, 5)
    assert result.total.rank() == 100
    assert result.verdict["rank"] == "pass"
    assert result.verdict["invariants"] == "rank_only"


def test_audit_rank_identity_random(rng):
    f17 = GF(17)
    for (g, ell) in ((2, 1), (1, 2), (1, 3)):
        for _ in range(3):
            f = random_squarefree(f17, 2 * g + 1, rng)
            result = audit(HyperellipticCurve(f), ell)
            assert result.verdict["rank"] == "pass", (g, ell, str(f))


def test_series_oracle_truncation_retry():
    # a ramification point of high multiplicity forces at least one doubling
    f13 = GF(13)
    f = random_squarefree(f13, 9, random.Random(4))
    X = HyperellipticCurve(f)
    roots = roots_in_field(f)
    if roots:
        rep = index_by_series_oracle(X, 5, RamificationPoint.affine(roots[0][0]))
        assert rep.multiplicity == 10   # C(g+1, 2) for g = 4


def test_laurent_ramified_rules():
    from gwinflect.indices import laurent_ramified_index

    # ell <= g, odd C(l+1,2): even valuation -> Tr<1> (parity m-1), odd -> Tr<t^(1/m)>
    for m in (1, 2, 3):
        rank, parity = laurent_ramified_index(2, 1, m, 0)
        assert rank == m and parity == (m - 1) % 2
        rank, parity = laurent_ramified_index(2, 1, m, 1)
        assert parity == m % 2
    # ell > g with C(g+1,2) even: disc always vanishes
    assert laurent_ramified_index(4, 5, 3, 1) == (3 * 10, 0)
    # ell > g odd branch: exponent C' + l(l-g) drives the generator parity
    rank, parity = laurent_ramified_index(1, 5, 2, 1)   # exponent 21, odd valuation
    assert rank == 2 and parity == 0                    # odd gen parity, m even -> m mod 2


def test_oracle_rank_equivalence_small_ell(rng):
    # ell in {2, 3} is rank_only by policy; oracle and closed forms must
    # still agree on multiplicities and ranks at rational points
    for p in (5, 17):
        field = GF(p)
        for ell in (2, 3):
            if int(det_M(ell, 1)) % p == 0:
                continue
            f = random_squarefree(field, 3, rng)
            X = HyperellipticCurve(f)
            for gamma, _ in roots_in_field(f):
                closed = index_ramified(X, gamma, ell)
                orc = index_by_series_oracle(X, ell, RamificationPoint.affine(gamma))
                assert closed.multiplicity == orc.multiplicity
                assert closed.index.rank() == orc.index.rank()
                assert RANK_ONLY in closed.flags and RANK_ONLY in orc.flags
            ci = index_infinity(X, ell)
            oi = index_by_series_oracle(X, ell, RamificationPoint.infinity())
            assert ci.index.rank() == oi.index.rank()


def test_audit_g1_l5_rank_random(rng):
    f17 = GF(17)
    for _ in range(2):
        f = random_squarefree(f17, 3, rng)
        result = audit(HyperellipticCurve(f), 5)
        assert result.total.rank() == 100 and result.verdict["rank"] == "pass"
