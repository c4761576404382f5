"""Strand cohomology of the additive group: frozen small values, universal
coefficients as the independent oracle, distinguished classes, cup and
Bockstein structure, and the regrading identity."""

import pytest
from math import comb

from hypothesis import given, settings, strategies as st

from hodgelab.cobar import (
    CohClass, LiftNotExact, NotACocycle, apply_d, bockstein, class_is_zero,
    classes_equal, cup, group_cohomology, hilbert_dims_f2, hilbert_dims_odd,
    is_scalar_multiple, kzthree_group, phi_class, phi_span_divisors,
    standard_complex, strand_basis, strand_matrix, torsion_census,
    torsion_class, v_one, w_class,
)
from hodgelab.exactlin import AbGroup
from hodgelab.gralg import FP, QQ_R, ZZ


def test_strand_basis_shape():
    # compositions of w/2 into n positive parts, lex ordered
    assert strand_basis(0, 0) == [()]
    assert strand_basis(0, 4) == []
    assert strand_basis(1, 6) == [(3,)]
    assert strand_basis(2, 8) == [(1, 3), (2, 2), (3, 1)]
    for n in range(1, 5):
        for m in range(n, 10):
            assert len(strand_basis(n, 2 * m)) == comb(m - 1, n - 1)
    assert strand_basis(3, 7) == []  # odd weights are empty


def test_differential_examples():
    # d(x) = x2 - (x1+x2) + x1 = 0 and d(x^2) = -2 x1 x2
    assert apply_d(1, 2, {(1,): 1}) == {}
    assert phi_class(2) == {(1, 1): -2}
    assert phi_class(1) == {}
    # weight-0 strand at n=0 is the base ring with zero differential
    assert strand_matrix(0, 0).is_zero()


def test_standard_complex_builds_with_dd_assertion():
    sc = standard_complex(3, 12, ZZ)
    assert sc.basis(2, 8) == [(1, 3), (2, 2), (3, 1)]
    d = sc.differential(1, 4)
    assert d.column(0) == {0: -2}  # d(x^2) against basis [(1,1)]


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_dd_zero_on_random_cochains(data):
    n = data.draw(st.integers(1, 3))
    m = data.draw(st.integers(n, 8))
    basis = strand_basis(n, 2 * m)
    cochain = {}
    for _ in range(data.draw(st.integers(1, 3))):
        cochain[data.draw(st.sampled_from(basis))] = data.draw(
            st.integers(-5, 5))
    once = apply_d(n, 2 * m, cochain)
    assert apply_d(n + 1, 2 * m, once) == {}


def test_integral_strand_values():
    assert group_cohomology(1, 2, ZZ) == AbGroup(1)
    assert group_cohomology(1, 6, ZZ) == AbGroup(0)
    assert group_cohomology(2, 4, ZZ) == AbGroup(0, (2,))
    assert group_cohomology(2, 6, ZZ) == AbGroup(0, (3,))
    assert group_cohomology(2, 12, ZZ) == AbGroup(0)  # 6 is no prime power
    assert group_cohomology(0, 0, ZZ) == AbGroup(1)
    assert group_cohomology(0, 4, ZZ) == AbGroup(0)
    assert group_cohomology(3, 6, ZZ) == AbGroup(0, (2,))


def test_universal_coefficients_oracle():
    # dim H^n(F_p) = dim H^n(Z) (x) F_p + dim Tor(H^{n+1}(Z), F_p)
    for p in (2, 3, 5):
        for n in (1, 2):
            for w in range(0, 21, 2):
                lhs = group_cohomology(n, w, FP(p))
                hz = group_cohomology(n, w, ZZ)
                hz1 = group_cohomology(n + 1, w, ZZ)
                assert lhs == hz.dim_fp(p) + hz1.tor_fp(p), (p, n, w)


def test_rational_dimensions():
    assert group_cohomology(1, 2, QQ_R) == 1
    assert group_cohomology(2, 4, QQ_R) == 0
    assert group_cohomology(1, 4, QQ_R) == 0


def test_torsion_class_order_p():
    for p, i in [(2, 1), (3, 1), (2, 2)]:
        v = torsion_class(p, i)
        assert v.cohdeg == 2 and v.weight == 2 * p ** i
        assert not class_is_zero(v)
        assert class_is_zero(v.scale(p))  # p v = d(x^{p^i}) cobounds


def test_cup_unit_and_v1_square():
    v1 = v_one()
    sq = cup(v1, v1)
    assert sq.cocycle == {(1, 1): 1}
    v2 = torsion_class(2, 1)
    assert classes_equal(sq, v2)
    # in Z/2 the sign is invisible: -v2 is the same class
    assert classes_equal(sq, v2.scale(-1))
    one = CohClass(0, 0, {(): 1}, ZZ)
    assert cup(one, v1).cocycle == v1.cocycle


def test_cup_graded_commutativity():
    v1, v2 = v_one(), torsion_class(2, 1)
    assert classes_equal(cup(v1, v2), cup(v2, v1))  # (-1)^{1*2} = +1
    p = 3
    a, b = w_class(p, 0), w_class(p, 1)
    ab, ba = cup(a, b), cup(b, a)
    assert classes_equal(ab, ba.scale(p - 1))  # odd-odd anticommute


def test_bockstein_w2_is_w1_squared():
    w2 = w_class(2, 1)
    b = bockstein(2, w2)
    assert b.cocycle == {(1, 1): 1}  # on the nose, not just up to class
    w1 = w_class(2, 0)
    assert classes_equal(b, cup(w1, w1))


def test_bockstein_kills_w1_and_squares_to_zero():
    for p in (2, 3, 5):
        w1 = w_class(p, 0)
        assert bockstein(p, w1).cocycle == {}
        b = bockstein(p, w_class(p, 1))
        assert class_is_zero(bockstein(p, b))


def test_bockstein_w3_hits_v3():
    b = bockstein(3, w_class(3, 1))
    v3bar = CohClass(2, 6, {k: v % 3 for k, v in
                            torsion_class(3, 1).cocycle.items()}, FP(3))
    assert is_scalar_multiple(b, v3bar, 3) is not None


def test_bockstein_rejects_non_cocycle():
    bad = CohClass(1, 4, {(2,): 1}, FP(3), check=False)  # d(x^2) != 0 mod 3
    with pytest.raises(LiftNotExact):
        bockstein(3, bad)
    with pytest.raises(NotACocycle):
        CohClass(1, 4, {(2,): 1}, FP(3))


def test_hilbert_oracle_f2_small_window():
    dims = hilbert_dims_f2(3, 16)
    for n in range(0, 4):
        for w in range(0, 17, 2):
            assert group_cohomology(n, w, FP(2)) == dims.get((n, w), 0), (n, w)


def test_hilbert_oracle_f3_includes_weight18_polynomial_generator():
    dims = hilbert_dims_odd(3, 3, 18)
    assert dims.get((2, 18)) == 1  # the second polynomial generator
    for n in range(0, 4):
        for w in range(0, 19, 2):
            assert group_cohomology(n, w, FP(3)) == dims.get((n, w), 0), (n, w)


def test_oracle_euler_characteristic_vanishes():
    for p in (2, 3):
        dims = (hilbert_dims_f2 if p == 2 else
                lambda n, w: hilbert_dims_odd(3, n, w))(4, 8)
        # vanishes for w >= 4 (at w = 2 the strand complex is Z x alone)
        for w in (4, 6, 8):
            chi = sum((-1) ** n * dims.get((n, w), 0) for n in range(0, 5))
            assert chi == 0, (p, w)


def test_phi_span_convention_invariance():
    for n in (2, 3, 4, 6, 8, 9, 12):
        ours, alt = phi_span_divisors(n)
        assert ours == alt, n


def test_kzthree_regrading():
    expected = [
        AbGroup(1), AbGroup(0), AbGroup(0), AbGroup(1), AbGroup(0),
        AbGroup(0), AbGroup(0, (2,)), AbGroup(0), AbGroup(0, (3,)),
    ]
    for m, g in enumerate(expected):
        assert kzthree_group(m) == g, m


def test_torsion_census_tables():
    rows = dict(torsion_census(2, 2, 16))
    assert rows[4].torsion_count(2) == 1
    assert rows[8].torsion_count(2) == 1
    assert rows[16].torsion_count(2) == 1
    assert rows[12] == AbGroup(0)
    rows1 = dict(torsion_census(2, 1, 12))
    assert rows1[2] == AbGroup(1)
    assert all(rows1[w] == AbGroup(0) for w in rows1 if w != 2)
    rows0 = dict(torsion_census(5, 0, 8))
    assert rows0[0] == AbGroup(1)
    assert all(rows0[w] == AbGroup(0) for w in rows0 if w != 0)
