import random

import pytest
from hypothesis import given, strategies as st

from genusone import kaehler as kf
from genusone import laurent as lr
from genusone import truncated as tr
from genusone.checks import _random_hyperplane
from genusone.kaehler import (PreconditionViolation, Relation, TruncationTooSmall, ZeroMu,
                              build_presentation, ci_obstruction, expected_kernel_dim, fitting_analysis,
                              minor_identities, presentation_rows, sym2_kernel, sym_mult_surjective,
                              verify_local_presentation, verify_relations)


def mono(E, k, c=None):
    return lr.LaurentPolynomial(E, {k: c if c is not None else E.one()})


# relations

def test_relations_examples():
    assert verify_relations(2, 1)
    assert verify_relations(3, 2)
    E = lr.height_one_field(3, 2)
    wrong = [E.w(1) ** 3 + E.one(), E.w(2) ** 3]
    assert not verify_relations(3, 2, lam=wrong, E=E)


@pytest.mark.parametrize("p", [2, 3])
@given(data=st.data())
def test_relations_for_monomial_alpha(p, data):
    r = 2
    E = lr.height_one_field(p, r)
    mons = [E.monomial(nu) for nu in E.monomials]
    alpha = data.draw(st.lists(st.sampled_from(mons), min_size=r, max_size=r))
    assert verify_relations(p, r, alpha, E=E)


def test_taylor_membership():
    E = lr.height_one_field(2, 2)
    alpha = [E.w(1), E.w(2)]
    site = lr.representative_site(E, alpha)
    assert kf.taylor_membership(site, alpha, lambda ws: ws[0] * ws[1] + ws[0])
    # beta_1 must be the Taylor term: dropping it leaves R
    assert not site.membership(lr.LaurentPolynomial(E, {0: E.w(1)}))


# presentation matrix

def test_presentation_p2_p3():
    E = lr.height_one_field(2, 2)
    t = E.F.t
    m = build_presentation(2, 2, [t(1), t(2)], E)
    for i in (1, 2):
        assert m.P(i).is_zero() and m.Q(i) == mono(E, 0, E.scalar(-t(i)))
    assert m.entries[0][0] == mono(E, 3, E.scalar(2)) and m.entries[1][0] == mono(E, 4, E.scalar(-3))
    E3 = lr.height_one_field(3, 1)
    m3 = build_presentation(3, 1, [E3.F.t(1)], E3)
    assert m3.P(1) == mono(E3, 0, E3.scalar(-E3.F.t(1))) and m3.Q(1).is_zero()


def test_presentation_p5_p7():
    E = lr.height_one_field(5, 1)
    mu = E.F.t(1)
    m = build_presentation(5, 1, [mu], E)
    assert m.P(1) == mono(E, 2, E.scalar(-mu)) and m.Q(1) == mono(E, 3, E.scalar(-mu))
    E = lr.height_one_field(7, 1)
    mu = E.F.t(1)
    m = build_presentation(7, 1, [mu], E)
    assert m.P(1) == mono(E, 4, E.scalar(-mu)) and m.Q(1) == mono(E, 5, E.scalar(-2 * mu))
    # the rows d(w_i + alpha_i u) vanish
    assert all(e.is_zero() for e in m.entries[2])


def test_zero_mu():
    with pytest.raises(ZeroMu):
        build_presentation(2, 1, [0])
    with pytest.raises(PreconditionViolation):
        build_presentation(11, 1, [1])
    with pytest.raises(PreconditionViolation):
        build_presentation(2, 2, [1])


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("r", [1, 2])
def test_minors_vanish(p, r):
    E = lr.height_one_field(p, r)
    m = build_presentation(p, r, [E.F.t(k) + k for k in range(1, r + 1)], E)
    assert minor_identities(m)


@pytest.mark.parametrize("p", [3, 7])
def test_corrupt_entry_breaks_minors(p):
    E = lr.height_one_field(p, 1)
    m = build_presentation(p, 1, [E.F.t(1)], E)
    m.entries[1][1] = m.entries[1][1] + mono(E, 1)
    assert not minor_identities(m)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 6), st.integers(1, 3))
def test_minors_random_mu(p, a, e):
    E = lr.height_one_field(p, 1)
    mu = E.F.t(1) ** e + a if (a % p) else E.F.t(2) ** e
    assert minor_identities(build_presentation(p, 1, [mu], E))


# Fitting ideal
# Hand oracle for p >= 5: in E[u] the entries 2u^3 and -mu u^(p-3) generate (u^min(3, p-3)),
# giving 2p^r (p = 5) and 3p^r (p = 7). In R = Lambda + u^2 E[u] the quotient is Lambda for
# p = 5 and Lambda + Lambda u^2 for p = 7, giving p^r and 2p^r.

@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_unit_ideal_small_primes(p, r):
    fa = fitting_analysis(p, r)
    assert fa["unit_ideal"] and fa["dim_R_quot"] == 0 and fa["dim_Rprime_quot"] == 0


@pytest.mark.parametrize("p,r,dims", [(5, 1, (5, 10)), (7, 1, (14, 21)), (5, 2, (25, 50))])
def test_degree_jump(p, r, dims):
    fa = fitting_analysis(p, r)
    assert not fa["unit_ideal"] and fa["degree_jump"]
    assert (fa["dim_R_quot"], fa["dim_Rprime_quot"]) == dims


def test_truncation_too_small():
    with pytest.raises(TruncationTooSmall):
        fitting_analysis(7, 1, N=3)
    assert fitting_analysis(7, 1, N=4)["dim_R_quot"] == 14


def test_explicit_site_needs_alpha():
    E = lr.height_one_field(5, 1)
    site = lr.representative_site(E, [E.w(1)])
    with pytest.raises(PreconditionViolation):
        fitting_analysis(5, 1, site=site)
    assert fitting_analysis(5, 1, site=site, alpha=[E.w(1)])["dim_R_quot"] == 5


# complete-intersection obstruction

@pytest.mark.parametrize("p,r,s,n,kernel", [(2, 2, 0, 3, 2), (2, 3, 0, 7, 20), (2, 1, 0, 1, 0),
                                             (5, 1, 0, 4, 5), (7, 1, 0, 6, 14), (3, 2, 0, 8, 27)])
def test_sym2_kernel(p, r, s, n, kernel):
    o = ci_obstruction(p, r, s)
    assert o["n"] == n and o["dim_kernel_over_L"] == kernel
    assert o["dim_kernel_over_F"] % o["degree_L"] == 0
    if n >= 2:
        assert kernel == expected_kernel_dim(n)


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)])
def test_obstruction_fires_iff_large(p, r):
    for s in range(r):
        o = ci_obstruction(p, r, s)
        assert o["obstruction"] == (p ** (r - s) >= 5)
        if o["dim_kernel_over_L"] > o["n"] - 1:
            assert o["obstruction"]


def test_sym2_kernel_direct_call():
    site = kf.nilpotent_data(2, 3, 1)
    o = sym2_kernel(site.L, site.H_eps)
    assert o["degree_L"] == 2 and o["n"] == 3 and o["dim_kernel_over_L"] == 2


def test_sym_mult_examples():
    E = lr.height_one_field(2, 2)
    L = E.scalars()
    H = _random_hyperplane(E, L, random.Random(1))
    assert sym_mult_surjective(L, H, 2)
    L1 = tr.span_subalgebra([E.w(1)])
    assert not sym_mult_surjective(L1, L1.module_span([E.w(2)]), 2)
    with pytest.raises(PreconditionViolation):
        sym_mult_surjective(L, E.whole(), 2)
    with pytest.raises(PreconditionViolation):
        sym_mult_surjective(L, H, 1)


@given(st.integers(0, 10 ** 6), st.sampled_from([(2, 2, 0), (2, 3, 1), (3, 1, 0), (3, 2, 1)]))
def test_sym_mult_degree_at_least_three(seed, prs):
    p, r, s = prs
    E = lr.height_one_field(p, r)
    L = tr.span_subalgebra([E.w(k) for k in range(1, s + 1)]) if s else E.scalars()
    H = _random_hyperplane(E, L, random.Random(seed))
    assert sym_mult_surjective(L, H, 2)


# local presentations

def test_local_presentation_examples():
    E = lr.height_one_field(2, 2)
    w = E.w(1)
    rel = Relation([(1, {"x": 2}), (-(w ** 2), {"y": 2})])
    assert verify_local_presentation({"x": mono(E, 1, w), "y": mono(E, 1)}, rel)
    assert verify_local_presentation({"x": mono(E, 2), "y": mono(E, 3)}, Relation([(1, {"x": 3}), (-1, {"y": 2})]))
    b1 = E.w(2)
    rel = Relation([(1, {"x": 4}), (-(b1 ** 4), {"y": 2})])
    assert verify_local_presentation({"x": mono(E, 1, b1), "y": mono(E, 2)}, rel)
    rel = Relation([(1, {"x": 4}), (-(b1 ** 2), {"y": 2})])
    assert not verify_local_presentation({"x": mono(E, 1, b1), "y": mono(E, 2)}, rel)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_presentation_rows(r):
    rows = presentation_rows(r)
    assert rows
    for row in rows:
        assert row.holds() and row.scalars_in_F() and row.targets_in_ring(), row.label
        if row.alt_scalars:
            assert kf._alt_relation_check(row) is False
