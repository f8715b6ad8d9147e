import pytest
from hypothesis import given, strategies as st

from genusone import laurent as lr
from genusone.laurent import (DegreeBoundViolation, IncompatibleParams, LaurentDerivation,
                              LaurentPolynomial, UnknownName, apply, bracket, catalog, catalog_entry,
                              degree_bounds, height_one_field, lp, omega, p_iterate_check,
                              representative_site, stabilizes)

E2 = height_one_field(2, 2)
E3 = height_one_field(3, 1)


def elems(E):
    F = E.F
    pool = [F.zero(), F.zero(), F.one(), F(-1), F.t(1)]
    return st.lists(st.sampled_from(pool), min_size=E.dim, max_size=E.dim).map(E.element)


def laurents(E, lo=-3, hi=3):
    return st.dictionaries(st.integers(lo, hi), elems(E), max_size=3).map(lambda d: LaurentPolynomial(E, d))


def derivations(E):
    return st.builds(lambda P, Q: LaurentDerivation(E, P, Q), laurents(E, -4, 0),
                     st.lists(laurents(E, -E.p, 0), min_size=E.r, max_size=E.r))


def via_generators(D, f):
    """D(f) from D(u), D(w_i) and the product rule on each monomial c u^k.

    c = sum_nu c_nu w^nu with c_nu in F, so D(c u^k) = c D(u^k) + u^k sum_nu c_nu D(w^nu).
    """
    E = D.E
    Du = apply(D, LaurentPolynomial.u(E))
    Dw = [apply(D, omega(E, i)) for i in range(1, E.r + 1)]
    out = LaurentPolynomial(E)
    for k, c in f.coeffs.items():
        uk = LaurentPolynomial.u(E, k)
        if k:
            out = out + LaurentPolynomial.const(E, c) * LaurentPolynomial.u(E, k - 1) * Du * k
        for idx, a in c.sparse().items():
            nu = E.monomials[idx]
            for i, e in enumerate(nu):
                if not e:
                    continue
                rest = E.one()
                for j, ej in enumerate(nu):
                    rest = rest * E.w(j + 1) ** (ej - (1 if j == i else 0))
                out = out + LaurentPolynomial.const(E, rest.scale(a)) * uk * Dw[i] * e
    return out


# examples

def test_sec4_values():
    e = catalog_entry("sec4_D", 2)
    D, E = e.D, e.D.E
    w = omega(E, 1)
    assert apply(D, LaurentPolynomial.u(E)) == lp(E, {0: 1})
    assert apply(D, w) == w.shift(-1)
    assert apply(D, w.shift(1)).is_zero() and apply(D, w.shift(-1)).is_zero()
    assert apply(D, LaurentPolynomial.u(E, -1)) == lp(E, {-2: 1})


def test_corollary_values():
    D2 = catalog("cor_p2", 2)
    assert apply(D2, LaurentPolynomial.u(D2.E, 3)) == lp(D2.E, {0: 1, 2: 1})
    D3 = catalog("cor_p3", 2)
    assert apply(D3, LaurentPolynomial.u(D3.E, 2)) == lp(D3.E, {0: 1, 2: -1})


def test_p_iterates():
    assert p_iterate_check(catalog("sec4_D", 1), "nilpotent")
    assert p_iterate_check(catalog("cor_p3", 1), "idempotent")
    assert not p_iterate_check(catalog("cor_p3", 1), "nilpotent")
    assert p_iterate_check(LaurentDerivation.zero(E2), "nilpotent")
    with pytest.raises(ValueError):
        p_iterate_check(catalog("cor_p2", 1), "unipotent")


def test_bracket_examples():
    D = catalog("cor_p2", 2)
    assert bracket(D, D).is_zero()
    assert bracket(catalog("sec4_D", 2), catalog("sec4_Dtilde", 2)).is_zero()
    assert bracket(catalog("nilp_p2_s2_D", 2), catalog("nilp_p2_s2_Dprime", 2)).is_zero()
    assert not bracket(catalog("cor_p2", 2), catalog("nilp_p2_s1", 2)).is_zero()


def test_membership_examples():
    E = E2
    alpha = [E.w(1), E.w(2)]
    site = representative_site(E, alpha)
    assert site.membership(LaurentPolynomial(E, {2: E.w(1) + E.one(), 3: E.w(2)}))
    assert site.membership(omega(E, 1) + omega(E, 1).shift(1))
    assert not site.membership(omega(E, 1))
    assert not site.membership(LaurentPolynomial.u(E, -1))


def test_stabilizes_examples():
    e = catalog_entry("cor_p2", 2)
    assert stabilizes(e.D, e.site)
    e = catalog_entry("nilp_p3_s1", 2)
    assert stabilizes(e.D, e.site)
    # d/du alone moves w_1 + alpha_1 u to alpha_1, which is not in the site
    E = E2
    d_du = LaurentDerivation(E, lp(E, {-2: 1}), [LaurentPolynomial(E)] * E.r)
    assert not stabilizes(d_du, representative_site(E, [E.w(1), E.w(2)]))


def test_degree_bounds_examples():
    E = E2
    Z = LaurentPolynomial(E)
    assert degree_bounds(catalog("cor_p2", 2))
    assert degree_bounds(LaurentDerivation.zero(E))
    big = LaurentDerivation(E, lp(E, {-5: 1}), [Z, Z])
    assert not degree_bounds(big)
    with pytest.raises(DegreeBoundViolation):
        stabilizes(big, representative_site(E, [E.w(1), E.w(2)]))


def test_catalog_examples():
    D = catalog("cor_p2", 2)
    assert D.P == lp(D.E, {-4: 1, -2: 1})
    e = catalog_entry("nilp_p2_s2_D", 3)
    E = e.D.E
    assert apply(e.D, omega(E, 2).shift(1)) == lp(E, {0: 1})
    e = catalog_entry("sec4_D", 1)
    assert apply(e.D, omega(e.D.E, 1).shift(1)).is_zero()


def test_catalog_errors():
    with pytest.raises(UnknownName):
        catalog("no_such_field", 1)
    with pytest.raises(IncompatibleParams):
        catalog("sec4_D", 3)
    with pytest.raises(IncompatibleParams):
        catalog("nilp_p2_s2_D", 1)


@pytest.mark.parametrize("name", lr.CATALOG_NAMES)
def test_catalog_entry_passes_everything(name):
    lo, hi = lr.catalog_ranks(name)
    for r in range(lo, min(hi, 3) + 1):
        e = catalog_entry(name, r)
        assert all(lr.check_identities(e).values())
        assert p_iterate_check(e.D, e.mode)
        assert degree_bounds(e.D, e.site)
        assert stabilizes(e.D, e.site)


def test_sec4_pair_independent():
    D, Dt = catalog("sec4_D", 2), catalog("sec4_Dtilde", 2)
    E = D.E
    u = LaurentPolynomial.u(E)
    # D(u) = 1 and D~(u) = u^2, so D~ = cD would need u^2 to be a constant
    assert apply(D, u) == lp(E, {0: 1})
    assert apply(Dt, u) == lp(E, {2: 1})


def test_two_point_site_charts():
    e = catalog_entry("sec4_D", 2)
    E = e.D.E
    s = e.site
    assert s.membership(LaurentPolynomial.const(E, E.one()))
    assert s.membership(LaurentPolynomial(E, {1: E.w(1)}), "zero")
    assert not s.membership(LaurentPolynomial(E, {1: E.w(1)}), "infinity")
    assert not s.membership(LaurentPolynomial.const(E, E.w(1)))


# properties

@given(derivations(E2), laurents(E2), laurents(E2))
def test_leibniz_p2(D, f, g):
    assert apply(D, f * g) == f * apply(D, g) + g * apply(D, f)


@given(derivations(E3), laurents(E3), laurents(E3))
def test_leibniz_p3(D, f, g):
    assert apply(D, f * g) == f * apply(D, g) + g * apply(D, f)


@given(derivations(E2), laurents(E2))
def test_apply_matches_generator_values(D, f):
    assert apply(D, f) == via_generators(D, f)


@given(derivations(E3), derivations(E3))
def test_bracket_antisymmetric(D1, D2):
    assert bracket(D1, D1).is_zero()
    assert (bracket(D1, D2) + bracket(D2, D1)).is_zero()


def test_jacobi_on_catalog():
    Ds = [catalog(n, 2) for n in ("cor_p2", "nilp_p2_s1", "nilp_p2_s2_D", "nilp_p2_s2_Dprime", "sec4_D")]
    for a in Ds:
        for b in Ds:
            for c in Ds:
                s = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
                assert s.is_zero()


@pytest.mark.parametrize("name", ["cor_p2", "cor_p3", "nilp_p3_s1", "nilp_p2_s1", "nilp_p2_s2_D"])
def test_stabilizing_maps_generators_into_site(name):
    e = catalog_entry(name, 2)
    assert stabilizes(e.D, e.site)
    for g in e.site.certificate():
        assert e.site.membership(apply(e.D, g))
