"""Relations, the Kaehler-differential presentation matrix at a field-of-representatives
singularity, Fitting-ideal quotients, and the complete-intersection obstruction."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .basefield import RationalFunction
from .laurent import (DualPointSite, LaurentPolynomial, height_one_field, lift_dual, omega,
                      nilpotent_site, representative_site)
from .linalg import EchelonBasis, to_sparse
from .truncated import AlgebraElement, Subalgebra, Subspace, TruncatedAlgebra, span_subalgebra

SUPPORTED_P = (2, 3, 5, 7)
DEFAULT_TRUNC = 8


class ZeroMu(ValueError):
    pass


class TruncationTooSmall(ValueError):
    pass


class PreconditionViolation(ValueError):
    pass


def _scalar(E: TruncatedAlgebra, x) -> AlgebraElement:
    if isinstance(x, AlgebraElement):
        return x
    return E.scalar(x)


def _pscalar(x: AlgebraElement) -> RationalFunction:
    v = x.scalar_value()
    if v is None:
        raise PreconditionViolation(f"{x} is not in F")
    return v


# relations

def verify_relations(p: int, r: int, alpha: Sequence[AlgebraElement] | None = None,
                     lam: Sequence | None = None, mu: Sequence | None = None,
                     E: TruncatedAlgebra | None = None) -> bool:
    """(u^3)^2 = (u^2)^3 and (w_i + alpha_i u)^p = lambda_i + mu_i u^p in E[u].

    lambda_i and mu_i default to w_i^p and alpha_i^p; pass them to test other values.
    """
    if E is None:
        E = alpha[0].parent if alpha else height_one_field(p, r)
    if alpha is None:
        alpha = [E.w(i) for i in range(1, r + 1)]
    u2, u3 = LaurentPolynomial.u(E, 2), LaurentPolynomial.u(E, 3)
    if not (u3 ** 2 - u2 ** 3).is_zero():
        return False
    for i, a in enumerate(alpha, start=1):
        li = _scalar(E, lam[i - 1]) if lam is not None else E.w(i) ** p
        mi = _scalar(E, mu[i - 1]) if mu is not None else a ** p
        g = omega(E, i) + LaurentPolynomial(E, {1: a})
        # u^p written through the generators: u^2, u^3 or u^3 (u^2)^((p-3)/2)
        up = u2 if p == 2 else u3 * u2 ** ((p - 3) // 2)
        if not (g ** p - LaurentPolynomial.const(E, li) - up * LaurentPolynomial.const(E, mi)).is_zero():
            return False
    return True


def taylor_membership(site: DualPointSite, alpha: Sequence[AlgebraElement],
                      P: Callable[[Sequence[AlgebraElement]], AlgebraElement]) -> bool:
    """beta_0 = P(w), beta_1 = sum alpha_i dP/dw_i(w) gives an element of R."""
    E = site.E
    ws = [E.w(i) for i in range(1, E.r + 1)]
    b0 = P(ws)
    b1 = E.zero()
    for i, a in enumerate(alpha, start=1):
        b1 = b1 + a * b0.partial(i)
    return site.membership(LaurentPolynomial(E, {0: b0, 1: b1}))


# presentation matrix

@dataclass
class PresentationMatrix:
    """Rows d(u^3), d(u^2), d(w_i + alpha_i u); columns the r+1 relations."""
    p: int
    r: int
    mu: List[RationalFunction]
    entries: List[List[LaurentPolynomial]]

    @property
    def E(self):
        return self.entries[0][0].E

    def P(self, i):
        return self.entries[0][i]

    def Q(self, i):
        return self.entries[1][i]

    def nonzero_entries(self) -> List[LaurentPolynomial]:
        return [e for row in self.entries for e in row if not e.is_zero()]

    def to_json(self):
        return {"p": self.p, "r": self.r, "mu": [str(m) for m in self.mu],
                "entries": [[str(e) for e in row] for row in self.entries]}


def build_presentation(p: int, r: int, mu: Sequence, E: TruncatedAlgebra | None = None) -> PresentationMatrix:
    if p not in SUPPORTED_P:
        raise PreconditionViolation(f"p must be one of {SUPPORTED_P}")
    if len(mu) != r:
        raise PreconditionViolation("need one mu per p-basis element")
    if E is None:
        E = height_one_field(p, r)
    F = E.F
    mus = [m if isinstance(m, RationalFunction) else F(m) for m in mu]
    if any(m.is_zero() for m in mus):
        raise ZeroMu("the mu_i = alpha_i^p must be non-zero")
    Z = LaurentPolynomial(E)

    def mono(c, k):
        return LaurentPolynomial(E, {k: E.scalar(c)})

    col1 = [mono(F(2), 3), mono(F(-3), 4)] + [Z] * r
    cols = [col1]
    for m in mus:
        if p == 2:
            Pi, Qi = Z, mono(-m, 0)
        elif p == 3:
            Pi, Qi = mono(-m, 0), Z
        else:
            Pi = mono(-m, p - 3)
            Qi = mono(-m * F((p - 3) // 2), p - 2)
        cols.append([Pi, Qi] + [Z] * r)
    rows = [[cols[j][i] for j in range(r + 1)] for i in range(r + 2)]
    return PresentationMatrix(p, r, mus, rows)


def minor_identities(m: PresentationMatrix) -> bool:
    """All 2-minors vanish and some entry is non-zero, i.e. Fitt_r = 0 and Fitt_{r+1} != 0."""
    rows = m.entries
    if not m.nonzero_entries():
        return False
    for i1, i2 in itertools.combinations(range(len(rows)), 2):
        for j1, j2 in itertools.combinations(range(len(rows[0])), 2):
            if not (rows[i1][j1] * rows[i2][j2] - rows[i1][j2] * rows[i2][j1]).is_zero():
                return False
    return True


# Fitting ideal in a truncation

@dataclass
class TruncatedQuotient:
    """E[u]/(u^N) as an F-space of dimension N*[E:F], with the image of R and an ideal."""
    N: int
    E: TruncatedAlgebra
    subring: EchelonBasis
    ideal: EchelonBasis

    @property
    def ambient_dim(self):
        return self.N * self.E.dim


def _vec(f: LaurentPolynomial, N: int) -> Dict[int, RationalFunction]:
    d = f.E.dim
    out = {}
    for k, c in f.coeffs.items():
        if 0 <= k < N:
            for j, x in enumerate(c.coords):
                if x:
                    out[k * d + j] = x
    return out


def _times_entry(g: LaurentPolynomial, e: LaurentPolynomial) -> LaurentPolynomial:
    out = LaurentPolynomial(g.E)
    for k, c in e.coeffs.items():
        v = c.scalar_value()
        if v is not None:
            out = out + LaurentPolynomial(g.E, {d + k: x.scale(v) for d, x in g.coeffs.items()})
        else:
            out = out + g * LaurentPolynomial(g.E, {k: c})
    return out


def subring_basis(site: DualPointSite, N: int) -> List[LaurentPolynomial]:
    E = site.E
    out = [lift_dual(E, x).truncate(0, N - 1) for x in site.Lam.basis()]
    for k in range(2, N):
        out += [LaurentPolynomial(E, {k: b}) for b in E.basis()]
    return out


def _span(elems, dim, N) -> EchelonBasis:
    e = EchelonBasis(dim)
    for f in elems:
        v = _vec(f, N)
        if v:
            e.add(v)
    return e


def truncated_quotient(site: DualPointSite, gens: Sequence[LaurentPolynomial], N: int,
                       over: str = "R") -> TruncatedQuotient:
    """Ideal generated by gens in R (over="R") or in E[u] (over="E"), modulo u^N."""
    E = site.E
    dim = N * E.dim
    Rb = subring_basis(site, N)
    mult = Rb if over == "R" else [LaurentPolynomial(E, {k: b}) for k in range(N) for b in E.basis()]
    ideal = _span((_times_entry(g, e) for g in mult for e in gens), dim, N)
    sub = _span(Rb, dim, N) if over == "R" else _span(mult, dim, N)
    return TruncatedQuotient(N, E, sub, ideal)


def _quotient_dims(site, gens, N):
    qR = truncated_quotient(site, gens, N, "R")
    qE = truncated_quotient(site, gens, N, "E")
    d = site.E.dim
    unit = any(any(k < d for k in row) for row in qR.ideal.rows.values())
    return len(qR.subring.rows) - len(qR.ideal.rows), qE.ambient_dim - len(qE.ideal.rows), unit


def fitting_analysis(p: int, r: int, site: DualPointSite | None = None, N: int = DEFAULT_TRUNC,
                     alpha: Sequence[AlgebraElement] | None = None) -> Dict[str, object]:
    """Fitt_{r+1} = ideal of the presentation entries, in R and in the normalization E[u]."""
    if site is None:
        E = height_one_field(p, r)
        if alpha is None:
            alpha = [E.w(i) for i in range(1, r + 1)]
        site = representative_site(E, alpha)
    elif alpha is None:
        raise PreconditionViolation("pass alpha together with an explicit site")
    E = site.E
    mu = [_pscalar(a ** p) for a in alpha]
    m = build_presentation(p, r, mu, E)
    gens = m.nonzero_entries()
    prev = _quotient_dims(site, gens, N - 1)
    cur = _quotient_dims(site, gens, N)
    if prev[:2] != cur[:2]:
        raise TruncationTooSmall(f"quotient dims {prev[:2]} at N={N - 1} but {cur[:2]} at N={N}")
    dR, dE, unit = cur
    return {"unit_ideal": unit, "dim_R_quot": dR, "dim_Rprime_quot": dE,
            "degree_jump": dR < dE, "N": N, "p": p, "r": r}


# complete-intersection obstruction

def _eps_part(x: AlgebraElement) -> AlgebraElement:
    _, b = x.parts()
    return b


def _residue_field(L: Subalgebra, E: TruncatedAlgebra) -> Subalgebra:
    return Subalgebra.from_elements(E, [AlgebraElement(E, x.parts()[0].coords) for x in L.basis()])


def l_basis(L0: Subspace, H0: Subspace) -> List[AlgebraElement]:
    """Greedy L0-basis of the L0-subspace H0."""
    chosen: List[AlgebraElement] = []
    span = Subspace.from_elements(H0.parent, [])
    for b in H0.basis():
        if not span.contains(b):
            chosen.append(b)
            span = L0.module_span(chosen)
    return chosen


def sym2_kernel(L: Subalgebra, H_eps: Subspace) -> Dict[str, object]:
    """Multiplication Sym^2_L(H eps) -> E, with L acting on E eps through its residue field."""
    D = L.parent
    E = D.plain()
    L0 = _residue_field(L, E)
    H0 = Subspace.from_elements(E, [AlgebraElement(E, _eps_part(x).coords) for x in H_eps.basis()])
    betas = l_basis(L0, H0)
    n = len(betas)
    deg = L0.dim
    img = EchelonBasis(E.dim)
    for a, b in itertools.combinations_with_replacement(range(n), 2):
        prod = betas[a] * betas[b]
        for l in L0.basis():
            img.add(to_sparse((l * prod).coords))
    rank = len(img.rows)
    sym_dim = deg * comb(n + 1, 2)
    ker = sym_dim - rank
    return {"surjective": rank == E.dim, "dim_kernel_over_F": ker, "dim_kernel_over_L": ker // deg,
            "degree_L": deg, "n": n, "obstruction": ker // deg > n - 1}


def expected_kernel_dim(n: int) -> int:
    return (n * n - n - 2) // 2


def nilpotent_data(p: int, r: int, s: int, n: int | None = None):
    """L = F[w_i + w_i eps] (i <= s), H = L-span of the non-constant monomials in w_{s+1..r}."""
    if not 0 <= s <= r:
        raise PreconditionViolation("need 0 <= s <= r")
    E = height_one_field(p, r, n)
    betas = []
    for nu in itertools.product(range(p), repeat=r - s):
        if any(nu):
            b = E.one()
            for j, e in enumerate(nu, start=s + 1):
                b = b * E.w(j) ** e
            betas.append(b)
    site = nilpotent_site(E, [E.w(i) for i in range(1, s + 1)], betas)
    return site


def ci_obstruction(p: int, r: int, s: int, n: int | None = None) -> Dict[str, object]:
    site = nilpotent_data(p, r, s, n)
    out = sym2_kernel(site.L, site.H_eps)
    out.update({"p": p, "r": r, "s": s, "expected_not_ci": p ** (r - s) >= 5})
    return out


def sym_mult_surjective(L: Subalgebra, H: Subspace, k: int = 2) -> bool:
    """F-span of k-fold products from an L-hyperplane H of E equals E."""
    E = H.parent
    if k < 2:
        raise PreconditionViolation("k must be at least 2")
    if L.parent != E:
        raise PreconditionViolation("L and H must live in the same algebra")
    if not H.is_stable_under(L):
        raise PreconditionViolation("H is not an L-subspace")
    if H.dim != E.dim - L.dim:
        raise PreconditionViolation("H is not an L-hyperplane")
    hb = H.basis()
    img = EchelonBasis(E.dim)
    for combo in itertools.combinations_with_replacement(range(len(hb)), k):
        x = hb[combo[0]]
        for j in combo[1:]:
            x = x * hb[j]
        img.add(to_sparse(x.coords))
        if len(img.rows) == E.dim:
            return True
    return len(img.rows) == E.dim


# local presentations

@dataclass
class Relation:
    """sum coeff * prod name^exp; coefficients are ints, elements of F or of E."""
    terms: List[Tuple[object, Dict[str, int]]]
    label: str = ""

    def __call__(self, subst: Mapping[str, LaurentPolynomial]) -> LaurentPolynomial:
        E = next(iter(subst.values())).E
        out = LaurentPolynomial(E)
        for c, mono in self.terms:
            t = LaurentPolynomial.const(E, _scalar(E, c))
            for name, e in mono.items():
                t = t * subst[name] ** e
            out = out + t
        return out


def verify_local_presentation(subst: Mapping[str, LaurentPolynomial],
                              relation: Union[Relation, Callable]) -> bool:
    return relation(subst).is_zero()


@dataclass
class PresentationRow:
    label: str
    subst: Dict[str, LaurentPolynomial]
    relation: Relation
    scalars: Dict[str, AlgebraElement]
    # a competing normalization of the scalar, checked against the forced one
    alt_scalars: Dict[str, AlgebraElement] = field(default_factory=dict)
    site: object = None

    def holds(self) -> bool:
        return verify_local_presentation(self.subst, self.relation)

    def scalars_in_F(self) -> bool:
        return all(v.scalar_value() is not None for v in self.scalars.values())

    def targets_in_ring(self) -> bool:
        if self.site is None:
            return True
        return all(self.site.membership(f) for f in self.subst.values())



def _u(E, k, c=None):
    return LaurentPolynomial(E, {k: c if c is not None else E.one()})


def presentation_rows(r: int = 2, n: int | None = None) -> List[PresentationRow]:
    """The local presentations with scalars forced by expanding the substitution."""
    rows = []

    # pair of subfields, p = 2: x -> w u, y -> u, x^2 - lam y^2
    E = height_one_field(2, r, n)
    w = E.w(1)
    lam = w ** 2
    rows.append(PresentationRow(
        "pair_p2", {"x": _u(E, 1, w), "y": _u(E, 1)},
        Relation([(1, {"x": 2}), (-lam, {"y": 2})]), {"lambda": lam}))

    # field of representatives: x -> u^2, y -> u^3, x^3 - y^2
    for p in (2, 3):
        E = height_one_field(p, r, n)
        site = representative_site(E, [E.w(i) for i in range(1, r + 1)])
        rows.append(PresentationRow(
            f"representatives_p{p}", {"x": _u(E, 2), "y": _u(E, 3)},
            Relation([(1, {"x": 3}), (-1, {"y": 2})]), {}, site=site))

    # p = 3, s = r-1: x -> b1 u, y -> b2 u, x^3 - lam y^3 with lam = (b1/b2)^3
    E = height_one_field(3, r, n)
    b1, b2 = E.w(r), E.w(r) ** 2
    site = nilpotent_site(E, [E.w(i) for i in range(1, r)], [b1, b2])
    lam = (b1 / b2) ** 3
    rows.append(PresentationRow(
        "nilpotent_p3_s=r-1", {"x": _u(E, 1, b1), "y": _u(E, 1, b2)},
        Relation([(1, {"x": 3}), (-lam, {"y": 3})]),
        {"lambda": lam}, {"lambda": (b2 / b1) ** 3}, site))

    # p = 2, s = r-1: x -> b1 u, y -> u^2, x^4 - mu y^2 with mu = b1^4
    E = height_one_field(2, r, n)
    b1 = E.w(r)
    site = nilpotent_site(E, [E.w(i) for i in range(1, r)], [b1])
    mu = b1 ** 4
    rows.append(PresentationRow(
        "nilpotent_p2_s=r-1", {"x": _u(E, 1, b1), "y": _u(E, 2)},
        Relation([(1, {"x": 4}), (-mu, {"y": 2})]),
        {"mu": mu}, {"mu": b1 ** 2}, site))

    if r >= 2:
        # p = 2, s = r-2: x, y, z -> b1 u, b2 u, b3 u; x^2 - gam z^2, y^2 - del z^2
        E = height_one_field(2, r, n)
        b1, b2 = E.w(r - 1), E.w(r)
        b3 = b1 * b2
        site = nilpotent_site(E, [E.w(i) for i in range(1, r - 1)], [b1, b2, b3])
        gam, dl = (b1 / b3) ** 2, (b2 / b3) ** 2
        sub = {"x": _u(E, 1, b1), "y": _u(E, 1, b2), "z": _u(E, 1, b3)}
        rows.append(PresentationRow(
            "nilpotent_p2_s=r-2_first", sub, Relation([(1, {"x": 2}), (-gam, {"z": 2})]),
            {"gamma": gam}, {"gamma": (b3 / b1) ** 2}, site))
        rows.append(PresentationRow(
            "nilpotent_p2_s=r-2_second", sub, Relation([(1, {"y": 2}), (-dl, {"z": 2})]),
            {"delta": dl}, {"delta": (b2 / b1) ** 2}, site))
    return rows


def _alt_relation_check(row: PresentationRow) -> Optional[bool]:
    """Substitute the alternative scalar in place of the forced one and re-test."""
    if not row.alt_scalars:
        return None
    (name, alt), = row.alt_scalars.items()
    forced = row.scalars[name]
    terms = []
    for c, mono in row.relation.terms:
        if isinstance(c, AlgebraElement) and c == -forced:
            c = -alt
        terms.append((c, mono))
    return verify_local_presentation(row.subst, Relation(terms))


def presentation_report(r: int = 2, n: int | None = None) -> List[Dict[str, object]]:
    out = []
    for row in presentation_rows(r, n):
        out.append({"row": row.label, "holds": row.holds(), "scalars_in_F": row.scalars_in_F(),
                    "targets_in_ring": row.targets_in_ring(),
                    "scalars": {k: str(v) for k, v in row.scalars.items()},
                    "alt_scalar_holds": _alt_relation_check(row)})
    return out
