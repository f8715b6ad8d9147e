"""Laurent polynomials over a height-one field E, derivations
D = u^2 P d/du + sum Q_i d/dw_i, and singularity sites."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .basefield import RationalFunctionField
from .truncated import (DUAL, AlgebraElement, Subalgebra, Subspace, TruncatedAlgebra,
                        span_subalgebra)

NILPOTENT, IDEMPOTENT = "nilpotent", "idempotent"
STABILIZE_K = 6


class DegreeBoundViolation(ValueError):
    pass


class UnknownName(KeyError):
    pass


class IncompatibleParams(ValueError):
    pass


def height_one_field(p: int, r: int, n: Optional[int] = None) -> TruncatedAlgebra:
    """E = F(w_1..w_r) with w_i^p = t_i, a field of degree p^r over F_p(t_1..t_n)."""
    if n is None:
        n = min(r + 2, 6)
    if n < r:
        raise IncompatibleParams("need n >= r for E to be a field")
    F = RationalFunctionField(p, n)
    return TruncatedAlgebra(F, F.gens()[:r], claim_field=True)


class LaurentPolynomial:
    __slots__ = ("E", "coeffs")

    def __init__(self, E: TruncatedAlgebra, coeffs: Dict[int, AlgebraElement] | None = None):
        self.E = E
        self.coeffs = {d: c for d, c in (coeffs or {}).items() if not c.is_zero()}

    @classmethod
    def const(cls, E, c, d: int = 0):
        if not isinstance(c, AlgebraElement):
            c = E.scalar(c)
        return cls(E, {d: c})

    @classmethod
    def u(cls, E, k: int = 1):
        return cls(E, {k: E.one()})

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, d: int) -> AlgebraElement:
        return self.coeffs.get(d, self.E.zero())

    def min_degree(self):
        return min(self.coeffs, default=None)

    def max_degree(self):
        return max(self.coeffs, default=None)

    def _lift(self, other):
        if isinstance(other, LaurentPolynomial):
            return other
        return LaurentPolynomial.const(self.E, other)

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except (TypeError, ValueError):
            return False
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.coeffs)
        for d, c in o.coeffs.items():
            out[d] = out[d] + c if d in out else c
        return LaurentPolynomial(self.E, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.E, {d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        out: Dict[int, AlgebraElement] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in o.coeffs.items():
                v = c1 * c2
                d = d1 + d2
                out[d] = out[d] + v if d in out else v
        return LaurentPolynomial(self.E, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials are invertible")
            (d, c), = self.coeffs.items()
            return LaurentPolynomial(self.E, {d * k: c.inverse() ** (-k)})
        out = LaurentPolynomial.const(self.E, 1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial(self.E, {d + k: c for d, c in self.coeffs.items()})

    def d_du(self) -> "LaurentPolynomial":
        return LaurentPolynomial(self.E, {d - 1: c * d for d, c in self.coeffs.items() if d % self.E.p})

    def partial(self, i: int) -> "LaurentPolynomial":
        return LaurentPolynomial(self.E, {d: c.partial(i) for d, c in self.coeffs.items()})

    def truncate(self, lo: int, hi: int) -> "LaurentPolynomial":
        """Terms with lo <= degree < hi."""
        return LaurentPolynomial(self.E, {d: c for d, c in self.coeffs.items() if lo <= d < hi})

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs):
            c = str(self.coeffs[d])
            parts.append(f"({c})*u^{d}" if d else f"({c})")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        return {str(d): str(self.coeffs[d]) for d in sorted(self.coeffs)}


def lp(E, terms: Dict[int, object]) -> LaurentPolynomial:
    """Shorthand: {degree: E-element or scalar}."""
    return LaurentPolynomial(E, {d: c if isinstance(c, AlgebraElement) else E.scalar(c)
                                 for d, c in terms.items()})


def omega(E, i: int) -> LaurentPolynomial:
    return LaurentPolynomial.const(E, E.w(i))


@dataclass
class LaurentDerivation:
    """D = u^2 P d/du + sum_i Q_i d/dw_i."""
    E: TruncatedAlgebra
    P: LaurentPolynomial
    Q: List[LaurentPolynomial]

    def __post_init__(self):
        if len(self.Q) != self.E.r:
            raise ValueError("need one Q_i per p-basis element")

    @classmethod
    def zero(cls, E):
        z = LaurentPolynomial(E)
        return cls(E, z, [z] * E.r)

    @classmethod
    def from_values(cls, E, du: LaurentPolynomial, dw: Sequence[LaurentPolynomial]):
        """The derivation with D(u) = du and D(w_i) = dw[i]."""
        return cls(E, du.shift(-2), list(dw))

    def __call__(self, f: LaurentPolynomial) -> LaurentPolynomial:
        return apply(self, f)

    def __eq__(self, other):
        return (isinstance(other, LaurentDerivation) and self.E == other.E and self.P == other.P
                and self.Q == other.Q)

    def __add__(self, other):
        return LaurentDerivation(self.E, self.P + other.P, [a + b for a, b in zip(self.Q, other.Q)])

    def scale(self, c) -> "LaurentDerivation":
        c = c if isinstance(c, LaurentPolynomial) else LaurentPolynomial.const(self.E, c)
        return LaurentDerivation(self.E, self.P * c, [q * c for q in self.Q])

    def is_zero(self):
        return self.P.is_zero() and all(q.is_zero() for q in self.Q)

    def generator_values(self) -> List[LaurentPolynomial]:
        E = self.E
        return [apply(self, LaurentPolynomial.u(E))] + [apply(self, omega(E, i)) for i in range(1, E.r + 1)]

    def to_json(self):
        return {"P": self.P.to_json(), "Q": [q.to_json() for q in self.Q]}


def apply(D: LaurentDerivation, f: LaurentPolynomial) -> LaurentPolynomial:
    E = D.E
    out = LaurentPolynomial(E)
    p = E.p
    du_part = {}
    for d, c in f.coeffs.items():
        if d % p:
            du_part[d + 1] = c * d
    if du_part:
        out = out + LaurentPolynomial(E, du_part) * D.P
    for i, Qi in enumerate(D.Q, start=1):
        if Qi.is_zero():
            continue
        g = f.partial(i)
        if not g.is_zero():
            out = out + g * Qi
    return out


def iterate(D: LaurentDerivation, f: LaurentPolynomial, k: int) -> LaurentPolynomial:
    for _ in range(k):
        f = apply(D, f)
    return f


def p_iterate_check(D: LaurentDerivation, mode: str) -> bool:
    E = D.E
    p = E.p
    gens = [LaurentPolynomial.u(E)] + [omega(E, i) for i in range(1, E.r + 1)]
    for g in gens:
        v = iterate(D, g, p)
        if mode == NILPOTENT:
            if not v.is_zero():
                return False
        elif mode == IDEMPOTENT:
            if v != apply(D, g):
                return False
        else:
            raise ValueError(f"unknown mode {mode}")
    return True


def bracket(D1: LaurentDerivation, D2: LaurentDerivation) -> LaurentDerivation:
    if D1.E != D2.E:
        raise ValueError("derivations over different fields")
    E = D1.E
    gens = [LaurentPolynomial.u(E)] + [omega(E, i) for i in range(1, E.r + 1)]
    vals = [apply(D1, apply(D2, g)) - apply(D2, apply(D1, g)) for g in gens]
    return LaurentDerivation.from_values(E, vals[0], vals[1:])


def p_power(D: LaurentDerivation) -> LaurentDerivation:
    """D^[p] reconstructed from its values on generators."""
    E = D.E
    gens = [LaurentPolynomial.u(E)] + [omega(E, i) for i in range(1, E.r + 1)]
    vals = [iterate(D, g, E.p) for g in gens]
    return LaurentDerivation.from_values(E, vals[0], vals[1:])


# sites

class SingularityDatum:
    kind = ""

    def membership(self, f: LaurentPolynomial) -> bool:
        raise NotImplementedError

    def certificate(self) -> List[LaurentPolynomial]:
        raise NotImplementedError


def lift_dual(E: TruncatedAlgebra, x: AlgebraElement) -> LaurentPolynomial:
    """a + b eps in E[eps] -> a + b u."""
    a, b = x.parts()
    return LaurentPolynomial(E, {0: AlgebraElement(E, a.coords), 1: AlgebraElement(E, b.coords)})


class DualPointSite(SingularityDatum):
    """R = {f in E[u] : f mod u^2 in Lambda}, Lambda ⊂ E[eps]."""
    kind = "dual-point"

    def __init__(self, E: TruncatedAlgebra, Lam: Subalgebra, L: Subalgebra | None = None,
                 H_eps: Subspace | None = None, label: str = ""):
        if Lam.parent.flavor != DUAL or Lam.parent.plain() != E:
            raise ValueError("Lambda must live in E[eps]")
        self.E = E
        self.Lam = Lam
        self.L = L if L is not None else Lam
        self.H_eps = H_eps
        self.label = label
        self.dual = Lam.parent

    def truncation(self, f: LaurentPolynomial) -> AlgebraElement:
        D = self.dual
        P = D.plain()
        a, b = f.coeff(0), f.coeff(1)
        return D.from_parts(AlgebraElement(P, a.coords), AlgebraElement(P, b.coords))

    def membership(self, f: LaurentPolynomial) -> bool:
        if f.coeffs and f.min_degree() < 0:
            return False
        return self.Lam.contains(self.truncation(f))

    def certificate(self, K: int = STABILIZE_K) -> List[LaurentPolynomial]:
        # Lambda lifts plus u^2 E[u] generators; together they generate R as an F-algebra
        E = self.E
        gens = [lift_dual(E, x) for x in self.Lam.basis()]
        for k in range(2, K + 1):
            gens += [LaurentPolynomial(E, {k: g}) for g in E.basis()]
        return gens

    def intersection_with_E(self) -> int:
        """dim_F of Lambda ∩ E (E embedded as constants)."""
        D = self.dual
        consts = Subspace.from_elements(D, [D.embed(x) for x in self.E.basis()])
        return self.Lam.intersect(consts).dim


class TwoPointSite(SingularityDatum):
    """R' = L' + u E[u] at u = 0 and R'' = L'' + u^-1 E[u^-1] at infinity."""
    kind = "two-points"

    def __init__(self, E: TruncatedAlgebra, L1: Subalgebra, L2: Subalgebra, label: str = ""):
        if L1.parent != E or L2.parent != E:
            raise ValueError("L', L'' must be subfields of E")
        self.E = E
        self.L1 = L1
        self.L2 = L2
        self.label = label

    def membership(self, f: LaurentPolynomial, chart: str = "both") -> bool:
        ok0 = ok1 = True
        if chart in ("zero", "both"):
            ok0 = (not f.coeffs or f.min_degree() >= 0) and self.L1.contains(f.coeff(0))
        if chart in ("infinity", "both"):
            ok1 = (not f.coeffs or f.max_degree() <= 0) and self.L2.contains(f.coeff(0))
        return ok0 and ok1

    def certificate(self, K: int = STABILIZE_K):
        E = self.E
        zero = [LaurentPolynomial.const(E, x) for x in self.L1.basis()]
        zero += [LaurentPolynomial(E, {1: g}) for g in E.basis()]
        inf = [LaurentPolynomial.const(E, x) for x in self.L2.basis()]
        inf += [LaurentPolynomial(E, {-1: g}) for g in E.basis()]
        return zero, inf


def degree_bounds(D: LaurentDerivation, site: SingularityDatum | None = None) -> bool:
    """Bounds forced on members of the Lie algebra of global vector fields.

    Dual-point sites: P in E[u^-1] of u^-1-degree <= 4 (<= 3 for odd p), Q_i of
    u^-1-degree <= p. Two-point sites: P in span(u^-2..1), Q_i in span(u^-1..u).
    """
    p = D.E.p
    if site is not None and site.kind == "two-points":
        plo, phi, qlo, qhi = -2, 0, -1, 1
    else:
        plo, phi, qlo, qhi = (-4 if p == 2 else -3), 0, -p, 0

    def within(f, lo, hi):
        return not f.coeffs or (f.min_degree() >= lo and f.max_degree() <= hi)

    return within(D.P, plo, phi) and all(within(q, qlo, qhi) for q in D.Q)


def stabilizes(D: LaurentDerivation, site: SingularityDatum, check_bounds: bool = True) -> bool:
    if check_bounds and not degree_bounds(D, site):
        raise DegreeBoundViolation("coefficients exceed the degree bounds; not a global vector field")
    if site.kind == "two-points":
        zero, inf = site.certificate()
        return (all(site.membership(apply(D, g), "zero") for g in zero)
                and all(site.membership(apply(D, g), "infinity") for g in inf))
    return all(site.membership(apply(D, g)) for g in site.certificate())


def membership(f: LaurentPolynomial, site: SingularityDatum) -> bool:
    return site.membership(f)


# site constructors

def representative_site(E: TruncatedAlgebra, alpha: Sequence[AlgebraElement]) -> DualPointSite:
    """Field of representatives L = F[w_i + alpha_i eps] (all i), Lambda = L."""
    D = E.dual()
    P = D.plain()
    gens = [D.from_parts(AlgebraElement(P, E.w(i).coords), AlgebraElement(P, a.coords))
            for i, a in enumerate(alpha, start=1)]
    L = span_subalgebra(gens)
    return DualPointSite(E, L, L, None, "representatives")


def nilpotent_site(E: TruncatedAlgebra, alpha: Sequence[AlgebraElement],
                   betas: Sequence[AlgebraElement]) -> DualPointSite:
    """Lambda = L + H eps with L = F[w_i + alpha_i eps] (i <= s) and H = L-span of betas."""
    D = E.dual()
    P = D.plain()
    z = P.zero()
    gens = [D.from_parts(AlgebraElement(P, E.w(i).coords), AlgebraElement(P, a.coords))
            for i, a in enumerate(alpha, start=1)]
    L = span_subalgebra(gens) if gens else D.scalars()
    H = L.module_span([D.from_parts(z, AlgebraElement(P, b.coords)) for b in betas])
    Lam = span_subalgebra(L.basis() + H.basis())
    return DualPointSite(E, Lam, L, H, "nilpotents")


def two_point_site(E: TruncatedAlgebra, gens1, gens2) -> TwoPointSite:
    L1 = span_subalgebra(gens1) if gens1 else E.scalars()
    L2 = span_subalgebra(gens2) if gens2 else E.scalars()
    return TwoPointSite(E, L1, L2, "two-points")


# catalog

@dataclass
class CatalogEntry:
    name: str
    D: LaurentDerivation
    site: SingularityDatum
    mode: str
    identities: List[Tuple[str, LaurentPolynomial, LaurentPolynomial]] = field(default_factory=list)


CATALOG_NAMES = ("sec4_D", "sec4_Dtilde", "cor_p2", "cor_p3", "nilp_p3_s1", "nilp_p2_s1",
                 "nilp_p2_s2_D", "nilp_p2_s2_Dprime")

CATALOG_PRIME = {"sec4_D": 2, "sec4_Dtilde": 2, "cor_p2": 2, "cor_p3": 3, "nilp_p3_s1": 3,
                 "nilp_p2_s1": 2, "nilp_p2_s2_D": 2, "nilp_p2_s2_Dprime": 2}

CATALOG_RANKS = {"sec4_D": (1, 2), "sec4_Dtilde": (1, 2), "nilp_p2_s2_D": (2, 6),
                 "nilp_p2_s2_Dprime": (2, 6)}


def catalog_ranks(name: str) -> Tuple[int, int]:
    return CATALOG_RANKS.get(name, (1, 6))


def _sec4(E, r):
    # L' = F(w_2..w_r) = ker d/dw_1 and L'' its image under w_2 -> w_1 + w_2
    if r == 1:
        return two_point_site(E, [], [])
    return two_point_site(E, [E.w(2)], [E.w(1) + E.w(2)])


def catalog_entry(name: str, r: int, n: Optional[int] = None) -> CatalogEntry:
    if name not in CATALOG_NAMES:
        raise UnknownName(name)
    lo, hi = catalog_ranks(name)
    if not lo <= r <= hi:
        raise IncompatibleParams(f"{name} needs {lo} <= r <= {hi}")
    p = CATALOG_PRIME[name]
    E = height_one_field(p, r, n)
    U = LaurentPolynomial.u(E)
    one = LaurentPolynomial.const(E, 1)
    w = [None] + [omega(E, i) for i in range(1, r + 1)]
    ws = [None] + [E.w(i) for i in range(1, r + 1)]
    Z = LaurentPolynomial(E)
    ids = []

    if name == "sec4_D":
        # D = d/du + w u^-1 d/dw; for r = 2 d/dw is the derivation of E over L'
        P = lp(E, {-2: 1})
        Q = [w[1].shift(-1)] + [Z] * (r - 1)
        D = LaurentDerivation(E, P, Q)
        site = _sec4(E, r)
        ids = [("D(u^-1)=u^-2", U ** -1, lp(E, {-2: 1})), ("D(u)=1", U, one),
               ("D(w)=w u^-1", w[1], w[1].shift(-1)), ("D(w u^-1)=0", w[1].shift(-1), Z),
               ("D(w u)=0", w[1].shift(1), Z)]
        return CatalogEntry(name, D, site, NILPOTENT, ids)
    if name == "sec4_Dtilde":
        # derivation of E over L'' sending w_1 to 1
        P = lp(E, {0: 1})
        Q = [w[1].shift(1)] * r
        D = LaurentDerivation(E, P, Q)
        site = _sec4(E, r)
        ids = [("D~(u)=u^2", U, lp(E, {2: 1})), ("D~(u^-1)=1", U ** -1, one),
               ("D~(w)=w u", w[1], w[1].shift(1)), ("D~(w u)=0", w[1].shift(1), Z),
               ("D~(w u^-1)=0", w[1].shift(-1), Z)]
        return CatalogEntry(name, D, site, NILPOTENT, ids)
    if name == "cor_p2":
        P = lp(E, {-4: 1, -2: 1})
        Q = [w[i] * lp(E, {-2: 1, -1: 1}) for i in range(1, r + 1)]
        D = LaurentDerivation(E, P, Q)
        site = representative_site(E, ws[1:])
        ids = [("D(u^3)=1+u^2", U ** 3, lp(E, {0: 1, 2: 1}))]
        ids += [(f"D(w{k}+a{k}u)=0", w[k] + w[k].shift(1), Z) for k in range(1, r + 1)]
        return CatalogEntry(name, D, site, NILPOTENT, ids)
    if name == "cor_p3":
        P = lp(E, {-1: 1, -3: -1})
        Q = [w[i] * lp(E, {-1: 1, 0: -1}) for i in range(1, r + 1)]
        D = LaurentDerivation(E, P, Q)
        site = representative_site(E, ws[1:])
        ids = [("D(u^2)=1-u^2", U ** 2, lp(E, {0: 1, 2: -1}))]
        ids += [(f"D(w{k}+a{k}u)=0", w[k] + w[k].shift(1), Z) for k in range(1, r + 1)]
        return CatalogEntry(name, D, site, IDEMPOTENT, ids)
    if name == "nilp_p3_s1":
        wr_inv = ws[r].inverse()
        P = LaurentPolynomial(E, {-2: -wr_inv, -1: -wr_inv})
        Q = [LaurentPolynomial(E, {0: wr_inv * ws[i]}) for i in range(1, r)]
        Q.append(lp(E, {0: 1, -1: -1}))
        D = LaurentDerivation(E, P, Q)
        site = nilpotent_site(E, ws[1:r], [ws[r], ws[r] ** 2])
        ids = [("D(w_r u)=1", w[r].shift(1), one), ("D(w_r^2 u)=w_r u", (w[r] * w[r]).shift(1), w[r].shift(1))]
        ids += [(f"D(w{k}+w{k}u)=0", w[k] + w[k].shift(1), Z) for k in range(1, r)]
        return CatalogEntry(name, D, site, NILPOTENT, ids)
    if name == "nilp_p2_s1":
        wr_inv = ws[r].inverse()
        P = LaurentPolynomial(E, {-3: wr_inv, -1: wr_inv})
        Q = [LaurentPolynomial(E, {-1: wr_inv * ws[i], 0: wr_inv * ws[i]}) for i in range(1, r)]
        Q.append(lp(E, {-2: 1, 0: 1}))
        D = LaurentDerivation(E, P, Q)
        site = nilpotent_site(E, ws[1:r], [ws[r]])
        ids = [("D(w_r u)=0", w[r].shift(1), Z), ("D(w_r u^2)=1+u^2", w[r].shift(2), lp(E, {0: 1, 2: 1}))]
        ids += [(f"D(w{k}+w{k}u)=0", w[k] + w[k].shift(1), Z) for k in range(1, r)]
        return CatalogEntry(name, D, site, NILPOTENT, ids)
    # nilp_p2_s2_D / Dprime
    a, b = (r - 1, r) if name == "nilp_p2_s2_D" else (r, r - 1)
    wa_inv = ws[a].inverse()
    P = LaurentPolynomial(E, {-2: wa_inv, -1: wa_inv})
    Q = [None] * r
    for i in range(1, r - 1):
        Q[i - 1] = LaurentPolynomial(E, {0: wa_inv * ws[i]})
    Q[a - 1] = lp(E, {0: 1})
    Q[b - 1] = LaurentPolynomial(E, {-1: ws[b] * wa_inv, 0: ws[b] * wa_inv})
    D = LaurentDerivation(E, P, Q)
    site = nilpotent_site(E, ws[1:r - 1], [ws[r - 1], ws[r], ws[r - 1] * ws[r]])
    ids = [(f"D(w{a}u)=1", w[a].shift(1), one), (f"D(w{b}u)=0", w[b].shift(1), Z),
           (f"D(w{r - 1}w{r}u)=w{b}u", (w[r - 1] * w[r]).shift(1), w[b].shift(1))]
    ids += [(f"D(w{k}+w{k}u)=0", w[k] + w[k].shift(1), Z) for k in range(1, r - 1)]
    return CatalogEntry(name, D, site, NILPOTENT, ids)


def catalog(name: str, r: int, n: Optional[int] = None) -> LaurentDerivation:
    return catalog_entry(name, r, n).D


def check_identities(entry: CatalogEntry) -> Dict[str, bool]:
    return {label: apply(entry.D, f) == expected for label, f, expected in entry.identities}
