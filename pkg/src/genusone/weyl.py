"""Quotient Weyl algebra E[d_1..d_r] acting on E, and the linear PDE
characterization of global vector fields at a field-of-representatives site."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .laurent import (LaurentDerivation, LaurentPolynomial, representative_site, stabilizes)
from .linalg import Matrix
from .truncated import AlgebraElement, TruncatedAlgebra


class ShapeMismatch(ValueError):
    pass


# shape per p: (number of lambdas, lowest u-degree of P, number of mus per i, lowest degree of Q_i)
SHAPES = {2: (5, -4, 3, -2), 3: (4, -3, 4, -3)}


def apply_partial(i: int, x: AlgebraElement) -> AlgebraElement:
    if not 1 <= i <= x.parent.r:
        raise IndexError(i)
    return x.partial(i)


def delta(alpha: Sequence[AlgebraElement], x: AlgebraElement) -> AlgebraElement:
    if len(alpha) != x.parent.r:
        raise ShapeMismatch("need one alpha per p-basis element")
    out = x.parent.zero()
    for i, a in enumerate(alpha, start=1):
        d = x.partial(i)
        if not d.is_zero():
            out = out + a * d
    return out


class WeylOperator:
    """F-linear endomorphism of E; column k holds the image of basis vector k."""

    def __init__(self, E: TruncatedAlgebra, matrix: Matrix):
        self.E = E
        self.matrix = matrix

    @classmethod
    def from_map(cls, E, f):
        cols = [f(b).coords for b in E.basis()]
        return cls(E, Matrix(cols, ncols=E.dim).transpose())

    @classmethod
    def partial(cls, E, i):
        return cls.from_map(E, lambda x: x.partial(i))

    @classmethod
    def mult(cls, E, a: AlgebraElement):
        return cls.from_map(E, lambda x: a * x)

    @classmethod
    def identity(cls, E):
        return cls.from_map(E, lambda x: x)

    def __matmul__(self, other: "WeylOperator") -> "WeylOperator":
        return WeylOperator(self.E, self.matrix * other.matrix)

    def __sub__(self, other: "WeylOperator") -> "WeylOperator":
        rows = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.matrix.rows, other.matrix.rows)]
        return WeylOperator(self.E, Matrix(rows, ncols=self.E.dim))

    def __eq__(self, other):
        return isinstance(other, WeylOperator) and self.matrix == other.matrix

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.E, self.matrix.apply(x.coords))

    def is_zero(self):
        return all(not a for r in self.matrix.rows for a in r)


def weyl_relations_hold(E: TruncatedAlgebra) -> bool:
    """d_i w_j - w_j d_i = delta_ij as operators on E."""
    I = WeylOperator.identity(E)
    zero = I - I
    for i in range(1, E.r + 1):
        Di = WeylOperator.partial(E, i)
        for j in range(1, E.r + 1):
            Wj = WeylOperator.mult(E, E.w(j))
            comm = (Di @ Wj) - (Wj @ Di)
            if comm != (I if i == j else zero):
                return False
    return True


@dataclass
class DerivationCoefficients:
    """P = sum_j lam[j] u^(j+P0), Q_i = sum_j mu[i][j] u^(j+Q0) with (P0, Q0) set by p."""
    p: int
    alpha: List[AlgebraElement]
    lam: List[AlgebraElement]
    mu: List[List[AlgebraElement]]

    def __post_init__(self):
        if self.p not in SHAPES:
            raise ShapeMismatch(f"no coefficient shape for p={self.p}")
        nl, _, nm, _ = SHAPES[self.p]
        r = len(self.alpha)
        if len(self.lam) != nl or len(self.mu) != r or any(len(m) != nm for m in self.mu):
            raise ShapeMismatch("coefficient lists do not match the shape for this p")

    @property
    def E(self) -> TruncatedAlgebra:
        return self.alpha[0].parent

    @property
    def r(self):
        return len(self.alpha)

    def to_derivation(self) -> LaurentDerivation:
        E = self.E
        _, p0, _, q0 = SHAPES[self.p]
        P = LaurentPolynomial(E, {j + p0: c for j, c in enumerate(self.lam)})
        Q = [LaurentPolynomial(E, {j + q0: c for j, c in enumerate(m)}) for m in self.mu]
        return LaurentDerivation(E, P, Q)

    @classmethod
    def from_derivation(cls, D: LaurentDerivation, alpha) -> "DerivationCoefficients":
        p = D.E.p
        if p not in SHAPES:
            raise ShapeMismatch(f"no coefficient shape for p={p}")
        nl, p0, nm, q0 = SHAPES[p]

        def unpack(f, lo, k):
            if f.coeffs and (f.min_degree() < lo or f.max_degree() >= lo + k):
                raise ShapeMismatch("derivation is outside the coefficient shape")
            return [f.coeff(lo + j) for j in range(k)]

        return cls(p, list(alpha), unpack(D.P, p0, nl), [unpack(q, q0, nm) for q in D.Q])

    def unknowns(self) -> List[AlgebraElement]:
        return list(self.lam) + [c for m in self.mu for c in m]

    def to_vector(self) -> tuple:
        return tuple(x for c in self.unknowns() for x in c.coords)

    @classmethod
    def from_vector(cls, p, alpha, vec) -> "DerivationCoefficients":
        E = alpha[0].parent
        nl, _, nm, _ = SHAPES[p]
        d = E.dim
        elems = [AlgebraElement(E, tuple(vec[k * d:(k + 1) * d])) for k in range(len(vec) // d)]
        lam = elems[:nl]
        mu = [elems[nl + i * nm: nl + (i + 1) * nm] for i in range(len(alpha))]
        return cls(p, list(alpha), lam, mu)

    def __add__(self, other):
        return DerivationCoefficients(self.p, self.alpha, [a + b for a, b in zip(self.lam, other.lam)],
                                      [[a + b for a, b in zip(m1, m2)] for m1, m2 in zip(self.mu, other.mu)])

    def scale(self, c):
        return DerivationCoefficients(self.p, self.alpha, [a * c for a in self.lam],
                                      [[a * c for a in m] for m in self.mu])

    def to_json(self):
        return {"lambda": [str(x) for x in self.lam], "mu": [[str(x) for x in m] for m in self.mu]}


def phi_psi(k: int, c: DerivationCoefficients, literal: bool = False) -> Tuple[AlgebraElement, AlgebraElement]:
    """(Phi_k, Psi_k): the u^0 and u^1 coefficients of D(w_k + alpha_k u).

    For p = 3 the u^0 coefficient involves lambda_1. literal=True uses
    lambda_0 there instead, reproducing a misprinted variant.
    """
    if c.p not in SHAPES:
        raise ShapeMismatch(f"no formula for p={c.p}")
    a = c.alpha[k - 1]
    r = c.r
    if c.p == 2:
        phi = a * c.lam[2] + c.mu[k - 1][2]
        psi = a * c.lam[3]
        for i in range(1, r + 1):
            da = a.partial(i)
            phi = phi + c.mu[i - 1][1] * da
            psi = psi + c.mu[i - 1][2] * da
    else:
        phi = a * (c.lam[0] if literal else c.lam[1]) + c.mu[k - 1][3]
        psi = a * c.lam[2]
        for i in range(1, r + 1):
            da = a.partial(i)
            phi = phi + c.mu[i - 1][2] * da
            psi = psi + c.mu[i - 1][3] * da
    return phi, psi


def pde_residuals(c: DerivationCoefficients, literal: bool = False) -> List[AlgebraElement]:
    """Each equation as lhs - rhs; all vanish iff pde_check holds."""
    D = lambda x: delta(c.alpha, x)
    out = [c.lam[1] - D(c.lam[0])]
    for k in range(1, c.r + 1):
        mu = c.mu[k - 1]
        a = c.alpha[k - 1]
        if c.p == 2:
            out += [mu[1] - D(mu[0]), mu[0] - a * c.lam[0]]
        else:
            out += [mu[0], mu[1], mu[2] + a * c.lam[0]]
        phi, psi = phi_psi(k, c, literal)
        out.append(psi - D(phi))
    return out


def pde_check(c: DerivationCoefficients, literal: bool = False) -> bool:
    return all(x.is_zero() for x in pde_residuals(c, literal))


def _n_unknowns(p, r, E):
    nl, _, nm, _ = SHAPES[p]
    return (nl + r * nm) * E.dim


def pde_matrix(alpha: Sequence[AlgebraElement], p: int, literal: bool = False) -> Matrix:
    """Matrix of the F-linear map coefficients -> residuals, built column by column."""
    alpha = list(alpha)
    E = alpha[0].parent
    N = _n_unknowns(p, len(alpha), E)
    zero, one = E.F.zero(), E.F.one()
    cols = []
    for k in range(N):
        vec = [zero] * N
        vec[k] = one
        c = DerivationCoefficients.from_vector(p, alpha, vec)
        cols.append(tuple(x for res in pde_residuals(c, literal) for x in res.coords))
    return Matrix(cols, ncols=len(cols[0])).transpose()


def pde_solve(alpha: Sequence[AlgebraElement], p: int, literal: bool = False) -> List[DerivationCoefficients]:
    alpha = list(alpha)
    if p not in SHAPES:
        raise ShapeMismatch(f"no coefficient shape for p={p}")
    m = pde_matrix(alpha, p, literal)
    return [DerivationCoefficients.from_vector(p, alpha, v) for v in m.kernel_basis()]


def solution_space_contains(basis: Sequence[DerivationCoefficients], c: DerivationCoefficients) -> bool:
    from .linalg import EchelonBasis, to_sparse
    if not basis:
        return all(not x for x in c.to_vector())
    e = EchelonBasis(len(basis[0].to_vector()))
    for b in basis:
        e.add(to_sparse(b.to_vector()))
    return e.contains(to_sparse(c.to_vector()))


def stabilizer_dimension(alpha: Sequence[AlgebraElement], p: int, neg_range: int = 10,
                         window: Tuple[int, int] | None = None) -> int:
    """Independent count: dim of the derivations with P in span(u^P_lo..1), Q_i in
    span(u^Q_lo..1) that stabilize the site.

    window = (P_lo, Q_lo) defaults to the coefficient shape. The upper end 0 is
    regularity at infinity. Linearizes stabilizes(): for each certificate element g,
    D(g) must have no negative u-degrees and its truncation must be annihilated
    by the functionals cutting out Lambda in E[eps].
    """
    alpha = list(alpha)
    E = alpha[0].parent
    if window is None:
        _, plo, _, qlo = SHAPES[p]
    else:
        plo, qlo = window
    site = representative_site(E, alpha)
    ann = Matrix([x.coords for x in site.Lam.basis()], ncols=site.dual.dim).kernel_basis()
    certs = site.certificate()
    slots = [("P", None, d) for d in range(plo, 1)]
    slots += [("Q", i, d) for i in range(E.r) for d in range(qlo, 1)]
    zero = E.F.zero()
    Z = LaurentPolynomial(E)
    cols = []
    for kind, i, deg in slots:
        for b in E.basis():
            mono = LaurentPolynomial(E, {deg: b})
            if kind == "P":
                D = LaurentDerivation(E, mono, [Z] * E.r)
            else:
                D = LaurentDerivation(E, Z, [mono if j == i else Z for j in range(E.r)])
            col = []
            for g in certs:
                v = D(g)
                for d in range(-neg_range, 0):
                    col.extend(v.coeff(d).coords)
                t = site.truncation(v).coords
                for a in ann:
                    s = zero
                    for x, y in zip(a, t):
                        if x and y:
                            s = s + x * y
                    col.append(s)
            cols.append(tuple(col))
    m = Matrix(cols, ncols=len(cols[0])).transpose()
    return len(cols) - m.rank()


def derivation_in_lie_algebra(c: DerivationCoefficients) -> bool:
    site = representative_site(c.E, c.alpha)
    return stabilizes(c.to_derivation(), site)
