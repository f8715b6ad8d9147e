"""Truncated algebras F[w_1..w_r]/(w_i^p - c_i), their dual-number and
product extensions, and subspace/subalgebra machinery."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .basefield import RationalFunction, RationalFunctionField, p_independent
from .linalg import EchelonBasis, Matrix

PLAIN, DUAL, PRODUCT = "plain", "dual", "product"


class ParentMismatch(ValueError):
    pass


class BadRank(ValueError):
    pass


class MalformedData(ValueError):
    pass


class TruncatedAlgebra:
    def __init__(self, F: RationalFunctionField, c: Sequence, flavor: str = PLAIN,
                 claim_field: bool = False):
        if flavor not in (PLAIN, DUAL, PRODUCT):
            raise ValueError(f"unknown flavor {flavor}")
        self.F = F
        self.p = F.p
        self.c = tuple(F(x) for x in c)
        self.r = len(self.c)
        self.flavor = flavor
        if claim_field and (flavor != PLAIN or (self.r and not p_independent(self.c))):
            raise ValueError("claimed field but the p-th powers are not p-independent")
        self.monomials = list(itertools.product(range(self.p), repeat=self.r))
        self.index = {m: k for k, m in enumerate(self.monomials)}
        self.base_dim = len(self.monomials)
        self.dim = self.base_dim * (1 if flavor == PLAIN else 2)
        self._table = None
        self._zero = F.zero()

    def __eq__(self, other):
        return (isinstance(other, TruncatedAlgebra) and self.F == other.F and self.c == other.c
                and self.flavor == other.flavor)

    def __hash__(self):
        return hash((self.F, self.c, self.flavor))

    def __repr__(self):
        return f"TruncatedAlgebra(p={self.p}, r={self.r}, c={[str(x) for x in self.c]}, {self.flavor})"

    @property
    def table(self):
        # (a, b) -> (index, scalar or None); monomial products in the plain part
        if self._table is None:
            p, one = self.p, self.F.one()
            t = {}
            for a, ea in enumerate(self.monomials):
                for b, eb in enumerate(self.monomials):
                    coef = one
                    e = []
                    for i, (x, y) in enumerate(zip(ea, eb)):
                        s = x + y
                        if s >= p:
                            coef = coef * self.c[i]
                            s -= p
                        e.append(s)
                    t[a, b] = (self.index[tuple(e)], None if coef.is_one() else coef)
            self._table = t
        return self._table

    def plain(self) -> "TruncatedAlgebra":
        return self if self.flavor == PLAIN else TruncatedAlgebra(self.F, self.c, PLAIN)

    def dual(self) -> "TruncatedAlgebra":
        return TruncatedAlgebra(self.F, self.c, DUAL)

    def product(self) -> "TruncatedAlgebra":
        return TruncatedAlgebra(self.F, self.c, PRODUCT)

    def is_field(self) -> bool:
        return self.flavor == PLAIN and (self.r == 0 or p_independent(self.c))

    # constructors
    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, tuple(self.F(x) for x in coords))

    def from_sparse(self, d: Dict[int, RationalFunction]) -> "AlgebraElement":
        z = self._zero
        return AlgebraElement(self, tuple(d.get(k, z) for k in range(self.dim)))

    def zero(self):
        return AlgebraElement(self, (self._zero,) * self.dim)

    def scalar(self, x) -> "AlgebraElement":
        x = self.F(x)
        d = {0: x}
        if self.flavor == PRODUCT:
            d[self.base_dim] = x
        return self.from_sparse(d)

    def one(self):
        return self.scalar(1)

    def monomial(self, nu, part: int = 0) -> "AlgebraElement":
        k = self.index[tuple(nu)]
        if self.flavor == PRODUCT and part is None:
            return self.from_sparse({k: self.F.one(), k + self.base_dim: self.F.one()})
        return self.from_sparse({k + part * self.base_dim: self.F.one()})

    def w(self, i: int) -> "AlgebraElement":
        """w_i, 1-based; diagonal in the product flavor."""
        nu = [0] * self.r
        nu[i - 1] = 1
        return self.monomial(nu, None if self.flavor == PRODUCT else 0)

    def eps(self) -> "AlgebraElement":
        if self.flavor != DUAL:
            raise ValueError("eps only exists in the dual flavor")
        return self.from_sparse({self.base_dim: self.F.one()})

    def from_parts(self, a: "AlgebraElement", b: "AlgebraElement") -> "AlgebraElement":
        """a + b*eps (dual) or (a, b) (product) from plain elements."""
        if self.flavor == PLAIN:
            raise ValueError("plain algebra has no parts")
        return AlgebraElement(self, a.coords + b.coords)

    def embed(self, a: "AlgebraElement") -> "AlgebraElement":
        """Plain element into dual (as a) or product (diagonally)."""
        if self.flavor == PLAIN:
            return a
        z = (self._zero,) * self.base_dim
        return AlgebraElement(self, a.coords + (a.coords if self.flavor == PRODUCT else z))

    def basis(self) -> List["AlgebraElement"]:
        return [self.from_sparse({k: self.F.one()}) for k in range(self.dim)]

    def whole(self) -> "Subalgebra":
        return Subalgebra.from_elements(self, self.basis())

    def scalars(self) -> "Subalgebra":
        return Subalgebra.from_elements(self, [self.one()])

    def parse_monomial_label(self, k: int) -> str:
        nu = self.monomials[k % self.base_dim]
        s = "*".join(f"w{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(nu) if e)
        part = k // self.base_dim
        if self.flavor == DUAL and part:
            s = f"{s}*eps" if s else "eps"
        elif self.flavor == PRODUCT:
            s = f"[{part}]{s or '1'}"
        return s or "1"


class AlgebraElement:
    __slots__ = ("parent", "coords", "_hash")

    def __init__(self, parent: TruncatedAlgebra, coords: tuple):
        if len(coords) != parent.dim:
            raise ValueError("coordinate vector has the wrong length")
        self.parent = parent
        self.coords = coords
        self._hash = None

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            return self.parent.scalar(other)
        if other.parent != self.parent:
            raise ParentMismatch("elements of different algebras")
        return other

    def sparse(self) -> Dict[int, RationalFunction]:
        return {k: x for k, x in enumerate(self.coords) if x}

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            try:
                other = self.parent.scalar(other)
            except (TypeError, ValueError):
                return False
        return self.parent == other.parent and self.coords == other.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coords)
        return self._hash

    def __add__(self, other):
        o = self._check(other)
        return AlgebraElement(self.parent, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.parent, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, x) -> "AlgebraElement":
        x = self.parent.F(x)
        return AlgebraElement(self.parent, tuple(a * x for a in self.coords))

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        o = self._check(other)
        A = self.parent
        n = A.base_dim
        sa, sb = self.sparse(), o.sparse()
        out: Dict[int, RationalFunction] = {}
        table = A.table

        def acc(k, v):
            w = out.get(k)
            out[k] = v if w is None else w + v

        for i, x in sa.items():
            pi, mi = divmod(i, n)
            for j, y in sb.items():
                pj, mj = divmod(j, n)
                if A.flavor == DUAL:
                    if pi + pj > 1:
                        continue
                    part = pi + pj
                elif A.flavor == PRODUCT:
                    if pi != pj:
                        continue
                    part = pi
                else:
                    part = 0
                k, coef = table[mi, mj]
                v = x * y
                if coef is not None:
                    v = v * coef
                acc(k + part * n, v)
        return A.from_sparse({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.parent.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mult_matrix(self) -> Matrix:
        """Rows are the coordinates of self * basis_k."""
        return Matrix([(self * b).coords for b in self.parent.basis()], ncols=self.parent.dim)

    def inverse(self) -> "AlgebraElement":
        from .linalg import InconsistentSystem
        m = self.mult_matrix().transpose()
        try:
            x = m.solve(self.parent.one().coords)
        except InconsistentSystem:
            raise ZeroDivisionError("element is not a unit") from None
        return AlgebraElement(self.parent, x)

    def __truediv__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(self.parent.F(other).inverse())
        return self * other.inverse()

    def partial(self, i: int) -> "AlgebraElement":
        """d/dw_i (1-based) of the p-truncated representative, plain flavor."""
        A = self.parent
        if A.flavor != PLAIN:
            raise ValueError("partial derivatives are defined on the plain flavor")
        out = {}
        for k, x in self.sparse().items():
            nu = A.monomials[k]
            e = nu[i - 1]
            if e % A.p:
                nu2 = nu[:i - 1] + (e - 1,) + nu[i:]
                out[A.index[nu2]] = x * e
        return A.from_sparse(out)

    def parts(self):
        """(a, b) plain components for dual/product elements."""
        A = self.parent
        P = A.plain()
        n = A.base_dim
        return AlgebraElement(P, self.coords[:n]), AlgebraElement(P, self.coords[n:])

    def scalar_value(self) -> Optional[RationalFunction]:
        """The c with self = c*1, or None."""
        s = self.parent.scalar(self.coords[0])
        return self.coords[0] if s == self else None

    def __str__(self):
        terms = []
        for k, x in self.sparse().items():
            lab = self.parent.parse_monomial_label(k)
            xs = str(x)
            if "+" in xs or "-" in xs[1:] or "/" in xs:
                xs = f"({xs})"
            terms.append(xs if lab == "1" else (lab if x.is_one() else f"{xs}*{lab}"))
        return " + ".join(terms) or "0"

    __repr__ = __str__


def algebra_mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if a.parent != b.parent:
        raise ParentMismatch("elements of different algebras")
    return a * b


class Subspace:
    """F-subspace of an algebra, stored in reduced echelon form."""

    def __init__(self, parent: TruncatedAlgebra, ech: EchelonBasis):
        self.parent = parent
        self.ech = ech

    @classmethod
    def from_elements(cls, parent, elems):
        e = EchelonBasis(parent.dim)
        for x in elems:
            if x.parent != parent:
                raise ParentMismatch("element outside the ambient algebra")
            e.add(x.sparse())
        return cls(parent, e)

    @property
    def dim(self) -> int:
        return len(self.ech)

    def basis(self) -> List[AlgebraElement]:
        return [self.parent.from_sparse(r) for r in self.ech.sorted_rows()]

    def contains(self, x: AlgebraElement) -> bool:
        if x.parent != self.parent:
            raise ParentMismatch("element outside the ambient algebra")
        return self.ech.contains(x.sparse())

    __contains__ = contains

    def _same(self, other):
        if other.parent != self.parent:
            raise ParentMismatch("subspaces of different algebras")

    def sum(self, other: "Subspace") -> "Subspace":
        self._same(other)
        e = self.ech.copy()
        for r in other.ech.rows.values():
            e.add(r)
        return Subspace(self.parent, e)

    def intersect(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: rows (u|u), (v|0); rows with vanishing left half span U ∩ V
        self._same(other)
        n = self.parent.dim
        e = EchelonBasis(2 * n)
        for r in self.ech.rows.values():
            row = dict(r)
            row.update({k + n: x for k, x in r.items()})
            e.add(row)
        for r in other.ech.rows.values():
            e.add(dict(r))
        out = EchelonBasis(n)
        for piv, row in e.rows.items():
            if piv >= n:
                out.add({k - n: x for k, x in row.items()})
        return Subspace(self.parent, out)

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._same(other)
        return all(other.ech.contains(r) for r in self.ech.rows.values())

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.parent == other.parent and self.dim == other.dim
                and self.is_subspace_of(other))

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim} in {self.parent!r})"

    def module_span(self, gens: Sequence[AlgebraElement]) -> "Subspace":
        """F-span of {l*g : l in self, g in gens}."""
        bs = self.basis()
        return Subspace.from_elements(self.parent, [l * g for l in bs for g in gens])

    def is_stable_under(self, S: "Subspace") -> bool:
        """S * self ⊆ self."""
        return all(self.contains(s * h) for s in S.basis() for h in self.basis())

    def to_json(self):
        return [str(b) for b in self.basis()]


class Subalgebra(Subspace):
    @classmethod
    def from_elements(cls, parent, elems):
        sub = Subspace.from_elements(parent, elems)
        return cls(parent, sub.ech)

    @property
    def unital(self) -> bool:
        return self.contains(self.parent.one())

    def is_closed(self) -> bool:
        bs = self.basis()
        return all(self.contains(a * b) for i, a in enumerate(bs) for b in bs[i:])


def subspace(parent, elems) -> Subspace:
    return Subspace.from_elements(parent, elems)


def span_subalgebra(gens: Sequence[AlgebraElement]) -> Subalgebra:
    gens = list(gens)
    if not gens:
        raise ValueError("span_subalgebra needs at least one generator")
    A = gens[0].parent
    for g in gens:
        if g.parent != A:
            raise ParentMismatch("generators from different algebras")
    e = EchelonBasis(A.dim)
    frontier = []
    for x in [A.one()] + gens:
        if e.add(x.sparse()):
            frontier.append(x)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if e.add(y.sparse()):
                    new.append(y)
        frontier = new
    return Subalgebra(A, e)


def subspace_ops(a: Subspace, b: Subspace | None, task: str, x: AlgebraElement | None = None):
    if task == "intersect":
        return a.intersect(b)
    if task == "sum":
        return a.sum(b)
    if task == "member":
        return a.contains(x)
    if task == "dim":
        return a.dim
    raise ValueError(f"unknown task {task}")


def monomials_in(xs: Sequence[AlgebraElement], p: int):
    A = xs[0].parent
    out = []
    for nu in itertools.product(range(p), repeat=len(xs)):
        m = A.one()
        for x, e in zip(xs, nu):
            if e:
                m = m * x ** e
        out.append(m)
    return out


def is_p_basis(xs: Sequence[AlgebraElement], ambient: Subspace) -> bool:
    xs = list(xs)
    A = ambient.parent
    if any(x.parent != A for x in xs):
        raise ParentMismatch("p-basis candidates outside the ambient algebra")
    if not all(ambient.contains(x) for x in xs):
        return False
    p = A.p
    if any((x ** p).scalar_value() is None for x in xs):
        return False
    if not xs:
        return ambient.dim == 1 and ambient.contains(A.one())
    mons = monomials_in(xs, p)
    span = Subspace.from_elements(A, mons)
    return span.dim == len(mons) == ambient.dim


# explicit constructions

def default_field(p: int, r: int, n: int | None = None) -> RationalFunctionField:
    return RationalFunctionField(p, min(r + 2, 6) if n is None else n)


def nilpotent_ring(p: int, r: int, n: int | None = None, flavor=PLAIN) -> TruncatedAlgebra:
    F = default_field(p, r, n)
    return TruncatedAlgebra(F, [0] * r, flavor)


def build_prop33(p: int, r: int, n: int | None = None, variant: str = "auto"):
    """Two subalgebras of R = F[w]/(w^p) with p-bases of length r-1 meeting in F.

    Lambda_1 = F[w_1..w_{r-1}] and Lambda_2 = F[w_k + w_r h_k]. Modulo w_r^2 an
    element Q(x) of Lambda_2 equals Q(w) + w_r * delta(Q)(w) with
    delta = sum h_k d/dw_k, so Lambda_1 ∩ Lambda_2 = F as soon as ker(delta) = F
    on F[w_1..w_{r-1}]/(w^p).

    variant "euler": h_k = w_k. delta is the Euler derivation; its kernel is F
    only for r = 2 (w_1 w_2 is killed when p = 2, r = 3).
    variant "carry": h_1 = 1, h_k = (w_1...w_{k-1})^(p-1). delta acts as a
    base-p counter on divided-power monomials and has kernel F for all r.
    "auto" picks euler for r = 2 and carry otherwise.
    """
    if r < 2:
        raise BadRank("need r >= 2")
    if variant == "auto":
        variant = "euler" if r == 2 else "carry"
    R = nilpotent_ring(p, r, n)
    ws = [R.w(i) for i in range(1, r + 1)]
    t = ws[-1]
    g1 = ws[:-1]
    if variant == "euler":
        g2 = [w + w * t for w in g1]
    elif variant == "carry":
        g2 = []
        h = R.one()
        for w in g1:
            g2.append(w + t * h)
            h = h * w ** (p - 1)
    else:
        raise ValueError(f"unknown variant {variant}")
    L1, L2 = span_subalgebra(g1), span_subalgebra(g2)
    return L1, L2, g1, g2


@dataclass
class LambdaData:
    """Subring data at a denormalization site.

    kind "dual": L with its p-basis, H*eps, and Lambda = L + H*eps inside R[eps].
    kind "pair": Lambda', Lambda'' inside R with their p-bases.
    """
    kind: str
    ambient: TruncatedAlgebra
    L: Optional[Subalgebra] = None
    L_pbasis: List[AlgebraElement] = field(default_factory=list)
    H_eps: Optional[Subspace] = None
    Lam: Optional[Subalgebra] = None
    L1: Optional[Subalgebra] = None
    L1_pbasis: List[AlgebraElement] = field(default_factory=list)
    L2: Optional[Subalgebra] = None
    L2_pbasis: List[AlgebraElement] = field(default_factory=list)

    def to_json(self):
        if self.kind == "dual":
            return {"kind": "dual", "L_generators": [str(x) for x in self.L_pbasis],
                    "H_eps_basis": self.H_eps.to_json()}
        return {"kind": "pair", "L1_generators": [str(x) for x in self.L1_pbasis],
                "L2_generators": [str(x) for x in self.L2_pbasis]}


def build_prop34(p: int, r: int, s: int, n: int | None = None, variant: str = "auto"):
    """Lambda = L + H eps inside R[eps] with L of p-basis length s.

    L = F[w_k + h_k eps] = {f + delta(f) eps : f in F[w_1..w_s]} for the
    derivation delta = sum h_k d/dw_k. R ∩ Lambda = F needs delta(f) to leave
    F[w_1..w_s] eps only for f in F.
    variant "euler": h_k = w_k, fine for s <= 1 (w_1 w_2 (1 + 2 eps) is in
    R ∩ Lambda when p = 2, s = 2).
    variant "carry": h_1 = 1, h_k = (w_1...w_{k-1})^(p-1).
    "auto" picks euler for s <= 1 and carry otherwise.
    """
    if not 0 <= s <= r:
        raise BadRank("need 0 <= s <= r")
    if variant == "auto":
        variant = "euler" if s <= 1 else "carry"
    if variant not in ("euler", "carry"):
        raise ValueError(f"unknown variant {variant!r}")
    D = nilpotent_ring(p, r, n, DUAL)
    eps = D.eps()
    gens = []
    for k in range(1, s + 1):
        if variant == "euler":
            h = D.w(k)
        else:
            h = D.one()
            for j in range(1, k):
                h = h * D.w(j) ** (p - 1)
        gens.append(D.w(k) + h * eps)
    L = span_subalgebra(gens) if gens else D.scalars()
    hgens = []
    for nu in itertools.product(range(p), repeat=r - s):
        if any(nu):
            hgens.append(D.monomial((0,) * s + nu, 1))
    H = L.module_span(hgens) if hgens else Subspace.from_elements(D, [])
    Lam = Subalgebra(D, L.sum(H).ech)
    return L, H, Lam, gens


def prop34_data(p, r, s, n=None, variant="auto") -> LambdaData:
    L, H, Lam, gens = build_prop34(p, r, s, n, variant)
    return LambdaData("dual", L.parent, L=L, L_pbasis=gens, H_eps=H, Lam=Lam)


def prop33_data(p, r, n=None, variant="auto") -> LambdaData:
    L1, L2, g1, g2 = build_prop33(p, r, n, variant)
    return LambdaData("pair", L1.parent, L1=L1, L1_pbasis=g1, L2=L2, L2_pbasis=g2)


@dataclass
class ValidityReport:
    conditions: Dict[str, bool]
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())

    def to_json(self):
        return {"conditions": dict(self.conditions), "details": dict(self.details), "ok": self.ok}


def free_rank_one_certificate(L: Subspace, H: Subspace, D: TruncatedAlgebra):
    """A generator v of (R eps)/(H eps) as free L-module of rank one, or None."""
    n = D.base_dim
    Reps = Subspace.from_elements(D, [D.monomial(nu, 1) for nu in D.monomials])
    quot_dim = Reps.dim - H.dim
    if quot_dim != L.dim:
        return None
    candidates = [D.eps()] + [D.monomial(nu, 1) for nu in D.monomials[1:]]
    Lb = L.basis()
    for v in candidates:
        span = H.sum(Subspace.from_elements(D, [l * v for l in Lb]))
        if span.dim - H.dim == L.dim:
            return v
    return None


def validate_lambda(p: int, r: int, i, data: LambdaData) -> ValidityReport:
    if i == (1, 1) or i == "11":
        if data.kind != "pair" or data.L1 is None or data.L2 is None:
            raise MalformedData("i=(1,1) needs a pair of subalgebras")
        R = data.ambient
        if R.flavor != PLAIN or R.p != p or R.r != r:
            raise MalformedData("pair data must live in the plain algebra R")
        P = R.product()
        lam = Subalgebra.from_elements(P, [P.from_parts(a, R.zero()) for a in data.L1.basis()]
                                       + [P.from_parts(R.zero(), b) for b in data.L2.basis()])
        diag = Subspace.from_elements(P, [P.embed(x) for x in R.basis()])
        inter = lam.intersect(diag)
        conds = {
            "pbasis_1": len(data.L1_pbasis) == r - 1 and is_p_basis(data.L1_pbasis, data.L1),
            "pbasis_2": len(data.L2_pbasis) == r - 1 and is_p_basis(data.L2_pbasis, data.L2),
            "intersection_is_F": inter.dim == 1 and inter.contains(P.one()),
        }
        return ValidityReport(conds, {"dim_L1": data.L1.dim, "dim_L2": data.L2.dim,
                                      "dim_intersection": inter.dim})
    if data.kind != "dual" or data.L is None or data.H_eps is None:
        raise MalformedData("dual-point data needs L and H*eps")
    D = data.ambient
    if D.flavor != DUAL or D.p != p or D.r != r or not isinstance(i, int) or not 0 <= i <= r:
        raise MalformedData("dual-point data must live in R[eps] with 0 <= i <= r")
    L, H = data.L, data.H_eps
    n = D.base_dim
    if any(k < n for row in H.ech.rows.values() for k in row):
        raise MalformedData("H*eps must lie in R*eps")
    Lam = data.Lam if data.Lam is not None else Subalgebra(D, L.sum(H).ech)
    Reps = Subspace.from_elements(D, [D.monomial(nu, 1) for nu in D.monomials])
    Rsub = Subspace.from_elements(D, [D.monomial(nu, 0) for nu in D.monomials])
    cert = free_rank_one_certificate(L, H, D)
    lr = Lam.intersect(Rsub)
    conds = {
        "pbasis": len(data.L_pbasis) == r - i and is_p_basis(data.L_pbasis, L),
        "H_L_stable": H.is_stable_under(L),
        "free_rank_one": cert is not None,
        "L_meets_Reps_trivially": L.intersect(Reps).dim == 0,
        "Lambda_meets_R_in_F": lr.dim == 1 and lr.contains(D.one()),
    }
    details = {"dim_L": L.dim, "dim_H_eps": H.dim, "dim_Lambda": Lam.dim,
               "dim_Lambda_claimed_alt": p ** (r - i) + p ** i,
               "dim_Lambda_cap_R": lr.dim,
               "free_generator": str(cert) if cert is not None else None}
    return ValidityReport(conds, details)
