"""Conductor-square bookkeeping for pinched projective lines over truncated rings.

X = P^1 over R = F[w]/(w^p), A the finite subscheme being collapsed, B its image.
Everything reduces to dimensions of subspaces inside Gamma(O_A).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .basefield import RationalFunction, p_independent
from .truncated import (LambdaData, Subalgebra, Subspace, TruncatedAlgebra, ValidityReport,
                        prop33_data, prop34_data, validate_lambda)


class NegativeResult(ValueError):
    pass


class NonInjectiveRestriction(ValueError):
    pass


@dataclass
class ConductorData:
    h0X: int
    h1X: int
    h0A: int
    h0B: int
    X_img: Optional[Subspace] = None
    B_img: Optional[Subspace] = None
    # per point of B: (h0 of the fiber of A, h0 of the local factor of B)
    points: List[Tuple[int, int]] = field(default_factory=list)


def h1_from_formula(d: ConductorData, h0Y: int) -> int:
    """h1(O_Y) from h0(O_Y) + h0(O_A) + h1(O_X) = h0(O_X) + h0(O_B) + h1(O_Y)."""
    if min(d.h0X, d.h1X, d.h0A, d.h0B, h0Y) < 0:
        raise NegativeResult("negative input dimension")
    h1Y = h0Y + d.h0A + d.h1X - d.h0X - d.h0B
    if h1Y < 0:
        raise NegativeResult(f"inconsistent data gives h1 = {h1Y}")
    return h1Y


def intersect_sections(d: ConductorData) -> int:
    """dim Gamma(O_X) ∩ Gamma(O_B) inside Gamma(O_A), which is h0(O_Y)."""
    if d.X_img is None or d.B_img is None:
        raise ValueError("embeddings missing")
    if d.X_img.dim != d.h0X:
        raise NonInjectiveRestriction("restriction Gamma(O_X) -> Gamma(O_A) is not injective")
    return d.X_img.intersect(d.B_img).dim


def gorenstein_numeric(points: Sequence[Tuple[int, int]]) -> bool:
    return all(a == 2 * b for a, b in points)


def conductor_support_check(d: ConductorData) -> bool:
    """Gamma(O_A)-fiber / Gamma(O_B)-factor is nonzero at every point of B."""
    return all(a > b for a, b in d.points)


def annihilator_dim(A_fiber: Subalgebra, B: Subalgebra) -> int:
    """dim_F {b in B : b * A ⊆ B}, the annihilator of the B-module A/B."""
    # solve for coefficient vectors x with (sum x_k b_k) * a_j in B for all j
    from .linalg import Matrix
    Bb = B.basis()
    Ab = A_fiber.basis()
    ann = Matrix([x.coords for x in Bb], ncols=B.parent.dim).kernel_basis()
    if not ann:
        return B.dim
    cols = []
    F = B.parent.F
    for b in Bb:
        col = []
        for a in Ab:
            v = (b * a).coords
            for f in ann:
                s = F.zero()
                for x, y in zip(f, v):
                    if x and y:
                        s = s + x * y
                col.append(s)
        cols.append(col)
    m = Matrix(cols, ncols=len(cols[0])).transpose()
    return B.dim - m.rank()


@dataclass
class ModelReport:
    p: int
    r: int
    i: object
    valid: Dict[str, bool]
    h0Y: int
    h1Y: int
    gorenstein: bool
    conductor_support: bool
    admissible: bool
    conductor: ConductorData
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def genus_one(self) -> bool:
        return self.h0Y == 1 and self.h1Y == 1

    def euler_audit(self) -> int:
        c = self.conductor
        # 0 -> H0(Y) -> H0(X)+H0(B) -> H0(A) -> H1(Y) -> H1(X) -> 0
        return self.h0Y - (c.h0X + c.h0B) + c.h0A - self.h1Y + c.h1X

    def to_json(self):
        return {
            "p": self.p, "r": self.r, "i": _i_label(self.i),
            "validity": dict(self.valid),
            "h0Y": self.h0Y, "h1Y": self.h1Y,
            "prop_fundamental_facts_i": self.euler_audit() == 0,
            "prop_fundamental_facts_ii": self.h0Y == 1,
            "prop_fundamental_facts_iv": self.gorenstein,
            "lemma_pinching_with_conductor": self.conductor_support,
            "genus_one": self.genus_one,
            "admissible": self.admissible,
            "dims": {"h0X": self.conductor.h0X, "h1X": self.conductor.h1X,
                     "h0A": self.conductor.h0A, "h0B": self.conductor.h0B},
            "details": dict(self.details),
        }


def _i_label(i):
    return "1,1" if i in ((1, 1), "11", "1,1") else i


def is_pair_index(i) -> bool:
    return i in ((1, 1), "11", "1,1")


def standard_model_report(p: int, r: int, i, data: LambdaData | None = None) -> ModelReport:
    if is_pair_index(i):
        if data is None:
            data = prop33_data(p, r)
        rep = validate_lambda(p, r, (1, 1), data)
        R = data.ambient
        A = R.product()
        X_img = Subspace.from_elements(A, [A.embed(x) for x in R.basis()])
        B_img = Subalgebra.from_elements(A, [A.from_parts(a, R.zero()) for a in data.L1.basis()]
                                         + [A.from_parts(R.zero(), b) for b in data.L2.basis()])
        h0X, h0A = R.dim, A.dim
        points = [(R.dim, data.L1.dim), (R.dim, data.L2.dim)]
        admissible = p == 2
        fibers = [(Subalgebra.from_elements(R, R.basis()), data.L1),
                  (Subalgebra.from_elements(R, R.basis()), data.L2)]
    else:
        if data is None:
            data = prop34_data(p, r, r - i)
        rep = validate_lambda(p, r, i, data)
        A = data.ambient
        R = A.plain()
        X_img = Subspace.from_elements(A, [A.embed(x) for x in R.basis()])
        B_img = data.Lam
        h0X, h0A = R.dim, A.dim
        points = [(A.dim, B_img.dim)]
        admissible = True
        fibers = [(A.whole(), B_img)]
    d = ConductorData(h0X=h0X, h1X=0, h0A=h0A, h0B=B_img.dim, X_img=X_img, B_img=B_img, points=points)
    h0Y = intersect_sections(d)
    h1Y = h1_from_formula(d, h0Y)
    details = {"annihilator_dims": [annihilator_dim(Af, Bf) for Af, Bf in fibers]}
    details.update({k: v for k, v in rep.details.items()})
    return ModelReport(p, r, i, rep.conditions, h0Y, h1Y, gorenstein_numeric(points),
                       conductor_support_check(d), admissible, d, details)


def admissible_indices(p: int, r: int):
    out = list(range(r + 1))
    if r >= 2:
        out.append((1, 1))
    return out


def linearly_disjoint(ext_gens: Sequence[Sequence[RationalFunction]]) -> bool:
    """Height-one extensions F(c^(1/p)) are linearly disjoint iff all c are jointly p-independent."""
    flat = [c for g in ext_gens for c in g]
    if not flat:
        return True
    return p_independent(flat)
