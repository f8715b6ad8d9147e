"""Registry of named verification checks and the sweep driver used by the CLI."""
from __future__ import annotations

import itertools
import random
import time
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import conductor as cd
from . import kaehler as kf
from . import laurent as lr
from . import truncated as tr
from . import weyl as wy
from .basefield import RationalFunctionField

PRIMES = (2, 3, 5, 7)
MAX_R = 3
MAX_N = 6
MAX_TRUNC = 10


class UnknownCheck(KeyError):
    pass


class InvalidParams(ValueError):
    pass


class NotApplicable(InvalidParams):
    """Parameters outside a check's domain; sweeps record these as skipped."""


@dataclass(frozen=True)
class CheckDescriptor:
    name: str
    p: Optional[int] = None
    r: Optional[int] = None
    s: Optional[int] = None
    i: object = None
    n: Optional[int] = None
    N: int = kf.DEFAULT_TRUNC
    seed: int = 0

    def params(self) -> Dict[str, object]:
        out = {"p": self.p, "r": self.r}
        if self.s is not None:
            out["s"] = self.s
        if self.i is not None:
            out["i"] = cd._i_label(self.i)
        if self.n is not None:
            out["n"] = self.n
        out["N"] = self.N
        out["seed"] = self.seed
        return out

    def rng(self) -> random.Random:
        key = f"{self.seed}:{self.name}:{self.p}:{self.r}:{self.s}:{cd._i_label(self.i)}:{self.n}:{self.N}"
        return random.Random(key)


@dataclass
class Report:
    check: str
    params: Dict[str, object]
    status: str  # passed / failed / skipped
    details: Dict[str, object] = field(default_factory=dict)
    elapsed_ms: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.status != "failed"

    def to_json(self, timing: bool = False):
        out = {"check": self.check, "params": self.params, "status": self.status,
               "passed": self.passed, "details": self.details}
        if timing and self.elapsed_ms is not None:
            out["elapsed_ms"] = self.elapsed_ms
        return out


@dataclass
class CheckSpec:
    name: str
    fn: Callable[[CheckDescriptor], Tuple[bool, Dict[str, object]]]
    primes: Tuple[int, ...]
    ranks: Tuple[int, ...]
    default_primes: Tuple[int, ...]
    default_ranks: Tuple[int, ...]
    # "i" (dual index or 1,1), "s" (p-basis length of L) or None
    index: Optional[str] = None
    doc: str = ""


REGISTRY: Dict[str, CheckSpec] = {}


def register(name, primes, ranks, default_primes=None, default_ranks=None, index=None):
    def deco(fn):
        REGISTRY[name] = CheckSpec(name, fn, tuple(primes), tuple(ranks),
                                   tuple(default_primes or primes), tuple(default_ranks or ranks),
                                   index, (fn.__doc__ or "").strip())
        return fn
    return deco


def _fail(msg):
    raise NotApplicable(msg)


def _need(cond, msg):
    if not cond:
        _fail(msg)


def _dual_index(d: CheckDescriptor) -> int:
    if d.i is not None and d.s is not None:
        raise InvalidParams("give either s or i, not both")
    if d.s is not None:
        return d.r - d.s
    return d.i


# conductor square


@lru_cache(maxsize=None)
def _report(p, r, i):
    return cd.standard_model_report(p, r, i)


def _model(d: CheckDescriptor):
    i = d.i
    if cd.is_pair_index(i):
        _need(d.r >= 2, "the pair construction needs r >= 2")
        i = (1, 1)
    else:
        i = _dual_index(d)
        _need(i is not None and 0 <= i <= d.r, "need 0 <= i <= r")
    return _report(d.p, d.r, i)


def _model_indices(d: CheckDescriptor):
    if d.i is not None or d.s is not None:
        return [d]
    out = []
    for i in cd.admissible_indices(d.p, d.r):
        out.append(CheckDescriptor(d.name, d.p, d.r, None, i, d.n, d.N, d.seed))
    return out


@register("prop1_1", (2, 3), (1, 2, 3), index="i")
def check_fundamental_facts(d):
    """Euler characteristic of the conductor square, h0 = 1, numeric Gorenstein criterion."""
    rows = []
    ok = True
    for dd in _model_indices(d):
        m = _model(dd)
        expect_gor = not (cd.is_pair_index(m.i) and d.p != 2)
        row = {"i": cd._i_label(m.i), "euler_sum": m.euler_audit(), "h0Y": m.h0Y, "h1Y": m.h1Y,
               "gorenstein": m.gorenstein, "expected_gorenstein": expect_gor}
        ok &= m.euler_audit() == 0 and m.h0Y == 1 and m.gorenstein == expect_gor
        rows.append(row)
    return ok, {"models": rows}


@register("lemma1_2", (2, 3), (1, 2, 3), index="i")
def check_pinching(d):
    """f_*O_A / O_B is supported at every point of B."""
    rows = []
    ok = True
    for dd in _model_indices(d):
        m = _model(dd)
        rows.append({"i": cd._i_label(m.i), "conductor_support": m.conductor_support,
                     "points": [list(x) for x in m.conductor.points],
                     "annihilator_dims": m.details["annihilator_dims"]})
        ok &= m.conductor_support
    return ok, {"models": rows}


@register("prop2_1", (2, 3), (1, 2, 3), index="i")
def check_standard_models(d):
    """Pinching along Lambda = L + H eps gives h0 = h1 = 1."""
    idx = [dd for dd in _model_indices(d) if not cd.is_pair_index(dd.i)]
    _need(idx, "prop2_1 concerns the dual-number index i in 0..r")
    rows = []
    ok = True
    for dd in idx:
        m = _model(dd)
        good = m.genus_one and all(m.valid.values()) and m.conductor_support and m.gorenstein
        ok &= good
        rows.append({"i": m.i, "h0Y": m.h0Y, "h1Y": m.h1Y, "validity": m.valid,
                     "gorenstein": m.gorenstein, "dim_Lambda": m.details.get("dim_Lambda")})
    out = {"models": rows}
    if len(rows) == 1:
        out.update({"h0Y": rows[0]["h0Y"], "h1Y": rows[0]["h1Y"]})
    return ok, out


@register("prop2_2", (2, 3), (2, 3))
def check_standard_model_11(d):
    """Pinching along Lambda' x Lambda'': genus one for p = 2, not Gorenstein for p = 3."""
    _need(d.r >= 2, "the pair construction needs r >= 2")
    m = _report(d.p, d.r, (1, 1))
    expected_h1 = 1 + d.p ** (d.r - 1) * (d.p - 2)
    ok = all(m.valid.values()) and m.h0Y == 1 and m.h1Y == expected_h1 and m.conductor_support
    ok &= m.gorenstein == (d.p == 2)
    return ok, {"h0Y": m.h0Y, "h1Y": m.h1Y, "expected_h1Y": expected_h1, "gorenstein": m.gorenstein,
                "genus_one": m.genus_one, "validity": m.valid}


# intersection algebras


@register("prop3_3", (2, 3, 5), (2, 3), default_primes=(2, 3))
def check_existence_subrings(d):
    """Two subalgebras with p-bases of length r-1 meeting in F."""
    _need(d.r >= 2, "r >= 2 required")
    data = tr.prop33_data(d.p, d.r, d.n)
    rep = tr.validate_lambda(d.p, d.r, (1, 1), data)
    L1, L2 = data.L1, data.L2
    inter = L1.intersect(L2).dim
    euler = tr.build_prop33(d.p, d.r, d.n, "euler")
    euler_inter = euler[0].intersect(euler[1]).dim
    return rep.ok and inter == 1, {"dim_intersection": inter, "conditions": rep.conditions,
                                   "dims": [L1.dim, L2.dim], "euler_variant_dim_intersection": euler_inter}


@register("prop3_4", (2, 3, 5), (1, 2, 3), default_primes=(2, 3), index="s")
def check_existence_dual_subrings(d):
    """Lambda = L + H eps with all four conditions, for each p-basis length s."""
    if d.s is not None or d.i is not None:
        i = _dual_index(d)
        _need(0 <= i <= d.r, "need 0 <= s <= r")
        svals = [d.r - i]
    else:
        svals = list(range(d.r + 1))
    rows = []
    ok = True
    for s in svals:
        data = tr.prop34_data(d.p, d.r, s, d.n)
        rep = tr.validate_lambda(d.p, d.r, d.r - s, data)
        ok &= rep.ok
        rows.append({"s": s, "conditions": rep.conditions, "dim_Lambda": rep.details.get("dim_Lambda")})
    return ok, {"cases": rows}


# vector fields


def _entry_verdict(entry: lr.CatalogEntry) -> Tuple[bool, Dict[str, object]]:
    ids = lr.check_identities(entry)
    it = lr.p_iterate_check(entry.D, entry.mode)
    bounds = lr.degree_bounds(entry.D, entry.site)
    stab = lr.stabilizes(entry.D, entry.site, check_bounds=False)
    ok = all(ids.values()) and it and bounds and stab
    return ok, {"identities": ids, "p_iterate": it, "mode": entry.mode, "degree_bounds": bounds,
                "stabilizes": stab}


def _catalog_check(names, d):
    out = {}
    ok = True
    for name in names:
        entry = lr.catalog_entry(name, d.r, d.n)
        good, det = _entry_verdict(entry)
        ok &= good
        out[name] = det
    return ok, out


@register("sec4_fields", (2,), (1, 2))
def check_sec4(d):
    """The alpha_p fields D and D~ on the two-point model, and the local presentation at b."""
    ok, out = _catalog_check(("sec4_D", "sec4_Dtilde"), d)
    D = lr.catalog("sec4_D", d.r, d.n)
    Dt = lr.catalog("sec4_Dtilde", d.r, d.n)
    comm = lr.bracket(D, Dt).is_zero()
    site = lr.catalog_entry("sec4_D", d.r, d.n).site
    inter = site.L1.intersect(site.L2).dim
    row = kf.presentation_rows(d.r, d.n)[0]
    ok &= comm and inter == 1 and row.holds() and row.scalars_in_F()
    out.update({"bracket_zero": comm, "dim_L1_cap_L2": inter, "local_ring_relation": row.holds()})
    return ok, out


def _random_element(E, rng, density=0.5):
    F = E.F
    coords = []
    for _ in range(E.dim):
        if rng.random() < density:
            c = F(rng.randrange(E.p))
            if rng.random() < 0.3:
                c = c * F.t(rng.randrange(1, F.n + 1))
            coords.append(c)
        else:
            coords.append(F.zero())
    return E.element(coords)


def _pde_equivalence(d, count=20):
    p, r = d.p, d.r
    E = lr.height_one_field(p, r, d.n)
    alpha = [E.w(k) for k in range(1, r + 1)]
    site = lr.representative_site(E, alpha)
    rng = d.rng()
    basis = wy.pde_solve(alpha, p)
    name = "cor_p2" if p == 2 else "cor_p3"
    samples = [("catalog", wy.DerivationCoefficients.from_derivation(lr.catalog(name, r, d.n), alpha))]
    nl, _, nm, _ = wy.SHAPES[p]
    for k in range(count):
        kind = ("solution", "perturbed", "random")[k % 3]
        if kind == "random":
            c = wy.DerivationCoefficients(p, alpha, [_random_element(E, rng) for _ in range(nl)],
                                          [[_random_element(E, rng) for _ in range(nm)] for _ in range(r)])
        else:
            c = wy.DerivationCoefficients(p, alpha, [E.zero()] * nl, [[E.zero()] * nm for _ in range(r)])
            for b in basis:
                x = rng.randrange(p)
                if x:
                    c = c + b.scale(E.scalar(x))
            if kind == "perturbed":
                j = rng.randrange(nl + r * nm)
                bump = _random_element(E, rng, 1.0)
                if bump.is_zero():
                    bump = E.one()
                if j < nl:
                    c.lam[j] = c.lam[j] + bump
                else:
                    q, m = divmod(j - nl, nm)
                    c.mu[q][m] = c.mu[q][m] + bump
        samples.append((kind, c))
    agree = 0
    accepted = rejected = 0
    mismatches = []
    for kind, c in samples:
        a = wy.pde_check(c)
        b = lr.stabilizes(c.to_derivation(), site)
        if a == b:
            agree += 1
        else:
            mismatches.append({"kind": kind, "coefficients": c.to_json()})
        accepted += a and b
        rejected += (not a) and (not b)
    ok = agree == len(samples) and rejected > 0 and accepted > 0
    det = {"samples": len(samples), "agree": agree, "both_accept": accepted, "both_reject": rejected,
           "solution_dim": len(basis)}
    if mismatches:
        det["counterexamples"] = mismatches[:3]
    return ok, det


@register("cor6_2_equiv", (2,), (1, 2))
def check_pde_p2(d):
    """The linear PDE system agrees with stabilization (p = 2)."""
    return _pde_equivalence(d)


@register("cor6_3", (2,), (1, 2, 3), default_ranks=(1, 2))
def check_field_p2(d):
    """D^[2] = 0, D(u^3) = 1 + u^2 and D kills the representatives."""
    ok, out = _catalog_check(("cor_p2",), d)
    c = wy.DerivationCoefficients.from_derivation(lr.catalog("cor_p2", d.r, d.n),
                                                  [lr.height_one_field(2, d.r, d.n).w(k) for k in range(1, d.r + 1)])
    pde = wy.pde_check(c)
    return ok and pde, dict(out, pde_check=pde)


@register("cor6_4_equiv", (3,), (1, 2))
def check_pde_p3(d):
    """The linear PDE system agrees with stabilization (p = 3); the lambda_0 variant does not."""
    ok, det = _pde_equivalence(d)
    E = lr.height_one_field(3, d.r, d.n)
    alpha = [E.w(k) for k in range(1, d.r + 1)]
    c = wy.DerivationCoefficients.from_derivation(lr.catalog("cor_p3", d.r, d.n), alpha)
    det["lambda0_variant_accepts_catalog"] = wy.pde_check(c, literal=True)
    return ok and not det["lambda0_variant_accepts_catalog"], det


@register("cor6_5", (3,), (1, 2, 3), default_ranks=(1, 2))
def check_field_p3(d):
    """D^[3] = D, D(u^2) = 1 - u^2 and D kills the representatives."""
    ok, out = _catalog_check(("cor_p3",), d)
    E = lr.height_one_field(3, d.r, d.n)
    c = wy.DerivationCoefficients.from_derivation(lr.catalog("cor_p3", d.r, d.n),
                                                  [E.w(k) for k in range(1, d.r + 1)])
    pde = wy.pde_check(c)
    return ok and pde, dict(out, pde_check=pde)


@register("prop6_1", (2, 3), (1, 2))
def check_degree_bounds(d):
    """No stabilizing derivation has terms below the degree bounds."""
    E = lr.height_one_field(d.p, d.r, d.n)
    alpha = [E.w(k) for k in range(1, d.r + 1)]
    _, plo, _, qlo = wy.SHAPES[d.p]
    inside = wy.stabilizer_dimension(alpha, d.p)
    wide = wy.stabilizer_dimension(alpha, d.p, neg_range=12, window=(plo - 4, qlo - 3))
    pde = len(wy.pde_solve(alpha, d.p))
    return inside == wide == pde, {"dim_within_bounds": inside, "dim_widened": wide, "dim_pde": pde,
                                   "P_lowest": plo, "Q_lowest": qlo}


# nilpotent constructions


@register("prop7_1", (2, 3, 5, 7), (1, 2, 3), default_primes=(2, 3), index="s")
def check_not_ci(d):
    """Kernel of Sym^2_L(H eps) -> E and the complete-intersection obstruction."""
    svals = [d.r - _dual_index(d)] if (d.s is not None or d.i is not None) else list(range(d.r))
    rows = []
    ok = True
    for s in svals:
        _need(0 <= s < d.r, "need 0 <= s < r")
        o = kf.ci_obstruction(d.p, d.r, s, d.n)
        n = o["n"]
        good = o["obstruction"] == o["expected_not_ci"]
        if o["surjective"] and n + 1 >= 3:
            good &= o["dim_kernel_over_L"] == kf.expected_kernel_dim(n)
        good &= o["dim_kernel_over_F"] % o["degree_L"] == 0
        ok &= good
        rows.append({k: o[k] for k in ("s", "n", "surjective", "dim_kernel_over_F", "dim_kernel_over_L",
                                       "obstruction", "expected_not_ci")})
        rows[-1]["verdict"] = "not complete intersection" if o["obstruction"] else "no obstruction"
    return ok, {"cases": rows}


@register("prop7_2", (2, 3), (1, 2, 3), default_ranks=(1, 2))
def check_ci_table(d):
    """Local presentations of the complete-intersection cases, with forced scalars."""
    rows = kf.presentation_report(d.r, d.n)
    keep = [x for x in rows if x["row"].endswith(f"p{d.p}") or f"_p{d.p}_" in x["row"]]
    ok = all(x["holds"] and x["scalars_in_F"] and x["targets_in_ring"] for x in keep)
    ok &= all(x["alt_scalar_holds"] in (None, False) for x in keep)
    return ok, {"rows": keep}


@register("prop7_3", (2, 3), (1, 2, 3), default_ranks=(1, 2))
def check_regular_nilpotent(d):
    """The explicit derivations at the nilpotent singularities."""
    if d.p == 3:
        names = ("nilp_p3_s1",)
    else:
        names = ("nilp_p2_s1",) + (("nilp_p2_s2_D", "nilp_p2_s2_Dprime") if d.r >= 2 else ())
    ok, out = _catalog_check(names, d)
    if d.p == 2 and d.r >= 2:
        D = lr.catalog("nilp_p2_s2_D", d.r, d.n)
        D2 = lr.catalog("nilp_p2_s2_Dprime", d.r, d.n)
        comm = lr.bracket(D, D2).is_zero()
        ok &= comm
        out["bracket_zero"] = comm
    return ok, out


# technical lemmas


def _random_hyperplane(E, L, rng):
    """An L-hyperplane of E spanned over L by dim_L(E) - 1 random two-term elements."""
    target = E.dim - L.dim
    mons = E.basis()
    for _ in range(200):
        gens = []
        for _ in range(target // L.dim):
            a, b = rng.sample(range(E.dim), 2)
            gens.append(mons[a] + mons[b].scale(E.F(rng.randrange(E.p))))
        H = L.module_span(gens)
        if H.dim == target:
            return H
    raise RuntimeError("no hyperplane found")


@register("lemma8_2", (2, 3), (1, 2))
def check_field_fact(d):
    """Sym^k_L(H) -> E is onto for [E:L] >= 3 and fails for [E:L] = 2, H = L a."""
    E = lr.height_one_field(d.p, d.r, d.n)
    rng = d.rng()
    cases = []
    for s in range(d.r):
        L = tr.span_subalgebra([E.w(k) for k in range(1, s + 1)]) if s else E.scalars()
        deg = E.dim // L.dim
        for trial in range(3):
            H = _random_hyperplane(E, L, rng)
            for k in (2, 3):
                got = kf.sym_mult_surjective(L, H, k)
                cases.append({"s": s, "E_over_L": deg, "k": k, "trial": trial, "surjective": got,
                              "expected": deg >= 3})
    if d.p == 2:
        s = d.r - 1
        L = tr.span_subalgebra([E.w(k) for k in range(1, s + 1)]) if s else E.scalars()
        H = L.module_span([E.w(d.r)])
        cases.append({"s": s, "E_over_L": 2, "k": 2, "trial": "L*a", "surjective": kf.sym_mult_surjective(L, H, 2),
                      "expected": False})
    ok = all(c["surjective"] == c["expected"] for c in cases)
    return ok, {"cases": cases}


# field of representatives


@register("prop5_relations", (2, 3, 5, 7), (1, 2), default_primes=(2, 3))
def check_relations(d):
    """Obvious relations among u^2, u^3, w_i + alpha_i u, and the Taylor description of R."""
    p, r = d.p, d.r
    E = lr.height_one_field(p, r, d.n)
    rng = d.rng()
    mons = [E.monomial(nu) for nu in E.monomials]
    trials = [[E.w(k) for k in range(1, r + 1)]]
    for _ in range(4):
        trials.append([rng.choice(mons) for _ in range(r)])
    rel = [kf.verify_relations(p, r, a, E=E) for a in trials]
    wrong = [E.w(k) ** p for k in range(1, r + 1)]
    wrong[0] = wrong[0] + E.one()
    bad = kf.verify_relations(p, r, trials[0], lam=wrong, E=E)
    site = lr.representative_site(E, trials[0])
    taylor = []
    for _ in range(3):
        c = _random_element(E, rng, 0.6)
        taylor.append(kf.taylor_membership(site, trials[0], lambda ws, c=c: c))
    ok = all(rel) and not bad and all(taylor)
    return ok, {"relations": rel, "wrong_lambda_accepted": bad, "taylor_membership": taylor}


@register("prop5_4_fitting", (2, 3, 5, 7), (1, 2), index=None)
def check_fitting(d):
    """Fitt_{r+1} is the unit ideal iff p <= 3; the degree jump for p >= 5."""
    _need(4 <= d.N <= MAX_TRUNC, f"N must be in 4..{MAX_TRUNC}")
    p, r = d.p, d.r
    E = lr.height_one_field(p, r, d.n)
    m = kf.build_presentation(p, r, [E.F.t(k) for k in range(1, r + 1)], E)
    minors = kf.minor_identities(m)
    try:
        fa = kf.fitting_analysis(p, r, N=d.N)
    except kf.TruncationTooSmall as e:
        return False, {"error": str(e), "minor_identities": minors}
    ok = minors and fa["unit_ideal"] == (p <= 3)
    expected = {5: (p ** r, 2 * p ** r), 7: (2 * p ** r, 3 * p ** r)}.get(p, (0, 0))
    ok &= (fa["dim_R_quot"], fa["dim_Rprime_quot"]) == expected
    if p >= 5:
        ok &= fa["degree_jump"]
    return ok, {"unit_ideal": fa["unit_ideal"], "dim_R_quot": fa["dim_R_quot"],
                "dim_Rprime_quot": fa["dim_Rprime_quot"], "expected_dims": list(expected),
                "minor_identities": minors, "presentation": m.to_json()}


@register("disjointness", (2, 3, 5, 7), (1, 2, 3), default_primes=(2, 3))
def check_disjointness(d):
    """Linear disjointness of F(t_1..t_r)^(1/p) from a further simple height-one extension."""
    p, r = d.p, d.r
    n = d.n if d.n is not None else min(r + 2, MAX_N)
    _need(n >= r + 1, "need n >= r + 1")
    F = RationalFunctionField(p, n)
    Egens = [F.t(k) for k in range(1, r + 1)]
    fresh = cd.linearly_disjoint([Egens, [F.t(r + 1)]])
    mixed = cd.linearly_disjoint([Egens, [F.t(r + 1) * F.t(1) ** p + F.t(1)]])
    inside = cd.linearly_disjoint([Egens, [F.t(1) * F.t(r) ** (p * 2)]])
    ok = fresh and mixed and not inside
    return ok, {"fresh_generator": fresh, "perturbed_generator": mixed, "generator_in_E": inside}


# driver


def validate(d: CheckDescriptor, spec: CheckSpec):
    if d.p not in PRIMES:
        raise InvalidParams(f"p must be one of {PRIMES}")
    if d.r is None or not 1 <= d.r <= MAX_R:
        raise InvalidParams(f"r must be in 1..{MAX_R}")
    if d.n is not None and not (d.r <= d.n <= MAX_N):
        raise InvalidParams(f"n must be in r..{MAX_N}")
    if not 1 <= d.N <= MAX_TRUNC:
        raise InvalidParams(f"N must be in 1..{MAX_TRUNC}")
    if d.s is not None and d.i is not None:
        raise InvalidParams("give either s or i, not both")
    if d.s is not None and d.s < 0:
        raise InvalidParams("s must be non-negative")
    if d.i is not None and not cd.is_pair_index(d.i) and not (isinstance(d.i, int) and d.i >= 0):
        raise InvalidParams("i must be a non-negative integer or 1,1")
    if d.s is not None and d.s > d.r:
        raise NotApplicable("need s <= r")
    if d.i is not None and not cd.is_pair_index(d.i) and d.i > d.r:
        raise NotApplicable("need i <= r")
    if d.r not in spec.ranks:
        raise NotApplicable(f"{spec.name} is stated for r in {spec.ranks}")
    if d.p not in spec.primes:
        raise NotApplicable(f"{spec.name} is stated for p in {spec.primes}")


def run_check(d: CheckDescriptor) -> Report:
    if d.name not in REGISTRY:
        raise UnknownCheck(d.name)
    spec = REGISTRY[d.name]
    validate(d, spec)
    t = time.perf_counter()
    passed, details = spec.fn(d)
    ms = round((time.perf_counter() - t) * 1000, 1)
    return Report(d.name, d.params(), "passed" if passed else "failed", details, ms)


def grid(spec: CheckSpec, primes: Optional[Sequence[int]], ranks: Optional[Sequence[int]]):
    ps = spec.default_primes if primes is None else primes
    rs = spec.default_ranks if ranks is None else ranks
    return list(itertools.product(ps, rs))


def sweep(names: Iterable[str], primes=None, ranks=None, s=None, i=None, n=None, N=kf.DEFAULT_TRUNC,
          seed=0, strict=False) -> List[Report]:
    """Cross product over the grid. Points outside a check's domain are skipped,
    unless strict is set, in which case they raise InvalidParams."""
    out = []
    for name in names:
        if name not in REGISTRY:
            raise UnknownCheck(name)
        spec = REGISTRY[name]
        for p, r in grid(spec, primes, ranks):
            d = CheckDescriptor(name, p, r, s, i, n, N, seed)
            try:
                out.append(run_check(d))
            except NotApplicable as e:
                if strict:
                    raise
                out.append(Report(name, d.params(), "skipped", {"reason": str(e)}))
    return out


CHECK_NAMES = tuple(REGISTRY)
