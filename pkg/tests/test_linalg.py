import random

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.polys.matrices import DomainMatrix

from genusone.basefield import RationalFunctionField
from genusone.linalg import (DimensionMismatch, EchelonBasis, InconsistentSystem, Matrix, identity,
                             linear_algebra, to_sparse)

T1 = sympy.Symbol("t1")


def random_matrix(F, rows, cols, rng, density=0.6):
    t = F.t(1)
    pool = [F(c) for c in range(F.p)] + [t, t + 1, t ** 2, F.one() / (t + 1), t / (t ** 2 + 1)]

    def entry():
        return rng.choice(pool) if rng.random() < density else F.zero()

    return Matrix([[entry() for _ in range(cols)] for _ in range(rows)], ncols=cols, zero=F.zero())


def to_sympy_rank(m: Matrix, p: int) -> int:
    K = sympy.GF(p).frac_field(T1)

    def conv(f):
        num = sum((c * T1 ** e[0] for e, c in f.num.terms.items()), sympy.Integer(0))
        den = sum((c * T1 ** e[0] for e, c in f.den.terms.items()), sympy.Integer(0))
        return K.from_sympy(num / den)

    return DomainMatrix([[conv(x) for x in r] for r in m.rows], m.dims, K).rank()


def permuted(m: Matrix, rng):
    ri = list(range(m.nrows))
    ci = list(range(m.ncols))
    rng.shuffle(ri)
    rng.shuffle(ci)
    return Matrix([[m.rows[i][j] for j in ci] for i in ri], ncols=m.ncols, zero=m.zero)


def test_identity_rank():
    F = RationalFunctionField(3, 1)
    assert identity(F, 3).rank() == 3
    assert linear_algebra(identity(F, 3), "rank") == 3


def test_proportional_columns():
    F = RationalFunctionField(3, 2)
    t1, t2 = F.gens()
    m = Matrix([[t1, t1], [t2, t2]])
    assert m.rank() == 1
    assert m.kernel_basis() == [(-F.one(), F.one())]
    assert m.rref() == Matrix([[F.one(), F.one()], [F.zero(), F.zero()]])


def test_solve_and_inconsistent():
    F = RationalFunctionField(5, 2)
    t1, t2 = F.gens()
    m = Matrix([[t1, F.one()], [F.zero(), t2]])
    x = m.solve([F.one(), t2])
    assert m.apply(x) == (F.one(), t2)
    singular = Matrix([[t1, t1], [t2, t2]])
    with pytest.raises(InconsistentSystem):
        singular.solve([F.one(), F.zero()])


def test_dimension_errors():
    F = RationalFunctionField(2, 1)
    with pytest.raises(DimensionMismatch):
        Matrix([[F.one()], [F.one(), F.zero()]])
    with pytest.raises(DimensionMismatch):
        identity(F, 2).apply([F.one()])
    with pytest.raises(DimensionMismatch):
        identity(F, 2) * identity(F, 3)


def test_unknown_task():
    with pytest.raises(ValueError):
        linear_algebra(identity(RationalFunctionField(2, 1), 2), "det")


@pytest.mark.parametrize("seed", range(6))
def test_rank_against_second_elimination_and_sympy(seed):
    F = RationalFunctionField(3, 1)
    rng = random.Random(seed)
    m = random_matrix(F, 5, 7, rng)
    r = m.rank()
    assert r == permuted(m, rng).rank()
    assert r == m.transpose().rank()
    assert r == to_sympy_rank(m, 3)


@given(st.integers(0, 10 ** 6), st.integers(1, 5), st.integers(1, 5), st.sampled_from([2, 3, 5]))
def test_rank_nullity(seed, rows, cols, p):
    F = RationalFunctionField(p, 1)
    m = random_matrix(F, rows, cols, random.Random(seed))
    ker = m.kernel_basis()
    assert m.rank() + len(ker) == cols
    for v in ker:
        assert all(x.is_zero() for x in m.apply(v))
    assert m.rank() == m.transpose().rank()


@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_rref_idempotent(seed, p):
    F = RationalFunctionField(p, 1)
    m = random_matrix(F, 4, 5, random.Random(seed))
    once = m.rref()
    assert once.rref() == once
    assert once.rank() == m.rank()


@given(st.integers(0, 10 ** 6))
def test_solve_recovers_consistent_rhs(seed):
    F = RationalFunctionField(5, 1)
    rng = random.Random(seed)
    m = random_matrix(F, 4, 4, rng)
    x0 = random_matrix(F, 1, 4, rng).rows[0]
    b = m.apply(x0)
    assert m.apply(m.solve(b)) == b


def test_echelon_contains():
    F = RationalFunctionField(2, 1)
    t = F.t(1)
    e = EchelonBasis(3)
    assert e.add(to_sparse([t, F.one(), F.zero()]))
    assert not e.add(to_sparse([t * t, t, F.zero()]))
    assert e.contains(to_sparse([F.one(), F.one() / t, F.zero()]))
    assert not e.contains(to_sparse([F.zero(), F.zero(), F.one()]))
