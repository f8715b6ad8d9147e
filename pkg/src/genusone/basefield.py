"""Exact arithmetic in F_p and in F = F_p(t1, ..., tn).

Polynomials are sparse dicts from exponent tuples to residues. Rational
functions are kept in lowest terms with a monic denominator (leading term
in graded lex order), so structural equality is field equality.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Tuple

SUPPORTED_PRIMES = (2, 3, 5, 7)
MAX_VARS = 6

Exp = Tuple[int, ...]


class DivisionByZero(ZeroDivisionError):
    pass


class ParseError(ValueError):
    pass


def _check_p(p: int) -> None:
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"unsupported prime {p}; expected one of {SUPPORTED_PRIMES}")


@dataclass(frozen=True)
class PrimeFieldElement:
    value: int
    p: int

    def __post_init__(self):
        _check_p(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def __add__(self, other):
        return PrimeFieldElement(self.value + _fp(other, self.p), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElement(self.value - _fp(other, self.p), self.p)

    def __rsub__(self, other):
        return PrimeFieldElement(_fp(other, self.p) - self.value, self.p)

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def __mul__(self, other):
        return PrimeFieldElement(self.value * _fp(other, self.p), self.p)

    __rmul__ = __mul__

    def inverse(self) -> "PrimeFieldElement":
        if self.value == 0:
            raise DivisionByZero("zero has no inverse in F_p")
        return PrimeFieldElement(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        return self * PrimeFieldElement(_fp(other, self.p), self.p).inverse()

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value


def _fp(x, p: int) -> int:
    if isinstance(x, PrimeFieldElement):
        if x.p != p:
            raise ValueError("mixed characteristics")
        return x.value
    return int(x) % p


def _grlex(e: Exp):
    return (sum(e), e)


class Polynomial:
    """Sparse polynomial over F_p in n variables."""

    __slots__ = ("p", "n", "terms", "_hash")

    def __init__(self, p: int, n: int, terms: Dict[Exp, int] | None = None, _clean: bool = False):
        self.p = p
        self.n = n
        if terms is None:
            terms = {}
        elif not _clean:
            terms = {e: c % p for e, c in terms.items() if c % p}
            for e in terms:
                if len(e) != n or min(e, default=0) < 0:
                    raise ValueError(f"bad exponent vector {e}")
        self.terms = terms
        self._hash = None

    @classmethod
    def const(cls, p, n, c=1):
        c %= p
        return cls(p, n, {(0,) * n: c} if c else {}, _clean=True)

    @classmethod
    def var(cls, p, n, j):
        e = [0] * n
        e[j] = 1
        return cls(p, n, {tuple(e): 1}, _clean=True)

    def _new(self, terms):
        return Polynomial(self.p, self.n, terms, _clean=True)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self):
        return len(self.terms) == 1

    def constant_value(self) -> int:
        return self.terms.get((0,) * self.n, 0)

    def leading(self):
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, v):
        return max((e[v] for e in self.terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == Polynomial.const(self.p, self.n, other)
        return isinstance(other, Polynomial) and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        t = dict(self.terms)
        p = self.p
        for e, c in other.terms.items():
            v = (t.get(e, 0) + c) % p
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return self._new(t)

    def __neg__(self):
        p = self.p
        return self._new({e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int):
        c %= self.p
        if not c:
            return self._new({})
        if c == 1:
            return self
        p = self.p
        return self._new({e: (v * c) % p for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        p = self.p
        out: Dict[Exp, int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return self._new({e: c for e, c in out.items() if c})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.const(self.p, self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, m: Exp, c: int = 1):
        p = self.p
        return self._new({tuple(x + y for x, y in zip(e, m)): (v * c) % p
                          for e, v in self.terms.items() if (v * c) % p})

    def diff(self, j: int):
        p = self.p
        out = {}
        for e, c in self.terms.items():
            k = e[j]
            v = (k * c) % p
            if v:
                e2 = list(e)
                e2[j] = k - 1
                out[tuple(e2)] = v
        return self._new(out)

    def monic(self):
        if not self.terms:
            return self
        _, c = self.leading()
        return self.scale(pow(c, self.p - 2, self.p))

    def divexact(self, g: "Polynomial") -> "Polynomial":
        if g.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if g.is_constant():
            return self.scale(pow(g.constant_value(), self.p - 2, self.p))
        p = self.p
        ge, gc = g.leading()
        ginv = pow(gc, p - 2, p)
        rem = dict(self.terms)
        q: Dict[Exp, int] = {}
        while rem:
            e = max(rem, key=_grlex)
            m = tuple(x - y for x, y in zip(e, ge))
            if min(m) < 0:
                raise ValueError("inexact polynomial division")
            c = (rem[e] * ginv) % p
            q[m] = c
            for e2, c2 in g.terms.items():
                k = tuple(x + y for x, y in zip(e2, m))
                v = (rem.get(k, 0) - c * c2) % p
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return self._new(q)

    def __repr__(self):
        return f"Polynomial({format_poly(self)})"


def format_poly(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for e in sorted(f.terms, key=_grlex, reverse=True):
        c = f.terms[e]
        mono = "*".join(f"t{j + 1}" + (f"^{k}" if k > 1 else "") for j, k in enumerate(e) if k)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return "+".join(parts)


# gcd: monomial shortcut, then recursive primitive PRS on the largest variable

def _monomial_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    # a is a monomial; gcd is the monomial of minimal exponents over b's support
    (ea,) = a.terms
    m = list(ea)
    for e in b.terms:
        m = [min(x, y) for x, y in zip(m, e)]
    return Polynomial(a.p, a.n, {tuple(m): 1}, _clean=True)


def _coeffs_in(f: Polynomial, v: int) -> Dict[int, Polynomial]:
    out: Dict[int, Dict[Exp, int]] = {}
    for e, c in f.terms.items():
        e2 = e[:v] + (0,) + e[v + 1:]
        out.setdefault(e[v], {})[e2] = c
    return {k: Polynomial(f.p, f.n, t, _clean=True) for k, t in out.items()}


def _content_in(f: Polynomial, v: int) -> Polynomial:
    g = None
    for c in sorted(_coeffs_in(f, v).values(), key=lambda q: len(q.terms)):
        g = c.monic() if g is None else poly_gcd(g, c)
        if g.is_constant():
            break
    return g


def _lead_in(f: Polynomial, v: int) -> Tuple[int, Polynomial]:
    cs = _coeffs_in(f, v)
    d = max(cs)
    return d, cs[d]


def _prem(a: Polynomial, b: Polynomial, v: int) -> Polynomial:
    db, lb = _lead_in(b, v)
    r = a
    while not r.is_zero():
        dr, lr = _lead_in(r, v)
        if dr < db:
            break
        shift = [0] * a.n
        shift[v] = dr - db
        r = r * lb - (b * lr).mul_monomial(tuple(shift))
    return r


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (leading grlex coefficient 1)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    one = Polynomial.const(a.p, a.n, 1)
    if a.is_constant() or b.is_constant():
        return one
    if a.is_monomial():
        return _monomial_gcd(a, b)
    if b.is_monomial():
        return _monomial_gcd(b, a)
    if a == b:
        return a.monic()
    da = [a.degree_in(j) for j in range(a.n)]
    db = [b.degree_in(j) for j in range(b.n)]
    v = max(j for j in range(a.n) if da[j] > 0 or db[j] > 0)
    if db[v] <= 0:
        return poly_gcd(_content_in(a, v), b)
    if da[v] <= 0:
        return poly_gcd(a, _content_in(b, v))
    ca, cb = _content_in(a, v), _content_in(b, v)
    c = poly_gcd(ca, cb)
    A, B = a.divexact(ca), b.divexact(cb)
    if A.degree_in(v) < B.degree_in(v):
        A, B = B, A
    while True:
        R = _prem(A, B, v)
        if R.is_zero():
            G = B
            break
        if R.degree_in(v) <= 0:
            G = one
            break
        A, B = B, R.divexact(_content_in(R, v))
    if not G.is_constant():
        G = G.divexact(_content_in(G, v))
    return (c * G).monic()


class RationalFunction:
    """Element of F_p(t1..tn) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, _canonical: bool = False):
        if den is None:
            den = Polynomial.const(num.p, num.n, 1)
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def p(self):
        return self.num.p

    @property
    def n(self):
        return self.num.n

    def _coerce(self, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            if x.p != self.p or x.n != self.n:
                raise ValueError("rational functions from different fields")
            return x
        if isinstance(x, PrimeFieldElement):
            x = x.value
        if isinstance(x, int):
            return _const(self.p, self.n, x)
        if isinstance(x, Polynomial):
            return RationalFunction(x, None, _canonical=True)
        return NotImplemented

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.den.is_constant() and self.num.is_constant() and self.num.constant_value() == 1

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RationalFunction) else other
        if o is NotImplemented:
            return False
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.den.is_constant() and o.den.is_constant():
            return RationalFunction(self.num + o.num, self.den, _canonical=True)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return _const(self.p, self.n, 0)
        if o.is_constant():
            return RationalFunction(self.num.scale(o.num.constant_value()), self.den, _canonical=True)
        if self.is_constant():
            return RationalFunction(o.num.scale(self.num.constant_value()), o.den, _canonical=True)
        if self.den.is_constant() and o.den.is_constant():
            return RationalFunction(self.num * o.num, self.den, _canonical=True)
        # cross-cancel so the product stays reduced
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        num = self.num.divexact(g1) * o.num.divexact(g2)
        den = self.den.divexact(g2) * o.den.divexact(g1)
        _, lc = den.leading()
        inv = pow(lc, self.p - 2, self.p)
        return RationalFunction(num.scale(inv), den.scale(inv), _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise DivisionByZero("division by zero in F")
        num, den = self.den, self.num
        _, lc = den.leading()
        inv = pow(lc, self.p - 2, self.p)
        return RationalFunction(num.scale(inv), den.scale(inv), _canonical=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, _canonical=True)

    def diff(self, j: int) -> "RationalFunction":
        if self.den.is_constant():
            return RationalFunction(self.num.diff(j), self.den, _canonical=True)
        return RationalFunction(self.num.diff(j) * self.den - self.num * self.den.diff(j), self.den * self.den)

    def __str__(self):
        return format_rf(self)

    def __repr__(self):
        return f"RationalFunction({format_rf(self)})"


def _canonicalize(num: Polynomial, den: Polynomial):
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return num, Polynomial.const(num.p, num.n, 1)
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num, den = num.divexact(g), den.divexact(g)
    _, lc = den.leading()
    inv = pow(lc, num.p - 2, num.p)
    return num.scale(inv), den.scale(inv)


def _const(p, n, c) -> RationalFunction:
    return RationalFunction(Polynomial.const(p, n, c), Polynomial.const(p, n, 1), _canonical=True)


def format_rf(f: RationalFunction) -> str:
    ns = format_poly(f.num)
    if f.den.is_constant():
        return ns
    ds = format_poly(f.den)
    if len(f.num.terms) > 1:
        ns = f"({ns})"
    if "*" in ds or "+" in ds:
        ds = f"({ds})"
    return f"{ns}/{ds}"


_TOKEN = re.compile(r"\s*(?:(\d+)|t(\d+)|(.))")


class RationalFunctionField:
    """F = F_p(t1..tn) as a factory for its elements."""

    def __init__(self, p: int, n: int):
        _check_p(p)
        if not 0 <= n <= MAX_VARS:
            raise ValueError(f"n must be in 0..{MAX_VARS}")
        self.p = p
        self.n = n

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self):
        return hash((self.p, self.n))

    def __repr__(self):
        return f"F_{self.p}(t1..t{self.n})"

    def __call__(self, x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, str):
            return self.parse(x)
        return _const(self.p, self.n, int(x))

    def zero(self):
        return _const(self.p, self.n, 0)

    def one(self):
        return _const(self.p, self.n, 1)

    def t(self, j: int) -> RationalFunction:
        """The transcendental t_j, 1-based."""
        if not 1 <= j <= self.n:
            raise IndexError(f"t{j} not in F_{self.p}(t1..t{self.n})")
        return RationalFunction(Polynomial.var(self.p, self.n, j - 1), None, _canonical=True)

    def gens(self):
        return [self.t(j) for j in range(1, self.n + 1)]

    def parse(self, s: str) -> RationalFunction:
        toks = []
        pos = 0
        s = s.strip()
        while pos < len(s):
            m = _TOKEN.match(s, pos)
            if not m or m.end() == pos:
                raise ParseError(f"cannot tokenize {s!r} at {pos}")
            pos = m.end()
            if m.group(1) is not None:
                toks.append(("int", int(m.group(1))))
            elif m.group(2) is not None:
                toks.append(("var", int(m.group(2))))
            elif m.group(3).strip():
                toks.append(("op", m.group(3)))
        return _Parser(self, toks).run()


class _Parser:
    def __init__(self, field, toks):
        self.f = field
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if tok[0] is None or (op is not None and tok != ("op", op)):
            raise ParseError(f"expected {op or 'token'} at position {self.i}")
        self.i += 1
        return tok

    def run(self):
        if not self.toks:
            raise ParseError("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at token {self.i}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.unary()
            v = v * w if op == "*" else v / w
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, k = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer")
            return base ** (sign * k)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return self.f(val)
        if kind == "var":
            if not 1 <= val <= self.f.n:
                raise ParseError(f"t{val} is not a variable of {self.f!r}")
            return self.f.t(val)
        if val == "(":
            v = self.expr()
            self.take(")")
            return v
        raise ParseError(f"unexpected {val!r}")


def rf_arithmetic(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op}")


def partial_derivative(f: RationalFunction, j: int) -> RationalFunction:
    """d f / d t_j, 1-based j."""
    if not 1 <= j <= f.n:
        raise IndexError(j)
    return f.diff(j - 1)


def jacobian(c: Iterable[RationalFunction]):
    from .linalg import Matrix
    c = list(c)
    return Matrix([[partial_derivative(x, j) for j in range(1, x.n + 1)] for x in c])


def p_independent(c: Iterable[RationalFunction]) -> bool:
    """dc_1 ^ ... ^ dc_m != 0, i.e. the Jacobian has full row rank."""
    c = list(c)
    if not c:
        raise ValueError("p_independent needs a non-empty list")
    if len(c) > c[0].n:
        return False
    return jacobian(c).rank() == len(c)
