"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Values are stored in the power basis 1, z, ..., z^(phi(N)-1) of Q(z), z = exp(2 pi i / N),
i.e. as polynomials reduced modulo the N-th cyclotomic polynomial.  Two values with
the same N are equal iff their coefficient tuples are equal.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

import mpmath
from sympy import cyclotomic_poly, symbols

_x = symbols("x")


@lru_cache(maxsize=None)
def _phi_poly(N: int) -> tuple[int, ...]:
    """Coefficients of Phi_N, lowest degree first (monic)."""
    coeffs = [int(c) for c in cyclotomic_poly(N, _x, polys=True).all_coeffs()]
    return tuple(reversed(coeffs))


def _reduce(vec: list, N: int) -> tuple[Fraction, ...]:
    phi = _phi_poly(N)
    d = len(phi) - 1
    v = list(vec)
    for top in range(len(v) - 1, d - 1, -1):
        c = v[top]
        if c:
            shift = top - d
            for i in range(d):
                if phi[i]:
                    v[shift + i] -= c * phi[i]
            v[top] = 0
    v = v[:d] + [0] * max(0, d - len(v))
    return tuple(Fraction(c) for c in v)


class Cyclo:
    """An element of Q(zeta_N)."""

    __slots__ = ("N", "coeffs", "_canon")

    def __init__(self, N: int, coeffs):
        self.N = N
        self.coeffs = tuple(coeffs)
        self._canon = None

    # constructors
    @classmethod
    def rational(cls, q, N: int = 1) -> "Cyclo":
        d = len(_phi_poly(N)) - 1
        return cls(N, (Fraction(q),) + (Fraction(0),) * (d - 1))

    @classmethod
    def from_exponents(cls, N: int, vec) -> "Cyclo":
        """Sum of vec[k] * zeta_N^k for k in range(len(vec)) (len may exceed N)."""
        full = [Fraction(0)] * N
        for k, c in enumerate(vec):
            if c:
                full[k % N] += Fraction(c)
        return cls(N, _reduce(full, N))

    @classmethod
    def zeta(cls, N: int, k: int = 1) -> "Cyclo":
        vec = [0] * N
        vec[k % N] = 1
        return cls.from_exponents(N, vec)

    @classmethod
    def cos2pi(cls, r) -> "Cyclo":
        """cos(2 pi r) for rational r."""
        r = Fraction(r)
        q = r.denominator
        p = r.numerator % q
        vec = [Fraction(0)] * q
        vec[p] += Fraction(1, 2)
        vec[(-p) % q] += Fraction(1, 2)
        return cls.from_exponents(q, vec)

    # coercion
    def lift(self, M: int) -> "Cyclo":
        if M == self.N:
            return self
        if M % self.N:
            raise ValueError(f"cannot lift Q(zeta_{self.N}) into Q(zeta_{M})")
        s = M // self.N
        vec = [Fraction(0)] * M
        for k, c in enumerate(self.coeffs):
            if c:
                vec[(k * s) % M] += c
        return Cyclo(M, _reduce(vec, M))

    @staticmethod
    def _coerce(x) -> "Cyclo":
        if isinstance(x, Cyclo):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclo.rational(x)
        raise TypeError(f"cannot use {type(x).__name__} in exact cyclotomic arithmetic")

    def _common(self, other):
        other = Cyclo._coerce(other)
        M = math.lcm(self.N, other.N)
        return self.lift(M), other.lift(M), M

    # arithmetic
    def __add__(self, other):
        try:
            a, b, M = self._common(other)
        except TypeError:
            return NotImplemented
        return Cyclo(M, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.N, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        try:
            return self + (-Cyclo._coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Cyclo(self.N, tuple(c * f for c in self.coeffs))
        try:
            a, b, M = self._common(other)
        except TypeError:
            return NotImplemented
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyclo(M, _reduce(prod, M))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Cyclo(self.N, tuple(c / f for c in self.coeffs))
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def inverse(self) -> "Cyclo":
        """1/x as the product of the other Galois conjugates over the (rational) norm."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero in a cyclotomic field")
        if self.is_rational():
            return Cyclo.rational(1 / self.coeffs[0], self.N)
        others = Cyclo.rational(1, self.N)
        for a in range(2, self.N):
            if math.gcd(a, self.N) == 1:
                others = others * self.galois(a)
        norm = (self * others).to_fraction()
        return others / norm

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = Cyclo.rational(1, self.N)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, a: int) -> "Cyclo":
        """Image under zeta -> zeta^a (a coprime to N)."""
        vec = [Fraction(0)] * self.N
        for k, c in enumerate(self.coeffs):
            if c:
                vec[(k * a) % self.N] += c
        return Cyclo(self.N, _reduce(vec, self.N))

    def conjugate(self) -> "Cyclo":
        return self.galois(-1)

    # predicates and conversion
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_real(self) -> bool:
        return (self - self.conjugate()).is_zero()

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def to_int(self) -> int:
        q = self.to_fraction()
        if q.denominator != 1:
            raise ValueError(f"{self} is not an integer")
        return q.numerator

    def __complex__(self):
        return sum(
            (float(c) * complex(math.cos(2 * math.pi * k / self.N), math.sin(2 * math.pi * k / self.N))
             for k, c in enumerate(self.coeffs) if c),
            0j,
        )

    def __float__(self):
        return complex(self).real

    def sign(self) -> int:
        """Exact sign of a real value, decided with interval arithmetic."""
        if self.is_zero():
            return 0
        if self.is_rational():
            q = self.coeffs[0]
            return (q > 0) - (q < 0)
        if not self.is_real():
            raise ValueError("sign of a non-real cyclotomic number")
        iv = mpmath.iv
        saved = iv.prec
        prec = 64
        try:
            while prec <= 1 << 16:
                iv.prec = prec
                total = iv.mpf(0)
                for k, c in enumerate(self.coeffs):
                    if c:
                        total += iv.mpf(c.numerator) / c.denominator * iv.cos(2 * iv.pi * k / self.N)
                if total.a > 0:
                    return 1
                if total.b < 0:
                    return -1
                prec *= 2
        finally:
            iv.prec = saved
        raise ArithmeticError("could not separate a nonzero value from zero")

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        try:
            a, b, _ = self._common(other)
        except TypeError:
            return NotImplemented
        return a.coeffs == b.coeffs

    def canonical(self) -> "Cyclo":
        """Same value written over the smallest N' | N containing it."""
        if self._canon is not None:
            return self._canon
        cur = self
        changed = True
        while changed and cur.N > 1:
            changed = False
            for p in _prime_factors(cur.N):
                M = cur.N // p
                cand = _descend(cur, M)
                if cand is not None:
                    cur = cand
                    changed = True
                    break
        self._canon = cur
        return cur

    def __hash__(self):
        c = self.canonical()
        if c.is_rational():
            return hash(c.coeffs[0])
        return hash((c.N, c.coeffs))

    def __repr__(self):
        return f"Cyclo({self})"

    def __str__(self):
        c = self.canonical()
        if c.is_rational():
            return str(c.coeffs[0])
        terms = []
        for k, q in enumerate(c.coeffs):
            if not q:
                continue
            if k == 0:
                terms.append(str(q))
            else:
                z = f"E({c.N})" if k == 1 else f"E({c.N})^{k}"
                if q == 1:
                    terms.append(z)
                elif q == -1:
                    terms.append(f"-{z}")
                else:
                    terms.append(f"{q}*{z}")
        return " + ".join(terms).replace("+ -", "- ")


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _descend(x: Cyclo, M: int):
    """``x`` rewritten over Q(zeta_M) if it lies there, else None."""
    N = x.N
    d = len(_phi_poly(M)) - 1
    basis = [Cyclo.zeta(M, k).lift(N) for k in range(d)]
    import sympy

    mat = sympy.Matrix([[b.coeffs[i] for b in basis] for i in range(len(x.coeffs))])
    rhs = sympy.Matrix(list(x.coeffs))
    try:
        sol, params = mat.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    if params.shape[0]:
        sol = sol.subs({p: 0 for p in params})
    coeffs = tuple(Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in sol)
    cand = Cyclo(M, coeffs)
    return cand if cand.lift(N) == x else None


# parsing --------------------------------------------------------------------

_TERM = re.compile(
    r"^(?P<coef>[0-9]+(?:/[0-9]+)?)?\s*\*?\s*(?:E\((?P<N>[0-9]+)\)(?:\^(?P<k>-?[0-9]+))?)?$"
)


def parse_cyclo(text) -> Cyclo:
    """Parse ``"c0 + c1*E(N)^k + ..."`` (GAP's E(N) notation) or a plain rational."""
    if isinstance(text, (int, Fraction)):
        return Cyclo.rational(text)
    s = str(text).replace(" ", "")
    if not s:
        raise ValueError("empty cyclotomic expression")
    parts = re.findall(r"[+-]?[^+-]+", s)
    total = Cyclo.rational(0)
    for part in parts:
        sign = -1 if part.startswith("-") else 1
        body = part.lstrip("+-")
        m = _TERM.match(body)
        if not m or (m.group("coef") is None and m.group("N") is None):
            raise ValueError(f"cannot parse cyclotomic term {part!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("N"):
            term = Cyclo.zeta(int(m.group("N")), int(m.group("k") or 1)) * coef
        else:
            term = Cyclo.rational(coef)
        total = total + term * sign
    return total
