"""Exact rationals and cyclotomic numbers.

Rationals are :class:`fractions.Fraction`.  A :class:`CycNumber` is an element
of Q(zeta_n) stored in the power basis 1, zeta_n, ..., zeta_n^(phi(n)-1)
modulo the n-th cyclotomic polynomial, as integer numerators over one common
positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

Rational = Fraction

__all__ = [
    "Rational",
    "CycNumber",
    "NotRational",
    "cyclotomic_poly",
    "euler_phi",
    "zeta",
    "cyc",
]


class NotRational(ValueError):
    """Raised when a cyclotomic number is asked for a rational value it lacks."""


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in _factorize(n):
        result = result // p * (p - 1)
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, dc in enumerate(den):
                num[i + j] -= c * dc
    assert not any(num[: len(den) - 1]), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in _divisors(n)[:-1]:
        num = _poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds the power-basis coordinates of zeta_n^e, 0 <= e < n."""
    phi = euler_phi(n)
    poly = cyclotomic_poly(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce
        top = cur[-1] if phi else 0
        nxt = [0] + cur[:-1]
        if top:
            for i in range(phi):
                nxt[i] -= top * poly[i]
        cur = nxt
    return tuple(rows)


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of x^e for phi <= e <= 2*phi - 2 (product overflow range)."""
    phi = euler_phi(n)
    table = _power_table(n)
    return tuple(table[e % n] for e in range(phi, 2 * phi - 1))


class CycNumber:
    """Element of the cyclotomic field Q(zeta_n), immutable.

    >>> z3 = zeta(3)
    >>> (z3 + z3 * z3).to_rational()
    Fraction(-1, 1)
    """

    __slots__ = ("n", "num", "den", "_hash")

    def __init__(self, n: int, num: Sequence[int], den: int = 1):
        phi = euler_phi(n)
        if len(num) != phi:
            raise ValueError(f"expected {phi} coordinates for conductor {n}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = den
        for c in num:
            if g == 1:
                break
            g = gcd(g, c)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.n = n
        self.num = tuple(num)
        self.den = den
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def from_rational(cls, value: Union[int, Fraction], n: int = 1) -> "CycNumber":
        value = Fraction(value)
        num = [0] * euler_phi(n)
        num[0] = value.numerator
        return cls(n, num, value.denominator)

    @classmethod
    def root_of_unity(cls, n: int, e: int = 1) -> "CycNumber":
        return cls(n, _power_table(n)[e % n], 1)

    @classmethod
    def from_coords(cls, n: int, coords: Iterable[Union[int, Fraction]]) -> "CycNumber":
        fr = [Fraction(c) for c in coords]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        return cls(n, [c.numerator * (den // c.denominator) for c in fr], den)

    # -- views ---------------------------------------------------------
    @property
    def conductor(self) -> int:
        return self.n

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_rational(self) -> Fraction:
        if any(self.num[1:]):
            raise NotRational(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    # -- conductor changes -------------------------------------------
    def embed(self, m: int) -> "CycNumber":
        """Re-express in Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot embed conductor {self.n} into {m}")
        step = m // self.n
        table = _power_table(m)
        out = [0] * euler_phi(m)
        for i, c in enumerate(self.num):
            if c:
                row = table[(i * step) % m]
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return CycNumber(m, out, self.den)

    def _common(self, other: "CycNumber") -> tuple["CycNumber", "CycNumber"]:
        if self.n == other.n:
            return self, other
        if self.n == 1 and self.is_rational():
            return CycNumber.from_rational(self.to_rational(), other.n), other
        if other.n == 1:
            return self, CycNumber.from_rational(other.to_rational(), self.n)
        m = _lcm(self.n, other.n)
        return self.embed(m), other.embed(m)

    def galois(self, a: int) -> "CycNumber":
        """Apply zeta_n -> zeta_n^a (a coprime to n)."""
        if gcd(a, self.n) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        table = _power_table(self.n)
        out = [0] * len(self.num)
        for i, c in enumerate(self.num):
            if c:
                for j, r in enumerate(table[(a * i) % self.n]):
                    if r:
                        out[j] += c * r
        return CycNumber(self.n, out, self.den)

    def conj(self) -> "CycNumber":
        if self.n <= 2 or self.is_rational():
            return self
        return self.galois(self.n - 1)

    def minimize(self) -> "CycNumber":
        """Smallest conductor holding this value (used for display)."""
        if self.is_rational():
            return CycNumber.from_rational(self.to_rational())
        n = self.n
        for m in _divisors(n)[:-1]:
            if m % 4 == 2:
                continue
            # fixed by every automorphism that is trivial on Q(zeta_m)?
            if all(self.galois(a) == self for a in range(1 + m, n, m) if gcd(a, n) == 1):
                return self._restrict(m)
        return self

    def _restrict(self, m: int) -> "CycNumber":
        # solve  sum_i c_i * embed(zeta_m^i) = self  over Q
        phi_m = euler_phi(m)
        basis = [CycNumber.root_of_unity(m, i).embed(self.n).num for i in range(phi_m)]
        rows = [[Fraction(basis[i][j]) for i in range(phi_m)] + [Fraction(self.num[j], self.den)]
                for j in range(len(self.num))]
        sol = _solve(rows, phi_m)
        return CycNumber.from_coords(m, sol)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, CycNumber):
            other = CycNumber.from_rational(other, self.n)
        a, b = self._common(other)
        if a.den == b.den:
            return CycNumber(a.n, [x + y for x, y in zip(a.num, b.num)], a.den)
        d = _lcm(a.den, b.den)
        fa, fb = d // a.den, d // b.den
        return CycNumber(a.n, [x * fa + y * fb for x, y in zip(a.num, b.num)], d)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.n, [-x for x in self.num], self.den)

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycNumber) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycNumber):
            other = Fraction(other)
            return CycNumber(self.n, [x * other.numerator for x in self.num],
                             self.den * other.denominator)
        a, b = self._common(other)
        if a.n == 1 or (a.is_rational() and b.is_rational()):
            x = a.to_rational() * b.to_rational()
            return CycNumber.from_rational(x, a.n)
        if a.is_rational():
            return b * a.to_rational()
        if b.is_rational():
            return a * b.to_rational()
        phi = len(a.num)
        prod = [0] * (2 * phi - 1)
        bnz = [(j, y) for j, y in enumerate(b.num) if y]
        for i, x in enumerate(a.num):
            if x:
                for j, y in bnz:
                    prod[i + j] += x * y
        out = prod[:phi]
        for k, row in enumerate(_reduction_rows(a.n)):
            c = prod[phi + k]
            if c:
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return CycNumber(a.n, out, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, CycNumber):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNumber.from_rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycNumber.from_rational(1 / self.to_rational(), self.n)
        phi = len(self.num)
        # columns: self * zeta^i ; solve M c = e_0
        cols = [(self * CycNumber.root_of_unity(self.n, i)).coords for i in range(phi)]
        rows = [[cols[i][j] for i in range(phi)] + [Fraction(int(j == 0))] for j in range(phi)]
        return CycNumber.from_coords(self.n, _solve(rows, phi))

    # -- comparison ----------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, CycNumber):
            try:
                other = CycNumber.from_rational(other)
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._common(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        if self._hash is None:
            m = self.minimize()
            self._hash = hash((m.n, m.num, m.den))
        return self._hash

    def __complex__(self):
        import cmath

        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(c * z**i for i, c in enumerate(self.num)) / self.den

    def __repr__(self):
        if self.is_rational():
            return f"CycNumber({self.to_rational()})"
        terms = [f"{Fraction(c, self.den)}*z{self.n}^{i}" for i, c in enumerate(self.num) if c]
        return "CycNumber(" + " + ".join(terms) + ")"

    def __str__(self):
        """Compact form such as ``-1/2 + 1/2*z7 - z7^3``, in the smallest field."""
        x = self.minimize()
        if x.is_rational():
            return str(x.to_rational())
        out = ""
        for i, c in enumerate(x.num):
            if not c:
                continue
            coef = Fraction(c, x.den)
            mono = "" if i == 0 else (f"z{x.n}" if i == 1 else f"z{x.n}^{i}")
            mag = abs(coef)
            if not mono:
                body = str(mag)
            else:
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not out:
                out = ("-" if coef < 0 else "") + body
            else:
                out += (" - " if coef < 0 else " + ") + body
        return out


def _solve(rows: list[list[Fraction]], nvars: int) -> list[Fraction]:
    """Gaussian elimination on an augmented (possibly overdetermined) system."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(nvars):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        raise ValueError("inconsistent linear system")
    sol = [Fraction(0)] * nvars
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    return sol


def zeta(n: int, e: int = 1) -> CycNumber:
    """zeta_n ** e."""
    return CycNumber.root_of_unity(n, e)


def cyc(value: Union[int, Fraction, CycNumber], n: int = 1) -> CycNumber:
    if isinstance(value, CycNumber):
        return value.embed(n) if n != value.n else value
    return CycNumber.from_rational(value, n)
