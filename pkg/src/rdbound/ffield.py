"""Finite fields F_{p^m} with log/antilog tables.

Elements are encoded as integers sum(c_i * p**i) where c_i are the
coefficients of the residue polynomial in x modulo the field's modulus.
The modulus is the lexicographically least monic irreducible polynomial
(ordered by that same integer encoding of its lower coefficients) and the
generator is the least primitive element, so every run builds identical
fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt
from typing import Iterator, Optional

import numpy as np

__all__ = [
    "FieldError",
    "NotPrime",
    "NotPrimePower",
    "SizeExceeded",
    "ZeroElement",
    "FieldSpec",
    "FieldElement",
    "make_field",
    "prime_power",
    "is_prime",
    "embedding",
    "MAX_FIELD_SIZE",
    "TABLE_LIMIT",
]

MAX_FIELD_SIZE = 1 << 24
TABLE_LIMIT = 1 << 16


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class NotPrimePower(FieldError):
    pass


class SizeExceeded(FieldError):
    pass


class ZeroElement(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, isqrt(n) + 1, 2))


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, f) with q = p**f, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    f, r = 0, q
    while r % p == 0:
        r //= p
        f += 1
    if r != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, f


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p as coefficient lists, lowest degree first -------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, f, p)


def _ppowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    m = len(f) - 1
    if m == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**m, f, p), x, p):
        return False
    for r in _prime_factors(m):
        h = _psub(_ppowmod(x, p ** (m // r), f, p), x, p)
        if len(_pgcd(f, h, p)) > 1:
            return False
    return True


def _int_to_poly(a: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        out.append(a % p)
        a //= p
    return _trim(out)


def _poly_to_int(c: list[int], p: int) -> int:
    v = 0
    for x in reversed(c):
        v = v * p + x
    return v


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The field F_{p^m} with a fixed modulus and primitive generator."""

    p: int
    m: int
    modulus: tuple[int, ...]  # monic, lowest degree first, length m + 1
    generator: int
    exp: Optional[np.ndarray] = field(default=None, repr=False)  # g^e, e < size - 1
    log: Optional[np.ndarray] = field(default=None, repr=False)  # log[0] == -1

    @property
    def size(self) -> int:
        return self.p**self.m

    @property
    def order(self) -> int:
        """Order of the multiplicative group."""
        return self.p**self.m - 1

    @property
    def has_tables(self) -> bool:
        return self.exp is not None

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.m, self.modulus) == (
            other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    # -- scalar arithmetic on encoded ints -----------------------------
    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.m == 1:
            return (a + b) % p
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a:
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.has_tables:
            return int(self.exp[(int(self.log[a]) + int(self.log[b])) % self.order])
        if self.m == 1:
            return a * b % self.p
        f = list(self.modulus)
        return _poly_to_int(
            _pmulmod(_int_to_poly(a, self.p, self.m), _int_to_poly(b, self.p, self.m), f, self.p),
            self.p)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroElement("zero has no inverse")
            return 1 if e == 0 else 0
        if self.has_tables:
            return int(self.exp[(int(self.log[a]) * e) % self.order])
        e %= self.order
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("zero has no inverse")
        return self.pow(a, self.order - 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int, k: int = 1) -> int:
        """a ** (p ** k)."""
        return self.pow(a, self.p**k)

    def gen_power(self, e: int) -> int:
        if self.has_tables:
            return int(self.exp[e % self.order])
        return self.pow(self.generator, e)

    def discrete_log(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("discrete log of zero")
        if self.has_tables:
            return int(self.log[a])
        # baby-step giant-step above the table limit
        n = self.order
        s = isqrt(n) + 1
        baby = {}
        cur = 1
        for j in range(s):
            baby.setdefault(cur, j)
            cur = self.mul(cur, self.generator)
        giant = self.inv(self.pow(self.generator, s))
        cur = a
        for i in range(s + 1):
            if cur in baby:
                return (i * s + baby[cur]) % n
            cur = self.mul(cur, giant)
        raise AssertionError("discrete log not found; generator is not primitive")

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("zero has no multiplicative order")
        n = self.order
        for r in _prime_factors(n):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    def from_int(self, c: int) -> int:
        """Image of the integer c in the prime field."""
        return c % self.p

    def elements(self) -> Iterator["FieldElement"]:
        for a in range(self.size):
            yield FieldElement(self, a)

    def __call__(self, a: int) -> "FieldElement":
        return FieldElement(self, a)

    # -- vectorized arithmetic (requires tables) ----------------------
    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p = self.p
        if self.m == 1:
            return (a + b) % p
        tab = _add_table(self)
        if tab is not None:
            return tab[a, b]
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.m):
            out += ((a // scale % p + b // scale % p) % p) * scale
            scale *= p
        return out

    def vneg(self, a: np.ndarray) -> np.ndarray:
        p = self.p
        if self.m == 1:
            return (-a) % p
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros_like(a)
        scale = 1
        for _ in range(self.m):
            out += ((-(a // scale % p)) % p) * scale
            scale *= p
        return out

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        s = self.log[a] + self.log[b]
        out = self.exp[s % self.order]
        return np.where((a == 0) | (b == 0), 0, out)

    def vpow(self, a: np.ndarray, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e < 0 and np.any(a == 0):
            raise ZeroElement("zero has no inverse")
        out = self.exp[(self.log[a] * e) % self.order]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def vinv(self, a: np.ndarray) -> np.ndarray:
        return self.vpow(a, -1)


@lru_cache(maxsize=64)
def _add_table(F: FieldSpec) -> Optional[np.ndarray]:
    if F.size > 1024:
        return None
    idx = np.arange(F.size, dtype=np.int64)
    a, b = np.meshgrid(idx, idx, indexing="ij")
    out = np.zeros_like(a)
    scale = 1
    for _ in range(F.m):
        out += ((a // scale % F.p + b // scale % F.p) % F.p) * scale
        scale *= F.p
    return out


class FieldElement:
    """Convenience wrapper pairing an encoded element with its field."""

    __slots__ = ("field", "rep")

    def __init__(self, field: FieldSpec, rep: int):
        if not 0 <= rep < field.size:
            raise FieldError(f"{rep} does not encode an element of {field}")
        self.field = field
        self.rep = rep

    @property
    def coeffs(self) -> tuple[int, ...]:
        c = _int_to_poly(self.rep, self.field.p, self.field.m)
        return tuple(c + [0] * (self.field.m - len(c)))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.rep
        return self.field.from_int(int(other))

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.rep, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.rep, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.rep))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.rep))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.rep, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.rep, self._other(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.rep, e))

    def frobenius(self, k: int = 1) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius(self.rep, k))

    def log(self) -> int:
        return self.field.discrete_log(self.rep)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.rep == other.rep
        if isinstance(other, int):
            return self.rep == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.rep))

    def __bool__(self):
        return self.rep != 0

    def __repr__(self):
        return f"{self.field}({self.rep})"


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> FieldSpec:
    """Build F_{p^m} deterministically."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise FieldError("degree must be positive")
    size = p**m
    if size > MAX_FIELD_SIZE:
        raise SizeExceeded(f"{p}^{m} exceeds the supported field size {MAX_FIELD_SIZE}")
    if m == 1:
        modulus = (0, 1)
    else:
        modulus = None
        for low in range(p**m):
            f = _int_to_poly(low, p, m)
            f = f + [0] * (m - len(f)) + [1]
            if f[0] == 0:
                continue
            if _is_irreducible(f, p):
                modulus = tuple(f)
                break
        assert modulus is not None
    order = size - 1
    factors = _prime_factors(order) if order > 1 else []
    f = list(modulus)

    def mul(a: int, b: int) -> int:
        if m == 1:
            return a * b % p
        return _poly_to_int(_pmulmod(_int_to_poly(a, p, m), _int_to_poly(b, p, m), f, p), p)

    def power(a: int, e: int) -> int:
        r, base = 1, a
        while e:
            if e & 1:
                r = mul(r, base)
            base = mul(base, base)
            e >>= 1
        return r

    gen = None
    for cand in range(1, size):
        if all(power(cand, order // r) != 1 for r in factors):
            gen = cand
            break
    assert gen is not None
    exp = log = None
    if size <= TABLE_LIMIT:
        exp = np.empty(order, dtype=np.int64)
        log = np.full(size, -1, dtype=np.int64)
        cur = 1
        for e in range(order):
            exp[e] = cur
            log[cur] = e
            cur = mul(cur, gen)
        assert cur == 1
        exp.setflags(write=False)
        log.setflags(write=False)
    return FieldSpec(p, m, modulus, gen, exp, log)


@lru_cache(maxsize=None)
def embedding(small: FieldSpec, large: FieldSpec) -> np.ndarray:
    """Array mapping encoded elements of ``small`` into ``large``.

    The image of x is a root of the small modulus inside ``large``; the least
    such root (in discrete-log order) is used so the map is reproducible.
    """
    if small.p != large.p or large.m % small.m:
        raise FieldError(f"{small} is not a subfield of {large}")
    if small.m == 1:
        out = np.array([large.from_int(a) for a in range(small.size)], dtype=np.int64)
        out.setflags(write=False)
        return out
    k = large.order // small.order
    f = small.modulus

    def evaluate(r: int) -> int:
        acc = 0
        for c in reversed(f):
            acc = large.add(large.mul(acc, r), large.from_int(c))
        return acc

    root = None
    for j in range(small.order):
        r = large.gen_power(j * k)
        if evaluate(r) == 0:
            root = r
            break
    assert root is not None, "subfield modulus has no root"
    out = np.zeros(small.size, dtype=np.int64)
    powers = [1]
    for _ in range(1, small.m):
        powers.append(large.mul(powers[-1], root))
    for a in range(small.size):
        coeffs = _int_to_poly(a, small.p, small.m)
        acc = 0
        for c, pw in zip(coeffs, powers):
            if c:
                acc = large.add(acc, large.mul(large.from_int(c), pw))
        out[a] = acc
    out.setflags(write=False)
    return out


def unit_circle(F: FieldSpec, q: int) -> np.ndarray:
    """mu_{q+1} inside F_{q^2}, as encoded elements in discrete-log order."""
    if F.size != q * q:
        raise FieldError("unit_circle expects the field of order q^2")
    step = (q * q - 1) // (q + 1)
    return np.array([F.gen_power(step * i) for i in range(q + 1)], dtype=np.int64)
