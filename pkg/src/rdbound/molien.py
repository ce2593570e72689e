"""Dimensions of invariant polynomials via character sums.

For a representation W of a finite group G the number of linearly independent
degree-k invariants of W is

    m_k = sum over classes g of  chi_{Sym^k W*}(g) / |C_G(g)|,

and chi_{Sym^k} is built from chi(g), chi(g^2), ..., chi(g^k) by the Newton
recursion.  Only class data is needed; no matrices are formed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence, Union

from .exact import CycNumber, cyc
from .ffield import prime_power

__all__ = [
    "NonIntegerResult",
    "ClassFunctionInput",
    "MolienPrefix",
    "sym_power_char",
    "sym_power_char_direct",
    "invariant_dimension",
    "molien_prefix",
    "closed_form_m4",
    "psl2_input",
    "psu3_input",
    "psu3_m4_symbolic",
    "dimension_check",
    "DEFAULT_K",
]

Value = Union[int, Fraction, CycNumber]

DEFAULT_K = {"psl2": 8, "psu3": 6}


class NonIntegerResult(ArithmeticError):
    """A character sum that should count invariants is not a non-negative integer."""


@dataclass(frozen=True)
class ClassFunctionInput:
    """Per-class data for the invariant count.

    ``powers[c][i-1]`` is chi(g^i) for the class (or block of classes) c;
    ``multiplicity[c]`` counts how many classes share that row, which lets
    type-aggregated data be summed without expanding it.
    """

    centralizers: tuple[int, ...]
    powers: tuple[tuple[Value, ...], ...]
    multiplicity: tuple[int, ...]
    dual: bool = True

    def __post_init__(self):
        n = len(self.centralizers)
        if len(self.powers) != n or len(self.multiplicity) != n:
            raise ValueError("centralizers, powers and multiplicity must have equal length")
        if any(c <= 0 for c in self.centralizers):
            raise ValueError("centralizer orders must be positive")
        if any(m <= 0 for m in self.multiplicity):
            raise ValueError("multiplicities must be positive")

    @property
    def max_power(self) -> int:
        return min((len(p) for p in self.powers), default=0)

    @property
    def degree(self) -> int:
        """chi(1), read from the first class with centralizer equal to the largest one."""
        i = max(range(len(self.centralizers)), key=lambda c: self.centralizers[c])
        return int(_rational(self.powers[i][0]))


@dataclass(frozen=True)
class MolienPrefix:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0] != 1:
            raise ValueError("m_0 must be 1")
        if any(m < 0 for m in self.coefficients):
            raise ValueError("coefficients must be non-negative")

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k]

    def __len__(self) -> int:
        return len(self.coefficients)

    @property
    def max_degree(self) -> int:
        return len(self.coefficients) - 1

    def as_polynomial(self) -> str:
        terms = []
        for k, m in enumerate(self.coefficients):
            if not m:
                continue
            if k == 0:
                terms.append(str(m))
            else:
                power = "t" if k == 1 else f"t^{k}"
                terms.append(power if m == 1 else f"{m}{power}")
        return " + ".join(terms)


def _rational(x: Value) -> Fraction:
    return x.to_rational() if isinstance(x, CycNumber) else Fraction(x)


def _conj(x: Value) -> Value:
    return x.conj() if isinstance(x, CycNumber) else x


def sym_power_char(values: Sequence[Value], k: int) -> Value:
    """chi_{Sym^k}(g) from values[i-1] = chi(g^i), i = 1..k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if len(values) < k:
        raise ValueError(f"need chi(g^i) for i <= {k}")
    sym: list[Value] = [1]
    for j in range(1, k + 1):
        acc: Value = 0
        for i in range(1, j + 1):
            acc = acc + sym[j - i] * values[i - 1]
        sym.append(acc / j if isinstance(acc, CycNumber) else Fraction(acc, j))
    return sym[k]


def sym_power_char_direct(values: Sequence[Value], k: int) -> Value:
    """Closed cycle-index expansions of Sym^3 and Sym^4."""
    if k == 3:
        a, b, c = values[:3]
        total = a * a * a + 3 * a * b + 2 * c
        return total / 6 if isinstance(total, CycNumber) else Fraction(total, 6)
    if k == 4:
        a, b, c, d = values[:4]
        total = a**4 + 6 * a * a * b + 3 * b * b + 8 * a * c + 6 * d
        return total / 24 if isinstance(total, CycNumber) else Fraction(total, 24)
    raise ValueError("direct formulas exist only for k = 3 and 4")


def _sym_table(values: Sequence[Value], K: int) -> list[Value]:
    sym: list[Value] = [1]
    for j in range(1, K + 1):
        acc: Value = 0
        for i in range(1, j + 1):
            acc = acc + sym[j - i] * values[i - 1]
        sym.append(acc / j if isinstance(acc, CycNumber) else Fraction(acc, j))
    return sym


def _as_count(total: Value, what: str) -> int:
    try:
        r = _rational(total)
    except ValueError as exc:
        raise NonIntegerResult(f"{what} is irrational") from exc
    if r.denominator != 1 or r < 0:
        raise NonIntegerResult(f"{what} = {r} is not a non-negative integer")
    return int(r)


def _sums(data: ClassFunctionInput, K: int) -> list[Value]:
    if K > data.max_power:
        raise ValueError(f"class data only covers powers up to {data.max_power}")
    totals: list[Value] = [0] * (K + 1)
    for cent, row, mult in zip(data.centralizers, data.powers, data.multiplicity):
        vals = [_conj(v) for v in row[:K]] if data.dual else list(row[:K])
        sym = _sym_table(vals, K)
        w = Fraction(mult, cent)
        for k in range(K + 1):
            totals[k] = totals[k] + sym[k] * w
    return totals


def invariant_dimension(data: ClassFunctionInput, k: int) -> int:
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return 1
    return _as_count(_sums(data, k)[k], f"m_{k}")


def molien_prefix(data: ClassFunctionInput, K: int) -> MolienPrefix:
    totals = _sums(data, K)
    return MolienPrefix(tuple(_as_count(t, f"m_{k}") for k, t in enumerate(totals)))


def closed_form_m4(q: int) -> int:
    """m_4 of the degree q^2 - q unipotent character of PSU(3,q)."""
    prime_power(q)
    return {1: (q - 1) // 6, 2: (q + 10) // 6, 3: (q - 3) // 6,
            4: (q + 2) // 6, 5: (q + 7) // 6}[q % 6]


# ------------------------------------------------------------ builders

def psl2_input(q: int, values: Sequence[CycNumber] | None = None, K: int = 8) -> ClassFunctionInput:
    """Class data of SL(2,q) with a character of it (default: the smallest nontrivial one).

    The sum runs over SL(2,q); for a projective representation of PSL(2,q)
    the invariant counts are the same as over its lift.
    """
    from .sl2_chars import sl2_class_data, smallest_projective_character

    if values is None:
        _, values, data = smallest_projective_character(q)
    else:
        data = sl2_class_data(q)
    P = data.power_maps(K)
    rows = tuple(tuple(values[int(P[i, c])] for i in range(1, K + 1)) for c in range(len(data)))
    return ClassFunctionInput(tuple(c.centralizer for c in data.classes), rows,
                              (1,) * len(data))


def psu3_input(q: int, K: int = 6) -> ClassFunctionInput:
    """PSU(3,q) and its degree q^2 - q character, grouped by the type sequence of g, g^2, ..., g^K."""
    from .psu3_data import class_spectrum
    from .psu3_reps import power_type_sequences

    spec = class_spectrum(q)
    blocks = Counter(power_type_sequences(q, K))
    keys = sorted(blocks)
    return ClassFunctionInput(
        tuple(spec[key[0]].centralizer for key in keys),
        tuple(tuple(spec[t].chi for t in key) for key in keys),
        tuple(blocks[key] for key in keys),
    )


def psu3_m4_symbolic(q: int) -> tuple[int, int, int]:
    """(m_2, m_3, m_4) for PSU(3,q) from the per-type power distributions alone.

    Every term of the Sym^k expansion for k <= 4 is chi(g)^a chi(g^i)^b with
    chi(g) and |C(g)| constant on a type, so the marginal tables suffice.
    """
    from .psu3_data import class_spectrum, symbolic_power_table

    spec = class_spectrum(q)
    tabs = {k: symbolic_power_table(q, k) for k in (2, 3, 4)}

    def moment(src: str, k: int, e: int = 1) -> int:
        # sum over classes of type src of chi(g^k)^e
        return sum(n * spec[t].chi ** e for t, n in tabs[k][src].items())

    m = [Fraction(0)] * 3
    for t in spec.types:
        a, n, c = t.chi, t.count, t.centralizer
        b = moment(t.label, 2)
        m[0] += Fraction(n * a * a + b, 2 * c)
        m[1] += Fraction(n * a**3 + 3 * a * b + 2 * moment(t.label, 3), 6 * c)
        m[2] += Fraction(n * a**4 + 6 * a * a * b + 3 * moment(t.label, 2, 2)
                         + 8 * a * moment(t.label, 3) + 6 * moment(t.label, 4), 24 * c)
    return tuple(_as_count(x, f"m_{k}") for k, x in zip((2, 3, 4), m))


def dimension_check(data: ClassFunctionInput, K: int) -> bool:
    """chi_{Sym^k}(1) = C(n+k-1, k): a sanity check on the identity row."""
    n = data.degree
    i = max(range(len(data.centralizers)), key=lambda c: data.centralizers[c])
    row = data.powers[i]
    return all(_rational(sym_power_char(row, k)) == comb(n + k - 1, k) for k in range(K + 1))
