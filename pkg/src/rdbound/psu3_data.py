"""Symbolic class data for PSU(3,q).

Class types C1..C8 and C6' with centralizer orders, class counts and the
values of the degree q^2 - q character chi_V, plus the type-level power maps
g -> g^k for k = 2, 3, 4 as polynomials in q selected by congruence class.

All formulas are exact; an instantiation that is not a non-negative integer
is an error, not something to round.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Mapping

from .ffield import prime_power

__all__ = [
    "TYPES",
    "QPoly",
    "ClassTypeSpec",
    "TypeData",
    "InstantiatedSpectrum",
    "ColumnSumMismatch",
    "schur_d",
    "psu3_order",
    "class_type_specs",
    "class_spectrum",
    "power_case",
    "symbolic_power_table",
    "chi_on_power_types",
    "POWER_CASES",
    "CORRECTIONS",
]

TYPES = ("C1", "C2", "C3", "C4", "C5", "C6p", "C6", "C7", "C8")
PRETTY = {"C1": "C1", "C2": "C2", "C3": "C3^l", "C4": "C4^k", "C5": "C5^k",
          "C6p": "C6'", "C6": "C6^klm", "C7": "C7^k", "C8": "C8^k"}


class ColumnSumMismatch(ValueError):
    """A power table column does not add up to its type's class count."""


@dataclass(frozen=True)
class QPoly:
    """A polynomial in q with rational coefficients, lowest degree first."""

    coeffs: tuple[Fraction, ...]

    _TERM = re.compile(r"([+-]?)\s*(\d*)\s*(q(?:\^(\d+))?)?\s*(?:/\s*(\d+))?")

    @classmethod
    def parse(cls, text: str) -> "QPoly":
        """Parse strings like ``"q^2/6 - 2q/3 + 1/2"``."""
        s = text.replace(" ", "")
        coeffs: dict[int, Fraction] = {}
        pos = 0
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial {text!r}")
            sign, num, var, power, den = m.groups()
            if not num and not var:
                raise ValueError(f"cannot parse polynomial {text!r}")
            c = Fraction(int(num) if num else 1, int(den) if den else 1)
            if sign == "-":
                c = -c
            deg = 0 if not var else int(power or 1)
            coeffs[deg] = coeffs.get(deg, Fraction(0)) + c
            pos = m.end()
        top = max(coeffs, default=0)
        return cls(tuple(coeffs.get(i, Fraction(0)) for i in range(top + 1)))

    @classmethod
    def const(cls, c) -> "QPoly":
        return cls((Fraction(c),))

    def __call__(self, q: int) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * q + c
        return total

    def __add__(self, other: "QPoly") -> "QPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return QPoly(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + QPoly(tuple(-c for c in other.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __str__(self) -> str:
        parts = []
        for deg in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[deg]
            if c == 0:
                continue
            var = "" if deg == 0 else ("q" if deg == 1 else f"q^{deg}")
            mag = abs(c)
            if var and mag.numerator == 1:
                body = var
            else:
                body = f"{mag.numerator}{var}"
            if mag.denominator != 1:
                body += f"/{mag.denominator}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _int(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value < 0:
        raise ValueError(f"{what} instantiates to {value}, not a non-negative integer")
    return int(value)


def schur_d(q: int) -> int:
    return gcd(3, q + 1)


def psu3_order(q: int) -> int:
    return q**3 * (q * q - 1) * (q**3 + 1) // schur_d(q)


@dataclass(frozen=True)
class ClassTypeSpec:
    """One class type with its formulas for a fixed value of d."""

    label: str
    centralizer: QPoly
    count: QPoly
    chi: QPoly


def _delta(a: int, b: int) -> int:
    return 1 if a == b else 0


@lru_cache(maxsize=None)
def class_type_specs(d: int) -> tuple[ClassTypeSpec, ...]:
    """Type formulas with d = gcd(3, q+1) fixed (d is 1 or 3)."""
    if d not in (1, 3):
        raise ValueError("d must be 1 or 3")
    P = QPoly.parse
    fd = Fraction(1, d)

    def scaled(text: str, s: Fraction) -> QPoly:
        return QPoly(tuple(c * s for c in P(text).coeffs))

    base = f"q^2 - q + {1 - d}" if d == 1 else "q^2 - q - 2"
    specs = [
        # |G| is not a polynomial with these coefficients in general; handled in class_spectrum
        ClassTypeSpec("C1", QPoly.const(0), QPoly.const(1), P("q^2 - q")),
        ClassTypeSpec("C2", scaled("q^4 + q^3", fd), QPoly.const(1), P("-q")),
        ClassTypeSpec("C3", P("q^2"), QPoly.const(d), QPoly.const(0)),
        ClassTypeSpec("C4", scaled("q^4 + q^3 - q^2 - q", fd), scaled("q + 1", fd) - QPoly.const(1), P("1 - q")),
        ClassTypeSpec("C5", scaled("q^2 + q", fd), scaled("q + 1", fd) - QPoly.const(1), QPoly.const(1)),
        ClassTypeSpec("C6p", P("q^2 + 2q + 1"), QPoly.const(_delta(3, d)), QPoly.const(2)),
        ClassTypeSpec("C6", scaled("q^2 + 2q + 1", fd), scaled(base, Fraction(1, 6 * d)), QPoly.const(2)),
        ClassTypeSpec("C7", scaled("q^2 - 1", fd),
                      scaled(base, Fraction(1, 2 * d)) - QPoly.const(_delta(1, d)), QPoly.const(0)),
        ClassTypeSpec("C8", scaled("q^2 - q + 1", fd), scaled(base, Fraction(1, 3 * d)), QPoly.const(-1)),
    ]
    return tuple(specs)


@dataclass(frozen=True)
class TypeData:
    label: str
    count: int
    centralizer: int
    chi: int


@dataclass(frozen=True)
class InstantiatedSpectrum:
    q: int
    d: int
    order: int
    types: tuple[TypeData, ...]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(t.label for t in self.types)

    def __getitem__(self, label: str) -> TypeData:
        for t in self.types:
            if t.label == label:
                return t
        raise KeyError(label)

    def __contains__(self, label: str) -> bool:
        return label in self.labels

    @property
    def num_classes(self) -> int:
        return sum(t.count for t in self.types)

    def class_equation_total(self) -> int:
        return sum(t.count * (self.order // t.centralizer) for t in self.types)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "d": self.d,
            "order": self.order,
            "types": [
                {"type": t.label, "count": t.count, "centralizer": t.centralizer, "chi_V": t.chi}
                for t in self.types
            ],
        }


@lru_cache(maxsize=None)
def class_spectrum(q: int) -> InstantiatedSpectrum:
    """Numeric class data of PSU(3,q).  C6' appears only when q = 2 mod 3."""
    prime_power(q)
    d = schur_d(q)
    order = psu3_order(q)
    types = []
    for spec in class_type_specs(d):
        count = _int(spec.count(q), f"class count of {spec.label}")
        if spec.label == "C6p" and d == 1:
            continue
        cent = order if spec.label == "C1" else _int(spec.centralizer(q), f"centralizer of {spec.label}")
        if order % cent:
            raise ValueError(f"centralizer order of {spec.label} does not divide |G|")
        chi = spec.chi(q)
        if chi.denominator != 1:
            raise ValueError("non-integral character value")
        types.append(TypeData(spec.label, count, cent, int(chi)))
    return InstantiatedSpectrum(q, d, order, tuple(types))


# Power tables.  Rows are the types of g^k, columns the types of g; an entry
# counts the classes of the column type whose k-th power has the row type.
# Only nonzero entries are listed, as (row, column): formula.

def _table(entries: Mapping[tuple[str, str], str]) -> dict[tuple[str, str], QPoly]:
    return {key: QPoly.parse(val) for key, val in entries.items()}


POWER_CASES: dict[tuple[int, str], dict[tuple[str, str], QPoly]] = {
    (2, "q = 1,3 mod 6"): _table({
        ("C1", "C1"): "1", ("C1", "C4"): "1",
        ("C2", "C2"): "1", ("C2", "C5"): "1",
        ("C3", "C3"): "1",
        ("C4", "C4"): "q - 1", ("C4", "C6"): "q/2 - 1/2", ("C4", "C7"): "q/2 + 1/2",
        ("C5", "C5"): "q - 1",
        ("C6", "C6"): "q^2/6 - 2q/3 + 1/2",
        ("C7", "C7"): "q^2/2 - q - 3/2",
        ("C8", "C8"): "q^2/3 - q/3",
    }),
    (2, "q = 2 mod 6"): _table({
        ("C1", "C1"): "1", ("C1", "C2"): "1",
        ("C2", "C3"): "3",
        ("C4", "C4"): "q/3 - 2/3", ("C4", "C5"): "q/3 - 2/3",
        ("C6p", "C6p"): "1",
        ("C6", "C6"): "q^2/18 - q/18 - 1/9",
        ("C7", "C7"): "q^2/6 - q/6 - 1/3",
        ("C8", "C8"): "q^2/9 - q/9 - 2/9",
    }),
    (2, "q = 4 mod 6"): _table({
        ("C1", "C1"): "1", ("C1", "C2"): "1",
        ("C2", "C3"): "1",
        ("C4", "C4"): "q", ("C4", "C5"): "q",
        ("C6", "C6"): "q^2/6 - q/6",
        ("C7", "C7"): "q^2/6 - q/2 - 1",
        ("C8", "C8"): "q^2/3 - q/3",
    }),
    (2, "q = 5 mod 6"): _table({
        ("C1", "C1"): "1", ("C1", "C4"): "1",
        ("C2", "C2"): "1", ("C2", "C5"): "1",
        ("C3", "C3"): "3",
        ("C4", "C4"): "q/3 - 5/3", ("C4", "C6"): "q/6 - 5/6", ("C4", "C7"): "q/6 + 1/6",
        ("C5", "C5"): "q/3 - 5/3",
        ("C6p", "C6p"): "1",
        ("C6", "C6"): "q^2/18 - 2q/9 + 13/18",
        ("C7", "C7"): "q^2/6 - q/3 - 1/2",
        ("C8", "C8"): "q^2/9 - q/9 - 2/9",
    }),
    (3, "q = 0 mod 3"): _table({
        ("C1", "C1"): "1", ("C1", "C2"): "1", ("C1", "C3"): "1",
        ("C4", "C4"): "q", ("C4", "C5"): "q",
        ("C6", "C6"): "q^2/6 - q/6",
        ("C7", "C7"): "q^2/6 - q/2 - 1",
        ("C8", "C8"): "q^2/3 - q/3",
    }),
    (3, "q = 1 mod 3"): _table({
        ("C1", "C1"): "1", ("C1", "C7"): "1",
        ("C2", "C2"): "1",
        ("C3", "C3"): "1",
        ("C4", "C4"): "q", ("C4", "C7"): "q",
        ("C5", "C5"): "q",
        ("C6", "C6"): "q^2/6 - q/6",
        ("C7", "C7"): "q^2/2 - 3q/2 - 2",
        ("C8", "C8"): "q^2/3 - q/3",
    }),
    (3, "q = 2,5 mod 9"): _table({
        ("C1", "C1"): "1", ("C1", "C6p"): "1",
        ("C2", "C2"): "1",
        ("C3", "C3"): "3",
        ("C4", "C4"): "q/3 - 2/3", ("C4", "C6"): "q/3 - 2/3",
        ("C5", "C5"): "q/3 - 2/3",
        ("C6", "C6"): "q^2/18 - 7q/18 + 5/9",
        ("C7", "C7"): "q^2/6 - q/6 - 1/3",
        ("C8", "C8"): "q^2/9 - q/9 - 2/9",
    }),
    (3, "q = 8 mod 9"): _table({
        ("C1", "C1"): "1", ("C1", "C4"): "2", ("C1", "C6p"): "1",
        ("C2", "C2"): "1", ("C2", "C5"): "2",
        ("C3", "C3"): "3",
        ("C4", "C4"): "q/3 - 8/3", ("C4", "C6"): "q/3 - 8/3",
        ("C5", "C5"): "q/3 - 8/3",
        ("C6", "C6"): "q^2/18 - 7q/18 + 23/9",
        ("C7", "C7"): "q^2/6 - q/6 - 1/3",
        ("C8", "C8"): "q^2/9 - q/9 - 2/9",
    }),
    (4, "q = 1,9 mod 12"): _table({
        ("C1", "C1"): "1", ("C1", "C4"): "1", ("C1", "C7"): "1",
        ("C2", "C2"): "1", ("C2", "C5"): "1",
        ("C3", "C3"): "1",
        ("C4", "C4"): "q - 1", ("C4", "C6"): "q/2 - 1/2", ("C4", "C7"): "3q/2 + 1/2",
        ("C5", "C5"): "q - 1",
        ("C6", "C6"): "q^2/6 - 2q/3 + 1/2",
        ("C7", "C7"): "q^2/2 - 2q - 5/2",
        ("C8", "C8"): "q^2/3 - q/3",
    }),
    (4, "q = 2 mod 6"): _table({
        ("C1", "C1"): "1", ("C1", "C2"): "1", ("C1", "C3"): "3",
        ("C4", "C4"): "q/3 - 2/3", ("C4", "C5"): "q/3 - 2/3",
        ("C6p", "C6p"): "1",
        ("C6", "C6"): "q^2/18 - q/18 - 1/9",
        ("C7", "C7"): "q^2/6 - q/6 - 1/3",
        ("C8", "C8"): "q^2/9 - q/9 - 2/9",
    }),
    (4, "q = 3,7 mod 12"): _table({
        ("C1", "C1"): "1", ("C1", "C4"): "3", ("C1", "C6"): "1",
        ("C2", "C2"): "1", ("C2", "C5"): "3",
        ("C3", "C3"): "1",
        ("C4", "C4"): "q - 3", ("C4", "C6"): "3q/2 - 9/2", ("C4", "C7"): "q/2 + 1/2",
        ("C5", "C5"): "q - 3",
        ("C6", "C6"): "q^2/6 - 5q/3 + 7/2",
        ("C7", "C7"): "q^2/2 - q - 3/2",
        ("C8", "C8"): "q^2/3 - q/3",
    }),
    (4, "q = 4 mod 6"): _table({
        ("C1", "C1"): "1", ("C1", "C2"): "1", ("C1", "C3"): "1",
        ("C4", "C4"): "q", ("C4", "C5"): "q",
        ("C6", "C6"): "q^2/6 - q/6",
        ("C7", "C7"): "q^2/2 - q/2 - 1",
        ("C8", "C8"): "q^2/3 - q/3",
    }),
    (4, "q = 5 mod 12"): _table({
        ("C1", "C1"): "1", ("C1", "C4"): "1", ("C1", "C7"): "1",
        ("C2", "C2"): "1", ("C2", "C5"): "1",
        ("C3", "C3"): "3",
        ("C4", "C4"): "q/3 - 5/3", ("C4", "C6"): "q/6 - 5/6", ("C4", "C7"): "q/2 - 1/2",
        ("C5", "C5"): "q/3 - 5/3",
        ("C6p", "C6p"): "1",
        ("C6", "C6"): "q^2/18 - 2q/9 + 13/18",
        ("C7", "C7"): "q^2/6 - 2q/3 - 5/6",
        ("C8", "C8"): "q^2/9 - q/9 - 2/9",
    }),
    (4, "q = 11 mod 12"): _table({
        ("C1", "C1"): "1", ("C1", "C4"): "3", ("C1", "C6"): "1",
        ("C2", "C2"): "1", ("C2", "C5"): "3",
        ("C3", "C3"): "3",
        ("C4", "C4"): "q/3 - 11/3", ("C4", "C6"): "q/2 - 11/2", ("C4", "C7"): "q/6 + 1/6",
        ("C5", "C5"): "q/3 - 11/3",
        ("C6p", "C6p"): "1",
        ("C6", "C6"): "q^2/18 - 5q/9 + 79/18",
        ("C7", "C7"): "q^2/6 - q/3 - 1/2",
        ("C8", "C8"): "q^2/9 - q/9 - 2/9",
    }),
}

# Entries of the printed tables that disagree with the representatives.  The
# C7 entries contradict their own column sums.  The C6 entries miss a fixed
# number of C6 classes whose k-th power lands in C6' (for instance
# diag(1, -w, -w^2) squares to diag(1, w^2, w)); chi_V is 2 on both types, so
# no character sum changes.  Confirmed by brute force and by matrix powers.
CORRECTIONS: dict[tuple[int, str], dict[tuple[str, str], QPoly]] = {
    (2, "q = 4 mod 6"): {("C7", "C7"): QPoly.parse("q^2/2 - q/2 - 1")},
    (3, "q = 0 mod 3"): {("C7", "C7"): QPoly.parse("q^2/2 - q/2 - 1")},
    (2, "q = 5 mod 6"): {("C6", "C6"): QPoly.parse("q^2/18 - 2q/9 - 5/18"),
                         ("C6p", "C6"): QPoly.parse("1")},
    (3, "q = 8 mod 9"): {("C6", "C6"): QPoly.parse("q^2/18 - 7q/18 - 4/9"),
                         ("C6p", "C6"): QPoly.parse("3")},
    (4, "q = 5 mod 12"): {("C6", "C6"): QPoly.parse("q^2/18 - 2q/9 - 5/18"),
                          ("C6p", "C6"): QPoly.parse("1")},
    (4, "q = 11 mod 12"): {("C6", "C6"): QPoly.parse("q^2/18 - 5q/9 - 11/18"),
                           ("C6p", "C6"): QPoly.parse("5")},
}


def power_case(q: int, k: int) -> tuple[int, str]:
    """The congruence case governing the k-th power table at q."""
    if k == 2:
        r = q % 6
        case = {1: "q = 1,3 mod 6", 3: "q = 1,3 mod 6", 2: "q = 2 mod 6",
                4: "q = 4 mod 6", 5: "q = 5 mod 6"}.get(r)
    elif k == 3:
        if q % 3 == 0:
            case = "q = 0 mod 3"
        elif q % 3 == 1:
            case = "q = 1 mod 3"
        else:
            case = "q = 8 mod 9" if q % 9 == 8 else "q = 2,5 mod 9"
    elif k == 4:
        if q % 2 == 0:
            case = "q = 2 mod 6" if q % 6 == 2 else "q = 4 mod 6"
        else:
            case = {1: "q = 1,9 mod 12", 9: "q = 1,9 mod 12", 3: "q = 3,7 mod 12",
                    7: "q = 3,7 mod 12", 5: "q = 5 mod 12", 11: "q = 11 mod 12"}[q % 12]
    else:
        raise ValueError("symbolic power tables exist for k = 2, 3, 4 only")
    if case is None:
        raise ValueError(f"no power table case for q = {q}")
    return (k, case)


def case_formulas(case: tuple[int, str], corrected: bool = True) -> dict[tuple[str, str], QPoly]:
    table = dict(POWER_CASES[case])
    if corrected:
        table.update(CORRECTIONS.get(case, {}))
    return table


def symbolic_power_table(q: int, k: int, corrected: bool = True) -> dict[str, dict[str, int]]:
    """Instantiated type-level power table: ``table[source][target] = count``.

    Columns are checked against the class counts before returning.
    """
    spectrum = class_spectrum(q)
    formulas = case_formulas(power_case(q, k), corrected)
    labels = spectrum.labels
    table: dict[str, dict[str, int]] = {src: {} for src in labels}
    for (row, col), poly in formulas.items():
        if col not in labels or row not in labels:
            if poly(q) != 0:
                raise ColumnSumMismatch(f"entry ({row}, {col}) refers to an absent type at q = {q}")
            continue
        value = poly(q)
        if value.denominator != 1 or value < 0:
            raise ColumnSumMismatch(f"entry ({row}, {col}) = {value} at q = {q}")
        if value:
            table[col][row] = int(value)
    for src in labels:
        total = sum(table[src].values())
        if total != spectrum[src].count:
            raise ColumnSumMismatch(
                f"k = {k}, q = {q}: column {src} sums to {total}, expected {spectrum[src].count}")
    return table


def chi_on_power_types(spectrum: InstantiatedSpectrum, label: str, k: int) -> int:
    """Sum of chi_V(g^k) over the classes g of the given type."""
    if k == 1:
        return spectrum[label].count * spectrum[label].chi
    table = symbolic_power_table(spectrum.q, k)
    return sum(n * spectrum[target].chi for target, n in table[label].items())
