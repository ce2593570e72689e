"""Conjugacy classes and the character table of SL(2,q).

Classical parametrization.  Fix a generator nu of F_q^* and a generator rho
of the norm-one subgroup mu_{q+1} of F_{q^2}^*.

odd q:  1, z = -1, c = [[1,1],[0,1]], d = [[1,nu],[0,1]], zc, zd,
        a_l = diag(nu^l, nu^-l) for 1 <= l <= (q-3)/2,
        b_m with eigenvalues rho^{+-m} for 1 <= m <= (q-1)/2.
even q: 1, c, a_l for 1 <= l <= (q-2)/2, b_m for 1 <= m <= q/2.

Character values live in Q(zeta_{q-1}), Q(zeta_{q+1}) or Q(sqrt(eps q));
they are exact CycNumbers.  Correctness is established structurally
(orthogonality) and against the brute-force oracle, not by citation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Optional

import numpy as np

from .exact import CycNumber, _power_table, euler_phi
from .ffield import FieldSpec, embedding, make_field, prime_power

__all__ = [
    "UnsupportedQ",
    "OrthogonalityFailure",
    "SL2Class",
    "SL2ClassData",
    "CharacterTable",
    "ProjectiveCandidate",
    "sl2_class_data",
    "sl2_character_table",
    "check_orthogonality",
    "smallest_projective_character",
    "smallest_projective_candidates",
    "label_element",
    "sqrt_eps_q",
    "MAX_Q",
]

MAX_Q = 125


class UnsupportedQ(ValueError):
    pass


class OrthogonalityFailure(AssertionError):
    pass


@dataclass(frozen=True)
class SL2Class:
    label: str
    kind: str  # one of "1", "z", "u", "zu", "a", "b"
    param: int
    size: int
    centralizer: int
    order: int


def _legendre_square(q: int, k: int) -> bool:
    """Is the integer k (prime to p) a square in F_q?"""
    p, f = prime_power(q)
    if f % 2 == 0:
        return True
    return pow(k % p, (p - 1) // 2, p) == 1


@dataclass(frozen=True)
class SL2ClassData:
    q: int
    classes: tuple[SL2Class, ...]

    @cached_property
    def index(self) -> dict[str, int]:
        return {c.label: i for i, c in enumerate(self.classes)}

    @property
    def order(self) -> int:
        q = self.q
        return q * (q * q - 1)

    def __len__(self) -> int:
        return len(self.classes)

    def power_label(self, label: str, k: int) -> str:
        q = self.q
        p, _ = prime_power(q)
        odd = q % 2 == 1
        if label == "1":
            return "1"
        if label == "z":
            return "z" if k % 2 else "1"
        if label in ("c", "d", "zc", "zd"):
            central = label.startswith("z") and k % 2 == 1
            if k % p == 0:
                return "z" if central else "1"
            if not odd:
                return "c"
            base = label[-1]
            if not _legendre_square(q, k):
                base = "d" if base == "c" else "c"
            return ("z" + base) if central else base
        kind, m = label[0], int(label[1:])
        n = q - 1 if kind == "a" else q + 1
        r = (k * m) % n
        if r == 0:
            return "1"
        if odd and 2 * r == n:
            return "z"
        return f"{kind}{min(r, n - r)}"

    def power_map(self, c: int, k: int) -> int:
        return self.index[self.power_label(self.classes[c].label, k)]

    @lru_cache(maxsize=None)
    def power_maps(self, K: int) -> np.ndarray:
        """``P[k, c]`` = class of g^k for g in class c, 0 <= k <= K."""
        out = np.zeros((K + 1, len(self)), dtype=np.int64)
        for k in range(1, K + 1):
            out[k] = [self.power_map(c, k) for c in range(len(self))]
        return out


@lru_cache(maxsize=None)
def sl2_class_data(q: int) -> SL2ClassData:
    p, _ = prime_power(q)
    if not 2 <= q <= MAX_Q:
        raise UnsupportedQ(f"SL(2,q) data is provided for q <= {MAX_Q}")
    G = q * (q * q - 1)
    cl = [SL2Class("1", "1", 0, 1, G, 1)]
    if q % 2:
        cl.append(SL2Class("z", "z", 0, 1, G, 2))
        for lab in ("c", "d"):
            cl.append(SL2Class(lab, "u", 1 if lab == "c" else -1, (q * q - 1) // 2, 2 * q, p))
        for lab in ("zc", "zd"):
            cl.append(SL2Class(lab, "zu", 1 if lab == "zc" else -1, (q * q - 1) // 2, 2 * q, 2 * p))
        a_range = range(1, (q - 3) // 2 + 1)
        b_range = range(1, (q - 1) // 2 + 1)
    else:
        cl.append(SL2Class("c", "u", 1, q * q - 1, q, 2))
        a_range = range(1, (q - 2) // 2 + 1)
        b_range = range(1, q // 2 + 1)
    for l in a_range:
        cl.append(SL2Class(f"a{l}", "a", l, q * (q + 1), q - 1, (q - 1) // gcd(l, q - 1)))
    for m in b_range:
        cl.append(SL2Class(f"b{m}", "b", m, q * (q - 1), q + 1, (q + 1) // gcd(m, q + 1)))
    data = SL2ClassData(q, tuple(cl))
    if sum(c.size for c in cl) != G:
        raise AssertionError("class equation fails")
    return data


@lru_cache(maxsize=None)
def sqrt_eps_q(q: int) -> CycNumber:
    """sqrt(eps q) with eps = (-1)^((q-1)/2), as a Gauss sum multiple."""
    p, f = prime_power(q)
    if q % 2 == 0:
        raise ValueError("only defined for odd q")
    if f % 2 == 0:
        return CycNumber.from_rational(p ** (f // 2))
    g = CycNumber.from_rational(0, p)
    for x in range(1, p):
        sign = 1 if pow(x, (p - 1) // 2, p) == 1 else -1
        g = g + CycNumber.root_of_unity(p, x) * sign
    return g * p ** ((f - 1) // 2)


def _two_cos(n: int, e: int) -> CycNumber:
    return CycNumber.root_of_unity(n, e) + CycNumber.root_of_unity(n, -e)


@dataclass(frozen=True)
class CharacterTable:
    q: int
    classes: SL2ClassData
    names: tuple[str, ...]
    values: tuple[tuple[CycNumber, ...], ...]
    row_field: tuple[int, ...]  # conductor holding all values of the row

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(row[0].to_rational()) for row in self.values)

    def row(self, name: str) -> tuple[CycNumber, ...]:
        return self.values[self.names.index(name)]

    def __len__(self) -> int:
        return len(self.values)


@lru_cache(maxsize=None)
def sl2_character_table(q: int, check: bool = True) -> CharacterTable:
    data = sl2_class_data(q)
    classes = data.classes
    odd = q % 2 == 1
    R = CycNumber.from_rational
    names, rows, fields = [], [], []

    def add(name, fn, field):
        names.append(name)
        rows.append(tuple(fn(c) for c in classes))
        fields.append(field)

    add("1", lambda c: R(1), 1)
    add("St", lambda c: R({"1": q, "z": q, "u": 0, "zu": 0, "a": 1, "b": -1}[c.kind]), 1)
    n_a = (q - 3) // 2 if odd else (q - 2) // 2
    n_b = (q - 1) // 2 if odd else q // 2
    for i in range(1, n_a + 1):
        def chi(c, i=i):
            if c.kind == "a":
                return _two_cos(q - 1, i * c.param)
            if c.kind == "b":
                return R(0)
            sign = (-1) ** i if c.kind in ("z", "zu") else 1
            return R(sign * (q + 1 if c.kind in ("1", "z") else 1))
        add(f"chi{i}", chi, q - 1)
    for j in range(1, n_b + 1):
        def theta(c, j=j):
            if c.kind == "b":
                return -_two_cos(q + 1, j * c.param)
            if c.kind == "a":
                return R(0)
            sign = (-1) ** j if c.kind in ("z", "zu") else 1
            return R(sign * (q - 1 if c.kind in ("1", "z") else -1))
        add(f"theta{j}", theta, q + 1)
    if odd:
        eps = 1 if q % 4 == 1 else -1
        s = sqrt_eps_q(q)
        field = s.conductor
        half = Fraction(1, 2)
        for idx, sg in ((1, 1), (2, -1)):
            def xi(c, sg=sg):
                if c.kind == "1":
                    return R(Fraction(q + 1, 2))
                if c.kind == "z":
                    return R(Fraction(eps * (q + 1), 2))
                if c.kind in ("u", "zu"):
                    v = (R(1) + s * (sg * c.param)) * half
                    return v * eps if c.kind == "zu" else v
                if c.kind == "a":
                    return R((-1) ** c.param)
                return R(0)
            add(f"xi{idx}", xi, field)
        for idx, sg in ((1, 1), (2, -1)):
            def eta(c, sg=sg):
                if c.kind == "1":
                    return R(Fraction(q - 1, 2))
                if c.kind == "z":
                    return R(Fraction(-eps * (q - 1), 2))
                if c.kind in ("u", "zu"):
                    v = (R(-1) + s * (sg * c.param)) * half
                    return v * (-eps) if c.kind == "zu" else v
                if c.kind == "a":
                    return R(0)
                return R((-1) ** (c.param + 1))
            add(f"eta{idx}", eta, field)
    table = CharacterTable(q, data, tuple(names), tuple(rows), tuple(fields))
    if len(table) != len(classes):
        raise OrthogonalityFailure("number of characters differs from number of classes")
    if check:
        check_orthogonality(table)
    return table


# ------------------------------------------------------------ orthogonality

def _field_arrays(values, n: int):
    """Integer power-basis coordinates (common denominator) in Q(zeta_n)."""
    phi = euler_phi(n)
    den = 1
    for v in values:
        den = den * v.den // gcd(den, v.den)
    out = np.zeros((len(values), phi), dtype=np.int64)
    for i, v in enumerate(values):
        w = v if v.conductor == n else (
            CycNumber.from_rational(v.to_rational(), n) if v.conductor == 1 else v.embed(n))
        out[i] = np.array(w.num, dtype=np.int64) * (den // w.den)
    return out, den


@lru_cache(maxsize=None)
def _mult_tensor(n: int) -> np.ndarray:
    phi = euler_phi(n)
    table = _power_table(n)
    M = np.zeros((phi, phi, phi), dtype=np.float64)
    for r in range(phi):
        for s in range(phi):
            M[r, s] = table[(r + s) % n]
    return M


def _group_sums(X: np.ndarray, Y: np.ndarray, w: np.ndarray, n: int) -> np.ndarray:
    """S[i, j] = sum_c w_c X[i, c] * Y[j, c] in Q(zeta_n), coordinates (i, j, t).

    X, Y have shape (rows, cols, phi) of integers; float64 products are exact
    as long as the bound checked below stays under 2**53.
    """
    rows, cols, phi = X.shape
    bound = float(np.abs(X).max(initial=0)) * float(np.abs(Y).max(initial=0)) * float(np.abs(w).sum()) \
        * phi * phi * float(np.abs(_mult_tensor(n)).max(initial=1))
    if bound >= 2.0**53:
        raise OrthogonalityFailure("coordinate sizes exceed exact float range")
    Xw = X * w[None, :, None]
    A = Xw.transpose(0, 2, 1).reshape(rows * phi, cols).astype(np.float64)
    B = Y.transpose(1, 0, 2).reshape(cols, Y.shape[0] * phi).astype(np.float64)
    Z = (A @ B).reshape(rows, phi, Y.shape[0], phi).transpose(0, 2, 1, 3)
    Z = Z.reshape(rows * Y.shape[0], phi * phi) @ _mult_tensor(n).reshape(phi * phi, phi)
    return np.rint(Z).astype(np.int64).reshape(rows, Y.shape[0], phi)


def _rational_block(S: np.ndarray, what: str) -> np.ndarray:
    if S.shape[-1] > 1 and np.any(S[..., 1:]):
        raise OrthogonalityFailure(f"{what}: a Galois-stable partial sum is irrational")
    return S[..., 0]


def check_orthogonality(table: CharacterTable) -> None:
    """Exact row and column orthogonality; raises OrthogonalityFailure."""
    data = table.classes
    G = data.order
    nrows, ncols = len(table), len(data)
    sizes = np.array([c.size for c in data.classes], dtype=np.int64)
    cents = np.array([c.centralizer for c in data.classes], dtype=np.int64)

    # columns grouped by the field holding every value in them
    col_field = []
    for c in range(ncols):
        conds = {table.values[r][c].conductor for r in range(nrows)} - {1}
        if len(conds) > 1:
            raise OrthogonalityFailure("a column mixes cyclotomic fields")
        col_field.append(conds.pop() if conds else 1)

    # rows: sum_c |c| chi_i(c) conj chi_j(c) = |G| delta_ij
    total = np.zeros((nrows, nrows), dtype=object)
    for n in sorted(set(col_field)):
        cols = [c for c in range(ncols) if col_field[c] == n]
        vals = [table.values[r][c] for r in range(nrows) for c in cols]
        X, den = _field_arrays(vals, n)
        Yv = [v.conj() for v in vals]
        Y, den_y = _field_arrays(Yv, n)
        X = X.reshape(nrows, len(cols), -1)
        Y = Y.reshape(nrows, len(cols), -1)
        S = _rational_block(_group_sums(X, Y, sizes[cols], n), f"row sums over field {n}")
        total = total + np.vectorize(lambda x: Fraction(int(x), den * den_y), otypes=[object])(S)
    expected = np.array([[Fraction(G) if i == j else Fraction(0) for j in range(nrows)] for i in range(nrows)],
                        dtype=object)
    if not np.array_equal(total, expected):
        bad = np.argwhere(total != expected)[0]
        raise OrthogonalityFailure(f"row orthogonality fails at {tuple(int(x) for x in bad)}")

    # columns: sum_i chi_i(c) conj chi_i(c') = |C(c)| delta_cc'
    total = np.zeros((ncols, ncols), dtype=object)
    for n in sorted(set(table.row_field)):
        rows = [r for r in range(nrows) if table.row_field[r] == n]
        vals = [table.values[r][c] for c in range(ncols) for r in rows]
        X, den = _field_arrays(vals, n)
        Y, den_y = _field_arrays([v.conj() for v in vals], n)
        # treat rows as the summation index: shape (cols, rows, phi)
        X = X.reshape(ncols, len(rows), -1)
        Y = Y.reshape(ncols, len(rows), -1)
        S = _rational_block(_group_sums(X, Y, np.ones(len(rows), dtype=np.int64), n),
                            f"column sums over field {n}")
        total = total + np.vectorize(lambda x: Fraction(int(x), den * den_y), otypes=[object])(S)
    expected = np.array([[Fraction(int(cents[i])) if i == j else Fraction(0) for j in range(ncols)]
                         for i in range(ncols)], dtype=object)
    if not np.array_equal(total, expected):
        bad = np.argwhere(total != expected)[0]
        raise OrthogonalityFailure(f"column orthogonality fails at {tuple(int(x) for x in bad)}")


# ------------------------------------------------------ projective choice

@dataclass(frozen=True)
class ProjectiveCandidate:
    """A smallest-degree character, up to Galois conjugacy."""

    name: str
    degree: int
    values: tuple[CycNumber, ...]
    orbit: tuple[str, ...]


def smallest_projective_candidates(q: int) -> tuple[ProjectiveCandidate, ...]:
    """Galois-orbit representatives among the smallest nontrivial characters.

    The degree is (q-1)/2 for odd q and q-1 for even q; this also covers the
    exceptional multipliers at q = 4 (degree 3) and q = 9 (degree 4).
    """
    if q < 4:
        raise UnsupportedQ("PSL(2,q) is simple only for q >= 4")
    table = sl2_character_table(q)
    degs = table.degrees
    small = min(d for d in degs if d > 1)
    members = [i for i, d in enumerate(degs) if d == small]
    orbits: dict[tuple, list[int]] = {}
    for i in members:
        name = table.names[i]
        if name.startswith("theta"):
            key = ("theta", gcd(int(name[5:]), q + 1))
        elif name.startswith("chi"):
            key = ("chi", gcd(int(name[3:]), q - 1))
        elif table.values[i][table.classes.index.get("c", 0)].is_rational():
            key = (name,)  # rational values: each character is its own orbit
        else:
            key = (name.rstrip("12"),)
        orbits.setdefault(key, []).append(i)
    out = []
    for key in sorted(orbits, key=lambda k: orbits[k][0]):
        idx = orbits[key]
        i = idx[0]
        out.append(ProjectiveCandidate(table.names[i], small, table.values[i],
                                       tuple(table.names[j] for j in idx)))
    return tuple(out)


def smallest_projective_character(q: int) -> tuple[int, tuple[CycNumber, ...], SL2ClassData]:
    """Degree, values and class data of the preferred smallest nontrivial character.

    When several Galois orbits share the smallest degree (q even), the orbit
    with the smallest character field wins, rational-valued first.  This is
    the character listed first in the standard tables.
    """
    cands = smallest_projective_candidates(q)
    cand = min(cands, key=lambda c: len(c.orbit))
    return cand.degree, cand.values, sl2_class_data(q)


# ------------------------------------------------------ oracle labelling

@lru_cache(maxsize=None)
def _big_field(q: int) -> FieldSpec:
    p, f = prime_power(q)
    return make_field(p, 2 * f)


def _roots(F: FieldSpec, coeffs_low_first) -> list[int]:
    xs = np.arange(F.size, dtype=np.int64)
    acc = np.zeros(F.size, dtype=np.int64)
    for c in reversed(coeffs_low_first):
        acc = F.vadd(F.vmul(acc, xs), np.full(F.size, c, dtype=np.int64))
    return [int(x) for x in np.flatnonzero(acc == 0)]


def label_element(F: FieldSpec, q: int, g) -> str:
    """Class label of a concrete SL(2,q) matrix over F = F_q."""
    (a, b), (c, d) = [[int(x) for x in row] for row in np.asarray(g).reshape(2, 2)]
    one = 1
    neg = F.neg(one)
    tr = F.add(a, d)
    if (a, b, c, d) == (1, 0, 0, 1):
        return "1"
    if q % 2 and (a, b, c, d) == (neg, 0, 0, neg):
        return "z"
    two = F.add(1, 1)
    if tr == two or (q % 2 and tr == F.neg(two)):
        central = tr != two
        if central:
            a, b, c, d = F.neg(a), F.neg(b), F.neg(c), F.neg(d)
        if q % 2 == 0:
            return "c"
        # N = g - 1; pick v with N v != 0; invariant -det[v, N v] up to squares
        n11, n12, n21, n22 = F.sub(a, 1), b, c, F.sub(d, 1)
        if n11 or n21:
            v = (1, 0)
            nv = (n11, n21)
        else:
            v = (0, 1)
            nv = (n12, n22)
        det = F.sub(F.mul(v[0], nv[1]), F.mul(v[1], nv[0]))
        x = F.neg(det)
        square = F.discrete_log(x) % 2 == 0
        lab = "c" if square else "d"
        return "z" + lab if central else lab
    # semisimple: eigenvalues are roots of x^2 - tr x + 1
    roots = _roots(F, [1, F.neg(tr), 1])
    if roots:
        r = F.discrete_log(roots[0])
        n = q - 1
        r %= n
        return f"a{min(r, n - r)}"
    E = _big_field(q)
    emb = embedding(F, E)
    roots = _roots(E, [1, int(emb[F.neg(tr)]), 1])
    rho_log = (q - 1)  # rho = gen^(q-1) generates mu_{q+1}
    r = E.discrete_log(roots[0])
    if r % rho_log:
        raise AssertionError("eigenvalue is not of norm one")
    r //= rho_log
    n = q + 1
    r %= n
    return f"b{min(r, n - r)}"
