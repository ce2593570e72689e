"""Class representatives of PSU(3,q) and their power maps.

A representative is stored abstractly: the eigenvalue multiset as exponents
of a fixed generator of F_{q^6}^* (so everything lives in Z/(q^6 - 1)), plus
the Jordan shape of the unipotent part.  Semisimple classes of SU(3,q) are
determined by eigenvalues; the regular unipotent class splits into d classes
labelled by ``ell``.  Powers of such data are computed by multiplying
exponents, which is what makes every q <= 197 cheap.

Concrete matrices in SU(3,q) (identity Hermitian form, as in the oracle) are
built on demand while F_{q^6} fits in the field tables, i.e. q <= 16.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .ffield import FieldSpec, embedding, make_field, prime_power
from .oracle import GroupElement
from .psu3_data import TYPES, class_spectrum, schur_d, symbolic_power_table

__all__ = [
    "ClassRep",
    "CountMismatch",
    "SymbolicMismatch",
    "NotInGroup",
    "build_representatives",
    "identify_type",
    "power_distribution",
    "power_type_sequences",
    "rep_matrix",
    "MATRIX_MAX_Q",
]

MATRIX_MAX_Q = 16


class CountMismatch(AssertionError):
    pass


class SymbolicMismatch(AssertionError):
    pass


class NotInGroup(ValueError):
    pass


@dataclass(frozen=True)
class ClassRep:
    """One PSU(3,q) class.

    ``eigen`` is the sorted exponent multiset in Z/(q^6-1); ``shape`` is
    "" (semisimple), "21" (one 2x2 Jordan block) or "3" (regular unipotent
    part); ``ell`` labels the split regular unipotent classes.
    """

    q: int
    type: str
    params: tuple[int, ...]
    eigen: tuple[int, int, int]
    shape: str = ""
    ell: int = 0
    psu_id: tuple = field(default=(), compare=False)

    @property
    def matrix(self) -> GroupElement:
        return rep_matrix(self)

    def power(self, k: int) -> "ClassRep":
        return _power(self, k)


def _modulus(q: int) -> int:
    return q**6 - 1


def _classify(q: int, eigen: tuple[int, ...], shape: str) -> str:
    N = _modulus(q)
    a, b, c = eigen
    if a == b == c:
        return {"": "C1", "21": "C2", "3": "C3"}[shape]
    if a == b or b == c or a == c:
        return "C5" if shape == "21" else "C4"
    step = N // (q + 1)
    inside = sum(1 for e in eigen if e % step == 0)
    if inside == 3:
        third = N // 3
        if N % 3 == 0 and sorted((x - a) % N for x in eigen) == [0, third, 2 * third]:
            return "C6p"
        return "C6"
    return "C7" if inside == 1 else "C8"


def _canonical(q: int, eigen, shape: str, ell: int) -> tuple:
    N = _modulus(q)
    shifts = [0]
    if schur_d(q) == 3:
        shifts = [0, N // 3, 2 * N // 3]
    best = min(tuple(sorted((e + s) % N for e in eigen)) for s in shifts)
    return (shape, ell, best)


def _make(q: int, typ: str, params, eigen, shape: str = "", ell: int = 0) -> ClassRep:
    eigen = tuple(sorted(e % _modulus(q) for e in eigen))
    return ClassRep(q, typ, tuple(params), eigen, shape, ell, _canonical(q, eigen, shape, ell))


def _unipotent_power(shape: str, k: int, p: int) -> str:
    if shape == "":
        return ""
    if shape == "21":
        return "" if k % p == 0 else "21"
    if p == 2:  # regular unipotents have order 4 in characteristic 2
        if k % 2:
            return "3"
        return "21" if k % 4 == 2 else ""
    return "" if k % p == 0 else "3"


def _power(rep: ClassRep, k: int) -> ClassRep:
    q = rep.q
    p, _ = prime_power(q)
    shape = _unipotent_power(rep.shape, k, p)
    eigen = tuple(k * e for e in rep.eigen)
    eigen_sorted = tuple(sorted(e % _modulus(q) for e in eigen))
    typ = _classify(q, eigen_sorted, shape)
    ell = rep.ell if shape == "3" else 0
    return _make(q, typ, (), eigen_sorted, shape, ell)


@lru_cache(maxsize=None)
def build_representatives(q: int) -> tuple[ClassRep, ...]:
    """One representative per PSU(3,q) class, in type order."""
    p, _ = prime_power(q)
    N = _modulus(q)
    d = schur_d(q)
    s1 = N // (q + 1)  # generator exponent of mu_{q+1}
    s2 = N // (q * q - 1)  # generator exponent of F_{q^2}^*
    s8 = N // (q * q - q + 1)
    reps: dict[str, dict[tuple, ClassRep]] = {t: {} for t in TYPES}

    def add(rep: ClassRep):
        if rep.psu_id not in reps[rep.type]:
            reps[rep.type][rep.psu_id] = rep

    add(_make(q, "C1", (), (0, 0, 0)))
    add(_make(q, "C2", (), (0, 0, 0), "21"))
    for ell in range(d):
        add(_make(q, "C3", (ell,), (0, 0, 0), "3", ell))
    for j in range(q + 1):
        if (3 * j) % (q + 1) == 0:
            continue
        e = j * s1
        add(_make(q, "C4", (j,), (e, e, -2 * e)))
        add(_make(q, "C5", (j,), (e, e, -2 * e), "21"))
    for j1 in range(q + 1):
        for j2 in range(j1 + 1, q + 1):
            j3 = (-j1 - j2) % (q + 1)
            if j3 <= j2:
                continue
            eigen = (j1 * s1, j2 * s1, j3 * s1)
            typ = _classify(q, tuple(sorted(eigen)), "")
            add(_make(q, typ, (j1, j2, j3), eigen))
    for i in range(q * q - 1):
        if i % (q - 1) == 0:
            continue  # inside mu_{q+1}
        e = i * s2
        add(_make(q, "C7", (i,), (e, -q * e, (q - 1) * e)))
    step_d = (q * q - q + 1) // d
    for i in range(1, q * q - q + 1):
        if i % step_d == 0:
            continue
        e = i * s8
        add(_make(q, "C8", (i,), (e, -q * e, q * q * e)))

    spectrum = class_spectrum(q)
    out = []
    for t in TYPES:
        expected = spectrum[t].count if t in spectrum else 0
        if len(reps[t]) != expected:
            raise CountMismatch(f"q = {q}: built {len(reps[t])} classes of type {t}, expected {expected}")
        out.extend(sorted(reps[t].values(), key=lambda r: r.psu_id))
    return tuple(out)


def power_distribution(q: int, k: int, check: bool = True) -> dict[str, dict[str, int]]:
    """``dist[source][target]``: classes of the source type whose k-th power has the target type."""
    if k < 1:
        raise ValueError("k must be positive")
    reps = build_representatives(q)
    dist: dict[str, Counter] = {}
    for rep in reps:
        dist.setdefault(rep.type, Counter())[rep.power(k).type] += 1
    out = {src: dict(c) for src, c in dist.items()}
    if check and k in (2, 3, 4):
        sym = symbolic_power_table(q, k)
        if out != {src: col for src, col in sym.items() if col}:
            raise SymbolicMismatch(f"q = {q}, k = {k}: representative powers disagree with the symbolic table")
    return out


def power_type_sequences(q: int, K: int = 6) -> list[tuple[str, ...]]:
    """For each class: the types of g, g^2, ..., g^K."""
    if not 1 <= K <= 12:
        raise ValueError("K must lie in 1..12")
    return [tuple(rep.power(k).type if k > 1 else rep.type for k in range(1, K + 1))
            for rep in build_representatives(q)]


# ---------------------------------------------------------------- matrices

def _conj(F: FieldSpec, q: int, x: int) -> int:
    return F.pow(x, q)


def _mat_mul(F, A, B):
    n = len(A)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = F.add(acc, F.mul(A[i][k], B[k][j]))
            out[i][j] = acc
    return out


def _star(F, q, A):
    n = len(A)
    return [[_conj(F, q, A[j][i]) for j in range(n)] for i in range(n)]


def _inverse(F, A):
    n = len(A)
    M = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col])
        M[col], M[piv] = M[piv], M[col]
        inv = F.inv(M[col][col])
        M[col] = [F.mul(inv, x) for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def _herm(F, q, H, u, v):
    n = len(H)
    total = 0
    for i in range(n):
        if not u[i]:
            continue
        ci = _conj(F, q, u[i])
        for j in range(n):
            if H[i][j] and v[j]:
                total = F.add(total, F.mul(ci, F.mul(H[i][j], v[j])))
    return total


def _norm_root(F, q, c):
    """Some x with x^(q+1) = c, for c in F_q^*."""
    target = F.discrete_log(c)
    # x = g^t with t (q+1) = target mod (q^2-1); target is a multiple of q+1
    if target % (q + 1):
        raise ValueError("not a norm")
    return F.gen_power(target // (q + 1))


def orthonormal_basis(F: FieldSpec, q: int, H) -> list[list[int]]:
    """P with P^* H P = I for a nondegenerate Hermitian H over F_{q^2}."""
    n = len(H)
    work = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    found = []
    while work:
        pick = None
        for i, w in enumerate(work):
            if _herm(F, q, H, w, w):
                pick = (i, w)
                break
        if pick is None:
            for i, wi in enumerate(work):
                for j, wj in enumerate(work):
                    if i == j:
                        continue
                    for lam in range(1, F.size):
                        v = [F.add(a, F.mul(lam, b)) for a, b in zip(wi, wj)]
                        if _herm(F, q, H, v, v):
                            pick = (i, v)
                            break
                    if pick:
                        break
                if pick:
                    break
        if pick is None:
            raise ValueError("degenerate Hermitian form")
        i, v = pick
        scale = F.inv(_norm_root(F, q, _herm(F, q, H, v, v)))
        v = [F.mul(scale, x) for x in v]
        rest = work[:i] + work[i + 1:]
        work = []
        for w in rest:
            c = _herm(F, q, H, v, w)
            work.append([F.sub(a, F.mul(c, b)) for a, b in zip(w, v)])
        found.append(v)
    return [[found[j][i] for j in range(n)] for i in range(n)]


def _into_identity_form(F, q, H, g):
    P = orthonormal_basis(F, q, H)
    return _mat_mul(F, _inverse(F, P), _mat_mul(F, g, P))


@lru_cache(maxsize=None)
def _fields(q: int):
    p, f = prime_power(q)
    return make_field(p, 2 * f)


def _elt(F2: FieldSpec, q: int, e: int) -> int:
    """The F_{q^2} element zeta^e, where e is a multiple of (q^6-1)/(q^2-1)."""
    s2 = _modulus(q) // (q * q - 1)
    if e % s2:
        raise ValueError("exponent does not lie in F_{q^2}")
    return F2.gen_power(e // s2)


def _check_member(F, q, g) -> None:
    n = len(g)
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if _mat_mul(F, _star(F, q, g), g) != ident:
        raise AssertionError("representative is not unitary")
    if _det3(F, g) != 1:
        raise AssertionError("representative does not have determinant 1")


def _det3(F, g):
    a = g
    t1 = F.mul(a[0][0], F.sub(F.mul(a[1][1], a[2][2]), F.mul(a[1][2], a[2][1])))
    t2 = F.mul(a[0][1], F.sub(F.mul(a[1][0], a[2][2]), F.mul(a[1][2], a[2][0])))
    t3 = F.mul(a[0][2], F.sub(F.mul(a[1][0], a[2][1]), F.mul(a[1][1], a[2][0])))
    return F.add(F.sub(t1, t2), t3)


ANTI = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
HYP = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]


@lru_cache(maxsize=None)
def _unipotents(q: int):
    """Transvection and regular unipotent for the antidiagonal form."""
    F = _fields(q)
    p, _ = prime_power(q)
    c = 1 if p == 2 else F.gen_power((q + 1) // 2)
    trans = [[1, 0, c], [0, 1, 0], [0, 0, 1]]
    H = ANTI
    for z in range(1, F.size):
        for y in range(F.size):
            u = [[1, 1, y], [0, 1, z], [0, 0, 1]]
            if _mat_mul(F, _star(F, q, u), _mat_mul(F, H, u)) == H:
                return trans, u
    raise AssertionError("no regular unipotent found")


@lru_cache(maxsize=None)
def _coxeter_model(q: int):
    """Multiplication on F_{q^6} as a 3-dim F_{q^2}-space with an invariant Hermitian form."""
    p, f = prime_power(q)
    F2 = _fields(q)
    F6 = make_field(p, 6 * f)
    emb = embedding(F2, F6)
    back = {int(v): i for i, v in enumerate(emb)}
    beta = F6.generator
    basis = [1, beta, F6.mul(beta, beta)]

    def tr(x):
        return F6.add(F6.add(x, F6.pow(x, q * q)), F6.pow(x, q**4))

    T = [[tr(F6.mul(bi, bj)) for bj in basis] for bi in basis]
    Tinv = _inverse(F6, T)

    def coords(x):
        rhs = [tr(F6.mul(x, bi)) for bi in basis]
        return [back[_dot(F6, Tinv[i], rhs)] for i in range(3)]

    H = [[back[tr(F6.mul(F6.pow(bi, q**3), bj))] for bj in basis] for bi in basis]
    return F6, basis, coords, H


def _dot(F, u, v):
    acc = 0
    for a, b in zip(u, v):
        acc = F.add(acc, F.mul(a, b))
    return acc


@lru_cache(maxsize=None)
def _rep_matrix_cached(rep: ClassRep) -> GroupElement:
    q = rep.q
    if q > MATRIX_MAX_Q:
        raise ValueError(f"matrices are built only for q <= {MATRIX_MAX_Q}")
    F = _fields(q)
    p, _ = prime_power(q)
    N = _modulus(q)
    t = rep.type
    if t in ("C1", "C4", "C6", "C6p"):
        g = [[0] * 3 for _ in range(3)]
        for i, e in enumerate(rep.eigen):
            g[i][i] = _elt(F, q, e)
    elif t in ("C2", "C3", "C5"):
        trans, reg = _unipotents(q)
        if t == "C3":
            u = reg
            if rep.ell:
                nu = F.gen_power(rep.ell)
                h = [[nu, 0, 0], [0, 1, 0], [0, 0, F.inv(F.pow(nu, q))]]
                u = _mat_mul(F, h, _mat_mul(F, u, _inverse(F, h)))
            g = u
        else:
            counts = Counter(rep.eigen)
            a = next(e for e, m in counts.items() if m >= 2)
            b = next((e for e, m in counts.items() if m == 1), a)
            s = [[_elt(F, q, a), 0, 0], [0, _elt(F, q, b), 0], [0, 0, _elt(F, q, a)]]
            g = _mat_mul(F, s, trans)
        g = _into_identity_form(F, q, ANTI, g)
    elif t == "C7":
        s1 = N // (q + 1)
        a = next(e for e in rep.eigen if e % s1)
        g = [[_elt(F, q, a), 0, 0], [0, _elt(F, q, -q * a % N), 0], [0, 0, _elt(F, q, (q - 1) * a % N)]]
        g = _into_identity_form(F, q, HYP, g)
    elif t == "C8":
        F6, basis, coords, H = _coxeter_model(q)
        a = F6.gen_power(rep.eigen[0])
        cols = [coords(F6.mul(a, b)) for b in basis]
        g = [[cols[j][i] for j in range(3)] for i in range(3)]
        g = _into_identity_form(F, q, H, g)
    else:
        raise ValueError(t)
    _check_member(F, q, g)
    return GroupElement("SU3", F, tuple(x for row in g for x in row))


def rep_matrix(rep: ClassRep) -> GroupElement:
    return _rep_matrix_cached(rep)


# ---------------------------------------------------------- identification

def _poly_eval_all(F: FieldSpec, coeffs: list[int]) -> np.ndarray:
    """Values of a polynomial (highest degree first) at every field element."""
    xs = np.arange(F.size, dtype=np.int64)
    acc = np.full(F.size, coeffs[0], dtype=np.int64)
    for c in coeffs[1:]:
        acc = F.vadd(F.vmul(acc, xs), np.full(F.size, c, dtype=np.int64))
    return acc


def _syn_div(F, coeffs, r):
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(F.add(c, F.mul(out[-1], r)))
    return out


def identify_type(g: GroupElement, q: Optional[int] = None) -> str:
    """PSU(3,q) type of an element of SU(3,q) (identity Hermitian form)."""
    F = g.field
    if q is None:
        q = g.q
    if g.kind != "SU3" or not g.is_member():
        raise NotInGroup("matrix is not in SU(3,q)")
    a = [list(r) for r in g.rows()]
    tr = F.add(F.add(a[0][0], a[1][1]), a[2][2])
    m2 = 0
    for i, j in ((0, 1), (0, 2), (1, 2)):
        m2 = F.add(m2, F.sub(F.mul(a[i][i], a[j][j]), F.mul(a[i][j], a[j][i])))
    charpoly = [1, F.neg(tr), m2, F.neg(1)]
    roots = []
    poly = charpoly
    while len(poly) > 1:
        vals = _poly_eval_all(F, poly)
        zeros = np.flatnonzero(vals == 0)
        if len(zeros) == 0:
            break
        r = int(zeros[0])
        roots.append(r)
        poly = _syn_div(F, poly, r)
    if not roots:
        return "C8"
    if len(roots) < 3:
        raise AssertionError("characteristic polynomial has an irreducible quadratic factor")
    ident = [[1 if i == j else 0 for j in range(3)] for i in range(3)]

    def shifted(r):
        return [[F.sub(a[i][j], F.mul(r, ident[i][j])) for j in range(3)] for i in range(3)]

    zero = [[0] * 3 for _ in range(3)]
    distinct = sorted(set(roots))
    if len(distinct) == 3:
        on_circle = sum(1 for x in distinct if F.pow(x, q + 1) == 1)
        if on_circle == 1:
            return "C7"
        ratios = {F.element_order(F.div(x, distinct[0])) for x in distinct[1:]}
        return "C6p" if ratios == {3} else "C6"
    if len(distinct) == 2:
        r1, r2 = distinct
        return "C4" if _mat_mul(F, shifted(r1), shifted(r2)) == zero else "C5"
    r = distinct[0]
    if shifted(r) == zero:
        return "C1"
    return "C2" if _mat_mul(F, shifted(r), shifted(r)) == zero else "C3"
