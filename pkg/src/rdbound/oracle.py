"""Brute-force matrix groups: SL(2,q) over F_q and SU(3,q) over F_{q^2}.

Everything here is enumeration.  Elements are stored as rows of encoded
field entries (row-major), sorted by a canonical code built from discrete
logs, so the least element of any set is deterministic.  Conjugacy classes
are orbits of the conjugation action of a generating set, found as connected
components of the corresponding permutation graph.

The unitary group uses the identity Hermitian form:
SU(3,q) = {g : conj(g)^T g = 1, det g = 1} with conj(x) = x**q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .ffield import FieldSpec, SizeExceeded, make_field, prime_power

__all__ = [
    "GroupElement",
    "MatrixGroup",
    "QuotientGroup",
    "ClassPartition",
    "SizeExceeded",
    "HARD_MAX_ORDER",
    "DEFAULT_MAX_ORDER",
    "group_order",
    "enumerate_group",
    "conjugacy_classes",
    "quotient_by_center",
    "power_distribution_oracle",
    "batch_matmul",
    "matmul",
    "matpow",
]

HARD_MAX_ORDER = 10**7
DEFAULT_MAX_ORDER = 2 * 10**6


def group_order(kind: str, q: int) -> int:
    if kind == "SL2":
        return q * (q * q - 1)
    if kind == "SU3":
        return q**3 * (q * q - 1) * (q**3 + 1)
    raise ValueError(f"unknown group kind {kind!r}")


@dataclass(frozen=True)
class GroupElement:
    """A matrix with entries encoded in ``field``; row-major."""

    kind: str
    field: FieldSpec
    entries: tuple[int, ...]

    @property
    def n(self) -> int:
        return 2 if self.kind == "SL2" else 3

    @property
    def q(self) -> int:
        return self.field.size if self.kind == "SL2" else int(round(self.field.size**0.5))

    def rows(self) -> list[list[int]]:
        n = self.n
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.n, self.n)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        out = matmul(self.field, self.as_array(), other.as_array())
        return GroupElement(self.kind, self.field, tuple(int(x) for x in out.ravel()))

    def __pow__(self, k: int) -> "GroupElement":
        out = matpow(self.field, self.as_array(), k)
        return GroupElement(self.kind, self.field, tuple(int(x) for x in out.ravel()))

    def det(self) -> int:
        return _det(self.field, self.as_array())

    def is_member(self) -> bool:
        F = self.field
        if self.det() != 1:
            return False
        if self.kind == "SL2":
            return True
        g = self.as_array()
        q = self.q
        gh = F.vpow(g, q).T
        return bool(np.array_equal(matmul(F, gh, g), _identity(self.n)))


def _identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def batch_matmul(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Products A[i] @ B[i] (or with a single broadcast matrix) over F."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    n = A.shape[-1]
    shape = np.broadcast_shapes(A.shape, B.shape)
    out = np.zeros(shape, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            acc = F.vmul(A[..., i, 0], B[..., 0, j])
            for k in range(1, n):
                acc = F.vadd(acc, F.vmul(A[..., i, k], B[..., k, j]))
            out[..., i, j] = acc
    return out


def matmul(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return batch_matmul(F, A, B)


def matpow(F: FieldSpec, A: np.ndarray, k: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[-1]
    if k < 0:
        A = _batch_inverse(F, A)
        k = -k
    result = np.broadcast_to(_identity(n), A.shape).copy()
    base = A
    while k:
        if k & 1:
            result = batch_matmul(F, result, base)
        k >>= 1
        if k:
            base = batch_matmul(F, base, base)
    return result


def _det(F: FieldSpec, g: np.ndarray) -> int:
    g = [[int(x) for x in row] for row in g]
    if len(g) == 2:
        return F.sub(F.mul(g[0][0], g[1][1]), F.mul(g[0][1], g[1][0]))
    total = 0
    for j, sign in ((0, 1), (1, -1), (2, 1)):
        minor = [[g[r][c] for c in range(3) if c != j] for r in (1, 2)]
        term = F.mul(g[0][j], _det(F, minor))
        total = F.add(total, term) if sign > 0 else F.sub(total, term)
    return total


def _batch_inverse(F: FieldSpec, A: np.ndarray) -> np.ndarray:
    # only for determinant-one matrices: inverse is the adjugate
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[-1]
    if n == 2:
        out = np.empty_like(A)
        out[..., 0, 0] = A[..., 1, 1]
        out[..., 1, 1] = A[..., 0, 0]
        out[..., 0, 1] = F.vneg(A[..., 0, 1])
        out[..., 1, 0] = F.vneg(A[..., 1, 0])
        return out
    out = np.empty_like(A)
    for i in range(3):
        for j in range(3):
            r = [x for x in range(3) if x != j]
            c = [x for x in range(3) if x != i]
            m = F.vadd(F.vmul(A[..., r[0], c[0]], A[..., r[1], c[1]]),
                       F.vneg(F.vmul(A[..., r[0], c[1]], A[..., r[1], c[0]])))
            out[..., i, j] = m if (i + j) % 2 == 0 else F.vneg(m)
    return out


class MatrixGroup:
    """A fully enumerated matrix group, elements sorted by canonical code."""

    def __init__(self, kind: str, q: int, F: FieldSpec, elements: np.ndarray):
        self.kind = kind
        self.q = q
        self.field = F
        self.n = elements.shape[-1]
        codes = self._codes(elements.reshape(len(elements), -1))
        order = np.argsort(codes, kind="stable")
        self.codes = codes[order]
        self.elements = elements[order]
        if len(self.codes) > 1 and np.any(self.codes[1:] == self.codes[:-1]):
            raise AssertionError("duplicate elements in enumeration")

    def __len__(self) -> int:
        return len(self.codes)

    @property
    def order(self) -> int:
        return len(self.codes)

    def _codes(self, flat: np.ndarray) -> np.ndarray:
        Q = self.field.size
        digits = self.field.log[flat] + 1  # 0 encodes the zero entry
        code = np.zeros(len(flat), dtype=np.int64)
        for col in range(flat.shape[1]):
            code = code * Q + digits[:, col]
        return code

    def index_of(self, mats: np.ndarray) -> np.ndarray:
        """Positions of the given matrices; raises if any is not in the group."""
        mats = np.asarray(mats, dtype=np.int64)
        flat = mats.reshape(-1, self.n * self.n)
        codes = self._codes(flat)
        pos = np.searchsorted(self.codes, codes)
        pos = np.minimum(pos, len(self.codes) - 1)
        if not np.all(self.codes[pos] == codes):
            raise KeyError("matrix not in group")
        return pos

    def element(self, i: int) -> GroupElement:
        return GroupElement(self.kind, self.field, tuple(int(x) for x in self.elements[i].ravel()))

    def __iter__(self) -> Iterator[GroupElement]:
        for i in range(len(self)):
            yield self.element(i)

    def __contains__(self, g: GroupElement) -> bool:
        try:
            self.index_of(g.as_array())
        except KeyError:
            return False
        return True

    def identity_index(self) -> int:
        return int(self.index_of(_identity(self.n))[0])

    def multiply_perm(self, s: np.ndarray, side: str = "left") -> np.ndarray:
        prod = batch_matmul(self.field, s, self.elements) if side == "left" else \
            batch_matmul(self.field, self.elements, s)
        return self.index_of(prod)

    def conjugation_perm(self, s: np.ndarray) -> np.ndarray:
        s_inv = _batch_inverse(self.field, s)
        return self.index_of(batch_matmul(self.field, batch_matmul(self.field, s_inv, self.elements), s))

    def power_indices(self, k: int) -> np.ndarray:
        return self.index_of(matpow(self.field, self.elements, k))

    @cached_property
    def generators(self) -> np.ndarray:
        """A small generating set, drawn with a fixed seed and verified."""
        rng = np.random.default_rng(20240601)
        gens: list[np.ndarray] = []
        while True:
            gens.append(self.elements[int(rng.integers(len(self)))])
            if len(gens) < 2:
                continue
            perms = [self.multiply_perm(g, "right") for g in gens]
            ncomp, _ = _components(len(self), perms)
            if ncomp == 1:
                return np.array(gens)
            if len(gens) > 12:
                raise AssertionError("failed to find generators")

    @cached_property
    def center_indices(self) -> np.ndarray:
        fixed = np.ones(len(self), dtype=bool)
        for g in self.generators:
            fixed &= self.conjugation_perm(g) == np.arange(len(self))
        return np.flatnonzero(fixed)


def _components(n: int, perms: Sequence[np.ndarray]) -> tuple[int, np.ndarray]:
    if n == 1:
        return 1, np.zeros(1, dtype=np.int64)
    src = np.concatenate([np.arange(n)] * len(perms))
    dst = np.concatenate(perms)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n)).tocsr()
    return connected_components(graph, directed=True, connection="weak")


def _sl2_elements(F: FieldSpec) -> np.ndarray:
    Q = F.size
    idx = np.arange(Q, dtype=np.int64)
    out = []
    # a != 0: d = (1 + b c) / a
    a, b, c = np.meshgrid(idx[1:], idx, idx, indexing="ij")
    a, b, c = a.ravel(), b.ravel(), c.ravel()
    d = F.vmul(F.vadd(np.ones_like(b), F.vmul(b, c)), F.vinv(a))
    out.append(np.stack([a, b, c, d], axis=1))
    # a == 0: -b c = 1, d free
    b, d = np.meshgrid(idx[1:], idx, indexing="ij")
    b, d = b.ravel(), d.ravel()
    c = F.vneg(F.vinv(b))
    out.append(np.stack([np.zeros_like(b), b, c, d], axis=1))
    return np.concatenate(out).reshape(-1, 2, 2)


def _su3_elements(F: FieldSpec, q: int) -> np.ndarray:
    Q = F.size
    idx = np.arange(Q, dtype=np.int64)
    x, y, z = (a.ravel() for a in np.meshgrid(idx, idx, idx, indexing="ij"))

    def conj(a):
        return F.vpow(a, q)

    def norm(a):
        return F.vpow(a, q + 1)

    nrm = F.vadd(F.vadd(norm(x), norm(y)), norm(z))
    unit = np.stack([x, y, z], axis=1)[nrm == 1]
    uc = conj(unit)
    blocks = []
    for u in unit:
        h = F.vadd(F.vadd(F.vmul(u[0], uc[:, 0]), F.vmul(u[1], uc[:, 1])), F.vmul(u[2], uc[:, 2]))
        v = unit[h == 0]
        cross = np.stack([
            F.vadd(F.vmul(u[1], v[:, 2]), F.vneg(F.vmul(u[2], v[:, 1]))),
            F.vadd(F.vmul(u[2], v[:, 0]), F.vneg(F.vmul(u[0], v[:, 2]))),
            F.vadd(F.vmul(u[0], v[:, 1]), F.vneg(F.vmul(u[1], v[:, 0]))),
        ], axis=1)
        w = conj(cross)
        mats = np.empty((len(v), 3, 3), dtype=np.int64)
        mats[:, 0, :] = u
        mats[:, 1, :] = v
        mats[:, 2, :] = w
        blocks.append(mats)
    out = np.concatenate(blocks)
    return out


def enumerate_group(kind: str, q: int, max_order: int = DEFAULT_MAX_ORDER) -> MatrixGroup:
    """All elements of SL(2,q) or SU(3,q)."""
    p, f = prime_power(q)
    order = group_order(kind, q)
    cap = min(max_order, HARD_MAX_ORDER)
    if order > cap:
        raise SizeExceeded(f"|{kind}({q})| = {order} exceeds the oracle budget {cap}")
    if kind == "SL2":
        F = make_field(p, f)
        els = _sl2_elements(F)
    else:
        F = make_field(p, 2 * f)
        els = _su3_elements(F, q)
    group = MatrixGroup(kind, q, F, els)
    if group.order != order:
        raise AssertionError(f"enumerated {group.order} elements, expected {order}")
    return group


@dataclass
class ClassPartition:
    """Conjugacy classes of an enumerated group (or of its central quotient).

    ``labels[i]`` is the class of element i.  For a quotient, classes are
    classes of cosets, ``sizes`` count cosets and ``group_order`` is the order
    of the quotient.
    """

    group: MatrixGroup
    labels: np.ndarray
    reps: np.ndarray  # element index of each class representative
    sizes: np.ndarray
    group_order: int
    center: Optional[np.ndarray] = None  # set for quotients
    types: Optional[list[str]] = field(default=None)

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def centralizer_orders(self) -> np.ndarray:
        return self.group_order // self.sizes

    def representative(self, c: int) -> GroupElement:
        return self.group.element(int(self.reps[c]))

    def class_of(self, g: GroupElement) -> int:
        return int(self.labels[self.group.index_of(g.as_array())[0]])

    def with_types(self, labeler) -> "ClassPartition":
        self.types = [labeler(self.representative(c)) for c in range(len(self))]
        return self


def _partition(group: MatrixGroup, perms: list[np.ndarray], cover: int) -> ClassPartition:
    ncomp, raw = _components(len(group), perms)
    # relabel classes by their least element (elements are sorted by code)
    first = np.full(ncomp, len(group), dtype=np.int64)
    np.minimum.at(first, raw, np.arange(len(group)))
    order = np.argsort(first)
    relabel = np.empty(ncomp, dtype=np.int64)
    relabel[order] = np.arange(ncomp)
    labels = relabel[raw]
    reps = first[order]
    sizes = np.bincount(labels, minlength=ncomp) // cover
    return ClassPartition(group, labels, reps, sizes, len(group) // cover)


def conjugacy_classes(G) -> ClassPartition:
    """Conjugacy classes of a MatrixGroup or of a QuotientGroup."""
    if isinstance(G, QuotientGroup):
        group = G.group
        perms = [group.conjugation_perm(g) for g in group.generators]
        perms += [group.multiply_perm(group.elements[z], "left") for z in G.center]
        part = _partition(group, perms, len(G.center))
        part.center = G.center
        return part
    perms = [G.conjugation_perm(g) for g in G.generators]
    return _partition(G, perms, 1)


@dataclass
class QuotientGroup:
    """G / Z(G); cosets are compared through ``coset_of``."""

    group: MatrixGroup
    center: np.ndarray  # element indices of Z(G)

    @cached_property
    def coset_of(self) -> np.ndarray:
        perms = [self.group.multiply_perm(self.group.elements[z], "left") for z in self.center]
        lab = np.arange(len(self.group))
        for perm in perms:
            lab = np.minimum(lab, perm)
        return lab  # least element index of each coset

    @property
    def order(self) -> int:
        return len(self.group) // len(self.center)

    def __len__(self) -> int:
        return self.order

    def representatives(self) -> np.ndarray:
        return np.unique(self.coset_of)

    def same_coset(self, g: GroupElement, h: GroupElement) -> bool:
        i, j = self.group.index_of(np.stack([g.as_array(), h.as_array()]))
        return bool(self.coset_of[i] == self.coset_of[j])


def quotient_by_center(G: MatrixGroup) -> QuotientGroup:
    return QuotientGroup(G, G.center_indices)


def power_distribution_oracle(P: ClassPartition, k: int, by_type: bool = False):
    """Where the k-th powers of class representatives land.

    Returns the class map (source class -> target class) and either a
    class x class count matrix ``M[target, source]`` or, with ``by_type``,
    a dict {(target_type, source_type): count}.
    """
    if k < 1:
        raise ValueError("exponent must be positive")
    group = P.group
    reps = group.elements[P.reps]
    images = group.index_of(matpow(group.field, reps, k))
    target = P.labels[images]
    if by_type:
        if P.types is None:
            raise ValueError("partition has no type labels")
        counts: dict[tuple[str, str], int] = {}
        for s, t in enumerate(target):
            key = (P.types[int(t)], P.types[s])
            counts[key] = counts.get(key, 0) + 1
        return target, counts
    M = np.zeros((len(P), len(P)), dtype=np.int64)
    M[target, np.arange(len(P))] = 1
    return target, M


def power_map_is_class_function(P: ClassPartition, k: int) -> bool:
    """Every element of a class has its k-th power in the same class."""
    group = P.group
    images = group.power_indices(k)
    img_class = P.labels[images]
    expected = img_class[P.reps][P.labels]
    return bool(np.array_equal(img_class, expected))


def centralizer_order_direct(group: MatrixGroup, i: int) -> int:
    g = group.elements[i]
    left = batch_matmul(group.field, g, group.elements)
    right = batch_matmul(group.field, group.elements, g)
    return int(np.sum(np.all((left == right).reshape(len(group), -1), axis=1)))
