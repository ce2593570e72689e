"""Choosing invariant degrees and turning them into resolvent degree bounds.

Given invariant counts m_d of a representation V of G, a multiset of degrees
d_1 <= ... <= d_r is admissible when

    * d_1 * ... * d_r < mu(G)                       (the cut is irreducible)
    * RD(d_1 * ... * d_r) <= dim V - 1 - r          (the ladder condition)
    * each d is still available after discounting products of earlier choices,

and then RD(G) <= dim V - 1 - r.  The search below is exhaustive; both
constraints are monotone along extensions so the tree is small.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Mapping, Optional, Sequence

from .ffield import prime_power
from .molien import DEFAULT_K, closed_form_m4, molien_prefix, psl2_input, psu3_input
from .rd_core import MU_COMPAT, RdLadder, default_ladder, mu

__all__ = [
    "Blocker",
    "BoundCertificate",
    "AsymptoticResult",
    "InsufficientQuartics",
    "InvalidCertificate",
    "TableRow",
    "free_algebra_dim",
    "available_counts",
    "select_degrees",
    "verify_certificate",
    "brute_force_best",
    "asymptotic_bound",
    "family_key",
    "group_bound",
    "make_row",
    "make_table",
    "LITERATURE_BOUNDS",
    "INDEPENDENCE_ASSUMPTION",
]

INDEPENDENCE_ASSUMPTION = (
    "chosen invariants are assumed algebraically independent of products of earlier ones; "
    "counts are discounted by the free algebra on the chosen degrees"
)

# Known bounds not visible as dim V - 1 or RD(mu): A5 (the quintic), and Klein's
# solutions for PSL(2,7) and PSL(2,11).
LITERATURE_BOUNDS = {"PSU2": {4: 1, 5: 1, 7: 1, 11: 2}, "PSU3": {}}


class Blocker(str, Enum):
    IRREDUCIBILITY = "Irreducibility"
    LADDER = "LadderCondition"
    NO_INVARIANTS = "NoInvariants"


class InsufficientQuartics(AssertionError):
    """Fewer quartic invariants than the asymptotic argument needs."""


class InvalidCertificate(AssertionError):
    pass


def free_algebra_dim(generator_degrees: Sequence[int], d: int) -> int:
    """Monomials of weighted degree d in free generators of the given degrees."""
    if d < 0:
        return 0
    coeffs = [1] + [0] * d
    for g in generator_degrees:
        if g < 1:
            raise ValueError("generator degrees must be positive")
        for n in range(g, d + 1):
            coeffs[n] += coeffs[n - g]
    return coeffs[d]


def available_counts(m: Mapping[int, int], chosen: Sequence[int], d: int) -> int:
    return max(0, m.get(d, 0) - free_algebra_dim(chosen, d))


@dataclass(frozen=True)
class BoundCertificate:
    family: str
    q: int
    dim_v: int
    mu: int
    counts: dict[int, int]
    degrees: tuple[int, ...]
    product: int
    rd_product: int
    bound: int
    bound_mu: int
    max_degree: int
    blockers: tuple[str, ...]
    blocked_extension: Optional[tuple[int, ...]]
    assumption: str = INDEPENDENCE_ASSUMPTION

    @property
    def r(self) -> int:
        return len(self.degrees)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["counts"] = {str(k): v for k, v in sorted(self.counts.items())}
        out["degrees"] = list(self.degrees)
        out["blockers"] = list(self.blockers)
        out["blocked_extension"] = None if self.blocked_extension is None else list(self.blocked_extension)
        return out


def _admissible_step(m, chosen, d, product, dim_v, mu_value, ladder, compat):
    """Reasons why appending d to chosen fails; empty when it succeeds."""
    if available_counts(m, chosen, d) < 1:
        return {Blocker.NO_INVARIANTS}
    reasons = set()
    p = product * d
    if p >= mu_value:
        reasons.add(Blocker.IRREDUCIBILITY)
    if ladder(p, compat) > dim_v - 1 - (len(chosen) + 1):
        reasons.add(Blocker.LADDER)
    return reasons


def _search(m, dim_v, mu_value, ladder, compat, K):
    best: tuple = ((), 1)

    def better(a, b):
        # more degrees, then smaller product, then lexicographic
        return (-len(a[0]), a[1], a[0]) < (-len(b[0]), b[1], b[0])

    def dfs(chosen: list[int], product: int):
        nonlocal best
        cand = (tuple(chosen), product)
        if better(cand, best):
            best = cand
        start = chosen[-1] if chosen else 2
        for d in range(start, K + 1):
            if product * d >= mu_value:
                break
            if not _admissible_step(m, chosen, d, product, dim_v, mu_value, ladder, compat):
                chosen.append(d)
                dfs(chosen, product * d)
                chosen.pop()

    dfs([], 1)
    return best


def _blockers(m, degrees, product, dim_v, mu_value, ladder, compat, K):
    """Obstruction to the cheapest extension of the winning multiset."""
    chosen = list(degrees)
    for d in range(2, K + 1):
        if available_counts(m, chosen, d) >= 1:
            reasons = _admissible_step(m, chosen, d, product, dim_v, mu_value, ladder, compat)
            ordered = tuple(b.value for b in Blocker if b in reasons)
            return ordered, tuple(sorted(chosen + [d]))
    # nothing left up to K: any further invariant has degree > K
    reasons = [Blocker.NO_INVARIANTS.value]
    if product * (K + 1) >= mu_value:
        reasons.insert(0, Blocker.IRREDUCIBILITY.value)
    return tuple(reasons), None


def select_degrees(m: Mapping[int, int], dim_v: int, mu_value: int, ladder: Optional[RdLadder] = None,
                   paper_compat: bool = False, K: Optional[int] = None, family: str = "",
                   q: int = 0, bound_mu: Optional[int] = None) -> BoundCertificate:
    ladder = ladder or default_ladder()
    if K is None:
        K = max([d for d in m if m[d]] + [1])
    counts = {d: int(m.get(d, 0)) for d in range(2, K + 1)}
    degrees, product = _search(counts, dim_v, mu_value, ladder, paper_compat, K)
    blockers, ext = _blockers(counts, degrees, product, dim_v, mu_value, ladder, paper_compat, K)
    cert = BoundCertificate(
        family=family,
        q=q,
        dim_v=dim_v,
        mu=mu_value,
        counts=counts,
        degrees=degrees,
        product=product,
        rd_product=ladder(product, paper_compat) if degrees else 0,
        bound=dim_v - 1 - len(degrees),
        bound_mu=bound_mu if bound_mu is not None else ladder(mu_value, paper_compat),
        max_degree=K,
        blockers=blockers,
        blocked_extension=ext,
    )
    verify_certificate(cert, ladder, paper_compat)
    return cert


def verify_certificate(cert: BoundCertificate, ladder: Optional[RdLadder] = None,
                       paper_compat: bool = False) -> None:
    """Re-check both premises and the availability of every chosen degree."""
    ladder = ladder or default_ladder()
    degs = cert.degrees
    if list(degs) != sorted(degs) or any(d < 2 for d in degs):
        raise InvalidCertificate("degrees must be sorted and at least 2")
    if math.prod(degs) != cert.product:
        raise InvalidCertificate("product mismatch")
    if cert.bound != cert.dim_v - 1 - len(degs):
        raise InvalidCertificate("bound is not dim V - 1 - r")
    if degs:
        if not cert.product < cert.mu:
            raise InvalidCertificate(f"product {cert.product} is not below mu = {cert.mu}")
        if ladder(cert.product, paper_compat) > cert.bound:
            raise InvalidCertificate(f"RD({cert.product}) exceeds {cert.bound}")
    for i, d in enumerate(degs):
        if available_counts(cert.counts, degs[:i], d) < 1:
            raise InvalidCertificate(f"no independent invariant left in degree {d}")


def brute_force_best(m: Mapping[int, int], dim_v: int, mu_value: int, ladder: Optional[RdLadder] = None,
                     paper_compat: bool = False, K: int = 8) -> int:
    """Largest admissible r, by plain enumeration of multisets (no pruning)."""
    from itertools import combinations_with_replacement

    ladder = ladder or default_ladder()
    best = 0
    r = 1
    while 2**r < mu_value:
        found = False
        for degs in combinations_with_replacement(range(2, K + 1), r):
            p = math.prod(degs)
            if p >= mu_value or ladder(p, paper_compat) > dim_v - 1 - r:
                continue
            if all(available_counts(m, degs[:i], d) >= 1 for i, d in enumerate(degs)):
                found = True
                break
        if found:
            best = r
        r += 1
    return best


# ------------------------------------------------------------ asymptotics

@dataclass(frozen=True)
class AsymptoticResult:
    q: int
    r: int
    bound: int
    formula: float
    m4: int


def asymptotic_bound(q: int) -> AsymptoticResult:
    """All-quartic bound q^2 - q - 1 - r with r = max{r : 4^r + r <= q^2 - q + 6}."""
    prime_power(q)
    if q < 23:
        raise ValueError("the asymptotic argument is stated for q >= 23")
    n = q * q - q
    r = 0
    while 4 ** (r + 1) + (r + 1) <= n + 6:
        r += 1
    if 4**r >= q**3 + 1:
        raise AssertionError("4^r must stay below mu(PSU(3,q))")
    m4 = closed_form_m4(q)
    if m4 < r:
        raise InsufficientQuartics(f"q = {q}: need {r} quartics, only {m4}")
    formula = n - math.log(n + 6, 4)
    return AsymptoticResult(q, r, n - 1 - r, formula, m4)


# ------------------------------------------------------------ tables

FAMILIES = {"psl2": "PSU2", "psu2": "PSU2", "psu3": "PSU3"}


def family_key(name: str) -> str:
    try:
        return FAMILIES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; use psu2 or psu3") from None


@dataclass(frozen=True)
class TableRow:
    family: str
    q: int
    dim_v: int
    bound: int
    degrees: tuple[int, ...]
    mu: int
    bound_mu: int
    colour: str
    blockers: tuple[str, ...]
    flagged: bool
    certificate: BoundCertificate

    @property
    def degrees_text(self) -> str:
        return ", ".join(map(str, self.degrees)) if self.degrees else "None"

    @property
    def blocker(self) -> str:
        return {"purple": "no-improvement", "orange": "irreducibility", "pink": "ladder"}[self.colour]

    def csv_fields(self) -> list:
        return [self.q, self.dim_v, self.bound, self.degrees_text, self.mu, self.bound_mu, self.blocker]


def _prefix(family: str, q: int, K: int, character: Optional[str] = None):
    if family == "PSU2":
        values = None
        if character is not None:
            from .sl2_chars import sl2_character_table

            values = sl2_character_table(q).row(character)
        data = psl2_input(q, values, K=K)
    else:
        data = psu3_input(q, K=K)
    return data.degree, molien_prefix(data, K)


def group_bound(family: str, q: int, paper_compat: bool = False, K: Optional[int] = None,
                ladder: Optional[RdLadder] = None, character: Optional[str] = None) -> BoundCertificate:
    """Full pipeline for one group."""
    family = family_key(family)
    ladder = ladder or default_ladder()
    K = K or DEFAULT_K["psl2" if family == "PSU2" else "psu3"]
    # PSU(3,2) is solvable; its row is still tabulated with mu = 9
    mu_value = mu(family, q, paper_compat, allow_nonsimple=True)
    dim_v, prefix = _prefix(family, q, K, character)
    m = {k: prefix[k] for k in range(2, K + 1)}
    return select_degrees(m, dim_v, mu_value, ladder, paper_compat, K, family, q,
                          bound_mu=ladder(mu_value, paper_compat))


def _colour(cert: BoundCertificate) -> str:
    # ties with RD(mu) count as an improvement; ties with an explicit result do not
    lit = LITERATURE_BOUNDS[cert.family].get(cert.q)
    if not cert.degrees or cert.bound > cert.bound_mu or (lit is not None and cert.bound >= lit):
        return "purple"
    return "orange" if Blocker.IRREDUCIBILITY.value in cert.blockers else "pink"


def _flagged(family: str, q: int, ladder: Optional[RdLadder] = None) -> bool:
    if q in MU_COMPAT[family]:
        return True
    # bound-by-mu uses the ladder entry that --paper-compat overrides
    ladder = ladder or default_ladder()
    n = mu(family, q, allow_nonsimple=True)
    return n in ladder.compat


def make_row(family: str, q: int, paper_compat: bool = False, K: Optional[int] = None,
             ladder: Optional[RdLadder] = None) -> TableRow:
    family = family_key(family)
    cert = group_bound(family, q, paper_compat, K, ladder)
    return TableRow(family, q, cert.dim_v, cert.bound, cert.degrees, cert.mu, cert.bound_mu,
                    _colour(cert), cert.blockers, _flagged(family, q, ladder), cert)


def make_table(family: str, qs: Sequence[int], paper_compat: bool = False, K: Optional[int] = None,
               jobs: int = 1, ladder: Optional[RdLadder] = None) -> list[TableRow | Exception]:
    """One row per q, in order.  A failing row is returned as its exception.

    Rows are independent; with jobs > 1 they are computed in worker processes.
    """
    qs = list(qs)
    if jobs > 1 and len(qs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(make_row, family, q, paper_compat, K, ladder) for q in qs]
            out = []
            for f in futures:
                try:
                    out.append(f.result())
                except Exception as exc:
                    out.append(exc)
            return out
    out = []
    for q in qs:
        try:
            out.append(make_row(family, q, paper_compat, K, ladder))
        except Exception as exc:
            out.append(exc)
    return out
