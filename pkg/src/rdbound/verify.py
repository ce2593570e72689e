"""Self-checks run by ``rdbound verify`` and by the test suite.

Every suite yields ``Check`` records; nothing raises on a failed comparison,
so one bad q does not hide the others.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .ffield import NotPrimePower, prime_power

__all__ = ["Check", "prime_powers", "SUITES", "run_suite"]


@dataclass(frozen=True)
class Check:
    suite: str
    q: int
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f"  {self.detail}" if self.detail else ""
        return f"{status} {self.suite} q={self.q} {self.name}{tail}"


def prime_powers(lo: int, hi: int) -> list[int]:
    out = []
    for q in range(max(lo, 2), hi + 1):
        try:
            prime_power(q)
        except NotPrimePower:
            continue
        out.append(q)
    return out


def _guard(suite: str, q: int, name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported with its cause
        return Check(suite, q, name, False, f"{type(exc).__name__}: {exc}")
    return Check(suite, q, name, ok, detail)


def power_table_checks(q_max: int, q_min: int = 2) -> Iterator[Check]:
    """Representative power distributions against the symbolic tables, k = 2, 3, 4."""
    from .psu3_data import ColumnSumMismatch, symbolic_power_table
    from .psu3_reps import power_distribution

    for q in prime_powers(q_min, q_max):
        for k in (2, 3, 4):
            def run(q=q, k=k):
                try:
                    sym = symbolic_power_table(q, k)
                except ColumnSumMismatch as exc:
                    return False, str(exc)
                got = power_distribution(q, k, check=False)
                want = {src: col for src, col in sym.items() if col}
                return got == want, "" if got == want else "distribution differs"
            yield _guard("power-tables", q, f"k={k}", run)


def molien_checks(q_max: int, q_min: int = 2) -> Iterator[Check]:
    """m_2 = m_3 = 0 and m_4 = closed form, through both the symbolic and the representative path."""
    from .molien import closed_form_m4, molien_prefix, psu3_input, psu3_m4_symbolic

    for q in prime_powers(q_min, q_max):
        want = (0, 0, closed_form_m4(q))

        def sym(q=q, want=want):
            got = psu3_m4_symbolic(q)
            return got == want, f"(m2, m3, m4) = {got}"

        def reps(q=q, want=want):
            got = molien_prefix(psu3_input(q, K=4), 4).coefficients[2:]
            return got == want, f"(m2, m3, m4) = {got}"

        yield _guard("molien", q, "symbolic", sym)
        yield _guard("molien", q, "representatives", reps)


def psu3_oracle_checks(q: int, max_order: int, K: int = 6) -> Iterator[Check]:
    from .oracle import conjugacy_classes, enumerate_group, power_distribution_oracle, quotient_by_center
    from .psu3_data import class_spectrum
    from .psu3_reps import build_representatives, identify_type, power_distribution

    try:
        G = enumerate_group("SU3", q, max_order)
        P = conjugacy_classes(quotient_by_center(G))
        P.with_types(lambda g: identify_type(g, q))
    except Exception as exc:
        yield Check("oracle", q, "PSU3 enumerate", False, f"{type(exc).__name__}: {exc}")
        return
    spec = class_spectrum(q)

    def counts():
        got = Counter(P.types)
        want = {t.label: t.count for t in spec.types if t.count}
        return dict(got) == want, f"{len(P)} classes"

    def cents():
        bad = [c for c in range(len(P)) if int(P.centralizer_orders[c]) != spec[P.types[c]].centralizer]
        return not bad, f"{len(bad)} mismatches"

    def transversal():
        reps = build_representatives(q)
        ids = {P.class_of(r.matrix) for r in reps}
        return len(ids) == len(reps) == len(P), f"{len(ids)} distinct of {len(P)}"

    yield _guard("oracle", q, "PSU3 class counts", counts)
    yield _guard("oracle", q, "PSU3 centralizers", cents)
    yield _guard("oracle", q, "PSU3 representatives", transversal)
    for k in range(2, K + 1):
        def dist(k=k):
            _, D = power_distribution_oracle(P, k, by_type=True)
            got: dict = {}
            for (tgt, src), n in D.items():
                got.setdefault(src, {})[tgt] = n
            return got == power_distribution(q, k, check=False), ""
        yield _guard("oracle", q, f"PSU3 powers k={k}", dist)


def sl2_oracle_checks(q: int, max_order: int, K: int = 12) -> Iterator[Check]:
    from .oracle import conjugacy_classes, enumerate_group, power_distribution_oracle
    from .sl2_chars import label_element, sl2_class_data

    try:
        G = enumerate_group("SL2", q, max_order)
        P = conjugacy_classes(G)
    except Exception as exc:
        yield Check("oracle", q, "SL2 enumerate", False, f"{type(exc).__name__}: {exc}")
        return
    data = sl2_class_data(q)
    labels = [label_element(G.field, q, G.elements[r]) for r in P.reps]

    def classes():
        ok = sorted(labels) == sorted(c.label for c in data.classes)
        ok = ok and all(int(P.sizes[i]) == data.classes[data.index[lab]].size for i, lab in enumerate(labels))
        return ok, f"{len(P)} classes"

    def powers():
        bad = 0
        for k in range(2, K + 1):
            target, _ = power_distribution_oracle(P, k)
            bad += sum(labels[int(target[i])] != data.power_label(lab, k) for i, lab in enumerate(labels))
        return bad == 0, f"{bad} mismatches for k <= {K}"

    yield _guard("oracle", q, "SL2 classes", classes)
    yield _guard("oracle", q, "SL2 power maps", powers)


def oracle_checks(q_max: int, max_order: int, q_min: int = 2, sl2_q_max: int = 13) -> Iterator[Check]:
    from .oracle import group_order

    for q in prime_powers(q_min, q_max):
        if group_order("SU3", q) <= max_order:
            yield from psu3_oracle_checks(q, max_order)
    for q in prime_powers(max(q_min, 4), sl2_q_max):
        if group_order("SL2", q) <= max_order:
            yield from sl2_oracle_checks(q, max_order)


def expected_projective_dim(q: int) -> int:
    """Smallest nontrivial degree of SL(2,q): (q-1)/2 for odd q, q-1 for even q."""
    return (q - 1) // 2 if q % 2 else q - 1


def char_checks(q_max: int, q_min: int = 2) -> Iterator[Check]:
    """Orthogonality, sum of squared degrees and the smallest projective degree for SL(2,q)."""
    from .sl2_chars import MAX_Q, sl2_character_table, smallest_projective_candidates

    for q in prime_powers(q_min, min(q_max, MAX_Q)):
        def orth(q=q):
            table = sl2_character_table(q, check=True)
            return True, f"{len(table)} characters"

        def squares(q=q):
            table = sl2_character_table(q)
            total = sum(d * d for d in table.degrees)
            return total == table.classes.order, f"sum = {total}"

        yield _guard("chars", q, "orthogonality", orth)
        yield _guard("chars", q, "sum of squared degrees", squares)
        if q >= 4:
            def smallest(q=q):
                deg = smallest_projective_candidates(q)[0].degree
                want = expected_projective_dim(q)
                return deg == want, f"degree {deg}"
            yield _guard("chars", q, "smallest projective degree", smallest)


SUITES = {
    "power-tables": power_table_checks,
    "molien": molien_checks,
    "oracle": oracle_checks,
    "chars": char_checks,
}


def run_suite(target: str, q_max: int, q_min: int = 2, max_order: int = 2_000_000) -> Iterable[Check]:
    if target not in SUITES:
        raise ValueError(f"unknown verification target {target!r}")
    if target == "oracle":
        return oracle_checks(q_max, max_order, q_min)
    return SUITES[target](q_max, q_min)
