"""Command line interface.

Exit codes: 0 success, 1 a check or computation failed, 2 usage error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import click

from .ffield import FieldError, prime_power
from .oracle import HARD_MAX_ORDER, DEFAULT_MAX_ORDER
from .rd_core import LADDER_ENV, RdLadder, default_ladder, load_ladder

FORMATS = ("text", "csv", "json")
TABLE_COLUMNS = ("q", "dim_V", "bound_thm", "degrees", "mu", "bound_mu", "blocker")


@dataclass
class RunConfig:
    command: str
    family: Optional[str] = None
    q: Optional[int] = None
    q_min: Optional[int] = None
    q_max: Optional[int] = None
    max_degree: Optional[int] = None
    oracle_max_order: int = DEFAULT_MAX_ORDER
    paper_compat: bool = False
    fmt: str = "text"
    ladder_path: Optional[str] = None
    jobs: int = 1
    extra: dict = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        if self.fmt not in FORMATS:
            raise click.UsageError(f"--format must be one of {', '.join(FORMATS)}")
        if self.family is not None and self.family.lower() not in ("psu2", "psl2", "psu3"):
            raise click.UsageError("family must be psu2 (alias psl2) or psu3")
        for name in ("q", "q_min", "q_max"):
            value = getattr(self, name)
            if value is not None and value < 2:
                raise click.UsageError(f"--{name.replace('_', '-')} must be at least 2")
        if self.q is not None:
            try:
                prime_power(self.q)
            except FieldError as exc:
                raise click.UsageError(str(exc)) from None
        if self.q_min is not None and self.q_max is not None and self.q_min > self.q_max:
            raise click.UsageError("--q-min exceeds --q-max")
        if self.max_degree is not None and not 1 <= self.max_degree <= 12:
            raise click.UsageError("--max-degree must lie in 1..12")
        if not 1 <= self.oracle_max_order <= HARD_MAX_ORDER:
            raise click.UsageError(f"--oracle-max-order must lie in 1..{HARD_MAX_ORDER}")
        if self.jobs < 1:
            raise click.UsageError("--jobs must be positive")
        if self.ladder_path is not None and not Path(self.ladder_path).is_file():
            raise click.UsageError(f"ladder file {self.ladder_path} not found")
        return self

    def ladder(self) -> RdLadder:
        return load_ladder(self.ladder_path) if self.ladder_path else default_ladder()


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _emit_json(obj) -> None:
    click.echo(json.dumps(obj, indent=2, sort_keys=True))


def _emit_csv(header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    click.echo(buf.getvalue(), nl=False)


def common(fn):
    fn = click.option("--paper-compat", is_flag=True,
                      help="Reproduce the values printed in the historical tables.")(fn)
    fn = click.option("--format", "fmt", type=click.Choice(FORMATS), default=None,
                      help="Output format.")(fn)
    fn = click.option("--ladder", "ladder_path", envvar=LADDER_ENV, default=None,
                      help=f"RD ladder file (also ${LADDER_ENV}).")(fn)
    return fn


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def main():
    """Resolvent degree upper bounds for PSU(2,q) and PSU(3,q)."""


# ---------------------------------------------------------------- bound

def _certificate_text(cert) -> str:
    degs = ", ".join(map(str, cert.degrees)) or "None"
    lines = [
        f"group            {'PSL' if cert.family == 'PSU2' else 'PSU'}({2 if cert.family == 'PSU2' else 3},{cert.q})",
        f"dim V            {cert.dim_v}",
        f"mu               {cert.mu}",
        "counts m_k       " + " ".join(f"{k}:{v}" for k, v in sorted(cert.counts.items())),
        f"degrees          {degs}",
    ]
    if cert.degrees:
        lines += [
            f"product          {cert.product} < {cert.mu}",
            f"RD(product)      {cert.rd_product} <= {cert.dim_v} - 1 - {cert.r} = {cert.bound}",
        ]
    lines += [
        f"bound            RD <= {cert.bound}",
        f"bound by RD(mu)  {cert.bound_mu}",
        f"next blocked by  {', '.join(cert.blockers)}"
        + (f" at degrees {', '.join(map(str, cert.blocked_extension))}" if cert.blocked_extension else ""),
        f"assumption       {cert.assumption}",
    ]
    return "\n".join(lines)


@main.command()
@click.argument("family")
@click.option("--q", type=int, required=True)
@click.option("--max-degree", type=int, default=None, help="Largest invariant degree searched.")
@click.option("--character", default=None, help="SL(2,q) character name (psu2 only).")
@common
def bound(family, q, max_degree, character, paper_compat, fmt, ladder_path):
    """Certificate for one group."""
    from .engine import group_bound

    cfg = RunConfig("bound", family=family, q=q, max_degree=max_degree, paper_compat=paper_compat,
                    fmt=fmt or "text", ladder_path=ladder_path).validate()
    try:
        cert = group_bound(cfg.family, q, cfg.paper_compat, max_degree, cfg.ladder(), character)
    except Exception as exc:
        _fail(f"bound {family} q={q}: {type(exc).__name__}: {exc}")
    if cfg.fmt == "json":
        _emit_json(cert.to_dict())
    elif cfg.fmt == "csv":
        _emit_csv(["q", "dim_V", "bound_thm", "degrees", "mu", "bound_mu"],
                  [[q, cert.dim_v, cert.bound, " ".join(map(str, cert.degrees)) or "None",
                    cert.mu, cert.bound_mu]])
    else:
        click.echo(_certificate_text(cert))


# ---------------------------------------------------------------- table

@main.command()
@click.argument("family")
@click.option("--q-min", type=int, default=None)
@click.option("--q-max", type=int, default=125)
@click.option("--max-degree", type=int, default=None)
@click.option("--jobs", type=int, default=1)
@common
def table(family, q_min, q_max, max_degree, jobs, paper_compat, fmt, ladder_path):
    """Bounds for every prime power in a range."""
    from .engine import family_key, make_table
    from .verify import prime_powers

    cfg = RunConfig("table", family=family, q_min=q_min, q_max=q_max, max_degree=max_degree, jobs=jobs,
                    paper_compat=paper_compat, fmt=fmt or "text", ladder_path=ladder_path).validate()
    fam = family_key(family)
    lo = q_min if q_min is not None else (4 if fam == "PSU2" else 2)
    qs = prime_powers(lo, q_max)
    rows = make_table(fam, qs, cfg.paper_compat, max_degree, jobs, cfg.ladder())
    failed = [(q, r) for q, r in zip(qs, rows) if isinstance(r, Exception)]
    good = [r for r in rows if not isinstance(r, Exception)]
    if cfg.fmt == "csv":
        _emit_csv(TABLE_COLUMNS, [r.csv_fields() for r in good])
    elif cfg.fmt == "json":
        out = []
        for q, r in zip(qs, rows):
            if isinstance(r, Exception):
                out.append({"q": q, "error": f"{type(r).__name__}: {r}"})
            else:
                out.append({"q": r.q, "dim_V": r.dim_v, "bound_thm": r.bound, "degrees": list(r.degrees),
                            "mu": r.mu, "bound_mu": r.bound_mu, "blocker": r.blocker, "colour": r.colour,
                            "flagged": r.flagged, "certificate": r.certificate.to_dict()})
        _emit_json(out)
    else:
        header = f"{'q':>4} {'dim V':>6} {'bound':>6}  {'degrees':<18} {'mu':>8} {'RD(mu)':>8}  row"
        click.echo(header)
        for r in good:
            flag = "  [flagged]" if r.flagged else ""
            click.echo(f"{r.q:>4} {r.dim_v:>6} {r.bound:>6}  {r.degrees_text:<18} {r.mu:>8} "
                       f"{r.bound_mu:>8}  {r.colour}{flag}")
    for q, exc in failed:
        click.echo(f"error: q={q}: {type(exc).__name__}: {exc}", err=True)
    if failed:
        sys.exit(1)


# ---------------------------------------------------------------- molien

@main.command()
@click.option("--group", "family", type=click.Choice(["psl2", "psu2", "psu3"]), required=True)
@click.option("--q", type=int, required=True)
@click.option("--max-degree", type=int, default=None)
@click.option("--character", default=None, help="SL(2,q) character name (psl2 only).")
@common
def molien(family, q, max_degree, character, paper_compat, fmt, ladder_path):
    """Molien series prefix m_0..m_K (JSON by default)."""
    from .molien import DEFAULT_K, molien_prefix, psl2_input, psu3_input

    cfg = RunConfig("molien", family=family, q=q, max_degree=max_degree, fmt=fmt or "json").validate()
    psl2 = family in ("psl2", "psu2")
    K = max_degree or DEFAULT_K["psl2" if psl2 else "psu3"]
    try:
        if psl2:
            values = None
            if character is not None:
                from .sl2_chars import sl2_character_table

                values = sl2_character_table(q).row(character)
            data = psl2_input(q, values, K=K)
        else:
            data = psu3_input(q, K=K)
        prefix = molien_prefix(data, K)
    except Exception as exc:
        _fail(f"molien {family} q={q}: {type(exc).__name__}: {exc}")
    if cfg.fmt == "json":
        _emit_json({"group": family, "q": q, "dim_V": data.degree, "max_degree": K,
                    "coefficients": list(prefix.coefficients)})
    elif cfg.fmt == "csv":
        _emit_csv(["k", "m_k"], list(enumerate(prefix.coefficients)))
    else:
        click.echo(prefix.as_polynomial() + " + O(t^%d)" % (K + 1))


# ---------------------------------------------------------------- power-table

@main.command("power-table")
@click.option("--q", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--source", type=click.Choice(["symbolic", "literal", "representatives"]), default="symbolic",
              help="Corrected symbolic table, the table as printed, or counts from representatives.")
@common
def power_table(q, k, source, paper_compat, fmt, ladder_path):
    """Distribution of g -> g^k over PSU(3,q) class types (rows target, columns source)."""
    from .psu3_data import class_spectrum, symbolic_power_table
    from .psu3_reps import power_distribution

    cfg = RunConfig("power-table", q=q, fmt=fmt or "text").validate()
    if not 1 <= k <= 12 or (source != "representatives" and k not in (2, 3, 4)):
        raise click.UsageError("symbolic tables exist for k = 2, 3, 4; representatives allow 1..12")
    try:
        if source == "representatives":
            dist = power_distribution(q, k, check=False)
        else:
            dist = symbolic_power_table(q, k, corrected=(source == "symbolic"))
    except Exception as exc:
        _fail(f"power-table q={q} k={k}: {type(exc).__name__}: {exc}")
    labels = class_spectrum(q).labels
    grid = [[dist.get(src, {}).get(tgt, 0) for src in labels] for tgt in labels]
    if cfg.fmt == "json":
        _emit_json({"q": q, "k": k, "source": source,
                    "table": {src: {t: n for t, n in dist.get(src, {}).items() if n} for src in labels}})
    elif cfg.fmt == "csv":
        _emit_csv(["target"] + list(labels), [[t] + row for t, row in zip(labels, grid)])
    else:
        width = max(6, *(len(str(x)) + 1 for row in grid for x in row))
        click.echo(f"{'g^' + str(k):<6}" + "".join(f"{s:>{width}}" for s in labels))
        for t, row in zip(labels, grid):
            click.echo(f"{t:<6}" + "".join(f"{x:>{width}}" for x in row))


# ---------------------------------------------------------------- dumps

@main.command("dump-classes")
@click.argument("family")
@click.option("--q", type=int, required=True)
@common
def dump_classes(family, q, paper_compat, fmt, ladder_path):
    """Class data: PSU(3,q) class types or SL(2,q) classes."""
    cfg = RunConfig("dump-classes", family=family, q=q, fmt=fmt or "text").validate()
    try:
        if cfg.family.lower() == "psu3":
            from .psu3_data import class_spectrum

            spec = class_spectrum(q)
            rows = [[t.label, t.count, t.centralizer, t.chi] for t in spec.types]
            header = ["type", "count", "centralizer", "chi_V"]
            meta = spec.to_dict()
        else:
            from .sl2_chars import sl2_class_data

            data = sl2_class_data(q)
            rows = [[c.label, c.kind, c.size, c.centralizer, c.order] for c in data.classes]
            header = ["class", "kind", "size", "centralizer", "element_order"]
            meta = {"q": q, "order": data.order,
                    "classes": [dict(zip(header, r)) for r in rows]}
    except Exception as exc:
        _fail(f"dump-classes {family} q={q}: {type(exc).__name__}: {exc}")
    if cfg.fmt == "json":
        _emit_json(meta)
    elif cfg.fmt == "csv":
        _emit_csv(header, rows)
    else:
        click.echo("  ".join(f"{h:>12}" for h in header))
        for r in rows:
            click.echo("  ".join(f"{str(x):>12}" for x in r))


@main.command("dump-chars")
@click.option("--q", type=int, required=True)
@common
def dump_chars(q, paper_compat, fmt, ladder_path):
    """Character table of SL(2,q); z<n> denotes exp(2 pi i / n)."""
    from .sl2_chars import sl2_character_table

    cfg = RunConfig("dump-chars", q=q, fmt=fmt or "text").validate()
    try:
        tab = sl2_character_table(q)
    except Exception as exc:
        _fail(f"dump-chars q={q}: {type(exc).__name__}: {exc}")
    labels = [c.label for c in tab.classes.classes]
    rows = [[name] + [str(v) for v in row] for name, row in zip(tab.names, tab.values)]
    if cfg.fmt == "json":
        _emit_json({"q": q, "classes": labels,
                    "characters": {r[0]: dict(zip(labels, r[1:])) for r in rows}})
    elif cfg.fmt == "csv":
        _emit_csv(["character"] + labels, rows)
    else:
        for r in rows:
            click.echo(f"{r[0]:<8} " + " | ".join(r[1:]))


# ---------------------------------------------------------------- rd-upper

@main.command("rd-upper")
@click.argument("n", type=int, nargs=-1, required=True)
@common
def rd_upper_cmd(n, paper_compat, fmt, ladder_path):
    """Encoded upper bounds on RD(n)."""
    cfg = RunConfig("rd-upper", paper_compat=paper_compat, fmt=fmt or "text",
                    ladder_path=ladder_path).validate()
    if any(x < 1 for x in n):
        raise click.UsageError("n must be positive")
    ladder = cfg.ladder()
    values = [(x, ladder(x, cfg.paper_compat)) for x in n]
    if cfg.fmt == "json":
        _emit_json({str(x): v for x, v in values})
    elif cfg.fmt == "csv":
        _emit_csv(["n", "rd_upper"], values)
    else:
        for x, v in values:
            click.echo(f"RD({x}) <= {v}")


# ---------------------------------------------------------------- verify

@main.command()
@click.argument("target", type=click.Choice(["power-tables", "molien", "oracle", "chars"]))
@click.option("--q-min", type=int, default=2)
@click.option("--q-max", type=int, required=True)
@click.option("--oracle-max-order", type=int, default=DEFAULT_MAX_ORDER,
              help="Skip brute-force groups larger than this.")
@common
def verify(target, q_min, q_max, oracle_max_order, paper_compat, fmt, ladder_path):
    """Run a self-check suite; exit 1 if anything fails."""
    from .verify import run_suite

    cfg = RunConfig("verify", q_min=q_min, q_max=q_max, oracle_max_order=oracle_max_order,
                    fmt=fmt or "text").validate()
    checks = []
    for check in run_suite(target, q_max, q_min, cfg.oracle_max_order):
        checks.append(check)
        if cfg.fmt == "text":
            click.echo(check.line())
    failures = sum(not c.ok for c in checks)
    if cfg.fmt == "json":
        _emit_json([{"suite": c.suite, "q": c.q, "check": c.name, "ok": c.ok, "detail": c.detail}
                    for c in checks])
    elif cfg.fmt == "csv":
        _emit_csv(["suite", "q", "check", "ok", "detail"],
                  [[c.suite, c.q, c.name, int(c.ok), c.detail] for c in checks])
    else:
        click.echo(f"{len(checks) - failures} passed, {failures} failed")
    if failures:
        sys.exit(1)


if __name__ == "__main__":
    main()
