"""Command-line interface.

Usage:
    g2syl group-order --q 7
    g2syl commutators-check --q 9
    g2syl classes --q 5 --format csv
    g2syl superclasses --q 5
    g2syl supercharacter-table --q 5 --format json
    g2syl character-table --q 5 --out table.md
    g2syl verify --q 5 --suite all
"""

from __future__ import annotations

import csv
import io
import json
import sys

import click

from .ffield import FieldError, FieldSpec, factor_prime_power
from .matgroup import (DEFAULT_BUDGET, BudgetExceededError, G2Syl, verify_chevalley_constants,
                       verify_closed_form, verify_commutators)
from .report import Report

FORMATS = click.Choice(["md", "csv", "json"])
SUITES = ("group", "orbits", "super", "chartab")


def field_from_options(p: int | None, k: int, q: int | None) -> FieldSpec:
    try:
        if q is not None:
            if p is not None:
                fp, fk = factor_prime_power(q)
                if (fp, fk) != (p, k):
                    raise click.BadParameter(f"--q {q} disagrees with --p {p} --k {k}")
            return FieldSpec.from_order(q)
        if p is None:
            raise click.UsageError("give --q or --p (with optional --k)")
        return FieldSpec(p, k)
    except FieldError as e:
        raise click.BadParameter(str(e)) from e


def field_options(f):
    f = click.option("--q", "q", type=int, default=None, help="Field order q = p^k.")(f)
    f = click.option("--k", "k", type=int, default=1, show_default=True, help="Extension degree.")(f)
    f = click.option("--p", "p", type=int, default=None, help="Characteristic (odd prime).")(f)
    return f


def output_options(f):
    f = click.option("--out", "out", type=click.Path(dir_okay=False), default=None,
                     help="Write to this file instead of stdout.")(f)
    f = click.option("--format", "fmt", type=FORMATS, default="md", show_default=True)(f)
    return f


def budget_option(f):
    return click.option("--budget", type=int, default=DEFAULT_BUDGET, show_default=True,
                        help="Largest group or pattern set that may be enumerated.")(f)


def emit(text: str, out: str | None):
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def render_rows(title: str, head: list[str], rows: list[list], fmt: str, extra: dict | None = None) -> str:
    if fmt == "json":
        obj = dict(extra or {})
        obj["rows"] = [dict(zip(head, r)) for r in rows]
        return json.dumps(obj, indent=1)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(head)
        w.writerows(rows)
        return buf.getvalue()
    lines = [title, "", "| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    lines += ["| " + " | ".join(str(x) for x in r) + " |" for r in rows]
    return "\n".join(lines)


def render_report(rep: Report, fmt: str) -> str:
    if fmt == "json":
        return rep.to_json()
    if fmt == "csv":
        return rep.to_csv()
    return rep.to_markdown() + "\n\n" + str(rep)


def run_suite(name: str, F: FieldSpec, budget: int, state: dict) -> Report:
    """One verification suite; ``state`` shares the group and pattern space."""
    from .orbits import PatternSpace, verify_orbits

    def group():
        if "G" not in state:
            state["G"] = G2Syl(F, budget)
        return state["G"]

    def space():
        if "space" not in state:
            state["space"] = PatternSpace(group())
        return state["space"]

    if name == "group":
        rep = Report("group")
        rep.extend(verify_chevalley_constants(), "chevalley: ")
        rep.extend(verify_commutators(F), "commutators: ")
        rep.extend(verify_closed_form(F, budget), "closed form: ")
        return rep
    if name == "orbits":
        return verify_orbits(space())
    if name == "super":
        from .supertheory import SuperTheory, verify_partition
        rep = Report("super")
        rep.extend(verify_partition(group()), "partition: ")
        rep.extend(SuperTheory(space()).verify(), "supercharacters: ")
        return rep
    if name == "chartab":
        from .chartable import CharacterTable, subgroup_tables, verify_conjugacy_classes
        rep = Report("chartab")
        rep.extend(verify_conjugacy_classes(group()), "classes: ")
        rep.extend(CharacterTable(group()).verify(space()), "characters: ")
        rep.extend(subgroup_tables(group()), "subgroups: ")
        return rep
    raise click.BadParameter(f"unknown suite {name}")


@click.group()
@click.version_option(package_name="artifact")
def cli():
    """Exact tables and checks for the Sylow p-subgroup of G2(q)."""


@cli.command("group-order")
@field_options
def group_order(p, k, q):
    """Print |U| = q^6."""
    F = field_from_options(p, k, q)
    click.echo(F.q ** 6)


@cli.command("commutators-check")
@field_options
@output_options
def commutators_check(p, k, q, fmt, out):
    """Check the commutator relations over all pairs of parameters."""
    F = field_from_options(p, k, q)
    rep = verify_commutators(F)
    emit(render_report(rep, fmt), out)
    sys.exit(0 if rep.passed else 1)


@cli.command("classes")
@field_options
@output_options
@budget_option
def classes(p, k, q, fmt, out, budget):
    """List the conjugacy classes by brute force."""
    F = field_from_options(p, k, q)
    G = G2Syl(F, budget)
    if F.p > 3:
        from .chartable import conjugacy_classes_bruteforce
        cls = conjugacy_classes_bruteforce(G)
        rows = [[i, "y(" + ",".join(map(str, c.rep.t)) + ")", c.column, c.size]
                for i, c in enumerate(cls)]
        head = ["class", "representative", "column", "size"]
    else:
        rows = [[i, "y(" + ",".join(map(str, G.coords_of(m[0]))) + ")", len(m)]
                for i, m in enumerate(G.class_members)]
        head = ["class", "representative", "size"]
    emit(render_rows(f"Conjugacy classes, q = {F.q} ({len(rows)} classes)", head, rows, fmt,
                     {"q": F.q, "p": F.p, "count": len(rows)}), out)


@cli.command("superclasses")
@field_options
@output_options
@budget_option
def superclasses(p, k, q, fmt, out, budget):
    """List the superclasses with sizes and representatives."""
    import numpy as np

    from .supertheory import superclass_ids, superclass_positions, superclass_representative
    F = field_from_options(p, k, q)
    G = G2Syl(F, budget)
    ids = superclass_ids(F)
    sizes = np.bincount(superclass_positions(F, G.all_coords), minlength=len(ids))
    rows = [[str(s), "y(" + ",".join(map(str, superclass_representative(G, s).t)) + ")", int(n)]
            for s, n in zip(ids, sizes)]
    emit(render_rows(f"Superclasses, q = {F.q} ({len(rows)} superclasses)",
                     ["superclass", "representative", "size"], rows, fmt,
                     {"q": F.q, "p": F.p, "count": len(rows)}), out)


@cli.command("supercharacter-table")
@field_options
@output_options
@budget_option
def supercharacter_table(p, k, q, fmt, out, budget):
    """Emit the supercharacter table (checked against the closed forms)."""
    from .orbits import PatternSpace
    from .supertheory import emit_supercharacter_table, verified_supercharacter_table
    F = field_from_options(p, k, q)
    table = verified_supercharacter_table(PatternSpace(G2Syl(F, budget)))
    emit(emit_supercharacter_table(table, fmt), out)


@cli.command("character-table")
@field_options
@output_options
@budget_option
def character_table(p, k, q, fmt, out, budget):
    """Emit the character table (p > 3; checked against induced characters)."""
    from .chartable import CharacteristicError, emit_character_table, verified_character_table
    F = field_from_options(p, k, q)
    try:
        table = verified_character_table(G2Syl(F, budget))
    except CharacteristicError as e:
        raise click.ClickException(str(e)) from e
    emit(emit_character_table(table, fmt), out)


@cli.command("verify")
@field_options
@click.option("--suite", type=click.Choice(SUITES + ("all",)), default="all", show_default=True)
@output_options
@budget_option
def verify(p, k, q, suite, fmt, out, budget):
    """Run verification suites; exit status 0 iff every check passes."""
    F = field_from_options(p, k, q)
    if suite == "chartab" and F.p <= 3:
        raise click.ClickException(f"the chartab suite requires characteristic p > 3 (got p = {F.p})")
    names = [suite] if suite != "all" else [s for s in SUITES if s != "chartab" or F.p > 3]
    if suite == "all" and F.p <= 3:
        click.echo("note: chartab suite skipped, it requires p > 3", err=True)
    state: dict = {}
    if len(names) == 1:
        rep = run_suite(names[0], F, budget, state)
    else:
        rep = Report("all")
        for name in names:
            rep.extend(run_suite(name, F, budget, state), f"{name}: ")
    emit(render_report(rep, fmt), out)
    sys.exit(0 if rep.passed else 1)


def run(argv=None) -> int:
    """Entry point returning the exit code instead of raising SystemExit."""
    try:
        cli.main(args=argv, prog_name="g2syl", standalone_mode=False)
    except SystemExit as e:
        return int(e.code or 0)
    except click.exceptions.ClickException as e:
        e.show()
        return e.exit_code
    except BudgetExceededError as e:
        click.echo(f"Error: {e}", err=True)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
