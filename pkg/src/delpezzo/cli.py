"""Command-line surface: enumeration, orbits, thresholds, counting, examples.

stdout carries data (JSON with sorted keys, or CSV where a table shape is
fixed); stderr carries diagnostics.  Exit codes: 0 ok, 1 domain/cap error,
2 usage error.  Every command is deterministic given its flags and seed.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import math
import sys
from fractions import Fraction

import click

from . import counting, curves, fujita, ruled, thresholds, weyl
from .errors import ToolkitError
from .picard import anticanonical_degree, make_lattice


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float) and math.isinf(obj):
        return "+inf"
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, frozenset, set)):
        items = list(obj)
        if isinstance(obj, (frozenset, set)):
            items = sorted(items)
        return [_jsonable(v) for v in items]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit_json(data) -> None:
    click.echo(json.dumps(_jsonable(data), sort_keys=True, indent=2))


def _emit_csv(header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    click.echo(buf.getvalue(), nl=False)


def _toolkit_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ToolkitError as ex:
            click.echo(f"error: {ex}", err=True)
            sys.exit(1)

    return wrapper


def _lattice_for_degree(degree: int):
    if not (1 <= degree <= 9):
        raise click.BadParameter(f"fiber degree {degree} outside 1..9")
    return make_lattice(9 - degree)


_KINDS = {
    "lines": curves.enumerate_neg_one_curves,
    "conics": curves.enumerate_conic_classes,
    "cubics": curves.enumerate_cubic_classes,
}


@click.group()
def main():
    """Del Pezzo fibration toolkit: lattices, curve classes, monodromy
    orbits, Fujita invariants, thresholds, section counting."""


@main.command()
@click.option("--degree", type=int, required=True, help="fiber degree, 1..9")
@_toolkit_errors
def lattice(degree):
    """Picard lattice of a del Pezzo surface of the given degree."""
    lat = _lattice_for_degree(degree)
    _emit_json(
        {
            "degree": lat.degree,
            "blowups": lat.n,
            "rank": lat.rank,
            "gram": lat.gram,
            "canonical": lat.canonical,
            "anticanonical": lat.anticanonical,
        }
    )


@main.command(name="curves")
@click.option("--degree", type=int, required=True, help="fiber degree, 1..9")
@click.option(
    "--kind",
    type=click.Choice(sorted(_KINDS)),
    default="lines",
    show_default=True,
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "csv"]),
    default="json",
    show_default=True,
)
@_toolkit_errors
def curves_cmd(degree, kind, fmt):
    """Enumerate line, conic, or cubic classes on the fiber lattice."""
    lat = _lattice_for_degree(degree)
    classes = _KINDS[kind](lat)
    header = [f"c{k}" for k in range(lat.rank)]
    if kind == "cubics":
        # cubic classes carry a kind tag alongside the coordinates
        if fmt == "csv":
            _emit_csv(header + ["kind"], [list(c) + [k.value] for c, k in classes])
            return
        payload = [{"class": c, "kind": k.value} for c, k in classes]
    else:
        if fmt == "csv":
            _emit_csv(header, classes)
            return
        payload = classes
    _emit_json(
        {
            "degree": degree,
            "kind": kind,
            "count": len(classes),
            "classes": payload,
        }
    )


@main.command(name="weyl")
@click.option("--degree", type=int, required=True, help="fiber degree, 1..9")
@click.option("--cap", type=int, default=weyl.DEFAULT_CAP, show_default=True)
@_toolkit_errors
def weyl_cmd(degree, cap):
    """Order of the lattice Weyl group, by breadth-first closure."""
    lat = _lattice_for_degree(degree)
    gens = weyl.weyl_generators(lat)
    group = weyl.generate_group(gens, cap=cap)
    _emit_json(
        {
            "degree": degree,
            "blowups": lat.n,
            "generators": len(gens),
            "order": group.order,
        }
    )


@main.command()
@click.option("--degree", type=int, required=True, help="fiber degree, 1..9")
@click.option(
    "--classes",
    type=click.Choice(sorted(_KINDS)),
    default="lines",
    show_default=True,
)
@click.option("--cap", type=int, default=weyl.DEFAULT_CAP, show_default=True)
@_toolkit_errors
def orbits(degree, classes, cap):
    """Orbit sizes of curve classes under the full Weyl group."""
    lat = _lattice_for_degree(degree)
    vectors = _KINDS[classes](lat)
    gens = weyl.weyl_generators(lat)
    part = weyl.orbits_under_generators(gens, vectors)
    _emit_json(
        {
            "degree": degree,
            "classes": classes,
            "count": len(vectors),
            "orbit_sizes": part.sizes,
            "orbit_representatives": part.representatives,
        }
    )


@main.command(name="fujita")
@click.option("--degree", type=int, help="del Pezzo fiber degree, 1..9")
@click.option("--hirzebruch", type=int, help="Hirzebruch parameter e >= 0")
@_toolkit_errors
def fujita_cmd(degree, hirzebruch):
    """Fujita invariant of the anticanonical polarization."""
    if (degree is None) == (hirzebruch is None):
        raise click.UsageError("pass exactly one of --degree / --hirzebruch")
    if degree is not None:
        lat = _lattice_for_degree(degree)
        surf = fujita.polarized_del_pezzo(lat)
        locus = fujita.larger_a_locus(lat)
        _emit_json(
            {
                "surface": f"del Pezzo degree {degree}",
                "a_invariant": fujita.a_invariant(surf),
                "larger_a_locus_size": len(locus),
            }
        )
        return
    surf = fujita.hirzebruch_polarized(hirzebruch)
    _emit_json(
        {
            "surface": f"Hirzebruch {hirzebruch}",
            "a_invariant": fujita.a_invariant(surf),
        }
    )


@main.command(name="thresholds")
@click.option("--profile", required=True, help="shipped profile name or JSON path")
@_toolkit_errors
def thresholds_cmd(profile):
    """All scalar thresholds of a fibration profile."""
    p = thresholds.load_profile(profile)
    _emit_json(thresholds.threshold_report(p))


@main.command(name="ruled")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option("--depth", type=int, default=8, show_default=True)
@_toolkit_errors
def ruled_cmd(seed, trials, depth):
    """Randomized fiber-tree soundness harness (blow-ups, the second
    (-1)-component lemma, contraction back to the smooth model)."""
    _emit_json(ruled.fuzz_blow_up_sequences(count=trials, depth=depth, seed=seed))


def _convergence_csv_rows(report):
    for row in report["rows"]:
        yield [row["d"], str(row["exact"]), str(row["asymptotic"]), str(row["ratio"])]


@main.command(name="count")
@click.option("--profile", help="shipped profile name or JSON path")
@click.option("--model", "model_path", help="counting model JSON path")
@click.option("--q", default="2", show_default=True, help="counting base, rational > 1")
@click.option("--dmax", type=int, default=12, show_default=True)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "csv"]),
    default="json",
    show_default=True,
)
@_toolkit_errors
def count_cmd(profile, model_path, q, dmax, fmt):
    """Exact counting function vs the closed-form asymptotic."""
    if (profile is None) == (model_path is None):
        raise click.UsageError("pass exactly one of --profile / --model")
    if model_path is not None:
        model = counting.load_model(model_path)
    else:
        p = thresholds.load_profile(profile)
        model = counting.default_model(p, Fraction(q))
    report = counting.convergence_report(model, dmax)
    if fmt == "csv":
        _emit_csv(["d", "exact", "asymptotic", "ratio"], _convergence_csv_rows(report))
        return
    _emit_json(report)


def _monodromy_section(p) -> dict:
    lat = make_lattice(9 - p.fiber_degree)
    gens = weyl.weyl_generators(lat)
    lines = curves.enumerate_neg_one_curves(lat)
    if p.name == "diagonal-cubic":
        full = weyl.generate_group(gens)
        sub = weyl.find_diagonal_cubic_subgroup(full, lat)
        conics = curves.enumerate_conic_classes(lat)
        invariant = weyl.invariant_sublattice(sub, lat)
        return {
            "kind": "diagonal-cubic subgroup search",
            "subgroup_order": sub.order,
            "line_orbit_sizes": weyl.orbits(sub, lines).sizes,
            "conic_orbit_sizes": weyl.orbits(sub, conics).sizes,
            "invariant_rank": len(invariant),
            "invariant_basis": invariant,
        }
    part = weyl.orbits_under_generators(gens, lines)
    return {
        "kind": "full Weyl group on lines",
        "line_count": len(lines),
        "line_orbit_sizes": part.sizes,
    }


def run_example(name: str, q: Fraction, dmax: int) -> dict:
    """Threshold report, monodromy verification, and convergence table for a
    shipped profile."""
    p = thresholds.load_profile(name)
    model = counting.default_model(p, q)
    return {
        "name": name,
        "thresholds": thresholds.threshold_report(p),
        "monodromy": _monodromy_section(p),
        "convergence": counting.convergence_report(model, dmax),
    }


@main.command(name="example")
@click.option(
    "--name",
    type=click.Choice(
        ["cubic-pencil", "x5-pencil", "hypersurface-23", "diagonal-cubic"]
    ),
    required=True,
)
@click.option("--q", default="2", show_default=True, help="counting base, rational > 1")
@click.option("--dmax", type=int, default=12, show_default=True)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "csv"]),
    default="json",
    show_default=True,
)
@_toolkit_errors
def example_cmd(name, q, dmax, fmt):
    """Reproduce the shipped worked examples end to end."""
    report = run_example(name, Fraction(q), dmax)
    if fmt == "csv":
        _emit_csv(
            ["d", "exact", "asymptotic", "ratio"],
            _convergence_csv_rows(report["convergence"]),
        )
        return
    _emit_json(report)


if __name__ == "__main__":
    main()
