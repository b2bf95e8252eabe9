"""Command-line surface tying the package together.

Every subcommand reads the canonical JSON form of a datum, runs one
module, and prints a deterministic report.  Exit codes: 0 on success, 1
on a domain failure (invalid datum, infeasibility of a requested
certificate, failed check), 2 on usage errors.
"""

from __future__ import annotations

import functools
import json
import sys

import click

from . import qseries as qs
from .analytic import c_alpha, nahm_solve
from .cluster import LoopError, matrix_to_dot
from .correspondence import datum_to_loop
from .dynamics import (
    detect_period,
    evolve_Y,
    initial_cluster,
    principal_coefficients,
    trivial_coefficients,
    tropical_T,
)
from .positivity import evaluated_pair, quadratic_form, simultaneous_positivity
from .tdatum import (
    ConsistentSubset,
    TDatumError,
    build_affinization,
    build_cartan_pair,
    build_size1,
    build_tadpole,
    build_tensor,
    cartan_matrix,
    langlands_dual,
    load_json,
    size1_coefficients,
    to_json_dict,
    two_identity,
)


def _domain(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (TDatumError, LoopError, ValueError, ArithmeticError, OSError) as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


def _parse_subset(alpha, spec):
    """--R t,c1,...,cr with one residue per row; None means all of ZZ."""
    if spec is None:
        return ConsistentSubset.full(alpha.r)
    parts = [int(x) for x in spec.split(",")]
    if len(parts) != alpha.r + 1:
        raise click.UsageError(
            f"--R needs 1 + {alpha.r} integers (t and one residue per row)"
        )
    return ConsistentSubset(parts[0], parts[1:])


def _parse_matrix(text, partner_size=None):
    """Integer matrix from 'a,b;c,d' rows, a Cartan type name like A2 or
    T3, or the literal 2I (size taken from the partner argument)."""
    text = text.strip()
    if text.upper() == "2I":
        if partner_size is None:
            raise click.UsageError("2I needs a sized partner matrix")
        return two_identity(partner_size)
    if text[:1].isalpha():
        return cartan_matrix(text)
    return [[int(x) for x in row.split(",")] for row in text.split(";")]


def _label(vertex):
    a, p = vertex
    return f"({a + 1},{p})"


@click.group()
def main():
    """Exact tools for coupled bilinear recurrences and their loops."""


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_domain
def validate(path):
    """Check the axioms of a datum file and print a summary."""
    alpha = load_json(path)
    if all(alpha.sigma[a] == a for a in range(alpha.r)):
        sigma = "id"
    else:
        sigma = "(" + ", ".join(
            f"{a + 1}->{alpha.sigma[a] + 1}" for a in range(alpha.r)
        ) + ")"
    p = ",".join(str(x) for x in alpha.p)
    click.echo(f"valid T-datum, size {alpha.r}, σ={sigma}, p=({p})")


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_domain
def dual(path):
    """Emit the weight-conjugated dual datum as canonical JSON."""
    alpha = load_json(path)
    click.echo(json.dumps(to_json_dict(langlands_dual(alpha)), indent=2))


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--R", "subset_spec", default=None, help="t,c1,...,cr residue pattern")
@click.option("--dot", "dot_path", default=None, type=click.Path(dir_okay=False))
@_domain
def loop(path, subset_spec, dot_path):
    """Synthesize the mutation loop of a datum and print its pieces."""
    alpha = load_json(path)
    subset = _parse_subset(alpha, subset_spec)
    built = datum_to_loop(alpha, subset)
    matrix = built.loop.matrix
    labels = matrix.labels
    click.echo("B:")
    width = max(len(_label(v)) for v in labels)
    header = " " * (width + 2) + " ".join(f"{_label(v):>{width}}" for v in labels)
    click.echo(header)
    for i in labels:
        row = " ".join(f"{matrix.entry(i, j):>{width}}" for j in labels)
        click.echo(f"{_label(i):>{width}}: {row}")
    click.echo("d: " + " ".join(f"{_label(v)}={matrix.weights[v]}" for v in labels))
    for u, block in enumerate(built.loop.blocks):
        click.echo(f"i[{u}]: " + " ".join(_label(v) for v in block))
    click.echo(
        "nu: " + " ".join(
            f"{_label(v)}->{_label(built.loop.nu[v])}" for v in labels
        )
    )
    if dot_path:
        with open(dot_path, "w", encoding="utf-8") as fh:
            fh.write(matrix_to_dot(matrix))
        click.echo(f"wrote {dot_path}")


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--steps", type=int, required=True)
@click.option(
    "--coeffs",
    type=click.Choice(["trivial", "principal"]),
    default="trivial",
    show_default=True,
)
@click.option("--R", "subset_spec", default=None, help="t,c1,...,cr residue pattern")
@_domain
def evolve(path, steps, coeffs, subset_spec):
    """Replay the loop and emit the recorded values as TSV."""
    alpha = load_json(path)
    subset = _parse_subset(alpha, subset_spec)
    built = datum_to_loop(alpha, subset)
    if coeffs == "principal":
        y0 = principal_coefficients(built)
    else:
        y0 = trivial_coefficients(built)
    evolution = evolve_Y(built, steps, coeffs=y0, cluster=initial_cluster(built))
    click.echo("a\tu\tY\tT")
    for (a, u) in sorted(evolution.y, key=lambda point: (point[1], point[0])):
        y_val = evolution.y[(a, u)]
        t_val = evolution.x.get((a, u), "")
        click.echo(f"{a + 1}\t{u}\t{y_val}\t{t_val}")


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--c", "source", type=int, required=True, help="seed row (1-based)")
@click.option("--window", default=None, help="u0:u1 inclusive base range")
@_domain
def tropical(path, source, window):
    """Print the integer table seeded at one row."""
    alpha = load_json(path)
    if not 1 <= source <= alpha.r:
        raise click.UsageError(f"--c must be in 1..{alpha.r}")
    if window is None:
        span = max(alpha.p) + 1
        lo, hi = -span, span
    else:
        lo_text, hi_text = window.split(":")
        lo, hi = int(lo_text), int(hi_text)
    solution = tropical_T(alpha, source - 1, (lo, hi))
    click.echo("a\\u\t" + "\t".join(str(u) for u in range(lo, hi + 1)))
    for a in range(alpha.r):
        row = "\t".join(str(solution.value(a, u)) for u in range(lo, hi + 1))
        click.echo(f"{a + 1}\t{row}")


def _format_rational_matrix(mat):
    rows = []
    for i in range(mat.r):
        rows.append(" ".join(str(mat[i, j]) for j in range(mat.r)))
    return "[" + "; ".join(rows) + "]"


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--period-bound", type=int, default=None)
@_domain
def finite(path, period_bound):
    """Run the positivity test, and optionally the period search."""
    alpha = load_json(path)
    report = simultaneous_positivity(alpha)
    if report.feasible:
        witness = ", ".join(str(w) for w in report.witness)
        click.echo(f"simultaneous positivity: FEASIBLE, v = ({witness})")
    else:
        a_plus, _ = evaluated_pair(alpha)
        click.echo(
            "simultaneous positivity: INFEASIBLE "
            f"(Å₊ = {_format_rational_matrix(a_plus)})"
        )
    if period_bound is not None:
        period = detect_period(alpha, bound=period_bound)
        if period.periodic:
            click.echo(f"periodic with period {period.omega}")
        else:
            click.echo(f"no period found within bound {period.bound}")
    if not report.feasible:
        sys.exit(1)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_domain
def dilog(path):
    """Solve the algebraic fixed-point system and print the invariant."""
    alpha = load_json(path)
    form = quadratic_form(alpha)
    solution = nahm_solve(form.K_dual)
    click.echo("f = (" + ", ".join(f"{x:.9f}" for x in solution.f) + ")")
    invariant = c_alpha(alpha, solution)
    line = f"c_α = {invariant.c_float:.9f}"
    if invariant.c_rational is not None:
        line += f" ≈ {invariant.c_rational}"
    click.echo(line)


def _size1_family(alpha):
    coeffs = size1_coefficients(alpha)
    return {(0,): "alpha1", (1,): "alpha2", (-1,): "alpha3"}.get(tuple(coeffs))


@main.command(name="qseries")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--order", type=int, required=True)
@click.option("--sector", type=int, default=None, help="sector index; default total")
@click.option("--check", type=click.Choice(["eta", "product"]), default=None)
@_domain
def qseries_cmd(path, order, sector, check):
    """Expand the partition series, or run one of the classical checks."""
    alpha = load_json(path)
    if check == "eta":
        if alpha.r != 1:
            raise click.ClickException("eta check applies to size-1 data only")
        family = _size1_family(alpha)
        if family is None:
            raise click.ClickException("datum is not one of the three size-1 families")
        results = qs.eta_theta_oracle(family, alpha.D[0], order)
        failed = False
        for key, ok in sorted(results.items()):
            click.echo(f"sector {key}: {'PASS' if ok else 'FAIL'}")
            failed = failed or not ok
        if failed:
            sys.exit(1)
        return
    if check == "product":
        a_plus, a_minus = evaluated_pair(alpha)
        r = alpha.r
        tadpole = cartan_matrix(f"T{r}")
        is_tadpole = all(
            a_plus[i, j] == tadpole[i][j] and a_minus[i, j] == 2 * (i == j)
            for i in range(r)
            for j in range(r)
        )
        if not is_tadpole:
            raise click.ClickException(
                "product check applies to the tadpole-against-2I datum"
            )
        ok = qs.andrew_gordon_oracle(r, order)
        click.echo("product check: " + ("PASS" if ok else "FAIL"))
        if not ok:
            sys.exit(1)
        return
    if sector is None:
        series = qs.total_series(alpha, order)
    else:
        series = qs.partition_series(alpha, sector, order)
    for n in sorted(series.coeffs):
        click.echo(f"{n}/{series.M}\t{series.coeffs[n]}")


@main.group()
def build():
    """Write the canonical JSON of a built datum."""


def _emit(alpha, out):
    text = json.dumps(to_json_dict(alpha), indent=2)
    if out is None:
        click.echo(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        click.echo(f"wrote {out}")


@build.command(name="size1")
@click.option("--coeffs", required=True, help="comma-separated n_1..n_{p-1}")
@click.option("--d", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_domain
def build_size1_cmd(coeffs, d, out):
    values = [int(x) for x in coeffs.split(",")]
    _emit(build_size1(values, d), out)


@build.command(name="cartan-pair")
@click.option("--a", "first", required=True, help="rows a,b;c,d or a type name")
@click.option("--aprime", "second", required=True)
@click.option("--d", "weights", default=None, help="comma-separated diagonal")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_domain
def build_cartan_pair_cmd(first, second, weights, out):
    left = _parse_matrix(first) if first.strip().upper() != "2I" else None
    right = _parse_matrix(second) if second.strip().upper() != "2I" else None
    if left is None and right is None:
        raise click.UsageError("at most one of --a/--aprime may be 2I")
    if left is None:
        left = two_identity(len(right))
    if right is None:
        right = two_identity(len(left))
    diagonal = [int(x) for x in weights.split(",")] if weights else None
    _emit(build_cartan_pair(left, right, diagonal), out)


@build.command(name="tensor")
@click.option("--a", "first", required=True)
@click.option("--aprime", "second", required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_domain
def build_tensor_cmd(first, second, out):
    _emit(build_tensor(_parse_matrix(first), _parse_matrix(second)), out)


@build.command(name="tadpole")
@click.option("--r", "rank", type=int, required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_domain
def build_tadpole_cmd(rank, out):
    _emit(build_tadpole(rank), out)


@build.command(name="affinization")
@click.option("--type", "type_name", required=True, help="Cartan type, e.g. F4")
@click.option("--level", type=int, default=2, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_domain
def build_affinization_cmd(type_name, level, out):
    alpha, window = build_affinization(cartan_matrix(type_name), level=level)
    _emit(alpha, out)
    click.echo(
        "rows: " + " ".join(f"({a + 1},{m})" for a, m in window), err=True
    )


def run(argv):
    """Programmatic dispatch returning the exit code."""
    try:
        main.main(args=list(argv), prog_name="tsysteme", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 2
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except SystemExit as exc:
        return int(exc.code or 0)
    return 0


def build_datum(kind, params):
    """Programmatic builder dispatch mirroring the build subcommands.

    ``params["out"]``, when present, receives the canonical JSON."""
    if kind == "size1":
        alpha = build_size1(params["coeffs"], params.get("d", 1))
    elif kind == "cartan-pair":
        alpha = build_cartan_pair(params["A"], params["Aprime"], params.get("D"))
    elif kind == "tensor":
        alpha = build_tensor(params["A"], params["Aprime"])
    elif kind == "tadpole":
        alpha = build_tadpole(params["r"])
    elif kind == "affinization":
        alpha, _ = build_affinization(
            params["C"], params.get("symmetrizer"), params.get("level", 2)
        )
    else:
        raise ValueError(f"unknown build kind {kind!r}")
    out = params.get("out")
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(to_json_dict(alpha), fh, indent=2)
            fh.write("\n")
    return alpha


if __name__ == "__main__":
    main()
