"""Command line driver."""
from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction

import click
import mpmath

from .forms import TernaryForm, determinant, sign_normalize
from .genus import class_count, enumerate_genera, genus_of
from .local import enumerate_local_classes
from .mass import local_mass, normalized_mass2, siegel_mass


class Ctx:
    def __init__(self, threads, cache_dir, precision, out, fmt, strict):
        self.threads = threads
        self.cache_dir = cache_dir
        self.precision = precision
        self.out = out
        self.fmt = fmt
        self.strict = strict
        self.failed = False

    def emit(self, text: str) -> None:
        if self.out:
            with open(self.out, "w") as fh:
                fh.write(text if text.endswith("\n") else text + "\n")
        else:
            click.echo(text.rstrip("\n"))

    def table(self, rows: list[dict], summary: dict | None = None) -> None:
        if self.fmt == "csv":
            buf = io.StringIO()
            cols: list[str] = []
            for r in rows:
                cols += [k for k in r if k not in cols]
            w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
            self.emit(buf.getvalue())
        else:
            payload = {"rows": rows} if summary is None else {"summary": summary, "rows": rows}
            self.emit(json.dumps(payload, indent=2, default=str))

    def report(self, rep) -> None:
        if self.fmt == "csv":
            self.emit(rep.to_csv())
        else:
            self.emit(rep.to_json())

    def need_exact(self, ok: bool) -> None:
        if not ok and self.strict:
            self.failed = True


def parse_form(text: str) -> TernaryForm:
    try:
        vals = [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise click.BadParameter("expected six integers f11 f22 f33 f12 f13 f23")
    if len(vals) != 6:
        raise click.BadParameter("expected six integers f11 f22 f33 f12 f13 f23")
    return TernaryForm.from_coeffs(*vals)


@click.group()
@click.option("--threads", default=1, show_default=True, help="Worker processes.")
@click.option("--cache-dir", default=None, type=click.Path(file_okay=False), help="Genus cache directory.")
@click.option("--precision", default=64, show_default=True, help="Decimal digits for real constants.")
@click.option("--out", default=None, type=click.Path(dir_okay=False), help="Write output here.")
@click.option("--format", "fmt", default="json", type=click.Choice(["json", "csv"]), show_default=True)
@click.option("--strict", is_flag=True, help="Exit with status 2 when a result is not certified exact.")
@click.pass_context
def main(ctx, threads, cache_dir, precision, out, fmt, strict):
    """Ternary quadratic forms: minima, genera, masses and counts."""
    ctx.obj = Ctx(threads, cache_dir, precision, out, fmt, strict)


@main.result_callback()
@click.pass_obj
def _finish(obj: Ctx, *_, **__):
    if obj.failed:
        sys.exit(2)


@main.command()
@click.option("--top", default=11, show_default=True)
@click.option("--bound", default=12, show_default=True, help="Bound on |f_ij|.")
@click.option("--tau", default="2/9", show_default=True, help="Initial cut on mu.")
@click.pass_obj
def spectrum(obj: Ctx, top, bound, tau):
    """Largest values kappa^3/D."""
    from .counting import spectrum as run
    pts = run(top, bound, Fraction(tau))
    obj.need_exact(all(p.exactness.exact for p in pts))
    obj.table([dict(rank=i + 1, **p.as_dict()) for i, p in enumerate(pts)])


@main.command()
@click.option("--X", "X", required=True, type=int)
@click.option("--tmax", default=2, show_default=True)
@click.option("--points", default=10, show_default=True)
@click.pass_obj
def mar(obj: Ctx, X, tmax, points):
    """MAR(X) at genus level, with an uncertainty column."""
    from .counting import mar as run
    rep = run(X, tmax, points)
    obj.need_exact(not any(rep.uncertainty))
    obj.report(rep)


@main.command("mar-sf")
@click.option("--X", "X", required=True, type=int)
@click.option("--points", default=20, show_default=True)
@click.pass_obj
def mar_sf(obj: Ctx, X, points):
    """MAR#(X) over squarefree determinants."""
    from .counting import mar_squarefree
    obj.report(mar_squarefree(X, points))


def _sum_gh(obj: Ctx, X, points, which):
    from .counting import sum_genera_classes
    g, h = sum_genera_classes(X, points, obj.threads, obj.cache_dir)
    obj.report(g if which == "g" else h)


@main.command("sum-g")
@click.option("--X", "X", required=True, type=int)
@click.option("--points", default=20, show_default=True)
@click.pass_obj
def sum_g(obj: Ctx, X, points):
    """Sum of g(d) for d <= X with a c1 X log X + c2 X fit."""
    _sum_gh(obj, X, points, "g")


@main.command("sum-h")
@click.option("--X", "X", required=True, type=int)
@click.option("--points", default=20, show_default=True)
@click.pass_obj
def sum_h(obj: Ctx, X, points):
    """Sum of h(d) for d <= X with a c1 X log X + c2 X fit."""
    _sum_gh(obj, X, points, "h")


@main.command("iso-box")
@click.option("--X", "X", required=True, type=int)
@click.option("--check", "check", default=0, show_default=True,
              help="Also zero-search this many random forms of the largest box.")
@click.pass_obj
def iso_box(obj: Ctx, X, check):
    """Primitive isotropic forms with all |f_ij| <= X."""
    from .counting import iso_box_count, iso_cross_check
    try:
        rep = iso_box_count(X)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if check:
        res = iso_cross_check(X, sample=check)
        rep.extra["cross_check"] = vars(res)
        obj.need_exact(res.ok)
    obj.report(rep)


@main.command("iso-mass")
@click.option("--X", "X", required=True, type=int)
@click.option("--points", default=10, show_default=True)
@click.option("--pmax", default=10 ** 5, show_default=True)
@click.pass_obj
def iso_mass(obj: Ctx, X, points, pmax):
    """Sum of d nu^iso(d) against the predicted curve."""
    from .counting import iso_mass_sum
    obj.report(iso_mass_sum(X, points, pmax))


@main.command()
@click.option("--pmax", default=10 ** 5, show_default=True)
@click.pass_obj
def constants(obj: Ctx, pmax):
    """varpi, K(1) and sample values of I(s) with error bounds."""
    from . import euler
    dps = obj.precision
    with mpmath.workdps(dps):
        out = {"varpi": euler.varpi(pmax, dps).as_dict(),
               "K(1)": euler.K_at_1(pmax, dps).as_dict(),
               "I(s)": {s: euler.dirichlet_I(Fraction(s), pmax, dps).as_dict() for s in ("3/2", "2", "3")},
               "K(s)": {s: euler.K(Fraction(s), pmax, dps).as_dict() for s in ("3/4", "1", "3/2")},
               "squarefree_c": euler.squarefree_divisor_constant(pmax, dps).as_dict()}
    obj.emit(json.dumps(out, indent=2))


@main.command("local-table")
@click.option("--p", "p", default=2, show_default=True)
@click.option("--vmax", default=6, show_default=True, help="Largest exponent k in det = p^k.")
@click.option("--unit", default=1, show_default=True, help="Unit part of the determinant.")
@click.pass_obj
def local_table(obj: Ctx, p, vmax, unit):
    """Local classes of determinant p^k * unit, k <= vmax, grouped by (u, v, mass, iso)."""
    rows = []
    for k in range(vmax + 1):
        groups: dict = {}
        for c in enumerate_local_classes(p, k, unit):
            if p == 2:
                u, v = c.uv
                key = (u, v, normalized_mass2(c), c.isotropic)
            else:
                key = (None, None, local_mass(c), c.isotropic)
            groups.setdefault(key, []).append(c.text())
        for (u, v, m, iso), syms in groups.items():
            row = {"k": k}
            if p == 2:
                row.update(u=u, v=v, normalized_mass=str(m))
            else:
                row["mass"] = str(m)
            row.update(iso="Y" if iso else "N", symbols=",".join(syms), count=len(syms))
            rows.append(row)
    obj.table(rows, {"p": p, "vmax": vmax, "classes": sum(r["count"] for r in rows)})


@main.command()
@click.option("--form", "form", required=True, help='Six integers "f11 f22 f33 f12 f13 f23".')
@click.option("--max-radius", default=64, show_default=True)
@click.pass_obj
def kappa(obj: Ctx, form, max_radius):
    """Least nonzero |F(x)| with a certificate."""
    from .minima import kappa as run
    f = parse_form(form)
    try:
        res = run(f, max_radius)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    obj.need_exact(res.exact)
    obj.emit(json.dumps(res.as_dict()))


@main.command()
@click.option("--d", "d", required=True, type=int)
@click.pass_obj
def genera(obj: Ctx, d):
    """Genera of determinant d with K, K*, h and mass."""
    from .minima import local_min
    rows = []
    for g in enumerate_genera(d):
        lm = local_min(g)
        rows.append({"genus": g.text(), "isotropic": g.isotropic, "K": lm.k, "Kstar": lm.kstar,
                     "h": class_count(g), "mass_over_2zeta2": str(siegel_mass(g).normalized())})
    obj.table(rows, {"d": d, "g": len(rows), "h": sum(r["h"] for r in rows)})


@main.command()
@click.option("--form", "form", required=True, help='Six integers "f11 f22 f33 f12 f13 f23".')
@click.pass_obj
def mass(obj: Ctx, form):
    """Local masses and the finite part of the Siegel mass of a form's genus."""
    f = parse_form(form)
    if determinant(f) == 0:
        raise click.UsageError("singular form")
    try:
        g = genus_of(f)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    sm = siegel_mass(g)
    out = {"d": g.determinant, "sign": sign_normalize(f)[1],
           "local": {str(p): {"symbol": c.text(), "mass": str(local_mass(c))} for p, c in g.items},
           "finite_part": str(sm.finite), "primes": list(sm.primes),
           "nu": mpmath.nstr(sm.value(obj.precision), 20)}
    obj.emit(json.dumps(out, indent=2))


@main.command()
@click.argument("dest", type=click.Path(dir_okay=False))
@click.pass_obj
def export(obj: Ctx, dest):
    """Write the genus cache as CSV (d, g, h)."""
    from .store import GenusCache
    if not obj.cache_dir:
        raise click.UsageError("--cache-dir is required")
    n = GenusCache(obj.cache_dir).export_csv(dest)
    click.echo(f"{n} rows")


if __name__ == "__main__":
    main()
