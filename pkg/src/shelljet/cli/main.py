"""``shelljet`` command-line interface.

Exit codes: 0 all green, 1 verdict mismatch, 2 resource abort, 3 input error.
"""

from __future__ import annotations

import functools
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click
import numpy as np
import yaml

from ..algebra.groebner import ResourceLimitError
from ..criteria import (
    SliceQuantities,
    condition_orthogonal,
    condition_star,
    condition_useEm,
    delta_bounds,
    dimG_modular_shortcut,
    property_F,
    property_N,
    adjoint_sl2_slices,
    torus_slice_quantities,
)
from ..jetcheck import irrelevance_verdict, mustata_level, shell_dim_and_CI
from ..repmodel import RepError, is_orthogonal
from ..repvar import DEFAULT_SEED, WordMap, evaluate_word_map, local_dimension, sample_solution, centralizer_dim
from ..shell import export_polynomials, jet_generators, moment_generators
from ..torus import NotComputedError, isotropy_subtori, m0, m0_orthogonal_formula, modularity_profile, null_cone_dim
from ..torus import has_fpig, is_stable, torus_slice_reps
from .corpus import _adjoint_multiplicity, compare, load_corpus, run_entry, shell_results, torus_results
from .report import Record, Report
from .specfile import SpecError, load_spec

EXIT_OK, EXIT_MISMATCH, EXIT_RESOURCE, EXIT_INPUT = 0, 1, 2, 3


def _emit(report: Report, output: str | None, timings: bool) -> None:
    text = report.dumps(timings)
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)


def guarded(fn):
    """Map library exceptions to the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            code = fn(*args, **kwargs)
        except (ResourceLimitError, NotComputedError) as exc:
            click.echo(f"resource abort: {exc}", err=True)
            sys.exit(EXIT_RESOURCE)
        except (SpecError, RepError, KeyError, ValueError) as exc:
            click.echo(f"input error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        sys.exit(code or EXIT_OK)

    return wrapper


def _common(fn):
    fn = click.option("--timings", is_flag=True, help="Include wall-clock runtimes (reports stop being byte-stable).")(fn)
    fn = click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the report here instead of stdout.")(fn)
    return fn


@click.group()
@click.version_option(package_name="shelljet")
def cli():
    """Moment-map shells, jet schemes and rational-singularity criteria."""


def _spec_input(spec) -> dict:
    return {"name": spec.name, "spec": spec.raw}


# --------------------------------------------------------------------------


@cli.command()
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--export", "export_path", type=click.Path(dir_okay=False), help="Also write the shell generators as text.")
@_common
@guarded
def shell(spec_file, export_path, output, timings):
    """Shell dimension, complete-intersection test, rank strata and 1-modularity."""
    spec = load_spec(spec_file)
    action = spec.action()
    res, times = shell_results(action, (1,), spec.budget(), spec.options.order)
    rep = Report("shell", _spec_input(spec))
    rep.add(
        Record(
            "shell_dim_and_CI",
            "dim N = 2 dim V - dim G exactly when N is a complete intersection",
            {"dim_v": action.dim, "dim_g": action.dim_g},
            {"dim_n": res["shell.dim_n"], "is_ci": res["shell.is_ci"], "expected_ci_dim": res["shell.expected_ci_dim"]},
            "computed",
            times["shell"],
        )
    )
    rep.add(
        Record(
            "singular_stratum_dims",
            "rank of d mu <= dim G - r cut out by the (dim G - r + 1)-minors",
            {"ambient": "complete intersection" if res["shell.is_ci"] else "rank locus (shell not CI)"},
            res["shell.strata"],
            "computed",
            times["strata"],
        )
    )
    rep.add(
        Record(
            "shell_1_modular",
            "N 1-modular iff dim N - dim N_(r) >= r + 1 for r >= 1, iff the level-one jet inequality holds",
            {},
            {
                "strata_route": res["shell.one_modular"],
                "jet_route": res["shell.one_modular_jet"],
                "agree": res["shell.lemma_equivalence"],
            },
            "holds" if res["shell.one_modular"] else "fails",
            times["jet.1"],
        )
    )
    if export_path:
        Path(export_path).write_text(export_polynomials(list(moment_generators(action).mu_generators)))
    rep.verdict = "green" if res["shell.lemma_equivalence"] else "mismatch"
    _emit(rep, output, timings)
    return EXIT_OK if rep.verdict == "green" else EXIT_MISMATCH


@cli.command()
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--level", "levels", type=int, multiple=True, help="Jet level m >= 1 (repeatable); default from the spec.")
@_common
@guarded
def jet(spec_file, levels, output, timings):
    """Mustata inequality dim rho_m^{-1}(N_sing) < (m+1) dim N at chosen levels."""
    spec = load_spec(spec_file)
    action = spec.action()
    levels = levels or spec.options.jet_levels
    if any(m < 1 for m in levels):
        raise ValueError("jet levels must be >= 1")
    budget = spec.budget()
    s = moment_generators(action, spec.options.order)
    dim_n, ci = shell_dim_and_CI(s, budget)
    rep = Report("jet", {**_spec_input(spec), "levels": sorted(levels)})
    for m in sorted(set(levels)):
        t0 = time.perf_counter()
        r = mustata_level(s, m, budget, dim_n)
        rep.add(
            Record(
                f"mustata_level_{m}",
                "dim rho_m^{-1}(N_sing) < (m+1) dim N",
                {"m": m, "dim_n": dim_n, "is_ci": ci},
                {"lhs": r.lhs, "rhs": r.rhs},
                "holds" if r.holds else "fails",
                time.perf_counter() - t0,
            )
        )
    rep.add(Record("scope", "verified for m <= M only", {"M": max(levels)}, None, "note"))
    _emit(rep, output, timings)
    return EXIT_OK


@cli.command()
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("what", type=click.Choice(["m0", "modularity", "stability", "slices"]))
@click.option("--null-cone/--no-null-cone", default=True, help="Compute slice null-cone dimensions by Groebner.")
@_common
@guarded
def torus(spec_file, what, null_cone, output, timings):
    """Weight geometry of a torus module."""
    spec = load_spec(spec_file)
    action = spec.action()
    if not action.group.is_torus:
        raise ValueError("torus commands need a torus group")
    w = action.weight_data
    rep = Report(f"torus {what}", _spec_input(spec))
    t0 = time.perf_counter()
    if what == "m0":
        res = {"m0": m0(w), "null_cone_dim": null_cone_dim(w)}
        if is_orthogonal(w):
            res["orthogonal_formula"] = m0_orthogonal_formula(w)
        rep.add(Record("m0", "largest weight set positive on one cocharacter", {"weights": w.weights}, res, "computed"))
        agree = res["m0"] == res["null_cone_dim"] and res.get("orthogonal_formula", res["m0"]) == res["m0"]
        rep.verdict = "green" if agree else "mismatch"
    elif what == "modularity":
        prof = modularity_profile(w)
        rep.add(
            Record(
                "modularity_profile",
                "codim V_(r) >= r + k for all r >= 1",
                {"weights": w.weights},
                {"entries": prof.entries, "max_k": prof.max_k},
                "computed",
            )
        )
        v = dimG_modular_shortcut(prof.max_k, action.dim_g)
        rep.add(Record(v.name, v.citation, v.witnesses, None, v.status))
    elif what == "stability":
        res = torus_results(action)
        rep.add(
            Record(
                "stability",
                "stable iff 0 in the relative interior of the weight hull; FPIG iff also full rank",
                {"weights": w.weights},
                {
                    "stable": res["torus.stable"],
                    "fpig": res["torus.fpig"],
                    "orthogonal": res["torus.orthogonal"],
                    "utcls_fpig_choice": res["utcls.fpig_choice"],
                },
                "computed",
            )
        )
    else:
        rep.add(
            Record(
                "isotropy_subtori",
                "identity components of isotropy groups",
                {"weights": w.weights},
                [list(map(list, h)) for h in isotropy_subtori(w)],
                "computed",
            )
        )
        for k, sd in enumerate(torus_slice_reps(w)):
            q = torus_slice_quantities(sd, f"slice{k}", null_cone=null_cone, budget=spec.budget())
            v = condition_useEm(q)
            rep.add(
                Record(
                    f"slice{k}",
                    "S = S^H + S0 at a closed orbit",
                    {"flat": sorted(sd.flat), "h_basis": sd.h_basis},
                    {"w0_weights": sd.w0_weights.weights, "dim_w_fixed": sd.dim_w_fixed, **q.to_dict()},
                    v.status,
                )
            )
    rep.records[0].runtime = time.perf_counter() - t0
    _emit(rep, output, timings)
    return EXIT_OK if rep.verdict == "green" else EXIT_MISMATCH


SLICE_KEYS = {
    "label",
    "dim_h",
    "h_is_torus",
    "dim_u",
    "dim_w0",
    "dim_w0_t",
    "m0_w0",
    "dim_null_n0",
    "dim_null_n0_sg",
    "fpig_w0",
    "w0_orthogonal",
}


def _slices_from_file(path) -> tuple[list[SliceQuantities], dict]:
    data = yaml.safe_load(Path(path).read_text())
    if isinstance(data, dict) and "slices" in data:
        if set(data) - {"slices"}:
            raise SpecError(f"unknown key(s) in slice file: {sorted(set(data) - {'slices'})}")
        out = []
        for i, d in enumerate(data["slices"]):
            extra = set(d) - SLICE_KEYS
            if extra:
                raise SpecError(f"unknown key(s) in slice {i}: {sorted(extra)}")
            d = dict(d)
            d.setdefault("label", f"slice{i}")
            try:
                out.append(SliceQuantities(**d))
            except TypeError as exc:
                raise SpecError(str(exc)) from exc
        return out, {"slices": data["slices"]}
    spec = load_spec(path)
    action = spec.action()
    if action.group.is_torus:
        qs = [
            torus_slice_quantities(sd, f"slice{k}", budget=spec.budget())
            for k, sd in enumerate(torus_slice_reps(action.weight_data))
        ]
        return [q for q in qs if q.dim_h > 0], _spec_input(spec)
    p = _adjoint_multiplicity(spec)
    if p is not None and p >= 2:
        return adjoint_sl2_slices(p), _spec_input(spec)
    raise ValueError("slice data for this group must be supplied in a slice file")


@cli.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@_common
@guarded
def criteria(input_file, output, timings):
    """Slice conditions (F), (N), delta bounds, use-E_m, orthogonal form, (*) and CIFR."""
    slices, echo = _slices_from_file(input_file)
    rep = Report("criteria", echo)
    for q in slices:
        for v in (property_F(q), property_N(q), condition_useEm(q)):
            rep.add(Record(f"{q.label}.{v.name}", v.citation, q.to_dict(), v.witnesses, v.status))
        if q.dim_h > 0 and q.m0_w0 is not None:
            db = delta_bounds(q)
            rep.add(
                Record(
                    f"{q.label}.delta_bounds",
                    "delta = dim W0 - dim H - m0(W0); bounds dim W0 - delta - dim H/U and dim S0 - 2 delta - dim H - dim H/U",
                    q.to_dict(),
                    {"delta": db.delta, "bound_null_w0": db.bound_null_w0, "bound_null_s0": db.bound_null_s0},
                    "computed",
                )
            )
        if q.w0_orthogonal:
            v = condition_orthogonal(q)
            rep.add(Record(f"{q.label}.{v.name}", v.citation, q.to_dict(), v.witnesses, v.status))
    star = condition_star(slices)
    rep.add(Record(star.name, star.citation, {}, star.witnesses, star.status))
    cifr = irrelevance_verdict(slices)
    rep.add(Record(cifr.name, cifr.citation, {}, cifr.witnesses, cifr.status))
    _emit(rep, output, timings)
    return EXIT_OK


@cli.command()
@click.option("--genus", "-p", type=int, default=2, show_default=True)
@click.option("--group", type=click.Choice(["sl2", "so3"]), default="sl2", show_default=True)
@click.option("--samples", "-k", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--tol", type=float, default=1e-10, show_default=True)
@_common
@guarded
def repvar(genus, group, samples, seed, tol, output, timings):
    """Sample Hom(pi, G) for a genus-p surface group and read off local dimensions."""
    wm = WordMap(genus, group)
    rng = np.random.default_rng(seed)
    rep = Report("repvar", {"genus": genus, "group": group, "samples": samples, "seed": seed, "tol": tol})
    good = 0
    for i in range(samples):
        t0 = time.perf_counter()
        pt = sample_solution(wm, tol=tol, rng=rng)
        phi, jac = evaluate_word_map(wm, pt)
        fd = np.abs(jac - evaluate_word_map(wm, pt, method="fd")[1]).max()
        ld = local_dimension(wm, pt)
        ok = ld.dimension == wm.expected_dim and ld.status == "ok"
        good += ok
        rep.add(
            Record(
                f"sample{i}",
                "dim Hom(pi, G) = (2p - 1) dim G",
                {"index": i},
                {
                    "rank": ld.rank,
                    "local_dim": ld.dimension,
                    "residual_below_tol": bool(np.linalg.norm(phi - np.eye(wm.n)) < tol),
                    "jacobians_agree": bool(fd < 1e-5),
                    "centralizer_dim": centralizer_dim(wm, pt),
                },
                "holds" if ok else "fails",
                time.perf_counter() - t0,
            )
        )
    ident = np.array([np.eye(wm.n)] * wm.n_entries)
    ld = local_dimension(wm, ident)
    rep.add(
        Record(
            "identity_point",
            "zero Jacobian at the trivial representation",
            {},
            {"rank": ld.rank, "zariski_tangent_dim": ld.dimension, "singular": ld.singular_point},
            "singular" if ld.singular_point else "ok",
        )
    )
    rep.add(
        Record(
            "summary",
            "dim Hom(pi, G) = (2p - 1) dim G",
            {"expected_dim": wm.expected_dim},
            {"matching": good, "samples": samples},
            "holds" if good == samples else "fails",
        )
    )
    rep.verdict = "green" if good == samples else "mismatch"
    _emit(rep, output, timings)
    return EXIT_OK if good == samples else EXIT_MISMATCH


def _run_one(entry_id: str):
    entry = load_corpus()[entry_id]
    t0 = time.perf_counter()
    try:
        res, _ = run_entry(entry)
    except ResourceLimitError as exc:
        return entry_id, None, str(exc), time.perf_counter() - t0
    return entry_id, res, None, time.perf_counter() - t0


@cli.command()
@click.option("--all", "run_all", is_flag=True, help="Run every corpus entry.")
@click.option("--id", "ids", multiple=True, help="Run one entry (repeatable).")
@click.option("--jobs", "-j", type=int, default=1, show_default=True, help="Entries run in parallel processes.")
@_common
@guarded
def corpus(run_all, ids, jobs, output, timings):
    """Run corpus entries and diff them against their expected outcomes."""
    entries = load_corpus()
    if run_all:
        ids = sorted(entries)
    if not ids:
        raise ValueError("give --all or at least one --id")
    unknown = [i for i in ids if i not in entries]
    if unknown:
        raise ValueError(f"unknown corpus id(s): {', '.join(unknown)}")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            outcomes = list(ex.map(_run_one, ids))
    else:
        outcomes = [_run_one(i) for i in ids]
    rep = Report("corpus", {"ids": list(ids)})
    mismatch = resource = False
    for entry_id, res, err, runtime in outcomes:
        entry = entries[entry_id]
        if err is not None:
            resource = True
            rep.add(Record(entry_id, entry.title, {}, {"error": err}, "resource-abort", runtime))
            continue
        rows = compare(entry, res)
        bad = [r for r in rows if not r["match"]]
        mismatch = mismatch or bool(bad)
        rep.add(
            Record(
                entry_id,
                entry.title,
                {"spec": entry.spec.raw},
                {"checks": rows, "results": res},
                "match" if not bad else "mismatch",
                runtime,
            )
        )
    rep.verdict = "resource-abort" if resource else "mismatch" if mismatch else "green"
    _emit(rep, output, timings)
    if resource:
        return EXIT_RESOURCE
    return EXIT_MISMATCH if mismatch else EXIT_OK


@cli.command()
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--level", type=int, default=0, show_default=True, help="Jet level (0 = the shell itself).")
@click.option("-o", "--output", type=click.Path(dir_okay=False))
@guarded
def export(spec_file, level, output):
    """Write shell or jet generators in plain text, one per line."""
    spec = load_spec(spec_file)
    s = moment_generators(spec.action(), spec.options.order)
    gens = list(s.mu_generators) if level == 0 else list(jet_generators(s, level).generators)
    text = export_polynomials(gens)
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    cli()
