"""Corpus loading and per-entry pipelines."""

from __future__ import annotations

import time
from dataclasses import dataclass
from importlib import resources

import yaml

from ..algebra.groebner import GroebnerBudget
from ..criteria import adjoint_sl2_slices, condition_star, condition_useEm, delta_bounds
from ..jetcheck import irrelevance_verdict, mustata_level, shell_1_modular, shell_dim_and_CI, singular_stratum_dims
from ..repmodel import RepAction, dual, direct_sum, is_orthogonal, lagrangian_choices
from ..shell import moment_generators
from ..torus import has_fpig, is_stable, m0, modularity_profile, null_cone_dim
from .specfile import ModuleSpec, budget_from, parse_spec

__all__ = ["CorpusEntry", "load_corpus", "run_entry", "compare", "shell_results", "torus_results"]

PROVENANCE = ("PAPER", "DERIVED", "TRIVIAL")


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    title: str
    spec: ModuleSpec
    expected: tuple[dict, ...]


def load_corpus(text: str | None = None) -> dict[str, CorpusEntry]:
    if text is None:
        text = resources.files("shelljet.cli").joinpath("corpus.yaml").read_text()
    data = yaml.safe_load(text)
    out = {}
    for e in data["entries"]:
        for exp in e["expected"]:
            if exp.get("provenance") not in PROVENANCE:
                raise ValueError(f"{e['id']}: {exp.get('key')} lacks a provenance tag")
        out[e["id"]] = CorpusEntry(e["id"], e["title"], parse_spec(e["spec"], e["id"]), tuple(e["expected"]))
    return out


def shell_results(action: RepAction, levels, budget: GroebnerBudget, order: str = "grevlex") -> tuple[dict, dict]:
    """Shell dimension, CI flag, rank strata, both 1-modularity routes, jet inequalities."""
    times = {}
    s = moment_generators(action, order)
    t0 = time.perf_counter()
    dim_n, ci = shell_dim_and_CI(s, budget)
    times["shell"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    strata = singular_stratum_dims(s, budget)
    times["strata"] = time.perf_counter() - t0
    one_mod = shell_1_modular(s, budget, dim_n, strata)
    res = {
        "shell.dim_n": dim_n,
        "shell.is_ci": ci,
        "shell.expected_ci_dim": 2 * s.dim_v - s.dim_g,
        "shell.strata": {str(r): d for r, d in sorted(strata.items())},
        "shell.one_modular": one_mod,
    }
    levels = sorted(set(levels) | {1})
    for m in levels:
        t0 = time.perf_counter()
        r = mustata_level(s, m, budget, dim_n)
        times[f"jet.{m}"] = time.perf_counter() - t0
        res[f"jet.{m}.lhs"] = r.lhs
        res[f"jet.{m}.rhs"] = r.rhs
        res[f"jet.{m}.holds"] = r.holds
    res["shell.one_modular_jet"] = res["jet.1.holds"]
    res["shell.lemma_equivalence"] = res["shell.one_modular"] == res["jet.1.holds"]
    return res, times


def torus_results(action: RepAction) -> dict:
    w = action.weight_data
    prof = modularity_profile(w)
    res = {
        "torus.m0": m0(w),
        "torus.null_cone_dim": null_cone_dim(w),
        "torus.stable": is_stable(w),
        "torus.fpig": has_fpig(w),
        "torus.orthogonal": is_orthogonal(w),
        "torus.max_k": prof.max_k,
        "torus.profile": {str(r): d for r, d in prof.entries.items()},
    }
    u = direct_sum(action, dual(action)).weight_data
    choice = None
    for lag in lagrangian_choices(u):
        if has_fpig(lag):
            choice = [list(a) for a in sorted(lag.weights, reverse=True)]
            break
    res["utcls.fpig_choice"] = choice
    return res


def adjoint_chain_results(p: int) -> dict:
    slices = adjoint_sl2_slices(p)
    torus, full = slices
    res = {
        "chain.torus_slice_weights": [list(a) for a in sorted(set(_w0_weights(p)), reverse=True)],
        "chain.torus_delta": delta_bounds(torus).delta,
        "chain.torus_use_em_branch": condition_useEm(torus).witnesses.get("branch"),
        "chain.sl2_delta": delta_bounds(full).delta,
        "chain.sl2_use_em_branch": condition_useEm(full).witnesses.get("branch"),
        "chain.star": condition_star(slices).status,
        "chain.cifr": irrelevance_verdict(slices).status,
        "chain.slices": [q.to_dict() for q in slices],
    }
    return res


def _w0_weights(p: int):
    from ..repvar import tangent_cone_model

    spec = tangent_cone_model(p, 1).shell_spec()
    ws = spec["module"][0]["weights"]
    return [tuple(a) for a in ws if any(a)]


def _adjoint_multiplicity(spec: ModuleSpec) -> int | None:
    """p when the spec is p copies of the adjoint of SL2."""
    raw = spec.raw
    group = raw["group"] if isinstance(raw["group"], list) else [raw["group"]]
    if [str(g).upper() for g in group] != ["SL2"]:
        return None
    mods = raw["module"]
    if len(mods) == 1 and mods[0].get("tag") == "adjoint" and not mods[0].get("dual", False):
        return int(mods[0].get("multiplicity", 1))
    return None


def run_entry(entry: CorpusEntry, budget: GroebnerBudget | None = None) -> tuple[dict, dict]:
    """All results for one corpus entry and the wall-clock time per stage."""
    spec = entry.spec
    budget = budget or budget_from(spec.options)
    action = spec.action()
    res, times = shell_results(action, spec.options.jet_levels, budget, spec.options.order)
    if action.group.is_torus:
        t0 = time.perf_counter()
        res.update(torus_results(action))
        times["torus"] = time.perf_counter() - t0
    p = _adjoint_multiplicity(spec)
    if p is not None and p >= 2:
        t0 = time.perf_counter()
        res.update(adjoint_chain_results(p))
        times["chain"] = time.perf_counter() - t0
    return res, times


def compare(entry: CorpusEntry, results: dict) -> list[dict]:
    rows = []
    for exp in entry.expected:
        key = exp["key"]
        actual = results.get(key, "<missing>")
        rows.append(
            {
                "key": key,
                "expected": exp["value"],
                "actual": actual,
                "provenance": exp["provenance"],
                "citation": exp["citation"],
                "match": actual == exp["value"],
            }
        )
    return rows
