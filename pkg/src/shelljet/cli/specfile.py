"""YAML module specifications.

A spec names the group factors, the module summands and optional settings::

    group: [SL2]
    module:
      - {factor: 0, tag: standard, multiplicity: 3}
    options:
      order: grevlex
      jet_levels: [1, 2]
      max_pairs: 200000
      seed: 7

Unknown keys anywhere are rejected.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from ..algebra.groebner import GroebnerBudget
from ..algebra.polynomial import ORDERS
from ..repmodel import ModuleDescriptor, RepAction, RepError, Summand, build_action, parse_group

__all__ = ["SpecError", "Options", "ModuleSpec", "load_spec", "parse_spec", "budget_from"]

TOP_KEYS = {"group", "module", "options", "name"}
SUMMAND_KEYS = {"factor", "tag", "multiplicity", "dual", "weights"}
OPTION_KEYS = {"order", "jet_levels", "max_pairs", "max_terms", "seed", "so_form"}


class SpecError(ValueError):
    """Malformed specification file."""


@dataclass(frozen=True)
class Options:
    order: str = "grevlex"
    jet_levels: tuple[int, ...] = (1,)
    max_pairs: int | None = None
    max_terms: int | None = None
    seed: int | None = None
    so_form: str = "split"


@dataclass(frozen=True)
class ModuleSpec:
    name: str
    raw: dict
    options: Options = field(default_factory=Options)

    def action(self) -> RepAction:
        try:
            group = parse_group(self.raw["group"])
            summands = tuple(_summand(s) for s in self.raw["module"])
            return build_action(group, ModuleDescriptor(summands), so_form=self.options.so_form)
        except RepError as exc:
            raise SpecError(str(exc)) from exc

    def budget(self) -> GroebnerBudget:
        return budget_from(self.options)


def budget_from(options: Options) -> GroebnerBudget:
    """File values first, then ``SHELLJET_MAX_PAIRS`` / ``SHELLJET_MAX_TERMS`` override."""
    d = GroebnerBudget()
    pairs = options.max_pairs if options.max_pairs is not None else d.max_pairs
    terms = options.max_terms if options.max_terms is not None else d.max_terms
    pairs = int(os.environ.get("SHELLJET_MAX_PAIRS", pairs))
    terms = int(os.environ.get("SHELLJET_MAX_TERMS", terms))
    return GroebnerBudget(pairs, terms)


def _check_keys(d: dict, allowed: set, where: str):
    if not isinstance(d, dict):
        raise SpecError(f"{where} must be a mapping")
    extra = sorted(set(d) - allowed)
    if extra:
        raise SpecError(f"unknown key(s) in {where}: {', '.join(map(str, extra))}")


def _summand(d: dict) -> Summand:
    _check_keys(d, SUMMAND_KEYS, "module summand")
    if "tag" not in d:
        raise SpecError("module summand needs a tag")
    weights = d.get("weights")
    if weights is not None:
        if not isinstance(weights, list) or not weights:
            raise SpecError("weights must be a nonempty list")
        rows = []
        for w in weights:
            w = w if isinstance(w, list) else [w]
            for v in w:
                if isinstance(v, bool) or not isinstance(v, int):
                    raise SpecError(f"non-integer weight entry {v!r}")
            rows.append(tuple(w))
        weights = tuple(rows)
    try:
        return Summand(
            factor=int(d.get("factor", 0)),
            tag=str(d["tag"]),
            multiplicity=int(d.get("multiplicity", 1)),
            dual=bool(d.get("dual", False)),
            weights=weights,
        )
    except RepError as exc:
        raise SpecError(str(exc)) from exc


def parse_spec(data: dict, name: str = "spec") -> ModuleSpec:
    _check_keys(data, TOP_KEYS, "spec")
    for key in ("group", "module"):
        if key not in data:
            raise SpecError(f"spec needs a '{key}' block")
    if not isinstance(data["module"], list):
        raise SpecError("'module' must be a list of summands")
    opts = data.get("options", {}) or {}
    _check_keys(opts, OPTION_KEYS, "options")
    order = opts.get("order", "grevlex")
    if order not in ORDERS:
        raise SpecError(f"unknown monomial order {order!r}")
    levels = opts.get("jet_levels", [1])
    if not isinstance(levels, list) or not all(isinstance(m, int) and m >= 1 for m in levels):
        raise SpecError("jet_levels must be a list of integers >= 1")
    so_form = opts.get("so_form", "split")
    if so_form not in ("split", "compact"):
        raise SpecError("so_form must be 'split' or 'compact'")
    options = Options(
        order=order,
        jet_levels=tuple(levels),
        max_pairs=opts.get("max_pairs"),
        max_terms=opts.get("max_terms"),
        seed=opts.get("seed"),
        so_form=so_form,
    )
    spec = ModuleSpec(name=str(data.get("name", name)), raw=data, options=options)
    spec.action()  # validate eagerly
    return spec


def load_spec(path: str | Path) -> ModuleSpec:
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text())
    except (OSError, yaml.YAMLError) as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    return parse_spec(data, path.stem)
