"""Built-in fixture instances with expected verdicts.

Each fixture is a document file under ``data/fixtures`` plus an
``.expected.json`` sidecar mapping check keys to expected booleans.

Check keys:

* a bare transit-axiom tag  -- checked on the fixture's transit function
  (for system fixtures there is no bare transit key);
* ``R:<tag>``               -- transit axiom of the canonical transit
  function of a system fixture;
* ``C:<predicate>``         -- system predicate of the transit-set system
  of a transit fixture;
* a bare system predicate, or ``prePyramidal`` / ``pyramidal`` /
  ``weaklyPyramidal``       -- checked on a system fixture.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .axioms import TRANSIT_AXIOMS, check_axiom
from .docio import (
    SystemDocument,
    TransitDocument,
    parse_system_document,
    parse_transit_document,
)
from .model import SetSystem, TransitFunction, canonical_transit_function, transit_sets
from .pyramidal import find_compatible_order, is_pyramidal, is_weakly_pyramidal
from .systems import check_system


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str  # "system" | "transit"
    document: SystemDocument | TransitDocument
    expected: dict[str, bool]
    description: str = ""

    @property
    def system(self) -> SetSystem:
        if self.kind == "system":
            return self.document.to_set_system()  # type: ignore[union-attr]
        return transit_sets(self.transit)

    @property
    def transit(self) -> TransitFunction:
        if self.kind == "transit":
            return self.document.to_transit_function()  # type: ignore[union-attr]
        return canonical_transit_function(self.system)


def _data_dir():
    return resources.files("transitclust").joinpath("data", "fixtures")


def load_fixture(name: str) -> Fixture:
    root = _data_dir()
    sidecar = json.loads(root.joinpath(f"{name}.expected.json").read_text())
    kind = sidecar["kind"]
    text = root.joinpath(f"{name}.txt").read_text()
    if kind == "system":
        doc = parse_system_document(text)
    else:
        doc = parse_transit_document(text)
    return Fixture(name, kind, doc, dict(sidecar["expected"]),
                   sidecar.get("description", ""))


def fixture_names() -> tuple[str, ...]:
    names = sorted(p.name[:-len(".expected.json")]
                   for p in _data_dir().iterdir()
                   if p.name.endswith(".expected.json"))
    return tuple(names)


def all_fixtures() -> tuple[Fixture, ...]:
    return tuple(load_fixture(n) for n in fixture_names())


def _eval_key(fixture: Fixture, key: str) -> bool:
    if key.startswith("R:"):
        return check_axiom(canonical_transit_function(fixture.system), key[2:]).holds
    if key.startswith("C:"):
        return check_system(transit_sets(fixture.transit), key[2:]).holds
    if key == "prePyramidal":
        return find_compatible_order(fixture.system).pre_pyramidal
    if key == "pyramidal":
        return is_pyramidal(fixture.system).holds
    if key == "weaklyPyramidal":
        return is_weakly_pyramidal(fixture.system).holds
    if fixture.kind == "transit" and key in TRANSIT_AXIOMS:
        return check_axiom(fixture.transit, key).holds
    return check_system(fixture.system, key).holds


def evaluate_fixture(fixture: Fixture) -> dict[str, tuple[bool, bool]]:
    """Per check key: (expected, actual)."""
    return {key: (exp, _eval_key(fixture, key))
            for key, exp in sorted(fixture.expected.items())}


def run_all() -> list[tuple[Fixture, dict[str, tuple[bool, bool]], bool]]:
    out = []
    for fixture in all_fixtures():
        results = evaluate_fixture(fixture)
        ok = all(exp == act for exp, act in results.values())
        out.append((fixture, results, ok))
    return out
