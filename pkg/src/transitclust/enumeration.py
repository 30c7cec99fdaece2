"""Exhaustive enumeration of small set systems and monotone transit
functions, implication sweeps, and the canned implication battery.

Monotone transit functions are enumerated through their T-systems: the
candidate space at n elements is all selections from the size->=2 subsets
(singletons are forced), which is far smaller than the raw function space
and covers every monotone function exactly once via the canonical
bijection.  All streams are deterministic: two runs yield identical
output, and partitioned sweeps merge with order-insensitive reductions.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from . import docio
from .axioms import TRANSIT_AXIOMS, check_axiom
from .model import (
    GroundSet,
    SetSystem,
    TransitFunction,
    canonical_transit_function,
    transit_sets,
)
from .pyramidal import find_compatible_order, is_pyramidal
from .systems import SYSTEM_PREDICATES, check_system

MAX_ENUM_N = 5
#: default letters used for enumerated ground sets
_LETTERS = "abcdefghij"


class EnumerationRangeError(ValueError):
    pass


class LongRunError(ValueError):
    """An n = 5 sweep was requested without the explicit long-run flag."""


def _groundset(n: int) -> GroundSet:
    return GroundSet(tuple(_LETTERS[:n]))


@lru_cache(maxsize=None)
def size_ge2_subsets(n: int) -> tuple[int, ...]:
    """All subsets of 0..n-1 with at least two members, ascending."""
    return tuple(m for m in range(1 << n) if m.bit_count() >= 2)


@dataclass(frozen=True)
class EnumerationSpec:
    """What to enumerate: ground-set size, predicate filters, required sets."""

    n: int
    filters: tuple[str, ...] = ()
    require_full: bool = False

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_ENUM_N:
            raise EnumerationRangeError(
                f"n = {self.n} outside the supported range 1..{MAX_ENUM_N}")
        for tag in self.filters:
            if tag not in SYSTEM_PREDICATES:
                raise ValueError(f"unknown system predicate {tag!r}")


def _candidate_system(gs: GroundSet, subsets: tuple[int, ...], sel: int) -> SetSystem:
    masks = [1 << i for i in range(gs.n)]
    k = sel
    while k:
        low = k & -k
        masks.append(subsets[low.bit_length() - 1])
        k ^= low
    return SetSystem(gs, tuple(masks))


def enumerate_systems(spec: EnumerationSpec) -> Iterator[SetSystem]:
    """Every set system over n elements containing all singletons and
    passing the filters, each exactly once, in canonical selection order."""
    gs = _groundset(spec.n)
    subsets = size_ge2_subsets(spec.n)
    full = gs.full_mask
    for sel in range(1 << len(subsets)):
        system = _candidate_system(gs, subsets, sel)
        if spec.require_full and full not in system.mask_set:
            continue
        if all(check_system(system, tag).holds for tag in spec.filters):
            yield system


def _is_t_system(system: SetSystem) -> bool:
    # KS is forced structurally by the candidate generator
    return (check_system(system, "KC").holds
            and check_system(system, "KR").holds)


@lru_cache(maxsize=None)
def t_systems(n: int) -> tuple[SetSystem, ...]:
    """All T-systems over n elements, canonical order, cached."""
    if not 1 <= n <= MAX_ENUM_N:
        raise EnumerationRangeError(f"n = {n} outside the supported range")
    gs = _groundset(n)
    subsets = size_ge2_subsets(n)
    out = []
    for sel in range(1 << len(subsets)):
        system = _candidate_system(gs, subsets, sel)
        if _is_t_system(system):
            out.append(system)
    return tuple(out)


def t_system_count(n: int) -> int:
    return len(t_systems(n))


def enumerate_monotone_tfs(n: int) -> Iterator[TransitFunction]:
    """Every monotone transit function on n elements, via the canonical
    bijection with T-systems."""
    for system in t_systems(n):
        yield canonical_transit_function(system)


def enumerate_all_transit_functions(n: int) -> Iterator[TransitFunction]:
    """Every transit function (monotone or not) on n elements; n <= 4."""
    if not 1 <= n <= 4:
        raise EnumerationRangeError("full transit-function space only up to n = 4")
    gs = _groundset(n)
    pair_choices = []
    for u, v in gs.pairs():
        base = (1 << u) | (1 << v)
        rest = gs.full_mask & ~base
        extras = sorted(_submasks(rest))
        pair_choices.append([base | e for e in extras])
    for table in itertools.product(*pair_choices):
        yield TransitFunction(gs, table)


def _submasks(mask: int) -> list[int]:
    """All submasks of mask, including 0 and mask itself."""
    out = []
    sub = mask
    while True:
        out.append(sub)
        if sub == 0:
            return out
        sub = (sub - 1) & mask


# ---------------------------------------------------------------------------
# Implication claims


@dataclass(frozen=True)
class ImplicationClaim:
    """hypothesis (conjunction) => conclusion, with an expectation.

    ``domain`` selects the instance stream: "monotone" (all monotone
    transit functions), "all-transit" (every transit function, n <= 4),
    "tsystems" and "systems" (system-level predicates).  An independent
    claim may name a stored fixture counterexample.
    """

    hypothesis: tuple[str, ...]
    conclusion: str
    expected: str = "implies"  # "implies" | "independent" | "report"
    domain: str = "monotone"
    stored_fixture: str | None = None

    def label(self) -> str:
        arrow = "=>" if self.expected == "implies" else "=/=>"
        if self.expected == "report":
            arrow = "?=>"
        return f"({' & '.join(self.hypothesis)}) {arrow} {self.conclusion}"


@dataclass(frozen=True)
class ImplicationReport:
    claim: ImplicationClaim
    instances_checked: int
    counterexample: object | None
    counterexample_doc: dict | None
    status: str  # "confirmed" | "refuted" | "report"

    def __post_init__(self) -> None:
        if self.claim.expected == "implies":
            assert (self.status == "refuted") == (self.counterexample is not None)


_LADDER_TAGS = ("prePyramidal", "pyramidal", "weaklyPyramidal")


def _eval_tag(tag: str, system: SetSystem | None, R: TransitFunction | None,
              cache: dict) -> bool:
    if tag in cache:
        return cache[tag]
    if tag in TRANSIT_AXIOMS:
        if R is None:
            raise ValueError(f"transit axiom {tag!r} needs a transit function")
        value = check_axiom(R, tag).holds
    elif tag == "prePyramidal":
        value = find_compatible_order(_require(system)).pre_pyramidal
    elif tag == "pyramidal":
        value = is_pyramidal(_require(system)).holds
    elif tag in SYSTEM_PREDICATES:
        value = check_system(_require(system), tag).holds
    else:
        raise ValueError(f"unknown claim tag {tag!r}")
    cache[tag] = value
    return value


def _require(system: SetSystem | None) -> SetSystem:
    if system is None:
        raise ValueError("system-level tag used without a set system")
    return system


def _violates(claim: ImplicationClaim, system: SetSystem | None,
              R: TransitFunction | None) -> bool:
    cache: dict = {}
    if not all(_eval_tag(t, system, R, cache) for t in claim.hypothesis):
        return False
    return not _eval_tag(claim.conclusion, system, R, cache)


def _domain_instances(domain: str, n: int
                      ) -> Iterator[tuple[SetSystem | None, TransitFunction | None]]:
    if domain in ("monotone", "tsystems"):
        for system in t_systems(n):
            yield system, canonical_transit_function(system)
    elif domain == "all-transit":
        if n > 4:
            return
        for R in enumerate_all_transit_functions(n):
            yield transit_sets(R), R
    elif domain == "systems":
        for system in enumerate_systems(EnumerationSpec(n)):
            yield system, None
    else:
        raise ValueError(f"unknown claim domain {domain!r}")


def _counterexample_doc(system: SetSystem | None, R: TransitFunction | None) -> dict:
    if R is not None:
        return docio.TransitDocument.from_transit_function(R).to_json_dict()
    return docio.SystemDocument.from_set_system(_require(system)).to_json_dict()


def verify_implication(claim: ImplicationClaim, n_max: int,
                       *, long_run: bool = False) -> ImplicationReport:
    """Sweep all instances of the claim's domain up to n_max.

    "implies" is confirmed by a counterexample-free sweep; "independent"
    is confirmed by a discovered counterexample or by the claim's stored
    fixture; "report" never judges, it only reports what the sweep found.
    """
    if n_max > MAX_ENUM_N:
        raise EnumerationRangeError(f"n_max = {n_max} beyond {MAX_ENUM_N}")
    if n_max >= 5 and not long_run:
        raise LongRunError("n = 5 sweeps must be requested with long_run=True")
    checked = 0
    found: tuple[SetSystem | None, TransitFunction | None] | None = None
    for n in range(1, n_max + 1):
        for system, R in _domain_instances(claim.domain, n):
            checked += 1
            if _violates(claim, system, R):
                found = (system, R)
                break
        if found:
            break

    if claim.expected == "implies":
        if found:
            return ImplicationReport(claim, checked, found[1] or found[0],
                                     _counterexample_doc(*found), "refuted")
        return ImplicationReport(claim, checked, None, None, "confirmed")

    if found is None and claim.stored_fixture is not None:
        from .fixtures import load_fixture
        fx = load_fixture(claim.stored_fixture)
        system = fx.system
        R = fx.transit if claim.domain != "systems" else None
        if _violates(claim, system, R):
            found = (system, R)
            checked += 1

    if claim.expected == "report":
        doc = _counterexample_doc(*found) if found else None
        obj = (found[1] or found[0]) if found else None
        return ImplicationReport(claim, checked, obj, doc, "report")

    # expected "independent"
    if found:
        return ImplicationReport(claim, checked, found[1] or found[0],
                                 _counterexample_doc(*found), "confirmed")
    return ImplicationReport(claim, checked, None, None, "refuted")


def implication_battery() -> tuple[ImplicationClaim, ...]:
    """The canned implication summary: every proved arrow plus every
    stored counterexample, and the open question as a report-only claim."""
    imp = [
        (("w",), "w2"), (("w2",), "w"), (("w",), "w3"), (("w3",), "w"),
        (("w",), "mm"), (("w",), "x'"), (("mm", "x'"), "w"),
        (("mm",), "a'"),
        (("uc",), "k"), (("uc",), "u"), (("uc",), "w"), (("uc",), "wp"),
        (("uc",), "x"), (("uc",), "prePyramidal"),
        (("u", "x'"), "x"), (("x",), "u"), (("x",), "x'"),
        (("wp",), "o'"), (("u",), "o"), (("o",), "o'"),
        (("pyramidal",), "o"),
    ]
    claims = [ImplicationClaim(h, c) for h, c in imp]
    claims += [
        ImplicationClaim(("K1", "K2"), "K3", domain="tsystems"),
        ImplicationClaim(("MM",), "K3", domain="tsystems"),
        ImplicationClaim(("K3",), "K1", domain="tsystems"),
        ImplicationClaim(("W'",), "weakHierarchy", domain="systems"),
        ImplicationClaim(("weakHierarchy",), "W'", domain="systems"),
    ]
    claims += [
        ImplicationClaim(("x'",), "w", "independent", stored_fixture="xprime-not-w"),
        ImplicationClaim(("mm",), "w", "independent", stored_fixture="mm-not-w"),
        ImplicationClaim(("u",), "uc", "independent", stored_fixture="u-not-uc"),
        ImplicationClaim(("w",), "wp", "independent", stored_fixture="w-not-wp"),
        ImplicationClaim(("wp",), "w", "independent", stored_fixture="triangle"),
        ImplicationClaim(("o'",), "wp", "independent",
                         stored_fixture="oprime-not-wp"),
        ImplicationClaim(("o'", "wp"), "o", "independent",
                         stored_fixture="oprime-wp-not-o"),
        ImplicationClaim(("w",), "m", "independent", domain="all-transit",
                         stored_fixture="w-not-m"),
        ImplicationClaim(("K3",), "MM", "independent", domain="tsystems",
                         stored_fixture="k3-not-mm"),
        ImplicationClaim(("K1",), "K3", "independent", domain="tsystems",
                         stored_fixture="k1-not-k3"),
    ]
    claims.append(ImplicationClaim(("u", "weakHierarchy"), "prePyramidal",
                                   "report"))
    return tuple(claims)


# ---------------------------------------------------------------------------
# Counterexample search (size-ordered, used by the non-implication battery)


def _systems_by_cluster_count(n: int) -> Iterator[SetSystem]:
    gs = _groundset(n)
    subsets = size_ge2_subsets(n)
    sing = tuple(1 << i for i in range(n))
    for k in range(len(subsets) + 1):
        for combo in itertools.combinations(subsets, k):
            yield SetSystem(gs, sing + combo)


def search_counterexample(hypothesis: tuple[str, ...], conclusion: str,
                          max_n: int, domain: str = "monotone",
                          ) -> tuple[SetSystem | None, TransitFunction | None] | None:
    """First instance (smallest n, then fewest clusters) satisfying the
    hypothesis but not the conclusion; None if none exists up to max_n."""
    claim = ImplicationClaim(hypothesis, conclusion, "independent", domain)
    for n in range(2, max_n + 1):
        if domain == "all-transit":
            if n > 4:
                break
            for R in enumerate_all_transit_functions(n):
                if _violates(claim, None if _only_transit(claim) else transit_sets(R), R):
                    return transit_sets(R), R
        else:
            for system in _systems_by_cluster_count(n):
                if not _is_t_system(system):
                    continue
                R = canonical_transit_function(system)
                if _violates(claim, system, R):
                    return system, R
    return None


def _only_transit(claim: ImplicationClaim) -> bool:
    return all(t in TRANSIT_AXIOMS for t in claim.hypothesis + (claim.conclusion,))


# ---------------------------------------------------------------------------
# Census


DEFAULT_CENSUS_SUBSETS: tuple[tuple[str, ...], ...] = tuple(
    [(t,) for t in TRANSIT_AXIOMS]
    + [("mm", "x'"), ("u", "x'"), ("o'", "wp"), ("uc", "wp"), ("w", "wp")]
)


def census(n: int, subsets: tuple[tuple[str, ...], ...] | None = None,
           *, long_run: bool = False) -> dict[str, int]:
    """Counts of monotone transit functions satisfying each axiom subset.

    Counts are labeled (not up-to-isomorphism).  n = 5 requires the
    long-run flag.
    """
    if n >= 5 and not long_run:
        raise LongRunError("n = 5 census must be requested with long_run=True")
    subsets = subsets if subsets is not None else DEFAULT_CENSUS_SUBSETS
    counts = {"&".join(s): 0 for s in subsets}
    total = 0
    for system in t_systems(n):
        R = canonical_transit_function(system)
        cache: dict = {}
        total += 1
        for s in subsets:
            if all(_eval_tag(t, system, R, cache) for t in s):
                counts["&".join(s)] += 1
    out = {"total": total}
    out.update(counts)
    return out


# ---------------------------------------------------------------------------
# Partitioned sweep with deterministic merge


def default_workers() -> int:
    env = os.environ.get("TRANSITCLUST_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _monotone_claims(claims: tuple[ImplicationClaim, ...]) -> list[int]:
    return [i for i, c in enumerate(claims)
            if c.domain in ("monotone", "tsystems")]


def _sweep_block(args: tuple[int, int, int]) -> dict:
    """One partition of the candidate-selection space at size n.

    Returns additive counts plus, per monotone/tsystem claim, the smallest
    violating selection index in the block (deterministic reduction key).
    """
    n, lo, hi = args
    gs = _groundset(n)
    subsets = size_ge2_subsets(n)
    claims = implication_battery()
    idxs = _monotone_claims(claims)
    axiom_counts = {t: 0 for t in TRANSIT_AXIOMS}
    t_count = 0
    first_violation: dict[int, int] = {}
    for sel in range(lo, hi):
        system = _candidate_system(gs, subsets, sel)
        if not _is_t_system(system):
            continue
        t_count += 1
        R = canonical_transit_function(system)
        cache: dict = {}
        for t in TRANSIT_AXIOMS:
            if _eval_tag(t, system, R, cache):
                axiom_counts[t] += 1
        for i in idxs:
            if i in first_violation:
                continue
            claim = claims[i]
            if (all(_eval_tag(t, system, R, cache) for t in claim.hypothesis)
                    and not _eval_tag(claim.conclusion, system, R, cache)):
                first_violation[i] = sel
    return {"t_count": t_count, "axiom_counts": axiom_counts,
            "first_violation": first_violation}


def sweep_report(n: int, workers: int | None = None,
                 *, long_run: bool = False) -> dict:
    """Machine-readable report over all monotone transit functions at one
    size: T-system count, per-axiom counts, and the battery verdicts.

    Byte-identical across runs and worker counts: partitions merge by
    additive counts and minimum violating selection index.
    """
    if n >= 5 and not long_run:
        raise LongRunError("n = 5 sweeps must be requested with long_run=True")
    workers = workers if workers is not None else default_workers()
    subsets = size_ge2_subsets(n)
    total = 1 << len(subsets)
    workers = max(1, min(workers, total))
    step = (total + workers - 1) // workers
    blocks = [(n, lo, min(lo + step, total)) for lo in range(0, total, step)]
    if workers == 1:
        partials = [_sweep_block(b) for b in blocks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_sweep_block, blocks))

    t_count = sum(p["t_count"] for p in partials)
    axiom_counts = {t: sum(p["axiom_counts"][t] for p in partials)
                    for t in TRANSIT_AXIOMS}
    claims = implication_battery()
    first_violation: dict[int, int] = {}
    for p in partials:
        for i, sel in p["first_violation"].items():
            if i not in first_violation or sel < first_violation[i]:
                first_violation[i] = sel

    gs = _groundset(n)
    claim_rows = []
    for i, claim in enumerate(claims):
        row = {"hypothesis": list(claim.hypothesis),
               "conclusion": claim.conclusion,
               "expected": claim.expected,
               "domain": claim.domain,
               "counterexample": None}
        if claim.domain in ("monotone", "tsystems"):
            if i in first_violation:
                system = _candidate_system(gs, subsets, first_violation[i])
                R = canonical_transit_function(system)
                row["counterexample"] = _counterexample_doc(system, R)
                row["status"] = ("refuted" if claim.expected == "implies"
                                 else "confirmed" if claim.expected == "independent"
                                 else "report")
            else:
                row["status"] = _absent_status(claim, n)
                if row["status"] == "confirmed" and claim.expected == "independent":
                    row["counterexample"] = _stored_doc(claim)
        else:
            rep = verify_implication(claim, min(n, 4), long_run=long_run)
            row["status"] = rep.status
            row["counterexample"] = rep.counterexample_doc
        claim_rows.append(row)

    return {"schema_version": docio.SCHEMA_VERSION, "n": n,
            "tsystem_count": t_count, "axiom_counts": axiom_counts,
            "claims": claim_rows}


def _absent_status(claim: ImplicationClaim, n: int) -> str:
    if claim.expected == "implies":
        return "confirmed"
    if claim.expected == "report":
        return "report"
    # independent with no sweep counterexample: fall back to the fixture
    if claim.stored_fixture is not None:
        from .fixtures import load_fixture
        fx = load_fixture(claim.stored_fixture)
        if _violates(claim, fx.system, fx.transit):
            return "confirmed"
    return "refuted"


def _stored_doc(claim: ImplicationClaim) -> dict | None:
    from .fixtures import load_fixture
    if claim.stored_fixture is None:
        return None
    fx = load_fixture(claim.stored_fixture)
    if fx.kind == "transit":
        return fx.document.to_json_dict()
    return docio.SystemDocument.from_set_system(fx.system).to_json_dict()


def sweep_report_json(n: int, workers: int | None = None,
                      *, long_run: bool = False) -> str:
    return json.dumps(sweep_report(n, workers, long_run=long_run), sort_keys=True)
