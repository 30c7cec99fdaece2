"""Recognition of pre-pyramidal / pyramidal / weakly pyramidal systems.

``find_compatible_order`` is an incremental backtracking search over
element placements: an order is grown left to right, and any cluster that
has been started but not finished must receive the next element.  The
search is exact; ``brute_force_order`` (all n! permutations, vectorized
with numpy) serves as the independent oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .model import (
    Cluster,
    CompatibleOrder,
    SetSystem,
    Verdict,
    bit_indices,
    fails,
    holds,
    popcount,
)
from .systems import check_system, check_weak_hierarchy


class NotATSystemError(ValueError):
    pass


class FactorialSearchError(ValueError):
    """Ground set too large for the all-permutations oracle."""


@dataclass(frozen=True)
class OrderSearchResult:
    pre_pyramidal: bool
    order: CompatibleOrder | None
    obstruction: tuple[Cluster, ...] | None

    def __post_init__(self) -> None:
        assert self.pre_pyramidal == (self.order is not None)


def _search_order(n: int, masks: list[int]) -> tuple[int, ...] | None:
    """First order (element sequence) making every mask contiguous, or None.

    A partial placement is extendable only by elements contained in every
    open cluster (started but unfinished), which prunes exactly the
    placements that already break an interval.
    """
    full = (1 << n) - 1
    seq: list[int] = []
    placed = 0
    cand_stack: list[list[int]] = []

    def candidates() -> list[int]:
        allowed = full & ~placed
        for m in masks:
            if m & placed and m & ~placed:
                allowed &= m
        return bit_indices(allowed)  # type: ignore[return-value]

    cand_stack.append(list(candidates()))
    while True:
        if len(seq) == n:
            return tuple(seq)
        if cand_stack[-1]:
            e = cand_stack[-1].pop(0)
            seq.append(e)
            placed |= 1 << e
            cand_stack.append(list(candidates()))
        else:
            cand_stack.pop()
            if not seq:
                return None
            e = seq.pop()
            placed &= ~(1 << e)


def _canonical_sequence(seq: tuple[int, ...]) -> tuple[int, ...]:
    rev = tuple(reversed(seq))
    return seq if seq <= rev else rev


def _to_order(system: SetSystem, seq: tuple[int, ...]) -> CompatibleOrder:
    positions = [0] * len(seq)
    for pos, elem in enumerate(seq):
        positions[elem] = pos
    return CompatibleOrder(system.groundset, tuple(positions))


def order_certifies(system: SetSystem, order: CompatibleOrder) -> bool:
    """Independent certificate check: every cluster is an interval."""
    for m in system.masks:
        pos = [order.positions[e] for e in bit_indices(m)]
        if max(pos) - min(pos) + 1 != len(pos):
            return False
    return True


def _relevant_masks(system: SetSystem) -> list[int]:
    # singletons and duplicates never constrain the order
    seen = []
    for m in system.masks:
        if popcount(m) >= 2 and m not in seen:
            seen.append(m)
    return seen


def _obstruction(system: SetSystem, decide) -> tuple[Cluster, ...]:
    """Shortest prefix of the (canonically ordered) clusters that already
    admits no compatible order.  Not a minimal obstruction in the Tucker
    sense."""
    masks = _relevant_masks(system)
    for k in range(1, len(masks) + 1):
        if decide(masks[:k]) is None:
            return tuple(Cluster(system.groundset, m) for m in masks[:k])
    raise AssertionError("obstruction requested for an orderable system")


def find_compatible_order(system: SetSystem) -> OrderSearchResult:
    """Exact recognition of pre-pyramidal (interval-hypergraph) structure."""
    n = system.groundset.n
    masks = _relevant_masks(system)
    seq = _search_order(n, masks)
    if seq is None:
        return OrderSearchResult(False, None,
                                 _obstruction(system, lambda ms: _search_order(n, ms)))
    return OrderSearchResult(True, _to_order(system, _canonical_sequence(seq)), None)


_PERM_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _perm_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """(perms, inverse) arrays in lexicographic permutation order."""
    if n not in _PERM_CACHE:
        perms = np.array(list(itertools.permutations(range(n))), dtype=np.int8)
        inv = np.argsort(perms, axis=1).astype(np.int8)
        _PERM_CACHE[n] = (perms, inv)
    return _PERM_CACHE[n]


def _brute_force_sequence(n: int, masks: list[int]) -> tuple[int, ...] | None:
    if not masks:
        return tuple(range(n))
    perms, inv = _perm_tables(n)
    valid = np.ones(len(perms), dtype=bool)
    for m in masks:
        mem = np.array(bit_indices(m), dtype=np.int64)
        pos = inv[:, mem]
        valid &= (pos.max(axis=1) - pos.min(axis=1)) == len(mem) - 1
        if not valid.any():
            return None
    first = int(np.argmax(valid))
    return tuple(int(e) for e in perms[first])


def brute_force_order(system: SetSystem) -> OrderSearchResult:
    """Oracle twin of :func:`find_compatible_order`: tries all n!
    permutations (vectorized).  Test use only; capped at n = 10."""
    n = system.groundset.n
    if n > 10:
        raise FactorialSearchError(f"n = {n} is too large for factorial search")
    masks = _relevant_masks(system)
    seq = _brute_force_sequence(n, masks)
    if seq is None:
        return OrderSearchResult(
            False, None,
            _obstruction(system, lambda ms: _brute_force_sequence(n, ms)))
    return OrderSearchResult(True, _to_order(system, _canonical_sequence(seq)), None)


def is_pyramidal(system: SetSystem) -> Verdict:
    """Pre-pyramidal and closed under nonempty intersection (K2)."""
    res = find_compatible_order(system)
    if not res.pre_pyramidal:
        assert res.obstruction is not None
        wit = tuple(c.members for c in res.obstruction)
        return fails("pyramidal", wit, detail="not pre-pyramidal")
    k2 = check_system(system, "K2")
    if not k2.holds:
        return Verdict("pyramidal", False, k2.witness, "K2 fails")
    return holds("pyramidal")


def is_weakly_pyramidal(system: SetSystem) -> Verdict:
    """Weak hierarchy satisfying (WP)."""
    wh = check_weak_hierarchy(system)
    if not wh.holds:
        return Verdict("weaklyPyramidal", False, wh.witness, "not a weak hierarchy")
    wp = check_system(system, "WP")
    if not wp.holds:
        return Verdict("weaklyPyramidal", False, wp.witness, "WP fails")
    return holds("weaklyPyramidal")


#: Classification ladder entries, from most to least restrictive.
LADDER_CLASSES = (
    "hierarchy", "pairedHierarchy", "ucb", "pyramidal", "prePyramidal",
    "weaklyPyramidal", "weakHierarchy", "binaryClustering",
)


@dataclass(frozen=True)
class LadderReport:
    """Membership of a T-system in the hierarchy-to-weak-hierarchy chain."""

    classes: dict[str, bool]
    order: CompatibleOrder | None

    def __getitem__(self, name: str) -> bool:
        return self.classes[name]


def classify_ladder(system: SetSystem) -> LadderReport:
    """Full class-membership report; requires a T-system."""
    ts = check_system(system, "Tsystem")
    if not ts.holds:
        raise NotATSystemError(f"not a T-system: {ts.detail}")
    res = find_compatible_order(system)
    k1 = check_system(system, "K1").holds
    uc = check_system(system, "UC").holds
    classes = {
        "hierarchy": check_system(system, "H").holds,
        "pairedHierarchy": check_system(system, "pairedH").holds,
        "ucb": uc and k1,
        "pyramidal": is_pyramidal(system).holds,
        "prePyramidal": res.pre_pyramidal,
        "weaklyPyramidal": is_weakly_pyramidal(system).holds,
        "weakHierarchy": check_weak_hierarchy(system).holds,
        "binaryClustering": k1,
    }
    return LadderReport(classes, res.order)
