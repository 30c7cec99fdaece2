"""Compiled batch kernels for exhaustive order-search validation.

The order search in :mod:`.pyramidal` must be checked against the
all-permutations oracle on every family of size->=2 subsets at n = 5,
which is 2**26 families.  That is out of reach for the pure Python
implementations, so this module carries a numba mirror of the same
backtracking algorithm plus a permutation-interval oracle, both reduced
to machine integers.

The mirror is trusted only through agreement: ``mirror_feasible`` is
compared against the real search exhaustively at n <= 4 and on samples at
n = 5 by the test suite before the big sweep runs.
"""

from __future__ import annotations

import itertools

import numpy as np
from numba import njit, prange

from .pyramidal import _search_order


def family_subsets(n: int) -> np.ndarray:
    """The size->=2 subsets of 0..n-1, ascending, as an int64 array."""
    return np.array([m for m in range(1 << n) if bin(m).count("1") >= 2],
                    dtype=np.int64)


def selection_masks(n: int, sel: int) -> list[int]:
    subs = family_subsets(n)
    return [int(subs[i]) for i in range(len(subs)) if (sel >> i) & 1]


@njit(cache=True)
def _feasible(sel: np.int64, subs: np.ndarray, n: np.int64) -> bool:
    """Backtracking order search over the subset family selected by sel.

    Same placement rule as the Python search: the next element must lie in
    every cluster that is started but unfinished, lowest index first.
    """
    nm = 0
    masks = np.empty(subs.shape[0], np.int64)
    for i in range(subs.shape[0]):
        if (sel >> i) & 1:
            masks[nm] = subs[i]
            nm += 1
    full = (np.int64(1) << n) - 1
    placed = np.int64(0)
    depth = 0
    seq = np.empty(n, np.int64)
    cand = np.empty(n + 1, np.int64)

    allowed = full
    for i in range(nm):
        m = masks[i]
        if (m & placed) != 0 and (m & ~placed & full) != 0:
            allowed &= m
    cand[0] = allowed

    while True:
        if depth == n:
            return True
        c = cand[depth]
        if c != 0:
            e = 0
            while ((c >> e) & 1) == 0:
                e += 1
            cand[depth] = c & ~(np.int64(1) << e)
            seq[depth] = e
            placed |= np.int64(1) << e
            depth += 1
            allowed = full & ~placed
            for i in range(nm):
                m = masks[i]
                if (m & placed) != 0 and (m & ~placed & full) != 0:
                    allowed &= m
            cand[depth] = allowed
        else:
            depth -= 1
            if depth < 0:
                return False
            placed &= ~(np.int64(1) << seq[depth])


def mirror_feasible(n: int, sel: int) -> bool:
    """Python entry point of the compiled search mirror."""
    return bool(_feasible(np.int64(sel), family_subsets(n), np.int64(n)))


def search_feasible(n: int, sel: int) -> bool:
    """The real (pure Python) search on the same selected family."""
    return _search_order(n, selection_masks(n, sel)) is not None


def perm_interval_masks(n: int) -> np.ndarray:
    """Per permutation, the selection mask of subsets that are intervals.

    A family sel is orderable exactly when sel is covered by some row:
    that is the all-permutations oracle, collapsed to one AND-NOT test per
    permutation.  Rows are deduplicated (each order and its reverse make
    the same intervals).
    """
    subs = [m for m in range(1 << n) if bin(m).count("1") >= 2]
    index = {m: i for i, m in enumerate(subs)}
    rows = set()
    for perm in itertools.permutations(range(n)):
        row = 0
        for lo in range(n):
            mask = 0
            for hi in range(lo, n):
                mask |= 1 << perm[hi]
                if hi > lo:
                    row |= 1 << index[mask]
        rows.add(row)
    return np.array(sorted(rows), dtype=np.int64)


def oracle_feasible(n: int, sel: int) -> bool:
    rows = perm_interval_masks(n)
    return bool(np.any((sel & ~rows) == 0))


@njit(parallel=True, cache=True)
def _agreement_block(subs: np.ndarray, rows: np.ndarray, n: np.int64,
                     lo: np.int64, hi: np.int64) -> np.int64:
    """Number of selections in [lo, hi) where search and oracle disagree."""
    mismatches = np.int64(0)
    for sel in prange(lo, hi):
        feas = _feasible(np.int64(sel), subs, n)
        orac = False
        for j in range(rows.shape[0]):
            if (sel & ~rows[j]) == 0:
                orac = True
                break
        if feas != orac:
            mismatches += 1
    return mismatches


def exhaustive_agreement(n: int) -> tuple[int, int]:
    """(families checked, mismatches) over every family of size->=2
    subsets at size n.  n = 5 is 2**26 families; larger sizes refuse."""
    if n > 5:
        raise ValueError("exhaustive agreement supported up to n = 5")
    subs = family_subsets(n)
    rows = perm_interval_masks(n)
    total = 1 << len(subs)
    mism = int(_agreement_block(subs, rows, np.int64(n),
                                np.int64(0), np.int64(total)))
    return total, mism


def first_mismatch(n: int) -> int | None:
    """Smallest disagreeing selection, for diagnostics; None when clean."""
    subs = family_subsets(n)
    rows = perm_interval_masks(n)
    for sel in range(1 << len(subs)):
        feas = bool(_feasible(np.int64(sel), subs, np.int64(n)))
        orac = bool(np.any((sel & ~rows) == 0))
        if feas != orac:
            return sel
    return None
