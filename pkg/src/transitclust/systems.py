"""Set-system predicates: T-system axioms, hierarchy families, union closure.

Witnesses name clusters as sorted tuples of element indices so they stay
plain data and serialize deterministically.
"""

from __future__ import annotations

from .model import (
    AmbiguousMinimalClusterError,
    Cluster,
    GroundSetMismatchError,
    NoCoveringClusterError,
    SetSystem,
    Verdict,
    bit_indices,
    fails,
    holds,
    minimal_cluster_containing,
)

#: Closed set of system-predicate tags.
SYSTEM_PREDICATES = (
    "KS", "KR", "KC", "K1", "K2", "K3", "MM", "UC", "H",
    "pairedH", "weakHierarchy", "W'", "WP",
    "Tsystem", "binaryClustering", "clusteringSystem",
)


def _members(mask: int) -> tuple[int, ...]:
    return bit_indices(mask)


def _check_KS(system: SetSystem) -> Verdict:
    for i in range(system.groundset.n):
        if (1 << i) not in system.mask_set:
            return fails("KS", (i,), detail="missing singleton")
    return holds("KS")


def _check_KR(system: SetSystem) -> Verdict:
    for c in system.masks:
        pinned = False
        mem = _members(c)
        for i, p in enumerate(mem):
            for q in mem[i:]:
                need = (1 << p) | (1 << q)
                if all(c & ~other == 0 or other & need != need
                       for other in system.masks):
                    pinned = True
                    break
            if pinned:
                break
        if not pinned:
            return fails("KR", (mem,), detail="no pair pins this cluster")
    return holds("KR")


def _check_KC(system: SetSystem) -> Verdict:
    gs = system.groundset
    for u, v in gs.pairs():
        need = (1 << u) | (1 << v)
        inter = gs.full_mask
        found = False
        for m in system.masks:
            if m & need == need:
                inter &= m
                found = True
        if not found:
            return fails("KC", (u, v), detail="pair covered by no cluster")
        if inter not in system.mask_set:
            return fails("KC", (u, v),
                         detail="intersection of covers is not a cluster")
    return holds("KC")


def _check_K1(system: SetSystem) -> Verdict:
    if system.groundset.full_mask in system.mask_set:
        return holds("K1")
    return fails("K1", (), detail="X is not a cluster")


def _check_K2(system: SetSystem) -> Verdict:
    masks = system.masks
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            inter = a & b
            if inter and inter not in system.mask_set:
                return fails("K2", (_members(a), _members(b)))
    return holds("K2")


def _check_K3(system: SetSystem) -> Verdict:
    masks = system.masks
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if a & b == 0:
                continue
            union = a | b
            covers = [c for c in masks if union & ~c == 0]
            if not covers:
                return fails("K3", (_members(a), _members(b)),
                             detail="no cluster covers the union")
            minimal = [c for c in covers
                       if not any(d != c and d & c == d for d in covers)]
            if len(minimal) > 1:
                return fails("K3", (_members(a), _members(b)),
                             detail="two incomparable minimal covers")
    return holds("K3")


def _check_MM(system: SetSystem) -> Verdict:
    gs = system.groundset
    masks = system.masks
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if a & b == 0:
                continue
            union = a | b
            mem = _members(union)
            ok = False
            for ii, p in enumerate(mem):
                for q in mem[ii + 1:]:
                    try:
                        cpq = minimal_cluster_containing(
                            system, gs.labels[p], gs.labels[q])
                    except (NoCoveringClusterError, AmbiguousMinimalClusterError):
                        # the axiom's "the inclusion-minimal set" presupposes
                        # uniqueness; such pairs are skipped as candidates
                        continue
                    if union & ~cpq.bits == 0:
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                return fails("MM", (_members(a), _members(b)))
    return holds("MM")


def _check_UC(system: SetSystem) -> Verdict:
    masks = system.masks
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if a & b and (a | b) not in system.mask_set:
                return fails("UC", (_members(a), _members(b)))
    return holds("UC")


def _check_H(system: SetSystem) -> Verdict:
    masks = system.masks
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if a & b == 0:
                continue
            if a & b == a or a & b == b:
                continue
            return fails("H", (_members(a), _members(b)))
    return holds("H")


def _properly_overlap(a: int, b: int) -> bool:
    inter = a & b
    return bool(inter) and inter != a and inter != b


def _check_pairedH(system: SetSystem) -> Verdict:
    masks = system.masks
    for i, a in enumerate(masks):
        partners = [b for b in masks if b != a and _properly_overlap(a, b)]
        if len(partners) > 1:
            return fails("pairedH",
                         (_members(a), _members(partners[0]), _members(partners[1])),
                         detail="cluster properly overlaps two others")
    return holds("pairedH")


def check_weak_hierarchy(system: SetSystem) -> Verdict:
    """Triple condition: A.B.C is one of the pairwise intersections."""
    masks = system.masks
    m = len(masks)
    for i in range(m):
        a = masks[i]
        for j in range(i + 1, m):
            b = masks[j]
            ab = a & b
            for k in range(j + 1, m):
                c = masks[k]
                if ab & c in (ab, a & c, b & c):
                    continue
                return fails("weakHierarchy",
                             (_members(a), _members(b), _members(c)))
    return holds("weakHierarchy")


def check_W_prime(system: SetSystem) -> Verdict:
    """(W'): A meets both B-only and C-only parts => B.C inside A."""
    masks = system.masks
    m = len(masks)
    for ia in range(m):
        a = masks[ia]
        for j in range(m):
            b = masks[j]
            for k in range(j + 1, m):
                c = masks[k]
                if a & (b & ~c) and a & (c & ~b) and (b & c) & ~a:
                    return fails("W'", (_members(a), _members(b), _members(c)))
    return holds("W'")


def _check_WP(system: SetSystem) -> Verdict:
    masks = system.masks
    m = len(masks)
    for i in range(m):
        a = masks[i]
        for j in range(i + 1, m):
            b = masks[j]
            if a & b == 0:
                continue
            for k in range(j + 1, m):
                c = masks[k]
                if a & c == 0 or b & c == 0:
                    continue
                if a & ~(b | c) == 0 or b & ~(a | c) == 0 or c & ~(a | b) == 0:
                    continue
                return fails("WP", (_members(a), _members(b), _members(c)))
    return holds("WP")


def _check_Tsystem(system: SetSystem) -> Verdict:
    for tag in ("KS", "KR", "KC"):
        v = check_system(system, tag)
        if not v.holds:
            return Verdict("Tsystem", False, v.witness, f"{tag} fails")
    return holds("Tsystem")


def _check_binary_clustering(system: SetSystem) -> Verdict:
    v = _check_Tsystem(system)
    if not v.holds:
        return Verdict("binaryClustering", False, v.witness, v.detail)
    v1 = _check_K1(system)
    if not v1.holds:
        return Verdict("binaryClustering", False, v1.witness, "K1 fails")
    return holds("binaryClustering")


def _check_clustering_system(system: SetSystem) -> Verdict:
    ks = _check_KS(system)
    if not ks.holds:
        return Verdict("clusteringSystem", False, ks.witness, "missing singleton")
    k1 = _check_K1(system)
    if not k1.holds:
        return Verdict("clusteringSystem", False, k1.witness, "X missing")
    return holds("clusteringSystem")


_PREDICATES = {
    "KS": _check_KS,
    "KR": _check_KR,
    "KC": _check_KC,
    "K1": _check_K1,
    "K2": _check_K2,
    "K3": _check_K3,
    "MM": _check_MM,
    "UC": _check_UC,
    "H": _check_H,
    "pairedH": _check_pairedH,
    "weakHierarchy": check_weak_hierarchy,
    "W'": check_W_prime,
    "WP": _check_WP,
    "Tsystem": _check_Tsystem,
    "binaryClustering": _check_binary_clustering,
    "clusteringSystem": _check_clustering_system,
}


def check_system(system: SetSystem, predicate: str) -> Verdict:
    try:
        checker = _PREDICATES[predicate]
    except KeyError:
        raise ValueError(f"unknown system predicate {predicate!r}") from None
    return checker(system)


def _union_step(masks: frozenset[int]) -> frozenset[int]:
    out = set(masks)
    items = sorted(masks)
    for i, a in enumerate(items):
        for b in items[i + 1:]:
            if a & b:
                out.add(a | b)
    return frozenset(out)


def union_closure(system: SetSystem) -> SetSystem:
    """Smallest family with all singletons, the original clusters, and
    closure under unions of intersecting members (iterated to fixpoint)."""
    gs = system.groundset
    current = frozenset(system.masks) | {1 << i for i in range(gs.n)}
    while True:
        nxt = _union_step(current)
        if nxt == current:
            return SetSystem(gs, tuple(current))
        current = nxt


def nebesky_triple_test(A: Cluster, B: Cluster, C: Cluster) -> Verdict:
    """Order-free test deciding pre-pyramidality of the union closure of
    three clusters: (W') in every role assignment plus (WP)."""
    gs = A.groundset
    if B.groundset != gs or C.groundset != gs:
        raise GroundSetMismatchError("clusters must share one ground set")
    trip = (A.bits, B.bits, C.bits)
    for ia in range(3):
        a = trip[ia]
        b, c = (trip[j] for j in range(3) if j != ia)
        if a & (b & ~c) and a & (c & ~b) and (b & c) & ~a:
            return fails("nebeskyTriple",
                         (_members(a), _members(b), _members(c)),
                         detail="(W') fails")
    a, b, c = trip
    if a & b and a & c and b & c:
        if not (a & ~(b | c) == 0 or b & ~(a | c) == 0 or c & ~(a | b) == 0):
            return fails("nebeskyTriple",
                         (_members(a), _members(b), _members(c)),
                         detail="(WP) fails")
    return holds("nebeskyTriple")
