"""Core value types: ground sets, clusters, set systems, and transit functions.

Everything is immutable after construction.  Element subsets are stored as
bit masks over the element indices of a :class:`GroundSet`, which keeps all
set algebra down to single machine-word operations for the supported
capacity of 64 elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence, Union

MAX_ELEMENTS = 64


class ModelError(ValueError):
    """Base class for errors raised while building core values."""


class CapacityError(ModelError):
    """Ground set exceeds the supported number of elements."""


class GroundSetMismatchError(ModelError):
    """Two values that must share a ground set do not."""


class MissingPairError(ModelError):
    """A transit-function table does not cover some unordered pair."""


class DuplicatePairError(ModelError):
    """A transit-function table assigns the same unordered pair twice."""


class EndpointMissingError(ModelError):
    """An assigned transit set does not contain both of its endpoints."""


class NoCoveringClusterError(ModelError):
    """No cluster of a set system contains both queried elements."""

    def __init__(self, message: str, pair: tuple[str, str]):
        super().__init__(message)
        self.pair = pair


class AmbiguousMinimalClusterError(ModelError):
    """Two incomparable clusters are both inclusion-minimal covers."""

    def __init__(self, message: str, pair: tuple[str, str],
                 candidates: tuple[tuple[str, ...], ...]):
        super().__init__(message)
        self.pair = pair
        self.candidates = candidates


def popcount(bits: int) -> int:
    return bits.bit_count()


def bit_indices(bits: int) -> tuple[int, ...]:
    """Indices of the set bits, ascending."""
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return tuple(out)


@dataclass(frozen=True)
class GroundSet:
    """Ordered universe of labeled elements.

    Element identity is the index of its label; label order is insertion
    order and fixes the deterministic order used for witnesses everywhere.
    """

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        n = len(self.labels)
        if n < 1:
            raise ModelError("ground set must have at least one element")
        if n > MAX_ELEMENTS:
            raise CapacityError(f"ground set has {n} elements, supported maximum is {MAX_ELEMENTS}")
        if len(set(self.labels)) != n:
            raise ModelError("ground set labels must be unique")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ModelError(f"unknown element label {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        bits = 0
        for lab in labels:
            bits |= 1 << self.index(lab)
        return bits

    def labels_of(self, bits: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bit_indices(bits))

    def pairs(self) -> Iterator[tuple[int, int]]:
        """All unordered pairs (u, v) with u < v, lexicographic."""
        n = self.n
        for u in range(n):
            for v in range(u + 1, n):
                yield u, v


@dataclass(frozen=True)
class Cluster:
    """A nonempty subset of a ground set, bit-indexed."""

    groundset: GroundSet
    bits: int

    def __post_init__(self) -> None:
        if self.bits == 0:
            raise ModelError("a cluster must be nonempty")
        if self.bits & ~self.groundset.full_mask:
            raise ModelError("cluster members outside the ground set")

    @property
    def members(self) -> tuple[int, ...]:
        return bit_indices(self.bits)

    @property
    def labels(self) -> tuple[str, ...]:
        return self.groundset.labels_of(self.bits)

    @property
    def size(self) -> int:
        return popcount(self.bits)

    def __contains__(self, index: int) -> bool:
        return bool((self.bits >> index) & 1)

    def __repr__(self) -> str:
        return f"Cluster({{{', '.join(self.labels)}}})"


ClusterLike = Union[Cluster, int, Iterable[str]]


def _as_bits(groundset: GroundSet, value: ClusterLike) -> int:
    if isinstance(value, Cluster):
        if value.groundset != groundset:
            raise GroundSetMismatchError("cluster built over a different ground set")
        return value.bits
    if isinstance(value, int):
        return value
    return groundset.mask(value)


@dataclass(frozen=True)
class SetSystem:
    """A duplicate-free collection of clusters over one ground set.

    ``masks`` is kept sorted ascending by bit value, which gives every
    system a canonical, deterministic cluster order.
    """

    groundset: GroundSet
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        seen = set()
        full = self.groundset.full_mask
        for m in self.masks:
            if m == 0:
                raise ModelError("the empty set is never a cluster")
            if m & ~full:
                raise ModelError("cluster members outside the ground set")
            if m in seen:
                raise ModelError("duplicate cluster in set system")
            seen.add(m)
        object.__setattr__(self, "masks", tuple(sorted(self.masks)))

    @classmethod
    def build(cls, groundset: GroundSet, clusters: Iterable[ClusterLike],
              *, merge_duplicates: bool = False) -> "SetSystem":
        bits = [_as_bits(groundset, c) for c in clusters]
        if merge_duplicates:
            bits = list(dict.fromkeys(bits))
        return cls(groundset, tuple(bits))

    @cached_property
    def mask_set(self) -> frozenset[int]:
        return frozenset(self.masks)

    @property
    def clusters(self) -> tuple[Cluster, ...]:
        return tuple(Cluster(self.groundset, m) for m in self.masks)

    def __contains__(self, value: ClusterLike) -> bool:
        return _as_bits(self.groundset, value) in self.mask_set

    def __len__(self) -> int:
        return len(self.masks)

    def __repr__(self) -> str:
        sets = ", ".join("{%s}" % ",".join(self.groundset.labels_of(m)) for m in self.masks)
        return f"SetSystem([{sets}])"

    def has_all_singletons(self) -> bool:
        return all((1 << i) in self.mask_set for i in range(self.groundset.n))


def _pair_index(n: int, u: int, v: int) -> int:
    # lexicographic rank of (u, v) with u < v
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


@dataclass(frozen=True)
class TransitFunction:
    """Symmetric pair-indexed map from unordered pairs to transit sets.

    The table stores only pairs u < v in lexicographic order; symmetry is
    structural and R(u, u) = {u} is implicit.  Equality of two transit
    functions is pairwise equality of all transit sets.
    """

    groundset: GroundSet
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.groundset.n
        expected = n * (n - 1) // 2
        if len(self.table) != expected:
            raise MissingPairError(
                f"transit table has {len(self.table)} entries, expected {expected}")
        full = self.groundset.full_mask
        for k, bits in enumerate(self.table):
            u, v = _pair_from_index(n, k)
            if bits & ~full:
                raise ModelError("transit set members outside the ground set")
            need = (1 << u) | (1 << v)
            if bits & need != need:
                lu, lv = self.groundset.labels[u], self.groundset.labels[v]
                raise EndpointMissingError(
                    f"R({lu},{lv}) does not contain both endpoints")

    def bits(self, u: int, v: int) -> int:
        """Transit set R(u, v) as a bit mask; handles u == v."""
        if u == v:
            return 1 << u
        if u > v:
            u, v = v, u
        return self.table[_pair_index(self.groundset.n, u, v)]

    def transit_set(self, u: str, v: str) -> Cluster:
        return Cluster(self.groundset,
                       self.bits(self.groundset.index(u), self.groundset.index(v)))

    def pairs(self) -> Iterator[tuple[int, int, int]]:
        """Yield (u, v, bits) for every stored pair u < v."""
        n = self.groundset.n
        k = 0
        for u in range(n):
            for v in range(u + 1, n):
                yield u, v, self.table[k]
                k += 1


def _pair_from_index(n: int, k: int) -> tuple[int, int]:
    u = 0
    row = n - 1
    while k >= row:
        k -= row
        u += 1
        row -= 1
    return u, u + 1 + k


@dataclass(frozen=True)
class CompatibleOrder:
    """A total order on the ground set, as element index -> position."""

    groundset: GroundSet
    positions: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.positions) != list(range(self.groundset.n)):
            raise ModelError("positions must be a permutation of 0..n-1")

    @property
    def sequence(self) -> tuple[int, ...]:
        """Element indices left to right."""
        seq = [0] * len(self.positions)
        for elem, pos in enumerate(self.positions):
            seq[pos] = elem
        return tuple(seq)

    @property
    def label_sequence(self) -> tuple[str, ...]:
        return tuple(self.groundset.labels[e] for e in self.sequence)


@dataclass(frozen=True)
class Verdict:
    """Outcome of one axiom or predicate check.

    ``witness`` is present exactly when the check fails and, substituted
    back into the defining condition, re-violates it.  Witnesses are plain
    nested tuples of element indices (clusters appear as sorted member
    tuples) so they compare and serialize deterministically.
    """

    axiom: str
    holds: bool
    witness: tuple | None = None
    detail: str | None = None

    def __post_init__(self) -> None:
        if self.holds != (self.witness is None):
            raise ModelError("witness must be present exactly when the check fails")

    def __bool__(self) -> bool:
        return self.holds


def holds(axiom: str, detail: str | None = None) -> Verdict:
    return Verdict(axiom, True, None, detail)


def fails(axiom: str, witness: tuple, detail: str | None = None) -> Verdict:
    return Verdict(axiom, False, tuple(witness), detail)


# ---------------------------------------------------------------------------
# Operations


def make_transit_function(groundset: GroundSet,
                          assignments: Mapping[tuple[str, str], ClusterLike],
                          ) -> TransitFunction:
    """Build a transit function from per-pair transit sets.

    ``assignments`` must cover every unordered pair of distinct elements
    exactly once; keys are label pairs in either order.  Endpoint
    containment (each of u, v inside R(u, v)) is enforced; symmetry is
    structural and diagonal values are implicit.
    """
    n = groundset.n
    table: list[int | None] = [None] * (n * (n - 1) // 2)
    for (lu, lv), value in assignments.items():
        u, v = groundset.index(lu), groundset.index(lv)
        if u == v:
            raise ModelError(f"diagonal pair ({lu},{lv}) must not be assigned")
        if u > v:
            u, v = v, u
        k = _pair_index(n, u, v)
        if table[k] is not None:
            raise DuplicatePairError(f"pair ({lu},{lv}) assigned twice")
        table[k] = _as_bits(groundset, value)
    missing = [k for k, bits in enumerate(table) if bits is None]
    if missing:
        u, v = _pair_from_index(n, missing[0])
        raise MissingPairError(
            f"no transit set assigned for pair ({groundset.labels[u]},{groundset.labels[v]})")
    return TransitFunction(groundset, tuple(table))  # type: ignore[arg-type]


def canonical_transit_function(system: SetSystem) -> TransitFunction:
    """Intersection-of-covers transit function of a set system.

    R(x, y) is the intersection of all clusters containing both x and y.
    A pair covered by no cluster is an error rather than silently mapped
    to the full ground set.
    """
    gs = system.groundset
    table = []
    for u, v in gs.pairs():
        need = (1 << u) | (1 << v)
        inter = gs.full_mask
        found = False
        for m in system.masks:
            if m & need == need:
                inter &= m
                found = True
        if not found:
            pair = (gs.labels[u], gs.labels[v])
            raise NoCoveringClusterError(
                f"no cluster contains both {pair[0]} and {pair[1]}", pair)
        table.append(inter)
    return TransitFunction(gs, tuple(table))


def transit_sets(R: TransitFunction) -> SetSystem:
    """The set system of all transit sets of R, singletons included."""
    gs = R.groundset
    seen = {1 << i for i in range(gs.n)}
    for _, _, bits in R.pairs():
        seen.add(bits)
    return SetSystem(gs, tuple(seen))


def minimal_cluster_containing(system: SetSystem, x: str, y: str) -> Cluster:
    """The unique inclusion-minimal cluster containing both x and y.

    Raises :class:`NoCoveringClusterError` when no cluster covers the pair
    and :class:`AmbiguousMinimalClusterError` when two incomparable covers
    are both minimal.
    """
    gs = system.groundset
    need = (1 << gs.index(x)) | (1 << gs.index(y))
    covers = [m for m in system.masks if m & need == need]
    if not covers:
        raise NoCoveringClusterError(f"no cluster contains both {x} and {y}", (x, y))
    minimal = [m for m in covers
               if not any(c != m and c & m == c for c in covers)]
    if len(minimal) > 1:
        cands = tuple(gs.labels_of(m) for m in sorted(minimal))
        raise AmbiguousMinimalClusterError(
            f"{len(minimal)} incomparable minimal clusters contain {{{x},{y}}}",
            (x, y), cands)
    return Cluster(gs, minimal[0])
