"""Decision procedures for transit-function axioms, with witnesses.

Every checker quantifies in a fixed lexicographic order over element
indices, so the reported witness is always the first (hence smallest)
violating tuple under the ground set's element order.  Checkers quantify
over unordered pairs only and skip u = v wherever the diagonal value
R(u, u) = {u} makes the condition trivially true.
"""

from __future__ import annotations

from .model import (
    TransitFunction,
    Verdict,
    bit_indices,
    fails,
    holds,
    popcount,
)

#: Closed set of transit-axiom tags, in canonical report order.
TRANSIT_AXIOMS = (
    "m", "a'", "k", "w", "w1", "w2", "w3",
    "x", "x'", "u", "uc", "mm", "k3", "wp", "o", "o'",
)


def _pair_list(R: TransitFunction) -> list[tuple[int, int, int]]:
    return list(R.pairs())


def check_monotone(R: TransitFunction) -> Verdict:
    """(m): p, q in R(u, v) implies R(p, q) subset of R(u, v)."""
    for u, v, a in R.pairs():
        for p in bit_indices(a):
            for q in bit_indices(a):
                if q <= p:
                    continue
                if R.bits(p, q) & ~a:
                    return fails("m", (u, v, p, q))
    return holds("m")


def check_attainment(R: TransitFunction) -> Verdict:
    """(a'): some pair attains the whole ground set."""
    full = R.groundset.full_mask
    if R.groundset.n == 1:
        return holds("a'")
    best = None
    for u, v, a in R.pairs():
        if a == full:
            return holds("a'")
        if best is None or popcount(a) > popcount(best[2]):
            best = (u, v, a)
    assert best is not None
    u, v, a = best
    members = ", ".join(R.groundset.labels_of(a))
    return fails("a'", (u, v),
                 detail=f"largest transit set R({R.groundset.labels[u]},"
                        f"{R.groundset.labels[v]}) = {{{members}}} != X")


def check_intersection_closure(R: TransitFunction) -> Verdict:
    """(k): nonempty intersections of transit sets are attained transit sets."""
    pairs = _pair_list(R)
    for i, (u, v, a) in enumerate(pairs):
        for x, y, b in pairs[i + 1:]:
            inter = a & b
            if inter == 0:
                continue
            if inter == a or inter == b:
                continue  # nested: attained by (u,v) or (x,y) themselves
            if popcount(inter) == 1:
                continue  # attained by R(p, p)
            if not _attained_equal(R, inter):
                return fails("k", (u, v, x, y))
    return holds("k")


def _attained_equal(R: TransitFunction, target: int) -> bool:
    members = bit_indices(target)
    for i, p in enumerate(members):
        for q in members[i + 1:]:
            if R.bits(p, q) == target:
                return True
    return False


def check_w_family(R: TransitFunction, variant: str = "w") -> Verdict:
    """(w), (w1), (w2), (w3) -- betweenness conditions on triples.

    (w1) is the contrapositive of (w) and accepts exactly the same
    functions; it is exposed as an alias tag, not a second code path.
    """
    if variant in ("w", "w1"):
        v = _check_w(R)
        if variant == "w1":
            return Verdict("w1", v.holds, v.witness, v.detail)
        return v
    if variant == "w2":
        return _check_w2(R, guarded=False)
    if variant == "w3":
        return _check_w3(R)
    raise ValueError(f"unknown w-family variant {variant!r}")


def _check_w(R: TransitFunction) -> Verdict:
    n = R.groundset.n
    for x in range(n):
        for y in range(x + 1, n):
            rxy = R.bits(x, y)
            for z in range(y + 1, n):
                if (rxy >> z) & 1 or (R.bits(x, z) >> y) & 1 or (R.bits(y, z) >> x) & 1:
                    continue
                return fails("w", (x, y, z))
    return holds("w")


def _check_w2(R: TransitFunction, guarded: bool) -> Verdict:
    pairs = _pair_list(R)
    m = len(pairs)
    for i in range(m):
        p, q, a = pairs[i]
        for j in range(i + 1, m):
            u, v, b = pairs[j]
            ab = a & b
            if guarded and ab == 0:
                continue
            for k in range(j + 1, m):
                s, t, c = pairs[k]
                if guarded and (a & c == 0 or b & c == 0):
                    continue
                triple = ab & c
                if triple in (ab, a & c, b & c):
                    continue
                return fails("w2", (p, q, u, v, s, t))
    return holds("w2")


def check_w2_guarded(R: TransitFunction) -> Verdict:
    """The pairwise-intersection-guarded form of (w2).

    Coincides with the unguarded form on every transit function (an empty
    pairwise intersection forces the triple intersection to equal it);
    kept only so the sweep can confirm the coincidence.
    """
    return _check_w2(R, guarded=True)


def _check_w3(R: TransitFunction) -> Verdict:
    pairs = _pair_list(R)
    m = len(pairs)
    for i in range(m):
        u, v, a = pairs[i]
        for j in range(i + 1, m):
            p, q, b = pairs[j]
            both = a & b
            if both == 0:
                continue
            only_a = a & ~b
            only_b = b & ~a
            if only_a == 0 or only_b == 0:
                continue
            for x in bit_indices(only_a):
                for y in bit_indices(both):
                    for z in bit_indices(only_b):
                        if not (R.bits(x, z) >> y) & 1:
                            return fails("w3", (u, v, p, q, x, y, z))
    return holds("w3")


def check_x_family(R: TransitFunction, variant: str = "x'") -> Verdict:
    """(x): R(x,y) within R(x,z) union R(z,y) for all triples;
    (x'): the same restricted to z outside R(x,y)."""
    if variant not in ("x", "x'"):
        raise ValueError(f"unknown x-family variant {variant!r}")
    restricted = variant == "x'"
    n = R.groundset.n
    for x in range(n):
        for y in range(x + 1, n):
            rxy = R.bits(x, y)
            for z in range(n):
                if z == x or z == y:
                    continue
                if restricted and (rxy >> z) & 1:
                    continue
                missing = rxy & ~(R.bits(x, z) | R.bits(z, y))
                if missing:
                    elt = bit_indices(missing)[0]
                    return fails(variant, (x, y, z, elt))
    return holds(variant)


def check_u(R: TransitFunction) -> Verdict:
    """(u): z in R(u, v) implies R(u, z) union R(z, v) = R(u, v)."""
    for u, v, a in R.pairs():
        for z in bit_indices(a):
            if z == u or z == v:
                continue
            if R.bits(u, z) | R.bits(z, v) != a:
                return fails("u", (u, v, z))
    return holds("u")


def check_uc(R: TransitFunction) -> Verdict:
    """(uc): unions of intersecting transit sets are attained transit sets."""
    pairs = _pair_list(R)
    for i, (u, v, a) in enumerate(pairs):
        for x, y, b in pairs[i + 1:]:
            if a & b == 0:
                continue
            union = a | b
            if union in (a, b):
                continue  # attained by the larger pair itself
            if not _attained_equal(R, union):
                return fails("uc", (u, v, x, y))
    return holds("uc")


def check_mm(R: TransitFunction) -> Verdict:
    """(mm): some pair inside the union covers the union of any two
    intersecting transit sets."""
    pairs = _pair_list(R)
    for i, (u, v, a) in enumerate(pairs):
        for x, y, b in pairs[i + 1:]:
            if a & b == 0:
                continue
            union = a | b
            if union in (a, b):
                continue
            if not _covered_from(R, union):
                return fails("mm", (u, v, x, y))
    return holds("mm")


def _covered_from(R: TransitFunction, union: int) -> bool:
    members = bit_indices(union)
    for i, p in enumerate(members):
        for q in members[i + 1:]:
            if union & ~R.bits(p, q) == 0:
                return True
    return False


def check_k3(R: TransitFunction) -> Verdict:
    """(k3): any two intersecting transit sets have a covering pair p, q
    that lies inside every covering transit set."""
    pairs = _pair_list(R)
    for i, (u, v, a) in enumerate(pairs):
        for x, y, b in pairs[i + 1:]:
            if a & b == 0:
                continue
            union = a | b
            covers = [c for _, _, c in pairs if union & ~c == 0]
            if not covers:
                return fails("k3", (u, v, x, y),
                             detail="no transit set covers the union")
            core = R.groundset.full_mask
            for c in covers:
                core &= c
            ok = False
            for p in bit_indices(core):
                for q in bit_indices(core):
                    if q <= p:
                        continue
                    if union & ~R.bits(p, q) == 0:
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                return fails("k3", (u, v, x, y))
    return holds("k3")


def check_wp(R: TransitFunction) -> Verdict:
    """(wp): of three pairwise-intersecting transit sets, one lies in the
    union of the other two."""
    pairs = _pair_list(R)
    m = len(pairs)
    for i in range(m):
        u, v, a = pairs[i]
        for j in range(i + 1, m):
            x, y, b = pairs[j]
            if a & b == 0:
                continue
            for k in range(j + 1, m):
                p, q, c = pairs[k]
                if a & c == 0 or b & c == 0:
                    continue
                if c & ~(a | b) == 0 or a & ~(b | c) == 0 or b & ~(a | c) == 0:
                    continue
                return fails("wp", (u, v, x, y, p, q))
    return holds("wp")


def check_o_family(R: TransitFunction, variant: str = "o") -> Verdict:
    """(o): per pair, one anchor pair p, q works for every interior z;
    (o'): the anchor pair may depend on z."""
    if variant not in ("o", "o'"):
        raise ValueError(f"unknown o-family variant {variant!r}")
    for u, v, a in R.pairs():
        members = bit_indices(a)
        if variant == "o":
            if not any(_o_anchor_works(R, a, p, q, members)
                       for p in members for q in members if p <= q):
                return fails("o", (u, v))
        else:
            for z in members:
                if not any(R.bits(p, z) | R.bits(z, q) == a
                           for p in members for q in members if p <= q):
                    return fails("o'", (u, v, z))
    return holds(variant)


def _o_anchor_works(R: TransitFunction, a: int, p: int, q: int,
                    members: tuple[int, ...]) -> bool:
    return all(R.bits(p, z) | R.bits(z, q) == a for z in members)


_CHECKERS = {
    "m": check_monotone,
    "a'": check_attainment,
    "k": check_intersection_closure,
    "w": lambda R: check_w_family(R, "w"),
    "w1": lambda R: check_w_family(R, "w1"),
    "w2": lambda R: check_w_family(R, "w2"),
    "w3": lambda R: check_w_family(R, "w3"),
    "x": lambda R: check_x_family(R, "x"),
    "x'": lambda R: check_x_family(R, "x'"),
    "u": check_u,
    "uc": check_uc,
    "mm": check_mm,
    "k3": check_k3,
    "wp": check_wp,
    "o": lambda R: check_o_family(R, "o"),
    "o'": lambda R: check_o_family(R, "o'"),
}


def check_axiom(R: TransitFunction, tag: str) -> Verdict:
    try:
        checker = _CHECKERS[tag]
    except KeyError:
        raise ValueError(f"unknown transit axiom {tag!r}") from None
    return checker(R)


def classify_all(R: TransitFunction) -> dict[str, Verdict]:
    """Evaluate every transit axiom once, in canonical tag order."""
    return {tag: check_axiom(R, tag) for tag in TRANSIT_AXIOMS}
