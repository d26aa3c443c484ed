"""Structural predicates: Sylow subgroups, nilpotency, solvability,
supersolvability, cyclicity, and small-group isomorphism testing.

Everything works on realized Cayley tables.  Isomorphism testing screens
cheap invariants first (order spectrum, center size, conjugacy class
sizes, abelianization spectrum) and only then runs generator-image
backtracking with consistency propagation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import p_part, prime_divisors
from .kernel import (
    ConcreteGroup,
    Subgroup,
    center,
    generated_subgroup,
    is_normal,
    normalizer,
    order_spectrum,
    quotient,
)

SUBGROUP_ENUMERATION_CAP = 256


# ---------------------------------------------------------------------------
# elementary structure


def is_cyclic(G: ConcreteGroup) -> bool:
    """True iff some element has order |G|."""
    return bool((G.element_orders() == G.order).any())


def sylow_subgroup(G: ConcreteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown inside iterated normalizers.

    Starting from the trivial subgroup, repeatedly pick a p-power-order
    element of the normalizer lying outside the current p-subgroup; the
    extension stays a p-group because the new element normalizes it.
    """
    if G.order % p:
        raise ValueError(f"{p} does not divide the group order {G.order}")
    target = p_part(G.order, p)
    orders = G.element_orders()
    p_power = np.zeros(G.order, dtype=bool)
    for x in range(G.order):
        o = int(orders[x])
        while o % p == 0:
            o //= p
        p_power[x] = o == 1
    S = Subgroup(G, (G.identity,))
    while S.size < target:
        members = S.member_set()
        grown = False
        for y in normalizer(G, S).members:
            if y in members or not p_power[y]:
                continue
            T = generated_subgroup(G, S.members + (y,))
            assert T.size % p == 0 and target % T.size == 0
            S = T
            grown = True
            break
        if not grown:  # impossible for a valid group table
            raise AssertionError("Sylow growth stalled; table is not a group")
    return S


def conjugacy_class_sizes(G: ConcreteGroup) -> tuple[int, ...]:
    """Multiset of conjugacy class sizes, sorted ascending."""
    T = G.table
    inv = G.inverses().astype(np.intp)
    g = np.arange(G.order, dtype=np.intp)
    seen = np.zeros(G.order, dtype=bool)
    sizes = []
    for x in range(G.order):
        if seen[x]:
            continue
        cls = np.unique(T[T[g, x], inv[g]])
        seen[cls] = True
        sizes.append(len(cls))
    return tuple(sorted(sizes))


def commutator_subgroup(G: ConcreteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """Subgroup generated by commutators [a, b] with a in A, b in B."""
    T = G.table
    inv = G.inverses().astype(np.intp)
    a = np.array(A.members, dtype=np.intp)
    b = np.array(B.members, dtype=np.intp)
    # [a, b] = a b a^-1 b^-1
    ab = T[np.ix_(a, b)]
    ab_ainv = T[ab, inv[a][:, None]]
    comms = np.unique(T[ab_ainv, inv[b][None, :]])
    return generated_subgroup(G, (int(x) for x in comms))


def derived_series(G: ConcreteGroup) -> list[Subgroup]:
    """G >= G' >= G'' >= ... until the series stabilizes."""
    whole = Subgroup(G, tuple(range(G.order)))
    series = [whole]
    current = whole
    while current.size > 1:
        nxt = commutator_subgroup(G, current, current)
        if nxt.size == current.size:
            break
        series.append(nxt)
        current = nxt
    return series


def lower_central_series(G: ConcreteGroup) -> list[Subgroup]:
    whole = Subgroup(G, tuple(range(G.order)))
    series = [whole]
    current = whole
    while current.size > 1:
        nxt = commutator_subgroup(G, whole, current)
        if nxt.size == current.size:
            break
        series.append(nxt)
        current = nxt
    return series


def is_solvable(G: ConcreteGroup) -> bool:
    """Derived series reaches the trivial subgroup."""
    return derived_series(G)[-1].size == 1


def is_nilpotent(G: ConcreteGroup) -> bool:
    """Every Sylow subgroup is normal (finite-group characterization)."""
    return all(
        is_normal(G, sylow_subgroup(G, p)) for p in prime_divisors(G.order)
    ) if G.order > 1 else True


def is_nilpotent_by_central_series(G: ConcreteGroup) -> bool:
    """Lower central series terminates at the trivial subgroup (cross-check)."""
    return lower_central_series(G)[-1].size == 1


# ---------------------------------------------------------------------------
# subgroup enumeration


def all_subgroups(
    G: ConcreteGroup, cap: int = SUBGROUP_ENUMERATION_CAP
) -> list[Subgroup]:
    """Every subgroup of G, by closure over growing generator sets.

    Breadth-first over the subgroup lattice: start from all cyclic
    subgroups and extend each known subgroup by one outside element.
    Subgroup orders always divide |G| (Lagrange), which bounds the work.
    """
    if G.order > cap:
        raise ValueError(
            f"subgroup enumeration capped at order {cap}, got {G.order}"
        )
    found: dict[frozenset[int], Subgroup] = {}
    trivial = Subgroup(G, (G.identity,))
    found[trivial.member_set()] = trivial
    frontier = [trivial]
    while frontier:
        nxt = []
        for S in frontier:
            if S.size == G.order:
                continue
            members = S.member_set()
            for x in range(G.order):
                if x in members:
                    continue
                T = generated_subgroup(G, S.members + (x,))
                key = T.member_set()
                if key not in found:
                    found[key] = T
                    nxt.append(T)
        frontier = nxt
    return sorted(found.values(), key=lambda S: (S.size, S.members))


def maximal_subgroups(
    G: ConcreteGroup, cap: int = SUBGROUP_ENUMERATION_CAP
) -> list[Subgroup]:
    """All maximal proper subgroups."""
    subs = [S for S in all_subgroups(G, cap) if S.size < G.order]
    out = []
    for S in subs:
        s_set = S.member_set()
        if not any(
            T.size > S.size and s_set < T.member_set() for T in subs
        ):
            out.append(S)
    return out


def normal_subgroups(
    G: ConcreteGroup, cap: int = SUBGROUP_ENUMERATION_CAP
) -> list[Subgroup]:
    return [S for S in all_subgroups(G, cap) if is_normal(G, S)]


def is_supersolvable(
    G: ConcreteGroup, cap: int = SUBGROUP_ENUMERATION_CAP
) -> bool:
    """Huppert's criterion: every maximal subgroup has prime index."""
    if G.order > cap:
        raise ValueError(
            f"supersolvability test capped at order {cap}, got {G.order}"
        )
    if G.order == 1:
        return True
    from .arith import is_prime

    return all(
        is_prime(G.order // S.size) for S in maximal_subgroups(G, cap)
    )


def chief_factor_orders(
    G: ConcreteGroup, cap: int = SUBGROUP_ENUMERATION_CAP
) -> list[int]:
    """Factor orders of one chief series (minimal normal subgroup at each step).

    The multiset of chief factors does not depend on the chosen series, so
    one greedy series is enough for the supersolvability cross-check.
    """
    factors: list[int] = []
    current = G
    while current.order > 1:
        candidates = [
            S for S in normal_subgroups(current, cap) if S.size > 1
        ]
        minimal = min(candidates, key=lambda S: S.size)
        factors.append(minimal.size)
        current = quotient(current, minimal)
    return factors


def is_supersolvable_by_chief_series(
    G: ConcreteGroup, cap: int = SUBGROUP_ENUMERATION_CAP
) -> bool:
    """Chief-factor definition: every chief factor has prime order."""
    from .arith import is_prime

    return all(is_prime(f) for f in chief_factor_orders(G, cap))


def has_cyclic_normal_sylow(G: ConcreteGroup) -> int | None:
    """A prime r whose Sylow r-subgroup is cyclic and normal, if any.

    Preference order: the largest prime divisor first, then 2, then the
    remaining primes in descending order.
    """
    if G.order == 1:
        return None
    primes = prime_divisors(G.order)
    ordered = [primes[-1]]
    if 2 in primes and 2 != primes[-1]:
        ordered.append(2)
    ordered.extend(p for p in reversed(primes) if p not in ordered)
    orders = G.element_orders()
    for r in ordered:
        S = sylow_subgroup(G, r)
        cyclic = any(int(orders[m]) == S.size for m in S.members)
        if cyclic and is_normal(G, S):
            return r
    return None


# ---------------------------------------------------------------------------
# isomorphism testing


@dataclass(frozen=True)
class IsomorphismCertificate:
    """Either an explicit bijective homomorphism or a reason none exists.

    ``mapping`` (indices of G -> indices of H) is present exactly when the
    groups are isomorphic; otherwise ``invariant`` names the distinguishing
    invariant with the two differing values (or records that the generator
    image search was exhausted).
    """

    mapping: tuple[int, ...] | None
    invariant: str | None = None
    left: str | None = None
    right: str | None = None

    @property
    def exists(self) -> bool:
        return self.mapping is not None


def _abelianization_spectrum(G: ConcreteGroup) -> tuple[tuple[int, int], ...]:
    d = derived_series(G)
    commutator = d[1] if len(d) > 1 else Subgroup(G, (G.identity,))
    ab = quotient(G, commutator)
    return tuple(sorted(order_spectrum(ab).items()))


def invariant_fingerprint(G: ConcreteGroup) -> dict[str, object]:
    return {
        "order": G.order,
        "order spectrum": tuple(sorted(order_spectrum(G).items())),
        "center size": center(G).size,
        "conjugacy class sizes": conjugacy_class_sizes(G),
        "abelianization spectrum": _abelianization_spectrum(G),
    }


def generating_set(G: ConcreteGroup) -> list[int]:
    """A small generating set, grown greedily by largest extension."""
    gens: list[int] = []
    K = Subgroup(G, (G.identity,))
    orders = G.element_orders()
    while K.size < G.order:
        members = K.member_set()
        best, best_key = None, None
        for x in range(G.order):
            if x in members:
                continue
            # favor high element order as a cheap proxy for a big extension
            key = (int(orders[x]), -x)
            if best_key is None or key > best_key:
                best, best_key = x, key
        T = generated_subgroup(G, K.members + (best,))
        gens.append(best)
        K = T
    return gens


class _MapSearch:
    """Backtracking search for homomorphisms G -> H given generator images.

    Propagates products of already-mapped elements; detects conflicts and
    (for isomorphism mode) image collisions early.
    """

    def __init__(self, G: ConcreteGroup, H: ConcreteGroup, injective: bool):
        self.G, self.H, self.injective = G, H, injective
        self.TG = G.table
        self.TH = H.table

    def extend(
        self, gmap: list[int], used: list[bool], new: list[int]
    ) -> list[tuple[int, int]] | None:
        """Propagate closure; return the trail of assignments or None on conflict."""
        TG, TH = self.TG, self.TH
        known = [x for x in range(self.G.order) if gmap[x] >= 0 and x not in new]
        trail: list[tuple[int, int]] = []
        queue = list(new)
        while queue:
            a = queue.pop()
            for b in known:
                for x, y in ((a, b), (b, a)):
                    c = int(TG[x, y])
                    img = int(TH[gmap[x], gmap[y]])
                    if gmap[c] < 0:
                        if self.injective and used[img]:
                            self._undo(gmap, used, trail)
                            return None
                        gmap[c] = img
                        used[img] = True
                        trail.append((c, img))
                        queue.append(c)
                    elif gmap[c] != img:
                        self._undo(gmap, used, trail)
                        return None
            # a * a and the pair (a, a) with itself
            c = int(TG[a, a])
            img = int(TH[gmap[a], gmap[a]])
            if gmap[c] < 0:
                if self.injective and used[img]:
                    self._undo(gmap, used, trail)
                    return None
                gmap[c] = img
                used[img] = True
                trail.append((c, img))
                queue.append(c)
            elif gmap[c] != img:
                self._undo(gmap, used, trail)
                return None
            known.append(a)
        return trail

    def _undo(self, gmap, used, trail):
        for c, img in trail:
            gmap[c] = -1
            used[img] = False


def _search_maps(
    G: ConcreteGroup,
    H: ConcreteGroup,
    *,
    injective: bool,
    first_only: bool,
) -> list[tuple[int, ...]]:
    """All (or the first) homomorphisms G -> H with full image under closure.

    In injective mode this finds isomorphisms (assuming |G| = |H|); in the
    general mode it finds every homomorphism, total because the generator
    closure covers G.
    """
    gens = generating_set(G)
    if not gens:  # trivial group
        return [tuple([H.identity])]
    g_orders = G.element_orders()
    h_orders = H.element_orders()
    if injective:
        sizes = _element_class_sizes(H)
        g_sizes = _element_class_sizes(G)
    results: list[tuple[int, ...]] = []

    def candidates(gen: int) -> list[int]:
        o = int(g_orders[gen])
        if injective:
            return [
                y
                for y in range(H.order)
                if int(h_orders[y]) == o and sizes[y] == g_sizes[gen]
            ]
        return [y for y in range(H.order) if o % int(h_orders[y]) == 0]

    search = _MapSearch(G, H, injective)
    gmap = [-1] * G.order
    used = [False] * H.order
    gmap[G.identity] = H.identity
    used[H.identity] = True

    def rec(i: int) -> bool:
        if i == len(gens):
            if injective and not all(x >= 0 for x in gmap):
                return False  # should not happen: gens generate G
            results.append(tuple(gmap))
            return first_only
        gen = gens[i]
        if gmap[gen] >= 0:  # forced by propagation of earlier generators
            return rec(i + 1)
        for y in candidates(gen):
            if injective and used[y]:
                continue
            gmap[gen] = y
            used[y] = True
            trail = search.extend(gmap, used, [gen])
            if trail is not None:
                if rec(i + 1):
                    return True
                search._undo(gmap, used, trail)
            gmap[gen] = -1
            used[y] = False
        return False

    rec(0)
    return results


def _element_class_sizes(G: ConcreteGroup) -> list[int]:
    T = G.table
    inv = G.inverses().astype(np.intp)
    g = np.arange(G.order, dtype=np.intp)
    out = [0] * G.order
    seen = np.zeros(G.order, dtype=bool)
    for x in range(G.order):
        if seen[x]:
            continue
        cls = np.unique(T[T[g, x], inv[g]])
        seen[cls] = True
        for y in cls:
            out[int(y)] = len(cls)
    return out


def isomorphic(G: ConcreteGroup, H: ConcreteGroup) -> IsomorphismCertificate:
    """Decide isomorphism with an explicit certificate either way."""
    fg, fh = invariant_fingerprint(G), invariant_fingerprint(H)
    for name in fg:
        if fg[name] != fh[name]:
            return IsomorphismCertificate(
                None, invariant=name, left=str(fg[name]), right=str(fh[name])
            )
    maps = _search_maps(G, H, injective=True, first_only=True)
    if maps:
        m = np.array(maps[0], dtype=np.intp)
        assert np.array_equal(m[G.table], H.table[np.ix_(m, m)])
        return IsomorphismCertificate(maps[0])
    return IsomorphismCertificate(
        None,
        invariant="generator-image-search",
        left="exhausted",
        right="exhausted",
    )


def automorphisms(G: ConcreteGroup) -> list[tuple[int, ...]]:
    """All automorphisms of G as permutation tuples, sorted."""
    return sorted(_search_maps(G, G, injective=True, first_only=False))


def automorphism_group(G: ConcreteGroup) -> tuple[ConcreteGroup, list[tuple[int, ...]]]:
    """Aut(G) realized as a ConcreteGroup over the sorted automorphism list."""
    perms = automorphisms(G)
    index = {p: i for i, p in enumerate(perms)}
    k = len(perms)
    table = np.empty((k, k), dtype=np.int32)
    arrs = [np.array(p, dtype=np.intp) for p in perms]
    for i, p in enumerate(arrs):
        for j, q in enumerate(arrs):
            table[i, j] = index[tuple(int(v) for v in p[q])]
    identity = index[tuple(range(G.order))]
    return ConcreteGroup(table, identity, f"Aut({G.label})"), perms


def all_homomorphisms(H: ConcreteGroup, A: ConcreteGroup) -> list[tuple[int, ...]]:
    """Every homomorphism H -> A (as index maps), sorted."""
    return sorted(_search_maps(H, A, injective=False, first_only=False))
