"""Concrete finite groups as dense Cayley tables.

A group of order n lives on the index set 0..n-1 with a full n x n
multiplication table.  Tables are numpy int32 arrays frozen after
construction; every operation here is a pure function of its inputs, so
values can be shared freely.

Construction paths built by this module (products, quotients, family
presentations) guarantee the group axioms structurally and skip the
O(n^3) associativity check; tables from untrusted input go through
:func:`from_table`, which checks everything.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

DEFAULT_ORDER_CAP = 2048


class CapExceeded(ValueError):
    """Raised when a construction would realize a table above the order cap."""


def check_order_cap(order: int, max_order: int | None = None) -> None:
    """Raise CapExceeded if a table of this order may not be realized."""
    cap = DEFAULT_ORDER_CAP if max_order is None else max_order
    if order > cap:
        raise CapExceeded(
            f"group of order {order} exceeds the realization cap {cap}; "
            "use closed-form evaluation for larger structured specs"
        )


class ConcreteGroup:
    """A finite group given by its full multiplication table.

    table[a][b] is the index of a*b; ``identity`` is the index of the
    neutral element.  Instances are immutable after construction.
    """

    __slots__ = ("order", "table", "identity", "label", "_inv", "_orders")

    def __init__(
        self,
        table: np.ndarray,
        identity: int,
        label: str,
        *,
        validate: bool = False,
        max_order: int | None = None,
    ):
        table = np.ascontiguousarray(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError(f"table must be square, got shape {table.shape}")
        n = int(table.shape[0])
        check_order_cap(n, max_order)
        if not 0 <= identity < n:
            raise ValueError(f"identity index {identity} out of range for order {n}")
        if validate:
            _validate_table(table, identity)
        table.setflags(write=False)
        self.order = n
        self.table = table
        self.identity = int(identity)
        self.label = label
        self._inv: np.ndarray | None = None
        self._orders: np.ndarray | None = None

    def __repr__(self) -> str:
        return f"ConcreteGroup({self.label!r}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverses(self) -> np.ndarray:
        """inv[a] = the index b with a*b = identity (read-only array)."""
        if self._inv is None:
            inv = np.argmax(self.table == self.identity, axis=1).astype(np.int32)
            inv.setflags(write=False)
            self._inv = inv
        return self._inv

    def inv(self, a: int) -> int:
        return int(self.inverses()[a])

    def power(self, a: int, k: int) -> int:
        """a^k for any integer k (square-and-multiply)."""
        if k < 0:
            a, k = self.inv(a), -k
        result = self.identity
        base = a
        while k:
            if k & 1:
                result = int(self.table[result, base])
            base = int(self.table[base, base])
            k >>= 1
        return result

    def element_orders(self) -> np.ndarray:
        """Vector of element orders, computed by simultaneous powering."""
        if self._orders is None:
            n = self.order
            T = self.table
            orders = np.zeros(n, dtype=np.int64)
            idx = np.arange(n)
            v = idx.copy()  # v[x] = x^k
            k = 1
            while True:
                hit = (v == self.identity) & (orders == 0)
                orders[hit] = k
                if orders.all():
                    break
                v = T[v, idx]
                k += 1
                if k > n:  # cannot happen for a valid table
                    raise AssertionError("element order exceeded group order")
            orders.setflags(write=False)
            self._orders = orders
        return self._orders

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def relabeled(self, label: str) -> "ConcreteGroup":
        return ConcreteGroup(self.table, self.identity, label)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent`` stored as a sorted member index tuple."""

    parent: ConcreteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(self.members)))

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in set(self.members)

    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def is_whole_group(self) -> bool:
        return self.size == self.parent.order

    def as_group(self, label: str | None = None) -> ConcreteGroup:
        """Reindex the members as a standalone group (member order preserved)."""
        G = self.parent
        pos = {m: i for i, m in enumerate(self.members)}
        sub = np.array(
            [[pos[int(G.table[a, b])] for b in self.members] for a in self.members],
            dtype=np.int32,
        )
        return ConcreteGroup(
            sub, pos[G.identity], label or f"{G.label}|sub{self.size}"
        )

    def psi(self) -> int:
        """Sum of the parent-group orders of the members."""
        orders = self.parent.element_orders()
        return int(sum(int(orders[m]) for m in self.members))


def subgroup(G: ConcreteGroup, members, *, validate: bool = True) -> Subgroup:
    """Wrap a member set as a Subgroup, checking closure unless disabled."""
    ms = tuple(sorted(int(m) for m in set(members)))
    if validate:
        mset = set(ms)
        if G.identity not in mset:
            raise ValueError("subgroup must contain the identity")
        arr = np.array(ms, dtype=np.intp)
        prods = G.table[np.ix_(arr, arr)]
        if not set(np.unique(prods).tolist()) <= mset:
            raise ValueError("member set is not closed under multiplication")
    return Subgroup(G, ms)


@dataclass(frozen=True)
class Automorphism:
    """A bijective homomorphism of ``parent`` onto itself."""

    parent: ConcreteGroup
    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(int(x) for x in self.mapping))
        G = self.parent
        m = np.array(self.mapping, dtype=np.intp)
        if len(m) != G.order or len(set(self.mapping)) != G.order:
            raise ValueError("automorphism map must be a permutation of the elements")
        if self.mapping[G.identity] != G.identity:
            raise ValueError("automorphism must fix the identity")
        if not np.array_equal(m[G.table], G.table[np.ix_(m, m)]):
            raise ValueError("map does not respect the multiplication table")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other."""
        return Automorphism(
            self.parent, tuple(self.mapping[y] for y in other.mapping)
        )


def identity_automorphism(G: ConcreteGroup) -> Automorphism:
    return Automorphism(G, tuple(range(G.order)))


def cyclic_exponent_automorphism(P: ConcreteGroup, u: int) -> Automorphism:
    """The automorphism x -> x^u of a cyclic group P.

    Accepts any realized cyclic group; u must be a unit modulo |P|.
    """
    n = P.order
    from math import gcd

    if gcd(u, n) != 1:
        raise ValueError(f"exponent {u} is not a unit modulo {n}")
    orders = P.element_orders()
    gens = np.where(orders == n)[0]
    if len(gens) == 0:
        raise ValueError("group is not cyclic")
    g = int(gens[0])
    mapping = [0] * n
    x = P.identity
    for k in range(n):
        mapping[x] = P.power(x, u)
        x = int(P.table[x, g])
    return Automorphism(P, tuple(mapping))


# ---------------------------------------------------------------------------
# table validation


def _latin_violation(table: np.ndarray) -> str | None:
    n = table.shape[0]
    expect = np.arange(n)
    if not np.array_equal(np.sort(table, axis=1), np.tile(expect, (n, 1))):
        return "some row is not a permutation of 0..n-1"
    if not np.array_equal(np.sort(table, axis=0), np.tile(expect[:, None], (1, n))):
        return "some column is not a permutation of 0..n-1"
    return None


def _associativity_violation(table: np.ndarray) -> tuple[int, int, int] | None:
    """Exhaustive associativity check, chunked over the first index."""
    n = table.shape[0]
    T = table.astype(np.intp, copy=False)
    chunk = max(1, (1 << 22) // max(1, n * n))
    for start in range(0, n, chunk):
        rows = T[start : start + chunk]
        left = T[rows, :]            # left[a,b,c] = (a*b)*c
        right = T[start : start + chunk, :][:, T]  # right[a,b,c] = a*(b*c)
        bad = np.argwhere(left != right)
        if len(bad):
            a, b, c = bad[0]
            return int(a) + start, int(b), int(c)
    return None


def _validate_table(table: np.ndarray, identity: int) -> None:
    n = table.shape[0]
    problem = _latin_violation(table)
    if problem:
        raise ValueError(f"not a Latin square: {problem}")
    if not (
        np.array_equal(table[identity], np.arange(n))
        and np.array_equal(table[:, identity], np.arange(n))
    ):
        raise ValueError(f"index {identity} is not a two-sided identity")
    bad = _associativity_violation(table)
    if bad:
        a, b, c = bad
        raise ValueError(f"multiplication is not associative at ({a},{b},{c})")


def from_table(
    table, label: str = "table-group", *, identity: int | None = None,
    max_order: int | None = None,
) -> ConcreteGroup:
    """Build a group from an untrusted table, checking all axioms."""
    arr = np.asarray(table, dtype=np.int32)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"table must be square, got shape {arr.shape}")
    n = arr.shape[0]
    if identity is None:
        matches = np.where((arr == np.arange(n)).all(axis=1))[0]
        if len(matches) != 1:
            raise ValueError("table does not have a unique identity row")
        identity = int(matches[0])
    return ConcreteGroup(arr, identity, label, validate=True, max_order=max_order)


# ---------------------------------------------------------------------------
# elementary operations


def element_order(G: ConcreteGroup, x: int) -> int:
    """Least k >= 1 with x^k = identity."""
    if not 0 <= x < G.order:
        raise IndexError(f"element index {x} out of range for order {G.order}")
    return int(G.element_orders()[x])


def order_spectrum(G: ConcreteGroup) -> dict[int, int]:
    """Multiset {element order: count}; the sufficient statistic for psi."""
    values, counts = np.unique(G.element_orders(), return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


def generated_subgroup(G: ConcreteGroup, gens) -> Subgroup:
    """Closure of a generator set (plus the identity) under multiplication."""
    members = {G.identity} | {int(g) for g in gens}
    for g in members:
        if not 0 <= g < G.order:
            raise IndexError(f"element index {g} out of range for order {G.order}")
    while True:
        arr = np.fromiter(sorted(members), dtype=np.intp)
        prods = set(np.unique(G.table[np.ix_(arr, arr)]).tolist())
        if prods <= members:
            break
        members |= prods
    return Subgroup(G, tuple(members))


def centralizer(
    G: ConcreteGroup, S: Subgroup, within: Subgroup | None = None
) -> Subgroup:
    """Elements of ``within`` (default: all of G) commuting with all of S."""
    w = (
        np.arange(G.order, dtype=np.intp)
        if within is None
        else np.array(within.members, dtype=np.intp)
    )
    s = np.array(S.members, dtype=np.intp)
    commutes = (G.table[np.ix_(w, s)] == G.table[np.ix_(s, w)].T).all(axis=1)
    return Subgroup(G, tuple(int(x) for x in w[commutes]))


def center(G: ConcreteGroup) -> Subgroup:
    members = np.where((G.table == G.table.T).all(axis=1))[0]
    return Subgroup(G, tuple(int(x) for x in members))


def is_normal(G: ConcreteGroup, H: Subgroup) -> bool:
    """True iff g h g^-1 lies in H for every g in G, h in H."""
    h = np.array(H.members, dtype=np.intp)
    inv = G.inverses().astype(np.intp)
    conj = G.table[G.table[:, h], inv[:, None]]  # conj[g, i] = g*h_i*g^-1
    hset = H.member_set()
    return bool(all(int(x) in hset for x in np.unique(conj)))


def normalizer(G: ConcreteGroup, S: Subgroup) -> Subgroup:
    """Elements g with g S g^-1 = S."""
    s = np.array(S.members, dtype=np.intp)
    inv = G.inverses().astype(np.intp)
    conj = np.sort(G.table[G.table[:, s], inv[:, None]], axis=1)
    target = np.array(S.members, dtype=np.int32)
    good = np.where((conj == target).all(axis=1))[0]
    return Subgroup(G, tuple(int(x) for x in good))


def quotient(G: ConcreteGroup, N: Subgroup, label: str | None = None) -> ConcreteGroup:
    """The group of cosets of a normal subgroup N."""
    if not is_normal(G, N):
        raise ValueError("quotient requires a normal subgroup")
    n_arr = np.array(N.members, dtype=np.intp)
    # coset id of x := minimal member of Nx
    coset_min = G.table[n_arr, :].min(axis=0)
    reps = np.unique(coset_min)
    rep_index = {int(r): i for i, r in enumerate(reps)}
    k = len(reps)
    table = np.empty((k, k), dtype=np.int32)
    for i, a in enumerate(reps):
        prods = G.table[int(a), reps.astype(np.intp)]
        table[i, :] = [rep_index[int(coset_min[p])] for p in prods]
    identity = rep_index[int(coset_min[G.identity])]
    q = ConcreteGroup(table, identity, label or f"{G.label}/N{N.size}")
    assert q.order * N.size == G.order
    return q


def direct_product(
    A: ConcreteGroup, B: ConcreteGroup, *, max_order: int | None = None,
    label: str | None = None,
) -> ConcreteGroup:
    """Componentwise product; pair (a, b) gets index a*|B| + b."""
    check_order_cap(A.order * B.order, max_order)
    nb = B.order
    TA = A.table.astype(np.int64)
    TB = B.table.astype(np.int64)
    table = (TA[:, None, :, None] * nb + TB[None, :, None, :]).reshape(
        A.order * nb, A.order * nb
    )
    return ConcreteGroup(
        table.astype(np.int32),
        A.identity * nb + B.identity,
        label or f"{A.label}x{B.label}",
        max_order=max_order,
    )


ActionSpec = Sequence[Automorphism] | Sequence[Sequence[int]] | Callable[[int], object]


def semidirect_product(
    P: ConcreteGroup,
    H: ConcreteGroup,
    action: ActionSpec,
    *,
    max_order: int | None = None,
    label: str | None = None,
) -> ConcreteGroup:
    """Semidirect product P x| H for an action of H on P by automorphisms.

    ``action`` maps each H-index to an automorphism of P (an Automorphism,
    a permutation sequence, or a callable producing either).  The action is
    validated to be a homomorphism into Aut(P); invalid data is rejected.
    Pair (p, h) gets index p*|H| + h, so the trivial action reproduces
    ``direct_product(P, H)`` entry for entry.
    """
    check_order_cap(P.order * H.order, max_order)
    act = np.empty((H.order, P.order), dtype=np.intp)
    for h in range(H.order):
        sigma = action(h) if callable(action) else action[h]
        if isinstance(sigma, Automorphism):
            if sigma.parent is not P:
                # accept an automorphism of an equal table
                if not np.array_equal(sigma.parent.table, P.table):
                    raise ValueError("action automorphism belongs to another group")
            act[h] = sigma.mapping
        else:
            act[h] = Automorphism(P, tuple(sigma)).mapping

    # homomorphism: act[h1*h2] == act[h1] o act[h2]
    for h1 in range(H.order):
        comp = act[h1][act]  # comp[h2] = act[h1] o act[h2]
        targets = act[H.table[h1].astype(np.intp)]
        if not np.array_equal(comp, targets):
            raise ValueError("action is not a homomorphism into Aut(P)")

    nh = H.order
    TP = P.table.astype(np.int64)
    TH = H.table.astype(np.int64)
    # (p1, h1) * (p2, h2) = (p1 * act[h1](p2), h1 * h2)
    left = TP[
        np.arange(P.order)[:, None, None], act[None, :, :]
    ]  # left[p1, h1, p2] = p1 * act[h1](p2)
    table = (
        left[:, :, :, None] * nh + TH[None, :, None, :]
    ).reshape(P.order * nh, P.order * nh)
    return ConcreteGroup(
        table.astype(np.int32),
        P.identity * nh + H.identity,
        label or f"{P.label}:{H.label}",
        max_order=max_order,
    )
