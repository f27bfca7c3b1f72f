"""Finite groups as validated Cayley tables.

Elements are indices 0..n-1 with the identity fixed at index 0. The
structural queries the order formulas consume (inverses, element orders,
center, solutions of g^2=1, squares, square roots of a central involution,
quotients) all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    IndexOutOfRange,
    NoIdentity,
    NotAssociative,
    NotCentralInvolution,
    NotLatin,
    NotNormal,
)

EXHAUSTIVE_ASSOC_LIMIT = 64
SAMPLED_ASSOC_TRIPLES = 100_000


@dataclass(frozen=True)
class SpecialSets:
    """The element sets entering the order formulas, as sorted index tuples.

    order_two is the full solution set of g^2 = 1 (identity included);
    central_order_two is the nonidentity central involutions.
    """

    center: tuple[int, ...]
    order_two: tuple[int, ...]
    squares: tuple[int, ...]
    square_order_two: tuple[int, ...]
    central_order_two: tuple[int, ...]


class Group:
    """An immutable validated Cayley table; construct via validate_group."""

    def __init__(self, table: np.ndarray, id: str = "", labels: Sequence[str] | None = None):
        self.table = table
        self.n = table.shape[0]
        self.id = id or f"group:{self.n}"
        self.labels = tuple(labels) if labels is not None else None
        self._inverses: np.ndarray | None = None
        self._orders: list[int] | None = None
        self._special: SpecialSets | None = None

    def __eq__(self, other):
        if not isinstance(other, Group):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, self.id))

    def __repr__(self):
        return f"Group({self.id!r}, n={self.n})"

    @property
    def key(self) -> tuple:
        return (self.id, self.n, self.table.tobytes())

    def elements(self) -> range:
        return range(self.n)

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def _bounds(self, g: int):
        if not 0 <= g < self.n:
            raise IndexOutOfRange(f"element index {g} outside [0, {self.n})")

    def inverse(self, g: int) -> int:
        self._bounds(g)
        if self._inverses is None:
            self._inverses = np.argmin(self.table, axis=1)  # position of 0 in each row
        return int(self._inverses[g])

    def order_of(self, g: int) -> int:
        self._bounds(g)
        if self._orders is None:
            self._orders = [0] * self.n
        if self._orders[g] == 0:
            k, x = 1, g
            while x != 0:
                x = self.mul(x, g)
                k += 1
            self._orders[g] = k
        return self._orders[g]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def special_sets(self) -> SpecialSets:
        if self._special is None:
            t = self.table
            rng = np.arange(self.n)
            sq = t[rng, rng]
            order_two = tuple(int(i) for i in np.flatnonzero(sq == 0))
            squares = tuple(sorted(set(int(s) for s in sq)))
            square_order_two = tuple(s for s in squares if s in set(order_two))
            central = tuple(
                int(g) for g in rng if np.array_equal(t[g, :], t[:, g])
            )
            central_order_two = tuple(g for g in central if g != 0 and g in set(order_two))
            self._special = SpecialSets(central, order_two, squares, square_order_two, central_order_two)
        return self._special

    def square_roots(self, c: int) -> tuple[int, ...]:
        """T_c: all g with g^2 = c, for c a nonidentity central involution."""
        self._bounds(c)
        s = self.special_sets()
        if c not in s.central_order_two:
            raise NotCentralInvolution(c)
        rng = np.arange(self.n)
        return tuple(int(i) for i in np.flatnonzero(self.table[rng, rng] == c))

    def is_pairwise_commuting(self, members: Iterable[int]) -> bool:
        ms = list(members)
        return all(self.mul(a, b) == self.mul(b, a) for i, a in enumerate(ms) for b in ms[i + 1:])

    def subgroup_generated(self, gens: Iterable[int]) -> "SubgroupHandle":
        gens = list(gens)
        for g in gens:
            self._bounds(g)
        members = {0}
        frontier = [0]
        gen_set = set(gens) | {self.inverse(g) for g in gens}
        for g in gen_set:
            if g not in members:
                members.add(g)
                frontier.append(g)
        while frontier:
            x = frontier.pop()
            for g in gen_set:
                y = self.mul(x, g)
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return SubgroupHandle(self, tuple(sorted(members)))

    def quotient(self, sub: "SubgroupHandle") -> tuple["Group", tuple[int, ...]]:
        """Factor group by a normal subgroup, plus the index projection map.

        Coset representatives are the least index in each coset; the quotient
        reuses validate_group, so the result carries full invariants.
        """
        if sub.parent is not self and sub.parent != self:
            raise ValueError("subgroup belongs to a different group")
        members = set(sub.members)
        for g in self.elements():
            ginv = self.inverse(g)
            for h in sub.members:
                if self.mul(self.mul(g, h), ginv) not in members:
                    raise NotNormal(g)
        coset_rep: dict[int, int] = {}
        rep_of_element = [0] * self.n
        for g in self.elements():
            if g in coset_rep:
                continue
            coset = sorted(self.mul(g, h) for h in sub.members)
            rep = coset[0]
            for x in coset:
                coset_rep[x] = rep
                rep_of_element[x] = rep
        reps = sorted(set(rep_of_element))
        index_of_rep = {rep: i for i, rep in enumerate(reps)}
        projection = tuple(index_of_rep[rep_of_element[g]] for g in self.elements())
        nq = len(reps)
        table = np.zeros((nq, nq), dtype=np.int64)
        for a, ra in enumerate(reps):
            for b, rb in enumerate(reps):
                table[a, b] = projection[self.mul(ra, rb)]
        labels = None
        if self.labels is not None:
            labels = [f"[{self.labels[rep]}]" for rep in reps]
        quotient_id = f"{self.id}/{{{','.join(map(str, sub.members))}}}"
        return validate_group(table, id=quotient_id, labels=labels), projection


@dataclass(frozen=True, eq=False)
class SubgroupHandle:
    """A subgroup of a parent group, stored as a sorted index tuple."""

    parent: Group
    members: tuple[int, ...]

    def __post_init__(self):
        ms = set(self.members)
        if 0 not in ms:
            raise ValueError("subgroup must contain the identity")
        for a in self.members:
            if self.parent.inverse(a) not in ms:
                raise ValueError(f"subgroup not closed under inverse at {a}")
            for b in self.members:
                if self.parent.mul(a, b) not in ms:
                    raise ValueError(f"subgroup not closed under product at ({a},{b})")

    def __len__(self):
        return len(self.members)


def coset_representatives(projection: Sequence[int], quotient_order: int) -> list[int]:
    """Least-index representative per coset; the lift section used downstream."""
    reps = [-1] * quotient_order
    for g, k in enumerate(projection):
        if reps[k] < 0:
            reps[k] = g
    return reps


def validate_group(table, id: str = "", labels: Sequence[str] | None = None) -> Group:
    """Check identity position, Latin property, and associativity; wrap.

    Associativity is exhaustive up to order 64 and sampled (100k seeded
    triples) above.
    """
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValueError("table must be square")
    n = t.shape[0]
    if n == 0:
        raise ValueError("table must be nonempty")
    if t.min() < 0 or t.max() >= n:
        raise ValueError("table entries must be indices < n")
    rng = np.arange(n)
    if not (np.array_equal(t[0, :], rng) and np.array_equal(t[:, 0], rng)):
        raise NoIdentity("index 0 is not a two-sided identity")
    for i in range(n):
        if len(set(t[i, :].tolist())) != n:
            raise NotLatin("row", i)
        if len(set(t[:, i].tolist())) != n:
            raise NotLatin("column", i)
    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        left = t[t, :]            # left[i,j,k] = (ij)k
        right = t[:, t]           # right[i,j,k] = i(jk)
        if not np.array_equal(left, right):
            i, j, k = np.argwhere(left != right)[0]
            raise NotAssociative(int(i), int(j), int(k))
    else:
        sampler = np.random.default_rng(0)
        ijk = sampler.integers(0, n, size=(SAMPLED_ASSOC_TRIPLES, 3))
        left = t[t[ijk[:, 0], ijk[:, 1]], ijk[:, 2]]
        right = t[ijk[:, 0], t[ijk[:, 1], ijk[:, 2]]]
        bad = np.flatnonzero(left != right)
        if bad.size:
            i, j, k = ijk[bad[0]]
            raise NotAssociative(int(i), int(j), int(k))
    t = t.copy()
    t.setflags(write=False)
    return Group(t, id=id, labels=labels)
