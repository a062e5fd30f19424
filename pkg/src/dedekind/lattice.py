"""Subgroup lattice enumeration and lattice-level invariants.

Subgroups are bitmasks over element indices.  Enumeration seeds with every
cyclic subgroup and repeatedly extends a known subgroup H by one element of
prime-power order; this reaches every subgroup because any strict extension
H < K contains a prime-power element outside H (an element of K \\ H has some
prime-power component outside H, else it would lie in H itself).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import LatticeBudgetExceeded
from .groups import FiniteGroup, Subgroup, _mask_elements, _popcount
from .numbertheory import is_prime_power

__all__ = [
    "DEFAULT_LATTICE_BUDGET",
    "SubgroupLattice",
    "subgroup_lattice",
    "all_subgroup_masks",
    "conjugate_mask",
    "hasse_edges",
    "maximal_subgroup_indices",
    "frattini_subgroup",
    "is_lattice_modular",
]

DEFAULT_LATTICE_BUDGET = 100_000


def conjugate_mask(g: FiniteGroup, mask: int, a: int) -> int:
    """Image of the subgroup bitmask under x -> a x a^-1."""
    t, ia = g.table, g.inverses[a]
    ra = t[a]
    out = 0
    m = mask
    while m:
        low = m & -m
        x = low.bit_length() - 1
        out |= 1 << t[ra[x]][ia]
        m ^= low
    return out


def _extend(table, hmask: int, helems: list[int], gens: tuple[int, ...], g: int,
            full_mask: int, n: int) -> tuple[int, list[int]]:
    """Closure of H union {g} via coset accumulation.

    Walks coset representatives, multiplying by the generators; each new
    product outside the current set contributes a whole coset H*x at the cost
    of |H| lookups.  A subgroup larger than half the group must be the whole
    group, so that case short-circuits.
    """
    kmask = hmask
    kelems = list(helems)
    half = n // 2
    allgens = gens + (g,)
    reps = deque([0])
    first_new = None
    while reps:
        r = reps.popleft()
        row = table[r]
        for s in allgens:
            y = row[s]
            if not (kmask >> y) & 1:
                if first_new is None:
                    first_new = y
                for h in helems:
                    z = table[h][y]
                    if not (kmask >> z) & 1:
                        kmask |= 1 << z
                        kelems.append(z)
                reps.append(y)
                if len(kelems) > half:
                    return full_mask, list(range(n))
    return kmask, kelems


def all_subgroup_masks(
    g: FiniteGroup, budget: int = DEFAULT_LATTICE_BUDGET
) -> dict[int, tuple[int, ...]]:
    """All subgroups of g as {mask: generating tuple}."""
    n = g.order
    table = g.table
    full_mask = (1 << n) - 1
    orders = g.element_orders
    seen: dict[int, tuple[int, ...]] = {1: ()}
    elems_of: dict[int, list[int]] = {1: [0]}
    for x in range(1, n):
        mask, elems, y = 1, [0], x
        while y != 0:
            mask |= 1 << y
            elems.append(y)
            y = table[y][x]
        if mask not in seen:
            seen[mask] = (x,)
            elems_of[mask] = elems
    if len(seen) > budget:
        raise LatticeBudgetExceeded(f"more than {budget} subgroups")
    ppow = [x for x in range(1, n) if is_prime_power(orders[x])]
    queue = deque(seen)
    while queue:
        hmask = queue.popleft()
        helems = elems_of[hmask]
        if len(helems) == n:
            continue
        hgens = seen[hmask]
        tried = hmask
        for x in ppow:
            if (tried >> x) & 1:
                continue
            kmask, kelems = _extend(table, hmask, helems, hgens, x, full_mask, n)
            for h in helems:
                tried |= 1 << table[h][x]
            if kmask not in seen:
                seen[kmask] = hgens + (x,)
                elems_of[kmask] = kelems
                if len(seen) > budget:
                    raise LatticeBudgetExceeded(f"more than {budget} subgroups")
                queue.append(kmask)
    return seen


@dataclass(frozen=True)
class ModularityWitness:
    """A triple violating the modular law, as lattice indices (x <= z)."""

    x: int
    y: int
    z: int


class SubgroupLattice:
    """The full subgroup lattice of a finite group.

    Subgroups are indexed in a canonical order (by order, then bitmask) and
    grouped into conjugacy classes; joins, meets, normalizers and covering
    relations are computed on demand.
    """

    def __init__(self, group: FiniteGroup, budget: int = DEFAULT_LATTICE_BUDGET):
        self.group = group
        found = all_subgroup_masks(group, budget)
        masks = sorted(found, key=lambda m: (_popcount(m), m))
        self.subgroups = [
            Subgroup(group, m, _popcount(m), found[m]) for m in masks
        ]
        self._index = {m: i for i, m in enumerate(masks)}
        self._masks = masks
        self._join_memo: dict[tuple[int, int], int] = {}
        self._normalizer_memo: dict[int, int] = {}
        self._classes: list[tuple[int, ...]] | None = None
        self._class_of: list[int] | None = None

    def __len__(self) -> int:
        return len(self.subgroups)

    @property
    def size(self) -> int:
        return len(self.subgroups)

    def index_of(self, mask: int) -> int:
        try:
            return self._index[mask]
        except KeyError:
            raise KeyError(f"bitmask {mask:#x} is not a subgroup") from None

    def _compute_classes(self) -> None:
        n = len(self._masks)
        class_of = [-1] * n
        classes: list[tuple[int, ...]] = []
        if self.group.is_abelian:
            for i in range(n):
                class_of[i] = i
                classes.append((i,))
        else:
            gens = self.group.generating_set
            for i in range(n):
                if class_of[i] >= 0:
                    continue
                orbit = [i]
                frontier = [self._masks[i]]
                seen = {self._masks[i]}
                while frontier:
                    m = frontier.pop()
                    for a in gens:
                        c = conjugate_mask(self.group, m, a)
                        if c not in seen:
                            seen.add(c)
                            frontier.append(c)
                            orbit.append(self._index[c])
                cid = len(classes)
                orbit.sort()
                classes.append(tuple(orbit))
                for j in orbit:
                    class_of[j] = cid
        self._classes = classes
        self._class_of = class_of

    @property
    def classes(self) -> list[tuple[int, ...]]:
        """Conjugacy classes of subgroups, each a sorted index tuple."""
        if self._classes is None:
            self._compute_classes()
        return self._classes

    def class_of(self, i: int) -> int:
        if self._class_of is None:
            self._compute_classes()
        return self._class_of[i]

    def class_representatives(self) -> list[int]:
        return [cls[0] for cls in self.classes]

    @property
    def k_prime(self) -> int:
        """Number of conjugacy classes of subgroups."""
        return len(self.classes)

    @property
    def normal_count(self) -> int:
        return sum(1 for cls in self.classes if len(cls) == 1)

    @property
    def nu(self) -> int:
        """Number of conjugacy classes of non-normal subgroups."""
        return self.k_prime - self.normal_count

    def is_normal(self, i: int) -> bool:
        return len(self.classes[self.class_of(i)]) == 1

    def contains(self, i: int, j: int) -> bool:
        """Whether subgroup i contains subgroup j."""
        return (self._masks[j] & ~self._masks[i]) == 0

    def meet(self, i: int, j: int) -> int:
        return self._index[self._masks[i] & self._masks[j]]

    def join(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        key = (i, j)
        memo = self._join_memo
        if key in memo:
            return memo[key]
        mi, mj = self._masks[i], self._masks[j]
        if mj & ~mi == 0:
            memo[key] = i
            return i
        if mi & ~mj == 0:
            memo[key] = j
            return j
        table = self.group.table
        n = self.group.order
        full = (1 << n) - 1
        base = self.subgroups[j]
        kmask, kelems = base.mask, base.elements()
        cur_gens = tuple(base.gens)
        for x in self.subgroups[i].gens:
            if not (kmask >> x) & 1:
                kmask, kelems = _extend(table, kmask, kelems, cur_gens, x, full, n)
                cur_gens += (x,)
        result = self._index[kmask]
        memo[key] = result
        return result

    def normalizer(self, i: int) -> int:
        """Bitmask of the normalizer of subgroup i in the whole group."""
        memo = self._normalizer_memo
        if i in memo:
            return memo[i]
        g = self.group
        m = self._masks[i]
        out = 0
        for a in range(g.order):
            if conjugate_mask(g, m, a) == m:
                out |= 1 << a
        memo[i] = out
        return out


def subgroup_lattice(
    g: FiniteGroup, budget: int = DEFAULT_LATTICE_BUDGET
) -> SubgroupLattice:
    """The (cached) subgroup lattice of g."""
    if g._lattice is None:
        g._lattice = SubgroupLattice(g, budget)
    return g._lattice


def hasse_edges(lat: SubgroupLattice) -> list[tuple[int, int]]:
    """Covering pairs (i, j) with subgroup i maximal in subgroup j."""
    edges: list[tuple[int, int]] = []
    masks = lat._masks
    orders = [s.order for s in lat.subgroups]
    for j in range(len(masks)):
        mj, oj = masks[j], orders[j]
        below = [
            i
            for i in range(j)
            if oj % orders[i] == 0 and orders[i] < oj and masks[i] & ~mj == 0
        ]
        below.sort(key=lambda i: -orders[i])
        accepted: list[int] = []
        for i in below:
            mi = masks[i]
            if not any(mi & ~masks[k] == 0 for k in accepted):
                edges.append((i, j))
            accepted.append(i)
    return edges


def maximal_subgroup_indices(lat: SubgroupLattice) -> list[int]:
    """Indices of the maximal proper subgroups."""
    masks = lat._masks
    top = len(masks) - 1
    out: list[int] = []
    for i in sorted(range(top), key=lambda i: -lat.subgroups[i].order):
        if not any(masks[i] & ~masks[k] == 0 for k in out):
            out.append(i)
    return out


def frattini_subgroup(g: FiniteGroup, lat: SubgroupLattice | None = None) -> Subgroup:
    """Intersection of the maximal subgroups (the whole group if none exist)."""
    if lat is None:
        lat = subgroup_lattice(g)
    masks = lat._masks
    maximal = maximal_subgroup_indices(lat)
    if not maximal:
        return lat.subgroups[-1]
    acc = masks[-1]
    for i in maximal:
        acc &= masks[i]
    return lat.subgroups[lat.index_of(acc)]


def brute_force_subgroup_masks(g: FiniteGroup) -> set[int]:
    """Every subgroup mask, found the slow and obvious way.

    Starts from the trivial subgroup and repeatedly closes H + {x} under
    multiplication for every subgroup H found so far and every element x,
    using a quadratic fixpoint closure.  Shares nothing with the optimized
    enumeration, so it serves as an independent oracle; intended for groups
    of order <= 24 or so.
    """
    table = g.table

    def close(mask: int) -> int:
        while True:
            elems = _mask_elements(mask)
            grown = mask
            for a in elems:
                row = table[a]
                for b in elems:
                    grown |= 1 << row[b]
            if grown == mask:
                return mask
            mask = grown

    found = {1}
    frontier = [1]
    while frontier:
        hmask = frontier.pop()
        for x in range(1, g.order):
            if hmask >> x & 1:
                continue
            new = close(hmask | 1 << x)
            if new not in found:
                found.add(new)
                frontier.append(new)
    return found


def is_lattice_modular(lat: SubgroupLattice) -> ModularityWitness | None:
    """None if the lattice satisfies the modular law, else a witness triple.

    Checks join(x, meet(y, z)) == meet(join(x, y), z) for every pair x <= z
    and every y; the first violation in scan order is returned.  Triples where
    both sides agree for order reasons (x = z, y comparable with z, x <= y)
    are skipped, so only genuinely at-risk triples cost a join.
    """
    n = len(lat.subgroups)
    masks = lat._masks
    for x in range(n):
        mx = masks[x]
        if mx == masks[0]:
            continue
        for z in range(n):
            mz = masks[z]
            if x == z or mx & ~mz:
                continue
            for y in range(n):
                my = masks[y]
                if my & ~mz == 0 or mz & ~my == 0 or mx & ~my == 0:
                    continue
                left = lat.join(x, lat.meet(y, z))
                right = lat.meet(lat.join(x, y), z)
                if left != right:
                    return ModularityWitness(x, y, z)
    return None
