"""Concrete finite groups as explicit multiplication tables.

Elements are the integers 0..order-1 and element 0 is always the identity.
Construction validates the Latin-square and identity/inverse axioms; the
(cubic) associativity axiom is left to `assert_associative`, which tests
call on every constructed group shape.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    InvalidParameter,
    IsoCapExceeded,
    NotAnAction,
    NotAnAutomorphism,
    NotNormal,
    OrderCapExceeded,
)

__all__ = [
    "DEFAULT_ORDER_CAP",
    "DEFAULT_ISO_CAP",
    "Perm",
    "FiniteGroup",
    "GroupFingerprint",
    "Subgroup",
    "Homomorphism",
    "closure_from_generators",
    "direct_product",
    "semidirect_product",
    "quotient",
    "induced_subgroup",
    "center",
    "derived_subgroup",
    "assert_associative",
    "find_isomorphism",
    "is_isomorphic",
]

DEFAULT_ORDER_CAP = 512
DEFAULT_ISO_CAP = 128


@dataclass(frozen=True)
class Perm:
    """Permutation of {0..d-1}; images[i] is where point i goes."""

    images: tuple[int, ...]

    def __post_init__(self):
        d = len(self.images)
        if sorted(self.images) != list(range(d)):
            raise InvalidParameter(f"not a permutation of 0..{d - 1}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(degree: int) -> "Perm":
        return Perm(tuple(range(degree)))

    @staticmethod
    def from_cycles(degree: int, cycles) -> "Perm":
        """Build a permutation from disjoint cycles, e.g. [(0, 1, 2)]."""
        images = list(range(degree))
        for cyc in cycles:
            for i, pt in enumerate(cyc):
                images[pt] = cyc[(i + 1) % len(cyc)]
        return Perm(tuple(images))

    def __mul__(self, other: "Perm") -> "Perm":
        # apply self first, then other
        if self.degree != other.degree:
            raise InvalidParameter("cannot compose permutations of different degree")
        return Perm(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Perm":
        out = [0] * self.degree
        for i, j in enumerate(self.images):
            out[j] = i
        return Perm(tuple(out))


@dataclass(frozen=True)
class GroupFingerprint:
    """Cheap isomorphism invariants; equal fingerprints do not imply isomorphism."""

    order: int
    order_histogram: tuple[tuple[int, int], ...]
    abelian: bool
    center_order: int
    derived_order: int


class FiniteGroup:
    """A finite group given by its multiplication table (row * column)."""

    def __init__(self, table, labels=None, name: str = "", named_gens=None):
        n = len(table)
        if n == 0:
            raise InvalidParameter("a group needs at least one element")
        rows = []
        col_masks = [0] * n
        full = (1 << n) - 1
        for i, row in enumerate(table):
            row = tuple(row)
            if len(row) != n:
                raise InvalidParameter(f"row {i} has length {len(row)}, expected {n}")
            seen = 0
            for j, v in enumerate(row):
                if not 0 <= v < n:
                    raise InvalidParameter(f"entry table[{i}][{j}]={v} out of range")
                seen |= 1 << v
                col_masks[j] |= 1 << v
            if seen != full:
                raise InvalidParameter(f"row {i} is not a permutation of the elements")
            rows.append(row)
        if any(m != full for m in col_masks):
            raise InvalidParameter("some column is not a permutation of the elements")
        if rows[0] != tuple(range(n)) or any(rows[i][0] != i for i in range(n)):
            raise InvalidParameter("element 0 must be a two-sided identity")
        inverses = []
        for i in range(n):
            b = rows[i].index(0)
            if rows[b][i] != 0:
                raise InvalidParameter(f"element {i} has no two-sided inverse")
            inverses.append(b)
        self.order = n
        self.table = tuple(rows)
        self.identity = 0
        self.inverses = tuple(inverses)
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise InvalidParameter("labels must cover every element")
        self.name = name
        self.named_gens = dict(named_gens) if named_gens else {}
        self._induced_cache: dict[int, tuple["FiniteGroup", tuple[int, ...]]] = {}
        self._lattice = None

    def __repr__(self):
        tag = self.name or "finite group"
        return f"<{tag}, order {self.order}>"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.table[self.table[g][x]][self.inverses[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        out, row = 0, self.table
        while k:
            if k & 1:
                out = row[out][a]
            a = row[a][a]
            k >>= 1
        return out

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        t, inv = self.table, self.inverses
        return t[t[t[inv[a]][inv[b]]][a]][b]

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = [1] * self.order
        t = self.table
        for a in range(1, self.order):
            k, x = 1, a
            while x != 0:
                x = t[x][a]
                k += 1
            out[a] = k
        return tuple(out)

    @cached_property
    def exponent(self) -> int:
        import math

        e = 1
        for k in set(self.element_orders):
            e = math.lcm(e, k)
        return e

    @cached_property
    def generating_set(self) -> tuple[int, ...]:
        """A small generating tuple, chosen greedily by element order."""
        if self.order == 1:
            return ()
        orders = self.element_orders
        gens: list[int] = []
        mask, elems = 1, [0]
        while len(elems) < self.order:
            best = max(
                (g for g in range(self.order) if not (mask >> g) & 1),
                key=lambda g: (orders[g], -g),
            )
            gens.append(best)
            mask, elems = _closure(self.table, gens)
        return tuple(gens)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        gens = self.generating_set
        return all(t[a][b] == t[b][a] for a in gens for b in gens)

    @cached_property
    def center_mask(self) -> int:
        t = self.table
        gens = self.generating_set or (0,)
        mask = 0
        for z in range(self.order):
            if all(t[z][g] == t[g][z] for g in gens):
                mask |= 1 << z
        return mask

    @cached_property
    def derived_mask(self) -> int:
        comms = {self.commutator(a, b) for a in range(self.order) for b in range(self.order)}
        comms.discard(0)
        mask, _ = _closure(self.table, sorted(comms))
        return mask

    @cached_property
    def fingerprint(self) -> GroupFingerprint:
        hist: dict[int, int] = {}
        for k in self.element_orders:
            hist[k] = hist.get(k, 0) + 1
        return GroupFingerprint(
            order=self.order,
            order_histogram=tuple(sorted(hist.items())),
            abelian=self.is_abelian,
            center_order=_popcount(self.center_mask),
            derived_order=_popcount(self.derived_mask),
        )

    def closure(self, gens) -> tuple[int, list[int]]:
        """Mask and element list of the subgroup generated by `gens`."""
        return _closure(self.table, tuple(gens))


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _mask_elements(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _closure(table, gens) -> tuple[int, list[int]]:
    mask = 1
    elems = [0]
    for x in elems:  # grows during iteration
        row = table[x]
        for g in gens:
            y = row[g]
            if not (mask >> y) & 1:
                mask |= 1 << y
                elems.append(y)
    return mask, elems


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of `parent`, stored as a bitset over element indices."""

    parent: FiniteGroup
    mask: int
    order: int
    gens: tuple[int, ...] = ()

    @staticmethod
    def from_elements(parent: FiniteGroup, elems, gens=()) -> "Subgroup":
        mask = 0
        for e in elems:
            mask |= 1 << e
        sub = Subgroup(parent, mask, _popcount(mask), tuple(gens))
        t = parent.table
        for a in sub.elements():
            row = t[a]
            for b in sub.elements():
                if not (mask >> row[b]) & 1:
                    raise InvalidParameter("element set is not closed under multiplication")
        if not mask & 1:
            raise InvalidParameter("subgroup must contain the identity")
        return sub

    def elements(self) -> list[int]:
        return _mask_elements(self.mask)

    def __contains__(self, elem: int) -> bool:
        return bool((self.mask >> elem) & 1)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def __repr__(self):
        return f"<subgroup of order {self.order} in {self.parent.name or 'G'}>"


@dataclass(frozen=True, eq=False)
class Homomorphism:
    """A map between groups given element-wise; mapping[a] is the image of a."""

    source: FiniteGroup
    target: FiniteGroup
    mapping: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    @property
    def is_bijective(self) -> bool:
        return (
            self.source.order == self.target.order
            and len(set(self.mapping)) == self.source.order
        )

    def verify(self) -> bool:
        """Full check that mapping(a*b) == mapping(a)*mapping(b)."""
        s, t, m = self.source.table, self.target.table, self.mapping
        if m[0] != 0:
            return False
        n = self.source.order
        return all(m[s[a][b]] == t[m[a]][m[b]] for a in range(n) for b in range(n))


def closure_from_generators(gens, max_order: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Group generated by permutations, numbered in discovery order from the identity."""
    gens = list(gens)
    if not gens:
        raise InvalidParameter("need at least one generator")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise InvalidParameter("generators must share one degree")
    ident = Perm.identity(degree)
    elems = [ident]
    index = {ident.images: 0}
    for p in elems:  # grows during iteration
        for g in gens:
            q = p * g
            if q.images not in index:
                if len(elems) >= max_order:
                    raise OrderCapExceeded(
                        f"closure exceeds the order cap {max_order}"
                    )
                index[q.images] = len(elems)
                elems.append(q)
    n = len(elems)
    table = [[index[(a * b).images] for b in elems] for a in elems]
    return FiniteGroup(table, name=f"closure of {len(gens)} perms on {degree} points")


def direct_product(
    g: FiniteGroup, h: FiniteGroup, order_cap: int = DEFAULT_ORDER_CAP
) -> FiniteGroup:
    """Direct product; element a*|H|+b stands for the pair (a, b)."""
    n = g.order * h.order
    if n > order_cap:
        raise OrderCapExceeded(f"product of order {n} exceeds the cap {order_cap}")
    hn = h.order
    gt, ht = g.table, h.table
    table = []
    for a in range(g.order):
        ga = gt[a]
        for b in range(hn):
            hb = ht[b]
            table.append([ga[c] * hn + hb[d] for c in range(g.order) for d in range(hn)])
    labels = None
    if n <= 4096:
        labels = [
            f"({g.label(a)},{h.label(b)})" for a in range(g.order) for b in range(hn)
        ]
    name = f"{g.name} x {h.name}" if g.name and h.name else ""
    return FiniteGroup(table, labels=labels, name=name)


def semidirect_product(
    n_grp: FiniteGroup,
    h_grp: FiniteGroup,
    action,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> FiniteGroup:
    """Semidirect product N x| H.

    `action[h]` is the permutation of N's elements by which h acts; the pair
    (n1, h1)*(n2, h2) = (n1 * action[h1](n2), h1*h2).  Every action[h] must be
    an automorphism of N and h -> action[h] must be a homomorphism.
    """
    order = n_grp.order * h_grp.order
    if order > order_cap:
        raise OrderCapExceeded(f"product of order {order} exceeds the cap {order_cap}")
    if len(action) != h_grp.order:
        raise NotAnAction("need one permutation of N per element of H")
    acts = [tuple(a) for a in action]
    nn = n_grp.order
    for h, perm in enumerate(acts):
        if sorted(perm) != list(range(nn)):
            raise NotAnAutomorphism(f"action of element {h} is not a bijection on N")
        nt = n_grp.table
        for n1 in range(nn):
            row = nt[n1]
            pn1 = perm[n1]
            for n2 in range(nn):
                if perm[row[n2]] != nt[pn1][perm[n2]]:
                    raise NotAnAutomorphism(
                        f"action of element {h} breaks multiplication in N"
                    )
    ht = h_grp.table
    for h1 in range(h_grp.order):
        for h2 in range(h_grp.order):
            composed = acts[ht[h1][h2]]
            a1, a2 = acts[h1], acts[h2]
            if any(composed[x] != a1[a2[x]] for x in range(nn)):
                raise NotAnAction("action map is not a homomorphism into Aut(N)")
    hn = h_grp.order
    nt = n_grp.table
    table = []
    for n1 in range(nn):
        for h1 in range(hn):
            act = acts[h1]
            hrow = ht[h1]
            row = [0] * order
            base = nt[n1]
            for n2 in range(nn):
                tn = base[act[n2]] * hn
                for h2 in range(hn):
                    row[n2 * hn + h2] = tn + hrow[h2]
            table.append(row)
    labels = None
    if order <= 4096:
        labels = [
            f"({n_grp.label(a)},{h_grp.label(b)})" for a in range(nn) for b in range(hn)
        ]
    name = f"{n_grp.name} x| {h_grp.name}" if n_grp.name and h_grp.name else ""
    return FiniteGroup(table, labels=labels, name=name)


def _as_mask(g: FiniteGroup, sub) -> int:
    if isinstance(sub, Subgroup):
        if sub.parent is not g:
            raise InvalidParameter("subgroup belongs to a different group")
        return sub.mask
    return int(sub)


def quotient(g: FiniteGroup, normal) -> tuple[FiniteGroup, Homomorphism]:
    """Quotient G/N with its projection; raises NotNormal when N is not normal."""
    mask = _as_mask(g, normal)
    if not mask & 1:
        raise InvalidParameter("normal subgroup must contain the identity")
    elems = _mask_elements(mask)
    t = g.table
    for a in elems:
        row = t[a]
        for b in elems:
            if not (mask >> row[b]) & 1:
                raise InvalidParameter("given element set is not a subgroup")
    for gen in g.generating_set:
        for x in elems:
            if not (mask >> g.conj(gen, x)) & 1:
                raise NotNormal(
                    f"subgroup of order {len(elems)} is not normal in {g.name or 'G'}"
                )
    proj = [-1] * g.order
    reps: list[int] = []
    for x in range(g.order):
        if proj[x] >= 0:
            continue
        idx = len(reps)
        reps.append(x)
        row = t[x]
        for n in elems:
            proj[row[n]] = idx
    q_table = [[proj[t[a][b]] for b in reps] for a in reps]
    labels = [f"[{g.label(r)}]" for r in reps]
    q = FiniteGroup(q_table, labels=labels, name=f"{g.name}/N{len(elems)}" if g.name else "")
    return q, Homomorphism(g, q, tuple(proj))


def induced_subgroup(g: FiniteGroup, sub) -> tuple[FiniteGroup, tuple[int, ...]]:
    """The subgroup as a group in its own right, plus its embedding into g."""
    mask = _as_mask(g, sub)
    cached = g._induced_cache.get(mask)
    if cached is not None:
        return cached
    elems = _mask_elements(mask)
    index = {e: i for i, e in enumerate(elems)}
    t = g.table
    table = [[index[t[a][b]] for b in elems] for a in elems]
    labels = [g.label(e) for e in elems]
    out = (
        FiniteGroup(table, labels=labels, name=f"{g.name}|{len(elems)}" if g.name else ""),
        tuple(elems),
    )
    g._induced_cache[mask] = out
    return out


def center(g: FiniteGroup) -> Subgroup:
    mask = g.center_mask
    return Subgroup(g, mask, _popcount(mask))


def derived_subgroup(g: FiniteGroup) -> Subgroup:
    mask = g.derived_mask
    return Subgroup(g, mask, _popcount(mask))


def assert_associative(g: FiniteGroup) -> None:
    """Certify associativity; cubic scan for small orders, generator test above.

    The generator variant relies on the fact that checking a*(s*c) == (a*s)*c
    for all a, c and s in a set that reaches every element by left-bracketed
    products certifies full associativity.
    """
    t = g.table
    n = g.order
    if n <= 64:
        for a in range(n):
            ra = t[a]
            for b in range(n):
                ab = ra[b]
                rb = t[b]
                for c in range(n):
                    if t[ab][c] != ra[rb[c]]:
                        raise AssertionError(f"associativity fails at ({a},{b},{c})")
        return
    probes = set(g.generating_set) | {0}
    for s in probes:
        rs = t[s]
        for a in range(n):
            ra = t[a]
            ras = t[ra[s]]
            for c in range(n):
                if ra[rs[c]] != ras[c]:
                    raise AssertionError(f"associativity fails at ({a},{s},{c})")


def find_isomorphism(
    g: FiniteGroup, h: FiniteGroup, cap: int = DEFAULT_ISO_CAP
) -> Homomorphism | None:
    """Search for an isomorphism g -> h; None when provably none exists."""
    if g.order != h.order:
        return None
    if g.fingerprint != h.fingerprint:
        return None
    if g.order == 1:
        return Homomorphism(g, h, (0,))
    if g.order > cap:
        raise IsoCapExceeded(f"isomorphism search above order cap {cap}")
    gens = g.generating_set
    prefix_sizes = []
    for i in range(len(gens)):
        mask, elems = _closure(g.table, gens[: i + 1])
        prefix_sizes.append(len(elems))
    # express every element as a left-bracketed word in the generators
    order_words: list[tuple[int, int]] = [(-1, -1)] * g.order
    bfs = [0]
    seen = 1
    for x in bfs:
        row = g.table[x]
        for gi, gen in enumerate(gens):
            y = row[gen]
            if not (seen >> y) & 1:
                seen |= 1 << y
                order_words[y] = (x, gi)
                bfs.append(y)
    g_orders, h_orders = g.element_orders, h.element_orders
    candidates = [
        [e for e in range(h.order) if h_orders[e] == g_orders[gen]] for gen in gens
    ]
    ht = h.table
    images: list[int] = []

    def dfs(depth: int) -> tuple[int, ...] | None:
        if depth == len(gens):
            phi = [0] * g.order
            img_mask = 1
            for x in bfs[1:]:
                parent, gi = order_words[x]
                v = ht[phi[parent]][images[gi]]
                phi[x] = v
                img_mask |= 1 << v
            if _popcount(img_mask) != g.order:
                return None
            gt = g.table
            for a in range(g.order):
                ra, pa = gt[a], phi[a]
                for b in range(g.order):
                    if phi[ra[b]] != ht[pa][phi[b]]:
                        return None
            return tuple(phi)
        for img in candidates[depth]:
            images.append(img)
            mask, elems = _closure(ht, images)
            if len(elems) == prefix_sizes[depth]:
                found = dfs(depth + 1)
                if found is not None:
                    return found
            images.pop()
        return None

    phi = dfs(0)
    if phi is None:
        return None
    return Homomorphism(g, h, phi)


def is_isomorphic(g: FiniteGroup, h: FiniteGroup, cap: int = DEFAULT_ISO_CAP) -> bool:
    """Isomorphism test; abelian pairs settle by element-order histograms."""
    if g.fingerprint != h.fingerprint:
        return False
    if g.is_abelian and h.is_abelian:
        # the histogram of element orders classifies finite abelian groups
        return True
    return find_isomorphism(g, h, cap=cap) is not None
