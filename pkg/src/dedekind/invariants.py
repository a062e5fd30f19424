"""Exact normality ratios and structural predicates.

d'(G) is the number of conjugacy classes of subgroups over the number of
subgroups; it equals 1 exactly for the groups in which every subgroup is
normal.  d*(G) is the minimum of d' over all sections H/K of G, which turns
the ratio into a section-monotone quantity suitable for threshold criteria.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvalidParameter,
    IsoCapExceeded,
    OrderCapExceeded,
    StructureViolation,
)
from .groups import (
    DEFAULT_ISO_CAP,
    FiniteGroup,
    GroupFingerprint,
    Subgroup,
    _mask_elements,
    _popcount,
    induced_subgroup,
    is_isomorphic,
    quotient,
)
from .lattice import (
    DEFAULT_LATTICE_BUDGET,
    SubgroupLattice,
    conjugate_mask,
    is_lattice_modular,
    frattini_subgroup,
    maximal_subgroup_indices,
    subgroup_lattice,
)
from .numbertheory import multiplicative_order, prime_factorization

__all__ = [
    "DSTAR_ORDER_LIMIT",
    "Section",
    "InvariantReport",
    "SchmidtStructureReport",
    "d_prime",
    "sections",
    "d_star",
    "is_dedekind",
    "has_modular_lattice",
    "sylow_subgroups",
    "is_nilpotent",
    "is_iwasawa",
    "is_schmidt",
    "schmidt_structure_check",
    "is_q_self_dual",
    "compute_report",
]

DSTAR_ORDER_LIMIT = 256


def d_prime(g: FiniteGroup, budget: int = DEFAULT_LATTICE_BUDGET) -> Fraction:
    """k'(G) / |L(G)| as an exact reduced fraction."""
    lat = subgroup_lattice(g, budget)
    return Fraction(lat.k_prime, lat.size)


@dataclass(frozen=True)
class Section:
    """A section H/K of a group: K normal in H, with the quotient realized."""

    h: Subgroup
    k: Subgroup
    quotient: FiniteGroup

    @property
    def order(self) -> int:
        return self.quotient.order

    @property
    def fingerprint(self) -> GroupFingerprint:
        return self.quotient.fingerprint


def _normal_within(g: FiniteGroup, kmask: int, hgens: tuple[int, ...]) -> bool:
    return all(conjugate_mask(g, kmask, a) == kmask for a in hgens)


def _local_mask(embedding: tuple[int, ...], mask: int) -> int:
    out = 0
    for i, e in enumerate(embedding):
        if (mask >> e) & 1:
            out |= 1 << i
    return out


def sections(g: FiniteGroup, budget: int = DEFAULT_LATTICE_BUDGET):
    """Yield every section of g: one per pair (H, K <| H), including (G, 1) and (H, H)."""
    lat = subgroup_lattice(g, budget)
    for h in lat.subgroups:
        hgrp, emb = induced_subgroup(g, h)
        for k in lat.subgroups:
            if k.order > h.order or k.mask & ~h.mask:
                continue
            if not _normal_within(g, k.mask, h.gens):
                continue
            q, _ = quotient(hgrp, _local_mask(emb, k.mask))
            yield Section(h, k, q)


def d_star(
    g: FiniteGroup,
    prune: bool = True,
    budget: int = DEFAULT_LATTICE_BUDGET,
    allow_slow: bool = False,
    iso_cap: int = DEFAULT_ISO_CAP,
) -> Fraction:
    """Minimum of d' over all sections of g.

    With prune=True (the default), only one subgroup H per conjugacy class is
    expanded (conjugate subgroups yield isomorphic sections), sections with
    abelian quotient are skipped (their d' is 1, never a strict minimum), and
    quotients are deduplicated by fingerprint plus a verified isomorphism.
    prune=False evaluates every section literally; both modes agree.
    """
    if g.order > DSTAR_ORDER_LIMIT and not allow_slow:
        raise OrderCapExceeded(
            f"d* on order {g.order} > {DSTAR_ORDER_LIMIT} needs allow_slow=True"
        )
    if g.is_abelian:
        return Fraction(1)
    lat = subgroup_lattice(g, budget)
    best = Fraction(1)
    h_indices = lat.class_representatives() if prune else range(len(lat.subgroups))
    bins: dict[GroupFingerprint, list[FiniteGroup]] = {}
    for hi in h_indices:
        h = lat.subgroups[hi]
        hgrp, emb = induced_subgroup(g, h)
        derived = hgrp.derived_mask
        for k in lat.subgroups:
            if k.order > h.order or k.mask & ~h.mask:
                continue
            if not _normal_within(g, k.mask, h.gens):
                continue
            local = _local_mask(emb, k.mask)
            if prune and derived & ~local == 0:
                continue
            q, _ = quotient(hgrp, local)
            if prune:
                bin_ = bins.setdefault(q.fingerprint, [])
                duplicate = False
                for other in bin_:
                    try:
                        if is_isomorphic(q, other, cap=iso_cap):
                            duplicate = True
                            break
                    except IsoCapExceeded:
                        continue
                if duplicate:
                    continue
                bin_.append(q)
            val = d_prime(q, budget)
            if val < best:
                best = val
    return best


def _cyclic_mask(g: FiniteGroup, x: int) -> int:
    mask, y = 1, x
    while y:
        mask |= 1 << y
        y = g.table[y][x]
    return mask


def is_dedekind(g: FiniteGroup) -> bool:
    """Whether every subgroup of g is normal."""
    if g._lattice is not None:
        return g._lattice.nu == 0
    if g.is_abelian:
        return True
    gens = g.generating_set
    for x in range(1, g.order):
        mask = _cyclic_mask(g, x)
        if not _normal_within(g, mask, gens):
            return False
    return True


def has_modular_lattice(g: FiniteGroup, lat: SubgroupLattice | None = None) -> bool:
    lat = lat if lat is not None else subgroup_lattice(g)
    if lat.nu == 0:
        return True
    return is_lattice_modular(lat) is None


def sylow_subgroups(
    g: FiniteGroup, lat: SubgroupLattice | None = None
) -> dict[int, Subgroup]:
    """One Sylow p-subgroup per prime divisor of |g| (first in canonical order)."""
    lat = lat if lat is not None else subgroup_lattice(g)
    out: dict[int, Subgroup] = {}
    for p, a in sorted(prime_factorization(g.order).items()):
        pa = p**a
        out[p] = next(s for s in lat.subgroups if s.order == pa)
    return out


def is_nilpotent(g: FiniteGroup, lat: SubgroupLattice | None = None) -> bool:
    """Whether every Sylow subgroup is normal."""
    if g.is_abelian:
        return True
    lat = lat if lat is not None else subgroup_lattice(g)
    for p, sylow in sylow_subgroups(g, lat).items():
        if not lat.is_normal(lat.index_of(sylow.mask)):
            return False
    return True


def is_iwasawa(g: FiniteGroup, lat: SubgroupLattice | None = None) -> bool:
    """Nilpotent with a modular subgroup lattice."""
    lat = lat if lat is not None else subgroup_lattice(g)
    return is_nilpotent(g, lat) and has_modular_lattice(g, lat)


def is_schmidt(g: FiniteGroup, lat: SubgroupLattice | None = None) -> bool:
    """Non-nilpotent with every proper subgroup nilpotent.

    It suffices to test the maximal subgroups (subgroups of nilpotent groups
    are nilpotent), one representative per conjugacy class.
    """
    lat = lat if lat is not None else subgroup_lattice(g)
    if is_nilpotent(g, lat):
        return False
    seen: set[int] = set()
    for i in maximal_subgroup_indices(lat):
        cls = lat.class_of(i)
        if cls in seen:
            continue
        seen.add(cls)
        sub, _ = induced_subgroup(g, lat.subgroups[i])
        if not is_nilpotent(sub):
            return False
    return True


@dataclass(frozen=True)
class SchmidtStructureReport:
    """Outcome of the structural checks on a minimal non-nilpotent group."""

    p: int
    q: int
    r: int
    sylow_p_order: int
    sylow_q_order: int
    clauses: tuple[str, ...]


def schmidt_structure_check(g: FiniteGroup) -> SchmidtStructureReport:
    """Verify the structure a minimal non-nilpotent group must have.

    Checks: G = P x| Q with P the normal Sylow p-subgroup and Q a cyclic
    Sylow q-subgroup; Z(G) = Phi(G) = Phi(P) x Phi(Q); P/Phi(P) elementary
    abelian of rank r = the multiplicative order of p mod q; and every proper
    normal subgroup avoids Q and either contains P or sits inside Z(G).
    Raises StructureViolation naming the first failing clause.
    """
    lat = subgroup_lattice(g)
    if not is_schmidt(g, lat):
        raise InvalidParameter("group is not minimal non-nilpotent")
    factors = prime_factorization(g.order)
    if len(factors) != 2:
        raise StructureViolation("order must have exactly two prime divisors")
    sylows = sylow_subgroups(g, lat)
    normal_primes = [
        p for p, s in sylows.items() if lat.is_normal(lat.index_of(s.mask))
    ]
    if len(normal_primes) != 1:
        raise StructureViolation(
            f"expected exactly one normal Sylow subgroup, found {len(normal_primes)}"
        )
    p = normal_primes[0]
    (q,) = [r for r in factors if r != p]
    psub, qsub = sylows[p], sylows[q]
    qgrp, _ = induced_subgroup(g, qsub)
    if max(qgrp.element_orders) != qgrp.order:
        raise StructureViolation(f"Sylow {q}-subgroup is not cyclic")

    zmask = g.center_mask
    phi_g = frattini_subgroup(g, lat)
    if zmask != phi_g.mask:
        raise StructureViolation("Z(G) != Phi(G)")
    pgrp, pemb = induced_subgroup(g, psub)
    phi_p_local = frattini_subgroup(pgrp)
    phi_p = {pemb[i] for i in phi_p_local.elements()}
    qemb = induced_subgroup(g, qsub)[1]
    phi_q_local = frattini_subgroup(qgrp)
    phi_q = {qemb[i] for i in phi_q_local.elements()}
    prod_mask = 0
    for a in phi_p:
        row = g.table[a]
        for b in phi_q:
            prod_mask |= 1 << row[b]
    if prod_mask != phi_g.mask or _popcount(prod_mask) != len(phi_p) * len(phi_q):
        raise StructureViolation("Phi(G) != Phi(P) x Phi(Q)")

    r = multiplicative_order(p, q)
    top_quot, _ = quotient(pgrp, phi_p_local.mask)
    if top_quot.order != p**r:
        raise StructureViolation(
            f"|P/Phi(P)| = {top_quot.order}, expected p^r = {p**r}"
        )
    if not (top_quot.is_abelian and top_quot.exponent in (1, p)):
        raise StructureViolation("P/Phi(P) is not elementary abelian")

    for cls in lat.classes:
        if len(cls) != 1:
            continue
        n = lat.subgroups[cls[0]]
        if n.is_whole:
            continue
        if qsub.mask & ~n.mask == 0:
            raise StructureViolation(
                f"proper normal subgroup of order {n.order} contains the Sylow {q}-subgroup"
            )
        if psub.mask & ~n.mask != 0 and n.mask & ~zmask != 0:
            raise StructureViolation(
                f"proper normal subgroup of order {n.order} neither contains P nor lies in Z(G)"
            )
    return SchmidtStructureReport(
        p=p,
        q=q,
        r=r,
        sylow_p_order=psub.order,
        sylow_q_order=qsub.order,
        clauses=(
            "normal Sylow p, cyclic Sylow q",
            "Z(G) = Phi(G) = Phi(P) x Phi(Q)",
            "P/Phi(P) elementary abelian of rank ord_q(p)",
            "proper normals avoid Q and contain P or lie in Z(G)",
        ),
    )


def is_q_self_dual(
    g: FiniteGroup,
    lat: SubgroupLattice | None = None,
    iso_cap: int = DEFAULT_ISO_CAP,
) -> bool:
    """Whether every quotient of g is isomorphic to some subgroup of g."""
    lat = lat if lat is not None else subgroup_lattice(g)
    reps_by_order: dict[int, list[int]] = {}
    for i in lat.class_representatives():
        reps_by_order.setdefault(lat.subgroups[i].order, []).append(i)
    for cls in lat.classes:
        if len(cls) != 1:
            continue
        n = lat.subgroups[cls[0]]
        if n.is_trivial or n.is_whole:
            continue
        q, _ = quotient(g, n.mask)
        found = False
        for i in reps_by_order.get(q.order, []):
            sub, _ = induced_subgroup(g, lat.subgroups[i])
            if is_isomorphic(q, sub, cap=iso_cap):
                found = True
                break
        if not found:
            return False
    return True


@dataclass
class InvariantReport:
    """Everything the engine reports about one group, JSON-stable."""

    spec: str
    order: int
    lattice_size: int
    k_prime: int
    normal_count: int
    nu: int
    d_prime: Fraction
    d_star: Fraction | None
    flags: dict[str, bool]
    ms: int

    def to_json_dict(self) -> dict:
        return {
            "spec": self.spec,
            "order": self.order,
            "lattice_size": self.lattice_size,
            "k_prime": self.k_prime,
            "normal_count": self.normal_count,
            "nu": self.nu,
            "d_prime": {"num": self.d_prime.numerator, "den": self.d_prime.denominator},
            "d_star": None
            if self.d_star is None
            else {"num": self.d_star.numerator, "den": self.d_star.denominator},
            "flags": dict(sorted(self.flags.items())),
            "ms": self.ms,
        }

    @staticmethod
    def from_json_dict(data: dict) -> "InvariantReport":
        return InvariantReport(
            spec=data["spec"],
            order=data["order"],
            lattice_size=data["lattice_size"],
            k_prime=data["k_prime"],
            normal_count=data["normal_count"],
            nu=data["nu"],
            d_prime=Fraction(data["d_prime"]["num"], data["d_prime"]["den"]),
            d_star=None
            if data["d_star"] is None
            else Fraction(data["d_star"]["num"], data["d_star"]["den"]),
            flags=dict(data["flags"]),
            ms=data["ms"],
        )


def compute_report(
    g: FiniteGroup,
    spec: str | None = None,
    budget: int = DEFAULT_LATTICE_BUDGET,
    want_d_star: bool = True,
    allow_slow: bool = False,
    iso_cap: int = DEFAULT_ISO_CAP,
) -> InvariantReport:
    """Full invariant report; d_star is None when skipped for size."""
    t0 = time.perf_counter()
    lat = subgroup_lattice(g, budget)
    dp = Fraction(lat.k_prime, lat.size)
    ds: Fraction | None = None
    if want_d_star and (g.order <= DSTAR_ORDER_LIMIT or allow_slow):
        ds = d_star(g, budget=budget, allow_slow=allow_slow, iso_cap=iso_cap)
    nilpotent = is_nilpotent(g, lat)
    modular = has_modular_lattice(g, lat)
    flags = {
        "abelian": g.is_abelian,
        "dedekind": lat.nu == 0,
        "nilpotent": nilpotent,
        "iwasawa": nilpotent and modular,
        "modular_lattice": modular,
        "schmidt": is_schmidt(g, lat),
    }
    ms = int(round((time.perf_counter() - t0) * 1000))
    return InvariantReport(
        spec=spec if spec is not None else (g.name or f"order{g.order}"),
        order=g.order,
        lattice_size=lat.size,
        k_prime=lat.k_prime,
        normal_count=lat.normal_count,
        nu=lat.nu,
        d_prime=dp,
        d_star=ds,
        flags=flags,
        ms=ms,
    )
