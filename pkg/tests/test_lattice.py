"""Subgroup enumeration, conjugacy classing, and lattice structure."""

import pytest

from conftest import brute_force_subgroup_classes
from dedekind.errors import LatticeBudgetExceeded
from dedekind.families import cyclic, dihedral, elementary_abelian, modular_group
from dedekind.groups import direct_product
from dedekind.lattice import (
    all_subgroup_masks,
    brute_force_subgroup_masks,
    conjugate_mask,
    frattini_subgroup,
    hasse_edges,
    is_lattice_modular,
    maximal_subgroup_indices,
    subgroup_lattice,
)


def test_subgroup_counts_for_known_groups(zoo):
    expected = {
        "c1": 1,
        "c2": 2,
        "c12": 6,  # one per divisor
        "ea4": 5,
        "ea8": 16,
        "ea9": 6,
        "s3": 6,
        "d8": 10,
        "q8": 6,
        "m16": 11,
        "a4": 10,
        "he3": 19,
    }
    for name, count in expected.items():
        lat = subgroup_lattice(zoo[name])
        assert lat.size == count, name


def test_every_mask_is_a_subgroup(zoo):
    g = zoo["d12"]
    masks = all_subgroup_masks(g)
    for mask, gens in masks.items():
        assert mask & 1  # contains the identity
        closed, _ = g.closure(list(gens))
        assert closed == mask
        elems = [a for a in range(g.order) if (mask >> a) & 1]
        for a in elems:
            for b in elems:
                assert (mask >> g.mul(a, b)) & 1


def test_enumeration_matches_brute_force_oracle(zoo):
    for name in ("c12", "ea8", "s3", "d8", "d12", "q8", "a4", "d16", "g12"):
        g = zoo[name]
        assert set(all_subgroup_masks(g)) == brute_force_subgroup_masks(g), name
    g24 = direct_product(zoo["c2"], zoo["d12"])
    assert set(all_subgroup_masks(g24)) == brute_force_subgroup_masks(g24)


def test_conjugacy_classes_match_brute_force(zoo):
    for name in ("s3", "d8", "d12", "q8", "a4", "he3", "m16"):
        g = zoo[name]
        lat = subgroup_lattice(g)
        oracle = brute_force_subgroup_classes(g)
        assert lat.k_prime == len(oracle), name
        assert lat.normal_count == sum(1 for c in oracle if len(c) == 1), name
        assert lat.nu == lat.k_prime - lat.normal_count, name
        # the engine's classes carry the same masks
        engine = {frozenset(lat.subgroups[i].mask for i in cls) for cls in lat.classes}
        assert engine == set(oracle), name


def test_normality_and_normalizers(zoo):
    g = zoo["d8"]
    lat = subgroup_lattice(g)
    full = (1 << g.order) - 1
    for i, sub in enumerate(lat.subgroups):
        nz = lat.normalizer(i)
        assert lat.is_normal(i) == (nz == full)
        # the normalizer really normalizes
        for a in range(g.order):
            if (nz >> a) & 1:
                assert conjugate_mask(g, sub.mask, a) == sub.mask
        # orbit-stabilizer: class size times normalizer size is the order
        cls = next(c for c in lat.classes if i in c)
        assert len(cls) * bin(nz).count("1") == g.order


def test_meet_and_join(zoo):
    g = zoo["d8"]
    lat = subgroup_lattice(g)
    for i, a in enumerate(lat.subgroups):
        for j, b in enumerate(lat.subgroups):
            m = lat.subgroups[lat.meet(i, j)].mask
            assert m == a.mask & b.mask
            jn = lat.subgroups[lat.join(i, j)].mask
            assert jn & a.mask == a.mask and jn & b.mask == b.mask
            # nothing smaller contains both
            for k, c in enumerate(lat.subgroups):
                if c.mask & a.mask == a.mask and c.mask & b.mask == b.mask:
                    assert c.mask & jn == jn


def test_hasse_edges_are_covers(zoo):
    g = zoo["d8"]
    lat = subgroup_lattice(g)
    edges = hasse_edges(lat)
    assert len(edges) == 15
    masks = [s.mask for s in lat.subgroups]
    for i, j in edges:
        assert masks[i] != masks[j] and masks[i] & masks[j] == masks[i]
        between = [
            k
            for k, m in enumerate(masks)
            if m != masks[i] and m != masks[j] and m & masks[i] == masks[i] and masks[j] & m == m
        ]
        assert not between
    # chain lattice of a prime-power cyclic group: one cover per step
    chain = subgroup_lattice(cyclic(16))
    chain_orders = {
        (chain.subgroups[i].order, chain.subgroups[j].order)
        for i, j in hasse_edges(chain)
    }
    assert chain_orders == {(1, 2), (2, 4), (4, 8), (8, 16)}


def test_maximal_subgroups(zoo):
    lat = subgroup_lattice(zoo["c12"])
    orders = sorted(lat.subgroups[i].order for i in maximal_subgroup_indices(lat))
    assert orders == [4, 6]
    lat8 = subgroup_lattice(zoo["d8"])
    assert sorted(lat8.subgroups[i].order for i in maximal_subgroup_indices(lat8)) == [4, 4, 4]


def test_frattini_subgroup(zoo):
    assert frattini_subgroup(zoo["d8"]).order == 2
    assert frattini_subgroup(zoo["q8"]).order == 2
    assert frattini_subgroup(zoo["ea8"]).order == 1
    assert frattini_subgroup(cyclic(16)).order == 8
    assert frattini_subgroup(zoo["s3"]).order == 1
    assert frattini_subgroup(zoo["m16"]).order == 4


def test_lattice_modularity(zoo):
    # diamond-like and chain lattices are modular
    for name in ("c12", "ea4", "ea8", "q8", "m16", "s3"):
        assert is_lattice_modular(subgroup_lattice(zoo[name])) is None, name
    # pentagons: dihedral 2-groups, the alternating group on 4 points,
    # and the exponent-p group of order 27
    for name in ("d8", "d12", "d16", "a4", "he3"):
        lat = subgroup_lattice(zoo[name])
        w = is_lattice_modular(lat)
        assert w is not None, name
        x, y, z = w.x, w.y, w.z
        # x <= z yet the modular law fails at (x, y, z)
        assert lat.subgroups[x].mask & lat.subgroups[z].mask == lat.subgroups[x].mask
        assert lat.meet(lat.join(x, y), z) != lat.join(x, lat.meet(y, z))


def test_lattice_budget(zoo):
    with pytest.raises(LatticeBudgetExceeded):
        subgroup_lattice(elementary_abelian(2, 4), budget=10)


def test_class_representatives(zoo):
    lat = subgroup_lattice(zoo["d8"])
    reps = lat.class_representatives()
    assert len(reps) == lat.k_prime
    covered = set()
    for r in reps:
        cls = next(c for c in lat.classes if r in c)
        covered |= set(cls)
    assert covered == set(range(lat.size))


def test_index_and_contains(zoo):
    g = zoo["d8"]
    lat = subgroup_lattice(g)
    for i, a in enumerate(lat.subgroups):
        assert lat.index_of(a.mask) == i
        for j, b in enumerate(lat.subgroups):
            assert lat.contains(i, j) == (a.mask & b.mask == b.mask)
    with pytest.raises(KeyError):
        lat.index_of(0b1011)  # not a subgroup of d8
