import pytest

import oracles
from spreadkit.classes import (
    are_conjugate,
    centralizer,
    class_by_label,
    class_index,
    classes_matching_profile,
    classes_of_prime_order,
    conjugacy_classes,
    maximally_cyclic_representatives,
    power_map,
)
from spreadkit.permcore import PermGroup, parse_permutation


def grp(gens, n):
    return PermGroup([parse_permutation(g, n) for g in gens], n)


def test_a5_classes(cat):
    cl = conjugacy_classes(cat.group("A5"))
    assert [c.order for c in cl] == [1, 2, 3, 5, 5]
    assert [c.size for c in cl] == [1, 15, 20, 12, 12]
    assert [c.name for c in cl] == ["1A", "2A", "3A", "5A", "5B"]


def test_m12_has_15_classes(cat):
    assert len(conjugacy_classes(cat.group("M12"))) == 15


def test_u42_class_orders(cat):
    cl = conjugacy_classes(cat.group("U4(2)"))
    assert [c.order for c in cl] == [1, 2, 2, 3, 3, 3, 3, 4, 4, 5, 6, 6, 6, 6, 6, 6, 9, 9, 12, 12]


@pytest.mark.parametrize("name", ["A5", "A6", "S5", "S6", "L3(2)", "L2(11)", "A7"])
def test_classes_match_brute_force(cat, name):
    G = cat.group(name)
    n = G.degree
    elems = oracles.closure([oracles.as_tuple(g, n) for g in G.generators], n)
    brute = oracles.classes(elems)
    cl = conjugacy_classes(G)
    assert sorted(len(c) for c in brute) == sorted(c.size for c in cl)
    assert sum(c.size for c in cl) == G.order()
    # representatives are the least image arrays of their classes
    assert sorted(min(c) for c in brute) == sorted(oracles.as_tuple(c.representative, n) for c in cl)
    for c in cl:
        assert c.size * c.centralizer_order == G.order()


def test_canonical_order_stable_under_rebuild(cat):
    G = cat.group("M11")
    H = PermGroup(G.generators, G.degree)
    assert [(c.name, c.representative) for c in conjugacy_classes(G)] == \
        [(c.name, c.representative) for c in conjugacy_classes(H)]


def test_centralizers(cat):
    A7 = cat.group("A7")
    for c in conjugacy_classes(A7):
        C = centralizer(A7, c.representative)
        assert C.order() == c.centralizer_order
    seven = next(c for c in conjugacy_classes(A7) if c.order == 7)
    assert centralizer(A7, seven.representative).order() == 7
    assert centralizer(A7, parse_permutation("()", 7)).order() == 2520
    with pytest.raises(ValueError):
        centralizer(A7, parse_permutation("(1,2)", 7))


@pytest.mark.slow
def test_s62_12c_centralizer(cat):
    G = cat.group("S6(2)")
    twelves = [c for c in conjugacy_classes(G) if c.order == 12]
    assert 12 in [c.centralizer_order for c in twelves]


def test_are_conjugate():
    A6 = grp(["(2,3,4,5,6)", "(1,2,3)"], 6)
    x = parse_permutation("(1,2,3)", 6)
    ok, w = are_conjugate(A6, x, x, witness=True)
    assert ok and w.is_identity()
    assert not are_conjugate(A6, x, parse_permutation("(1,2,3)(4,5,6)", 6))
    y = parse_permutation("(1,3,2)", 6)
    ok, w = are_conjugate(A6, x, y, witness=True)
    assert ok and x.conjugate(w) == y and w in A6
    with pytest.raises(ValueError):
        are_conjugate(A6, x, parse_permutation("(1,2)", 6))


def test_power_maps(cat):
    G = cat.group("A5")
    assert power_map(G, 1) == list(range(5))
    five = parse_permutation("(1,2,3,4,5)", 5)
    i = class_index(G, five)
    j = class_index(G, five ** 2)
    assert i != j and power_map(G, 2)[i] == j
    U = cat.group("U4(2)")
    cl = conjugacy_classes(U)
    nine = next(c for c in cl if c.order == 9)
    k = power_map(U, 3)[nine.index]
    assert cl[k].order == 3 and cl[k].size == 40


@pytest.mark.parametrize("name", ["A5", "A6", "L3(2)", "M11"])
def test_power_map_composition(cat, name):
    G = cat.group(name)
    maps = {k: power_map(G, k) for k in range(1, 21)}
    for k in range(1, 21):
        for m in range(1, 21 // k + 1):
            if k * m <= 20:
                assert [maps[m][maps[k][i]] for i in range(len(maps[1]))] == maps[k * m]


def test_classes_of_prime_order(cat):
    A5 = cat.group("A5")
    got = classes_of_prime_order(A5, [2, 3, 5])
    assert sorted(c.order for c in got) == [2, 3, 5, 5]
    A6 = cat.group("A6")
    assert classes_of_prime_order(A6, [2], A6) == []
    S6 = cat.group("S6")
    got = classes_of_prime_order(S6, [2], cat.socle("S6"))
    assert sorted(c.size for c in got) == [15, 15]
    with pytest.raises(ValueError):
        classes_of_prime_order(S6, [2], grp(["(1,2,3)"], 6))


@pytest.mark.parametrize("name", ["S5", "S6", "A6", "L3(2)"])
def test_classes_of_prime_order_brute(cat, name):
    G = cat.group(name)
    N = cat.socle(name) or PermGroup([], G.degree)
    n = G.degree
    elems = oracles.closure([oracles.as_tuple(g, n) for g in G.generators], n)
    inner = oracles.closure([oracles.as_tuple(g, n) for g in N.generators], n)
    want = []
    for c in oracles.classes(elems):
        x = min(c)
        if oracles.order_of(x) in (2, 3, 5, 7) and x not in inner:
            want.append((oracles.order_of(x), len(c)))
    got = classes_of_prime_order(G, [2, 3, 5, 7], N)
    assert sorted(want) == sorted((c.order, c.size) for c in got)


def test_maximally_cyclic(cat):
    C6 = grp(["(1,2,3,4,5,6)"], 6)
    reps = maximally_cyclic_representatives(C6)
    assert [conjugacy_classes(C6)[i].order for i in reps] == [6]
    for name, orders in [("A5", [2, 3, 5]), ("A7", [3, 4, 5, 6, 7])]:
        G = cat.group(name)
        cl = conjugacy_classes(G)
        assert sorted(cl[i].order for i in maximally_cyclic_representatives(G)) == orders


def test_maximally_cyclic_brute(cat):
    G = cat.group("A6")
    n = G.degree
    elems = oracles.closure([oracles.as_tuple(g, n) for g in G.generators], n)
    brute = oracles.cyclic_subgroups_maximal(elems)
    cl = conjugacy_classes(G)
    assert sorted(len(c) for c in brute) == sorted(cl[i].order for i in maximally_cyclic_representatives(G))


def test_profile_matching(cat):
    A5 = cat.group("A5")
    assert [c.name for c in classes_matching_profile(A5, [(5, 12)])] == ["5A", "5B"]
    assert classes_matching_profile(A5, [(7, 1)]) == []
    M12 = cat.group("M12")
    ten = class_by_label(M12, "10A")
    got = classes_matching_profile(M12, [(10, ten.size)])
    assert [c.name for c in got] == ["10A"]


def test_membership_in_class(cat):
    G = cat.group("A5")
    five = class_by_label(G, "5A")
    assert five.representative in five
    assert parse_permutation("(1,2)(3,4)", 5) not in five
