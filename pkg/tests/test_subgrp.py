import pytest

import oracles
from spreadkit.permcore import PermGroup, is_subgroup, parse_permutation
from spreadkit.subgrp import double_coset_reps_and_sizes, enumerate_elements, normalizer, sylow_subgroup


def grp(gens, n):
    return PermGroup([parse_permutation(g, n) for g in gens], n)


@pytest.mark.parametrize("name,p,size", [
    ("A5", 2, 4), ("A5", 5, 5), ("A7", 3, 9), ("M11", 3, 9), ("M11", 2, 16), ("L2(11)", 11, 11),
])
def test_sylow_orders(cat, name, p, size):
    G = cat.group(name)
    P = sylow_subgroup(G, p)
    assert P.order() == size and is_subgroup(G, P)


@pytest.mark.slow
def test_sylow_s62(cat):
    G = cat.group("S6(2)")
    assert sylow_subgroup(G, 2).order() == 512


def test_sylow_of_coprime_prime_is_trivial(cat):
    assert sylow_subgroup(cat.group("A5"), 7).order() == 1


@pytest.mark.parametrize("name,p,size", [("A5", 5, 10), ("A5", 3, 6), ("M11", 3, 144), ("M11", 11, 55), ("L3(2)", 7, 21)])
def test_sylow_normalizers(cat, name, p, size):
    G = cat.group(name)
    assert normalizer(G, sylow_subgroup(G, p)).order() == size


def test_normalizer_brute(cat):
    G = cat.group("A6")
    S = grp(["(1,2,3)"], 6)
    elems = oracles.closure([oracles.as_tuple(g, 6) for g in G.generators], 6)
    sub = oracles.closure([oracles.as_tuple(g, 6) for g in S.generators], 6)
    want = sum(1 for h in elems if {oracles.conj(x, h) for x in sub} == sub)
    assert normalizer(G, S).order() == want


def test_normalizer_rejects_non_subgroup(cat):
    with pytest.raises(ValueError):
        normalizer(cat.group("A5"), grp(["(1,2)"], 5))


def test_enumerate_elements(cat):
    G = cat.group("A5")
    el = enumerate_elements(G)
    assert len(el) == 60 and len(set(el)) == 60
    assert el[0] == bytes(range(5)) or tuple(el[0]) == tuple(range(5))


@pytest.mark.parametrize("name,a,b", [("A5", 0, 1), ("A6", 0, 2), ("L3(2)", 0, 1), ("A7", 1, 3)])
def test_double_cosets_brute(cat, name, a, b):
    G = cat.group(name)
    A, B = cat.maxes(name)[a], cat.maxes(name)[b]
    n = G.degree
    elems = oracles.closure([oracles.as_tuple(g, n) for g in G.generators], n)
    sa = oracles.closure([oracles.as_tuple(g, n) for g in A.generators], n)
    sb = oracles.closure([oracles.as_tuple(g, n) for g in B.generators], n)
    got = double_coset_reps_and_sizes(G, A, B)
    assert sorted(d.size for d in got) == oracles.double_coset_sizes(elems, sa, sb)
    assert sum(d.size for d in got) == G.order()
    for d in got:
        assert d.representative in G


def test_double_cosets_m12_m11(cat):
    G = cat.group("M12")
    M = [H for H in cat.maxes("M12") if H.order() == 7920]
    # the point stabilizer is 2-transitive; the other M11 class is transitive
    same = double_coset_reps_and_sizes(G, M[0], M[0])
    assert sorted(d.size for d in same) == [7920, 87120]
    other = double_coset_reps_and_sizes(G, M[0], M[1])
    assert sorted(d.size for d in other) == [95040]


def test_double_cosets_reject_non_subgroup(cat):
    with pytest.raises(ValueError):
        double_coset_reps_and_sizes(cat.group("A5"), cat.maxes("A5")[0], grp(["(1,2)"], 5))
