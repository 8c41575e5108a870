from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from spreadkit import RandomStream
from spreadkit.classes import class_by_label, conjugacy_classes, power_map
from spreadkit.permcore import PermGroup, coset_action, parse_permutation
from spreadkit.probgen import (
    PermChar,
    approx_p,
    characters_of,
    common_generator_with_given_elements,
    cover_all,
    empty_intersection,
    hits_every,
    is_generating_pair,
    nongeneration_profile,
    orbit_reps_product_of_classes,
    permutation_character,
    prob_gen_info,
    random_check_uniform_spread,
    ratio_of_nongeneration,
    sigma_from_maxes,
    spread_bound,
    tuple_cover_search,
    upper_bound_fixed_point_ratios,
)
from spreadkit.subgrp import double_coset_reps_and_sizes


def grp(gens, n):
    return PermGroup([parse_permutation(g, n) for g in gens], n)


def elements(G):
    return oracles.closure([oracles.as_tuple(g, G.degree) for g in G.generators], G.degree)


def by_order(M, order):
    return [H for H in M if H.order() == order][0]


# --- characters -----------------------------------------------------------------


def test_a5_characters(cat):
    G = cat.group("A5")
    vals = sorted(pi.values for pi in characters_of(G, cat.maxes("A5")))
    assert vals == [[5, 1, 2, 0, 0], [6, 2, 0, 1, 1], [10, 2, 1, 0, 0]]


def test_whole_group_character(cat):
    G = cat.group("A5")
    pi = permutation_character(G, G, "G")
    assert pi.degree == 1 and pi.values == [1] * 5


def test_character_matches_coset_fixed_points(cat):
    G = cat.group("L3(2)")
    el = elements(G)
    for M in cat.maxes("L3(2)"):
        pi = permutation_character(G, M)
        sub = elements(M)
        cosets = oracles.right_cosets(el, sub)
        for c, v in zip(conjugacy_classes(G), pi.values):
            assert oracles.fixed_cosets(oracles.as_tuple(c.representative, 7), sub, cosets) == v


# --- sigma ----------------------------------------------------------------------------


def test_approx_p_empty_list():
    v = approx_p([], 2, 5)
    assert v.values == [0] * 5 and v.maximum() == 0
    with pytest.raises(ValueError):
        approx_p([], 2)


def test_approx_p_misaligned():
    with pytest.raises(ValueError):
        approx_p([PermChar("a", 2, [2, 0]), PermChar("b", 2, [2, 0, 0])], 1)


def test_approx_p_a7(cat):
    G = cat.group("A7")
    chars = characters_of(G, cat.maxes("A7"))
    seven = [c for c in conjugacy_classes(G) if c.order == 7][0]
    v = approx_p(chars, seven.index)
    assert v.values == [0, Q(2, 5), 0, Q(2, 5), Q(2, 15), 0, 0, Q(2, 15), Q(2, 15)]


def test_approx_p_m12(cat):
    G = cat.group("M12")
    chars = characters_of(G, cat.maxes("M12"))
    ten = class_by_label(G, "10A")
    v = approx_p(chars, ten.index)
    assert v.maximum() == Q(1, 3)
    two = [c for c in conjugacy_classes(G) if c.order == 2 and c.size == 396][0]
    assert v.values[two.index] == Q(3, 11)


def test_sigma_from_maxes(cat):
    G = cat.group("A5")
    five = class_by_label(G, "5A").index
    assert sigma_from_maxes(G, five, cat.maxes("A5")) == Q(1, 3)
    assert sigma_from_maxes(G, five, []) == 0
    S = cat.group("S5")
    s5 = [c for c in conjugacy_classes(S) if c.order == 5][0].index
    assert sigma_from_maxes(S, s5, cat.maxes("S5"), mode="outer", socle=cat.socle("S5")) == 0
    with pytest.raises(ValueError):
        sigma_from_maxes(S, s5, cat.maxes("S5"), mode="outer")


@pytest.mark.parametrize("sigma,bound", [(Q(1, 3), 2), (Q(2, 5), 2), (Q(3, 14), 4), (Q(7, 55), 7),
                                         (Q(2, 3), 1), (Q(1), 0), (Q(0), None)])
def test_spread_bound(sigma, bound):
    assert spread_bound(sigma) == bound


@settings(max_examples=200)
@given(st.fractions(min_value=0, max_value=1))
def test_spread_bound_is_largest_k_with_k_sigma_below_one(x):
    b = spread_bound(x)
    if x == 0:
        assert b is None
    else:
        assert b * x < 1 and (b + 1) * x >= 1


def test_prob_gen_info_small(cat):
    info = prob_gen_info(cat.group("A5"), cat.maxes("A5"), "A5")
    assert (info.sigma, info.spread_bound, info.best_classes, info.max_counts) == (Q(1, 3), 2, ["5A"], [1])


# --- generation -----------------------------------------------------------------------


def test_is_generating_pair(cat):
    A5 = cat.group("A5")
    p = parse_permutation
    assert is_generating_pair(A5, [p("(1,2,3,4,5)", 5), p("(1,2,3)", 5)])
    assert not is_generating_pair(A5, [p("(1,2)(3,4)", 5), p("(1,3)(2,4)", 5)])
    assert not is_generating_pair(A5, [p("(1,2,3)", 5), p("(1,2,4)", 5)])
    M11 = cat.group("M11")
    assert is_generating_pair(M11, M11.generators)
    with pytest.raises(ValueError):
        is_generating_pair(grp(["(1,2)", "(3,4)"], 4), [p("(1,2)", 4)])


@pytest.mark.parametrize("name", ["A5", "L3(2)", "A6"])
def test_generation_agrees_with_closure(cat, name):
    G = cat.group(name)
    n, size = G.degree, G.order()
    rng = RandomStream(9)
    from spreadkit.permcore import random_element

    for _ in range(40):
        x, y = random_element(G, rng), random_element(G, rng)
        want = oracles.generates([oracles.as_tuple(x, n), oracles.as_tuple(y, n)], n, size)
        assert is_generating_pair(G, [x, y]) == want


# --- nongeneration ratios ------------------------------------------------------------


def test_a5_involution_profile(cat):
    G = cat.group("A5")
    prof = nongeneration_profile(G, class_by_label(G, "2A").index)
    assert [v for _, v in prof] == [1, 1, Q(3, 5), Q(1, 3), Q(1, 3)]


def test_l32_profile(cat):
    G = cat.group("L3(2)")
    three = [c for c in conjugacy_classes(G) if c.order == 3][0]
    prof = nongeneration_profile(G, three.index)
    assert [v for _, v in prof] == [1, Q(5, 7), Q(19, 28), Q(2, 7), Q(1, 4), Q(1, 4)]


def test_identity_arguments(cat):
    G = cat.group("A5")
    e = parse_permutation("()", 5)
    assert ratio_of_nongeneration(G, e, G.generators[0]) == 1
    assert ratio_of_nongeneration(G, G.generators[0], e) == 1


@pytest.mark.parametrize("name", ["A5", "A6", "L3(2)", "S5"])
def test_ratio_two_definitions_brute(cat, name):
    G = cat.group(name)
    el = elements(G)
    n = G.degree
    cl = conjugacy_classes(G)
    for g in cl[1:]:
        gt = oracles.as_tuple(g.representative, n)
        for s in cl[1:]:
            st_ = oracles.as_tuple(s.representative, n)
            got = ratio_of_nongeneration(G, g.representative, s.representative)
            assert got == oracles.nongeneration_by_conjugator(el, gt, st_)
            if g.size <= 30:
                assert got == oracles.nongeneration_by_class(el, gt, st_)


@pytest.mark.parametrize("name", ["A5", "A6", "L3(2)", "L2(11)"])
def test_ratio_bounded_by_sigma(cat, name):
    G = cat.group(name)
    chars = characters_of(G, cat.maxes(name))
    cl = conjugacy_classes(G)
    for s in cl[1:]:
        psi = approx_p(chars, s.index)
        for g in cl[1:]:
            assert ratio_of_nongeneration(G, g.representative, s.representative) <= psi.values[g.index]


@pytest.mark.parametrize("name,order", [("A5", 10), ("L3(2)", 21)])
def test_single_maximal_equality(cat, name, order):
    # s of prime order lying in a unique maximal subgroup: P(g, s) = sigma(g, s)
    G = cat.group(name)
    M = by_order(cat.maxes(name), order)
    chars = characters_of(G, cat.maxes(name))
    cl = conjugacy_classes(G)
    p = {10: 5, 21: 7}[order]
    for s in [c for c in cl if c.order == p]:
        assert sum(pi.values[s.index] for pi in chars) == 1
        psi = approx_p(chars, s.index)
        for g in cl[1:]:
            assert ratio_of_nongeneration(G, g.representative, s.representative) == psi.values[g.index]


# --- fixed-point ratio bounds -----------------------------------------------------------


def test_upper_bound_empty():
    G = grp(["(1,2,3,4,5)", "(3,4,5)"], 5)
    assert upper_bound_fixed_point_ratios(G, []) == (0, True)


@pytest.mark.parametrize("name,picks,want", [
    ("A5", [1], Q(1, 3)),
    ("M11", [3], Q(1, 3)),
    ("L3(2)", [2], None),
    ("A5", [0, 1, 2], None),
    ("L3(2)", [0, 1], None),
])
def test_upper_bound_exact_vs_brute(cat, name, picks, want):
    G = cat.group(name)
    subs = [cat.maxes(name)[i] for i in picks]
    value, exact = upper_bound_fixed_point_ratios(G, [conjugacy_classes(M) for M in subs], exact=True)
    assert exact
    if G.order() <= 1000:
        el = elements(G)
        brute = oracles.max_fixed_point_ratio(el, [elements(M) for M in subs])
        assert value == brute
    if want is not None:
        assert value == want


def test_upper_bound_inexact_is_upper(cat):
    G = cat.group("A6")
    maxes = cat.maxes("A6")
    loose, _ = upper_bound_fixed_point_ratios(G, [conjugacy_classes(M) for M in maxes])
    tight, exact = upper_bound_fixed_point_ratios(G, [conjugacy_classes(M) for M in maxes], exact=True)
    assert exact and tight <= loose
    brute = oracles.max_fixed_point_ratio(elements(G), [elements(M) for M in maxes])
    assert tight == brute


def test_upper_bound_accepts_pairs(cat):
    G = cat.group("A5")
    D10 = by_order(cat.maxes("A5"), 10)
    pairs = [(c.representative, c.size) for c in conjugacy_classes(D10)]
    assert upper_bound_fixed_point_ratios(G, [pairs], exact=True) == (Q(1, 3), True)


# --- orbits on class products, spread ----------------------------------------------------


@pytest.mark.parametrize("name,labels", [("A5", ["2A", "3A"]), ("A5", ["2A", "2A"]), ("L3(2)", ["2A", "3A"])])
def test_orbit_reps_match_brute_force(cat, name, labels):
    G = cat.group(name)
    n = G.degree
    el = elements(G)
    reps = [class_by_label(G, x).representative for x in labels]
    got = orbit_reps_product_of_classes(G, reps)
    # count orbits of G on the product of the two classes by brute force
    a, b = (oracles.conj_class(oracles.as_tuple(r, n), el) for r in reps)
    left = {(x, y) for x in a for y in b}
    count = 0
    while left:
        x, y = next(iter(left))
        left -= {(oracles.conj(x, h), oracles.conj(y, h)) for h in el}
        count += 1
    assert len(got) == count
    for tup in got:
        assert all(t in class_by_label(G, x) for x, t in zip(labels, tup))
    assert orbit_reps_product_of_classes(G, []) == [[]]


def test_spread_c6_failure():
    # <g^2, g^2> is proper, so s = g^2 can never partner x = g^2
    C6 = grp(["(1,2,3,4,5,6)"], 6)
    g = C6.generators[0]
    cert = random_check_uniform_spread(C6, [g ** 2], g ** 2, 5, rng=1)
    assert not cert.success and cert.failing_tuple is not None
    assert random_check_uniform_spread(C6, [g ** 2], g, 5, rng=1).success


def test_spread_a6_pairs_and_reverify(cat):
    G = cat.group("A6")
    four = [c for c in conjugacy_classes(G) if c.order == 4][0]
    cl = conjugacy_classes(G)
    cert = random_check_uniform_spread(G, [cl[1].representative, cl[2].representative],
                                       four.representative, 40, rng=3)
    assert cert.success and cert.reverify()
    again = random_check_uniform_spread(G, [cl[1].representative, cl[2].representative],
                                        four.representative, 40, rng=3)
    assert again.trials_used == cert.trials_used


def test_spread_argument_checks(cat):
    G = cat.group("A5")
    with pytest.raises(ValueError):
        random_check_uniform_spread(G, [G.generators[0]], G.generators[0], 0)
    with pytest.raises(ValueError):
        random_check_uniform_spread(grp(["(1,2)", "(3,4)"], 4), [], parse_permutation("(1,2)", 4), 3)


def test_common_generator(cat):
    A5 = cat.group("A5")
    p = parse_permutation
    klein = [p("(1,2)(3,4)", 5), p("(1,3)(2,4)", 5), p("(1,4)(2,3)", 5)]
    reps = [c.representative for c in conjugacy_classes(A5)[1:]]
    assert common_generator_with_given_elements(A5, reps, klein) is None
    got = common_generator_with_given_elements(A5, [p("(1,2,3,4,5)", 5)], [p("(1,2)(3,4)", 5)])
    assert got is not None and got.order() == 5
    # classes are tried in the given order: 2A fails, a 3-cycle is the first partner
    assert common_generator_with_given_elements(A5, reps, [p("(1,2)(3,4)", 5)]).order() == 3
    assert is_generating_pair(A5, [got, p("(1,2)(3,4)", 5)])
    A6 = cat.group("A6")
    klein6 = [p("(1,2)(3,4)", 6), p("(1,3)(2,4)", 6), p("(1,4)(2,3)", 6)]
    reps6 = [c.representative for c in conjugacy_classes(A6)[1:]]
    assert common_generator_with_given_elements(A6, reps6, klein6) is None


# --- covering searches ---------------------------------------------------------------------


def test_cover_search_basic():
    lists = [[{1, 2}, {3}], [{3}, {4}], [{5}, {1}]]
    assert tuple_cover_search(lists, cover_all({1, 2, 3})) == (frozenset({1, 2}), frozenset({3}), frozenset({5}))
    assert tuple_cover_search(lists, cover_all({6})) is None
    assert tuple_cover_search([[{1, 2}], [{2, 3}], [{1, 3}]], empty_intersection()) is not None
    assert tuple_cover_search([[{1, 2}], [{2, 3}], [{2}]], empty_intersection()) is None
    fam = [{1}, {4}, {7}]
    assert tuple_cover_search([[{1}], [{4}], [{6}, {7}]], hits_every(fam))[2] == frozenset({7})


def test_cover_search_arguments():
    with pytest.raises(ValueError):
        tuple_cover_search([[{1}], [{2}]], cover_all({1}))
    with pytest.raises(ValueError):
        tuple_cover_search([[{1}], [], [{2}]], cover_all({1}))
    with pytest.raises(ValueError):
        tuple_cover_search([[{1}], [{1}], [{2}]], ("bogus", None))


def test_double_coset_sizes_sum(cat):
    rng = RandomStream(77)
    names = ["A5", "A6", "A7", "L3(2)", "L2(11)", "M11"]
    for _ in range(10):
        name = names[rng.randrange(len(names))]
        G, M = cat.group(name), cat.maxes(name)
        A, B = M[rng.randrange(len(M))], M[rng.randrange(len(M))]
        assert sum(d.size for d in double_coset_reps_and_sizes(G, A, B)) == G.order()
