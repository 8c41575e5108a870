"""Search for literal generators of maximal subgroups and check maximality.

Usage: python tools/derive_maxes.py GROUP ORDER[xCOUNT] ...

Candidates are subgroups <x, y> for product-replacement random x, y.  Cheap
filters reject pairs whose short words have element orders not dividing the
target order; the survivors are built with an order-capped Schreier-Sims.
Every hit is checked for maximality: H is maximal iff <H, r> = G for one
representative r of each nontrivial double coset H r H.  Hits are fused up to
conjugacy (permutation character first, then the subgroup-conjugate orbit).
With ``--check`` the catalog's own max list is verified instead: each entry
maximal, pairwise non-conjugate.
"""
from __future__ import annotations

import sys
import time

from spreadkit.catalog import Catalog
from spreadkit.permcore import (
    PermGroup,
    ProductReplacement,
    SchreierOrbit,
    StabilizerChain,
    raw_conj,
    raw_inv,
    raw_mul,
    raw_order,
    random_raw,
)
from spreadkit.probgen import generates_raw, permutation_character
from spreadkit.rng import RandomStream
from spreadkit.subgrp import double_coset_reps_and_sizes, enumerate_elements


def capped_order(gens, degree, cap, rng):
    """Order of <gens> if it equals ``cap``; None when it is provably different."""
    chain = StabilizerChain(degree)
    for g in gens:
        chain.add_element(g)
    pr = ProductReplacement(gens, degree, rng)
    quiet = 0
    while quiet < 30:
        if chain.order() > cap or cap % chain.order():
            return None
        if chain.add_element(pr.next_raw()):
            quiet = 0
        else:
            quiet += 1
    chain.verify()
    return chain.order() if chain.order() == cap else None


def is_maximal(G, H, rng):
    for d in double_coset_reps_and_sizes(G, H, H):
        r = d.representative.raw
        if H.contains_raw(r):
            continue
        if not generates_raw(G, H.raw_generators + [r], rng):
            return False
    return True


def conjugate_subgroups(G, H, K):
    if H.order() != K.order():
        return False
    key = tuple(sorted(enumerate_elements(H)))
    target = tuple(sorted(enumerate_elements(K)))
    if key == target:
        return True
    gens = G.raw_generators
    invs = [raw_inv(g) for g in gens]
    act = lambda k, i: tuple(sorted(raw_conj(e, gens[i], invs[i]) for e in k))
    orb = SchreierOrbit(key, gens, act, G.degree, stop=target)
    return orb.hit is not None


def search(G, order, count, known=(), seed=1, budget=500000):
    """Find ``count`` new classes of maximal subgroups of the given order."""
    rng = RandomStream(seed)
    found = [K for K in known if K.order() == order]
    chars = [permutation_character(G, K).values for K in found]
    skip = len(found)
    tries = 0
    while len(found) - skip < count and tries < budget:
        tries += 1
        x = random_raw(G, rng)
        y = random_raw(G, rng)
        words = [x, y, raw_mul(x, y), raw_mul(x, raw_mul(y, y)),
                 raw_mul(raw_mul(x, y), raw_mul(raw_inv(x), raw_inv(y)))]
        if any(order % raw_order(w) for w in words):
            continue
        if capped_order([x, y], G.degree, order, rng.child(tries)) != order:
            continue
        H = PermGroup([x, y], G.degree, order=order)
        if not is_maximal(G, H, rng.child(-tries)):
            continue
        pc = permutation_character(G, H).values
        if any(c == pc and conjugate_subgroups(G, K, H) for K, c in zip(found, chars)):
            continue
        found.append(H)
        chars.append(pc)
        print("  hit after %d tries: char %s" % (tries, pc), file=sys.stderr)
    return found[skip:]


def check(cat, name):
    G = cat.group(name)
    maxes = cat.maxes(name)
    rng = RandomStream(7)
    ok = True
    for i, H in enumerate(maxes):
        if not is_maximal(G, H, rng.child(i)):
            print("%s: %s is not maximal" % (name, H.name))
            ok = False
        for K in maxes[:i]:
            if conjugate_subgroups(G, K, H):
                print("%s: %s and %s are conjugate" % (name, K.name, H.name))
                ok = False
    print("%s: %d maxes, %s" % (name, len(maxes), "ok" if ok else "FAILED"))
    return ok


def main(argv):
    cat = Catalog()
    if argv[0] == "--check":
        return 0 if all([check(cat, n) for n in argv[1:]]) else 1
    G = cat.group(argv[0])
    print("# %s order %d degree %d" % (argv[0], G.order(), G.degree))
    for spec in argv[1:]:
        order, _, count = spec.partition("x")
        order, count = int(order), int(count or 1)
        t = time.time()
        hits = search(G, order, count, cat.maxes(argv[0]))
        print("# order %d: %d class(es) in %.1fs" % (order, len(hits), time.time() - t))
        for H in hits:
            print("gens = " + "; ".join(str(g) for g in H.generators))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
