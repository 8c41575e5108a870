"""Derive small matrix generating sets for the catalog's classical groups.

SU(4,2): unitary transvections x -> x + h(x,v) v for isotropic v, where h is
the Hermitian form with antidiagonal Gram matrix over GF(4).
Sp(6,2): symplectic transvections x -> x + B(x,v) v, B antidiagonal.
O8+(2) derived subgroup: products of two orthogonal reflections
x -> x + B(x,v) v with Q(v) = 1, Q(x) = x1 x8 + x2 x7 + x3 x6 + x4 x5.

For each group, pairs of random products are tried until a pair generates a
group of the expected order on the chosen orbit.  Output is catalog text.
"""
from __future__ import annotations

import random
import sys
from itertools import product

from spreadkit.gf import GF, projective_action
from spreadkit.permcore import PermGroup


def transvection(F, n, form, v, scale=1):
    rows = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        c = F.mul[scale][form(e, v)]
        rows.append([F.add[e[j]][F.mul[c][v[j]]] for j in range(n)])
    return rows


def hermitian(F, n):
    return lambda x, y: _sum(F, [F.mul[x[i]][F.power(y[n - 1 - i], 2)] for i in range(n)])


def bilinear(F, n):
    return lambda x, y: _sum(F, [F.mul[x[i]][y[n - 1 - i]] for i in range(n)])


def _sum(F, xs):
    s = 0
    for x in xs:
        s = F.add[s][x]
    return s


def quad8(x):
    return (x[0] * x[7] + x[1] * x[6] + x[2] * x[5] + x[3] * x[4]) % 2


def polar8(x, y):
    return (x[0] * y[7] + x[7] * y[0] + x[1] * y[6] + x[6] * y[1]
            + x[2] * y[5] + x[5] * y[2] + x[3] * y[4] + x[4] * y[3]) % 2


def orbits_of(perms, npts):
    G = PermGroup(perms, npts)
    return sorted(len(o) for o in G.point_orbits())


def search(F, mats, order, orbit_len, rng, words=3):
    n = len(mats[0])
    pts = F.projective_points(n)
    _, perms = projective_action(F, mats, pts)
    G = PermGroup(perms, len(pts))
    orb = next(o for o in G.point_orbits() if len(o) == orbit_len)
    sub = [pts[i] for i in sorted(orb)]
    while True:
        pick = []
        for _ in range(2):
            M = mats[rng.randrange(len(mats))]
            for _ in range(rng.randrange(1, words + 1)):
                M = F.mat_mul(M, mats[rng.randrange(len(mats))])
            pick.append(M)
        _, ps = projective_action(F, pick, sub)
        H = PermGroup(ps, len(sub))
        if not H.is_transitive():
            continue
        try:
            from spreadkit.permcore import build_chain
            ch = build_chain(H.raw_generators, H.degree, None, None)
        except Exception:
            continue
        if ch.order() == order:
            return pick


def fmt(F, mats):
    out = []
    for M in mats:
        out.append(" / ".join(" ".join(str(F.to_code(x)) for x in row) for row in M))
    return out


def main(which):
    rng = random.Random(2024)
    if which == "U4(2)":
        F = GF(4)
        n = 4
        h = hermitian(F, n)
        iso = [v for v in product(range(4), repeat=n) if any(v) and h(v, v) == 0]
        mats = [transvection(F, n, h, v) for v in iso]
        pick = search(F, mats, 25920, 40, rng)
    elif which == "S6(2)":
        F = GF(2)
        n = 6
        B = bilinear(F, n)
        vs = [v for v in product(range(2), repeat=n) if any(v)]
        mats = [transvection(F, n, B, v) for v in vs]
        pick = search(F, mats, 1451520, 63, rng)
    elif which == "O8+(2)":
        F = GF(2)
        vs = [v for v in product(range(2), repeat=8) if quad8(v) == 1]
        refl = [transvection(F, 8, polar8, v) for v in vs]
        mats = [F.mat_mul(refl[i], refl[j]) for i in range(0, len(refl), 7) for j in range(3, len(refl), 11)]
        pick = search(F, mats, 174182400, 120, rng, words=1)
    else:
        raise SystemExit("unknown group")
    for line in fmt(F, pick):
        print(line)


if __name__ == "__main__":
    main(sys.argv[1])
