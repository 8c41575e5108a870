"""Sylow subgroups, normalizers and double cosets."""
from __future__ import annotations

from dataclasses import dataclass

from .permcore import (
    COSET_CEILING,
    CeilingExceeded,
    PermGroup,
    Permutation,
    SchreierOrbit,
    VerificationError,
    coset_action,
    is_subgroup,
    raw_conj,
    raw_identity,
    raw_inv,
    raw_mul,
    raw_order,
    raw_pad,
    raw_pow,
    subgroup_from_schreier,
)
from .permcore import random_raw
from .rng import RandomStream

ENUMERATION_CEILING = 100_000
NORMALIZER_ORBIT_CEILING = 200_000


@dataclass(frozen=True)
class DoubleCosetRep:
    representative: Permutation
    size: int


def enumerate_elements(S: PermGroup, ceiling: int = ENUMERATION_CEILING) -> list:
    """All elements of ``S`` as raw image arrays, identity first."""

    def compute():
        if S.order() > ceiling:
            raise CeilingExceeded("|S| = %d exceeds enumeration ceiling %d" % (S.order(), ceiling))
        ident = raw_identity(S.degree)
        seen = {ident}
        out = [ident]
        gens = S.raw_generators
        for x in out:
            for g in gens:
                y = raw_mul(x, g)
                if y not in seen:
                    seen.add(y)
                    out.append(y)
        if len(out) != S.order():
            raise VerificationError("closure has %d elements, expected %d" % (len(out), S.order()))
        return out

    return S.cached(("elements", ceiling), compute)


def subgroup_key(S: PermGroup) -> tuple:
    return tuple(sorted(enumerate_elements(S)))


def normalizer(G: PermGroup, S: PermGroup, orbit_ceiling: int = NORMALIZER_ORBIT_CEILING) -> PermGroup:
    """Normalizer of ``S`` in ``G``: the stabilizer of S's element key under conjugation."""
    if S.degree != G.degree or not is_subgroup(G, S):
        raise ValueError("S is not a subgroup of G")
    key = subgroup_key(S)
    gens = G.raw_generators
    invs = [raw_inv(g) for g in gens]

    def act(k, i):
        g, gi = gens[i], invs[i]
        return tuple(sorted(raw_conj(e, g, gi) for e in k))

    orb = SchreierOrbit(key, gens, act, G.degree, limit=orbit_ceiling)
    order = G.order()
    if order % len(orb):
        raise VerificationError("conjugate-subgroup orbit length does not divide |G|")
    return subgroup_from_schreier(G, orb.elements, orb, orb.image, order // len(orb))


def _p_part(n: int, p: int) -> int:
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def sylow_subgroup(G: PermGroup, p: int, seed: int = 0x5F10) -> PermGroup:
    """A Sylow ``p``-subgroup, grown one factor of ``p`` at a time inside normalizers."""

    def compute():
        target = _p_part(G.order(), p)
        degree = G.degree
        ident = raw_identity(degree)
        P = PermGroup([], degree, order=1)
        rng = RandomStream(seed)
        while P.order() < target:
            N = G if P.order() == 1 else normalizer(G, P)
            y = None
            while y is None:
                z = random_raw(N, rng)
                m = raw_order(z)
                q = _p_part(m, p)
                if q == 1:
                    continue
                z = raw_pow(z, m // q)
                if P.contains_raw(z):
                    continue
                w = raw_pow(z, p)
                while not P.contains_raw(w):
                    z, w = w, raw_pow(w, p)
                y = z
            P = PermGroup(P.raw_generators + [y], degree, order=P.order() * p)
            P.chain()
        return P

    return G.cached(("sylow", p), compute)


def double_coset_reps_and_sizes(G: PermGroup, A: PermGroup, B: PermGroup,
                                ceiling: int = COSET_CEILING, action=None) -> list:
    """Representatives and sizes of the double cosets ``A r B``.

    Computed as the orbits of ``B`` on the right cosets of ``A``; ordered by
    the smallest coset index in each orbit.  ``action`` may pass a precomputed
    coset action of ``G`` on ``A``.
    """
    if not is_subgroup(G, B):
        raise ValueError("B is not a subgroup of G")
    act = action if action is not None else coset_action(G, A, ceiling)
    n = act.degree
    bgens = [raw_pad(b, G.degree) for b in B.raw_generators]
    images = [[act.point_of_raw(raw_mul(c, b)) for c in act.domain] for b in bgens]
    seen = bytearray(n)
    out = []
    a_order = A.order()
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = 1
        orb = [start]
        for x in orb:
            for im in images:
                y = im[x]
                if not seen[y]:
                    seen[y] = 1
                    orb.append(y)
        out.append(DoubleCosetRep(Permutation.from_raw(act.domain[start]), a_order * len(orb)))
    if sum(d.size for d in out) != G.order():
        raise VerificationError("double coset sizes do not sum to |G|")
    return out
