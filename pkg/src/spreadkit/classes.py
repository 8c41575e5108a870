"""Conjugacy classes, centralizers, power maps and class filters."""
from __future__ import annotations

import logging
import math
import string
from dataclasses import dataclass, field

from .permcore import (
    CeilingExceeded,
    PermGroup,
    Permutation,
    SchreierOrbit,
    VerificationError,
    raw_conj,
    raw_cycle_type,
    raw_identity,
    raw_inv,
    raw_order,
    raw_pad,
    raw_pow,
    stabilizer,
    subgroup_from_schreier,
)
from .permcore import random_raw
from .rng import RandomStream

log = logging.getLogger(__name__)

STORAGE_CEILING = 5_000_000
CONJUGACY_ORBIT_CEILING = 2_000_000


@dataclass(frozen=True, order=True)
class ClassLabel:
    element_order: int
    class_size: int
    ordinal: int  # position among classes of the same element order

    def __str__(self):
        return "%d%s" % (self.element_order, _letters(self.ordinal))


def _letters(k: int) -> str:
    up = string.ascii_uppercase
    if k < 26:
        return up[k]
    return up[k % 26] + str(k // 26)


@dataclass
class ConjugacyClass:
    representative: Permutation
    size: int
    centralizer_order: int
    index: int
    label: ClassLabel
    _store: "ClassStore | None" = field(default=None, repr=False)
    centralizer_gens: list | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return self.label.element_order

    @property
    def name(self) -> str:
        return str(self.label)

    def __contains__(self, p: Permutation) -> bool:
        if self._store is None:
            raise RuntimeError("element store was dropped")
        return self._store.lookup(p.raw) == self.index

    def element_keys(self):
        if self._store is None:
            raise RuntimeError("element store was dropped")
        return self._store.keys_of(self.index)


class ClassStore:
    """Map from element image arrays to canonical class indices."""

    def __init__(self, index: dict, remap: list):
        self._index = index
        self._remap = remap

    def lookup(self, raw):
        k = self._index.get(raw)
        return None if k is None else self._remap[k]

    def keys_of(self, cls: int):
        old = self._remap.index(cls)
        return (x for x, k in self._index.items() if k == old)

    def __len__(self):
        return len(self._index)


def conjugacy_classes(G: PermGroup, ceiling: int = STORAGE_CEILING) -> list:
    """All classes of ``G`` in canonical order (element order, size, least representative)."""
    return G.cached("classes", lambda: _compute_classes(G, ceiling))


def _compute_classes(G: PermGroup, ceiling: int) -> list:
    order = G.order()
    if order > ceiling:
        raise CeilingExceeded("|G| = %d exceeds the class storage ceiling %d" % (order, ceiling))
    gens = G.raw_generators
    pairs = [(g, raw_inv(g)) for g in gens]
    index: dict = {}
    found = []  # (least element, size, element order)
    total = 0
    rng = RandomStream(0xC1A55E5)

    def expand(x):
        cid = len(found)
        index[x] = cid
        members = [x]
        least = x
        for z in members:
            for g, gi in pairs:
                w = raw_conj(z, g, gi)
                if w not in index:
                    index[w] = cid
                    members.append(w)
                    if w < least:
                        least = w
        found.append((least, len(members), raw_order(x)))
        return len(members)

    total += expand(raw_identity(G.degree))
    while total < order:
        x = random_raw(G, rng)
        n = raw_order(x)
        for d in sorted(_divisors(n)):
            y = raw_pow(x, d)
            if y not in index:
                total += expand(y)
    if total != order:
        raise VerificationError("class sizes sum to %d, not %d" % (total, order))
    perm = sorted(range(len(found)), key=lambda i: (found[i][2], found[i][1], found[i][0]))
    remap = [0] * len(found)
    for new, old in enumerate(perm):
        remap[old] = new
    store = ClassStore(index, remap)
    out = []
    ordinal: dict = {}
    for new, old in enumerate(perm):
        least, size, eo = found[old]
        k = ordinal.get(eo, 0)
        ordinal[eo] = k + 1
        out.append(ConjugacyClass(
            Permutation.from_raw(least), size, order // size, new,
            ClassLabel(eo, size, k), store))
    log.debug("%s: %d classes", G, len(out))
    return out


def _divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


def class_store(G: PermGroup) -> ClassStore:
    return conjugacy_classes(G)[0]._store


def class_index(G: PermGroup, p) -> int:
    """Canonical class index of an element (Permutation or raw array)."""
    raw = p.raw if isinstance(p, Permutation) else p
    raw = raw_pad(raw, G.degree)
    k = class_store(G).lookup(raw)
    if k is None:
        raise ValueError("element is not in the group")
    return k


def class_by_label(G: PermGroup, label: str) -> ConjugacyClass:
    for c in conjugacy_classes(G):
        if c.name == label:
            return c
    raise KeyError(label)


# --------------------------------------------------------------------------
# centralizers and conjugacy


def _conjugation_orbit(G: PermGroup, x, limit=CONJUGACY_ORBIT_CEILING, stop=None) -> SchreierOrbit:
    gens = G.raw_generators
    invs = [raw_inv(g) for g in gens]
    act = lambda z, k: raw_conj(z, gens[k], invs[k])
    return SchreierOrbit(x, gens, act, G.degree, limit=limit, stop=stop)


def centralizer(G: PermGroup, x: Permutation, check: bool = True) -> PermGroup:
    """Centralizer of ``x`` in ``G``; ``x`` need not lie in ``G`` when ``check`` is off."""
    raw = raw_pad(x.raw, G.degree)
    if check and not G.contains_raw(raw):
        raise ValueError("element is not in the group")
    if raw == raw_identity(G.degree):
        return G
    orb = _conjugation_orbit(G, raw)
    order = G.order()
    if order % len(orb):
        raise VerificationError("conjugation orbit length does not divide |G|")
    return subgroup_from_schreier(G, orb.elements, orb, orb.image, order // len(orb))


def centralizer_of_elements(G: PermGroup, xs) -> PermGroup:
    """Intersection of the centralizers of all elements of ``xs``."""
    H = G
    for x in xs:
        H = centralizer(H, x, check=False)
    return H


def are_conjugate(G: PermGroup, x: Permutation, y: Permutation, witness: bool = False):
    """Whether ``y = x^g`` for some ``g`` in ``G``; optionally also return such a ``g``."""
    rx = raw_pad(x.raw, G.degree)
    ry = raw_pad(y.raw, G.degree)
    if not (G.contains_raw(rx) and G.contains_raw(ry)):
        raise ValueError("elements must lie in the group")
    result = _conjugate_search(G, rx, ry, witness)
    if witness:
        return result
    return result[0]


def _conjugate_search(G: PermGroup, rx, ry, witness: bool):
    if rx == ry:
        return True, Permutation.identity(G.degree)
    if raw_cycle_type(rx) != raw_cycle_type(ry):
        return False, None
    cached = G._cache.get("classes")
    if cached is not None and not witness:
        st = cached[0]._store
        if st is not None:
            return st.lookup(rx) == st.lookup(ry), None
    mx = {i for i, v in enumerate(rx) if v != i}
    my = {i for i, v in enumerate(ry) if v != i}
    if mx == my and len(mx) < G.degree:
        H = stabilizer(G, [i + 1 for i in mx])
        orb = _conjugation_orbit(H, rx, stop=ry)
        if orb.hit is not None:
            return True, Permutation.from_raw(orb[ry])
    orb = _conjugation_orbit(G, rx, stop=ry)
    if orb.hit is None:
        return False, None
    return True, Permutation.from_raw(orb[ry])


def power_map(G: PermGroup, k: int) -> list:
    classes = conjugacy_classes(G)

    def compute():
        return [class_index(G, raw_pow(c.representative.raw, k)) for c in classes]

    return G.cached(("power", k), compute)


def _primes(n: int) -> list:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def cyclic_class_orbit(G: PermGroup, i: int) -> list:
    """Classes of generators of the cyclic subgroup generated by class ``i``."""
    c = conjugacy_classes(G)[i]
    n = c.order
    rep = c.representative.raw
    return sorted({class_index(G, raw_pow(rep, k)) for k in range(1, n + 1) if math.gcd(k, n) == 1})


def maximally_cyclic_representatives(G: PermGroup) -> list:
    classes = conjugacy_classes(G)
    orders = [c.order for c in classes]
    keep = set(range(len(classes)))
    for p in _primes(G.order()):
        pm = power_map(G, p)
        for i, j in enumerate(pm):
            if orders[j] < orders[i]:
                keep.discard(j)
    out = []
    done: set = set()
    for i in sorted(keep):
        if i in done:
            continue
        orb = cyclic_class_orbit(G, i)
        done.update(orb)
        out.append(min(orb))
    return out


def classes_matching_profile(G: PermGroup, profiles) -> list:
    wanted = {(int(a), int(b)) for a, b in profiles}
    return [c for c in conjugacy_classes(G) if (c.order, c.size) in wanted]


def is_normalized_by(G: PermGroup, N: PermGroup) -> bool:
    for n in N.raw_generators:
        for g in G.raw_generators:
            if not N.contains_raw(raw_conj(raw_pad(n, G.degree), g, raw_inv(g))):
                return False
    return True


def classes_of_prime_order(G: PermGroup, primes, N: PermGroup | None = None) -> list:
    """Classes of elements of prime order in ``primes`` lying outside ``N``.

    Representatives are found inside a Sylow subgroup, filtered by membership
    in ``N`` and fused up to conjugacy in ``G``.
    """
    from .subgrp import enumerate_elements, sylow_subgroup

    if N is not None and not is_normalized_by(G, N):
        raise ValueError("N is not normal in G")
    classes = conjugacy_classes(G)
    hits = set()
    for p in primes:
        if G.order() % p:
            continue
        P = sylow_subgroup(G, p)
        for e in enumerate_elements(P):
            if raw_order(e) != p:
                continue
            if N is not None and N.contains_raw(e):
                continue
            hits.add(class_index(G, e))
    return [classes[i] for i in sorted(hits)]
