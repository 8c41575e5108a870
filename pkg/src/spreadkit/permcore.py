"""Permutations, permutation groups, stabilizer chains and coset actions.

Points are 1-based at the public surface.  Internally a permutation is a
0-based image array held as ``bytes`` when the degree is at most 256 (so that
composition is a single ``bytes.translate`` call) and as a tuple otherwise.
"""
from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .rng import RandomStream

COSET_CEILING = 200_000

_TAILS = [bytes(range(n, 256)) for n in range(257)]


class CeilingExceeded(RuntimeError):
    """A configured resource ceiling would be exceeded."""


class VerificationError(RuntimeError):
    """An internal consistency check failed."""


# --------------------------------------------------------------------------
# raw image arrays


def raw_identity(n: int):
    return bytes(range(n)) if n <= 256 else tuple(range(n))


def raw_mul(a, b):
    """Product ``a*b`` acting on the right: first ``a``, then ``b``."""
    if type(a) is bytes:
        return a.translate(b + _TAILS[len(b)])
    return tuple(map(b.__getitem__, a))


def raw_inv(a):
    r = [0] * len(a)
    for i, x in enumerate(a):
        r[x] = i
    return bytes(r) if type(a) is bytes else tuple(r)


def raw_conj(x, g, ginv):
    """``g^-1 * x * g``."""
    if type(x) is bytes:
        return ginv.translate(x + _TAILS[len(x)]).translate(g + _TAILS[len(g)])
    return tuple(g[x[i]] for i in ginv)


def raw_pow(a, k: int):
    n = len(a)
    if k < 0:
        a, k = raw_inv(a), -k
    result = raw_identity(n)
    while k:
        if k & 1:
            result = raw_mul(result, a)
        a = raw_mul(a, a)
        k >>= 1
    return result


def raw_pad(a, n: int):
    m = len(a)
    if m == n:
        return a
    if m > n:
        if any(a[i] != i for i in range(n, m)):
            raise ValueError("permutation moves points beyond the requested degree")
        a = a[:n]
        return bytes(a) if n <= 256 else tuple(a)
    ext = list(a) + list(range(m, n))
    return bytes(ext) if n <= 256 else tuple(ext)


def raw_order(a) -> int:
    seen = bytearray(len(a))
    result = 1
    for i in range(len(a)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = a[j]
            length += 1
        if length > 1:
            result = result * length // math.gcd(result, length)
    return result


def raw_cycle_type(a) -> tuple:
    seen = bytearray(len(a))
    lengths = []
    for i in range(len(a)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = a[j]
            length += 1
        if length > 1:
            lengths.append(length)
    return tuple(sorted(lengths))


def raw_first_moved(a) -> int:
    for i, x in enumerate(a):
        if x != i:
            return i
    return -1


def raw_make(images: Sequence[int], n: int | None = None):
    n = len(images) if n is None else n
    return bytes(images) if n <= 256 else tuple(images)


# --------------------------------------------------------------------------
# Permutation


class Permutation:
    """A bijection on ``{1..degree}``.

    Equality and hashing ignore trailing fixed points, so permutations of
    different degrees compare equal when they agree after padding.
    """

    __slots__ = ("_p",)

    def __init__(self, images: Iterable[int] = ()):
        imgs = [int(x) - 1 for x in images]
        n = len(imgs)
        if sorted(imgs) != list(range(n)):
            raise ValueError("images do not form a bijection on 1..%d" % n)
        self._p = raw_make(imgs, n)

    @classmethod
    def from_raw(cls, raw) -> "Permutation":
        obj = cls.__new__(cls)
        obj._p = raw
        return obj

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls.from_raw(raw_identity(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        imgs = list(range(degree))
        for cyc in cycles:
            cyc = list(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                imgs[a - 1] = b - 1
        return cls.from_raw(raw_make(imgs, degree))

    @property
    def raw(self):
        return self._p

    @property
    def degree(self) -> int:
        return len(self._p)

    @property
    def images(self) -> tuple:
        return tuple(x + 1 for x in self._p)

    def _stripped(self):
        p = self._p
        k = len(p)
        while k and p[k - 1] == k - 1:
            k -= 1
        return tuple(p[:k])

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(self._p) == len(other._p):
            return self._p == other._p
        return self._stripped() == other._stripped()

    def __hash__(self):
        return hash(self._stripped())

    def __lt__(self, other: "Permutation"):
        n = max(self.degree, other.degree)
        return tuple(raw_pad(self._p, n)) < tuple(raw_pad(other._p, n))

    def padded(self, n: int) -> "Permutation":
        return Permutation.from_raw(raw_pad(self._p, n))

    def __mul__(self, other: "Permutation") -> "Permutation":
        a, b = self._p, other._p
        if len(a) != len(b):
            n = max(len(a), len(b))
            a, b = raw_pad(a, n), raw_pad(b, n)
        return Permutation.from_raw(raw_mul(a, b))

    def inverse(self) -> "Permutation":
        return Permutation.from_raw(raw_inv(self._p))

    __invert__ = inverse

    def __pow__(self, k: int) -> "Permutation":
        return Permutation.from_raw(raw_pow(self._p, k))

    def conjugate(self, g: "Permutation") -> "Permutation":
        """``g^-1 * self * g``."""
        return g.inverse() * self * g

    def __xor__(self, g: "Permutation") -> "Permutation":
        return self.conjugate(g)

    def __call__(self, point: int) -> int:
        if point > len(self._p):
            return point
        return self._p[point - 1] + 1

    def on_set(self, points: Iterable[int]) -> frozenset:
        return frozenset(self(x) for x in points)

    def is_identity(self) -> bool:
        return raw_first_moved(self._p) < 0

    def order(self) -> int:
        return raw_order(self._p)

    def cycle_type(self) -> tuple:
        return raw_cycle_type(self._p)

    def moved_points(self) -> frozenset:
        return frozenset(i + 1 for i, x in enumerate(self._p) if x != i)

    def fixed_points(self) -> frozenset:
        return frozenset(i + 1 for i, x in enumerate(self._p) if x == i)

    def cycles(self) -> list:
        p = self._p
        seen = bytearray(len(p))
        out = []
        for i in range(len(p)):
            if seen[i] or p[i] == i:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = 1
                cyc.append(j + 1)
                j = p[j]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self):
        return "Permutation(%s)" % self


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``"(1,2,3)(4,5)"`` or ``"()"``."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty permutation string")
    pos = 0
    cycles = []
    seen: set = set()
    while pos < len(s):
        m = _CYCLE_RE.match(s, pos)
        if not m:
            raise ValueError("malformed cycle notation at offset %d in %r" % (pos, text))
        body = m.group(1)
        pos = m.end()
        if body == "":
            continue
        try:
            pts = [int(t) for t in body.split(",")]
        except ValueError:
            raise ValueError("malformed cycle %r" % body) from None
        for x in pts:
            if x < 1 or x > degree:
                raise ValueError("point %d outside 1..%d" % (x, degree))
            if x in seen:
                raise ValueError("point %d repeated in %r" % (x, text))
            seen.add(x)
        cycles.append(pts)
    return Permutation.from_cycles(cycles, degree)


# --------------------------------------------------------------------------
# product replacement


class ProductReplacement:
    """Product replacement generator: 10 slots, 60 scrambling steps.

    Each draw performs one replacement step ``s_i <- s_i * s_j^(+-1)`` (or the
    mirrored product) and multiplies the accumulator by the new ``s_i``.
    """

    SLOTS = 10
    SCRAMBLE = 60

    def __init__(self, gens: Sequence, degree: int, rng: RandomStream,
                 slots: int | None = None, scramble: int | None = None):
        self._rng = rng
        self.SLOTS = slots or self.SLOTS
        ident = raw_identity(degree)
        gens = [g for g in gens if g != ident]
        if not gens:
            self._slots = None
            self._acc = ident
            return
        self._slots = [gens[i % len(gens)] for i in range(self.SLOTS)]
        self._inv_cache: dict = {}
        self._acc = ident
        for _ in range(self.SCRAMBLE if scramble is None else scramble):
            self.next_raw()

    def next_raw(self):
        if self._slots is None:
            return self._acc
        rnd = self._rng
        i = rnd.randrange(self.SLOTS)
        j = rnd.randrange(self.SLOTS - 1)
        if j >= i:
            j += 1
        other = self._slots[j]
        if rnd.randrange(2):
            other = raw_inv(other)
        if rnd.randrange(2):
            new = raw_mul(self._slots[i], other)
        else:
            new = raw_mul(other, self._slots[i])
        self._slots[i] = new
        self._acc = raw_mul(self._acc, new)
        return self._acc


# --------------------------------------------------------------------------
# stabilizer chains


class _Level:
    __slots__ = ("point", "gens", "orbit", "trans", "inv", "back")

    def __init__(self, point: int):
        self.point = point
        self.gens: list = []
        self.orbit: list = [point]
        self.trans: dict = {}
        self.inv: dict = {}
        self.back: dict = {point: -1}


class StabilizerChain:
    """Base and strong generating set.

    Each level keeps its fundamental orbit, a Schreier vector (``back``: the
    index of the strong generator that first reached each orbit point) and the
    explicit transversal elements, which make sifting a plain walk.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.levels: list[_Level] = []
        self._ident = raw_identity(degree)

    @property
    def base(self) -> list:
        return [lv.point + 1 for lv in self.levels]

    def order(self) -> int:
        r = 1
        for lv in self.levels:
            r *= len(lv.orbit)
        return r

    def strong_generators(self) -> list:
        seen = set()
        out = []
        for lv in self.levels:
            for g in lv.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def sift(self, h, start: int = 0):
        levels = self.levels
        for i in range(start, len(levels)):
            lv = levels[i]
            u = lv.inv.get(h[lv.point])
            if u is None:
                return h, i
            h = raw_mul(h, u)
        return h, len(levels)

    def contains_raw(self, h) -> bool:
        res, _ = self.sift(h)
        return res == self._ident

    def _rebuild(self, lv: _Level):
        ident = self._ident
        lv.trans = {lv.point: ident}
        lv.inv = {lv.point: ident}
        lv.back = {lv.point: -1}
        lv.orbit = [lv.point]
        trans = lv.trans
        gens = lv.gens
        for x in lv.orbit:
            tx = trans[x]
            for k, g in enumerate(gens):
                y = g[x]
                if y not in trans:
                    t = raw_mul(tx, g)
                    trans[y] = t
                    lv.inv[y] = raw_inv(t)
                    lv.back[y] = k
                    lv.orbit.append(y)

    def add_residue(self, h, depth: int):
        """Insert a nontrivial sift residue that fixes the first ``depth`` base points."""
        if depth == len(self.levels):
            self.levels.append(_Level(raw_first_moved(h)))
        for j in range(depth + 1):
            lv = self.levels[j]
            lv.gens.append(h)
            self._rebuild(lv)

    def add_element(self, h) -> bool:
        res, depth = self.sift(h)
        if res == self._ident:
            return False
        self.add_residue(res, depth)
        return True

    def verify(self) -> int:
        """Deterministic Schreier-generator test; returns the number of repairs."""
        ident = self._ident
        repairs = 0
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            broken = None
            for x in lv.orbit:
                tx = lv.trans[x]
                for g in lv.gens:
                    y = g[x]
                    h = raw_mul(raw_mul(tx, g), lv.inv[y])
                    if h == ident:
                        continue
                    res, depth = self.sift(h, i + 1)
                    if res != ident:
                        broken = (res, depth)
                        break
                if broken:
                    break
            if broken:
                repairs += 1
                self.add_residue(*broken)
                i = broken[1] if broken[1] < len(self.levels) else len(self.levels) - 1
            else:
                i -= 1
        return repairs

    def transversal_element(self, level: int, point: int):
        return self.levels[level].trans[point]


def build_chain(gens: Sequence, degree: int, rng: RandomStream | None = None,
                target: int | None = None, patience: int = 24) -> StabilizerChain:
    """Randomized Schreier-Sims followed by deterministic verification.

    When ``target`` (the true group order) is supplied and reached, the chain is
    complete and verification is skipped: the product of orbit lengths is a
    lower bound on the order that is attained only by a complete chain.
    """
    chain = StabilizerChain(degree)
    ident = chain._ident
    gens = [g for g in gens if g != ident]
    for g in gens:
        chain.add_element(g)
    if not gens:
        return chain
    if target is not None and chain.order() == target:
        return chain
    rng = rng if rng is not None else RandomStream(0x5EED)
    pr = ProductReplacement(gens, degree, rng)
    quiet = 0
    while quiet < patience:
        if chain.add_element(pr.next_raw()):
            quiet = 0
            if target is not None and chain.order() == target:
                return chain
        else:
            quiet += 1
    chain.verify()
    if target is not None and chain.order() != target:
        raise VerificationError("group order %d differs from expected %d" % (chain.order(), target))
    return chain


# --------------------------------------------------------------------------
# groups


class PermGroup:
    """A permutation group given by generators, with lazily cached data."""

    def __init__(self, generators: Iterable, degree: int | None = None,
                 order: int | None = None, chain: StabilizerChain | None = None,
                 name: str | None = None):
        gens = list(generators)
        if degree is None:
            degree = max((g.degree if isinstance(g, Permutation) else len(g) for g in gens), default=1)
        self.degree = degree
        raws = []
        for g in gens:
            r = g.raw if isinstance(g, Permutation) else g
            raws.append(raw_pad(r, degree))
        self._gens = raws
        self.name = name
        self._order_hint = order
        self._chain = chain
        self._order = chain.order() if chain is not None else None
        self._classes = None
        self._cache: dict = {}
        self._lock = threading.RLock()

    # basic accessors
    @property
    def generators(self) -> list:
        return [Permutation.from_raw(g) for g in self._gens]

    @property
    def raw_generators(self) -> list:
        return list(self._gens)

    def identity_raw(self):
        return raw_identity(self.degree)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    ch = build_chain(self._gens, self.degree, RandomStream(0xC4A1), self._order_hint)
                    self._order = ch.order()
                    self._chain = ch
        return self._chain

    def order(self) -> int:
        if self._order is None:
            self.chain()
        return self._order

    def __len__(self):
        return self.order()

    def contains_raw(self, r) -> bool:
        return self.chain().contains_raw(r)

    def __contains__(self, p: Permutation) -> bool:
        return membership(self, p)

    def cached(self, key, compute):
        """Freeze-on-first-compute cache for derived data."""
        try:
            return self._cache[key]
        except KeyError:
            pass
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    def point_orbits(self) -> list:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            orb = [start]
            seen[start] = True
            for x in orb:
                for g in self._gens:
                    y = g[x]
                    if not seen[y]:
                        seen[y] = True
                        orb.append(y)
            out.append(orb)
        return out

    def moved_points(self) -> list:
        moved = set()
        for g in self._gens:
            moved.update(i for i, x in enumerate(g) if x != i)
        return sorted(moved)

    def is_transitive(self) -> bool:
        """Transitive on the moved points of the group (trivially true when none)."""
        moved = self.moved_points()
        if not moved:
            return True
        return raw_orbit_length(self._gens, moved[0]) == len(moved)

    def random_element(self, rng: RandomStream) -> Permutation:
        return random_element(self, rng)

    def __repr__(self):
        label = self.name or "PermGroup"
        return "<%s degree=%d gens=%d>" % (label, self.degree, len(self._gens))


def raw_orbit_length(gens: Sequence, start: int) -> int:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen)


def group_order(G: PermGroup) -> int:
    return G.order()


def membership(G: PermGroup, p: Permutation) -> bool:
    r = p.raw
    if len(r) > G.degree:
        if any(r[i] != i for i in range(G.degree, len(r))):
            return False
        r = raw_pad(r, G.degree)
    elif len(r) < G.degree:
        r = raw_pad(r, G.degree)
    return G.contains_raw(r)


def random_element(G: PermGroup, rng: RandomStream) -> Permutation:
    return Permutation.from_raw(rng.replacer(G).next_raw())


def random_raw(G: PermGroup, rng: RandomStream):
    return rng.replacer(G).next_raw()


# --------------------------------------------------------------------------
# orbits


@dataclass
class Orbit:
    """An orbit in breadth-first discovery order with its Schreier vector."""

    elements: list
    schreier: dict  # element -> (parent element, generator index); seed -> None
    generators: list = field(repr=False, default_factory=list)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.schreier

    def word(self, x) -> list:
        """Generator indices ``[i1, i2, ...]`` with ``seed^(g_i1 g_i2 ...) = x``."""
        out = []
        while True:
            link = self.schreier[x]
            if link is None:
                break
            x, k = link
            out.append(k)
        out.reverse()
        return out

    def transversal(self, x) -> Permutation:
        deg = self.generators[0].degree if self.generators else 1
        p = Permutation.identity(deg)
        for k in self.word(x):
            p = p * self.generators[k]
        return p


def _act(action: str):
    if action == "point":
        return lambda x, g: g(x)
    if action == "set":
        return lambda x, g: g.on_set(x)
    if action == "tuple":
        return lambda x, g: tuple(g(y) for y in x)
    raise ValueError("unknown action %r" % action)


def orbit(gens: Sequence[Permutation], seed, action: str = "point") -> Orbit:
    act = _act(action)
    if action == "set":
        seed = frozenset(seed)
    elements = [seed]
    schreier = {seed: None}
    for x in elements:
        for k, g in enumerate(gens):
            y = act(x, g)
            if y not in schreier:
                schreier[y] = (x, k)
                elements.append(y)
    return Orbit(elements, schreier, list(gens))


# --------------------------------------------------------------------------
# orbits of arbitrary actions with lazily expanded transversals


class SchreierOrbit:
    """Orbit of ``seed`` under ``act(x, k)`` (image by generator ``k``).

    Only back-pointers are stored; ``self[x]`` rebuilds the transversal
    element mapping the seed to ``x`` and memoizes it.
    """

    def __init__(self, seed, gens: Sequence, act, degree: int,
                 limit: int | None = None, stop=None):
        self.gens = list(gens)
        self.act = act
        self.elements = [seed]
        self.back = {seed: None}
        self._memo = {seed: raw_identity(degree)}
        self.hit = None
        back = self.back
        elements = self.elements
        ngens = len(self.gens)
        for x in elements:
            for k in range(ngens):
                y = act(x, k)
                if y not in back:
                    back[y] = (x, k)
                    elements.append(y)
                    if stop is not None and y == stop:
                        self.hit = y
                        return
            if limit is not None and len(elements) > limit:
                raise CeilingExceeded("orbit longer than %d" % limit)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.back

    def __getitem__(self, x):
        memo = self._memo
        if x in memo:
            return memo[x]
        path = []
        y = x
        while y not in memo:
            y, k = self.back[y]
            path.append(k)
        t = memo[y]
        for k in reversed(path):
            t = raw_mul(t, self.gens[k])
        if len(memo) < 4096:
            memo[x] = t
        return t

    def image(self, x, k):
        return self.act(x, k)


# --------------------------------------------------------------------------
# stabilizers from orbits


def subgroup_from_schreier(G: PermGroup, elements: list, trans: dict, image,
                           target: int, rng: RandomStream | None = None,
                           name: str | None = None) -> PermGroup:
    """Stabilizer of ``elements[0]`` given a full orbit with transversals.

    ``trans[x]`` maps the seed to ``x`` and ``image(x, k)`` is the image of ``x``
    under generator ``k``.  Random Schreier generators are added until the
    chain reaches ``target`` order, which certifies the result.
    """
    degree = G.degree
    ident = raw_identity(degree)
    chain = StabilizerChain(degree)
    if target == 1:
        return PermGroup([], degree, order=1, chain=chain, name=name)
    rng = rng if rng is not None else RandomStream(0x57AB)
    gens = G.raw_generators
    n = len(elements)
    budget = 4 * n * len(gens) + 200
    found: list = []
    pr = None
    attempts = 0
    while chain.order() < target:
        attempts += 1
        if attempts > budget:
            # exhaustive Schreier generators (Schreier's lemma) as a last resort
            for x in elements:
                for k, g in enumerate(gens):
                    h = raw_mul(raw_mul(trans[x], g), raw_inv(trans[image(x, k)]))
                    if h != ident:
                        chain.add_element(h)
            chain.verify()
            break
        x = elements[rng.randrange(n)]
        k = rng.randrange(len(gens))
        h = raw_mul(raw_mul(trans[x], gens[k]), raw_inv(trans[image(x, k)]))
        if h != ident and chain.add_element(h):
            found.append(h)
            pr = None
            continue
        if found:
            if pr is None:
                pr = ProductReplacement(found, degree, rng.child(attempts))
            chain.add_element(pr.next_raw())
    if chain.order() != target:
        raise VerificationError("stabilizer order %d, expected %d" % (chain.order(), target))
    return PermGroup(chain.strong_generators() or [], degree, order=target, chain=chain, name=name)


def _raw_set(points: Iterable[int]) -> int:
    mask = 0
    for x in points:
        mask |= 1 << x
    return mask


def _raw_set_image(mask: int, g) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << g[i]
        mask >>= 1
        i += 1
    return out


def stabilizer(G: PermGroup, target) -> PermGroup:
    """Stabilizer of a point, or the setwise stabilizer of a collection of points."""
    gens = G.raw_generators
    if isinstance(target, int):
        seed = target - 1
        act = lambda x, g: g[x]
    else:
        pts = sorted(set(target))
        if any(p < 1 or p > G.degree for p in pts):
            raise ValueError("set outside the domain")
        seed = _raw_set(p - 1 for p in pts)
        act = _raw_set_image
    orb = SchreierOrbit(seed, gens, lambda x, k: act(x, gens[k]), G.degree)
    order = G.order()
    return subgroup_from_schreier(G, orb.elements, orb, orb.image, order // len(orb))


# --------------------------------------------------------------------------
# coset actions


class CosetCanonizer:
    """Canonical representative of the right coset ``M*g``.

    Descends the stabilizer chain of ``M`` choosing, at each level, the
    transversal element that minimizes the image of the base point.  The
    result is the coset element whose sequence of base images is least.
    """

    def __init__(self, M: PermGroup):
        ch = M.chain()
        self.base = [lv.point for lv in ch.levels]  # 0-based
        self._levels = [(lv.orbit, lv.trans) for lv in ch.levels]

    def __call__(self, g):
        for orbit, trans in self._levels:
            y = min(orbit, key=g.__getitem__)
            g = raw_mul(trans[y], g)
        return g


@dataclass
class ActionImage:
    source: PermGroup
    domain: list  # canonical coset representatives (raw arrays), or points/sets
    image: PermGroup
    point_map: dict
    canonizer: CosetCanonizer | None = None

    @property
    def degree(self) -> int:
        return len(self.domain)

    def fixed_points_raw(self, g) -> int:
        canon = self.canonizer
        count = 0
        for c in self.domain:
            if canon(raw_mul(c, g)) == c:
                count += 1
        return count

    def fixed_points(self, g: Permutation) -> int:
        return self.fixed_points_raw(raw_pad(g.raw, self.source.degree))

    def point_of_raw(self, g) -> int:
        """0-based index of the coset containing ``g``."""
        return self.point_map[self.canonizer(g)]


def is_subgroup(G: PermGroup, M: PermGroup) -> bool:
    return M.degree <= G.degree and all(G.contains_raw(raw_pad(g, G.degree)) for g in M.raw_generators)


def coset_action(G: PermGroup, M: PermGroup, ceiling: int = COSET_CEILING) -> ActionImage:
    """Action of ``G`` by right multiplication on the right cosets of ``M``."""
    if M.degree != G.degree or not is_subgroup(G, M):
        raise ValueError("M is not a subgroup of G")
    index = G.order() // M.order()
    if index > ceiling:
        raise CeilingExceeded("coset index %d exceeds ceiling %d" % (index, ceiling))
    canon = CosetCanonizer(M)
    gens = G.raw_generators
    start = canon(raw_identity(G.degree))
    reps = [start]
    point_map = {start: 0}
    images = [[0] * index for _ in gens]
    for i, t in enumerate(reps):
        for k, g in enumerate(gens):
            c = canon(raw_mul(t, g))
            j = point_map.get(c)
            if j is None:
                j = len(reps)
                if j >= index:
                    raise VerificationError("coset enumeration exceeded the index")
                point_map[c] = j
                reps.append(c)
            images[k][i] = j
    if len(reps) != index:
        raise VerificationError("found %d cosets, expected %d" % (len(reps), index))
    img = PermGroup([raw_make(im, index) for im in images], index)
    return ActionImage(G, reps, img, point_map, canon)


# --------------------------------------------------------------------------
# derived subgroups and diagonal products


def normal_closure(G: PermGroup, gens: Sequence) -> PermGroup:
    degree = G.degree
    chain = StabilizerChain(degree)
    ident = raw_identity(degree)
    pending = [raw_pad(g, degree) for g in gens]
    members = []
    for h in pending:
        if chain.add_element(h):
            members.append(h)
    chain.verify()
    changed = True
    while changed:
        changed = False
        for h in list(members):
            for g in G.raw_generators:
                c = raw_conj(h, g, raw_inv(g))
                if c != ident and not chain.contains_raw(c):
                    chain.add_element(c)
                    members.append(c)
                    chain.verify()
                    changed = True
    return PermGroup(members, degree, chain=chain)


def derived_subgroup(G: PermGroup) -> PermGroup:
    gens = G.raw_generators
    comms = []
    for i, a in enumerate(gens):
        ai = raw_inv(a)
        for b in gens[i + 1:]:
            bi = raw_inv(b)
            comms.append(raw_mul(raw_mul(ai, bi), raw_mul(a, b)))
    D = normal_closure(G, comms)
    if G.order() % D.order():
        raise VerificationError("derived subgroup order does not divide |G|")
    return D


def diagonal_product(groups: Sequence[PermGroup]) -> PermGroup:
    """Action on the disjoint union, generator i acting as generator i of each factor."""
    if not groups:
        raise ValueError("no groups given")
    counts = {len(H.raw_generators) for H in groups}
    if len(counts) != 1:
        raise ValueError("mismatched generator counts")
    if len(groups) == 1:
        return groups[0]
    degree = sum(H.degree for H in groups)
    gens = []
    for k in range(counts.pop()):
        imgs = []
        offset = 0
        for H in groups:
            imgs.extend(x + offset for x in H.raw_generators[k])
            offset += H.degree
        gens.append(raw_make(imgs, degree))
    order = groups[0].order()
    if any(H.order() != order for H in groups):
        raise ValueError("factor orders differ")
    D = PermGroup(gens, degree)
    if D.order() != order:
        raise ValueError("generator lists do not define isomorphic groups")
    return D
