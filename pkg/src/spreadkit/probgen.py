"""Probabilistic generation: sigma estimates, nongeneration ratios, spread checks.

All ratios are exact ``Fraction`` values.  For a finite group G with maximal
subgroups M and an element s, the estimate

    psi(g) = sum over M of 1_M^G(s) * 1_M^G(g) / 1_M^G(1)

bounds the proportion of conjugates of s that fail to generate G together
with g.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .classes import (
    are_conjugate,
    centralizer,
    class_index,
    conjugacy_classes,
    cyclic_class_orbit,
)
from .permcore import (
    PermGroup,
    Permutation,
    StabilizerChain,
    ProductReplacement,
    coset_action,
    raw_conj,
    raw_inv,
    raw_orbit_length,
    raw_pad,
    random_raw,
)
from .rng import RandomStream
from .subgrp import double_coset_reps_and_sizes



@dataclass
class PermChar:
    subgroup_label: str
    degree: int
    values: list


@dataclass
class SigmaVector:
    values: list
    s_class: int

    def maximum(self) -> Fraction:
        return max(self.values[1:], default=Fraction(0))


@dataclass
class ProbGenInfo:
    group_label: str
    sigma: Fraction
    spread_bound: int | None
    best_classes: list
    max_counts: list


@dataclass
class SpreadCertificate:
    tuple_class_labels: list
    success: bool
    failing_tuple: list | None
    trials_used: list
    witnesses: list  # (tuple, conjugate of s) per orbit representative
    seed: int
    group: PermGroup = field(repr=False, default=None)

    def reverify(self) -> bool:
        """Independently re-check every recorded generating pair."""
        if not self.success:
            return False
        rng = RandomStream(self.seed ^ 0xFEED)
        for tup, conj in self.witnesses:
            for x in tup:
                if not is_generating_pair(self.group, [x, conj], rng=rng):
                    return False
        return True


# --------------------------------------------------------------------------
# characters and sigma


def permutation_character(G: PermGroup, M: PermGroup, label: str | None = None) -> PermChar:
    """Fixed-point counts of the class representatives on the right cosets of ``M``."""
    classes = conjugacy_classes(G)
    act = coset_action(G, M)
    values = [act.fixed_points_raw(c.representative.raw) for c in classes]
    if sum(c.size * v for c, v in zip(classes, values)) != G.order():
        raise ArithmeticError("permutation character fails the orbit-counting identity")
    return PermChar(label or M.name or "", act.degree, values)


def _class_count(chars) -> int:
    return len(chars[0].values) if chars else 0


def approx_p(chars: Sequence[PermChar], s_class: int, nclasses: int | None = None) -> SigmaVector:
    n = _class_count(chars) if chars else nclasses
    if n is None:
        raise ValueError("class count unknown for an empty character list")
    if any(len(pi.values) != n for pi in chars):
        raise ValueError("characters are not aligned to one class list")
    values = [Fraction(0)] * n
    for pi in chars:
        at_s = pi.values[s_class]
        if at_s:
            for i in range(1, n):
                if pi.values[i]:
                    values[i] += Fraction(at_s * pi.values[i], pi.degree)
    values[0] = Fraction(0)
    return SigmaVector(values, s_class)


def spread_bound(sigma: Fraction) -> int | None:
    if sigma == 0:
        return None
    inv = 1 / sigma
    if inv.denominator == 1:
        return int(inv) - 1
    return math.floor(inv)


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % p for p in range(2, math.isqrt(n) + 1))


def outer_prime_classes(G: PermGroup, socle: PermGroup) -> list:
    """Indices of classes of prime-order elements outside ``socle``."""
    idx = G.order() // socle.order()
    if G.order() % socle.order() or not _is_prime(idx):
        raise ValueError("socle must have prime index in G")
    out = []
    for c in conjugacy_classes(G):
        if _is_prime(c.order) and not socle.contains_raw(raw_pad(c.representative.raw, socle.degree)):
            out.append(c.index)
    return out


def characters_of(G: PermGroup, maxes: Sequence[PermGroup]) -> list:
    return [permutation_character(G, M) for M in maxes]


def sigma_from_maxes(G: PermGroup, s_class: int, maxes: Sequence[PermGroup],
                     mode: str = "all", socle: PermGroup | None = None) -> Fraction:
    n = len(conjugacy_classes(G))
    psi = approx_p(characters_of(G, maxes), s_class, n)
    if mode == "all":
        return psi.maximum()
    if mode != "outer" or socle is None:
        raise ValueError("outer mode needs a socle")
    return max((psi.values[i] for i in outer_prime_classes(G, socle)), default=Fraction(0))


def _fold(G: PermGroup, indices: list) -> list:
    out = []
    done: set = set()
    for i in sorted(indices):
        if i in done:
            continue
        orb = cyclic_class_orbit(G, i)
        done.update(orb)
        out.append(min(orb))
    return out


def prob_gen_info(G: PermGroup, maxes: Sequence[PermGroup], label: str | None = None,
                  chars: list | None = None) -> ProbGenInfo:
    classes = conjugacy_classes(G)
    chars = chars if chars is not None else characters_of(G, maxes)
    maxima = [approx_p(chars, i, len(classes)).maximum() for i in range(1, len(classes))]
    sigma = min(maxima)
    best = _fold(G, [i + 1 for i, m in enumerate(maxima) if m == sigma])
    counts = [sum(pi.values[i] for pi in chars) for i in best]
    return ProbGenInfo(label or G.name or "", sigma, spread_bound(sigma),
                       [classes[i].name for i in best], counts)


def prob_gen_info_almost_simple(G: PermGroup, socle: PermGroup, maxes: Sequence[PermGroup],
                                s_classes: Sequence[int] | None = None,
                                socle_maxes: Sequence[PermGroup] | None = None) -> tuple:
    """Minimum over candidate s-classes of the outer-class maximum of psi.

    Returns ``(value, best class labels, counts)``; counts skip characters
    that take only the values 0 and their degree (the one induced from the
    socle itself).  Without ``s_classes`` the candidates are the images of
    the socle's best classes, which needs ``socle_maxes``.
    """
    outer = outer_prime_classes(G, socle)
    classes = conjugacy_classes(G)
    if s_classes is None:
        if socle_maxes is None:
            raise ValueError("give s_classes or the socle's maxes")
        s_classes = socle_best_classes(G, socle, socle_maxes)
    chars = characters_of(G, maxes)
    s_classes = sorted(set(s_classes))
    values = []
    for s in s_classes:
        psi = approx_p(chars, s, len(classes))
        values.append(max((psi.values[i] for i in outer), default=Fraction(0)))
    m = min(values)
    best = _fold(G, [s for s, v in zip(s_classes, values) if v == m])
    counts = []
    for s in best:
        counts.append(sum(pi.values[s] for pi in chars
                          if not all(v in (0, pi.degree) for v in pi.values)))
    return m, [classes[i].name for i in best], counts


def socle_best_classes(G: PermGroup, socle: PermGroup, socle_maxes: Sequence[PermGroup]) -> list:
    """Classes of ``G`` containing the socle's sigma-attaining classes (all Galois mates)."""
    info = prob_gen_info(socle, socle_maxes)
    sc = conjugacy_classes(socle)
    picked = set()
    for i, c in enumerate(sc):
        if c.name in info.best_classes:
            picked.update(cyclic_class_orbit(socle, i))
    return sorted(set(map_classes(G, socle, sorted(picked))))


def map_classes(G: PermGroup, H: PermGroup, indices: Sequence[int]) -> list:
    """Images in ``G``'s class list of the given classes of a subgroup ``H``."""
    hc = conjugacy_classes(H)
    return [class_index(G, raw_pad(hc[i].representative.raw, G.degree)) for i in indices]


# --------------------------------------------------------------------------
# generation tests


def generates_raw(G: PermGroup, raws: list, rng: RandomStream, moved: list | None = None) -> bool:
    """Whether ``raws`` generate ``G``: transitivity first, then the order."""
    moved = moved if moved is not None else G.moved_points()
    if moved and raw_orbit_length(raws, moved[0]) != len(moved):
        return False
    target = G.order()
    chain = StabilizerChain(G.degree)
    for g in raws:
        chain.add_element(g)
    if chain.order() == target:
        return True
    # a short, lightly scrambled accumulator is enough here: the verdict
    # never depends on the randomness, only the running time does
    pr = ProductReplacement(raws, G.degree, rng, slots=5, scramble=6)
    quiet = 0
    while quiet < 20:
        if chain.add_element(pr.next_raw()):
            quiet = 0
            if chain.order() == target:
                return True
        else:
            quiet += 1
    chain.verify()
    return chain.order() == target


def is_generating_pair(G: PermGroup, elements: Sequence[Permutation], rng: RandomStream | None = None) -> bool:
    if not G.is_transitive():
        raise ValueError("G must be transitive on its moved points")
    rng = rng if rng is not None else RandomStream(0x6E4)
    raws = [raw_pad(e.raw, G.degree) for e in elements]
    return generates_raw(G, raws, rng)


class _NongenContext:
    """Caches the centralizer of ``g`` and the coset action on it."""

    def __init__(self, G: PermGroup, g: Permutation):
        self.G = G
        self.g = raw_pad(g.raw, G.degree)
        self.cent = centralizer(G, g)
        self.action = coset_action(G, self.cent)
        self.moved = G.moved_points()
        self.rng = RandomStream(0xA77)

    def ratio(self, s: Permutation) -> Fraction:
        G = self.G
        sr = raw_pad(s.raw, G.degree)
        if sr == G.identity_raw():
            return Fraction(1)
        cs = centralizer(G, s)
        bad = 0
        for d in double_coset_reps_and_sizes(G, self.cent, cs, action=self.action):
            r = d.representative.raw
            conj = raw_conj(self.g, r, raw_inv(r))
            if not generates_raw(G, [sr, conj], self.rng, self.moved):
                bad += d.size
        return Fraction(bad, G.order())


def ratio_of_nongeneration(G: PermGroup, g: Permutation, s: Permutation) -> Fraction:
    """Proportion of conjugates ``g^h`` with ``<g^h, s>`` a proper subgroup."""
    if not G.is_transitive():
        raise ValueError("G must be transitive on its moved points")
    if g.is_identity():
        return Fraction(1)
    return _NongenContext(G, g).ratio(s)


def nongeneration_profile(G: PermGroup, g_class: int, cand_s_classes: Sequence[int] | None = None) -> list:
    if not G.is_transitive():
        raise ValueError("G must be transitive on its moved points")
    classes = conjugacy_classes(G)
    cands = range(len(classes)) if cand_s_classes is None else cand_s_classes
    g = classes[g_class].representative
    if g.is_identity():
        return [(classes[i].label, Fraction(1)) for i in cands]
    ctx = _NongenContext(G, g)
    return [(classes[i].label, ctx.ratio(classes[i].representative)) for i in cands]


# --------------------------------------------------------------------------
# fixed-point ratio bounds


def upper_bound_fixed_point_ratios(G: PermGroup, maxesclasses, exact: bool = False) -> tuple:
    """Bound for the maximum over nontrivial g of the summed fixed-point ratios.

    ``maxesclasses`` holds, per subgroup, a list of ``(representative, size)``
    pairs or ConjugacyClass objects of that subgroup.
    """
    order = G.order()
    invariants: list = []
    info: list = []
    for cls in maxesclasses:
        for c in cls:
            rep, size = (c.representative, c.size) if hasattr(c, "representative") else c
            o = rep.order()
            if not _is_prime(o):
                continue
            cent = order // conjugacy_classes(G)[class_index(G, rep)].size
            if cent == order:
                continue
            inv = (o, cent, len(rep.moved_points()))
            try:
                pos = invariants.index(inv)
                info[pos].append([rep, size * cent])
            except ValueError:
                invariants.append(inv)
                info.append([[rep, size * cent]])
    if not info:
        return Fraction(0), True
    while True:
        sums = [sum(v for _, v in bucket) for bucket in info]
        top = max(sums)
        maxpos = [i for i, s in enumerate(sums) if s == top]
        maxlen = [len(info[i]) for i in maxpos]
        if exact and 1 not in maxlen:
            pos = maxpos[0]
            bucket = info[pos]
            r = bucket[0][0]
            same = [e for e in bucket if _fpr_conjugate(G, r, e[0])]
            rest = [e for e in bucket if not any(e is s for s in same)]
            info[pos] = [[r, sum(v for _, v in same)]]
            if rest:
                info.append(rest)
            continue
        return Fraction(top, order), 1 in maxlen


def _fpr_conjugate(G: PermGroup, x: Permutation, y: Permutation) -> bool:
    # moved-points shortcut: same support, try the setwise stabilizer first
    return are_conjugate(G, x.padded(G.degree), y.padded(G.degree))


# --------------------------------------------------------------------------
# orbit representatives on products of classes and spread checks


def orbit_reps_product_of_classes(G: PermGroup, classreps: Sequence[Permutation]) -> list:
    """Representatives of the G-orbits (by simultaneous conjugation) on the product of classes."""
    reps = [r.padded(G.degree) for r in classreps]
    cents = [centralizer(G, x) for x in reps]
    actions: dict = {}
    n = len(reps)

    def rec(tup, inter, pos):
        if pos == n:
            return [tup]
        if pos not in actions:
            actions[pos] = coset_action(G, cents[pos])
        out = []
        for d in double_coset_reps_and_sizes(G, cents[pos], inter, action=actions[pos]):
            h = reps[pos].conjugate(d.representative)
            out.extend(rec(tup + [h], centralizer(inter, h, check=False), pos + 1))
        return out

    if not reps:
        return [[]]
    return rec([reps[0]], cents[0], 1)


def random_check_uniform_spread(G: PermGroup, classreps: Sequence[Permutation], s: Permutation,
                                tries: int, rng: RandomStream | int = 1) -> SpreadCertificate:
    if not G.is_transitive():
        raise ValueError("G must be transitive on its moved points")
    if tries < 1:
        raise ValueError("tries must be positive")
    master = rng if isinstance(rng, RandomStream) else RandomStream(rng)
    classes = conjugacy_classes(G)
    labels = [classes[class_index(G, x.padded(G.degree))].name for x in classreps]
    sr = raw_pad(s.raw, G.degree)
    moved = G.moved_points()
    trials = []
    witnesses = []
    for k, tup in enumerate(orbit_reps_product_of_classes(G, classreps)):
        task = master.child(k)
        gen_rng = task.child(0x9E4)
        raws = [x.raw for x in tup]
        hit = None
        for t in range(1, tries + 1):
            h = random_raw(G, task)
            conj = raw_conj(sr, h, raw_inv(h))
            if all(generates_raw(G, [x, conj], gen_rng, moved) for x in raws):
                hit = conj
                break
        if hit is None:
            return SpreadCertificate(labels, False, tup, trials + [tries], witnesses, master.seed, G)
        trials.append(t)
        witnesses.append((tup, Permutation.from_raw(hit)))
    cert = SpreadCertificate(labels, True, None, trials, witnesses, master.seed, G)
    if not cert.reverify():
        from .permcore import VerificationError

        raise VerificationError("spread certificate failed re-verification")
    return cert


def common_generator_with_given_elements(G: PermGroup, classreps: Sequence[Permutation],
                                         tup: Sequence[Permutation]) -> Permutation | None:
    """A conjugate of some class representative generating G with every tuple entry."""
    if not G.is_transitive():
        raise ValueError("G must be transitive on its moved points")
    inter = G
    for x in tup:
        inter = centralizer(inter, x.padded(G.degree), check=False)
    rng = RandomStream(0xC0)
    moved = G.moved_points()
    raws = [raw_pad(x.raw, G.degree) for x in tup]
    for rep in classreps:
        rep = rep.padded(G.degree)
        repcen = centralizer(G, rep)
        for d in double_coset_reps_and_sizes(G, repcen, inter):
            r = d.representative.raw
            cand = raw_conj(rep.raw, r, raw_inv(r))
            if all(generates_raw(G, [x, cand], rng, moved) for x in raws):
                return Permutation.from_raw(cand)
    return None


# --------------------------------------------------------------------------
# covering searches over fixed-point sets


def _mask(points) -> int:
    m = 0
    for x in points:
        m |= 1 << x
    return m


def _unmask(m: int) -> frozenset:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return frozenset(out)


def cover_all(target) -> tuple:
    return ("cover", _mask(target))


def empty_intersection() -> tuple:
    return ("empty", None)


def hits_every(family) -> tuple:
    return ("hits", [_mask(f) for f in family])


def tuple_cover_search(lists: Sequence[Sequence], predicate) -> tuple | None:
    """First tuple (lexicographic in the list orders) satisfying ``predicate``.

    ``predicate`` is one of ``cover_all(target)``, ``empty_intersection()``,
    ``hits_every(family)``.
    """
    k = len(lists)
    if k not in (3, 4):
        raise ValueError("tuple length must be 3 or 4")
    if any(len(l) == 0 for l in lists):
        raise ValueError("lists must be nonempty")
    masks = [[_mask(s) for s in l] for l in lists]
    kind, arg = predicate
    full = -1
    if kind == "cover":
        combine, start = (lambda a, b: a | b), 0
        final = lambda u: u & arg == arg
    elif kind == "empty":
        combine, start = (lambda a, b: a & b), full
        final = lambda u: u == 0
    elif kind == "hits":
        combine, start = (lambda a, b: a | b), 0
        final = lambda u: all(u & f for f in arg)
    else:
        raise ValueError("unknown predicate %r" % (kind,))

    def rec(level, acc, chosen):
        last = masks[level]
        if level == k - 1:
            for j, m in enumerate(last):
                if final(combine(acc, m)):
                    return chosen + [j]
            return None
        for j, m in enumerate(last):
            hit = rec(level + 1, combine(acc, m), chosen + [j])
            if hit is not None:
                return hit
        return None

    idx = rec(0, start, [])
    if idx is None:
        return None
    return tuple(frozenset(lists[i][j]) for i, j in enumerate(idx))
