"""Bundled group catalog: generators, maximal-subgroup recipes, provenance.

File format (``probgen-catalog 1``)::

    probgen-catalog 1
    [group A5]
    degree = 5
    order = 60
    gens = (1,2,3,4,5); (3,4,5)
    notes = free text

    [max D10]
    order = 10
    recipe = sylow_normalizer 5

Keys may repeat (values accumulate for ``gens`` and ``matrix``); ``#`` starts
a comment line.  Matrix entries are written as codes: ``0`` is the zero of
GF(q) and ``c >= 1`` stands for ``z^(c-1)`` with ``z`` the stored primitive
element; rows are separated by ``/``.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from pathlib import Path

from .gf import GF, projective_action
from .permcore import (
    PermGroup,
    Permutation,
    VerificationError,
    derived_subgroup,
    is_subgroup,
    parse_permutation,
    stabilizer,
)

HEADER = "probgen-catalog 1"
BUNDLED = Path(__file__).with_name("data") / "catalog.txt"
RECIPES = ("literal", "point_stabilizer", "set_stabilizer", "sylow_normalizer",
           "derived_subgroup", "centralizer_of")


class CatalogError(ValueError):
    pass


@dataclass
class SubgroupRecipe:
    variant: str
    argument: str = ""
    gens: list = field(default_factory=list)


@dataclass
class SubgroupEntry:
    label: str
    recipe: SubgroupRecipe
    order: int | None = None
    notes: str = ""


@dataclass
class CatalogEntry:
    name: str
    declared_order: int
    degree: int | None = None
    gens: list = field(default_factory=list)
    field_size: int | None = None
    dimension: int | None = None
    matrices: list = field(default_factory=list)
    orbit_length: int | None = None
    subgroups: list = field(default_factory=list)
    socle_of: str | None = None
    notes: str = ""
    line: int = 0

    @property
    def is_matrix(self) -> bool:
        return self.field_size is not None


def default_catalog_path() -> Path:
    env = os.environ.get("PROBGEN_CATALOG")
    return Path(env) if env else BUNDLED


def load_catalog(path=None) -> list:
    """Parse a catalog file; groups are not constructed here."""
    path = Path(path) if path is not None else default_catalog_path()
    text = path.read_text()
    if not text.strip():
        return []
    return parse_catalog(text, str(path))


_SECTION = re.compile(r"^\[(group|max)\s+(.+?)\]\s*$")


def parse_catalog(text: str, source: str = "<catalog>") -> list:
    lines = text.splitlines()
    entries: list = []
    names: set = set()
    cur = None
    sub = None
    seen_header = False

    def fail(lineno, msg):
        raise CatalogError("%s:%d: %s" % (source, lineno, msg))

    def close(lineno):
        if sub is not None and sub.recipe is None:
            fail(lineno, "max block %r lacks a recipe" % sub.label)
        if cur is not None:
            if cur.declared_order is None:
                fail(cur.line, "group %r lacks an order" % cur.name)
            if cur.is_matrix:
                if not cur.matrices or cur.dimension is None:
                    fail(cur.line, "matrix group %r lacks matrices or dimension" % cur.name)
            elif cur.degree is None:
                fail(cur.line, "group %r lacks a degree" % cur.name)

    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not seen_header:
            if line != HEADER:
                fail(lineno, "expected header %r" % HEADER)
            seen_header = True
            continue
        m = _SECTION.match(line)
        if m:
            kind, name = m.group(1), m.group(2).strip()
            if kind == "group":
                close(lineno)
                if name in names:
                    fail(lineno, "duplicate entry %r" % name)
                names.add(name)
                cur = CatalogEntry(name, None, line=lineno)
                sub = None
                entries.append(cur)
            else:
                if cur is None:
                    fail(lineno, "max block outside a group")
                if sub is not None and sub.recipe is None:
                    fail(lineno, "max block %r lacks a recipe" % sub.label)
                sub = SubgroupEntry(name, None)
                cur.subgroups.append(sub)
            continue
        if "=" not in line:
            fail(lineno, "expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if cur is None:
            fail(lineno, "key outside a section")
        try:
            if sub is not None:
                _set_sub_key(sub, key, value)
            else:
                _set_group_key(cur, key, value)
        except (ValueError, CatalogError) as exc:
            fail(lineno, str(exc))
    close(len(lines))
    return entries


def _split_list(value: str) -> list:
    return [v.strip() for v in value.split(";") if v.strip()]


def _set_group_key(e: CatalogEntry, key: str, value: str):
    if key == "order":
        e.declared_order = int(value)
    elif key == "degree":
        e.degree = int(value)
    elif key == "gens":
        e.gens.extend(_split_list(value))
    elif key == "field":
        e.field_size = int(value)
    elif key == "dimension":
        e.dimension = int(value)
    elif key == "matrix":
        rows = [[int(t) for t in r.split()] for r in value.split("/")]
        e.matrices.append(rows)
    elif key == "orbit":
        e.orbit_length = int(value)
    elif key == "socle":
        e.socle_of = value
    elif key == "notes":
        e.notes = (e.notes + " " + value).strip()
    else:
        raise CatalogError("unknown group key %r" % key)


def _set_sub_key(s: SubgroupEntry, key: str, value: str):
    if key == "recipe":
        parts = value.split(None, 1)
        if not parts or parts[0] not in RECIPES:
            raise CatalogError("unknown recipe %r" % value)
        s.recipe = SubgroupRecipe(parts[0], parts[1].strip() if len(parts) > 1 else "")
    elif key == "gens":
        if s.recipe is None or s.recipe.variant != "literal":
            raise CatalogError("gens given for a non-literal recipe")
        s.recipe.gens.extend(_split_list(value))
    elif key == "order":
        s.order = int(value)
    elif key == "notes":
        s.notes = (s.notes + " " + value).strip()
    else:
        raise CatalogError("unknown max key %r" % key)


def find_entry(entries, name: str) -> CatalogEntry:
    for e in entries:
        if e.name == name:
            return e
    raise KeyError(name)


# --------------------------------------------------------------------------
# construction


def build_group(entry: CatalogEntry) -> PermGroup:
    if entry.is_matrix:
        G = _build_matrix_group(entry)
    else:
        gens = [parse_permutation(g, entry.degree) for g in entry.gens]
        G = PermGroup(gens, entry.degree, name=entry.name)
    if G.order() != entry.declared_order:
        raise VerificationError("%s: built order %d, declared %d" % (entry.name, G.order(), entry.declared_order))
    return G


def matrix_orbits(entry: CatalogEntry) -> tuple:
    """Projective points, induced permutations and point orbits of a matrix entry."""
    F = GF(entry.field_size)
    mats = []
    for codes in entry.matrices:
        if len(codes) != entry.dimension or any(len(r) != entry.dimension for r in codes):
            raise CatalogError("%s: matrix shape differs from dimension" % entry.name)
        M = [[F.from_code(c) for c in row] for row in codes]
        if F.det(M) == 0:
            raise CatalogError("%s: singular matrix" % entry.name)
        mats.append(M)
    points, perms = projective_action(F, mats)
    full = PermGroup(perms, len(points))
    orbits = sorted(full.point_orbits(), key=lambda o: (len(o), o[0]))
    return F, mats, points, full, orbits


def _build_matrix_group(entry: CatalogEntry) -> PermGroup:
    F, mats, points, full, orbits = matrix_orbits(entry)
    if entry.orbit_length is not None:
        chosen = [o for o in orbits if len(o) == entry.orbit_length]
        if not chosen:
            raise CatalogError("%s: no orbit of length %d" % (entry.name, entry.orbit_length))
    else:
        chosen = [o for o in orbits if len(o) > 1]
    for orb in chosen:
        sub = [points[i] for i in sorted(orb)]
        _, perms = projective_action(F, mats, sub)
        G = PermGroup(perms, len(sub), name=entry.name)
        if entry.orbit_length is not None or G.order() == full.order():
            return G
    raise CatalogError("%s: no faithful orbit" % entry.name)


def resolve_subgroup(G: PermGroup, sub, label: str = "") -> PermGroup:
    """Build the subgroup described by a recipe (or a SubgroupEntry) and verify it."""
    recipe = sub.recipe if isinstance(sub, SubgroupEntry) else sub
    declared = sub.order if isinstance(sub, SubgroupEntry) else None
    label = label or (sub.label if isinstance(sub, SubgroupEntry) else recipe.variant)
    v, arg = recipe.variant, recipe.argument
    if v == "literal":
        gens = [parse_permutation(g, G.degree) for g in recipe.gens]
        H = PermGroup(gens, G.degree, order=declared)
    elif v == "point_stabilizer":
        H = stabilizer(G, int(arg))
    elif v == "set_stabilizer":
        H = stabilizer(G, [int(t) for t in re.split(r"[,\s]+", arg.strip("{} ")) if t])
    elif v == "sylow_normalizer":
        from .subgrp import normalizer, sylow_subgroup

        H = normalizer(G, sylow_subgroup(G, int(arg)))
    elif v == "derived_subgroup":
        H = derived_subgroup(G)
    elif v == "centralizer_of":
        from .classes import centralizer

        H = centralizer(G, evaluate_word(G, arg))
    else:
        raise CatalogError("unknown recipe %r" % v)
    try:
        order = H.order()
    except VerificationError as exc:
        raise VerificationError("%s: %s" % (label, exc)) from None
    if not is_subgroup(G, H):
        raise VerificationError("%s: generators are not in the parent group" % label)
    if declared is not None and order != declared:
        raise VerificationError("%s: order %d, declared %d" % (label, order, declared))
    H.name = label
    return H


_TOKEN = re.compile(r"\s*(g\d+|\d+|[()*^-])")


def evaluate_word(G: PermGroup, word: str) -> Permutation:
    """Evaluate a word such as ``(g1*g2^2)^2`` in the generators of ``G``."""
    tokens = []
    pos = 0
    word = word.strip()
    while pos < len(word):
        m = _TOKEN.match(word, pos)
        if not m:
            raise CatalogError("bad word %r" % word)
        tokens.append(m.group(1))
        pos = m.end()
    gens = G.generators
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else None

    def take():
        nonlocal i
        if i >= len(tokens):
            raise CatalogError("truncated word %r" % word)
        i += 1
        return tokens[i - 1]

    def product_():
        p = factor()
        while peek() == "*":
            take()
            p = p * factor()
        return p

    def factor():
        t = take()
        if t == "(":
            p = product_()
            if take() != ")":
                raise CatalogError("unbalanced word %r" % word)
        elif t.startswith("g"):
            k = int(t[1:])
            if not 1 <= k <= len(gens):
                raise CatalogError("generator %s out of range" % t)
            p = gens[k - 1]
        else:
            raise CatalogError("bad word %r" % word)
        if peek() == "^":
            take()
            neg = False
            if peek() == "-":
                take()
                neg = True
            e = int(take())
            p = p ** (-e if neg else e)
        return p

    result = product_()
    if i != len(tokens):
        raise CatalogError("trailing tokens in %r" % word)
    return result


class Catalog:
    """Loaded catalog with lazily built and cached groups and maxes."""

    def __init__(self, path=None):
        self.path = Path(path) if path is not None else default_catalog_path()
        self.entries = load_catalog(self.path)
        self._groups: dict = {}
        self._maxes: dict = {}

    def names(self) -> list:
        return [e.name for e in self.entries]

    def entry(self, name: str) -> CatalogEntry:
        return find_entry(self.entries, name)

    def group(self, name: str) -> PermGroup:
        if name not in self._groups:
            self._groups[name] = build_group(self.entry(name))
        return self._groups[name]

    def maxes(self, name: str) -> list:
        if name not in self._maxes:
            G = self.group(name)
            self._maxes[name] = [resolve_subgroup(G, s) for s in self.entry(name).subgroups]
        return self._maxes[name]

    def socle(self, name: str) -> PermGroup | None:
        e = self.entry(name)
        if e.socle_of is None:
            return None
        G = self.group(name)
        S = self.group(e.socle_of)
        if S.degree != G.degree or not is_subgroup(G, S):
            raise VerificationError("%s is not a subgroup of %s" % (e.socle_of, name))
        return S
