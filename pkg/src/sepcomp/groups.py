"""Finite groups given by Cayley tables, and their morphisms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    DomainMismatch,
    InvalidOrder,
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotAssociative,
    NotInvertible,
)


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group on the indices ``0..order-1``.

    ``table[i][j]`` is the index of ``g_i * g_j``. Build instances through
    :func:`make_from_table` (or :func:`make_cyclic`, :func:`make_symmetric`),
    which validate the group axioms.
    """

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    name: str = field(default="", compare=False)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        r = self.identity
        for _ in range(k):
            r = self.table[r][a]
        return r

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    def subgroup_generated(self, gens) -> frozenset[int]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.table[a][g]
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        # greedy in index order: deterministic, and small for the groups we use
        gens: list[int] = []
        span = frozenset([self.identity])
        for a in range(self.order):
            if a not in span:
                gens.append(a)
                span = self.subgroup_generated(gens)
                if len(span) == self.order:
                    break
        return tuple(gens)

    @property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[i][j] == t[j][i] for i in range(self.order) for j in range(i))

    def __repr__(self):
        label = self.name or "G"
        return f"FiniteGroup({label}, order={self.order})"


def make_from_table(table, name: str = "") -> FiniteGroup:
    """Validate a Cayley table and build the group.

    Raises ``NotAssociative``, ``NoIdentity`` or ``NoInverse`` naming the
    offending triple or element.
    """
    rows = tuple(tuple(int(v) for v in row) for row in table)
    n = len(rows)
    if n == 0:
        raise InvalidOrder("a group needs at least one element")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InvalidOrder(f"row {i} has length {len(row)}, expected {n}")
        for v in row:
            if not 0 <= v < n:
                raise InvalidOrder(f"row {i} contains index {v} outside 0..{n - 1}")

    identity = None
    for e in range(n):
        if all(rows[e][i] == i and rows[i][e] == i for i in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentity("no two-sided identity element")

    inverse = []
    for i in range(n):
        for j in range(n):
            if rows[i][j] == identity and rows[j][i] == identity:
                inverse.append(j)
                break
        else:
            raise NoInverse(f"element {i} has no inverse", witness=i)

    for a, b, c in itertools.product(range(n), repeat=3):
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise NotAssociative(
                f"(g{a} g{b}) g{c} != g{a} (g{b} g{c})", witness=(a, b, c)
            )
    return FiniteGroup(n, rows, identity, tuple(inverse), name)


def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidOrder(f"cyclic group order must be >= 1, got {n}")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return make_from_table(table, name=f"Z{n}")


def make_symmetric(n: int) -> FiniteGroup:
    """Sym(n) with elements the permutations of ``range(n)`` in lexicographic
    order (identity first) and product ``(a*b)(i) = a(b(i))``."""
    perms = list(itertools.permutations(range(n)))
    pos = {p: k for k, p in enumerate(perms)}
    table = [[pos[tuple(a[b[i]] for i in range(n))] for b in perms] for a in perms]
    return make_from_table(table, name=f"S{n}")


def make_direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    # element (a, b) gets index a * |h| + b
    m = h.order
    table = [
        [g.table[i // m][j // m] * m + h.table[i % m][j % m] for j in range(g.order * m)]
        for i in range(g.order * m)
    ]
    return make_from_table(table, name=f"{g.name}x{h.name}")


@dataclass(frozen=True)
class GroupMorphism:
    """A homomorphism ``source -> target`` stored as its image vector."""

    source: FiniteGroup
    target: FiniteGroup
    image: tuple[int, ...]

    def __post_init__(self):
        s, t, im = self.source, self.target, self.image
        if len(im) != s.order:
            raise NotAHomomorphism(f"image has length {len(im)}, expected {s.order}")
        for v in im:
            if not 0 <= v < t.order:
                raise NotAHomomorphism(f"image index {v} outside target")
        for i in range(s.order):
            for j in range(s.order):
                if im[s.table[i][j]] != t.table[im[i]][im[j]]:
                    raise NotAHomomorphism(
                        f"law fails at (g{i}, g{j})", witness=(i, j)
                    )

    def __call__(self, a: int) -> int:
        return self.image[a]

    @property
    def is_endo(self) -> bool:
        return self.source == self.target

    @property
    def is_epi(self) -> bool:
        return len(set(self.image)) == self.target.order

    @property
    def is_auto(self) -> bool:
        return self.is_endo and self.is_epi

    @property
    def is_identity(self) -> bool:
        return self.is_endo and all(self.image[i] == i for i in range(self.source.order))

    @property
    def is_null(self) -> bool:
        return all(v == self.target.identity for v in self.image)

    def __repr__(self):
        return f"GroupMorphism({list(self.image)})"


def identity_morphism(g: FiniteGroup) -> GroupMorphism:
    return GroupMorphism(g, g, tuple(range(g.order)))


def homomorphisms(source: FiniteGroup, target: FiniteGroup) -> list[GroupMorphism]:
    """All homomorphisms ``source -> target``, sorted by image vector.

    Images are chosen on ``source.generators`` one generator at a time; after
    each choice the partial map is extended over the generated subgroup and
    rejected on the first inconsistency.
    """
    gens = source.generators
    e_s, e_t = source.identity, target.identity
    found: list[tuple[int, ...]] = []

    def extend(partial: dict[int, int], assigned: list[tuple[int, int]]):
        # close the partial map under right multiplication by assigned gens;
        # consistency on every (a, s) pair makes it a homomorphism on the span
        m = dict(partial)
        frontier = list(m)
        while frontier:
            nxt = []
            for a in frontier:
                for g, t in assigned:
                    b = source.table[a][g]
                    img = target.table[m[a]][t]
                    old = m.get(b)
                    if old is None:
                        m[b] = img
                        nxt.append(b)
                    elif old != img:
                        return None
            frontier = nxt
        return m

    def search(k: int, partial: dict[int, int], assigned):
        if k == len(gens):
            found.append(tuple(partial[i] for i in range(source.order)))
            return
        g = gens[k]
        og = source.element_order(g)
        for t in range(target.order):
            if og % target.element_order(t):
                continue
            m = extend(partial, assigned + [(g, t)])
            if m is not None:
                search(k + 1, m, assigned + [(g, t)])

    search(0, {e_s: e_t}, [])
    found.sort()
    return [GroupMorphism(source, target, im) for im in found]


def endomorphisms(g: FiniteGroup) -> list[GroupMorphism]:
    return homomorphisms(g, g)


def automorphism_group(g: FiniteGroup) -> list[GroupMorphism]:
    return [a for a in endomorphisms(g) if a.is_auto]


def compose(alpha: GroupMorphism, beta: GroupMorphism) -> GroupMorphism:
    """``alpha o beta`` (apply ``beta`` first)."""
    if beta.target != alpha.source:
        raise DomainMismatch("target of the inner map is not the source of the outer map")
    return GroupMorphism(beta.source, alpha.target, tuple(alpha.image[b] for b in beta.image))


def invert(alpha: GroupMorphism) -> GroupMorphism:
    if not alpha.is_auto:
        raise NotInvertible(f"{alpha!r} is not an automorphism")
    inv = [0] * alpha.source.order
    for i, v in enumerate(alpha.image):
        inv[v] = i
    return GroupMorphism(alpha.target, alpha.source, tuple(inv))


def multiplication_by(g: FiniteGroup, k: int) -> GroupMorphism:
    """``x -> x^k``; an endomorphism whenever ``g`` is abelian."""
    return GroupMorphism(g, g, tuple(g.power(a, k) for a in range(g.order)))
