"""Function groups ``A <= G^X`` over a finite set ``X = {0, ..., n-1}``.

Maps ``f: X -> G`` are plain tuples of element indices (``PointMap``).
Subsets of ``X`` are bit masks internally (bit ``x`` set iff ``x`` in the set)
and ``frozenset``s at the public surface.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvalidDomain, SearchBoundExceeded, TooLarge
from .groups import FiniteGroup

PointMap = tuple  # tuple[int, ...], one group element index per point of X

DEFAULT_MAX_CLOSURE = 10**6
MAX_FAMILY = 2**20


def max_closure() -> int:
    return int(os.environ.get("SEPCOMP_MAX_CLOSURE", DEFAULT_MAX_CLOSURE))


# -- subsets as bit masks ----------------------------------------------------

def to_mask(s) -> int:
    m = 0
    for x in s:
        m |= 1 << x
    return m


def to_set(mask: int) -> frozenset[int]:
    return frozenset(x for x in range(mask.bit_length()) if mask >> x & 1)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def subset_key(mask: int):
    """Size-then-lexicographic order on subsets."""
    return popcount(mask), sorted(to_set(mask))


def masks_by_size(n: int):
    for r in range(n + 1):
        for combo in itertools.combinations(range(n), r):
            yield to_mask(combo)


def zero_mask(group: FiniteGroup, f) -> int:
    e = group.identity
    m = 0
    for x, v in enumerate(f):
        if v == e:
            m |= 1 << x
    return m


def coz_mask(group: FiniteGroup, f) -> int:
    return zero_mask(group, f) ^ ((1 << len(f)) - 1)


def zero_set(group: FiniteGroup, f) -> frozenset[int]:
    """``Z(f)``: the points where ``f`` takes the identity."""
    return to_set(zero_mask(group, f))


def cozero_set(group: FiniteGroup, f) -> frozenset[int]:
    return to_set(coz_mask(group, f))


def pointwise_mul(group: FiniteGroup, f, g) -> PointMap:
    t = group.table
    return tuple(t[a][b] for a, b in zip(f, g))


def pointwise_inv(group: FiniteGroup, f) -> PointMap:
    return tuple(group.inverse[a] for a in f)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure.

    ``witness`` explains a negative answer; ``certificate`` backs a positive
    one when the procedure produces one.
    """

    holds: bool
    witness: object = None
    certificate: object = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class SetFamily:
    """A deduplicated family of subsets of ``{0..universe_size-1}``."""

    universe_size: int
    masks: tuple[int, ...]

    @classmethod
    def from_masks(cls, n, masks):
        return cls(n, tuple(sorted(set(masks), key=subset_key)))

    @property
    def members(self) -> tuple[frozenset[int], ...]:
        return tuple(to_set(m) for m in self.masks)

    def __contains__(self, s):
        m = s if isinstance(s, int) else to_mask(s)
        return m in self._maskset

    @cached_property
    def _maskset(self):
        return frozenset(self.masks)

    def __len__(self):
        return len(self.masks)

    def __iter__(self):
        return iter(self.members)

    def is_union_intersection_closed(self) -> bool:
        ms = self._maskset
        return all(a | b in ms and a & b in ms for a in ms for b in ms)


def union_intersection_closure(n: int, seeds) -> SetFamily:
    fam = set(seeds)
    frontier = set(fam)
    while frontier:
        new = set()
        for a in frontier:
            for b in fam:
                for c in (a | b, a & b):
                    if c not in fam:
                        new.add(c)
        fam |= new
        if len(fam) > MAX_FAMILY:
            raise TooLarge(f"set family exceeds {MAX_FAMILY} members")
        frontier = new
    return SetFamily.from_masks(n, fam)


class FunctionGroup:
    """A finite subgroup of ``G^X``.

    ``elements`` are kept in generation order: breadth-first from the
    identity map, multiplying by ``generators`` in the order given. Every
    predicate iterates in this order, so reported witnesses are reproducible.
    """

    def __init__(self, group: FiniteGroup, domain_size: int, elements, generators, name=""):
        self.group = group
        self.domain_size = domain_size
        self.elements: tuple[PointMap, ...] = tuple(elements)
        self.generators: tuple[PointMap, ...] = tuple(generators)
        self.name = name
        self.index = {f: i for i, f in enumerate(self.elements)}
        self._hulls: dict[int, int] = {}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, f):
        return tuple(f) in self.index

    def __eq__(self, other):
        if not isinstance(other, FunctionGroup):
            return NotImplemented
        return (
            self.group == other.group
            and self.domain_size == other.domain_size
            and self.index.keys() == other.index.keys()
        )

    def __hash__(self):
        return hash((self.group, self.domain_size, frozenset(self.elements)))

    def __repr__(self):
        label = self.name or "A"
        return f"FunctionGroup({label}, |G|={self.group.order}, |X|={self.domain_size}, order={len(self)})"

    @property
    def identity_map(self) -> PointMap:
        return (self.group.identity,) * self.domain_size

    @property
    def full_mask(self) -> int:
        return (1 << self.domain_size) - 1

    def mul(self, f, g) -> PointMap:
        return pointwise_mul(self.group, f, g)

    def inv(self, f) -> PointMap:
        return pointwise_inv(self.group, f)

    @cached_property
    def coz_masks(self) -> tuple[int, ...]:
        return tuple(coz_mask(self.group, f) for f in self.elements)

    # the bounded subgroup A*: with G finite every map has finite range
    @property
    def bounded_subgroup(self) -> FunctionGroup:
        return self

    @property
    def is_bounded(self) -> bool:
        return True

    # -- hypotheses ---------------------------------------------------------

    @cached_property
    def is_faithful(self) -> bool:
        covered = 0
        for m in self.coz_masks:
            covered |= m
        return covered == self.full_mask

    @cached_property
    def separates_points(self) -> bool:
        return len(self.atoms) == self.domain_size

    @property
    def is_function_group(self) -> bool:
        return self.is_faithful and self.separates_points

    @cached_property
    def is_pointwise_dense(self) -> bool:
        n = self.group.order
        return all(len({f[x] for f in self.elements}) == n for x in range(self.domain_size))

    def point_image(self, x: int) -> frozenset[int]:
        """``delta_x(A)``: the values taken at ``x``."""
        return frozenset(f[x] for f in self.elements)

    @cached_property
    def contains_constants(self) -> bool:
        return all((a,) * self.domain_size in self.index for a in range(self.group.order))

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        """Classes of points that no map in A tells apart, as masks."""
        classes: dict[tuple, int] = {}
        for x in range(self.domain_size):
            key = tuple(f[x] for f in self.elements)
            classes[key] = classes.get(key, 0) | (1 << x)
        return tuple(sorted(classes.values(), key=subset_key))

    # -- lattices -----------------------------------------------------------

    @cached_property
    def c_family(self) -> SetFamily:
        """``C(A) = {f^-1(S) : f in A, S <= G}``: unions of fibres of some ``f``."""
        masks = set()
        seen_partitions = set()
        for f in self.elements:
            fibres: dict[int, int] = {}
            for x, v in enumerate(f):
                fibres[v] = fibres.get(v, 0) | (1 << x)
            blocks = tuple(sorted(fibres.values()))
            if blocks in seen_partitions:
                continue
            seen_partitions.add(blocks)
            for r in range(len(blocks) + 1):
                for combo in itertools.combinations(blocks, r):
                    m = 0
                    for b in combo:
                        m |= b
                    masks.add(m)
        return SetFamily.from_masks(self.domain_size, masks)

    @cached_property
    def o_family(self) -> SetFamily:
        full = self.full_mask
        return SetFamily.from_masks(self.domain_size, (full ^ m for m in self.c_family.masks))

    @cached_property
    def d_lattice(self) -> SetFamily:
        return union_intersection_closure(self.domain_size, self.c_family.masks)

    @cached_property
    def e_lattice(self) -> SetFamily:
        e = union_intersection_closure(self.domain_size, self.o_family.masks)
        # C(A) is complement-closed when G is discrete, so the two coincide
        assert e.masks == self.d_lattice.masks, "D(A) != E(A)"
        return e

    def hull(self, mask: int) -> int:
        """Smallest member of ``D(A)`` containing ``mask``."""
        h = self._hulls.get(mask)
        if h is None:
            h = self.full_mask
            for d in self.d_lattice.masks:
                if d & mask == mask:
                    h &= d
            self._hulls[mask] = h
        return h

    @cached_property
    def _controllable(self) -> Verdict:
        return _decide_controllable(self)

    def is_controllable(self) -> Verdict:
        return self._controllable

    def is_normal(self, max_terms=None, max_factors=None) -> Verdict:
        return decide_normal(self, max_terms, max_factors)


def closure_generate(group: FiniteGroup, domain_size: int, generators, name="", max_elements=None) -> FunctionGroup:
    """The subgroup of ``G^X`` generated by ``generators`` under pointwise product."""
    if domain_size < 1:
        raise InvalidDomain(f"domain size must be >= 1, got {domain_size}")
    bound = max_closure() if max_elements is None else max_elements
    gens = []
    for g in generators:
        g = tuple(int(v) for v in g)
        if len(g) != domain_size:
            raise InvalidDomain(f"generator {g} has length {len(g)}, expected {domain_size}")
        if any(not 0 <= v < group.order for v in g):
            raise InvalidDomain(f"generator {g} has entries outside the group")
        gens.append(g)

    e = (group.identity,) * domain_size
    seen = {e}
    order = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = pointwise_mul(group, f, g)
                if h not in seen:
                    seen.add(h)
                    order.append(h)
                    nxt.append(h)
                    if len(order) > bound:
                        raise TooLarge(f"closure exceeds {bound} elements")
        frontier = nxt
    return FunctionGroup(group, domain_size, order, gens, name)


def full_function_group(group: FiniteGroup, domain_size: int, name="") -> FunctionGroup:
    """All of ``G^X``, generated by the maps that are a group generator at one
    point and the identity elsewhere."""
    gens = []
    for x in range(domain_size):
        for a in group.generators:
            f = [group.identity] * domain_size
            f[x] = a
            gens.append(tuple(f))
    return closure_generate(group, domain_size, gens, name=name)


def constant_maps(group: FiniteGroup, domain_size: int, subgroup_gens=None, name="") -> FunctionGroup:
    gens = group.generators if subgroup_gens is None else subgroup_gens
    return closure_generate(group, domain_size, [(a,) * domain_size for a in gens], name=name)


def product_function_group(group: FiniteGroup, factor_gens, name="") -> FunctionGroup:
    """``prod_x H_x`` where ``H_x <= G`` is generated by ``factor_gens[x]``."""
    n = len(factor_gens)
    gens = []
    for x, hs in enumerate(factor_gens):
        for a in hs:
            f = [group.identity] * n
            f[x] = a
            gens.append(tuple(f))
    return closure_generate(group, n, gens, name=name)


# -- separation of pairs ------------------------------------------------------

def separated(A: FunctionGroup, f, g) -> bool:
    return coz_mask(A.group, f) & coz_mask(A.group, g) == 0


def detached(A: FunctionGroup, f, g) -> bool:
    """Whether disjoint members of ``D(A)`` contain ``coz(f)`` and ``coz(g)``.

    ``D(A)`` is intersection-closed, so it suffices to test the two hulls.
    """
    return A.hull(coz_mask(A.group, f)) & A.hull(coz_mask(A.group, g)) == 0


# -- controllability -----------------------------------------------------------

def _restriction(f, mask):
    return tuple(v for x, v in enumerate(f) if mask >> x & 1)


def _decide_controllable(A: FunctionGroup) -> Verdict:
    """For all f and disjoint D1, D2 in D(A) look for f' and E in E(A) with
    D1 <= E <= X \\ D2, f' = f on D1 and f' = e on Z(f) and off E.

    Enlarging E only relaxes the constraints on f', so it is enough to try the
    largest admissible E: the union of the E(A)-members inside X \\ D2.
    """
    full = A.full_mask
    d_masks = A.d_lattice.masks
    e_masks = A.e_lattice.masks
    e_id = A.group.identity
    best_e: dict[int, int | None] = {}
    for d2 in d_masks:
        allowed = full ^ d2
        u = 0
        for em in e_masks:
            if em & allowed == em:
                u |= em
        best_e[d2] = u

    # (D1, vanishing mask) -> restrictions to D1 of the maps in A vanishing there
    memo: dict[tuple[int, int], dict[tuple, PointMap]] = {}

    def available(d1, zmask):
        key = (d1, zmask)
        r = memo.get(key)
        if r is None:
            r = {}
            for fp in A.elements:
                if all(fp[x] == e_id for x in range(A.domain_size) if zmask >> x & 1):
                    r.setdefault(_restriction(fp, d1), fp)
            memo[key] = r
        return r

    for f in A.elements:
        zf = zero_mask(A.group, f)
        for d1 in d_masks:
            for d2 in d_masks:
                if d1 & d2:
                    continue
                e_big = best_e[d2]
                if d1 & e_big != d1:
                    return Verdict(False, witness=(f, to_set(d1), to_set(d2)))
                zmask = zf | (full ^ e_big)
                if _restriction(f, d1) not in available(d1, zmask):
                    return Verdict(False, witness=(f, to_set(d1), to_set(d2)))
    return Verdict(True)


def controllability_witness(A: FunctionGroup, f, d1, d2):
    """A witness ``(f', E)`` for one triple, or ``None``; exhaustive over E(A)."""
    d1m, d2m = to_mask(d1), to_mask(d2)
    full = A.full_mask
    e_id = A.group.identity
    zf = zero_mask(A.group, f)
    for em in A.e_lattice.masks:
        if d1m & em != d1m or em & d2m:
            continue
        zmask = zf | (full ^ em)
        for fp in A.elements:
            if _restriction(fp, d1m) != _restriction(f, d1m):
                continue
            if all(fp[x] == e_id for x in range(A.domain_size) if zmask >> x & 1):
                return fp, to_set(em)
    return None


# -- normality -----------------------------------------------------------------

@dataclass(frozen=True)
class SeparationTerm:
    """One ``j``-term: factors ``(f_ij, F1_ij, F2_ij)`` with disjoint F's."""

    factors: tuple[tuple[PointMap, frozenset[int], frozenset[int]], ...]


@dataclass(frozen=True)
class NormalityCertificate:
    d1: frozenset[int]
    d2: frozenset[int]
    terms: tuple[SeparationTerm, ...] = field(default=())

    def check(self, group: FiniteGroup, domain_size: int) -> bool:
        """Evaluate D1 <= U_j N_i f^-1(F1) and D2 <= N_j U_i f^-1(F2)."""
        full = (1 << domain_size) - 1
        cover1, cover2 = 0, full
        for term in self.terms:
            inter, union = full, 0
            for f, f1, f2 in term.factors:
                if f1 & f2:
                    return False
                inter &= to_mask(x for x in range(domain_size) if f[x] in f1)
                union |= to_mask(x for x in range(domain_size) if f[x] in f2)
            cover1 |= inter
            cover2 &= union
        return to_mask(self.d1) & cover1 == to_mask(self.d1) and to_mask(self.d2) & cover2 == to_mask(self.d2)


def decide_normal(A: FunctionGroup, max_terms=None, max_factors=None) -> Verdict:
    """Decide normality for every disjoint pair of ``D(A)``.

    If some ``x`` in D1 and ``q`` in D2 are not told apart by any map, no
    separating system exists (every preimage contains both or neither).
    Otherwise one is built greedily: one term per uncovered ``x`` in D1, whose
    factors cover D2 by maps distinguishing ``x`` from each ``q``. Term and
    factor counts are bounded by ``max_terms``/``max_factors`` (default
    ``|X|``); a certificate that needs more raises ``SearchBoundExceeded``.
    """
    n = A.domain_size
    max_terms = n if max_terms is None else max_terms
    max_factors = n if max_factors is None else max_factors
    gorder = A.group.order
    certs = []
    d_masks = A.d_lattice.masks
    for d1 in d_masks:
        for d2 in d_masks:
            if d1 & d2:
                continue
            terms = []
            uncovered1 = d1
            pts2 = [q for q in range(n) if d2 >> q & 1]
            while uncovered1:
                x = (uncovered1 & -uncovered1).bit_length() - 1
                factors = []
                todo = set(pts2)
                while todo:
                    best, best_cov = None, set()
                    for f in A.elements:
                        cov = {q for q in todo if f[q] != f[x]}
                        if len(cov) > len(best_cov):
                            best, best_cov = f, cov
                    if best is None:
                        q = min(todo)
                        return Verdict(False, witness=(to_set(d1), to_set(d2), x, q))
                    f1 = frozenset([best[x]])
                    factors.append((best, f1, frozenset(range(gorder)) - f1))
                    todo -= best_cov
                inter = A.full_mask
                for f, f1, _ in factors:
                    inter &= to_mask(y for y in range(n) if f[y] in f1)
                uncovered1 &= ~inter
                terms.append(SeparationTerm(tuple(factors)))
                if len(factors) > max_factors:
                    raise SearchBoundExceeded(
                        f"separating D1={sorted(to_set(d1))}, D2={sorted(to_set(d2))} needs "
                        f"{len(factors)} factors in one term (bound {max_factors})"
                    )
            if len(terms) > max_terms:
                raise SearchBoundExceeded(
                    f"separating D1={sorted(to_set(d1))}, D2={sorted(to_set(d2))} needs "
                    f"{len(terms)} terms (bound {max_terms})"
                )
            cert = NormalityCertificate(to_set(d1), to_set(d2), tuple(terms))
            assert cert.check(A.group, n)
            certs.append(cert)
    return Verdict(True, certificate=tuple(certs))


# -- omega-extension -----------------------------------------------------------

@dataclass(frozen=True)
class ExtensionCertificate:
    """Why ``ext_omega(A*) = A* = A`` holds for this finite-X instance.

    A locally finite family of cozero sets on a finite (discrete) X has only
    finitely many nonempty members, so every admissible infinite product is a
    finite product of maps of A*, which stays in A* once A* is closed under
    products. ``closed_under_products`` is that closure check, done on all
    (element, generator) pairs.
    """

    domain_size: int
    bounded_equals_whole: bool
    d_lattice_preserved: bool
    closed_under_products: bool

    @property
    def valid(self) -> bool:
        return self.bounded_equals_whole and self.d_lattice_preserved and self.closed_under_products


def omega_extension_closure(A: FunctionGroup) -> tuple[FunctionGroup, ExtensionCertificate]:
    bounded = A.bounded_subgroup
    closed = all(A.mul(f, g) in A.index for f in bounded.elements for g in bounded.generators)
    cert = ExtensionCertificate(
        domain_size=A.domain_size,
        bounded_equals_whole=bounded == A,
        d_lattice_preserved=bounded.d_lattice == A.d_lattice,
        closed_under_products=closed,
    )
    return A, cert


def is_faithful(A: FunctionGroup) -> bool:
    return A.is_faithful


def separates_points(A: FunctionGroup) -> bool:
    return A.separates_points


def is_function_group(A: FunctionGroup) -> bool:
    return A.is_function_group


def is_pointwise_dense(A: FunctionGroup) -> bool:
    return A.is_pointwise_dense


def d_lattice(A: FunctionGroup) -> SetFamily:
    return A.d_lattice


def e_lattice(A: FunctionGroup) -> SetFamily:
    return A.e_lattice


def is_controllable(A: FunctionGroup) -> Verdict:
    return A.is_controllable()


def is_normal(A: FunctionGroup, max_terms=None, max_factors=None) -> Verdict:
    return A.is_normal(max_terms, max_factors)
