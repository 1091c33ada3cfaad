"""Homomorphisms between function groups and their weighted-composition form.

A homomorphism ``H: A -> B`` is stored as a full table aligned with
``A.elements``. A point homomorphism ``phi: A -> G`` uses the same class with
a :class:`FiniteGroup` target and integer values.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import (
    HypothesisFailed,
    InconsistentImages,
    NonSingletonSupport,
    NotBijective,
    NotBiseparating,
    NotInTarget,
    NotWeaklySeparating,
    NotWellDefined,
    NullHomomorphism,
    RepresentationMismatch,
)
from .fgroups import (
    FunctionGroup,
    Verdict,
    closure_generate,
    coz_mask,
    full_function_group,
    masks_by_size,
    popcount,
    to_mask,
    to_set,
    zero_mask,
)
from .groups import FiniteGroup, GroupMorphism, compose, identity_morphism

log = logging.getLogger(__name__)


class GroupHom:
    """A homomorphism ``source -> target`` materialised as a table.

    The homomorphism law is checked at construction on every pair
    ``(a, s)`` with ``a`` in the source and ``s`` a source generator. Since
    the source is the closure of its generators this is equivalent to the law
    on all pairs.
    """

    def __init__(self, source: FunctionGroup, target, mapping, origin="explicit-table", name=""):
        self.source = source
        self.target = target
        self.mapping = tuple(mapping)
        self.origin = origin
        self.name = name
        if len(self.mapping) != len(source):
            raise InconsistentImages(f"table has {len(self.mapping)} entries for {len(source)} elements")
        if self.is_point_hom:
            for v in self.mapping:
                if not 0 <= v < target.order:
                    raise NotInTarget(f"value {v} is not an element of {target!r}")
        else:
            self.mapping = tuple(tuple(v) for v in self.mapping)
            if target.group != source.group:
                raise InconsistentImages("source and target must be function groups over the same G")
            for v in self.mapping:
                if v not in target.index:
                    raise NotInTarget(f"{v} is not an element of {target!r}", witness=v)
        self._check_law()

    @property
    def is_point_hom(self) -> bool:
        return isinstance(self.target, FiniteGroup)

    @property
    def value_group(self) -> FiniteGroup:
        return self.target if self.is_point_hom else self.target.group

    def _tmul(self, a, b):
        if self.is_point_hom:
            return self.target.table[a][b]
        return self.target.mul(a, b)

    @property
    def target_identity(self):
        return self.target.identity if self.is_point_hom else self.target.identity_map

    def _check_law(self):
        A = self.source
        if self.mapping[A.index[A.identity_map]] != self.target_identity:
            raise InconsistentImages("identity is not mapped to identity")
        for s in A.generators:
            hs = self.mapping[A.index[s]]
            for i, f in enumerate(A.elements):
                fs = A.mul(f, s)
                if self.mapping[A.index[fs]] != self._tmul(self.mapping[i], hs):
                    raise InconsistentImages(
                        f"H({f}*{s}) != H({f})*H({s})", witness=(f, s)
                    )

    def __call__(self, f):
        return self.mapping[self.source.index[tuple(f)]]

    def __repr__(self):
        return f"GroupHom({self.name or '?'}: {self.source!r} -> {self.target!r})"

    @property
    def is_null(self) -> bool:
        e = self.target_identity
        return all(v == e for v in self.mapping)

    @property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    @property
    def is_surjective(self) -> bool:
        n = self.target.order if self.is_point_hom else len(self.target)
        return len(set(self.mapping)) == n

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def inverse(self) -> GroupHom:
        if self.is_point_hom or not self.is_bijective:
            raise NotBijective(f"{self!r} is not a bijection between function groups")
        inv = [None] * len(self.target)
        for f, v in zip(self.source.elements, self.mapping):
            inv[self.target.index[v]] = f
        return GroupHom(self.target, self.source, inv, origin="inverse", name=f"{self.name}^-1")

    def at(self, y: int) -> GroupHom:
        """``delta_y o H``."""
        if self.is_point_hom:
            raise TypeError("already a point homomorphism")
        return GroupHom(self.source, self.target.group, [v[y] for v in self.mapping], name=f"delta_{y}.{self.name}")


# -- constructors --------------------------------------------------------------

def hom_from_images(A: FunctionGroup, B, pairs, name="") -> GroupHom:
    """Extend ``generator -> image`` pairs to a homomorphism on all of ``A``.

    ``B`` is a function group or a finite group (point homomorphism). The
    extension walks words in the given sources breadth-first; a clash
    reports both words reaching the same element.
    """
    point = isinstance(B, FiniteGroup)
    pairs = [(tuple(s), v if point else tuple(v)) for s, v in pairs]
    for s, _ in pairs:
        if s not in A.index:
            raise InconsistentImages(f"{s} is not an element of the source", witness=s)

    def tmul(a, b):
        return B.table[a][b] if point else B.mul(a, b)

    e = A.identity_map
    img = {e: B.identity if point else B.identity_map}
    word = {e: ()}
    frontier = [e]
    while frontier:
        nxt = []
        for f in frontier:
            for k, (s, t) in enumerate(pairs):
                g = A.mul(f, s)
                v = tmul(img[f], t)
                old = img.get(g)
                if old is None:
                    img[g] = v
                    word[g] = word[f] + (k,)
                    nxt.append(g)
                elif old != v:
                    raise InconsistentImages(
                        f"words {list(word[g])} and {list(word[f] + (k,))} over the given "
                        f"generators reach {g} with different images",
                        witness=(word[g], word[f] + (k,)),
                    )
        frontier = nxt
    if len(img) != len(A):
        raise InconsistentImages(f"the given sources generate {len(img)} of {len(A)} elements")
    return GroupHom(A, B, [img[f] for f in A.elements], origin="generator-images", name=name)


def hom_from_function(A: FunctionGroup, B, fn, name="") -> GroupHom:
    return GroupHom(A, B, [fn(f) for f in A.elements], name=name)


def evaluation(A: FunctionGroup, x: int) -> GroupHom:
    """``delta_x: f -> f(x)``."""
    return GroupHom(A, A.group, [f[x] for f in A.elements], name=f"delta_{x}")


def null_hom(A: FunctionGroup, target) -> GroupHom:
    e = target.identity if isinstance(target, FiniteGroup) else target.identity_map
    return GroupHom(A, target, [e] * len(A), name="null")


def post_compose(alpha: GroupMorphism, phi: GroupHom) -> GroupHom:
    """``alpha o phi`` for a point homomorphism ``phi``."""
    return GroupHom(phi.source, alpha.target, [alpha.image[v] for v in phi.mapping], name=f"alpha.{phi.name}")


def weighted_composition_hom(A: FunctionGroup, h, weights, target=None, name="") -> GroupHom:
    """``Hf(y) = w[y](f(h(y)))``.

    ``weights[y]`` is a :class:`GroupMorphism` on ``G`` or a bare image vector.
    The target defaults to the full ``G^Y``.
    """
    G = A.group
    ims = [w.image if isinstance(w, GroupMorphism) else tuple(w) for w in weights]
    if len(ims) != len(h):
        raise ValueError("one weight per point of Y is required")
    if target is None:
        target = full_function_group(G, len(h))
    table = [tuple(ims[y][f[h[y]]] for y in range(len(h))) for f in A.elements]
    return GroupHom(A, target, table, name=name or "wc")


def image_group(H: GroupHom) -> FunctionGroup:
    """The subgroup ``H(A)`` of the target."""
    return closure_generate(H.value_group, H.target.domain_size, [H(s) for s in H.source.generators])


# -- separation ----------------------------------------------------------------

def _check_pairs(H: GroupHom, key, related, summary, clash, pair_ok, allow_equal=False):
    """Exhaustive pair check with a reproducible witness.

    Pairs ``(f, g)`` whose keys are ``related`` must satisfy
    ``pair_ok(Hf, Hg)``. Elements are bucketed by key; ``summary`` condenses
    a bucket's images and ``clash`` flags bucket pairs that may hold a
    violation (it must never miss one). Only flagged buckets are scanned, and
    the least violating ``(i, j)`` in element order is reported.
    """
    A = H.source
    keys = [key(i) for i in range(len(A))]
    buckets: dict = {}
    for i, k in enumerate(keys):
        buckets.setdefault(k, []).append(i)
    summ = {k: summary([H.mapping[i] for i in idx]) for k, idx in buckets.items()}
    partners: dict = {}
    for a in buckets:
        for b in buckets:
            if related(a, b) and clash(summ[a], summ[b]):
                partners.setdefault(a, []).append(b)
    if not partners:
        return Verdict(True)
    for i in range(len(A)):
        bs = partners.get(keys[i])
        if not bs:
            continue
        lo = i if allow_equal else i + 1
        js = sorted(j for b in bs for j in buckets[b] if j >= lo)
        for j in js:
            if not pair_ok(H.mapping[i], H.mapping[j]):
                return Verdict(False, witness=(A.elements[i], A.elements[j]))
    return Verdict(True)


def _disjoint(a, b):
    return a & b == 0


def _check_point_pairs(phi: GroupHom, key, allow_equal=False):
    e = phi.target.identity
    return _check_pairs(
        phi, key, _disjoint,
        summary=lambda vs: any(v != e for v in vs),
        clash=lambda sa, sb: sa and sb,
        pair_ok=lambda u, v: u == e or v == e,
        allow_equal=allow_equal,
    )


def _check_fn_pairs(H: GroupHom, key, target_key):
    G = H.value_group

    def summary(vs):
        u = 0
        for v in vs:
            u |= target_key(coz_mask(G, v))
        return u

    return _check_pairs(
        H, key, _disjoint, summary,
        clash=lambda sa, sb: sa & sb != 0,
        pair_ok=lambda u, v: target_key(coz_mask(G, u)) & target_key(coz_mask(G, v)) == 0,
    )


def is_separating(H: GroupHom) -> Verdict:
    """Separated pairs (disjoint cozero sets) go to separated pairs, or, for a
    point homomorphism, at least one of the two images is the identity."""
    cz = H.source.coz_masks
    if H.is_point_hom:
        return _check_point_pairs(H, lambda i: cz[i])
    return _check_fn_pairs(H, lambda i: cz[i], lambda m: m)


def is_weakly_separating(H: GroupHom) -> Verdict:
    """As :func:`is_separating` with "detached" in place of "separated"."""
    A = H.source
    hulls = [A.hull(m) for m in A.coz_masks]
    if H.is_point_hom:
        return _check_point_pairs(H, lambda i: hulls[i])
    return _check_fn_pairs(H, lambda i: hulls[i], H.target.hull)


def is_non_vanishing(phi: GroupHom) -> Verdict:
    """Whenever ``Z(f)`` and ``Z(g)`` are disjoint, ``phi(f)`` or ``phi(g)`` is
    not the identity."""
    if not phi.is_point_hom:
        raise TypeError("non-vanishing is defined for point homomorphisms")
    A = phi.source
    z = [zero_mask(A.group, f) for f in A.elements]
    e = phi.target.identity
    return _check_pairs(
        phi, lambda i: z[i], _disjoint,
        summary=lambda vs: any(v == e for v in vs),
        clash=lambda sa, sb: sa and sb,
        pair_ok=lambda u, v: u != e or v != e,
        allow_equal=True,
    )


def is_biseparating(H: GroupHom) -> bool:
    return H.is_bijective and bool(is_separating(H)) and bool(is_separating(H.inverse()))


# -- supports ------------------------------------------------------------------

@dataclass(frozen=True)
class SupportReport:
    minimal_supports: tuple[frozenset[int], ...]
    minimum: frozenset[int] | None
    is_singleton: bool

    @property
    def point(self) -> int:
        """The support point; only meaningful when ``is_singleton``."""
        (x,) = self.minimum
        return x

    @property
    def singleton_points(self) -> tuple[int, ...]:
        return tuple(min(s) for s in self.minimal_supports if len(s) == 1)


def _nonkernel_cozeros(phi: GroupHom) -> set[int]:
    A = phi.source
    e = phi.target.identity
    return {A.coz_masks[i] for i, v in enumerate(phi.mapping) if v != e}


def is_support(phi: GroupHom, s) -> bool:
    """``S`` is a support if every ``f`` vanishing on ``S`` has ``phi(f) = e``;
    equivalently ``S`` meets ``coz(f)`` for every ``f`` outside the kernel."""
    m = s if isinstance(s, int) else to_mask(s)
    return all(m & c for c in _nonkernel_cozeros(phi))


def is_weak_support(phi: GroupHom, s) -> bool:
    """The weak-support predicate, with ``int(cl Z(f))`` computed in the
    topology that ``A`` induces on ``X`` (its open sets are unions of atoms)."""
    A = phi.source
    m = s if isinstance(s, int) else to_mask(s)
    e = phi.target.identity
    atoms = A.atoms
    for i, v in enumerate(phi.mapping):
        z = zero_mask(A.group, A.elements[i])
        closure = 0
        for a in atoms:
            if a & z:
                closure |= a
        interior = 0
        for a in atoms:
            if a & closure == a:
                interior |= a
        if m & interior == m and v != e:
            return False
    return True


def minimal_supports(phi: GroupHom) -> SupportReport:
    """All inclusion-minimal supports of a non-null point homomorphism,
    enumerated by size and then lexicographically."""
    if not phi.is_point_hom:
        raise TypeError("supports are defined for point homomorphisms")
    if phi.is_null:
        raise NullHomomorphism("the empty set supports the null homomorphism")
    cozeros = _nonkernel_cozeros(phi)
    found: list[int] = []
    for m in masks_by_size(phi.source.domain_size):
        if any(m & s == s for s in found):
            continue
        if all(m & c for c in cozeros):
            found.append(m)
    inter = phi.source.full_mask
    for m in found:
        inter &= m
    minimum = inter if all(inter & c for c in cozeros) else None
    return SupportReport(
        minimal_supports=tuple(to_set(m) for m in found),
        minimum=None if minimum is None else to_set(minimum),
        is_singleton=minimum is not None and popcount(minimum) == 1,
    )


def support_map(H: GroupHom, strict: bool = True) -> tuple[int | None, ...]:
    """``h(y)`` = the support point of ``delta_y o H``.

    Points ``y`` where ``delta_y o H`` is null carry ``None`` (they drop out
    of the codomain). With ``strict=False`` a point whose minimal supports
    have no minimum falls back to its unique singleton minimal support, if
    there is exactly one.
    """
    ws = is_weakly_separating(H)
    if not ws:
        raise NotWeaklySeparating(f"detached maps {ws.witness[0]} and {ws.witness[1]} are sent to non-detached images", ws.witness)
    if not H.source.is_controllable():
        log.warning("source %r is not controllable; singleton supports are not guaranteed", H.source)
    h: list[int | None] = []
    dropped = []
    for y in range(H.target.domain_size):
        phi = H.at(y)
        if phi.is_null:
            h.append(None)
            dropped.append(y)
            continue
        rep = minimal_supports(phi)
        if rep.is_singleton:
            h.append(rep.point)
        elif not strict and len(rep.singleton_points) == 1:
            h.append(rep.singleton_points[0])
        else:
            raise NonSingletonSupport(y, rep)
    if len(dropped) == len(h):
        raise NullHomomorphism("every delta_y o H is null")
    if dropped:
        log.info("codomain shrinks: points %s carry only the identity", dropped)
    return tuple(h)


# -- weights -------------------------------------------------------------------

@dataclass(frozen=True)
class PartialMorphism:
    """A homomorphism from a subgroup of ``G`` into ``G``.

    ``images[a]`` is ``None`` for ``a`` outside the domain.
    """

    group: FiniteGroup
    images: tuple[int | None, ...]

    def __call__(self, a: int) -> int:
        v = self.images[a]
        if v is None:
            raise KeyError(f"{a} is outside the domain")
        return v

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(a for a, v in enumerate(self.images) if v is not None)

    @property
    def is_total(self) -> bool:
        return all(v is not None for v in self.images)

    def as_morphism(self) -> GroupMorphism:
        if not self.is_total:
            raise ValueError("partial morphism is not defined on all of G")
        return GroupMorphism(self.group, self.group, self.images)


@dataclass
class WeightedComposition:
    """``Hf(y) = w[y](f(h(y)))`` with ``h`` and ``w`` indexed by ``y``."""

    source: FunctionGroup
    target: FunctionGroup
    h: tuple[int | None, ...]
    w: tuple[PartialMorphism | None, ...]
    verified: bool = False
    hypotheses: dict = field(default_factory=dict)

    @property
    def active(self) -> tuple[int, ...]:
        return tuple(y for y, x in enumerate(self.h) if x is not None)

    @property
    def dropped(self) -> tuple[int, ...]:
        return tuple(y for y, x in enumerate(self.h) if x is None)

    @property
    def partial(self) -> bool:
        return any(w is not None and not w.is_total for w in self.w)

    def weights(self) -> tuple[GroupMorphism, ...]:
        """Total weights as morphisms (requires every ``G_{h(y)} = G``)."""
        return tuple(self.w[y].as_morphism() for y in self.active)

    def evaluate(self, f) -> tuple:
        e = self.source.group.identity
        return tuple(e if x is None else self.w[y](f[x]) for y, x in enumerate(self.h))


def weight_map(H: GroupHom, h) -> WeightedComposition:
    """Build ``w[y]`` on ``G_{h(y)} = {f(h(y))}`` by ``w[y](f(h(y))) = Hf(y)``.

    Raises ``NotWellDefined`` if two maps agreeing at ``h(y)`` have different
    images at ``y`` (then ``h(y)`` is not a support of ``delta_y o H``).
    """
    A, G = H.source, H.value_group
    ws: list[PartialMorphism | None] = []
    for y, x in enumerate(h):
        if x is None:
            ws.append(None)
            continue
        table: list[int | None] = [None] * G.order
        first: dict[int, tuple] = {}
        for f, v in zip(A.elements, H.mapping):
            a, b = f[x], v[y]
            if table[a] is None:
                table[a] = b
                first[a] = f
            elif table[a] != b:
                raise NotWellDefined(
                    f"{first[a]} and {f} agree at {x} but differ under H at {y}",
                    witness=(first[a], f, y),
                )
        dom = [a for a in range(G.order) if table[a] is not None]
        for a in dom:
            for b in dom:
                if table[G.table[a][b]] != G.table[table[a]][table[b]]:
                    raise NotWellDefined(f"w[{y}] breaks the homomorphism law at ({a}, {b})", witness=(a, b, y))
        ws.append(PartialMorphism(G, tuple(table)))
    rep = WeightedComposition(A, H.target, tuple(h), tuple(ws))
    rep.verified = verify_representation(H, rep)
    return rep


def verify_representation(H: GroupHom, rep: WeightedComposition) -> bool:
    """Check ``Hf(y) = w[y](f(h(y)))`` for every ``f`` and every active ``y``."""
    e = H.value_group.identity
    for f, v in zip(H.source.elements, H.mapping):
        for y, x in enumerate(rep.h):
            want = e if x is None else rep.w[y].images[f[x]]
            if v[y] != want:
                return False
    return True


def _source_hypotheses(A: FunctionGroup, prefix: str) -> dict:
    c = A.is_controllable()
    return {
        f"{prefix}faithful": A.is_faithful,
        f"{prefix}separates_points": A.separates_points,
        f"{prefix}controllable": c.holds,
        f"{prefix}pointwise_dense": A.is_pointwise_dense,
        f"{prefix}contains_constants": A.contains_constants,
        f"{prefix}omega_extension": True,
    }


def represent(H: GroupHom, check_hypotheses: bool = True, strict: bool = True) -> WeightedComposition:
    """Support map, then weight map, then exhaustive verification."""
    A = H.source
    hyp = _source_hypotheses(A, "source_")
    if check_hypotheses:
        if not A.is_faithful:
            raise HypothesisFailed("source_faithful")
        if not A.separates_points:
            raise HypothesisFailed("source_separates_points")
        c = A.is_controllable()
        if not c:
            raise HypothesisFailed("source_controllable", witness=c.witness)
    h = support_map(H, strict=strict)
    hyp["weakly_separating"] = True
    rep = weight_map(H, h)
    rep.hypotheses = hyp
    if A.is_pointwise_dense and rep.partial:
        raise RepresentationMismatch("pointwise dense source gave a partial weight")
    if not rep.verified:
        raise RepresentationMismatch("Hf(y) = w[y](f(h(y))) fails")
    return rep


def represent_iso(H: GroupHom, check_hypotheses: bool = True, strict: bool = True):
    """Represent a biseparating isomorphism and its inverse.

    Returns ``(rep, rep_inv)`` where ``rep_inv.h`` is the inverse of
    ``rep.h`` and ``rep_inv.w[h(y)] o rep.w[y]`` is the identity of ``G``.
    """
    if H.is_point_hom or not H.is_bijective:
        raise NotBijective(
            "H is not injective" if not H.is_injective else "H is not onto its target"
        )
    Hinv = H.inverse()
    for side, K in (("H", H), ("H^-1", Hinv)):
        v = is_weakly_separating(K)
        if not v:
            raise NotBiseparating(f"{side} is not weakly separating", witness=(side, v.witness))
    if check_hypotheses:
        for prefix, F in (("source_", H.source), ("target_", H.target)):
            if not F.is_pointwise_dense:
                raise HypothesisFailed(prefix + "pointwise_dense")
    rep = represent(H, check_hypotheses, strict)
    rep_inv = represent(Hinv, check_hypotheses, strict)
    rep.hypotheses.update(_source_hypotheses(H.target, "target_"))
    rep.hypotheses["biseparating"] = True

    h, k = rep.h, rep_inv.h
    nx, ny = H.source.domain_size, H.target.domain_size
    if None in h or None in k or sorted(h) != list(range(nx)) or nx != ny:
        raise RepresentationMismatch(f"support map {h} is not a bijection")
    for y in range(ny):
        if k[h[y]] != y:
            raise RepresentationMismatch(f"k(h({y})) = {k[h[y]]}")
    G = H.value_group
    ident = identity_morphism(G)
    for y in range(ny):
        w = rep.w[y].as_morphism()
        rho = rep_inv.w[h[y]].as_morphism()
        if not w.is_auto or compose(rho, w) != ident or compose(w, rho) != ident:
            raise RepresentationMismatch(f"weights at y={y} are not mutually inverse automorphisms")
    return rep, rep_inv
