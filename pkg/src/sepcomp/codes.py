"""Linear codes over prime fields and monomial equivalence.

A code of length ``n`` over ``Z_p`` is a function group in ``Z_p^X`` with
``X = {0..n-1}``. Because ``Aut(Z_p, +)`` is multiplication by the nonzero
scalars, a weighted composition ``c -> (x -> w[x](c(h(x))))`` with ``h`` a
bijection is exactly a monomial map, written here as ``(sigma, lam)`` acting
by ``c -> (x -> lam[x] * c[sigma[x]])``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import NonSingletonSupport, NotBijective, NotIsometry, NotPrime, RankDeficient, RepresentationMismatch
from .fgroups import FunctionGroup, closure_generate
from .groups import make_cyclic
from .homs import GroupHom, WeightedComposition, is_separating, minimal_supports, weight_map


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def rref_mod_p(rows, p: int) -> list[list[int]]:
    """Reduced row-echelon form over ``Z_p``; zero rows are dropped."""
    m = [[v % p for v in r] for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    out_rows = 0
    for c in range(ncols):
        piv = next((r for r in range(out_rows, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[out_rows], m[piv] = m[piv], m[out_rows]
        inv = pow(m[out_rows][c], -1, p)
        m[out_rows] = [v * inv % p for v in m[out_rows]]
        for r in range(len(m)):
            if r != out_rows and m[r][c]:
                k = m[r][c]
                m[r] = [(a - k * b) % p for a, b in zip(m[r], m[out_rows])]
        out_rows += 1
    return m[:out_rows]


def weight(c) -> int:
    return sum(1 for v in c if v)


@dataclass(frozen=True, eq=False)
class LinearCode:
    p: int
    n: int
    k: int
    generator_rows: tuple[tuple[int, ...], ...]  # RREF
    name: str = ""

    @cached_property
    def as_fgroup(self) -> FunctionGroup:
        return closure_generate(make_cyclic(self.p), self.n, self.generator_rows, name=self.name)

    @property
    def codewords(self) -> tuple[tuple[int, ...], ...]:
        return self.as_fgroup.elements

    @cached_property
    def codeword_set(self) -> frozenset:
        return frozenset(self.codewords)

    def __contains__(self, c):
        return tuple(c) in self.codeword_set

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (self.p, self.n, self.generator_rows) == (other.p, other.n, other.generator_rows)

    def __hash__(self):
        return hash((self.p, self.n, self.generator_rows))

    def __repr__(self):
        return f"LinearCode({self.name or '?'}: [{self.n},{self.k}] over Z{self.p})"

    @cached_property
    def column_profiles(self) -> tuple[tuple[int, ...], ...]:
        """Per column, the number of codewords of each weight that are nonzero
        there. Invariant under monomial maps (up to moving the column)."""
        prof = [[0] * (self.n + 1) for _ in range(self.n)]
        for c in self.codewords:
            w = weight(c)
            for x, v in enumerate(c):
                if v:
                    prof[x][w] += 1
        return tuple(tuple(r) for r in prof)


def code_from_matrix(p: int, rows, n: int | None = None, k: int | None = None, name: str = "") -> LinearCode:
    if not is_prime(p):
        raise NotPrime(
            f"field size {p} is not prime; only prime fields are supported, where "
            "Aut(Z_p,+) is exactly the nonzero scalars and weighted compositions are "
            "monomial maps"
        )
    rows = [list(r) for r in rows]
    if n is None:
        if not rows:
            raise ValueError("length is required for a code with no rows")
        n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ValueError(f"every row must have length {n}")
    if k is None:
        k = len(rows)
    red = rref_mod_p(rows, p)
    if len(red) != k or len(rows) != k:
        raise RankDeficient(f"rows span dimension {len(red)}, expected {k}")
    return LinearCode(p, n, k, tuple(tuple(r) for r in red), name)


def hamming_7_4() -> LinearCode:
    rows = [
        [1, 0, 0, 0, 1, 1, 0],
        [0, 1, 0, 0, 1, 0, 1],
        [0, 0, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ]
    return code_from_matrix(2, rows, name="hamming74")


def weight_enumerator(code: LinearCode) -> tuple[int, ...]:
    W = [0] * (code.n + 1)
    for c in code.codewords:
        W[weight(c)] += 1
    return tuple(W)


@dataclass(frozen=True)
class MonomialWitness:
    sigma: tuple[int, ...]
    lam: tuple[int, ...]
    p: int

    def apply(self, c) -> tuple[int, ...]:
        return tuple(l * c[s] % self.p for s, l in zip(self.sigma, self.lam))

    def then(self, other: MonomialWitness) -> MonomialWitness:
        """``other o self``: apply ``self`` first."""
        sigma = tuple(self.sigma[s] for s in other.sigma)
        lam = tuple(l2 * self.lam[s] % self.p for s, l2 in zip(other.sigma, other.lam))
        return MonomialWitness(sigma, lam, self.p)

    def inverse(self) -> MonomialWitness:
        n = len(self.sigma)
        sigma = [0] * n
        lam = [0] * n
        for x, (s, l) in enumerate(zip(self.sigma, self.lam)):
            sigma[s] = x
            lam[s] = pow(l, -1, self.p)
        return MonomialWitness(tuple(sigma), tuple(lam), self.p)


def identity_witness(n: int, p: int) -> MonomialWitness:
    return MonomialWitness(tuple(range(n)), (1,) * n, p)


def apply_monomial(code: LinearCode, wit: MonomialWitness, name="") -> LinearCode:
    rows = [wit.apply(r) for r in code.generator_rows]
    return code_from_matrix(code.p, rows, n=code.n, k=code.k, name=name)


def verify_witness(c1: LinearCode, c2: LinearCode, wit: MonomialWitness) -> bool:
    """Full codeword-by-codeword check that ``wit`` maps ``c1`` onto ``c2``."""
    if len(wit.sigma) != c1.n or sorted(wit.sigma) != list(range(c1.n)):
        return False
    if any(l % c1.p == 0 for l in wit.lam):
        return False
    image = {wit.apply(c) for c in c1.codewords}
    return image == c2.codeword_set


def _search(c1: LinearCode, c2: LinearCode):
    """Depth-first search over positions ``x = 0..n-1`` of ``c2``, choosing
    ``sigma[x]`` (ascending) and then ``lam[x]`` (ascending).

    State: for each generator row of ``c1``, the codewords of ``c2`` of the
    same weight that agree with the row's partial image so far. An empty
    list kills the branch. Columns are only matched within equal
    ``column_profiles``. If every row's image lies in ``c2`` the map sends
    ``c1`` into ``c2``, and onto it since both have ``p^k`` words.
    """
    if c1.p != c2.p:
        raise ValueError("codes over different fields")
    p, n = c1.p, c1.n
    if c2.n != n or c1.k != c2.k or weight_enumerator(c1) != weight_enumerator(c2):
        return
    prof1, prof2 = c1.column_profiles, c2.column_profiles
    if sorted(prof1) != sorted(prof2):
        return
    rows = c1.generator_rows
    cands0 = [[c for c in c2.codewords if weight(c) == weight(r)] for r in rows]
    if any(not cs for cs in cands0):
        return
    used = [False] * n
    sigma = [0] * n
    lam = [0] * n

    def dfs(x, cands):
        if x == n:
            yield MonomialWitness(tuple(sigma), tuple(lam), p)
            return
        for j in range(n):
            if used[j] or prof1[j] != prof2[x]:
                continue
            used[j] = True
            sigma[x] = j
            for l in range(1, p):
                nxt = []
                for r, cs in zip(rows, cands):
                    v = l * r[j] % p
                    keep = [c for c in cs if c[x] == v]
                    if not keep:
                        break
                    nxt.append(keep)
                else:
                    lam[x] = l
                    yield from dfs(x + 1, nxt)
            used[j] = False

    yield from dfs(0, cands0)


def monomial_equivalence(c1: LinearCode, c2: LinearCode) -> MonomialWitness | None:
    """The least witness carrying ``c1`` onto ``c2``, or ``None``.

    "Least" is lexicographic on ``(sigma[0], lam[0], sigma[1], lam[1], ...)``.
    """
    if c1.n != c2.n:
        return None
    for wit in _search(c1, c2):
        if not verify_witness(c1, c2, wit):
            raise RepresentationMismatch(f"search produced an invalid witness {wit}")
        return wit
    return None


def code_automorphisms(code: LinearCode) -> list[MonomialWitness]:
    out = []
    for wit in _search(code, code):
        if not verify_witness(code, code, wit):
            raise RepresentationMismatch(f"search produced an invalid witness {wit}")
        out.append(wit)
    return out


def monomial_hom(c1: LinearCode, c2: LinearCode, wit: MonomialWitness, name="") -> GroupHom:
    """The homomorphism ``c1 -> c2`` induced by a monomial witness."""
    return GroupHom(c1.as_fgroup, c2.as_fgroup, [wit.apply(c) for c in c1.codewords], name=name)


@dataclass(frozen=True)
class IsometryReport:
    representation: WeightedComposition
    inverse_representation: WeightedComposition
    witness: MonomialWitness
    separating: bool
    inverse_separating: bool


def verify_isometry_is_monomial(H: GroupHom, c1: LinearCode, c2: LinearCode) -> IsometryReport:
    """Run the representation engine on a Hamming isometry between codes and
    read off the monomial witness ``sigma = h``, ``lam[y] = w[y](1)``.

    Codes are rarely controllable (that needs weight-one words), so instead
    of the strict support map each ``y`` takes a singleton minimal support of
    ``delta_y o H``. Proportional columns all qualify; they are matched to
    the ``y`` of their class in increasing order. The weight map is then
    built and checked exhaustively as usual.
    """
    if H.source != c1.as_fgroup or H.target != c2.as_fgroup:
        raise ValueError("H must map the first code's function group to the second's")
    if not H.is_bijective:
        raise NotBijective("H is not a bijection between the codes")
    for c, v in zip(H.source.elements, H.mapping):
        if weight(c) != weight(v):
            raise NotIsometry(f"weight {weight(c)} word {c} maps to weight {weight(v)} word {v}", witness=(c, v))
    Hinv = H.inverse()
    sep, sep_inv = bool(is_separating(H)), bool(is_separating(Hinv))
    rep = weight_map(H, _matched_supports(H))
    rep_inv = weight_map(Hinv, _matched_supports(Hinv))
    if not (rep.verified and rep_inv.verified):
        raise RepresentationMismatch("Hf(y) = w[y](f(h(y))) fails for a code isometry")
    p, n = c1.p, c1.n
    sigma = list(rep.h)
    lam = [1 if w is None else w(1) for w in rep.w]
    # zero columns on both sides carry no information: pair them up in order
    spare_x = sorted(set(range(n)) - {x for x in sigma if x is not None})
    for y in range(n):
        if sigma[y] is None:
            sigma[y] = spare_x.pop(0)
    wit = MonomialWitness(tuple(sigma), tuple(lam), p)
    for c, v in zip(H.source.elements, H.mapping):
        if wit.apply(c) != v:
            raise RepresentationMismatch(f"witness disagrees with H on {c}")
    return IsometryReport(rep, rep_inv, wit, sep, sep_inv)


def _matched_supports(H: GroupHom) -> tuple[int | None, ...]:
    h: list[int | None] = []
    used: set[int] = set()
    for y in range(H.target.domain_size):
        phi = H.at(y)
        if phi.is_null:
            h.append(None)
            continue
        rep = minimal_supports(phi)
        free = [x for x in rep.singleton_points if x not in used]
        if not free:
            raise NonSingletonSupport(y, rep)
        h.append(free[0])
        used.add(free[0])
    return tuple(h)
