"""Brute-force reference implementations.

Everything here works straight from the definitions and shares no code with
the package beyond the ``FiniteGroup``/``FunctionGroup`` containers.
"""

from __future__ import annotations

import itertools


def all_automorphisms(G):
    """Every bijection of G that respects the table."""
    n = G.order
    out = []
    for perm in itertools.permutations(range(n)):
        if all(perm[G.table[a][b]] == G.table[perm[a]][perm[b]] for a in range(n) for b in range(n)):
            out.append(perm)
    return sorted(out)


def all_endomorphisms(G):
    n = G.order
    out = []
    for img in itertools.product(range(n), repeat=n):
        if all(img[G.table[a][b]] == G.table[img[a]][img[b]] for a in range(n) for b in range(n)):
            out.append(img)
    return sorted(out)


def naive_closure(G, n, gens):
    """Fixed point of pointwise products starting from the identity map."""
    e = (G.identity,) * n
    S = {e} | {tuple(g) for g in gens}
    while True:
        new = {tuple(G.table[a][b] for a, b in zip(f, g)) for f in S for g in S} | S
        if new == S:
            return S
        S = new


def cozero(G, f):
    return frozenset(x for x, v in enumerate(f) if v != G.identity)


def zero(G, f):
    return frozenset(x for x, v in enumerate(f) if v == G.identity)


def subsets(n):
    for r in range(n + 1):
        for c in itertools.combinations(range(n), r):
            yield frozenset(c)


def lattice_closure(seeds):
    fam = set(seeds)
    while True:
        new = {a | b for a in fam for b in fam} | {a & b for a in fam for b in fam} | fam
        if new == fam:
            return fam
        fam = new


def d_family(A):
    """D(A): preimages f^-1(S) for every f and every S <= G, closed under
    finite unions and intersections."""
    G, n = A.group, A.domain_size
    seeds = set()
    for f in A.elements:
        for S in subsets(G.order):
            seeds.add(frozenset(x for x in range(n) if f[x] in S))
    return lattice_closure(seeds)


def e_family(A):
    """E(A): complements of the preimages, same closure."""
    G, n = A.group, A.domain_size
    X = frozenset(range(n))
    seeds = set()
    for f in A.elements:
        for S in subsets(G.order):
            seeds.add(X - frozenset(x for x in range(n) if f[x] in S))
    return lattice_closure(seeds)


def detached(A, f, g, D=None):
    D = d_family(A) if D is None else D
    cf, cg = cozero(A.group, f), cozero(A.group, g)
    return any(cf <= d1 and cg <= d2 and not d1 & d2 for d1 in D for d2 in D)


def controllable(A):
    """The definition verbatim: for all f and disjoint D1, D2 there are f'
    and E with D1 <= E <= X minus D2, f' = f on D1 and f' = e on Z(f) and off E."""
    G, n = A.group, A.domain_size
    X = frozenset(range(n))
    D, E = d_family(A), e_family(A)
    for f in A.elements:
        zf = zero(G, f)
        for d1 in D:
            for d2 in D:
                if d1 & d2:
                    continue
                ok = False
                for e in E:
                    if not (d1 <= e and not e & d2):
                        continue
                    dead = zf | (X - e)
                    for fp in A.elements:
                        if all(fp[x] == f[x] for x in d1) and all(fp[x] == G.identity for x in dead):
                            ok = True
                            break
                    if ok:
                        break
                if not ok:
                    return False
    return True


def supports(phi):
    """All supports of a point homomorphism, from the definition."""
    A, e = phi.source, phi.target.identity
    G, n = A.group, A.domain_size
    out = []
    for S in subsets(n):
        if all(v == e for f, v in zip(A.elements, phi.mapping) if all(f[x] == G.identity for x in S)):
            out.append(S)
    return out


def minimal(family):
    return sorted((s for s in family if not any(t < s for t in family)), key=lambda s: (len(s), sorted(s)))


def separating_point(phi):
    A, e = phi.source, phi.target.identity
    G = A.group
    for f, u in zip(A.elements, phi.mapping):
        for g, v in zip(A.elements, phi.mapping):
            if not cozero(G, f) & cozero(G, g) and u != e and v != e:
                return False
    return True


def separating_fn(H):
    A = H.source
    G = A.group
    for f, u in zip(A.elements, H.mapping):
        for g, v in zip(A.elements, H.mapping):
            if not cozero(G, f) & cozero(G, g) and cozero(G, u) & cozero(G, v):
                return False
    return True


def monomial_maps(n, p):
    for sigma in itertools.permutations(range(n)):
        for lam in itertools.product(range(1, p), repeat=n):
            yield sigma, lam


def apply_monomial(sigma, lam, p, c):
    return tuple(l * c[s] % p for s, l in zip(sigma, lam))


def span(p, rows, n):
    words = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        words.add(tuple(sum(a * r[x] for a, r in zip(coeffs, rows)) % p for x in range(n)))
    return words


def equivalent(p, rows1, rows2, n):
    """Existence of a monomial map carrying span(rows1) onto span(rows2),
    by trying all n! (p-1)^n of them."""
    c1, c2 = span(p, rows1, n), span(p, rows2, n)
    if len(c1) != len(c2):
        return False
    return any({apply_monomial(s, l, p, c) for c in c1} == c2 for s, l in monomial_maps(n, p))


def permutation_automorphisms(p, rows, n):
    c = span(p, rows, n)
    return [s for s in itertools.permutations(range(n)) if {tuple(w[i] for i in s) for w in c} == c]


def point_homs(A, G, limit=None):
    """All homomorphisms A -> G, by trying every image of A's generators and
    checking the law on all pairs."""
    out = []
    gens = list(A.generators)
    idx = A.index
    for imgs in itertools.product(range(G.order), repeat=len(gens)):
        table = {A.identity_map: G.identity}
        frontier = [A.identity_map]
        ok = True
        while frontier and ok:
            f = frontier.pop()
            for s, a in zip(gens, imgs):
                fs = A.mul(f, s)
                v = G.table[table[f]][a]
                if fs in table:
                    if table[fs] != v:
                        ok = False
                        break
                else:
                    table[fs] = v
                    frontier.append(fs)
        if not ok:
            continue
        vals = [table[f] for f in A.elements]
        if all(vals[idx[A.mul(f, g)]] == G.table[vals[i]][vals[j]]
               for i, f in enumerate(A.elements) for j, g in enumerate(A.elements)):
            out.append(tuple(vals))
            if limit and len(out) >= limit:
                break
    return sorted(set(out))
