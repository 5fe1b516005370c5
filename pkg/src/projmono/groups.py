"""Permutation groups generated by monodromy permutations.

Permutations are tuples ``p`` on ``{0..d-1}`` with ``p[x]`` the image of ``x``
(one-line notation, 0-based internally; serialized 1-based as ``[2,1,3,4]``).
Products follow path order: ``mul(a, b)`` applies ``a`` first, then ``b``.

Classification criteria used by the classifier:

* Galois center  <=> the monodromy group acts regularly (transitive, order d);
* decomposable   <=> the monodromy group is imprimitive (a block system exists).

Both are classical facts about covers (Galois closure / intermediate fields
correspond to the monodromy group and its block systems).
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .errors import ContractError, NotTransitive

TRANSPOSITION_ENUM_LIMIT = 10**6


def identity(n):
    return tuple(range(n))


def is_identity(p):
    return all(i == x for i, x in enumerate(p))


def mul(a, b):
    """a then b."""
    return tuple(b[x] for x in a)


def compose(perms, n=None):
    """Product in path order (first element applied first)."""
    out = identity(n if n is not None else len(perms[0]))
    for p in perms:
        out = mul(out, p)
    return out


def inverse(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def cycles(p):
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        c = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            c.append(j)
            j = p[j]
        out.append(c)
    return out


def cycle_type(p):
    return sorted((len(c) for c in cycles(p)), reverse=True)


def is_even(p):
    return sum(len(c) - 1 for c in cycles(p)) % 2 == 0


def is_transposition(p):
    return cycle_type(p)[:2] == [2, 1] or cycle_type(p) == [2]


def check_perm(p, n=None):
    if n is not None and len(p) != n:
        raise ContractError(f"permutation of length {len(p)}, expected {n}")
    if sorted(p) != list(range(len(p))):
        raise ContractError(f"not a permutation: {p}")


def one_line(p):
    return [x + 1 for x in p]


def from_one_line(seq):
    p = tuple(int(x) - 1 for x in seq)
    check_perm(p)
    return p


def from_cycles(n, *cycs):
    """Build from 1-based cycles, e.g. ``from_cycles(4, (1, 2, 3, 4))``."""
    p = list(range(n))
    for c in cycs:
        for a, b in zip(c, c[1:] + c[:1]):
            p[a - 1] = b - 1
    return tuple(p)


def fmt_cycles(p):
    cs = [c for c in cycles(p) if len(c) > 1]
    if not cs:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cs)


# --------------------------------------------------------------------------- Schreier-Sims


def _orbit_transversal(b, gens, n):
    trans = {b: identity(n)}
    queue = deque([b])
    while queue:
        beta = queue.popleft()
        for s in gens:
            gamma = s[beta]
            if gamma not in trans:
                trans[gamma] = mul(trans[beta], s)
                queue.append(gamma)
    return trans


def _sift(g, base, trans, start=0):
    for level in range(start, len(base)):
        t = trans[level]
        if t is None:
            return g, level
        beta = g[base[level]]
        if beta not in t:
            return g, level
        g = mul(g, inverse(t[beta]))
    return g, len(base)


def schreier_sims(gens, n):
    """Deterministic Schreier-Sims; returns (base, strong generators, transversals)."""
    S = [tuple(g) for g in gens if not is_identity(g)]
    base = []
    for g in S:
        if all(g[b] == b for b in base):
            base.append(next(x for x in range(n) if g[x] != x))
    if not base:
        return [], [], []
    trans = [None] * len(base)

    def level_gens(i):
        return [s for s in S if all(s[b] == b for b in base[:i])]

    i = len(base) - 1
    while i >= 0:
        Si = level_gens(i)
        trans[i] = _orbit_transversal(base[i], Si, n)
        jumped = False
        for beta in list(trans[i]):
            u = trans[i][beta]
            for s in Si:
                h = mul(mul(u, s), inverse(trans[i][s[beta]]))
                r, j = _sift(h, base, trans, i + 1)
                if not is_identity(r):
                    S.append(r)
                    if j == len(base):
                        base.append(next(x for x in range(n) if r[x] != x))
                        trans.append(None)
                    i = j
                    jumped = True
                    break
            if jumped:
                break
        if not jumped:
            i -= 1
    return base, S, trans


@dataclass
class BlockSystem:
    blocks: list  # sorted lists of 0-based points

    @property
    def block_size(self):
        return len(self.blocks[0])

    def one_based(self):
        return [[x + 1 for x in b] for b in self.blocks]


class PermGroup:
    def __init__(self, degree, generators):
        self.degree = int(degree)
        gens = [tuple(g) for g in generators]
        for g in gens:
            check_perm(g, self.degree)
        self.generators = gens
        self._bsgs = None

    @property
    def bsgs(self):
        if self._bsgs is None:
            self._bsgs = schreier_sims(self.generators, self.degree)
        return self._bsgs

    def order(self) -> int:
        _, _, trans = self.bsgs
        return math.prod(len(t) for t in trans) if trans else 1

    def contains(self, p) -> bool:
        base, _, trans = self.bsgs
        r, _ = _sift(tuple(p), base, trans)
        return is_identity(r)

    def orbit(self, x=0):
        seen = {x}
        queue = deque([x])
        while queue:
            a = queue.popleft()
            for g in self.generators:
                if g[a] not in seen:
                    seen.add(g[a])
                    queue.append(g[a])
        return seen

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def elements(self):
        """All elements by closure (only for small groups)."""
        e = identity(self.degree)
        seen = {e}
        queue = deque([e])
        while queue:
            a = queue.popleft()
            for g in self.generators:
                b = mul(a, g)
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return seen


def minimal_block(gens, n, a, b):
    """Finest block system with a and b in one block (Atkinson's union-find)."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = deque()
    ra, rb = find(a), find(b)
    if ra != rb:
        parent[rb] = ra
        queue.append((a, b))
    while queue:
        x, y = queue.popleft()
        for g in gens:
            u, v = find(g[x]), find(g[y])
            if u != v:
                parent[v] = u
                queue.append((g[x], g[y]))
    classes = {}
    for x in range(n):
        classes.setdefault(find(x), []).append(x)
    return sorted(sorted(c) for c in classes.values())


def minimal_blocks(G: PermGroup):
    """All minimal nontrivial block systems of a transitive group."""
    if not G.is_transitive():
        raise NotTransitive("block systems requested for an intransitive group")
    n = G.degree
    systems = []
    for j in range(1, n):
        part = minimal_block(G.generators, n, 0, j)
        if len(part) > 1 and part not in systems:
            systems.append(part)

    def refines(p, q):
        # every block of p lies inside a block of q
        where = {x: i for i, blk in enumerate(q) for x in blk}
        return all(len({where[x] for x in blk}) == 1 for blk in p)

    minimal = [p for p in systems if not any(q != p and refines(q, p) for q in systems)]
    return [BlockSystem(p) for p in minimal]


def contains_transposition(G: PermGroup):
    """True/False when decided; None when the search is inconclusive."""
    gens = G.generators
    cands = list(gens)
    cands += [mul(a, b) for a in gens for b in gens]
    cands += [mul(mul(inverse(b), a), b) for a in gens for b in gens]
    if any(is_transposition(p) for p in cands):
        return True
    order = G.order()
    if order == math.factorial(G.degree):
        return G.degree >= 2
    if order <= TRANSPOSITION_ENUM_LIMIT:
        return any(is_transposition(p) for p in G.elements())
    return None


def classify(G: PermGroup) -> dict:
    """Conjugacy-invariant flags of a transitive group."""
    if not G.is_transitive():
        raise NotTransitive("classification requires a transitive group")
    d = G.degree
    order = G.order()
    blocks = minimal_blocks(G)
    return {
        "degree": d,
        "order": order,
        "is_transitive": True,
        "is_full_symmetric": order == math.factorial(d),
        "is_alternating": d >= 2 and order * 2 == math.factorial(d) and all(is_even(g) for g in G.generators),
        "is_regular": order == d,
        "is_primitive": not blocks,
        "contains_transposition": contains_transposition(G),
        "block_systems": [b.one_based() for b in blocks],
    }
