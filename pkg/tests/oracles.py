"""
Brute-force reference computations used only by the tests.

Each routine avoids the package's own lattice algorithms (HNF/SNF, the
length function, the lifting-property Bruhat check) and works from raw
definitions: rational arithmetic, exhaustive search and orbit BFS.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from fractions import Fraction
from math import gcd

import numpy as np


# -- exact linear algebra over Q ------------------------------------------------

def rational_inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def rational_rank(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(a[0]) if a else 0
    while rank < len(a) and col < ncols:
        p = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if p is None:
            col += 1
            continue
        a[rank], a[p] = a[p], a[rank]
        for r in range(rank + 1, len(a)):
            f = a[r][col] / a[rank][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
        col += 1
    return rank


# -- P/Q by fractional parts -------------------------------------------------------

def pq_class(inv, lam):
    """Class of a weight in P/Q: the fractional parts of its simple-root coordinates."""
    n = len(lam)
    return tuple(sum((lam[j] * inv[j][i] for j in range(n)), Fraction(0)) % 1 for i in range(n))


def _add(a, b):
    return tuple((x + y) % 1 for x, y in zip(a, b))


def closure(gens, zero):
    seen = {zero}
    todo = deque([zero])
    while todo:
        x = todo.popleft()
        for g in gens:
            y = _add(x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def quotient_order_profile(whole, sub):
    """Counter of element orders of the quotient ``whole / sub`` (both sets of classes)."""
    cosets = {}
    for x in whole:
        key = min(_add(x, h) for h in sub)
        cosets[key] = x
    prof = Counter()
    for x in cosets.values():
        k, y = 1, x
        while y not in sub:
            y = _add(y, x)
            k += 1
        prof[k] += 1
    return prof


def group_order_profile(g):
    """Counter of element orders of a FiniteAbelianGroup, by enumeration."""
    return Counter(g.element_order(e) for e in g.elements())


def abelian_order_profile(invariants):
    prof = Counter()
    for coords in itertools.product(*[range(d) for d in invariants]):
        k = 1
        for c, d in zip(coords, invariants):
            k = k * (d // gcd(c, d)) // gcd(k, d // gcd(c, d))
        prof[k] += 1
    return prof


# -- residue root systems by evaluation ------------------------------------------------

def facet_point(rs, nodes_per_factor):
    x = []
    for (lo, hi), part in zip(rs.factor_slices, nodes_per_factor):
        marks = [1] + list(rs.marks[lo:hi])
        t = Fraction(1, sum(m for i, m in enumerate(marks) if i not in part))
        x.extend(Fraction(0) if i in part else t for i in range(1, hi - lo + 1))
    return x


def integral_roots(rs, x):
    return [i for i, c in enumerate(rs.root_coeffs) if sum(a * b for a, b in zip(c, x)).denominator == 1]


def box_characters(rs, roots, bound=4):
    """All weights in a box orthogonal to every coroot of the given roots."""
    out = []
    for lam in itertools.product(range(-bound, bound + 1), repeat=rs.rank):
        if all(rs.coroot_pairing(lam, i) == 0 for i in roots):
            out.append(lam)
    return out


class BruteBrauer:
    """P/Q modulo the classes of all box characters of the residue systems at the given facets."""

    def __init__(self, rs, bound=4):
        self.rs, self.bound = rs, bound
        self.inv = rational_inverse([list(rs.cartan.row(i)) for i in range(rs.rank)])
        self.zero = tuple(Fraction(0) for _ in range(rs.rank))
        basis = [tuple(int(i == j) for j in range(rs.rank)) for i in range(rs.rank)]
        self.whole = closure([pq_class(self.inv, w) for w in basis], self.zero)
        self._gens = {}

    def classes_at(self, facet):
        key = tuple(tuple(sorted(p)) for p in facet)
        if key not in self._gens:
            x = facet_point(self.rs, facet)
            lams = box_characters(self.rs, integral_roots(self.rs, x), self.bound)
            self._gens[key] = sorted(set(pq_class(self.inv, lam) for lam in lams))
        return self._gens[key]

    def profile(self, point_facets):
        gens = [g for f in point_facets for g in self.classes_at(f)]
        sub = closure(gens, self.zero)
        return quotient_order_profile(self.whole, sub), len(self.whole) // len(sub)


def brute_brauer_profile(rs, point_facets, bound=4):
    return BruteBrauer(rs, bound).profile(point_facets)


# -- affine Weyl group by orbit BFS ------------------------------------------------------

class AffineReflections:
    """Affine simple reflections acting on coweight coordinates, written from the definition."""

    def __init__(self, rs):
        self.rs = rs
        r = rs.rank
        cm = rs.cartan
        self.coroots = [tuple(cm[j, i] for j in range(r)) for i in range(r)]
        theta = rs.index_of(rs.highest_root)
        tv = rs.coroot_coeffs[theta]
        self.theta_vee = tuple(sum(tv[i] * cm[j, i] for i in range(r)) for j in range(r))
        self.theta = rs.root_coeffs[theta]

    def apply(self, i, x):
        if i == 0:
            v = sum(a * b for a, b in zip(self.theta, x)) - 1
            return tuple(a - v * b for a, b in zip(x, self.theta_vee))
        v = x[i - 1]
        return tuple(a - v * b for a, b in zip(x, self.coroots[i - 1]))

    def apply_word(self, word, x):
        for i in reversed(word):
            x = self.apply(i, x)
        return x


def orbit_layers(rs, start, max_len):
    """BFS over the W~-orbit of ``start``: dict point -> (distance, lex-least shortest word)."""
    ref = AffineReflections(rs)
    start = tuple(Fraction(c) for c in start)
    best = {start: (0, ())}
    layer = [start]
    for k in range(1, max_len + 1):
        nxt = {}
        for y in layer:
            word = best[y][1]
            for i in range(rs.rank + 1):
                z = ref.apply(i, y)
                if z in best:
                    continue
                cand = (i,) + word
                if z not in nxt or cand < nxt[z]:
                    nxt[z] = cand
        for z, w in nxt.items():
            best[z] = (k, w)
        layer = list(nxt)
    return best


def brute_coset_counts(rs, omega, max_len):
    start = facet_point(rs, [set(omega)])
    counts = Counter(d for d, _ in orbit_layers(rs, start, max_len).values())
    return tuple(counts.get(i, 0) for i in range(max_len + 1))


def barycenter(rs):
    h = 1 + sum(rs.marks)
    return tuple(Fraction(1, h) for _ in range(rs.rank))


def element_key(rs, word):
    return AffineReflections(rs).apply_word(word, barycenter(rs))


def brute_length(rs, word, table):
    """Length from a precomputed barycenter orbit table."""
    return table[element_key(rs, word)][0]


def subword_leq(rs, u_word, v_reduced):
    """u <= v iff u is a product of a subword of a reduced word of v."""
    target = element_key(rs, u_word)
    n = len(v_reduced)
    for mask in range(1 << n):
        sub = [v_reduced[k] for k in range(n) if mask >> k & 1]
        if element_key(rs, sub) == target:
            return True
    return False


def parabolic_elements(rs, omega):
    """Words for every element of the finite parabolic subgroup W_B."""
    ref = AffineReflections(rs)
    start = barycenter(rs)
    seen = {start: ()}
    todo = deque([start])
    while todo:
        y = todo.popleft()
        for i in sorted(omega):
            z = ref.apply(i, y)
            if z not in seen:
                seen[z] = (i,) + seen[y]
                todo.append(z)
    return list(seen.values())


# -- H^2(G, C^*) of a finite abelian group from cochains -------------------------------

def _kernel_log_size(a, p, j):
    """log_p of |{x in (Z/p^j)^n : a x = 0}| via elimination over the local ring Z/p^j."""
    if p == 2 and j == 1:
        return _gf2_kernel_dim(a)
    q = p ** j
    a = np.array(a, dtype=np.int64).reshape(len(a), -1) % q
    ncols = a.shape[1]
    total = 0
    pivots = 0
    while a.size and a.any():
        # the pivot is an entry of least p-adic valuation
        v, scaled = 0, a
        while not (scaled % p).any():
            scaled = scaled // p
            v += 1
        r, c = map(int, np.argwhere(scaled % p != 0)[0])
        unit = int(scaled[r, c])
        row = (a[r] * pow(unit, -1, q)) % q
        factors = a[:, c] // p ** v
        a = (a - np.outer(factors, row)) % q
        a = np.delete(np.delete(a, r, axis=0), c, axis=1)
        total += v
        pivots += 1
    return total + (ncols - pivots) * j


def _gf2_kernel_dim(a):
    ncols = len(a[0]) if len(a) else 0
    basis: dict[int, int] = {}   # leading bit -> row
    for row in a:
        x = sum(1 << k for k, v in enumerate(row) if v % 2)
        while x:
            top = x.bit_length() - 1
            if top not in basis:
                basis[top] = x
                break
            x ^= basis[top]
    return ncols - len(basis)


def _group_elements(invariants):
    return list(itertools.product(*[range(d) for d in invariants]))


def cochain_h2_log_size(invariants, p, j):
    """log_p |H^2(G, Z/p^j)| from normalized inhomogeneous cochains."""
    els = _group_elements(invariants)
    idx = {g: k for k, g in enumerate(els)}
    zero = els[0]

    def add(a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, invariants))

    nz = [g for g in els if g != zero]
    pairs = [(a, b) for a in nz for b in nz]
    pidx = {pr: k for k, pr in enumerate(pairs)}

    def var(a, b):
        return None if a == zero or b == zero else pidx[(a, b)]

    # cocycle: f(b,c) - f(a+b,c) + f(a,b+c) - f(a,b) = 0 (trivial action)
    rows = []
    for a in nz:
        for b in nz:
            for c in nz:
                row = [0] * len(pairs)
                for coef, (x, y) in ((1, (b, c)), (-1, (add(a, b), c)), (1, (a, add(b, c))), (-1, (a, b))):
                    k = var(x, y)
                    if k is not None:
                        row[k] += coef
                rows.append(row)
    z2 = _kernel_log_size(rows, p, j)
    # coboundaries of normalized 1-cochains: (d h)(a,b) = h(a) + h(b) - h(a+b)
    one = {g: k for k, g in enumerate(nz)}
    d1 = [[0] * len(nz) for _ in pairs]
    for k, (a, b) in enumerate(pairs):
        d1[k][one[a]] += 1
        d1[k][one[b]] += 1
        s = add(a, b)
        if s != zero:
            d1[k][one[s]] -= 1
    z1 = _kernel_log_size(d1, p, j)
    b2 = len(nz) * j - z1
    return z2 - b2


def schur_multiplier_p_parts(invariants, p, max_j):
    """
    Cyclic p-parts of H^2(G, C^*) = H_2(G, Z), recovered from |H^2(G, Z/p^j)| for j = 1..max_j
    through the universal coefficient theorem.
    """
    counts = []
    for j in range(1, max_j + 1):
        h2 = cochain_h2_log_size(invariants, p, j)
        ext = sum(min(_vp(d, p), j) for d in invariants)
        counts.append(h2 - ext)   # sum_i min(v_p(m_i), j)
    # number of cyclic factors with v_p >= j is counts[j-1] - counts[j-2]
    ge = [counts[0]] + [counts[k] - counts[k - 1] for k in range(1, len(counts))]
    parts = []
    for j in range(1, max_j + 1):
        exactly = ge[j - 1] - (ge[j] if j < max_j else 0)
        parts.extend([p ** j] * exactly)
    return sorted(parts)


def _vp(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_parts(invariant_factors, p):
    return sorted(p ** _vp(d, p) for d in invariant_factors if d % p == 0)


def prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def schur_multiplier_matches(invariants, exterior_invariants):
    """Compare every p-part of the cochain-computed multiplier with a claimed invariant-factor list."""
    order = 1
    for d in invariants:
        order *= d
    for p in prime_factors(order):
        max_j = max(_vp(d, p) for d in invariants)
        if schur_multiplier_p_parts(invariants, p, max_j) != p_parts(exterior_invariants, p):
            return False
    return True
