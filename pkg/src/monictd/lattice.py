"""Exact LLL reduction and small rational linear algebra.

The lattices here are tiny (dimension at most a dozen), so the reduction
runs entirely over exact rationals: Gram-Schmidt data is recomputed from
the Gram form after every basis change.  Exactness matters because the
candidate-factor search feeds reduced vectors into resultant filters, and
a rounding artifact would surface as a spurious candidate.
"""

from __future__ import annotations

from fractions import Fraction


def _round_nearest(x: Fraction) -> int:
    """Nearest integer, ties toward +infinity."""
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


def _gram_ip(g, u, v) -> Fraction:
    acc = Fraction(0)
    for i, ui in enumerate(u):
        if not ui:
            continue
        row = g[i]
        s = Fraction(0)
        for j, vj in enumerate(v):
            if vj:
                s += row[j] * vj
        acc += ui * s
    return acc


def _gso(basis, gram):
    """Gram-Schmidt coefficients mu and squared norms of the b_i*."""
    n = len(basis)
    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            num = _gram_ip(gram, basis[i], basis[j])
            for k in range(j):
                num -= mu[j][k] * mu[i][k] * bstar[k]
            if bstar[j] == 0:
                raise ValueError("Gram form is not positive definite on the basis")
            mu[i][j] = num / bstar[j]
        norm = _gram_ip(gram, basis[i], basis[i])
        for k in range(i):
            norm -= mu[i][k] ** 2 * bstar[k]
        bstar[i] = norm
        if norm <= 0:
            raise ValueError("Gram form is not positive definite on the basis")
    return mu, bstar


def lll_reduce(basis, gram, delta: Fraction = Fraction(3, 4)):
    """LLL-reduce integer row vectors under an exact rational Gram form.

    Returns a new list of integer vectors spanning the same lattice.
    """
    b = [list(map(int, v)) for v in basis]
    n = len(b)
    if n <= 1:
        return b
    k = 1
    while k < n:
        mu, bstar = _gso(b, gram)
        for j in range(k - 1, -1, -1):
            r = _round_nearest(mu[k][j])
            if r:
                b[k] = [x - r * y for x, y in zip(b[k], b[j])]
                mu, bstar = _gso(b, gram)
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            k = max(k - 1, 1)
    return b


def identity_gram(vectors):
    """Gram matrix of row vectors under the standard dot product."""
    n = len(vectors[0])
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = Fraction(1)
    return g


# ---------------------------------------------------------------------------
# Rational Gaussian elimination helpers
# ---------------------------------------------------------------------------

def row_reduce(rows):
    """Reduced row-echelon form over the rationals; returns (rref, pivots)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def in_row_span(rows, target) -> bool:
    """True when target is a rational linear combination of the rows."""
    if not rows:
        return all(Fraction(t) == 0 for t in target)
    base, _ = row_reduce(rows)
    aug, _ = row_reduce(base + [list(map(Fraction, target))])
    return len(aug) == len(base)


def solve_in_row_span(rows, target):
    """Coefficients lam with sum(lam_i * rows_i) == target, or None."""
    if not rows:
        return None
    ncols = len(rows[0])
    aug = [[Fraction(rows[i][c]) for i in range(len(rows))] for c in range(ncols)]
    for c in range(ncols):
        aug[c].append(Fraction(target[c]))
    red, pivots = row_reduce(aug)
    nvars = len(rows)
    for row in red:
        if all(x == 0 for x in row[:nvars]) and row[nvars] != 0:
            return None
    lam = [Fraction(0)] * nvars
    for idx, c in enumerate(pivots):
        if c < nvars:
            lam[c] = red[idx][nvars]
    # verify (free variables set to zero)
    for c in range(ncols):
        s = sum(lam[i] * Fraction(rows[i][c]) for i in range(nvars))
        if s != Fraction(target[c]):
            return None
    return lam
