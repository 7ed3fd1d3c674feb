"""Independent reference implementations used only by the tests.

These deliberately share no code with the library.  The Smith normal form
oracle computes the rank and a nonzero maximal minor by plain Gaussian
elimination over Fraction, then runs the textbook naive reduction (always
pivot on the first nonzero entry, no pivot-size optimization) on residues
modulo that minor: every invariant factor divides any nonzero maximal
minor, so the modular clamp makes the naive strategy terminate where the
unreduced version would grow entries exponentially.  The divisor chain is
restored afterwards by gcd/lcm folding rather than in-loop repair.
"""

from fractions import Fraction
from math import gcd


def rational_rank_and_minor(mat):
    """(rank, |nonzero rank x rank minor|) via Gaussian elimination over
    Fraction with row/column pivot search in reading order."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    a = [[Fraction(v) for v in row] for row in mat]
    det = Fraction(1)
    k = 0
    while k < min(m, n):
        pos = next(((i, j) for i in range(k, m) for j in range(k, n)
                    if a[i][j]), None)
        if pos is None:
            break
        i, j = pos
        if i != k:
            a[k], a[i] = a[i], a[k]
        if j != k:
            for row in a:
                row[k], row[j] = row[j], row[k]
        det *= a[k][k]
        for r in range(k + 1, m):
            f = a[r][k] / a[k][k]
            if f:
                for c in range(k, n):
                    a[r][c] -= f * a[k][c]
        k += 1
    if k == 0:
        return 0, 1
    # the product of the pivots is the determinant of the selected
    # rank x rank submatrix, an integer
    assert det.denominator == 1 and det != 0
    return k, abs(det.numerator)


def _sym(v, modulus):
    v %= modulus
    if 2 * v > modulus:
        v -= modulus
    return v


def naive_smith_invariants(mat):
    """(invariant_factors >= 2, free_rank) by first-nonzero-pivot row and
    column reduction on residues modulo a maximal minor."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    rank, modulus = rational_rank_and_minor(mat)
    if rank == 0:
        return (), n
    if modulus == 1:
        return (), n - rank
    a = [[_sym(v, modulus) for v in row] for row in mat]
    diag = []
    t = 0
    while t < min(m, n) and len(diag) < rank:
        pos = next(((i, j) for i in range(t, m) for j in range(t, n)
                    if a[i][j]), None)
        if pos is None:
            break
        i, j = pos
        a[t], a[i] = a[i], a[t]
        if j != t:
            for row in a:
                row[t], row[j] = row[j], row[t]
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for c in range(t, n):
                        a[i][c] = _sym(a[i][c] - q * a[t][c], modulus)
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for r in range(t, m):
                        a[r][j] = _sym(a[r][j] - q * a[r][t], modulus)
                    if a[t][j]:
                        for r in range(t, m):
                            a[r][t], a[r][j] = a[r][j], a[r][t]
                        done = False
            if done:
                break
        diag.append(gcd(a[t][t], modulus))
        t += 1
    diag.extend([modulus] * (rank - len(diag)))
    # normalize into a divisor chain by repeated gcd/lcm folding
    changed = True
    while changed:
        changed = False
        for k in range(len(diag) - 1):
            x, y = diag[k], diag[k + 1]
            if y % x:
                g = gcd(x, y)
                diag[k], diag[k + 1] = g, x * y // g
                changed = True
    factors = tuple(d for d in diag if d > 1)
    return factors, n - rank


def naive_product_coeffs(group, a, b):
    """Dense convolution for the ring product used by the library:
    coefficient of t*s collects a[s] * b[t]."""
    d = group.order
    out = [0] * d
    for s in range(d):
        if not a.get(s):
            continue
        for t in range(d):
            if not b.get(t):
                continue
            out[group.mult[t][s]] += a[s] * b[t]
    return {k: v for k, v in enumerate(out) if v}


def fraction_determinant(mat):
    n = len(mat)
    a = [[Fraction(v) for v in row] for row in mat]
    det = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def jacobi_signature(mat):
    """Signature from the signs of leading principal minors; valid when
    all leading minors are nonzero (true for definite forms)."""
    n = len(mat)
    minors = [Fraction(1)]
    for k in range(1, n + 1):
        sub = [row[:k] for row in mat[:k]]
        d = fraction_determinant(sub)
        assert d != 0, "jacobi oracle needs nonzero leading minors"
        minors.append(d)
    sig = 0
    for k in range(1, n + 1):
        sig += 1 if minors[k] * minors[k - 1] > 0 else -1
    return sig
