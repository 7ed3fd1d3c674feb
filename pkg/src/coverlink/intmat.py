"""Exact integer matrix routines: Smith diagonal, determinants, row bases.

Everything here is arbitrary-precision integer arithmetic.  No floats.
"""

from __future__ import annotations

Matrix = list[list[int]]


def rank_and_pivot_minor(mat) -> tuple[int, int]:
    """Exact rank plus the absolute value of one nonzero maximal minor,
    by fraction-free (Bareiss) elimination with full pivoting.

    Intermediate entries are minors of the input, so they stay within the
    Hadamard bound instead of exploding.
    """
    a = [list(row) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    prev = 1
    k = 0
    while k < min(m, n):
        pivot = next(((i, j) for i in range(k, m) for j in range(k, n)
                      if a[i][j]), None)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
        akk = a[k][k]
        for i in range(k + 1, m):
            aik = a[i][k]
            ai, ak = a[i], a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
        k += 1
    return k, abs(prev) if k else 1


def smith_diagonal(mat) -> list[int]:
    """Nonzero diagonal of the Smith normal form of an integer matrix.

    Returns the positive invariant factors d_1 | d_2 | ... | d_r where r is
    the rank; zero rows/columns are implicit.  Every invariant factor
    divides any nonzero maximal minor D, so after a Bareiss rank pass the
    reduction runs over symmetric residues mod D, which keeps every entry
    bounded by D (direct integer reduction can grow entries exponentially).
    Pivot selection on the residues: minimal absolute value, ties broken by
    lowest row then lowest column, so the reduction path is deterministic.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    rank, modulus = rank_and_pivot_minor(mat)
    if rank == 0:
        return []
    if modulus == 1:
        return [1] * rank
    a = [[_sym_mod(v, modulus) for v in row] for row in mat]
    diag: list[int] = []
    t = 0
    while t < min(m, n) and len(diag) < rank:
        pivot = _min_abs_entry(a, t, m, n)
        if pivot is None:
            break
        bi, bj = pivot
        if bi != t:
            a[t], a[bi] = a[bi], a[t]
        if bj != t:
            for row in a:
                row[t], row[bj] = row[bj], row[t]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        _clear_cross(a, t, m, n, modulus)
        # divisibility: the pivot must divide every remaining entry
        offender = _find_nondivisible(a, t, m, n)
        if offender is not None:
            at, ao = a[t], a[offender]
            for j in range(t, n):
                at[j] = _sym_mod(at[j] + ao[j], modulus)
            continue  # redo step t with the merged row
        diag.append(_gcd(a[t][t], modulus))
        t += 1
    # residues that vanished mod D are invariant factors equal to D itself
    diag.extend([modulus] * (rank - len(diag)))
    for x, y in zip(diag, diag[1:]):
        assert y % x == 0, "invariant factors must form a divisor chain"
    return diag


def _sym_mod(v: int, modulus: int) -> int:
    v %= modulus
    if 2 * v > modulus:
        v -= modulus
    return v


def _gcd(a: int, b: int) -> int:
    a = abs(a)
    while b:
        a, b = b, a % b
    return a


def _min_abs_entry(a, t, m, n):
    best = None
    best_val = 0
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            v = row[j]
            if v and (best is None or abs(v) < best_val):
                best = (i, j)
                best_val = abs(v)
                if best_val == 1:
                    return best
    return best


def _clear_cross(a, t, m, n, modulus):
    """Zero out column t below the pivot and row t to its right, keeping
    every entry in the symmetric residue range mod `modulus`."""
    while True:
        piv = a[t][t]
        # column: replace the pivot whenever a remainder beats it
        restarted = False
        for i in range(t + 1, m):
            v = a[i][t]
            if v == 0:
                continue
            q = v // piv
            if q:
                ai, at = a[i], a[t]
                for j in range(t, n):
                    ai[j] = _sym_mod(ai[j] - q * at[j], modulus)
            if a[i][t]:
                a[t], a[i] = a[i], a[t]
                restarted = True
                break
        if restarted:
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
            continue
        # row: same game with column operations
        restarted = False
        for j in range(t + 1, n):
            v = a[t][j]
            if v == 0:
                continue
            q = v // piv
            if q:
                for i in range(t, m):
                    a[i][j] = _sym_mod(a[i][j] - q * a[i][t], modulus)
            if a[t][j]:
                for i in range(m):
                    a[i][t], a[i][j] = a[i][j], a[i][t]
                restarted = True
                break
        if restarted:
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
            continue
        return


def _find_nondivisible(a, t, m, n):
    piv = a[t][t]
    if piv == 1:
        return None
    for i in range(t + 1, m):
        row = a[i]
        for j in range(t + 1, n):
            if row[j] % piv:
                return i
    return None


def determinant(mat) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai, ak = a[i], a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def row_lattice_basis(rows) -> list[list[int]]:
    """Basis of the integer lattice spanned by the given rows.

    Integer row operations only, so the returned rows span exactly the
    same lattice (not just the same rational span).
    """
    if not rows:
        return []
    n = len(rows[0])
    work = [list(r) for r in rows if any(r)]
    basis: list[list[int]] = []
    for col in range(n):
        while True:
            nz = [r for r in work if r[col]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            pc = p[col]
            for r in nz[1:]:
                q = r[col] // pc
                if q:
                    for j in range(col, n):
                        r[j] -= q * p[j]
        piv = next((r for r in work if r[col]), None)
        if piv is not None:
            basis.append(piv)
            work = [r for r in work if r is not piv and any(r)]
        if not work:
            break
    return basis


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(a) -> Matrix:
    return [list(col) for col in zip(*a)]


def is_symmetric(a) -> bool:
    return all(row == list(col) for row, col in zip(a, zip(*a)))
