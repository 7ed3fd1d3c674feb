"""Integral symmetric bilinear forms: evenness, signature, stabilization,
hyperbolic decomposition.

Everything is exact: determinants are fraction-free, signatures come from
symmetric Gaussian elimination over the rationals, and a hyperbolic
decomposition is only returned after the base change has been verified by
integer matrix arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    Degenerate,
    NonzeroSignature,
    NotEven,
    NotHermitian,
    NotUnimodular,
    ParseError,
    SearchExhausted,
    SignatureObstructed,
)
from .groupring import GroupRingElement
from .intmat import determinant, identity, matmul, row_lattice_basis, transpose


@dataclass(frozen=True)
class IntegerSymmetricForm:
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "matrix",
                           tuple(tuple(row) for row in self.matrix))
        n = len(self.matrix)
        for row in self.matrix:
            if len(row) != n:
                raise NotHermitian("matrix is not square")
        for i in range(n):
            for j in range(i + 1, n):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise NotHermitian(f"entries ({i},{j}) and ({j},{i}) differ")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{v:3d}" for v in row) for row in self.matrix)


def hyperbolic_form() -> IntegerSymmetricForm:
    return IntegerSymmetricForm(((0, 1), (1, 0)))


def e8_form() -> IntegerSymmetricForm:
    """The positive definite even unimodular rank-8 form (E8 Cartan matrix)."""
    return IntegerSymmetricForm((
        (2, -1, 0, 0, 0, 0, 0, 0),
        (-1, 2, -1, 0, 0, 0, 0, 0),
        (0, -1, 2, -1, 0, 0, 0, 0),
        (0, 0, -1, 2, -1, 0, 0, 0),
        (0, 0, 0, -1, 2, -1, 0, -1),
        (0, 0, 0, 0, -1, 2, -1, 0),
        (0, 0, 0, 0, 0, -1, 2, 0),
        (0, 0, 0, 0, -1, 0, 0, 2),
    ))


def direct_sum(*forms: IntegerSymmetricForm) -> IntegerSymmetricForm:
    size = sum(f.rank for f in forms)
    out = [[0] * size for _ in range(size)]
    offset = 0
    for f in forms:
        for i, row in enumerate(f.matrix):
            for j, v in enumerate(row):
                out[offset + i][offset + j] = v
        offset += f.rank
    return IntegerSymmetricForm(tuple(tuple(r) for r in out))


def negated(f: IntegerSymmetricForm) -> IntegerSymmetricForm:
    return IntegerSymmetricForm(tuple(tuple(-v for v in row) for row in f.matrix))


BUILTIN_FORMS = {"H": hyperbolic_form, "E8": e8_form}


def augment_form(matrix) -> IntegerSymmetricForm:
    """Entrywise augmentation of a Hermitian matrix over a group ring.

    Accepts a TwistedLinkingMatrix or a plain sequence of sequences of
    GroupRingElement; the result is a symmetric integer form whose diagonal
    is the downstairs framing vector.
    """
    lam = getattr(matrix, "lam", matrix)
    rows = []
    for row in lam:
        rows.append(tuple(el.augment() for el in row))
    n = len(rows)
    for i in range(n):
        if len(rows[i]) != n:
            raise NotHermitian("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise NotHermitian("augmented matrix is not symmetric; "
                                   "input was not Hermitian")
    if not hasattr(matrix, "lam"):
        for i, row in enumerate(lam):
            for j, el in enumerate(row):
                if not isinstance(el, GroupRingElement):
                    raise NotHermitian("entries must be group ring elements")
                if lam[j][i] != el.involute():
                    raise NotHermitian(
                        f"entries ({i},{j}) and ({j},{i}) are not "
                        "involution-conjugate")
    return IntegerSymmetricForm(tuple(rows))


def is_even(F: IntegerSymmetricForm) -> bool:
    return all(F.matrix[i][i] % 2 == 0 for i in range(F.rank))


def is_unimodular(F: IntegerSymmetricForm) -> bool:
    return abs(determinant(F.rows())) == 1


def signature(F: IntegerSymmetricForm) -> int:
    """Number of positive minus number of negative eigenvalues, computed by
    exact symmetric elimination over the rationals."""
    if determinant(F.rows()) == 0:
        raise Degenerate("signature needs a nondegenerate form")
    n = F.rank
    a = [[Fraction(v) for v in row] for row in F.matrix]
    sig = 0
    i = 0
    while i < n:
        # prefer a nonzero diagonal pivot
        k = next((k for k in range(i, n) if a[k][k] != 0), None)
        if k is not None:
            if k != i:
                a[i], a[k] = a[k], a[i]
                for row in a:
                    row[i], row[k] = row[k], row[i]
            d = a[i][i]
            sig += 1 if d > 0 else -1
            for r in range(i + 1, n):
                f = a[r][i] / d
                if f:
                    for c in range(i, n):
                        a[r][c] -= f * a[i][c]
                    for c in range(i, n):
                        a[c][r] = a[r][c]
            i += 1
            continue
        # all remaining diagonal entries are zero: split off a 2x2 block,
        # which contributes one positive and one negative eigenvalue
        pair = next(((k, l) for k in range(i, n) for l in range(k + 1, n)
                     if a[k][l] != 0), None)
        if pair is None:
            raise Degenerate("zero block in a supposedly nondegenerate form")
        k, l = pair
        for src, dst in ((k, i), (l, i + 1)):
            if src != dst:
                a[src], a[dst] = a[dst], a[src]
                for row in a:
                    row[src], row[dst] = row[dst], row[src]
        q = a[i][i + 1]
        for r in range(i + 2, n):
            u, v = a[r][i], a[r][i + 1]
            if u or v:
                for c in range(i, n):
                    a[r][c] -= (v / q) * a[i][c] + (u / q) * a[i + 1][c]
                for c in range(i, n):
                    a[c][r] = a[r][c]
        i += 2
    return sig


def e8_stabilization(F: IntegerSymmetricForm, category: str) -> int:
    """Number of rank-8 (topological) or rank-16 (smooth) definite even
    blocks needed to cancel the signature.

    Topological spin stabilizers exist in every multiple of 8; smooth ones
    only in multiples of 16, so a smooth request with signature 8 mod 16
    is obstructed.
    """
    if category not in ("topological", "smooth"):
        raise ParseError(f"unknown category {category!r}")
    if not is_even(F):
        raise NotEven("stabilization needs an even form")
    if not is_unimodular(F):
        raise NotUnimodular("stabilization needs a unimodular form")
    step = 8 if category == "topological" else 16
    sig = signature(F)
    if sig % step:
        raise SignatureObstructed(
            f"signature {sig} is not a multiple of {step} ({category})")
    return abs(sig) // step


@dataclass(frozen=True)
class HyperbolicDecomposition:
    """Unimodular base change U with U^T F U a sum of hyperbolic planes."""

    basis_change: tuple[tuple[int, ...], ...]
    blocks: int

    def verify(self, F: IntegerSymmetricForm) -> None:
        u = [list(r) for r in self.basis_change]
        if abs(determinant(u)) != 1:
            raise NotUnimodular("basis change is not unimodular")
        got = matmul(matmul(transpose(u), F.rows()), u)
        want = direct_sum(*([hyperbolic_form()] * self.blocks)).rows() \
            if self.blocks else []
        if got != want:
            raise NonzeroSignature("basis change does not hyperbolize the form")


DEFAULT_SEARCH_BOUND = 4
DEFAULT_MAX_CANDIDATES = 500_000


def _l1_shell_vectors(rank: int, shell: int, coord_cap: int):
    """All integer vectors of l1 norm `shell`, coordinates bounded by
    `coord_cap`, in a fixed deterministic order (large leading positive
    coordinates first)."""
    vec = [0] * rank

    def rec(pos: int, budget: int):
        if pos == rank - 1:
            if abs(budget) <= coord_cap:
                for val in (budget, -budget) if budget else (0,):
                    vec[pos] = val
                    yield tuple(vec)
            vec[pos] = 0
            return
        top = min(budget, coord_cap)
        for mag in range(top, -1, -1):
            rest = budget - mag
            for val in ((mag, -mag) if mag else (0,)):
                vec[pos] = val
                yield from rec(pos + 1, rest)
        vec[pos] = 0

    yield from rec(0, shell)


def _find_isotropic(gram, coord_cap, max_candidates):
    """First primitive isotropic vector in the deterministic search order."""
    from math import gcd
    rank = len(gram)
    examined = 0
    for shell in range(1, rank * coord_cap + 1):
        for v in _l1_shell_vectors(rank, shell, coord_cap):
            examined += 1
            if examined > max_candidates:
                raise SearchExhausted(
                    f"no isotropic vector within {examined - 1} candidates")
            g = 0
            for x in v:
                g = gcd(g, x)
            if g != 1:
                continue
            total = 0
            for i, vi in enumerate(v):
                if vi:
                    row = gram[i]
                    total += vi * sum(row[j] * v[j] for j in range(rank) if v[j])
            if total == 0:
                return list(v)
    raise SearchExhausted("isotropic search space exhausted")


def _complete_hyperbolic_pair(gram, v):
    """Given isotropic primitive v, produce isotropic w with <v, w> = 1."""
    rank = len(gram)
    c = [sum(gram[i][j] * v[j] for j in range(rank)) for i in range(rank)]

    def ext_gcd(a, b):
        if b == 0:
            return abs(a), (1 if a >= 0 else -1), 0
        g, x, y = ext_gcd(b, a % b)
        return g, y, x - (a // b) * y

    g = 0
    w = [0] * rank
    for i, ci in enumerate(c):
        if ci == 0:
            continue
        g2, x, y = ext_gcd(g, ci)
        w = [x * wk for wk in w]
        w[i] += y
        g = g2
    assert g == 1, "unimodular form must pair a primitive vector to 1"
    qw = sum(w[i] * gram[i][j] * w[j] for i in range(rank) for j in range(rank))
    k = qw // 2  # even form, so this is exact
    return [w[i] - k * v[i] for i in range(rank)]


def hyperbolic_basis(F: IntegerSymmetricForm,
                     search_bound: int = DEFAULT_SEARCH_BOUND,
                     max_candidates: int = DEFAULT_MAX_CANDIDATES
                     ) -> HyperbolicDecomposition:
    """Split an even unimodular signature-zero form into hyperbolic planes.

    Isotropic vectors are found by a bounded deterministic search in
    shells of increasing l1 norm (coordinates capped at 8 * search_bound);
    exhausting the budget raises SearchExhausted, which is inconclusive.
    The returned decomposition is verified exactly before being returned.
    """
    if not is_even(F):
        raise NotEven("hyperbolic decomposition needs an even form")
    if not is_unimodular(F):
        raise NotUnimodular("hyperbolic decomposition needs a unimodular form")
    if signature(F) != 0:
        raise NonzeroSignature("hyperbolic decomposition needs signature zero")
    if F.rank < 2:
        raise ParseError("rank must be at least 2")
    coord_cap = 8 * search_bound

    cols: list[list[int]] = []
    basis = identity(F.rank)  # rows: current sublattice basis, original coords
    gram = F.rows()
    while len(basis) > 0:
        v_loc = _find_isotropic(gram, coord_cap, max_candidates)
        w_loc = _complete_hyperbolic_pair(gram, v_loc)
        r = len(basis)
        v_glob = [sum(v_loc[k] * basis[k][t] for k in range(r))
                  for t in range(F.rank)]
        w_glob = [sum(w_loc[k] * basis[k][t] for k in range(r))
                  for t in range(F.rank)]
        cols.append(v_glob)
        cols.append(w_glob)
        # orthogonal complement of the pair inside the current lattice
        pair_v = [sum(gram[i][j] * v_loc[j] for j in range(r)) for i in range(r)]
        pair_w = [sum(gram[i][j] * w_loc[j] for j in range(r)) for i in range(r)]
        projected = []
        for i in range(r):
            row = [0] * r
            row[i] = 1
            for t in range(r):
                row[t] -= pair_w[i] * v_loc[t] + pair_v[i] * w_loc[t]
            projected.append(row)
        local_basis = row_lattice_basis(projected)
        new_basis = [[sum(lb[k] * basis[k][t] for k in range(r))
                      for t in range(F.rank)] for lb in local_basis]
        mid = matmul(local_basis, gram)
        gram = matmul(mid, transpose(local_basis))
        basis = new_basis

    u = transpose(cols)  # columns of the base change are the found vectors
    decomp = HyperbolicDecomposition(tuple(tuple(r) for r in u), len(cols) // 2)
    decomp.verify(F)
    return decomp
