"""Twisted linking calculus for framed links in a finitely covered manifold.

A clasp program builds a link from a 0-clasped configuration with fixed
downstairs framings.  Clasp(i, j, s, g) pushes a feeler from component i to
component j along the loop g and adds a clasp of sign s: the (i, j) entry
of the twisted linking matrix gains s*g, the (j, i) entry gains s*g^-1.
SelfClasp(i, s, g) (g != identity) clasps a component with itself along g;
since the linking of a lift with its g-translate equals the linking with
its g^-1-translate, both coefficients move by s (a single coefficient when
g has order two).  The downstairs framing never changes: the identity
coefficient of the diagonal (the upstairs framing n') is always rebalanced
so that

    n = n' + sum of the non-identity diagonal coefficients.

Hermitian symmetry and that framing identity hold after every single
instruction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BadIndex,
    FramingInconsistent,
    GroupMismatch,
    IdentitySelfClasp,
    MuMismatch,
    NotHermitian,
    ParseError,
)
from .groupring import FiniteGroup, GroupRingElement
from .presentations import AbelianGroupInvariants, Word
from .intmat import smith_diagonal

MuData = tuple[tuple[tuple[int, Word], ...], ...]


@dataclass(frozen=True)
class Clasp:
    i: int
    j: int
    sign: int
    element: Word

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ParseError("clasp sign must be +1 or -1")
        if self.i == self.j:
            raise BadIndex("a clasp joins two distinct components")


@dataclass(frozen=True)
class SelfClasp:
    i: int
    sign: int
    element: Word

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ParseError("clasp sign must be +1 or -1")
        if self.element.is_identity:
            raise IdentitySelfClasp("self-clasp along the identity")


Instruction = Clasp | SelfClasp


@dataclass(frozen=True)
class ClaspProgram:
    n: int
    framings: tuple[int, ...]
    instructions: tuple[Instruction, ...] = ()
    mu: MuData | None = None

    def __post_init__(self):
        object.__setattr__(self, "framings", tuple(self.framings))
        object.__setattr__(self, "instructions", tuple(self.instructions))
        if self.n < 1:
            raise BadIndex("need at least one component")
        if len(self.framings) != self.n:
            raise BadIndex("need one downstairs framing per component")
        for ins in self.instructions:
            idxs = (ins.i, ins.j) if isinstance(ins, Clasp) else (ins.i,)
            for k in idxs:
                if not 0 <= k < self.n:
                    raise BadIndex(f"component index {k} out of range")
        if self.mu is not None and len(self.mu) != self.n:
            raise MuMismatch("need one mu entry per component")


@dataclass(frozen=True)
class TwistedLinkingMatrix:
    """Hermitian matrix of twisted linking numbers over Z[G], together with
    the downstairs framings and an optional quadratic refinement ledger."""

    group: FiniteGroup
    lam: tuple[tuple[GroupRingElement, ...], ...]
    framings: tuple[int, ...]
    mu: tuple[GroupRingElement, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(tuple(row) for row in self.lam))
        object.__setattr__(self, "framings", tuple(self.framings))
        if self.mu is not None:
            object.__setattr__(self, "mu", tuple(self.mu))
        self.validate()

    @property
    def n(self) -> int:
        return len(self.lam)

    def validate(self) -> None:
        n = self.n
        if len(self.framings) != n:
            raise FramingInconsistent("need one framing per component")
        for row in self.lam:
            if len(row) != n:
                raise NotHermitian("matrix is not square")
            for el in row:
                if el.group is not self.group:
                    raise GroupMismatch("matrix entry over a different group")
        for i in range(n):
            for j in range(i, n):
                if self.lam[j][i] != self.lam[i][j].involute():
                    raise NotHermitian(f"entries ({i},{j}) and ({j},{i}) "
                                       "are not involution-conjugate")
        for i in range(n):
            if self.lam[i][i].augment() != self.framings[i]:
                raise FramingInconsistent(
                    f"diagonal {i}: augmentation {self.lam[i][i].augment()} "
                    f"!= downstairs framing {self.framings[i]}")
        if self.mu is not None:
            for i in range(n):
                if self.mu[i].group is not self.group:
                    raise GroupMismatch("mu entry over a different group")
                if self.lam[i][i] != self.mu[i] + self.mu[i].involute():
                    raise MuMismatch(
                        f"diagonal {i} is not mu + involute(mu)")

    def entry(self, i: int, j: int) -> GroupRingElement:
        return self.lam[i][j]


def upstairs_framing(T: TwistedLinkingMatrix, i: int) -> int:
    """Identity coefficient n' of the i-th diagonal entry; satisfies
    n = n' + (sum of non-identity diagonal coefficients)."""
    if not 0 <= i < T.n:
        raise BadIndex(f"component index {i} out of range")
    return T.lam[i][i].identity_coefficient()


def _initial_state(group: FiniteGroup, framings: Sequence[int]):
    n = len(framings)
    return [[dict() if i != j else ({0: framings[i]} if framings[i] else {})
             for j in range(n)] for i in range(n)]


def _bump(d: dict[int, int], key: int, delta: int) -> None:
    v = d.get(key, 0) + delta
    if v:
        d[key] = v
    else:
        d.pop(key, None)


def _apply_one(state, framings, group: FiniteGroup, ins: Instruction) -> None:
    if isinstance(ins, Clasp):
        g = group.element_of(ins.element)
        _bump(state[ins.i][ins.j], g, ins.sign)
        _bump(state[ins.j][ins.i], group.inv[g], ins.sign)
        return
    g = group.element_of(ins.element)
    if g == group.identity:
        raise IdentitySelfClasp(
            f"word {ins.element} is the identity in this group")
    diag = state[ins.i][ins.i]
    ginv = group.inv[g]
    _bump(diag, g, ins.sign)
    if ginv != g:
        _bump(diag, ginv, ins.sign)
    # rebalance n' so the downstairs framing is unchanged
    rest = sum(c for k, c in diag.items() if k != 0)
    _bump(diag, 0, framings[ins.i] - rest - diag.get(0, 0))


def apply_instructions(T: TwistedLinkingMatrix,
                       instructions: Iterable[Instruction]) -> TwistedLinkingMatrix:
    """Apply further clasp instructions to an existing matrix."""
    group = T.group
    n = T.n
    state = [[dict(T.lam[i][j].coeffs) for j in range(n)] for i in range(n)]
    for ins in instructions:
        idxs = (ins.i, ins.j) if isinstance(ins, Clasp) else (ins.i,)
        for k in idxs:
            if not 0 <= k < n:
                raise BadIndex(f"component index {k} out of range")
        _apply_one(state, T.framings, group, ins)
    lam = tuple(tuple(GroupRingElement(group, state[i][j]) for j in range(n))
                for i in range(n))
    return TwistedLinkingMatrix(group, lam, T.framings, T.mu)


def _decode_mu(group: FiniteGroup, mu: MuData) -> tuple[GroupRingElement, ...]:
    out = []
    for entry in mu:
        coeffs: dict[int, int] = {}
        for c, word in entry:
            idx = group.element_of(word)
            coeffs[idx] = coeffs.get(idx, 0) + c
        out.append(GroupRingElement(group, coeffs))
    return tuple(out)


def eval_program(prog: ClaspProgram, group: FiniteGroup) -> TwistedLinkingMatrix:
    """Evaluate a clasp program to its twisted linking matrix.

    Starts from zero off-diagonal entries with the diagonal fixed by the
    downstairs framings, then applies the instructions in order.
    """
    state = _initial_state(group, prog.framings)
    for ins in prog.instructions:
        _apply_one(state, prog.framings, group, ins)
    n = prog.n
    lam = tuple(tuple(GroupRingElement(group, state[i][j]) for j in range(n))
                for i in range(n))
    mu = _decode_mu(group, prog.mu) if prog.mu is not None else None
    return TwistedLinkingMatrix(group, lam, prog.framings, mu)


def lifted_matrix(T: TwistedLinkingMatrix) -> list[list[int]]:
    """Integer matrix of linking numbers between all lifts: the (i, j)
    block is the regular matrix of lam[i][j].  Always symmetric."""
    n, d = T.n, T.group.order
    size = n * d
    out = [[0] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            block = T.lam[i][j].regular_matrix()
            oi, oj = i * d, j * d
            for h in range(d):
                row = out[oi + h]
                brow = block[h]
                for g in range(d):
                    row[oj + g] = brow[g]
    return out


def cover_surgery_homology(T: TwistedLinkingMatrix) -> AbelianGroupInvariants:
    """First homology of the induced cover of the surgered manifold,
    presented by the lifted linking matrix."""
    lifted = lifted_matrix(T)
    diag = smith_diagonal(lifted)
    factors = tuple(x for x in diag if x > 1)
    return AbelianGroupInvariants(factors, len(lifted) - len(diag))


def trivialize_first_row(T: TwistedLinkingMatrix) -> ClaspProgram:
    """Clasp instructions that clear the first row.

    Applying the returned program leaves lam[0][j] = 0 for j != 0 and
    removes every non-identity coefficient of lam[0][0]; the downstairs
    framings are untouched, so the surviving corner is the upstairs
    framing n'.
    """
    group = T.group
    instrs: list[Instruction] = []
    for j in range(1, T.n):
        for idx, c in sorted(T.lam[0][j].coeffs.items()):
            word = group.word_of(idx)
            sign = -1 if c > 0 else 1
            instrs.extend(Clasp(0, j, sign, word) for _ in range(abs(c)))
    inv = group.inv
    for idx, c in sorted(T.lam[0][0].coeffs.items()):
        if idx == group.identity or idx > inv[idx]:
            continue  # identity is rebalanced; count each pair {g, g^-1} once
        word = group.word_of(idx)
        sign = -1 if c > 0 else 1
        instrs.extend(SelfClasp(0, sign, word) for _ in range(abs(c)))
    return ClaspProgram(T.n, T.framings, tuple(instrs))


def realize(group: FiniteGroup,
            matrix: Sequence[Sequence[GroupRingElement]],
            framings: Sequence[int],
            mu: Sequence[GroupRingElement] | None = None) -> ClaspProgram:
    """Clasp program whose evaluation is exactly the given Hermitian matrix.

    Instructions are emitted row-major, elements in index order, positive
    coefficients before negative ones, so the output is deterministic.
    """
    lam = tuple(tuple(row) for row in matrix)
    mu_elems = tuple(mu) if mu is not None else None
    T = TwistedLinkingMatrix(group, lam, tuple(framings), mu_elems)

    instrs: list[Instruction] = []
    inv = group.inv
    for i in range(T.n):
        # diagonal: self-clasps recreate the non-identity coefficients
        for want_positive in (True, False):
            for idx, c in sorted(lam[i][i].coeffs.items()):
                if idx == group.identity or idx > inv[idx]:
                    continue
                if (c > 0) != want_positive:
                    continue
                sign = 1 if c > 0 else -1
                instrs.extend(SelfClasp(i, sign, group.word_of(idx))
                              for _ in range(abs(c)))
        for j in range(i + 1, T.n):
            for want_positive in (True, False):
                for idx, c in sorted(lam[i][j].coeffs.items()):
                    if (c > 0) != want_positive:
                        continue
                    sign = 1 if c > 0 else -1
                    instrs.extend(Clasp(i, j, sign, group.word_of(idx))
                                  for _ in range(abs(c)))
    mu_data = None
    if mu_elems is not None:
        mu_data = tuple(
            tuple((c, group.word_of(idx)) for idx, c in sorted(m.coeffs.items()))
            for m in mu_elems)
    return ClaspProgram(T.n, T.framings, tuple(instrs), mu_data)


# ---------------------------------------------------------------------------
# JSON encodings


def program_to_json(prog: ClaspProgram, group_name: str) -> dict:
    ops = []
    for ins in prog.instructions:
        word = str(ins.element) or "e"
        if isinstance(ins, Clasp):
            ops.append(["clasp", ins.i, ins.j, ins.sign, word])
        else:
            ops.append(["self", ins.i, ins.sign, word])
    doc = {"n": prog.n, "framings": list(prog.framings),
           "group": group_name, "ops": ops}
    if prog.mu is not None:
        doc["mu"] = [[[c, str(w)] for c, w in entry] for entry in prog.mu]
    return doc


def program_from_json(doc: dict) -> tuple[ClaspProgram, str]:
    """Decode a program document; returns the program and the group name."""
    try:
        n = int(doc["n"])
        framings = tuple(int(x) for x in doc["framings"])
        group_name = doc["group"]
        raw_ops = doc.get("ops", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad clasp program document: {exc}") from None
    instrs: list[Instruction] = []
    for op in raw_ops:
        if not op:
            raise ParseError("empty op")
        kind = op[0]
        if kind == "clasp" and len(op) == 5:
            instrs.append(Clasp(int(op[1]), int(op[2]), int(op[3]),
                                _parse_op_word(op[4])))
        elif kind == "self" and len(op) == 4:
            instrs.append(SelfClasp(int(op[1]), int(op[2]),
                                    _parse_op_word(op[3])))
        else:
            raise ParseError(f"bad op {op!r}")
    mu = None
    if "mu" in doc:
        mu = tuple(tuple((int(c), _parse_op_word(w)) for c, w in entry)
                   for entry in doc["mu"])
    return ClaspProgram(n, framings, tuple(instrs), mu), group_name


def _parse_op_word(text) -> Word:
    if not isinstance(text, str):
        raise ParseError(f"expected a word string, got {text!r}")
    stripped = text.strip()
    if not stripped or stripped == "e":
        return Word()
    return Word.parse(stripped)


def matrix_to_json(T: TwistedLinkingMatrix, group_name: str) -> dict:
    doc = {
        "group": group_name,
        "n": T.n,
        "framings": list(T.framings),
        "lambda": [[el.to_pairs() for el in row] for row in T.lam],
    }
    if T.mu is not None:
        doc["mu"] = [m.to_pairs() for m in T.mu]
    return doc


def matrix_from_json(doc: dict, group: FiniteGroup) -> TwistedLinkingMatrix:
    try:
        framings = tuple(int(x) for x in doc["framings"])
        raw = doc["lambda"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad linking matrix document: {exc}") from None
    lam = tuple(tuple(GroupRingElement.from_pairs(group, cell) for cell in row)
                for row in raw)
    mu = None
    if "mu" in doc:
        mu = tuple(GroupRingElement.from_pairs(group, entry)
                   for entry in doc["mu"])
    return TwistedLinkingMatrix(group, lam, framings, mu)
