"""Exact arithmetic in the integral group ring of a finite group.

A FiniteGroup is built from a closed regular coset table; its elements are
the cosets, numbered as the table numbers them, so group-ring matrices are
reproducible integer matrices.

Convention: regular_matrix(a)[h][g] is the coefficient of g*h^{-1} in a,
the pattern in which linking numbers of lifts tabulate (translating both
lifts by h shifts the group label by h^{-1}).  The ring product is ordered
so that regular_matrix is multiplicative:

    multiply(a, b)[x] = sum of a_s * b_t over pairs with t*s = x.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import GroupMismatch, ParseError, TableMismatch, UnknownGenerator
from .presentations import (
    CosetTable,
    GroupPresentation,
    Word,
    enumerate_cosets,
)


class FiniteGroup:
    """Multiplication table of a finite group, with word evaluation."""

    __slots__ = ("presentation", "order", "mult", "inv", "words", "names",
                 "generator_elements")

    identity = 0

    def __init__(self, presentation: GroupPresentation, table: CosetTable):
        if not table.is_regular:
            raise TableMismatch("a finite group needs a regular coset table")
        table.validate(presentation)
        self.presentation = presentation
        d = table.cosets
        self.order = d
        words = table.transversal_words()
        self.words = tuple(words)
        self.names = tuple(str(w) for w in words)
        # mult[i][j] = index of g_i * g_j (coset i traced along the word of j)
        mult = []
        for i in range(d):
            mult.append(tuple(table.trace(i, words[j]) for j in range(d)))
        self.mult = tuple(mult)
        inv = [0] * d
        for i in range(d):
            inv[i] = self.mult[i].index(0)
        self.inv = tuple(inv)
        self.generator_elements = tuple(
            table.trace(0, Word([(g, 1)])) for g in presentation.generators)

    @classmethod
    def from_presentation(cls, pres: GroupPresentation,
                          max_cosets: int = 10**6) -> "FiniteGroup":
        return cls(pres, enumerate_cosets(pres, (), max_cosets))

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls.from_presentation(GroupPresentation((), ()))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        if n < 1:
            raise ParseError("cyclic group order must be positive")
        pres = GroupPresentation(("a",), (Word([("a", n)]),))
        return cls.from_presentation(pres)

    def element_of(self, word: Word) -> int:
        """Element index represented by a word in the presentation generators."""
        gens = self.presentation.generators
        mult, inv = self.mult, self.inv
        idx = 0
        for name, step in word.expand():
            try:
                k = gens.index(name)
            except ValueError:
                raise UnknownGenerator(f"unknown generator {name!r}") from None
            e = self.generator_elements[k]
            idx = mult[idx][e] if step > 0 else mult[idx][inv[e]]
        return idx

    def element_order(self, idx: int) -> int:
        n = 1
        cur = idx
        while cur != 0:
            cur = self.mult[idx][cur]
            n += 1
        return n

    def word_of(self, idx: int) -> Word:
        return self.words[idx]

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, {self.presentation})"


class GroupRingElement:
    """Finite integer combination of elements of a FiniteGroup.

    Coefficients are stored sparsely; zero coefficients are never kept.
    Treat instances as immutable.
    """

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs: dict[int, int] | None = None):
        self.group = group
        clean = {}
        if coeffs:
            for idx, c in coeffs.items():
                if not 0 <= idx < group.order:
                    raise GroupMismatch(f"element index {idx} out of range")
                if c:
                    clean[idx] = c
        self.coeffs = clean

    # -- constructors --

    @classmethod
    def zero(cls, group: FiniteGroup) -> "GroupRingElement":
        return cls(group)

    @classmethod
    def unit(cls, group: FiniteGroup) -> "GroupRingElement":
        return cls(group, {0: 1})

    @classmethod
    def from_element(cls, group: FiniteGroup, idx: int, coeff: int = 1):
        return cls(group, {idx: coeff})

    @classmethod
    def from_word(cls, group: FiniteGroup, word: Word, coeff: int = 1):
        return cls(group, {group.element_of(word): coeff})

    @classmethod
    def from_pairs(cls, group: FiniteGroup,
                   pairs: Iterable[Sequence]) -> "GroupRingElement":
        """Decode the JSON pair encoding [[coeff, "word"], ...]."""
        coeffs: dict[int, int] = {}
        for pair in pairs:
            if len(pair) != 2:
                raise ParseError(f"bad element pair {pair!r}")
            c, text = pair
            if not isinstance(c, int) or isinstance(c, bool):
                raise ParseError(f"coefficient {c!r} is not an integer")
            idx = group.element_of(parse_element_word(group, text))
            coeffs[idx] = coeffs.get(idx, 0) + c
        return cls(group, coeffs)

    def to_pairs(self) -> list[list]:
        return [[c, self.group.names[idx]]
                for idx, c in sorted(self.coeffs.items())]

    # -- ring structure --

    def _check(self, other: "GroupRingElement") -> None:
        if self.group is not other.group:
            raise GroupMismatch("operands belong to different groups")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            out[idx] = out.get(idx, 0) + c
        return GroupRingElement(self.group, out)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.group, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def scale(self, k: int) -> "GroupRingElement":
        return GroupRingElement(self.group, {i: k * c for i, c in self.coeffs.items()})

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        mult = self.group.mult
        out: dict[int, int] = {}
        for s, cs in self.coeffs.items():
            for t, ct in other.coeffs.items():
                k = mult[t][s]
                out[k] = out.get(k, 0) + cs * ct
        return GroupRingElement(self.group, out)

    def involute(self) -> "GroupRingElement":
        inv = self.group.inv
        return GroupRingElement(self.group,
                                {inv[i]: c for i, c in self.coeffs.items()})

    def augment(self) -> int:
        return sum(self.coeffs.values())

    def regular_matrix(self) -> list[list[int]]:
        """Integer matrix of the element acting on lifts: entry (h, g) is
        the coefficient of g*h^{-1}."""
        d = self.group.order
        mult = self.group.mult
        mat = [[0] * d for _ in range(d)]
        for u, c in self.coeffs.items():
            mu = mult[u]
            for h in range(d):
                mat[h][mu[h]] += c
        return mat

    def identity_coefficient(self) -> int:
        return self.coeffs.get(0, 0)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupRingElement)
                and self.group is other.group
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.group), tuple(sorted(self.coeffs.items()))))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for idx, c in sorted(self.coeffs.items()):
            name = self.group.names[idx] or "e"
            parts.append(f"{c}*{name}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"GroupRingElement({self})"


def parse_element_word(group: FiniteGroup, text: str) -> Word:
    """Parse a word string from JSON; "" always means the identity, and a
    bare "e" does too unless e is a declared generator."""
    stripped = text.strip()
    if not stripped:
        return Word()
    if stripped == "e" and "e" not in group.presentation.generators:
        return Word()
    return Word.parse(stripped)
