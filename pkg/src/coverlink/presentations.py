"""Finitely presented group engine.

Words, presentations, coset enumeration (HLT Todd-Coxeter with optional
lookahead), the word problem in finite quotients, Reidemeister-Schreier
subgroup presentations, homomorphism checking and abelianization.

Coset numbering is deterministic: cosets are numbered by first appearance
during the enumeration, and the surviving coset of a coincidence is always
the smaller number, so identical inputs produce identical tables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    LimitExceeded,
    MissingImage,
    ParseError,
    TableMismatch,
    UnknownGenerator,
)
from .intmat import smith_diagonal

DEFAULT_MAX_COSETS = 10**6

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_TOKEN_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


# ---------------------------------------------------------------------------
# Words


class Word:
    """Freely reduced word in named generators.

    Stored as syllables (name, exponent) with nonzero exponents and no two
    adjacent syllables sharing a name; the empty word is the identity.
    """

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple[str, int]] = ()):
        stack: list[tuple[str, int]] = []
        for name, exp in letters:
            if exp == 0:
                continue
            if stack and stack[-1][0] == name:
                merged = stack[-1][1] + exp
                stack.pop()
                if merged:
                    stack.append((name, merged))
            else:
                stack.append((name, exp))
        object.__setattr__(self, "letters", tuple(stack))

    def __setattr__(self, *args):  # immutable
        raise AttributeError("Word is immutable")

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse token syntax: whitespace-separated `name` or `name^k`."""
        letters = []
        for tok in text.split():
            m = _TOKEN_RE.match(tok)
            if not m:
                raise ParseError(f"bad word token {tok!r}")
            name, exp = m.group(1), m.group(2)
            k = 1 if exp is None else int(exp)
            if k == 0:
                raise ParseError(f"zero exponent in token {tok!r}")
            letters.append((name, k))
        return cls(letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word((name, -exp) for name, exp in reversed(self.letters))

    def __pow__(self, k: int) -> "Word":
        if k == 0:
            return Word()
        base = self if k > 0 else self.inverse()
        return Word(base.letters * abs(k))

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def length(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def expand(self):
        """Yield (name, +1/-1) one letter at a time."""
        for name, exp in self.letters:
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield name, step

    def exponent_sum(self, name: str) -> int:
        return sum(e for n, e in self.letters if n == name)

    def generator_names(self) -> set[str]:
        return {n for n, _ in self.letters}

    def __str__(self) -> str:
        return " ".join(n if e == 1 else f"{n}^{e}" for n, e in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def substitute(word: Word, images: Mapping[str, Word]) -> Word:
    """Apply a generator substitution to a word."""
    out = Word()
    for name, exp in word.letters:
        if name not in images:
            raise MissingImage(f"no image for generator {name!r}")
        out = out * (images[name] ** exp)
    return out


# ---------------------------------------------------------------------------
# Presentations


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        seen = set()
        for g in self.generators:
            if not _NAME_RE.match(g):
                raise ParseError(f"bad generator name {g!r}")
            if g in seen:
                raise ParseError(f"duplicate generator {g!r}")
            seen.add(g)
        for rel in self.relators:
            for name in rel.generator_names():
                if name not in seen:
                    raise UnknownGenerator(
                        f"relator {rel} uses undeclared generator {name!r}")

    def check_word(self, word: Word) -> None:
        for name in word.generator_names():
            if name not in self.generators:
                raise UnknownGenerator(f"unknown generator {name!r}")

    def __str__(self) -> str:
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {' '.join(self.generators)} | {rels} >"


def parse_presentation(text: str) -> GroupPresentation:
    """Parse the line-based presentation format.

    One `gens:` line declares the generators; each `rel:` line declares a
    relator in word token syntax.  `#` starts a comment.
    """
    generators: tuple[str, ...] | None = None
    relators: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("gens:"):
            if generators is not None:
                raise ParseError(f"line {lineno}: duplicate gens: line")
            names = line[len("gens:"):].split()
            generators = tuple(names)
        elif line.startswith("rel:"):
            relators.append(Word.parse(line[len("rel:"):]))
        else:
            raise ParseError(f"line {lineno}: expected gens: or rel:")
    if generators is None:
        raise ParseError("missing gens: line")
    return GroupPresentation(generators, tuple(relators))


def format_presentation(pres: GroupPresentation) -> str:
    lines = ["gens: " + " ".join(pres.generators)]
    lines += [f"rel: {rel}" for rel in pres.relators]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Coset tables


@dataclass(frozen=True)
class AbelianGroupInvariants:
    """Invariant factors (each >= 2, each dividing the next) plus free rank."""

    invariant_factors: tuple[int, ...]
    free_rank: int

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors",
                           tuple(self.invariant_factors))
        for a in self.invariant_factors:
            if a < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisor chain")
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for a in self.invariant_factors:
            n *= a
        return n

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z{a}" for a in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class CosetTable:
    """Closed permutation action of the generators on cosets.

    `perms[k]` is the permutation of {0..cosets-1} induced by generator
    `generators[k]` acting on the right; coset 0 is the subgroup itself.
    """

    generators: tuple[str, ...]
    perms: tuple[tuple[int, ...], ...]
    subgroup_generators: tuple[Word, ...] = ()

    @property
    def cosets(self) -> int:
        return len(self.perms[0]) if self.perms else 1

    @property
    def is_regular(self) -> bool:
        return not self.subgroup_generators

    @cached_property
    def _gen_index(self) -> dict[str, int]:
        return {g: k for k, g in enumerate(self.generators)}

    @cached_property
    def _inverse_perms(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for perm in self.perms:
            inv = [0] * len(perm)
            for i, j in enumerate(perm):
                inv[j] = i
            out.append(tuple(inv))
        return tuple(out)

    def trace(self, coset: int, word: Word) -> int:
        idx = self._gen_index
        perms = self.perms
        inv = self._inverse_perms
        c = coset
        for name, step in word.expand():
            k = idx.get(name)
            if k is None:
                raise UnknownGenerator(f"unknown generator {name!r}")
            c = perms[k][c] if step > 0 else inv[k][c]
        return c

    def word_permutation(self, word: Word) -> tuple[int, ...]:
        return tuple(self.trace(c, word) for c in range(self.cosets))

    def transversal_words(self) -> list[Word]:
        """Schreier transversal by breadth-first search from coset 0."""
        d = self.cosets
        reps: list[Word | None] = [None] * d
        reps[0] = Word()
        queue = [0]
        while queue:
            c = queue.pop(0)
            for k, name in enumerate(self.generators):
                for step, perm in ((1, self.perms[k]), (-1, self._inverse_perms[k])):
                    nxt = perm[c]
                    if reps[nxt] is None:
                        reps[nxt] = reps[c] * Word([(name, step)])
                        queue.append(nxt)
        missing = [c for c, w in enumerate(reps) if w is None]
        if missing:
            raise TableMismatch(f"table is not transitive: unreachable cosets {missing}")
        return reps  # type: ignore[return-value]

    def validate(self, pres: GroupPresentation) -> None:
        """Check this table is a closed table for `pres` and its subgroup."""
        if self.generators != pres.generators:
            raise TableMismatch("generator lists differ")
        n = self.cosets
        for perm in self.perms:
            if sorted(perm) != list(range(n)):
                raise TableMismatch("generator action is not a permutation")
        for rel in pres.relators:
            if self.word_permutation(rel) != tuple(range(n)):
                raise TableMismatch(f"relator {rel} does not fix every coset")
        for w in self.subgroup_generators:
            if self.trace(0, w) != 0:
                raise TableMismatch(f"subgroup generator {w} moves coset 0")
        self.transversal_words()  # transitivity


# ---------------------------------------------------------------------------
# Todd-Coxeter enumeration (HLT, optional lookahead on overflow)

STRATEGIES = ("hlt", "hlt-lookahead")


class _NeedsSpace(Exception):
    pass


class _Enumerator:
    def __init__(self, ngens, relator_paths, subgroup_paths, max_cosets, lookahead):
        self.ngens = ngens
        self.ncols = 2 * ngens
        self.relators = relator_paths
        self.subgroup = subgroup_paths
        self.max_cosets = max_cosets
        self.lookahead = lookahead
        self.table: list[list[int | None]] = []
        self.p: list[int] = []
        self.live = 0
        self.alpha = 0
        self._new_coset()

    # union-find over coset numbers; the smaller number always survives
    def rep(self, c: int) -> int:
        p = self.p
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def _new_coset(self) -> int:
        if self.live >= self.max_cosets:
            raise _NeedsSpace
        n = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(n)
        self.live += 1
        return n

    def _get(self, c: int, col: int) -> int | None:
        v = self.table[c][col]
        return None if v is None else self.rep(v)

    def _set(self, c: int, col: int, d: int) -> None:
        cur = self.table[c][col]
        if cur is not None and self.rep(cur) != d:
            self._coincide(self.rep(cur), d)
            return
        self.table[c][col] = d
        back = self.table[d][col ^ 1]
        if back is not None and self.rep(back) != c:
            self.table[d][col ^ 1] = c
            self._coincide(self.rep(back), c)
        else:
            self.table[d][col ^ 1] = c

    def _define(self, c: int, col: int) -> int:
        n = self._new_coset()
        self.table[c][col] = n
        self.table[n][col ^ 1] = c
        return n

    def _coincide(self, a: int, b: int) -> None:
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            a, b = self.rep(a), self.rep(b)
            if a == b:
                continue
            if a > b:
                a, b = b, a
            self.p[b] = a
            self.live -= 1
            rowa, rowb = self.table[a], self.table[b]
            for col in range(self.ncols):
                d = rowb[col]
                if d is None:
                    continue
                d = self.rep(d)
                e = rowa[col]
                if e is None:
                    rowa[col] = d
                else:
                    e = self.rep(e)
                    if e != d:
                        queue.append((d, e))

    def _scan(self, alpha: int, path: list[int], fill: bool) -> None:
        f, i = alpha, 0
        b, j = alpha, len(path) - 1
        while True:
            while i <= j:
                nxt = self._get(f, path[i])
                if nxt is None:
                    break
                f, i = nxt, i + 1
            if i > j:
                if f != b:
                    self._coincide(f, b)
                return
            while j >= i:
                nxt = self._get(b, path[j] ^ 1)
                if nxt is None:
                    break
                b, j = nxt, j - 1
            if j < i:
                if f != b:
                    self._coincide(f, b)
                return
            if i == j:
                self._set(f, path[i], b)
                return
            if not fill:
                return
            self._define(f, path[i])

    def _lookahead_pass(self) -> bool:
        before = self.live
        for c in range(len(self.table)):
            if self.rep(c) != c:
                continue
            for path in self.relators:
                self._scan(c, path, fill=False)
                if self.rep(c) != c:
                    break
        return self.live < before

    def _compact(self) -> None:
        mapping: dict[int, int] = {}
        old_alpha = self.alpha
        new_alpha = 0
        for old in range(len(self.table)):
            if self.rep(old) == old:
                mapping[old] = len(mapping)
                if old < old_alpha:
                    new_alpha += 1
        newtab = []
        for old in range(len(self.table)):
            if self.rep(old) != old:
                continue
            row = self.table[old]
            newtab.append([None if v is None else mapping[self.rep(v)] for v in row])
        self.table = newtab
        self.p = list(range(len(newtab)))
        self.live = len(newtab)
        self.alpha = new_alpha

    def run(self) -> None:
        while True:
            try:
                for path in self.subgroup:
                    self._scan(self.rep(0), path, fill=True)
                while self.alpha < len(self.table):
                    a = self.alpha
                    if self.rep(a) != a:
                        self.alpha += 1
                        continue
                    for path in self.relators:
                        self._scan(a, path, fill=True)
                        if self.rep(a) != a:
                            break
                    if self.rep(a) == a:
                        row = self.table[a]
                        for col in range(self.ncols):
                            if row[col] is None:
                                self._define(a, col)
                    self.alpha += 1
                return
            except _NeedsSpace:
                if not (self.lookahead and self._lookahead_pass()):
                    raise LimitExceeded(self.max_cosets) from None
                self._compact()

    def result_perms(self) -> list[tuple[int, ...]]:
        self._compact()
        perms = []
        for g in range(self.ngens):
            col = 2 * g
            perms.append(tuple(row[col] for row in self.table))
        return perms


def _word_path(word: Word, gen_index: Mapping[str, int]) -> list[int]:
    path = []
    for name, step in word.expand():
        k = gen_index.get(name)
        if k is None:
            raise UnknownGenerator(f"unknown generator {name!r}")
        path.append(2 * k + (0 if step > 0 else 1))
    return path


def enumerate_cosets(pres: GroupPresentation,
                     subgroup: Iterable[Word] = (),
                     max_cosets: int = DEFAULT_MAX_COSETS,
                     strategy: str = "hlt-lookahead") -> CosetTable:
    """Todd-Coxeter coset enumeration over the given subgroup.

    Returns a closed, complete table whose coset count is the exact index
    of the subgroup.  Raises LimitExceeded when more than `max_cosets`
    cosets would be alive at once; that outcome is inconclusive.
    """
    if strategy not in STRATEGIES:
        raise ParseError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if max_cosets < 1:
        raise ParseError("max_cosets must be positive")
    subgroup = tuple(subgroup)
    gen_index = {g: k for k, g in enumerate(pres.generators)}
    rel_paths = [_word_path(r, gen_index) for r in pres.relators if r]
    sub_paths = []
    for w in subgroup:
        pres.check_word(w)
        if w:
            sub_paths.append(_word_path(w, gen_index))
    enum = _Enumerator(len(pres.generators), rel_paths, sub_paths,
                       max_cosets, lookahead=(strategy == "hlt-lookahead"))
    enum.run()
    table = CosetTable(pres.generators, tuple(enum.result_perms()), subgroup)
    table.validate(pres)
    return table


# ---------------------------------------------------------------------------
# Derived operations


def word_is_trivial(table: CosetTable, word: Word) -> bool:
    """Word problem in the finite group presented by a regular table."""
    if not table.is_regular:
        raise TableMismatch("word_is_trivial needs a regular (trivial-subgroup) table")
    n = table.cosets
    return all(table.trace(c, word) == c for c in range(n))


def subgroup_generates(table: CosetTable) -> bool:
    return table.cosets == 1


def check_homomorphism(src: GroupPresentation,
                       dst_table: CosetTable,
                       images: Mapping[str, Word]) -> bool:
    """True iff mapping the generators by `images` kills every relator of
    `src` in the finite group presented by the regular table `dst_table`."""
    if not dst_table.is_regular:
        raise TableMismatch("check_homomorphism needs a regular table")
    for g in src.generators:
        if g not in images:
            raise MissingImage(f"no image for generator {g!r}")
    for rel in src.relators:
        if not word_is_trivial(dst_table, substitute(rel, images)):
            return False
    return True


def abelianization(pres: GroupPresentation) -> AbelianGroupInvariants:
    """Invariant factors of the abelianized group (Smith normal form of the
    relator exponent matrix, exact integer arithmetic)."""
    gens = pres.generators
    rows = [[rel.exponent_sum(g) for g in gens] for rel in pres.relators]
    diag = smith_diagonal(rows) if rows else []
    factors = tuple(d for d in diag if d > 1)
    return AbelianGroupInvariants(factors, len(gens) - len(diag))


def reidemeister_schreier(pres: GroupPresentation,
                          table: CosetTable) -> GroupPresentation:
    """Presentation of the subgroup the table was enumerated over.

    Schreier generators come from the non-tree edges of a breadth-first
    spanning tree of the coset graph; each relator of `pres` is rewritten
    once per coset.
    """
    table.validate(pres)
    d = table.cosets
    ngens = len(pres.generators)
    perms = table.perms
    inv_perms = table._inverse_perms

    # BFS spanning tree; a tree edge is recorded as its positive version
    tree: set[tuple[int, int]] = set()
    seen = [False] * d
    seen[0] = True
    queue = [0]
    while queue:
        c = queue.pop(0)
        for k in range(ngens):
            for step in (1, -1):
                nxt = perms[k][c] if step > 0 else inv_perms[k][c]
                if not seen[nxt]:
                    seen[nxt] = True
                    tree.add((c, k) if step > 0 else (nxt, k))
                    queue.append(nxt)

    schreier: dict[tuple[int, int], str] = {}
    for c in range(d):
        for k in range(ngens):
            if (c, k) not in tree:
                schreier[(c, k)] = f"s{len(schreier) + 1}"

    def rewrite(start: int, word: Word) -> Word:
        letters = []
        cur = start
        for name, step in word.expand():
            k = pres.generators.index(name)
            if step > 0:
                edge = (cur, k)
                cur = perms[k][cur]
                sign = 1
            else:
                cur = inv_perms[k][cur]
                edge = (cur, k)
                sign = -1
            gen = schreier.get(edge)
            if gen is not None:
                letters.append((gen, sign))
        return Word(letters)

    relators = []
    for rel in pres.relators:
        for c in range(d):
            w = rewrite(c, rel)
            if w:
                relators.append(w)
    names = tuple(schreier[key] for key in sorted(schreier))
    return GroupPresentation(names, tuple(relators))
