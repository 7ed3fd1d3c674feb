"""Planar diagram codes, Wirtinger presentations, longitudes and surgery.

Conventions, fixed once and used consistently:

  * A crossing is a 4-tuple (a, b, c, d) of edge labels: a is the incoming
    under-edge and b, c, d follow counterclockwise, so the under-strand
    exits at c and the over-strand occupies b and d.
  * Each component is an ordered cycle of edge labels giving the traversal
    order; edges are the segments between consecutive crossing passages.
    A component with no crossings is a single edge appearing in no tuple.
  * The over-strand direction at a crossing is recovered from the edge
    cycles (every edge starts at exactly one passage and ends at exactly
    one).  A crossing is positive when the over-strand runs from the d
    slot to the b slot, i.e. when a quarter turn counterclockwise carries
    the over direction to the under direction.
  * Wirtinger arcs are the classes of edges glued through over-passages.
    A right-handed (positive) crossing contributes the relator
    g_out = g_over * g_in * g_over^-1, conjugation by the positive power
    of the over-arc generator.
  * The 0-framed longitude of a component is the product of over-arc
    generators (to the sign of the crossing) at its under-passages, taken
    in traversal order from the lowest edge, corrected by base^-writhe.
  * Surgery with framing n on a component adds the relator
    meridian^n * longitude, the meridian being the arc of the component's
    lowest-numbered edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import MalformedPd, ParseError
from .presentations import GroupPresentation, Word

Crossing = tuple[int, int, int, int]


@dataclass(frozen=True)
class PdCode:
    crossings: tuple[Crossing, ...]
    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "crossings",
                           tuple(tuple(c) for c in self.crossings))
        object.__setattr__(self, "components",
                           tuple(tuple(c) for c in self.components))
        self._validate()

    def _validate(self):
        counts: dict[int, int] = {}
        for cr in self.crossings:
            if len(cr) != 4:
                raise MalformedPd(f"crossing {cr} is not a 4-tuple")
            for e in cr:
                counts[e] = counts.get(e, 0) + 1
        bad = [e for e, k in counts.items() if k != 2]
        if bad:
            raise MalformedPd(f"edges {sorted(bad)} do not appear exactly twice")
        seen: set[int] = set()
        for comp in self.components:
            if not comp:
                raise MalformedPd("empty component")
            for e in comp:
                if e in seen:
                    raise MalformedPd(f"edge {e} listed in two components")
                seen.add(e)
        missing = set(counts) - seen
        if missing:
            raise MalformedPd(f"edges {sorted(missing)} not assigned to a component")
        for comp in self.components:
            if len(comp) > 1 and any(e not in counts for e in comp):
                raise MalformedPd(
                    f"component {comp} mixes crossing edges with free edges")
        for a, _, c, _ in self.crossings:
            if self._next(a) != c:
                raise MalformedPd(
                    f"under-strand {a}->{c} breaks the component cycle")

    @cached_property
    def _next_map(self) -> dict[int, int]:
        nxt = {}
        for comp in self.components:
            for i, e in enumerate(comp):
                nxt[e] = comp[(i + 1) % len(comp)]
        return nxt

    def _next(self, e: int) -> int:
        return self._next_map[e]

    def component_of(self, e: int) -> int:
        for i, comp in enumerate(self.components):
            if e in comp:
                return i
        raise MalformedPd(f"edge {e} not in any component")

    @cached_property
    def _over_directions(self) -> tuple[tuple[int, int], ...]:
        """Per crossing, the (over_in, over_out) edge pair.

        Solved by constraint propagation: each edge is consumed by exactly
        one passage and emitted by exactly one, and under-passages pin the
        a and c slots.
        """
        appearances: dict[int, list[tuple[int, int]]] = {}
        for ci, cr in enumerate(self.crossings):
            for slot, e in enumerate(cr):
                appearances.setdefault(e, []).append((ci, slot))
        # role[(ci, slot)] = "in" / "out"
        role: dict[tuple[int, int], str] = {}
        for ci, cr in enumerate(self.crossings):
            role[(ci, 0)] = "in"
            role[(ci, 2)] = "out"
        changed = True
        while changed:
            changed = False
            # complementary roles across the two appearances of an edge
            for e, apps in appearances.items():
                if len(apps) != 2:
                    continue
                r0, r1 = role.get(apps[0]), role.get(apps[1])
                if r0 and not r1:
                    role[apps[1]] = "out" if r0 == "in" else "in"
                    changed = True
                elif r1 and not r0:
                    role[apps[0]] = "out" if r1 == "in" else "in"
                    changed = True
            # complementary roles across the over pair of a crossing
            for ci in range(len(self.crossings)):
                rb, rd = role.get((ci, 1)), role.get((ci, 3))
                if rb and not rd:
                    role[(ci, 3)] = "out" if rb == "in" else "in"
                    changed = True
                elif rd and not rb:
                    role[(ci, 1)] = "out" if rd == "in" else "in"
                    changed = True
        out = []
        for ci, (a, b, c, d) in enumerate(self.crossings):
            rb = role.get((ci, 1))
            if rb is None:
                raise MalformedPd(
                    f"crossing {(a, b, c, d)}: over-strand orientation is ambiguous")
            over_in, over_out = (b, d) if rb == "in" else (d, b)
            if self._next(over_in) != over_out:
                raise MalformedPd(
                    f"crossing {(a, b, c, d)}: over-strand {over_in}->{over_out} "
                    "breaks the component cycle")
            out.append((over_in, over_out))
        return tuple(out)

    @cached_property
    def signs(self) -> tuple[int, ...]:
        """+1 when the over-strand enters at the d slot, else -1."""
        out = []
        for (a, b, c, d), (over_in, _) in zip(self.crossings, self._over_directions):
            out.append(1 if over_in == d else -1)
        return tuple(out)

    @cached_property
    def _arc_rep(self) -> dict[int, int]:
        """Union-find of edges glued through over-passages; the class
        representative is the minimal edge label."""
        parent: dict[int, int] = {e: e for comp in self.components for e in comp}

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        for over_in, over_out in self._over_directions:
            r1, r2 = find(over_in), find(over_out)
            if r1 != r2:
                parent[max(r1, r2)] = min(r1, r2)
        return {e: find(e) for e in parent}

    def arc_of(self, e: int) -> int:
        return self._arc_rep[e]

    def arcs(self) -> list[int]:
        return sorted(set(self._arc_rep.values()))

    def writhe(self, comp_index: int) -> int:
        """Sum of signs over self-crossings of the component."""
        comp = set(self.components[comp_index])
        w = 0
        for (a, _, _, _), (over_in, _), s in zip(
                self.crossings, self._over_directions, self.signs):
            if a in comp and over_in in comp:
                w += s
        return w


def _arc_generator(rep: int) -> str:
    return f"g{rep}"


def wirtinger(pd: PdCode) -> GroupPresentation:
    """Wirtinger presentation: one generator per arc, one conjugation
    relator per crossing."""
    gens = tuple(_arc_generator(r) for r in pd.arcs())
    relators = []
    for (a, b, c, d), (over_in, _), s in zip(
            pd.crossings, pd._over_directions, pd.signs):
        g_in = _arc_generator(pd.arc_of(a))
        g_out = _arc_generator(pd.arc_of(c))
        g_over = _arc_generator(pd.arc_of(over_in))
        rel = Word([(g_over, -s), (g_in, 1), (g_over, s), (g_out, -1)])
        if rel:
            relators.append(rel)
    return GroupPresentation(gens, tuple(relators))


def longitude_word(pd: PdCode, comp_index: int) -> Word:
    """0-framed longitude of a component in the Wirtinger generators."""
    if not 0 <= comp_index < len(pd.components):
        raise MalformedPd(f"no component {comp_index}")
    comp = pd.components[comp_index]
    start = comp.index(min(comp))
    # under-passages indexed by their incoming under-edge
    under_at: dict[int, tuple[int, int]] = {}
    for (a, _, _, _), (over_in, _), s in zip(
            pd.crossings, pd._over_directions, pd.signs):
        under_at[a] = (pd.arc_of(over_in), s)
    letters = []
    for i in range(len(comp)):
        e = comp[(start + i) % len(comp)]
        hit = under_at.get(e)
        if hit is not None:
            over_rep, s = hit
            letters.append((_arc_generator(over_rep), s))
    base = _arc_generator(pd.arc_of(comp[start]))
    letters.append((base, -pd.writhe(comp_index)))
    return Word(letters)


@dataclass(frozen=True)
class SurgeryDescription:
    """A PD code with one integer framing per component."""

    pd: PdCode
    framings: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "framings", tuple(self.framings))
        if len(self.framings) != len(self.pd.components):
            raise MalformedPd("need exactly one framing per component")


def surgery_group(sd: SurgeryDescription) -> GroupPresentation:
    """Fundamental group of the surgered manifold: the Wirtinger
    presentation plus meridian^n * longitude per component."""
    pres = wirtinger(sd.pd)
    relators = list(pres.relators)
    for i, n in enumerate(sd.framings):
        comp = sd.pd.components[i]
        meridian = _arc_generator(sd.pd.arc_of(min(comp)))
        rel = Word([(meridian, n)]) * longitude_word(sd.pd, i)
        if rel:
            relators.append(rel)
    return GroupPresentation(pres.generators, tuple(relators))


# ---------------------------------------------------------------------------
# File format


def parse_pd_text(text: str) -> tuple[PdCode, dict[int, int]]:
    """Parse the PD file format.

    `comp:` lines list each component's edges in traversal order,
    `X a b c d` lines give crossings, and optional `frame: <component>
    <integer>` lines attach framings.  Returns the code and the framing
    map (empty when no frame lines are present).
    """
    components: list[tuple[int, ...]] = []
    crossings: list[Crossing] = []
    framings: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("comp:"):
                components.append(tuple(int(t) for t in line[5:].split()))
            elif line.startswith("frame:"):
                ci, n = (int(t) for t in line[6:].split())
                if ci in framings:
                    raise ParseError(f"line {lineno}: duplicate framing")
                framings[ci] = n
            elif line.startswith("X"):
                vals = tuple(int(t) for t in line[1:].split())
                if len(vals) != 4:
                    raise ParseError(f"line {lineno}: X needs 4 edge labels")
                crossings.append(vals)
            else:
                raise ParseError(f"line {lineno}: expected comp:, frame: or X")
        except ValueError:
            raise ParseError(f"line {lineno}: bad integer") from None
    pd = PdCode(tuple(crossings), tuple(components))
    for ci in framings:
        if not 0 <= ci < len(components):
            raise ParseError(f"framing for unknown component {ci}")
    return pd, framings


def parse_surgery_text(text: str) -> SurgeryDescription:
    pd, framings = parse_pd_text(text)
    missing = [i for i in range(len(pd.components)) if i not in framings]
    if missing:
        raise ParseError(f"missing framings for components {missing}")
    return SurgeryDescription(pd, tuple(framings[i] for i in range(len(pd.components))))


def format_pd_text(sd: SurgeryDescription | PdCode) -> str:
    if isinstance(sd, SurgeryDescription):
        pd, framings = sd.pd, {i: n for i, n in enumerate(sd.framings)}
    else:
        pd, framings = sd, {}
    lines = ["comp: " + " ".join(str(e) for e in comp) for comp in pd.components]
    lines += [f"frame: {i} {n}" for i, n in sorted(framings.items())]
    lines += ["X " + " ".join(str(e) for e in cr) for cr in pd.crossings]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Stock diagrams


def unknot_pd() -> PdCode:
    """Crossingless round circle."""
    return PdCode((), ((1,),))


def kink_pd(sign: int) -> PdCode:
    """One-crossing unknot diagram with a kink of the given sign."""
    if sign == 1:
        return PdCode(((1, 1, 2, 2),), ((1, 2),))
    if sign == -1:
        return PdCode(((1, 2, 2, 1),), ((1, 2),))
    raise MalformedPd("kink sign must be +1 or -1")


def unlink_pd(n: int) -> PdCode:
    """Split diagram of an n-component unlink."""
    return PdCode((), tuple((i + 1,) for i in range(n)))


def hopf_link_pd() -> PdCode:
    """Positive Hopf link: two crossings, linking number +1."""
    return PdCode(((2, 4, 1, 3), (4, 2, 3, 1)), ((1, 2), (3, 4)))


def trefoil_pd() -> PdCode:
    """Right-handed trefoil as the closure of a positive 2-braid."""
    return PdCode(((3, 1, 4, 6), (1, 5, 2, 4), (5, 3, 6, 2)),
                  ((1, 2, 3, 4, 5, 6),))
