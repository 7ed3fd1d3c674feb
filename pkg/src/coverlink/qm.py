"""The circle-bundle family Q_m and its presentation chain.

Q_m is the orientable circle bundle over the projective plane with twisted
Euler class m = -4p-3.  Its fundamental group G_m has order 4|m| and three
useful presentations:

  * the surgery presentation on generators x, y, z read off the surgery
    diagram (five relators, with the p-dependent twist substituted as
    z_p = (xy)^p z),
  * the two-generator reduction after eliminating x,
  * the normal form  < y, z | z^2 = y^{4p+3}, z^-1 y z = y^-1 >.

The eta curves eta_0 = y z y^-1 z^-1 and eta_1 = y^2 represent the same
class, and together with z they generate the whole group.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagrams import PdCode, SurgeryDescription
from .presentations import GroupPresentation, Word


@dataclass(frozen=True)
class QmInstance:
    """Parameter of the family; m = -4p-3 is forced, hence always odd."""

    p: int

    @property
    def m(self) -> int:
        return -4 * self.p - 3


def qm_presentation(inst: QmInstance) -> GroupPresentation:
    """Normal form: generators y, z with z^2 = y^{4p+3} and z^-1 y z = y^-1."""
    p = inst.p
    rels = (
        Word([("z", 2), ("y", -(4 * p + 3))]),
        Word([("z", -1), ("y", 1), ("z", 1), ("y", 1)]),
    )
    return GroupPresentation(("y", "z"), rels)


def qm_surgery_presentation(inst: QmInstance) -> GroupPresentation:
    """Five-relator presentation read off the surgery diagram.

    The link-complement relators are written in x, y and the twisted
    generator z_p = (xy)^p z; the two surgery curves contribute xy (the
    0-framed curve) and z y^{p+1} z y^{-3p-2} (the -1-framed longitude).
    """
    p = inst.p
    x, y, z = Word([("x", 1)]), Word([("y", 1)]), Word([("z", 1)])
    zp = (x * y) ** p * z
    rels = (
        y ** -1 * x * (y * zp * y ** -1 * zp.inverse()),
        y * zp * x ** -1 * zp.inverse(),
        y * zp.inverse() * y ** -1 * x ** -1 * zp * x,
        x * y,
        z * y ** (p + 1) * z * y ** (-3 * p - 2),
    )
    return GroupPresentation(("x", "y", "z"), rels)


def qm_reduced_presentation(inst: QmInstance) -> GroupPresentation:
    """Two-generator intermediate form obtained by eliminating x = y^-1."""
    p = inst.p
    y, z = Word([("y", 1)]), Word([("z", 1)])
    rels = (
        y ** -2 * (y * z * y ** -1 * z ** -1),
        y * z * y * z ** -1,
        z * y ** (p + 1) * z * y ** (-3 * p - 2),
    )
    return GroupPresentation(("y", "z"), rels)


def elimination_images() -> dict[str, Word]:
    """Images certifying the surgery presentation maps onto the normal form
    (the 0-surgery relator xy makes x redundant)."""
    return {"x": Word([("y", -1)]), "y": Word([("y", 1)]), "z": Word([("z", 1)])}


def inclusion_images() -> dict[str, Word]:
    """Images for the reverse direction, y and z mapping to themselves."""
    return {"y": Word([("y", 1)]), "z": Word([("z", 1)])}


def eta_words(inst: QmInstance) -> tuple[Word, Word]:
    """The curves eta_0 = y z y^-1 z^-1 and eta_1 = y^2 (independent of p)."""
    eta0 = Word([("y", 1), ("z", 1), ("y", -1), ("z", -1)])
    eta1 = Word([("y", 2)])
    return eta0, eta1


def expected_order(inst: QmInstance) -> int:
    return 4 * abs(inst.m)


def qm_surgery_diagram() -> SurgeryDescription:
    """Surgery diagram of Q_{-3} (the p = 0 member of the family).

    J is the closure of the positive 2-braid with one crossing (edges 1-6,
    framing -1) and K is the axis circle grabbing both strands (edges 7-10,
    framing 0, linking number 2 with J).  For other p the twist
    substitution z -> (xy)^p z is applied algebraically instead of
    redrawing the diagram; see qm_surgery_presentation.
    """
    pd = PdCode(
        ((6, 8, 1, 7),    # front of K over the left strand
         (3, 9, 4, 8),    # front of K over the right strand
         (10, 2, 7, 1),   # left strand over the back of K
         (9, 5, 10, 4),   # right strand over the back of K
         (5, 3, 6, 2)),   # the braid crossing of J
        ((1, 2, 3, 4, 5, 6), (7, 8, 9, 10)),
    )
    return SurgeryDescription(pd, (-1, 0))


def qm_diagram_images() -> dict[str, Word]:
    """Arc-generator images identifying the diagram's surgery group with
    the surgery presentation at p = 0: x and y are the meridians of the
    two braid strands at the bottom of the diagram, z the meridian of the
    front arc of K.  (The K surgery relator of the diagram is literally
    g4 g1, the relation xy = 1.)"""
    return {"x": Word([("g4", 1)]), "y": Word([("g1", 1)]), "z": Word([("g7", 1)])}
