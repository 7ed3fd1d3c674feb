import pytest

from coverlink.diagrams import (
    PdCode,
    SurgeryDescription,
    format_pd_text,
    hopf_link_pd,
    kink_pd,
    longitude_word,
    parse_pd_text,
    parse_surgery_text,
    surgery_group,
    trefoil_pd,
    unknot_pd,
    unlink_pd,
    wirtinger,
)
from coverlink.errors import LimitExceeded, MalformedPd, ParseError
from coverlink.presentations import Word, abelianization, enumerate_cosets


def linking_number(pd, i, j):
    lam = longitude_word(pd, i)
    other = {pd.arc_of(e) for e in pd.components[j]}
    return sum(lam.exponent_sum(f"g{r}") for r in other)


# ---------------------------------------------------------------------------
# validation


def test_edge_count_validation():
    with pytest.raises(MalformedPd):
        PdCode(((1, 2, 3, 4),), ((1, 2, 3, 4),))  # each edge appears once


def test_component_coverage():
    with pytest.raises(MalformedPd):
        PdCode(((1, 1, 2, 2),), ((1,),))  # 2 missing
    with pytest.raises(MalformedPd):
        PdCode(((1, 1, 2, 2),), ((1, 2), (1,)))  # duplicated


def test_under_strand_must_follow_cycle():
    # under passage 1 -> 2 contradicts the cycle order (2, 1) ... which is
    # the same cycle; break it with a 3-edge component instead
    with pytest.raises(MalformedPd):
        PdCode(((1, 3, 2, 3),), ((1, 2), (3,)))


def test_signs_of_kinks():
    assert kink_pd(1).signs == (1,)
    assert kink_pd(-1).signs == (-1,)
    with pytest.raises(MalformedPd):
        kink_pd(0)


def test_trefoil_is_positive():
    assert trefoil_pd().signs == (1, 1, 1)
    assert trefoil_pd().writhe(0) == 3


# ---------------------------------------------------------------------------
# wirtinger presentations


def test_trefoil_knot_group():
    pres = wirtinger(trefoil_pd())
    assert len(pres.generators) == 3  # one arc per crossing
    assert len(pres.relators) == 3
    ab = abelianization(pres)
    assert ab.free_rank == 1 and ab.invariant_factors == ()


def test_one_crossing_unknot():
    for sign in (1, -1):
        pres = wirtinger(kink_pd(sign))
        ab = abelianization(pres)
        assert ab.free_rank == 1 and ab.invariant_factors == ()


def test_split_unlink():
    ab = abelianization(wirtinger(unlink_pd(2)))
    assert ab.free_rank == 2 and ab.invariant_factors == ()


def test_hopf_link_group_is_z2():
    pres = wirtinger(hopf_link_pd())
    ab = abelianization(pres)
    assert ab.free_rank == 2
    # two commuting generators: the group is abelian of rank 2
    table = enumerate_cosets(pres, [Word.parse(f"{g}^3") for g in pres.generators])
    assert table.cosets == 9


# ---------------------------------------------------------------------------
# longitudes


def test_trefoil_longitude_is_zero_framed():
    pd = trefoil_pd()
    lam = longitude_word(pd, 0)
    own = {pd.arc_of(e) for e in pd.components[0]}
    assert sum(lam.exponent_sum(f"g{r}") for r in own) == 0


def test_hopf_linking_number():
    assert linking_number(hopf_link_pd(), 0, 1) == 1
    assert linking_number(hopf_link_pd(), 1, 0) == 1


def test_split_longitude_empty():
    assert longitude_word(unlink_pd(2), 0) == Word()


def test_kink_longitude_writhe_corrected():
    assert longitude_word(kink_pd(1), 0) == Word()
    assert longitude_word(kink_pd(-1), 0) == Word()


def test_longitude_bad_component():
    with pytest.raises(MalformedPd):
        longitude_word(unknot_pd(), 3)


# ---------------------------------------------------------------------------
# surgery


def test_lens_space_surgery():
    sd = SurgeryDescription(unknot_pd(), (4,))
    ab = abelianization(surgery_group(sd))
    assert ab.invariant_factors == (4,) and ab.free_rank == 0


def test_zero_surgery_on_unknot():
    ab = abelianization(surgery_group(SurgeryDescription(unknot_pd(), (0,))))
    assert ab.free_rank == 1 and ab.invariant_factors == ()


def test_kink_surgery_matches_round_unknot():
    # the same manifold from a kinked diagram: writhe correction at work
    for sign in (1, -1):
        sd = SurgeryDescription(kink_pd(sign), (4,))
        ab = abelianization(surgery_group(sd))
        assert ab.invariant_factors == (4,) and ab.free_rank == 0


def test_trefoil_plus_one_surgery():
    sd = SurgeryDescription(trefoil_pd(), (1,))
    pres = surgery_group(sd)
    ab = abelianization(pres)
    assert ab.invariant_factors == () and ab.free_rank == 0
    for strategy in ("hlt", "hlt-lookahead"):
        table = enumerate_cosets(pres, (), 10**6, strategy)
        assert table.cosets == 120


def test_trefoil_minus_one_is_not_small():
    sd = SurgeryDescription(trefoil_pd(), (-1,))
    with pytest.raises(LimitExceeded):
        enumerate_cosets(surgery_group(sd), (), max_cosets=2000)


def test_framings_must_cover_components():
    with pytest.raises(MalformedPd):
        SurgeryDescription(hopf_link_pd(), (1,))


# ---------------------------------------------------------------------------
# file format


def test_pd_file_round_trip():
    sd = SurgeryDescription(trefoil_pd(), (1,))
    text = format_pd_text(sd)
    assert parse_surgery_text(text) == sd
    pd, framings = parse_pd_text(format_pd_text(hopf_link_pd()))
    assert pd == hopf_link_pd() and framings == {}


def test_pd_parse_errors():
    with pytest.raises(ParseError):
        parse_pd_text("X 1 2 3")
    with pytest.raises(ParseError):
        parse_pd_text("comp: 1 two")
    with pytest.raises(ParseError):
        parse_surgery_text("comp: 1\n")  # missing framing
    with pytest.raises(ParseError):
        parse_pd_text("junk")
