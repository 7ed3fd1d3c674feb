import pytest

from coverlink.presentations import (
    Word,
    abelianization,
    check_homomorphism,
    enumerate_cosets,
    reidemeister_schreier,
    subgroup_generates,
    word_is_trivial,
)
from coverlink.qm import (
    QmInstance,
    elimination_images,
    eta_words,
    expected_order,
    inclusion_images,
    qm_diagram_images,
    qm_presentation,
    qm_reduced_presentation,
    qm_surgery_diagram,
    qm_surgery_presentation,
)
from coverlink.diagrams import longitude_word, surgery_group, wirtinger


def w(text):
    return Word.parse(text)


def test_instance_euler_class():
    assert QmInstance(1).m == -7
    assert QmInstance(0).m == -3
    assert QmInstance(-1).m == 1
    assert QmInstance(2).m % 2 == 1


def test_normal_form_relators():
    pres = qm_presentation(QmInstance(1))
    assert pres.generators == ("y", "z")
    assert pres.relators == (w("z^2 y^-7"), w("z^-1 y z y"))


@pytest.mark.parametrize("p,order", [(0, 12), (1, 28), (-1, 4)])
def test_group_orders(p, order):
    inst = QmInstance(p)
    assert expected_order(inst) == order
    assert enumerate_cosets(qm_presentation(inst)).cosets == order


def test_surgery_relators_at_p0():
    pres = qm_surgery_presentation(QmInstance(0))
    assert pres.generators == ("x", "y", "z")
    assert pres.relators == (
        w("y^-1 x y z y^-1 z^-1"),
        w("y z x^-1 z^-1"),
        w("y z^-1 y^-1 x^-1 z x"),
        w("x y"),
        w("z y z y^-2"),
    )


def test_twist_substitution_shows_up():
    # at p = 2 the twisted generator (xy)^2 z appears expanded in relator 2
    pres = qm_surgery_presentation(QmInstance(2))
    assert pres.relators[1] == w("y x y x y z x^-1 z^-1 y^-1 x^-1 y^-1 x^-1")


@pytest.mark.parametrize("p", range(-1, 6))
def test_all_presentations_abelianize_to_z4(p):
    inst = QmInstance(p)
    for pres in (qm_presentation(inst), qm_reduced_presentation(inst),
                 qm_surgery_presentation(inst)):
        ab = abelianization(pres)
        assert ab.invariant_factors == (4,) and ab.free_rank == 0


@pytest.mark.parametrize("p", range(0, 6))
def test_presentation_chain_isomorphism(p):
    inst = QmInstance(p)
    normal = qm_presentation(inst)
    surgery = qm_surgery_presentation(inst)
    reduced = qm_reduced_presentation(inst)
    normal_table = enumerate_cosets(normal)
    surgery_table = enumerate_cosets(surgery)
    assert check_homomorphism(surgery, normal_table, elimination_images())
    assert check_homomorphism(normal, surgery_table, inclusion_images())
    assert surgery_table.cosets == normal_table.cosets
    assert enumerate_cosets(reduced).cosets == normal_table.cosets
    assert abelianization(reduced) == abelianization(normal)


@pytest.mark.parametrize("p", range(0, 6))
def test_eta_claims(p):
    inst = QmInstance(p)
    eta0, eta1 = eta_words(inst)
    assert eta0 == w("y z y^-1 z^-1") and eta1 == w("y^2")
    table = enumerate_cosets(qm_presentation(inst))
    assert word_is_trivial(table, eta1.inverse() * eta0)
    assert subgroup_generates(
        enumerate_cosets(qm_presentation(inst), [eta0, w("z")]))


def test_eta0_order_seven(gm_group_p1):
    G = gm_group_p1
    eta0, _ = eta_words(QmInstance(1))
    assert G.element_order(G.element_of(eta0)) == 7
    assert G.element_order(G.element_of(w("y"))) == 14


@pytest.mark.parametrize("p", range(0, 6))
def test_extension_kernel(p):
    pres = qm_presentation(QmInstance(p))
    table = enumerate_cosets(pres, [w("y^2")])
    assert table.cosets == 4
    kernel = abelianization(reidemeister_schreier(pres, table))
    assert kernel.free_rank == 0
    assert kernel.invariant_factors == (4 * p + 3,)


# ---------------------------------------------------------------------------
# the stored surgery diagram at p = 0


def test_diagram_linking_number():
    sd = qm_surgery_diagram()
    lam = longitude_word(sd.pd, 0)
    axis_arcs = {sd.pd.arc_of(e) for e in sd.pd.components[1]}
    lk = sum(lam.exponent_sum(f"g{r}") for r in axis_arcs)
    assert lk == 2
    assert sd.framings == (-1, 0)


def test_diagram_link_group_abelianization():
    ab = abelianization(wirtinger(qm_surgery_diagram().pd))
    assert ab.free_rank == 2 and ab.invariant_factors == ()


def test_diagram_surgery_group_matches_p0():
    sd = qm_surgery_diagram()
    fixture = surgery_group(sd)
    fixture_table = enumerate_cosets(fixture)
    assert fixture_table.cosets == expected_order(QmInstance(0)) == 12
    ab = abelianization(fixture)
    assert ab.invariant_factors == (4,) and ab.free_rank == 0
    # the labelled meridians carry the surgery presentation onto the
    # diagram group; equal orders + surjectivity make it an isomorphism
    images = qm_diagram_images()
    assert check_homomorphism(qm_surgery_presentation(QmInstance(0)),
                              fixture_table, images)
    assert subgroup_generates(
        enumerate_cosets(fixture, list(images.values())))
