"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines as they complete.
"""

import random
import time
from contextlib import contextmanager

import pytest

from coverlink.clasp import (
    Clasp,
    ClaspProgram,
    SelfClasp,
    apply_instructions,
    cover_surgery_homology,
    eval_program,
    lifted_matrix,
    realize,
    trivialize_first_row,
    upstairs_framing,
)
from coverlink.diagrams import (
    SurgeryDescription,
    surgery_group,
    trefoil_pd,
    unknot_pd,
)
from coverlink.forms import (
    direct_sum,
    e8_form,
    e8_stabilization,
    hyperbolic_basis,
    hyperbolic_form,
    negated,
    signature,
)
from coverlink.errors import SignatureObstructed
from coverlink.groupring import FiniteGroup
from coverlink.intmat import identity, matmul, transpose
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
    inclusion_images,
    qm_presentation,
    qm_reduced_presentation,
    qm_surgery_presentation,
)

from oracles import naive_smith_invariants


@contextmanager
def criterion(number, label):
    try:
        yield
    except BaseException:
        print(f"criterion {number} ({label}): FAIL")
        raise
    print(f"criterion {number} ({label}): PASS")


# ---------------------------------------------------------------------------
# shared random program generation (criteria 6 and 7 use the same 1000)

PROGRAM_SEED = 6
PROGRAM_COUNT = 1000


def _groups():
    return (FiniteGroup.from_presentation(qm_presentation(QmInstance(0))),
            FiniteGroup.from_presentation(qm_presentation(QmInstance(1))))


def _random_program(group, rnd, n_max=4, instr_max=20):
    n = rnd.randint(1, n_max)
    framings = tuple(rnd.randint(-3, 3) for _ in range(n))
    instrs = []
    for _ in range(rnd.randint(0, instr_max)):
        if n > 1 and rnd.random() < 0.6:
            i = rnd.randrange(n)
            j = rnd.randrange(n)
            while j == i:
                j = rnd.randrange(n)
            instrs.append(Clasp(i, j, rnd.choice((1, -1)),
                                group.word_of(rnd.randrange(group.order))))
        else:
            instrs.append(SelfClasp(rnd.randrange(n), rnd.choice((1, -1)),
                                    group.word_of(rnd.randrange(1, group.order))))
    return ClaspProgram(n, framings, tuple(instrs))


def _program_stream(groups, count=PROGRAM_COUNT):
    rnd = random.Random(PROGRAM_SEED)
    g0, g1 = groups
    for k in range(count):
        group = g0 if k % 2 == 0 else g1
        yield group, _random_program(group, rnd)


@pytest.fixture(scope="module")
def gm_groups():
    return _groups()


# ---------------------------------------------------------------------------


def test_criterion_1_group_orders():
    with criterion(1, "group orders 4|m|"):
        expected = {0: 12, 1: 28, 2: 44, 3: 60, 4: 76, 5: 92}
        for p, order in expected.items():
            start = time.perf_counter()
            table = enumerate_cosets(qm_presentation(QmInstance(p)))
            elapsed = time.perf_counter() - start
            assert table.cosets == order == 4 * (4 * p + 3)
            assert elapsed < 1.0, f"enumeration for p={p} took {elapsed:.2f}s"


def test_criterion_2_abelianization_z4():
    with criterion(2, "H1 = Z4 for all three presentations"):
        for p in range(-1, 6):
            inst = QmInstance(p)
            for pres in (qm_surgery_presentation(inst),
                         qm_reduced_presentation(inst),
                         qm_presentation(inst)):
                ab = abelianization(pres)
                assert ab.invariant_factors == (4,) and ab.free_rank == 0


def test_criterion_3_presentation_chain():
    with criterion(3, "presentation chain certification"):
        for p in range(0, 6):
            inst = QmInstance(p)
            normal = qm_presentation(inst)
            surgery = qm_surgery_presentation(inst)
            normal_table = enumerate_cosets(normal)
            surgery_table = enumerate_cosets(surgery)
            assert check_homomorphism(surgery, normal_table,
                                      elimination_images())
            assert check_homomorphism(normal, surgery_table,
                                      inclusion_images())
            assert surgery_table.cosets == normal_table.cosets


def test_criterion_4_eta_claims():
    with criterion(4, "eta triviality and generation"):
        for p in range(0, 6):
            inst = QmInstance(p)
            eta0, eta1 = eta_words(inst)
            table = enumerate_cosets(qm_presentation(inst))
            assert word_is_trivial(table, eta1.inverse() * eta0)
            assert subgroup_generates(
                enumerate_cosets(qm_presentation(inst), [eta0, Word([("z", 1)])]))


def test_criterion_5_extension_kernel():
    with criterion(5, "index-4 subgroup with cyclic kernel"):
        for p in range(0, 6):
            pres = qm_presentation(QmInstance(p))
            table = enumerate_cosets(pres, [Word([("y", 2)])])
            assert table.cosets == 4
            kernel = abelianization(reidemeister_schreier(pres, table))
            assert kernel.free_rank == 0
            assert kernel.invariant_factors == (4 * p + 3,)


def test_criterion_6_clasp_property_suite(gm_groups):
    with criterion(6, "clasp calculus property suite"):
        start = time.perf_counter()
        for group, prog in _program_stream(gm_groups):
            # invariants after every single instruction: the constructor
            # re-validates Hermitian symmetry, diagonal involution
            # invariance and the framing identity on each partial state
            T = eval_program(ClaspProgram(prog.n, prog.framings), group)
            for ins in prog.instructions:
                T = apply_instructions(T, (ins,))
                for i in range(T.n):
                    assert T.lam[i][i].augment() == prog.framings[i]
            full = eval_program(prog, group)
            assert full.lam == T.lam
            lifted = lifted_matrix(full)
            assert all(list(row) == list(col)
                       for row, col in zip(lifted, zip(*lifted)))
            back = eval_program(realize(group, full.lam, full.framings), group)
            assert back.lam == full.lam and back.framings == full.framings
        elapsed = time.perf_counter() - start
        assert elapsed < 10.0, f"property suite took {elapsed:.1f}s"


def test_criterion_7_cover_homology_oracle(gm_groups):
    with criterion(7, "cover homology equals brute-force normal form"):
        for group, prog in _program_stream(gm_groups):
            T = eval_program(prog, group)
            inv = cover_surgery_homology(T)
            factors, free = naive_smith_invariants(lifted_matrix(T))
            assert inv.invariant_factors == factors
            assert inv.free_rank == free


def test_criterion_8_row_trivialization(gm_groups):
    with criterion(8, "first-row trivialization"):
        _, g1 = gm_groups
        rnd = random.Random(8)
        for _ in range(100):
            T = eval_program(_random_program(g1, rnd), g1)
            after = apply_instructions(T, trivialize_first_row(T).instructions)
            assert after.framings == T.framings
            for j in range(1, after.n):
                assert after.lam[0][j].is_zero()
            assert set(after.lam[0][0].coeffs) <= {0}
            assert upstairs_framing(after, 0) == T.framings[0]


def test_criterion_9_forms():
    with criterion(9, "integral form bookkeeping"):
        start = time.perf_counter()
        H = hyperbolic_form()
        E8 = e8_form()
        assert signature(H) == 0
        assert signature(E8) == 8
        for a in range(0, 13):
            for b in range(0, 4):
                for c in range(0, 4):
                    if a + 8 * b + 8 * c > 24 or a + b + c == 0:
                        continue
                    F = direct_sum(*([H] * a + [E8] * b + [negated(E8)] * c))
                    assert signature(F) == 8 * (b - c)
        with pytest.raises(SignatureObstructed):
            e8_stabilization(E8, "smooth")
        assert e8_stabilization(direct_sum(E8, E8), "smooth") == 1
        rnd = random.Random(9)
        two_h = direct_sum(H, H)
        for _ in range(4):
            u = identity(4)
            for _ in range(6):
                i, j = rnd.randrange(4), rnd.randrange(4)
                if i == j:
                    continue
                c = rnd.choice((-2, -1, 1, 2))
                for t in range(4):
                    u[i][t] += c * u[j][t]
            scrambled = type(two_h)(tuple(
                tuple(r) for r in matmul(matmul(transpose(u), two_h.rows()), u)))
            decomp = hyperbolic_basis(scrambled)
            assert decomp.blocks == 2
            decomp.verify(scrambled)
        pair = direct_sum(E8, negated(E8))
        decomp = hyperbolic_basis(pair)
        assert decomp.blocks == 8
        decomp.verify(pair)
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0, f"forms checks took {elapsed:.1f}s"


def test_criterion_10_surgery_presentations():
    with criterion(10, "surgery presentations"):
        start = time.perf_counter()
        trefoil = surgery_group(SurgeryDescription(trefoil_pd(), (1,)))
        ab = abelianization(trefoil)
        assert ab.invariant_factors == () and ab.free_rank == 0
        orders = {strategy: enumerate_cosets(trefoil, (), 10**6, strategy).cosets
                  for strategy in ("hlt", "hlt-lookahead")}
        assert orders["hlt"] == orders["hlt-lookahead"] == 120
        lens = abelianization(surgery_group(
            SurgeryDescription(unknot_pd(), (4,))))
        assert lens.invariant_factors == (4,) and lens.free_rank == 0
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"surgery checks took {elapsed:.1f}s"
