"""coverlink: finitely presented group certification, twisted linking
calculus over group rings, and integral form bookkeeping."""

from .clasp import (
    Clasp,
    ClaspProgram,
    SelfClasp,
    TwistedLinkingMatrix,
    apply_instructions,
    cover_surgery_homology,
    eval_program,
    lifted_matrix,
    realize,
    trivialize_first_row,
    upstairs_framing,
)
from .diagrams import (
    PdCode,
    SurgeryDescription,
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
from .forms import (
    HyperbolicDecomposition,
    IntegerSymmetricForm,
    augment_form,
    direct_sum,
    e8_form,
    e8_stabilization,
    hyperbolic_basis,
    hyperbolic_form,
    is_even,
    is_unimodular,
    negated,
    signature,
)
from .groupring import FiniteGroup, GroupRingElement
from .presentations import (
    AbelianGroupInvariants,
    CosetTable,
    GroupPresentation,
    Word,
    abelianization,
    check_homomorphism,
    enumerate_cosets,
    parse_presentation,
    reidemeister_schreier,
    subgroup_generates,
    word_is_trivial,
)
from .qm import (
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

__version__ = "0.1.0"
