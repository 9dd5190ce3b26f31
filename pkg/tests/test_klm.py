import pytest

from vasskit.core import OMEGA, Transition, Vass
from vasskit.dioph import UNSAT, nat_satisfiable
from vasskit.klm import (
    CharSequence,
    KlmSequence,
    KlmTriple,
    REJECT,
    build_char_system,
    build_hom_system,
    char_sequence_from_vector,
    cycle_space_dimensions,
    is_model,
    klm_rank,
    klm_size,
    membership,
    rank_less,
    single,
    vass_rank,
)

from conftest import A3, A4, A6, family_one, family_two

W = OMEGA


@pytest.fixture(scope="module")
def seq_gex(gex):
    return single((0, 0, 2), gex, (1, 1, 0))


def chain2(x, g_left, a, g_right, y, mid_left=None, mid_right=None):
    mid_left = mid_left or (W, W, W)
    mid_right = mid_right or (W, W, W)
    return KlmSequence(
        3,
        (KlmTriple(x, g_left, mid_left), KlmTriple(mid_right, g_right, y)),
        (a,),
    )


def test_cycle_space_dimensions_golden(gex):
    dims = cycle_space_dimensions(gex)
    assert dims["t3"] == dims["t4"] == 0
    assert dims["t1"] == dims["t2"] == dims["t5"] == 2
    assert dims["t6"] == dims["t7"] == dims["t8"] == dims["t9"] == 3


def test_cycle_space_dimensions_edge_cases():
    assert cycle_space_dimensions(Vass(3, ("a",), "a", "a", ())) == {}
    g = Vass(3, ("a",), "a", "a", (Transition("t", "a", (1, 0, 0), "a"),))
    assert cycle_space_dimensions(g) == {"t": 1}


def test_constant_dimension_inside_component(g1, g2):
    for g in (g1, g2):
        dims = cycle_space_dimensions(g)
        assert len(set(dims.values())) == 1


def test_rank_golden(gex, seq_gex):
    assert vass_rank(gex) == (4, 3, 0, 2)
    assert klm_rank(seq_gex) == (4, 3, 0, 2)


def test_rank_empty_transitions():
    assert vass_rank(Vass(3, ("a",), "a", "a", ())) == (0, 0, 0, 0)


def test_rank_renaming_invariant(gex):
    renamed = Vass(
        gex.dim,
        tuple(s + "_x" for s in gex.states),
        gex.q_in + "_x",
        gex.q_out + "_x",
        tuple(
            Transition(t.name, t.source + "_x", t.action, t.target + "_x")
            for t in gex.transitions
        ),
    )
    assert vass_rank(renamed) == vass_rank(gex)


def test_rank_lex_order():
    assert rank_less((4, 0, 1, 0), (4, 3, 0, 0))
    assert not rank_less((4, 3, 0, 0), (4, 0, 1, 0))
    assert not rank_less((1, 0), (1, 0))


def test_ordinal_rank_golden(seq_gex):
    from vasskit.ordinals import OrdinalCNF, ordinal_rank

    assert ordinal_rank(klm_rank(seq_gex)) == OrdinalCNF(((3, 4), (2, 3), (0, 2)))


def test_klm_size_golden(seq_gex, g1, g2):
    assert klm_size(seq_gex) == 2 * 4**4 * (0 + 0 + (2 + 36 + 2)) == 20480
    tiny = single((), Vass(0, ("a",), "a", "a", ()), ())
    assert klm_size(tiny) == 2
    seq1 = chain2((0, 0, 2), g1, A3, g2, (1, 1, 0))
    # |G1| = 15 and |G2| = 15 via the size formula.
    assert klm_size(seq1) == 2 * 4**4 * (1 + 1 + (2 + 15 + 0) + (0 + 15 + 2))


def test_char_system_golden_model(gex, seq_gex):
    system = build_char_system(seq_gex)
    # 6 boundary pins + 4 flow rows + 3 displacement rows = 13.
    assert len(system.rows) == 13
    phi_ex = {"t1": 2, "t2": 0, "t3": 1, "t4": 0, "t5": 0, "t6": 1, "t7": 1, "t8": 1, "t9": 1}
    h = CharSequence((((0, 0, 2), tuple(sorted(phi_ex.items())), (1, 1, 0)),))
    assert is_model(seq_gex, h)
    assert system.satisfied_by(h.to_vector(system))


def test_char_system_flow_row_coefficients(seq_gex):
    # The flow row for the input state: -t2 -t3 -t4 +t5 = -1.
    system = build_char_system(seq_gex)
    want = {("phi", 0, "t2"): -1, ("phi", 0, "t3"): -1, ("phi", 0, "t4"): -1, ("phi", 0, "t5"): 1}
    found = False
    for row, c in zip(system.rows, system.rhs):
        entries = {lab: v for lab, v in zip(system.labels, row) if v != 0}
        if entries == want and c == -1:
            found = True
    assert found


def test_char_system_satisfiable_golden(seq_gex):
    assert nat_satisfiable(build_char_system(seq_gex)) is not UNSAT


def test_char_system_unsat_chain(g2):
    # Entry config conflicting with the connector displacement: 0 vs 0+1.
    g3 = Vass(3, ("q_in",), "q_in", "q_in", (Transition("t1", "q_in", (0, 2, 0), "q_in"),))
    g5 = Vass(
        3,
        ("q", "q_out"),
        "q_out",
        "q_out",
        (
            Transition("t6", "q_out", (1, -1, 0), "q_out"),
            Transition("t8", "q", (-2, -1, 0), "q"),
        ),
    )
    bad = chain2((0, 0, 2), g3, A4, g5, (1, 1, 0), mid_left=(0, W, 2), mid_right=(0, W, 0))
    assert nat_satisfiable(build_char_system(bad)) is UNSAT


def test_hom_system_models(seq_gex):
    hom = build_hom_system(seq_gex)
    n = hom.n_vars
    assert hom.satisfied_by((0,) * n)
    # Pure counts with zero boundary vectors must balance displacement too:
    # t1 alone shifts the second counter, so it is not a model on its own.
    solo = {lab: 0 for lab in hom.labels}
    solo[("phi", 0, "t1")] = 1
    assert not hom.satisfied_by(tuple(solo[lab] for lab in hom.labels))
    trio = dict(solo)
    trio[("phi", 0, "t1")] = 3
    trio[("phi", 0, "t6")] = 4
    trio[("phi", 0, "t8")] = 2
    assert hom.satisfied_by(tuple(trio[lab] for lab in hom.labels))


def test_hom_system_support(seq_gex):
    from vasskit.dioph import positivity_support

    hom = build_hom_system(seq_gex)
    support = positivity_support(hom)
    positive_labels = {hom.labels[j] for j in support}
    assert positive_labels == {("phi", 0, "t1"), ("phi", 0, "t6"), ("phi", 0, "t8")}


def test_membership_accepts_families(seq_gex):
    for n in (0, 1, 2):
        for word in (family_one(n), family_two(n)):
            assert membership(seq_gex, word) is not REJECT


def test_membership_rejects_empty(seq_gex):
    assert membership(seq_gex, []) is REJECT


def test_membership_accept_has_model(seq_gex):
    word = family_one(1)
    wit = membership(seq_gex, word)
    assert wit is not REJECT
    h = wit.char_sequence(seq_gex, word)
    assert is_model(seq_gex, h)
    system = build_char_system(seq_gex)
    assert system.satisfied_by(h.to_vector(system))


def test_membership_on_chain(gex, g1, g2):
    seq = chain2((0, 0, 2), g1, A3, g2, (1, 1, 0))
    assert membership(seq, family_one(0)) is not REJECT
    assert membership(seq, family_two(1)) is not REJECT
    # The a4 chain has an empty language: entering with counter 3 at zero.
    seq4 = chain2((0, 0, 2), g1, A4, g2, (1, 1, 0))
    assert membership(seq4, family_one(0)) is REJECT


def test_membership_resolves_free_coordinates(g2):
    # Entry open on every coordinate: minimal feasible values are forced.
    seq = single((W, W, W), g2, (1, 1, 0))
    word = [A6, (1, -1, -2), (-2, -1, 0), (0, 0, 0)]
    wit = membership(seq, word)
    assert wit is not REJECT
    assert wit.m0 == (1, 4, 2)


def test_membership_dimension_mismatch(seq_gex):
    from vasskit.errors import DimensionMismatch

    with pytest.raises(DimensionMismatch):
        membership(seq_gex, [(1, 0)])
