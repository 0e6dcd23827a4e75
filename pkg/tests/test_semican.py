from __future__ import annotations

import pytest

from qlie.cartan import RootPartition, root_partitions, root_system
from qlie.cocycle import Orientation, bipartite_orientation, reference_orientation
from qlie.errors import InputError
from qlie.semican import (
    COMPUTED_AN, COMPUTED_ORIENTATION, STORED, UNKNOWN, ad_jordan_type, c_An, c_orientation, cross_check_An,
    decompose_E_star, format_table_text, jordan_type_An, load_reference_table, orientation_component_vector,
    parse_table_text, presentations, read_case_text, same_up_to_sign, sign_character, validate_case, validate_table,
)

P = RootPartition.of


def test_c_orientation_examples():
    assert c_orientation((1, 2), Orientation.parse("A2", "1>2")) == 1
    assert c_orientation((1, 2), Orientation.parse("A2", "2>1")) == -1
    assert c_orientation((2,), reference_orientation("A2")) == 1
    with pytest.raises(InputError):
        c_orientation((1, 3), reference_orientation("A3"))


def test_orientation_vector_a2():
    v = orientation_component_vector((1, 1), (1, 2), "A2").by_label
    assert v == {P([(1, 1)]): 1, P([(1, 0), (0, 1)]): -1}
    w = orientation_component_vector((1, 1), (2, 1), "A2").by_label
    assert same_up_to_sign(v, w) == -1
    assert orientation_component_vector((0, 1), None, "A2").by_label == {P([(0, 1)]): 1}


def test_presentations_of_d4_theta():
    pres = presentations((2, 1, 1, 1), root_system("D4"))
    assert len(pres) == 12
    assert all(p[-1] == 0 for p in pres)


def test_jordan_types():
    assert jordan_type_An(P([(1, 1)]), 2) == (2, 1)
    assert jordan_type_An(P([(1, 0), (0, 1)]), 2) == (3,)
    assert jordan_type_An(P([(1,)]), 1) == (2,)


def test_sign_character():
    assert sign_character((3,)) == 1
    assert sign_character((2, 1)) == -1
    assert sign_character((1, 1, 1, 1)) == 1


def test_c_An_examples():
    # g = -1 with the reference normalisation: the one-part label is +1
    assert c_An((1, 1), P([(1, 0), (0, 1)])) == -1
    assert c_An((1, 1), P([(1, 1)])) == 1
    assert c_An((1, 1), P([(1, 1)]), normalize="none") == -1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cross_check_An(n):
    assert cross_check_An(n).ok


def test_cross_check_with_bipartite_reference():
    assert cross_check_An(3, bipartite_orientation("A3")).ok


def test_d4_reference_table():
    t = load_reference_table("D4-thetamax")
    assert t.complete
    assert len(t.keys_with(COMPUTED_ORIENTATION)) == 8 and len(t.keys_with(STORED)) == 7
    assert t.entries[P([(1, 0, 0, 0), (1, 1, 1, 1)])] == 2
    assert t.entries[P([(1, 1, 0, 0), (1, 0, 1, 1)])] == -1
    assert t.entries[P([(2, 1, 1, 1)])] == 1


def test_d5_reference_table():
    t = load_reference_table("D5-thetamax")
    assert len(t.entries) == 55
    assert len(t.keys_with(COMPUTED_ORIENTATION)) == 16
    assert len(t.keys_with(STORED)) == 38
    unknown = t.keys_with(UNKNOWN)
    assert [k.key() for k in unknown] == ["1,0,0,1,0;1,1,1,1,1"]
    assert not t.complete
    assert {abs(t.entries[k]) for k in t.keys_with(STORED)} <= {1, 2}


def test_normalization_can_be_disabled():
    a = load_reference_table("D4-thetamax")
    b = load_reference_table("D4-thetamax", normalize="none")
    orient = a.keys_with(COMPUTED_ORIENTATION)
    assert same_up_to_sign({k: a.entries[k] for k in orient}, {k: b.entries[k] for k in orient}) is not None


@pytest.mark.parametrize("case", ["D4-thetamax", "D5-thetamax"])
def test_shipped_tables_validate(case):
    rep = validate_case(case)
    assert rep.ok, rep.lines()


def test_table_text_round_trip():
    text = read_case_text("D4-thetamax")
    t = parse_table_text(text)
    assert t.checksum_ok
    assert format_table_text(t) == text


def test_corrupt_key_is_itemized():
    text = read_case_text("D4-thetamax")
    bad = text.replace("1,0,0,0;1,1,1,1 =", "1,0,0,0;1,1,1,2 =")
    rep = validate_case("D4-thetamax", bad)
    failed = {c for c, ok, _ in rep.checks if not ok}
    assert "checksum" in failed
    # also re-signed: the structural checks still object
    t = parse_table_text(bad)
    t.source = "resigned"
    rep2 = validate_table(t)
    assert not rep2.ok


def test_stored_key_colliding_with_orientation_label_is_flagged():
    text = read_case_text("D4-thetamax")
    lines = text.splitlines()
    lines.append("0,0,0,1;1,1,0,0;1,0,1,0 = +1 # stored-reference")
    t = parse_table_text("\n".join(lines) + "\n")
    t.source = "collide"
    rep = validate_table(t)
    assert not dict((c, ok) for c, ok, _ in rep.checks)["stored-disjoint-from-orientation"]


def test_malformed_table_is_input_error():
    with pytest.raises(InputError):
        parse_table_text("no header\n")
    with pytest.raises(InputError):
        load_reference_table("E6-thetamax")


def test_decompose_E_star():
    t = decompose_E_star((1, 1, 1), "A3")
    assert t.complete and len(t.entries) == 4
    assert set(t.provenance.values()) == {COMPUTED_AN}
    assert all(abs(v) == 1 for v in t.entries.values())
    d4 = decompose_E_star((2, 1, 1, 1), "D4")
    assert d4.complete and len(d4.entries) == 15
    e6 = decompose_E_star((0, 0, 1, 1, 0, 0), "E6")
    assert len(e6.entries) == len(root_partitions((0, 0, 1, 1, 0, 0), root_system("E6")))
    with pytest.raises(InputError):
        decompose_E_star((1, 0, 1), "A3")


def test_partial_table_marks_unknowns():
    t = decompose_E_star((0, 1, 1, 2, 1, 0), "E6")
    assert len(t.entries) == 15 and not t.complete
    assert len(t.keys_with(COMPUTED_ORIENTATION)) == 8 and len(t.keys_with(UNKNOWN)) == 7
    assert all(t.entries[k] is None for k in t.keys_with(UNKNOWN))


def test_multiplicity_free_roots_are_covered_by_orientations():
    t = decompose_E_star((1, 1, 1, 1, 0, 0), "E6")
    assert t.complete and set(t.provenance.values()) == {COMPUTED_ORIENTATION}


def test_ad_jordan_types():
    assert ad_jordan_type(P([(1, 0), (0, 1)]), "A2") == (5, 3)
    assert ad_jordan_type(P([(1, 1)]), "A2") == (3, 2, 2, 1)
