import pytest

from lib import errors as er
from lib import ideals as idl
from lib import catalog


def test_entries_and_lookup():
    names = [name for name, _, _ in catalog.list_entries()]
    assert names[:3] == ["unknot", "hopf_skein_data", "trefoil"]
    assert catalog.get("k34_conjectural").conjecture
    assert not catalog.get("trefoil").conjecture
    with pytest.raises(er.UnknownKnot):
        catalog.get("figure8")


def test_entries_without_models():
    with pytest.raises(er.UnknownKnot):
        catalog.knot("k34_conjectural")
    hopf = catalog.get("hopf_skein_data")
    assert hopf.model is None
    assert hopf.complex.rank(0) == 2


def test_model_json_round_trip():
    K = catalog.knot("trefoil_left")
    again = catalog.model_from_json(catalog.model_to_json(K))
    assert again.complex == K.complex
    assert again.cycle == K.cycle
    assert again.companion == K.companion
    assert again.signature == 2
    assert idl.ideal_equal(again.expected_ideal, K.expected_ideal)


def test_knot_file_needs_a_cycle():
    data = catalog.model_to_json(catalog.knot("trefoil"))
    del data["cycle"]
    with pytest.raises(er.ParseError):
        catalog.model_from_json(data)


def test_skein_assembly_reproduces_trefoil():
    assert catalog.assemble_trefoil_from_skein() == catalog.knot("trefoil")


def test_skein_actions():
    checks = catalog.skein_action_check()
    assert set(checks) == {"S_g", "S_delta"}
    assert all(passed for _, _, passed in checks.values())


def test_skein_rank_count():
    checks = catalog.verify_skein_consistency()
    assert {name: rank for name, (rank, _, _) in checks.items()} == {
        "trefoil": 1, "hopf": 2, "unknot": 1, "cone(id)": 0,
    }


def test_golden_table_passes():
    rows = catalog.verify(include_conjectures=False)
    assert rows
    failed = [row.label for row in rows if not row.passed]
    assert failed == []
    assert not any(row.conjecture for row in rows)


@pytest.mark.conjecture
def test_conjecture_pins():
    rows = [row for row in catalog.verify() if row.conjecture]
    assert [row.passed for row in rows] == [True]


@pytest.mark.conjecture
def test_heegaard_comparison_with_own_ideal():
    result = catalog.heegaard_comparison(["u^3", "w^3"])
    assert result["contained"]
    assert result["missing"] == []
