import pytest

from pretzel_delta.table import KnotTable, TableError, load_table, parse_table

SIX = {"8_2": 0, "8_5": -1, "8_21": 0, "9_8": 0, "10_46": 0, "10_76": -2}


def test_shipped_table():
    table = load_table()
    assert {e.name: e.a2 for e in table} == SIX
    assert table.by_name("10_76").u_delta == frozenset({2, 4})
    assert table.by_name("8_5").twists == (2, 3, 3)


def test_value_set_survives_round_trips():
    table = load_table()
    again = parse_table(table.to_csv())
    assert again.by_name("10_76").u_delta == frozenset({2, 4})
    via_json = KnotTable.from_json(table.to_json())
    assert via_json.by_name("10_76").u_delta == frozenset({2, 4})
    assert [e for e in via_json] == [e for e in table]
    assert parse_table(via_json.to_csv()).to_csv() == table.to_csv()


def test_lookup_up_to_symmetry():
    table = load_table()
    assert table.lookup((3, 3, 2)).name == "8_5"
    assert table.lookup((-2, -3, -3)).name == "8_5"
    assert table.lookup((3, 2, 3)).name == "8_5"
    assert table.lookup((3, 5, 7)) is None


@pytest.mark.parametrize("text, where", [
    ("name,twists,a2,u_delta\n8_5,2;3;3,-1\n", "line 2"),
    ("name,twists,a2,u_delta\n8_5,2;x;3,-1,3\n", "line 2"),
    ("name,twists,a2,u_delta\n\n8_5,3;3,0,1\n", "line 3"),
    ("name,twists,a2,u_delta\n8_5,2;3;3,-1,\n", "line 2"),
])
def test_parse_errors_carry_line_numbers(text, where):
    with pytest.raises(TableError, match=where):
        parse_table(text)


def test_headerless_and_comments():
    table = parse_table("# knots\n8_5,2;3;3,-1,3\n")
    assert len(table) == 1
