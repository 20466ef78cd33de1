from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpstrip.errors import CompactGroup, DatabaseError, NotSimple, ParseError, UnknownForm
from lpstrip.realforms import (
    DB_ENV_VAR,
    Database,
    GroupFamily,
    RealFormSpec,
    default_database,
    list_families,
    load_database,
    parse_group,
    render,
    restricted_root_datum,
)
from lpstrip.strip import dim_symmetric_space

CATALOG = list_families(8)


# dim G - dim K, from the classical dimension formulas; independent of any root data
def classical_D(text: str) -> int:
    g = parse_group(text)
    f, ps = g.family, g.params
    if f is GroupFamily.SL_R:
        n = ps[0]
        return (n * n - 1) - n * (n - 1) // 2
    if f is GroupFamily.SL_H:
        n = ps[0]
        return (4 * n * n - 1) - n * (2 * n + 1)
    if f is GroupFamily.SU_pq:
        return 2 * ps[0] * ps[1]
    if f is GroupFamily.Sp_pq:
        return 4 * ps[0] * ps[1]
    if f is GroupFamily.SO_pq:
        return ps[0] * ps[1]
    if f is GroupFamily.Sp2n_R:
        n = ps[0]
        return n * (2 * n + 1) - n * n
    if f is GroupFamily.SOstar:
        r = ps[0]
        return r * (2 * r - 1) - r * r
    if f is GroupFamily.Complex:
        l = ps[0]
        return {"A": l * (l + 2), "B": l * (2 * l + 1), "C": l * (2 * l + 1), "D": l * (2 * l - 1),
                "E": {6: 78, 7: 133, 8: 248}.get(l), "F": 52, "G": 14}[g.label]
    # real exceptional forms: dim G - dim K
    return {"E6^6": 78 - 36, "E6^4": 78 - 38, "EIII": 78 - 46, "E6^2": 78 - 52,
            "E7^7": 133 - 63, "E7^4": 133 - 69, "E7^3": 133 - 79,
            "E8^8": 248 - 120, "E8^4": 248 - 136, "F4^4": 52 - 24, "F4^1": 52 - 36,
            "G2^2": 14 - 6}[render(g)]


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: render(e.spec))
def test_symmetric_space_dimension_matches_classical(entry):
    datum = restricted_root_datum(entry.spec)
    assert datum.has_multiplicities()
    assert dim_symmetric_space(datum) == classical_D(render(entry.spec))


@pytest.mark.parametrize("p,q", [(p, q) for q in range(3, 10) for p in range(2, q)])
def test_so_pq_dimension_pq(p, q):
    assert dim_symmetric_space(restricted_root_datum(parse_group(f"SO({p},{q})"))) == p * q


def test_so_pq_data():
    d = restricted_root_datum(parse_group("SO(2,5)"))
    assert str(d.rs_type) == "B_2"
    assert d.mult_by_class() == {"short": 3, "long": 1}
    d = restricted_root_datum(parse_group("SO(1,7)"))
    assert str(d.rs_type) == "A_1" and d.mult == {2: 6}
    d = restricted_root_datum(parse_group("SO(5,5)"))
    assert str(d.rs_type) == "D_5"
    d = restricted_root_datum(parse_group("SO(3,3)"))
    assert str(d.rs_type) == "A_3" and "SL(4,R)" in d.note


def test_unitary_and_symplectic_data():
    d = restricted_root_datum(parse_group("SU(2,5)"))
    assert str(d.rs_type) == "BC_2"
    assert d.mult_by_class() == {"short": 6, "middle": 2, "long": 1}
    d = restricted_root_datum(parse_group("SU(3,3)"))
    assert str(d.rs_type) == "C_3" and d.mult_by_class() == {"short": 2, "long": 1}
    d = restricted_root_datum(parse_group("Sp(1,4)"))
    assert str(d.rs_type) == "BC_1" and d.mult_by_class() == {"short": 12, "long": 3}
    d = restricted_root_datum(parse_group("SO*(10)"))
    assert str(d.rs_type) == "BC_2"
    d = restricted_root_datum(parse_group("SO*(8)"))
    assert str(d.rs_type) == "C_2" and d.mult_by_class() == {"short": 4, "long": 1}


def test_exceptional_data():
    cases = {"E6^6": ("E_6", 1), "E6^2": ("A_2", 8), "E7^7": ("E_7", 1), "E7^3": ("C_3", None)}
    for name, (rs, m) in cases.items():
        d = restricted_root_datum(parse_group(name))
        assert str(d.rs_type) == rs
        if m is not None:
            assert set(d.mult.values()) == {m}
    assert restricted_root_datum(parse_group("E7^3")).mult_by_class() == {"short": 8, "long": 1}
    assert not restricted_root_datum(parse_group("EIII")).verified


@pytest.mark.parametrize(
    "text,expected",
    [
        ("SL(4,R)", "SL(4,R)"),
        ("SL( 3 , H )", "SL(3,H)"),
        ("SU*(6)", "SL(3,H)"),
        ("SU(5,2)", "SU(2,5)"),
        ("Sp(6,R)", "Sp(6,R)"),
        ("Sp(3,1)", "Sp(1,3)"),
        ("SO(7,C)", "SO(3,4,C)"),
        ("SO(8,C)", "SO(4,4,C)"),
        ("SO(6,C)", "SL(4,C)"),
        ("Sp(2,C)", "SL(2,C)"),
        ("SL(3,C)", "SL(3,C)"),
        ("E7(C)", "E7(C)"),
        ("EV", "E7^7"),
        ("EVII", "E7^3"),
        ("SO*(12)", "SO*(12)"),
    ],
)
def test_parse_and_normalize(text, expected):
    assert render(parse_group(text)) == expected


@pytest.mark.parametrize(
    "text,exc",
    [
        ("SO(0,5)", CompactGroup),
        ("SU(0,3)", CompactGroup),
        ("SL(1,H)", CompactGroup),
        ("SO(2,2)", NotSimple),
        ("SO(1,1)", NotSimple),
        ("SO(4,C)", NotSimple),
        ("SO*(6)", NotSimple),
        ("SL(1,R)", NotSimple),
        ("E6^5", UnknownForm),
        ("SU*(5)", ParseError),
        ("GL(3,R)", ParseError),
        ("", ParseError),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_group(text)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(CATALOG))
def test_parse_render_identity(entry):
    assert parse_group(render(entry.spec)) == entry.spec
    assert str(entry.spec) == render(entry.spec)


def test_catalog_ranks_and_uniqueness():
    assert all(e.rank <= 8 for e in CATALOG)
    names = [render(e.spec) for e in CATALOG]
    assert len(names) == len(set(names))
    assert len(list_families(2)) < len(CATALOG)


def test_database_roundtrip_and_validation(tmp_path):
    db = default_database()
    path = tmp_path / "db.json"
    path.write_text(db.dump())
    again = load_database(path)
    assert again.entries == db.entries

    broken = json.loads(db.dump())
    broken[0]["mult"] = {"bogus": 1}
    with pytest.raises(DatabaseError):
        Database(broken)
    dup = json.loads(db.dump())
    with pytest.raises(DatabaseError):
        Database(dup + dup[:1])
    with pytest.raises(DatabaseError):
        Database([])
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(DatabaseError):
        load_database(bad)


def test_unknown_entry_in_custom_database():
    entries = [e for e in default_database().entries if e["family"] != "SL_R"]
    db = Database(entries)
    with pytest.raises(UnknownForm):
        restricted_root_datum(parse_group("SL(3,R)"), db)


def test_env_var_override(tmp_path, monkeypatch):
    entries = json.loads(default_database().dump())
    for e in entries:
        if e["family"] == "SL_R":
            e["mult"] = {"all": 5}
    path = tmp_path / "db.json"
    path.write_text(json.dumps(entries))
    monkeypatch.setenv(DB_ENV_VAR, str(path))
    assert restricted_root_datum(parse_group("SL(3,R)")).mult == {2: 5}
    monkeypatch.delenv(DB_ENV_VAR)
    assert restricted_root_datum(parse_group("SL(3,R)")).mult == {2: 1}


def test_spec_is_hashable_value():
    a = RealFormSpec(GroupFamily.SO_pq, (2, 5))
    assert a == parse_group("SO(5,2)")
    assert len({a, parse_group("SO(2,5)")}) == 1
