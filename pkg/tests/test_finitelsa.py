import json

import pytest

from superhom import finitelsa as fl
from superhom.exactlinalg import compose_is_zero


def _gl2_rules(override=None):
    rules = [("u1", "u2", [("2", "u2")]), ("u1", "u3", [("-2", "u3")]),
             ("u2", "u3", [("1", "u4")])]
    if override:
        rules = [r for r in rules if r[:2] != override[:2]] + [override]
    return {
        "generators": [{"name": "u1", "grade": 0}, {"name": "u2", "grade": 1},
                       {"name": "u3", "grade": 1}, {"name": "u4", "grade": 2}],
        "brackets": [{"left": a, "right": b, "value": [{"coef": c, "gen": g} for c, g in v]}
                     for a, b, v in rules],
    }


def test_builtins_are_valid():
    assert fl.validate(fl.gl2_pre()) == []
    assert fl.validate(fl.gl11()) == []
    t = fl.gl11()
    assert dict(t.bracket(fl.U3, fl.U4)) == {fl.U1: 1, fl.U2: 1}
    assert dict(fl.gl2_pre().bracket(0, 1)) == {1: 2}


def test_loader_symmetrizes():
    t = fl.StructureTable.from_dict(_gl2_rules())
    assert t.to_dict() == fl.gl2_pre().to_dict()
    assert dict(t.bracket(1, 0)) == {1: -2}
    assert dict(t.bracket(2, 1)) == {3: 1}


def test_broken_jacobi_is_reported():
    data = _gl2_rules(("u2", "u3", [("1", "u1")]))
    t = fl.StructureTable.from_dict(data)
    problems = fl.validate(t)
    assert any(p.startswith("jacobi") for p in problems)
    assert any(p.startswith("grading") for p in problems)
    with pytest.raises(fl.TableError):
        fl.homology_table(t, 1)


def test_loader_errors():
    data = _gl2_rules()
    data["brackets"].append({"left": "u2", "right": "u1", "value": [{"coef": "2", "gen": "u2"}]})
    with pytest.raises(fl.TableError, match="antisymmetry"):
        fl.StructureTable.from_dict(data)
    data = _gl2_rules()
    data["brackets"].append({"left": "u1", "right": "u9", "value": []})
    with pytest.raises(fl.TableError, match="unknown generator"):
        fl.StructureTable.from_dict(data)
    with pytest.raises(fl.TableError):
        fl.StructureTable.from_dict({"generators": [{"name": "a", "grade": 0}, {"name": "a", "grade": 1}]})
    with pytest.raises(fl.TableError):
        fl.StructureTable.from_dict({"generators": [{"name": "a", "grade": "odd-ish"}]})


def test_file_round_trip(tmp_path):
    path = tmp_path / "gl11.json"
    path.write_text(json.dumps(fl.gl11().to_dict()))
    t = fl.StructureTable.load(path)
    assert t.is_z2 and fl.validate(t) == []
    assert t.to_dict() == fl.gl11().to_dict()
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(fl.TableError):
        fl.StructureTable.load(bad)


@pytest.mark.parametrize("w", range(1, 11))
def test_gl2_tables(w):
    s = fl.homology_table(fl.gl2_pre(), w)
    assert [r.m for r in s.rows] == [w - 1, w, w + 1] if w > 1 else [1, 2]
    want = {w - 1: (w - 1, w - 1), w: (2 * w, w + 1), w + 1: (w + 1, 0)}
    for r in s.rows:
        assert (r.dim_chain, r.rank_in) == want[r.m]
        assert r.betti == 0
    assert s.euler == 0 and s.complete


def test_gl11_tables():
    t = fl.gl11()
    even = fl.homology_table(t, "even", m_max=12)
    odd = fl.homology_table(t, "odd", m_max=12)
    assert not even.complete
    for m in range(1, 13):
        assert even.dims[m] == 2 * m and odd.dims[m] == 2 * m
    for m in range(1, 12):
        assert even.ranks_in[m] == (m if m % 2 else m + 1)
        assert odd.ranks_in[m] == (m + 1 if m % 2 else m)
    # low degrees of the even complex carry homology: C_0 = R and u1 - u2
    assert even.bettis[0] == 1 and even.bettis[1] == 1
    assert all(even.bettis[m] == 0 for m in range(2, 13))
    assert all(b == 0 for b in odd.bettis.values())


def test_gl11_oracle_examples():
    assert fl.gl11_boundary_oracle(1, 1) == {(fl.U1,): 1, (fl.U2,): 1}
    assert fl.gl11_boundary_oracle(0, 5) == {}
    assert fl.gl11_boundary_oracle(3, 3, "u1") == {fl.F(2, 2, (fl.U1, fl.U2)): -9}
    with pytest.raises(ValueError):
        fl.gl11_boundary_oracle(1, 1, "u3")
    with pytest.raises(ValueError):
        fl.gl11_boundary_oracle(-1, 0)


@pytest.mark.parametrize("decoration", fl.DECORATIONS)
def test_gl11_engine_matches_closed_forms(decoration):
    for a in range(0, 9):
        for b in range(0, 9 - a):
            assert fl.gl11_engine_boundary(a, b, decoration) == fl.gl11_boundary_oracle(a, b, decoration)


def test_gl11_d_squared():
    t = fl.gl11()
    for parity in ("even", "odd"):
        for m in range(2, 9):
            assert compose_is_zero(fl.boundary(t, m - 1, parity), fl.boundary(t, m, parity))


def test_empty_algebra():
    t = fl.StructureTable.from_dict({"generators": [], "brackets": []})
    s = fl.homology_table(t, 0)
    assert s.rows == () and s.euler == 0


def test_default_m_max():
    assert fl.default_m_max(fl.gl2_pre(), 3) == 4
    assert fl.default_m_max(fl.gl11(), "even") is None
    with pytest.raises(ValueError):
        fl.homology_table(fl.gl11(), "odd")
