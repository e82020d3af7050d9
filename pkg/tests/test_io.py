import json
from fractions import Fraction
from pathlib import Path

import pytest

from dgdescent.cech import cech_cosimplicial, tensored_cover
from dgdescent.instances import (abelian_line, dual_numbers, ef_algebra,
                                 probe_class2, segment_cover, t_truncated)
from dgdescent.io import (ParseError, algebra_from_record, algebra_to_record,
                          artin_from_record, artin_to_record,
                          cosimplicial_from_record, cosimplicial_to_record,
                          cover_from_record, cover_to_record, dump_record,
                          element_from_record, element_to_record,
                          instance_from_record, instance_to_record,
                          load_record, scalar_from_str, scalar_to_str)

F = Fraction

DATA = Path(__file__).resolve().parents[1] / "src" / "dgdescent" / "data"


def test_scalar_strings():
    assert scalar_to_str(F(3, 4)) == "3/4"
    assert scalar_to_str(F(-2)) == "-2"
    assert scalar_from_str("5/10") == F(1, 2)
    with pytest.raises(ParseError):
        scalar_from_str("1/0")
    with pytest.raises(ParseError):
        scalar_from_str(0.5)
    with pytest.raises(ParseError):
        scalar_from_str("x")


def test_algebra_roundtrip():
    for build in (ef_algebra, probe_class2, abelian_line):
        g = build()
        rec = algebra_to_record(g)
        g2 = algebra_from_record(rec, validate=True)
        assert algebra_to_record(g2) == rec


def test_artin_roundtrip():
    for build in (dual_numbers, lambda: t_truncated(4)):
        a = build()
        rec = artin_to_record(a)
        a2 = artin_from_record(rec)
        assert artin_to_record(a2) == rec


def test_cover_roundtrip():
    cover = segment_cover(ef_algebra())
    rec = cover_to_record(cover)
    cover2 = cover_from_record(rec)
    assert cover_to_record(cover2) == rec


def test_instance_roundtrip():
    rec = instance_to_record("x", segment_cover(), dual_numbers())
    name, cover, base = instance_from_record(rec)
    assert name == "x"
    assert instance_to_record("x", cover, base) == rec


def test_cosimplicial_roundtrip():
    cc = cech_cosimplicial(tensored_cover(segment_cover(), dual_numbers()),
                           N=2)
    rec = cosimplicial_to_record(cc)
    cc2 = cosimplicial_from_record(rec, validate=True)
    assert cosimplicial_to_record(cc2) == rec
    assert cc2.vanishing_level == cc.vanishing_level


def test_element_roundtrip():
    from dgdescent.dgla import tensor_lie
    nil = tensor_lie(t_truncated(3), ef_algebra())
    g = nil.algebra
    el = {g.space.index(1, ("t", "f")): F(2, 3)}
    rec = element_to_record(g, el)
    assert element_from_record(g, rec) == el


def test_bad_records_name_file_and_field():
    with pytest.raises(ParseError, match="type"):
        algebra_from_record({"type": "nope"}, path="f.json")
    with pytest.raises(ParseError, match="differential"):
        algebra_from_record(
            {"type": "dg_lie_algebra",
             "basis": [{"label": "x", "degree": 0}],
             "differential": [{"from": "x", "to": "x", "coeff": "1"}],
             "brackets": []}, path="f.json")
    with pytest.raises(ParseError, match="brackets"):
        algebra_from_record(
            {"type": "dg_lie_algebra",
             "basis": [{"label": "x", "degree": 0},
                       {"label": "y", "degree": 0},
                       {"label": "z", "degree": 0}],
             "differential": [],
             "brackets": [
                 {"left": "x", "right": "y",
                  "value": [{"basis": "x", "coeff": "1"}]},
                 {"left": "y", "right": "z",
                  "value": [{"basis": "y", "coeff": "1"}]}]},
            path="f.json")


def test_parse_error_reports_line(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"type": "dg_lie_algebra",\n  "basis": [}\n')
    with pytest.raises(ParseError, match="line"):
        load_record(str(bad))


def test_bundled_corpus_parses_and_reserializes():
    from dgdescent.io import load_any
    files = sorted(DATA.glob("*.json"))
    assert len(files) >= 10
    for f in files:
        kind, obj = load_any(str(f))
        rec = load_record(str(f))
        if kind == "dg_lie_algebra":
            assert algebra_to_record(obj) == rec
        elif kind == "artin_algebra":
            assert artin_to_record(obj) == rec
        elif kind == "cover":
            assert cover_to_record(obj) == rec
        elif kind == "descent_instance":
            name, cover, base = obj
            assert instance_to_record(name, cover, base) == rec
        elif kind == "cosimplicial_dg_lie":
            assert cosimplicial_to_record(obj) == rec


def test_dump_is_deterministic(tmp_path):
    rec = algebra_to_record(ef_algebra())
    a = dump_record(rec, tmp_path / "a.json")
    b = dump_record(rec, tmp_path / "b.json")
    assert a == b
    assert (tmp_path / "a.json").read_bytes() == \
        (tmp_path / "b.json").read_bytes()
