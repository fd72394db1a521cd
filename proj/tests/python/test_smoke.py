import json
from fractions import Fraction

import pytest

import kwise


def test_values_are_exact():
    assert kwise.m_value(10, 4, "1/10") == Fraction(1, 10000)
    assert kwise.m_value(4, 4, Fraction(1, 3), mode="checked") == Fraction(1, 81)
    assert kwise.m_value(11, 6, "3/10") == Fraction(3573, 10000000)
    assert kwise.simplex_value(5, 2, "1/4") == Fraction(1, 16)


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        kwise.m_value(10, 4, 0.1)


def test_domain_errors():
    with pytest.raises(kwise.ParameterError):
        kwise.m_value(3, 4, "1/2")
    with pytest.raises(ValueError):
        kwise.m_value(5, 2, "3/2")


def test_piecewise_layout():
    m = kwise.piecewise(10, 4)
    assert len(m["pieces"]) == 12
    assert m["breakpoints"][:2] == ["0", "1/7"]
    assert m["pieces"][0]["polynomial"] == "p^4"


def test_distribution_and_study():
    d = kwise.distribution(10, 4, Fraction(1, 10))
    assert d["v"][10] == Fraction(1, 10000)
    assert sum(d["w"]) == 1
    r = kwise.study(10, 4)
    assert r["N"] == 12
    assert r["exceptional_points"] == ["1/2"]


def test_verify_and_bonferroni():
    assert all(c["verdict"] != "fail" for c in kwise.verify(10, 4))
    assert kwise.bonferroni(4, 2) == [1, -4, 6]


def test_cli_round_trip():
    code, out, _ = kwise.run_cli("eval", "--n", 10, "--k", 4, "--p", "1/10", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == kwise.SCHEMA
    assert payload["result"]["value"] == "1/10000"
    assert kwise.run_cli("eval", "--n", 3, "--k", 4, "--p", "1/2")[0] == 2
