import json

import pytest

from qfpowers import closed_forms as cf
from qfpowers.harness import (
    REGISTRY,
    DomainError,
    SuiteConfig,
    UnknownIdentity,
    default_config,
    random_form,
    reports_to_json,
    run_suite,
    verify,
)
from qfpowers.forms import hyperbolic
from qfpowers.squareclass import FieldMode
from qfpowers.witt_normal import normalize


def test_verify_n1():
    rep = verify("N1", {"h": 2, "k": 3})
    assert rep.passed and rep.mode is FieldMode.GENERIC
    assert rep.lhs == rep.rhs == normalize(hyperbolic(10))


def test_verify_p12_modes():
    generic = verify("P12", {"n": 4, "k": 4}, mode="r")
    assert not generic.passed
    auto = verify("P12", {"n": 4, "k": 4})
    assert auto.passed and auto.mode is FieldMode.MINUS_ONE_SQUARE
    negative = verify("P12", {"n": 4, "k": 4}, mode="r", expect_mismatch=True)
    assert negative.passed and not negative.matched


def test_verify_route_equivalence_seeded():
    rep = verify("S3EQ", {"seed": 42, "k": 6})
    assert rep.passed


def test_verify_combinatorial():
    rep = verify("GV", {"p": 2, "q": 3, "r": 2})
    assert rep.passed and rep.lhs == rep.rhs == 21
    assert verify("L2", {"p": 1, "r": 2}).lhs == 1


def test_verify_errors():
    with pytest.raises(UnknownIdentity):
        verify("BOGUS", {})
    with pytest.raises(DomainError, match="even n and odd k"):
        verify("P11", {"n": 3, "k": 3})
    with pytest.raises(DomainError, match="needs parameters"):
        verify("N1", {"h": 2})
    with pytest.raises(DomainError, match="does not take"):
        verify("N1", {"h": 2, "k": 1, "n": 3})


def test_p1_literal_reading_detected():
    assert verify("P1", {"n": 3}).passed
    assert not verify("P1", {"n": 3}, p1_exponent="literal").passed
    assert not verify("P10", {"n": 3, "k": 1}, p1_exponent="literal").passed


def test_literal_table_option():
    assert verify("LT", {"n": 3, "k": 3}).passed
    assert not verify("LT", {"n": 3, "k": 3}, literal_table=True).passed


def test_empty_suite_is_vacuous():
    reports, ok = run_suite(SuiteConfig())
    assert reports == [] and ok


def test_suite_skips_out_of_domain_cells():
    cfg = SuiteConfig(identities={"N1": {"h": "1..2", "k": "0..3"}})
    reports, ok = run_suite(cfg)
    assert ok
    assert [(r.params["h"], r.params["k"]) for r in reports] == [(1, 1), (1, 3), (2, 1), (2, 3)]


def test_p12_negative_report():
    reports, ok = run_suite(SuiteConfig(p12_negative=True))
    assert ok and len(reports) == 1
    rep = reports[0]
    assert rep.expect_mismatch and rep.mode is FieldMode.GENERIC and not rep.matched


def test_deterministic_and_parallel_order():
    cfg = SuiteConfig(identities={
        "P10": {"n": [1, 3, 5], "k": "0..5"},
        "ISO": {"seed": "0..9", "k": "0..4"},
        "GV": {"p": "0..3", "q": "0..3", "r": "0..3"},
    }, p12_negative=True)
    first, ok1 = run_suite(cfg)
    second, ok2 = run_suite(cfg)
    cfg.workers = 2
    third, ok3 = run_suite(cfg)
    assert ok1 and ok2 and ok3
    assert reports_to_json(first) == reports_to_json(second) == reports_to_json(third)
    keys = [(r.identity_id, tuple(r.params.values()), r.expect_mismatch) for r in first]
    assert keys == sorted(keys)


def test_report_json_schema():
    reports, _ = run_suite(SuiteConfig(identities={"P12": {"n": 6, "k": 6}}))
    data = json.loads(reports_to_json(reports))
    assert data[0]["id"] == "P12" and data[0]["passed"] is True
    assert set(data[0]["lhs"]) == {"mode", "dim", "hyp", "residue"}
    assert isinstance(data[0]["lhs"]["dim"], str)


def test_default_config_covers_registry():
    cfg = default_config()
    covered = {ident for ident, _ in cfg.cells()}
    assert covered == set(REGISTRY)
    assert set(cf.IDENTITIES) <= covered


def test_config_loading(tmp_path):
    cfg = SuiteConfig.load("tests/data/minimal.toml")
    assert list(cfg.identities) == ["N1"]
    with pytest.raises(ValueError, match="unknown identity"):
        SuiteConfig.load("tests/data/bad-key.toml")
    bad = tmp_path / "bad.toml"
    bad.write_text("[identities.N1]\nh = 1\nzz = 2\n")
    with pytest.raises(ValueError, match="no parameter"):
        SuiteConfig.load(bad)
    with pytest.raises(ValueError, match="unknown config keys"):
        SuiteConfig.from_mapping({"bogus": 1})


def test_random_form_bounds():
    for seed in range(200):
        phi = random_form(seed)
        assert 1 <= len(phi) <= 8 and phi.dim <= 40
        atoms = {a for c in phi for a in c.atoms}
        assert len(atoms) <= 4
    assert random_form(7) == random_form(7)
