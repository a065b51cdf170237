import json

import pytest

import fhodge

PROFILES = ["etale", "connected", "special", "general"]


@pytest.mark.parametrize("profile", PROFILES)
def test_generated_structures_validate(profile):
    x = fhodge.gen(profile, 5)
    assert x["kind"] == "fhs1"
    assert x["field"] == "Q(i)"
    assert fhodge.validate(x)["valid"] is True


def test_gen_is_deterministic():
    assert fhodge.gen("motive-general", 9) == fhodge.gen("motive-general", 9)


def test_strings_and_dicts_are_interchangeable():
    x = fhodge.gen("general", 2)
    assert fhodge.dual(x) == fhodge.dual(json.dumps(x))


def test_double_dual_is_isomorphic():
    x = fhodge.gen("general", 4)
    ddx = fhodge.dual(fhodge.dual(x))
    assert fhodge.compare_iso(x, ddx)["verified"] is True
    assert fhodge.dual(x, check_iso=True)["verified"] is True


def test_roundtrips():
    assert fhodge.roundtrip(fhodge.gen("special", 3))["verified"] is True
    assert fhodge.roundtrip(fhodge.gen("motive-special", 3))["verified"] is True


def test_realize_and_arrow():
    m = fhodge.gen("motive-general", 2)
    t = fhodge.realize(m)
    assert t["kind"] == "fhs1"
    assert fhodge.arrow(t)["kind"] == "motive"


def test_etale_motive_realizations():
    e = fhodge.gen("motive-etale", 2)
    assert fhodge.hodge(e)["kind"] == "mhs1"
    assert fhodge.univ_ext(e, report=True)["verified"] is True


def test_domain_error_carries_report():
    x = fhodge.gen("etale", 1)
    x["payload"]["sigma"] = [["2"] * len(row) for row in x["payload"]["sigma"]]
    with pytest.raises(fhodge.DomainError) as info:
        fhodge.validate(x)
    assert info.value.diagnostic["error"] == "domain"
    assert info.value.report["valid"] is False


def test_malformed_input():
    with pytest.raises(fhodge.MalformedError):
        fhodge.validate("{")
    with pytest.raises(fhodge.MalformedError):
        fhodge.gen("bogus", 1)
    x = fhodge.gen("general", 1)
    x["format_version"] = 2
    with pytest.raises(fhodge.MalformedError):
        fhodge.validate(x)


def test_small_suite_passes():
    report = fhodge.suite(seeds=2)
    assert report["status"] == "pass"
    assert len(report["criteria"]) == 8
