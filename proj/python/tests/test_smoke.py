import json

import pytest

import obstructor


def test_r_basic_instances():
    assert obstructor.r([1], ["1"]) == 1
    assert obstructor.r([1], ["0"]) == 0
    assert obstructor.r([2, 1], "11^3") == 1
    assert obstructor.r([1, 1], ["11", "11"]) == 0
    assert obstructor.r([2, 1, 0], ["110", "101", "011"]) == 1


def test_compute_r_certificate():
    result = obstructor.compute_r([2, 1], "11^3", certificate=True)
    assert result["parity"] == 1
    assert result["conclusion"] == "ZERO_GUARANTEED"
    cert = result["certificate"]
    assert cert["rule"] == "PEEL"
    assert sum(child["parity"] for child in cert["children"]) % 2 == cert["parity"]


def test_errors_map_to_python_exceptions():
    with pytest.raises(obstructor.DimensionMismatch):
        obstructor.r([2, 1], "11^2")
    with pytest.raises(obstructor.ParseError):
        obstructor.r([2], "1x")
    with pytest.raises(ValueError):
        obstructor.r([2, 1], "11^2")


def test_lucas_diagonal():
    for n1 in range(8):
        for n2 in range(8):
            assert obstructor.r([n1, n2], ["11"] * (n1 + n2)) == obstructor.diagonal_r_k2(n1, n2)
    assert obstructor.binom_parity(3, 1) == 1
    assert obstructor.binom_parity(2, 1) == 0


def test_witness_and_gram():
    assert obstructor.count_gram_zeros(3) == (8, 1)
    assert obstructor.gram_representation(3) == ["110", "101", "011"]


def test_stiefel_checks():
    v = obstructor.theorem_main2_check(4, 4, obstructor.theorem_main_target(4, 4))
    assert v["parity"] == 1 and v["m"] == 6
    v = obstructor.variety_check([2, 3, 4], obstructor.fadell_husseini_target(5, 3))
    assert v["theorem_backing"] == "COR_MAIN"
    assert v["conclusion"] == "ZERO_GUARANTEED"


def test_search_and_crosscheck():
    assert obstructor.search([1, 1]) == [["01", "10"], ["01", "11"], ["10", "11"]]
    assert obstructor.search([1, 1], jobs=4) == obstructor.search([1, 1], jobs=1)
    report = obstructor.crosscheck_peel_orders([2, 1], "11^3")
    assert report["agree"] and report["parity"] == 1


def test_cli_json():
    code, out, _ = obstructor.run_cli(["r", "--dims", "2,1", "--alphas", "11^3", "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["dims"] == [2, 1]
    assert doc["parity"] == 1
