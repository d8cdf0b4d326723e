import copy
import json
from fractions import Fraction

import pytest

from oracles import selmer_dim_brute
from ranktwist.curve2tor import Curve
from ranktwist.errors import ConfigError, NotFound
from ranktwist.pipeline import (
    REGRESSION_CERTIFICATE,
    REGRESSION_CONFIG,
    ExperimentConfig,
    conclusion_text,
    dumps,
    least_admissible_m,
    load_certificate,
    run_experiment,
    verify_certificate,
)


@pytest.fixture(scope="module")
def regression_cert():
    return run_experiment(ExperimentConfig.load(REGRESSION_CONFIG))


def test_regression_replays_byte_identically(regression_cert):
    assert dumps(regression_cert) == REGRESSION_CERTIFICATE.read_text()
    again = run_experiment(ExperimentConfig.load(REGRESSION_CONFIG))
    assert dumps(again) == dumps(regression_cert)


def test_regression_certificate_content(regression_cert):
    cert = regression_cert
    assert cert["selmer"]["dim"] == 2
    assert cert["non_torsion"] is True
    t = int(cert["t"]["value"])
    assert t == 163009 and cert["t"]["q"] == [7, 29, 73, 11]
    # independent enumeration confirms the Selmer dimension of the twist
    assert selmer_dim_brute(tuple(t * a for a in cert["curve"])) == 2
    E = Curve(*cert["point"]["curve"])
    P = (Fraction(*cert["point"]["x"]), Fraction(*cert["point"]["y"]))
    assert E.contains(P) and not E.is_torsion(P)


def test_emitted_certificate_verifies(regression_cert):
    assert verify_certificate(regression_cert).ok
    assert verify_certificate(load_certificate(REGRESSION_CERTIFICATE), probe=True).ok


def _tampered(cert, path, value):
    c = copy.deepcopy(cert)
    node = c
    for k in path[:-1]:
        node = node[k]
    node[path[-1]] = value
    return c


def test_tamper_composite_q(regression_cert):
    bad = _tampered(regression_cert, ("t", "q"), [7, 29, 73, 15])
    assert verify_certificate(bad).reason == "P2"


def test_tamper_selmer_dim(regression_cert):
    assert verify_certificate(_tampered(regression_cert, ("selmer", "dim"), 4)).reason == "Sel-recompute"
    basis = regression_cert["selmer"]["basis"]
    dup = [basis[0], basis[0]]
    assert verify_certificate(_tampered(regression_cert, ("selmer", "basis"), dup)).reason == "Sel-recompute"


def test_tamper_other_clauses(regression_cert):
    c = regression_cert
    assert verify_certificate(_tampered(c, ("T",), [0, 2])).reason == "T"
    assert verify_certificate(_tampered(c, ("t", "value"), "163010")).reason == "t"
    assert verify_certificate(_tampered(c, ("witness",), [6, 11])).reason == "witness"
    assert verify_certificate(_tampered(c, ("point", "x"), [1, 1])).reason == "point"
    assert verify_certificate(_tampered(c, ("conclusion",), ["x"])).reason == "conclusion"
    assert verify_certificate(_tampered(c, ("non_torsion",), False)).reason == "torsion"
    assert verify_certificate({"curve": [0, 1]}).reason.startswith("parse")


def test_config_validation(tmp_path):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"curve": [0, 1, 2], "bogus": 1})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"curve": [0, 1, 1]})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"curve": [0, 1, 2], "N": 0})
    cfg = ExperimentConfig.from_dict({"curve": [0, 1, 2], "m": 6, "lam": 1})
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cfg.to_dict()))
    assert ExperimentConfig.load(path) == cfg


def test_inadmissible_config_fails_before_sieving():
    cfg = ExperimentConfig.from_dict({"curve": [0, 1, 2], "m": 2, "lam": 1})
    with pytest.raises(ConfigError, match="inadmissible"):
        run_experiment(cfg)


def test_not_found_reports_statistics():
    cfg = ExperimentConfig.from_dict({"curve": [0, 2, 6], "m": 1, "lam": 1, "N": 3})
    with pytest.raises(NotFound) as info:
        run_experiment(cfg)
    assert "stats" in str(info.value)


def test_least_admissible_m():
    m = least_admissible_m((0, 1, 2), 1, 1)
    assert m == 6
    assert least_admissible_m((0, 2, 6), 1, 1) == 1


def test_conclusion_text():
    lines = conclusion_text(2, True)
    assert len(lines) == 3 and "rank E^t(Q) = 0" in lines[0]
