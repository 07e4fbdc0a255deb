import json
import math

import netcap


def test_ledger_constants():
    ledger = netcap.constant_ledger(1.0, 1.0, 1)
    assert ledger["c1_prime"] == 30.0
    assert ledger["c2_prime"] == 10.0
    assert ledger["c3"] == 60.0


def test_dense_parameter_count():
    assert netcap.dense_param_count([2, 3, 1]) == 14


def test_logistic_midpoint():
    assert netcap.activation_value("logistic", 0.0) == 0.5


def test_analyze_roundtrip():
    arch = {"preset": "dense", "widths": [2, 3, 1]}
    report = netcap.analyze_architecture(json.dumps(arch), 1.0)
    assert report["free_parameters"] == 14
    assert report["log2_tight"] > 0.0
    assert report["log2_relaxed"] >= report["log2_tight"]


def test_grid_resolution_example():
    choice = netcap.choose_nstar(4, 1.0, 1, 0.0, 1.0, 10.0)
    assert choice["n_star"] == 3524


def test_sign_code_small():
    code = netcap.gv_code(4)
    assert len(code["words"]) == 16
    assert code["min_l1"] >= 2


def test_bump_plateau():
    assert netcap.bump_value(1, 1.0, 8.0, [0.0]) == 1.0
    assert netcap.bump_l1_norm(1, 1.0, 8.0) == 1.5


def test_lower_bound_monotone():
    values = [
        netcap.deep_net_lower_bound(n, 2, 2.0, 2.0, 1.0, 1)["value"]
        for n in (4, 8, 16)
    ]
    assert values[0] > values[1] > values[2] > 0.0
    assert math.isfinite(values[-1])
