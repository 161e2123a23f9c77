from __future__ import annotations

import json
import math

import mpmath as mp
import numpy as np
import pytest

from qaoa_cnot import ansatz as az
from qaoa_cnot.ansatz import AnsatzParams
from qaoa_cnot.error_model import (
    DeviceParams,
    InvalidReduction,
    bundled_devices,
    dfs_beneficial,
    dfs_threshold,
    is_beneficial,
    lam,
    load_device,
    p_success,
    p_success_opt,
    report,
    report_from_counts,
    worst_case_depth_increase,
)
from qaoa_cnot.graph import complete_graph, cycle_graph

REF = DeviceParams(t_cx=300, T1=100_000, p_cx=0.01)
MANHATTAN_LIKE = DeviceParams(t_cx=300, T1=70_000, p_cx=0.015)
P1 = AnsatzParams.single(0.4, 0.8)


def mp_lam(d: DeviceParams) -> mp.mpf:
    with mp.workdps(50):
        return -mp.log(1 - mp.mpf(d.p_cx)) * mp.mpf(d.T1) / mp.mpf(d.t_cx)


def test_p_success_examples():
    assert p_success(0, 0, REF) == 1.0
    d0 = DeviceParams(300, 100_000, 0.0)
    assert p_success(17, 4, d0) == pytest.approx(math.exp(-4 * 300 / 100_000))
    with mp.workdps(50):
        oracle = mp.mpf("0.99") ** 10 * mp.exp(-mp.mpf(5) * 300 / 100_000)
    assert p_success(10, 5, REF) == pytest.approx(float(oracle), rel=1e-12)
    assert abs(p_success(10, 5, REF) - 0.89090) < 5e-5


def test_p_success_opt():
    assert p_success_opt(20, 6, 0, 0, REF) == p_success(20, 6, REF)
    assert p_success_opt(20, 6, 20, 0, REF) > p_success(20, 6, REF)
    with pytest.raises(InvalidReduction):
        p_success_opt(5, 3, 6, 0, REF)
    with pytest.raises(InvalidReduction):
        p_success_opt(5, 3, 1, -4, REF)


def test_manhattan_like_ratio():
    d = MANHATTAN_LIKE
    ratio = p_success_opt(90, 18, 9, 8, d) / p_success(90, 18, d)
    with mp.workdps(50):
        oracle = mp.exp(-8 * mp.mpf(300) / 70_000) / (1 - mp.mpf("0.015")) ** 9
    assert ratio == pytest.approx(float(oracle), rel=1e-12)
    assert ratio > 1


def test_lambda_values():
    assert abs(lam(REF) - 3.3501) < 1e-4
    assert abs(lam(REF) - float(mp_lam(REF))) < 1e-10
    assert lam(DeviceParams(300, 100_000, 0.0)) == 0.0


def test_bundled_profiles_in_table_range():
    devices = bundled_devices()
    assert devices and all("illustrative" in d.name for d in devices)
    for d in devices:
        assert 2.0 <= lam(d) <= 4.0


def test_lambda_partial_derivative_signs():
    h = 1e-6
    base = lam(REF)
    assert lam(DeviceParams(REF.t_cx, REF.T1 * (1 + h), REF.p_cx)) > base
    assert lam(DeviceParams(REF.t_cx * (1 + h), REF.T1, REF.p_cx)) < base
    assert lam(DeviceParams(REF.t_cx, REF.T1, REF.p_cx * (1 + h))) > base


def test_monotonicity():
    for k in range(30):
        assert p_success(k + 1, 3, REF) < p_success(k, 3, REF)
        assert p_success(3, k + 1, REF) < p_success(3, k, REF)


def test_thresholds():
    assert dfs_threshold(2) == 0.0
    assert dfs_beneficial(2, DeviceParams(300, 1, 1e-9))
    for n in (3, 10, 1000, 10**6):
        assert dfs_threshold(n) < 1
    assert dfs_threshold(10**6) > 0.99999
    assert worst_case_depth_increase(10) == 8
    d_half = DeviceParams(t_cx=1.0, T1=0.5 / -math.log1p(-0.01), p_cx=0.01)
    assert lam(d_half) == pytest.approx(0.5)
    assert not dfs_beneficial(4, d_half)
    for d in bundled_devices():
        assert lam(d) >= 1
        assert all(dfs_beneficial(n, d) for n in range(2, 200))


def test_crossover_exact_on_random_points():
    rng = np.random.default_rng(77)
    for _ in range(2000):
        d = DeviceParams(
            t_cx=float(rng.uniform(50, 1000)),
            T1=float(rng.uniform(1e4, 2e5)),
            p_cx=float(rng.uniform(1e-4, 0.1)),
        )
        k = int(rng.integers(1, 400))
        N = int(rng.integers(1, 200))
        k1 = int(rng.integers(0, k + 1))
        N1 = int(rng.integers(-N, 60))
        better = p_success_opt(k, N, k1, N1, d) >= p_success(k, N, d)
        assert better == is_beneficial(k1, N1, lam(d))


def test_device_json_round_trip(tmp_path):
    path = tmp_path / "dev.json"
    path.write_text(json.dumps(MANHATTAN_LIKE.to_dict()))
    assert load_device(path) == MANHATTAN_LIKE
    with pytest.raises(ValueError):
        DeviceParams(t_cx=0, T1=1, p_cx=0.1)
    with pytest.raises(ValueError):
        DeviceParams(t_cx=1, T1=1, p_cx=1.0)


def test_report_examples():
    g = cycle_graph(4)
    grouped = az.build_traditional(g, P1, az.colored_edge_order(g))
    same = report(grouped, grouped, MANHATTAN_LIKE)
    assert (same.k1, same.N1, same.beneficial) == (0, 0, True)
    c4 = report(grouped, az.build_dfs(g, P1)[0], MANHATTAN_LIKE)
    assert (c4.k1, c4.N1) == (3, 1)
    k10 = complete_graph(10)
    r = report(az.build_traditional(k10, P1, az.colored_edge_order(k10)),
               az.build_dfs(k10, P1)[0], MANHATTAN_LIKE)
    assert r.k1 == 9 and r.beneficial
    assert r.p_success_opt > r.p_success_base
    assert json.loads(r.to_json())["k"] == 90


def test_report_from_counts_negative_gain():
    r = report_from_counts(10, 5, 12, 4, REF)
    assert r.k1 == -2 and not r.beneficial
