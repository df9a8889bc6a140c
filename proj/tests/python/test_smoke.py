import csv
import io
import math

import numpy as np
import pytest

import srl


def test_scaling_parameters():
    prm = srl.aurwm_derive(2000, k=0.9, r=2.0)
    assert prm["n"] == 935
    assert prm["s"] == 15
    assert prm["a"] == pytest.approx(math.sqrt(4 * math.log(2000) / 935), rel=1e-14)
    assert srl.spike_value(2000, 0.9, 2.0, 13, 1, 2.0) == pytest.approx(1.268776277646574, rel=1e-12)


def test_invalid_parameters_raise_value_error():
    with pytest.raises(ValueError):
        srl.aurwm_derive(2000, k=1.0)


def test_selectors_on_noiseless_problem():
    x = srl.generate_design(200, 50, seed=3)
    assert x.shape == (200, 50)
    beta = np.zeros(50)
    beta[:5] = 2.0
    y = x @ beta
    truth = [0, 1, 2, 3, 4]
    assert srl.ms_select(srl.marginal_correlations(x, y), 5) == truth
    assert srl.lasso_select(x, y, 5) == truth
    assert srl.ets_select(x, y, 5, s_hat=5) == truth
    b, iters, trace = srl.iht(x, y, 5, max_iters=2000, rel_tol=0.0)
    assert np.allclose(b, beta, atol=1e-4)
    assert trace[-1] <= trace[0]
    x8 = x[:, :8]
    assert srl.bss_exhaustive(x8, 3 * x8[:, 0] + 2 * x8[:, 1], 2) == [0, 1]


def test_hard_threshold_tie_break():
    assert list(srl.hard_threshold(np.array([2.0, -2.0, 1.0]), 1)) == [2.0, 0.0, 0.0]


def test_design_is_deterministic():
    a = srl.generate_design(20, 4, seed=9, stream_id=2, rep=1)
    b = srl.generate_design(20, 4, seed=9, stream_id=2, rep=1)
    assert np.array_equal(a, b)


def test_run_config_returns_csvs():
    text = """
experiment:
  id: py
  reps: 3
  base: {p: 100, r: 6}
  methods:
    - {name: MS, kind: ms}
    - {name: oracle, kind: oracle}
"""
    records, summary = srl.run_config(text, workers=2, omit_timing=True)
    rows = list(csv.DictReader(io.StringIO(records)))
    assert len(rows) == 6
    assert all(r["exact"] == "1" for r in rows if r["method"] == "oracle")
    summ = list(csv.DictReader(io.StringIO(summary)))
    assert [s["method"] for s in summ] == ["MS", "oracle"]
    again, _ = srl.run_config(text, workers=1, omit_timing=True)
    assert again == records


def test_config_errors_are_value_errors():
    with pytest.raises(ValueError, match="experiment.base.k"):
        srl.run_config("experiment:\n  id: x\n  base: {k: 2}\n  methods: [{name: MS, kind: ms}]\n")


def test_verify_suite():
    results = srl.verify("ms-scale")
    assert results and all(r["passed"] for r in results)


def test_wilson():
    lo, hi = srl.wilson_interval(50, 100)
    assert lo < 0.5 < hi
