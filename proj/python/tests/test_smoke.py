# Copyright 2026 The qctrl-bench Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import json
import math

import numpy as np
import pytest

import qctrl_bench as qb


def test_task_listing():
    assert qb.TASK_COUNT == 16
    assert qb.roman(14) == "XIV"
    assert qb.parse_task_id("xv") == 15
    assert qb.parse_task_id("XVII") is None
    info = qb.task_info(1)
    assert info["n_slices"] == 40
    assert info["channels"][0]["name"] == "g"
    assert info["params"]["h0"] == 2.0
    assert qb.task_info(2, n_slices=80)["n_slices"] == 80
    with pytest.raises(ValueError):
        qb.task_info(17)


def test_reference_fidelity():
    u = qb.reference_protocol(1)
    assert u.shape == (1, 40)
    assert qb.evaluate(1, u) == pytest.approx(0.9999999491, abs=1e-9)
    assert qb.evaluate(1, u, sigma=0.02, noise_seed=0) < qb.evaluate(1, u)
    assert qb.noise_signs(1, 0.02, 0) == "-+-"
    assert qb.reference_protocol(2) is None


def test_shape_mismatch_raises():
    with pytest.raises(ValueError):
        qb.evaluate(3, np.zeros((1, 19)))


def test_expressions():
    ok = qb.parse_expression("a*sin(2*pi*t/T) + b")
    assert ok["ok"] and ok["coefficients"] == ["a", "b"]
    bad = qb.parse_expression("a*abs(t)")
    assert not bad["ok"]
    assert bad["error"]["code"] == "disallowed_function"
    assert bad["error"]["offset"] == 2
    assert qb.evaluate_expression("-2^2", 0.0, 1.0) == -4.0
    assert qb.evaluate_expression("a*t", 0.5, 1.0, {"a": 3.0}) == 1.5
    with pytest.raises(ValueError):
        qb.evaluate_expression("log(t)", 0.0, 1.0)


def test_spsa_with_python_objective():
    calls = []

    def sphere(x):
        calls.append(1)
        return float(np.dot(x, x))

    r = qb.spsa_minimize(sphere, np.ones(3), budget=200, a=0.5, seed=3)
    assert len(calls) == 400
    assert r["evaluations"] == 400
    assert r["value"] < 0.05
    assert all(b >= c for b, c in zip(r["best_so_far"], r["best_so_far"][1:]))


def test_grape_task_x():
    info = qb.task_info(10)
    rng = np.random.default_rng(1)
    u0 = rng.uniform(-0.3, 0.3, size=(len(info["channels"]), info["n_slices"]))
    r = qb.grape(10, u0, max_iterations=300)
    assert r["fidelity"] >= 0.9999
    assert qb.evaluate(10, r["amplitudes"]) == pytest.approx(r["fidelity"], abs=1e-12)


def test_scripted_benchmark_and_aggregate(tmp_path):
    payload = json.dumps({"g": {"expression": "a*sin(2*t) + b", "parameters": {"a": 0.3, "b": 0.1}}})
    out = tmp_path / "run.jsonl"
    r = qb.run_benchmark(["I"], str(out), K=2, B_opt=5, epsilon=1e-12, repetitions=2,
                         script=[[payload, payload, "- note"]])
    assert r["ok"] and r["runs"] == 2
    records = [json.loads(line) for line in out.read_text().splitlines()]
    assert records[0]["type"] == "header"
    rows = [x for x in records if x["type"] == "row"]
    assert len(rows) == 4
    assert all(x["oracle_calls"] == 11 for x in rows)
    tables = qb.aggregate([str(out)])
    assert "best_fidelity.tsv" in tables
    assert tables["best_fidelity.tsv"].splitlines()[1].startswith("I\tvf-qctrl\tscripted\t0\t2\t")


def test_missing_client_is_an_error(tmp_path):
    with pytest.raises(ValueError):
        qb.run_benchmark(["I"], str(tmp_path / "x.jsonl"), K=1)
    assert math.isfinite(qb.evaluate(7, np.zeros((2, 10))))
