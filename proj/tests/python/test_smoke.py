# Copyright 2026 The uqubo Authors.
#
#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at
#
#        http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.

import json
import math

import pytest

import uqubo


def test_version():
    assert uqubo.__version__ == "0.1.0"


def test_qubo_and_ising_agree():
    q = uqubo.QuadraticBinaryModel(2)
    q.add_linear(0, 1.0)
    q.add_linear(1, 1.0)
    q.add_quadratic(0, 1, -2.0)
    ising = uqubo.to_ising(q)
    for x in ([0, 0], [0, 1], [1, 0], [1, 1]):
        assert ising.energy_of_bits(x) == pytest.approx(q.evaluate(x))
    assert uqubo.qubo_from_text(q.to_text()).quadratic == q.quadratic


def test_generate_and_encode_tsp():
    inst = uqubo.generate(uqubo.ProblemKind.tsp, 4, 7)
    assert isinstance(inst, uqubo.TspInstance)
    enc = uqubo.build_qubo(inst, uqubo.Encoding.unbalanced, uqubo.default_penalties(uqubo.ProblemKind.tsp))
    assert enc.num_vars == 12
    assert enc.num_slack == 0
    assert json.loads(uqubo.instance_to_json(inst))["kind"] == "tsp"
    assert uqubo.instance_from_json(uqubo.instance_to_json(inst)).coords == inst.coords


def test_kp_spectrum_rank():
    inst = uqubo.generate(uqubo.ProblemKind.kp, 8, 3)
    oracle = uqubo.oracle_solve(inst)
    enc = uqubo.build_qubo(inst, uqubo.Encoding.unbalanced, uqubo.default_penalties(uqubo.ProblemKind.kp))
    summary = uqubo.rank_optimal(enc, oracle)
    assert summary.num_states == 2 ** enc.num_vars
    assert summary.optimal_rank == summary.below_optimal + 1
    assert not summary.encoding_failure
    states = uqubo.optimal_states(enc, oracle)
    bits = [(states[0] >> i) & 1 for i in range(enc.num_vars)]
    decoded = uqubo.decode(bits, enc)
    assert decoded.feasible
    assert decoded.objective == pytest.approx(oracle.optimum)


def test_qaoa_landscape_and_cop():
    inst = uqubo.generate(uqubo.ProblemKind.tsp, 3, 0)
    enc = uqubo.build_qubo(inst, uqubo.Encoding.unbalanced, uqubo.default_penalties(uqubo.ProblemKind.tsp))
    oracle = uqubo.oracle_solve(inst)
    ising = uqubo.to_ising(enc.model)
    state = uqubo.qaoa_state(ising, [0.1], [0.2])
    assert sum(abs(a) ** 2 for a in state) == pytest.approx(1.0)
    spec = uqubo.GridSpec()
    spec.gamma_points = 8
    spec.beta_points = 8
    grid = uqubo.scan_landscape(ising, uqubo.optimal_states(enc, oracle), spec)
    assert len(grid.energy) == 64
    assert grid.min_energy() == min(grid.energy)
    point = uqubo.cop_at_minimum(enc, oracle, spec)
    assert point.cop == pytest.approx(point.p_opt * 2 ** point.num_qubits)
    assert uqubo.cop(0.5, 1) == 1.0


def test_anneal_and_success():
    ising = uqubo.IsingModel(1)
    ising.add_field(0, 1.0)
    samples = uqubo.anneal(ising, num_reads=100, seed=5, num_sweeps=50)
    assert samples.total_reads == 100
    assert samples.records[0].bits == [1]
    reports = uqubo.run_success_experiment(uqubo.ProblemKind.kp, [4], 2, uqubo.Encoding.unbalanced,
                                           uqubo.default_penalties(uqubo.ProblemKind.kp), 1, num_reads=50,
                                           num_sweeps=100)
    assert 0.0 <= reports[0].p_optimal <= reports[0].p_valid <= 1.0


def test_tune_does_not_get_worse():
    inst = uqubo.generate(uqubo.ProblemKind.kp, 6, 1)
    start = uqubo.PenaltyConfig(0.0, 2.0, 0.5)
    result = uqubo.tune(start, [inst], max_iterations=10)
    assert result.objective <= result.initial_objective
    assert result.best.lambda0 == 0.0


def test_errors_map_to_python():
    with pytest.raises(uqubo.ParameterError):
        uqubo.cop(1.5, 2)
    with pytest.raises(uqubo.Error):
        uqubo.qubo_from_text("nonsense")
    assert math.isfinite(uqubo.rank_objective(uqubo.default_penalties(uqubo.ProblemKind.kp),
                                              uqubo.generate(uqubo.ProblemKind.kp, 5, 0)))
