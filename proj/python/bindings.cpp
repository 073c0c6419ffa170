// Copyright 2026 The uqubo Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uqubo/error.hpp"
#include "uqubo/io.hpp"
#include "uqubo/qaoa.hpp"
#include "uqubo/sampler.hpp"
#include "uqubo/spectrum.hpp"
#include "uqubo/tuner.hpp"

namespace py = pybind11;
using namespace uqubo;

namespace {

std::vector<Bit> to_bits(const std::vector<int>& bits) { return {bits.begin(), bits.end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "QUBO penalty encodings with spectrum, QAOA and annealing experiments.";
    m.attr("__version__") = UQUBO_VERSION;

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
    py::register_exception<ParameterError>(m, "ParameterError", error.ptr());
    py::register_exception<CapabilityError>(m, "CapabilityError", error.ptr());
    py::register_exception<InfeasibleError>(m, "InfeasibleError", error.ptr());
    py::register_exception<LabelError>(m, "LabelError", error.ptr());
    py::register_exception<FormatError>(m, "FormatError", error.ptr());
    py::register_exception<IoError>(m, "IoError", error.ptr());

    py::enum_<Encoding>(m, "Encoding").value("slack", Encoding::slack).value("unbalanced", Encoding::unbalanced);
    py::enum_<ProblemKind>(m, "ProblemKind")
            .value("tsp", ProblemKind::tsp)
            .value("kp", ProblemKind::kp)
            .value("bpp", ProblemKind::bpp);
    py::enum_<ScanMethod>(m, "ScanMethod")
            .value("automatic", ScanMethod::automatic)
            .value("statevector", ScanMethod::statevector)
            .value("closed_form", ScanMethod::closed_form);

    py::class_<PenaltyConfig>(m, "PenaltyConfig")
            .def(py::init<>())
            .def(py::init([](double l0, double l1, double l2) { return PenaltyConfig{l0, l1, l2}; }),
                 py::arg("lambda0"), py::arg("lambda1"), py::arg("lambda2"))
            .def_readwrite("lambda0", &PenaltyConfig::lambda0)
            .def_readwrite("lambda1", &PenaltyConfig::lambda1)
            .def_readwrite("lambda2", &PenaltyConfig::lambda2)
            .def("__eq__", [](const PenaltyConfig& a, const PenaltyConfig& b) { return a == b; })
            .def("__repr__", [](const PenaltyConfig& c) {
                return "PenaltyConfig(" + format_double(c.lambda0) + ", " + format_double(c.lambda1) + ", " +
                       format_double(c.lambda2) + ")";
            });
    m.def("default_penalties", &default_penalties, py::arg("kind"));

    py::class_<QuadraticBinaryModel>(m, "QuadraticBinaryModel")
            .def(py::init<std::size_t, double>(), py::arg("num_vars") = 0, py::arg("offset") = 0.0)
            .def_property_readonly("num_vars", &QuadraticBinaryModel::num_vars)
            .def_property_readonly("offset", &QuadraticBinaryModel::offset)
            .def_property_readonly("linear", [](const QuadraticBinaryModel& q) { return q.linear(); })
            .def_property_readonly("quadratic", [](const QuadraticBinaryModel& q) { return q.quadratic(); })
            .def("add_offset", &QuadraticBinaryModel::add_offset)
            .def("add_linear", &QuadraticBinaryModel::add_linear)
            .def("add_quadratic", &QuadraticBinaryModel::add_quadratic)
            .def("evaluate", [](const QuadraticBinaryModel& q, const std::vector<int>& x) { return q.evaluate(to_bits(x)); })
            .def("to_text", [](const QuadraticBinaryModel& q) { return to_text(q); });
    m.def("qubo_from_text", [](const std::string& text) { return qubo_from_text(text); });

    py::class_<IsingModel>(m, "IsingModel")
            .def(py::init<std::size_t, double>(), py::arg("num_spins") = 0, py::arg("offset") = 0.0)
            .def_property_readonly("num_spins", &IsingModel::num_spins)
            .def_property_readonly("offset", &IsingModel::offset)
            .def_property_readonly("h", [](const IsingModel& i) { return i.h(); })
            .def_property_readonly("J", [](const IsingModel& i) { return i.J(); })
            .def("add_offset", &IsingModel::add_offset)
            .def("add_field", &IsingModel::add_field)
            .def("add_coupling", &IsingModel::add_coupling)
            .def("energy_of_bits", [](const IsingModel& i, const std::vector<int>& x) { return i.energy_of_bits(to_bits(x)); });
    m.def("to_ising", &to_ising);
    m.def("to_qubo", &to_qubo);

    py::class_<TspInstance>(m, "TspInstance")
            .def_readonly("n", &TspInstance::n)
            .def_readonly("coords", &TspInstance::coords)
            .def_readonly("seed", &TspInstance::seed)
            .def("distance", &TspInstance::distance);
    py::class_<KpInstance>(m, "KpInstance")
            .def_readonly("n", &KpInstance::n)
            .def_readonly("values", &KpInstance::values)
            .def_readonly("weights", &KpInstance::weights)
            .def_readonly("capacity", &KpInstance::capacity)
            .def_readonly("seed", &KpInstance::seed);
    py::class_<BppInstance>(m, "BppInstance")
            .def_readonly("n", &BppInstance::n)
            .def_readonly("weights", &BppInstance::weights)
            .def_readonly("m", &BppInstance::m)
            .def_readonly("bin_capacity", &BppInstance::bin_capacity)
            .def_readonly("seed", &BppInstance::seed)
            .def("min_bins", &BppInstance::min_bins);

    m.def("generate", &generate, py::arg("kind"), py::arg("n"), py::arg("seed"));
    m.def("make_tsp", &make_tsp, py::arg("coords"), py::arg("seed") = 0);
    m.def("make_kp", &make_kp, py::arg("values"), py::arg("weights"), py::arg("capacity"), py::arg("seed") = 0);
    m.def("make_bpp", &make_bpp, py::arg("weights"), py::arg("bin_capacity") = 20, py::arg("seed") = 0);
    m.def("instance_to_json", [](const ProblemInstance& i) { return instance_to_json(i).dump(); });
    m.def("instance_from_json", [](const std::string& text) { return instance_from_json(Json::parse(text)); });

    py::class_<EncodedProblem>(m, "EncodedProblem")
            .def_readonly("encoding", &EncodedProblem::encoding)
            .def_readonly("config", &EncodedProblem::config)
            .def_readonly("simplified", &EncodedProblem::simplified)
            .def_readonly("model", &EncodedProblem::model)
            .def_readonly("instance", &EncodedProblem::instance)
            .def_property_readonly("num_vars", &EncodedProblem::num_vars)
            .def_property_readonly("labels", [](const EncodedProblem& e) { return e.registry.free_labels(); })
            .def_property_readonly("num_slack", [](const EncodedProblem& e) { return e.registry.num_slack(); });
    m.def("build_qubo", &build_qubo, py::arg("instance"), py::arg("encoding"), py::arg("config"),
          py::arg("simplify") = true);

    py::class_<DecodedSolution>(m, "DecodedSolution")
            .def_readonly("feasible", &DecodedSolution::feasible)
            .def_readonly("objective", &DecodedSolution::objective)
            .def_readonly("violations", &DecodedSolution::violation_report);
    m.def("decode", [](const std::vector<int>& x, const EncodedProblem& e) { return decode(to_bits(x), e); });

    py::class_<OracleResult>(m, "OracleResult")
            .def_readonly("optimum", &OracleResult::optimum)
            .def_readonly("assignment", &OracleResult::assignment)
            .def_readonly("optimal_count", &OracleResult::optimal_count);
    m.def("oracle_solve", &oracle_solve);

    py::class_<SpectrumOptions>(m, "SpectrumOptions")
            .def(py::init<>())
            .def_readwrite("max_vars", &SpectrumOptions::max_vars)
            .def_readwrite("tolerance", &SpectrumOptions::tolerance)
            .def_readwrite("top_k", &SpectrumOptions::top_k)
            .def_readwrite("workers", &SpectrumOptions::workers);
    py::class_<EnergyLevel>(m, "EnergyLevel")
            .def_readonly("energy", &EnergyLevel::energy)
            .def_readonly("multiplicity", &EnergyLevel::multiplicity)
            .def_readonly("rank_start", &EnergyLevel::rank_start)
            .def_readonly("contains_optimal", &EnergyLevel::contains_optimal)
            .def_readonly("contains_feasible", &EnergyLevel::contains_feasible);
    py::class_<SpectrumSummary>(m, "SpectrumSummary")
            .def_readonly("num_states", &SpectrumSummary::num_states)
            .def_readonly("ground_energy", &SpectrumSummary::ground_energy)
            .def_readonly("max_energy", &SpectrumSummary::max_energy)
            .def_readonly("optimal_energy", &SpectrumSummary::optimal_energy)
            .def_readonly("optimal_rank", &SpectrumSummary::optimal_rank)
            .def_readonly("optimal_multiplicity", &SpectrumSummary::optimal_multiplicity)
            .def_readonly("below_optimal", &SpectrumSummary::below_optimal)
            .def_readonly("top_k", &SpectrumSummary::top_k)
            .def_readonly("encoding_failure", &SpectrumSummary::encoding_failure);
    m.def("all_energies", &all_energies, py::arg("model"), py::arg("max_vars") = kDefaultSpectrumCap);
    m.def("rank_optimal", &rank_optimal, py::arg("encoded"), py::arg("oracle"), py::arg("options") = SpectrumOptions{},
          py::call_guard<py::gil_scoped_release>());
    m.def("optimal_states", &optimal_states, py::arg("encoded"), py::arg("oracle"),
          py::arg("options") = SpectrumOptions{});

    m.def("qaoa_state",
          [](const IsingModel& ising, const std::vector<double>& gammas, const std::vector<double>& betas) {
              return qaoa_state(ising, {gammas, betas});
          },
          py::arg("ising"), py::arg("gammas"), py::arg("betas"));
    m.def("expectation", &expectation);
    m.def("probability_of_set", &probability_of_set);
    py::class_<GridSpec>(m, "GridSpec")
            .def(py::init<>())
            .def_readwrite("gamma_points", &GridSpec::gamma_points)
            .def_readwrite("beta_points", &GridSpec::beta_points)
            .def_readwrite("qmax_includes_fields", &GridSpec::qmax_includes_fields)
            .def_readwrite("method", &GridSpec::method)
            .def_readwrite("workers", &GridSpec::workers)
            .def_readwrite("max_qubits", &GridSpec::max_qubits);
    py::class_<LandscapeGrid>(m, "LandscapeGrid")
            .def_readonly("gamma_axis", &LandscapeGrid::gamma_axis)
            .def_readonly("beta_axis", &LandscapeGrid::beta_axis)
            .def_readonly("energy", &LandscapeGrid::energy)
            .def_readonly("p_opt", &LandscapeGrid::p_opt)
            .def_readonly("p_opt_max", &LandscapeGrid::p_opt_max)
            .def_readonly("min_cell", &LandscapeGrid::min_cell)
            .def_readonly("q_max", &LandscapeGrid::q_max)
            .def_readonly("num_qubits", &LandscapeGrid::num_qubits)
            .def("p_opt_at_min", &LandscapeGrid::p_opt_at_min)
            .def("min_energy", &LandscapeGrid::min_energy);
    m.def("scan_landscape", &scan_landscape, py::arg("ising"), py::arg("optimal_set"), py::arg("spec") = GridSpec{},
          py::call_guard<py::gil_scoped_release>());
    m.def("cop", &cop, py::arg("p_opt"), py::arg("num_qubits"));
    py::class_<CopPoint>(m, "CopPoint")
            .def_readonly("num_qubits", &CopPoint::num_qubits)
            .def_readonly("gamma", &CopPoint::gamma)
            .def_readonly("beta", &CopPoint::beta)
            .def_readonly("p_opt", &CopPoint::p_opt)
            .def_readonly("p_opt_max", &CopPoint::p_opt_max)
            .def_readonly("cop", &CopPoint::cop);
    m.def("cop_at_minimum", &cop_at_minimum, py::arg("encoded"), py::arg("oracle"), py::arg("spec") = GridSpec{});

    m.def("rank_objective", &rank_objective, py::arg("config"), py::arg("instance"),
          py::arg("encoding") = Encoding::unbalanced, py::arg("options") = SpectrumOptions{});
    py::class_<TraceRow>(m, "TraceRow")
            .def_readonly("iteration", &TraceRow::iteration)
            .def_readonly("config", &TraceRow::config)
            .def_readonly("objective", &TraceRow::objective);
    py::class_<TuneResult>(m, "TuneResult")
            .def_readonly("best", &TuneResult::best)
            .def_readonly("objective", &TuneResult::objective)
            .def_readonly("initial_objective", &TuneResult::initial_objective)
            .def_readonly("converged", &TuneResult::converged)
            .def_readonly("trace", &TuneResult::trace);
    m.def(
            "tune",
            [](const PenaltyConfig& initial, const std::vector<ProblemInstance>& instances, Encoding encoding,
               std::size_t max_iterations) {
                TuneConfig cfg;
                cfg.initial = initial;
                cfg.encoding = encoding;
                cfg.simplex.max_iterations = max_iterations;
                cfg.training_instances = instances;
                return tune(cfg);
            },
            py::arg("initial"), py::arg("instances"), py::arg("encoding") = Encoding::unbalanced,
            py::arg("max_iterations") = 100);

    py::class_<SampleRecord>(m, "SampleRecord")
            .def_readonly("bits", &SampleRecord::bits)
            .def_readonly("energy", &SampleRecord::energy)
            .def_readonly("count", &SampleRecord::count);
    py::class_<SampleSet>(m, "SampleSet")
            .def_readonly("records", &SampleSet::records)
            .def_readonly("total_reads", &SampleSet::total_reads)
            .def_readonly("backend", &SampleSet::backend)
            .def_readonly("seed", &SampleSet::seed);
    m.def(
            "anneal",
            [](const IsingModel& ising, std::size_t num_reads, std::uint64_t seed, std::size_t num_sweeps,
               double beta_initial, double beta_final, unsigned workers) {
                return anneal(ising, {num_sweeps, beta_initial, beta_final, ScheduleShape::geometric}, num_reads, seed,
                              workers);
            },
            py::arg("ising"), py::arg("num_reads"), py::arg("seed"), py::arg("num_sweeps") = 1000,
            py::arg("beta_initial") = 0.1, py::arg("beta_final") = 10.0, py::arg("workers") = 1,
            py::call_guard<py::gil_scoped_release>());
    py::class_<InstanceSuccess>(m, "InstanceSuccess")
            .def_readonly("size", &InstanceSuccess::size)
            .def_readonly("instance_seed", &InstanceSuccess::instance_seed)
            .def_readonly("num_vars", &InstanceSuccess::num_vars)
            .def_readonly("p_optimal", &InstanceSuccess::p_optimal)
            .def_readonly("p_valid", &InstanceSuccess::p_valid)
            .def_readonly("reads", &InstanceSuccess::reads);
    py::class_<SuccessReport>(m, "SuccessReport")
            .def_readonly("size", &SuccessReport::size)
            .def_readonly("encoding", &SuccessReport::encoding)
            .def_readonly("p_optimal", &SuccessReport::p_optimal)
            .def_readonly("p_valid", &SuccessReport::p_valid)
            .def_readonly("instances", &SuccessReport::instances);
    m.def(
            "run_success_experiment",
            [](ProblemKind kind, const std::vector<std::size_t>& sizes, std::size_t trials, Encoding encoding,
               const PenaltyConfig& config, std::uint64_t seed, std::size_t num_reads, std::size_t num_sweeps,
               bool simplify) {
                SimulatedAnnealingSampler sa({.num_sweeps = num_sweeps});
                return run_success_experiment(kind, sizes, trials, encoding, config, sa, seed,
                                              {.num_reads = num_reads, .simplify = simplify});
            },
            py::arg("kind"), py::arg("sizes"), py::arg("trials"), py::arg("encoding"), py::arg("config"),
            py::arg("seed"), py::arg("num_reads") = 5000, py::arg("num_sweeps") = 1000, py::arg("simplify") = true,
            py::call_guard<py::gil_scoped_release>());
}
