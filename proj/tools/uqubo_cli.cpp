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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "uqubo/error.hpp"
#include "uqubo/io.hpp"

namespace fs = std::filesystem;
using namespace uqubo;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCapability = 3;
constexpr int kExitIo = 4;

constexpr std::size_t kLandscapeStatevectorCap = 20;
constexpr std::size_t kLandscapeClosedFormCap = 24;

unsigned default_workers() {
    if (const char* env = std::getenv("UQUBO_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring UQUBO_WORKERS=" << env << "\n";
    }
    return 1;
}

/// "a:b:step", "a:b", "a" or "a,b,c".
std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    auto number = [&](const std::string& s) -> std::size_t {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty()) throw ParameterError("bad size '" + s + "' in '" + text + "'");
        return v;
    };
    if (text.find(',') != std::string::npos) {
        std::stringstream in(text);
        for (std::string part; std::getline(in, part, ',');) out.push_back(number(part));
        return out;
    }
    std::vector<std::size_t> parts;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ':');) parts.push_back(number(part));
    if (parts.empty() || parts.size() > 3) throw ParameterError("sizes must look like a:b:step");
    const std::size_t lo = parts[0], hi = parts.size() > 1 ? parts[1] : lo, step = parts.size() > 2 ? parts[2] : 1;
    if (step == 0 || hi < lo) throw ParameterError("empty size range '" + text + "'");
    for (std::size_t s = lo; s <= hi; s += step) out.push_back(s);
    return out;
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    try {
        if (x == std::string::npos) {
            const auto k = std::stoul(text);
            return {k, k};
        }
        return {std::stoul(text.substr(0, x)), std::stoul(text.substr(x + 1))};
    } catch (const std::exception&) {
        throw ParameterError("grid must look like 50x50");
    }
}

struct Globals {
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string out_dir = ".";
    std::string format = "csv";
};

/// Options that pick or build one instance and its encoding.
struct InstanceArgs {
    std::string problem;
    std::size_t n = 0;
    std::string instance_file;
    std::string encoding = "unbalanced";
    std::optional<double> lambda0, lambda1, lambda2;
    bool no_simplify = false;

    void add_to(CLI::App* cmd, bool with_instance = true) {
        cmd->add_option("--problem", problem, "Problem kind")->check(CLI::IsMember({"tsp", "kp", "bpp"}));
        if (with_instance) {
            cmd->add_option("--n", n, "Cities / items");
            cmd->add_option("--instance", instance_file, "Instance JSON file (overrides --problem/--n)");
        }
        cmd->add_option("--encoding", encoding, "Inequality encoding")->check(CLI::IsMember({"slack", "unbalanced"}));
        cmd->add_option("--lambda0", lambda0, "Equality penalty weight");
        cmd->add_option("--lambda1", lambda1, "Inequality penalty weight (linear for unbalanced)");
        cmd->add_option("--lambda2", lambda2, "Quadratic unbalanced weight");
        cmd->add_flag("--no-simplify", no_simplify, "Keep BPP pre-fixed variables");
    }

    ProblemKind kind() const {
        if (problem.empty()) throw ParameterError("--problem is required");
        return parse_problem_kind(problem);
    }

    ProblemInstance load(std::uint64_t seed) const {
        if (!instance_file.empty()) {
            try {
                return instance_from_json(Json::parse(read_file(instance_file)));
            } catch (const nlohmann::json::exception& e) {
                throw FormatError(instance_file + ": " + e.what());
            }
        }
        if (n == 0) throw ParameterError("--n is required without --instance");
        return generate(kind(), n, seed);
    }

    PenaltyConfig penalties(ProblemKind k) const {
        auto c = default_penalties(k);
        if (lambda0) c.lambda0 = *lambda0;
        if (lambda1) c.lambda1 = *lambda1;
        if (lambda2) c.lambda2 = *lambda2;
        return c;
    }

    Encoding enc() const { return parse_encoding(encoding); }
};

class Runner {
 public:
    Runner(std::vector<std::string> args, std::ostream& out) : args_(std::move(args)), out_(out) {}

    int run();

 private:
    fs::path output(const std::string& stem, const std::string& ext) {
        fs::path p = fs::path(g_.out_dir) / (stem + "." + ext);
        outputs_.push_back(p.filename().string());
        return p;
    }
    OutputFormat format() const { return parse_output_format(g_.format); }

    void write_table(const std::string& stem, const Table& t) {
        write_file_atomic(output(stem, extension(format())), render(t, format()));
    }
    void write_json(const std::string& stem, const Json& j) { write_file_atomic(output(stem, "json"), j.dump(2) + "\n"); }

    void finish(const std::string& stem, ExperimentManifest m) {
        m.command = command_;
        m.args = replay_args();
        m.outputs = outputs_;
        m.seeds = m.seeds.empty() ? std::vector<std::uint64_t>{g_.seed} : m.seeds;
        write_file_atomic(fs::path(g_.out_dir) / (stem + ".manifest.json"), to_json(m).dump(2) + "\n");
        out_ << "wrote";
        for (const auto& o : outputs_) out_ << " " << (fs::path(g_.out_dir) / o).string();
        out_ << "\n";
    }

    /// Arguments minus --out-dir, which replay supplies.
    std::vector<std::string> replay_args() const {
        std::vector<std::string> out;
        for (std::size_t k = 0; k < args_.size(); ++k) {
            if (args_[k] == "--out-dir") {
                ++k;
                continue;
            }
            if (args_[k].rfind("--out-dir=", 0) == 0) continue;
            out.push_back(args_[k]);
        }
        return out;
    }

    static std::string stem(const std::string& cmd, const ProblemInstance& inst, const std::string& encoding = "") {
        std::string s = cmd + "_" + std::string(to_string(kind_of(inst))) + "_n" + std::to_string(size_of(inst)) + "_s" +
                        std::to_string(seed_of(inst));
        if (!encoding.empty()) s += "_" + encoding;
        return s;
    }

    ExperimentManifest base_manifest(const InstanceArgs& a, ProblemKind kind, std::vector<std::size_t> sizes) const {
        ExperimentManifest m;
        m.problem = std::string(to_string(kind));
        m.sizes = std::move(sizes);
        m.encoding = a.encoding;
        m.penalties = a.penalties(kind);
        return m;
    }

    void cmd_generate();
    void cmd_encode();
    void cmd_spectrum();
    void cmd_landscape();
    void cmd_cop();
    void cmd_tune();
    void cmd_anneal();
    void cmd_replay();

    std::vector<std::string> args_;
    std::ostream& out_;
    Globals g_;
    std::string command_;
    std::vector<std::string> outputs_;

    InstanceArgs inst_;
    std::size_t top_k_ = 50;
    std::size_t max_vars_ = kDefaultSpectrumCap;
    std::size_t spot_checks_ = 0;
    std::string grid_ = "50x50";
    std::string method_ = "auto";
    bool qmax_couplings_only_ = false;
    std::string sizes_;
    std::size_t trials_ = 1;
    std::size_t training_ = 1;
    std::size_t max_iterations_ = 100;
    std::size_t reads_ = 5000;
    AnnealSchedule schedule_;
    std::string shape_ = "geometric";
    std::string manifest_;
};

void Runner::cmd_generate() {
    const auto inst = inst_.load(g_.seed);
    const auto st = stem("instance", inst);
    write_json(st, instance_to_json(inst));
    finish(st, base_manifest(inst_, kind_of(inst), {size_of(inst)}));
}

void Runner::cmd_encode() {
    const auto inst = inst_.load(g_.seed);
    const auto kind = kind_of(inst);
    const auto enc = build_qubo(inst, inst_.enc(), inst_.penalties(kind), !inst_.no_simplify);
    const auto st = stem("encode", inst, inst_.encoding);
    write_file_atomic(output(st, "qubo"), to_text(enc.model));
    write_json(st, encoded_to_json(enc));
    out_ << "variables " << enc.num_vars() << " (slack " << enc.registry.num_slack() << ")\n";
    finish(st, base_manifest(inst_, kind, {size_of(inst)}));
}

void Runner::cmd_spectrum() {
    const auto inst = inst_.load(g_.seed);
    const auto kind = kind_of(inst);
    const auto enc = build_qubo(inst, inst_.enc(), inst_.penalties(kind), !inst_.no_simplify);
    SpectrumOptions opt{.max_vars = max_vars_, .top_k = top_k_, .workers = g_.workers, .spot_checks = spot_checks_,
                        .spot_check_seed = g_.seed};
    const auto summary = rank_optimal(enc, oracle_solve(inst), opt);
    const auto st = stem("spectrum", inst, inst_.encoding);
    write_table(st, spectrum_table(summary));
    auto j = spectrum_summary_json(summary);
    Json below = Json::array();
    for (const auto& row : infeasible_ground_report(summary, enc, opt, 100)) {
        below.push_back({{"state", row.state},
                         {"energy", row.energy},
                         {"feasible", row.decoded.feasible},
                         {"violations", row.decoded.violation_report}});
    }
    j["below_optimal_states"] = std::move(below);
    write_json(st + "_summary", j);
    if (summary.encoding_failure) {
        out_ << "encoding failure: no state decodes to the optimum\n";
    } else {
        out_ << "rank " << summary.optimal_rank << " of " << summary.num_states << " (multiplicity "
             << summary.optimal_multiplicity << ")\n";
    }
    finish(st, base_manifest(inst_, kind, {size_of(inst)}));
}

namespace {

GridSpec make_grid(const std::string& grid, const std::string& method, bool couplings_only, unsigned workers,
                   std::size_t n) {
    const auto [gp, bp] = parse_grid(grid);
    GridSpec spec{.gamma_points = gp, .beta_points = bp, .qmax_includes_fields = !couplings_only,
                  .method = parse_scan_method(method), .workers = workers};
    auto resolved = spec.method;
    if (resolved == ScanMethod::automatic) {
        resolved = n <= kAutoStatevectorLimit ? ScanMethod::statevector : ScanMethod::closed_form;
    }
    spec.max_qubits = resolved == ScanMethod::statevector ? kLandscapeStatevectorCap : kLandscapeClosedFormCap;
    return spec;
}

}  // namespace

void Runner::cmd_landscape() {
    const auto inst = inst_.load(g_.seed);
    const auto kind = kind_of(inst);
    const auto enc = build_qubo(inst, inst_.enc(), inst_.penalties(kind), !inst_.no_simplify);
    const auto spec = make_grid(grid_, method_, qmax_couplings_only_, g_.workers, enc.num_vars());
    if (enc.num_vars() > spec.max_qubits) {
        throw CapabilityError("landscape of " + std::to_string(enc.num_vars()) + " qubits exceeds the cap of " +
                              std::to_string(spec.max_qubits));
    }
    const auto targets = optimal_states(enc, oracle_solve(inst), {.max_vars = spec.max_qubits});
    const auto grid = scan_landscape(to_ising(enc.model), targets, spec);
    const auto st = stem("landscape", inst, inst_.encoding);
    write_table(st, landscape_table(grid));
    const auto [gi, bi] = grid.min_cell;
    const auto cell = grid.index(gi, bi);
    write_json(st + "_summary", Json{{"num_qubits", grid.num_qubits},
                                     {"method", to_string(grid.method)},
                                     {"q_max", grid.q_max},
                                     {"optimal_states", targets.size()},
                                     {"min_gamma", grid.gamma_axis[gi]},
                                     {"min_beta", grid.beta_axis[bi]},
                                     {"min_energy", grid.energy[cell]},
                                     {"p_opt_set", grid.p_opt[cell]},
                                     {"p_opt_max", grid.p_opt_max[cell]},
                                     {"cop", cop(std::min(grid.p_opt[cell], 1.0), grid.num_qubits)}});
    out_ << "qubits " << grid.num_qubits << ", p_opt at minimum " << format_double(grid.p_opt[cell]) << "\n";
    auto m = base_manifest(inst_, kind, {size_of(inst)});
    m.grid = grid_;
    finish(st, m);
}

void Runner::cmd_cop() {
    const auto kind = inst_.kind();
    const auto sizes = parse_sizes(sizes_);
    std::vector<CopPoint> points;
    std::vector<std::uint64_t> seeds;
    for (std::size_t t = 0; t < trials_; ++t) seeds.push_back(g_.seed + t);
    for (auto n : sizes) {
        for (auto s : seeds) {
            const auto inst = generate(kind, n, s);
            const auto enc = build_qubo(inst, inst_.enc(), inst_.penalties(kind), !inst_.no_simplify);
            const auto spec = make_grid(grid_, method_, qmax_couplings_only_, g_.workers, enc.num_vars());
            if (enc.num_vars() > spec.max_qubits) {
                throw CapabilityError(std::to_string(n) + "-size instance needs " + std::to_string(enc.num_vars()) +
                                      " qubits, above the landscape cap of " + std::to_string(spec.max_qubits));
            }
            points.push_back(cop_at_minimum(enc, oracle_solve(inst), spec));
            out_ << "size " << n << " seed " << s << " qubits " << points.back().num_qubits << " cop "
                 << format_double(points.back().cop) << "\n";
        }
    }
    const std::string st = "cop_" + std::string(to_string(kind)) + "_" + inst_.encoding;
    write_table(st, cop_table(points));
    auto m = base_manifest(inst_, kind, sizes);
    m.seeds = seeds;
    m.grid = grid_;
    finish(st, m);
}

void Runner::cmd_tune() {
    const auto first = inst_.load(g_.seed);
    const auto kind = kind_of(first);
    TuneConfig cfg;
    cfg.initial = inst_.penalties(kind);
    cfg.encoding = inst_.enc();
    cfg.simplex.max_iterations = max_iterations_;
    cfg.spectrum = {.max_vars = max_vars_, .workers = g_.workers};
    cfg.training_instances.push_back(first);
    std::vector<std::uint64_t> seeds{g_.seed};
    for (std::size_t t = 1; t < training_; ++t) {
        if (!inst_.instance_file.empty()) throw ParameterError("--training needs generated instances, not --instance");
        seeds.push_back(g_.seed + t);
        cfg.training_instances.push_back(generate(kind, size_of(first), g_.seed + t));
    }
    const auto r = tune(cfg);
    const auto st = stem("tune", first, inst_.encoding);
    write_table(st, trace_table(r.trace));
    write_json(st + "_result", Json{{"lambda0", r.best.lambda0},
                                    {"lambda1", r.best.lambda1},
                                    {"lambda2", r.best.lambda2},
                                    {"objective", r.objective},
                                    {"initial_objective", r.initial_objective},
                                    {"converged", r.converged},
                                    {"iterations", r.trace.empty() ? 0 : r.trace.back().iteration}});
    out_ << "objective " << format_double(r.initial_objective) << " -> " << format_double(r.objective) << " at ("
         << format_double(r.best.lambda0) << ", " << format_double(r.best.lambda1) << ", "
         << format_double(r.best.lambda2) << ")" << (r.converged ? "" : " [not converged]") << "\n";
    auto m = base_manifest(inst_, kind, {size_of(first)});
    m.seeds = seeds;
    finish(st, m);
}

void Runner::cmd_anneal() {
    const auto kind = inst_.kind();
    const auto sizes = parse_sizes(sizes_);
    schedule_.shape = parse_schedule_shape(shape_);
    schedule_.validate();
    const SimulatedAnnealingSampler sampler(schedule_, g_.workers);
    std::vector<SuccessReport> all;
    const bool both = inst_.encoding == "both";
    for (const auto* name : {"slack", "unbalanced"}) {
        if (!both && inst_.encoding != name) continue;
        auto reports = run_success_experiment(kind, sizes, trials_, parse_encoding(name), inst_.penalties(kind), sampler,
                                              g_.seed, {.num_reads = reads_, .simplify = !inst_.no_simplify});
        for (const auto& r : reports) {
            out_ << "size " << r.size << " " << name << " p_optimal " << format_double(r.p_optimal) << " p_valid "
                 << format_double(r.p_valid) << "\n";
        }
        all.insert(all.end(), reports.begin(), reports.end());
    }
    const std::string st = "anneal_" + std::string(to_string(kind)) + "_" + inst_.encoding;
    write_table(st, success_table(all));
    auto m = base_manifest(inst_, kind, sizes);
    finish(st, m);
}

void Runner::cmd_replay() {
    const auto m = manifest_from_json(Json::parse(read_file(manifest_)));
    std::vector<std::string> args = m.args;
    const bool has_out = std::any_of(args_.begin(), args_.end(),
                                     [](const std::string& a) { return a.rfind("--out-dir", 0) == 0; });
    args.push_back("--out-dir");
    args.push_back(has_out ? g_.out_dir : fs::path(manifest_).parent_path().string());
    if (args.back().empty()) args.back() = ".";
    Runner inner(args, out_);
    const int code = inner.run();
    if (code != 0) throw Error("replayed command failed with exit code " + std::to_string(code));
}

int Runner::run() {
    CLI::App app{"Penalty encodings of constrained problems as QUBOs, with spectrum, QAOA and annealing experiments",
                 "uqubo"};
    app.set_version_flag("--version", UQUBO_VERSION);
    app.require_subcommand(1);
    app.fallthrough();
    g_.workers = default_workers();
    app.add_option("--seed", g_.seed, "Instance / experiment seed");
    app.add_option("--workers", g_.workers, "Worker threads (default $UQUBO_WORKERS or 1)")->check(CLI::PositiveNumber);
    app.add_option("--out-dir", g_.out_dir, "Directory for output files");
    app.add_option("--format", g_.format, "Table format")->check(CLI::IsMember({"csv", "json"}));

    auto* generate_cmd = app.add_subcommand("generate", "Write a seeded instance as JSON");
    inst_.add_to(generate_cmd);

    auto* encode = app.add_subcommand("encode", "Build the QUBO of an instance");
    inst_.add_to(encode);

    auto* spectrum = app.add_subcommand("spectrum", "Rank the optimal solution in the full spectrum");
    inst_.add_to(spectrum);
    spectrum->add_option("--top-k", top_k_, "Lowest energy levels to report");
    spectrum->add_option("--max-vars", max_vars_, "Enumeration cap")->check(CLI::Range(1, 40));
    spectrum->add_option("--spot-checks", spot_checks_, "Random states re-evaluated directly");

    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--grid", grid_, "Grid points as GxB");
        cmd->add_option("--method", method_, "Landscape route")->check(CLI::IsMember({"auto", "statevector", "closed-form"}));
        cmd->add_flag("--qmax-couplings-only", qmax_couplings_only_, "Leave fields out of q_max");
    };
    auto* landscape = app.add_subcommand("landscape", "p=1 QAOA energy and success-probability grid");
    inst_.add_to(landscape);
    add_grid(landscape);

    auto* cop_cmd = app.add_subcommand("cop", "Coefficient of performance at the landscape minimum per size");
    inst_.add_to(cop_cmd, false);
    cop_cmd->add_option("--sizes", sizes_, "Sizes as a:b:step or a,b,c")->required();
    cop_cmd->add_option("--trials", trials_, "Seeds per size (seed, seed+1, ...)")->check(CLI::PositiveNumber);
    add_grid(cop_cmd);

    auto* tune_cmd = app.add_subcommand("tune", "Nelder-Mead search over the penalty weights");
    inst_.add_to(tune_cmd);
    tune_cmd->add_option("--training", training_, "Training instances (seed, seed+1, ...)")->check(CLI::PositiveNumber);
    tune_cmd->add_option("--max-iterations", max_iterations_, "Simplex iterations");
    tune_cmd->add_option("--max-vars", max_vars_, "Enumeration cap")->check(CLI::Range(1, 40));

    auto* anneal_cmd = app.add_subcommand("anneal", "Simulated-annealing success rates");
    InstanceArgs& a = inst_;
    anneal_cmd->add_option("--problem", a.problem, "Problem kind")->check(CLI::IsMember({"tsp", "kp", "bpp"}));
    anneal_cmd->add_option("--encoding", a.encoding, "Encoding, or both")
            ->check(CLI::IsMember({"slack", "unbalanced", "both"}));
    anneal_cmd->add_option("--lambda0", a.lambda0, "Equality penalty weight");
    anneal_cmd->add_option("--lambda1", a.lambda1, "Inequality penalty weight");
    anneal_cmd->add_option("--lambda2", a.lambda2, "Quadratic unbalanced weight");
    anneal_cmd->add_flag("--no-simplify", a.no_simplify, "Keep BPP pre-fixed variables");
    anneal_cmd->add_option("--sizes", sizes_, "Sizes as a:b:step or a,b,c")->required();
    anneal_cmd->add_option("--trials", trials_, "Instances per size")->check(CLI::PositiveNumber);
    anneal_cmd->add_option("--reads", reads_, "Reads per instance")->check(CLI::PositiveNumber);
    anneal_cmd->add_option("--sweeps", schedule_.num_sweeps, "Sweeps per read")->check(CLI::PositiveNumber);
    anneal_cmd->add_option("--beta-initial", schedule_.beta_initial, "Initial inverse temperature");
    anneal_cmd->add_option("--beta-final", schedule_.beta_final, "Final inverse temperature");
    anneal_cmd->add_option("--schedule", shape_, "Schedule shape")->check(CLI::IsMember({"geometric", "linear"}));

    auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    replay->add_option("manifest", manifest_, "Manifest JSON")->required();

    std::vector<std::string> reversed(args_.rbegin(), args_.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    command_ = app.get_subcommands().front()->get_name();
    try {
        if (command_ == "generate") cmd_generate();
        else if (command_ == "encode") cmd_encode();
        else if (command_ == "spectrum") cmd_spectrum();
        else if (command_ == "landscape") cmd_landscape();
        else if (command_ == "cop") cmd_cop();
        else if (command_ == "tune") cmd_tune();
        else if (command_ == "anneal") cmd_anneal();
        else if (command_ == "replay") cmd_replay();
    } catch (const CapabilityError& e) {
        std::cerr << "capability error: " << e.what()
                  << "\n(enumeration and simulation are exponential in qubits; the published 42/43-qubit runs used a "
                     "supercomputer)\n";
        return kExitCapability;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const FormatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitIo;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return Runner(std::move(args), std::cout).run();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
