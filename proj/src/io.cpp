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

#include "uqubo/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "uqubo/error.hpp"

#ifdef _WIN32
#include <process.h>
#define UQUBO_GETPID _getpid
#else
#include <unistd.h>
#define UQUBO_GETPID getpid
#endif

namespace uqubo {

namespace {

std::string str(std::uint64_t v) { return std::to_string(v); }
std::string str(bool v) { return v ? "true" : "false"; }
std::string num(double v) { return format_double(v); }

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

/// Cell text as a typed JSON value where it reads as one.
Json typed_cell(const std::string& cell) {
    if (cell == "true") return true;
    if (cell == "false") return false;
    std::int64_t i = 0;
    auto [pi, ei] = std::from_chars(cell.data(), cell.data() + cell.size(), i);
    if (ei == std::errc{} && pi == cell.data() + cell.size()) return i;
    std::uint64_t u = 0;
    auto [pu, eu] = std::from_chars(cell.data(), cell.data() + cell.size(), u);
    if (eu == std::errc{} && pu == cell.data() + cell.size()) return u;
    double d = 0.0;
    auto [pd, ed] = std::from_chars(cell.data(), cell.data() + cell.size(), d);
    if (ed == std::errc{} && pd == cell.data() + cell.size()) return d;
    return cell;
}

std::string cell_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return str(v.get<bool>());
    if (v.is_number_unsigned()) return str(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_float()) return num(v.get<double>());
    throw FormatError("unsupported table cell " + v.dump());
}

template <class T>
T get(const Json& doc, const char* key) {
    if (!doc.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad field '") + key + "': " + e.what());
    }
}

}  // namespace

const char* to_string(OutputFormat format) { return format == OutputFormat::json ? "json" : "csv"; }

OutputFormat parse_output_format(const std::string& text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw ParameterError("unknown output format '" + text + "'");
}

const char* extension(OutputFormat format) { return to_string(format); }

void Table::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) throw DimensionError("row width does not match the header");
    rows.push_back(std::move(row));
}

std::size_t Table::column(std::string_view name) const {
    for (std::size_t k = 0; k < columns.size(); ++k) {
        if (columns[k] == name) return k;
    }
    throw FormatError("no column '" + std::string(name) + "'");
}

std::string to_csv(const Table& table) {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k) out += ',';
            out += cells[k];
        }
        out += '\n';
    };
    line(table.columns);
    for (const auto& row : table.rows) line(row);
    return out;
}

Table table_from_csv(std::string_view text) {
    Table t;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto end = text.find('\n');
        auto line = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        auto cells = split(line, ',');
        if (t.columns.empty()) {
            t.columns = std::move(cells);
        } else if (cells.size() != t.columns.size()) {
            throw FormatError("line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                              " cells, header has " + std::to_string(t.columns.size()));
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    if (t.columns.empty()) throw FormatError("empty table");
    return t;
}

Json to_json(const Table& table) {
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json r = Json::array();
        for (const auto& cell : row) r.push_back(typed_cell(cell));
        rows.push_back(std::move(r));
    }
    return Json{{"columns", table.columns}, {"rows", std::move(rows)}};
}

Table table_from_json(const Json& doc) {
    Table t;
    t.columns = get<std::vector<std::string>>(doc, "columns");
    for (const auto& row : get<Json>(doc, "rows")) {
        std::vector<std::string> cells;
        for (const auto& v : row) cells.push_back(cell_text(v));
        t.add_row(std::move(cells));
    }
    return t;
}

std::string render(const Table& table, OutputFormat format) {
    return format == OutputFormat::json ? to_json(table).dump(2) + "\n" : to_csv(table);
}

Table parse_table(std::string_view text, OutputFormat format) {
    if (format == OutputFormat::csv) return table_from_csv(text);
    try {
        return table_from_json(Json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad JSON table: ") + e.what());
    }
}

Table spectrum_table(const SpectrumSummary& summary) {
    Table t{{"rank_start", "energy", "multiplicity", "contains_optimal", "contains_feasible"}, {}};
    for (const auto& l : summary.top_k) {
        t.add_row({str(l.rank_start), num(l.energy), str(l.multiplicity), str(l.contains_optimal),
                   str(l.contains_feasible)});
    }
    return t;
}

Table landscape_table(const LandscapeGrid& grid) {
    Table t{{"gamma", "beta", "energy", "p_opt_set", "p_opt_max"}, {}};
    for (std::size_t g = 0; g < grid.gamma_axis.size(); ++g) {
        for (std::size_t b = 0; b < grid.beta_axis.size(); ++b) {
            const auto c = grid.index(g, b);
            t.add_row({num(grid.gamma_axis[g]), num(grid.beta_axis[b]), num(grid.energy[c]), num(grid.p_opt[c]),
                       num(grid.p_opt_max[c])});
        }
    }
    return t;
}

Table success_table(const std::vector<SuccessReport>& reports) {
    Table t{{"size", "instance_seed", "encoding", "p_optimal", "p_valid", "reads"}, {}};
    for (const auto& r : reports) {
        for (const auto& i : r.instances) {
            t.add_row({str(i.size), str(i.instance_seed), std::string(to_string(i.encoding)), num(i.p_optimal),
                       num(i.p_valid), str(i.reads)});
        }
    }
    return t;
}

Table trace_table(const std::vector<TraceRow>& trace) {
    Table t{{"iteration", "lambda0", "lambda1", "lambda2", "objective"}, {}};
    for (const auto& r : trace) {
        t.add_row({str(r.iteration), num(r.config.lambda0), num(r.config.lambda1), num(r.config.lambda2),
                   num(r.objective)});
    }
    return t;
}

Table cop_table(const std::vector<CopPoint>& points) {
    Table t{{"size", "instance_seed", "num_qubits", "gamma", "beta", "energy", "p_opt_set", "p_opt_max", "cop"}, {}};
    for (const auto& p : points) {
        t.add_row({str(p.size), str(p.instance_seed), str(p.num_qubits), num(p.gamma), num(p.beta), num(p.energy),
                   num(p.p_opt), num(p.p_opt_max), num(p.cop)});
    }
    return t;
}

Table samples_table(const SampleSet& samples) {
    Table t{{"bits", "energy", "count"}, {}};
    for (const auto& r : samples.records) {
        std::string bits;
        for (auto b : r.bits) bits += b ? '1' : '0';
        t.add_row({bits, num(r.energy), str(r.count)});
    }
    return t;
}

Json spectrum_summary_json(const SpectrumSummary& s) {
    Json j;
    j["num_vars"] = s.num_vars;
    j["num_states"] = s.num_states;
    j["encoding_failure"] = s.encoding_failure;
    j["ground_energy"] = s.ground_energy;
    j["max_energy"] = s.max_energy;
    j["optimal_energy"] = s.encoding_failure ? Json() : Json(s.optimal_energy);
    j["optimal_rank"] = s.optimal_rank;
    j["optimal_multiplicity"] = s.optimal_multiplicity;
    j["below_optimal"] = s.below_optimal;
    j["rank_fraction"] = s.rank_fraction();
    j["spot_check_max_error"] = s.spot_check_max_error;
    return j;
}

Json instance_to_json(const ProblemInstance& instance) {
    Json j;
    j["kind"] = std::string(to_string(kind_of(instance)));
    j["n"] = size_of(instance);
    j["seed"] = seed_of(instance);
    std::visit(
            [&](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, TspInstance>) {
                    Json coords = Json::array();
                    for (const auto& c : p.coords) coords.push_back({c[0], c[1]});
                    j["coords"] = std::move(coords);
                } else if constexpr (std::is_same_v<T, KpInstance>) {
                    j["values"] = p.values;
                    j["weights"] = p.weights;
                    j["capacity"] = p.capacity;
                } else {
                    j["weights"] = p.weights;
                    j["bin_capacity"] = p.bin_capacity;
                    j["bins"] = p.m;
                }
            },
            instance);
    return j;
}

ProblemInstance instance_from_json(const Json& doc) {
    const auto kind = parse_problem_kind(get<std::string>(doc, "kind"));
    const auto seed = doc.contains("seed") ? get<std::uint64_t>(doc, "seed") : 0;
    ProblemInstance out;
    switch (kind) {
        case ProblemKind::tsp: {
            std::vector<std::array<double, 2>> coords;
            for (const auto& c : get<Json>(doc, "coords")) {
                if (!c.is_array() || c.size() != 2) throw FormatError("coordinates must be [x, y] pairs");
                coords.push_back({c[0].get<double>(), c[1].get<double>()});
            }
            out = make_tsp(std::move(coords), seed);
            break;
        }
        case ProblemKind::kp:
            out = make_kp(get<std::vector<std::int64_t>>(doc, "values"), get<std::vector<std::int64_t>>(doc, "weights"),
                          get<std::int64_t>(doc, "capacity"), seed);
            break;
        case ProblemKind::bpp:
            out = make_bpp(get<std::vector<std::int64_t>>(doc, "weights"), get<std::int64_t>(doc, "bin_capacity"), seed);
            break;
    }
    if (doc.contains("n") && get<std::size_t>(doc, "n") != size_of(out)) throw FormatError("'n' disagrees with the data");
    return out;
}

Json encoded_to_json(const EncodedProblem& e) {
    Json j;
    j["problem"] = std::string(to_string(kind_of(e.instance)));
    j["encoding"] = std::string(to_string(e.encoding));
    j["simplified"] = e.simplified;
    j["lambda0"] = e.config.lambda0;
    j["lambda1"] = e.config.lambda1;
    j["lambda2"] = e.config.lambda2;
    j["num_vars"] = e.num_vars();
    j["num_slack"] = e.registry.num_slack();
    j["labels"] = e.registry.names();
    Json fixed = Json::object();
    for (const auto& [label, value] : e.registry.fixed()) fixed[label] = value;
    j["fixed"] = std::move(fixed);
    j["instance"] = instance_to_json(e.instance);
    return j;
}

Json to_json(const ExperimentManifest& m) {
    Json j;
    j["command"] = m.command;
    j["args"] = m.args;
    j["problem"] = m.problem;
    j["sizes"] = m.sizes;
    j["seeds"] = m.seeds;
    j["encoding"] = m.encoding;
    j["lambda0"] = m.penalties.lambda0;
    j["lambda1"] = m.penalties.lambda1;
    j["lambda2"] = m.penalties.lambda2;
    j["grid"] = m.grid;
    j["outputs"] = m.outputs;
    j["version"] = m.version;
    return j;
}

ExperimentManifest manifest_from_json(const Json& doc) {
    ExperimentManifest m;
    m.command = get<std::string>(doc, "command");
    m.args = get<std::vector<std::string>>(doc, "args");
    m.problem = get<std::string>(doc, "problem");
    m.sizes = get<std::vector<std::size_t>>(doc, "sizes");
    m.seeds = get<std::vector<std::uint64_t>>(doc, "seeds");
    m.encoding = get<std::string>(doc, "encoding");
    m.penalties = {get<double>(doc, "lambda0"), get<double>(doc, "lambda1"), get<double>(doc, "lambda2")};
    m.grid = get<std::string>(doc, "grid");
    m.outputs = get<std::vector<std::string>>(doc, "outputs");
    m.version = get<std::string>(doc, "version");
    return m;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
    }
    auto tmp = path;
    tmp += ".tmp." + std::to_string(UQUBO_GETPID());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            fs::remove(tmp, ec);
            throw IoError("write to " + tmp.string() + " failed");
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read from " + path.string() + " failed");
    return buf.str();
}

}  // namespace uqubo
