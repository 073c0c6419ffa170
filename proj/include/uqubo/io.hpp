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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "uqubo/penalty.hpp"
#include "uqubo/problems.hpp"
#include "uqubo/qaoa.hpp"
#include "uqubo/sampler.hpp"
#include "uqubo/spectrum.hpp"
#include "uqubo/tuner.hpp"

namespace uqubo {

using Json = nlohmann::ordered_json;

enum class OutputFormat { csv, json };

const char* to_string(OutputFormat format);
OutputFormat parse_output_format(const std::string& text);
/// File extension without the dot.
const char* extension(OutputFormat format);

/// Column-named table of preformatted cells.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    std::size_t column(std::string_view name) const;
};

std::string to_csv(const Table& table);
/// Strict reader for what to_csv writes (no quoting).
Table table_from_csv(std::string_view text);
/// {"columns": [...], "rows": [[...]]} with numeric and boolean cells typed.
Json to_json(const Table& table);
Table table_from_json(const Json& doc);
std::string render(const Table& table, OutputFormat format);
Table parse_table(std::string_view text, OutputFormat format);

Table spectrum_table(const SpectrumSummary& summary);
Table landscape_table(const LandscapeGrid& grid);
Table success_table(const std::vector<SuccessReport>& reports);
Table trace_table(const std::vector<TraceRow>& trace);
Table cop_table(const std::vector<CopPoint>& points);
Table samples_table(const SampleSet& samples);

Json spectrum_summary_json(const SpectrumSummary& summary);

Json instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const Json& doc);

/// Encoded model with its labels and the settings used to build it.
Json encoded_to_json(const EncodedProblem& encoded);

struct ExperimentManifest {
    std::string command;
    /// Full argument list; replaying re-runs it.
    std::vector<std::string> args;
    std::string problem;
    std::vector<std::size_t> sizes;
    std::vector<std::uint64_t> seeds;
    std::string encoding;
    PenaltyConfig penalties;
    std::string grid;
    std::vector<std::string> outputs;
    std::string version = UQUBO_VERSION;
};

Json to_json(const ExperimentManifest& manifest);
ExperimentManifest manifest_from_json(const Json& doc);

/// Writes through a temporary file in the same directory and renames it into
/// place; creates missing parent directories.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace uqubo
