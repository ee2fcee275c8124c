// Copyright 2026 The vqopt Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * JSON persistence with a schema_version stamp, and JSON-lines trace export.
 */
#pragma once

#include "vqopt/ansatz.hpp"
#include "vqopt/experiment.hpp"
#include "vqopt/ising.hpp"
#include "vqopt/optimizer.hpp"
#include "vqopt/simulator.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace vqopt {

inline constexpr int kSchemaVersion = 1;

using nlohmann::json;

json instance_to_json(const IsingInstance &v);
IsingInstance instance_from_json(const json &j);
void to_json(json &j, const NoiseModel &v);
void from_json(const json &j, NoiseModel &v);
void to_json(json &j, const CostKind &v);
void from_json(const json &j, CostKind &v);
void to_json(json &j, const OptimizerConfig &v);
void from_json(const json &j, OptimizerConfig &v);
void to_json(json &j, const ProblemSetup &v);
void from_json(const json &j, ProblemSetup &v);
void to_json(json &j, const SweepGrid &v);
void from_json(const json &j, SweepGrid &v);
void to_json(json &j, const SweepResult &v);
void from_json(const json &j, SweepResult &v);
void to_json(json &j, const ScalingFit &v);
void from_json(const json &j, ScalingFit &v);
void to_json(json &j, const DepthSweepResult &v);
void to_json(json &j, const RunSummary &v);
void to_json(json &j, const OptimalCalls &v);

/// Wraps a payload as {"schema_version", "type", "data"}.
json make_document(const std::string &type, json data);

/// Checks schema_version and type, then returns the payload.
json open_document(const json &doc, const std::string &type);

void write_json_file(const std::filesystem::path &path, const json &doc);
json read_json_file(const std::filesystem::path &path);

template <class T> void save(const std::filesystem::path &path, const std::string &type, const T &v) {
    write_json_file(path, make_document(type, json(v)));
}

template <class T> T load(const std::filesystem::path &path, const std::string &type) {
    return open_document(read_json_file(path), type).get<T>();
}

/// One header record (schema_version, type "trace_header", header payload)
/// followed by one record per iteration and a closing summary record.
void write_trace_jsonl(std::ostream &os, const RunTrace &trace, const json &header);

} // namespace vqopt

namespace nlohmann {

// IsingInstance has no default constructor.
template <> struct adl_serializer<vqopt::IsingInstance> {
    static vqopt::IsingInstance from_json(const json &j) { return vqopt::instance_from_json(j); }
    static void to_json(json &j, const vqopt::IsingInstance &v) { j = vqopt::instance_to_json(v); }
};

} // namespace nlohmann
