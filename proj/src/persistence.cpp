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
#include "vqopt/persistence.hpp"

#include "vqopt/errors.hpp"

#include <fstream>
#include <ostream>

namespace vqopt {

namespace {

template <class T> json optional_json(const std::optional<T> &v) {
    return v ? json(*v) : json(nullptr);
}

template <class T> std::optional<T> optional_from(const json &j, const char *key) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return j.at(key).get<T>();
}

} // namespace

json instance_to_json(const IsingInstance &v) {
    return json{{"kind", to_string(v.kind())},
             {"seed", v.seed()},
             {"size", v.size()},
             {"couplings", std::vector<double>(v.couplings().begin(), v.couplings().end())},
             {"fields", std::vector<double>(v.fields().begin(), v.fields().end())}};
}

IsingInstance instance_from_json(const json &j) {
    return IsingInstance(j.at("couplings").get<std::vector<double>>(),
                      j.at("fields").get<std::vector<double>>(),
                      instance_kind_from_string(j.at("kind").get<std::string>()),
                      j.value("seed", std::uint64_t{0}));
}

void to_json(json &j, const NoiseModel &v) {
    j = json{{"t1_us", v.t1_us}, {"t2_us", v.t2_us}, {"t1q_ns", v.t1q_ns}, {"t2q_ns", v.t2q_ns}};
}

void from_json(const json &j, NoiseModel &v) {
    NoiseModel d;
    v.t1_us = j.value("t1_us", d.t1_us);
    v.t2_us = j.value("t2_us", d.t2_us);
    v.t1q_ns = j.value("t1q_ns", d.t1q_ns);
    v.t2q_ns = j.value("t2q_ns", d.t2q_ns);
    v.validate();
}

void to_json(json &j, const CostKind &v) {
    j = v.is_mean() ? json{{"kind", "mean"}} : json{{"kind", "cvar"}, {"alpha", v.alpha}};
}

void from_json(const json &j, CostKind &v) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "mean") {
        v = CostKind::mean();
    } else if (kind == "cvar") {
        v = CostKind::cvar(j.at("alpha").get<double>());
    } else {
        throw SchemaError("unknown cost kind '" + kind + "'");
    }
}

void to_json(json &j, const OptimizerConfig &v) {
    std::visit(
        [&](const auto &c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, TrustRegionConfig>) {
                j = json{{"kind", "cobyla"},
                         {"initial_radius", c.initial_radius},
                         {"final_radius", c.final_radius},
                         {"max_iter", c.max_iter}};
            } else if constexpr (std::is_same_v<T, HillClimbConfig>) {
                j = json{{"kind", "hill-climb"}, {"step_norm", c.step_norm}};
            } else {
                j = json{{"kind", "gradient-descent"},
                         {"learning_rate", c.learning_rate},
                         {"method", c.method == GradientMethod::ParamShift ? "param-shift"
                                                                           : "finite-diff"},
                         {"epsilon", c.epsilon},
                         {"shots_per_circuit", optional_json(c.shots_per_circuit)},
                         {"exact_gradient", c.exact_gradient}};
            }
        },
        v);
}

void from_json(const json &j, OptimizerConfig &v) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "cobyla") {
        TrustRegionConfig c;
        c.initial_radius = j.value("initial_radius", c.initial_radius);
        c.final_radius = j.value("final_radius", c.final_radius);
        c.max_iter = j.value("max_iter", c.max_iter);
        v = c;
    } else if (kind == "hill-climb") {
        HillClimbConfig c;
        c.step_norm = j.value("step_norm", c.step_norm);
        v = c;
    } else if (kind == "gradient-descent") {
        GradientDescentConfig c;
        c.learning_rate = j.value("learning_rate", c.learning_rate);
        const auto method = j.value("method", std::string("param-shift"));
        if (method == "param-shift") {
            c.method = GradientMethod::ParamShift;
        } else if (method == "finite-diff") {
            c.method = GradientMethod::FiniteDiff;
        } else {
            throw SchemaError("unknown gradient method '" + method + "'");
        }
        c.epsilon = j.value("epsilon", c.epsilon);
        c.shots_per_circuit = optional_from<std::size_t>(j, "shots_per_circuit");
        c.exact_gradient = j.value("exact_gradient", c.exact_gradient);
        v = c;
    } else {
        throw SchemaError("unknown optimizer '" + kind + "'");
    }
    validate(v);
}

void to_json(json &j, const ProblemSetup &v) {
    j = json{{"family", to_string(v.family)},
             {"size", v.L},
             {"depth", v.depth},
             {"instance", to_string(v.instance)},
             {"disorder_seeds", v.disorder_seeds},
             {"init", to_string(v.init)},
             {"init_low", v.init_low},
             {"init_high", v.init_high},
             {"dt", v.dt},
             {"optimizer", v.optimizer},
             {"cost", v.cost},
             {"noise", optional_json(v.noise)},
             {"max_trajectories", v.max_trajectories}};
}

void from_json(const json &j, ProblemSetup &v) {
    ProblemSetup d;
    v.family = ansatz_family_from_string(j.at("family").get<std::string>());
    v.L = j.at("size").get<std::size_t>();
    v.depth = j.value("depth", d.depth);
    v.instance = instance_kind_from_string(j.value("instance", std::string("ferro")));
    v.disorder_seeds = j.value("disorder_seeds", std::vector<std::uint64_t>{});
    v.init = init_kind_from_string(j.value("init", std::string("random")));
    v.init_low = j.value("init_low", d.init_low);
    v.init_high = j.value("init_high", d.init_high);
    v.dt = j.value("dt", d.dt);
    v.optimizer = j.contains("optimizer") ? j.at("optimizer").get<OptimizerConfig>() : d.optimizer;
    v.cost = j.contains("cost") ? j.at("cost").get<CostKind>() : d.cost;
    v.noise = optional_from<NoiseModel>(j, "noise");
    v.max_trajectories = j.value("max_trajectories", d.max_trajectories);
    v.validate();
}

void to_json(json &j, const SweepGrid &v) {
    j = json{{"shots", v.shots}, {"n_iters", v.n_iters}, {"max_calls", optional_json(v.max_calls)}};
}

void from_json(const json &j, SweepGrid &v) {
    v.shots = j.at("shots").get<std::vector<std::size_t>>();
    v.n_iters = j.at("n_iters").get<std::vector<std::size_t>>();
    v.max_calls = optional_from<std::uint64_t>(j, "max_calls");
    v.validate();
}

namespace {

json band_json(const Band &b) {
    return json::array({b.lower, b.upper});
}

Band band_from(const json &j) {
    return Band{j.at(0).get<double>(), j.at(1).get<double>()};
}

} // namespace

void to_json(json &j, const SweepResult &v) {
    json cells = json::array();
    for (const auto &c : v.cells) {
        cells.push_back(json{{"shots", c.shots},
                             {"n_iter", c.n_iter},
                             {"repetitions", c.repetitions},
                             {"n_calls", c.n_calls},
                             {"f_succ", c.f_succ},
                             {"f_band", band_json(c.f_band)},
                             {"p_succ", c.p_succ},
                             {"p_band", band_json(c.p_band)}});
    }
    json curves = json::array();
    for (const auto &c : v.curves) {
        curves.push_back(json{{"shots", c.shots}, {"n_calls", c.n_calls}, {"f_succ", c.f_succ}});
    }
    j = json{{"setup", v.setup},
             {"grid", v.grid},
             {"repetitions", v.repetitions},
             {"master_seed", v.master_seed},
             {"band_kind", v.band_kind},
             {"cells", cells},
             {"curves", curves}};
}

void from_json(const json &j, SweepResult &v) {
    v.setup = j.at("setup").get<ProblemSetup>();
    v.grid = j.at("grid").get<SweepGrid>();
    v.repetitions = j.at("repetitions").get<std::size_t>();
    v.master_seed = j.at("master_seed").get<std::uint64_t>();
    v.band_kind = j.at("band_kind").get<std::string>();
    v.cells.clear();
    for (const auto &c : j.at("cells")) {
        SweepCell cell;
        cell.shots = c.at("shots").get<std::size_t>();
        cell.n_iter = c.at("n_iter").get<std::size_t>();
        cell.repetitions = c.at("repetitions").get<std::size_t>();
        cell.n_calls = c.at("n_calls").get<std::uint64_t>();
        cell.f_succ = c.at("f_succ").get<double>();
        cell.f_band = band_from(c.at("f_band"));
        cell.p_succ = c.at("p_succ").get<double>();
        cell.p_band = band_from(c.at("p_band"));
        v.cells.push_back(cell);
    }
    v.curves.clear();
    for (const auto &c : j.at("curves")) {
        SuccessCurve curve;
        curve.shots = c.at("shots").get<std::size_t>();
        curve.n_calls = c.at("n_calls").get<std::vector<std::uint64_t>>();
        curve.f_succ = c.at("f_succ").get<std::vector<double>>();
        if (curve.n_calls.size() != curve.f_succ.size()) {
            throw SchemaError("success curve axes differ in length");
        }
        v.curves.push_back(std::move(curve));
    }
}

void to_json(json &j, const ScalingFit &v) {
    json points = json::array();
    for (const auto &p : v.points) {
        points.push_back(json{{"size", p.L}, {"n_calls", p.n_calls}});
    }
    j = json{{"points", points}, {"L_min", v.L_min}, {"a", v.a}, {"k", v.k},
             {"residuals", v.residuals}};
}

void from_json(const json &j, ScalingFit &v) {
    v.points.clear();
    for (const auto &p : j.at("points")) {
        v.points.push_back(ScalingPoint{p.at("size").get<std::size_t>(), p.at("n_calls").get<double>()});
    }
    v.L_min = j.at("L_min").get<std::size_t>();
    v.a = j.at("a").get<double>();
    v.k = j.at("k").get<double>();
    v.residuals = j.at("residuals").get<std::vector<double>>();
}

void to_json(json &j, const DepthSweepResult &v) {
    json rows = json::array();
    for (const auto &r : v.rows) {
        rows.push_back(json{{"size", r.L},
                            {"depth", r.depth},
                            {"instance", r.instance},
                            {"disorder_seed", r.disorder_seed},
                            {"p_gs", r.p_gs},
                            {"f_succ", r.f_succ},
                            {"f_band", json::array({r.f_band.lower, r.f_band.upper})}});
    }
    json summary = json::array();
    for (const auto &s : v.summary) {
        summary.push_back(json{{"size", s.L},
                               {"depth", s.depth},
                               {"p_gs_median", s.p_gs_median},
                               {"f_succ_median", s.f_succ_median},
                               {"f_band", band_json(s.f_band)}});
    }
    j = json{{"instance", to_string(v.instance)},
             {"dt", v.dt},
             {"shots", v.shots},
             {"repetitions", v.repetitions},
             {"master_seed", v.master_seed},
             {"rows", rows},
             {"summary", summary}};
}

void to_json(json &j, const RunSummary &v) {
    json probes = json::array();
    for (const auto &p : v.probes) {
        probes.push_back(json{{"iteration", p.iteration}, {"hit", p.hit}});
    }
    j = json{{"instance", v.instance},
             {"shots", v.shots},
             {"repetition", v.repetition},
             {"iterations", v.iterations},
             {"first_hit_iteration", optional_json(v.first_hit_iteration)},
             {"first_hit_calls", optional_json(v.first_hit_calls)},
             {"n_calls", v.n_calls},
             {"probe_shots", v.probe_shots},
             {"f_min", v.f_min},
             {"probes", probes}};
}

void to_json(json &j, const OptimalCalls &v) {
    if (!v.reached) {
        j = json{{"reached", false}};
        return;
    }
    j = json{{"reached", true},
             {"n_calls", v.n_calls},
             {"shots", v.shots},
             {"n_iter", v.n_iter},
             {"f_succ", v.f_succ}};
}

json make_document(const std::string &type, json data) {
    return json{{"schema_version", kSchemaVersion}, {"type", type}, {"data", std::move(data)}};
}

json open_document(const json &doc, const std::string &type) {
    if (!doc.is_object() || !doc.contains("schema_version")) {
        throw SchemaError("document has no schema_version");
    }
    const auto version = doc.at("schema_version");
    if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
        throw SchemaError("unsupported schema_version " + version.dump() + " (expected " +
                          std::to_string(kSchemaVersion) + ")");
    }
    const auto actual = doc.value("type", std::string());
    if (actual != type) {
        throw SchemaError("expected a '" + type + "' document, found '" + actual + "'");
    }
    return doc.at("data");
}

void write_json_file(const std::filesystem::path &path, const json &doc) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw Error("cannot write " + path.string());
    }
    os << doc.dump(2) << '\n';
    if (!os) {
        throw Error("failed writing " + path.string());
    }
}

json read_json_file(const std::filesystem::path &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw Error("cannot read " + path.string());
    }
    try {
        return json::parse(is);
    } catch (const json::parse_error &e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

void write_trace_jsonl(std::ostream &os, const RunTrace &trace, const json &header) {
    os << json{{"schema_version", kSchemaVersion}, {"type", "trace_header"}, {"config", header}}.dump()
       << '\n';
    for (const auto &r : trace.records) {
        os << json{{"type", "iteration"},
                   {"iteration", r.iteration},
                   {"cost", r.cost},
                   {"f_min", r.f_min},
                   {"n_calls", r.n_calls}}
                  .dump()
           << '\n';
    }
    json probes = json::array();
    for (const auto &p : trace.probes) {
        probes.push_back(json{{"iteration", p.iteration}, {"hit", p.hit}});
    }
    os << json{{"type", "summary"},
               {"success", trace.success},
               {"first_hit_calls", optional_json(trace.first_hit_calls)},
               {"first_hit_iteration", optional_json(trace.first_hit_iteration)},
               {"final_theta", trace.final_theta},
               {"probes", probes},
               {"probe_shots", trace.probe_shots}}
              .dump()
       << '\n';
}

} // namespace vqopt
