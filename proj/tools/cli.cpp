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
#include "cli.hpp"

#include <vqopt/errors.hpp>
#include <vqopt/experiment.hpp>
#include <vqopt/persistence.hpp>
#include <vqopt/report.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>

namespace vqopt::cli {

namespace fs = std::filesystem;

std::atomic<bool> &cancel_flag() {
    static std::atomic<bool> flag{false};
    return flag;
}

namespace {

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// key=value log lines on the error stream.
class Log {
  public:
    Log(std::ostream &err, int verbosity) : err_(err), verbosity_(verbosity) {}

    void info(const std::string &event, const std::string &fields = "") const {
        if (verbosity_ > 0) {
            err_ << "level=info event=" << event << (fields.empty() ? "" : " ") << fields << '\n';
        }
    }
    void error(const std::string &message) const {
        err_ << "level=error msg=\"" << message << "\"\n";
    }

  private:
    std::ostream &err_;
    int verbosity_;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

fs::path ensure_dir(const std::string &dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

std::size_t resolve_threads(std::size_t flag) {
    if (flag > 0) {
        return flag;
    }
    if (const char *env = std::getenv("VQOPT_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) {
                return static_cast<std::size_t>(v);
            }
        } catch (const std::exception &) {
        }
        throw UsageError("VQOPT_THREADS must be a positive integer");
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

/// Accepts either a bare payload or a {schema_version, type, data} document.
json payload(const json &j, const std::string &type) {
    if (j.is_object() && j.contains("schema_version")) {
        return open_document(j, type);
    }
    return j;
}

struct ProblemFlags {
    std::string kind = "ferro";
    std::size_t size = 8;
    std::uint64_t instance_seed = 0;
};

void add_problem_flags(CLI::App *app, ProblemFlags &f) {
    app->add_option("--kind", f.kind, "Instance kind")
        ->check(CLI::IsMember({"ferro", "disordered"}))
        ->capture_default_str();
    app->add_option("--size", f.size, "Chain length L")->capture_default_str();
    app->add_option("--instance-seed", f.instance_seed, "Disorder seed")->capture_default_str();
}

IsingInstance make_instance(const ProblemFlags &f) {
    return f.kind == "ferro" ? make_ferromagnetic(f.size) : make_disordered(f.size, f.instance_seed);
}

// ---------------------------------------------------------------- gen-instance

struct GenArgs {
    ProblemFlags problem;
    std::string out = ".";
};

int cmd_gen(const GenArgs &a, const Log &log) {
    const IsingInstance inst = make_instance(a.problem);
    const auto ground = brute_force_minimum(inst);
    const fs::path dir = ensure_dir(a.out);
    save(dir / "instance.json", "instance", inst);
    log.info("instance_written", "path=" + (dir / "instance.json").string() + " size=" +
                                     std::to_string(inst.size()) + " e_min=" +
                                     fmt(ground.minimum_energy) +
                                     " degeneracy=" + std::to_string(ground.degeneracy()));
    return kExitOk;
}

// ------------------------------------------------------------------------ run

struct RunArgs {
    std::string instance_path;
    ProblemFlags problem;
    std::string ansatz = "qaoa";
    std::size_t depth = 2;
    std::string optimizer = "cobyla";
    double rho_begin = 1.0;
    double rho_end = 1e-4;
    std::size_t max_iter = 0;
    double step_norm = 0.03;
    double learning_rate = 0.1;
    std::string gradient = "param-shift";
    double epsilon = 0.5;
    std::size_t gradient_shots = 0;
    bool exact_gradient = false;
    std::size_t shots = 64;
    std::size_t iters = 40;
    std::string cost = "mean";
    double alpha = 0.25;
    std::string init = "random";
    double init_low = kDefaultInitLow;
    double init_high = kDefaultInitHigh;
    double dt = 0.8;
    bool noise = false;
    NoiseModel noise_model;
    std::size_t trajectories = 16;
    std::vector<std::size_t> checkpoints;
    std::uint64_t seed = 0;
    std::string out = ".";
};

void add_setup_flags(CLI::App *app, RunArgs &a) {
    app->add_option("--ansatz", a.ansatz, "Circuit family")
        ->check(CLI::IsMember({"qaoa", "vqe"}))
        ->capture_default_str();
    app->add_option("--depth", a.depth, "Circuit depth d")->capture_default_str();
    app->add_option("--optimizer", a.optimizer, "Classical optimizer")
        ->check(CLI::IsMember({"cobyla", "hill-climb", "gradient-descent"}))
        ->capture_default_str();
    app->add_option("--rho-begin", a.rho_begin, "Initial trust radius")->capture_default_str();
    app->add_option("--rho-end", a.rho_end, "Final trust radius")->capture_default_str();
    app->add_option("--max-iter", a.max_iter, "Trust-region iteration cap (0: none)")
        ->capture_default_str();
    app->add_option("--step-norm", a.step_norm, "Hill-climb step norm W")->capture_default_str();
    app->add_option("--learning-rate", a.learning_rate, "Gradient-descent learning rate")
        ->capture_default_str();
    app->add_option("--gradient", a.gradient, "Gradient estimator")
        ->check(CLI::IsMember({"param-shift", "finite-diff"}))
        ->capture_default_str();
    app->add_option("--epsilon", a.epsilon, "Finite-difference step")->capture_default_str();
    app->add_option("--gradient-shots", a.gradient_shots,
                    "Shots per gradient circuit (0: same as --shots)")
        ->capture_default_str();
    app->add_flag("--exact-gradient", a.exact_gradient, "Use exact expectation gradients");
    app->add_option("--cost", a.cost, "Cost estimator")
        ->check(CLI::IsMember({"mean", "cvar"}))
        ->capture_default_str();
    app->add_option("--alpha", a.alpha, "CVaR fraction")->capture_default_str();
    app->add_option("--init", a.init, "Parameter initialization")
        ->check(CLI::IsMember({"random", "linear", "zero"}))
        ->capture_default_str();
    app->add_option("--init-low", a.init_low, "Random initialization lower bound (exclusive)")
        ->capture_default_str();
    app->add_option("--init-high", a.init_high, "Random initialization upper bound")
        ->capture_default_str();
    app->add_option("--dt", a.dt, "Linear-schedule time step")->capture_default_str();
    app->add_flag("--noise", a.noise, "Enable amplitude damping and dephasing");
    app->add_option("--t1-us", a.noise_model.t1_us, "Relaxation time T1 in microseconds")
        ->capture_default_str();
    app->add_option("--t2-us", a.noise_model.t2_us, "Coherence time T2 in microseconds")
        ->capture_default_str();
    app->add_option("--t1q-ns", a.noise_model.t1q_ns, "Single-qubit gate time in ns")
        ->capture_default_str();
    app->add_option("--t2q-ns", a.noise_model.t2q_ns, "Two-qubit gate time in ns")
        ->capture_default_str();
    app->add_option("--trajectories", a.trajectories, "Noise trajectories per evaluation")
        ->capture_default_str();
}

OptimizerConfig optimizer_from(const RunArgs &a) {
    if (a.optimizer == "cobyla") {
        return TrustRegionConfig{a.rho_begin, a.rho_end, a.max_iter};
    }
    if (a.optimizer == "hill-climb") {
        return HillClimbConfig{a.step_norm};
    }
    GradientDescentConfig c;
    c.learning_rate = a.learning_rate;
    c.method = a.gradient == "param-shift" ? GradientMethod::ParamShift : GradientMethod::FiniteDiff;
    c.epsilon = a.epsilon;
    if (a.gradient_shots > 0) {
        c.shots_per_circuit = a.gradient_shots;
    }
    c.exact_gradient = a.exact_gradient;
    return c;
}

int cmd_run(const RunArgs &a, const Log &log) {
    IsingInstance inst = a.instance_path.empty()
                             ? make_instance(a.problem)
                             : payload(read_json_file(a.instance_path), "instance").get<IsingInstance>();
    const ProblemPtr problem = make_problem(inst);
    if (a.shots == 0) {
        throw UsageError("--shots must be positive");
    }
    const AnsatzSpec spec = a.ansatz == "qaoa" ? AnsatzSpec::qaoa(problem, a.depth)
                                               : AnsatzSpec::vqe(inst.size(), a.depth);
    const OptimizerConfig cfg = optimizer_from(a);
    RunOptions ro;
    ro.shots = a.shots;
    ro.n_iter = a.iters;
    ro.cost = a.cost == "mean" ? CostKind::mean() : CostKind::cvar(a.alpha);
    if (a.noise) {
        a.noise_model.validate();
        ro.noise = &a.noise_model;
    }
    ro.max_trajectories = a.trajectories;
    ro.psucc_checkpoints = a.checkpoints;

    Rng rng(derive_seed(a.seed, {}));
    ParamVector theta0;
    const InitKind init = init_kind_from_string(a.init);
    if (init == InitKind::Random) {
        if (!(a.init_high > a.init_low)) {
            throw DomainError("random initialization range must be non-empty");
        }
        theta0 = init_random(spec, rng, a.init_low, a.init_high);
    } else if (init == InitKind::LinearSchedule) {
        if (spec.family() != AnsatzFamily::Qaoa) {
            throw DomainError("the linear schedule initializes QAOA parameters only");
        }
        theta0 = init_linear_schedule(a.depth, a.dt);
    } else {
        theta0.assign(spec.n_params(), 0.0);
    }

    const RunTrace trace = run(spec, *problem, cfg, ro, theta0, rng);

    json header{{"instance", inst},
                {"ansatz", a.ansatz},
                {"depth", a.depth},
                {"optimizer", cfg},
                {"shots", a.shots},
                {"n_iter", a.iters},
                {"cost", ro.cost},
                {"init", a.init},
                {"init_low", a.init_low},
                {"init_high", a.init_high},
                {"dt", a.dt},
                {"initial_theta", theta0},
                {"noise", a.noise ? json(a.noise_model) : json(nullptr)},
                {"trajectories", a.trajectories},
                {"checkpoints", a.checkpoints},
                {"seed", a.seed},
                {"hill_climb_acceptance", "proposal estimate vs incumbent's last estimate"}};
    const fs::path dir = ensure_dir(a.out);
    std::ofstream os(dir / "trace.jsonl", std::ios::binary);
    if (!os) {
        throw Error("cannot write " + (dir / "trace.jsonl").string());
    }
    write_trace_jsonl(os, trace, header);
    log.info("run_done", "path=" + (dir / "trace.jsonl").string() +
                             " success=" + (trace.success ? "true" : "false") +
                             " n_calls=" + std::to_string(trace.total_calls()) +
                             " f_min=" + fmt(trace.records.back().f_min));
    return kExitOk;
}

// ---------------------------------------------------------------------- sweep

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw Error("cannot write " + path.string());
    }
    os << text;
}


struct SweepArgs {
    std::string spec_path;
    std::string grid_path;
    std::size_t reps = 100;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::string out = ".";
    std::string name = "sweep";
};

int cmd_sweep(const SweepArgs &a, const Log &log) {
    if (a.reps == 0) {
        throw UsageError("--reps must be at least 1");
    }
    const ProblemSetup setup = payload(read_json_file(a.spec_path), "setup").get<ProblemSetup>();
    const SweepGrid grid = a.grid_path.empty()
                               ? SweepGrid::defaults()
                               : payload(read_json_file(a.grid_path), "grid").get<SweepGrid>();
    const fs::path dir = ensure_dir(a.out);
    std::ofstream runs(dir / (a.name + "_runs.jsonl"), std::ios::binary);
    if (!runs) {
        throw Error("cannot write run records under " + dir.string());
    }
    SweepOptions so;
    so.repetitions = a.reps;
    so.master_seed = a.seed;
    so.threads = resolve_threads(a.threads);
    so.cancel = &cancel_flag();
    std::vector<RunSummary> completed;
    so.on_run = [&](const RunSummary &s) {
        runs << json(s).dump() << '\n' << std::flush;
        completed.push_back(s);
    };
    log.info("sweep_start", "size=" + std::to_string(setup.L) + " instances=" +
                                std::to_string(setup.instance_count()) + " reps=" +
                                std::to_string(a.reps) + " threads=" + std::to_string(so.threads));
    const auto t0 = std::chrono::steady_clock::now();
    SweepResult result;
    try {
        result = success_sweep(setup, grid, so);
    } catch (const Cancelled &) {
        runs.flush();
        log.error("sweep cancelled; completed runs are in " + (dir / (a.name + "_runs.jsonl")).string());
        return kExitDomain;
    }
    // Runs finish in scheduling order; rewrite the records in a fixed order so
    // the file does not depend on the thread count.
    runs.close();
    std::sort(completed.begin(), completed.end(), [](const RunSummary &x, const RunSummary &y) {
        return std::tie(x.instance, x.shots, x.repetition) < std::tie(y.instance, y.shots, y.repetition);
    });
    {
        std::ostringstream os;
        for (const auto &s : completed) {
            os << json(s).dump() << '\n';
        }
        write_text(dir / (a.name + "_runs.jsonl"), os.str());
    }
    save(dir / (a.name + ".json"), "sweep", result);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    log.info("sweep_done", "path=" + (dir / (a.name + ".json")).string() + " cells=" +
                               std::to_string(result.cells.size()) + " seconds=" + fmt(secs));
    return kExitOk;
}

// ------------------------------------------------------------------------ fit

struct FitArgs {
    std::string in;
    std::string out;
    std::size_t lmin = kDefaultFitMinSize;
    double target = 0.5;
};

std::vector<fs::path> documents_of_type(const fs::path &dir, const std::string &type) {
    std::vector<fs::path> out;
    if (!fs::is_directory(dir)) {
        throw Error("not a directory: " + dir.string());
    }
    for (const auto &e : fs::directory_iterator(dir)) {
        if (e.path().extension() != ".json") {
            continue;
        }
        json j;
        try {
            j = read_json_file(e.path());
        } catch (const SchemaError &) {
            continue;
        }
        if (j.is_object() && j.value("type", std::string()) == type) {
            out.push_back(e.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int cmd_fit(const FitArgs &a, const Log &log) {
    if (!(a.target > 0.0 && a.target < 1.0)) {
        throw UsageError("--target must lie in (0, 1)");
    }
    const auto files = documents_of_type(a.in, "sweep");
    if (files.empty()) {
        throw Error("no sweep documents in " + a.in);
    }
    std::vector<ScalingPoint> points;
    json sources = json::array();
    for (const auto &f : files) {
        const auto sweep = load<SweepResult>(f, "sweep");
        const OptimalCalls best = optimal_calls(sweep, a.target);
        sources.push_back(json{{"file", f.filename().string()}, {"size", sweep.setup.L},
                               {"optimal", best}});
        if (best.reached) {
            points.push_back(ScalingPoint{sweep.setup.L, static_cast<double>(best.n_calls)});
        } else {
            log.info("target_unreached", "file=" + f.filename().string());
        }
    }
    std::sort(points.begin(), points.end(),
              [](const ScalingPoint &x, const ScalingPoint &y) { return x.L < y.L; });
    const ScalingFit fit = fit_scaling(points, a.lmin);
    json data = fit;
    data["target"] = a.target;
    data["sources"] = sources;
    const fs::path dir = ensure_dir(a.out.empty() ? a.in : a.out);
    write_json_file(dir / "fit.json", make_document("fit", data));
    log.info("fit_done", "k=" + fmt(fit.k) + " a=" + fmt(fit.a) + " points=" +
                             std::to_string(fit.residuals.size()));
    return kExitOk;
}

// ------------------------------------------------------------------- baseline

struct BaselineArgs {
    std::size_t size = 8;
    std::uint64_t g = 1;
    std::uint64_t calls = 0;
};

int cmd_baseline(const BaselineArgs &a, std::ostream &out) {
    out << fmt(random_search_baseline(a.size, a.g, a.calls)) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- depth-sweep

struct DepthArgs {
    double dt = 0.8;
    std::vector<std::size_t> depths{2, 4, 8};
    std::vector<std::size_t> sizes{6, 8, 10, 12};
    std::size_t shots = 16;
    std::size_t reps = 1000;
    std::string kind = "ferro";
    std::vector<std::uint64_t> disorder_seeds;
    std::size_t instances = 0;
    std::uint64_t seed = 0;
    std::string out = ".";
};

int cmd_depth(const DepthArgs &a, const Log &log) {
    if (a.reps == 0 || a.shots == 0) {
        throw UsageError("--reps and --shots must be positive");
    }
    DepthSweepOptions o;
    o.sizes = a.sizes;
    o.depths = a.depths;
    o.instance = a.kind == "ferro" ? InstanceKind::Ferromagnetic : InstanceKind::Disordered;
    o.disorder_seeds = a.disorder_seeds;
    for (std::size_t i = 0; o.disorder_seeds.empty() && i < a.instances; ++i) {
        o.disorder_seeds.push_back(i);
    }
    o.dt = a.dt;
    o.shots = a.shots;
    o.repetitions = a.reps;
    o.master_seed = a.seed;
    const DepthSweepResult r = depth_sweep(o);
    const fs::path dir = ensure_dir(a.out);
    write_json_file(dir / "depth_sweep.json", make_document("depth_sweep", json(r)));
    std::ofstream csv(dir / "depth_sweep.csv", std::ios::binary);
    write_depth_csv(csv, r);
    log.info("depth_sweep_done", "rows=" + std::to_string(r.rows.size()));
    return kExitOk;
}

// --------------------------------------------------------------------- report

struct ReportArgs {
    std::string in;
    std::string out;
    std::vector<std::string> formats{"csv", "svg"};
};

int cmd_report(const ReportArgs &a, const Log &log) {
    const bool csv = std::find(a.formats.begin(), a.formats.end(), "csv") != a.formats.end();
    const bool svg = std::find(a.formats.begin(), a.formats.end(), "svg") != a.formats.end();
    const fs::path dir = ensure_dir(a.out.empty() ? a.in : a.out);
    std::size_t written = 0;
    for (const auto &f : documents_of_type(a.in, "sweep")) {
        const auto sweep = load<SweepResult>(f, "sweep");
        const std::string stem = f.stem().string();
        if (csv) {
            std::ostringstream cells, curves;
            write_cells_csv(cells, sweep);
            write_curves_csv(curves, sweep);
            write_text(dir / (stem + "_cells.csv"), cells.str());
            write_text(dir / (stem + "_curves.csv"), curves.str());
            written += 2;
        }
        if (svg) {
            write_text(dir / (stem + "_curves.svg"), success_curves_svg(sweep));
            ++written;
        }
    }
    for (const auto &f : documents_of_type(a.in, "fit")) {
        const auto fit = load<ScalingFit>(f, "fit");
        const std::string stem = f.stem().string();
        if (csv) {
            std::ostringstream os;
            write_fit_csv(os, fit);
            write_text(dir / (stem + ".csv"), os.str());
            ++written;
        }
        if (svg) {
            write_text(dir / (stem + ".svg"), scaling_svg(fit));
            ++written;
        }
    }
    log.info("report_done", "files=" + std::to_string(written));
    return kExitOk;
}

// ------------------------------------------------------------- config overlay

/// Appends "--key value" pairs from a JSON object for keys not given on the
/// command line. Arrays become comma-separated lists; true booleans become flags.
std::vector<std::string> apply_config(std::vector<std::string> args) {
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end()) {
        return args;
    }
    if (std::next(it) == args.end()) {
        throw UsageError("--config needs a file");
    }
    const std::string path = *std::next(it);
    args.erase(it, it + 2);
    const json cfg = read_json_file(path);
    if (!cfg.is_object()) {
        throw UsageError("config file must hold a JSON object");
    }
    for (const auto &[key, value] : cfg.items()) {
        const std::string flag = "--" + key;
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string &s) {
            return s == flag || s.rfind(flag + "=", 0) == 0;
        });
        if (given) {
            continue;
        }
        if (value.is_boolean()) {
            if (value.get<bool>()) {
                args.push_back(flag);
            }
        } else if (value.is_array()) {
            std::string joined;
            for (const auto &v : value) {
                joined += (joined.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
            }
            args.push_back(flag);
            args.push_back(joined);
        } else {
            args.push_back(flag);
            args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
        }
    }
    return args;
}

} // namespace

int dispatch(const std::vector<std::string> &raw_args, std::ostream &out, std::ostream &err) {
    int verbosity = 1;
    Log log(err, verbosity);
    std::vector<std::string> args;
    try {
        args = apply_config(raw_args);
    } catch (const UsageError &e) {
        log.error(e.what());
        return kExitUsage;
    } catch (const Error &e) {
        log.error(e.what());
        return kExitDomain;
    }

    CLI::App app{"vqopt: shot-budget benchmarks for variational Ising ground-state search"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "Suppress informational logs");
    app.add_option("--config", "JSON file of flag defaults (keys are long flag names)");

    GenArgs gen;
    auto *gen_cmd = app.add_subcommand("gen-instance", "Write an Ising instance to --out/instance.json");
    add_problem_flags(gen_cmd, gen.problem);
    gen_cmd->add_option("--seed", gen.problem.instance_seed, "Disorder seed (alias of --instance-seed)");
    gen_cmd->add_option("--out", gen.out, "Output directory")->capture_default_str();

    RunArgs ra;
    auto *run_cmd = app.add_subcommand("run", "Run one optimization; writes --out/trace.jsonl");
    run_cmd->add_option("--instance", ra.instance_path, "Instance JSON (overrides --kind/--size)");
    add_problem_flags(run_cmd, ra.problem);
    add_setup_flags(run_cmd, ra);
    run_cmd->add_option("--shots", ra.shots, "Shots per cost evaluation M")->capture_default_str();
    run_cmd->add_option("--iters", ra.iters, "Optimizer iterations n_iter")->capture_default_str();
    run_cmd->add_option("--checkpoints", ra.checkpoints, "P_succ probe iterations")->delimiter(',');
    run_cmd->add_option("--seed", ra.seed, "Random seed")->capture_default_str();
    run_cmd->add_option("--out", ra.out, "Output directory")->capture_default_str();

    SweepArgs sa;
    auto *sweep_cmd = app.add_subcommand("sweep", "Success-probability sweep over an (M, n_iter) grid");
    sweep_cmd->add_option("--spec", sa.spec_path, "Problem setup JSON")->required();
    sweep_cmd->add_option("--grid", sa.grid_path, "Grid JSON (default M=2..4096, n_iter=5..320)");
    sweep_cmd->add_option("--reps", sa.reps, "Repetitions per cell and instance")->capture_default_str();
    sweep_cmd->add_option("--seed", sa.seed, "Master seed")->capture_default_str();
    sweep_cmd->add_option("--threads", sa.threads, "Worker threads (0: VQOPT_THREADS or all cores)")
        ->capture_default_str();
    sweep_cmd->add_option("--name", sa.name, "Output file stem")->capture_default_str();
    sweep_cmd->add_option("--out", sa.out, "Output directory")->capture_default_str();

    FitArgs fa;
    auto *fit_cmd = app.add_subcommand("fit", "Fit n_calls* = a 2^(kL) over the sweeps in --in");
    fit_cmd->add_option("--in", fa.in, "Directory holding sweep documents")->required();
    fit_cmd->add_option("--lmin", fa.lmin, "Smallest L used in the fit")->capture_default_str();
    fit_cmd->add_option("--target", fa.target, "Target F_succ for n_calls*")->capture_default_str();
    fit_cmd->add_option("--out", fa.out, "Output directory (default: --in)");

    BaselineArgs ba;
    auto *base_cmd = app.add_subcommand("baseline", "Print the random-search success probability");
    base_cmd->add_option("--size", ba.size, "Chain length L")->required();
    base_cmd->add_option("--g", ba.g, "Ground-state degeneracy")->capture_default_str();
    base_cmd->add_option("--calls", ba.calls, "Number of samples")->required();

    DepthArgs da;
    auto *depth_cmd = app.add_subcommand("depth-sweep", "Linear-schedule QAOA F_succ versus depth");
    depth_cmd->add_option("--dt", da.dt, "Linear-schedule time step")->capture_default_str();
    depth_cmd->add_option("--depths", da.depths, "Depths")->delimiter(',')->capture_default_str();
    depth_cmd->add_option("--sizes", da.sizes, "Chain lengths")->delimiter(',')->capture_default_str();
    depth_cmd->add_option("--shots", da.shots, "Shots M")->capture_default_str();
    depth_cmd->add_option("--reps", da.reps, "Repetitions")->capture_default_str();
    depth_cmd->add_option("--kind", da.kind, "Instance kind")
        ->check(CLI::IsMember({"ferro", "disordered"}))
        ->capture_default_str();
    depth_cmd->add_option("--disorder-seeds", da.disorder_seeds, "Disorder seeds")->delimiter(',');
    depth_cmd->add_option("--instances", da.instances, "Use disorder seeds 0..N-1");
    depth_cmd->add_option("--seed", da.seed, "Master seed")->capture_default_str();
    depth_cmd->add_option("--out", da.out, "Output directory")->capture_default_str();

    ReportArgs rp;
    auto *report_cmd = app.add_subcommand("report", "CSV tables and SVG figures from --in");
    report_cmd->add_option("--in", rp.in, "Directory holding result documents")->required();
    report_cmd->add_option("--format", rp.formats, "Formats")
        ->delimiter(',')
        ->check(CLI::IsMember({"csv", "svg"}))
        ->capture_default_str();
    report_cmd->add_option("--out", rp.out, "Output directory (default: --in)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n\n";
        const CLI::App *sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kExitUsage;
    }

    Log active(err, quiet ? 0 : verbosity);
    try {
        if (gen_cmd->parsed()) {
            return cmd_gen(gen, active);
        }
        if (run_cmd->parsed()) {
            return cmd_run(ra, active);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sa, active);
        }
        if (fit_cmd->parsed()) {
            return cmd_fit(fa, active);
        }
        if (base_cmd->parsed()) {
            return cmd_baseline(ba, out);
        }
        if (depth_cmd->parsed()) {
            return cmd_depth(da, active);
        }
        if (report_cmd->parsed()) {
            return cmd_report(rp, active);
        }
    } catch (const UsageError &e) {
        active.error(e.what());
        return kExitUsage;
    } catch (const Error &e) {
        active.error(e.what());
        return kExitDomain;
    } catch (const json::exception &e) {
        active.error(std::string("malformed input: ") + e.what());
        return kExitDomain;
    } catch (const fs::filesystem_error &e) {
        active.error(e.what());
        return kExitDomain;
    }
    return kExitUsage;
}

int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return dispatch(args, out, err);
}

} // namespace vqopt::cli
