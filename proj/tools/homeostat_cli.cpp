// homeostat: command-line front end for the toy scenario, the degradation
// suite and checkpoint utilities.
//
// Exit codes: 0 success, 1 usage / IO / config error, 2 expectation mismatch.

#include "homeostat/checkpoint.hpp"
#include "homeostat/config.hpp"
#include "homeostat/degradation.hpp"
#include "homeostat/error.hpp"
#include "homeostat/experiments.hpp"
#include "homeostat/seed.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

namespace fs = std::filesystem;
using namespace homeostat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitMismatch = 2;

std::size_t thread_cap() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HOMEOSTAT_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v < 1) throw ConfigError("");
            n = static_cast<std::size_t>(v);
        } catch (...) {
            throw ConfigError(std::string("HOMEOSTAT_THREADS must be a positive integer, got '") +
                              env + "'");
        }
    }
    return n;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ParseError("cannot create output directory " + dir.string());
}

struct ToyArgs {
    std::string adapter = "dwam";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> steps;
    std::string config;
    std::string expect;
    std::string out = ".";
};

int cmd_toy(const ToyArgs& args, bool verbose) {
    ToyConfig cfg;
    if (!args.config.empty()) cfg = parse_toy_config(read_text(args.config));
    if (args.seed) cfg.scenario.seed = *args.seed;
    if (args.steps) cfg.scenario.steps = *args.steps;
    const AdapterKind kind = parse_adapter_kind(args.adapter);

    const TraceLog trace = run_toy(kind, cfg.scenario);
    const StabilityVerdict verdict = classify_trace(trace, cfg.classifier);
    const std::string name = verdict_name(verdict);

    nlohmann::json v;
    v["adapter"] = args.adapter;
    v["seed"] = trace.seed;
    v["steps"] = trace.size();
    v["config_hash"] = trace.config_hash;
    v["verdict"] = name;
    v["final_rate"] = trace.rate.back();
    v["final_theta"] = trace.theta.back();
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Converged>) {
                v["mean_gap"] = x.mean_gap;
            } else if constexpr (std::is_same_v<T, Oscillating>) {
                v["crossings"] = x.crossings;
                v["amplitude"] = x.amplitude;
            } else {
                v["crossings"] = x.crossings;
                v["amplitude"] = x.amplitude;
                v["mean_gap"] = x.mean_gap;
            }
        },
        verdict);

    const fs::path out(args.out);
    ensure_dir(out);
    write_text(out / "trace.csv", trace_to_csv(trace));
    write_text(out / "verdict.json", v.dump(2) + "\n");
    std::cout << "verdict: " << name << " (final rate " << format_number(trace.rate.back())
              << ")\n";
    if (verbose) std::cerr << v.dump(2) << "\n";

    if (!args.expect.empty()) {
        if (args.expect != "converged" && args.expect != "oscillating" &&
            args.expect != "undetermined") {
            throw ConfigError("--expect must be converged, oscillating or undetermined");
        }
        if (args.expect != name) {
            std::cerr << "expectation mismatch: expected " << args.expect << ", got " << name << "\n";
            return kExitMismatch;
        }
    }
    return kExitOk;
}

struct SuiteArgs {
    std::string config;
    std::string checkpoint;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    bool plot = false;
};

int cmd_suite(const SuiteArgs& args, bool verbose) {
    SuiteConfig cfg = parse_suite_config(read_text(args.config));
    if (args.seed) cfg.seed = *args.seed;
    const Checkpoint ckpt = load_checkpoint(args.checkpoint);
    const std::size_t threads = thread_cap();
    if (verbose) {
        std::cerr << "suite: " << cfg.adapters.size() << " adapters x "
                  << cfg.conditions.size() + 1 << " conditions x " << cfg.trials << " trials on "
                  << threads << " threads\n";
    }
    const SuiteResult result = run_degradation_suite(ckpt, cfg, threads, args.plot);

    const fs::path out(args.out);
    ensure_dir(out);
    write_text(out / "trials.csv", trials_to_csv(result.trials));
    write_text(out / "report.json", reports_to_json(result.reports));
    write_text(out / "metrics.csv", reports_to_csv(result.reports));

    std::string table;
    const auto& baseline = result.reports.front();
    for (std::size_t i = 1; i < result.reports.size(); ++i) {
        const auto rows = compare(baseline, result.reports[i]);
        auto csv = compare_to_csv(baseline.adapter, result.reports[i].adapter, rows);
        table += table.empty() ? csv : csv.substr(csv.find('\n') + 1);
    }
    if (table.empty()) table = compare_to_csv(baseline.adapter, baseline.adapter, compare(baseline, baseline));
    write_text(out / "compare.csv", table);

    nlohmann::json run;
    run["seed"] = cfg.seed;
    run["config_hash"] = fnv1a(suite_config_fingerprint(cfg));
    run["trials"] = cfg.trials;
    run["steps"] = cfg.steps;
    run["layer_sizes"] = ckpt.layer_sizes;
    write_text(out / "run.json", run.dump(2) + "\n");
    if (args.plot) write_text(out / "plot_rates.csv", layer_trace_to_csv(result.trials));

    for (const auto& r : result.reports) {
        for (const auto& c : r.conditions) {
            std::cout << r.adapter << " / " << c.condition << ": HM_m=" << format_number(c.hm.hm_mean)
                      << " HM_std=" << format_number(c.hm.hm_std) << "\n";
        }
    }
    return kExitOk;
}

int cmd_quantize(const std::string& in, const std::string& out) {
    const Checkpoint ckpt = load_checkpoint(in);
    Checkpoint q = ckpt;
    for (auto& layer : q.layers) layer = quantize_loihi8(layer);
    save_checkpoint(q, out);
    for (std::size_t b = 0; b < ckpt.layers.size(); ++b) {
        double max_abs = 0.0;
        double max_err = 0.0;
        for (std::size_t k = 0; k < ckpt.layers[b].weights.size(); ++k) {
            max_abs = std::max(max_abs, std::abs(ckpt.layers[b].weights[k]));
            max_err = std::max(max_err, std::abs(ckpt.layers[b].weights[k] - q.layers[b].weights[k]));
        }
        std::cout << "layer " << b << ": max_error=" << format_number(max_err)
                  << " bound=" << format_number(max_abs / 254.0) << "\n";
    }
    return kExitOk;
}

int cmd_metrics(const std::string& trials_path, const std::string& out_dir) {
    const auto trials = trials_from_csv(read_text(trials_path));
    const auto reports = build_reports(trials);
    const fs::path out(out_dir);
    ensure_dir(out);
    write_text(out / "report.json", reports_to_json(reports));
    write_text(out / "metrics.csv", reports_to_csv(reports));
    std::cout << reports_to_csv(reports);
    return kExitOk;
}

const MetricsReport& pick_report(const std::vector<MetricsReport>& reports,
                                 const std::string& name, const std::string& file) {
    if (reports.empty()) throw ParseError(file + ": no reports");
    if (name.empty()) return reports.front();
    for (const auto& r : reports) {
        if (r.adapter == name) return r;
    }
    throw ConfigError(file + ": no adapter named '" + name + "'");
}

int cmd_compare(const std::string& a_path, const std::string& a_name, const std::string& b_path,
                const std::string& b_name, const std::string& out) {
    const auto ra = reports_from_json(read_text(a_path));
    const auto rb = reports_from_json(read_text(b_path));
    const auto& a = pick_report(ra, a_name, a_path);
    const auto& b = pick_report(rb, b_name, b_path);
    const auto rows = compare(a, b);
    const auto csv = compare_to_csv(a.adapter, b.adapter, rows);
    if (out.empty()) {
        std::cout << csv;
    } else {
        write_text(out, csv);
    }
    for (const auto& r : rows) {
        if (!r.ok) {
            std::cerr << "condition '" << r.condition << "': " << r.error << "\n";
            return kExitError;
        }
    }
    return kExitOk;
}

int cmd_init(const std::vector<std::size_t>& sizes, std::uint64_t seed, double gain, double spread,
             const std::string& out) {
    save_checkpoint(random_checkpoint(sizes, seed, gain, spread), out);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"homeostat: inference-time homeostasis for spiking networks"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Log progress to stderr");

    ToyArgs toy;
    auto* toy_cmd = app.add_subcommand("toy", "Run the single-output toy scenario and classify its trace");
    toy_cmd->add_option("--adapter", toy.adapter, "none | biodwam | dwam")
        ->check(CLI::IsMember({"none", "biodwam", "dwam"}));
    toy_cmd->add_option("--seed", toy.seed, "Master seed");
    toy_cmd->add_option("--steps", toy.steps, "Override the number of steps");
    toy_cmd->add_option("--config", toy.config, "Toy config JSON");
    toy_cmd->add_option("--expect", toy.expect, "converged | oscillating | undetermined");
    toy_cmd->add_option("--out", toy.out, "Output directory (trace.csv, verdict.json)");

    SuiteArgs suite;
    auto* suite_cmd = app.add_subcommand("suite", "Run the base-vs-degraded evaluation suite");
    suite_cmd->add_option("--config", suite.config, "Suite config JSON")->required();
    suite_cmd->add_option("--checkpoint", suite.checkpoint, "Weight checkpoint JSON")->required();
    suite_cmd->add_option("--seed", suite.seed, "Master seed (overrides the config)");
    suite_cmd->add_option("--out", suite.out, "Output directory");
    suite_cmd->add_flag("--emit-plot-data", suite.plot, "Also write per-step layer rates (plot_rates.csv)");

    std::string q_in, q_out;
    auto* quant_cmd = app.add_subcommand("quantize", "8-bit symmetric per-layer weight quantization");
    quant_cmd->add_option("--in", q_in, "Input checkpoint")->required();
    quant_cmd->add_option("--out", q_out, "Output checkpoint")->required();

    std::string m_trials, m_out = ".";
    auto* metrics_cmd = app.add_subcommand("metrics", "Recompute metrics from a trials CSV");
    metrics_cmd->add_option("--trials", m_trials, "trials.csv written by suite")->required();
    metrics_cmd->add_option("--out", m_out, "Output directory");

    std::string c_a, c_b, c_an, c_bn, c_out;
    auto* compare_cmd = app.add_subcommand("compare", "Per-condition HM deltas between two reports (b - a)");
    compare_cmd->add_option("--a", c_a, "Report JSON for a")->required();
    compare_cmd->add_option("--b", c_b, "Report JSON for b")->required();
    compare_cmd->add_option("--adapter-a", c_an, "Adapter name within a (default: first)");
    compare_cmd->add_option("--adapter-b", c_bn, "Adapter name within b (default: first)");
    compare_cmd->add_option("--out", c_out, "Output CSV (default: stdout)");

    std::vector<std::size_t> i_sizes{24, 64, 64, 64, 2};
    std::uint64_t i_seed = 1;
    double i_gain = 2.0, i_spread = 1.0;
    std::string i_out;
    auto* init_cmd = app.add_subcommand("init", "Write a random checkpoint");
    init_cmd->add_option("--sizes", i_sizes, "Layer sizes")->delimiter(',');
    init_cmd->add_option("--seed", i_seed, "Seed");
    init_cmd->add_option("--gain", i_gain, "Mean total input weight per neuron");
    init_cmd->add_option("--spread", i_spread, "Weight spread (scaled by 1/sqrt(fan_in))");
    init_cmd->add_option("--out", i_out, "Output checkpoint")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (*toy_cmd) return cmd_toy(toy, verbose);
        if (*suite_cmd) return cmd_suite(suite, verbose);
        if (*quant_cmd) return cmd_quantize(q_in, q_out);
        if (*metrics_cmd) return cmd_metrics(m_trials, m_out);
        if (*compare_cmd) return cmd_compare(c_a, c_an, c_b, c_bn, c_out);
        if (*init_cmd) return cmd_init(i_sizes, i_seed, i_gain, i_spread, i_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
