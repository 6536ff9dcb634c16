#include "homeostat/experiments.hpp"

#include "homeostat/error.hpp"
#include "homeostat/seed.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace homeostat {

using nlohmann::json;

std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    out << text;
    if (!out) throw ParseError("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// Toy scenario
// ---------------------------------------------------------------------------

void ToyScenario::validate() const {
    if (layer_sizes.size() < 2) throw ConfigError("toy: need at least two layers");
    if (layer_sizes.back() != 1) throw ConfigError("toy: output layer must have exactly 1 neuron");
    for (auto n : layer_sizes) {
        if (n == 0) throw ConfigError("toy: empty layer");
    }
    if (boundary_weights.size() + 1 != layer_sizes.size()) {
        throw ConfigError("toy: need one weight per layer boundary");
    }
    for (double w : boundary_weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("toy: weights must be positive");
    }
    if (!(input_rate >= 0.0 && input_rate <= 1.0)) throw ConfigError("toy: input rate outside [0, 1]");
    if (steps == 0) throw ConfigError("toy: steps must be positive");
    if (neuron == NeuronKind::Lif) {
        lif.validate();
    } else {
        srm.validate();
    }
}

Checkpoint toy_checkpoint(const ToyScenario& scenario) {
    scenario.validate();
    Checkpoint ckpt;
    ckpt.layer_sizes = scenario.layer_sizes;
    for (std::size_t b = 0; b + 1 < scenario.layer_sizes.size(); ++b) {
        ckpt.layers.emplace_back(scenario.layer_sizes[b + 1], scenario.layer_sizes[b],
                                 scenario.boundary_weights[b]);
    }
    return ckpt;
}

namespace {

std::string toy_fingerprint(AdapterKind kind, const ToyScenario& s) {
    std::ostringstream os;
    os << "toy;kind=" << static_cast<int>(kind) << ";sizes=";
    for (auto n : s.layer_sizes) os << n << ',';
    os << ";rate=" << format_number(s.input_rate) << ";w=";
    for (double w : s.boundary_weights) os << format_number(w) << ',';
    os << ";steps=" << s.steps << ";neuron=" << static_cast<int>(s.neuron)
       << ";lif=" << format_number(s.lif.decay) << ',' << format_number(s.lif.threshold)
       << ";srm=" << format_number(s.srm.tau_s) << ',' << format_number(s.srm.tau_r) << ','
       << format_number(s.srm.threshold) << ',' << s.srm.horizon
       << ";adapter=" << format_number(s.adapter.psi_scale) << ','
       << format_number(s.adapter.alpha) << ',' << format_number(s.adapter.zeta_cv) << ','
       << s.adapter.window << ',' << format_number(s.adapter.mix_lo) << ','
       << format_number(s.adapter.mix_hi) << ";seed=" << s.seed;
    return os.str();
}

} // namespace

TraceLog run_toy(AdapterKind kind, const ToyScenario& scenario) {
    auto ckpt = toy_checkpoint(scenario);
    const std::size_t boundaries = ckpt.layers.size();

    NetworkConfig cfg;
    cfg.neuron = scenario.neuron;
    cfg.lif = scenario.lif;
    cfg.srm = scenario.srm;
    cfg.adapters.resize(boundaries);
    cfg.adapters.back() = scenario.adapter;
    cfg.adapters.back().kind = kind;

    Network net(std::move(ckpt.layers), cfg);

    std::mt19937_64 rng(derive_seed(scenario.seed, {0x70f}));
    const std::vector<double> drive(scenario.layer_sizes.front(), scenario.input_rate);
    const SpikeTrain inputs = poisson_encode(drive, scenario.steps, rng);

    TraceLog log;
    log.kind = kind;
    log.seed = scenario.seed;
    log.config_hash = fnv1a(toy_fingerprint(kind, scenario));
    log.rate.reserve(scenario.steps);
    log.theta.reserve(scenario.steps);
    log.theta_m.reserve(scenario.steps);
    log.mean_weight.reserve(scenario.steps);

    const std::size_t out = net.layer_count() - 1;
    for (std::size_t t = 0; t < scenario.steps; ++t) {
        net.step(inputs.step(t));
        log.rate.push_back(net.rates(out).rates()[0]);
        log.theta.push_back(net.modification_thresholds(out)[0]);
        const auto* a = net.adapter(out);
        log.theta_m.push_back(a ? a->theta_m()[0] : 0.0);
        log.mean_weight.push_back(mean(net.weights().back().weights));
    }
    return log;
}

StabilityVerdict classify_trace(std::span<const double> rate, std::span<const double> theta,
                                const ClassifierConfig& cfg) {
    const std::size_t w = cfg.window;
    if (w == 0) throw ConfigError("classify_trace: window must be positive");
    if (rate.size() != theta.size()) throw ConfigError("classify_trace: rate/theta length mismatch");
    if (rate.size() < 2 * w) {
        throw ConfigError("classify_trace: trace of " + std::to_string(rate.size()) +
                          " steps is shorter than 2 * window = " + std::to_string(2 * w));
    }
    const std::size_t n = rate.size();
    const std::size_t start = n - w;

    double lo = rate[start];
    double hi = rate[start];
    double gap = 0.0;
    for (std::size_t t = start; t < n; ++t) {
        lo = std::min(lo, rate[t]);
        hi = std::max(hi, rate[t]);
        gap += std::abs(rate[t] - theta[t]);
    }
    gap /= static_cast<double>(w);
    const double amplitude = hi - lo;

    if (amplitude <= cfg.tol && gap <= cfg.tol) {
        return Converged{rate[n - 1], std::abs(rate[n - 1] - theta[n - 1]), gap};
    }

    // Trailing w-step mean via a running sum over [t - w + 1, t].
    double sum = 0.0;
    for (std::size_t t = start + 1 - w; t <= start; ++t) sum += rate[t];
    std::size_t crossings = 0;
    int last_sign = 0;
    for (std::size_t t = start; t < n; ++t) {
        if (t > start) sum += rate[t] - rate[t - w];
        const double d = rate[t] - sum / static_cast<double>(w);
        const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (sign != 0) {
            if (last_sign != 0 && sign != last_sign) ++crossings;
            last_sign = sign;
        }
    }
    if (crossings >= cfg.min_crossings && amplitude >= cfg.min_amplitude) {
        return Oscillating{crossings, amplitude};
    }
    return Undetermined{crossings, amplitude, gap};
}

StabilityVerdict classify_trace(const TraceLog& trace, const ClassifierConfig& cfg) {
    return classify_trace(trace.rate, trace.theta, cfg);
}

std::string verdict_name(const StabilityVerdict& v) {
    switch (v.index()) {
    case 0: return "converged";
    case 1: return "oscillating";
    default: return "undetermined";
    }
}

std::string trace_to_csv(const TraceLog& trace) {
    std::string out = "step,neuron,rate,theta,theta_m,mean_weight\n";
    for (std::size_t t = 0; t < trace.size(); ++t) {
        out += std::to_string(t + 1);
        out += ",0,";
        out += format_number(trace.rate[t]);
        out += ',';
        out += format_number(trace.theta[t]);
        out += ',';
        out += format_number(trace.theta_m[t]);
        out += ',';
        out += format_number(trace.mean_weight[t]);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Degradation suite
// ---------------------------------------------------------------------------

namespace {

void check_name(const std::string& name, const char* what) {
    if (name.empty()) throw ConfigError(std::string(what) + " name must not be empty");
    if (name.find_first_of(",\"\n\r") != std::string::npos) {
        throw ConfigError(std::string(what) + " name '" + name + "' contains , \" or newline");
    }
}

enum : std::uint64_t { kStreamEncode = 1, kStreamPerturb = 2, kStreamBank = 3 };
enum : std::uint64_t { kSubInput = 1, kSubWeights = 2 };

} // namespace

void SuiteConfig::validate() const {
    if (trials == 0) throw ConfigError("suite: trials must be positive");
    if (steps == 0) throw ConfigError("suite: steps must be positive");
    if (neuron == NeuronKind::Lif) {
        lif.validate();
    } else {
        srm.validate();
    }
    if (adapters.empty()) throw ConfigError("suite: at least one adapter setup is required");
    std::vector<std::string> names;
    for (const auto& a : adapters) {
        check_name(a.name, "adapter");
        a.weight.validate();
        if (a.bdett) a.bdett->validate();
        names.push_back(a.name);
    }
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
        throw ConfigError("suite: duplicate adapter name");
    }
    names.clear();
    for (const auto& c : conditions) {
        check_name(c.name, "condition");
        if (c.name == kBaseCondition) throw ConfigError("suite: 'base' is reserved");
        if (c.input) homeostat::validate(*c.input);
        if (c.weights) homeostat::validate(*c.weights);
        names.push_back(c.name);
    }
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
        throw ConfigError("suite: duplicate condition name");
    }
}

std::vector<std::vector<double>> observation_bank(std::size_t count, std::size_t dim,
                                                  std::uint64_t master_seed) {
    std::mt19937_64 rng(derive_seed(master_seed, {kStreamBank}));
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<std::vector<double>> bank(count, std::vector<double>(dim));
    for (auto& obs : bank) {
        for (double& x : obs) x = uniform(rng);
    }
    return bank;
}

namespace {

struct Task {
    std::size_t adapter;
    std::size_t condition;  // 0 = base, k = conditions[k - 1]
    std::size_t trial;
};

TrialResult run_trial(const Checkpoint& ckpt, const SuiteConfig& cfg,
                      const std::vector<std::vector<double>>& bank, const Task& task,
                      bool keep_traces) {
    const AdapterSetup& setup = cfg.adapters[task.adapter];
    const Condition* cond = task.condition == 0 ? nullptr : &cfg.conditions[task.condition - 1];

    TrialResult res;
    res.adapter = setup.name;
    res.condition = cond ? cond->name : kBaseCondition;
    res.trial = task.trial;
    res.steps = cfg.steps;
    res.encode_seed = derive_seed(cfg.seed, {kStreamEncode, task.trial});
    res.perturb_seed = derive_seed(cfg.seed, {kStreamPerturb, task.trial, task.condition});

    std::vector<WeightMatrix> weights = ckpt.layers;
    std::vector<double> obs = bank[task.trial % bank.size()];
    if (cond && cond->weights) {
        std::mt19937_64 rng(derive_seed(res.perturb_seed, {kSubWeights}));
        weights = perturb_weights(weights, *cond->weights, rng);
    }
    if (cond && cond->input) {
        std::mt19937_64 rng(derive_seed(res.perturb_seed, {kSubInput}));
        obs = perturb_input(obs, *cond->input, rng);
        // Encoder expects normalized input.
        for (double& x : obs) x = std::clamp(x, 0.0, 1.0);
    }

    const std::size_t boundaries = weights.size();
    NetworkConfig ncfg;
    ncfg.neuron = cfg.neuron;
    ncfg.lif = cfg.lif;
    ncfg.srm = cfg.srm;
    ncfg.adapters.resize(boundaries);
    if (setup.weight.kind != AdapterKind::None) {
        if (setup.boundaries.empty()) {
            std::fill(ncfg.adapters.begin(), ncfg.adapters.end(), setup.weight);
        } else {
            for (std::size_t b : setup.boundaries) {
                if (b >= boundaries) {
                    throw ConfigError("adapter '" + setup.name + "': boundary " +
                                      std::to_string(b) + " does not exist");
                }
                ncfg.adapters[b] = setup.weight;
            }
        }
    }
    ncfg.thresholds.resize(boundaries);
    if (setup.bdett) {
        for (auto& t : ncfg.thresholds) t = ThresholdConfig{ThresholdKind::Bdett, *setup.bdett};
    }

    Network net(std::move(weights), ncfg);
    std::mt19937_64 rng(res.encode_seed);
    const SpikeTrain train = poisson_encode(obs, cfg.steps, rng);
    auto fwd = net.forward(train);
    if (keep_traces) res.layer_trace = std::move(fwd.rate_trace);

    for (std::size_t l = 1; l < net.layer_count(); ++l) {
        const auto& c = net.rates(l).counts();
        res.counts.insert(res.counts.end(), c.begin(), c.end());
    }
    return res;
}

} // namespace

SuiteResult run_degradation_suite(const Checkpoint& checkpoint, const SuiteConfig& cfg,
                                  std::size_t threads, bool keep_traces) {
    cfg.validate();
    checkpoint.validate();
    if (!cfg.layer_sizes.empty() && cfg.layer_sizes != checkpoint.layer_sizes) {
        throw TopologyError("suite: checkpoint topology does not match the configured layer sizes");
    }
    for (const auto& c : cfg.conditions) {
        if (c.input) {
            if (const auto* f = std::get_if<FixChannels>(&*c.input)) {
                for (auto i : f->indices) {
                    if (i >= checkpoint.layer_sizes.front()) {
                        throw ConfigError("condition '" + c.name + "': channel " +
                                          std::to_string(i) + " out of range");
                    }
                }
            }
        }
    }

    const std::size_t bank_size = cfg.bank_size == 0 ? cfg.trials : cfg.bank_size;
    const auto bank = observation_bank(bank_size, checkpoint.layer_sizes.front(), cfg.seed);

    std::vector<Task> tasks;
    for (std::size_t a = 0; a < cfg.adapters.size(); ++a) {
        for (std::size_t c = 0; c <= cfg.conditions.size(); ++c) {
            for (std::size_t p = 0; p < cfg.trials; ++p) tasks.push_back({a, c, p});
        }
    }

    std::vector<TrialResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                results[i] = run_trial(checkpoint, cfg, bank, tasks[i], keep_traces);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = tasks.size();
                return;
            }
        }
    };

    const std::size_t n_workers = std::clamp<std::size_t>(threads, 1, tasks.size());
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    SuiteResult out;
    out.reports = build_reports(results);
    out.trials = std::move(results);
    return out;
}

const ConditionMetrics* MetricsReport::find(const std::string& condition) const {
    for (const auto& c : conditions) {
        if (c.condition == condition) return &c;
    }
    return nullptr;
}

std::vector<MetricsReport> build_reports(const std::vector<TrialResult>& trials) {
    // Preserve first-appearance order of adapters and conditions.
    std::vector<std::string> adapters;
    std::map<std::string, std::vector<std::string>> conditions;
    std::map<std::pair<std::string, std::string>, std::vector<const TrialResult*>> groups;
    for (const auto& t : trials) {
        if (std::find(adapters.begin(), adapters.end(), t.adapter) == adapters.end()) {
            adapters.push_back(t.adapter);
        }
        auto& conds = conditions[t.adapter];
        if (std::find(conds.begin(), conds.end(), t.condition) == conds.end()) {
            conds.push_back(t.condition);
        }
        groups[{t.adapter, t.condition}].push_back(&t);
    }

    auto records = [&](const std::string& adapter, const std::string& condition) {
        auto ptrs = groups.at({adapter, condition});
        std::sort(ptrs.begin(), ptrs.end(),
                  [](const TrialResult* x, const TrialResult* y) { return x->trial < y->trial; });
        std::vector<TrialRecord> recs;
        for (const auto* t : ptrs) {
            auto rec = firing_rates(t->counts, t->steps);
            rec.trial = t->trial;
            rec.condition = condition;
            recs.push_back(std::move(rec));
        }
        return recs;
    };

    std::vector<MetricsReport> reports;
    for (const auto& adapter : adapters) {
        if (!groups.count({adapter, kBaseCondition})) {
            throw PairingError("adapter '" + adapter + "' has no base trials");
        }
        const auto base = records(adapter, kBaseCondition);
        const auto base_legacy = legacy_fr_metrics(base);
        MetricsReport report;
        report.adapter = adapter;
        std::vector<std::string> order{kBaseCondition};
        for (const auto& c : conditions[adapter]) {
            if (c != kBaseCondition) order.push_back(c);
        }
        for (const auto& c : order) {
            const auto degraded = c == kBaseCondition ? base : records(adapter, c);
            for (std::size_t p = 0; p < degraded.size() && p < base.size(); ++p) {
                if (degraded[p].trial != base[p].trial) {
                    throw PairingError("condition '" + c + "': trial indices do not match base");
                }
            }
            ConditionMetrics m;
            m.condition = c;
            m.hm = hm_metrics(base, degraded);
            m.base = base_legacy;
            m.degraded = legacy_fr_metrics(degraded);
            m.delta = {m.degraded.fr_mean - m.base.fr_mean,
                       m.degraded.fr_std_mean - m.base.fr_std_mean,
                       m.degraded.fr_std_std - m.base.fr_std_std};
            report.conditions.push_back(std::move(m));
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

std::vector<CompareRow> compare(const MetricsReport& a, const MetricsReport& b) {
    std::vector<CompareRow> rows;
    for (const auto& ca : a.conditions) {
        CompareRow row;
        row.condition = ca.condition;
        const auto* cb = b.find(ca.condition);
        if (!cb) {
            row.ok = false;
            row.error = "missing in b";
        } else {
            row.delta_hm_mean = cb->hm.hm_mean - ca.hm.hm_mean;
            row.delta_hm_std = cb->hm.hm_std - ca.hm.hm_std;
            row.favors = row.delta_hm_mean < 0.0 ? "b" : (row.delta_hm_mean > 0.0 ? "a" : "tie");
        }
        rows.push_back(std::move(row));
    }
    for (const auto& cb : b.conditions) {
        if (!a.find(cb.condition)) {
            CompareRow row;
            row.condition = cb.condition;
            row.ok = false;
            row.error = "missing in a";
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Artifact formats
// ---------------------------------------------------------------------------

std::string trials_to_csv(const std::vector<TrialResult>& trials) {
    std::string out = "adapter,condition,trial,encode_seed,perturb_seed,steps,neuron,count,rate\n";
    for (const auto& t : trials) {
        const std::string prefix = t.adapter + ',' + t.condition + ',' + std::to_string(t.trial) +
                                   ',' + std::to_string(t.encode_seed) + ',' +
                                   std::to_string(t.perturb_seed) + ',' +
                                   std::to_string(t.steps) + ',';
        for (std::size_t i = 0; i < t.counts.size(); ++i) {
            out += prefix;
            out += std::to_string(i);
            out += ',';
            out += std::to_string(t.counts[i]);
            out += ',';
            out += format_number(static_cast<double>(t.counts[i]) / static_cast<double>(t.steps));
            out += '\n';
        }
    }
    return out;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

template <class T>
T parse_uint(const std::string& s, std::size_t line) {
    T v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ParseError("trials csv line " + std::to_string(line) + ": bad integer '" + s + "'");
    }
    return v;
}

} // namespace

std::vector<TrialResult> trials_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) ||
        split(line, ',') != std::vector<std::string>{"adapter", "condition", "trial", "encode_seed",
                                                     "perturb_seed", "steps", "neuron", "count",
                                                     "rate"}) {
        throw ParseError("trials csv: unexpected header");
    }
    std::vector<TrialResult> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 9) throw ParseError("trials csv line " + std::to_string(lineno) + ": expected 9 fields");
        const auto trial = parse_uint<std::size_t>(f[2], lineno);
        const auto neuron = parse_uint<std::size_t>(f[6], lineno);
        const bool same = !out.empty() && out.back().adapter == f[0] &&
                          out.back().condition == f[1] && out.back().trial == trial;
        if (!same) {
            TrialResult t;
            t.adapter = f[0];
            t.condition = f[1];
            t.trial = trial;
            t.encode_seed = parse_uint<std::uint64_t>(f[3], lineno);
            t.perturb_seed = parse_uint<std::uint64_t>(f[4], lineno);
            t.steps = parse_uint<std::size_t>(f[5], lineno);
            out.push_back(std::move(t));
        }
        auto& t = out.back();
        if (neuron != t.counts.size()) {
            throw ParseError("trials csv line " + std::to_string(lineno) + ": neuron ids out of order");
        }
        t.counts.push_back(parse_uint<std::size_t>(f[7], lineno));
    }
    return out;
}

namespace {

json legacy_json(const LegacyMetrics& m) {
    return {{"fr_mean", m.fr_mean}, {"fr_std_mean", m.fr_std_mean}, {"fr_std_std", m.fr_std_std}};
}

LegacyMetrics legacy_from(const json& j) {
    return {j.at("fr_mean").get<double>(), j.at("fr_std_mean").get<double>(),
            j.at("fr_std_std").get<double>()};
}

} // namespace

std::string reports_to_json(const std::vector<MetricsReport>& reports) {
    json doc = json::array();
    for (const auto& r : reports) {
        json conds = json::array();
        for (const auto& c : r.conditions) {
            conds.push_back({{"condition", c.condition},
                             {"hm_mean", c.hm.hm_mean},
                             {"hm_std", c.hm.hm_std},
                             {"base", legacy_json(c.base)},
                             {"degraded", legacy_json(c.degraded)},
                             {"delta", legacy_json(c.delta)}});
        }
        doc.push_back({{"adapter", r.adapter}, {"conditions", std::move(conds)}});
    }
    return json{{"reports", std::move(doc)}}.dump(2) + "\n";
}

std::vector<MetricsReport> reports_from_json(const std::string& text) {
    std::vector<MetricsReport> out;
    try {
        const auto doc = json::parse(text);
        for (const auto& r : doc.at("reports")) {
            MetricsReport rep;
            rep.adapter = r.at("adapter").get<std::string>();
            for (const auto& c : r.at("conditions")) {
                ConditionMetrics m;
                m.condition = c.at("condition").get<std::string>();
                m.hm = {c.at("hm_mean").get<double>(), c.at("hm_std").get<double>()};
                m.base = legacy_from(c.at("base"));
                m.degraded = legacy_from(c.at("degraded"));
                m.delta = legacy_from(c.at("delta"));
                rep.conditions.push_back(std::move(m));
            }
            out.push_back(std::move(rep));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
    return out;
}

std::string reports_to_csv(const std::vector<MetricsReport>& reports) {
    std::string out =
        "adapter,condition,hm_mean,hm_std,fr_mean,fr_std_mean,fr_std_std,"
        "delta_fr_mean,delta_fr_std_mean,delta_fr_std_std\n";
    for (const auto& r : reports) {
        for (const auto& c : r.conditions) {
            out += r.adapter + ',' + c.condition + ',' + format_number(c.hm.hm_mean) + ',' +
                   format_number(c.hm.hm_std) + ',' + format_number(c.degraded.fr_mean) + ',' +
                   format_number(c.degraded.fr_std_mean) + ',' +
                   format_number(c.degraded.fr_std_std) + ',' + format_number(c.delta.fr_mean) +
                   ',' + format_number(c.delta.fr_std_mean) + ',' +
                   format_number(c.delta.fr_std_std) + '\n';
        }
    }
    return out;
}

std::string compare_to_csv(const std::string& name_a, const std::string& name_b,
                           const std::vector<CompareRow>& rows) {
    std::string out = "a,b,condition,status,delta_hm_mean,delta_hm_std,favors\n";
    for (const auto& r : rows) {
        out += name_a + ',' + name_b + ',' + r.condition + ',';
        if (r.ok) {
            out += "ok," + format_number(r.delta_hm_mean) + ',' + format_number(r.delta_hm_std) +
                   ',' + r.favors + '\n';
        } else {
            out += "error: " + r.error + ",,,\n";
        }
    }
    return out;
}

std::string layer_trace_to_csv(const std::vector<TrialResult>& trials) {
    std::string out = "adapter,condition,trial,step,layer,mean_rate\n";
    for (const auto& t : trials) {
        for (std::size_t s = 0; s < t.layer_trace.size(); ++s) {
            for (std::size_t l = 0; l < t.layer_trace[s].size(); ++l) {
                out += t.adapter + ',' + t.condition + ',' + std::to_string(t.trial) + ',' +
                       std::to_string(s + 1) + ',' + std::to_string(l) + ',' +
                       format_number(t.layer_trace[s][l]) + '\n';
            }
        }
    }
    return out;
}

} // namespace homeostat
