#include "homeostat/config.hpp"

#include "homeostat/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <initializer_list>

namespace homeostat {

using nlohmann::json;

namespace {

void expect_keys(const json& j, const std::string& where,
                 std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

template <class T>
T require(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
    T out{};
    read(j, key, out, where);
    return out;
}

NeuronKind parse_neuron(const std::string& s) {
    if (s == "lif") return NeuronKind::Lif;
    if (s == "srm") return NeuronKind::Srm;
    throw ConfigError("unknown neuron kind '" + s + "'");
}

void parse_lif(const json& j, LifConfig& cfg) {
    expect_keys(j, "lif", {"decay", "threshold"});
    read(j, "decay", cfg.decay, "lif");
    read(j, "threshold", cfg.threshold, "lif");
}

void parse_srm(const json& j, SrmConfig& cfg) {
    expect_keys(j, "srm", {"tau_s", "tau_r", "threshold", "horizon"});
    read(j, "tau_s", cfg.tau_s, "srm");
    read(j, "tau_r", cfg.tau_r, "srm");
    read(j, "threshold", cfg.threshold, "srm");
    read(j, "horizon", cfg.horizon, "srm");
}

void parse_weight_params(const json& j, AdapterConfig& cfg, const std::string& where) {
    read(j, "psi_scale", cfg.psi_scale, where);
    read(j, "alpha", cfg.alpha, where);
    read(j, "zeta_cv", cfg.zeta_cv, where);
    read(j, "n", cfg.window, where);
    if (j.contains("clamp")) {
        std::vector<double> c;
        read(j, "clamp", c, where);
        if (c.size() != 2) throw ConfigError(where + ".clamp: expected [lo, hi]");
        cfg.mix_lo = c[0];
        cfg.mix_hi = c[1];
    }
}

BdettConfig parse_bdett(const json& j, const std::string& where) {
    expect_keys(j, where, {"eta", "psi", "C"});
    BdettConfig b;
    read(j, "eta", b.eta, where);
    read(j, "psi", b.psi, where);
    read(j, "C", b.c, where);
    b.validate();
    return b;
}

InputPerturbation parse_input(const json& j, const std::string& where) {
    const auto kind = require<std::string>(j, "kind", where);
    if (kind == "fix") {
        expect_keys(j, where, {"kind", "indices", "value"});
        FixChannels f;
        f.indices = require<std::vector<std::size_t>>(j, "indices", where);
        f.value = require<double>(j, "value", where);
        return f;
    }
    if (kind == "gaussian") {
        expect_keys(j, where, {"kind", "sigma"});
        GaussianObs g;
        read(j, "sigma", g.sigma, where);
        return g;
    }
    if (kind == "min" || kind == "max") {
        expect_keys(j, where, {"kind", "magnitude"});
        ReplaceRandomDim r;
        r.extreme = kind == "min" ? Extreme::Min : Extreme::Max;
        read(j, "magnitude", r.magnitude, where);
        return r;
    }
    throw ConfigError(where + ": unknown input perturbation '" + kind + "'");
}

WeightPerturbation parse_weights(const json& j, const std::string& where) {
    const auto kind = require<std::string>(j, "kind", where);
    if (kind == "loihi8") {
        expect_keys(j, where, {"kind"});
        return Loihi8Bit{};
    }
    if (kind == "gaussian") {
        expect_keys(j, where, {"kind", "sigma"});
        GaussianWeights g;
        read(j, "sigma", g.sigma, where);
        return g;
    }
    if (kind == "zero") {
        expect_keys(j, where, {"kind", "fraction"});
        ZeroFraction z;
        read(j, "fraction", z.fraction, where);
        return z;
    }
    throw ConfigError(where + ": unknown weight perturbation '" + kind + "'");
}

AdapterSetup parse_adapter_setup(const json& j, std::size_t index) {
    const std::string where = "adapters[" + std::to_string(index) + "]";
    expect_keys(j, where,
                {"name", "kind", "psi_scale", "alpha", "zeta_cv", "n", "clamp", "boundaries",
                 "bdett", "eta", "psi", "C"});
    AdapterSetup s;
    const auto kind = require<std::string>(j, "kind", where);
    s.name = j.contains("name") ? require<std::string>(j, "name", where) : kind;
    if (kind == "bdett-threshold") {
        if (j.contains("bdett")) throw ConfigError(where + ": use eta/psi/C directly for bdett-threshold");
        BdettConfig b;
        read(j, "eta", b.eta, where);
        read(j, "psi", b.psi, where);
        read(j, "C", b.c, where);
        b.validate();
        s.bdett = b;
        for (const char* k : {"psi_scale", "alpha", "zeta_cv", "n", "clamp", "boundaries"}) {
            if (j.contains(k)) throw ConfigError(where + ": '" + k + "' needs a weight adapter kind");
        }
        return s;
    }
    for (const char* k : {"eta", "psi", "C"}) {
        if (j.contains(k)) throw ConfigError(where + ": '" + k + "' belongs in the bdett block");
    }
    s.weight.kind = parse_adapter_kind(kind);
    parse_weight_params(j, s.weight, where);
    read(j, "boundaries", s.boundaries, where);
    if (j.contains("bdett")) s.bdett = parse_bdett(j.at("bdett"), where + ".bdett");
    s.weight.validate();
    return s;
}

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

} // namespace

AdapterKind parse_adapter_kind(std::string_view name) {
    if (name == "none") return AdapterKind::None;
    if (name == "biodwam") return AdapterKind::BioDwam;
    if (name == "dwam") return AdapterKind::Dwam;
    throw ConfigError("unknown adapter kind '" + std::string(name) + "'");
}

std::string adapter_kind_name(AdapterKind kind) {
    switch (kind) {
    case AdapterKind::None: return "none";
    case AdapterKind::BioDwam: return "biodwam";
    case AdapterKind::Dwam: return "dwam";
    }
    return "none";
}

SuiteConfig parse_suite_config(const std::string& text) {
    const json doc = parse_document(text);
    expect_keys(doc, "suite", {"seed", "trials", "steps", "bank_size", "network", "conditions", "adapters"});
    SuiteConfig cfg;
    read(doc, "seed", cfg.seed, "suite");
    read(doc, "trials", cfg.trials, "suite");
    read(doc, "steps", cfg.steps, "suite");
    read(doc, "bank_size", cfg.bank_size, "suite");
    if (doc.contains("network")) {
        const auto& n = doc.at("network");
        expect_keys(n, "network", {"neuron", "layer_sizes", "lif", "srm"});
        if (n.contains("neuron")) cfg.neuron = parse_neuron(require<std::string>(n, "neuron", "network"));
        read(n, "layer_sizes", cfg.layer_sizes, "network");
        if (n.contains("lif")) parse_lif(n.at("lif"), cfg.lif);
        if (n.contains("srm")) parse_srm(n.at("srm"), cfg.srm);
    }
    if (doc.contains("conditions")) {
        const auto& list = doc.at("conditions");
        if (!list.is_array()) throw ConfigError("suite.conditions: expected an array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string where = "conditions[" + std::to_string(i) + "]";
            const auto& c = list[i];
            expect_keys(c, where, {"name", "input", "weights"});
            Condition cond;
            cond.name = require<std::string>(c, "name", where);
            if (c.contains("input")) cond.input = parse_input(c.at("input"), where + ".input");
            if (c.contains("weights")) cond.weights = parse_weights(c.at("weights"), where + ".weights");
            cfg.conditions.push_back(std::move(cond));
        }
    }
    if (doc.contains("adapters")) {
        const auto& list = doc.at("adapters");
        if (!list.is_array()) throw ConfigError("suite.adapters: expected an array");
        cfg.adapters.clear();
        for (std::size_t i = 0; i < list.size(); ++i) cfg.adapters.push_back(parse_adapter_setup(list[i], i));
    }
    cfg.validate();
    return cfg;
}

ToyConfig parse_toy_config(const std::string& text) {
    const json doc = parse_document(text);
    expect_keys(doc, "toy", {"layer_sizes", "input_rate", "boundary_weights", "steps", "seed",
                             "neuron", "lif", "srm", "adapter", "classifier"});
    ToyConfig cfg;
    auto& s = cfg.scenario;
    read(doc, "layer_sizes", s.layer_sizes, "toy");
    read(doc, "input_rate", s.input_rate, "toy");
    read(doc, "boundary_weights", s.boundary_weights, "toy");
    read(doc, "steps", s.steps, "toy");
    read(doc, "seed", s.seed, "toy");
    if (doc.contains("neuron")) s.neuron = parse_neuron(require<std::string>(doc, "neuron", "toy"));
    if (doc.contains("lif")) parse_lif(doc.at("lif"), s.lif);
    if (doc.contains("srm")) parse_srm(doc.at("srm"), s.srm);
    if (doc.contains("adapter")) {
        const auto& a = doc.at("adapter");
        expect_keys(a, "toy.adapter", {"psi_scale", "alpha", "zeta_cv", "n", "clamp"});
        parse_weight_params(a, s.adapter, "toy.adapter");
    }
    if (doc.contains("classifier")) {
        const auto& c = doc.at("classifier");
        expect_keys(c, "toy.classifier", {"window", "tol", "min_crossings", "min_amplitude"});
        read(c, "window", cfg.classifier.window, "toy.classifier");
        read(c, "tol", cfg.classifier.tol, "toy.classifier");
        read(c, "min_crossings", cfg.classifier.min_crossings, "toy.classifier");
        read(c, "min_amplitude", cfg.classifier.min_amplitude, "toy.classifier");
    }
    s.validate();
    return cfg;
}

std::string suite_config_fingerprint(const SuiteConfig& cfg) {
    json j;
    j["seed"] = cfg.seed;
    j["trials"] = cfg.trials;
    j["steps"] = cfg.steps;
    j["bank_size"] = cfg.bank_size;
    j["neuron"] = cfg.neuron == NeuronKind::Lif ? "lif" : "srm";
    j["lif"] = {cfg.lif.decay, cfg.lif.threshold};
    j["srm"] = {cfg.srm.tau_s, cfg.srm.tau_r, cfg.srm.threshold, cfg.srm.horizon};
    j["layer_sizes"] = cfg.layer_sizes;
    json conds = json::array();
    for (const auto& c : cfg.conditions) {
        conds.push_back({{"name", c.name},
                         {"input", c.input ? describe(*c.input) : ""},
                         {"weights", c.weights ? describe(*c.weights) : ""}});
    }
    j["conditions"] = conds;
    json adapters = json::array();
    for (const auto& a : cfg.adapters) {
        json b = nullptr;
        if (a.bdett) b = {a.bdett->eta, a.bdett->psi, a.bdett->c};
        adapters.push_back({{"name", a.name},
                            {"kind", adapter_kind_name(a.weight.kind)},
                            {"params", {a.weight.psi_scale, a.weight.alpha, a.weight.zeta_cv,
                                        a.weight.window, a.weight.mix_lo, a.weight.mix_hi}},
                            {"boundaries", a.boundaries},
                            {"bdett", b}});
    }
    j["adapters"] = adapters;
    return j.dump();
}

} // namespace homeostat
