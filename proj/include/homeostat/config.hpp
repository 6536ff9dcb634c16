#pragma once

#include "homeostat/experiments.hpp"

#include <string>
#include <string_view>

namespace homeostat {

// Experiment configuration documents (JSON). Parsing is strict: unknown
// keys and wrongly typed values raise ConfigError.

AdapterKind parse_adapter_kind(std::string_view name);  // none | biodwam | dwam
std::string adapter_kind_name(AdapterKind kind);

/// Suite document:
///   {"seed": 1, "trials": 10, "steps": 100, "bank_size": 0,
///    "network": {"neuron": "lif"|"srm", "layer_sizes": [...],
///                "lif": {"decay", "threshold"},
///                "srm": {"tau_s", "tau_r", "threshold", "horizon"}},
///    "conditions": [{"name", "input": {...}, "weights": {...}}],
///    "adapters": [{"name", "kind": "none"|"biodwam"|"dwam"|"bdett-threshold",
///                  "psi_scale", "alpha", "zeta_cv", "n", "clamp": [lo, hi],
///                  "boundaries": [...], "bdett": {"eta", "psi", "C"}}]}
/// Input perturbations: {"kind": "fix", "indices": [...], "value": v}
///                      {"kind": "gaussian", "sigma": s}
///                      {"kind": "min"|"max", "magnitude": m}
/// Weight perturbations: {"kind": "loihi8"} | {"kind": "gaussian", "sigma": s}
///                       | {"kind": "zero", "fraction": f}
SuiteConfig parse_suite_config(const std::string& text);

/// Toy document:
///   {"layer_sizes", "input_rate", "boundary_weights", "steps", "seed",
///    "neuron", "lif", "srm", "adapter": {psi_scale, alpha, zeta_cv, n, clamp},
///    "classifier": {"window", "tol", "min_crossings", "min_amplitude"}}
struct ToyConfig {
    ToyScenario scenario;
    ClassifierConfig classifier;
};
ToyConfig parse_toy_config(const std::string& text);

/// Canonical JSON of a parsed suite config; its hash is written next to results.
std::string suite_config_fingerprint(const SuiteConfig& cfg);

} // namespace homeostat
