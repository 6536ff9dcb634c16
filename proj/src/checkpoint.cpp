#include "homeostat/checkpoint.hpp"

#include "homeostat/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace homeostat {

using nlohmann::json;

void Checkpoint::validate() const {
    if (layer_sizes.size() < 2) throw TopologyError("checkpoint needs at least two layers");
    if (layers.size() + 1 != layer_sizes.size()) {
        throw TopologyError("checkpoint has " + std::to_string(layers.size()) +
                            " matrices for " + std::to_string(layer_sizes.size()) + " layers");
    }
    for (std::size_t b = 0; b < layers.size(); ++b) {
        const auto& w = layers[b];
        w.validate();
        if (w.rows != layer_sizes[b + 1] || w.cols != layer_sizes[b]) {
            throw TopologyError("checkpoint layer " + std::to_string(b) + " shape mismatch");
        }
    }
}

std::string checkpoint_to_json(const Checkpoint& ckpt) {
    json doc;
    doc["format"] = "homeostat-checkpoint";
    doc["version"] = 1;
    doc["layer_sizes"] = ckpt.layer_sizes;
    json layers = json::array();
    for (const auto& w : ckpt.layers) {
        layers.push_back({{"rows", w.rows}, {"cols", w.cols}, {"weights", w.weights},
                          {"bias", w.bias}});
    }
    doc["layers"] = std::move(layers);
    return doc.dump(1) + "\n";
}

Checkpoint checkpoint_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("checkpoint: ") + e.what());
    }
    Checkpoint ckpt;
    try {
        if (doc.at("format").get<std::string>() != "homeostat-checkpoint") {
            throw ParseError("checkpoint: unexpected format tag");
        }
        if (doc.at("version").get<int>() != 1) throw ParseError("checkpoint: unsupported version");
        ckpt.layer_sizes = doc.at("layer_sizes").get<std::vector<std::size_t>>();
        for (const auto& l : doc.at("layers")) {
            WeightMatrix w;
            w.rows = l.at("rows").get<std::size_t>();
            w.cols = l.at("cols").get<std::size_t>();
            w.weights = l.at("weights").get<std::vector<double>>();
            w.bias = l.at("bias").get<std::vector<double>>();
            ckpt.layers.push_back(std::move(w));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("checkpoint: ") + e.what());
    }
    ckpt.validate();
    return ckpt;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open checkpoint " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return checkpoint_from_json(ss.str());
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write checkpoint " + path.string());
    out << checkpoint_to_json(ckpt);
}

Checkpoint random_checkpoint(const std::vector<std::size_t>& layer_sizes, std::uint64_t seed,
                             double mean_gain, double spread) {
    Checkpoint ckpt;
    ckpt.layer_sizes = layer_sizes;
    std::mt19937_64 rng(seed);
    for (std::size_t b = 0; b + 1 < layer_sizes.size(); ++b) {
        const std::size_t fan_in = layer_sizes[b];
        WeightMatrix w(layer_sizes[b + 1], fan_in);
        const double n = static_cast<double>(std::max<std::size_t>(fan_in, 1));
        std::normal_distribution<double> dist(mean_gain / n, spread / std::sqrt(n));
        for (double& x : w.weights) x = dist(rng);
        ckpt.layers.push_back(std::move(w));
    }
    ckpt.validate();
    return ckpt;
}

} // namespace homeostat
