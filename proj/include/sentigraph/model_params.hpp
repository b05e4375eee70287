#pragma once

#include <array>
#include <fstream>
#include <string>

#include <json.hpp>

#include "sentigraph/errors.hpp"
#include "sentigraph/graph.hpp"

namespace sentigraph {

inline constexpr int kNumFeatures = 4 + 4 * kNumLinkTypes; // mu[k][l] + lambda[k][l][g]

// Global factor weights: mu over user-tweet label pairs, lambda over
// (label, label, link type) categories, plus the confidence weights.
struct ModelParams {
    double mu[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
    double lambda[2][2][kNumLinkTypes] = {};
    double w_labeled = 1.0;
    double w_unlabeled = 0.125;
    double w_relation = 0.6;

    // packing order: mu(k,l) at 2k+l, lambda(k,l,g) at 4 + 4g + 2k + l
    static constexpr int mu_index(int k, int l) { return 2 * k + l; }
    static constexpr int lambda_index(int k, int l, LinkType g) {
        return 4 + 4 * static_cast<int>(g) + 2 * k + l;
    }

    std::array<double, kNumFeatures> phi() const {
        std::array<double, kNumFeatures> out{};
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) {
                out[static_cast<std::size_t>(mu_index(k, l))] = mu[k][l];
                for (LinkType g : all_link_types())
                    out[static_cast<std::size_t>(lambda_index(k, l, g))] = lambda[k][l][static_cast<int>(g)];
            }
        return out;
    }

    void set_phi(const std::array<double, kNumFeatures>& phi) {
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) {
                mu[k][l] = phi[static_cast<std::size_t>(mu_index(k, l))];
                for (LinkType g : all_link_types())
                    lambda[k][l][static_cast<int>(g)] = phi[static_cast<std::size_t>(lambda_index(k, l, g))];
            }
    }
};

inline nlohmann::ordered_json params_to_json(const ModelParams& p) {
    nlohmann::ordered_json j;
    j["mu"] = {{p.mu[0][0], p.mu[0][1]}, {p.mu[1][0], p.mu[1][1]}};
    nlohmann::ordered_json lam;
    for (LinkType g : all_link_types()) {
        int gi = static_cast<int>(g);
        lam[link_type_name(g)] = {{p.lambda[0][0][gi], p.lambda[0][1][gi]},
                                  {p.lambda[1][0][gi], p.lambda[1][1][gi]}};
    }
    j["lambda"] = std::move(lam);
    j["w_labeled"] = p.w_labeled;
    j["w_unlabeled"] = p.w_unlabeled;
    j["w_relation"] = p.w_relation;
    return j;
}

inline ModelParams params_from_json(const nlohmann::json& j) {
    ModelParams p;
    const auto& mu = j.at("mu");
    if (!mu.is_array() || mu.size() != 2 || mu[0].size() != 2 || mu[1].size() != 2)
        throw IoError("mu must be a 2x2 matrix");
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
            p.mu[k][l] = mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)].get<double>();
    const auto& lam = j.at("lambda");
    for (LinkType g : all_link_types()) {
        const auto& block = lam.at(link_type_name(g));
        if (!block.is_array() || block.size() != 2 || block[0].size() != 2 || block[1].size() != 2)
            throw IoError(std::string("lambda block for ") + link_type_name(g) + " must be 2x2");
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l)
                p.lambda[k][l][static_cast<int>(g)] =
                    block[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)].get<double>();
    }
    p.w_labeled = j.at("w_labeled").get<double>();
    p.w_unlabeled = j.at("w_unlabeled").get<double>();
    p.w_relation = j.at("w_relation").get<double>();
    return p;
}

inline void save_params(const ModelParams& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << params_to_json(p).dump(2) << "\n";
}

inline ModelParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad JSON in ") + path + ": " + e.what());
    }
    return params_from_json(j);
}

} // namespace sentigraph
