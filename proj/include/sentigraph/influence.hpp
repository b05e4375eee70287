#pragma once

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "sentigraph/errors.hpp"
#include "sentigraph/graph.hpp"

namespace sentigraph {

enum class InfluenceNormalization { RawProbability, MeanOne };

// Per-user PageRank influence scores, index-aligned with the graph's users.
struct InfluenceScores {
    std::vector<double> scores;
    InfluenceNormalization normalization = InfluenceNormalization::RawProbability;
    bool converged = true;
    int iterations = 0;
    double damping = 0.85;
    double tol = 1e-12;
};

// Power iteration p <- (1-d)/N + d * A^T p on the type-collapsed user digraph.
// Dangling nodes redistribute their mass uniformly. Non-convergence is not an
// error; the last iterate is returned with converged=false.
inline InfluenceScores compute_pagerank(const std::vector<std::vector<int>>& subgraph,
                                        double damping = 0.85, double tol = 1e-12,
                                        int max_iter = 1000) {
    const std::size_t n = subgraph.size();
    if (n == 0) throw EmptyGraph("pagerank on empty graph");

    InfluenceScores out;
    out.damping = damping;
    out.tol = tol;
    std::vector<double> p(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    const double base = (1.0 - damping) / static_cast<double>(n);

    for (int iter = 1; iter <= max_iter; ++iter) {
        double dangling_mass = 0.0;
        for (std::size_t v = 0; v < n; ++v)
            if (subgraph[v].empty()) dangling_mass += p[v];
        const double fill = base + damping * dangling_mass / static_cast<double>(n);
        std::fill(next.begin(), next.end(), fill);
        for (std::size_t v = 0; v < n; ++v) {
            if (subgraph[v].empty()) continue;
            const double share = damping * p[v] / static_cast<double>(subgraph[v].size());
            for (int u : subgraph[v]) next[static_cast<std::size_t>(u)] += share;
        }
        double delta = 0.0;
        for (std::size_t v = 0; v < n; ++v) delta += std::fabs(next[v] - p[v]);
        p.swap(next);
        out.iterations = iter;
        if (delta < tol) {
            out.converged = true;
            out.scores = std::move(p);
            return out;
        }
    }
    out.converged = false;
    out.scores = std::move(p);
    return out;
}

// MeanOne rescales so the mean score is 1 (multiply by N); RawProbability is
// the identity on freshly computed scores.
inline InfluenceScores normalize_influence(InfluenceScores scores, InfluenceNormalization mode) {
    if (mode == scores.normalization) return scores;
    const double n = static_cast<double>(scores.scores.size());
    if (mode == InfluenceNormalization::MeanOne) {
        for (double& s : scores.scores) s *= n;
    } else {
        for (double& s : scores.scores) s /= n;
    }
    scores.normalization = mode;
    return scores;
}

inline void save_influence_tsv(const InfluenceScores& inf, const HeterogeneousGraph& graph,
                               const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    char header[160];
    std::snprintf(header, sizeof(header), "# damping=%g tol=%g iterations=%d converged=%d mode=%s\n",
                  inf.damping, inf.tol, inf.iterations, inf.converged ? 1 : 0,
                  inf.normalization == InfluenceNormalization::MeanOne ? "mean_one" : "raw");
    out << header;
    for (int v = 0; v < graph.num_users(); ++v) {
        char line[96];
        std::snprintf(line, sizeof(line), "%.17g", inf.scores[static_cast<std::size_t>(v)]);
        out << graph.user(v).id << '\t' << line << '\n';
    }
}

inline InfluenceScores load_influence_tsv(const std::string& path, const HeterogeneousGraph& graph) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    InfluenceScores inf;
    inf.scores.assign(static_cast<std::size_t>(graph.num_users()), 0.0);
    std::vector<bool> seen(inf.scores.size(), false);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            if (line.find("mode=mean_one") != std::string::npos)
                inf.normalization = InfluenceNormalization::MeanOne;
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw IoError("bad influence line: " + line);
        int v = graph.user_index(line.substr(0, tab));
        inf.scores[static_cast<std::size_t>(v)] = std::stod(line.substr(tab + 1));
        seen[static_cast<std::size_t>(v)] = true;
    }
    for (std::size_t v = 0; v < seen.size(); ++v)
        if (!seen[v]) throw MissingInfluence("no score for user " + graph.user(static_cast<int>(v)).id);
    return inf;
}

} // namespace sentigraph
