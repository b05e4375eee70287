#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sentigraph/errors.hpp"
#include "sentigraph/evalkit.hpp"
#include "sentigraph/factor_model.hpp"
#include "sentigraph/graph.hpp"
#include "sentigraph/influence.hpp"
#include "sentigraph/labeling.hpp"
#include "sentigraph/model_params.hpp"

namespace sentigraph {

// Pairwise binary factor with log-potential matrix, first index = var_a's label.
struct PairwiseFactor {
    int var_a;
    int var_b;
    double logpot[2][2];
};

// Variables are the graph's users (indices 0..U-1) followed by its tweets
// (U..U+T-1). Evidence entries are clamped during inference.
struct FactorGraphView {
    int num_users = 0;
    int num_tweets = 0;
    std::vector<PairwiseFactor> factors;
    std::vector<std::optional<int>> evidence; // per variable

    int num_variables() const { return num_users + num_tweets; }
    int tweet_var(int t) const { return num_users + t; }
};

struct LbpConfig {
    int max_iterations = 100;
    double tolerance = 1e-6;
    double damping = 0.5; // geometric interpolation in log space
    TieBreak tie_break = TieBreak::PreferPositive;
};

struct Marginals {
    std::vector<std::array<double, 2>> beliefs; // (P(0), P(1)) per variable
    bool converged = true;
    int iterations = 0;
    double max_residual = 0.0;
    std::vector<int> map_assignment; // filled by exact_marginals only
};

// One factor per authorship pair and one per ordered typed adjacency entry.
inline FactorGraphView build_factor_graph(const HeterogeneousGraph& graph,
                                          const ModelParams& params,
                                          const InfluenceScores& influence,
                                          const Labeling* evidence = nullptr) {
    detail::check_influence(graph, influence);
    FactorGraphView fg;
    fg.num_users = graph.num_users();
    fg.num_tweets = graph.num_tweets();
    fg.evidence.assign(static_cast<std::size_t>(fg.num_variables()), std::nullopt);

    for (int v = 0; v < graph.num_users(); ++v) {
        const double p_v = influence.scores[static_cast<std::size_t>(v)];
        const auto& tw = graph.tweets_of(v);
        if (!tw.empty()) {
            const double wf = detail::tweet_weight(graph, params, v) / static_cast<double>(tw.size());
            for (int t : tw) {
                PairwiseFactor f{v, fg.tweet_var(t), {}};
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) f.logpot[a][b] = p_v * params.mu[a][b] * wf;
                fg.factors.push_back(f);
            }
        }
        for (LinkType g : all_link_types()) {
            const auto& nb = graph.neighbors(v, g);
            if (nb.empty()) continue;
            const double wr = params.w_relation / static_cast<double>(nb.size());
            const int gi = static_cast<int>(g);
            for (int u : nb) {
                PairwiseFactor f{v, u, {}};
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) f.logpot[a][b] = p_v * params.lambda[a][b][gi] * wr;
                fg.factors.push_back(f);
            }
        }
    }

    if (evidence) {
        evidence->check_matches(graph);
        for (int v = 0; v < graph.num_users(); ++v)
            if (evidence->user_observed[static_cast<std::size_t>(v)])
                fg.evidence[static_cast<std::size_t>(v)] = evidence->user(v);
        for (int t = 0; t < graph.num_tweets(); ++t)
            if (evidence->tweet_observed[static_cast<std::size_t>(t)])
                fg.evidence[static_cast<std::size_t>(fg.tweet_var(t))] = evidence->tweet(t);
    }
    return fg;
}

namespace detail {
inline double log_sum_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double m = a > b ? a : b;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}
} // namespace detail

// Synchronous sum-product with log-space damped messages. Clamped variables
// emit delta messages and keep point-mass beliefs. Non-convergence is
// reported in the result, never thrown.
inline Marginals run_lbp(const FactorGraphView& fg, const LbpConfig& config = LbpConfig{}) {
    const int n_vars = fg.num_variables();
    const std::size_t n_factors = fg.factors.size();
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();

    // factor->variable messages, [factor][side][label]; side 0 = to var_a
    std::vector<std::array<std::array<double, 2>, 2>> msg(n_factors, {{{0.0, 0.0}, {0.0, 0.0}}});
    auto msg_new = msg;

    std::vector<std::array<double, 2>> prebelief(static_cast<std::size_t>(n_vars));

    Marginals out;
    out.converged = false;
    for (int iter = 1; iter <= config.max_iterations; ++iter) {
        // pre-belief: evidence log-indicator plus all incoming messages
        for (int v = 0; v < n_vars; ++v) {
            const auto& ev = fg.evidence[static_cast<std::size_t>(v)];
            if (ev)
                prebelief[static_cast<std::size_t>(v)] = {*ev == 0 ? 0.0 : neg_inf,
                                                          *ev == 1 ? 0.0 : neg_inf};
            else
                prebelief[static_cast<std::size_t>(v)] = {0.0, 0.0};
        }
        for (std::size_t fi = 0; fi < n_factors; ++fi) {
            const PairwiseFactor& f = fg.factors[fi];
            for (int x = 0; x < 2; ++x) {
                prebelief[static_cast<std::size_t>(f.var_a)][static_cast<std::size_t>(x)] +=
                    msg[fi][0][static_cast<std::size_t>(x)];
                prebelief[static_cast<std::size_t>(f.var_b)][static_cast<std::size_t>(x)] +=
                    msg[fi][1][static_cast<std::size_t>(x)];
            }
        }

        double residual = 0.0;
        for (std::size_t fi = 0; fi < n_factors; ++fi) {
            const PairwiseFactor& f = fg.factors[fi];
            for (int side = 0; side < 2; ++side) {
                const int target = side == 0 ? f.var_a : f.var_b;
                const int source = side == 0 ? f.var_b : f.var_a;
                // variable->factor message from the opposite endpoint
                double n_src[2];
                for (int y = 0; y < 2; ++y)
                    n_src[y] = prebelief[static_cast<std::size_t>(source)][static_cast<std::size_t>(y)] -
                               msg[fi][static_cast<std::size_t>(1 - side)][static_cast<std::size_t>(y)];
                double m[2];
                for (int x = 0; x < 2; ++x) {
                    const double pa = side == 0 ? f.logpot[x][0] : f.logpot[0][x];
                    const double pb = side == 0 ? f.logpot[x][1] : f.logpot[1][x];
                    m[x] = detail::log_sum_exp(pa + n_src[0], pb + n_src[1]);
                }
                const double norm = detail::log_sum_exp(m[0], m[1]);
                for (int x = 0; x < 2; ++x) {
                    double updated = (1.0 - config.damping) * (m[x] - norm) +
                                     config.damping * msg[fi][static_cast<std::size_t>(side)][static_cast<std::size_t>(x)];
                    const double change = std::fabs(updated - msg[fi][static_cast<std::size_t>(side)][static_cast<std::size_t>(x)]);
                    if (change > residual) residual = change;
                    msg_new[fi][static_cast<std::size_t>(side)][static_cast<std::size_t>(x)] = updated;
                }
            }
        }
        msg.swap(msg_new);
        out.iterations = iter;
        out.max_residual = residual;
        if (residual < config.tolerance) {
            out.converged = true;
            break;
        }
    }

    // final beliefs from the last messages
    out.beliefs.assign(static_cast<std::size_t>(n_vars), {0.5, 0.5});
    std::vector<std::array<double, 2>> logb(static_cast<std::size_t>(n_vars), {0.0, 0.0});
    for (std::size_t fi = 0; fi < n_factors; ++fi) {
        const PairwiseFactor& f = fg.factors[fi];
        for (int x = 0; x < 2; ++x) {
            logb[static_cast<std::size_t>(f.var_a)][static_cast<std::size_t>(x)] += msg[fi][0][static_cast<std::size_t>(x)];
            logb[static_cast<std::size_t>(f.var_b)][static_cast<std::size_t>(x)] += msg[fi][1][static_cast<std::size_t>(x)];
        }
    }
    for (int v = 0; v < n_vars; ++v) {
        const auto& ev = fg.evidence[static_cast<std::size_t>(v)];
        if (ev) {
            out.beliefs[static_cast<std::size_t>(v)] = {*ev == 0 ? 1.0 : 0.0, *ev == 1 ? 1.0 : 0.0};
            continue;
        }
        const double l0 = logb[static_cast<std::size_t>(v)][0];
        const double l1 = logb[static_cast<std::size_t>(v)][1];
        const double norm = detail::log_sum_exp(l0, l1);
        out.beliefs[static_cast<std::size_t>(v)] = {std::exp(l0 - norm), std::exp(l1 - norm)};
    }
    return out;
}

// Exhaustive enumeration oracle; also yields the exact MAP assignment.
inline Marginals exact_marginals(const FactorGraphView& fg, int limit = 20) {
    const int n_vars = fg.num_variables();
    std::vector<int> free_vars;
    std::vector<int> assignment(static_cast<std::size_t>(n_vars), 0);
    for (int v = 0; v < n_vars; ++v) {
        const auto& ev = fg.evidence[static_cast<std::size_t>(v)];
        if (ev)
            assignment[static_cast<std::size_t>(v)] = *ev;
        else
            free_vars.push_back(v);
    }
    if (static_cast<int>(free_vars.size()) > limit)
        throw TooLarge("exact enumeration over " + std::to_string(free_vars.size()) + " variables");

    const std::uint64_t n_assignments = 1ULL << free_vars.size();
    std::vector<double> logw(n_assignments);
    double max_logw = -std::numeric_limits<double>::infinity();
    std::uint64_t map_mask = 0;
    for (std::uint64_t mask = 0; mask < n_assignments; ++mask) {
        for (std::size_t i = 0; i < free_vars.size(); ++i)
            assignment[static_cast<std::size_t>(free_vars[i])] = static_cast<int>((mask >> i) & 1ULL);
        double s = 0.0;
        for (const PairwiseFactor& f : fg.factors)
            s += f.logpot[assignment[static_cast<std::size_t>(f.var_a)]]
                         [assignment[static_cast<std::size_t>(f.var_b)]];
        logw[mask] = s;
        if (s > max_logw) {
            max_logw = s;
            map_mask = mask;
        }
    }

    Marginals out;
    out.beliefs.assign(static_cast<std::size_t>(n_vars), {0.0, 0.0});
    double total = 0.0;
    std::vector<double> p1(free_vars.size(), 0.0);
    for (std::uint64_t mask = 0; mask < n_assignments; ++mask) {
        const double w = std::exp(logw[mask] - max_logw);
        total += w;
        for (std::size_t i = 0; i < free_vars.size(); ++i)
            if ((mask >> i) & 1ULL) p1[i] += w;
    }
    for (int v = 0; v < n_vars; ++v) {
        const auto& ev = fg.evidence[static_cast<std::size_t>(v)];
        if (ev) out.beliefs[static_cast<std::size_t>(v)] = {*ev == 0 ? 1.0 : 0.0, *ev == 1 ? 1.0 : 0.0};
    }
    for (std::size_t i = 0; i < free_vars.size(); ++i) {
        const double q1 = p1[i] / total;
        out.beliefs[static_cast<std::size_t>(free_vars[i])] = {1.0 - q1, q1};
    }
    out.map_assignment.assign(static_cast<std::size_t>(n_vars), 0);
    for (int v = 0; v < n_vars; ++v) {
        const auto& ev = fg.evidence[static_cast<std::size_t>(v)];
        if (ev) out.map_assignment[static_cast<std::size_t>(v)] = *ev;
    }
    for (std::size_t i = 0; i < free_vars.size(); ++i)
        out.map_assignment[static_cast<std::size_t>(free_vars[i])] =
            static_cast<int>((map_mask >> i) & 1ULL);
    out.iterations = 0;
    return out;
}

// Per-variable argmax of the beliefs; exact ties follow the tie_break rule.
inline Labeling map_labels(const Marginals& marginals, const FactorGraphView& fg,
                           const HeterogeneousGraph& graph, const LbpConfig& config = LbpConfig{}) {
    Labeling out(graph);
    auto decide = [&](const std::array<double, 2>& b) {
        if (b[1] > b[0]) return 1;
        if (b[0] > b[1]) return 0;
        return break_tie(config.tie_break);
    };
    for (int v = 0; v < graph.num_users(); ++v) {
        out.set_user(v, decide(marginals.beliefs[static_cast<std::size_t>(v)]));
        if (fg.evidence[static_cast<std::size_t>(v)])
            out.user_observed[static_cast<std::size_t>(v)] = 1;
    }
    for (int t = 0; t < graph.num_tweets(); ++t) {
        const int var = fg.tweet_var(t);
        out.set_tweet(t, decide(marginals.beliefs[static_cast<std::size_t>(var)]));
        if (fg.evidence[static_cast<std::size_t>(var)])
            out.tweet_observed[static_cast<std::size_t>(t)] = 1;
    }
    return out;
}

inline void save_marginals_tsv(const Marginals& m, const FactorGraphView& fg,
                               const HeterogeneousGraph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    auto emit = [&](const std::string& id, const char* kind, int var) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "\t%s\t%.17g\t%.17g\t%d\n", kind,
                      m.beliefs[static_cast<std::size_t>(var)][0],
                      m.beliefs[static_cast<std::size_t>(var)][1],
                      fg.evidence[static_cast<std::size_t>(var)] ? 1 : 0);
        out << id << buf;
    };
    for (int v = 0; v < graph.num_users(); ++v) emit(graph.user(v).id, "user", v);
    for (int t = 0; t < graph.num_tweets(); ++t) emit(graph.tweet(t).id, "tweet", fg.tweet_var(t));
}

inline void save_predictions_tsv(const Labeling& labels, const HeterogeneousGraph& graph,
                                 const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    for (int v = 0; v < graph.num_users(); ++v)
        out << graph.user(v).id << '\t' << labels.user(v) << '\n';
}

inline IdLabelMap load_predictions_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    IdLabelMap out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw IoError("bad predictions line: " + line);
        out[line.substr(0, tab)] = std::stoi(line.substr(tab + 1));
    }
    return out;
}

} // namespace sentigraph
