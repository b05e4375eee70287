#pragma once

#include <array>
#include <cstddef>

#include "sentigraph/errors.hpp"
#include "sentigraph/graph.hpp"
#include "sentigraph/influence.hpp"
#include "sentigraph/labeling.hpp"
#include "sentigraph/model_params.hpp"

namespace sentigraph {

using FeatureVector = std::array<double, kNumFeatures>;

namespace detail {
inline double tweet_weight(const HeterogeneousGraph& graph, const ModelParams& params, int v) {
    return graph.user(v).seed_label ? params.w_labeled : params.w_unlabeled;
}

inline void check_influence(const HeterogeneousGraph& graph, const InfluenceScores& influence) {
    if (influence.scores.size() != static_cast<std::size_t>(graph.num_users()))
        throw MissingInfluence("influence scores do not cover all users");
}
} // namespace detail

// f_{k,l}: confidence weight over the author's tweet count when labels match.
inline double tweet_feature(const ModelParams& params, const HeterogeneousGraph& graph,
                            int v, int t, int k, int l, int y_v, int y_t) {
    if (graph.author_of(t) != v)
        throw AuthorMismatch("tweet " + graph.tweet(t).id + " not authored by " + graph.user(v).id);
    if (y_v != k || y_t != l) return 0.0;
    return detail::tweet_weight(graph, params, v) /
           static_cast<double>(graph.tweets_of(v).size());
}

// h_{k,l,g}: relation weight over the size of v's type-g neighborhood.
inline double link_feature(const ModelParams& params, const HeterogeneousGraph& graph,
                           int v, int u, LinkType g, int k, int l, int y_v, int y_u) {
    const auto& nb = graph.neighbors(v, g);
    if (!graph.has_edge(v, u, g))
        throw NotANeighbor(graph.user(u).id + " not a " + link_type_name(g) + " neighbor of " +
                           graph.user(v).id);
    if (y_v != k || y_u != l) return 0.0;
    return params.w_relation / static_cast<double>(nb.size());
}

// Unnormalized log-probability of a complete assignment (log P(Y) + log Z).
// Each user's bracket of tweet and link factors is scaled by its influence.
inline double log_score(const HeterogeneousGraph& graph, const Labeling& labeling,
                        const ModelParams& params, const InfluenceScores& influence) {
    labeling.check_matches(graph);
    detail::check_influence(graph, influence);
    double total = 0.0;
    for (int v = 0; v < graph.num_users(); ++v) {
        const int y_v = labeling.user(v);
        double bracket = 0.0;
        const auto& tw = graph.tweets_of(v);
        if (!tw.empty()) {
            const double wf = detail::tweet_weight(graph, params, v) / static_cast<double>(tw.size());
            for (int t : tw) bracket += params.mu[y_v][labeling.tweet(t)] * wf;
        }
        for (LinkType g : all_link_types()) {
            const auto& nb = graph.neighbors(v, g);
            if (nb.empty()) continue;
            const double wr = params.w_relation / static_cast<double>(nb.size());
            const int gi = static_cast<int>(g);
            for (int u : nb) bracket += params.lambda[y_v][labeling.user(u)][gi] * wr;
        }
        total += influence.scores[static_cast<std::size_t>(v)] * bracket;
    }
    return total;
}

// Sufficient statistics F(Y): log_score == dot(phi, F(Y)) for any phi.
inline FeatureVector feature_vector(const HeterogeneousGraph& graph, const Labeling& labeling,
                                    const InfluenceScores& influence,
                                    const ModelParams& params = ModelParams{}) {
    labeling.check_matches(graph);
    detail::check_influence(graph, influence);
    FeatureVector f{};
    for (int v = 0; v < graph.num_users(); ++v) {
        const double p_v = influence.scores[static_cast<std::size_t>(v)];
        const int y_v = labeling.user(v);
        const auto& tw = graph.tweets_of(v);
        if (!tw.empty()) {
            const double wf = detail::tweet_weight(graph, params, v) / static_cast<double>(tw.size());
            for (int t : tw)
                f[static_cast<std::size_t>(ModelParams::mu_index(y_v, labeling.tweet(t)))] += p_v * wf;
        }
        for (LinkType g : all_link_types()) {
            const auto& nb = graph.neighbors(v, g);
            if (nb.empty()) continue;
            const double wr = params.w_relation / static_cast<double>(nb.size());
            for (int u : nb)
                f[static_cast<std::size_t>(ModelParams::lambda_index(y_v, labeling.user(u), g))] +=
                    p_v * wr;
        }
    }
    return f;
}

// log(P(Y_new)/P(Y_old)); the partition constant cancels.
inline double llr(const HeterogeneousGraph& graph, const Labeling& y_new, const Labeling& y_old,
                  const ModelParams& params, const InfluenceScores& influence) {
    return log_score(graph, y_new, params, influence) - log_score(graph, y_old, params, influence);
}

// Change in log_score from flipping user v, computed from its incident
// factors only: v's own bracket plus the brackets listing v as neighbor.
inline double llr_user_flip(const HeterogeneousGraph& graph, const Labeling& labeling, int v,
                            const ModelParams& params, const InfluenceScores& influence) {
    const int a = labeling.user(v);
    const int b = 1 - a;
    const double p_v = influence.scores[static_cast<std::size_t>(v)];
    double delta = 0.0;
    const auto& tw = graph.tweets_of(v);
    if (!tw.empty()) {
        const double wf = detail::tweet_weight(graph, params, v) / static_cast<double>(tw.size());
        for (int t : tw) {
            const int y_t = labeling.tweet(t);
            delta += p_v * (params.mu[b][y_t] - params.mu[a][y_t]) * wf;
        }
    }
    for (LinkType g : all_link_types()) {
        const auto& nb = graph.neighbors(v, g);
        if (nb.empty()) continue;
        const double wr = params.w_relation / static_cast<double>(nb.size());
        const int gi = static_cast<int>(g);
        for (int u : nb) {
            const int y_u = labeling.user(u);
            delta += p_v * (params.lambda[b][y_u][gi] - params.lambda[a][y_u][gi]) * wr;
        }
    }
    for (const auto& [w, g] : graph.in_entries(v)) {
        const double wr = params.w_relation / static_cast<double>(graph.neighbors(w, g).size());
        const int gi = static_cast<int>(g);
        const int y_w = labeling.user(w);
        delta += influence.scores[static_cast<std::size_t>(w)] *
                 (params.lambda[y_w][b][gi] - params.lambda[y_w][a][gi]) * wr;
    }
    return delta;
}

inline double llr_tweet_flip(const HeterogeneousGraph& graph, const Labeling& labeling, int t,
                             const ModelParams& params, const InfluenceScores& influence) {
    const int v = graph.author_of(t);
    const int a = labeling.tweet(t);
    const int b = 1 - a;
    const int y_v = labeling.user(v);
    const double wf = detail::tweet_weight(graph, params, v) /
                      static_cast<double>(graph.tweets_of(v).size());
    return influence.scores[static_cast<std::size_t>(v)] *
           (params.mu[y_v][b] - params.mu[y_v][a]) * wf;
}

// F(Y with v flipped) - F(Y), from incident factors only.
inline void add_user_flip_feature_delta(const HeterogeneousGraph& graph, const Labeling& labeling,
                                        int v, const ModelParams& params,
                                        const InfluenceScores& influence, FeatureVector& delta) {
    const int a = labeling.user(v);
    const int b = 1 - a;
    const double p_v = influence.scores[static_cast<std::size_t>(v)];
    const auto& tw = graph.tweets_of(v);
    if (!tw.empty()) {
        const double wf = detail::tweet_weight(graph, params, v) / static_cast<double>(tw.size());
        for (int t : tw) {
            const int y_t = labeling.tweet(t);
            delta[static_cast<std::size_t>(ModelParams::mu_index(b, y_t))] += p_v * wf;
            delta[static_cast<std::size_t>(ModelParams::mu_index(a, y_t))] -= p_v * wf;
        }
    }
    for (LinkType g : all_link_types()) {
        const auto& nb = graph.neighbors(v, g);
        if (nb.empty()) continue;
        const double wr = params.w_relation / static_cast<double>(nb.size());
        for (int u : nb) {
            const int y_u = labeling.user(u);
            delta[static_cast<std::size_t>(ModelParams::lambda_index(b, y_u, g))] += p_v * wr;
            delta[static_cast<std::size_t>(ModelParams::lambda_index(a, y_u, g))] -= p_v * wr;
        }
    }
    for (const auto& [w, g] : graph.in_entries(v)) {
        const double pw_wr = influence.scores[static_cast<std::size_t>(w)] * params.w_relation /
                             static_cast<double>(graph.neighbors(w, g).size());
        const int y_w = labeling.user(w);
        delta[static_cast<std::size_t>(ModelParams::lambda_index(y_w, b, g))] += pw_wr;
        delta[static_cast<std::size_t>(ModelParams::lambda_index(y_w, a, g))] -= pw_wr;
    }
}

inline void add_tweet_flip_feature_delta(const HeterogeneousGraph& graph, const Labeling& labeling,
                                         int t, const ModelParams& params,
                                         const InfluenceScores& influence, FeatureVector& delta) {
    const int v = graph.author_of(t);
    const int a = labeling.tweet(t);
    const int b = 1 - a;
    const int y_v = labeling.user(v);
    const double p_wf = influence.scores[static_cast<std::size_t>(v)] *
                        detail::tweet_weight(graph, params, v) /
                        static_cast<double>(graph.tweets_of(v).size());
    delta[static_cast<std::size_t>(ModelParams::mu_index(y_v, b))] += p_wf;
    delta[static_cast<std::size_t>(ModelParams::mu_index(y_v, a))] -= p_wf;
}

} // namespace sentigraph
