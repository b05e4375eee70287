#pragma once

// Shared generators and independent oracles for the test suites. The oracles
// deliberately recompute everything from first principles (edge scans, dense
// matrices, exhaustive enumeration) instead of calling the library's fast
// paths, so they can catch errors in them.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sentigraph/sentigraph.hpp"

namespace testutil {

namespace sg = sentigraph;

inline sg::Rng make_rng(std::uint64_t seed) { return sg::Rng(seed); }

inline std::string uid(int i) { return "u" + std::to_string(100 + i); }
inline std::string tid(int i) { return "t" + std::to_string(100 + i); }

struct RandomGraphOpts {
    int n_users = 8;
    double edge_prob = 0.15;      // per link type, per ordered pair
    double tweets_per_user = 1.5; // expected count, may be zero for some users... min 1
    double seed_prob = 0.4;
    double tweet_label_prob = 0.7; // probability a tweet has an observed label
    int n_link_types = sg::kNumLinkTypes;
};

// Random superimposed graph; every user gets at least one tweet.
inline sg::HeterogeneousGraph random_graph(sg::Rng& rng, const RandomGraphOpts& opts = {}) {
    std::vector<sg::UserNode> users;
    for (int i = 0; i < opts.n_users; ++i) {
        sg::UserNode u{uid(i), std::nullopt};
        if (rng.bernoulli(opts.seed_prob)) u.seed_label = rng.bernoulli(0.5) ? 1 : 0;
        users.push_back(u);
    }
    std::vector<sg::TweetNode> tweets;
    int tc = 0;
    for (int i = 0; i < opts.n_users; ++i) {
        const int count = 1 + rng.poisson(opts.tweets_per_user - 1.0);
        for (int c = 0; c < count; ++c) {
            sg::TweetNode t{tid(tc++), uid(i), std::nullopt};
            if (rng.bernoulli(opts.tweet_label_prob)) t.label = rng.bernoulli(0.5) ? 1 : 0;
            tweets.push_back(t);
        }
    }
    std::vector<sg::UserUserEdge> edges;
    for (sg::LinkType g : sg::all_link_types()) {
        if (static_cast<int>(g) >= opts.n_link_types) break;
        for (int i = 0; i < opts.n_users; ++i)
            for (int j = 0; j < opts.n_users; ++j)
                if (i != j && rng.bernoulli(opts.edge_prob))
                    edges.push_back({uid(i), uid(j), g});
    }
    return sg::build_graph(std::move(users), std::move(tweets), edges, "test");
}

inline sg::Labeling random_labeling(const sg::HeterogeneousGraph& g, sg::Rng& rng) {
    sg::Labeling y(g);
    for (int v = 0; v < g.num_users(); ++v) y.set_user(v, rng.bernoulli(0.5) ? 1 : 0);
    for (int t = 0; t < g.num_tweets(); ++t) y.set_tweet(t, rng.bernoulli(0.5) ? 1 : 0);
    return y;
}

inline sg::ModelParams random_params(sg::Rng& rng, double lo = -2.0, double hi = 2.0) {
    sg::ModelParams p;
    auto draw = [&] { return lo + (hi - lo) * rng.uniform01(); };
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
            p.mu[k][l] = draw();
            for (int g = 0; g < sg::kNumLinkTypes; ++g) p.lambda[k][l][g] = draw();
        }
    return p;
}

inline sg::InfluenceScores constant_influence(const sg::HeterogeneousGraph& g, double value = 1.0) {
    sg::InfluenceScores inf;
    inf.scores.assign(static_cast<std::size_t>(g.num_users()), value);
    inf.normalization = sg::InfluenceNormalization::MeanOne;
    return inf;
}

inline sg::InfluenceScores random_influence(const sg::HeterogeneousGraph& g, sg::Rng& rng) {
    sg::InfluenceScores inf;
    for (int v = 0; v < g.num_users(); ++v) inf.scores.push_back(0.1 + 2.0 * rng.uniform01());
    inf.normalization = sg::InfluenceNormalization::MeanOne;
    return inf;
}

// Brute-force expansion of the objective: iterate every (v, t, k, l) and
// (v, u, g, k, l) combination and apply the case definitions of the feature
// functions literally.
inline double oracle_log_score(const sg::HeterogeneousGraph& graph, const sg::Labeling& y,
                               const sg::ModelParams& params, const sg::InfluenceScores& inf) {
    double total = 0.0;
    for (int v = 0; v < graph.num_users(); ++v) {
        double bracket = 0.0;
        const bool labeled = graph.user(v).seed_label.has_value();
        const auto& tw = graph.tweets_of(v);
        for (int t : tw)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    double f = 0.0;
                    if (y.user(v) == k && y.tweet(t) == l)
                        f = (labeled ? params.w_labeled : params.w_unlabeled) /
                            static_cast<double>(tw.size());
                    bracket += params.mu[k][l] * f;
                }
        for (sg::LinkType g : sg::all_link_types()) {
            const auto& nb = graph.neighbors(v, g);
            for (int u : nb)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) {
                        double h = 0.0;
                        if (y.user(v) == k && y.user(u) == l)
                            h = params.w_relation / static_cast<double>(nb.size());
                        bracket += params.lambda[k][l][static_cast<int>(g)] * h;
                    }
        }
        total += inf.scores[static_cast<std::size_t>(v)] * bracket;
    }
    return total;
}

inline sg::FeatureVector oracle_feature_vector(const sg::HeterogeneousGraph& graph,
                                               const sg::Labeling& y,
                                               const sg::InfluenceScores& inf,
                                               const sg::ModelParams& params = {}) {
    sg::FeatureVector fv{};
    for (int v = 0; v < graph.num_users(); ++v) {
        const double p_v = inf.scores[static_cast<std::size_t>(v)];
        const bool labeled = graph.user(v).seed_label.has_value();
        const auto& tw = graph.tweets_of(v);
        for (int t : tw)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    if (y.user(v) == k && y.tweet(t) == l)
                        fv[static_cast<std::size_t>(sg::ModelParams::mu_index(k, l))] +=
                            p_v * (labeled ? params.w_labeled : params.w_unlabeled) /
                            static_cast<double>(tw.size());
        for (sg::LinkType g : sg::all_link_types()) {
            const auto& nb = graph.neighbors(v, g);
            for (int u : nb)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l)
                        if (y.user(v) == k && y.user(u) == l)
                            fv[static_cast<std::size_t>(sg::ModelParams::lambda_index(k, l, g))] +=
                                p_v * params.w_relation / static_cast<double>(nb.size());
        }
    }
    return fv;
}

// Dense fixed-point oracle over the explicit Google matrix.
inline std::vector<double> oracle_pagerank(const std::vector<std::vector<int>>& adj, double d,
                                           int iters = 20000) {
    const std::size_t n = adj.size();
    std::vector<std::vector<double>> google(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        if (adj[j].empty()) {
            for (std::size_t i = 0; i < n; ++i)
                google[i][j] = d / static_cast<double>(n) + (1.0 - d) / static_cast<double>(n);
        } else {
            for (std::size_t i = 0; i < n; ++i) google[i][j] = (1.0 - d) / static_cast<double>(n);
            for (int i : adj[j])
                google[static_cast<std::size_t>(i)][j] += d / static_cast<double>(adj[j].size());
        }
    }
    std::vector<double> p(n, 1.0 / static_cast<double>(n)), q(n);
    for (int it = 0; it < iters; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += google[i][j] * p[j];
            q[i] = s;
        }
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) delta += std::fabs(q[i] - p[i]);
        p.swap(q);
        if (delta < 1e-15) break;
    }
    return p;
}

// Second, independently coded enumerator over a factor graph view: recursive
// assignment instead of bitmask iteration, linear-domain accumulation.
inline std::vector<std::array<double, 2>> oracle_enumerate_marginals(const sg::FactorGraphView& fg) {
    const int n = fg.num_variables();
    std::vector<int> assign(static_cast<std::size_t>(n), -1);
    std::vector<double> p1(static_cast<std::size_t>(n), 0.0);
    double total = 0.0;
    // rescale by the max log-potential sum to keep exp() in range
    double scale = 0.0;
    for (const auto& f : fg.factors) {
        double m = f.logpot[0][0];
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) m = std::max(m, f.logpot[a][b]);
        scale += m;
    }
    std::function<void(int)> rec = [&](int v) {
        if (v == n) {
            double ls = 0.0;
            for (const auto& f : fg.factors)
                ls += f.logpot[assign[static_cast<std::size_t>(f.var_a)]]
                              [assign[static_cast<std::size_t>(f.var_b)]];
            const double w = std::exp(ls - scale);
            total += w;
            for (int i = 0; i < n; ++i)
                if (assign[static_cast<std::size_t>(i)] == 1) p1[static_cast<std::size_t>(i)] += w;
            return;
        }
        const auto& ev = fg.evidence[static_cast<std::size_t>(v)];
        for (int x = 0; x < 2; ++x) {
            if (ev && *ev != x) continue;
            assign[static_cast<std::size_t>(v)] = x;
            rec(v + 1);
        }
        assign[static_cast<std::size_t>(v)] = -1;
    };
    rec(0);
    std::vector<std::array<double, 2>> out(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const double q = p1[static_cast<std::size_t>(v)] / total;
        out[static_cast<std::size_t>(v)] = {1.0 - q, q};
    }
    return out;
}

// Random factor graph that is a tree over its variables.
inline sg::FactorGraphView random_tree_factor_graph(sg::Rng& rng, int n_vars,
                                                    double pot_lo = -2.0, double pot_hi = 2.0,
                                                    double evidence_prob = 0.0) {
    sg::FactorGraphView fg;
    fg.num_users = n_vars;
    fg.num_tweets = 0;
    fg.evidence.assign(static_cast<std::size_t>(n_vars), std::nullopt);
    for (int v = 1; v < n_vars; ++v) {
        const int parent = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(v)));
        sg::PairwiseFactor f{parent, v, {}};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                f.logpot[a][b] = pot_lo + (pot_hi - pot_lo) * rng.uniform01();
        fg.factors.push_back(f);
    }
    for (int v = 0; v < n_vars; ++v)
        if (rng.bernoulli(evidence_prob)) fg.evidence[static_cast<std::size_t>(v)] = rng.bernoulli(0.5) ? 1 : 0;
    return fg;
}

inline sg::FactorGraphView random_loopy_factor_graph(sg::Rng& rng, int n_vars, int extra_factors,
                                                     double pot_lo = -2.0, double pot_hi = 2.0) {
    sg::FactorGraphView fg = random_tree_factor_graph(rng, n_vars, pot_lo, pot_hi);
    for (int e = 0; e < extra_factors; ++e) {
        int a = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n_vars)));
        int b = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n_vars)));
        if (a == b) continue;
        sg::PairwiseFactor f{a, b, {}};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                f.logpot[i][j] = pot_lo + (pot_hi - pot_lo) * rng.uniform01();
        fg.factors.push_back(f);
    }
    return fg;
}

} // namespace testutil
