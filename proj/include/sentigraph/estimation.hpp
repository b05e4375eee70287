#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sentigraph/errors.hpp"
#include "sentigraph/evalkit.hpp"
#include "sentigraph/factor_model.hpp"
#include "sentigraph/graph.hpp"
#include "sentigraph/influence.hpp"
#include "sentigraph/labeling.hpp"
#include "sentigraph/model_params.hpp"
#include "sentigraph/rng.hpp"

namespace sentigraph {

// Counting estimator over edges whose endpoints are both seed-labeled, with
// add-one smoothing; lambda rows normalize to 1 per (k, g). mu is identity
// under the matched-sentiment assumption for tweets.
inline ModelParams direct_estimate(const HeterogeneousGraph& graph) {
    long counts[2][2][kNumLinkTypes] = {};
    for (int v = 0; v < graph.num_users(); ++v) {
        const auto& yv = graph.user(v).seed_label;
        if (!yv) continue;
        for (LinkType g : all_link_types())
            for (int u : graph.neighbors(v, g)) {
                const auto& yu = graph.user(u).seed_label;
                if (!yu) continue;
                counts[*yv][*yu][static_cast<int>(g)] += 1;
            }
    }
    ModelParams p; // mu defaults to identity, weights to the standard settings
    for (int k = 0; k < 2; ++k)
        for (LinkType g : all_link_types()) {
            const int gi = static_cast<int>(g);
            const long row = counts[k][0][gi] + counts[k][1][gi];
            for (int l = 0; l < 2; ++l)
                p.lambda[k][l][gi] =
                    static_cast<double>(counts[k][l][gi] + 1) / static_cast<double>(row + 2);
        }
    return p;
}

struct SampleRankConfig {
    long max_steps = 20000;
    // small steps: influence weights and node degrees amplify any
    // class-asymmetric parameter drift at inference time
    double learning_rate = 0.005;
    long convergence_patience = 500;
    std::uint64_t rng_seed = 0;
    int ensemble_runs = 5;
    bool keep_trace = false;

    void validate() const {
        if (max_steps < 1) throw InvalidConfig("max_steps must be >= 1");
        if (learning_rate <= 0.0) throw InvalidConfig("learning_rate must be > 0");
        if (convergence_patience < 1) throw InvalidConfig("convergence_patience must be >= 1");
        if (ensemble_runs < 1 || ensemble_runs % 2 == 0)
            throw InvalidConfig("ensemble_runs must be odd");
    }
};

struct TrainReport {
    long steps_taken = 0;
    long parameter_update_count = 0;
    double initial_perf = 0.0;
    double final_perf = 0.0;
    bool converged = false;
    struct TraceEntry {
        long step;
        double perf;
        bool updated;
    };
    std::vector<TraceEntry> trace; // populated when keep_trace is set
};

// Copy of the labeling with one uniformly chosen free variable flipped.
// Free variables are all users plus the non-observed tweets.
inline Labeling sample_proposal(const HeterogeneousGraph& graph, const Labeling& labeling,
                                Rng& rng) {
    labeling.check_matches(graph);
    std::vector<int> free_vars; // users 0..U-1, tweets offset by U
    for (int v = 0; v < graph.num_users(); ++v)
        if (!labeling.user_observed[static_cast<std::size_t>(v)]) free_vars.push_back(v);
    for (int t = 0; t < graph.num_tweets(); ++t)
        if (!labeling.tweet_observed[static_cast<std::size_t>(t)])
            free_vars.push_back(graph.num_users() + t);
    if (free_vars.empty()) throw NoFreeVariables("all variables are observed");
    const int pick = free_vars[static_cast<std::size_t>(rng.uniform_below(free_vars.size()))];
    Labeling out = labeling;
    if (pick < graph.num_users())
        out.set_user(pick, 1 - out.user(pick));
    else
        out.set_tweet(pick - graph.num_users(), 1 - out.tweet(pick - graph.num_users()));
    return out;
}

// Perf(y_new) - Perf(y_old), with Perf = Accuracy + MacroF1 on eval_set.
inline double rel_perf(const HeterogeneousGraph& graph, const Labeling& y_new,
                       const Labeling& y_old, const IdLabelMap& truth,
                       const std::set<std::string>& eval_set) {
    if (eval_set.empty()) throw EmptyEvalSet("rel_perf over empty eval set");
    ConfusionCounts cn, co;
    for (const std::string& id : eval_set) {
        const int v = graph.user_index(id);
        const int t = truth.at(id);
        cn.add(y_new.user(v), t);
        co.add(y_old.user(v), t);
    }
    return perf_from_counts(cn) - perf_from_counts(co);
}

struct TrainResult {
    ModelParams params;
    Labeling labeling;
    TrainReport report;
};

// SampleRank: single-flip chain, parameters nudged whenever the model's score
// ordering of (Y_new, Y) disagrees with their Perf ordering on the seed users.
// Seeds stay free variables here; their ground truth only drives RelPerf.
inline TrainResult samplerank_train(const HeterogeneousGraph& graph,
                                    const InfluenceScores& influence,
                                    const SampleRankConfig& config, Rng& rng) {
    config.validate();
    detail::check_influence(graph, influence);

    std::vector<int> seeds;
    for (int v = 0; v < graph.num_users(); ++v)
        if (graph.user(v).seed_label) seeds.push_back(v);
    if (seeds.empty()) throw NoSeedUsers("samplerank needs seed users");

    TrainResult res;
    res.params = direct_estimate(graph); // the NoLearning initialization
    std::array<double, kNumFeatures> phi = res.params.phi();

    // random initial assignment; observed tweet labels are clamped evidence
    Labeling y(graph);
    for (int v = 0; v < graph.num_users(); ++v) y.set_user(v, rng.bernoulli(0.5) ? 1 : 0);
    for (int t = 0; t < graph.num_tweets(); ++t) {
        const auto& lab = graph.tweet(t).label;
        if (lab) {
            y.set_tweet(t, *lab);
            y.tweet_observed[static_cast<std::size_t>(t)] = 1;
        } else {
            y.set_tweet(t, rng.bernoulli(0.5) ? 1 : 0);
        }
    }

    std::vector<int> free_vars;
    for (int v = 0; v < graph.num_users(); ++v) free_vars.push_back(v);
    for (int t = 0; t < graph.num_tweets(); ++t)
        if (!y.tweet_observed[static_cast<std::size_t>(t)])
            free_vars.push_back(graph.num_users() + t);

    ConfusionCounts counts;
    for (int v : seeds) counts.add(y.user(v), *graph.user(v).seed_label);
    double perf = perf_from_counts(counts);
    res.report.initial_perf = perf;

    long since_update = 0;
    FeatureVector grad{};
    std::array<double, kNumFeatures> phi_sum{};
    long phi_steps = 0;
    for (long step = 1; step <= config.max_steps; ++step) {
        res.report.steps_taken = step;
        const int pick = free_vars[static_cast<std::size_t>(rng.uniform_below(free_vars.size()))];
        const bool is_user = pick < graph.num_users();
        const int idx = is_user ? pick : pick - graph.num_users();

        const double score_delta =
            is_user ? llr_user_flip(graph, y, idx, res.params, influence)
                    : llr_tweet_flip(graph, y, idx, res.params, influence);

        double rp = 0.0;
        ConfusionCounts counts_new = counts;
        const std::optional<int> seed_label =
            is_user ? graph.user(idx).seed_label : std::optional<int>{};
        if (is_user && seed_label) {
            counts_new.remove(y.user(idx), *seed_label);
            counts_new.add(1 - y.user(idx), *seed_label);
            rp = perf_from_counts(counts_new) - perf;
        }

        bool updated = false;
        if ((rp > 0.0 && score_delta < 0.0) || (rp < 0.0 && score_delta > 0.0)) {
            grad.fill(0.0);
            if (is_user)
                add_user_flip_feature_delta(graph, y, idx, res.params, influence, grad);
            else
                add_tweet_flip_feature_delta(graph, y, idx, res.params, influence, grad);
            // step of size eta*|F(Y_new)-F(Y)| toward whichever assignment
            // performs better on the seeds
            const double direction = rp > 0.0 ? 1.0 : -1.0;
            for (std::size_t i = 0; i < phi.size(); ++i)
                phi[i] += direction * config.learning_rate * grad[i];
            res.params.set_phi(phi);
            // project back onto the normalized family: re-center every mu and
            // lambda row to sum 1. A row-sum excess is a constant external
            // field toward one class and swamps the within-row signal.
            for (int k = 0; k < 2; ++k) {
                const double ms = res.params.mu[k][0] + res.params.mu[k][1];
                res.params.mu[k][0] += (1.0 - ms) / 2.0;
                res.params.mu[k][1] += (1.0 - ms) / 2.0;
                for (int gi = 0; gi < kNumLinkTypes; ++gi) {
                    const double ls = res.params.lambda[k][0][gi] + res.params.lambda[k][1][gi];
                    res.params.lambda[k][0][gi] += (1.0 - ls) / 2.0;
                    res.params.lambda[k][1][gi] += (1.0 - ls) / 2.0;
                }
            }
            phi = res.params.phi();
            res.report.parameter_update_count += 1;
            since_update = 0;
            updated = true;
        } else {
            since_update += 1;
        }

        // accept on strict seed-perf improvement; perf-neutral moves fall back
        // to the model score, otherwise flips of the unlabeled variables (all
        // with RelPerf = 0) could never be accepted and the chain would stay
        // frozen at its random initialization
        if (rp > 0.0 || (rp == 0.0 && score_delta > 0.0)) {
            if (is_user)
                y.set_user(idx, 1 - y.user(idx));
            else
                y.set_tweet(idx, 1 - y.tweet(idx));
            counts = counts_new;
            perf = perf_from_counts(counts);
        }

        for (std::size_t i = 0; i < phi.size(); ++i) phi_sum[i] += phi[i];
        phi_steps += 1;

        if (config.keep_trace) res.report.trace.push_back({step, perf, updated});
        if (since_update >= config.convergence_patience) {
            res.report.converged = true;
            break;
        }
    }
    // averaged-perceptron style output: the trajectory mean damps the noise of
    // the individual ranking corrections
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = phi_sum[i] / static_cast<double>(phi_steps);
    res.params.set_phi(phi);
    res.report.final_perf = perf;
    res.labeling = std::move(y);
    return res;
}

// Per-variable majority over an odd number of runs with identical variable sets.
inline Labeling majority_vote_ensemble(const std::vector<Labeling>& runs) {
    if (runs.empty() || runs.size() % 2 == 0)
        throw EvenRunCount("majority vote needs an odd number of runs");
    const Labeling& first = runs.front();
    for (const Labeling& r : runs)
        if (r.user_labels.size() != first.user_labels.size() ||
            r.tweet_labels.size() != first.tweet_labels.size())
            throw VariableSetMismatch("runs label different variable sets");
    Labeling out = first;
    for (std::size_t v = 0; v < first.user_labels.size(); ++v) {
        int ones = 0;
        for (const Labeling& r : runs) ones += r.user_labels[v];
        out.user_labels[v] = ones * 2 > static_cast<int>(runs.size()) ? 1 : 0;
    }
    for (std::size_t t = 0; t < first.tweet_labels.size(); ++t) {
        int ones = 0;
        for (const Labeling& r : runs) ones += r.tweet_labels[t];
        out.tweet_labels[t] = ones * 2 > static_cast<int>(runs.size()) ? 1 : 0;
    }
    return out;
}

inline nlohmann::ordered_json train_report_to_json(const TrainReport& r) {
    nlohmann::ordered_json j;
    j["steps_taken"] = r.steps_taken;
    j["parameter_update_count"] = r.parameter_update_count;
    j["initial_perf"] = r.initial_perf;
    j["final_perf"] = r.final_perf;
    j["converged"] = r.converged;
    return j;
}

inline void save_trace_csv(const TrainReport& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "step,perf,updated\n";
    for (const auto& e : r.trace) out << e.step << ',' << e.perf << ',' << (e.updated ? 1 : 0) << '\n';
}

} // namespace sentigraph
