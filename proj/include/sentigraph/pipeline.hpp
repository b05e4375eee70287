#pragma once

#include <set>
#include <string>
#include <vector>

#include "sentigraph/errors.hpp"
#include "sentigraph/estimation.hpp"
#include "sentigraph/evalkit.hpp"
#include "sentigraph/graph.hpp"
#include "sentigraph/inference.hpp"
#include "sentigraph/influence.hpp"
#include "sentigraph/rng.hpp"
#include "sentigraph/synthgen.hpp"

namespace sentigraph {

// Seeds double as evidence and as the metric population, so evaluation holds
// out a split: held-out seeds lose their label in the training view and form
// the eval set.
struct HoldoutSplit {
    std::set<std::string> train_seeds;
    std::set<std::string> heldout_seeds;
};

// Stratified per class so MacroF1 stays defined on both sides.
inline HoldoutSplit split_seeds(const HeterogeneousGraph& graph, double holdout_fraction,
                                Rng& rng) {
    if (holdout_fraction < 0.0 || holdout_fraction >= 1.0)
        throw InvalidConfig("holdout_fraction must be in [0,1)");
    HoldoutSplit split;
    for (int cls = 0; cls < 2; ++cls) {
        std::vector<int> members;
        for (int v = 0; v < graph.num_users(); ++v)
            if (graph.user(v).seed_label && *graph.user(v).seed_label == cls) members.push_back(v);
        rng.shuffle(members);
        const auto hold = static_cast<std::size_t>(
            std::lround(holdout_fraction * static_cast<double>(members.size())));
        for (std::size_t i = 0; i < members.size(); ++i) {
            const std::string& id = graph.user(members[i]).id;
            (i < hold ? split.heldout_seeds : split.train_seeds).insert(id);
        }
    }
    return split;
}

// Training view of the graph: held-out seeds become unlabeled users.
inline HeterogeneousGraph mask_heldout(const HeterogeneousGraph& graph,
                                       const std::set<std::string>& heldout) {
    std::vector<UserNode> users = graph.users();
    for (UserNode& u : users)
        if (heldout.count(u.id)) u.seed_label.reset();
    return build_graph(std::move(users), graph.tweets(), graph.edges(), graph.topic());
}

// Evidence for final inference: remaining seeds clamped at their labels,
// observed tweets clamped at theirs.
inline Labeling evidence_labeling(const HeterogeneousGraph& graph) {
    Labeling ev(graph);
    for (int v = 0; v < graph.num_users(); ++v)
        if (const auto& s = graph.user(v).seed_label) {
            ev.set_user(v, *s);
            ev.user_observed[static_cast<std::size_t>(v)] = 1;
        }
    for (int t = 0; t < graph.num_tweets(); ++t)
        if (const auto& l = graph.tweet(t).label) {
            ev.set_tweet(t, *l);
            ev.tweet_observed[static_cast<std::size_t>(t)] = 1;
        }
    return ev;
}

struct InferOutput {
    Marginals marginals;
    Labeling labels;
    FactorGraphView fg;
};

inline InferOutput infer_labels(const HeterogeneousGraph& graph, const ModelParams& params,
                                const InfluenceScores& influence,
                                const LbpConfig& lbp = LbpConfig{}) {
    InferOutput out;
    Labeling ev = evidence_labeling(graph);
    out.fg = build_factor_graph(graph, params, influence, &ev);
    out.marginals = run_lbp(out.fg, lbp);
    out.labels = map_labels(out.marginals, out.fg, graph, lbp);
    return out;
}

inline IdLabelMap user_predictions(const HeterogeneousGraph& graph, const Labeling& labels) {
    IdLabelMap out;
    for (int v = 0; v < graph.num_users(); ++v) out[graph.user(v).id] = labels.user(v);
    return out;
}

inline InfluenceScores influence_for(const HeterogeneousGraph& graph, double damping = 0.85,
                                     double tol = 1e-12, int max_iter = 1000) {
    InfluenceScores raw = compute_pagerank(user_user_subgraph(graph), damping, tol, max_iter);
    return normalize_influence(std::move(raw), InfluenceNormalization::MeanOne);
}

} // namespace sentigraph
