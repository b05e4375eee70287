#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "sentigraph/errors.hpp"
#include "sentigraph/graph.hpp"

namespace sentigraph {

enum class TieBreak { PreferPositive, PreferNegative };

inline int break_tie(TieBreak tb) { return tb == TieBreak::PreferPositive ? 1 : 0; }

struct ConfusionCounts {
    long tp = 0, tn = 0, fp = 0, fn = 0;

    long total() const { return tp + tn + fp + fn; }

    void add(int pred, int truth) {
        if (truth == 1)
            (pred == 1 ? tp : fn) += 1;
        else
            (pred == 0 ? tn : fp) += 1;
    }
    void remove(int pred, int truth) {
        if (truth == 1)
            (pred == 1 ? tp : fn) -= 1;
        else
            (pred == 0 ? tn : fp) -= 1;
    }
};

inline double accuracy_from_counts(const ConfusionCounts& c) {
    const long n = c.total();
    return n == 0 ? 0.0 : static_cast<double>(c.tp + c.tn) / static_cast<double>(n);
}

// F1 of the positive class; a zero denominator yields 0.
inline double f1_from_counts(long tp, long fp, long fn) {
    const long denom = 2 * tp + fp + fn;
    return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

inline double f1_pos_from_counts(const ConfusionCounts& c) { return f1_from_counts(c.tp, c.fp, c.fn); }
// negative class: swap roles, so tn acts as tp, fn as fp, fp as fn
inline double f1_neg_from_counts(const ConfusionCounts& c) { return f1_from_counts(c.tn, c.fn, c.fp); }

inline double macro_f1_from_counts(const ConfusionCounts& c) {
    return 0.5 * (f1_pos_from_counts(c) + f1_neg_from_counts(c));
}

// Perf signal used by the trainer: Accuracy + MacroF1, in [0, 2].
inline double perf_from_counts(const ConfusionCounts& c) {
    return accuracy_from_counts(c) + macro_f1_from_counts(c);
}

using IdLabelMap = std::map<std::string, int>;

inline ConfusionCounts confusion(const IdLabelMap& pred, const IdLabelMap& truth,
                                 const std::set<std::string>& eval_set) {
    if (eval_set.empty()) throw EmptyEvalSet("empty evaluation set");
    ConfusionCounts c;
    for (const std::string& id : eval_set) {
        auto pit = pred.find(id);
        if (pit == pred.end()) throw MissingPrediction(id);
        auto tit = truth.find(id);
        if (tit == truth.end()) throw MissingPrediction("no ground truth for " + id);
        c.add(pit->second, tit->second);
    }
    return c;
}

inline double accuracy(const IdLabelMap& pred, const IdLabelMap& truth,
                       const std::set<std::string>& eval_set) {
    return accuracy_from_counts(confusion(pred, truth, eval_set));
}

inline double macro_f1(const IdLabelMap& pred, const IdLabelMap& truth,
                       const std::set<std::string>& eval_set) {
    return macro_f1_from_counts(confusion(pred, truth, eval_set));
}

struct EvalReport {
    ConfusionCounts counts;
    double accuracy = 0.0;
    double f1_pos = 0.0;
    double f1_neg = 0.0;
    double macro_f1 = 0.0;
    long population = 0;
    std::map<std::string, bool> correct; // per-user correctness
};

inline EvalReport evaluate(const IdLabelMap& pred, const IdLabelMap& truth,
                           const std::set<std::string>& eval_set) {
    EvalReport r;
    r.counts = confusion(pred, truth, eval_set);
    r.population = r.counts.total();
    r.accuracy = accuracy_from_counts(r.counts);
    r.f1_pos = f1_pos_from_counts(r.counts);
    r.f1_neg = f1_neg_from_counts(r.counts);
    r.macro_f1 = macro_f1_from_counts(r.counts);
    for (const std::string& id : eval_set)
        r.correct[id] = pred.at(id) == truth.at(id);
    return r;
}

inline nlohmann::ordered_json report_to_json(const EvalReport& r) {
    nlohmann::ordered_json j;
    j["population"] = r.population;
    j["accuracy"] = r.accuracy;
    j["f1_pos"] = r.f1_pos;
    j["f1_neg"] = r.f1_neg;
    j["macro_f1"] = r.macro_f1;
    j["confusion"] = {{"tp", r.counts.tp}, {"tn", r.counts.tn}, {"fp", r.counts.fp}, {"fn", r.counts.fn}};
    return j;
}

struct BaselineResult {
    IdLabelMap labels;                 // users with at least one observed-label tweet
    std::set<std::string> uncovered;   // users excluded for lack of observed tweets
};

// Per-user majority vote over that user's observed tweet labels.
inline BaselineResult tweet_majority_baseline(const HeterogeneousGraph& graph,
                                              TieBreak tie_break = TieBreak::PreferPositive) {
    BaselineResult out;
    for (int v = 0; v < graph.num_users(); ++v) {
        int pos = 0, neg = 0;
        for (int t : graph.tweets_of(v)) {
            const auto& lab = graph.tweet(t).label;
            if (!lab) continue;
            (*lab == 1 ? pos : neg) += 1;
        }
        if (pos + neg == 0) {
            out.uncovered.insert(graph.user(v).id);
            continue;
        }
        int label = pos > neg ? 1 : (neg > pos ? 0 : break_tie(tie_break));
        out.labels[graph.user(v).id] = label;
    }
    return out;
}

} // namespace sentigraph
