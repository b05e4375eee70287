#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

namespace sg = sentigraph;

namespace {

sg::IdLabelMap labels(std::initializer_list<std::pair<const char*, int>> init) {
    sg::IdLabelMap out;
    for (const auto& [id, l] : init) out[id] = l;
    return out;
}

} // namespace

TEST_CASE("accuracy: extremes and direct substitution") {
    auto truth = labels({{"a", 1}, {"b", 1}, {"c", 1}, {"d", 0}, {"e", 0}, {"f", 0}});
    std::set<std::string> all{"a", "b", "c", "d", "e", "f"};
    CHECK(sg::accuracy(truth, truth, all) == 1.0);

    // tp=3, tn=2, fp=1, fn=0 -> 5/6
    auto pred = labels({{"a", 1}, {"b", 1}, {"c", 1}, {"d", 0}, {"e", 0}, {"f", 1}});
    CHECK(sg::accuracy(pred, truth, all) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));

    CHECK_THROWS_AS(sg::accuracy(pred, truth, {}), sg::EmptyEvalSet);
    CHECK_THROWS_AS(sg::accuracy(pred, truth, {"zzz"}), sg::MissingPrediction);
}

TEST_CASE("accuracy matches per-item counting oracle on random sets") {
    auto rng = testutil::make_rng(51);
    for (int rep = 0; rep < 5; ++rep) {
        sg::IdLabelMap pred, truth;
        std::set<std::string> eval_set;
        for (int i = 0; i < 50; ++i) {
            std::string id = "x" + std::to_string(i);
            pred[id] = rng.bernoulli(0.5) ? 1 : 0;
            truth[id] = rng.bernoulli(0.5) ? 1 : 0;
            eval_set.insert(id);
        }
        long correct = 0;
        for (const auto& id : eval_set)
            if (pred[id] == truth[id]) correct++;
        CHECK(sg::accuracy(pred, truth, eval_set) ==
              doctest::Approx(correct / 50.0).epsilon(1e-15));
    }
}

TEST_CASE("macro f1: maximum, all-positive prediction, degenerate truth") {
    auto truth = labels({{"a", 1}, {"b", 1}, {"c", 0}, {"d", 0}});
    std::set<std::string> all{"a", "b", "c", "d"};
    CHECK(sg::macro_f1(truth, truth, all) == 1.0);

    // predict all 1 on a balanced set: F1_pos = 2/3, F1_neg = 0
    auto all_pos = labels({{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}});
    CHECK(sg::macro_f1(all_pos, truth, all) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    // single-class truth, perfectly predicted: absent class contributes 0
    auto ones = labels({{"a", 1}, {"b", 1}});
    CHECK(sg::macro_f1(ones, ones, {"a", "b"}) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("class swap keeps accuracy and macro f1, swaps per-class f1") {
    auto rng = testutil::make_rng(52);
    sg::IdLabelMap pred, truth, ipred, itruth;
    std::set<std::string> eval_set;
    for (int i = 0; i < 40; ++i) {
        std::string id = "x" + std::to_string(i);
        pred[id] = rng.bernoulli(0.6) ? 1 : 0;
        truth[id] = rng.bernoulli(0.5) ? 1 : 0;
        ipred[id] = 1 - pred[id];
        itruth[id] = 1 - truth[id];
        eval_set.insert(id);
    }
    auto r = sg::evaluate(pred, truth, eval_set);
    auto ri = sg::evaluate(ipred, itruth, eval_set);
    CHECK(r.accuracy == doctest::Approx(ri.accuracy).epsilon(1e-15));
    CHECK(r.macro_f1 == doctest::Approx(ri.macro_f1).epsilon(1e-15));
    CHECK(r.f1_pos == doctest::Approx(ri.f1_neg).epsilon(1e-15));
    CHECK(r.f1_neg == doctest::Approx(ri.f1_pos).epsilon(1e-15));
    CHECK(r.accuracy + r.macro_f1 >= 0.0);
    CHECK(r.accuracy + r.macro_f1 <= 2.0);
}

TEST_CASE("evaluate report is internally consistent") {
    auto truth = labels({{"a", 1}, {"b", 1}, {"c", 0}, {"d", 0}});
    auto pred = labels({{"a", 1}, {"b", 0}, {"c", 0}, {"d", 1}});
    auto r = sg::evaluate(pred, truth, {"a", "b", "c", "d"});
    CHECK(r.population == 4);
    CHECK(r.counts.tp == 1);
    CHECK(r.counts.fn == 1);
    CHECK(r.counts.tn == 1);
    CHECK(r.counts.fp == 1);
    CHECK(r.accuracy ==
          doctest::Approx(static_cast<double>(r.counts.tp + r.counts.tn) / r.population));
    CHECK(r.correct.at("a"));
    CHECK(!r.correct.at("b"));

    // inverted predictions on a balanced set
    auto inverted = labels({{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}});
    CHECK(sg::evaluate(inverted, truth, {"a", "b", "c", "d"}).accuracy == 0.0);
}

TEST_CASE("tweet majority baseline") {
    auto g = sg::build_graph(
        {{"a", {}}, {"b", {}}, {"c", {}}},
        {{"t1", "a", 1}, {"t2", "a", 1}, {"t3", "a", 0},
         {"t4", "b", 1}, {"t5", "b", 0},
         {"t6", "c", std::nullopt}},
        {});
    auto res = sg::tweet_majority_baseline(g, sg::TieBreak::PreferPositive);
    CHECK(res.labels.at("a") == 1);     // {1,1,0}
    CHECK(res.labels.at("b") == 1);     // tie, prefer positive
    CHECK(res.labels.count("c") == 0);  // no observed tweets
    CHECK(res.uncovered == std::set<std::string>{"c"});
    CHECK(sg::tweet_majority_baseline(g, sg::TieBreak::PreferNegative).labels.at("b") == 0);
}

TEST_CASE("baseline matches counting oracle on a synthetic graph") {
    sg::SynthConfig cfg;
    cfg.n_users = 100;
    cfg.tweet_noise = 0.2;
    auto rng = testutil::make_rng(53);
    auto data = sg::generate(cfg, rng);
    auto res = sg::tweet_majority_baseline(data.graph, sg::TieBreak::PreferPositive);
    for (int v = 0; v < data.graph.num_users(); ++v) {
        int pos = 0, neg = 0;
        for (int t : data.graph.tweets_of(v)) {
            const auto& l = data.graph.tweet(t).label;
            if (l) (*l == 1 ? pos : neg)++;
        }
        const std::string& id = data.graph.user(v).id;
        if (pos + neg == 0)
            CHECK(res.labels.count(id) == 0);
        else
            CHECK(res.labels.at(id) == (pos > neg ? 1 : (neg > pos ? 0 : 1)));
    }
}
