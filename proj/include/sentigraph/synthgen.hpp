#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sentigraph/errors.hpp"
#include "sentigraph/graph.hpp"
#include "sentigraph/rng.hpp"

namespace sentigraph {

struct LinkProbs {
    double intra = 0.0; // same planted label
    double inter = 0.0; // different planted label
};

// Planted two-community generator standing in for a crawled dataset:
// per-link-type homophily, noisy observed tweet labels, stratified seed
// revelation.
struct SynthConfig {
    int n_users = 100;
    double positive_fraction = 0.5;
    std::array<LinkProbs, kNumLinkTypes> link_probs{};
    double tweets_per_user_mean = 3.0;
    double tweet_noise = 0.2;        // probability a tweet label flips the author's truth
    double seed_fraction = 0.2;      // revealed per class, stratified
    double influence_skew = 0.0;     // >0 boosts in-link probability toward a few hub users
    std::uint64_t rng_seed = 0;
    std::string topic = "synthetic";

    void validate() const {
        if (n_users < 1) throw InvalidConfig("n_users must be >= 1");
        if (positive_fraction < 0.0 || positive_fraction > 1.0)
            throw InvalidConfig("positive_fraction must be in [0,1]");
        for (const LinkProbs& lp : link_probs) {
            if (lp.intra < 0.0 || lp.intra > 1.0 || lp.inter < 0.0 || lp.inter > 1.0)
                throw InvalidConfig("link probabilities must be in [0,1]");
            if (lp.intra < lp.inter) throw InvalidConfig("intra_prob must be >= inter_prob");
        }
        if (tweets_per_user_mean < 1.0) throw InvalidConfig("tweets_per_user_mean must be >= 1");
        if (tweet_noise < 0.0 || tweet_noise >= 0.5)
            throw InvalidConfig("tweet_noise must be in [0, 0.5)");
        if (seed_fraction <= 0.0 || seed_fraction > 1.0)
            throw InvalidConfig("seed_fraction must be in (0,1]");
        if (influence_skew < 0.0) throw InvalidConfig("influence_skew must be >= 0");
    }
};

using IdLabelMap = std::map<std::string, int>;

struct SynthResult {
    HeterogeneousGraph graph;
    IdLabelMap truth; // planted label per user
};

inline SynthResult generate(const SynthConfig& config, Rng& rng) {
    config.validate();
    const int n = config.n_users;

    auto user_id = [n](int i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "u%0*d", n >= 1000 ? 5 : 3, i);
        return std::string(buf);
    };

    std::vector<int> truth(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        truth[static_cast<std::size_t>(i)] = rng.bernoulli(config.positive_fraction) ? 1 : 0;

    // a few hub users attract extra in-links when influence_skew > 0
    std::vector<bool> hub(static_cast<std::size_t>(n), false);
    if (config.influence_skew > 0.0) {
        const int n_hubs = std::max(1, n / 20);
        std::vector<int> order(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
        rng.shuffle(order);
        for (int i = 0; i < n_hubs; ++i) hub[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = true;
    }

    std::vector<UserUserEdge> edges;
    for (LinkType g : all_link_types()) {
        const LinkProbs& lp = config.link_probs[static_cast<std::size_t>(static_cast<int>(g))];
        if (lp.intra == 0.0 && lp.inter == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                double p = truth[static_cast<std::size_t>(i)] == truth[static_cast<std::size_t>(j)]
                               ? lp.intra
                               : lp.inter;
                if (hub[static_cast<std::size_t>(j)]) p = std::min(1.0, p * (1.0 + config.influence_skew));
                if (rng.bernoulli(p)) edges.push_back({user_id(i), user_id(j), g});
            }
        // build_graph completes symmetry for mutual types
    }

    std::vector<TweetNode> tweets;
    int tweet_counter = 0;
    for (int i = 0; i < n; ++i) {
        const int count = 1 + rng.poisson(config.tweets_per_user_mean - 1.0);
        for (int c = 0; c < count; ++c) {
            char buf[24];
            std::snprintf(buf, sizeof(buf), "t%07d", tweet_counter++);
            const int lab = rng.bernoulli(config.tweet_noise)
                                ? 1 - truth[static_cast<std::size_t>(i)]
                                : truth[static_cast<std::size_t>(i)];
            tweets.push_back({buf, user_id(i), lab});
        }
    }

    // stratified seed revelation: exactly round(rho * class size) per class
    std::vector<UserNode> users(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) users[static_cast<std::size_t>(i)].id = user_id(i);
    for (int cls = 0; cls < 2; ++cls) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (truth[static_cast<std::size_t>(i)] == cls) members.push_back(i);
        rng.shuffle(members);
        const int reveal = static_cast<int>(
            std::lround(config.seed_fraction * static_cast<double>(members.size())));
        for (int i = 0; i < reveal; ++i)
            users[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])].seed_label = cls;
    }

    SynthResult out;
    out.graph = build_graph(std::move(users), std::move(tweets), edges, config.topic);
    for (int i = 0; i < n; ++i) out.truth[user_id(i)] = truth[static_cast<std::size_t>(i)];
    return out;
}

inline nlohmann::ordered_json synth_config_to_json(const SynthConfig& c) {
    nlohmann::ordered_json j;
    j["n_users"] = c.n_users;
    j["positive_fraction"] = c.positive_fraction;
    nlohmann::ordered_json links;
    for (LinkType g : all_link_types()) {
        const LinkProbs& lp = c.link_probs[static_cast<std::size_t>(static_cast<int>(g))];
        if (lp.intra == 0.0 && lp.inter == 0.0) continue;
        links[link_type_name(g)] = {{"intra", lp.intra}, {"inter", lp.inter}};
    }
    j["link_probs"] = std::move(links);
    j["tweets_per_user_mean"] = c.tweets_per_user_mean;
    j["tweet_noise"] = c.tweet_noise;
    j["seed_fraction"] = c.seed_fraction;
    j["influence_skew"] = c.influence_skew;
    j["rng_seed"] = c.rng_seed;
    j["topic"] = c.topic;
    return j;
}

inline SynthConfig synth_config_from_json(const nlohmann::json& j) {
    SynthConfig c;
    c.n_users = j.value("n_users", c.n_users);
    c.positive_fraction = j.value("positive_fraction", c.positive_fraction);
    if (j.contains("link_probs"))
        for (auto it = j.at("link_probs").begin(); it != j.at("link_probs").end(); ++it) {
            auto g = link_type_from_name(it.key());
            if (!g) throw IoError("unknown link type " + it.key());
            auto& lp = c.link_probs[static_cast<std::size_t>(static_cast<int>(*g))];
            lp.intra = it.value().at("intra").get<double>();
            lp.inter = it.value().at("inter").get<double>();
        }
    c.tweets_per_user_mean = j.value("tweets_per_user_mean", c.tweets_per_user_mean);
    c.tweet_noise = j.value("tweet_noise", c.tweet_noise);
    c.seed_fraction = j.value("seed_fraction", c.seed_fraction);
    c.influence_skew = j.value("influence_skew", c.influence_skew);
    c.rng_seed = j.value("rng_seed", c.rng_seed);
    c.topic = j.value("topic", c.topic);
    return c;
}

inline void save_truth_tsv(const IdLabelMap& truth, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    for (const auto& [id, label] : truth) out << id << '\t' << label << '\n';
}

inline IdLabelMap load_truth_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    IdLabelMap out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw IoError("bad truth line: " + line);
        out[line.substr(0, tab)] = std::stoi(line.substr(tab + 1));
    }
    return out;
}

} // namespace sentigraph
