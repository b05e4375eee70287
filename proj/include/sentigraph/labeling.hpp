#pragma once

#include <cstdint>
#include <vector>

#include "sentigraph/errors.hpp"
#include "sentigraph/graph.hpp"

namespace sentigraph {

// Complete binary assignment over a graph's users and tweets, index-aligned
// with the graph. Observed flags mark variables clamped as evidence.
struct Labeling {
    std::vector<std::uint8_t> user_labels;
    std::vector<std::uint8_t> tweet_labels;
    std::vector<std::uint8_t> user_observed;
    std::vector<std::uint8_t> tweet_observed;

    Labeling() = default;
    explicit Labeling(const HeterogeneousGraph& g)
        : user_labels(static_cast<std::size_t>(g.num_users()), 0),
          tweet_labels(static_cast<std::size_t>(g.num_tweets()), 0),
          user_observed(static_cast<std::size_t>(g.num_users()), 0),
          tweet_observed(static_cast<std::size_t>(g.num_tweets()), 0) {}

    int user(int v) const { return user_labels[static_cast<std::size_t>(v)]; }
    int tweet(int t) const { return tweet_labels[static_cast<std::size_t>(t)]; }

    void set_user(int v, int label) { user_labels[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(label); }
    void set_tweet(int t, int label) { tweet_labels[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(label); }

    void check_matches(const HeterogeneousGraph& g) const {
        if (user_labels.size() != static_cast<std::size_t>(g.num_users()) ||
            tweet_labels.size() != static_cast<std::size_t>(g.num_tweets()))
            throw IncompleteLabeling("labeling does not cover the graph");
    }

    bool operator==(const Labeling& o) const = default;
};

} // namespace sentigraph
