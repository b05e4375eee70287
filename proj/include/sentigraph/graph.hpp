#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sentigraph/errors.hpp"

namespace sentigraph {

// The eight user-user link types. Mutual types keep a symmetric edge set.
enum class LinkType : int {
    DirectedFollow = 0,
    MutualFollow = 1,
    DirectedRetweet = 2,
    MutualRetweet = 3,
    DirectedLike = 4,
    MutualLike = 5,
    DirectedComment = 6,
    MutualComment = 7,
};

inline constexpr int kNumLinkTypes = 8;

inline constexpr std::array<LinkType, kNumLinkTypes> all_link_types() {
    return {LinkType::DirectedFollow, LinkType::MutualFollow,
            LinkType::DirectedRetweet, LinkType::MutualRetweet,
            LinkType::DirectedLike, LinkType::MutualLike,
            LinkType::DirectedComment, LinkType::MutualComment};
}

inline constexpr bool is_mutual(LinkType g) {
    return (static_cast<int>(g) % 2) == 1;
}

inline const char* link_type_name(LinkType g) {
    switch (g) {
        case LinkType::DirectedFollow: return "directed_follow";
        case LinkType::MutualFollow: return "mutual_follow";
        case LinkType::DirectedRetweet: return "directed_retweet";
        case LinkType::MutualRetweet: return "mutual_retweet";
        case LinkType::DirectedLike: return "directed_like";
        case LinkType::MutualLike: return "mutual_like";
        case LinkType::DirectedComment: return "directed_comment";
        case LinkType::MutualComment: return "mutual_comment";
    }
    return "?";
}

inline std::optional<LinkType> link_type_from_name(const std::string& name) {
    for (LinkType g : all_link_types())
        if (name == link_type_name(g)) return g;
    return std::nullopt;
}

struct UserNode {
    std::string id;
    std::optional<int> seed_label; // 0 or 1 when this is a seed/root user
};

struct TweetNode {
    std::string id;
    std::string author;
    std::optional<int> label; // observed sentiment, if any
};

struct UserUserEdge {
    std::string src;
    std::string dst;
    LinkType type;
};

// Immutable superimposed heterogeneous graph: users, their tweets, and
// typed user-user links. All adjacency is exposed through dense indices
// in ascending-id order, which fixes iteration order everywhere downstream.
class HeterogeneousGraph {
public:
    HeterogeneousGraph() = default;

    const std::string& topic() const { return topic_; }
    int num_users() const { return static_cast<int>(users_.size()); }
    int num_tweets() const { return static_cast<int>(tweets_.size()); }

    const UserNode& user(int v) const { return users_[static_cast<std::size_t>(v)]; }
    const TweetNode& tweet(int t) const { return tweets_[static_cast<std::size_t>(t)]; }
    const std::vector<UserNode>& users() const { return users_; }
    const std::vector<TweetNode>& tweets() const { return tweets_; }

    int user_index(const std::string& id) const {
        auto it = user_index_.find(id);
        if (it == user_index_.end()) throw UnknownUser(id);
        return it->second;
    }
    bool has_user(const std::string& id) const { return user_index_.count(id) > 0; }

    int tweet_index(const std::string& id) const {
        auto it = tweet_index_.find(id);
        if (it == tweet_index_.end()) throw DanglingReference("unknown tweet id " + id);
        return it->second;
    }

    // sorted neighbor indices of v under link type g
    const std::vector<int>& neighbors(int v, LinkType g) const {
        return adj_[static_cast<std::size_t>(static_cast<int>(g))][static_cast<std::size_t>(v)];
    }

    // sorted tweet indices authored by v
    const std::vector<int>& tweets_of(int v) const { return tweets_of_[static_cast<std::size_t>(v)]; }

    // entries (w, g) such that v is in neighbors(w, g); the transpose adjacency
    const std::vector<std::pair<int, LinkType>>& in_entries(int v) const {
        return in_entries_[static_cast<std::size_t>(v)];
    }

    int author_of(int t) const { return tweet_author_[static_cast<std::size_t>(t)]; }

    bool has_edge(int v, int u, LinkType g) const {
        const auto& nb = neighbors(v, g);
        return std::binary_search(nb.begin(), nb.end(), u);
    }

    std::vector<UserUserEdge> edges() const {
        std::vector<UserUserEdge> out;
        for (LinkType g : all_link_types())
            for (int v = 0; v < num_users(); ++v)
                for (int u : neighbors(v, g))
                    out.push_back({user(v).id, user(u).id, g});
        return out;
    }

    std::size_t num_typed_edges() const {
        std::size_t n = 0;
        for (const auto& per_type : adj_)
            for (const auto& nb : per_type) n += nb.size();
        return n;
    }

    friend HeterogeneousGraph build_graph(std::vector<UserNode> users,
                                          std::vector<TweetNode> tweets,
                                          const std::vector<UserUserEdge>& edges,
                                          std::string topic);

private:
    std::string topic_;
    std::vector<UserNode> users_;   // ascending id
    std::vector<TweetNode> tweets_; // ascending id
    std::unordered_map<std::string, int> user_index_;
    std::unordered_map<std::string, int> tweet_index_;
    std::array<std::vector<std::vector<int>>, kNumLinkTypes> adj_;
    std::vector<std::vector<int>> tweets_of_;
    std::vector<int> tweet_author_;
    std::vector<std::vector<std::pair<int, LinkType>>> in_entries_;
};

// Validates inputs, completes mutual-type symmetry, dedupes (src,dst,type)
// repeats, and freezes adjacency in ascending-id order.
inline HeterogeneousGraph build_graph(std::vector<UserNode> users,
                                      std::vector<TweetNode> tweets,
                                      const std::vector<UserUserEdge>& edges,
                                      std::string topic = "") {
    HeterogeneousGraph g;
    g.topic_ = std::move(topic);

    std::sort(users.begin(), users.end(),
              [](const UserNode& a, const UserNode& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < users.size(); ++i) {
        if (users[i].seed_label && *users[i].seed_label != 0 && *users[i].seed_label != 1)
            throw GraphError("seed_label must be 0 or 1 for user " + users[i].id);
        if (i > 0 && users[i].id == users[i - 1].id) throw DuplicateId("user " + users[i].id);
        g.user_index_.emplace(users[i].id, static_cast<int>(i));
    }
    g.users_ = std::move(users);

    std::sort(tweets.begin(), tweets.end(),
              [](const TweetNode& a, const TweetNode& b) { return a.id < b.id; });
    g.tweets_of_.resize(g.users_.size());
    for (std::size_t i = 0; i < tweets.size(); ++i) {
        const TweetNode& t = tweets[i];
        if (i > 0 && t.id == tweets[i - 1].id) throw DuplicateId("tweet " + t.id);
        if (t.label && *t.label != 0 && *t.label != 1)
            throw GraphError("tweet label must be 0 or 1 for tweet " + t.id);
        auto it = g.user_index_.find(t.author);
        if (it == g.user_index_.end())
            throw DanglingReference("tweet " + t.id + " authored by unknown user " + t.author);
        g.tweet_index_.emplace(t.id, static_cast<int>(i));
        g.tweets_of_[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(i));
        g.tweet_author_.push_back(it->second);
    }
    g.tweets_ = std::move(tweets);

    for (auto& per_type : g.adj_) per_type.assign(g.users_.size(), {});
    std::array<std::set<std::pair<int, int>>, kNumLinkTypes> edge_sets;
    for (const UserUserEdge& e : edges) {
        auto si = g.user_index_.find(e.src);
        auto di = g.user_index_.find(e.dst);
        if (si == g.user_index_.end()) throw DanglingReference("edge src " + e.src);
        if (di == g.user_index_.end()) throw DanglingReference("edge dst " + e.dst);
        if (si->second == di->second) throw SelfLink(e.src);
        auto& set = edge_sets[static_cast<std::size_t>(static_cast<int>(e.type))];
        set.emplace(si->second, di->second);
        if (is_mutual(e.type)) set.emplace(di->second, si->second);
    }
    for (LinkType lt : all_link_types()) {
        const auto& set = edge_sets[static_cast<std::size_t>(static_cast<int>(lt))];
        auto& per_type = g.adj_[static_cast<std::size_t>(static_cast<int>(lt))];
        for (const auto& [s, d] : set) per_type[static_cast<std::size_t>(s)].push_back(d);
        // std::set iteration is already sorted per source; neighbor lists end up ascending
    }

    g.in_entries_.resize(g.users_.size());
    for (LinkType lt : all_link_types())
        for (int v = 0; v < g.num_users(); ++v)
            for (int u : g.neighbors(v, lt))
                g.in_entries_[static_cast<std::size_t>(u)].emplace_back(v, lt);

    return g;
}

// Per-link-type neighbor sets of v (overlapping cover of the out-neighborhood).
inline std::map<LinkType, std::set<std::string>>
partition_neighbors(const HeterogeneousGraph& graph, const std::string& v_id) {
    int v = graph.user_index(v_id);
    std::map<LinkType, std::set<std::string>> out;
    for (LinkType g : all_link_types()) {
        auto& set = out[g];
        for (int u : graph.neighbors(v, g)) set.insert(graph.user(u).id);
    }
    return out;
}

// Type-collapsed simple digraph over users; index-aligned with the graph.
// Parallel typed edges collapse to one directed edge.
inline std::vector<std::vector<int>> user_user_subgraph(const HeterogeneousGraph& graph) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(graph.num_users()));
    for (int v = 0; v < graph.num_users(); ++v) {
        std::set<int> merged;
        for (LinkType g : all_link_types())
            merged.insert(graph.neighbors(v, g).begin(), graph.neighbors(v, g).end());
        adj[static_cast<std::size_t>(v)].assign(merged.begin(), merged.end());
    }
    return adj;
}

} // namespace sentigraph
