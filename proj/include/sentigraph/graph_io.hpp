#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "sentigraph/errors.hpp"
#include "sentigraph/graph.hpp"

namespace sentigraph {

// Graph file format: {"topic": str, "users": [...], "tweets": [...], "edges": [...]}.
// Unknown keys are rejected. Mutual edges may be listed once; symmetry is
// completed on load.

inline nlohmann::ordered_json graph_to_json(const HeterogeneousGraph& g) {
    nlohmann::ordered_json j;
    j["topic"] = g.topic();
    j["users"] = nlohmann::ordered_json::array();
    for (const UserNode& u : g.users()) {
        nlohmann::ordered_json ju;
        ju["id"] = u.id;
        ju["seed_label"] = u.seed_label ? nlohmann::ordered_json(*u.seed_label)
                                        : nlohmann::ordered_json(nullptr);
        j["users"].push_back(std::move(ju));
    }
    j["tweets"] = nlohmann::ordered_json::array();
    for (const TweetNode& t : g.tweets()) {
        nlohmann::ordered_json jt;
        jt["id"] = t.id;
        jt["author"] = t.author;
        jt["label"] = t.label ? nlohmann::ordered_json(*t.label) : nlohmann::ordered_json(nullptr);
        j["tweets"].push_back(std::move(jt));
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const UserUserEdge& e : g.edges()) {
        // emit mutual edges once (src < dst); the loader restores symmetry
        if (is_mutual(e.type) && e.src > e.dst) continue;
        nlohmann::ordered_json je;
        je["src"] = e.src;
        je["dst"] = e.dst;
        je["type"] = link_type_name(e.type);
        j["edges"].push_back(std::move(je));
    }
    return j;
}

namespace detail {
inline void reject_unknown_keys(const nlohmann::json& obj,
                                std::initializer_list<const char*> allowed,
                                const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw IoError(std::string("unknown key \"") + it.key() + "\" in " + where);
    }
}

inline std::optional<int> optional_label(const nlohmann::json& v, const char* where) {
    if (v.is_null()) return std::nullopt;
    if (!v.is_number_integer()) throw IoError(std::string("label must be 0, 1 or null in ") + where);
    int x = v.get<int>();
    if (x != 0 && x != 1) throw IoError(std::string("label must be 0, 1 or null in ") + where);
    return x;
}
} // namespace detail

inline HeterogeneousGraph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw IoError("graph file must be a JSON object");
    detail::reject_unknown_keys(j, {"topic", "users", "tweets", "edges"}, "graph");
    std::vector<UserNode> users;
    for (const auto& ju : j.at("users")) {
        detail::reject_unknown_keys(ju, {"id", "seed_label"}, "user");
        users.push_back({ju.at("id").get<std::string>(),
                         detail::optional_label(ju.value("seed_label", nlohmann::json()), "user")});
    }
    std::vector<TweetNode> tweets;
    for (const auto& jt : j.at("tweets")) {
        detail::reject_unknown_keys(jt, {"id", "author", "label"}, "tweet");
        tweets.push_back({jt.at("id").get<std::string>(), jt.at("author").get<std::string>(),
                          detail::optional_label(jt.value("label", nlohmann::json()), "tweet")});
    }
    std::vector<UserUserEdge> edges;
    for (const auto& je : j.at("edges")) {
        detail::reject_unknown_keys(je, {"src", "dst", "type"}, "edge");
        auto type = link_type_from_name(je.at("type").get<std::string>());
        if (!type) throw IoError("unknown link type " + je.at("type").get<std::string>());
        edges.push_back({je.at("src").get<std::string>(), je.at("dst").get<std::string>(), *type});
    }
    return build_graph(std::move(users), std::move(tweets), edges,
                       j.value("topic", std::string()));
}

inline void save_graph(const HeterogeneousGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << graph_to_json(g).dump(2) << "\n";
}

inline HeterogeneousGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad JSON in ") + path + ": " + e.what());
    }
    return graph_from_json(j);
}

} // namespace sentigraph
