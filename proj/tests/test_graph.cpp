#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "test_util.hpp"

namespace sg = sentigraph;
using testutil::uid;

TEST_CASE("link type taxonomy") {
    const auto types = sg::all_link_types();
    CHECK(types.size() == 8);
    std::set<sg::LinkType> distinct(types.begin(), types.end());
    CHECK(distinct.size() == 8);
    int mutual = 0, directed = 0;
    for (sg::LinkType g : sg::all_link_types()) (sg::is_mutual(g) ? mutual : directed)++;
    CHECK(mutual == 4);
    CHECK(directed == 4);
    for (sg::LinkType g : sg::all_link_types())
        CHECK(sg::link_type_from_name(sg::link_type_name(g)) == g);
    CHECK(!sg::link_type_from_name("nonsense"));
}

TEST_CASE("build_graph minimal") {
    auto g = sg::build_graph({{"a", std::nullopt}}, {}, {});
    CHECK(g.num_users() == 1);
    CHECK(g.num_tweets() == 0);
    CHECK(g.num_typed_edges() == 0);
}

TEST_CASE("mutual symmetry completion") {
    auto g = sg::build_graph({{"a", {}}, {"b", {}}}, {},
                             {{"a", "b", sg::LinkType::MutualFollow}});
    int a = g.user_index("a"), b = g.user_index("b");
    CHECK(g.has_edge(a, b, sg::LinkType::MutualFollow));
    CHECK(g.has_edge(b, a, sg::LinkType::MutualFollow));
    CHECK(g.num_typed_edges() == 2);
    // directed edges are not symmetrized
    auto g2 = sg::build_graph({{"a", {}}, {"b", {}}}, {},
                              {{"a", "b", sg::LinkType::DirectedLike}});
    CHECK(g2.has_edge(g2.user_index("a"), g2.user_index("b"), sg::LinkType::DirectedLike));
    CHECK(!g2.has_edge(g2.user_index("b"), g2.user_index("a"), sg::LinkType::DirectedLike));
}

TEST_CASE("mutual edge does not imply the directed variant") {
    auto g = sg::build_graph({{"a", {}}, {"b", {}}}, {},
                             {{"a", "b", sg::LinkType::MutualFollow}});
    CHECK(!g.has_edge(g.user_index("a"), g.user_index("b"), sg::LinkType::DirectedFollow));
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(sg::build_graph({{"a", {}}}, {{"t1", "z", {}}}, {}), sg::DanglingReference);
    CHECK_THROWS_AS(sg::build_graph({{"a", {}}}, {}, {{"a", "a", sg::LinkType::DirectedFollow}}),
                    sg::SelfLink);
    CHECK_THROWS_AS(sg::build_graph({{"a", {}}, {"a", {}}}, {}, {}), sg::DuplicateId);
    CHECK_THROWS_AS(sg::build_graph({{"a", {}}}, {}, {{"a", "z", sg::LinkType::DirectedFollow}}),
                    sg::DanglingReference);
    CHECK_THROWS_AS(sg::build_graph({{"a", {}}, {"b", {}}},
                                    {{"t1", "a", {}}, {"t1", "b", {}}}, {}),
                    sg::DuplicateId);
}

TEST_CASE("duplicate typed edges collapse to one") {
    auto g = sg::build_graph({{"a", {}}, {"b", {}}}, {},
                             {{"a", "b", sg::LinkType::DirectedFollow},
                              {"a", "b", sg::LinkType::DirectedFollow}});
    CHECK(g.num_typed_edges() == 1);
}

TEST_CASE("partition_neighbors direct substitution") {
    auto g = sg::build_graph({{"a", {}}, {"b", {}}, {"v", {}}, {"z", {}}}, {},
                             {{"v", "a", sg::LinkType::MutualFollow},
                              {"v", "a", sg::LinkType::DirectedLike},
                              {"v", "b", sg::LinkType::MutualFollow}});
    auto parts = sg::partition_neighbors(g, "v");
    CHECK(parts[sg::LinkType::MutualFollow] == std::set<std::string>{"a", "b"});
    CHECK(parts[sg::LinkType::DirectedLike] == std::set<std::string>{"a"});
    CHECK(parts[sg::LinkType::DirectedFollow].empty());
    CHECK(parts.size() == 8);

    auto empty = sg::partition_neighbors(g, "z");
    for (const auto& [_, s] : empty) CHECK(s.empty());

    CHECK_THROWS_AS(sg::partition_neighbors(g, "nope"), sg::UnknownUser);
}

TEST_CASE("partition_neighbors matches brute-force edge scan on random graph") {
    auto rng = testutil::make_rng(42);
    testutil::RandomGraphOpts opts;
    opts.n_users = 20;
    auto g = testutil::random_graph(rng, opts);
    for (int v = 0; v < g.num_users(); ++v) {
        auto parts = sg::partition_neighbors(g, g.user(v).id);
        for (sg::LinkType lt : sg::all_link_types())
            for (int u = 0; u < g.num_users(); ++u) {
                const bool in_part = parts[lt].count(g.user(u).id) > 0;
                CHECK(in_part == g.has_edge(v, u, lt));
            }
    }
}

TEST_CASE("user_user_subgraph collapses parallel typed edges") {
    auto g = sg::build_graph({{"a", {}}, {"b", {}}}, {{"t1", "a", {}}},
                             {{"a", "b", sg::LinkType::MutualFollow},
                              {"a", "b", sg::LinkType::DirectedLike}});
    auto adj = sg::user_user_subgraph(g);
    int a = g.user_index("a"), b = g.user_index("b");
    CHECK(adj[a] == std::vector<int>{b});
    CHECK(adj[b] == std::vector<int>{a}); // from mutual symmetry

    auto g2 = sg::build_graph({{"a", {}}}, {{"t1", "a", {}}}, {});
    auto adj2 = sg::user_user_subgraph(g2);
    CHECK(adj2.size() == 1);
    CHECK(adj2[0].empty());
}

TEST_CASE("subgraph equals type-erased union of typed edges") {
    auto rng = testutil::make_rng(7);
    testutil::RandomGraphOpts opts;
    opts.n_users = 50;
    opts.edge_prob = 0.03;
    auto g = testutil::random_graph(rng, opts);
    auto adj = sg::user_user_subgraph(g);
    REQUIRE(static_cast<int>(adj.size()) == g.num_users());
    for (int v = 0; v < g.num_users(); ++v) {
        std::set<int> expected;
        for (sg::LinkType lt : sg::all_link_types())
            expected.insert(g.neighbors(v, lt).begin(), g.neighbors(v, lt).end());
        CHECK(std::set<int>(adj[v].begin(), adj[v].end()) == expected);
    }
    // unioned partition sets equal the plain out-neighborhood
    for (int v = 0; v < g.num_users(); ++v) {
        auto parts = sg::partition_neighbors(g, g.user(v).id);
        std::set<std::string> unioned;
        for (const auto& [_, s] : parts) unioned.insert(s.begin(), s.end());
        std::set<std::string> from_subgraph;
        for (int u : adj[v]) from_subgraph.insert(g.user(u).id);
        CHECK(unioned == from_subgraph);
    }
}

TEST_CASE("json round trip preserves node, tweet and edge sets") {
    auto rng = testutil::make_rng(99);
    auto g = testutil::random_graph(rng);
    auto path = std::filesystem::temp_directory_path() / "sentigraph_roundtrip.json";
    sg::save_graph(g, path.string());
    auto g2 = sg::load_graph(path.string());
    CHECK(sg::graph_to_json(g) == sg::graph_to_json(g2));
    std::filesystem::remove(path);
}

TEST_CASE("loader rejects unknown keys") {
    auto j = nlohmann::json::parse(R"({"topic":"x","users":[],"tweets":[],"edges":[],"bogus":1})");
    CHECK_THROWS_AS(sg::graph_from_json(j), sg::IoError);
    auto j2 = nlohmann::json::parse(
        R"({"topic":"x","users":[{"id":"a","seed_label":null,"extra":2}],"tweets":[],"edges":[]})");
    CHECK_THROWS_AS(sg::graph_from_json(j2), sg::IoError);
}

TEST_CASE("build_graph is deterministic in iteration order") {
    std::vector<sg::UserNode> users{{"c", {}}, {"a", {}}, {"b", {}}};
    std::vector<sg::UserUserEdge> edges{{"c", "a", sg::LinkType::DirectedFollow},
                                        {"a", "b", sg::LinkType::DirectedFollow},
                                        {"a", "c", sg::LinkType::DirectedFollow}};
    auto g1 = sg::build_graph(users, {}, edges);
    std::swap(edges[0], edges[2]);
    std::swap(users[0], users[1]);
    auto g2 = sg::build_graph(users, {}, edges);
    CHECK(sg::graph_to_json(g1) == sg::graph_to_json(g2));
    // adjacency is ascending by id
    auto e = g1.edges();
    CHECK(g1.user(0).id == "a");
    CHECK(e.front().src == "a");
}
