#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "hypertda/errors.hpp"
#include "hypertda/hypergraph.hpp"
#include "test_util.hpp"

using namespace hypertda;

TEST_CASE("build_hypergraph on the sample excerpt") {
    std::istringstream in(testutil::sample_flow_csv());
    std::vector<FlowRecord> records = parse_flow_csv(in).records;
    Hypergraph h = build_hypergraph(records, FieldPairConfig::defaults());
    // rows 2 and 3 share (src_ip, host), so three machines; all four
    // (dest_ip, dest_port) pairs are distinct singletons
    CHECK(h.vertices.size() == 3);
    REQUIRE(h.edges.size() == 4);
    for (const Hyperedge& e : h.edges) CHECK(e.members.size() == 1);
    // edge labels are (dest_ip, dest_port) tuples, lexicographically ordered
    CHECK(h.edges.front().label == Label{"142.20.56.6", "3389"});
}

TEST_CASE("build_hypergraph merges members and ignores duplicates") {
    FlowRecord a;
    a.timestamp = 1;
    a.host = "h1";
    a.src_ip = "10.0.0.1";
    a.dest_ip = "9.9.9.9";
    a.dest_port = 80;
    FlowRecord b = a;
    b.host = "h2";
    b.src_ip = "10.0.0.2";
    SUBCASE("same edge label, two sources, one edge of size two") {
        std::vector<FlowRecord> records = {a, b};
        Hypergraph h = build_hypergraph(records, FieldPairConfig::defaults());
        CHECK(h.vertices.size() == 2);
        REQUIRE(h.edges.size() == 1);
        CHECK(h.edges[0].members.size() == 2);
    }
    SUBCASE("duplicate records change nothing") {
        std::vector<FlowRecord> once = {a, b};
        std::vector<FlowRecord> twice = {a, b, a, b, a};
        CHECK(build_hypergraph(once, FieldPairConfig::defaults()) ==
              build_hypergraph(twice, FieldPairConfig::defaults()));
    }
    SUBCASE("record order does not matter") {
        std::vector<FlowRecord> fwd = {a, b};
        std::vector<FlowRecord> rev = {b, a};
        CHECK(build_hypergraph(fwd, FieldPairConfig::defaults()) ==
              build_hypergraph(rev, FieldPairConfig::defaults()));
    }
    SUBCASE("empty input gives the empty hypergraph") {
        Hypergraph h = build_hypergraph(std::vector<FlowRecord>{}, FieldPairConfig::defaults());
        CHECK(h.vertices.empty());
        CHECK(h.edges.empty());
    }
    SUBCASE("absent fields become the none sentinel") {
        FlowRecord c = a;
        c.dest_port.reset();
        std::vector<FlowRecord> records = {c};
        Hypergraph h = build_hypergraph(records, FieldPairConfig::defaults());
        REQUIRE(h.edges.size() == 1);
        CHECK(h.edges[0].label == Label{"9.9.9.9", "none"});
    }
}

TEST_CASE("field pair config validation") {
    FieldPairConfig bad{{Field::host}, {Field::host, Field::dest_ip}};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    FieldPairConfig empty{{}, {Field::dest_ip}};
    CHECK_THROWS_AS(empty.validate(), ConfigError);
}

TEST_CASE("relabeling invariance") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto sets = testutil::random_edge_sets(rng, 6, 6, 0.4);
        std::vector<FlowRecord> records;
        for (std::size_t e = 0; e < sets.size(); ++e) {
            for (int v : sets[e]) {
                FlowRecord r;
                r.timestamp = 1;
                r.host = testutil::padded("m", v);
                r.src_ip = "10.0.0." + std::to_string(v);
                r.dest_ip = "svc" + std::to_string(e);
                r.dest_port = 80;
                records.push_back(std::move(r));
            }
        }
        Hypergraph h1 = build_hypergraph(records, FieldPairConfig::defaults());
        // bijective rename that reverses the lexicographic order of hosts
        std::vector<FlowRecord> renamed = records;
        for (FlowRecord& r : renamed) r.host = testutil::padded("m", 99 - std::stoi(r.host.substr(1)));
        Hypergraph h2 = build_hypergraph(renamed, FieldPairConfig::defaults());
        // same structure after canonical sort: compare member-set shapes per edge label
        REQUIRE(h1.edges.size() == h2.edges.size());
        for (std::size_t i = 0; i < h1.edges.size(); ++i) {
            CHECK(h1.edges[i].label == h2.edges[i].label);
            CHECK(h1.edges[i].members.size() == h2.edges[i].members.size());
        }
        // and mapping h2's vertices back through the bijection recovers h1's sets
        for (std::size_t i = 0; i < h1.edges.size(); ++i) {
            std::vector<Label> back;
            for (std::int32_t v : h2.edges[i].members) {
                Label label = h2.vertices[static_cast<std::size_t>(v)];
                label[1] = testutil::padded("m", 99 - std::stoi(label[1].substr(1)));
                back.push_back(label);
            }
            std::sort(back.begin(), back.end());
            std::vector<Label> orig;
            for (std::int32_t v : h1.edges[i].members) orig.push_back(h1.vertices[static_cast<std::size_t>(v)]);
            std::sort(orig.begin(), orig.end());
            CHECK(back == orig);
        }
    }
}

TEST_CASE("monotonicity: more records never shrink an edge") {
    std::istringstream in(testutil::sample_flow_csv());
    std::vector<FlowRecord> all = parse_flow_csv(in).records;
    std::vector<FlowRecord> some(all.begin(), all.begin() + 2);
    Hypergraph h_small = build_hypergraph(some, FieldPairConfig::defaults());
    Hypergraph h_big = build_hypergraph(all, FieldPairConfig::defaults());
    for (const Hyperedge& e : h_small.edges) {
        auto it = std::find_if(h_big.edges.begin(), h_big.edges.end(),
                               [&](const Hyperedge& f) { return f.label == e.label; });
        REQUIRE(it != h_big.edges.end());
        std::vector<Label> small_members, big_members;
        for (std::int32_t v : e.members) small_members.push_back(h_small.vertices[static_cast<std::size_t>(v)]);
        for (std::int32_t v : it->members) big_members.push_back(h_big.vertices[static_cast<std::size_t>(v)]);
        std::sort(small_members.begin(), small_members.end());
        std::sort(big_members.begin(), big_members.end());
        CHECK(std::includes(big_members.begin(), big_members.end(), small_members.begin(), small_members.end()));
    }
}

TEST_CASE("collapse_edges") {
    SUBCASE("equal member sets merge, labels kept") {
        CollapsedHypergraph ch = testutil::make_collapsed({{1, 2}, {1, 2}});
        REQUIRE(ch.nodes.size() == 1);
        CHECK(ch.nodes[0].labels == std::vector<Label>{{"e00"}, {"e01"}});
    }
    SUBCASE("all-distinct sets collapse to themselves") {
        CollapsedHypergraph ch = testutil::make_collapsed({{1}, {1, 2}, {2, 3}});
        CHECK(ch.nodes.size() == 3);
    }
    SUBCASE("five edges over three distinct sets") {
        CollapsedHypergraph ch = testutil::make_collapsed({{1, 2}, {3}, {1, 2}, {1, 2, 3}, {3}});
        CHECK(ch.nodes.size() == 3);
        std::size_t labels = 0;
        for (const CollapsedNode& n : ch.nodes) labels += n.labels.size();
        CHECK(labels == 5);
    }
    SUBCASE("expanding labels reproduces the original label-to-members map") {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 20; ++trial) {
            Hypergraph h = testutil::make_hypergraph(testutil::random_edge_sets(rng, 6, 8, 0.4));
            CollapsedHypergraph ch = collapse_edges(h);
            std::size_t total = 0;
            for (const CollapsedNode& n : ch.nodes) {
                for (const Label& label : n.labels) {
                    ++total;
                    auto it = std::find_if(h.edges.begin(), h.edges.end(),
                                           [&](const Hyperedge& e) { return e.label == label; });
                    REQUIRE(it != h.edges.end());
                    CHECK(it->members == n.members);
                }
            }
            CHECK(total == h.edges.size());
        }
    }
}

TEST_CASE("induced_subhypergraph") {
    CollapsedHypergraph ch = testutil::make_collapsed({{0}, {0, 1, 2}, {3, 4}});
    SUBCASE("all nodes is collapse-equivalent to the original") {
        std::vector<std::int32_t> all(ch.nodes.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::int32_t>(i);
        Hypergraph back = induced_subhypergraph(ch, all);
        CHECK(collapse_edges(back).nodes == ch.nodes);
    }
    SUBCASE("empty selection gives the empty hypergraph") {
        Hypergraph empty = induced_subhypergraph(ch, std::vector<std::int32_t>{});
        CHECK(empty.vertices.empty());
        CHECK(empty.edges.empty());
    }
    SUBCASE("two disjoint nodes") {
        std::int32_t a = testutil::node_of(ch, {0, 1, 2});
        std::int32_t b = testutil::node_of(ch, {3, 4});
        Hypergraph sub = induced_subhypergraph(ch, std::vector<std::int32_t>{a, b});
        CHECK(sub.edges.size() == 2);
        CHECK(sub.vertices.size() == 5);
    }
    SUBCASE("unknown node id") {
        CHECK_THROWS_AS(induced_subhypergraph(ch, std::vector<std::int32_t>{42}), LookupError);
    }
}

TEST_CASE("hypergraph json round-trip") {
    Hypergraph h = testutil::make_hypergraph({{0, 1}, {1, 2, 3}, {2}});
    nlohmann::json j = to_json(h);
    CHECK(hypergraph_from_json(j) == h);
}
