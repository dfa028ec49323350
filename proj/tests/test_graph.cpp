#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "citeproj/graph.hpp"

#include "support/fixtures.hpp"

using namespace citeproj;
using fixtures::graph_from;

namespace {

const char* kMeta =
    "paper_id,year,area\n"
    "p1,1990,db\n"
    "p2,1991,db\n"
    "p3,1990,ai\n";

} // namespace

TEST_CASE("loader builds nodes, edges and metadata", "[graph]") {
    CitationGraph g = graph_from("p1\tp2\np1\tp3\np2\tp3\n", kMeta);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 3);
    REQUIRE(g.has_node("p1"));
    NodeIndex p1 = g.node("p1"), p3 = g.node("p3");
    CHECK(g.out_degree(p1) == 2);
    CHECK(g.in_degree(p3) == 2);
    CHECK(g.has_edge(p1, p3));
    CHECK_FALSE(g.has_edge(p3, p1));
    REQUIRE(g.meta_of(p1));
    CHECK(g.meta_of(p1)->year == 1990);
    CHECK(g.meta_of(p1)->area == "db");
}

TEST_CASE("loader drops self-loops and duplicates with counts", "[graph]") {
    CitationGraph g = graph_from("p1\tp1\np1\tp2\np1\tp2\np2\tp3\n", kMeta);
    CHECK(g.edge_count() == 2);
    CHECK(g.stats().edge_rows == 4);
    CHECK(g.stats().self_loops_dropped == 1);
    CHECK(g.stats().duplicate_edges_dropped == 1);
}

TEST_CASE("loader tracks papers without metadata", "[graph]") {
    CitationGraph g = graph_from("p1\tp9\n", kMeta);
    CHECK(g.stats().nodes_without_meta == 1);
    CHECK_FALSE(g.meta_of(g.node("p9")));
}

TEST_CASE("loader skips comments and blank lines", "[graph]") {
    CitationGraph g = graph_from("# comment\n\np1\tp2\n", kMeta);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("loader rejects malformed input", "[graph]") {
    CHECK_THROWS_AS(graph_from("p1\n", kMeta), ParseError);              // one field
    CHECK_THROWS_AS(graph_from("p1\tp2\tp3\n", kMeta), ParseError);      // three fields
    CHECK_THROWS_AS(graph_from("", kMeta), ParseError);                  // empty edges
    CHECK_THROWS_AS(graph_from("p1\tp2\n", "bad,header\np1,1990,db\n"), ParseError);
    CHECK_THROWS_AS(graph_from("p1\tp2\n", "paper_id,year,area\np1,1990\n"), ParseError);
    CHECK_THROWS_AS(graph_from("p1\tp2\n", "paper_id,year,area\np1,20x0,db\n"), ParseError);
    CHECK_THROWS_AS(graph_from("p1\tp2\n", "paper_id,year,area\np1,1500,db\n"), ParseError);
    CHECK_THROWS_AS(graph_from("p1\tp2\n", "paper_id,year,area\np1,1990,\n"), ParseError);
    CHECK_THROWS_AS(
        graph_from("p1\tp2\n", "paper_id,year,area\np1,1990,db\np1,1991,db\n"), ParseError);
    CHECK_THROWS_WITH(graph_from("p1\t\n", kMeta),
                      Catch::Matchers::ContainsSubstring("edges:1"));
}

TEST_CASE("unknown paper lookups throw", "[graph]") {
    CitationGraph g = graph_from("p1\tp2\n", kMeta);
    CHECK_THROWS_AS(g.node("nope"), std::out_of_range);
    CHECK_THROWS_WITH(g.node("nope"), Catch::Matchers::ContainsSubstring("nope"));
}

TEST_CASE("acyclicity validation counts cycle edges", "[graph]") {
    CitationGraph dag = graph_from("p1\tp2\np2\tp3\np1\tp3\n", kMeta);
    CycleReport r1 = validate_acyclicity(dag);
    CHECK(r1.cycle_edge_count == 0);
    CHECK(r1.is_dag());
    CHECK(r1.sample_cycles.empty());

    CitationGraph two = graph_from("p1\tp2\np2\tp1\n", kMeta);
    CycleReport r2 = validate_acyclicity(two);
    CHECK(r2.cycle_edge_count == 2);
    CHECK_FALSE(r2.is_dag());
    REQUIRE(r2.sample_cycles.size() == 1);
    CHECK(r2.sample_cycles[0].size() == 2);

    // 3-cycle plus a tree edge hanging off it: only the cycle edges count.
    CitationGraph three = graph_from("a\tb\nb\tc\nc\ta\na\td\n", kMeta);
    CycleReport r3 = validate_acyclicity(three);
    CHECK(r3.cycle_edge_count == 3);
}

TEST_CASE("eligibility threshold is strict", "[graph]") {
    std::string edges;
    for (int i = 0; i < 11; ++i) edges += "big\tt" + std::to_string(i) + "\n";
    for (int i = 0; i < 10; ++i) edges += "mid\tt" + std::to_string(i) + "\n";
    edges += "small\tt0\n";
    CitationGraph g = graph_from(edges, kMeta);

    auto eligible = eligible_focal_papers(g, 10);
    REQUIRE(eligible.size() == 1);
    CHECK(eligible[0] == "big"); // out-degree 11 > 10; 10 is not enough

    auto lower = eligible_focal_papers(g, 9);
    REQUIRE(lower.size() == 2);
    CHECK(lower[0] == "big");
    CHECK(lower[1] == "mid");
    CHECK(std::is_sorted(lower.begin(), lower.end()));
}
