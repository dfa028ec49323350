#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "citeproj/impact.hpp"
#include "citeproj/metrics.hpp"
#include "citeproj/projection.hpp"
#include "citeproj/synth.hpp"

using Catch::Matchers::WithinAbs;
using citeproj::CiterClass;
using citeproj::CorpusSpec;
using citeproj::generate_corpus;
using citeproj::generate_prototype;
using citeproj::PrototypeSpec;

TEST_CASE("citer class names round-trip", "[synth]") {
    for (CiterClass c : {CiterClass::Idiosyncratic, CiterClass::WithinCommunity,
                         CiterClass::Brokerage})
        CHECK(citeproj::citer_class_from_string(citeproj::to_string(c)) == c);
    CHECK(std::string(citeproj::to_string(CiterClass::WithinCommunity)) == "within-community");
    CHECK_THROWS_AS(citeproj::citer_class_from_string("communal"), std::invalid_argument);
}

TEST_CASE("prototype defaults separate sparse from dense", "[synth]") {
    auto idio = PrototypeSpec::defaults(CiterClass::Idiosyncratic, 30, 1);
    auto within = PrototypeSpec::defaults(CiterClass::WithinCommunity, 30, 1);
    auto broker = PrototypeSpec::defaults(CiterClass::Brokerage, 30, 1);
    CHECK_THAT(idio.edge_prob, WithinAbs(0.02, 1e-12));
    CHECK_THAT(within.edge_prob, WithinAbs(0.4, 1e-12));
    CHECK_THAT(broker.edge_prob, WithinAbs(0.4, 1e-12));
    CHECK(broker.cluster_count == 3);
    CHECK(broker.bridge_count == 2);
}

TEST_CASE("prototype specs are validated", "[synth]") {
    PrototypeSpec spec;
    spec.n_cited = 0;
    CHECK_THROWS_AS(generate_prototype(spec), std::invalid_argument);

    spec = {};
    spec.edge_prob = 1.5;
    CHECK_THROWS_AS(generate_prototype(spec), std::invalid_argument);
    spec.edge_prob = -0.1;
    CHECK_THROWS_AS(generate_prototype(spec), std::invalid_argument);

    spec = {};
    spec.kind = CiterClass::Brokerage;
    spec.cluster_count = 1;
    CHECK_THROWS_AS(generate_prototype(spec), std::invalid_argument);

    spec = {};
    spec.kind = CiterClass::Brokerage;
    spec.bridge_count = 0;
    CHECK_THROWS_AS(generate_prototype(spec), std::invalid_argument);

    spec = {};
    spec.kind = CiterClass::Brokerage;
    spec.n_cited = 4; // needs 2 bridges + 3 clusters
    CHECK_THROWS_AS(generate_prototype(spec), std::invalid_argument);
}

TEST_CASE("edge probability zero and one hit the closed forms", "[synth]") {
    PrototypeSpec sparse;
    sparse.kind = CiterClass::Idiosyncratic;
    sparse.n_cited = 5;
    sparse.edge_prob = 0.0;
    auto scatter = generate_prototype(sparse);
    CHECK(scatter.gp_edges.empty());
    CHECK_THAT(citeproj::density(scatter), WithinAbs(0.0, 1e-12));
    CHECK_THAT(citeproj::focal_betweenness(scatter), WithinAbs(1.0, 1e-12));

    PrototypeSpec dense;
    dense.kind = CiterClass::WithinCommunity;
    dense.n_cited = 6;
    dense.edge_prob = 1.0;
    auto clique = generate_prototype(dense);
    CHECK(clique.gp_edges.size() == 15);
    CHECK_THAT(citeproj::density(clique), WithinAbs(1.0, 1e-12));
    CHECK_THAT(citeproj::clustering(clique), WithinAbs(1.0, 1e-12));
}

TEST_CASE("brokerage puts the betweenness peak on a bridge", "[synth]") {
    PrototypeSpec spec;
    spec.kind = CiterClass::Brokerage;
    spec.n_cited = 21;
    spec.edge_prob = 1.0;
    spec.cluster_count = 2;
    spec.bridge_count = 1;
    spec.seed = 9;
    auto pair = generate_prototype(spec);

    // Two complete 10-clusters only touch through node 0.
    auto view = citeproj::gp_view(pair);
    auto raw = citeproj::brandes_betweenness(view);
    auto peak = std::max_element(raw.begin(), raw.end());
    CHECK(peak - raw.begin() == 0);
    CHECK(*peak > 0.0);
    CHECK_THAT(citeproj::max_betweenness(pair),
               WithinAbs(citeproj::normalized_betweenness(*peak, view.node_count), 1e-12));
    CHECK_THAT(citeproj::connectivity(pair), WithinAbs(1.0, 1e-12));
}

TEST_CASE("each bridge links once per cluster", "[synth]") {
    PrototypeSpec spec;
    spec.kind = CiterClass::Brokerage;
    spec.n_cited = 20;
    spec.edge_prob = 0.0; // strip intra-cluster edges, keep only bridge links
    spec.cluster_count = 3;
    spec.bridge_count = 2;
    spec.seed = 4;
    auto pair = generate_prototype(spec);

    REQUIRE(pair.gp_edges.size() == 6);
    // Clusters of 18 members split 6/6/6 starting after the bridges.
    auto cluster_of = [](std::uint32_t node) { return (node - 2) / 6; };
    std::map<std::uint32_t, std::set<std::uint32_t>> reached;
    for (const auto& [from, to] : pair.gp_edges) {
        CHECK(from < 2);
        CHECK(to >= 2);
        reached[from].insert(cluster_of(to));
    }
    CHECK(reached[0] == std::set<std::uint32_t>{0, 1, 2});
    CHECK(reached[1] == std::set<std::uint32_t>{0, 1, 2});
}

TEST_CASE("prototypes are acyclic, sorted and deterministic", "[synth]") {
    for (CiterClass kind : {CiterClass::Idiosyncratic, CiterClass::WithinCommunity,
                            CiterClass::Brokerage}) {
        auto spec = PrototypeSpec::defaults(kind, 30, 77);
        auto pair = generate_prototype(spec);
        CHECK(std::is_sorted(pair.gp_edges.begin(), pair.gp_edges.end()));
        for (const auto& [a, b] : pair.gp_edges) CHECK(a < b); // low cites high: acyclic
        CHECK(pair.cited.size() == 30);

        auto again = generate_prototype(spec);
        CHECK(pair.gp_edges == again.gp_edges);
    }

    auto w1 = generate_prototype(PrototypeSpec::defaults(CiterClass::WithinCommunity, 30, 1));
    auto w2 = generate_prototype(PrototypeSpec::defaults(CiterClass::WithinCommunity, 30, 2));
    CHECK(w1.gp_edges != w2.gp_edges);
}

TEST_CASE("prototype classes separate on their signature metrics", "[synth]") {
    double idio_density = 0, within_density = 0, broker_density = 0;
    double broker_maxb = 0, within_maxb = 0;
    const int trials = 50;
    for (int s = 0; s < trials; ++s) {
        auto i = generate_prototype(PrototypeSpec::defaults(CiterClass::Idiosyncratic, 30, s));
        auto w = generate_prototype(PrototypeSpec::defaults(CiterClass::WithinCommunity, 30, s));
        auto b = generate_prototype(PrototypeSpec::defaults(CiterClass::Brokerage, 30, s));
        idio_density += citeproj::density(i);
        within_density += citeproj::density(w);
        broker_density += citeproj::density(b);
        within_maxb += citeproj::max_betweenness(w);
        broker_maxb += citeproj::max_betweenness(b);
    }
    CHECK(within_density / trials > broker_density / trials);
    CHECK(broker_density / trials > idio_density / trials);
    CHECK(broker_maxb / trials > within_maxb / trials);
}

TEST_CASE("corpus generation respects the mix and cycles years", "[synth]") {
    CorpusSpec spec;
    spec.areas = {"A"};
    spec.years = {1990, 2000};
    spec.idiosyncratic = 2;
    spec.within_community = 3;
    spec.brokerage = 1;
    spec.n_cited = 5;
    spec.seed = 7;
    auto corpus = generate_corpus(spec);

    REQUIRE(corpus.focals.size() == 6);
    CHECK(corpus.focals[0].id == "s00000");
    CHECK(corpus.focals[5].id == "s00005");
    CHECK(corpus.focals[0].kind == CiterClass::Idiosyncratic);
    CHECK(corpus.focals[2].kind == CiterClass::WithinCommunity);
    CHECK(corpus.focals[5].kind == CiterClass::Brokerage);
    // Years restart from the front for every class.
    CHECK(corpus.focals[0].year == 1990);
    CHECK(corpus.focals[1].year == 2000);
    CHECK(corpus.focals[2].year == 1990);
    CHECK(corpus.focals[3].year == 2000);
    CHECK(corpus.focals[4].year == 1990);
    CHECK(corpus.focals[5].year == 1990);

    for (const auto& p : corpus.focals) {
        switch (p.kind) {
            case CiterClass::Brokerage:
                CHECK(p.citations >= 40);
                CHECK(p.citations <= 49);
                break;
            case CiterClass::WithinCommunity:
                CHECK(p.citations >= 8);
                CHECK(p.citations <= 11);
                break;
            default:
                CHECK(p.citations <= 1);
        }
    }
}

TEST_CASE("corpus wiring keeps references private and citers bounded", "[synth]") {
    CorpusSpec spec;
    spec.areas = {"A", "B"};
    spec.idiosyncratic = 3;
    spec.within_community = 4;
    spec.brokerage = 2;
    spec.seed = 21;
    auto corpus = generate_corpus(spec);

    std::map<std::string, std::size_t> out_degree;
    std::map<std::string, std::set<std::string>> citers_of;
    for (const auto& [from, to] : corpus.edges) {
        ++out_degree[from];
        if (from[0] == 'u') CHECK(citers_of[to].insert(from).second); // citers cite once
    }
    std::uint64_t total_citations = 0;
    for (const auto& p : corpus.focals) {
        CHECK(out_degree[p.id] == spec.n_cited);
        CHECK(citers_of[p.id].size() == p.citations);
        total_citations += p.citations;
    }
    for (const auto& [node, deg] : out_degree) {
        if (node[0] == 'u') CHECK(deg <= 10);
        if (node.find('r') != std::string::npos) // references cite only siblings
            CHECK(deg <= spec.n_cited - 1);
    }
    std::uint64_t max_c = 0;
    for (const auto& p : corpus.focals) max_c = std::max(max_c, p.citations);
    CHECK(corpus.citer_count == std::max((total_citations + 9) / 10, max_c));
}

TEST_CASE("corpus generation is byte-identical per seed", "[synth]") {
    CorpusSpec spec;
    spec.idiosyncratic = 2;
    spec.within_community = 2;
    spec.brokerage = 2;
    spec.seed = 5;
    std::ostringstream a, b, meta, labels;
    generate_corpus(spec).write_edges(a);
    generate_corpus(spec).write_edges(b);
    CHECK(a.str() == b.str());

    auto corpus = generate_corpus(spec);
    corpus.write_meta(meta);
    corpus.write_labels(labels);
    CHECK(meta.str().rfind("paper_id,year,area\n", 0) == 0);
    CHECK(labels.str().rfind("paper_id,class\n", 0) == 0);
    CHECK(labels.str().find("within-community") != std::string::npos);
}

TEST_CASE("exactly the focal papers are eligible", "[synth]") {
    CorpusSpec spec;
    spec.idiosyncratic = 3;
    spec.within_community = 3;
    spec.brokerage = 3;
    spec.seed = 13;
    auto corpus = generate_corpus(spec);
    auto g = corpus.to_graph();
    auto eligible = citeproj::eligible_focal_papers(g);

    std::vector<citeproj::PaperId> expected;
    for (const auto& p : corpus.focals) expected.push_back(p.id);
    std::sort(expected.begin(), expected.end());
    CHECK(eligible == expected);
}

TEST_CASE("projection of a corpus paper recovers its prototype", "[synth]") {
    CorpusSpec spec;
    spec.within_community = 1;
    spec.seed = 31;
    auto corpus = generate_corpus(spec);
    auto g = corpus.to_graph();
    const auto& focal = corpus.focals[0];

    auto proto = PrototypeSpec::defaults(CiterClass::WithinCommunity, spec.n_cited,
                                         citeproj::derive_seed(spec.seed, focal.id, 0));
    auto expected = generate_prototype(proto);
    auto projected = citeproj::project(g, focal.id);

    REQUIRE(projected.cited.size() == spec.n_cited);
    CHECK(projected.gp_edges == expected.gp_edges);
    for (std::size_t i = 0; i < projected.cited.size(); ++i)
        CHECK(projected.cited[i] == focal.id + "r" + std::string(i < 10 ? "000" : "00") +
                                        std::to_string(i));
}

TEST_CASE("forced citation gaps let strata reproduce the class labels", "[synth]") {
    CorpusSpec spec;
    spec.areas = {"A"};
    spec.years = {1990};
    spec.idiosyncratic = 5;
    spec.within_community = 13;
    spec.brokerage = 2;
    spec.seed = 3;
    auto corpus = generate_corpus(spec);
    auto g = corpus.to_graph();

    auto result = citeproj::normalized_impact(g);
    REQUIRE(result.records.size() == 20);
    auto assigned = citeproj::stratify(result.records);

    std::map<citeproj::PaperId, CiterClass> label;
    for (const auto& p : corpus.focals) label[p.id] = p.kind;
    for (const auto& r : assigned) {
        switch (label.at(r.paper)) {
            case CiterClass::Brokerage: CHECK(r.stratum == citeproj::Stratum::High); break;
            case CiterClass::WithinCommunity: CHECK(r.stratum == citeproj::Stratum::Mid); break;
            default: CHECK(r.stratum == citeproj::Stratum::Low);
        }
    }
}

TEST_CASE("corpus specs are validated", "[synth]") {
    CorpusSpec spec;
    CHECK_THROWS_AS(generate_corpus(spec), std::invalid_argument); // no focals

    spec.idiosyncratic = 1;
    spec.areas = {};
    CHECK_THROWS_AS(generate_corpus(spec), std::invalid_argument);

    spec = {};
    spec.idiosyncratic = 1;
    spec.years = {};
    CHECK_THROWS_AS(generate_corpus(spec), std::invalid_argument);
}
