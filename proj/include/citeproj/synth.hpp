#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "citeproj/graph.hpp"
#include "citeproj/projection.hpp"
#include "citeproj/rng.hpp"

namespace citeproj {

enum class CiterClass { Idiosyncratic, WithinCommunity, Brokerage };

inline const char* to_string(CiterClass c) {
    switch (c) {
        case CiterClass::Idiosyncratic: return "idiosyncratic";
        case CiterClass::WithinCommunity: return "within-community";
        default: return "brokerage";
    }
}

inline CiterClass citer_class_from_string(const std::string& s) {
    if (s == "idiosyncratic") return CiterClass::Idiosyncratic;
    if (s == "within-community") return CiterClass::WithinCommunity;
    if (s == "brokerage") return CiterClass::Brokerage;
    throw std::invalid_argument("unknown citer class '" + s + "'");
}

struct PrototypeSpec {
    CiterClass kind = CiterClass::Idiosyncratic;
    std::size_t n_cited = 30;
    double edge_prob = 0.02; // intra-cluster probability for Brokerage
    std::size_t cluster_count = 3; // Brokerage only
    std::size_t bridge_count = 2;  // Brokerage only
    std::uint64_t seed = 0;
    PaperId focal = "synthetic";

    // Class defaults chosen to separate the three regimes cleanly at n = 30:
    // sparse scatter, one dense community, dense clusters joined by bridges.
    static PrototypeSpec defaults(CiterClass kind, std::size_t n_cited, std::uint64_t seed) {
        PrototypeSpec spec;
        spec.kind = kind;
        spec.n_cited = n_cited;
        spec.seed = seed;
        spec.edge_prob = kind == CiterClass::Idiosyncratic ? 0.02 : 0.4;
        return spec;
    }
};

namespace detail {

inline std::string cited_name(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "c%05zu", i);
    return buf;
}

} // namespace detail

/// Generates a synthetic projection pair for one of the three prototype
/// classes. Idiosyncratic: each cited pair linked with edge_prob (sparse).
/// WithinCommunity: a dense edge_prob cluster over most of the cited papers
/// plus round((1-edge_prob)*n/2) stray references, each tied to the cluster
/// by a single citation; strays sit at both ends of the index range so half
/// cite into the cluster and half are cited from it, and at edge_prob 1 the
/// strays vanish and the graph is a clique. Brokerage: the first bridge_count
/// indices are bridges; the rest split into cluster_count near-equal dense
/// clusters, and each bridge links to exactly one random member per cluster,
/// so clusters touch only through bridges. All edges run from lower to higher
/// index, keeping the graph acyclic. Deterministic per seed.
inline ProjectionPair generate_prototype(const PrototypeSpec& spec) {
    if (spec.n_cited < 1) throw std::invalid_argument("prototype needs at least one cited paper");
    if (spec.edge_prob < 0.0 || spec.edge_prob > 1.0)
        throw std::invalid_argument("edge_prob must lie in [0, 1]");
    if (spec.kind == CiterClass::Brokerage) {
        if (spec.cluster_count < 2)
            throw std::invalid_argument("brokerage needs at least two clusters");
        if (spec.bridge_count < 1)
            throw std::invalid_argument("brokerage needs at least one bridge");
        if (spec.n_cited < spec.bridge_count + spec.cluster_count)
            throw std::invalid_argument("brokerage needs one cited paper per cluster and bridge");
    }

    ProjectionPair pair;
    pair.focal = spec.focal;
    pair.cited.reserve(spec.n_cited);
    for (std::size_t i = 0; i < spec.n_cited; ++i) pair.cited.push_back(detail::cited_name(i));

    Rng rng(spec.seed);
    auto edge = [&](std::size_t a, std::size_t b) {
        pair.gp_edges.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
    };

    if (spec.kind == CiterClass::Brokerage) {
        const std::size_t b = spec.bridge_count, k = spec.cluster_count;
        const std::size_t members = spec.n_cited - b;
        const std::size_t base = members / k, extra = members % k;
        std::vector<std::pair<std::size_t, std::size_t>> clusters; // [start, size)
        std::size_t start = b;
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t size = base + (c < extra ? 1 : 0);
            clusters.emplace_back(start, size);
            start += size;
        }
        for (const auto& [cs, len] : clusters)
            for (std::size_t i = cs; i < cs + len; ++i)
                for (std::size_t j = i + 1; j < cs + len; ++j)
                    if (rng.bernoulli(spec.edge_prob)) edge(i, j);
        for (std::size_t br = 0; br < b; ++br)
            for (const auto& [cs, len] : clusters)
                edge(br, cs + static_cast<std::size_t>(rng.below(len)));
    } else if (spec.kind == CiterClass::WithinCommunity) {
        std::size_t strays = static_cast<std::size_t>(
            (1.0 - spec.edge_prob) * static_cast<double>(spec.n_cited) / 2.0 + 0.5);
        strays = std::min(strays, spec.n_cited - 1); // keep at least one cluster node
        const std::size_t front = strays / 2;
        const std::size_t core = spec.n_cited - strays;
        for (std::size_t i = front; i < front + core; ++i)
            for (std::size_t j = i + 1; j < front + core; ++j)
                if (rng.bernoulli(spec.edge_prob)) edge(i, j);
        for (std::size_t i = 0; i < front; ++i)
            edge(i, front + static_cast<std::size_t>(rng.below(core)));
        for (std::size_t j = front + core; j < spec.n_cited; ++j)
            edge(front + static_cast<std::size_t>(rng.below(core)), j);
    } else {
        for (std::size_t i = 0; i < spec.n_cited; ++i)
            for (std::size_t j = i + 1; j < spec.n_cited; ++j)
                if (rng.bernoulli(spec.edge_prob)) edge(i, j);
    }

    std::sort(pair.gp_edges.begin(), pair.gp_edges.end());
    return pair;
}

struct CorpusPaper {
    PaperId id;
    CiterClass kind = CiterClass::Idiosyncratic;
    std::string area;
    int year = 0;
    std::uint64_t citations = 0; // incoming citations forced by the generator
};

struct CorpusSpec {
    std::vector<std::string> areas = {"A"};
    std::vector<int> years = {2000};
    // Focal papers per area and class.
    std::size_t idiosyncratic = 0;
    std::size_t within_community = 0;
    std::size_t brokerage = 0;
    // 11 references keeps every reference's own out-degree at or below the
    // default eligibility threshold, so exactly the focal papers are eligible.
    std::size_t n_cited = 11;
    std::uint64_t seed = 0;
};

struct SynthCorpus {
    std::vector<CorpusPaper> focals;
    std::vector<std::pair<PaperId, PaperId>> edges; // generation order
    std::size_t citer_count = 0;

    void write_edges(std::ostream& out) const {
        for (const auto& [from, to] : edges) out << from << '\t' << to << '\n';
    }
    void write_meta(std::ostream& out) const {
        out << "paper_id,year,area\n";
        for (const auto& p : focals) out << p.id << ',' << p.year << ',' << p.area << '\n';
    }
    void write_labels(std::ostream& out) const {
        out << "paper_id,class\n";
        for (const auto& p : focals) out << p.id << ',' << to_string(p.kind) << '\n';
    }
    CitationGraph to_graph() const {
        std::stringstream e, m;
        write_edges(e);
        write_meta(m);
        return load_citation_graph(e, m, "edges", "meta");
    }
};

/// Builds a corpus of synthetic focal papers: per area, the configured number
/// of papers of each class, each realizing its prototype over a private set
/// of reference papers, with years cycled per class so cohorts stay balanced.
/// Incoming citations are forced per class (brokerage 40-49, within-community
/// 8-11, idiosyncratic 0-1) so impact strata can reproduce the class labels,
/// and are spread round-robin over a shared pool of citer papers whose
/// out-degree never exceeds 10. Only focal papers get metadata; references
/// and citers stay meta-less and drop out of cohort statistics.
inline SynthCorpus generate_corpus(const CorpusSpec& spec) {
    if (spec.areas.empty()) throw std::invalid_argument("corpus needs at least one area");
    if (spec.years.empty()) throw std::invalid_argument("corpus needs at least one year");
    if (spec.idiosyncratic + spec.within_community + spec.brokerage < 1)
        throw std::invalid_argument("corpus needs at least one focal paper");

    SynthCorpus corpus;
    const std::pair<CiterClass, std::size_t> mix[] = {
        {CiterClass::Idiosyncratic, spec.idiosyncratic},
        {CiterClass::WithinCommunity, spec.within_community},
        {CiterClass::Brokerage, spec.brokerage},
    };

    std::size_t serial = 0;
    for (const auto& area : spec.areas) {
        for (const auto& [kind, count] : mix) {
            for (std::size_t i = 0; i < count; ++i) {
                char buf[16];
                std::snprintf(buf, sizeof buf, "s%05zu", serial++);
                CorpusPaper paper;
                paper.id = buf;
                paper.kind = kind;
                paper.area = area;
                paper.year = spec.years[i % spec.years.size()];

                Rng count_rng(derive_seed(spec.seed, paper.id, 1));
                switch (kind) {
                    case CiterClass::Brokerage: paper.citations = 40 + count_rng.below(10); break;
                    case CiterClass::WithinCommunity: paper.citations = 8 + count_rng.below(4); break;
                    default: paper.citations = count_rng.below(2); break;
                }

                PrototypeSpec proto = PrototypeSpec::defaults(
                    kind, spec.n_cited, derive_seed(spec.seed, paper.id, 0));
                proto.focal = paper.id;
                ProjectionPair pair = generate_prototype(proto);

                std::vector<PaperId> refs;
                refs.reserve(spec.n_cited);
                for (std::size_t r = 0; r < spec.n_cited; ++r) {
                    char ref[24];
                    std::snprintf(ref, sizeof ref, "%sr%04zu", paper.id.c_str(), r);
                    refs.emplace_back(ref);
                    corpus.edges.emplace_back(paper.id, ref);
                }
                for (const auto& [a, b] : pair.gp_edges)
                    corpus.edges.emplace_back(refs[a], refs[b]);

                corpus.focals.push_back(std::move(paper));
            }
        }
    }

    std::uint64_t total_citations = 0, max_citations = 0;
    for (const auto& p : corpus.focals) {
        total_citations += p.citations;
        max_citations = std::max(max_citations, p.citations);
    }
    if (total_citations > 0) {
        std::uint64_t pool = std::max((total_citations + 9) / 10, max_citations);
        corpus.citer_count = static_cast<std::size_t>(pool);
        std::uint64_t cursor = 0;
        for (const auto& p : corpus.focals) {
            for (std::uint64_t k = 0; k < p.citations; ++k) {
                char buf[16];
                std::snprintf(buf, sizeof buf, "u%05llu",
                              static_cast<unsigned long long>(cursor++ % pool));
                corpus.edges.emplace_back(buf, p.id);
            }
        }
    }
    return corpus;
}

} // namespace citeproj
