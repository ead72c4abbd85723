#include "topicwalk/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "topicwalk/rng.hpp"

namespace topicwalk {

namespace {

double law_median(const IntraLaw& law) {
    double base = 0.0;
    switch (law.family) {
        case TailFamily::rayleigh: base = law.p1 * std::sqrt(2.0 * std::log(2.0)); break;
        case TailFamily::lognormal: base = std::exp(law.p1); break;
        case TailFamily::pareto:
        case TailFamily::power_law: base = law.p1 * std::pow(2.0, 1.0 / law.p2); break;
        default:
            throw std::invalid_argument("generate: unsupported intra similarity family");
    }
    return law.shift + base;
}

double draw_intra(CounterRng& rng, const IntraLaw& law) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        double base = 0.0;
        switch (law.family) {
            case TailFamily::rayleigh: base = rng.rayleigh(law.p1); break;
            case TailFamily::lognormal: base = rng.lognormal(law.p1, law.p2); break;
            case TailFamily::pareto:
            case TailFamily::power_law: base = rng.pareto(law.p1, law.p2); break;
            default: break;
        }
        const double value = law.shift + base;
        if (value > 0.0 && value <= 1.0) return value;
    }
    throw std::runtime_error("generate: intra similarity law rarely lands in (0,1]");
}

}  // namespace

SynthResult generate(const SynthSpec& spec) {
    if (spec.n_nodes == 0) throw std::invalid_argument("generate: n_nodes must be > 0");
    if (spec.k < 1) throw std::invalid_argument("generate: k must be >= 1");
    if (spec.n_topics > 0 && spec.size_min < 2)
        throw std::invalid_argument("generate: topic sizes must be >= 2");
    if (spec.size_min > spec.size_max)
        throw std::invalid_argument("generate: size_min exceeds size_max");

    const double budget = spec.member_fraction * static_cast<double>(spec.n_nodes);
    if (static_cast<double>(spec.n_topics) * spec.size_min > budget)
        throw std::invalid_argument(
            "generate: infeasible spec, member_fraction * n_nodes < n_topics * size_min");
    if (spec.n_topics > 0 && spec.noise_similarity_cap >= law_median(spec.intra))
        throw std::invalid_argument(
            "generate: infeasible spec, noise_similarity_cap >= intra law median");

    CounterRng rng(spec.rng_seed);

    // Topic sizes first, then membership from a shuffled id pool.
    std::vector<std::uint32_t> sizes(spec.n_topics);
    std::uint64_t total_members = 0;
    for (auto& size : sizes) {
        size = spec.size_min +
               static_cast<std::uint32_t>(rng.uniform_int(spec.size_max - spec.size_min + 1));
        total_members += size;
    }
    if (total_members > static_cast<std::uint64_t>(budget))
        throw std::invalid_argument(
            "generate: infeasible spec, drawn topic sizes exceed member_fraction * n_nodes");

    std::vector<std::uint32_t> pool(spec.n_nodes);
    std::iota(pool.begin(), pool.end(), 0u);
    for (std::uint32_t i = spec.n_nodes - 1; i > 0; --i)
        std::swap(pool[i], pool[rng.uniform_int(i + 1)]);

    GroundTruth truth;
    std::vector<std::vector<std::uint32_t>> centrality_order;
    std::size_t cursor = 0;
    for (std::uint32_t size : sizes) {
        std::vector<std::uint32_t> members(pool.begin() + cursor, pool.begin() + cursor + size);
        centrality_order.push_back(members);  // pool order doubles as centrality rank
        std::sort(members.begin(), members.end());
        truth.topics.push_back(std::move(members));
        cursor += size;
    }

    // Undirected similarity assignments keyed by ordered pair; first write
    // wins so a noise draw can never overwrite a planted edge.
    //
    // Within a topic the law draws are handed out along a centrality
    // gradient: the strongest similarities attach to the most central
    // members. Web topics are hub-dominated (a seminal page the rest of the
    // topic relates to), and the entropy-rate seeding below exists exactly
    // to find such centers; rank-free wiring would plant topics without one.
    // The multiset of intra similarities stays an iid law sample either way.
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> sim;
    for (const auto& ranked : centrality_order) {
        const std::size_t m = ranked.size();
        std::vector<double> draws(m * (m - 1) / 2);
        for (double& v : draws) v = draw_intra(rng, spec.intra);
        std::sort(draws.begin(), draws.end(), std::greater<>());
        std::size_t next = 0;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) {
                const auto key = std::minmax(ranked[a], ranked[b]);
                sim[{key.first, key.second}] = draws[next++];
            }
    }

    std::vector<bool> in_topic(spec.n_nodes, false);
    for (const auto& members : truth.topics)
        for (std::uint32_t m : members) in_topic[m] = true;

    if (spec.noise_edge_rate > 0.0 && spec.n_nodes > 1) {
        const double rate = spec.noise_edge_rate;
        for (std::uint32_t u = 0; u < spec.n_nodes; ++u) {
            if (in_topic[u]) continue;
            std::uint32_t count = static_cast<std::uint32_t>(std::floor(rate));
            if (rng.next_double() < rate - std::floor(rate)) ++count;
            for (std::uint32_t c = 0; c < count; ++c) {
                std::uint32_t v = static_cast<std::uint32_t>(rng.uniform_int(spec.n_nodes - 1));
                if (v >= u) ++v;
                const auto key = std::minmax(u, v);
                const double value = rng.uniform_pos(spec.noise_similarity_cap);
                sim.emplace(std::make_pair(key.first, key.second), value);
            }
        }
    }

    std::vector<std::vector<KnnEdge>> adjacency(spec.n_nodes);
    for (const auto& [pair, value] : sim) {
        adjacency[pair.first].push_back({pair.second, value});
        adjacency[pair.second].push_back({pair.first, value});
    }
    for (auto& row : adjacency) {
        std::sort(row.begin(), row.end(), [](const KnnEdge& a, const KnnEdge& b) {
            if (a.affinity != b.affinity) return a.affinity > b.affinity;
            return a.target < b.target;
        });
        if (row.size() > static_cast<std::size_t>(spec.k))
            row.resize(static_cast<std::size_t>(spec.k));
    }

    return SynthResult{KnnGraph(std::move(adjacency), spec.k), std::move(truth)};
}

Corpus generate_text_corpus(const SynthSpec& spec) {
    CounterRng rng(spec.rng_seed ^ 0xC0FFEEULL);

    std::vector<std::uint32_t> sizes(spec.n_topics);
    for (auto& size : sizes)
        size = spec.size_min +
               static_cast<std::uint32_t>(rng.uniform_int(spec.size_max - spec.size_min + 1));

    const int topic_vocab = 40;
    const int shared_vocab = 400;
    const int words_per_doc = 30;

    auto topic_word = [](std::uint32_t topic, std::uint32_t w) {
        return "t" + std::to_string(topic) + "w" + std::to_string(w);
    };

    Corpus corpus;
    std::uint32_t doc_id = 0;
    for (std::uint32_t t = 0; t < spec.n_topics; ++t) {
        for (std::uint32_t m = 0; m < sizes[t]; ++m) {
            Document doc;
            doc.id = "doc" + std::to_string(doc_id++);
            doc.label = "topic" + std::to_string(t);
            for (int w = 0; w < words_per_doc; ++w) {
                if (rng.next_double() < 0.8)
                    doc.tokens.push_back(topic_word(t, static_cast<std::uint32_t>(
                                                           rng.uniform_int(topic_vocab))));
                else
                    doc.tokens.push_back("noise" + std::to_string(rng.uniform_int(shared_vocab)));
            }
            corpus.docs.push_back(std::move(doc));
        }
    }
    while (corpus.docs.size() < spec.n_nodes) {
        Document doc;
        doc.id = "doc" + std::to_string(doc_id++);
        for (int w = 0; w < words_per_doc; ++w)
            doc.tokens.push_back("noise" + std::to_string(rng.uniform_int(shared_vocab)));
        corpus.docs.push_back(std::move(doc));
    }
    return corpus;
}

}  // namespace topicwalk
