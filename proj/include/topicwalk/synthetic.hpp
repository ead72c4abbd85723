#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topicwalk/eval_metrics.hpp"
#include "topicwalk/knn_graph.hpp"
#include "topicwalk/tail_fit.hpp"
#include "topicwalk/text_vectorizer.hpp"

namespace topicwalk {

// Law for planted intra-topic similarities: a base family draw plus a fixed
// shift, rejection-sampled into (0, 1].
struct IntraLaw {
    TailFamily family = TailFamily::rayleigh;
    double p1 = 0.25;   // rayleigh sigma / lognormal mu / pareto scale a
    double p2 = 0.0;    // lognormal sigma / pareto alpha
    double shift = 0.5;
};

struct SynthSpec {
    std::uint32_t n_nodes = 2000;
    std::uint32_t n_topics = 20;
    std::uint32_t size_min = 30;
    std::uint32_t size_max = 60;
    double member_fraction = 0.05;  // budget: fraction of nodes inside any topic
    IntraLaw intra;
    double noise_edge_rate = 2.0;  // expected undirected edges drawn per noise node
    double noise_similarity_cap = 0.3;
    std::uint64_t rng_seed = 1;
    int k = 20;  // top-k truncation of the emitted graph
};

struct SynthResult {
    KnnGraph graph;
    GroundTruth truth;
};

// Plants disjoint topics with law-driven intra similarities in a sea of
// weakly connected noise nodes, then truncates to a k-nearest graph.
// Byte-reproducible from rng_seed. Throws on an infeasible spec, naming the
// violated bound.
SynthResult generate(const SynthSpec& spec);

// Text-mode counterpart: one vocabulary block per topic plus a shared noise
// vocabulary, so the TF-IDF and graph stages can be exercised end to end.
Corpus generate_text_corpus(const SynthSpec& spec);

}  // namespace topicwalk
