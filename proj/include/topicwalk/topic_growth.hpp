#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "topicwalk/knn_graph.hpp"
#include "topicwalk/seed_selection.hpp"

namespace topicwalk {

struct Topic {
    std::vector<std::uint32_t> members;  // sorted ascending
    std::uint32_t seed = 0;
    int granularity_d = 0;
    double threshold = 1.0;  // one of 1.0, 0.9, ..., 0.1
    bool is_final = false;   // emitted at end of stream rather than at a threshold drop
};

struct TopicSet {
    std::vector<Topic> topics;
};

// Mean affinity over the ordered member pairs that actually carry an edge.
// Singletons count as 1.0; larger sets with no internal edge as 0.0.
double avg_internal(std::span<const std::uint32_t> members, const KnnGraph& graph);

// Relative similarity between a topic and an outside node: the mean of
// A(m,x) + A(x,m) over members, divided by the topic's internal average.
double topic_similarity(const Topic& topic, std::uint32_t x, const KnnGraph& graph);

// True when absorbing the candidate would pull the internal average below
// the topic's current threshold.
bool should_snapshot(double avg_after_add, double th);

// Grows one topic per seed by streaming the remaining nodes in
// SER-descending order; each node joins its topK most similar live topics.
// A snapshot of a topic is emitted whenever its threshold steps down; live
// topics with at least two members are emitted once more at end of stream.
TopicSet grow_topics(const KnnGraph& graph, const SeedSelection& selection, int topK);

// Union of grow_topics runs over every covering-neighbor count in D,
// de-duplicated. D defaults to {2,3,4} at the CLI layer.
TopicSet multi_granularity(const KnnGraph& graph, std::span<const double> ser,
                           const std::vector<int>& D, int topK);

// Drops exact duplicate member sets, keeping the first occurrence.
TopicSet dedup(TopicSet topics);

}  // namespace topicwalk
