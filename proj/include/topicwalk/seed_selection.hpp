#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "topicwalk/knn_graph.hpp"

namespace topicwalk {

struct SeedSelection {
    std::vector<std::uint32_t> seeds;         // in selection (= SER-descending) order
    std::vector<std::uint32_t> sorted_order;  // all nodes by SER descending, ties by id
    int d = 2;
};

// Greedy scan over nodes in SER-descending order. A node is selected when
// neither it nor any of its d highest-affinity out-neighbors has been
// covered; selecting it covers the node and those neighbors.
SeedSelection select_seeds(const KnnGraph& graph, std::span<const double> ser, int d);

}  // namespace topicwalk
