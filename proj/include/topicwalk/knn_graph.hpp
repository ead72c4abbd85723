#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "topicwalk/text_vectorizer.hpp"

namespace topicwalk {

struct KnnEdge {
    std::uint32_t target;
    double affinity;
};

// Directed graph keeping each node's k most-similar neighbors. Out-edges are
// sorted by descending affinity (ties toward the lower node id) and a reverse
// adjacency is kept so in-edges can be walked without a search.
class KnnGraph {
public:
    KnnGraph() = default;
    KnnGraph(std::vector<std::vector<KnnEdge>> adjacency, int k);

    std::uint32_t n() const { return n_; }
    int k() const { return k_; }
    std::size_t edge_count() const { return edges_.size(); }

    std::span<const KnnEdge> out_edges(std::uint32_t i) const {
        return {edges_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }

    // In-edges of node i as (source, affinity), sorted by source id.
    std::span<const KnnEdge> in_edges(std::uint32_t i) const {
        return {in_edges_.data() + in_offsets_[i], in_offsets_[i + 1] - in_offsets_[i]};
    }

    // Affinity of the directed edge i -> j, or 0 when absent.
    double affinity(std::uint32_t i, std::uint32_t j) const;

    std::size_t out_degree(std::uint32_t i) const { return offsets_[i + 1] - offsets_[i]; }

private:
    std::uint32_t n_ = 0;
    int k_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<KnnEdge> edges_;
    std::vector<std::size_t> in_offsets_;
    std::vector<KnnEdge> in_edges_;
};

// Brute-force construction: for every node keep the k most similar other
// nodes with positive similarity. Ties broken toward the lower node id.
KnnGraph build_knn_graph(std::span<const SparseVector> vectors, int k);

// Undirected edge with the averaged affinity of the two directions.
struct SymEdge {
    std::uint32_t i;
    std::uint32_t j;
    double weight;
};

// (a_ij + a_ji) / 2 with missing directions counting as zero; one entry per
// unordered pair with positive weight, sorted by (i, j), i < j.
std::vector<SymEdge> symmetrize(const KnnGraph& graph);

}  // namespace topicwalk
