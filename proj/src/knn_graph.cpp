#include "topicwalk/knn_graph.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace topicwalk {

namespace {

bool edge_order(const KnnEdge& a, const KnnEdge& b) {
    if (a.affinity != b.affinity) return a.affinity > b.affinity;
    return a.target < b.target;
}

}  // namespace

KnnGraph::KnnGraph(std::vector<std::vector<KnnEdge>> adjacency, int k) : k_(k) {
    n_ = static_cast<std::uint32_t>(adjacency.size());
    offsets_.assign(n_ + 1, 0);
    for (std::uint32_t i = 0; i < n_; ++i) {
        auto& row = adjacency[i];
        if (static_cast<int>(row.size()) > k)
            throw std::invalid_argument("KnnGraph: row exceeds k out-edges");
        std::sort(row.begin(), row.end(), edge_order);
        for (const KnnEdge& e : row) {
            if (e.target == i) throw std::invalid_argument("KnnGraph: self-loop");
            if (e.target >= n_) throw std::invalid_argument("KnnGraph: target out of range");
            if (e.affinity <= 0.0) throw std::invalid_argument("KnnGraph: non-positive affinity");
        }
        offsets_[i + 1] = offsets_[i] + row.size();
    }
    edges_.reserve(offsets_[n_]);
    for (std::uint32_t i = 0; i < n_; ++i)
        edges_.insert(edges_.end(), adjacency[i].begin(), adjacency[i].end());

    // Reverse adjacency via counting sort on targets.
    in_offsets_.assign(n_ + 1, 0);
    for (const KnnEdge& e : edges_) ++in_offsets_[e.target + 1];
    for (std::uint32_t i = 0; i < n_; ++i) in_offsets_[i + 1] += in_offsets_[i];
    in_edges_.resize(edges_.size());
    std::vector<std::size_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
    for (std::uint32_t i = 0; i < n_; ++i)
        for (const KnnEdge& e : out_edges(i))
            in_edges_[cursor[e.target]++] = KnnEdge{i, e.affinity};
    // Counting sort over ascending sources already leaves each in-list sorted
    // by source id.
}

double KnnGraph::affinity(std::uint32_t i, std::uint32_t j) const {
    for (const KnnEdge& e : out_edges(i))
        if (e.target == j) return e.affinity;
    return 0.0;
}

KnnGraph build_knn_graph(std::span<const SparseVector> vectors, int k) {
    if (k < 1) throw std::invalid_argument("build_knn_graph: k must be >= 1");
    if (vectors.empty()) throw std::invalid_argument("build_knn_graph: no vectors");

    const std::uint32_t n = static_cast<std::uint32_t>(vectors.size());
    std::vector<std::vector<KnnEdge>> adjacency(n);

#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        const std::uint32_t u = static_cast<std::uint32_t>(i);
        std::vector<KnnEdge> candidates;
        candidates.reserve(n);
        for (std::uint32_t v = 0; v < n; ++v) {
            if (v == u) continue;
            double s = similarity(vectors[u], vectors[v]);
            if (s > 0.0) candidates.push_back(KnnEdge{v, s});
        }
        const std::size_t keep = std::min<std::size_t>(candidates.size(), static_cast<std::size_t>(k));
        std::partial_sort(candidates.begin(), candidates.begin() + keep, candidates.end(),
                          edge_order);
        candidates.resize(keep);
        adjacency[u] = std::move(candidates);
    }
    return KnnGraph(std::move(adjacency), k);
}

std::vector<SymEdge> symmetrize(const KnnGraph& graph) {
    std::vector<SymEdge> halves;
    halves.reserve(graph.edge_count());
    for (std::uint32_t i = 0; i < graph.n(); ++i)
        for (const KnnEdge& e : graph.out_edges(i)) {
            std::uint32_t a = std::min(i, e.target);
            std::uint32_t b = std::max(i, e.target);
            halves.push_back(SymEdge{a, b, e.affinity});
        }
    std::sort(halves.begin(), halves.end(), [](const SymEdge& x, const SymEdge& y) {
        if (x.i != y.i) return x.i < y.i;
        return x.j < y.j;
    });

    std::vector<SymEdge> merged;
    merged.reserve(halves.size());
    for (std::size_t p = 0; p < halves.size();) {
        std::size_t q = p;
        double sum = 0.0;
        while (q < halves.size() && halves[q].i == halves[p].i && halves[q].j == halves[p].j) {
            sum += halves[q].weight;
            ++q;
        }
        double w = sum / 2.0;
        if (w > 0.0) merged.push_back(SymEdge{halves[p].i, halves[p].j, w});
        p = q;
    }
    return merged;
}

}  // namespace topicwalk
