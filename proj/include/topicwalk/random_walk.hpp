#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "topicwalk/knn_graph.hpp"

namespace topicwalk {

struct Transition {
    std::uint32_t target;
    double prob;
};

// Row-normalized transition matrix P_ij = a_ij / sum_j a_ij. Nodes with zero
// out-degree keep an empty row and are listed in `dangling`.
struct RowStochastic {
    std::uint32_t n = 0;
    std::vector<std::size_t> offsets;
    std::vector<Transition> entries;
    std::vector<std::uint32_t> dangling;

    std::span<const Transition> row(std::uint32_t i) const {
        return {entries.data() + offsets[i], offsets[i + 1] - offsets[i]};
    }
};

RowStochastic transition_matrix(const KnnGraph& graph);

struct StationaryDistribution {
    std::vector<double> pi;
    double alpha = 0.85;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

// PageRank power iteration from the uniform start. Dangling mass is
// redistributed uniformly each sweep; stops when the L1 change drops below
// tol or after max_iter sweeps (then `converged` stays false).
StationaryDistribution stationary_distribution(const RowStochastic& P, double alpha = 0.85,
                                               double tol = 1e-10, int max_iter = 200);

// Entropy rate of the chain: sum_i pi_i * sum_j -P_ij ln P_ij.
double entropy_rate(const StationaryDistribution& pi, const RowStochastic& P);

// Per-node share of the entropy rate; zero for dangling or single-exit nodes.
std::vector<double> site_entropy_rate(const StationaryDistribution& pi, const RowStochastic& P);

}  // namespace topicwalk
