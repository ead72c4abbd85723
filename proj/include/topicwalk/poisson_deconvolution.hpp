#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "topicwalk/knn_graph.hpp"
#include "topicwalk/topic_growth.hpp"

namespace topicwalk {

// Deconvolution instance over the symmetric edge set: each topic covers the
// edges whose endpoints both belong to it. Topics covering no edge are
// degenerate; their weight is pinned at zero.
struct PdProblem {
    std::vector<SymEdge> edges;
    std::vector<std::vector<std::uint32_t>> covered;  // per topic, edge indices
    std::vector<std::uint32_t> member_count;          // webpages per topic
    std::vector<bool> degenerate;

    std::uint32_t topic_count() const { return static_cast<std::uint32_t>(covered.size()); }
};

PdProblem build_problem(const TopicSet& topics, const KnnGraph& graph);

struct PdResult {
    std::vector<double> mu;
    std::vector<double> interestingness;   // mu_k * member count
    std::vector<std::uint32_t> ranking;    // topic indices, best first
    std::vector<double> loglik_trace;
    int iterations = 0;
    bool converged = false;
};

// Maximizes sum over covered edges of w * ln(rate) - rate, where the rate of
// an edge is the sum of the weights of the topics covering it, via
// multiplicative updates. The trace is non-decreasing.
PdResult fit_weights(const PdProblem& problem, int max_iter = 500, double tol = 1e-8);

// Objective value for a given weight vector; edges covered by no topic are
// outside the model and excluded from the sum.
double poisson_loglik(const PdProblem& problem, std::span<const double> mu);

struct RankedTopic {
    std::uint32_t topic;
    double score;
};

// i_k = mu_k * |members|, sorted descending (ties toward the smaller index).
std::vector<RankedTopic> interestingness(const PdResult& result, const TopicSet& topics);

}  // namespace topicwalk
