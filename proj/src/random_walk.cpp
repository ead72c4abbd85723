#include "topicwalk/random_walk.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace topicwalk {

RowStochastic transition_matrix(const KnnGraph& graph) {
    RowStochastic P;
    P.n = graph.n();
    P.offsets.assign(P.n + 1, 0);
    P.entries.reserve(graph.edge_count());
    for (std::uint32_t i = 0; i < P.n; ++i) {
        auto edges = graph.out_edges(i);
        double degree = 0.0;
        for (const KnnEdge& e : edges) degree += e.affinity;
        if (degree <= 0.0) {
            P.dangling.push_back(i);
        } else {
            for (const KnnEdge& e : edges) P.entries.push_back({e.target, e.affinity / degree});
        }
        P.offsets[i + 1] = P.entries.size();
    }
    return P;
}

namespace {

// Transposed view of P so a sweep can gather per target node; keeps the
// update embarrassingly parallel and bit-reproducible across thread counts.
struct Transposed {
    std::vector<std::size_t> offsets;
    std::vector<Transition> entries;  // target field holds the source node
};

Transposed transpose(const RowStochastic& P) {
    Transposed T;
    T.offsets.assign(P.n + 1, 0);
    for (const Transition& t : P.entries) ++T.offsets[t.target + 1];
    for (std::uint32_t i = 0; i < P.n; ++i) T.offsets[i + 1] += T.offsets[i];
    T.entries.resize(P.entries.size());
    std::vector<std::size_t> cursor(T.offsets.begin(), T.offsets.end() - 1);
    for (std::uint32_t i = 0; i < P.n; ++i)
        for (const Transition& t : P.row(i)) T.entries[cursor[t.target]++] = {i, t.prob};
    return T;
}

}  // namespace

StationaryDistribution stationary_distribution(const RowStochastic& P, double alpha, double tol,
                                               int max_iter) {
    if (P.n == 0) throw std::invalid_argument("stationary_distribution: empty chain");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("stationary_distribution: alpha must be in (0,1)");
    if (!(tol > 0.0)) throw std::invalid_argument("stationary_distribution: tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("stationary_distribution: max_iter must be >= 1");

    const std::uint32_t n = P.n;
    const double uniform = 1.0 / static_cast<double>(n);
    Transposed T = transpose(P);

    StationaryDistribution result;
    result.alpha = alpha;
    result.pi.assign(n, uniform);
    std::vector<double> next(n, 0.0);

    for (int iter = 1; iter <= max_iter; ++iter) {
        double dangling_mass = 0.0;
        for (std::uint32_t d : P.dangling) dangling_mass += result.pi[d];
        const double base = alpha * dangling_mass * uniform + (1.0 - alpha) * uniform;

#pragma omp parallel for schedule(static)
        for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
            double acc = 0.0;
            const std::size_t begin = T.offsets[j];
            const std::size_t end = T.offsets[j + 1];
            for (std::size_t e = begin; e < end; ++e)
                acc += result.pi[T.entries[e].target] * T.entries[e].prob;
            next[static_cast<std::size_t>(j)] = alpha * acc + base;
        }

        double change = 0.0;
        for (std::uint32_t j = 0; j < n; ++j) change += std::abs(next[j] - result.pi[j]);
        result.pi.swap(next);
        result.iterations = iter;
        result.residual = change;
        if (change < tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

namespace {

double row_entropy(const RowStochastic& P, std::uint32_t i) {
    double h = 0.0;
    for (const Transition& t : P.row(i))
        if (t.prob > 0.0) h -= t.prob * std::log(t.prob);
    return h;
}

}  // namespace

double entropy_rate(const StationaryDistribution& pi, const RowStochastic& P) {
    if (pi.pi.size() != P.n) throw std::invalid_argument("entropy_rate: dimension mismatch");
    double rate = 0.0;
    for (std::uint32_t i = 0; i < P.n; ++i) rate += pi.pi[i] * row_entropy(P, i);
    return rate;
}

std::vector<double> site_entropy_rate(const StationaryDistribution& pi, const RowStochastic& P) {
    if (pi.pi.size() != P.n) throw std::invalid_argument("site_entropy_rate: dimension mismatch");
    std::vector<double> ser(P.n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(P.n); ++i)
        ser[static_cast<std::size_t>(i)] =
            pi.pi[static_cast<std::size_t>(i)] * row_entropy(P, static_cast<std::uint32_t>(i));
    return ser;
}

}  // namespace topicwalk
