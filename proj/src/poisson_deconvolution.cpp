#include "topicwalk/poisson_deconvolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace topicwalk {

namespace {

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        double y = v - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

PdProblem build_problem(const TopicSet& topics, const KnnGraph& graph) {
    if (topics.topics.empty()) throw std::invalid_argument("build_problem: empty topic set");

    PdProblem problem;
    problem.edges = symmetrize(graph);
    problem.covered.resize(topics.topics.size());
    problem.member_count.resize(topics.topics.size());
    problem.degenerate.assign(topics.topics.size(), false);

    // Inverted index node -> topics so each edge is classified in one pass.
    std::vector<std::vector<std::uint32_t>> node_topics(graph.n());
    for (std::size_t k = 0; k < topics.topics.size(); ++k) {
        problem.member_count[k] = static_cast<std::uint32_t>(topics.topics[k].members.size());
        for (std::uint32_t m : topics.topics[k].members) {
            if (m >= graph.n())
                throw std::invalid_argument("build_problem: topic member outside the graph");
            node_topics[m].push_back(static_cast<std::uint32_t>(k));
        }
    }

    for (std::uint32_t e = 0; e < problem.edges.size(); ++e) {
        const auto& ti = node_topics[problem.edges[e].i];
        const auto& tj = node_topics[problem.edges[e].j];
        std::size_t a = 0, b = 0;
        while (a < ti.size() && b < tj.size()) {
            if (ti[a] == tj[b]) {
                problem.covered[ti[a]].push_back(e);
                ++a;
                ++b;
            } else if (ti[a] < tj[b]) {
                ++a;
            } else {
                ++b;
            }
        }
    }
    for (std::size_t k = 0; k < problem.covered.size(); ++k)
        problem.degenerate[k] = problem.covered[k].empty();
    return problem;
}

double poisson_loglik(const PdProblem& problem, std::span<const double> mu) {
    if (mu.size() != problem.topic_count())
        throw std::invalid_argument("poisson_loglik: weight count mismatch");

    std::vector<double> rate(problem.edges.size(), 0.0);
    std::vector<bool> in_model(problem.edges.size(), false);
    for (std::size_t k = 0; k < problem.covered.size(); ++k)
        for (std::uint32_t e : problem.covered[k]) {
            rate[e] += mu[k];
            in_model[e] = true;
        }

    KahanSum loglik;
    for (std::size_t e = 0; e < problem.edges.size(); ++e) {
        if (!in_model[e]) continue;
        const double a = problem.edges[e].weight;
        if (rate[e] <= 0.0) {
            if (a > 0.0) return -std::numeric_limits<double>::infinity();
            continue;
        }
        loglik.add(a * std::log(rate[e]) - rate[e]);
    }
    return loglik.sum;
}

PdResult fit_weights(const PdProblem& problem, int max_iter, double tol) {
    if (max_iter < 1) throw std::invalid_argument("fit_weights: max_iter must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("fit_weights: tol must be > 0");
    const std::uint32_t K = problem.topic_count();
    bool any_active = false;
    for (std::uint32_t k = 0; k < K; ++k)
        if (!problem.degenerate[k]) any_active = true;
    if (!any_active) throw std::invalid_argument("fit_weights: all topics are degenerate");

    PdResult result;
    result.mu.assign(K, 0.0);
    for (std::uint32_t k = 0; k < K; ++k)
        if (!problem.degenerate[k]) result.mu[k] = 1.0 / static_cast<double>(K);

    std::vector<bool> in_model(problem.edges.size(), false);
    for (std::uint32_t k = 0; k < K; ++k)
        for (std::uint32_t e : problem.covered[k]) in_model[e] = true;

    std::vector<double> rate(problem.edges.size(), 0.0);
    auto refresh_rates = [&]() {
        std::fill(rate.begin(), rate.end(), 0.0);
        for (std::uint32_t k = 0; k < K; ++k)
            if (!problem.degenerate[k])
                for (std::uint32_t e : problem.covered[k]) rate[e] += result.mu[k];
    };
    auto current_loglik = [&]() {
        KahanSum loglik;
        for (std::size_t e = 0; e < problem.edges.size(); ++e) {
            if (!in_model[e]) continue;
            const double a = problem.edges[e].weight;
            if (rate[e] <= 0.0) {
                if (a > 0.0) return -std::numeric_limits<double>::infinity();
                continue;
            }
            loglik.add(a * std::log(rate[e]) - rate[e]);
        }
        return loglik.sum;
    };

    refresh_rates();
    result.loglik_trace.push_back(current_loglik());

    std::vector<double> mu_next(K, 0.0);
    for (int iter = 1; iter <= max_iter; ++iter) {
#pragma omp parallel for schedule(dynamic, 8)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(K); ++k) {
            if (problem.degenerate[static_cast<std::size_t>(k)]) {
                mu_next[static_cast<std::size_t>(k)] = 0.0;
                continue;
            }
            const auto& edges = problem.covered[static_cast<std::size_t>(k)];
            KahanSum ratio;
            for (std::uint32_t e : edges)
                if (rate[e] > 0.0) ratio.add(problem.edges[e].weight / rate[e]);
            mu_next[static_cast<std::size_t>(k)] =
                result.mu[static_cast<std::size_t>(k)] * ratio.sum /
                static_cast<double>(edges.size());
        }
        result.mu.swap(mu_next);
        refresh_rates();

        const double loglik = current_loglik();
        const double prev = result.loglik_trace.back();
        result.loglik_trace.push_back(loglik);
        result.iterations = iter;
        if (std::isfinite(loglik) && std::abs(loglik - prev) <= tol * (1.0 + std::abs(prev))) {
            result.converged = true;
            break;
        }
    }

    result.interestingness.resize(K);
    for (std::uint32_t k = 0; k < K; ++k)
        result.interestingness[k] = result.mu[k] * static_cast<double>(problem.member_count[k]);
    result.ranking.resize(K);
    for (std::uint32_t k = 0; k < K; ++k) result.ranking[k] = k;
    std::stable_sort(result.ranking.begin(), result.ranking.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                         if (result.interestingness[a] != result.interestingness[b])
                             return result.interestingness[a] > result.interestingness[b];
                         return a < b;
                     });
    return result;
}

std::vector<RankedTopic> interestingness(const PdResult& result, const TopicSet& topics) {
    if (result.mu.size() != topics.topics.size())
        throw std::invalid_argument("interestingness: result/topics mismatch");
    std::vector<RankedTopic> ranked(result.mu.size());
    for (std::size_t k = 0; k < result.mu.size(); ++k)
        ranked[k] = {static_cast<std::uint32_t>(k),
                     result.mu[k] * static_cast<double>(topics.topics[k].members.size())};
    std::stable_sort(ranked.begin(), ranked.end(), [](const RankedTopic& a, const RankedTopic& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.topic < b.topic;
    });
    return ranked;
}

}  // namespace topicwalk
