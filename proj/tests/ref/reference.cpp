#include "reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace topicwalk::ref {

std::vector<std::vector<KnnEdge>> brute_force_knn(std::span<const SparseVector> vectors, int k) {
    const std::size_t n = vectors.size();
    std::vector<std::vector<double>> sims(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) sims[i][j] = similarity(vectors[i], vectors[j]);

    std::vector<std::vector<KnnEdge>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<KnnEdge> all;
        for (std::size_t j = 0; j < n; ++j)
            if (sims[i][j] > 0.0) all.push_back({static_cast<std::uint32_t>(j), sims[i][j]});
        std::sort(all.begin(), all.end(), [](const KnnEdge& a, const KnnEdge& b) {
            if (a.affinity != b.affinity) return a.affinity > b.affinity;
            return a.target < b.target;
        });
        if (all.size() > static_cast<std::size_t>(k)) all.resize(static_cast<std::size_t>(k));
        rows[i] = std::move(all);
    }
    return rows;
}

namespace {

// Dense row-stochastic matrix with dangling rows replaced by uniform rows.
std::vector<std::vector<double>> dense_chain(const KnnGraph& graph) {
    const std::size_t n = graph.n();
    std::vector<std::vector<double>> M(n, std::vector<double>(n, 0.0));
    for (std::uint32_t i = 0; i < n; ++i) {
        double degree = 0.0;
        for (const KnnEdge& e : graph.out_edges(i)) degree += e.affinity;
        if (degree <= 0.0) {
            for (std::size_t j = 0; j < n; ++j) M[i][j] = 1.0 / static_cast<double>(n);
        } else {
            for (const KnnEdge& e : graph.out_edges(i)) M[i][e.target] = e.affinity / degree;
        }
    }
    return M;
}

}  // namespace

std::vector<double> pagerank_dense_solve(const KnnGraph& graph, double alpha) {
    const std::size_t n = graph.n();
    const auto M = dense_chain(graph);

    // (I - alpha * M^T) pi = (1 - alpha) / n
    std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, (1.0 - alpha) / static_cast<double>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) A[r][c] = (r == c ? 1.0 : 0.0) - alpha * M[c][r];

    // Gaussian elimination with partial pivoting.
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
        std::swap(A[col], A[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = A[r][col] / A[col][col];
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) A[r][c] -= factor * A[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> pi(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double acc = b[r];
        for (std::size_t c = r + 1; c < n; ++c) acc -= A[r][c] * pi[c];
        pi[r] = acc / A[r][r];
    }
    return pi;
}

std::vector<double> pagerank_power_serial(const KnnGraph& graph, double alpha, double tol,
                                          int max_iter) {
    const std::size_t n = graph.n();
    std::vector<double> degree(n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i)
        for (const KnnEdge& e : graph.out_edges(i)) degree[i] += e.affinity;

    std::vector<double> pi(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    for (int iter = 0; iter < max_iter; ++iter) {
        double dangling = 0.0;
        for (std::uint32_t i = 0; i < n; ++i)
            if (degree[i] <= 0.0) dangling += pi[i];
        const double base =
            (alpha * dangling + (1.0 - alpha)) / static_cast<double>(n);
        std::fill(next.begin(), next.end(), base);
        for (std::uint32_t i = 0; i < n; ++i) {
            if (degree[i] <= 0.0) continue;
            const double share = alpha * pi[i] / degree[i];
            for (const KnnEdge& e : graph.out_edges(i)) next[e.target] += share * e.affinity;
        }
        double change = 0.0;
        for (std::size_t j = 0; j < n; ++j) change += std::abs(next[j] - pi[j]);
        pi.swap(next);
        if (change < tol) break;
    }
    return pi;
}

std::vector<std::uint32_t> select_seeds_replay(const KnnGraph& graph, std::span<const double> ser,
                                               int d) {
    std::vector<std::uint32_t> order(graph.n());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (ser[a] != ser[b]) return ser[a] > ser[b];
        return a < b;
    });

    std::vector<std::uint32_t> seeds;
    std::set<std::uint32_t> visited;
    for (std::uint32_t x : order) {
        if (visited.count(x)) continue;
        std::vector<std::uint32_t> cover;
        auto edges = graph.out_edges(x);
        for (std::size_t e = 0; e < std::min<std::size_t>(edges.size(), d); ++e)
            cover.push_back(edges[e].target);
        bool free = true;
        for (std::uint32_t c : cover)
            if (visited.count(c)) free = false;
        if (!free) continue;
        seeds.push_back(x);
        visited.insert(x);
        for (std::uint32_t c : cover) visited.insert(c);
    }
    return seeds;
}

namespace {

double naive_avg_internal(const std::set<std::uint32_t>& members, const KnnGraph& graph) {
    if (members.size() == 1) return 1.0;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::uint32_t a : members)
        for (std::uint32_t b : members) {
            if (a == b) continue;
            const double w = graph.affinity(a, b);
            if (w > 0.0) {
                sum += w;
                ++count;
            }
        }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

struct ReplayTopic {
    std::set<std::uint32_t> members;
    std::uint32_t seed;
    int th_tenths = 10;
};

Topic replay_emit(const ReplayTopic& t, int d, bool is_final) {
    Topic topic;
    topic.members.assign(t.members.begin(), t.members.end());
    topic.seed = t.seed;
    topic.granularity_d = d;
    topic.threshold = static_cast<double>(t.th_tenths) / 10.0;
    topic.is_final = is_final;
    return topic;
}

}  // namespace

TopicSet grow_topics_replay(const KnnGraph& graph, const SeedSelection& selection, int topK) {
    std::vector<ReplayTopic> live;
    std::set<std::uint32_t> seed_set(selection.seeds.begin(), selection.seeds.end());
    for (std::uint32_t s : selection.seeds) live.push_back({{s}, s});

    TopicSet out;
    for (std::uint32_t x : selection.sorted_order) {
        if (seed_set.count(x)) continue;

        std::vector<std::pair<double, std::size_t>> scores;
        for (std::size_t t = 0; t < live.size(); ++t) {
            const double internal = naive_avg_internal(live[t].members, graph);
            if (internal <= 0.0) continue;
            double num = 0.0;
            for (std::uint32_t m : live[t].members)
                num += graph.affinity(m, x) + graph.affinity(x, m);
            const double score =
                (num / static_cast<double>(live[t].members.size())) / internal;
            if (score > 0.0) scores.emplace_back(score, t);
        }
        std::sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        if (scores.size() > static_cast<std::size_t>(topK))
            scores.resize(static_cast<std::size_t>(topK));

        for (const auto& [score, t] : scores) {
            ReplayTopic& topic = live[t];
            std::set<std::uint32_t> with_x = topic.members;
            with_x.insert(x);
            const double avg = naive_avg_internal(with_x, graph);
            const double th = static_cast<double>(topic.th_tenths) / 10.0;
            bool absorb = true;
            if (avg < th) {
                const int floored = static_cast<int>(std::floor(avg * 10.0 + 1e-9));
                const int clamped = std::max(1, floored);
                if (clamped < topic.th_tenths) {
                    if (topic.members.size() >= 2)
                        out.topics.push_back(replay_emit(topic, selection.d, false));
                    topic.th_tenths = clamped;
                }
                absorb = floored >= 1;
            }
            if (absorb) topic.members = std::move(with_x);
        }
    }
    for (const ReplayTopic& topic : live)
        if (topic.members.size() >= 2) out.topics.push_back(replay_emit(topic, selection.d, true));
    return out;
}

GridSearchResult pd_grid_search(const PdProblem& problem, int points_per_axis, int zoom_rounds) {
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < problem.covered.size(); ++k)
        if (!problem.degenerate[k]) active.push_back(k);
    if (active.empty() || active.size() > 2)
        throw std::invalid_argument("pd_grid_search: supports 1 or 2 active topics");

    double max_weight = 0.0;
    for (const SymEdge& e : problem.edges) max_weight = std::max(max_weight, e.weight);

    std::vector<double> mu(problem.covered.size(), 0.0);
    auto eval = [&](double m0, double m1) {
        mu[active[0]] = m0;
        if (active.size() == 2) mu[active[1]] = m1;
        return poisson_loglik(problem, mu);
    };

    double lo0 = 0.0, hi0 = 1.05 * max_weight;
    double lo1 = 0.0, hi1 = 1.05 * max_weight;
    double best0 = 0.0, best1 = 0.0, best_ll = -std::numeric_limits<double>::infinity();

    for (int round = 0; round < zoom_rounds; ++round) {
        const double step0 = (hi0 - lo0) / points_per_axis;
        const double step1 = (hi1 - lo1) / points_per_axis;
        for (int i = 0; i <= points_per_axis; ++i) {
            const double m0 = lo0 + step0 * i;
            if (active.size() == 1) {
                const double ll = eval(m0, 0.0);
                if (ll > best_ll) {
                    best_ll = ll;
                    best0 = m0;
                }
            } else {
                for (int j = 0; j <= points_per_axis; ++j) {
                    const double m1 = lo1 + step1 * j;
                    const double ll = eval(m0, m1);
                    if (ll > best_ll) {
                        best_ll = ll;
                        best0 = m0;
                        best1 = m1;
                    }
                }
            }
        }
        lo0 = std::max(0.0, best0 - 1.5 * step0);
        hi0 = best0 + 1.5 * step0;
        lo1 = std::max(0.0, best1 - 1.5 * step1);
        hi1 = best1 + 1.5 * step1;
    }

    GridSearchResult result;
    result.mu.assign(problem.covered.size(), 0.0);
    result.mu[active[0]] = best0;
    if (active.size() == 2) result.mu[active[1]] = best1;
    result.loglik = best_ll;
    return result;
}

std::vector<double> pd_fit_serial(const PdProblem& problem, int max_iter, double tol) {
    const std::size_t K = problem.covered.size();
    std::vector<double> mu(K, 0.0);
    for (std::size_t k = 0; k < K; ++k)
        if (!problem.degenerate[k]) mu[k] = 1.0 / static_cast<double>(K);

    double prev = poisson_loglik(problem, mu);
    std::vector<double> rate(problem.edges.size(), 0.0);
    for (int iter = 0; iter < max_iter; ++iter) {
        std::fill(rate.begin(), rate.end(), 0.0);
        for (std::size_t k = 0; k < K; ++k)
            for (std::uint32_t e : problem.covered[k]) rate[e] += mu[k];
        std::vector<double> next(K, 0.0);
        for (std::size_t k = 0; k < K; ++k) {
            if (problem.degenerate[k]) continue;
            double ratio = 0.0;
            for (std::uint32_t e : problem.covered[k])
                if (rate[e] > 0.0) ratio += problem.edges[e].weight / rate[e];
            next[k] = mu[k] * ratio / static_cast<double>(problem.covered[k].size());
        }
        mu.swap(next);
        const double ll = poisson_loglik(problem, mu);
        if (std::isfinite(ll) && std::abs(ll - prev) <= tol * (1.0 + std::abs(prev))) break;
        prev = ll;
    }
    return mu;
}

namespace {

std::size_t hash_intersection(const std::vector<std::uint32_t>& a,
                              const std::vector<std::uint32_t>& b) {
    std::unordered_set<std::uint32_t> set(a.begin(), a.end());
    std::size_t count = 0;
    for (std::uint32_t v : b)
        if (set.count(v)) ++count;
    return count;
}

}  // namespace

double f1_brute(const std::vector<std::uint32_t>& dt, const std::vector<std::uint32_t>& gt) {
    if (dt.empty()) return 0.0;
    const std::size_t common = hash_intersection(dt, gt);
    if (common == 0) return 0.0;
    const double precision = static_cast<double>(common) / static_cast<double>(dt.size());
    const double recall = static_cast<double>(common) / static_cast<double>(gt.size());
    return 2.0 * precision * recall / (precision + recall);
}

double nir_brute(const std::vector<std::uint32_t>& dt, const std::vector<std::uint32_t>& gt) {
    const std::size_t common = hash_intersection(dt, gt);
    return static_cast<double>(common) /
           static_cast<double>(dt.size() + gt.size() - common);
}

double top10_f1_brute(const std::vector<std::vector<std::uint32_t>>& ranked,
                      const GroundTruth& gts, std::size_t ndt) {
    std::vector<double> best;
    for (const auto& gt : gts.topics) {
        double b = 0.0;
        for (std::size_t r = 0; r < ndt; ++r) b = std::max(b, f1_brute(ranked[r], gt));
        best.push_back(b);
    }
    std::sort(best.rbegin(), best.rend());
    const std::size_t take = std::min<std::size_t>(10, best.size());
    if (take == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < take; ++i) sum += best[i];
    return sum / static_cast<double>(take);
}

std::vector<CurvePoint> accuracy_fppt_brute(const std::vector<std::vector<std::uint32_t>>& ranked,
                                            const GroundTruth& gts, double threshold) {
    std::vector<CurvePoint> curve;
    std::set<std::size_t> available;
    for (std::size_t g = 0; g < gts.topics.size(); ++g) available.insert(g);
    std::size_t successes = 0, false_positives = 0;
    for (const auto& dt : ranked) {
        double best = 0.0;
        std::size_t best_gt = gts.topics.size();
        for (std::size_t g : available) {
            const double score = nir_brute(dt, gts.topics[g]);
            if (score > best) {
                best = score;
                best_gt = g;
            }
        }
        if (best_gt != gts.topics.size() && best >= threshold) {
            available.erase(best_gt);
            ++successes;
        } else {
            ++false_positives;
        }
        curve.push_back({static_cast<double>(false_positives) /
                             static_cast<double>(std::max<std::size_t>(1, successes)),
                         static_cast<double>(successes) /
                             static_cast<double>(gts.topics.size())});
    }
    return curve;
}

double weibull_grid_scan(std::span<const double> samples, int points) {
    const double k_lo = 1e-4, k_hi = 1.0 - 1e-9;
    const double n = static_cast<double>(samples.size());
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; ++i) {
        const double k = k_lo + (k_hi - k_lo) * (i + 0.5) / points;
        double sum_pow = 0.0;
        for (double x : samples) sum_pow += std::pow(x, k);
        const double lambda = std::pow(sum_pow / n, 1.0 / k);
        double ll = 0.0;
        for (double x : samples)
            ll += std::log(k / lambda) + (k - 1.0) * std::log(x / lambda) -
                  std::pow(x / lambda, k);
        best = std::max(best, ll);
    }
    return best;
}

TailFamily top_family_excluding_expw(const BestFit& best) {
    for (const FitResult& fit : best.ranked)
        if (fit.family != TailFamily::exponentiated_weibull) return fit.family;
    return TailFamily::exponentiated_weibull;
}

double expw_grid_scan(std::span<const double> samples, int points_per_axis) {
    double max_x = 0.0;
    for (double x : samples) max_x = std::max(max_x, x);
    const double log_k_lo = std::log(0.05), log_k_hi = std::log(20.0);
    const double log_l_lo = std::log(max_x) - 7.0, log_l_hi = std::log(max_x) + 7.0;
    const double n = static_cast<double>(samples.size());

    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < points_per_axis; ++i)
        for (int j = 0; j < points_per_axis; ++j) {
            const double k = std::exp(log_k_lo + (log_k_hi - log_k_lo) * (i + 0.5) / points_per_axis);
            const double lambda =
                std::exp(log_l_lo + (log_l_hi - log_l_lo) * (j + 0.5) / points_per_axis);

            double sum_log_u = 0.0;
            bool ok = true;
            for (double x : samples) {
                const double z = std::pow(x / lambda, k);
                const double u = -std::expm1(-z);
                if (!(u > 0.0)) {
                    ok = false;
                    break;
                }
                sum_log_u += std::log(u);
            }
            if (!ok) continue;
            const double alpha = std::clamp(-n / sum_log_u, 1.0, 1e6);

            double ll = 0.0;
            for (double x : samples) {
                const double z = std::pow(x / lambda, k);
                const double u = -std::expm1(-z);
                double term = std::log(alpha * k / lambda) + (k - 1.0) * std::log(x / lambda) - z;
                if (alpha != 1.0) term += (alpha - 1.0) * std::log(u);
                ll += term;
            }
            if (std::isfinite(ll)) best = std::max(best, ll);
        }
    return best;
}

}  // namespace topicwalk::ref
