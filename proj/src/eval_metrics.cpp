#include "topicwalk/eval_metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace topicwalk {

namespace {

std::size_t intersection_size(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    std::size_t i = 0, j = 0, count = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++count;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return count;
}

}  // namespace

double f1(std::span<const std::uint32_t> dt, std::span<const std::uint32_t> gt) {
    if (gt.empty()) throw std::invalid_argument("f1: empty ground-truth set");
    if (dt.empty()) return 0.0;
    const std::size_t common = intersection_size(dt, gt);
    if (common == 0) return 0.0;
    const double precision = static_cast<double>(common) / static_cast<double>(dt.size());
    const double recall = static_cast<double>(common) / static_cast<double>(gt.size());
    return 2.0 * precision * recall / (precision + recall);
}

double nir(std::span<const std::uint32_t> dt, std::span<const std::uint32_t> gt) {
    if (dt.empty() && gt.empty()) throw std::invalid_argument("nir: both sets empty");
    const std::size_t common = intersection_size(dt, gt);
    const std::size_t united = dt.size() + gt.size() - common;
    return static_cast<double>(common) / static_cast<double>(united);
}

double top10_f1(const std::vector<std::vector<std::uint32_t>>& ranked, const GroundTruth& gts,
                std::size_t ndt) {
    if (ndt > ranked.size()) throw std::invalid_argument("top10_f1: ndt exceeds ranking size");
    if (gts.topics.empty()) return 0.0;

    std::vector<double> best(gts.topics.size(), 0.0);
    for (std::size_t r = 0; r < ndt; ++r)
        for (std::size_t g = 0; g < gts.topics.size(); ++g)
            best[g] = std::max(best[g], f1(ranked[r], gts.topics[g]));

    std::sort(best.begin(), best.end(), std::greater<>());
    const std::size_t take = std::min<std::size_t>(10, best.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < take; ++i) sum += best[i];
    return take == 0 ? 0.0 : sum / static_cast<double>(take);
}

std::vector<CurvePoint> accuracy_fppt_curve(const std::vector<std::vector<std::uint32_t>>& ranked,
                                            const GroundTruth& gts, double nir_threshold) {
    return evaluate(ranked, gts, nir_threshold).accuracy_fppt;
}

EvalReport evaluate(const std::vector<std::vector<std::uint32_t>>& ranked, const GroundTruth& gts,
                    double nir_threshold) {
    if (!(nir_threshold > 0.0 && nir_threshold <= 1.0))
        throw std::invalid_argument("evaluate: nir_threshold must be in (0,1]");

    EvalReport report;
    std::vector<bool> matched(gts.topics.size(), false);
    std::size_t successes = 0;

    for (std::size_t r = 0; r < ranked.size(); ++r) {
        double best_score = 0.0;
        std::size_t best_gt = gts.topics.size();
        for (std::size_t g = 0; g < gts.topics.size(); ++g) {
            if (matched[g]) continue;
            const double score = nir(ranked[r], gts.topics[g]);
            if (score > best_score) {
                best_score = score;
                best_gt = g;
            }
        }
        if (best_gt < gts.topics.size() && best_score >= nir_threshold) {
            matched[best_gt] = true;
            ++successes;
            report.successes.emplace_back(r, best_gt);
        } else {
            ++report.false_positives;
        }
        const double fppt = static_cast<double>(report.false_positives) /
                            static_cast<double>(std::max<std::size_t>(1, successes));
        const double accuracy =
            gts.topics.empty()
                ? 0.0
                : static_cast<double>(successes) / static_cast<double>(gts.topics.size());
        report.accuracy_fppt.push_back({fppt, accuracy});
    }

    // Running per-GT best F1 keeps the prefix curve linear in the ranking.
    std::vector<double> best(gts.topics.size(), 0.0);
    std::vector<double> top(gts.topics.size(), 0.0);
    report.top10_f1_by_ndt.reserve(ranked.size());
    for (std::size_t r = 0; r < ranked.size(); ++r) {
        for (std::size_t g = 0; g < gts.topics.size(); ++g)
            best[g] = std::max(best[g], f1(ranked[r], gts.topics[g]));
        top = best;
        std::sort(top.begin(), top.end(), std::greater<>());
        const std::size_t take = std::min<std::size_t>(10, top.size());
        double sum = 0.0;
        for (std::size_t i = 0; i < take; ++i) sum += top[i];
        report.top10_f1_by_ndt.emplace_back(r + 1, take == 0 ? 0.0 : sum / take);
    }
    return report;
}

double scalability(double m, double t_m, double n, double t_n) {
    if (!(m > 0.0 && n >= m)) throw std::invalid_argument("scalability: need n >= m > 0");
    if (!(t_m > 0.0 && t_n > 0.0)) throw std::invalid_argument("scalability: times must be > 0");
    return (m * t_n) / (n * t_m);
}

}  // namespace topicwalk
