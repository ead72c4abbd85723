#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace topicwalk {

// Disjoint ground-truth topics, each a sorted node-id set with >= 2 members.
struct GroundTruth {
    std::vector<std::vector<std::uint32_t>> topics;
};

// Harmonic mean of precision and recall between a detected and a true set.
double f1(std::span<const std::uint32_t> dt, std::span<const std::uint32_t> gt);

// Normalized Intersected Ratio: |DT n GT| / |DT u GT|.
double nir(std::span<const std::uint32_t> dt, std::span<const std::uint32_t> gt);

// Over the first ndt detected topics, each ground-truth topic keeps its best
// F1; the 10 largest of those scores are averaged.
double top10_f1(const std::vector<std::vector<std::uint32_t>>& ranked, const GroundTruth& gts,
                std::size_t ndt);

struct CurvePoint {
    double fppt;
    double accuracy;
};

struct EvalReport {
    std::vector<std::pair<std::size_t, double>> top10_f1_by_ndt;
    std::vector<CurvePoint> accuracy_fppt;
    std::vector<std::pair<std::size_t, std::size_t>> successes;  // (rank index, gt index)
    std::size_t false_positives = 0;
};

// Walks the ranking: a detected topic succeeds when its best NIR against a
// still-unmatched ground-truth topic reaches the threshold; each ground
// truth may be matched once. One curve point is emitted per rank.
std::vector<CurvePoint> accuracy_fppt_curve(const std::vector<std::vector<std::uint32_t>>& ranked,
                                            const GroundTruth& gts, double nir_threshold);

// Full report: the FPPT walk plus the top-10 F1 curve over every prefix.
EvalReport evaluate(const std::vector<std::vector<std::uint32_t>>& ranked, const GroundTruth& gts,
                    double nir_threshold);

// Runtime growth ratio (m * t_n) / (n * t_m); 1 means linear scaling.
double scalability(double m, double t_m, double n, double t_n);

}  // namespace topicwalk
