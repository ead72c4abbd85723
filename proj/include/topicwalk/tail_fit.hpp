#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "topicwalk/knn_graph.hpp"
#include "topicwalk/topic_growth.hpp"

namespace topicwalk {

enum class TailFamily {
    exponentiated_weibull,
    rayleigh,
    weibull,
    lognormal,
    power_law,
    pareto,
};

const char* family_name(TailFamily family);

struct FitResult {
    TailFamily family;
    std::vector<std::pair<std::string, double>> params;
    double loglik = 0.0;
    double aic = 0.0;
    double akaike_weight = 0.0;
    // Set when the likelihood is unbounded on this sample (e.g. lognormal
    // with zero log-variance); such fits are excluded from model comparison.
    bool degenerate = false;
};

// Affinity values touching a topic: intra when both endpoints are members,
// inter when exactly one is. Both sorted descending.
struct SimilaritySpectrum {
    std::uint32_t topic_id = 0;
    std::vector<double> values;
    std::vector<double> inter_values;
};

SimilaritySpectrum spectrum(const Topic& topic, const KnnGraph& graph, std::uint32_t topic_id = 0);

// Maximum-likelihood fit of one family. Closed forms where they exist
// (Rayleigh, lognormal, Pareto/power law); bounded derivative-free search
// with multiple starts otherwise.
FitResult fit_mle(std::span<const double> samples, TailFamily family);

// w_i = exp(-(AIC_i - AIC_min)/2), normalized to sum to one.
std::vector<double> akaike_weights(std::span<const double> aics);

struct BestFit {
    std::vector<FitResult> ranked;  // feasible fits, best Akaike weight first
    std::vector<std::pair<TailFamily, std::string>> excluded;
    bool low_confidence = false;  // fewer than two feasible families
};

// Fits every family, assigns joint Akaike weights, and ranks the results.
BestFit best_fit(std::span<const double> samples);

}  // namespace topicwalk
