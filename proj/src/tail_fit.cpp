#include "topicwalk/tail_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace topicwalk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFloor = -1e300;  // stands in for -inf inside the optimizers

struct SampleStats {
    std::size_t n;
    double sum_log;     // sum ln x
    double sum_sq;      // sum x^2
    double min, max;
};

SampleStats stats_of(std::span<const double> x) {
    SampleStats s{x.size(), 0.0, 0.0, x[0], x[0]};
    for (double v : x) {
        s.sum_log += std::log(v);
        s.sum_sq += v * v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    return s;
}

void require_samples(std::span<const double> x) {
    if (x.size() < 5) throw std::invalid_argument("fit_mle: need at least 5 samples");
    for (double v : x)
        if (!(v > 0.0)) throw std::invalid_argument("fit_mle: samples must be positive");
}

// ---- Weibull (shape constrained below 1), lambda profiled out ------------

double weibull_profile_loglik(std::span<const double> x, const SampleStats& s, double k,
                              double* lambda_out) {
    double sum_pow = 0.0;
    for (double v : x) sum_pow += std::exp(k * std::log(v));
    const double n = static_cast<double>(s.n);
    const double log_lambda = std::log(sum_pow / n) / k;
    if (lambda_out) *lambda_out = std::exp(log_lambda);
    double ll = n * std::log(k) + (k - 1.0) * s.sum_log - n * k * log_lambda - n;
    return std::isfinite(ll) ? ll : kFloor;
}

// Golden-section maximization of a unimodal bracket.
template <typename F>
double golden_max(F&& f, double lo, double hi, double tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? c : d;
}

FitResult fit_weibull(std::span<const double> x, const SampleStats& s) {
    const double k_lo = 1e-4, k_hi = 1.0 - 1e-9;
    auto objective = [&](double k) { return weibull_profile_loglik(x, s, k, nullptr); };

    // Coarse scan to pick a bracket, then golden-section refinement.
    const int scan = 64;
    double best_k = k_lo, best_ll = -kInf;
    for (int i = 0; i < scan; ++i) {
        double k = k_lo + (k_hi - k_lo) * (static_cast<double>(i) + 0.5) / scan;
        double ll = objective(k);
        if (ll > best_ll) {
            best_ll = ll;
            best_k = k;
        }
    }
    const double step = (k_hi - k_lo) / scan;
    double k_hat = golden_max(objective, std::max(k_lo, best_k - step),
                              std::min(k_hi, best_k + step), 1e-6 * step);
    double lambda = 0.0;
    double ll = weibull_profile_loglik(x, s, k_hat, &lambda);

    FitResult fit;
    fit.family = TailFamily::weibull;
    fit.params = {{"k", k_hat}, {"lambda", lambda}};
    fit.loglik = ll;
    fit.aic = 2.0 * 2 - 2.0 * ll;
    return fit;
}

// ---- Exponentiated Weibull (alpha >= 1), alpha profiled out --------------

double expw_loglik(std::span<const double> x, double alpha, double k, double log_lambda) {
    double ll = 0.0;
    const double log_k = std::log(k), log_alpha = std::log(alpha);
    for (double v : x) {
        const double t = k * (std::log(v) - log_lambda);
        if (t > 700.0) return kFloor;  // z overflows; density is effectively 0
        const double z = std::exp(t);
        const double one_minus = -std::expm1(-z);  // 1 - exp(-z), stable
        if (one_minus <= 0.0) return kFloor;
        double term = log_alpha + log_k - log_lambda + (k - 1.0) * (std::log(v) - log_lambda) - z;
        if (alpha != 1.0) term += (alpha - 1.0) * std::log(one_minus);
        ll += term;
    }
    return std::isfinite(ll) ? ll : kFloor;
}

double expw_profile_alpha(std::span<const double> x, double k, double log_lambda) {
    double sum_log_u = 0.0;
    for (double v : x) {
        const double t = k * (std::log(v) - log_lambda);
        if (t > 700.0) return 1.0;
        const double z = std::exp(t);
        const double one_minus = -std::expm1(-z);
        if (one_minus <= 0.0) return 1.0;
        sum_log_u += std::log(one_minus);
    }
    if (sum_log_u >= 0.0) return 1.0;
    const double alpha = -static_cast<double>(x.size()) / sum_log_u;
    return std::clamp(alpha, 1.0, 1e6);
}

// Nelder-Mead over (ln k, ln lambda) with box projection.
struct Point2 {
    double a, b;
};

template <typename F>
Point2 nelder_mead_2d(F&& f, Point2 start, double scale, double tol, int max_iter) {
    Point2 simplex[3] = {start, {start.a + scale, start.b}, {start.a, start.b + scale}};
    double value[3] = {f(simplex[0]), f(simplex[1]), f(simplex[2])};

    for (int it = 0; it < max_iter; ++it) {
        int order[3] = {0, 1, 2};
        std::sort(order, order + 3, [&](int i, int j) { return value[i] > value[j]; });
        const int best = order[0], mid = order[1], worst = order[2];
        if (std::abs(value[best] - value[worst]) <=
            tol * (1.0 + std::abs(value[best])))
            break;

        Point2 centroid{(simplex[best].a + simplex[mid].a) / 2.0,
                        (simplex[best].b + simplex[mid].b) / 2.0};
        auto blend = [&](double coef) {
            return Point2{centroid.a + coef * (centroid.a - simplex[worst].a),
                          centroid.b + coef * (centroid.b - simplex[worst].b)};
        };

        Point2 reflected = blend(1.0);
        double fr = f(reflected);
        if (fr > value[best]) {
            Point2 expanded = blend(2.0);
            double fe = f(expanded);
            if (fe > fr) {
                simplex[worst] = expanded;
                value[worst] = fe;
            } else {
                simplex[worst] = reflected;
                value[worst] = fr;
            }
        } else if (fr > value[mid]) {
            simplex[worst] = reflected;
            value[worst] = fr;
        } else {
            Point2 contracted = blend(-0.5);
            double fc = f(contracted);
            if (fc > value[worst]) {
                simplex[worst] = contracted;
                value[worst] = fc;
            } else {
                for (int i : {mid, worst}) {
                    simplex[i] = {(simplex[i].a + simplex[best].a) / 2.0,
                                  (simplex[i].b + simplex[best].b) / 2.0};
                    value[i] = f(simplex[i]);
                }
            }
        }
    }
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (value[i] > value[best]) best = i;
    return simplex[best];
}

FitResult fit_expw(std::span<const double> x, const SampleStats& s) {
    const double log_k_lo = std::log(0.05), log_k_hi = std::log(20.0);
    const double log_l_lo = std::log(s.max) - 7.0, log_l_hi = std::log(s.max) + 7.0;

    auto objective = [&](Point2 p) {
        const double log_k = std::clamp(p.a, log_k_lo, log_k_hi);
        const double log_l = std::clamp(p.b, log_l_lo, log_l_hi);
        const double k = std::exp(log_k);
        const double alpha = expw_profile_alpha(x, k, log_l);
        return expw_loglik(x, alpha, k, log_l);
    };

    // 3x3 grid of deterministic restarts across the box.
    Point2 best{0.0, 0.0};
    double best_ll = -kInf;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Point2 start{log_k_lo + (log_k_hi - log_k_lo) * (i + 0.5) / 3.0,
                         log_l_lo + (log_l_hi - log_l_lo) * (j + 0.5) / 3.0};
            Point2 candidate = nelder_mead_2d(objective, start, 0.5, 1e-8, 400);
            double ll = objective(candidate);
            if (ll > best_ll) {
                best_ll = ll;
                best = candidate;
            }
        }

    const double k = std::exp(std::clamp(best.a, log_k_lo, log_k_hi));
    const double log_l = std::clamp(best.b, log_l_lo, log_l_hi);
    const double alpha = expw_profile_alpha(x, k, log_l);

    FitResult fit;
    fit.family = TailFamily::exponentiated_weibull;
    fit.params = {{"alpha", alpha}, {"k", k}, {"lambda", std::exp(log_l)}};
    fit.loglik = expw_loglik(x, alpha, k, log_l);
    fit.aic = 2.0 * 3 - 2.0 * fit.loglik;
    return fit;
}

// ---- Closed forms ---------------------------------------------------------

FitResult fit_rayleigh(const SampleStats& s) {
    const double n = static_cast<double>(s.n);
    const double sigma_sq = s.sum_sq / (2.0 * n);
    const double sigma = std::sqrt(sigma_sq);
    FitResult fit;
    fit.family = TailFamily::rayleigh;
    fit.params = {{"sigma", sigma}};
    fit.loglik = s.sum_log - n * std::log(sigma_sq) - s.sum_sq / (2.0 * sigma_sq);
    fit.aic = 2.0 * 1 - 2.0 * fit.loglik;
    return fit;
}

FitResult fit_lognormal(std::span<const double> x, const SampleStats& s) {
    const double n = static_cast<double>(s.n);
    const double mu = s.sum_log / n;
    double var = 0.0;
    for (double v : x) {
        const double d = std::log(v) - mu;
        var += d * d;
    }
    var /= n;
    const double sigma = std::sqrt(var);

    FitResult fit;
    fit.family = TailFamily::lognormal;
    fit.params = {{"mu", mu}, {"sigma", sigma}};
    if (sigma < 1e-12) {
        fit.degenerate = true;
        fit.loglik = kInf;
        fit.aic = -kInf;
        return fit;
    }
    fit.loglik = -s.sum_log - n * std::log(sigma) - n * 0.5 * std::log(2.0 * M_PI) - 0.5 * n;
    fit.aic = 2.0 * 2 - 2.0 * fit.loglik;
    return fit;
}

FitResult fit_pareto(const SampleStats& s, TailFamily family) {
    const double n = static_cast<double>(s.n);
    const double a = s.min;
    const double denom = s.sum_log - n * std::log(a);  // sum ln(x/a)

    FitResult fit;
    fit.family = family;
    if (denom < 1e-12 * n) {
        fit.params = {{"a", a}, {"alpha", kInf}};
        fit.degenerate = true;
        fit.loglik = kInf;
        fit.aic = -kInf;
        return fit;
    }
    const double alpha = n / denom;
    fit.params = {{"a", a}, {"alpha", alpha}};
    fit.loglik = n * std::log(alpha) + alpha * n * std::log(a) - (alpha + 1.0) * s.sum_log;
    fit.aic = 2.0 * 1 - 2.0 * fit.loglik;
    return fit;
}

}  // namespace

const char* family_name(TailFamily family) {
    switch (family) {
        case TailFamily::exponentiated_weibull: return "exponentiated-weibull";
        case TailFamily::rayleigh: return "rayleigh";
        case TailFamily::weibull: return "weibull";
        case TailFamily::lognormal: return "lognormal";
        case TailFamily::power_law: return "power-law";
        case TailFamily::pareto: return "pareto";
    }
    return "?";
}

SimilaritySpectrum spectrum(const Topic& topic, const KnnGraph& graph, std::uint32_t topic_id) {
    SimilaritySpectrum spec;
    spec.topic_id = topic_id;
    auto is_member = [&](std::uint32_t v) {
        return std::binary_search(topic.members.begin(), topic.members.end(), v);
    };
    for (std::uint32_t m : topic.members) {
        for (const KnnEdge& e : graph.out_edges(m))
            (is_member(e.target) ? spec.values : spec.inter_values).push_back(e.affinity);
        for (const KnnEdge& e : graph.in_edges(m))
            if (!is_member(e.target)) spec.inter_values.push_back(e.affinity);
    }
    std::sort(spec.values.begin(), spec.values.end(), std::greater<>());
    std::sort(spec.inter_values.begin(), spec.inter_values.end(), std::greater<>());
    return spec;
}

FitResult fit_mle(std::span<const double> samples, TailFamily family) {
    require_samples(samples);
    const SampleStats s = stats_of(samples);
    switch (family) {
        case TailFamily::rayleigh: return fit_rayleigh(s);
        case TailFamily::lognormal: return fit_lognormal(samples, s);
        case TailFamily::pareto: return fit_pareto(s, TailFamily::pareto);
        case TailFamily::power_law: return fit_pareto(s, TailFamily::power_law);
        case TailFamily::weibull: return fit_weibull(samples, s);
        case TailFamily::exponentiated_weibull: return fit_expw(samples, s);
    }
    throw std::invalid_argument("fit_mle: unknown family");
}

std::vector<double> akaike_weights(std::span<const double> aics) {
    if (aics.empty()) throw std::invalid_argument("akaike_weights: no AIC values");
    for (double a : aics)
        if (!std::isfinite(a)) throw std::invalid_argument("akaike_weights: AIC must be finite");
    const double min_aic = *std::min_element(aics.begin(), aics.end());
    std::vector<double> weights(aics.size());
    double total = 0.0;
    for (std::size_t i = 0; i < aics.size(); ++i) {
        weights[i] = std::exp(-(aics[i] - min_aic) / 2.0);
        total += weights[i];
    }
    for (double& w : weights) w /= total;
    return weights;
}

BestFit best_fit(std::span<const double> samples) {
    require_samples(samples);
    static constexpr TailFamily kFamilies[] = {
        TailFamily::exponentiated_weibull, TailFamily::rayleigh,  TailFamily::weibull,
        TailFamily::lognormal,             TailFamily::power_law, TailFamily::pareto,
    };

    BestFit result;
    std::vector<FitResult> feasible;
    for (TailFamily family : kFamilies) {
        FitResult fit = fit_mle(samples, family);
        if (fit.degenerate || !std::isfinite(fit.aic)) {
            result.excluded.emplace_back(family, "degenerate likelihood on this sample");
        } else {
            feasible.push_back(std::move(fit));
        }
    }
    result.low_confidence = feasible.size() < 2;
    if (feasible.empty()) return result;

    std::vector<double> aics(feasible.size());
    for (std::size_t i = 0; i < feasible.size(); ++i) aics[i] = feasible[i].aic;
    const std::vector<double> weights = akaike_weights(aics);
    for (std::size_t i = 0; i < feasible.size(); ++i) feasible[i].akaike_weight = weights[i];

    std::stable_sort(feasible.begin(), feasible.end(), [](const FitResult& a, const FitResult& b) {
        return a.akaike_weight > b.akaike_weight;
    });
    result.ranked = std::move(feasible);
    return result;
}

}  // namespace topicwalk
