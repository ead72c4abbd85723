#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <limits>

#include "reference.hpp"
#include "topicwalk/rng.hpp"
#include "topicwalk/tail_fit.hpp"

using namespace topicwalk;

namespace {

std::vector<double> draw(TailFamily family, std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> samples(n);
    for (double& x : samples) {
        switch (family) {
            case TailFamily::rayleigh: x = rng.rayleigh(1.0); break;
            case TailFamily::lognormal: x = rng.lognormal(0.0, 0.5); break;
            case TailFamily::pareto: x = rng.pareto(1.0, 2.5); break;
            default: x = rng.next_double() + 0.1; break;
        }
    }
    return samples;
}

double param(const FitResult& fit, const std::string& name) {
    for (const auto& [key, value] : fit.params)
        if (key == name) return value;
    REQUIRE(false);
    return 0.0;
}

}  // namespace

TEST_CASE("spectrum splits intra and inter edges") {
    SUBCASE("closed 3-clique") {
        std::vector<std::vector<KnnEdge>> adjacency(3);
        for (std::uint32_t i = 0; i < 3; ++i)
            for (std::uint32_t j = 0; j < 3; ++j)
                if (i != j) adjacency[i].push_back({j, 0.5 + 0.1 * i});
        KnnGraph graph(std::move(adjacency), 2);
        Topic topic{{0, 1, 2}, 0, 2, 0.9, true};
        SimilaritySpectrum spec = spectrum(topic, graph, 7);
        CHECK(spec.topic_id == 7);
        CHECK(spec.values.size() == 6);
        CHECK(spec.inter_values.empty());
        CHECK(std::is_sorted(spec.values.rbegin(), spec.values.rend()));
    }
    SUBCASE("singleton topic has only boundary") {
        std::vector<std::vector<KnnEdge>> adjacency(3);
        adjacency[0] = {{1, 0.4}, {2, 0.3}};
        adjacency[1] = {{0, 0.2}};
        KnnGraph graph(std::move(adjacency), 2);
        Topic topic{{0}, 0, 2, 1.0, true};
        SimilaritySpectrum spec = spectrum(topic, graph);
        CHECK(spec.values.empty());
        CHECK(spec.inter_values.size() == 3);
    }
    SUBCASE("partition matches a brute-force endpoint test") {
        CounterRng rng(3);
        std::vector<std::vector<KnnEdge>> adjacency(10);
        for (std::uint32_t i = 0; i < 10; ++i)
            for (std::uint32_t j = 0; j < 10; ++j)
                if (i != j && rng.next_double() < 0.3)
                    adjacency[i].push_back({j, rng.uniform_pos(1.0)});
        KnnGraph graph(std::move(adjacency), 9);
        Topic topic{{1, 4, 6, 7}, 1, 2, 0.9, true};

        std::vector<double> intra, inter;
        for (std::uint32_t i = 0; i < 10; ++i)
            for (const KnnEdge& e : graph.out_edges(i)) {
                const bool mi = std::binary_search(topic.members.begin(), topic.members.end(), i);
                const bool mj = std::binary_search(topic.members.begin(), topic.members.end(),
                                                   e.target);
                if (mi && mj) intra.push_back(e.affinity);
                else if (mi || mj) inter.push_back(e.affinity);
            }
        std::sort(intra.rbegin(), intra.rend());
        std::sort(inter.rbegin(), inter.rend());

        SimilaritySpectrum spec = spectrum(topic, graph);
        CHECK(spec.values == intra);
        CHECK(spec.inter_values == inter);
    }
}

TEST_CASE("closed-form MLEs match their formulas") {
    SUBCASE("rayleigh on a two-value sample") {
        // sigma^2 = (1 + 1) / (2 * 2) = 0.5; extended to 5 samples the same way.
        std::vector<double> samples(6, 1.0);
        FitResult fit = fit_mle(samples, TailFamily::rayleigh);
        CHECK(param(fit, "sigma") == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    }
    SUBCASE("rayleigh matches sum-of-squares on random data") {
        auto samples = draw(TailFamily::rayleigh, 200, 9);
        double sq = 0.0;
        for (double x : samples) sq += x * x;
        FitResult fit = fit_mle(samples, TailFamily::rayleigh);
        CHECK(std::abs(param(fit, "sigma") - std::sqrt(sq / (2.0 * 200))) < 1e-10);
    }
    SUBCASE("lognormal mean and variance of logs") {
        auto samples = draw(TailFamily::lognormal, 300, 10);
        double mean = 0.0;
        for (double x : samples) mean += std::log(x);
        mean /= 300;
        double var = 0.0;
        for (double x : samples) var += (std::log(x) - mean) * (std::log(x) - mean);
        var /= 300;
        FitResult fit = fit_mle(samples, TailFamily::lognormal);
        CHECK(std::abs(param(fit, "mu") - mean) < 1e-10);
        CHECK(std::abs(param(fit, "sigma") - std::sqrt(var)) < 1e-10);
    }
    SUBCASE("lognormal on identical samples degenerates") {
        std::vector<double> samples(5, std::exp(1.0));
        FitResult fit = fit_mle(samples, TailFamily::lognormal);
        CHECK(fit.degenerate);
        CHECK(param(fit, "mu") == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(param(fit, "sigma") == 0.0);
    }
    SUBCASE("pareto scale pins to the minimum sample") {
        auto samples = draw(TailFamily::pareto, 100, 12);
        FitResult fit = fit_mle(samples, TailFamily::pareto);
        CHECK(param(fit, "a") == *std::min_element(samples.begin(), samples.end()));
        double sum_log_ratio = 0.0;
        for (double x : samples) sum_log_ratio += std::log(x / param(fit, "a"));
        CHECK(std::abs(param(fit, "alpha") - 100.0 / sum_log_ratio) < 1e-10);
    }
}

TEST_CASE("pareto recovers the generating exponent within 5%") {
    auto samples = draw(TailFamily::pareto, 10000, 100);
    FitResult fit = fit_mle(samples, TailFamily::pareto);
    CHECK(param(fit, "alpha") == doctest::Approx(2.5).epsilon(0.05));
}

TEST_CASE("fit_mle validates its inputs") {
    CHECK_THROWS_AS(fit_mle(std::vector<double>{1.0, 2.0}, TailFamily::rayleigh),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_mle(std::vector<double>{1.0, 2.0, 3.0, 4.0, 0.0}, TailFamily::rayleigh),
                    std::invalid_argument);
}

TEST_CASE("numeric fits reach the grid-scan level") {
    SUBCASE("weibull profile against a 1e4-point scan") {
        // Heavy-tailed regime sample (k < 1 truly optimal).
        CounterRng rng(33);
        std::vector<double> samples(400);
        for (double& x : samples) {
            const double u = 1.0 - rng.next_double();
            x = 0.5 * std::pow(-std::log(u), 1.0 / 0.6);  // Weibull(k=0.6, lambda=0.5)
        }
        FitResult fit = fit_mle(samples, TailFamily::weibull);
        CHECK(param(fit, "k") < 1.0);
        CHECK(fit.loglik >= ref::weibull_grid_scan(samples, 10000) - 1e-4);
    }
    SUBCASE("exponentiated weibull against a 100x100 scan") {
        auto samples = draw(TailFamily::rayleigh, 250, 41);
        FitResult fit = fit_mle(samples, TailFamily::exponentiated_weibull);
        CHECK(param(fit, "alpha") >= 1.0);
        CHECK(fit.loglik >= ref::expw_grid_scan(samples, 100) - 1e-4);
    }
}

TEST_CASE("akaike weights normalize the evidence") {
    SUBCASE("single model takes all the weight") {
        auto w = akaike_weights(std::vector<double>{123.4});
        CHECK(w == std::vector<double>{1.0});
    }
    SUBCASE("equal AICs split evenly") {
        auto w = akaike_weights(std::vector<double>{10.0, 10.0});
        CHECK(w[0] == doctest::Approx(0.5));
        CHECK(w[1] == doctest::Approx(0.5));
    }
    SUBCASE("a delta of two maps to 0.7311 / 0.2689") {
        auto w = akaike_weights(std::vector<double>{0.0, 2.0});
        CHECK(std::abs(w[0] - 0.7311) < 1e-4);
        CHECK(std::abs(w[1] - 0.2689) < 1e-4);
    }
    SUBCASE("weights sum to one and ignore constant shifts") {
        std::vector<double> aics = {3.0, 7.5, 4.25, 9.0};
        auto w1 = akaike_weights(aics);
        for (double& a : aics) a += 1234.5;
        auto w2 = akaike_weights(aics);
        double total = 0.0;
        for (std::size_t i = 0; i < w1.size(); ++i) {
            total += w1[i];
            CHECK(w1[i] == doctest::Approx(w2[i]).epsilon(1e-12));
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("non-finite AICs are rejected") {
        CHECK_THROWS_AS(
            akaike_weights(std::vector<double>{1.0, std::numeric_limits<double>::infinity()}),
            std::invalid_argument);
    }
}

TEST_CASE("best_fit recovers generators at n = 10000") {
    // Exponentiated Weibull contains Rayleigh outright, so it is set aside
    // when reading off the recovered family.
    SUBCASE("rayleigh data") {
        auto samples = draw(TailFamily::rayleigh, 10000, 1);
        BestFit best = best_fit(samples);
        REQUIRE(!best.ranked.empty());
        CHECK(ref::top_family_excluding_expw(best) == TailFamily::rayleigh);
        double rayleigh_weight = 0.0, rest = 0.0;
        for (const FitResult& fit : best.ranked) {
            if (fit.family == TailFamily::rayleigh) rayleigh_weight = fit.akaike_weight;
            else if (fit.family != TailFamily::exponentiated_weibull) rest += fit.akaike_weight;
        }
        CHECK(rayleigh_weight > 100.0 * rest);
    }
    SUBCASE("pareto data lands on the power-law pair") {
        auto samples = draw(TailFamily::pareto, 10000, 2);
        BestFit best = best_fit(samples);
        REQUIRE(!best.ranked.empty());
        const TailFamily top = ref::top_family_excluding_expw(best);
        const bool power_pair = top == TailFamily::power_law || top == TailFamily::pareto;
        CHECK(power_pair);
    }
}

TEST_CASE("best_fit weights sum to one across feasible families") {
    auto samples = draw(TailFamily::lognormal, 500, 8);
    BestFit best = best_fit(samples);
    double total = 0.0;
    for (const FitResult& fit : best.ranked) total += fit.akaike_weight;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t i = 1; i < best.ranked.size(); ++i)
        CHECK(best.ranked[i - 1].akaike_weight >= best.ranked[i].akaike_weight);
}

TEST_CASE("best_fit survives identical samples") {
    std::vector<double> samples(5, 0.4);
    BestFit best = best_fit(samples);
    CHECK(!best.excluded.empty());  // lognormal and pareto degenerate here
    for (const auto& [family, reason] : best.excluded) CHECK(!reason.empty());
}
