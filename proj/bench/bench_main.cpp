// Kernel benchmark: parallel library kernels against the serial reference
// implementations. Wall-clock only, best of three.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <vector>

#include "reference.hpp"
#include "topicwalk/knn_graph.hpp"
#include "topicwalk/poisson_deconvolution.hpp"
#include "topicwalk/random_walk.hpp"
#include "topicwalk/rng.hpp"
#include "topicwalk/synthetic.hpp"
#include "topicwalk/text_vectorizer.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace topicwalk;

namespace {

template <typename F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        f();
        const double s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (s < best) best = s;
    }
    return best;
}

void report(const char* kernel, double serial, double parallel) {
    std::printf("%-28s serial %8.4f s   parallel %8.4f s   speedup %.2fx\n", kernel, serial,
                parallel, serial / parallel);
}

std::vector<SparseVector> bench_vectors(std::size_t n, std::uint32_t dims, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<SparseVector> vectors(n);
    for (auto& v : vectors) {
        for (std::uint32_t t = 0; t < dims; ++t)
            if (rng.next_double() < 0.15) v.entries.emplace_back(t, rng.next_double());
        double sq = 0.0;
        for (const auto& [t, w] : v.entries) sq += w * w;
        v.norm = std::sqrt(sq);
        if (v.norm > 0.0)
            for (auto& [t, w] : v.entries) w /= v.norm;
    }
    return vectors;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both columns run serial code\n");
#endif

    {
        auto vectors = bench_vectors(1200, 400, 1);
        const double serial = best_of(3, [&] { ref::brute_force_knn(vectors, 20); });
        const double parallel = best_of(3, [&] { build_knn_graph(vectors, 20); });
        report("knn graph (n=1200)", serial, parallel);
    }

    {
        SynthSpec spec;
        spec.n_nodes = 20000;
        spec.n_topics = 200;
        spec.size_min = 30;
        spec.size_max = 60;
        spec.member_fraction = 0.6;
        spec.rng_seed = 2;
        SynthResult synth = generate(spec);
        RowStochastic P = transition_matrix(synth.graph);
        const double serial =
            best_of(3, [&] { ref::pagerank_power_serial(synth.graph, 0.85, 1e-10, 60); });
        const double parallel =
            best_of(3, [&] { stationary_distribution(P, 0.85, 1e-300, 60); });
        report("pagerank 60 sweeps (n=20000)", serial, parallel);
    }

    {
        SynthSpec spec;
        spec.n_nodes = 2000;
        spec.n_topics = 20;
        spec.size_min = 30;
        spec.size_max = 60;
        spec.member_fraction = 0.6;
        spec.rng_seed = 3;
        SynthResult synth = generate(spec);
        RowStochastic P = transition_matrix(synth.graph);
        StationaryDistribution pi = stationary_distribution(P, 0.85, 1e-10, 200);
        std::vector<double> ser = site_entropy_rate(pi, P);
        TopicSet topics = multi_granularity(synth.graph, ser, {2, 3, 4}, 2);
        PdProblem problem = build_problem(topics, synth.graph);
        const double serial = best_of(3, [&] { ref::pd_fit_serial(problem, 120, 1e-300); });
        const double parallel = best_of(3, [&] { fit_weights(problem, 120, 1e-300); });
        report("poisson deconvolution x120", serial, parallel);
        std::printf("  (%zu topics over %zu symmetric edges)\n", topics.topics.size(),
                    problem.edges.size());
    }

    return 0;
}
