#include "topicwalk/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "topicwalk/random_walk.hpp"
#include "topicwalk/seed_selection.hpp"
#include "topicwalk/serialization.hpp"
#include "topicwalk/text_vectorizer.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace topicwalk {

void apply_thread_limit(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

namespace {

class StageClock {
public:
    explicit StageClock(std::vector<StageTiming>& timings) : timings_(timings) {}

    template <typename F>
    auto run(const std::string& stage, F&& f) {
        const auto start = std::chrono::steady_clock::now();
        try {
            if constexpr (std::is_void_v<decltype(f())>) {
                f();
                record(stage, start);
            } else {
                auto value = f();
                record(stage, start);
                return value;
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("stage " + stage + ": " + e.what());
        }
    }

private:
    void record(const std::string& stage, std::chrono::steady_clock::time_point start) {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        timings_.push_back({stage, seconds});
    }

    std::vector<StageTiming>& timings_;
};

void save_timings(const std::vector<StageTiming>& timings, double total,
                  const std::string& path) {
    nlohmann::json stages = nlohmann::json::array();
    for (const StageTiming& t : timings)
        stages.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
    std::ofstream out(path);
    out << nlohmann::json{{"stages", stages}, {"total_seconds", total}}.dump(2) << '\n';
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
    if (config.input_jsonl.empty() == config.input_graph.empty())
        throw std::invalid_argument(
            "pipeline: exactly one of input_jsonl / input_graph must be set");
    if (config.out_dir.empty()) throw std::invalid_argument("pipeline: out_dir is required");

    apply_thread_limit(config.threads);
    std::filesystem::create_directories(config.out_dir);
    const std::string out = config.out_dir + "/";

    PipelineResult result;
    StageClock clock(result.timings);
    const auto pipeline_start = std::chrono::steady_clock::now();

    KnnGraph graph;
    if (!config.input_jsonl.empty()) {
        Corpus corpus = clock.run("ingest", [&] { return ingest_jsonl(config.input_jsonl); });
        auto vectors = clock.run("tfidf", [&] { return tfidf(corpus); });
        graph = clock.run("graph", [&] {
            KnnGraph g = build_knn_graph(vectors, config.k);
            save_graph(g, out + "graph.csv");
            return g;
        });
    } else {
        graph = clock.run("graph", [&] { return load_graph(config.input_graph); });
    }

    std::vector<double> ser;
    RowStochastic transitions;
    clock.run("walk", [&] {
        transitions = transition_matrix(graph);
        StationaryDistribution pi = stationary_distribution(
            transitions, config.alpha, config.pagerank_tol, config.pagerank_max_iter);
        ser = site_entropy_rate(pi, transitions);
        for (int d : config.d_set) {
            SeedSelection selection = select_seeds(graph, ser, d);
            save_seeds(selection.seeds, ser, d, out + "seeds_d" + std::to_string(d) + ".json");
        }
    });

    result.topics = clock.run("detect", [&] {
        TopicSet topics = multi_granularity(graph, ser, config.d_set, config.topK);
        save_topics(topics, out + "topics.json");
        return topics;
    });

    result.ranking = clock.run("rank", [&] {
        PdProblem problem = build_problem(result.topics, graph);
        PdResult ranking = fit_weights(problem, config.pd_max_iter, config.pd_tol);
        save_ranking(ranking, out + "ranking.json");
        return ranking;
    });

    if (!config.ground_truth.empty()) {
        result.report = clock.run("eval", [&] {
            GroundTruth truth = load_ground_truth(config.ground_truth);
            std::vector<std::vector<std::uint32_t>> ranked;
            ranked.reserve(result.ranking.ranking.size());
            for (std::uint32_t idx : result.ranking.ranking)
                ranked.push_back(result.topics.topics[idx].members);
            EvalReport report = evaluate(ranked, truth, config.nir_threshold);
            save_eval_report(report, out + "eval.json");
            save_fppt_curve_csv(report, out + "fppt_accuracy.csv");
            save_top10_curve_csv(report, out + "ndt_top10f1.csv");
            return report;
        });
        result.evaluated = true;
    }

    result.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - pipeline_start).count();
    save_timings(result.timings, result.total_seconds, out + "timings.json");
    return result;
}

}  // namespace topicwalk
