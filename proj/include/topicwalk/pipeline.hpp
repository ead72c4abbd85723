#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topicwalk/eval_metrics.hpp"
#include "topicwalk/poisson_deconvolution.hpp"
#include "topicwalk/topic_growth.hpp"

namespace topicwalk {

struct PipelineConfig {
    // Graph / detection parameters.
    int k = 20;
    std::vector<int> d_set = {2, 3, 4};
    int topK = 2;
    double alpha = 0.85;
    double pagerank_tol = 1e-10;
    int pagerank_max_iter = 200;
    int pd_max_iter = 500;
    double pd_tol = 1e-8;
    double nir_threshold = 0.5;
    int threads = 0;  // 0 = library default
    std::uint64_t seed = 1;

    // IO. Exactly one of input_jsonl / input_graph must be set.
    std::string input_jsonl;
    std::string input_graph;
    std::string ground_truth;  // optional
    std::string out_dir;
};

struct StageTiming {
    std::string stage;
    double seconds;
};

struct PipelineResult {
    TopicSet topics;
    PdResult ranking;
    EvalReport report;  // populated when ground truth was supplied
    bool evaluated = false;
    std::vector<StageTiming> timings;
    double total_seconds = 0.0;
};

// Runs ingest -> tfidf -> graph -> walk -> growth -> ranking (-> eval) and
// writes every intermediate artifact under out_dir. Errors are rethrown with
// the failing stage name prefixed.
PipelineResult run_pipeline(const PipelineConfig& config);

void apply_thread_limit(int threads);

}  // namespace topicwalk
