#pragma once

#include <string>
#include <vector>

#include "topicwalk/eval_metrics.hpp"
#include "topicwalk/knn_graph.hpp"
#include "topicwalk/poisson_deconvolution.hpp"
#include "topicwalk/topic_growth.hpp"

namespace topicwalk {

// Graph files: a "src,dst,weight" CSV plus a {n, k} JSON sidecar at
// <path>.json. Weights are written with round-trip precision.
void save_graph(const KnnGraph& graph, const std::string& csv_path);
KnnGraph load_graph(const std::string& csv_path);

void save_seeds(const std::vector<std::uint32_t>& seeds, const std::vector<double>& ser, int d,
                const std::string& path);

void save_topics(const TopicSet& topics, const std::string& path);
TopicSet load_topics(const std::string& path);

void save_ranking(const PdResult& result, const std::string& path);
PdResult load_ranking(const std::string& path);

void save_ground_truth(const GroundTruth& truth, const std::string& path);
GroundTruth load_ground_truth(const std::string& path);

void save_eval_report(const EvalReport& report, const std::string& path);
void save_fppt_curve_csv(const EvalReport& report, const std::string& path);
void save_top10_curve_csv(const EvalReport& report, const std::string& path);

}  // namespace topicwalk
