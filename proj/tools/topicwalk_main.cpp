// Command-line front end: every pipeline stage is independently runnable on
// the serialized artifacts of the previous one.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "topicwalk/eval_metrics.hpp"
#include "topicwalk/pipeline.hpp"
#include "topicwalk/poisson_deconvolution.hpp"
#include "topicwalk/random_walk.hpp"
#include "topicwalk/seed_selection.hpp"
#include "topicwalk/serialization.hpp"
#include "topicwalk/synthetic.hpp"
#include "topicwalk/tail_fit.hpp"
#include "topicwalk/text_vectorizer.hpp"
#include "topicwalk/topic_growth.hpp"

namespace tw = topicwalk;

namespace {

struct WalkArgs {
    double alpha = 0.85;
    double tol = 1e-10;
    int max_iter = 200;
};

std::vector<double> compute_ser(const tw::KnnGraph& graph, const WalkArgs& args) {
    tw::RowStochastic transitions = tw::transition_matrix(graph);
    tw::StationaryDistribution pi =
        tw::stationary_distribution(transitions, args.alpha, args.tol, args.max_iter);
    return tw::site_entropy_rate(pi, transitions);
}

void add_walk_flags(CLI::App* cmd, WalkArgs& args) {
    cmd->add_option("--alpha", args.alpha, "PageRank decay factor");
    cmd->add_option("--walk-tol", args.tol, "power-iteration stopping tolerance");
    cmd->add_option("--walk-max-iter", args.max_iter, "power-iteration sweep cap");
}

std::string format_params(const tw::FitResult& fit) {
    std::string out;
    for (const auto& [name, value] : fit.params) {
        if (!out.empty()) out += ';';
        out += name + "=" + std::to_string(value);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hot-topic detection in noisy document graphs"};
    app.require_subcommand(1);
    // key=value config file; stage options live in a [stage] section and
    // command-line flags override the file.
    app.set_config("--config");

    int threads = 0;
    app.add_option("--threads", threads, "cap OpenMP worker count (0 = default)");

    // --- synth ---------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "generate a planted-topic benchmark graph");
    tw::SynthSpec spec;
    spec.member_fraction = 0.5;
    std::string synth_graph = "graph.csv", synth_truth = "truth.json", law = "rayleigh";
    double law_p1 = 0.25, law_p2 = 0.0, law_shift = 0.5;
    synth->add_option("--nodes", spec.n_nodes, "number of nodes");
    synth->add_option("--topics", spec.n_topics, "number of planted topics");
    synth->add_option("--size-min", spec.size_min, "minimum topic size");
    synth->add_option("--size-max", spec.size_max, "maximum topic size");
    synth->add_option("--member-fraction", spec.member_fraction,
                      "budget for the fraction of nodes inside topics");
    synth->add_option("--noise-rate", spec.noise_edge_rate, "edges drawn per noise node");
    synth->add_option("--noise-cap", spec.noise_similarity_cap, "noise similarity upper bound");
    synth->add_option("--law", law, "intra law: rayleigh | lognormal | pareto");
    synth->add_option("--law-p1", law_p1, "first law parameter");
    synth->add_option("--law-p2", law_p2, "second law parameter");
    synth->add_option("--law-shift", law_shift, "additive shift applied to law draws");
    synth->add_option("--seed", spec.rng_seed, "generator seed");
    synth->add_option("--k", spec.k, "top-k truncation of the graph");
    synth->add_option("--out-graph", synth_graph, "output graph CSV");
    synth->add_option("--out-truth", synth_truth, "output ground-truth JSON");

    // --- ingest --------------------------------------------------------
    auto* ingest = app.add_subcommand("ingest", "validate a JSON Lines corpus");
    std::string ingest_input, ingest_out;
    ingest->add_option("--input", ingest_input, "corpus .jsonl")->required();
    ingest->add_option("--out", ingest_out, "summary JSON (optional)");

    // --- graph ---------------------------------------------------------
    auto* graph_cmd = app.add_subcommand("graph", "TF-IDF vectors and k-nearest graph");
    std::string graph_input, graph_out = "graph.csv";
    int graph_k = 20;
    graph_cmd->add_option("--input", graph_input, "corpus .jsonl")->required();
    graph_cmd->add_option("--k", graph_k, "neighbors kept per node");
    graph_cmd->add_option("--out", graph_out, "output graph CSV");

    // --- seeds ---------------------------------------------------------
    auto* seeds_cmd = app.add_subcommand("seeds", "select influential seed nodes");
    std::string seeds_graph, seeds_out = "seeds.json";
    int seeds_d = 2;
    WalkArgs seeds_walk;
    seeds_cmd->add_option("--graph", seeds_graph, "input graph CSV")->required();
    seeds_cmd->add_option("--d", seeds_d, "covering neighbor count");
    add_walk_flags(seeds_cmd, seeds_walk);
    seeds_cmd->add_option("--out", seeds_out, "output seeds JSON");

    // --- detect --------------------------------------------------------
    auto* detect = app.add_subcommand("detect", "grow candidate topics from seeds");
    std::string detect_graph, detect_out = "topics.json", detect_timing;
    std::vector<int> detect_d = {2, 3, 4};
    int detect_topk = 2;
    WalkArgs detect_walk;
    detect->add_option("--graph", detect_graph, "input graph CSV")->required();
    detect->add_option("--d-set", detect_d, "covering neighbor counts (default 2 3 4)");
    detect->add_option("--topk", detect_topk, "number of topics each node may join");
    add_walk_flags(detect, detect_walk);
    detect->add_option("--out", detect_out, "output topics JSON");
    detect->add_option("--timing", detect_timing, "write stage wall-clock JSON");

    // --- rank ----------------------------------------------------------
    auto* rank = app.add_subcommand("rank", "rank topics by Poisson deconvolution");
    std::string rank_graph, rank_topics, rank_out = "ranking.json";
    int pd_max_iter = 500;
    double pd_tol = 1e-8;
    rank->add_option("--graph", rank_graph, "input graph CSV")->required();
    rank->add_option("--topics", rank_topics, "input topics JSON")->required();
    rank->add_option("--pd-max-iter", pd_max_iter, "multiplicative update cap");
    rank->add_option("--pd-tol", pd_tol, "relative log-likelihood tolerance");
    rank->add_option("--out", rank_out, "output ranking JSON");

    // --- fit -----------------------------------------------------------
    auto* fit = app.add_subcommand("fit", "fit heavy-tailed laws to topic spectra");
    std::string fit_graph, fit_topics, fit_out = "fits.csv";
    std::size_t fit_limit = 0;
    fit->add_option("--graph", fit_graph, "input graph CSV")->required();
    fit->add_option("--topics", fit_topics, "input topics JSON")->required();
    fit->add_option("--limit", fit_limit, "fit only the first N topics (0 = all)");
    fit->add_option("--out", fit_out, "output CSV");

    // --- eval ----------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "score a ranking against ground truth");
    std::string eval_topics, eval_ranking, eval_truth, eval_out = "eval.json", eval_curves;
    double nir_threshold = 0.5;
    eval->add_option("--topics", eval_topics, "input topics JSON")->required();
    eval->add_option("--ranking", eval_ranking, "input ranking JSON")->required();
    eval->add_option("--truth", eval_truth, "ground-truth JSON")->required();
    eval->add_option("--nir-threshold", nir_threshold, "success threshold on NIR");
    eval->add_option("--out", eval_out, "output report JSON");
    eval->add_option("--curves-dir", eval_curves, "directory for the CSV curves");

    // --- pipeline ------------------------------------------------------
    auto* pipe = app.add_subcommand("pipeline", "run every stage end to end");
    tw::PipelineConfig config;
    pipe->add_option("--input", config.input_jsonl, "corpus .jsonl");
    pipe->add_option("--input-graph", config.input_graph, "graph CSV (skips text stages)");
    pipe->add_option("--truth", config.ground_truth, "ground-truth JSON (enables eval)");
    pipe->add_option("--out-dir", config.out_dir, "artifact directory")->required();
    pipe->add_option("--k", config.k, "neighbors kept per node");
    pipe->add_option("--d-set", config.d_set, "covering neighbor counts");
    pipe->add_option("--topk", config.topK, "number of topics each node may join");
    pipe->add_option("--alpha", config.alpha, "PageRank decay factor");
    pipe->add_option("--nir-threshold", config.nir_threshold, "success threshold on NIR");
    pipe->add_option("--pd-max-iter", config.pd_max_iter, "multiplicative update cap");
    pipe->add_option("--pd-tol", config.pd_tol, "relative log-likelihood tolerance");
    pipe->add_option("--seed", config.seed, "seed recorded for reproducibility");

    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->configurable();

    CLI11_PARSE(app, argc, argv);
    tw::apply_thread_limit(threads);

    try {
        if (synth->parsed()) {
            if (law == "rayleigh") spec.intra.family = tw::TailFamily::rayleigh;
            else if (law == "lognormal") spec.intra.family = tw::TailFamily::lognormal;
            else if (law == "pareto") spec.intra.family = tw::TailFamily::pareto;
            else throw std::invalid_argument("unknown law: " + law);
            spec.intra.p1 = law_p1;
            spec.intra.p2 = law_p2;
            spec.intra.shift = law_shift;
            tw::SynthResult result = tw::generate(spec);
            tw::save_graph(result.graph, synth_graph);
            tw::save_ground_truth(result.truth, synth_truth);
            std::cout << "synth: " << result.graph.n() << " nodes, "
                      << result.graph.edge_count() << " edges, " << result.truth.topics.size()
                      << " planted topics\n";
        } else if (ingest->parsed()) {
            tw::Corpus corpus = tw::ingest_jsonl(ingest_input);
            std::size_t labeled = 0, empty = 0;
            for (const auto& doc : corpus.docs) {
                if (!doc.label.empty()) ++labeled;
                if (doc.tokens.empty()) ++empty;
            }
            if (!ingest_out.empty()) {
                std::ofstream out(ingest_out);
                out << nlohmann::json{{"documents", corpus.size()},
                                      {"labeled", labeled},
                                      {"empty", empty}}
                           .dump(2)
                    << '\n';
            }
            std::cout << "ingest: " << corpus.size() << " documents (" << labeled
                      << " labeled, " << empty << " empty)\n";
        } else if (graph_cmd->parsed()) {
            tw::Corpus corpus = tw::ingest_jsonl(graph_input);
            auto vectors = tw::tfidf(corpus);
            tw::KnnGraph graph = tw::build_knn_graph(vectors, graph_k);
            tw::save_graph(graph, graph_out);
            std::cout << "graph: " << graph.n() << " nodes, " << graph.edge_count()
                      << " edges\n";
        } else if (seeds_cmd->parsed()) {
            tw::KnnGraph graph = tw::load_graph(seeds_graph);
            std::vector<double> ser = compute_ser(graph, seeds_walk);
            tw::SeedSelection selection = tw::select_seeds(graph, ser, seeds_d);
            tw::save_seeds(selection.seeds, ser, seeds_d, seeds_out);
            std::cout << "seeds: " << selection.seeds.size() << " selected at d=" << seeds_d
                      << '\n';
        } else if (detect->parsed()) {
            tw::KnnGraph graph = tw::load_graph(detect_graph);
            const auto loaded = std::chrono::steady_clock::now();
            std::vector<double> ser = compute_ser(graph, detect_walk);
            tw::TopicSet topics = tw::multi_granularity(graph, ser, detect_d, detect_topk);
            const auto grown = std::chrono::steady_clock::now();
            tw::save_topics(topics, detect_out);
            const double detect_seconds = std::chrono::duration<double>(grown - loaded).count();
            if (!detect_timing.empty()) {
                std::ofstream out(detect_timing);
                out << nlohmann::json{{"nodes", graph.n()}, {"detect_seconds", detect_seconds}}
                           .dump(2)
                    << '\n';
            }
            std::cout << "detect: " << topics.topics.size() << " topics in " << detect_seconds
                      << " s\n";
        } else if (rank->parsed()) {
            tw::KnnGraph graph = tw::load_graph(rank_graph);
            tw::TopicSet topics = tw::load_topics(rank_topics);
            tw::PdProblem problem = tw::build_problem(topics, graph);
            tw::PdResult result = tw::fit_weights(problem, pd_max_iter, pd_tol);
            tw::save_ranking(result, rank_out);
            std::cout << "rank: " << result.iterations << " iterations, "
                      << (result.converged ? "converged" : "iteration cap hit") << '\n';
        } else if (fit->parsed()) {
            tw::KnnGraph graph = tw::load_graph(fit_graph);
            tw::TopicSet topics = tw::load_topics(fit_topics);
            std::ofstream out(fit_out);
            out << "topic_id,family,params,aic,akaike_weight\n";
            std::size_t fitted = 0, skipped = 0;
            const std::size_t limit =
                fit_limit == 0 ? topics.topics.size() : std::min(fit_limit, topics.topics.size());
            for (std::size_t t = 0; t < limit; ++t) {
                tw::SimilaritySpectrum spec_t =
                    tw::spectrum(topics.topics[t], graph, static_cast<std::uint32_t>(t));
                if (spec_t.values.size() < 5) {
                    ++skipped;
                    continue;
                }
                tw::BestFit best = tw::best_fit(spec_t.values);
                for (const tw::FitResult& fr : best.ranked)
                    out << t << ',' << tw::family_name(fr.family) << ',' << format_params(fr)
                        << ',' << fr.aic << ',' << fr.akaike_weight << '\n';
                ++fitted;
            }
            std::cout << "fit: " << fitted << " topics fitted, " << skipped
                      << " skipped (fewer than 5 intra values)\n";
        } else if (eval->parsed()) {
            tw::TopicSet topics = tw::load_topics(eval_topics);
            tw::PdResult ranking = tw::load_ranking(eval_ranking);
            tw::GroundTruth truth = tw::load_ground_truth(eval_truth);
            std::vector<std::vector<std::uint32_t>> ranked;
            ranked.reserve(ranking.ranking.size());
            for (std::uint32_t idx : ranking.ranking) ranked.push_back(topics.topics[idx].members);
            tw::EvalReport report = tw::evaluate(ranked, truth, nir_threshold);
            tw::save_eval_report(report, eval_out);
            if (!eval_curves.empty()) {
                std::filesystem::create_directories(eval_curves);
                tw::save_fppt_curve_csv(report, eval_curves + "/fppt_accuracy.csv");
                tw::save_top10_curve_csv(report, eval_curves + "/ndt_top10f1.csv");
            }
            const double accuracy =
                report.accuracy_fppt.empty() ? 0.0 : report.accuracy_fppt.back().accuracy;
            std::cout << "eval: " << report.successes.size() << "/" << truth.topics.size()
                      << " matched, final accuracy " << accuracy << '\n';
        } else if (pipe->parsed()) {
            config.threads = threads;
            tw::PipelineResult result = tw::run_pipeline(config);
            std::cout << "pipeline: " << result.topics.topics.size() << " topics in "
                      << result.total_seconds << " s\n";
            for (const tw::StageTiming& t : result.timings)
                std::cout << "  " << t.stage << ": " << t.seconds << " s\n";
        }
    } catch (const std::exception& e) {
        std::cerr << app.get_name() << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}
