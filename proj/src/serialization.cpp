#include "topicwalk/serialization.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace topicwalk {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    return in;
}

nlohmann::json parse_file(const std::string& path) {
    auto in = open_in(path);
    nlohmann::json j;
    in >> j;
    return j;
}

void dump_json(const nlohmann::json& j, const std::string& path) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

}  // namespace

void save_graph(const KnnGraph& graph, const std::string& csv_path) {
    auto out = open_out(csv_path);
    out << "src,dst,weight\n";
    for (std::uint32_t i = 0; i < graph.n(); ++i)
        for (const KnnEdge& e : graph.out_edges(i))
            out << i << ',' << e.target << ',' << format_double(e.affinity) << '\n';
    dump_json(nlohmann::json{{"n", graph.n()}, {"k", graph.k()}}, csv_path + ".json");
}

KnnGraph load_graph(const std::string& csv_path) {
    const nlohmann::json sidecar = parse_file(csv_path + ".json");
    const std::uint32_t n = sidecar.at("n").get<std::uint32_t>();
    const int k = sidecar.at("k").get<int>();

    auto in = open_in(csv_path);
    std::string line;
    if (!std::getline(in, line) || line != "src,dst,weight")
        throw std::runtime_error(csv_path + ": expected header src,dst,weight");

    std::vector<std::vector<KnnEdge>> adjacency(n);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const char* begin = line.data();
        const char* end = line.data() + line.size();
        std::uint32_t src = 0, dst = 0;
        double weight = 0.0;
        auto r1 = std::from_chars(begin, end, src);
        if (r1.ec != std::errc() || r1.ptr == end || *r1.ptr != ',')
            throw std::runtime_error(csv_path + ":" + std::to_string(line_no) + ": bad src");
        auto r2 = std::from_chars(r1.ptr + 1, end, dst);
        if (r2.ec != std::errc() || r2.ptr == end || *r2.ptr != ',')
            throw std::runtime_error(csv_path + ":" + std::to_string(line_no) + ": bad dst");
        auto r3 = std::from_chars(r2.ptr + 1, end, weight);
        if (r3.ec != std::errc())
            throw std::runtime_error(csv_path + ":" + std::to_string(line_no) + ": bad weight");
        if (src >= n || dst >= n)
            throw std::runtime_error(csv_path + ":" + std::to_string(line_no) +
                                     ": node id out of range");
        adjacency[src].push_back({dst, weight});
    }
    return KnnGraph(std::move(adjacency), k);
}

void save_seeds(const std::vector<std::uint32_t>& seeds, const std::vector<double>& ser, int d,
                const std::string& path) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::uint32_t s : seeds) arr.push_back({{"id", s}, {"ser", ser[s]}});
    dump_json(nlohmann::json{{"d", d}, {"seeds", arr}}, path);
}

void save_topics(const TopicSet& topics, const std::string& path) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Topic& t : topics.topics)
        arr.push_back({{"members", t.members},
                       {"seed", t.seed},
                       {"d", t.granularity_d},
                       {"threshold", t.threshold},
                       {"is_final", t.is_final}});
    dump_json(arr, path);
}

TopicSet load_topics(const std::string& path) {
    const nlohmann::json arr = parse_file(path);
    TopicSet topics;
    for (const auto& item : arr) {
        Topic t;
        t.members = item.at("members").get<std::vector<std::uint32_t>>();
        t.seed = item.at("seed").get<std::uint32_t>();
        t.granularity_d = item.at("d").get<int>();
        t.threshold = item.at("threshold").get<double>();
        t.is_final = item.at("is_final").get<bool>();
        topics.topics.push_back(std::move(t));
    }
    return topics;
}

void save_ranking(const PdResult& result, const std::string& path) {
    dump_json(nlohmann::json{{"mu", result.mu},
                             {"interestingness", result.interestingness},
                             {"ranking", result.ranking},
                             {"iterations", result.iterations},
                             {"converged", result.converged}},
              path);
}

PdResult load_ranking(const std::string& path) {
    const nlohmann::json j = parse_file(path);
    PdResult result;
    result.mu = j.at("mu").get<std::vector<double>>();
    result.interestingness = j.at("interestingness").get<std::vector<double>>();
    result.ranking = j.at("ranking").get<std::vector<std::uint32_t>>();
    result.iterations = j.value("iterations", 0);
    result.converged = j.value("converged", false);
    return result;
}

void save_ground_truth(const GroundTruth& truth, const std::string& path) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t g = 0; g < truth.topics.size(); ++g)
        arr.push_back({{"id", g}, {"members", truth.topics[g]}});
    dump_json(nlohmann::json{{"topics", arr}}, path);
}

GroundTruth load_ground_truth(const std::string& path) {
    const nlohmann::json j = parse_file(path);
    GroundTruth truth;
    for (const auto& item : j.at("topics"))
        truth.topics.push_back(item.at("members").get<std::vector<std::uint32_t>>());
    return truth;
}

void save_eval_report(const EvalReport& report, const std::string& path) {
    nlohmann::json successes = nlohmann::json::array();
    for (const auto& [rank, gt] : report.successes)
        successes.push_back({{"rank", rank}, {"gt", gt}});
    nlohmann::json fppt = nlohmann::json::array();
    for (const CurvePoint& p : report.accuracy_fppt)
        fppt.push_back({{"fppt", p.fppt}, {"accuracy", p.accuracy}});
    nlohmann::json top10 = nlohmann::json::array();
    for (const auto& [ndt, score] : report.top10_f1_by_ndt)
        top10.push_back({{"ndt", ndt}, {"top10_f1", score}});
    dump_json(nlohmann::json{{"successes", successes},
                             {"false_positives", report.false_positives},
                             {"accuracy_fppt", fppt},
                             {"top10_f1_by_ndt", top10}},
              path);
}

void save_fppt_curve_csv(const EvalReport& report, const std::string& path) {
    auto out = open_out(path);
    out << "fppt,accuracy\n";
    for (const CurvePoint& p : report.accuracy_fppt)
        out << format_double(p.fppt) << ',' << format_double(p.accuracy) << '\n';
}

void save_top10_curve_csv(const EvalReport& report, const std::string& path) {
    auto out = open_out(path);
    out << "ndt,top10f1\n";
    for (const auto& [ndt, score] : report.top10_f1_by_ndt)
        out << ndt << ',' << format_double(score) << '\n';
}

}  // namespace topicwalk
