#include "topicwalk/topic_growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace topicwalk {

double avg_internal(std::span<const std::uint32_t> members, const KnnGraph& graph) {
    if (members.empty()) throw std::invalid_argument("avg_internal: empty member set");
    if (members.size() == 1) return 1.0;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::uint32_t m : members)
        for (const KnnEdge& e : graph.out_edges(m))
            if (std::binary_search(members.begin(), members.end(), e.target)) {
                sum += e.affinity;
                ++count;
            }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

double topic_similarity(const Topic& topic, std::uint32_t x, const KnnGraph& graph) {
    if (std::binary_search(topic.members.begin(), topic.members.end(), x))
        throw std::invalid_argument("topic_similarity: node already belongs to the topic");
    double internal = avg_internal(topic.members, graph);
    if (internal == 0.0) return 0.0;
    double sum = 0.0;
    for (std::uint32_t m : topic.members) sum += graph.affinity(m, x) + graph.affinity(x, m);
    return (sum / static_cast<double>(topic.members.size())) / internal;
}

bool should_snapshot(double avg_after_add, double th) { return avg_after_add < th; }

namespace {

// Threshold state in tenths (10..1) so equality against the 0.1 grid never
// depends on accumulated floating-point noise.
int floor_tenths(double avg) { return static_cast<int>(std::floor(avg * 10.0 + 1e-9)); }

struct LiveTopic {
    std::vector<std::uint32_t> members;  // growth order
    std::uint32_t seed;
    double internal_sum = 0.0;
    std::size_t internal_count = 0;
    int th_tenths = 10;
};

Topic emit(const LiveTopic& t, int d, bool is_final) {
    Topic topic;
    topic.members = t.members;
    std::sort(topic.members.begin(), topic.members.end());
    topic.seed = t.seed;
    topic.granularity_d = d;
    topic.threshold = static_cast<double>(t.th_tenths) / 10.0;
    topic.is_final = is_final;
    return topic;
}

}  // namespace

TopicSet grow_topics(const KnnGraph& graph, const SeedSelection& selection, int topK) {
    if (topK < 1) throw std::invalid_argument("grow_topics: topK must be >= 1");
    if (selection.seeds.empty()) throw std::invalid_argument("grow_topics: no seeds");

    const std::uint32_t n = graph.n();
    std::vector<LiveTopic> live;
    live.reserve(selection.seeds.size());
    std::vector<std::vector<std::uint32_t>> node_topics(n);  // topics containing each node
    std::vector<bool> is_seed(n, false);
    for (std::uint32_t s : selection.seeds) {
        node_topics[s].push_back(static_cast<std::uint32_t>(live.size()));
        live.push_back(LiveTopic{{s}, s});
        is_seed[s] = true;
    }

    TopicSet out;

    // Sparse per-candidate accumulators over the touched topics.
    std::vector<double> acc_sum(live.size(), 0.0);
    std::vector<std::uint32_t> acc_cnt(live.size(), 0);
    std::vector<std::uint32_t> touched;

    struct Candidate {
        double score;
        std::uint32_t topic;
    };
    std::vector<Candidate> candidates;

    for (std::uint32_t x : selection.sorted_order) {
        if (is_seed[x]) continue;

        touched.clear();
        auto accumulate = [&](std::uint32_t neighbor, double w) {
            for (std::uint32_t t : node_topics[neighbor]) {
                if (acc_cnt[t] == 0) touched.push_back(t);
                acc_sum[t] += w;
                ++acc_cnt[t];
            }
        };
        for (const KnnEdge& e : graph.out_edges(x)) accumulate(e.target, e.affinity);
        for (const KnnEdge& e : graph.in_edges(x)) accumulate(e.target, e.affinity);

        candidates.clear();
        for (std::uint32_t t : touched) {
            const LiveTopic& topic = live[t];
            double internal = topic.internal_count > 0
                                  ? topic.internal_sum / static_cast<double>(topic.internal_count)
                                  : (topic.members.size() == 1 ? 1.0 : 0.0);
            if (internal > 0.0) {
                double score =
                    (acc_sum[t] / static_cast<double>(topic.members.size())) / internal;
                if (score > 0.0) candidates.push_back({score, t});
            }
        }
        std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.topic < b.topic;  // earlier-created topic wins ties
        });
        if (candidates.size() > static_cast<std::size_t>(topK))
            candidates.resize(static_cast<std::size_t>(topK));

        for (const Candidate& c : candidates) {
            LiveTopic& topic = live[c.topic];
            const double new_sum = topic.internal_sum + acc_sum[c.topic];
            const std::size_t new_count = topic.internal_count + acc_cnt[c.topic];
            const double avg_with_x =
                new_count > 0 ? new_sum / static_cast<double>(new_count) : 0.0;
            const double th = static_cast<double>(topic.th_tenths) / 10.0;

            bool absorb = true;
            if (should_snapshot(avg_with_x, th)) {
                const int dropped = std::max(1, floor_tenths(avg_with_x));
                if (dropped < topic.th_tenths) {
                    if (topic.members.size() >= 2) out.topics.push_back(emit(topic, selection.d, false));
                    topic.th_tenths = dropped;
                }
                absorb = floor_tenths(avg_with_x) >= 1;  // below the 0.1 floor: reject
            }
            if (absorb) {
                topic.members.push_back(x);
                topic.internal_sum = new_sum;
                topic.internal_count = new_count;
                node_topics[x].push_back(c.topic);
            }
        }

        for (std::uint32_t t : touched) {
            acc_sum[t] = 0.0;
            acc_cnt[t] = 0;
        }
    }

    for (const LiveTopic& topic : live)
        if (topic.members.size() >= 2) out.topics.push_back(emit(topic, selection.d, true));
    return out;
}

TopicSet multi_granularity(const KnnGraph& graph, std::span<const double> ser,
                           const std::vector<int>& D, int topK) {
    if (D.empty()) throw std::invalid_argument("multi_granularity: D is empty");
    std::vector<int> ds(D);
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());

    TopicSet all;
    for (int d : ds) {
        SeedSelection selection = select_seeds(graph, ser, d);
        TopicSet grown = grow_topics(graph, selection, topK);
        all.topics.insert(all.topics.end(), std::make_move_iterator(grown.topics.begin()),
                          std::make_move_iterator(grown.topics.end()));
    }
    return dedup(std::move(all));
}

TopicSet dedup(TopicSet topics) {
    struct MemberHash {
        std::size_t operator()(const std::vector<std::uint32_t>& m) const {
            std::size_t h = m.size();
            for (std::uint32_t v : m) h = h * 1000003ULL + v;
            return h;
        }
    };

    TopicSet out;
    out.topics.reserve(topics.topics.size());
    std::unordered_set<std::vector<std::uint32_t>, MemberHash> seen;
    for (Topic& t : topics.topics)
        if (seen.insert(t.members).second) out.topics.push_back(std::move(t));
    return out;
}

}  // namespace topicwalk
