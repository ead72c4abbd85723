#include "topicwalk/seed_selection.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace topicwalk {

SeedSelection select_seeds(const KnnGraph& graph, std::span<const double> ser, int d) {
    if (d < 1) throw std::invalid_argument("select_seeds: d must be >= 1");
    if (ser.size() != graph.n()) throw std::invalid_argument("select_seeds: ser size mismatch");

    SeedSelection selection;
    selection.d = d;
    selection.sorted_order.resize(graph.n());
    std::iota(selection.sorted_order.begin(), selection.sorted_order.end(), 0u);
    std::stable_sort(selection.sorted_order.begin(), selection.sorted_order.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                         if (ser[a] != ser[b]) return ser[a] > ser[b];
                         return a < b;
                     });

    std::vector<bool> visited(graph.n(), false);
    for (std::uint32_t x : selection.sorted_order) {
        if (visited[x]) continue;
        auto edges = graph.out_edges(x);
        const std::size_t cover = std::min<std::size_t>(edges.size(), static_cast<std::size_t>(d));
        bool blocked = false;
        for (std::size_t e = 0; e < cover; ++e)
            if (visited[edges[e].target]) {
                blocked = true;
                break;
            }
        if (blocked) continue;
        selection.seeds.push_back(x);
        visited[x] = true;
        for (std::size_t e = 0; e < cover; ++e) visited[edges[e].target] = true;
    }
    return selection;
}

}  // namespace topicwalk
