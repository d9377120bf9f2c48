#include "makhc/distance.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <thread>

namespace makhc {

DistanceOracle DistanceOracle::compute(const Instance& inst, int threads) {
    DistanceOracle o;
    o.n_ = inst.n;
    o.d_.assign((size_t)inst.n * inst.n, kInfDist);

    std::vector<std::vector<std::pair<Vertex, long long>>> adj(inst.n + 1);
    for (const auto& e : inst.edges) {
        adj[e.u].emplace_back(e.v, e.w);
        adj[e.v].emplace_back(e.u, e.w);
    }

    auto dijkstra = [&](Vertex s) {
        long long* dist = &o.d_[o.idx(s, 1)];
        dist[s - 1] = 0;
        using Item = std::pair<long long, Vertex>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        pq.emplace(0, s);
        while (!pq.empty()) {
            auto [du, u] = pq.top();
            pq.pop();
            if (du > dist[u - 1]) continue;
            for (auto [v, w] : adj[u]) {
                if (du + w < dist[v - 1]) {
                    dist[v - 1] = du + w;
                    pq.emplace(dist[v - 1], v);
                }
            }
        }
    };

    threads = std::max(1, threads);
    if (threads == 1 || inst.n < 4) {
        for (Vertex s = 1; s <= inst.n; ++s) dijkstra(s);
    } else {
        std::vector<std::thread> pool;
        int nw = std::min(threads, inst.n);
        for (int w = 0; w < nw; ++w)
            pool.emplace_back([&, w] {
                for (Vertex s = 1 + w; s <= inst.n; s += nw) dijkstra(s);
            });
        for (auto& t : pool) t.join();
    }

    for (Vertex u = 1; u <= inst.n && o.connected_; ++u)
        for (Vertex v = 1; v <= inst.n; ++v)
            if (o.d_[o.idx(u, v)] >= kInfDist) {
                o.connected_ = false;
                break;
            }
    return o;
}

DistanceOracle all_pairs_distances(const Instance& inst, int threads) {
    DistanceOracle o = DistanceOracle::compute(inst, threads);
    if (!o.connected()) throw std::runtime_error("all_pairs_distances: graph is disconnected");
    return o;
}

} // namespace makhc
