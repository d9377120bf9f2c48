#include "makhc/preprocess.hpp"

#include <algorithm>
#include <stdexcept>

namespace makhc {

std::vector<Vertex> demand_subgraph(const Demand& dem, long long r, const DistanceOracle& d,
                                    int n) {
    std::vector<Vertex> out;
    for (Vertex v = 1; v <= n; ++v)
        if (d(dem.a, v) + d(v, dem.b) <= r) out.push_back(v);
    return out;
}

PreprocessResult preprocess_remove(const Instance& inst, long long r, const DistanceOracle& d,
                                   long long connectorWeight) {
    PreprocessResult res;
    if (connectorWeight <= 0) connectorWeight = 4 * r + 5;

    std::vector<char> keep(inst.n + 1, 0);
    for (Vertex v = 1; v <= inst.n; ++v) {
        long long best = kInfDist;
        for (const auto& dem : inst.demands)
            best = std::min(best, d(dem.a, v) + d(v, dem.b));
        keep[v] = best <= r;
    }
    for (const auto& dem : inst.demands)
        if (!keep[dem.a] || !keep[dem.b]) return res;  // demand unsatisfiable at r

    // Components of the induced subgraph on the kept vertices.
    std::vector<int> comp(inst.n + 1, -1);
    std::vector<std::vector<Vertex>> adj(inst.n + 1);
    for (const auto& e : inst.edges)
        if (keep[e.u] && keep[e.v]) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
    int nc = 0;
    for (Vertex s = 1; s <= inst.n; ++s) {
        if (!keep[s] || comp[s] >= 0) continue;
        std::vector<Vertex> stack{s};
        comp[s] = nc;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : adj[v])
                if (comp[w] < 0) {
                    comp[w] = nc;
                    stack.push_back(w);
                }
        }
        ++nc;
    }
    std::vector<char> compHasEndpoint(nc, 0);
    for (const auto& dem : inst.demands) {
        if (comp[dem.a] != comp[dem.b]) return res;  // split demand: infeasible
        compHasEndpoint[comp[dem.a]] = 1;
    }
    for (Vertex v = 1; v <= inst.n; ++v)
        if (keep[v] && !compHasEndpoint[comp[v]]) keep[v] = 0;

    std::vector<Vertex> newId(inst.n + 1, 0);
    res.origId.push_back(0);
    for (Vertex v = 1; v <= inst.n; ++v)
        if (keep[v]) {
            newId[v] = (Vertex)res.origId.size();
            res.origId.push_back(v);
        }
    int n2 = (int)res.origId.size() - 1;
    if (n2 == 0) return res;

    Instance& out = res.inst;
    out.n = n2;
    out.k = inst.k;
    out.isClient.assign(n2 + 1, 0);
    out.isHub.assign(n2 + 1, 0);
    for (Vertex v2 = 1; v2 <= n2; ++v2) {
        out.isClient[v2] = inst.isClient[res.origId[v2]];
        out.isHub[v2] = inst.isHub[res.origId[v2]];
    }
    for (const auto& e : inst.edges)
        if (keep[e.u] && keep[e.v]) out.edges.push_back({newId[e.u], newId[e.v], e.w});
    for (const auto& dem : inst.demands)
        out.demands.push_back({newId[dem.a], newId[dem.b]});
    out.canonicalize();

    // Bridge surviving components so the instance stays connected; connector
    // weight exceeds every radius threshold, so these edges cannot carry a
    // serving path or an admissible color anchor.
    std::vector<Vertex> firstOfComp(nc, 0);
    res.numComponents = 0;
    Vertex prev = 0;
    for (Vertex v2 = 1; v2 <= n2; ++v2) {
        int c = comp[res.origId[v2]];
        if (!firstOfComp[c]) {
            firstOfComp[c] = v2;
            ++res.numComponents;
            if (prev) out.edges.push_back({prev, v2, connectorWeight});
            prev = v2;
        }
    }
    res.feasible = true;
    return res;
}

Instance rescale(const Instance& inst, const mpq_class& epsilon, long long A) {
    if (A == 0) return inst;
    mpq_class factor = mpq_class(3 * (long)inst.n) / (epsilon * mpq_class((long)A));
    if (factor >= 1) return inst;  // never enlarge an already-small instance
    Instance out = inst;
    for (auto& e : out.edges) {
        mpq_class scaled = factor * mpq_class((long)e.w);
        mpz_class q;
        mpz_cdiv_q(q.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
        e.w = std::max(1LL, (long long)q.get_si());
    }
    return out;
}

Evaluation evaluate_solution(const Instance& inst, const std::vector<Vertex>& hubs,
                             const DistanceOracle& d) {
    if (hubs.empty()) throw std::invalid_argument("evaluate_solution: no hubs");
    Evaluation ev;
    std::vector<Vertex> hs = hubs;
    std::sort(hs.begin(), hs.end());
    for (const auto& dem : inst.demands) {
        long long best = kInfDist;
        Vertex bestHub = 0;
        for (Vertex h : hs) {
            long long cost = d(dem.a, h) + d(h, dem.b);
            if (cost < best) {
                best = cost;
                bestHub = h;
            }
        }
        ev.perDemandHub[dem] = bestHub;
        ev.value = std::max(ev.value, best);
    }
    return ev;
}

} // namespace makhc
