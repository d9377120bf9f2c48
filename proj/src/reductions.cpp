#include "makhc/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace makhc {

namespace {

Instance fromGraph(int n, const std::vector<std::pair<int, int>>& edges, int k) {
    Instance inst;
    inst.n = n;
    inst.k = k;
    inst.isClient.assign(n + 1, 1);
    inst.isHub.assign(n + 1, 1);
    inst.isClient[0] = inst.isHub[0] = 0;
    for (auto [u, v] : edges) {
        inst.edges.push_back({u, v, 1});
        inst.demands.push_back({std::min(u, v), std::max(u, v)});
    }
    inst.canonicalize();
    return inst;
}

} // namespace

Instance gen_from_vertex_cover(const SimpleGraph& g, int k, bool subdivide) {
    if (!subdivide) return fromGraph(g.n, g.edges, k);
    int n = g.n;
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges) {
        int ue = ++n, ve = ++n;
        edges.push_back({u, ue});
        edges.push_back({ue, ve});
        edges.push_back({ve, v});
    }
    return fromGraph(n, edges, k + (int)g.edges.size());
}

Instance gen_from_hitting_set(int universeSize, const std::vector<std::vector<int>>& family,
                              int k) {
    if (family.empty()) throw std::invalid_argument("gen_from_hitting_set: empty family");
    for (const auto& s : family)
        if (s.empty()) throw std::invalid_argument("gen_from_hitting_set: empty set");

    // Vertices 1..universeSize are the hubs h_e.
    int n = universeSize;
    Instance out;
    std::vector<Edge> edges;
    std::vector<Demand> demands;
    for (const auto& s : family) {
        int uS = ++n, vS = ++n;
        for (int e : s) {
            if (e < 1 || e > universeSize)
                throw std::invalid_argument("gen_from_hitting_set: element out of range");
            edges.push_back({uS, e, 1});
            edges.push_back({vS, e, 1});
        }
        demands.push_back({uS, vS});
    }
    // Chain consecutive hubs through nine auxiliary clients (ten unit edges),
    // keeping every hub-to-hub distance along the chain at least 10.
    for (int e = 1; e < universeSize; ++e) {
        int prev = e;
        for (int i = 0; i < 9; ++i) {
            int aux = ++n;
            edges.push_back({prev, aux, 1});
            prev = aux;
        }
        edges.push_back({prev, e + 1, 1});
    }
    out.n = n;
    out.k = k;
    out.edges = std::move(edges);
    out.demands = std::move(demands);
    out.isClient.assign(n + 1, 1);
    out.isClient[0] = 0;
    out.isHub.assign(n + 1, 0);
    for (int v = 1; v <= universeSize; ++v) out.isHub[v] = 1;
    for (int v = 1; v <= universeSize; ++v) out.isClient[v] = 0;
    out.canonicalize();
    return out;
}

Instance gen_from_kcenter(int n, const std::vector<Edge>& edges, int k) {
    Instance inst;
    inst.n = n;
    inst.k = k;
    inst.edges = edges;
    inst.isClient.assign(n + 1, 1);
    inst.isHub.assign(n + 1, 1);
    inst.isClient[0] = inst.isHub[0] = 0;
    for (Vertex v = 1; v <= n; ++v) inst.demands.push_back({v, v});
    inst.canonicalize();
    return inst;
}

namespace {

// Least integer >= sqrt(x), exact.
long long isqrtCeil(long long x) {
    if (x <= 0) return 0;
    long long s = (long long)std::sqrt((double)x);
    while (s * s >= x) --s;
    while (s * s < x) ++s;
    return s;
}

} // namespace

PlanarBounds planar_bounds(long long k, long long r) {
    if (k < 1 || r < 0) throw std::invalid_argument("planar_bounds: need k >= 1, r >= 0");
    PlanarBounds b;
    long long m = 2 * r + 1;
    double sk = std::sqrt((double)k);
    b.rho = sk * (double)m + (double)(2 * r);
    b.tw = 6.0 * sk * (double)m + (double)(12 * r + 1);
    b.rhoCeil = isqrtCeil(k * m * m) + 2 * r;
    b.twCeil = isqrtCeil(36 * k * m * m) + 12 * r + 1;
    long long s = isqrtCeil(k);
    b.exact = s * s == k;
    return b;
}

namespace {

// splitmix64: tiny deterministic stream so generated files are byte-identical
// across platforms and standard-library versions.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long long below(long long bound) { return (long long)(next() % (std::uint64_t)bound); }
    double unit() { return (double)(next() >> 11) * 0x1.0p-53; }
};

} // namespace

Instance gen_random(int n, double density, long long weightMax, int numDemands, int k,
                    std::uint64_t seed) {
    if (n < 2 || weightMax < 1 || numDemands < 1 || k < 1)
        throw std::invalid_argument("gen_random: bad parameters");
    Rng rng(seed);
    Instance inst;
    inst.n = n;
    inst.k = k;
    // Spanning-tree backbone guarantees connectivity regardless of density.
    for (int v = 2; v <= n; ++v)
        inst.edges.push_back({(Vertex)(1 + rng.below(v - 1)), v, 1 + rng.below(weightMax)});
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) {
            double roll = rng.unit();
            if (roll < density) {
                bool have = false;
                for (const auto& e : inst.edges)
                    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) have = true;
                if (!have) inst.edges.push_back({u, v, 1 + rng.below(weightMax)});
            }
        }
    inst.isClient.assign(n + 1, 1);
    inst.isClient[0] = 0;
    inst.isHub.assign(n + 1, 0);
    int numHubs = std::max(k, n / 2);
    std::vector<Vertex> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i + 1;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    for (int i = 0; i < numHubs; ++i) inst.isHub[perm[i]] = 1;

    std::vector<Demand> pool;
    for (Vertex a = 1; a <= n; ++a)
        for (Vertex b = a + 1; b <= n; ++b) pool.push_back({a, b});
    for (int i = (int)pool.size() - 1; i > 0; --i)
        std::swap(pool[i], pool[rng.below(i + 1)]);
    int m = std::min<int>(numDemands, (int)pool.size());
    inst.demands.assign(pool.begin(), pool.begin() + m);
    inst.canonicalize();
    return inst;
}

Instance gen_grid(int rows, int cols, const std::string& demandPattern, int k) {
    if (rows < 1 || cols < 1 || k < 1) throw std::invalid_argument("gen_grid: bad parameters");
    auto id = [cols](int r, int c) { return r * cols + c + 1; };
    Instance inst;
    inst.n = rows * cols;
    inst.k = k;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) inst.edges.push_back({id(r, c), id(r, c + 1), 1});
            if (r + 1 < rows) inst.edges.push_back({id(r, c), id(r + 1, c), 1});
        }
    inst.isClient.assign(inst.n + 1, 1);
    inst.isHub.assign(inst.n + 1, 1);
    inst.isClient[0] = inst.isHub[0] = 0;
    if (demandPattern == "corners") {
        inst.demands.push_back({id(0, 0), id(rows - 1, cols - 1)});
        if (rows > 1 && cols > 1) inst.demands.push_back({id(0, cols - 1), id(rows - 1, 0)});
    } else if (demandPattern == "self") {
        for (Vertex v = 1; v <= inst.n; ++v) inst.demands.push_back({v, v});
    } else {
        throw std::invalid_argument("gen_grid: unknown demand pattern '" + demandPattern + "'");
    }
    inst.canonicalize();
    return inst;
}

} // namespace makhc
