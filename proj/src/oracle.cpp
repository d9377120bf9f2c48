#include "makhc/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "makhc/preprocess.hpp"

namespace makhc {

namespace {

long long binomial(long long n, long long k, long long cap) {
    if (k > n) return 0;
    long long c = 1;
    for (long long i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
        if (c > cap) return cap + 1;
    }
    return c;
}

// Objective of `hubs`, abandoning early once it can no longer beat `bound`.
long long evaluate_bounded(const Instance& inst, const DistanceOracle& d,
                           const std::vector<Vertex>& hubs, long long bound) {
    long long worst = 0;
    for (const auto& dem : inst.demands) {
        long long best = kInfDist;
        for (Vertex h : hubs) best = std::min(best, d(dem.a, h) + d(h, dem.b));
        worst = std::max(worst, best);
        if (worst >= bound) return worst;
    }
    return worst;
}

} // namespace

OracleResult brute_force_opt(const Instance& inst, const DistanceOracle& d, long long cap) {
    std::vector<Vertex> hubs = inst.hubLocations();
    long long m = (long long)hubs.size();
    long long k = std::min<long long>(inst.k, m);
    if (inst.demands.empty()) return {0, {}};
    if (binomial(m, k, cap) > cap)
        throw std::runtime_error("brute_force_opt: C(" + std::to_string(m) + "," +
                                 std::to_string(k) + ") exceeds enumeration cap " +
                                 std::to_string(cap));

    OracleResult res;
    res.opt = kInfDist;
    std::vector<int> idx(k);
    for (long long i = 0; i < k; ++i) idx[i] = (int)i;
    std::vector<Vertex> sel(k);
    while (true) {
        for (long long i = 0; i < k; ++i) sel[i] = hubs[idx[i]];
        long long val = evaluate_bounded(inst, d, sel, res.opt);
        if (val < res.opt) {
            res.opt = val;
            res.optimalHubs = sel;
        }
        // Next combination in lexicographic order; the first optimum found is
        // therefore the lexicographically least witness.
        long long i = k - 1;
        while (i >= 0 && idx[i] == (int)(m - k + i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (long long j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return res;
}

bool feasible_at(const Instance& inst, long long r, const DistanceOracle& d, long long cap) {
    return brute_force_opt(inst, d, cap).opt <= r;
}

} // namespace makhc
