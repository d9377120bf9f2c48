#pragma once

#include "makhc/distance.hpp"
#include "makhc/instance.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

namespace makhc {

/// V(G_ab) at radius r: vertices v with d(a,v) + d(v,b) <= r.
std::vector<Vertex> demand_subgraph(const Demand& dem, long long r, const DistanceOracle& d,
                                    int n);

struct PreprocessResult {
    bool feasible = false;       // false: no solution of cost <= r can exist
    Instance inst;               // induced sub-instance, vertices renumbered 1..n'
    std::vector<Vertex> origId;  // origId[v'] = vertex id in the source instance
    int numComponents = 1;       // kept components (bridged by connector edges if > 1)
};

/// Removes every vertex whose best demand detour exceeds r. Components without
/// a demand endpoint are dropped; if a demand's endpoints land in different
/// components the radius is infeasible. Remaining components are bridged by
/// connector edges of weight `connectorWeight` (must exceed every distance
/// threshold the caller will apply; pass <= 0 to use 4r + 5).
PreprocessResult preprocess_remove(const Instance& inst, long long r, const DistanceOracle& d,
                                   long long connectorWeight = -1);

/// Rescales edge weights by ceil(3n/(eps*A) * w) when that factor is < 1
/// (compression); otherwise the instance is returned unchanged. A = 0 skips
/// rescaling entirely.
Instance rescale(const Instance& inst, const mpq_class& epsilon, long long A);

struct Evaluation {
    long long value = 0;
    std::map<Demand, Vertex> perDemandHub;  // lowest-id arg-min hub per demand
};

/// Exact objective max over demands of min over hubs of d(a,h)+d(h,b).
/// Throws on an empty hub set.
Evaluation evaluate_solution(const Instance& inst, const std::vector<Vertex>& hubs,
                             const DistanceOracle& d);

struct Solution {
    std::vector<Vertex> hubs;
    long long value = 0;
    long long rUsed = 0;
    std::map<Demand, Vertex> perDemandHub;
};

/// Greedy 3-approximation: ascending over candidate radii; at each radius,
/// serve the lowest-indexed open demand with the lowest-indexed hub inside its
/// demand subgraph and mark everything within 3r served.
Solution greedy_three_approx(const Instance& inst, const DistanceOracle& d);

} // namespace makhc
