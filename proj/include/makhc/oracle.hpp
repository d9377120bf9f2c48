#pragma once

#include <vector>

#include "makhc/distance.hpp"
#include "makhc/instance.hpp"

namespace makhc {

struct OracleResult {
    long long opt = 0;
    std::vector<Vertex> optimalHubs;  // lexicographically least arg-min set
};

inline constexpr long long kDefaultEnumerationCap = 5'000'000;

// Exhaustive search over all k-subsets of hub locations.  Throws when
// C(|hubLocations|, k) exceeds the cap.
OracleResult brute_force_opt(const Instance& inst, const DistanceOracle& d,
                             long long cap = kDefaultEnumerationCap);

// True iff some hub set of size at most k achieves objective <= r.
bool feasible_at(const Instance& inst, long long r, const DistanceOracle& d,
                 long long cap = kDefaultEnumerationCap);

} // namespace makhc
