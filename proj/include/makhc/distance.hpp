#pragma once

#include "makhc/instance.hpp"

#include <limits>
#include <vector>

namespace makhc {

constexpr long long kInfDist = std::numeric_limits<long long>::max() / 4;

/// All-pairs shortest-path distances. Immutable after construction.
class DistanceOracle {
public:
    DistanceOracle() = default;

    long long operator()(Vertex u, Vertex v) const { return d_[idx(u, v)]; }
    int size() const { return n_; }
    bool connected() const { return connected_; }

    /// Dijkstra from every source; `threads` bounds the worker count.
    static DistanceOracle compute(const Instance& inst, int threads = 1);

private:
    size_t idx(Vertex u, Vertex v) const { return (size_t)(u - 1) * n_ + (v - 1); }
    int n_ = 0;
    bool connected_ = true;
    std::vector<long long> d_;
};

/// Computes the oracle and rejects disconnected instances.
DistanceOracle all_pairs_distances(const Instance& inst, int threads = 1);

} // namespace makhc
