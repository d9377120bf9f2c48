#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "makhc/instance.hpp"

namespace makhc {

// Undirected simple graph for the unweighted reductions.
struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

// Every vertex is both client and hub location; one demand per edge; unit
// weights.  With subdivide, each edge is first split into three parts (two new
// vertices) and the budget becomes k + |E|; the result is triangle-free.
Instance gen_from_vertex_cover(const SimpleGraph& g, int k, bool subdivide);

// One hub vertex per universe element, one client pair and demand per set,
// unit edges from both clients to each member hub.  Hubs are linked into a
// chain of unit edges through nine auxiliary clients between consecutive
// hubs, so the graph is connected but no chain path can serve a demand at
// cost below 6.  Yes-instances have optimum 2, no-instances at least 6.
Instance gen_from_hitting_set(int universeSize, const std::vector<std::vector<int>>& family,
                              int k);

// Every vertex is both client and hub location with a self-demand (u,u); the
// optimum is exactly twice the k-center optimum of the input graph.
Instance gen_from_kcenter(int n, const std::vector<Edge>& edges, int k);

struct PlanarBounds {
    double rho = 0;        // sqrt(k)*(2r+1) + 2r
    double tw = 0;         // 6*sqrt(k)*(2r+1) + 12r + 1
    long long rhoCeil = 0; // exact integer ceiling of rho
    long long twCeil = 0;  // exact integer ceiling of tw
    bool exact = false;    // true when k is a perfect square
};

PlanarBounds planar_bounds(long long k, long long r);

// Deterministic pseudo-random connected instance: spanning-tree backbone plus
// density-controlled extra edges, weights in [1, weightMax], every vertex a
// client, about half the vertices hub locations.
Instance gen_random(int n, double density, long long weightMax, int numDemands, int k,
                    std::uint64_t seed);

// Unit-weight planar grid; demandPattern is "corners" (the two opposite
// corner pairs) or "self" (a self-demand at every vertex).
Instance gen_grid(int rows, int cols, const std::string& demandPattern, int k);

} // namespace makhc
