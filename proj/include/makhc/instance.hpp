#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace makhc {

using Vertex = int;  // 1-based, contiguous

struct Edge {
    Vertex u = 0, v = 0;
    long long w = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Demand {
    Vertex a = 0, b = 0;
    friend bool operator==(const Demand&, const Demand&) = default;
    friend auto operator<=>(const Demand&, const Demand&) = default;
};

/// A Multiple Allocation k-Hub Center instance: connected weighted graph,
/// client/hub-location roles, ordered demand pairs and hub budget k.
struct Instance {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<char> isClient;  // indexed 1..n
    std::vector<char> isHub;     // indexed 1..n
    std::vector<Demand> demands; // sorted, deduplicated
    int k = 0;

    bool client(Vertex v) const { return isClient[v]; }
    bool hub(Vertex v) const { return isHub[v]; }
    int numHubLocations() const;
    std::vector<Vertex> hubLocations() const;

    /// Sorts and deduplicates the demand list (canonical order).
    void canonicalize();
};

/// Returns an error message naming the first violated invariant, or nullopt.
std::optional<std::string> validate_instance(const Instance& inst);

/// Line-based instance format:
///   p makhc <n> <m> <numDemands> <k>
///   e <u> <v> <w>
///   v <id> <C|H|B>
///   d <a> <b>
/// Vertices without a `v` line default to role B. `c` lines are comments.
struct ParseError {
    int line = 0;
    std::string message;
};

std::optional<Instance> parse_instance(std::istream& in, ParseError& err);
std::optional<Instance> load_instance(const std::string& path, ParseError& err);
void write_instance(std::ostream& out, const Instance& inst);
std::string instance_to_string(const Instance& inst);

} // namespace makhc
