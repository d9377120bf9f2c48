#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "makhc/distance.hpp"
#include "makhc/instance.hpp"

namespace makhc {

// Plain (rooted-nowhere) tree decomposition: bags indexed by node id plus the
// tree edges between node ids.
struct TreeDecomposition {
    std::map<int, std::vector<Vertex>> bags;  // each bag sorted ascending
    std::vector<std::pair<int, int>> treeEdges;

    int width() const;
};

// nullopt when the decomposition satisfies all three tree-decomposition
// properties for the instance; otherwise a report naming the first violated
// property together with a witness.
std::optional<std::string> validate(const TreeDecomposition& td, const Instance& inst);

// Min-fill elimination-ordering heuristic. Ties broken toward the lowest
// vertex index, so the result is deterministic.
TreeDecomposition heuristic_decomposition(const Instance& inst);

// PACE 2017 .td interchange format.
TreeDecomposition parse_td(const std::string& text);
TreeDecomposition load_td(const std::string& path);
std::string td_to_string(const TreeDecomposition& td);
void write_td(const TreeDecomposition& td, const std::string& path);

enum class NodeKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
    NodeKind kind = NodeKind::Leaf;
    Vertex vertex = 0;           // introduced/forgotten vertex, else 0
    std::vector<Vertex> bag;     // sorted ascending
    int left = -1;               // child indices into NiceTreeDecomposition::nodes
    int right = -1;
    std::vector<Vertex> subtreeVertices;  // sorted ascending
};

struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;
    int height = 0;  // edges on the longest root-to-leaf path

    int width() const;
    // View as a plain decomposition (node i -> bag) so validate() applies.
    TreeDecomposition asPlain() const;
};

// Standard nice transformation: binary tree of leaf/introduce/forget/join
// nodes with the same width, empty root and leaf bags, and recorded height.
NiceTreeDecomposition make_nice(const TreeDecomposition& td);

// Make every bag pair adjacent at weight d(u,v): missing edges are added and
// heavier existing edges are lowered.  All weights are realized distances, so
// the metric is unchanged.
Instance complete_bags(const Instance& inst, const NiceTreeDecomposition& ntd,
                       const DistanceOracle& oracle);

} // namespace makhc
