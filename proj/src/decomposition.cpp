#include "makhc/decomposition.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace makhc {

int TreeDecomposition::width() const {
    int w = -1;
    for (const auto& [id, bag] : bags) w = std::max(w, (int)bag.size() - 1);
    return w;
}

namespace {

bool contains(const std::vector<Vertex>& sorted, Vertex v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

} // namespace

std::optional<std::string> validate(const TreeDecomposition& td, const Instance& inst) {
    if (td.bags.empty()) return "decomposition has no bags";

    std::map<int, std::vector<int>> adj;
    for (const auto& [id, bag] : td.bags) adj[id];
    for (auto [a, b] : td.treeEdges) {
        if (!td.bags.count(a) || !td.bags.count(b))
            return "tree edge (" + std::to_string(a) + "," + std::to_string(b) +
                   ") references an unknown bag";
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    if (td.treeEdges.size() + 1 != td.bags.size())
        return "tree edges do not form a tree: " + std::to_string(td.treeEdges.size()) +
               " edges for " + std::to_string(td.bags.size()) + " bags";
    {
        std::set<int> seen;
        std::vector<int> stack{td.bags.begin()->first};
        seen.insert(stack[0]);
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int u : adj[t])
                if (seen.insert(u).second) stack.push_back(u);
        }
        if ((int)seen.size() != (int)td.bags.size())
            return "tree edges do not form a tree: disconnected";
    }

    // (i) every vertex appears in some bag
    std::vector<char> covered(inst.n + 1, 0);
    for (const auto& [id, bag] : td.bags)
        for (Vertex v : bag) {
            if (v < 1 || v > inst.n)
                return "bag " + std::to_string(id) + " contains out-of-range vertex " +
                       std::to_string(v);
            covered[v] = 1;
        }
    for (Vertex v = 1; v <= inst.n; ++v)
        if (!covered[v])
            return "property (i) violated: vertex " + std::to_string(v) + " is in no bag";

    // (ii) every graph edge fits in some bag
    for (const auto& e : inst.edges) {
        bool ok = false;
        for (const auto& [id, bag] : td.bags)
            if (contains(bag, e.u) && contains(bag, e.v)) {
                ok = true;
                break;
            }
        if (!ok)
            return "property (ii) violated: edge (" + std::to_string(e.u) + "," +
                   std::to_string(e.v) + ") is covered by no bag";
    }

    // (iii) occurrences of each vertex induce a connected subtree
    for (Vertex v = 1; v <= inst.n; ++v) {
        std::set<int> occ;
        for (const auto& [id, bag] : td.bags)
            if (contains(bag, v)) occ.insert(id);
        if (occ.empty()) continue;
        std::set<int> seen;
        std::vector<int> stack{*occ.begin()};
        seen.insert(stack[0]);
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int u : adj[t])
                if (occ.count(u) && seen.insert(u).second) stack.push_back(u);
        }
        if (seen.size() != occ.size())
            return "property (iii) violated: occurrences of vertex " + std::to_string(v) +
                   " are disconnected";
    }
    return std::nullopt;
}

TreeDecomposition heuristic_decomposition(const Instance& inst) {
    int n = inst.n;
    std::vector<std::set<Vertex>> nbr(n + 1);
    for (const auto& e : inst.edges)
        if (e.u != e.v) {
            nbr[e.u].insert(e.v);
            nbr[e.v].insert(e.u);
        }
    std::vector<char> alive(n + 1, 1);

    TreeDecomposition td;
    std::vector<Vertex> order;
    std::vector<std::vector<Vertex>> bagOf(n + 1);
    for (int step = 0; step < n; ++step) {
        Vertex best = 0;
        long long bestFill = -1;
        for (Vertex v = 1; v <= n; ++v) {
            if (!alive[v]) continue;
            long long fill = 0;
            std::vector<Vertex> nb(nbr[v].begin(), nbr[v].end());
            for (size_t i = 0; i < nb.size(); ++i)
                for (size_t j = i + 1; j < nb.size(); ++j)
                    if (!nbr[nb[i]].count(nb[j])) ++fill;
            if (best == 0 || fill < bestFill) {
                best = v;
                bestFill = fill;
            }
        }
        std::vector<Vertex> bag(nbr[best].begin(), nbr[best].end());
        bag.push_back(best);
        std::sort(bag.begin(), bag.end());
        bagOf[best] = bag;
        order.push_back(best);
        std::vector<Vertex> nb(nbr[best].begin(), nbr[best].end());
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j) {
                nbr[nb[i]].insert(nb[j]);
                nbr[nb[j]].insert(nb[i]);
            }
        for (Vertex w : nb) nbr[w].erase(best);
        nbr[best].clear();
        alive[best] = 0;
    }

    std::vector<int> elimPos(n + 1, 0);
    for (int i = 0; i < n; ++i) elimPos[order[i]] = i;
    for (int i = 0; i < n; ++i) td.bags[i + 1] = bagOf[order[i]];
    for (int i = 0; i < n; ++i) {
        // Attach to the bag of the earliest-eliminated later neighbor; this is
        // the standard clique-tree construction from an elimination ordering.
        int parent = -1;
        for (Vertex w : bagOf[order[i]])
            if (w != order[i] && elimPos[w] > i && (parent < 0 || elimPos[w] < parent))
                parent = elimPos[w];
        if (parent < 0 && i + 1 < n) parent = i + 1;  // isolated remainder: chain on
        if (parent >= 0) td.treeEdges.push_back({i + 1, parent + 1});
    }
    return td;
}

TreeDecomposition parse_td(const std::string& text) {
    TreeDecomposition td;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    bool header = false;
    int numBags = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "s") {
            std::string kind;
            int maxBag, n;
            if (!(ls >> kind >> numBags >> maxBag >> n) || kind != "td")
                throw std::runtime_error("line " + std::to_string(lineNo) + ": bad s-line");
            header = true;
        } else if (tag == "b") {
            int id;
            if (!(ls >> id))
                throw std::runtime_error("line " + std::to_string(lineNo) + ": bad bag line");
            std::vector<Vertex>& bag = td.bags[id];
            Vertex v;
            while (ls >> v) bag.push_back(v);
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
        } else {
            int a = std::stoi(tag), b;
            if (!(ls >> b))
                throw std::runtime_error("line " + std::to_string(lineNo) + ": bad edge line");
            td.treeEdges.push_back({a, b});
        }
    }
    if (!header) throw std::runtime_error("missing s-line header");
    if ((int)td.bags.size() != numBags)
        throw std::runtime_error("header announced " + std::to_string(numBags) +
                                 " bags, found " + std::to_string(td.bags.size()));
    return td;
}

TreeDecomposition load_td(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_td(ss.str());
}

std::string td_to_string(const TreeDecomposition& td) {
    int maxBag = 0, maxV = 0;
    for (const auto& [id, bag] : td.bags) {
        maxBag = std::max(maxBag, (int)bag.size());
        for (Vertex v : bag) maxV = std::max(maxV, v);
    }
    std::ostringstream out;
    out << "s td " << td.bags.size() << ' ' << maxBag << ' ' << maxV << '\n';
    for (const auto& [id, bag] : td.bags) {
        out << "b " << id;
        for (Vertex v : bag) out << ' ' << v;
        out << '\n';
    }
    for (auto [a, b] : td.treeEdges) out << a << ' ' << b << '\n';
    return out.str();
}

void write_td(const TreeDecomposition& td, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << td_to_string(td);
}

int NiceTreeDecomposition::width() const {
    int w = -1;
    for (const auto& node : nodes) w = std::max(w, (int)node.bag.size() - 1);
    return w;
}

TreeDecomposition NiceTreeDecomposition::asPlain() const {
    TreeDecomposition td;
    for (int i = 0; i < (int)nodes.size(); ++i) {
        td.bags[i + 1] = nodes[i].bag;
        if (nodes[i].left >= 0) td.treeEdges.push_back({i + 1, nodes[i].left + 1});
        if (nodes[i].right >= 0) td.treeEdges.push_back({i + 1, nodes[i].right + 1});
    }
    return td;
}

namespace {

int addNode(NiceTreeDecomposition& out, NodeKind kind, Vertex v,
            std::vector<Vertex> bag, int child) {
    NiceNode node;
    node.kind = kind;
    node.vertex = v;
    node.bag = std::move(bag);
    node.left = child;
    out.nodes.push_back(std::move(node));
    return (int)out.nodes.size() - 1;
}

// Build a chain from an existing node (with bag `from`) to a node with bag
// `to`: forget the vertices leaving, then introduce the vertices entering.
int morphChain(NiceTreeDecomposition& out, int node, std::vector<Vertex> from,
               const std::vector<Vertex>& to) {
    for (Vertex v : std::vector<Vertex>(from)) {
        if (contains(to, v)) continue;
        from.erase(std::find(from.begin(), from.end(), v));
        node = addNode(out, NodeKind::Forget, v, from, node);
    }
    for (Vertex v : to) {
        if (contains(from, v)) continue;
        from.insert(std::upper_bound(from.begin(), from.end(), v), v);
        node = addNode(out, NodeKind::Introduce, v, from, node);
    }
    return node;
}

// Returns the index of a nice node whose bag equals td.bags.at(t).
int buildNice(NiceTreeDecomposition& out, const TreeDecomposition& td,
              const std::map<int, std::vector<int>>& adj, int t, int parent) {
    const std::vector<Vertex>& bag = td.bags.at(t);
    std::vector<int> branches;
    for (int c : adj.at(t)) {
        if (c == parent) continue;
        int childTop = buildNice(out, td, adj, c, t);
        branches.push_back(morphChain(out, childTop, td.bags.at(c), bag));
    }
    if (branches.empty()) {
        int node = addNode(out, NodeKind::Leaf, 0, {}, -1);
        return morphChain(out, node, {}, bag);
    }
    int acc = branches[0];
    for (size_t i = 1; i < branches.size(); ++i) {
        NiceNode join;
        join.kind = NodeKind::Join;
        join.bag = bag;
        join.left = acc;
        join.right = branches[i];
        out.nodes.push_back(std::move(join));
        acc = (int)out.nodes.size() - 1;
    }
    return acc;
}

void fillSubtrees(NiceTreeDecomposition& ntd) {
    // Nodes were appended children-first, so a forward pass is bottom-up.
    for (auto& node : ntd.nodes) {
        std::set<Vertex> s(node.bag.begin(), node.bag.end());
        if (node.left >= 0)
            s.insert(ntd.nodes[node.left].subtreeVertices.begin(),
                     ntd.nodes[node.left].subtreeVertices.end());
        if (node.right >= 0)
            s.insert(ntd.nodes[node.right].subtreeVertices.begin(),
                     ntd.nodes[node.right].subtreeVertices.end());
        node.subtreeVertices.assign(s.begin(), s.end());
    }
}

int measureHeight(const NiceTreeDecomposition& ntd, int t) {
    const NiceNode& node = ntd.nodes[t];
    int h = 0;
    if (node.left >= 0) h = std::max(h, 1 + measureHeight(ntd, node.left));
    if (node.right >= 0) h = std::max(h, 1 + measureHeight(ntd, node.right));
    return h;
}

} // namespace

NiceTreeDecomposition make_nice(const TreeDecomposition& td) {
    if (td.bags.empty()) throw std::invalid_argument("make_nice: empty decomposition");
    std::map<int, std::vector<int>> adj;
    for (const auto& [id, bag] : td.bags) adj[id];
    for (auto [a, b] : td.treeEdges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    // Root at the largest bag (lowest id on ties).
    int root = td.bags.begin()->first;
    for (const auto& [id, bag] : td.bags)
        if (bag.size() > td.bags.at(root).size()) root = id;

    NiceTreeDecomposition out;
    int top = buildNice(out, td, adj, root, -1);
    top = morphChain(out, top, td.bags.at(root), {});
    out.root = top;
    fillSubtrees(out);
    out.height = measureHeight(out, out.root);
    return out;
}

Instance complete_bags(const Instance& inst, const NiceTreeDecomposition& ntd,
                       const DistanceOracle& oracle) {
    std::map<std::pair<Vertex, Vertex>, size_t> have;
    Instance out = inst;
    for (size_t i = 0; i < out.edges.size(); ++i) {
        const auto& e = out.edges[i];
        have.emplace(std::make_pair(std::min(e.u, e.v), std::max(e.u, e.v)), i);
    }
    for (const auto& node : ntd.nodes)
        for (size_t i = 0; i < node.bag.size(); ++i)
            for (size_t j = i + 1; j < node.bag.size(); ++j) {
                auto p = std::make_pair(node.bag[i], node.bag[j]);
                long long dist = oracle(p.first, p.second);
                auto [it, fresh] = have.emplace(p, out.edges.size());
                if (fresh) out.edges.push_back({p.first, p.second, dist});
                // an existing heavier edge is lowered to the realized
                // distance so bag mates are adjacent at their true distance
                // even in induced subgraphs; the metric is unchanged
                else if (out.edges[it->second].w > dist) out.edges[it->second].w = dist;
            }
    out.canonicalize();
    return out;
}

} // namespace makhc
