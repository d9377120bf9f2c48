#include "makhc/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace makhc {

int Instance::numHubLocations() const {
    int c = 0;
    for (Vertex v = 1; v <= n; ++v)
        if (isHub[v]) ++c;
    return c;
}

std::vector<Vertex> Instance::hubLocations() const {
    std::vector<Vertex> hs;
    for (Vertex v = 1; v <= n; ++v)
        if (isHub[v]) hs.push_back(v);
    return hs;
}

void Instance::canonicalize() {
    std::sort(demands.begin(), demands.end());
    demands.erase(std::unique(demands.begin(), demands.end()), demands.end());
}

namespace {

bool connected(const Instance& inst) {
    if (inst.n == 0) return false;
    std::vector<std::vector<Vertex>> adj(inst.n + 1);
    for (const auto& e : inst.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(inst.n + 1, 0);
    std::vector<Vertex> stack{1};
    seen[1] = 1;
    int cnt = 0;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        ++cnt;
        for (Vertex w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return cnt == inst.n;
}

} // namespace

std::optional<std::string> validate_instance(const Instance& inst) {
    if (inst.n <= 0) return "instance has no vertices";
    if ((int)inst.isClient.size() != inst.n + 1 || (int)inst.isHub.size() != inst.n + 1)
        return "role arrays not sized n+1";
    for (Vertex v = 1; v <= inst.n; ++v)
        if (!inst.isClient[v] && !inst.isHub[v])
            return "vertex " + std::to_string(v) + " is neither client nor hub location";
    for (const auto& e : inst.edges) {
        if (e.u < 1 || e.u > inst.n || e.v < 1 || e.v > inst.n)
            return "edge endpoint out of range";
        if (e.u == e.v) return "self-loop edge at vertex " + std::to_string(e.u);
        if (e.w <= 0) return "non-positive edge weight";
    }
    if (!connected(inst)) return "graph is disconnected";
    for (const auto& d : inst.demands) {
        if (d.a < 1 || d.a > inst.n || d.b < 1 || d.b > inst.n)
            return "demand endpoint out of range";
        if (!inst.isClient[d.a] || !inst.isClient[d.b])
            return "demand endpoint is not a client";
    }
    if (!std::is_sorted(inst.demands.begin(), inst.demands.end()))
        return "demand list not in canonical order";
    if (std::adjacent_find(inst.demands.begin(), inst.demands.end()) != inst.demands.end())
        return "duplicate demand";
    int numHubs = inst.numHubLocations();
    if (inst.k < 1 || inst.k > numHubs)
        return "k out of range [1, |H|]";
    return std::nullopt;
}

std::optional<Instance> parse_instance(std::istream& in, ParseError& err) {
    Instance inst;
    bool sawHeader = false;
    int m = 0, numDemands = 0;
    std::string line;
    int lineNo = 0;
    std::vector<char> roleSeen;
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok) || tok == "c") continue;
        if (tok == "p") {
            std::string kind;
            if (sawHeader || !(ss >> kind >> inst.n >> m >> numDemands >> inst.k) || kind != "makhc") {
                err = {lineNo, "bad or duplicate problem line (expected: p makhc n m numDemands k)"};
                return std::nullopt;
            }
            if (inst.n < 1) {
                err = {lineNo, "vertex count must be positive"};
                return std::nullopt;
            }
            sawHeader = true;
            inst.isClient.assign(inst.n + 1, 0);
            inst.isHub.assign(inst.n + 1, 0);
            roleSeen.assign(inst.n + 1, 0);
        } else if (tok == "e") {
            Edge e;
            if (!sawHeader || !(ss >> e.u >> e.v >> e.w)) {
                err = {lineNo, "bad edge line"};
                return std::nullopt;
            }
            if (e.u < 1 || e.u > inst.n || e.v < 1 || e.v > inst.n || e.w <= 0) {
                err = {lineNo, "edge endpoint out of range or non-positive weight"};
                return std::nullopt;
            }
            inst.edges.push_back(e);
        } else if (tok == "v") {
            Vertex id;
            std::string role;
            if (!sawHeader || !(ss >> id >> role) || id < 1 || id > inst.n) {
                err = {lineNo, "bad vertex role line"};
                return std::nullopt;
            }
            if (roleSeen[id]) {
                err = {lineNo, "duplicate role for vertex " + std::to_string(id)};
                return std::nullopt;
            }
            roleSeen[id] = 1;
            if (role == "C") inst.isClient[id] = 1;
            else if (role == "H") inst.isHub[id] = 1;
            else if (role == "B") inst.isClient[id] = inst.isHub[id] = 1;
            else {
                err = {lineNo, "unknown role '" + role + "' (expected C, H or B)"};
                return std::nullopt;
            }
        } else if (tok == "d") {
            Demand d;
            if (!sawHeader || !(ss >> d.a >> d.b)) {
                err = {lineNo, "bad demand line"};
                return std::nullopt;
            }
            inst.demands.push_back(d);
        } else {
            err = {lineNo, "unknown line type '" + tok + "'"};
            return std::nullopt;
        }
    }
    if (!sawHeader) {
        err = {lineNo, "missing problem line"};
        return std::nullopt;
    }
    for (Vertex v = 1; v <= inst.n; ++v)
        if (!roleSeen[v]) inst.isClient[v] = inst.isHub[v] = 1;
    if ((int)inst.edges.size() != m) {
        err = {lineNo, "edge count does not match header"};
        return std::nullopt;
    }
    if ((int)inst.demands.size() != numDemands) {
        err = {lineNo, "demand count does not match header"};
        return std::nullopt;
    }
    inst.canonicalize();
    if (auto bad = validate_instance(inst)) {
        err = {lineNo, *bad};
        return std::nullopt;
    }
    return inst;
}

std::optional<Instance> load_instance(const std::string& path, ParseError& err) {
    std::ifstream in(path);
    if (!in) {
        err = {0, "cannot open '" + path + "'"};
        return std::nullopt;
    }
    return parse_instance(in, err);
}

void write_instance(std::ostream& out, const Instance& inst) {
    out << "p makhc " << inst.n << ' ' << inst.edges.size() << ' ' << inst.demands.size()
        << ' ' << inst.k << '\n';
    for (Vertex v = 1; v <= inst.n; ++v) {
        if (inst.isClient[v] && inst.isHub[v]) continue; // default role B
        out << "v " << v << ' ' << (inst.isClient[v] ? 'C' : 'H') << '\n';
    }
    for (const auto& e : inst.edges) out << "e " << e.u << ' ' << e.v << ' ' << e.w << '\n';
    for (const auto& d : inst.demands) out << "d " << d.a << ' ' << d.b << '\n';
}

std::string instance_to_string(const Instance& inst) {
    std::ostringstream ss;
    write_instance(ss, inst);
    return ss.str();
}

} // namespace makhc
