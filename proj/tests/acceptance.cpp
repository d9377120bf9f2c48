// Acceptance harness: one pass/fail line per criterion, exit 0 iff all pass.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "makhc/dp.hpp"
#include "makhc/oracle.hpp"
#include "makhc/reductions.hpp"

using namespace makhc;
using Clock = std::chrono::steady_clock;

namespace {

std::uint64_t splitmix(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

long long elapsed_ms(Clock::time_point from) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - from).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

struct Case {
    Instance inst;
    long long opt = 0;
};

// Seeded random suite: every instance has at most 12 vertices (hence at most
// 12 hub locations), budget at most 3, weights at most 3, and a width-at-most-4
// decomposition from the heuristic.
std::vector<Case> build_suite(int count) {
    std::vector<Case> suite;
    for (std::uint64_t seed = 1; (int)suite.size() < count; ++seed) {
        int n = 6 + (int)(seed % 7);
        int k = 1 + (int)(seed % 3);
        long long wmax = 1 + (long long)(seed % 3);
        double density = 0.07 * (double)(seed % 3);
        int dem = 2 + (int)(seed % 5);
        Instance inst = gen_random(n, density, wmax, dem, k, seed);
        if (heuristic_decomposition(inst).width() > 4) continue;
        if (inst.numHubLocations() > 12) continue;
        DistanceOracle d = all_pairs_distances(inst);
        Case c;
        c.inst = std::move(inst);
        c.opt = brute_force_opt(c.inst, d).opt;
        suite.push_back(std::move(c));
    }
    return suite;
}

struct Pipeline {
    bool feasiblePre = false;
    Instance completed;
    NiceTreeDecomposition ntd;
    DistanceOracle d;
};

Pipeline prepare_fixed(const Instance& inst, long long r) {
    Pipeline p;
    DistanceOracle d0 = all_pairs_distances(inst);
    PreprocessResult pre = preprocess_remove(inst, r, d0);
    p.feasiblePre = pre.feasible;
    if (!pre.feasible) return p;
    p.d = all_pairs_distances(pre.inst);
    p.ntd = make_nice(heuristic_decomposition(pre.inst));
    p.completed = complete_bags(pre.inst, p.ntd, p.d);
    return p;
}

// --- criteria 1 and 2: end-to-end guarantees over the whole suite ----------

void criteria_solve(const std::vector<Case>& suite) {
    auto t0 = Clock::now();
    int bad3 = 0, badR = 0;
    for (const Case& c : suite) {
        SolveOptions opts;
        opts.epsilon = 1;
        SolveReport rep = solve(c.inst, opts);
        if (!rep.success || rep.solution.value > 3 * c.opt) ++bad3;
        if (!rep.success || rep.rUsed > c.opt) ++badR;
    }
    long long ms = elapsed_ms(t0);
    std::ostringstream msg;
    msg << suite.size() << " instances, eps=1: value<=3*opt and r<=opt (" << ms << " ms)";
    report(1, bad3 == 0 && badR == 0 && ms < 300000, msg.str());

    auto t1 = Clock::now();
    int bad2 = 0;
    for (const Case& c : suite) {
        SolveOptions opts;
        opts.exactColors = true;
        SolveReport rep = solve(c.inst, opts);
        if (!rep.success || rep.solution.value > 2 * c.opt || rep.rUsed > c.opt) ++bad2;
    }
    std::ostringstream msg2;
    msg2 << suite.size() << " instances, exact colors: value<=2*opt (" << elapsed_ms(t1)
         << " ms)";
    report(2, bad2 == 0, msg2.str());
}

// --- criterion 3: a rejected radius is never actually feasible -------------

void criterion_fail_soundness(const std::vector<Case>& suite) {
    auto t0 = Clock::now();
    long long checked = 0, violations = 0;
    for (const Case& c : suite) {
        DistanceOracle d0 = all_pairs_distances(c.inst);
        for (long long r = std::max(1LL, c.opt - 1); r <= c.opt; ++r) {
            Pipeline p = prepare_fixed(c.inst, r);
            for (ColorMode mode : {ColorMode::Approx, ColorMode::ExactColors}) {
                bool ok = p.feasiblePre &&
                          solve_fixed_r(p.completed, p.ntd, p.d, r, 1, mode).success;
                ++checked;
                if (!ok && feasible_at(c.inst, r, d0)) ++violations;
            }
        }
    }
    std::ostringstream msg;
    msg << checked << " fixed-radius runs, " << violations << " feasible-but-rejected ("
        << elapsed_ms(t0) << " ms)";
    report(3, violations == 0, msg.str());
}

// --- criterion 4: every stored table entry satisfies its invariants --------

void criterion_invariants(const std::vector<Case>& suite) {
    auto t0 = Clock::now();
    long long entries = 0, badEntry = 0, badCount = 0;
    int used = 0;
    for (const Case& c : suite) {
        if (c.inst.n > 12 || used >= 80) continue;
        ++used;
        long long r = std::max(1LL, c.opt);
        Pipeline p = prepare_fixed(c.inst, r);
        if (!p.feasiblePre) continue;
        mpq_class delta = choose_delta(1, std::max(1, p.ntd.height));
        for (ColorMode mode : {ColorMode::Approx, ColorMode::ExactColors}) {
            DpRun run(p.completed, p.ntd, p.d, r, 1, delta, mode);
            run.run();
            for (int t = 0; t < (int)p.ntd.nodes.size(); ++t)
                for (const auto& [key, entry] : run.table(t)) {
                    ++entries;
                    auto hubs = run.reconstruct(t, key);
                    if (verify_conditions(run, t, key, hubs).has_value()) ++badEntry;
                    if ((long long)hubs.size() > entry.A) ++badCount;
                }
        }
    }
    std::ostringstream msg;
    msg << entries << " table entries verified, " << badEntry << " invariant / " << badCount
        << " count defects (" << elapsed_ms(t0) << " ms)";
    report(4, entries > 0 && badEntry == 0 && badCount == 0, msg.str());
}

// --- criterion 5: hardness reductions produce the promised gaps ------------

int min_vertex_cover(const SimpleGraph& g) {
    int best = g.n;
    for (int mask = 0; mask < (1 << g.n); ++mask) {
        bool covers = true;
        for (auto [u, v] : g.edges)
            if (!((mask >> (u - 1)) & 1) && !((mask >> (v - 1)) & 1)) {
                covers = false;
                break;
            }
        if (covers) best = std::min(best, __builtin_popcount((unsigned)mask));
    }
    return best;
}

int min_hitting_set(int universe, const std::vector<std::vector<int>>& family) {
    int best = universe;
    for (int mask = 0; mask < (1 << universe); ++mask) {
        bool hits = true;
        for (const auto& set : family) {
            bool hit = false;
            for (int e : set) hit = hit || ((mask >> (e - 1)) & 1);
            if (!hit) {
                hits = false;
                break;
            }
        }
        if (hits) best = std::min(best, __builtin_popcount((unsigned)mask));
    }
    return best;
}

long long kcenter_opt(int n, const std::vector<Edge>& edges, int k) {
    Instance base;
    base.n = n;
    base.edges = edges;
    base.isClient.assign(n + 1, 1);
    base.isHub.assign(n + 1, 1);
    base.k = k;
    DistanceOracle d = all_pairs_distances(base);
    long long best = -1;
    std::vector<int> pick(k);
    // enumerate k-subsets of 1..n
    for (int i = 0; i < k; ++i) pick[i] = i + 1;
    while (true) {
        long long worst = 0;
        for (Vertex v = 1; v <= n; ++v) {
            long long nearest = -1;
            for (int s : pick) {
                long long dist = d(v, s);
                if (nearest < 0 || dist < nearest) nearest = dist;
            }
            worst = std::max(worst, nearest);
        }
        if (best < 0 || worst < best) best = worst;
        int i = k - 1;
        while (i >= 0 && pick[i] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

void criterion_reductions() {
    auto t0 = Clock::now();
    std::uint64_t s = 12345;
    int vcCases = 0, vcBad = 0, decideBad = 0;
    for (int i = 0; i < 32; ++i) {
        SimpleGraph g;
        g.n = 4 + (int)(splitmix(s) % 2);  // 4..5 vertices
        for (int v = 2; v <= g.n; ++v)  // spanning tree keeps the graph connected
            g.edges.push_back({1 + (int)(splitmix(s) % (std::uint64_t)(v - 1)), v});
        for (int u = 1; u <= g.n; ++u)
            for (int v = u + 2; v <= g.n; ++v)
                if (splitmix(s) % 100 < 25) g.edges.push_back({u, v});
        std::sort(g.edges.begin(), g.edges.end());
        g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
        int vc = min_vertex_cover(g);
        int k = std::max(1, vc - 1 + (int)(splitmix(s) % 3));  // straddle the threshold
        bool yes = vc <= k;
        Instance inst = gen_from_vertex_cover(g, k, /*subdivide=*/true);
        DistanceOracle d = all_pairs_distances(inst);
        long long opt = brute_force_opt(inst, d).opt;
        ++vcCases;
        if (yes ? (opt != 1) : (opt < 3)) ++vcBad;

        // the approximate solver decides the dichotomy: value below 3 iff yes
        SolveOptions opts;
        opts.epsilon = mpq_class(1, 2);
        SolveReport rep = solve(inst, opts);
        bool decidedYes = rep.success && rep.solution.value < 3;
        if (decidedYes != yes) ++decideBad;
    }

    int hsCases = 0, hsBad = 0;
    for (int i = 0; i < 32; ++i) {
        int universe = 3 + (int)(splitmix(s) % 3);  // 3..5 elements
        int numSets = 2 + (int)(splitmix(s) % 3);
        std::vector<std::vector<int>> family;
        for (int j = 0; j < numSets; ++j) {
            std::vector<int> set;
            for (int e = 1; e <= universe; ++e)
                if (splitmix(s) % 100 < 45) set.push_back(e);
            if (set.empty()) set.push_back(1 + (int)(splitmix(s) % universe));
            family.push_back(std::move(set));
        }
        int hs = min_hitting_set(universe, family);
        int k = std::max(1, hs - 1 + (int)(splitmix(s) % 3));
        bool yes = hs <= k;
        Instance inst = gen_from_hitting_set(universe, family, k);
        DistanceOracle d = all_pairs_distances(inst);
        long long opt = brute_force_opt(inst, d).opt;
        ++hsCases;
        if (yes ? (opt != 2) : (opt < 6)) ++hsBad;
    }

    int kcCases = 0, kcBad = 0;
    for (int i = 0; i < 32; ++i) {
        int n = 4 + (int)(splitmix(s) % 4);
        std::vector<Edge> edges;
        for (Vertex v = 2; v <= n; ++v)  // random spanning tree, then extras
            edges.push_back({(Vertex)(1 + (int)(splitmix(s) % (std::uint64_t)(v - 1))), v,
                             (long long)(1 + splitmix(s) % 5)});
        for (int u = 1; u <= n; ++u)
            for (int v = u + 2; v <= n; ++v)
                if (splitmix(s) % 100 < 15)
                    edges.push_back({u, v, (long long)(1 + splitmix(s) % 5)});
        int k = 1 + (int)(splitmix(s) % 2);
        long long kc = kcenter_opt(n, edges, k);
        Instance inst = gen_from_kcenter(n, edges, k);
        DistanceOracle d = all_pairs_distances(inst);
        ++kcCases;
        if (brute_force_opt(inst, d).opt != 2 * kc) ++kcBad;
    }

    std::ostringstream msg;
    msg << vcCases << " vertex-cover (" << decideBad << " decision errors), " << hsCases
        << " hitting-set, " << kcCases << " k-center cases (" << elapsed_ms(t0) << " ms)";
    report(5, vcCases >= 30 && hsCases >= 30 && kcCases >= 30 && vcBad == 0 && hsBad == 0 &&
                  kcBad == 0 && decideBad == 0,
           msg.str());
}

// --- criterion 6: rounded addition stays within 1+eps at every node --------

struct EvalNode {
    long long exact = 0;
    bool rounded = false;     // leaves carry their integer unrounded
    Rounded value;            // meaningful when rounded
};

int build_tree(AdditionTree& tr, int depth, int maxDepth, int& leafBudget, std::uint64_t& s) {
    if (depth >= maxDepth || leafBudget <= 1 || splitmix(s) % 4 == 0) {
        --leafBudget;
        return tr.addLeaf((long long)(splitmix(s) % 50));
    }
    int l = build_tree(tr, depth + 1, maxDepth, leafBudget, s);
    int r = build_tree(tr, depth + 1, maxDepth, leafBudget, s);
    return tr.addInternal(l, r);
}

int tree_height(const AdditionTree& tr, int node) {
    const auto& nd = tr.nodes[node];
    if (nd.leafValue >= 0) return 0;
    return 1 + std::max(tree_height(tr, nd.left), tree_height(tr, nd.right));
}

// returns false on the first node whose rounded value reaches (1+eps)*exact
bool eval_checked(const AdditionTree& tr, int node, const PowerTable& pt, const mpq_class& eps,
                  EvalNode& out) {
    const auto& nd = tr.nodes[node];
    if (nd.leafValue >= 0) {
        out = {nd.leafValue, false, Rounded::zero()};
        return true;
    }
    EvalNode l, r;
    if (!eval_checked(tr, nd.left, pt, eps, l)) return false;
    if (!eval_checked(tr, nd.right, pt, eps, r)) return false;
    out.exact = l.exact + r.exact;
    out.rounded = true;
    if (!l.rounded && !r.rounded) out.value = oplus(l.exact, r.exact, pt);
    else if (!r.rounded) out.value = oplus(l.value, r.exact, pt);
    else if (!l.rounded) out.value = oplus(r.value, l.exact, pt);
    else out.value = oplus(l.value, r.value, pt);
    if (out.value.isOverflow()) return false;
    if (out.exact == 0) return out.value.isZero();
    mpq_class approx = rounded_value(out.value, pt);
    return approx < (1 + eps) * mpq_class((long)out.exact);
}

void criterion_addition_trees() {
    auto t0 = Clock::now();
    const std::array<mpq_class, 3> epsilons = {mpq_class(1), mpq_class(1, 2), mpq_class(1, 10)};
    std::uint64_t s = 777;
    int bad = 0, trees = 0, maxLeaves = 0, maxHeight = 0;
    for (int i = 0; i < 10000; ++i) {
        AdditionTree tr;
        // the generator can overshoot by one leaf per level, so the budget
        // leaves headroom under the 100-leaf cap
        int budget = 2 + (int)(splitmix(s) % 78);
        int maxDepth = 1 + (int)(splitmix(s) % 20);
        int leafBudget = budget;
        tr.root = build_tree(tr, 0, maxDepth, leafBudget, s);
        int h = tree_height(tr, tr.root);
        maxLeaves = std::max(maxLeaves, budget - leafBudget);
        maxHeight = std::max(maxHeight, h);
        ++trees;
        if (h == 0) continue;  // single leaf, nothing rounded
        const mpq_class& eps = epsilons[i % 3];
        // delta strictly below eps / (2 * height)
        mpq_class delta = eps / mpq_class((long)(2 * h + 1));
        PowerTable pt(delta);
        EvalNode root;
        if (!eval_checked(tr, tr.root, pt, eps, root)) {
            ++bad;
            continue;
        }
        // cross-check the root against the library evaluator
        auto [exact, approx] = approx_tree_eval(tr, pt);
        if (exact != root.exact) ++bad;
        else if (exact > 0 && approx != rounded_value(root.value, pt)) ++bad;
    }
    long long ms = elapsed_ms(t0);
    std::ostringstream msg;
    msg << trees << " trees (height<=" << maxHeight << ", leaves<=" << maxLeaves << "), " << bad
        << " over the 1+eps bound (" << ms << " ms)";
    report(6, bad == 0 && maxHeight <= 20 && maxLeaves <= 100 && ms < 60000, msg.str());
}

// --- criterion 7: alphabet size formula and per-node enumeration caps ------

void criterion_alphabet(const std::vector<Case>& suite) {
    auto t0 = Clock::now();
    int checked = 0, bad = 0;
    mpq_class eps = 1;
    for (size_t i = 0; i < suite.size() && i < 40; ++i) {
        const Case& c = suite[i];
        long long r = std::max(1LL, c.opt);
        Pipeline p = prepare_fixed(c.inst, r);
        if (!p.feasiblePre) continue;
        mpq_class delta = choose_delta(eps, std::max(1, p.ntd.height));
        ColorAlphabet alpha = build_alphabet(eps, delta, r);

        // the larger exponent must satisfy (1+delta)^m <= (1+eps)*r < (1+delta)^(m+1)
        PowerTable pt(delta);
        mpq_class cap = (1 + eps) * mpq_class((long)r);
        int cl = pt.ceilLog(cap);
        int m = (pt.pow(cl) == cap) ? cl : cl - 1;
        ++checked;
        if (alpha.numMagnitudes() != 2 + m) {
            ++bad;
            continue;
        }

        DpRun run(p.completed, p.ntd, p.d, r, eps, delta, ColorMode::Approx);
        run.run();
        if (run.numMagnitudes() != alpha.numMagnitudes()) {
            ++bad;
            continue;
        }
        const auto& per = run.stats().perNodeExamined;
        for (int t = 0; t < (int)p.ntd.nodes.size(); ++t) {
            long long capT = 1;
            for (size_t q = 0; q < p.ntd.nodes[t].bag.size(); ++q)
                capT *= 2LL * alpha.numMagnitudes();
            if (per[t] > capT) {
                ++bad;
                break;
            }
        }
    }
    std::ostringstream msg;
    msg << checked << " instances: |alphabet| = 2 + floor(log) and per-node expansions within "
           "(2|alphabet|)^|bag| ("
        << elapsed_ms(t0) << " ms)";
    report(7, checked > 0 && bad == 0, msg.str());
}

// --- criterion 8: planar width bound arithmetic -----------------------------

void criterion_bounds() {
    PlanarBounds a = planar_bounds(1, 1);
    PlanarBounds b = planar_bounds(4, 2);
    bool ok = a.rhoCeil == 5 && a.twCeil == 31 && b.rhoCeil == 14 && b.twCeil == 85;
    for (long long k : {1, 4, 9, 16, 25})
        for (long long r : {0, 1, 2, 3, 7}) {
            PlanarBounds pb = planar_bounds(k, r);
            ok = ok && pb.exact && pb.twCeil == 6 * pb.rhoCeil + 1;
        }
    report(8, ok, "(1,1)->(5,31), (4,2)->(14,85), tw = 6*rho+1 on perfect squares");
}

// --- criterion 9: vertex removal preserves feasibility ----------------------

void criterion_preprocess(const std::vector<Case>& suite) {
    auto t0 = Clock::now();
    long long checked = 0, bad = 0;
    for (const Case& c : suite) {
        DistanceOracle d0 = all_pairs_distances(c.inst);
        for (long long r = std::max(1LL, c.opt - 2); r <= c.opt + 1; ++r) {
            bool origFeasible = feasible_at(c.inst, r, d0);
            PreprocessResult pre = preprocess_remove(c.inst, r, d0);
            bool preFeasible = pre.feasible &&
                               feasible_at(pre.inst, r, all_pairs_distances(pre.inst));
            ++checked;
            if (origFeasible != preFeasible) ++bad;
        }
    }
    std::ostringstream msg;
    msg << checked << " (instance, radius) pairs, " << bad << " feasibility flips ("
        << elapsed_ms(t0) << " ms)";
    report(9, bad == 0, msg.str());
}

// --- criterion 10: byte-identical output across runs and thread counts ------

std::string run_cli(const std::string& args) {
    std::string cmd = std::string(MAKHC_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string out;
    std::array<char, 4096> buf;
    while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    pclose(pipe);
    return out;
}

void criterion_determinism(const std::vector<Case>& suite) {
    auto t0 = Clock::now();
    int checked = 0, bad = 0;
    for (size_t i = 0; i < suite.size() && i < 10; ++i) {
        std::string path = "/tmp/makhc_accept_" + std::to_string(i) + ".mak";
        std::ofstream(path) << instance_to_string(suite[i].inst);
        for (const char* extra : {"", " --exact-colors"}) {
            std::string base = "solve --instance " + path + " --epsilon 1/2 --quiet" + extra;
            std::string a = run_cli(base);
            std::string b = run_cli(base);
            std::string c = run_cli(base + " --threads 4");
            ++checked;
            if (a.empty() || a != b || a != c) ++bad;
        }
    }
    std::ostringstream msg;
    msg << checked << " solver outputs compared across reruns and --threads 4 ("
        << elapsed_ms(t0) << " ms)";
    report(10, checked > 0 && bad == 0, msg.str());
}

} // namespace

int main() {
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    auto t0 = Clock::now();
    std::vector<Case> suite = build_suite(200);
    std::printf("suite: %zu instances generated in %lld ms\n", suite.size(), elapsed_ms(t0));

    criteria_solve(suite);
    criterion_fail_soundness(suite);
    criterion_invariants(suite);
    criterion_reductions();
    criterion_addition_trees();
    criterion_alphabet(suite);
    criterion_bounds();
    criterion_preprocess(suite);
    criterion_determinism(suite);

    std::printf("total: %lld ms, %d failing criteria\n", elapsed_ms(t0), failures);
    return failures == 0 ? 0 : 1;
}
