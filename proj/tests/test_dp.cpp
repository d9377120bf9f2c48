#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "makhc/dp.hpp"
#include "makhc/oracle.hpp"
#include "makhc/reductions.hpp"

using namespace makhc;

namespace {

Instance parse(const std::string& text) {
    std::istringstream in(text);
    ParseError err;
    auto inst = parse_instance(in, err);
    REQUIRE_MESSAGE(inst.has_value(), err.message);
    return *inst;
}

// Full fixed-radius pipeline on a raw instance: removal, decomposition,
// bag completion, then a single table evaluation.
struct Pipeline {
    bool feasiblePre = false;
    Instance completed;
    NiceTreeDecomposition ntd;
    DistanceOracle d;
    FixedResult result;
};

Pipeline run_fixed(const Instance& inst, long long r, const mpq_class& eps, ColorMode mode) {
    Pipeline p;
    DistanceOracle d0 = all_pairs_distances(inst);
    PreprocessResult pre = preprocess_remove(inst, r, d0);
    (void)mode;
    p.feasiblePre = pre.feasible;
    if (!pre.feasible) return p;
    p.d = all_pairs_distances(pre.inst);
    TreeDecomposition td = heuristic_decomposition(pre.inst);
    p.ntd = make_nice(td);
    p.completed = complete_bags(pre.inst, p.ntd, p.d);
    p.result = solve_fixed_r(p.completed, p.ntd, p.d, r, eps, mode);
    return p;
}

} // namespace

TEST_CASE("demand bit sets behave like sets of indices") {
    DemandBits a(130), b(130);
    a.set(0);
    a.set(129);
    CHECK(a.test(0));
    CHECK(a.test(129));
    CHECK_FALSE(a.test(64));
    b.set(64);
    CHECK_FALSE(a.subsetOf(b));
    b.orWith(a);
    CHECK(a.subsetOf(b));
    DemandBits c(130);
    c.set(129);
    c.set(64);
    CHECK(c.subsetOfUnion(a, b));
    DemandBits e(130);
    e.set(100);
    CHECK_FALSE(e.subsetOfUnion(a, b));
}

TEST_CASE("fixed-radius table run succeeds exactly down to the optimum") {
    // path 1-2-3-4-5, demands (1,3) and (3,5): optimum 2 with hub 3.
    Instance inst = parse(
        "p makhc 5 4 2 1\n"
        "e 1 2 1\ne 2 3 1\ne 3 4 1\ne 4 5 1\n"
        "d 1 3\nd 3 5\n");
    DistanceOracle d = all_pairs_distances(inst);
    long long opt = brute_force_opt(inst, d).opt;
    CHECK(opt == 2);

    for (ColorMode mode : {ColorMode::ExactColors, ColorMode::Approx}) {
        for (long long r = 1; r <= 4; ++r) {
            Pipeline p = run_fixed(inst, r, 1, mode);
            bool ok = p.feasiblePre && p.result.success;
            // Completeness: whenever a radius-r solution exists, the run
            // accepts.  Soundness below the optimum is checked by the
            // accepting value, not here (approx mode may accept slightly
            // early by design).
            if (r >= opt) CHECK_MESSAGE(ok, "mode/r ", (int)mode, "/", r);
            if (ok && mode == ColorMode::ExactColors) {
                // An accepting exact-colors run yields value <= 2r on the
                // completed instance.
                Evaluation ev = evaluate_solution(p.completed, p.result.hubs, p.d);
                CHECK(ev.value <= 2 * r);
                CHECK((int)p.result.hubs.size() <= inst.k);
            }
        }
    }
}

TEST_CASE("failed runs never hide a feasible radius") {
    // Randomized sweep: whenever the exact-colors run rejects radius r, the
    // exhaustive oracle must agree that r is infeasible.
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        Instance inst = gen_random(5 + (int)(seed % 6), 0.2, 3, 2 + (int)(seed % 3),
                                   1 + (int)(seed % 2), seed);
        DistanceOracle d = all_pairs_distances(inst);
        long long opt = brute_force_opt(inst, d).opt;
        for (long long r = std::max(1LL, opt - 2); r <= opt + 1; ++r) {
            Pipeline p = run_fixed(inst, r, 1, ColorMode::ExactColors);
            bool ok = p.feasiblePre && p.result.success;
            if (!ok) CHECK_MESSAGE(!feasible_at(inst, r, d), "seed ", seed, " r ", r);
        }
    }
}

TEST_CASE("every stored table entry satisfies the invariant checker") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Instance inst = gen_random(6 + (int)(seed % 4), 0.15, 3, 2, 2, seed);
        DistanceOracle d0 = all_pairs_distances(inst);
        long long opt = brute_force_opt(inst, d0).opt;
        long long r = std::max(1LL, opt);
        PreprocessResult pre = preprocess_remove(inst, r, d0, 2 * r + 1);
        REQUIRE(pre.feasible);
        DistanceOracle d = all_pairs_distances(pre.inst);
        NiceTreeDecomposition ntd = make_nice(heuristic_decomposition(pre.inst));
        Instance completed = complete_bags(pre.inst, ntd, d);
        mpq_class eps = 1;
        mpq_class delta = choose_delta(eps, std::max(1, ntd.height));
        for (ColorMode mode : {ColorMode::ExactColors, ColorMode::Approx}) {
            DpRun run(completed, ntd, d, r, eps, delta, mode);
            run.run();
            for (int t = 0; t < (int)ntd.nodes.size(); ++t)
                for (const auto& [key, entry] : run.table(t)) {
                    auto hubs = run.reconstruct(t, key);
                    auto defect = verify_conditions(run, t, key, hubs);
                    CHECK_MESSAGE(!defect.has_value(), "seed ", seed, " node ", t, ": ",
                                  defect.value_or(""));
                    CHECK(entry.A >= (long long)hubs.size());
                }
        }
    }
}

TEST_CASE("end-to-end solve stays within the approximation guarantees") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        Instance inst = gen_random(5 + (int)(seed % 5), 0.15, 3, 2 + (int)(seed % 2),
                                   1 + (int)(seed % 3), seed * 7);
        DistanceOracle d = all_pairs_distances(inst);
        long long opt = brute_force_opt(inst, d).opt;
        for (const char* epsStr : {"1", "1/2"}) {
            mpq_class eps(epsStr);
            SolveOptions opts;
            opts.epsilon = eps;
            SolveReport rep = solve(inst, opts);
            REQUIRE(rep.success);
            mpq_class bound = (2 + eps) * mpq_class((long)opt);
            CHECK_MESSAGE(mpq_class((long)rep.solution.value) <= bound, "seed ", seed, " eps ",
                          epsStr, " value ", rep.solution.value, " opt ", opt);
            CHECK(rep.rUsed <= opt);
            CHECK((int)rep.solution.hubs.size() <= inst.k);
            // the reported value must match a fresh evaluation
            CHECK(evaluate_solution(inst, rep.solution.hubs, d).value == rep.solution.value);

            opts.exactColors = true;
            SolveReport rex = solve(inst, opts);
            REQUIRE(rex.success);
            CHECK(rex.solution.value <= 2 * opt);
            CHECK(rex.rUsed <= opt);
        }
    }
}

TEST_CASE("solve accepts a supplied tree decomposition") {
    Instance inst = parse(
        "p makhc 4 4 2 1\n"
        "e 1 2 1\ne 2 3 1\ne 3 4 1\ne 4 1 1\n"
        "d 1 3\nd 2 4\n");
    TreeDecomposition td;
    td.bags[1] = {1, 2, 3};
    td.bags[2] = {1, 3, 4};
    td.treeEdges = {{1, 2}};
    REQUIRE_FALSE(validate(td, inst).has_value());

    SolveOptions opts;
    opts.td = &td;
    SolveReport rep = solve(inst, opts);
    REQUIRE(rep.success);
    CHECK(rep.tw == 2);
    DistanceOracle d = all_pairs_distances(inst);
    CHECK(rep.solution.value <= 3 * brute_force_opt(inst, d).opt);
}

TEST_CASE("solve is deterministic across repeated runs and thread counts") {
    Instance inst = gen_random(9, 0.2, 4, 3, 2, 99);
    SolveOptions a, b, c;
    a.epsilon = b.epsilon = c.epsilon = mpq_class("1/2");
    c.threads = 4;
    SolveReport ra = solve(inst, a);
    SolveReport rb = solve(inst, b);
    SolveReport rc = solve(inst, c);
    REQUIRE(ra.success);
    CHECK(ra.solution.hubs == rb.solution.hubs);
    CHECK(ra.solution.value == rb.solution.value);
    CHECK(ra.rUsed == rb.rUsed);
    CHECK(ra.solution.hubs == rc.solution.hubs);
    CHECK(ra.solution.value == rc.solution.value);
    CHECK(ra.rUsed == rc.rUsed);
}

TEST_CASE("radius cap makes the search fail early") {
    Instance inst = parse(
        "p makhc 3 2 1 1\n"
        "e 1 2 5\ne 2 3 5\n"
        "d 1 3\n");
    SolveOptions opts;
    opts.maxR = 1;  // optimum needs r = 10 with hub 2
    SolveReport rep = solve(inst, opts);
    CHECK_FALSE(rep.success);
    opts.maxR = -1;
    rep = solve(inst, opts);
    CHECK(rep.success);
    CHECK(rep.solution.value == 10);
}
