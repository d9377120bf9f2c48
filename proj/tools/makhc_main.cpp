#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "makhc/decomposition.hpp"
#include "makhc/dp.hpp"
#include "makhc/oracle.hpp"
#include "makhc/preprocess.hpp"
#include "makhc/reductions.hpp"

using json = nlohmann::json;
using namespace makhc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 2;       // infeasible instance / DP failure
constexpr int kExitParse = 3;      // malformed input files or flag values
constexpr int kExitCap = 4;        // enumeration cap exceeded

bool gQuiet = false;

void note(const std::string& msg) {
    if (!gQuiet) std::cerr << msg << '\n';
}

// Accepts "P/Q" or a plain decimal like "0.25" (converted exactly).
mpq_class parse_rational(const std::string& s, bool allowZero = false) {
    if (s.find('/') != std::string::npos) {
        mpq_class q(s);
        q.canonicalize();
        if (q < 0 || (q == 0 && !allowZero))
            throw std::invalid_argument("epsilon must be positive");
        return q;
    }
    size_t dot = s.find('.');
    if (dot == std::string::npos) {
        mpq_class q{mpz_class(s)};
        if (q < 0 || (q == 0 && !allowZero))
            throw std::invalid_argument("epsilon must be positive");
        return q;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    mpz_class num(digits);
    mpz_class den = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    mpq_class q(num, den);
    q.canonicalize();
    if (q < 0 || (q == 0 && !allowZero))
        throw std::invalid_argument("epsilon must be positive");
    return q;
}

std::string rat_str(const mpq_class& q) {
    std::ostringstream ss;
    ss << q;
    return ss.str();
}

Instance load_or_exit(const std::string& path) {
    ParseError err;
    auto inst = load_instance(path, err);
    if (!inst) {
        std::cerr << path << ":" << err.line << ": " << err.message << '\n';
        std::exit(kExitParse);
    }
    if (auto v = validate_instance(*inst)) {
        std::cerr << path << ": " << *v << '\n';
        std::exit(kExitParse);
    }
    return *inst;
}

void emit(const json& j, const std::string& jsonPath) {
    std::string text = j.dump(2);
    if (!jsonPath.empty()) {
        std::ofstream f(jsonPath);
        f << text << '\n';
    }
    std::cout << text << '\n';
}

std::vector<Vertex> parse_vertex_list(const std::string& s) {
    std::vector<Vertex> out;
    std::string tok;
    std::istringstream ss(s);
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

// "1-2,2-3" (unweighted) or "1-2-5,2-3-1" (weighted).
std::vector<Edge> parse_edge_list(const std::string& s, bool weighted) {
    std::vector<Edge> out;
    std::string tok;
    std::istringstream ss(s);
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::replace(tok.begin(), tok.end(), '-', ' ');
        std::istringstream ts(tok);
        Edge e{0, 0, 1};
        if (!(ts >> e.u >> e.v)) throw std::invalid_argument("bad edge token '" + tok + "'");
        if (weighted && !(ts >> e.w)) throw std::invalid_argument("missing weight in '" + tok + "'");
        out.push_back(e);
    }
    return out;
}

void write_out(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(path);
        if (!f) {
            std::cerr << "cannot open " << path << '\n';
            std::exit(kExitParse);
        }
        f << text;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiple Allocation k-Hub Center solver suite"};
    app.require_subcommand(1);
    app.add_flag("--quiet", gQuiet, "suppress progress output on stderr");

    // ---- solve ----
    auto* solveCmd = app.add_subcommand("solve", "approximate tree-decomposition solver");
    solveCmd->fallthrough();
    std::string sInstance, sTd, sEps = "1", sJson;
    bool sExact = false, sLooseDelta = false;
    long long sMaxR = -1;
    int sThreads = 1;
    solveCmd->add_option("--instance", sInstance)->required();
    solveCmd->add_option("--td", sTd);
    solveCmd->add_option("--epsilon", sEps);
    solveCmd->add_flag("--exact-colors", sExact);
    solveCmd->add_flag("--loose-delta", sLooseDelta);
    solveCmd->add_option("--max-r", sMaxR);
    solveCmd->add_option("--threads", sThreads);
    solveCmd->add_option("--json", sJson);

    // ---- exact ----
    auto* exactCmd = app.add_subcommand("exact", "brute-force optimum");
    exactCmd->fallthrough();
    std::string eInstance;
    long long eCap = kDefaultEnumerationCap;
    exactCmd->add_option("--instance", eInstance)->required();
    exactCmd->add_option("--cap", eCap);

    // ---- greedy ----
    auto* greedyCmd = app.add_subcommand("greedy", "greedy baseline");
    greedyCmd->fallthrough();
    std::string gInstance;
    greedyCmd->add_option("--instance", gInstance)->required();

    // ---- check ----
    auto* checkCmd = app.add_subcommand("check", "evaluate a hub set");
    checkCmd->fallthrough();
    std::string cInstance, cHubs, cEps = "1";
    long long cR = -1;
    checkCmd->add_option("--instance", cInstance)->required();
    checkCmd->add_option("--hubs", cHubs)->required();
    checkCmd->add_option("--r", cR);
    checkCmd->add_option("--epsilon", cEps);

    // ---- bound ----
    auto* boundCmd = app.add_subcommand("bound", "planar parameter bounds");
    boundCmd->fallthrough();
    long long bK = 1, bR = 0;
    boundCmd->add_option("--k", bK)->required();
    boundCmd->add_option("--r", bR)->required();

    // ---- gen ----
    auto* genCmd = app.add_subcommand("gen", "instance generators");
    genCmd->fallthrough();
    genCmd->require_subcommand(1);
    std::string oPath;
    auto* vcCmd = genCmd->add_subcommand("vc", "vertex-cover reduction");
    vcCmd->fallthrough();
    int vcN = 0, vcK = 1;
    std::string vcEdges;
    bool vcSub = false;
    vcCmd->add_option("--n", vcN)->required();
    vcCmd->add_option("--edges", vcEdges)->required();
    vcCmd->add_option("--k", vcK)->required();
    vcCmd->add_flag("--subdivide", vcSub);
    vcCmd->add_option("--out", oPath);
    auto* hsCmd = genCmd->add_subcommand("hs", "hitting-set reduction");
    hsCmd->fallthrough();
    int hsU = 0, hsK = 1;
    std::string hsSets;
    hsCmd->add_option("--universe", hsU)->required();
    hsCmd->add_option("--sets", hsSets)->required();
    hsCmd->add_option("--k", hsK)->required();
    hsCmd->add_option("--out", oPath);
    auto* kcCmd = genCmd->add_subcommand("kcenter", "k-center reduction");
    kcCmd->fallthrough();
    int kcN = 0, kcK = 1;
    std::string kcEdges;
    kcCmd->add_option("--n", kcN)->required();
    kcCmd->add_option("--edges", kcEdges)->required();
    kcCmd->add_option("--k", kcK)->required();
    kcCmd->add_option("--out", oPath);
    auto* gridCmd = genCmd->add_subcommand("grid", "planar grid family");
    gridCmd->fallthrough();
    int grRows = 2, grCols = 2, grK = 1;
    std::string grPattern = "corners";
    gridCmd->add_option("--rows", grRows)->required();
    gridCmd->add_option("--cols", grCols)->required();
    gridCmd->add_option("--pattern", grPattern);
    gridCmd->add_option("--k", grK)->required();
    gridCmd->add_option("--out", oPath);
    auto* rndCmd = genCmd->add_subcommand("random", "seeded random family");
    rndCmd->fallthrough();
    int rnN = 8, rnDemands = 3, rnK = 1;
    double rnDensity = 0.3;
    long long rnWeightMax = 5;
    std::uint64_t rnSeed = 1;
    rndCmd->add_option("--n", rnN)->required();
    rndCmd->add_option("--density", rnDensity);
    rndCmd->add_option("--weight-max", rnWeightMax);
    rndCmd->add_option("--demands", rnDemands);
    rndCmd->add_option("--k", rnK)->required();
    rndCmd->add_option("--seed", rnSeed);
    rndCmd->add_option("--out", oPath);

    // ---- convert ----
    auto* convCmd = app.add_subcommand("convert", "validate and normalize files");
    convCmd->fallthrough();
    std::string cvInstance, cvTd, cvOut;
    convCmd->add_option("--instance", cvInstance);
    convCmd->add_option("--td", cvTd);
    convCmd->add_option("--out", cvOut);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solveCmd) {
            Instance inst = load_or_exit(sInstance);
            SolveOptions opts;
            opts.epsilon = parse_rational(sEps);
            opts.exactColors = sExact;
            opts.looseDelta = sLooseDelta;
            opts.maxR = sMaxR;
            opts.threads = sThreads;
            TreeDecomposition td;
            if (!sTd.empty()) {
                td = load_td(sTd);
                if (auto v = validate(td, inst)) {
                    std::cerr << sTd << ": " << *v << '\n';
                    return kExitParse;
                }
                opts.td = &td;
            }
            auto start = std::chrono::steady_clock::now();
            SolveReport rep = solve(inst, opts);
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
            json j{{"opt_mode", sExact ? "exact-colors" : "approx"},
                   {"epsilon", rat_str(rep.epsilon)},
                   {"delta", rat_str(rep.delta)},
                   {"r_used", rep.rUsed},
                   {"value_original_weights", rep.solution.value},
                   {"hubs", rep.solution.hubs},
                   {"k", inst.k},
                   {"tw", rep.tw},
                   {"ntd_height", rep.ntdHeight},
                   {"nodes", rep.nodes},
                   {"colorings_expanded", rep.coloringsExpanded}};
            note("solved in " + std::to_string(ms) + " ms");
            if (!rep.success) {
                j["status"] = "fail";
                emit(j, sJson);
                return kExitFail;
            }
            j["status"] = "ok";
            emit(j, sJson);
            return kExitOk;
        }
        if (*exactCmd) {
            Instance inst = load_or_exit(eInstance);
            DistanceOracle d = all_pairs_distances(inst);
            OracleResult res;
            try {
                res = brute_force_opt(inst, d, eCap);
            } catch (const std::runtime_error& ex) {
                std::cerr << ex.what() << '\n';
                return kExitCap;
            }
            emit(json{{"opt", res.opt}, {"hubs", res.optimalHubs}}, "");
            return kExitOk;
        }
        if (*greedyCmd) {
            Instance inst = load_or_exit(gInstance);
            DistanceOracle d = all_pairs_distances(inst);
            Solution sol = greedy_three_approx(inst, d);
            emit(json{{"value", sol.value}, {"r", sol.rUsed}, {"hubs", sol.hubs}}, "");
            return kExitOk;
        }
        if (*checkCmd) {
            Instance inst = load_or_exit(cInstance);
            DistanceOracle d = all_pairs_distances(inst);
            std::vector<Vertex> hubs = parse_vertex_list(cHubs);
            Evaluation ev = evaluate_solution(inst, hubs, d);
            json j{{"value", ev.value}, {"hubs", hubs}};
            bool within = true;
            if (cR >= 0) {
                mpq_class bound = (parse_rational(cEps, true) + 1) * mpq_class(2 * (long)cR);
                j["r"] = cR;
                j["bound"] = rat_str(bound);
                within = mpq_class((long)ev.value) <= bound;
                j["within_bound"] = within;
            }
            emit(j, "");
            return within ? kExitOk : kExitFail;
        }
        if (*boundCmd) {
            PlanarBounds b = planar_bounds(bK, bR);
            emit(json{{"rho", b.rho},
                      {"rho_ceil", b.rhoCeil},
                      {"tw", b.tw},
                      {"tw_ceil", b.twCeil},
                      {"exact", b.exact}},
                 "");
            return kExitOk;
        }
        if (*genCmd) {
            Instance inst;
            if (*vcCmd) {
                SimpleGraph g;
                g.n = vcN;
                for (const Edge& e : parse_edge_list(vcEdges, false)) g.edges.push_back({e.u, e.v});
                inst = gen_from_vertex_cover(g, vcK, vcSub);
            } else if (*hsCmd) {
                std::vector<std::vector<int>> family;
                std::istringstream ss(hsSets);
                std::string setTok;
                while (std::getline(ss, setTok, ';')) {
                    std::istringstream ts(setTok);
                    std::vector<int> s;
                    int x;
                    while (ts >> x) s.push_back(x);
                    if (!s.empty()) family.push_back(s);
                }
                inst = gen_from_hitting_set(hsU, family, hsK);
            } else if (*kcCmd) {
                inst = gen_from_kcenter(kcN, parse_edge_list(kcEdges, true), kcK);
            } else if (*gridCmd) {
                inst = gen_grid(grRows, grCols, grPattern, grK);
            } else {
                inst = gen_random(rnN, rnDensity, rnWeightMax, rnDemands, rnK, rnSeed);
            }
            if (auto v = validate_instance(inst)) {
                std::cerr << "generated instance invalid: " << *v << '\n';
                return kExitFail;
            }
            write_out(instance_to_string(inst), oPath);
            note("instance written");
            return kExitOk;
        }
        if (*convCmd) {
            if (cvInstance.empty() && cvTd.empty()) {
                std::cerr << "convert: need --instance and/or --td\n";
                return kExitParse;
            }
            std::string out;
            if (!cvInstance.empty()) out += instance_to_string(load_or_exit(cvInstance));
            if (!cvTd.empty()) {
                TreeDecomposition td;
                try {
                    td = load_td(cvTd);
                } catch (const std::exception& ex) {
                    std::cerr << cvTd << ": " << ex.what() << '\n';
                    return kExitParse;
                }
                if (!cvInstance.empty()) {
                    if (auto v = validate(td, load_or_exit(cvInstance))) {
                        std::cerr << cvTd << ": " << *v << '\n';
                        return kExitParse;
                    }
                }
                out += td_to_string(td);
            }
            write_out(out, cvOut);
            return kExitOk;
        }
    } catch (const std::invalid_argument& ex) {
        std::cerr << ex.what() << '\n';
        return kExitParse;
    } catch (const std::exception& ex) {
        std::cerr << ex.what() << '\n';
        return kExitFail;
    }
    return kExitOk;
}
