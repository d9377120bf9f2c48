#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "makhc/decomposition.hpp"
#include "makhc/distance.hpp"
#include "makhc/instance.hpp"
#include "makhc/preprocess.hpp"
#include "makhc/rounding.hpp"

namespace makhc {

enum class ColorMode { Approx, ExactColors };

// A color is one uint16: high bit = orientation (0 = down, 1 = up), low bits =
// magnitude index (0 = zero magnitude, m >= 1 = the m-th positive magnitude).
// Numeric order of the code is the tie-break order: down before up, then by
// magnitude.
using ColorCode = std::uint16_t;
inline constexpr ColorCode kUpFlag = 0x8000;
inline bool colorIsUp(ColorCode c) { return (c & kUpFlag) != 0; }
inline int colorMag(ColorCode c) { return (int)(c & 0x7fff); }
inline ColorCode makeColor(bool up, int mag) {
    return (ColorCode)((up ? kUpFlag : 0) | (ColorCode)mag);
}

// Coloring of a bag, one code per bag vertex in sorted-bag order.
using ColorKey = std::vector<ColorCode>;

// Fixed-width bitset over demand indices.
struct DemandBits {
    std::vector<std::uint64_t> w;

    explicit DemandBits(int numDemands = 0) : w((numDemands + 63) / 64, 0) {}
    void set(int i) { w[i >> 6] |= 1ULL << (i & 63); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void orWith(const DemandBits& o) {
        for (size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
    }
    bool subsetOf(const DemandBits& o) const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~o.w[i]) return false;
        return true;
    }
    bool subsetOfUnion(const DemandBits& a, const DemandBits& b) const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~(a.w[i] | b.w[i])) return false;
        return true;
    }
    friend bool operator==(const DemandBits&, const DemandBits&) = default;
};

struct DpEntry {
    long long A = 0;
    ColorKey child1;  // forget: chosen child coloring; join: left child coloring
    ColorKey child2;  // join: right child coloring
};

struct DpStats {
    long long coloringsExpanded = 0;  // candidate colorings examined
    long long coloringsStored = 0;    // table entries kept
    std::vector<long long> perNodeExamined;  // distinct bag colorings touched per node
};

// One dynamic-programming evaluation at a fixed radius on a preprocessed,
// bag-completed instance.  Tables are retained after run() for reconstruction
// and for the test harness.
class DpRun {
public:
    DpRun(const Instance& completed, const NiceTreeDecomposition& ntd,
          const DistanceOracle& d, long long r, const mpq_class& epsilon,
          const mpq_class& delta, ColorMode mode);

    bool run();  // true iff the root value is at most k

    std::vector<Vertex> reconstruct() const;  // hubs of the root entry
    std::vector<Vertex> reconstruct(int node, const ColorKey& c) const;

    const std::map<ColorKey, DpEntry>& table(int node) const { return tables_[node]; }
    const NiceTreeDecomposition& decomposition() const { return ntd_; }
    const Instance& instance() const { return inst_; }
    const DistanceOracle& distances() const { return d_; }
    long long radius() const { return r_; }
    ColorMode mode() const { return mode_; }
    const DpStats& stats() const { return stats_; }
    int numMagnitudes() const { return maxMag_ + 1; }

    mpq_class magnitudeValue(int mag) const;
    // Magnitude index of dist (+) value(mag), rounded in approx mode; -1 when
    // the result exceeds the alphabet cap.
    int magnitudeAdd(long long dist, int mag) const;
    mpq_class servingThreshold() const { return sThreshold_; }

    DemandBits computeS(int node, const ColorKey& c) const;
    DemandBits computeD(int node, const ColorKey& c) const;

private:
    void precompute();
    void evalLeaf(int t);
    void evalIntroduce(int t);
    void evalForget(int t);
    void evalJoin(int t);
    void collectHubs(int node, const ColorKey& c, std::vector<Vertex>& out) const;

    Instance inst_;
    const NiceTreeDecomposition& ntd_;
    const DistanceOracle& d_;
    long long r_;
    mpq_class epsilon_;
    ColorMode mode_;
    std::optional<PowerTable> pt_;
    int maxMag_ = 0;  // magnitude indices run 0..maxMag_
    mpq_class sThreshold_;
    int numDemands_ = 0;

    std::vector<std::vector<DemandBits>> servedBy_;  // [vertex][mag] demands served
    std::vector<DemandBits> mustServe_;              // [node] the coloring-independent part of D
    std::vector<std::vector<char>> inSubtree_;       // [node][vertex]
    std::vector<std::vector<int>> upCand_;           // [vertex] generated up magnitudes
    std::vector<std::map<ColorKey, DpEntry>> tables_;
    std::set<ColorKey> curExamined_;  // distinct colorings touched at the node in progress
    DpStats stats_;
};

// Checks the two stored-entry conditions: every down-colored bag vertex has a
// hub of H within its magnitude inside the induced subgraph on subtree
// vertices, and every demand the entry is responsible for is served within the
// serving threshold.  Returns nullopt when both hold.
std::optional<std::string> verify_conditions(const DpRun& run, int node, const ColorKey& c,
                                             const std::vector<Vertex>& H);

struct FixedResult {
    bool success = false;
    std::vector<Vertex> hubs;
    DpStats stats;
    int width = -1;
    int height = 0;
    long long nodes = 0;
    mpq_class delta = 0;
};

FixedResult solve_fixed_r(const Instance& preprocessed, const NiceTreeDecomposition& ntd,
                          const DistanceOracle& d, long long r, const mpq_class& epsilon,
                          ColorMode mode, bool looseDelta = false);

struct SolveOptions {
    mpq_class epsilon = 1;
    bool exactColors = false;
    bool looseDelta = false;
    long long maxR = -1;  // cap on the radius schedule, -1 = none
    int threads = 1;
    const TreeDecomposition* td = nullptr;  // optional user decomposition
};

struct SolveReport {
    bool success = false;
    Solution solution;  // original vertex ids, value in original weights
    mpq_class epsilon;
    mpq_class delta = 0;
    long long rUsed = 0;
    int tw = -1;
    int ntdHeight = 0;
    long long nodes = 0;
    long long coloringsExpanded = 0;
};

SolveReport solve(const Instance& inst, const SolveOptions& opts);

} // namespace makhc
