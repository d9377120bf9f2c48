#pragma once

#include <gmpxx.h>

#include <memory>
#include <utility>
#include <vector>

namespace makhc {

enum class RoundedKind { Zero, Power, Overflow };

// A rounded magnitude: 0, or the exact rational (1+delta)^j, or an overflow
// marker for sums past the alphabet cap.
struct Rounded {
    RoundedKind kind = RoundedKind::Zero;
    int j = 0;  // exponent, meaningful only for Power

    static Rounded zero() { return {RoundedKind::Zero, 0}; }
    static Rounded power(int j) { return {RoundedKind::Power, j}; }
    static Rounded overflow() { return {RoundedKind::Overflow, 0}; }

    bool isZero() const { return kind == RoundedKind::Zero; }
    bool isPower() const { return kind == RoundedKind::Power; }
    bool isOverflow() const { return kind == RoundedKind::Overflow; }

    friend bool operator==(const Rounded&, const Rounded&) = default;
};

// Memoized exact powers of (1+delta), plus the exact ceiling-log used by the
// rounding operator.  A float logarithm seeds the exponent search; the result
// is always corrected by exact rational comparison.
class PowerTable {
public:
    explicit PowerTable(const mpq_class& delta);

    const mpq_class& delta() const { return delta_; }
    const mpq_class& pow(int j) const;
    // Least j >= 0 with (1+delta)^j >= x; requires x > 0.
    int ceilLog(const mpq_class& x) const;

private:
    mpq_class delta_;
    mpq_class base_;  // 1 + delta
    mutable std::vector<mpq_class> powers_;
};

// Exact rational value of a Rounded (Overflow is not representable).
mpq_class rounded_value(const Rounded& x, const PowerTable& pt);

// Round a non-negative exact sum up to the next power of (1+delta); Zero for
// zero input.  With a cap, sums whose rounded power exceeds it give Overflow.
Rounded round_up(const mpq_class& sum, const PowerTable& pt, const mpq_class* cap = nullptr);

Rounded oplus(const Rounded& a, const Rounded& b, const PowerTable& pt,
              const mpq_class* cap = nullptr);
Rounded oplus(long long a, long long b, const PowerTable& pt, const mpq_class* cap = nullptr);
Rounded oplus(const Rounded& a, long long b, const PowerTable& pt,
              const mpq_class* cap = nullptr);

// delta = epsilon/(4*height+2) by default; looseDenominator selects
// epsilon/(2*height+1).
mpq_class choose_delta(const mpq_class& epsilon, long long height, bool looseDenominator = false);

struct ColorAlphabet {
    mpq_class delta;
    mpq_class epsilon;
    long long r = 0;
    // {0} followed by the powers (1+delta)^0, (1+delta)^1, ... <= (1+epsilon)*r,
    // strictly increasing.
    std::vector<mpq_class> values;

    int numMagnitudes() const { return (int)values.size(); }
    int maxExponent() const { return (int)values.size() - 2; }  // -1 when only {0}
};

ColorAlphabet build_alphabet(const mpq_class& epsilon, const mpq_class& delta, long long r);

// Full binary tree with non-negative integer leaves, used by the error-bound
// test harness.  Internal nodes have leafValue < 0 and two children.
struct AdditionTree {
    struct Node {
        long long leafValue = -1;
        int left = -1;
        int right = -1;
    };
    std::vector<Node> nodes;
    int root = -1;

    int addLeaf(long long v);
    int addInternal(int left, int right);
};

// (exact sum, approximately-added value) at the root.  Leaves contribute
// their integers unrounded; internal nodes combine children with oplus, so a
// single-leaf tree evaluates to its leaf exactly.
std::pair<long long, mpq_class> approx_tree_eval(const AdditionTree& tree, const PowerTable& pt);

} // namespace makhc
