#include "makhc/rounding.hpp"

#include <cmath>
#include <stdexcept>

namespace makhc {

PowerTable::PowerTable(const mpq_class& delta) : delta_(delta), base_(delta + 1) {
    if (delta_ <= 0) throw std::invalid_argument("PowerTable: delta must be positive");
    delta_.canonicalize();
    base_.canonicalize();
    powers_.push_back(mpq_class(1));
}

const mpq_class& PowerTable::pow(int j) const {
    if (j < 0) throw std::invalid_argument("PowerTable::pow: negative exponent");
    while ((int)powers_.size() <= j) powers_.push_back(powers_.back() * base_);
    return powers_[j];
}

int PowerTable::ceilLog(const mpq_class& x) const {
    if (x <= 0) throw std::invalid_argument("PowerTable::ceilLog: non-positive input");
    if (x <= 1) return 0;
    double guess = std::log(x.get_d()) / std::log(base_.get_d());
    int j = std::max(0, (int)std::llround(guess));
    // The float estimate can land on either side of the true exponent; walk to
    // the least j with base^j >= x using exact comparisons.
    while (pow(j) < x) ++j;
    while (j > 0 && pow(j - 1) >= x) --j;
    return j;
}

mpq_class rounded_value(const Rounded& x, const PowerTable& pt) {
    switch (x.kind) {
        case RoundedKind::Zero: return mpq_class(0);
        case RoundedKind::Power: return pt.pow(x.j);
        default: throw std::invalid_argument("rounded_value: overflow has no value");
    }
}

Rounded round_up(const mpq_class& sum, const PowerTable& pt, const mpq_class* cap) {
    if (sum < 0) throw std::invalid_argument("round_up: negative input");
    if (sum == 0) return Rounded::zero();
    int j = pt.ceilLog(sum);
    if (cap && pt.pow(j) > *cap) return Rounded::overflow();
    return Rounded::power(j);
}

Rounded oplus(const Rounded& a, const Rounded& b, const PowerTable& pt, const mpq_class* cap) {
    if (a.isOverflow() || b.isOverflow()) return Rounded::overflow();
    return round_up(rounded_value(a, pt) + rounded_value(b, pt), pt, cap);
}

Rounded oplus(long long a, long long b, const PowerTable& pt, const mpq_class* cap) {
    return round_up(mpq_class((long)a) + mpq_class((long)b), pt, cap);
}

Rounded oplus(const Rounded& a, long long b, const PowerTable& pt, const mpq_class* cap) {
    if (a.isOverflow()) return Rounded::overflow();
    return round_up(rounded_value(a, pt) + mpq_class((long)b), pt, cap);
}

mpq_class choose_delta(const mpq_class& epsilon, long long height, bool looseDenominator) {
    if (epsilon <= 0) throw std::invalid_argument("choose_delta: epsilon must be positive");
    if (height < 1) height = 1;
    mpq_class denom((long)(looseDenominator ? 2 * height + 1 : 4 * height + 2));
    mpq_class d = epsilon / denom;
    d.canonicalize();
    return d;
}

ColorAlphabet build_alphabet(const mpq_class& epsilon, const mpq_class& delta, long long r) {
    if (delta <= 0 || r < 1) throw std::invalid_argument("build_alphabet: bad parameters");
    ColorAlphabet a;
    a.delta = delta;
    a.epsilon = epsilon;
    a.r = r;
    mpq_class cap = (epsilon + 1) * mpq_class((long)r);
    mpq_class base = delta + 1;
    a.values.push_back(mpq_class(0));
    mpq_class p(1);
    while (p <= cap) {
        a.values.push_back(p);
        p *= base;
    }
    return a;
}

int AdditionTree::addLeaf(long long v) {
    nodes.push_back({v, -1, -1});
    return (int)nodes.size() - 1;
}

int AdditionTree::addInternal(int left, int right) {
    nodes.push_back({-1, left, right});
    return (int)nodes.size() - 1;
}

namespace {

std::pair<long long, mpq_class> evalNode(const AdditionTree& t, int i, const PowerTable& pt) {
    const auto& node = t.nodes[i];
    if (node.leafValue >= 0) return {node.leafValue, mpq_class((long)node.leafValue)};
    auto [ly, lz] = evalNode(t, node.left, pt);
    auto [ry, rz] = evalNode(t, node.right, pt);
    mpq_class sum = lz + rz;
    return {ly + ry, rounded_value(round_up(sum, pt), pt)};
}

} // namespace

std::pair<long long, mpq_class> approx_tree_eval(const AdditionTree& tree, const PowerTable& pt) {
    if (tree.root < 0) throw std::invalid_argument("approx_tree_eval: empty tree");
    return evalNode(tree, tree.root, pt);
}

} // namespace makhc
