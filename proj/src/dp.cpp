#include "makhc/dp.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace makhc {

namespace {

mpq_class ceilDiv2(const mpq_class& x) { return x / 2; }

long long ceilToLL(const mpq_class& x) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return (long long)q.get_si();
}

} // namespace

DpRun::DpRun(const Instance& completed, const NiceTreeDecomposition& ntd,
             const DistanceOracle& d, long long r, const mpq_class& epsilon,
             const mpq_class& delta, ColorMode mode)
    : inst_(completed), ntd_(ntd), d_(d), r_(r), epsilon_(epsilon), mode_(mode) {
    if (r_ < 1) throw std::invalid_argument("DpRun: radius must be at least 1");
    if (mode_ == ColorMode::Approx) {
        pt_.emplace(delta);
        mpq_class cap = (epsilon_ + 1) * mpq_class((long)r_);
        int e = 0;
        while (pt_->pow(e + 1) <= cap) ++e;
        if (pt_->pow(0) > cap) throw std::invalid_argument("DpRun: empty alphabet");
        maxMag_ = e + 1;  // magnitudes 0 (zero) and 1..maxMag_ (exponents 0..e)
        sThreshold_ = (epsilon_ + 1) * mpq_class(2 * (long)r_);
    } else {
        maxMag_ = (int)r_;
        sThreshold_ = mpq_class(2 * (long)r_);
    }
    precompute();
}

mpq_class DpRun::magnitudeValue(int mag) const {
    if (mag == 0) return mpq_class(0);
    if (mode_ == ColorMode::Approx) return pt_->pow(mag - 1);
    return mpq_class((long)mag);
}

int DpRun::magnitudeAdd(long long dist, int mag) const {
    if (mode_ == ColorMode::ExactColors) {
        long long s = dist + mag;
        return s <= maxMag_ ? (int)s : -1;
    }
    mpq_class sum = mpq_class((long)dist) + magnitudeValue(mag);
    if (sum == 0) return 0;
    int j = pt_->ceilLog(sum);
    return j + 1 <= maxMag_ ? j + 1 : -1;
}

void DpRun::precompute() {
    int n = inst_.n;
    numDemands_ = (int)inst_.demands.size();

    // Which demands a color of magnitude m on vertex v is responsible for
    // serving: d(a,v) + 2*value(m) + d(v,b) <= threshold.
    servedBy_.assign(n + 1, {});
    for (Vertex v = 1; v <= n; ++v) {
        std::vector<int> maxIncl(numDemands_, -1);
        for (int i = 0; i < numDemands_; ++i) {
            const Demand& dem = inst_.demands[i];
            mpq_class slack = sThreshold_ - mpq_class((long)(d_(dem.a, v) + d_(v, dem.b)));
            if (slack < 0) continue;
            mpq_class bound = ceilDiv2(slack);  // value(m) <= bound
            if (mode_ == ColorMode::ExactColors) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), bound.get_num().get_mpz_t(),
                           bound.get_den().get_mpz_t());
                maxIncl[i] = (int)std::min<long long>((long long)q.get_si(), maxMag_);
            } else {
                int lo = 0, hi = maxMag_;  // largest m with value(m) <= bound
                while (lo < hi) {
                    int mid = (lo + hi + 1) / 2;
                    if (magnitudeValue(mid) <= bound) lo = mid;
                    else hi = mid - 1;
                }
                maxIncl[i] = lo;
            }
        }
        auto& col = servedBy_[v];
        col.assign(maxMag_ + 1, DemandBits(numDemands_));
        for (int m = maxMag_; m >= 0; --m) {
            if (m < maxMag_) col[m] = col[m + 1];
            for (int i = 0; i < numDemands_; ++i)
                if (maxIncl[i] == m) col[m].set(i);
        }
    }

    int numNodes = (int)ntd_.nodes.size();
    inSubtree_.assign(numNodes, std::vector<char>(n + 1, 0));
    for (int t = 0; t < numNodes; ++t)
        for (Vertex v : ntd_.nodes[t].subtreeVertices) inSubtree_[t][v] = 1;

    // Coloring-independent part of the obligation set: demands with both
    // endpoints in the subtree, or with exactly one endpoint in the subtree
    // and a candidate vertex of the demand subgraph deep inside it.
    std::vector<std::vector<Vertex>> gab(numDemands_);
    for (int i = 0; i < numDemands_; ++i)
        gab[i] = demand_subgraph(inst_.demands[i], r_, d_, n);
    mustServe_.assign(numNodes, DemandBits(numDemands_));
    for (int t = 0; t < numNodes; ++t) {
        const auto& bag = ntd_.nodes[t].bag;
        for (int i = 0; i < numDemands_; ++i) {
            const Demand& dem = inst_.demands[i];
            bool ain = inSubtree_[t][dem.a], bin = inSubtree_[t][dem.b];
            if (ain && bin) {
                mustServe_[t].set(i);
            } else if (ain || bin) {
                for (Vertex h : gab[i]) {
                    if (!inSubtree_[t][h]) continue;
                    long long dmin = kInfDist;
                    for (Vertex w : bag)
                        if (std::binary_search(gab[i].begin(), gab[i].end(), w))
                            dmin = std::min(dmin, d_(h, w));
                    if (dmin == kInfDist || 2 * dmin > r_) {
                        mustServe_[t].set(i);
                        break;
                    }
                }
            }
        }
    }

    // Per-vertex generated up-magnitudes.  Every surviving up value
    // approximates a distance to some hub location within the rounding window
    // of the measured height, and must additionally be derivable either from
    // an anchor in the vertex's forget-time bag or (when the vertex crosses a
    // join, where orientations may split) from an anchor available at one of
    // its introductions.
    std::vector<Vertex> hubs = inst_.hubLocations();
    long long window = 2LL * std::max(1, ntd_.height);
    std::vector<std::vector<char>> winMask(n + 1, std::vector<char>(maxMag_ + 1, 0));
    for (Vertex v = 1; v <= n; ++v)
        for (Vertex h : hubs) {
            long long dist = d_(v, h);
            if (dist < 1 || dist >= kInfDist) continue;
            if (mode_ == ColorMode::ExactColors) {
                if (dist <= maxMag_) winMask[v][dist] = 1;
                continue;
            }
            mpq_class dq((long)dist);
            if (dq > magnitudeValue(maxMag_)) continue;
            int lo = pt_->ceilLog(dq) + 1;
            int hi = (int)std::min<long long>(lo + window, maxMag_);
            for (int m = lo; m <= hi; ++m) winMask[v][m] = 1;
        }

    std::vector<std::vector<Vertex>> forgetBag(n + 1);
    std::vector<std::set<Vertex>> mateSet(n + 1);
    for (const auto& node : ntd_.nodes) {
        if (node.kind == NodeKind::Forget) forgetBag[node.vertex] = node.bag;
        for (Vertex v : node.bag)
            for (Vertex w : node.bag)
                if (v != w) mateSet[v].insert(w);
    }
    std::vector<std::vector<Vertex>> bagMates(n + 1);
    for (Vertex v = 1; v <= n; ++v) bagMates[v].assign(mateSet[v].begin(), mateSet[v].end());

    upCand_.assign(n + 1, {});
    if (mode_ == ColorMode::ExactColors) {
        for (Vertex u = 1; u <= n; ++u)
            for (int m = 1; m <= maxMag_; ++m)
                if (winMask[u][m]) upCand_[u].push_back(m);
        return;
    }

    // Down-reachable magnitudes: a positive down value arises by anchoring on
    // a down-colored bag mate (at an introduction of either endpoint, or by
    // an orientation flip reusing such a value), so the candidate set is the
    // closure of {0 at hub locations} under rounded addition along bag
    // adjacency.
    std::vector<std::vector<char>> downReach(n + 1, std::vector<char>(maxMag_ + 1, 0));
    for (Vertex u = 1; u <= n; ++u)
        if (inst_.hub(u)) downReach[u][0] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (Vertex u = 1; u <= n; ++u)
            for (Vertex v : bagMates[u]) {
                long long dist = d_(u, v);
                if (dist < 1 || dist >= kInfDist) continue;
                for (int j = 0; j <= maxMag_; ++j) {
                    if (!downReach[v][j]) continue;
                    int m = magnitudeAdd(dist, j);
                    if (m >= 1 && winMask[u][m] && !downReach[u][m]) {
                        downReach[u][m] = 1;
                        changed = true;
                    }
                }
            }
    }

    // Up-reachable magnitudes: an up value on u is eventually discharged, by
    // flipping down (so the same magnitude is down-reachable at u) or at u's
    // forget via an anchor v of either orientation that is forgotten strictly
    // later.  Processing vertices by the depth of their forget node
    // (shallowest first) makes the anchor recursion well-founded.
    int numNtdNodes = (int)ntd_.nodes.size();
    std::vector<int> depth(numNtdNodes, 0);
    for (int t = numNtdNodes - 1; t >= 0; --t) {
        const NiceNode& nd = ntd_.nodes[t];
        if (nd.left >= 0) depth[nd.left] = depth[t] + 1;
        if (nd.right >= 0) depth[nd.right] = depth[t] + 1;
    }
    std::vector<int> forgetDepth(n + 1, -1);
    for (int t = 0; t < numNtdNodes; ++t)
        if (ntd_.nodes[t].kind == NodeKind::Forget)
            forgetDepth[ntd_.nodes[t].vertex] = depth[t];
    std::vector<Vertex> order;
    for (Vertex u = 1; u <= n; ++u)
        if (forgetDepth[u] >= 0) order.push_back(u);
    std::sort(order.begin(), order.end(),
              [&](Vertex a, Vertex b) { return forgetDepth[a] < forgetDepth[b]; });

    std::vector<std::vector<char>> upReach(n + 1, std::vector<char>(maxMag_ + 1, 0));
    for (Vertex u : order) {
        auto& cand = upReach[u];
        for (int m = 1; m <= maxMag_; ++m)
            if (downReach[u][m]) cand[m] = 1;
        for (Vertex v : forgetBag[u]) {
            if (v == u) continue;
            long long dist = d_(u, v);
            if (dist < 1 || dist >= kInfDist) continue;
            for (int j = 0; j <= maxMag_; ++j) {
                if (!upReach[v][j] && !downReach[v][j]) continue;
                int m = magnitudeAdd(dist, j);
                if (m >= 1 && winMask[u][m]) cand[m] = 1;
            }
        }
        for (int m = 1; m <= maxMag_; ++m)
            if (cand[m]) upCand_[u].push_back(m);
    }
}

DemandBits DpRun::computeS(int node, const ColorKey& c) const {
    const auto& bag = ntd_.nodes[node].bag;
    DemandBits s(numDemands_);
    for (size_t i = 0; i < bag.size(); ++i) s.orWith(servedBy_[bag[i]][colorMag(c[i])]);
    return s;
}

DemandBits DpRun::computeD(int node, const ColorKey& c) const {
    DemandBits s = computeS(node, c);
    DemandBits out = mustServe_[node];
    for (size_t i = 0; i < out.w.size(); ++i) out.w[i] &= ~s.w[i];
    return out;
}

void DpRun::evalLeaf(int t) {
    DpEntry e;
    e.A = 0;
    tables_[t].emplace(ColorKey{}, std::move(e));
    ++stats_.coloringsExpanded;
    curExamined_.insert(ColorKey{});
}

void DpRun::evalIntroduce(int t) {
    const NiceNode& node = ntd_.nodes[t];
    Vertex u = node.vertex;
    const auto& bag = node.bag;
    size_t pu = std::lower_bound(bag.begin(), bag.end(), u) - bag.begin();
    const auto& childBag = ntd_.nodes[node.left].bag;
    const auto& childTable = tables_[node.left];

    for (const auto& [ck, ce] : childTable) {
        std::vector<ColorCode> codes;
        if (inst_.hub(u)) codes.push_back(0);
        for (size_t q = 0; q < childBag.size(); ++q) {
            if (colorIsUp(ck[q])) continue;
            int m = magnitudeAdd(d_(u, childBag[q]), colorMag(ck[q]));
            if (m >= 1) codes.push_back(makeColor(false, m));
        }
        for (int m : upCand_[u]) codes.push_back(makeColor(true, m));
        std::sort(codes.begin(), codes.end());
        codes.erase(std::unique(codes.begin(), codes.end()), codes.end());

        DemandBits childD = computeD(node.left, ck);
        ColorKey key = ck;
        key.insert(key.begin() + pu, 0);
        auto store = [&](const ColorKey& k, long long A) {
            ++stats_.coloringsExpanded;
            curExamined_.insert(k);
            auto it = tables_[t].find(k);
            if (it == tables_[t].end()) {
                DpEntry e;
                e.A = A;
                e.child1 = ck;
                tables_[t].emplace(k, std::move(e));
            } else if (A < it->second.A) {
                it->second.A = A;
                it->second.child1 = ck;
            }
        };
        for (ColorCode code : codes) {
            key[pu] = code;
            if (!computeD(t, key).subsetOf(childD)) {
                ++stats_.coloringsExpanded;
                curExamined_.insert(key);
                continue;
            }
            long long A = ce.A + (code == 0 ? 1 : 0);
            store(key, A);
            if (colorIsUp(code)) continue;
            // A down-colored introduction certifies a hub within its
            // magnitude through the subtree, so an up bag mate whose promise
            // is exactly the anchored sum may flip down: the witness path
            // runs through the introduced vertex.  Serving paths completed
            // after both endpoints entered the bag are only expressible this
            // way, so every subset of eligible mates is enumerated.
            std::vector<size_t> elig;
            for (size_t q = 0; q < key.size(); ++q) {
                if (q == pu || !colorIsUp(key[q])) continue;
                if (magnitudeAdd(d_(bag[q], u), colorMag(code)) == colorMag(key[q]))
                    elig.push_back(q);
            }
            if (elig.empty()) continue;
            ColorKey flipped = key;
            for (size_t mask = 1; mask < (size_t(1) << elig.size()); ++mask) {
                for (size_t b = 0; b < elig.size(); ++b)
                    flipped[elig[b]] = (mask >> b & 1) ? ColorCode(key[elig[b]] & ~kUpFlag)
                                                       : key[elig[b]];
                store(flipped, A);
            }
        }
    }
}

void DpRun::evalForget(int t) {
    const NiceNode& node = ntd_.nodes[t];
    Vertex u = node.vertex;
    const auto& childBag = ntd_.nodes[node.left].bag;
    size_t pu = std::lower_bound(childBag.begin(), childBag.end(), u) - childBag.begin();
    const auto& childTable = tables_[node.left];

    for (const auto& [ck, ce] : childTable) {
        ++stats_.coloringsExpanded;
        ColorCode code = ck[pu];
        if (colorIsUp(code)) {
            // The forgotten up value must be anchored by a remaining bag
            // vertex of either orientation: a down anchor certifies a hub
            // within its magnitude inside the subtree, an up anchor passes
            // the obligation outward, and both discharge the promise by the
            // same triangle-inequality bound.  Any path from the forgotten
            // vertex to a hub outside the subtree crosses the bag, so an
            // anchor always exists for realizable promises.
            bool anchored = false;
            for (size_t q = 0; q < childBag.size() && !anchored; ++q) {
                if (q == pu) continue;
                anchored = magnitudeAdd(d_(u, childBag[q]), colorMag(ck[q])) == colorMag(code);
            }
            if (!anchored) continue;
        }
        ColorKey key = ck;
        key.erase(key.begin() + pu);
        curExamined_.insert(key);
        DemandBits d = computeD(t, key);
        if (!d.subsetOfUnion(computeD(node.left, ck), computeS(node.left, ck))) continue;
        auto it = tables_[t].find(key);
        if (it == tables_[t].end()) {
            DpEntry e;
            e.A = ce.A;
            e.child1 = ck;
            tables_[t].emplace(std::move(key), std::move(e));
        } else if (ce.A < it->second.A) {
            it->second.A = ce.A;
            it->second.child1 = ck;
        }
    }
}

void DpRun::evalJoin(int t) {
    const NiceNode& node = ntd_.nodes[t];
    const auto& bag = node.bag;
    const auto& leftTable = tables_[node.left];
    const auto& rightTable = tables_[node.right];

    for (const auto& [lk, le] : leftTable) {
        // Per-position options for the right child: down colors must match,
        // an up color may stay up (parent up) or flip down (parent down with
        // a positive magnitude), and a positive down color pairs with up.
        std::vector<std::vector<ColorCode>> options(bag.size());
        for (size_t q = 0; q < bag.size(); ++q) {
            ColorCode lc = lk[q];
            if (lc == 0) options[q] = {0};
            else if (colorIsUp(lc)) options[q] = {makeColor(false, colorMag(lc)), lc};
            else options[q] = {makeColor(true, colorMag(lc))};
        }
        ColorKey rk(bag.size()), key(bag.size());
        std::vector<size_t> idx(bag.size(), 0);
        while (true) {
            for (size_t q = 0; q < bag.size(); ++q) rk[q] = options[q][idx[q]];
            ++stats_.coloringsExpanded;
            curExamined_.insert(rk);
            auto rit = rightTable.find(rk);
            if (rit != rightTable.end()) {
                long long hubsInBag = 0;
                for (size_t q = 0; q < bag.size(); ++q) {
                    key[q] = std::min<ColorCode>(lk[q] & ~kUpFlag, rk[q] & ~kUpFlag)
                                 | ((lk[q] & rk[q]) & kUpFlag);
                    if (key[q] == 0) ++hubsInBag;
                }
                curExamined_.insert(key);
                DemandBits d = computeD(t, key);
                if (d.subsetOfUnion(computeD(node.left, lk), computeD(node.right, rk))) {
                    long long A = le.A + rit->second.A - hubsInBag;
                    auto it = tables_[t].find(key);
                    if (it == tables_[t].end()) {
                        DpEntry e;
                        e.A = A;
                        e.child1 = lk;
                        e.child2 = rk;
                        tables_[t].emplace(key, std::move(e));
                    } else if (A < it->second.A) {
                        it->second.A = A;
                        it->second.child1 = lk;
                        it->second.child2 = rk;
                    }
                }
            }
            size_t q = bag.size();
            while (q > 0 && idx[q - 1] + 1 == options[q - 1].size()) idx[--q] = 0;
            if (q == 0) break;
            ++idx[q - 1];
        }
    }
}

bool DpRun::run() {
    tables_.assign(ntd_.nodes.size(), {});
    stats_.perNodeExamined.assign(ntd_.nodes.size(), 0);
    for (int t = 0; t < (int)ntd_.nodes.size(); ++t) {
        curExamined_.clear();
        switch (ntd_.nodes[t].kind) {
            case NodeKind::Leaf: evalLeaf(t); break;
            case NodeKind::Introduce: evalIntroduce(t); break;
            case NodeKind::Forget: evalForget(t); break;
            case NodeKind::Join: evalJoin(t); break;
        }
        stats_.perNodeExamined[t] = (long long)curExamined_.size();
    }
    for (const auto& tab : tables_) stats_.coloringsStored += (long long)tab.size();
    auto it = tables_[ntd_.root].find(ColorKey{});
    return it != tables_[ntd_.root].end() && it->second.A <= inst_.k;
}

void DpRun::collectHubs(int node, const ColorKey& c, std::vector<Vertex>& out) const {
    const NiceNode& nd = ntd_.nodes[node];
    switch (nd.kind) {
        case NodeKind::Leaf: return;
        case NodeKind::Introduce: {
            size_t pu = std::lower_bound(nd.bag.begin(), nd.bag.end(), nd.vertex) -
                        nd.bag.begin();
            if (c[pu] == 0) out.push_back(nd.vertex);
            collectHubs(nd.left, tables_[node].at(c).child1, out);
            return;
        }
        case NodeKind::Forget: {
            collectHubs(nd.left, tables_[node].at(c).child1, out);
            return;
        }
        case NodeKind::Join: {
            const DpEntry& e = tables_[node].at(c);
            collectHubs(nd.left, e.child1, out);
            collectHubs(nd.right, e.child2, out);
            return;
        }
    }
}

std::vector<Vertex> DpRun::reconstruct(int node, const ColorKey& c) const {
    std::vector<Vertex> out;
    collectHubs(node, c, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Vertex> DpRun::reconstruct() const { return reconstruct(ntd_.root, ColorKey{}); }

std::optional<std::string> verify_conditions(const DpRun& run, int node, const ColorKey& c,
                                             const std::vector<Vertex>& H) {
    const Instance& inst = run.instance();
    const NiceNode& nd = run.decomposition().nodes[node];
    const auto& allowed = run.decomposition().nodes[node].subtreeVertices;

    // Down-colored bag vertices need a hub within their magnitude, reached
    // inside the subtree's induced subgraph.
    std::vector<char> ok(inst.n + 1, 0);
    for (Vertex v : allowed) ok[v] = 1;
    std::vector<std::vector<std::pair<Vertex, long long>>> adj(inst.n + 1);
    for (const auto& e : inst.edges)
        if (ok[e.u] && ok[e.v]) {
            adj[e.u].push_back({e.v, e.w});
            adj[e.v].push_back({e.u, e.w});
        }
    for (size_t i = 0; i < nd.bag.size(); ++i) {
        if (colorIsUp(c[i])) continue;
        Vertex u = nd.bag[i];
        mpq_class budget = run.magnitudeValue(colorMag(c[i]));
        std::vector<long long> dist(inst.n + 1, kInfDist);
        std::priority_queue<std::pair<long long, Vertex>, std::vector<std::pair<long long, Vertex>>,
                            std::greater<>> pq;
        dist[u] = 0;
        pq.push({0, u});
        while (!pq.empty()) {
            auto [du, v] = pq.top();
            pq.pop();
            if (du > dist[v]) continue;
            for (auto [w, len] : adj[v])
                if (du + len < dist[w]) {
                    dist[w] = du + len;
                    pq.push({dist[w], w});
                }
        }
        bool served = false;
        for (Vertex h : H)
            if (ok[h] && mpq_class((long)dist[h]) <= budget) served = true;
        if (!served)
            return "C1 violated at vertex " + std::to_string(u) + " of node " +
                   std::to_string(node);
    }

    DemandBits obligations = run.computeD(node, c);
    for (int i = 0; i < (int)inst.demands.size(); ++i) {
        if (!obligations.test(i)) continue;
        const Demand& dem = inst.demands[i];
        long long best = kInfDist;
        for (Vertex h : H)
            best = std::min(best, run.distances()(dem.a, h) + run.distances()(h, dem.b));
        if (mpq_class((long)best) > run.servingThreshold())
            return "C2 violated for demand (" + std::to_string(dem.a) + "," +
                   std::to_string(dem.b) + ") at node " + std::to_string(node);
    }
    return std::nullopt;
}

FixedResult solve_fixed_r(const Instance& preprocessed, const NiceTreeDecomposition& ntd,
                          const DistanceOracle& d, long long r, const mpq_class& epsilon,
                          ColorMode mode, bool looseDelta) {
    FixedResult res;
    res.width = ntd.width();
    res.height = ntd.height;
    res.nodes = (long long)ntd.nodes.size();
    mpq_class delta = 0;
    if (mode == ColorMode::Approx)
        delta = choose_delta(epsilon, std::max(1, ntd.height), looseDelta);
    res.delta = delta;
    DpRun run(preprocessed, ntd, d, r, epsilon, delta, mode);
    res.success = run.run();
    res.stats = run.stats();
    if (res.success) res.hubs = run.reconstruct();
    return res;
}

SolveReport solve(const Instance& inst, const SolveOptions& opts) {
    if (auto err = validate_instance(inst)) throw std::invalid_argument(*err);
    SolveReport rep;
    rep.epsilon = opts.epsilon;
    ColorMode mode = opts.exactColors ? ColorMode::ExactColors : ColorMode::Approx;
    mpq_class epsIn = mode == ColorMode::Approx ? mpq_class(opts.epsilon / 2) : mpq_class(0);
    epsIn.canonicalize();

    DistanceOracle origD = all_pairs_distances(inst, opts.threads);
    Solution greedy = greedy_three_approx(inst, origD);
    if (greedy.value == 0) {
        rep.success = true;
        rep.solution = greedy;
        rep.rUsed = 0;
        return rep;
    }

    // Shrink oversized weights so the radius schedule stays polynomial; at
    // desk scale the factor is >= 1 and this is the identity.
    Instance work = inst;
    DistanceOracle workD = origD;
    if (mode == ColorMode::Approx) {
        Instance scaled = rescale(inst, epsIn, greedy.value);
        if (scaled.edges != inst.edges) {
            work = std::move(scaled);
            workD = all_pairs_distances(work, opts.threads);
            greedy = greedy_three_approx(work, workD);
        }
    }

    long long A = greedy.value;
    long long rLo = std::max<long long>(1, (A + 2) / 3);
    long long rHi = opts.maxR >= 0 ? std::min(A, opts.maxR) : A;
    for (long long r = rLo; r <= rHi; ++r) {
        long long connector = mode == ColorMode::Approx
                                  ? ceilToLL((epsIn + 1) * mpq_class(2 * (long)r)) + 1
                                  : 2 * r + 1;
        PreprocessResult pre = preprocess_remove(work, r, workD, connector);
        if (!pre.feasible) continue;
        DistanceOracle preD = all_pairs_distances(pre.inst, opts.threads);

        TreeDecomposition td;
        bool useSupplied = opts.td && pre.inst.n == work.n &&
                           !validate(*opts.td, pre.inst).has_value();
        td = useSupplied ? *opts.td : heuristic_decomposition(pre.inst);
        NiceTreeDecomposition ntd = make_nice(td);
        Instance completed = complete_bags(pre.inst, ntd, preD);

        FixedResult fr = solve_fixed_r(completed, ntd, preD, r, epsIn, mode, opts.looseDelta);
        rep.coloringsExpanded += fr.stats.coloringsExpanded;
        if (!fr.success) continue;

        std::vector<Vertex> hubs;
        for (Vertex h : fr.hubs) hubs.push_back(pre.origId[h]);
        std::sort(hubs.begin(), hubs.end());
        Evaluation ev = evaluate_solution(inst, hubs, origD);
        rep.success = true;
        rep.solution.hubs = std::move(hubs);
        rep.solution.value = ev.value;
        rep.solution.rUsed = r;
        rep.solution.perDemandHub = std::move(ev.perDemandHub);
        rep.delta = fr.delta;
        rep.rUsed = r;
        rep.tw = fr.width;
        rep.ntdHeight = fr.height;
        rep.nodes = fr.nodes;
        return rep;
    }
    return rep;  // no radius accepted: infeasible under the given caps
}

} // namespace makhc
