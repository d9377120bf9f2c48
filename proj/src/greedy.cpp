#include "makhc/preprocess.hpp"

#include <algorithm>
#include <stdexcept>

namespace makhc {

// Threshold-based greedy: try each candidate radius in ascending order.  At
// radius r, repeatedly pick the first unserved demand, open the first hub
// within r of it, and mark every demand within 3r of that hub as served.  If
// this fits in k hubs the radius works, and r <= OPT for the first success,
// so the value is at most 3*OPT.
Solution greedy_three_approx(const Instance& inst, const DistanceOracle& d) {
    std::vector<long long> radii;
    for (const auto& dem : inst.demands)
        for (Vertex h = 1; h <= inst.n; ++h)
            if (inst.isHub[h]) radii.push_back(d(dem.a, h) + d(h, dem.b));
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    for (long long r : radii) {
        std::vector<char> sat(inst.demands.size(), 0);
        std::vector<Vertex> opened;
        bool failed = false;
        while (!failed) {
            size_t next = 0;
            while (next < sat.size() && sat[next]) ++next;
            if (next == sat.size()) break;  // all served
            const Demand& dem = inst.demands[next];
            Vertex chosen = 0;
            for (Vertex h = 1; h <= inst.n && !chosen; ++h)
                if (inst.isHub[h] && d(dem.a, h) + d(h, dem.b) <= r) chosen = h;
            if (!chosen || (int)opened.size() + 1 > inst.k) {
                failed = true;
                break;
            }
            opened.push_back(chosen);
            for (size_t i = 0; i < sat.size(); ++i)
                if (!sat[i] &&
                    d(inst.demands[i].a, chosen) + d(chosen, inst.demands[i].b) <= 3 * r)
                    sat[i] = 1;
        }
        if (!failed) {
            Solution sol;
            sol.hubs = opened;
            std::sort(sol.hubs.begin(), sol.hubs.end());
            sol.hubs.erase(std::unique(sol.hubs.begin(), sol.hubs.end()), sol.hubs.end());
            sol.rUsed = r;
            Evaluation ev = evaluate_solution(inst, sol.hubs, d);
            sol.value = ev.value;
            sol.perDemandHub = std::move(ev.perDemandHub);
            return sol;
        }
    }
    throw std::runtime_error("greedy_three_approx: no feasible radius");
}

} // namespace makhc
