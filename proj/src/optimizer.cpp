#include "fpa/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace fpa {

double competitor_cdf(const CompetitorModel& g, double x) {
    return std::visit(
        [&](const auto& d) -> double {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, ConstantBid>) {
                return x >= d.m ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<D, UniformDist>) {
                if (x < d.lo) return 0.0;
                if (x >= d.hi) return 1.0;
                return (x - d.lo) / (d.hi - d.lo);
            } else {
                double cum = 0.0;
                for (const auto& [v, p] : d.atoms)
                    if (v <= x) cum += p;
                return cum;
            }
        },
        g);
}

namespace {

// Keeps the running best with ties resolved toward the smaller bid. Starts at
// the abstention point (0, 0) so any nonpositive maximum collapses to it.
struct BestTracker {
    double bid = 0.0;
    double objective = 0.0;

    void offer(double x, double obj) {
        if (obj > objective || (obj == objective && x < bid)) {
            bid = x;
            objective = obj;
        }
    }
};

}  // namespace

BidChoice best_bid_step(double v, double mu, const EmpiricalCdf& cdf, double a, double b) {
    const double shade = 1.0 + mu;
    if (cdf.size() == 0) {
        // G_hat == 1 everywhere: linear objective, left endpoint.
        const double obj = v - shade * a;
        return obj > 0.0 ? BidChoice{a, obj} : BidChoice{};
    }
    BestTracker best;
    const double n = static_cast<double>(cdf.size());
    const double cum_a = static_cast<double>(cdf.count_at_most(a));
    if (cum_a > 0.0) best.offer(a, (v - shade * a) * (cum_a / n));
    cdf.for_each_step([&](double s, std::size_t cum) {
        if (s < a || s > b) return;  // samples are range-checked, but stay defensive
        best.offer(s, (v - shade * s) * (static_cast<double>(cum) / n));
    });
    return {best.bid, best.objective};
}

namespace {

BidChoice best_over_candidates(double v, double mu, const CompetitorModel& g,
                               const double* cand, std::size_t n_cand) {
    const double shade = 1.0 + mu;
    BestTracker best;
    for (std::size_t i = 0; i < n_cand; ++i)
        best.offer(cand[i], (v - shade * cand[i]) * competitor_cdf(g, cand[i]));
    return {best.bid, best.objective};
}

}  // namespace

BidChoice best_bid_analytic(double v, double mu, const CompetitorModel& g, double a, double b) {
    return std::visit(
        [&](const auto& d) -> BidChoice {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, ConstantBid>) {
                const double cand[2] = {a, std::clamp(d.m, a, b)};
                return best_over_candidates(v, mu, g, cand, 2);
            } else if constexpr (std::is_same_v<D, UniformDist>) {
                if (d.lo == d.hi) {
                    const double cand[2] = {a, std::clamp(d.lo, a, b)};
                    return best_over_candidates(v, mu, g, cand, 2);
                }
                const double vertex = 0.5 * (v / (1.0 + mu) + d.lo);
                const double cand[4] = {a, std::clamp(vertex, a, b), std::clamp(d.lo, a, b),
                                        std::clamp(d.hi, a, b)};
                return best_over_candidates(v, mu, g, cand, 4);
            } else {
                std::vector<double> cand;
                cand.reserve(d.atoms.size() + 1);
                cand.push_back(a);
                for (const auto& [s, p] : d.atoms)
                    if (s >= a && s <= b) cand.push_back(s);
                std::sort(cand.begin(), cand.end());
                return best_over_candidates(v, mu, g, cand.data(), cand.size());
            }
        },
        g);
}

double expected_consumption(double bid, const CompetitorModel& g) {
    return bid == 0.0 ? 0.0 : bid * competitor_cdf(g, bid);
}

double expected_consumption(double bid, const EmpiricalCdf& cdf) {
    return bid == 0.0 ? 0.0 : bid * cdf.query(bid);
}

}  // namespace fpa
