#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "fpa/rng.hpp"

namespace fpa {

// Auction primitives: T sequential first-price auctions, private values and
// highest competitor bids supported on [a, b] with 0 < a < b, initial budget B.
struct AuctionParams {
    double a = 1.0;  // reserve price / lower support bound
    double b = 2.0;  // upper support bound
    int T = 1;       // horizon
    double B = 0.0;  // initial budget

    double dual_bound() const { return b / a + b; }  // admissible range of the dual variable
};

void validate(const AuctionParams& p);  // throws std::invalid_argument

struct PointMass {
    double v = 0.0;
};

struct UniformDist {
    double lo = 0.0;
    double hi = 0.0;
};

struct DiscreteDist {
    std::vector<std::pair<double, double>> atoms;  // (value, probability), probabilities sum to 1
};

struct ConstantBid {
    double m = 0.0;
};

using ValueDistribution = std::variant<PointMass, UniformDist, DiscreteDist>;
using CompetitorModel = std::variant<UniformDist, DiscreteDist, ConstantBid>;

double mean_of(const ValueDistribution& f);
void validate_support(const ValueDistribution& f, double a, double b);
void validate_support(const CompetitorModel& g, double a, double b);
bool operator==(const PointMass&, const PointMass&);
bool operator==(const UniformDist&, const UniformDist&);
bool operator==(const DiscreteDist&, const DiscreteDist&);
bool operator==(const ConstantBid&, const ConstantBid&);

double sample(const ValueDistribution& f, SplitMix64& rng);
double sample(const CompetitorModel& g, SplitMix64& rng);

// One repeated-auction problem: per-period value distributions F_1..F_T and a
// stationary competitor model G.
struct Instance {
    AuctionParams params;
    std::vector<ValueDistribution> values;  // length T
    CompetitorModel competitor;
};

void validate(const Instance& inst);

// Per-period spend targets. rho_hat sums to B (checked by validate); eps holds
// optional per-period violation slacks for the relaxed benchmark.
struct BudgetPlan {
    std::vector<double> rho_hat;
    std::optional<std::vector<double>> eps;
};

// Enforces length, nonnegativity and the sum-to-B contract (1e-9 relative,
// absolute when B = 0). Plans derived from a numeric dual solve carry solver
// residue and are not re-validated against the exact sum.
void validate(const BudgetPlan& plan, const AuctionParams& params);

struct ArrivalSample {
    double v = 0.0;
    double m = 0.0;
};

// Even split B/T per period, the default plan when nothing is known.
BudgetPlan uniform_plan(const AuctionParams& params);

// Draws (v_t, m_t) for every period. Deterministic in (instance, seed); each
// period consumes its own derived substream so sequences are stable underedits
// elsewhere.
std::vector<ArrivalSample> sample_arrivals(const Instance& inst, std::uint64_t seed);

// Paired worst-case scenarios with known offline optima, plus (for the second
// family) the alternating spend plan they are built around.
struct LowerBoundPair {
    Instance first;
    Instance second;
    std::optional<BudgetPlan> plan;  // alternating plan (second family only)
    double opt_first = 0.0;          // offline optimum of `first`
    double opt_second = 0.0;         // offline optimum of `second`
};

// Two-block point-mass scenario: m_t constant 1/2, B = T/4, values 3/4 then
// 3/4 +- W/T. Offline optima (T/8 + W/2, T/8). Requires T % 4 == 0 and
// W/T <= 1/4 (so values stay inside [a, b]).
LowerBoundPair make_prop1_pair(int T, double W);

// Tail-shift scenario with the alternating plan (1/2 on odd periods): values
// 3/4 for t <= T-V, then 7/8 (first) or 5/8 (second). Offline optima
// (T/8 + V/8, T/8). Requires T % 4 == 0 and integer 0 <= V <= T/2.
LowerBoundPair make_prop2_pair(int T, int V);

struct ExperimentSetup {
    Instance instance;
    std::optional<BudgetPlan> plan;  // kind 3: prediction rho_t - eps, floored at 0
};

// Synthetic experiment families, all on [a,b] = [1,2] with B = 0.2*T and a
// Uniform(1,2) competitor:
//   kind 1: per-period uniform values, endpoints mu_t +- sqrt(3)*sigma_t with
//           mu_t, sigma_t ~ U[1,2], clipped to [1,2]; knob ignored.
//   kind 2: point-mass values, mean 1.5 for the first half and 1.5 + knob/T
//           for the second.
//   kind 3: kind-1 instance plus the plan rho_t - knob built from the ideal
//           allocation.
ExperimentSetup make_experiment_instance(int kind, int T, double knob, std::uint64_t seed);

}  // namespace fpa
