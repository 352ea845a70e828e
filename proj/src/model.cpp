#include "fpa/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fpa {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void validate(const AuctionParams& p) {
    require(finite(p.a) && finite(p.b) && finite(p.B), "auction params must be finite");
    require(p.a > 0.0, "reserve price a must be positive");
    require(p.b > p.a, "upper bound b must exceed a");
    require(p.T >= 1, "horizon T must be at least 1");
    require(p.B >= 0.0, "budget B must be nonnegative");
}

double mean_of(const ValueDistribution& f) {
    return std::visit(
        [](const auto& d) -> double {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, PointMass>) {
                return d.v;
            } else if constexpr (std::is_same_v<D, UniformDist>) {
                return 0.5 * (d.lo + d.hi);
            } else {
                double m = 0.0;
                for (const auto& [v, p] : d.atoms) m += v * p;
                return m;
            }
        },
        f);
}

namespace {

void check_discrete(const DiscreteDist& d, double a, double b) {
    require(!d.atoms.empty(), "discrete distribution needs at least one atom");
    double total = 0.0;
    for (const auto& [v, p] : d.atoms) {
        require(finite(v) && finite(p), "discrete atoms must be finite");
        require(p >= 0.0, "atom probabilities must be nonnegative");
        require(v >= a && v <= b, "atom outside [a,b]");
        total += p;
    }
    require(std::abs(total - 1.0) <= 1e-12, "atom probabilities must sum to 1");
}

void check_uniform(const UniformDist& u, double a, double b) {
    require(finite(u.lo) && finite(u.hi), "uniform endpoints must be finite");
    require(u.lo <= u.hi, "uniform needs lo <= hi");
    require(u.lo >= a && u.hi <= b, "uniform support outside [a,b]");
}

}  // namespace

void validate_support(const ValueDistribution& f, double a, double b) {
    std::visit(
        [&](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, PointMass>) {
                require(finite(d.v) && d.v >= a && d.v <= b, "point mass outside [a,b]");
            } else if constexpr (std::is_same_v<D, UniformDist>) {
                check_uniform(d, a, b);
            } else {
                check_discrete(d, a, b);
            }
        },
        f);
}

void validate_support(const CompetitorModel& g, double a, double b) {
    std::visit(
        [&](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, ConstantBid>) {
                require(finite(d.m) && d.m >= a && d.m <= b, "constant bid outside [a,b]");
            } else if constexpr (std::is_same_v<D, UniformDist>) {
                check_uniform(d, a, b);
            } else {
                check_discrete(d, a, b);
            }
        },
        g);
}

bool operator==(const PointMass& x, const PointMass& y) { return x.v == y.v; }
bool operator==(const UniformDist& x, const UniformDist& y) { return x.lo == y.lo && x.hi == y.hi; }
bool operator==(const DiscreteDist& x, const DiscreteDist& y) { return x.atoms == y.atoms; }
bool operator==(const ConstantBid& x, const ConstantBid& y) { return x.m == y.m; }

namespace {

double sample_discrete(const DiscreteDist& d, SplitMix64& rng) {
    double u = rng.next_unit();
    double cum = 0.0;
    for (const auto& [v, p] : d.atoms) {
        cum += p;
        if (u < cum) return v;
    }
    return d.atoms.back().first;  // guard against rounding in the tail
}

}  // namespace

double sample(const ValueDistribution& f, SplitMix64& rng) {
    return std::visit(
        [&](const auto& d) -> double {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, PointMass>) {
                return d.v;
            } else if constexpr (std::is_same_v<D, UniformDist>) {
                return d.lo == d.hi ? d.lo : rng.next_in(d.lo, d.hi);
            } else {
                return sample_discrete(d, rng);
            }
        },
        f);
}

double sample(const CompetitorModel& g, SplitMix64& rng) {
    return std::visit(
        [&](const auto& d) -> double {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, ConstantBid>) {
                return d.m;
            } else if constexpr (std::is_same_v<D, UniformDist>) {
                return d.lo == d.hi ? d.lo : rng.next_in(d.lo, d.hi);
            } else {
                return sample_discrete(d, rng);
            }
        },
        g);
}

void validate(const Instance& inst) {
    validate(inst.params);
    require(static_cast<int>(inst.values.size()) == inst.params.T,
            "values sequence must have length T");
    for (const auto& f : inst.values) validate_support(f, inst.params.a, inst.params.b);
    validate_support(inst.competitor, inst.params.a, inst.params.b);
}

void validate(const BudgetPlan& plan, const AuctionParams& params) {
    require(static_cast<int>(plan.rho_hat.size()) == params.T, "plan must have length T");
    double total = 0.0;
    for (double r : plan.rho_hat) {
        require(finite(r) && r >= 0.0, "plan entries must be nonnegative");
        total += r;
    }
    const double tol = params.B == 0.0 ? 1e-9 : 1e-9 * params.B;
    require(std::abs(total - params.B) <= tol, "plan entries must sum to the budget");
    if (plan.eps) {
        require(plan.eps->size() == plan.rho_hat.size(), "eps must have length T");
        for (double e : *plan.eps) require(finite(e) && e >= 0.0, "eps entries must be nonnegative");
    }
}

BudgetPlan uniform_plan(const AuctionParams& params) {
    validate(params);
    BudgetPlan plan;
    plan.rho_hat.assign(static_cast<std::size_t>(params.T), params.B / params.T);
    return plan;
}

std::vector<ArrivalSample> sample_arrivals(const Instance& inst, std::uint64_t seed) {
    std::vector<ArrivalSample> out;
    out.reserve(inst.values.size());
    for (std::size_t t = 0; t < inst.values.size(); ++t) {
        SplitMix64 vs(substream(seed, 2 * t));
        SplitMix64 ms(substream(seed, 2 * t + 1));
        out.push_back({sample(inst.values[t], vs), sample(inst.competitor, ms)});
    }
    return out;
}

}  // namespace fpa
