#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fpa/benchmarks.hpp"
#include "fpa/model.hpp"

namespace fpa {

namespace {

// The worst-case families are stated on [0, 1] with a zero reserve; a tiny
// positive reserve keeps the model invariant 0 < a while leaving every
// closed-form value unchanged to well past nine digits.
constexpr double kTinyReserve = 1e-9;

AuctionParams scenario_params(int T) {
    AuctionParams p;
    p.a = kTinyReserve;
    p.b = 1.0;
    p.T = T;
    p.B = static_cast<double>(T) / 4.0;
    return p;
}

}  // namespace

LowerBoundPair make_prop1_pair(int T, double W) {
    if (T < 4 || T % 4 != 0) throw std::invalid_argument("prop-1 scenario needs T divisible by 4");
    // W/T <= 1/4 keeps 3/4 + W/T inside the value range
    if (!(W >= 0.0) || W / T > 0.25)
        throw std::invalid_argument("prop-1 scenario needs 0 <= W/T <= 1/4");

    const AuctionParams p = scenario_params(T);
    const double shift = W / T;

    LowerBoundPair pair;
    pair.first.params = p;
    pair.second.params = p;
    pair.first.competitor = ConstantBid{0.5};
    pair.second.competitor = ConstantBid{0.5};
    for (int t = 0; t < T; ++t) {
        const bool late = t >= T / 2;
        pair.first.values.push_back(PointMass{late ? 0.75 + shift : 0.75});
        pair.second.values.push_back(PointMass{late ? 0.75 - shift : 0.75});
    }
    pair.opt_first = T / 8.0 + W / 2.0;
    pair.opt_second = T / 8.0;
    validate(pair.first);
    validate(pair.second);
    return pair;
}

LowerBoundPair make_prop2_pair(int T, int V) {
    if (T < 4 || T % 4 != 0) throw std::invalid_argument("prop-2 scenario needs T divisible by 4");
    if (V < 0 || V > T / 2) throw std::invalid_argument("prop-2 scenario needs 0 <= V <= T/2");

    const AuctionParams p = scenario_params(T);

    LowerBoundPair pair;
    pair.first.params = p;
    pair.second.params = p;
    pair.first.competitor = ConstantBid{0.5};
    pair.second.competitor = ConstantBid{0.5};
    for (int t = 0; t < T; ++t) {
        const bool tail = t >= T - V;
        pair.first.values.push_back(PointMass{tail ? 0.875 : 0.75});
        pair.second.values.push_back(PointMass{tail ? 0.625 : 0.75});
    }

    BudgetPlan plan;
    plan.rho_hat.resize(static_cast<std::size_t>(T));
    for (int t = 1; t <= T; ++t)
        plan.rho_hat[static_cast<std::size_t>(t - 1)] = (t % 2 == 1) ? 0.5 : 0.0;
    pair.plan = std::move(plan);

    pair.opt_first = T / 8.0 + V / 8.0;
    pair.opt_second = T / 8.0;
    validate(pair.first);
    validate(pair.second);
    return pair;
}

namespace {

constexpr double kExperimentLo = 1.0;
constexpr double kExperimentHi = 2.0;

AuctionParams experiment_params(int T) {
    AuctionParams p;
    p.a = kExperimentLo;
    p.b = kExperimentHi;
    p.T = T;
    p.B = 0.2 * T;
    return p;
}

// Uniform with the requested mean and standard deviation (endpoints at
// mean +- sqrt(3)*sd), clipped to the admissible range afterwards.
ValueDistribution clipped_uniform(double mean, double sd) {
    const double half = std::sqrt(3.0) * sd;
    const double lo = std::clamp(mean - half, kExperimentLo, kExperimentHi);
    const double hi = std::clamp(mean + half, kExperimentLo, kExperimentHi);
    if (lo == hi) return PointMass{lo};
    return UniformDist{lo, hi};
}

Instance random_uniform_instance(int T, std::uint64_t seed) {
    Instance inst;
    inst.params = experiment_params(T);
    inst.competitor = UniformDist{kExperimentLo, kExperimentHi};
    inst.values.reserve(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
        SplitMix64 rng(substream(seed, static_cast<std::uint64_t>(t)));
        const double mean = rng.next_in(1.0, 2.0);
        const double sd = rng.next_in(1.0, 2.0);
        inst.values.push_back(clipped_uniform(mean, sd));
    }
    return inst;
}

}  // namespace

ExperimentSetup make_experiment_instance(int kind, int T, double knob, std::uint64_t seed) {
    if (T < 2) throw std::invalid_argument("experiment needs T >= 2");
    ExperimentSetup setup;
    switch (kind) {
        case 1: {
            setup.instance = random_uniform_instance(T, seed);
            break;
        }
        case 2: {
            // Two-block mean shift of knob/T in the second half.
            setup.instance.params = experiment_params(T);
            setup.instance.competitor = UniformDist{kExperimentLo, kExperimentHi};
            const double base_mean = 1.5;
            const double shifted = base_mean + knob / T;
            if (shifted > kExperimentHi)
                throw std::invalid_argument("shift knob/T pushes the mean outside [1,2]");
            for (int t = 0; t < T; ++t)
                setup.instance.values.push_back(PointMass{t < T / 2 ? base_mean : shifted});
            break;
        }
        case 3: {
            if (knob < 0.0) throw std::invalid_argument("prediction error must be nonnegative");
            setup.instance = random_uniform_instance(T, seed);
            BudgetPlan plan;
            plan.rho_hat = ideal_allocation(setup.instance);
            for (double& r : plan.rho_hat) r = std::max(0.0, r - knob);
            setup.plan = std::move(plan);
            break;
        }
        default:
            throw std::invalid_argument("experiment kind must be 1, 2 or 3");
    }
    validate(setup.instance);
    return setup;
}

}  // namespace fpa
