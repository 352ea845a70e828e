#pragma once

#include <vector>

#include "fpa/model.hpp"

namespace fpa {

struct WeightedAtom {
    double value = 0.0;
    double mass = 0.0;
};

// Finite-atom view of a value distribution. Uniform components are quantized
// into 256 equal-mass atoms at mid-quantiles, which moves no unit of mass
// farther than (hi - lo)/512.
std::vector<WeightedAtom> to_atoms(const ValueDistribution& f);

struct WassersteinResult {
    double value = 0.0;
    double atomization_bound = 0.0;  // worst-case error introduced by quantizing uniforms
};

// Exact 1-D optimal transport between two atom lists under the ground cost
// |x - y|, via the sorted-quantile coupling.
double wasserstein_atoms(std::vector<WeightedAtom> f1, std::vector<WeightedAtom> f2);

// Distance between two value distributions; the parametric ground cost of the
// deviation measure collapses to the plain distance between parameter values
// for the distribution families used here.
WassersteinResult wasserstein(const ValueDistribution& f1, const ValueDistribution& f2);

struct DeviationReport {
    double w_total = 0.0;            // sum of per-period distances to the mixture
    std::vector<double> per_period;  // W(F_t, F_bar)
    double v_total = 0.0;            // L1 gap between an allocation and a plan
};

// Distances of every F_t to the uniform mixture of all periods, summed.
DeviationReport w_report(const Instance& inst);

// L1 prediction error sum_t |rho_t - rho_hat_t|; lengths must match.
double v_total(const std::vector<double>& rho, const BudgetPlan& plan);

}  // namespace fpa
