#pragma once

#include <vector>

#include "fpa/model.hpp"

namespace fpa {

// Per-period dual quantities at a multiplier mu: the shaded expected reward
// L = E_v[(v - (1+mu) x*) G(x*)] and the expected consumption c = E_v[x* G(x*)]
// at the optimal shaded bid x*(v, mu).
struct PeriodDual {
    double value = 0.0;        // L(mu, F)
    double consumption = 0.0;  // E[x* G(x*)]
};

// Exact for point-mass/discrete value distributions; uniform values integrate
// with a composite 64-point Gauss-Legendre rule split where x*(v, mu) switches
// regime, so the piecewise-polynomial integrand is captured exactly.
PeriodDual single_period_dual(const ValueDistribution& f, const CompetitorModel& g, double mu,
                              double a, double b);

// Budget-relaxed value mu*B + sum_t L(mu, F_t). Upper-bounds the complete
// information optimum for every mu >= 0 (weak duality).
double lagrangian_value(const Instance& inst, double mu);

struct LagrangianSolution {
    double mu_star = 0.0;
    double v_lr = 0.0;          // value at mu_star (the tightest relaxation bound)
    std::vector<double> rho;    // ideal per-period allocation E[x* G(x*)] at mu_star
    double slack = 0.0;         // B - sum_t rho_t
};

// Minimizes the relaxation over mu by golden-section search on [0, b/a + b]
// (bids vanish at mu >= b/a, so the minimizer lies inside) to width 1e-8.
LagrangianSolution solve_mu_star(const Instance& inst);

// The per-period expected spend of the relaxed optimum at mu*.
std::vector<double> ideal_allocation(const Instance& inst);

enum class OracleConstraint {
    GlobalExpected,  // sum_t E[x_t G(x_t)] <= B
    PerPeriodPlan,   // E[x_t G(x_t)] <= rho_hat_t for every t
    PlanWithGlobal,  // per-period caps rho_hat_t + eps_t and the global budget
};

// Ground-truth optimum over randomized bid maps restricted to a finite grid,
// for desk-scale instances (point-mass/discrete values only). Single-constraint
// modes enumerate the deterministic maps induced by the candidate multipliers
// and close the budget with one two-point randomized period; the two-family
// mode solves the same LP with a dense simplex. Oversized inputs are rejected.
double exhaustive_oracle(const Instance& inst, const std::vector<double>& bid_grid,
                         OracleConstraint kind, const BudgetPlan* plan = nullptr,
                         const std::vector<double>* eps = nullptr, double budget_override = -1.0);

// Optimum under per-period expected-expenditure caps rho_hat_t: each period is
// a one-constraint problem solved by bisection on its multiplier, mixing two
// bids at the critical multiplier when the consumption jumps across the cap.
double plan_benchmark(const Instance& inst, const BudgetPlan& plan);

// Caps relaxed to rho_hat_t + eps_t plus the global budget B: outer bisection
// on the global multiplier, inner capped per-period solves.
double relaxed_plan_benchmark(const Instance& inst, const BudgetPlan& plan,
                              const std::vector<double>& eps, double B);

}  // namespace fpa
