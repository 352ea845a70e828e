#include "fpa/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fpa/numeric.hpp"
#include "fpa/optimizer.hpp"

namespace fpa {

namespace {

constexpr double kMuSearchWidth = 1e-8;
constexpr double kBisectWidth = 1e-10;

// Points where the per-value argmax x*(v, mu) can switch regime as v varies,
// for a fixed competitor model. Splitting the value integral here keeps every
// piece polynomial in v.
std::vector<double> value_breakpoints(const CompetitorModel& g, double mu, double a, double b) {
    const double shade = 1.0 + mu;
    std::vector<double> bps;
    std::visit(
        [&](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, UniformDist>) {
                if (d.lo == d.hi) {
                    bps.push_back(shade * std::clamp(d.lo, a, b));
                    bps.push_back(shade * a);
                    return;
                }
                const double left = std::max(a, d.lo);
                const double right = std::min(b, d.hi);
                bps.push_back(shade * (2.0 * left - d.lo));    // vertex hits the left clip
                bps.push_back(shade * (2.0 * right - d.lo));   // vertex hits the right clip
                bps.push_back(shade * left);                   // clipped bid turns profitable
                bps.push_back(shade * a);
            } else {
                // Constant and discrete models: candidate bids are {a} plus atoms.
                std::vector<std::pair<double, double>> cands;  // (bid, G(bid))
                auto add = [&](double s) {
                    if (s >= a && s <= b) cands.emplace_back(s, competitor_cdf(g, s));
                };
                add(a);
                if constexpr (std::is_same_v<D, ConstantBid>) {
                    add(std::clamp(d.m, a, b));
                } else {
                    for (const auto& [s, p] : d.atoms) add(s);
                }
                for (const auto& [s, gs] : cands)
                    if (gs > 0.0) bps.push_back(shade * s);  // abstention switch
                for (std::size_t i = 0; i < cands.size(); ++i)
                    for (std::size_t j = i + 1; j < cands.size(); ++j) {
                        const auto& [s1, g1] = cands[i];
                        const auto& [s2, g2] = cands[j];
                        if (g1 != g2)
                            bps.push_back(shade * (s1 * g1 - s2 * g2) / (g1 - g2));
                    }
            }
        },
        g);
    return bps;
}

PeriodDual eval_at_value(double v, const CompetitorModel& g, double mu, double a, double b) {
    const BidChoice bc = best_bid_analytic(v, mu, g, a, b);
    return {bc.objective, expected_consumption(bc.bid, g)};
}

}  // namespace

PeriodDual single_period_dual(const ValueDistribution& f, const CompetitorModel& g, double mu,
                              double a, double b) {
    if (mu < 0.0) throw std::invalid_argument("single_period_dual needs mu >= 0");
    return std::visit(
        [&](const auto& d) -> PeriodDual {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, PointMass>) {
                return eval_at_value(d.v, g, mu, a, b);
            } else if constexpr (std::is_same_v<D, DiscreteDist>) {
                PeriodDual out;
                for (const auto& [v, p] : d.atoms) {
                    const PeriodDual at = eval_at_value(v, g, mu, a, b);
                    out.value += p * at.value;
                    out.consumption += p * at.consumption;
                }
                return out;
            } else {
                if (d.lo == d.hi) return eval_at_value(d.lo, g, mu, a, b);
                std::vector<double> cuts = value_breakpoints(g, mu, a, b);
                cuts.push_back(d.lo);
                cuts.push_back(d.hi);
                std::sort(cuts.begin(), cuts.end());
                cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

                PeriodDual out;
                double prev = d.lo;
                for (double cut : cuts) {
                    const double lo = std::max(prev, d.lo);
                    const double hi = std::min(cut, d.hi);
                    if (hi > lo) {
                        const double mid = 0.5 * (lo + hi);
                        const double half = 0.5 * (hi - lo);
                        for (const auto& [x, w] : gauss_legendre_64()) {
                            const PeriodDual at = eval_at_value(mid + half * x, g, mu, a, b);
                            out.value += w * half * at.value;
                            out.consumption += w * half * at.consumption;
                        }
                    }
                    prev = std::max(prev, cut);
                }
                if (prev < d.hi) {
                    const double mid = 0.5 * (prev + d.hi);
                    const double half = 0.5 * (d.hi - prev);
                    for (const auto& [x, w] : gauss_legendre_64()) {
                        const PeriodDual at = eval_at_value(mid + half * x, g, mu, a, b);
                        out.value += w * half * at.value;
                        out.consumption += w * half * at.consumption;
                    }
                }
                const double density = 1.0 / (d.hi - d.lo);
                out.value *= density;
                out.consumption *= density;
                return out;
            }
        },
        f);
}

double lagrangian_value(const Instance& inst, double mu) {
    if (mu < 0.0) throw std::invalid_argument("lagrangian_value needs mu >= 0");
    double total = mu * inst.params.B;
    for (const auto& f : inst.values)
        total += single_period_dual(f, inst.competitor, mu, inst.params.a, inst.params.b).value;
    return total;
}

namespace {

// Identical per-period distributions are common (stationary and block
// instances); group them so one dual evaluation covers the whole block.
struct ValueGroups {
    std::vector<ValueDistribution> dists;
    std::vector<double> mult;

    explicit ValueGroups(const Instance& inst) {
        for (const auto& f : inst.values) {
            bool found = false;
            for (std::size_t i = 0; i < dists.size(); ++i) {
                if (dists[i] == f) {
                    mult[i] += 1.0;
                    found = true;
                    break;
                }
            }
            if (!found) {
                dists.push_back(f);
                mult.push_back(1.0);
            }
        }
    }
};

}  // namespace

LagrangianSolution solve_mu_star(const Instance& inst) {
    validate(inst);
    const AuctionParams& p = inst.params;
    const ValueGroups groups(inst);

    auto objective = [&](double mu) {
        double total = mu * p.B;
        for (std::size_t i = 0; i < groups.dists.size(); ++i)
            total += groups.mult[i] *
                     single_period_dual(groups.dists[i], inst.competitor, mu, p.a, p.b).value;
        return total;
    };

    double mu = golden_section_min(objective, 0.0, p.dual_bound(), kMuSearchWidth);
    if (objective(0.0) <= objective(mu)) mu = 0.0;  // boundary minimum

    LagrangianSolution sol;
    sol.mu_star = mu;
    sol.v_lr = objective(mu);
    sol.rho.reserve(inst.values.size());
    double spent = 0.0;
    for (const auto& f : inst.values) {
        const double c = single_period_dual(f, inst.competitor, mu, p.a, p.b).consumption;
        sol.rho.push_back(c);
        spent += c;
    }
    sol.slack = p.B - spent;
    return sol;
}

std::vector<double> ideal_allocation(const Instance& inst) { return solve_mu_star(inst).rho; }

// ---------------------------------------------------------------------------
// Exhaustive oracle: ground truth for desk-scale instances.
// ---------------------------------------------------------------------------

namespace {

struct OracleOption {
    double reward = 0.0;  // probability-weighted expected reward
    double cost = 0.0;    // probability-weighted expected consumption
};

struct OracleItem {
    std::vector<OracleOption> options;  // option 0 is always "abstain" (0, 0)
    int period = 0;
};

std::vector<std::pair<double, double>> value_atoms_or_throw(const ValueDistribution& f) {
    if (const auto* pm = std::get_if<PointMass>(&f)) return {{pm->v, 1.0}};
    if (const auto* d = std::get_if<DiscreteDist>(&f)) return d->atoms;
    throw std::invalid_argument("exhaustive oracle supports point-mass/discrete values only");
}

std::vector<OracleItem> build_items(const Instance& inst, const std::vector<double>& grid) {
    const AuctionParams& p = inst.params;
    std::vector<OracleItem> items;
    for (int t = 0; t < p.T; ++t) {
        for (const auto& [v, prob] : value_atoms_or_throw(inst.values[static_cast<std::size_t>(t)])) {
            OracleItem item;
            item.period = t;
            item.options.push_back({0.0, 0.0});
            for (double x : grid) {
                if (x == 0.0) continue;  // same as the abstain option
                const double gx = competitor_cdf(inst.competitor, x);
                item.options.push_back({prob * (v - x) * gx, prob * x * gx});
            }
            items.push_back(std::move(item));
        }
    }
    return items;
}

// Exact optimum of: max sum r, s.t. sum c <= budget, one option (or a mixture)
// per item. Scans the deterministic maps induced by the candidate multipliers;
// at the critical multiplier the leftover budget is closed by moving mass from
// the cheap tied option to the expensive one (at most one item ends up mixed).
double sweep_single_constraint(const std::vector<OracleItem>& items, double budget) {
    if (budget < 0.0) throw std::invalid_argument("oracle budget must be nonnegative");
    std::vector<double> lambdas{0.0};
    double lam_max = 0.0;
    for (const auto& item : items)
        for (std::size_t i = 0; i < item.options.size(); ++i)
            for (std::size_t j = 0; j < item.options.size(); ++j) {
                const OracleOption& lo = item.options[i];
                const OracleOption& hi = item.options[j];
                if (hi.cost > lo.cost) {
                    const double lam = (hi.reward - lo.reward) / (hi.cost - lo.cost);
                    if (lam > 0.0) {
                        lambdas.push_back(lam);
                        lam_max = std::max(lam_max, lam);
                    }
                }
            }
    lambdas.push_back(lam_max + 1.0);  // beyond every breakpoint all items abstain
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

    for (double lam : lambdas) {
        double total_cost = 0.0, total_reward = 0.0, gap_cost = 0.0;
        for (const auto& item : items) {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& o : item.options) best = std::max(best, o.reward - lam * o.cost);
            const double tie = 1e-12 * std::max(1.0, std::abs(best));
            const OracleOption* cheap = nullptr;
            const OracleOption* rich = nullptr;
            for (const auto& o : item.options) {
                if (o.reward - lam * o.cost < best - tie) continue;
                if (!cheap || o.cost < cheap->cost) cheap = &o;
                if (!rich || o.cost > rich->cost) rich = &o;
            }
            total_cost += cheap->cost;
            total_reward += cheap->reward;
            gap_cost += rich->cost - cheap->cost;
        }
        if (total_cost <= budget) {
            const double leftover = std::min(budget - total_cost, gap_cost);
            return total_reward + lam * leftover;
        }
    }
    throw std::logic_error("multiplier sweep failed to cover the budget");
}

// Dense tableau simplex for max c.x s.t. A x <= b, x >= 0 with b >= 0 (slack
// start, Bland's rule). Only used for the two-constraint-family oracle; the
// LPs here have a few dozen rows, so a textbook tableau is plenty.
double simplex_max(std::vector<std::vector<double>> rows, std::vector<double> rhs,
                   const std::vector<double>& obj) {
    const std::size_t m = rows.size();
    const std::size_t n = obj.size();
    std::vector<std::vector<double>> tab(m + 1, std::vector<double>(n + m + 1, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) tab[i][j] = rows[i][j];
        tab[i][n + i] = 1.0;
        tab[i][n + m] = rhs[i];
    }
    for (std::size_t j = 0; j < n; ++j) tab[m][j] = -obj[j];

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    const double eps = 1e-11;
    for (int iter = 0; iter < 100000; ++iter) {
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j)
            if (tab[m][j] < -eps) {
                enter = j;
                break;
            }
        if (enter == n + m) return tab[m][n + m];

        std::size_t leave = m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter] <= eps) continue;
            const double ratio = tab[i][n + m] / tab[i][enter];
            if (ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && (leave == m || basis[i] < basis[leave]))) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave == m) throw std::logic_error("oracle LP unbounded");

        const double piv = tab[leave][enter];
        for (double& x : tab[leave]) x /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double factor = tab[i][enter];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j <= n + m; ++j) tab[i][j] -= factor * tab[leave][j];
        }
        basis[leave] = enter;
    }
    throw std::logic_error("oracle LP did not converge");
}

double simplex_plan_with_global(const std::vector<OracleItem>& items, int T,
                                const std::vector<double>& caps, double budget) {
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    std::vector<double> obj;

    std::size_t n_vars = 0;
    for (const auto& item : items) n_vars += item.options.size() - 1;

    const std::size_t n_rows = items.size() + static_cast<std::size_t>(T) + 1;
    rows.assign(n_rows, std::vector<double>(n_vars, 0.0));
    rhs.assign(n_rows, 0.0);
    obj.assign(n_vars, 0.0);

    std::size_t col = 0;
    for (std::size_t j = 0; j < items.size(); ++j) {
        const OracleItem& item = items[j];
        for (std::size_t o = 1; o < item.options.size(); ++o, ++col) {
            obj[col] = item.options[o].reward;
            rows[j][col] = 1.0;  // item mixture row
            rows[items.size() + static_cast<std::size_t>(item.period)][col] = item.options[o].cost;
            rows[n_rows - 1][col] = item.options[o].cost;
        }
        rhs[j] = 1.0;
    }
    for (int t = 0; t < T; ++t) rhs[items.size() + static_cast<std::size_t>(t)] = caps[static_cast<std::size_t>(t)];
    rhs[n_rows - 1] = budget;
    return simplex_max(std::move(rows), std::move(rhs), obj);
}

}  // namespace

double exhaustive_oracle(const Instance& inst, const std::vector<double>& bid_grid,
                         OracleConstraint kind, const BudgetPlan* plan,
                         const std::vector<double>* eps, double budget_override) {
    validate(inst);
    const AuctionParams& p = inst.params;
    if (p.T > 16) throw std::invalid_argument("exhaustive oracle is limited to T <= 16");
    if (bid_grid.size() > 8) throw std::invalid_argument("exhaustive oracle is limited to 8 grid bids");
    for (double x : bid_grid)
        if (x != 0.0 && !(x >= p.a && x <= p.b))
            throw std::invalid_argument("grid bids must lie in {0} u [a,b]");
    for (const auto& f : inst.values)
        if (value_atoms_or_throw(f).size() > 4)
            throw std::invalid_argument("exhaustive oracle is limited to 4 atoms per period");

    const std::vector<OracleItem> items = build_items(inst, bid_grid);
    const double budget = budget_override >= 0.0 ? budget_override : p.B;

    switch (kind) {
        case OracleConstraint::GlobalExpected:
            return sweep_single_constraint(items, budget);
        case OracleConstraint::PerPeriodPlan: {
            if (!plan || static_cast<int>(plan->rho_hat.size()) != p.T)
                throw std::invalid_argument("per-period oracle needs a plan of length T");
            double total = 0.0;
            for (int t = 0; t < p.T; ++t) {
                std::vector<OracleItem> period_items;
                for (const auto& item : items)
                    if (item.period == t) period_items.push_back(item);
                total += sweep_single_constraint(period_items,
                                                 plan->rho_hat[static_cast<std::size_t>(t)]);
            }
            return total;
        }
        case OracleConstraint::PlanWithGlobal: {
            if (!plan || static_cast<int>(plan->rho_hat.size()) != p.T)
                throw std::invalid_argument("relaxed oracle needs a plan of length T");
            std::vector<double> caps = plan->rho_hat;
            if (eps) {
                if (static_cast<int>(eps->size()) != p.T)
                    throw std::invalid_argument("eps must have length T");
                for (int t = 0; t < p.T; ++t) caps[static_cast<std::size_t>(t)] += (*eps)[static_cast<std::size_t>(t)];
            }
            return simplex_plan_with_global(items, p.T, caps, budget);
        }
    }
    throw std::invalid_argument("unknown oracle constraint kind");
}

// ---------------------------------------------------------------------------
// Plan benchmarks.
// ---------------------------------------------------------------------------

namespace {

struct CappedPeriod {
    double value = 0.0;
    double consumption = 0.0;
};

// Optimum of one period under an expected-spend cap, with rewards already
// shaded by a base multiplier: max E[(v - (1+base) x) G(x)] s.t. E[x G(x)] <=
// cap. Solved through the dual: the cap either is slack at the base multiplier
// or is hit exactly by mixing the two argmax bids at the critical multiplier,
// so the value equals min_nu [nu*cap + L(base+nu)].
CappedPeriod capped_period_value(const ValueDistribution& f, const CompetitorModel& g, double a,
                                 double b, double dual_bound, double cap, double base) {
    const PeriodDual at_base = single_period_dual(f, g, base, a, b);
    if (at_base.consumption <= cap) return {at_base.value, at_base.consumption};
    const double nu = bisect_first_true(
        [&](double x) {
            return single_period_dual(f, g, base + x, a, b).consumption <= cap;
        },
        0.0, dual_bound, kBisectWidth);
    const PeriodDual at_nu = single_period_dual(f, g, base + nu, a, b);
    return {nu * cap + at_nu.value, cap};
}

}  // namespace

double plan_benchmark(const Instance& inst, const BudgetPlan& plan) {
    validate(inst);
    const AuctionParams& p = inst.params;
    if (static_cast<int>(plan.rho_hat.size()) != p.T)
        throw std::invalid_argument("plan length must equal the horizon");
    double total = 0.0;
    for (int t = 0; t < p.T; ++t) {
        const double cap = plan.rho_hat[static_cast<std::size_t>(t)];
        if (cap < 0.0) throw std::invalid_argument("plan entries must be nonnegative");
        total += capped_period_value(inst.values[static_cast<std::size_t>(t)], inst.competitor,
                                     p.a, p.b, p.dual_bound(), cap, 0.0)
                     .value;
    }
    return total;
}

double relaxed_plan_benchmark(const Instance& inst, const BudgetPlan& plan,
                              const std::vector<double>& eps, double B) {
    validate(inst);
    const AuctionParams& p = inst.params;
    if (static_cast<int>(plan.rho_hat.size()) != p.T)
        throw std::invalid_argument("plan length must equal the horizon");
    if (static_cast<int>(eps.size()) != p.T)
        throw std::invalid_argument("eps must have length T");
    if (B < 0.0) throw std::invalid_argument("budget must be nonnegative");
    std::vector<double> caps(static_cast<std::size_t>(p.T));
    for (int t = 0; t < p.T; ++t) {
        if (eps[static_cast<std::size_t>(t)] < 0.0)
            throw std::invalid_argument("eps entries must be nonnegative");
        caps[static_cast<std::size_t>(t)] =
            plan.rho_hat[static_cast<std::size_t>(t)] + eps[static_cast<std::size_t>(t)];
    }

    auto inner = [&](double lam) {
        CappedPeriod total;
        for (int t = 0; t < p.T; ++t) {
            const CappedPeriod ct =
                capped_period_value(inst.values[static_cast<std::size_t>(t)], inst.competitor,
                                    p.a, p.b, p.dual_bound(), caps[static_cast<std::size_t>(t)], lam);
            total.value += ct.value;
            total.consumption += ct.consumption;
        }
        return total;
    };

    const CappedPeriod unshaded = inner(0.0);
    if (unshaded.consumption <= B) return unshaded.value;
    const double lam = bisect_first_true(
        [&](double x) { return inner(x).consumption <= B; }, 0.0, p.dual_bound(), kBisectWidth);
    return lam * B + inner(lam).value;
}

}  // namespace fpa
