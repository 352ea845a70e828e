#pragma once

#include <vector>

#include "fpa/ecdf.hpp"
#include "fpa/model.hpp"

namespace fpa {

// One period of a bidder trajectory.
struct StepRecord {
    int t = 0;  // 1-based period index
    double v = 0.0;
    double m = 0.0;
    double bid = 0.0;
    bool won = false;
    double payment = 0.0;   // bid * 1[bid >= m]
    double reward = 0.0;    // (v - bid) * 1[bid >= m]
    double gradient = 0.0;  // rho_hat_t - payment
    double mu_after = 0.0;
    double budget_after = 0.0;
};

// Dual-gradient-descent bidder: shades bids by (1 + mu_t) against the learned
// competitor CDF, bids the target when it fits in the remaining budget and 0
// otherwise, then takes a projected subgradient step on mu.
//
// One instance per episode, mutated single-threaded; run episodes in parallel
// with independent bidders.
class DualBidder {
public:
    // Requires 0 <= mu1 <= b/a + b and 0 < eta <= 1: outside that range the
    // uniform bound on the dual variable is void.
    DualBidder(const AuctionParams& params, BudgetPlan plan, double eta, double mu1);

    // Target bid for value v, gated by the remaining budget.
    double bid(double v);

    // Reveals the highest competitor bid, settles the period and advances the
    // state. `x_bid` must be the value returned by the preceding bid() call.
    StepRecord observe(double x_bid, double m);

    double mu() const { return mu_; }
    double budget_left() const { return budget_; }
    int period() const { return t_; }
    double eta() const { return eta_; }
    const EmpiricalCdf& cdf() const { return cdf_; }
    const AuctionParams& params() const { return params_; }

private:
    AuctionParams params_;
    BudgetPlan plan_;
    double eta_;
    double mu_;
    double budget_;
    int t_ = 1;
    EmpiricalCdf cdf_;
    double pending_v_ = 0.0;
    double pending_bid_ = 0.0;
    bool has_pending_ = false;
};

struct AlternateStep {
    int t = 0;
    double v = 0.0;
    double m = 0.0;
    double bid = 0.0;
    bool won = false;
    double payment = 0.0;
    bool penalized = false;   // won while the payment exceeded the remaining budget
    double net_reward = 0.0;  // reward minus the penalty b when it applies
    double mu_after = 0.0;
    double budget_before = 0.0;  // remaining budget before this period's payment
};

struct AlternateRun {
    std::vector<AlternateStep> steps;
    double penalized_total = 0.0;
    double total_spend = 0.0;
};

// Runs the same dual update with no budget gate: the bidder always places the
// target bid, the budget may go negative, and every win whose payment exceeds
// the pre-payment remaining budget costs an extra penalty b. On any arrival
// sequence the penalized total is a lower bound on the gated bidder's total.
AlternateRun run_alternate(const AuctionParams& params, const BudgetPlan& plan, double eta,
                           double mu1, const std::vector<ArrivalSample>& arrivals);

}  // namespace fpa
