#include "fpa/policy.hpp"

#include <algorithm>
#include <stdexcept>

#include "fpa/optimizer.hpp"

namespace fpa {

DualBidder::DualBidder(const AuctionParams& params, BudgetPlan plan, double eta, double mu1)
    : params_(params),
      plan_(std::move(plan)),
      eta_(eta),
      mu_(mu1),
      budget_(params.B),
      cdf_(params.a, params.b) {
    validate(params_);
    if (static_cast<int>(plan_.rho_hat.size()) != params_.T)
        throw std::invalid_argument("plan length must equal the horizon");
    if (!(eta > 0.0 && eta <= 1.0))
        throw std::invalid_argument("step size eta must lie in (0, 1]");
    if (!(mu1 >= 0.0 && mu1 <= params_.dual_bound()))
        throw std::invalid_argument("initial dual variable must lie in [0, b/a + b]");
}

double DualBidder::bid(double v) {
    if (has_pending_) throw std::logic_error("bid() called twice without observe()");
    const BidChoice target = best_bid_step(v, mu_, cdf_, params_.a, params_.b);
    const double x = target.bid <= budget_ ? target.bid : 0.0;
    pending_v_ = v;
    pending_bid_ = x;
    has_pending_ = true;
    return x;
}

StepRecord DualBidder::observe(double x_bid, double m) {
    if (!has_pending_ || x_bid != pending_bid_)
        throw std::logic_error("observe() must settle the bid of the current period");
    has_pending_ = false;

    StepRecord rec;
    rec.t = t_;
    rec.v = pending_v_;
    rec.m = m;
    rec.bid = x_bid;
    rec.won = x_bid >= m;
    rec.payment = rec.won ? x_bid : 0.0;
    rec.reward = rec.won ? pending_v_ - x_bid : 0.0;
    rec.gradient = plan_.rho_hat[static_cast<std::size_t>(t_ - 1)] - rec.payment;

    mu_ = std::max(0.0, mu_ - eta_ * rec.gradient);
    budget_ -= rec.payment;
    cdf_.insert(m);
    ++t_;

    rec.mu_after = mu_;
    rec.budget_after = budget_;
    return rec;
}

AlternateRun run_alternate(const AuctionParams& params, const BudgetPlan& plan, double eta,
                           double mu1, const std::vector<ArrivalSample>& arrivals) {
    validate(params);
    if (static_cast<int>(plan.rho_hat.size()) != params.T)
        throw std::invalid_argument("plan length must equal the horizon");
    if (!(eta > 0.0 && eta <= 1.0))
        throw std::invalid_argument("step size eta must lie in (0, 1]");
    if (!(mu1 >= 0.0 && mu1 <= params.dual_bound()))
        throw std::invalid_argument("initial dual variable must lie in [0, b/a + b]");
    if (static_cast<int>(arrivals.size()) != params.T)
        throw std::invalid_argument("arrivals length must equal the horizon");

    AlternateRun run;
    run.steps.reserve(arrivals.size());
    EmpiricalCdf cdf(params.a, params.b);
    double mu = mu1;
    double budget = params.B;  // may go negative here
    for (int t = 1; t <= params.T; ++t) {
        const ArrivalSample& ar = arrivals[static_cast<std::size_t>(t - 1)];
        AlternateStep st;
        st.t = t;
        st.v = ar.v;
        st.m = ar.m;
        st.budget_before = budget;
        st.bid = best_bid_step(ar.v, mu, cdf, params.a, params.b).bid;
        st.won = st.bid >= ar.m;
        st.payment = st.won ? st.bid : 0.0;
        st.penalized = st.won && st.payment > budget;
        st.net_reward = st.won ? (ar.v - st.bid) - (st.penalized ? params.b : 0.0) : 0.0;

        const double g = plan.rho_hat[static_cast<std::size_t>(t - 1)] - st.payment;
        mu = std::max(0.0, mu - eta * g);
        budget -= st.payment;
        cdf.insert(ar.m);

        st.mu_after = mu;
        run.penalized_total += st.net_reward;
        run.total_spend += st.payment;
        run.steps.push_back(st);
    }
    return run;
}

}  // namespace fpa
