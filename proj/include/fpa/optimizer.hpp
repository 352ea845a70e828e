#pragma once

#include "fpa/ecdf.hpp"
#include "fpa/model.hpp"

namespace fpa {

// Outcome of a single-period bid selection. The decision space is {0} u [a,b]:
// bid 0 models abstention (zero reward, zero consumption), so the objective is
// never negative.
struct BidChoice {
    double bid = 0.0;
    double objective = 0.0;  // (v - (1+mu)*bid) * G(bid), with bid 0 mapped to 0
};

// CDF of the highest competitor bid under an analytic model.
double competitor_cdf(const CompetitorModel& g, double x);

// Maximizes (v - (1+mu)x) * G_hat(x) over {0} u [a,b] for a step CDF. The
// objective falls on every constant piece of G_hat, so it is enough to scan
// {a} and the jump points; ties break toward the smallest bid (abstention
// included).
BidChoice best_bid_step(double v, double mu, const EmpiricalCdf& cdf, double a, double b);

// Same problem against an analytic competitor model. Uniform competitors are
// solved by clipping the quadratic vertex (v/(1+mu) + lo)/2; discrete and
// constant models reduce to candidate enumeration.
BidChoice best_bid_analytic(double v, double mu, const CompetitorModel& g, double a, double b);

// Expected spend x * G(x) of a bid; 0 for abstention.
double expected_consumption(double bid, const CompetitorModel& g);
double expected_consumption(double bid, const EmpiricalCdf& cdf);

}  // namespace fpa
