#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fpa/optimizer.hpp"
#include "fpa/rng.hpp"

using namespace fpa;

namespace {

double grid_max(double v, double mu, const EmpiricalCdf& cdf, double a, double b, int points) {
    double best = 0.0;  // abstention
    for (int k = 0; k <= points; ++k) {
        const double x = a + (b - a) * k / points;
        best = std::max(best, (v - (1.0 + mu) * x) * cdf.query(x));
    }
    return best;
}

double grid_max_analytic(double v, double mu, const CompetitorModel& g, double a, double b,
                         int points) {
    double best = 0.0;
    for (int k = 0; k <= points; ++k) {
        const double x = a + (b - a) * k / points;
        best = std::max(best, (v - (1.0 + mu) * x) * competitor_cdf(g, x));
    }
    return best;
}

}  // namespace

TEST_CASE("empty CDF: linear objective, left endpoint") {
    EmpiricalCdf cdf(1.0, 2.0);
    const BidChoice bc = best_bid_step(2.0, 0.0, cdf, 1.0, 2.0);
    CHECK(bc.bid == 1.0);
    CHECK(bc.objective == 1.0);
}

TEST_CASE("step CDF candidates") {
    EmpiricalCdf cdf(1.0, 2.0);
    cdf.insert(1.2);
    cdf.insert(1.5);
    // candidates: a=1 (obj 0), 1.2 (0.8*0.5=0.4), 1.5 (0.5*1=0.5)
    const BidChoice bc = best_bid_step(2.0, 0.0, cdf, 1.0, 2.0);
    CHECK(bc.bid == 1.5);
    CHECK(bc.objective == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("large multipliers force abstention") {
    EmpiricalCdf cdf(1.0, 2.0);
    SplitMix64 rng(7);
    for (int i = 0; i < 20; ++i) cdf.insert(rng.next_in(1.0, 2.0));
    for (double mu : {2.0, 2.5, 4.0}) {  // b/a = 2
        for (int k = 0; k <= 50; ++k) {
            const double v = 1.0 + k / 50.0;
            const BidChoice bc = best_bid_step(v, mu, cdf, 1.0, 2.0);
            CHECK(bc.bid == 0.0);
            CHECK(bc.objective == 0.0);
        }
    }
}

TEST_CASE("analytic uniform competitor") {
    const CompetitorModel g = UniformDist{1.0, 2.0};
    const BidChoice unshaded = best_bid_analytic(2.0, 0.0, g, 1.0, 2.0);
    CHECK(unshaded.bid == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(unshaded.objective == doctest::Approx(0.25).epsilon(1e-15));

    // mu = 1 pushes the vertex to the boundary where the objective vanishes;
    // the tie against abstention resolves to bid 0.
    const BidChoice shaded = best_bid_analytic(2.0, 1.0, g, 1.0, 2.0);
    CHECK(shaded.bid == 0.0);
    CHECK(shaded.objective == 0.0);
    CHECK(grid_max_analytic(2.0, 1.0, g, 1.0, 2.0, 10000) <= 1e-8);
}

TEST_CASE("analytic constant competitor") {
    const CompetitorModel g = ConstantBid{0.5};
    const BidChoice bc = best_bid_analytic(0.75, 0.0, g, 1e-9, 1.0);
    CHECK(bc.bid == 0.5);
    CHECK(bc.objective == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("expected consumption") {
    CHECK(expected_consumption(1.5, CompetitorModel{UniformDist{1.0, 2.0}}) ==
          doctest::Approx(0.75).epsilon(1e-15));
    CHECK(expected_consumption(0.0, CompetitorModel{UniformDist{1.0, 2.0}}) == 0.0);
    CHECK(expected_consumption(0.5, CompetitorModel{ConstantBid{0.5}}) == 0.5);
    EmpiricalCdf cdf(1.0, 2.0);
    cdf.insert(1.2);
    cdf.insert(1.8);
    CHECK(expected_consumption(1.5, cdf) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("step optimizer dominates a fine grid") {
    SplitMix64 rng(99);
    for (int rep = 0; rep < 200; ++rep) {
        EmpiricalCdf cdf(1.0, 2.0);
        const int n = static_cast<int>(rng.next() % 40);
        for (int i = 0; i < n; ++i) cdf.insert(rng.next_in(1.0, 2.0));
        const double v = rng.next_in(1.0, 2.0);
        const double mu = rng.next_in(0.0, 2.5);
        const BidChoice bc = best_bid_step(v, mu, cdf, 1.0, 2.0);
        CHECK(bc.objective >= grid_max(v, mu, cdf, 1.0, 2.0, 2000) - 1e-12);
        CHECK(bc.objective >= 0.0);
    }
}

TEST_CASE("analytic optimizer dominates a fine grid") {
    SplitMix64 rng(100);
    for (int rep = 0; rep < 200; ++rep) {
        CompetitorModel g;
        switch (rng.next() % 3) {
            case 0: {
                double lo = rng.next_in(1.0, 1.9);
                g = UniformDist{lo, rng.next_in(lo, 2.0)};
                break;
            }
            case 1: {
                const double s1 = rng.next_in(1.0, 2.0);
                const double s2 = rng.next_in(1.0, 2.0);
                const double p = rng.next_in(0.1, 0.9);
                g = DiscreteDist{{{s1, p}, {s2, 1.0 - p}}};
                break;
            }
            default:
                g = ConstantBid{rng.next_in(1.0, 2.0)};
        }
        const double v = rng.next_in(1.0, 2.0);
        const double mu = rng.next_in(0.0, 2.5);
        const BidChoice bc = best_bid_analytic(v, mu, g, 1.0, 2.0);
        // the grid undershoots the exact maximizer by at most its spacing
        CHECK(bc.objective >= grid_max_analytic(v, mu, g, 1.0, 2.0, 4000) -
                                  (1.0 + mu) * (1.0 / 4000.0));
        CHECK(bc.objective >= 0.0);
    }
}

TEST_CASE("step and analytic optimizers agree on empirical atoms") {
    SplitMix64 rng(321);
    for (int rep = 0; rep < 100; ++rep) {
        EmpiricalCdf cdf(1.0, 2.0);
        const int n = 1 + static_cast<int>(rng.next() % 8);
        std::vector<double> samples;
        for (int i = 0; i < n; ++i) {
            samples.push_back(rng.next_in(1.0, 2.0));
            cdf.insert(samples.back());
        }
        DiscreteDist mirror;
        for (double s : samples) mirror.atoms.emplace_back(s, 1.0 / n);
        const double v = rng.next_in(1.0, 2.0);
        const double mu = rng.next_in(0.0, 1.5);
        const BidChoice step = best_bid_step(v, mu, cdf, 1.0, 2.0);
        const BidChoice analytic = best_bid_analytic(v, mu, CompetitorModel{mirror}, 1.0, 2.0);
        CHECK(step.bid == doctest::Approx(analytic.bid).epsilon(1e-12));
        CHECK(step.objective == doctest::Approx(analytic.objective).epsilon(1e-12));
    }
}

TEST_CASE("objective is nonincreasing in the multiplier") {
    SplitMix64 rng(555);
    for (int rep = 0; rep < 100; ++rep) {
        EmpiricalCdf cdf(1.0, 2.0);
        const int n = static_cast<int>(rng.next() % 30);
        for (int i = 0; i < n; ++i) cdf.insert(rng.next_in(1.0, 2.0));
        const double v = rng.next_in(1.0, 2.0);
        double mu1 = rng.next_in(0.0, 3.0);
        double mu2 = rng.next_in(0.0, 3.0);
        if (mu1 > mu2) std::swap(mu1, mu2);
        CHECK(best_bid_step(v, mu2, cdf, 1.0, 2.0).objective <=
              best_bid_step(v, mu1, cdf, 1.0, 2.0).objective + 1e-12);
    }
}
