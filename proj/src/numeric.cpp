#include "fpa/numeric.hpp"

namespace fpa {

namespace {

std::array<std::pair<double, double>, 64> compute_gl64() {
    constexpr int n = 64;
    std::array<std::pair<double, double>, 64> out{};
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence for P_n(x) and its derivative.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[static_cast<std::size_t>(i)] = {-x, w};
        out[static_cast<std::size_t>(n - 1 - i)] = {x, w};
    }
    return out;
}

}  // namespace

const std::array<std::pair<double, double>, 64>& gauss_legendre_64() {
    static const auto table = compute_gl64();
    return table;
}

}  // namespace fpa
