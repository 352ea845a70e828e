#include "fpa/nonstationarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpa {

namespace {

constexpr int kUniformAtoms = 256;

void sort_and_merge(std::vector<WeightedAtom>& atoms) {
    std::sort(atoms.begin(), atoms.end(),
              [](const WeightedAtom& x, const WeightedAtom& y) { return x.value < y.value; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (out > 0 && atoms[out - 1].value == atoms[i].value) {
            atoms[out - 1].mass += atoms[i].mass;
        } else {
            atoms[out++] = atoms[i];
        }
    }
    atoms.resize(out);
}

double atomization_bound(const ValueDistribution& f) {
    if (const auto* u = std::get_if<UniformDist>(&f))
        return (u->hi - u->lo) / (2.0 * kUniformAtoms);
    return 0.0;
}

}  // namespace

std::vector<WeightedAtom> to_atoms(const ValueDistribution& f) {
    std::vector<WeightedAtom> atoms;
    std::visit(
        [&](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, PointMass>) {
                atoms.push_back({d.v, 1.0});
            } else if constexpr (std::is_same_v<D, DiscreteDist>) {
                for (const auto& [v, p] : d.atoms)
                    if (p > 0.0) atoms.push_back({v, p});
            } else {
                if (d.lo == d.hi) {
                    atoms.push_back({d.lo, 1.0});
                } else {
                    const double mass = 1.0 / kUniformAtoms;
                    for (int i = 0; i < kUniformAtoms; ++i)
                        atoms.push_back({d.lo + (d.hi - d.lo) * (i + 0.5) / kUniformAtoms, mass});
                }
            }
        },
        f);
    sort_and_merge(atoms);
    return atoms;
}

double wasserstein_atoms(std::vector<WeightedAtom> f1, std::vector<WeightedAtom> f2) {
    sort_and_merge(f1);
    sort_and_merge(f2);
    // Quantile coupling: walk both lists in value order, matching mass greedily.
    double cost = 0.0;
    std::size_t i = 0, j = 0;
    double rem1 = f1.empty() ? 0.0 : f1[0].mass;
    double rem2 = f2.empty() ? 0.0 : f2[0].mass;
    while (i < f1.size() && j < f2.size()) {
        const double moved = std::min(rem1, rem2);
        cost += moved * std::abs(f1[i].value - f2[j].value);
        rem1 -= moved;
        rem2 -= moved;
        if (rem1 <= 0.0) {
            ++i;
            if (i < f1.size()) rem1 = f1[i].mass;
        }
        if (rem2 <= 0.0) {
            ++j;
            if (j < f2.size()) rem2 = f2[j].mass;
        }
    }
    return cost;
}

WassersteinResult wasserstein(const ValueDistribution& f1, const ValueDistribution& f2) {
    WassersteinResult out;
    out.value = wasserstein_atoms(to_atoms(f1), to_atoms(f2));
    out.atomization_bound = atomization_bound(f1) + atomization_bound(f2);
    return out;
}

DeviationReport w_report(const Instance& inst) {
    validate(inst);
    const double T = static_cast<double>(inst.values.size());

    std::vector<WeightedAtom> mixture;
    std::vector<std::vector<WeightedAtom>> per_dist;
    per_dist.reserve(inst.values.size());
    for (const auto& f : inst.values) {
        per_dist.push_back(to_atoms(f));
        for (const WeightedAtom& at : per_dist.back()) mixture.push_back({at.value, at.mass / T});
    }
    sort_and_merge(mixture);

    DeviationReport report;
    report.per_period.reserve(per_dist.size());
    for (auto& atoms : per_dist) {
        const double d = wasserstein_atoms(std::move(atoms), mixture);
        report.per_period.push_back(d);
        report.w_total += d;
    }
    return report;
}

double v_total(const std::vector<double>& rho, const BudgetPlan& plan) {
    if (rho.size() != plan.rho_hat.size())
        throw std::invalid_argument("allocation and plan must have equal length");
    double total = 0.0;
    for (std::size_t t = 0; t < rho.size(); ++t) total += std::abs(rho[t] - plan.rho_hat[t]);
    return total;
}

}  // namespace fpa
