#include "blockising/weight_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blockising/errors.hpp"

namespace blockising {

MagnetizationWeightTable::MagnetizationWeightTable(const ModelParams& params,
                                                   int max_n_budget)
    : params_(params), half_(static_cast<unsigned>(params.block_size())) {
    if (params.n_sites() > max_n_budget) {
        throw ResourceError("weight table: N exceeds the configured budget");
    }
    const std::size_t side = half_ + 1u;

    // log k! for k = 0..N/2 via lgamma, then log C(N/2, k).
    std::vector<double> logfact(side);
    for (std::size_t k = 0; k < side; ++k) {
        logfact[k] = std::lgamma(static_cast<double>(k) + 1.0);
    }
    std::vector<double> logchoose(side);
    for (std::size_t k = 0; k < side; ++k) {
        logchoose[k] = logfact[half_] - logfact[k] - logfact[half_ - k];
    }

    log_w_.resize(side * side);
    double max_lw = -std::numeric_limits<double>::infinity();
    for (unsigned k1 = 0; k1 < side; ++k1) {
        const double m1 = magnetization_of(static_cast<int>(k1));
        for (unsigned k2 = 0; k2 < side; ++k2) {
            const double m2 = magnetization_of(static_cast<int>(k2));
            const double h = hamiltonian_magnetization(params_, {m1, m2});
            const double lw = logchoose[k1] + logchoose[k2] - h;
            log_w_[k1 * side + k2] = lw;
            max_lw = std::max(max_lw, lw);
        }
    }

    // Max-shifted log-sum-exp of the grid.
    KahanSum acc;
    for (const double lw : log_w_) acc.add(std::exp(lw - max_lw));
    log_norm_ = max_lw + std::log(acc.value());
}

double MagnetizationWeightTable::prob(int k1, int k2) const {
    return std::exp(log_weight(k1, k2) - log_norm_);
}

std::vector<double> MagnetizationWeightTable::sum_marginal() const {
    std::vector<KahanSum> acc(static_cast<std::size_t>(params_.n_sites()) + 1u);
    for (int k1 = 0; k1 <= static_cast<int>(half_); ++k1) {
        for (int k2 = 0; k2 <= static_cast<int>(half_); ++k2) {
            acc[static_cast<std::size_t>(k1 + k2)].add(prob(k1, k2));
        }
    }
    std::vector<double> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = acc[i].value();
    return out;
}

std::vector<double> MagnetizationWeightTable::diff_marginal() const {
    std::vector<KahanSum> acc(static_cast<std::size_t>(params_.n_sites()) + 1u);
    for (int k1 = 0; k1 <= static_cast<int>(half_); ++k1) {
        for (int k2 = 0; k2 <= static_cast<int>(half_); ++k2) {
            acc[static_cast<std::size_t>(k1 - k2 + static_cast<int>(half_))].add(prob(k1, k2));
        }
    }
    std::vector<double> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = acc[i].value();
    return out;
}

double MagnetizationWeightTable::total_probability() const {
    KahanSum acc;
    for (const double lw : log_w_) acc.add(std::exp(lw - log_norm_));
    return acc.value();
}

std::pair<double, double> exact_correlations(const MagnetizationWeightTable& table) {
    const int n = table.n_sites();
    if (n < 4) throw std::invalid_argument("exact_correlations: N >= 4 required");
    const double half = n / 2.0;
    const double e_b1_sq = table.expectation([n](double m1, double) {
        const double b1 = n * m1 / 2.0;
        return b1 * b1;
    });
    const double z = (e_b1_sq - half) / (half * (half - 1.0));
    const double zprime = table.expectation([](double m1, double m2) { return m1 * m2; });
    return {z, zprime};
}

MagnetizationWeightTable build_weight_table(const ModelParams& params, int max_n_budget) {
    return MagnetizationWeightTable(params, max_n_budget);
}

} // namespace blockising
