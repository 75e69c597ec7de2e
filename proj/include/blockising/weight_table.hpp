#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "blockising/model.hpp"

namespace blockising {

// Compensated (Neumaier) accumulator. Grid sums here run over up to ~1e8
// terms; naive summation would not hold the 1e-12 normalization contract.
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Exact log-weights of the block-magnetization pair (m1, m2) under the Gibbs
// measure, on the (N/2+1) x (N/2+1) grid indexed by the counts (k1, k2) of
// +1 spins per block:
//
//   log_w(k1,k2) = log C(N/2,k1) + log C(N/2,k2) - H(m1,m2),  m_i = (4 k_i - N)/N
//
// log_norm is the log-sum-exp of the grid, i.e. log Z. Weights are kept in
// the log domain throughout: at critical parameters the raw weights span
// hundreds of e-folds for large N. Immutable after construction and safe to
// share across threads.
class MagnetizationWeightTable {
public:
    // O(N^2) time and space. Throws ResourceError for N above the budget
    // (default 20000).
    explicit MagnetizationWeightTable(const ModelParams& params,
                                      int max_n_budget = 20000);

    const ModelParams& params() const { return params_; }
    int n_sites() const { return params_.n_sites(); }
    int block_size() const { return half_; }

    double log_weight(int k1, int k2) const {
        return log_w_[static_cast<std::size_t>(k1) * (half_ + 1u) + static_cast<std::size_t>(k2)];
    }
    double prob(int k1, int k2) const;
    double log_norm() const { return log_norm_; }

    double magnetization_of(int k) const {
        return (4.0 * k - params_.n_sites()) / params_.n_sites();
    }

    // E[f(m1, m2)], computed exactly by compensated summation over the grid.
    template <typename F>
    double expectation(F&& f) const {
        KahanSum acc;
        for (int k1 = 0; k1 <= half_; ++k1) {
            for (int k2 = 0; k2 <= half_; ++k2) {
                acc.add(prob(k1, k2) * f(magnetization_of(k1), magnetization_of(k2)));
            }
        }
        return acc.value();
    }

    // Marginal law of s = k1 + k2 (sum channel, s in 0..N); w1 = (2s - N)/N.
    std::vector<double> sum_marginal() const;
    // Marginal law of d = k1 - k2 shifted to d + N/2 in 0..N; w2 = 2(d)/N.
    std::vector<double> diff_marginal() const;

    // Total probability mass (should be 1 up to accumulation error).
    double total_probability() const;

private:
    ModelParams params_;
    unsigned half_;
    std::vector<double> log_w_;
    double log_norm_ = 0.0;
};

// Exact pair correlations from the table:
//   Z  = E(sigma_i sigma_j), i != j in the same block
//      = (E[(N m1 / 2)^2] - N/2) / ((N/2)(N/2 - 1))
//   Z' = E(sigma_i sigma_j), i, j in different blocks = E[m1 m2]
std::pair<double, double> exact_correlations(const MagnetizationWeightTable& table);

MagnetizationWeightTable build_weight_table(const ModelParams& params,
                                            int max_n_budget = 20000);

} // namespace blockising
