#include "blockising/model.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "blockising/rng.hpp"

namespace blockising {

ModelParams::ModelParams(int n_sites, double alpha, double beta)
    : n_(n_sites), alpha_(alpha), beta_(beta) {
    if (n_sites < 4 || n_sites % 2 != 0) {
        throw std::invalid_argument("ModelParams: N must be even and >= 4");
    }
    if (!(beta > 0.0)) {
        throw std::invalid_argument("ModelParams: beta must be positive");
    }
    if (!(std::abs(alpha) <= beta) || !(alpha < beta)) {
        throw std::invalid_argument(
            "ModelParams: need |alpha| <= beta and alpha < beta");
    }
}

Partition::Partition(std::vector<std::int8_t> membership) : r_(std::move(membership)) {
    if (r_.size() < 4 || r_.size() % 2 != 0) {
        throw std::invalid_argument("Partition: N must be even and >= 4");
    }
    long sum = 0;
    for (const std::int8_t v : r_) {
        if (v != 1 && v != -1) {
            throw std::invalid_argument("Partition: entries must be +1 or -1");
        }
        sum += v;
    }
    if (sum != 0) {
        throw std::invalid_argument("Partition: blocks must have equal size");
    }
}

Partition Partition::first_half(int n_sites) {
    std::vector<std::int8_t> r(static_cast<std::size_t>(n_sites), -1);
    for (int i = 0; i < n_sites / 2; ++i) r[static_cast<std::size_t>(i)] = 1;
    return Partition(std::move(r));
}

Partition Partition::random(int n_sites, Rng& rng) {
    std::vector<int> idx(static_cast<std::size_t>(n_sites));
    std::iota(idx.begin(), idx.end(), 0);
    partial_shuffle(idx, static_cast<std::size_t>(n_sites / 2), rng);
    std::vector<std::int8_t> r(static_cast<std::size_t>(n_sites), -1);
    for (int i = 0; i < n_sites / 2; ++i) r[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = 1;
    return Partition(std::move(r));
}

std::vector<int> Partition::block_indices(int sign) const {
    std::vector<int> out;
    out.reserve(r_.size() / 2);
    for (int i = 0; i < size(); ++i) {
        if (r_[static_cast<std::size_t>(i)] == sign) out.push_back(i);
    }
    return out;
}

BlockMagnetization block_magnetizations(std::span<const std::int8_t> sigma,
                                        const Partition& part) {
    if (static_cast<int>(sigma.size()) != part.size()) {
        throw std::invalid_argument("block_magnetizations: length mismatch");
    }
    long s1 = 0;
    long s2 = 0;
    for (int i = 0; i < part.size(); ++i) {
        (part[i] == 1 ? s1 : s2) += sigma[static_cast<std::size_t>(i)];
    }
    const double scale = 2.0 / part.size();
    return {scale * static_cast<double>(s1), scale * static_cast<double>(s2)};
}

double hamiltonian_pairs(const ModelParams& params, const Partition& part,
                         std::span<const std::int8_t> sigma) {
    const int n = params.n_sites();
    if (static_cast<int>(sigma.size()) != n || part.size() != n) {
        throw std::invalid_argument("hamiltonian_pairs: length mismatch");
    }
    // Literal double loop over all ordered pairs (i, j), i = j included.
    long same = 0;
    long cross = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const long prod = sigma[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(j)];
            if (part[i] == part[j]) {
                same += prod;
            } else {
                cross += prod;
            }
        }
    }
    const double inv = 1.0 / (2.0 * n);
    return -params.beta() * inv * static_cast<double>(same) -
           params.alpha() * inv * static_cast<double>(cross);
}

double hamiltonian_magnetization(const ModelParams& params, BlockMagnetization m) {
    const double n = params.n_sites();
    return -(n / 2.0) * (params.alpha() * m.m1 * m.m2 / 2.0 +
                         params.beta() * m.m1 * m.m1 / 4.0 +
                         params.beta() * m.m2 * m.m2 / 4.0);
}

std::vector<double> coupling_matrix(const ModelParams& params, const Partition& part) {
    const int n = params.n_sites();
    if (part.size() != n) {
        throw std::invalid_argument("coupling_matrix: partition size mismatch");
    }
    const double within = params.beta() / n;
    const double across = params.alpha() / n;
    std::vector<double> q(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            q[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] =
                (part[i] == part[j]) ? within : across;
        }
    }
    return q;
}

double solve_mplus(double beta_eff) {
    if (beta_eff < 0.0) {
        throw std::invalid_argument("solve_mplus: beta_eff must be nonnegative");
    }
    if (beta_eff <= 1.0) return 0.0;
    // f(z) = z - tanh(beta z) is negative just above 0 and positive at 1,
    // so the largest root lies in the bracket.
    double lo = 1e-15;
    double hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (mid - std::tanh(beta_eff * mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

RegimeLabel classify_regime(double alpha, double beta) {
    const double excess = std::abs(alpha) + beta - 2.0;
    if (std::abs(excess) <= kCriticalLineTol) {
        if (alpha > 0.0) return RegimeLabel::CriticalPositiveAlpha;
        if (alpha < 0.0) return RegimeLabel::CriticalNegativeAlpha;
        return RegimeLabel::CriticalZeroAlpha;
    }
    if (excess < 0.0) return RegimeLabel::Subcritical;
    if (alpha > 0.0) return RegimeLabel::SupercriticalPositiveAlpha;
    if (alpha < 0.0) return RegimeLabel::SupercriticalNegativeAlpha;
    return RegimeLabel::SupercriticalZeroAlpha;
}

std::vector<std::pair<BlockMagnetization, double>> limit_support_points(double alpha,
                                                                        double beta) {
    switch (classify_regime(alpha, beta)) {
        case RegimeLabel::Subcritical:
        case RegimeLabel::CriticalPositiveAlpha:
        case RegimeLabel::CriticalNegativeAlpha:
        case RegimeLabel::CriticalZeroAlpha:
            return {{{0.0, 0.0}, 1.0}};
        case RegimeLabel::SupercriticalZeroAlpha: {
            const double m = solve_mplus(beta / 2.0);
            return {{{m, m}, 0.25}, {{m, -m}, 0.25}, {{-m, m}, 0.25}, {{-m, -m}, 0.25}};
        }
        case RegimeLabel::SupercriticalPositiveAlpha: {
            const double m = solve_mplus((alpha + beta) / 2.0);
            return {{{m, m}, 0.5}, {{-m, -m}, 0.5}};
        }
        case RegimeLabel::SupercriticalNegativeAlpha: {
            const double m = solve_mplus((beta - alpha) / 2.0);
            return {{{m, -m}, 0.5}, {{-m, m}, 0.5}};
        }
    }
    return {};
}

} // namespace blockising
