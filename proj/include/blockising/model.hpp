#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace blockising {

class Rng;

// Spins and block memberships are stored as +1/-1 in int8.
using SpinConfig = std::vector<std::int8_t>;

// Two-block spin Ising model on N sites: coupling beta within each block of
// size N/2, alpha across blocks. Valid parameters satisfy
//   N >= 4 even,  beta > 0,  |alpha| <= beta,  alpha < beta.
// alpha = beta is rejected at construction: the interaction then does not
// distinguish blocks and the partition is unidentifiable.
class ModelParams {
public:
    ModelParams(int n_sites, double alpha, double beta);

    int n_sites() const { return n_; }
    int block_size() const { return n_ / 2; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

private:
    int n_;
    double alpha_;
    double beta_;
};

// Balanced +/-1 membership vector: r_i = +1 iff site i is in S, with
// |S| = N/2. Two partitions are equivalent iff equal or globally negated.
class Partition {
public:
    explicit Partition(std::vector<std::int8_t> membership);

    // Sites 0..N/2-1 in S, the rest in S^c.
    static Partition first_half(int n_sites);
    // Uniformly random balanced partition.
    static Partition random(int n_sites, Rng& rng);

    int size() const { return static_cast<int>(r_.size()); }
    std::int8_t operator[](int i) const { return r_[i]; }
    const std::vector<std::int8_t>& membership() const { return r_; }

    std::vector<int> block_indices(int sign) const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<std::int8_t> r_;
};

struct BlockMagnetization {
    double m1 = 0.0; // (2/N) * sum of spins in S
    double m2 = 0.0; // (2/N) * sum of spins in S^c
};

// Phase of (alpha, beta) per the limit law of the block magnetization pair:
// concentration at (0,0) iff beta + |alpha| <= 2, symmetry breaking beyond,
// with the critical boundary |alpha| + beta = 2 split by the sign of alpha.
enum class RegimeLabel {
    Subcritical,
    SupercriticalZeroAlpha,
    SupercriticalPositiveAlpha,
    SupercriticalNegativeAlpha,
    CriticalPositiveAlpha,
    CriticalNegativeAlpha,
    CriticalZeroAlpha,
};

// Tolerance on |alpha| + beta - 2 for critical-line detection. Callers doing
// critical experiments should construct parameters as (alpha, 2 - |alpha|).
inline constexpr double kCriticalLineTol = 1e-12;

// m1 = (2/N) sum_{i in S} sigma_i, m2 likewise over S^c.
BlockMagnetization block_magnetizations(std::span<const std::int8_t> sigma,
                                        const Partition& part);

// Pair-sum Hamiltonian
//   H = -beta/(2N) sum_{i~j} sigma_i sigma_j - alpha/(2N) sum_{i!~j} sigma_i sigma_j
// where the sums run over all ordered pairs including i = j; the diagonal
// contributes the configuration-independent constant -beta/2, which makes
// this form agree exactly with hamiltonian_magnetization.
double hamiltonian_pairs(const ModelParams& params, const Partition& part,
                         std::span<const std::int8_t> sigma);

// Order-parameter form H = -(N/2)(alpha m1 m2 / 2 + beta m1^2/4 + beta m2^2/4).
double hamiltonian_magnetization(const ModelParams& params, BlockMagnetization m);

// N x N coupling matrix Q with Q_ij = beta/N if r_i = r_j (diagonal
// included) and alpha/N otherwise, so that H(sigma) = -1/2 Tr(sigma sigma^T Q).
// Row-major N*N buffer.
std::vector<double> coupling_matrix(const ModelParams& params, const Partition& part);

// Largest nonnegative root of z = tanh(beta_eff * z), to 1e-12 absolute;
// zero iff beta_eff <= 1. Bisection on [1e-15, 1], robust as beta_eff -> 1+.
double solve_mplus(double beta_eff);

RegimeLabel classify_regime(double alpha, double beta);

// Support of the weak limit of the block-magnetization law, with weights:
//   beta + |alpha| <= 2            -> {(0,0)} w.p. 1
//   supercritical, alpha = 0       -> four corners (+-m, +-m), m = mplus(beta/2), w.p. 1/4
//   supercritical, alpha > 0       -> +-(m, m),  m = mplus((alpha+beta)/2),     w.p. 1/2
//   supercritical, alpha < 0       -> +-(m, -m), m = mplus((beta-alpha)/2),     w.p. 1/2
std::vector<std::pair<BlockMagnetization, double>> limit_support_points(double alpha,
                                                                        double beta);

} // namespace blockising
