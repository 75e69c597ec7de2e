#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "blockising/model.hpp"
#include "blockising/sampler.hpp"
#include "blockising/weight_table.hpp"

namespace blockising {

// Which combination of block magnetizations a statistic tracks:
//   SumW1  -> w1 = (m1 + m2)/2,   DiffW2 -> w2 = (m1 - m2)/2.
enum class StatKind { SumW1, DiffW2 };

// Scaling prefactor N^e applied to m1 +- m2 (i.e. N^e/2 on the w's as
// written in terms of m1 +- m2): e = 1/2 or 1/4.
enum class ScaleExponent { Half, Quarter };

struct ScaledStatistic {
    StatKind kind = StatKind::SumW1;
    ScaleExponent exponent = ScaleExponent::Half;
    std::vector<double> values;  // one per sample: N^e/2 * (m1 +- m2)
};

// Per-row scaled statistics of a batch. Off-theorem (kind, exponent)
// combinations are computed as requested; they are useful diagnostics even
// where no limit law applies.
ScaledStatistic scaled_statistic(const SampleBatch& batch, const Partition& part,
                                 StatKind kind, ScaleExponent exponent);

enum class LimitLawKind { Gaussian, Quartic };

// Limit law of the canonically scaled statistic on the critical line
// |alpha| + beta = 2 (alpha != 0):
//   alpha > 0: DiffW2 at N^(1/2) -> N(0, 2/(2 - eta)),  SumW1 at N^(1/4) -> quartic
//   alpha < 0: DiffW2 at N^(1/4) -> quartic,            SumW1 at N^(1/2) -> N(0, -1/alpha)
// with kappa = alpha + beta and eta = beta - alpha.
struct LimitPrediction {
    LimitLawKind law = LimitLawKind::Gaussian;
    double variance = 0.0;  // meaningful only for the Gaussian case
    double kappa = 0.0;
    double eta = 0.0;
};

// Throws std::domain_error off the critical line or at alpha = 0.
LimitPrediction predict_limit(double alpha, double beta, StatKind kind);

// The exponent under which `kind` has the nondegenerate limit above.
ScaleExponent canonical_exponent(double alpha, StatKind kind);

// The quartic limit law with density g(x) = exp(-x^4/12)/K. K and the CDF
// grid on [-8, 8] are built once by adaptive Gauss-Kronrod quadrature; the
// density below |x| = 8 already carries all mass but ~1e-148.
class QuarticLaw {
public:
    QuarticLaw();

    double normalizer() const { return k_; }
    double variance() const { return variance_; }  // = second moment; mean 0
    double density(double x) const;
    double cdf(double x) const;

    // The CDF lookup table (x, F(x)) for export.
    std::span<const double> grid_x() const { return xs_; }
    std::span<const double> grid_cdf() const { return cdf_; }

private:
    double k_ = 0.0;
    double variance_ = 0.0;
    std::vector<double> xs_;
    std::vector<double> cdf_;
};

// Shared immutable instance (built on first use).
const QuarticLaw& quartic_law();

// CDF of a LimitPrediction at x.
double limit_cdf(const LimitPrediction& law, double x);

// Kolmogorov-Smirnov sup distance between the empirical CDF of `stat` and
// the predicted law. Requires >= 100 samples.
double ks_statistic(const ScaledStatistic& stat, const LimitPrediction& law);

// Same, for an exactly known discrete law given by atoms (support[i],
// prob[i]); no Monte Carlo noise.
double ks_statistic_discrete(std::span<const double> support,
                             std::span<const double> prob,
                             const LimitPrediction& law);

struct CorrelationGapEstimate {
    double z_hat = 0.0;       // within-block pair average
    double zprime_hat = 0.0;  // cross-block pair average
    double gap = 0.0;         // z_hat - zprime_hat
    double stderr_gap = 0.0;  // batch-mean standard error of the gap
    int n_sites = 0;
    int n_samples = 0;
};

// Pair averages over all within-block (i != j) and cross-block pairs.
// Evaluated through the block-sum identities
//   sum_{i!=j, i~j} s_i s_j = S1^2 + S2^2 - N,   sum_{i!~j} s_i s_j = 2 S1 S2,
// which equal the literal all-pairs averages exactly at O(N) per sample.
CorrelationGapEstimate correlation_gap(const SampleBatch& batch,
                                       const Partition& part);

struct PowerLawFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
};

// Least squares of log(gap) on log(N). Nonpositive gaps are dropped with a
// warning on stderr; fewer than 4 surviving points is an error.
PowerLawFit gap_scaling_exponent(std::span<const std::pair<double, double>> points);

// Tilted exponent (negative log of the Hubbard-Stratonovich integrand)
//   Phi(x,y) = kappa x^2/4 + sqrt(N) y^2/2
//              - N/2 [log cosh(kappa x/(2 sqrt N) + y/N^(1/4))
//                     + log cosh(kappa x/(2 sqrt N) - y/N^(1/4))]
// guarded against overflow via log cosh z = |z| + log(1+e^(-2|z|)) - log 2.
// Parameters must lie on the critical line.
double phi_exponent(double x, double y, double n_sites, double alpha, double beta);

// Its N -> infinity limit x^2/2 (kappa/2 - kappa^2/4) + y^4/12.
double phi_limit(double x, double y, double alpha, double beta);

enum class CriticalBranch { AlphaNeg, AlphaPos };

// Density of the discrete scaled (w1, w2) law convolved with the branch
// Gaussian kernel:
//   AlphaNeg: point (sqrt(N) w1, N^(1/4) w2), C = diag(2/kappa, 1/sqrt(N))
//   AlphaPos: point (N^(1/4) w1, sqrt(N) w2), C = diag(1/sqrt(N), 2/eta)
// evaluated by exact summation of Gaussian kernels over the weight table.
class TiltedDensity {
public:
    TiltedDensity(const MagnetizationWeightTable& table, CriticalBranch branch);

    double operator()(double x, double y) const;

    double x_kernel_variance() const { return c1_; }
    double y_kernel_variance() const { return c2_; }

private:
    int half_;
    std::vector<double> prob_;       // dense (half+1)^2 table probabilities
    std::vector<double> x_support_;  // scaled w1, indexed by s = k1 + k2
    std::vector<double> y_support_;  // scaled w2, indexed by d + half, d = k1 - k2
    double c1_ = 0.0;
    double c2_ = 0.0;
};

// One-off evaluation (builds the table internally; prefer the class when
// evaluating many points).
double tilted_density(const ModelParams& params, const Partition& part,
                      double x, double y, CriticalBranch branch);

}  // namespace blockising
