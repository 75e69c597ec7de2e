#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "blockising/fluctuations.hpp"
#include "blockising/model.hpp"
#include "blockising/rng.hpp"
#include "blockising/sampler.hpp"
#include "blockising/weight_table.hpp"

using namespace blockising;

namespace {

double gauss_density(double x, double mean, double variance) {
    const double z = x - mean;
    return std::exp(-z * z / (2.0 * variance)) /
           std::sqrt(2.0 * std::numbers::pi * variance);
}

double gauss_cdf_ref(double x, double variance) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

SampleBatch single_row_batch(const std::vector<int>& row) {
    SampleBatch batch;
    batch.n_sites = static_cast<int>(row.size());
    batch.n_samples = 1;
    for (int v : row) batch.spins.push_back(static_cast<std::int8_t>(v));
    return batch;
}

}  // namespace

TEST_CASE("scaled_statistic applies the right prefactors") {
    const int n = 16;
    const Partition part = Partition::first_half(n);

    std::vector<int> aligned;
    for (int i = 0; i < n; ++i) aligned.push_back(part[i]);
    const SampleBatch ab = single_row_batch(aligned);
    CHECK(scaled_statistic(ab, part, StatKind::DiffW2, ScaleExponent::Half).values[0] ==
          doctest::Approx(4.0).epsilon(1e-15));  // sqrt(16)/2 * (1 - (-1))
    CHECK(scaled_statistic(ab, part, StatKind::SumW1, ScaleExponent::Half).values[0] ==
          doctest::Approx(0.0).epsilon(1e-15));

    const SampleBatch ones = single_row_batch(std::vector<int>(n, 1));
    CHECK(scaled_statistic(ones, part, StatKind::SumW1, ScaleExponent::Half).values[0] ==
          doctest::Approx(4.0).epsilon(1e-15));
    CHECK(scaled_statistic(ones, part, StatKind::SumW1, ScaleExponent::Quarter).values[0] ==
          doctest::Approx(2.0).epsilon(1e-15));  // 16^(1/4)/2 * 2
    CHECK(scaled_statistic(ones, part, StatKind::DiffW2, ScaleExponent::Half).values[0] ==
          doctest::Approx(0.0).epsilon(1e-15));

    CHECK_THROWS_AS(scaled_statistic(ones, Partition::first_half(8), StatKind::SumW1,
                                     ScaleExponent::Half),
                    std::invalid_argument);
}

TEST_CASE("scaled_statistic is centered under the flip-symmetric law") {
    const ModelParams params(400, 0.5, 1.5);
    const Partition part = Partition::first_half(400);
    const MagnetizationWeightTable table(params);
    const SampleBatch batch = exact_sample(table, part, SeedSpec{112233, 0}, 100000);
    const ScaledStatistic stat =
        scaled_statistic(batch, part, StatKind::SumW1, ScaleExponent::Quarter);

    KahanSum sum;
    for (double v : stat.values) sum.add(v);
    const double mean = sum.value() / static_cast<double>(stat.values.size());
    KahanSum sq;
    for (double v : stat.values) sq.add((v - mean) * (v - mean));
    const double stderr_mean =
        std::sqrt(sq.value() / (static_cast<double>(stat.values.size()) *
                                (static_cast<double>(stat.values.size()) - 1.0)));
    CHECK(std::abs(mean) < 4.0 * stderr_mean);
}

TEST_CASE("predict_limit branches of the critical fluctuation theorem") {
    const LimitPrediction pos_diff = predict_limit(0.5, 1.5, StatKind::DiffW2);
    CHECK(pos_diff.law == LimitLawKind::Gaussian);
    CHECK(pos_diff.variance == doctest::Approx(2.0).epsilon(1e-12));  // 2/(2 - eta), eta = 1
    CHECK(pos_diff.kappa == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(pos_diff.eta == doctest::Approx(1.0).epsilon(1e-15));

    const LimitPrediction pos_sum = predict_limit(0.5, 1.5, StatKind::SumW1);
    CHECK(pos_sum.law == LimitLawKind::Quartic);

    const LimitPrediction neg_sum = predict_limit(-0.5, 1.5, StatKind::SumW1);
    CHECK(neg_sum.law == LimitLawKind::Gaussian);
    CHECK(neg_sum.variance == doctest::Approx(2.0).epsilon(1e-12));  // -1/alpha

    const LimitPrediction neg_diff = predict_limit(-0.5, 1.5, StatKind::DiffW2);
    CHECK(neg_diff.law == LimitLawKind::Quartic);

    // another point on the line: (-0.8, 1.2) has -1/alpha = 1.25
    CHECK(predict_limit(-0.8, 1.2, StatKind::SumW1).variance ==
          doctest::Approx(1.25).epsilon(1e-12));
    // (0.8, 1.2): eta = 0.4, variance 2/1.6
    CHECK(predict_limit(0.8, 1.2, StatKind::DiffW2).variance ==
          doctest::Approx(1.25).epsilon(1e-12));

    CHECK_THROWS_AS(predict_limit(0.5, 1.4, StatKind::SumW1), std::domain_error);
    CHECK_THROWS_AS(predict_limit(0.0, 2.0, StatKind::SumW1), std::domain_error);
    CHECK_THROWS_AS(predict_limit(1.0, 1.0, StatKind::SumW1), std::domain_error);
}

TEST_CASE("canonical_exponent pairs each statistic with its scaling") {
    CHECK(canonical_exponent(0.5, StatKind::DiffW2) == ScaleExponent::Half);
    CHECK(canonical_exponent(0.5, StatKind::SumW1) == ScaleExponent::Quarter);
    CHECK(canonical_exponent(-0.5, StatKind::DiffW2) == ScaleExponent::Quarter);
    CHECK(canonical_exponent(-0.5, StatKind::SumW1) == ScaleExponent::Half);
}

TEST_CASE("quartic law normalizer, variance, and CDF") {
    const QuarticLaw& law = quartic_law();

    // closed forms: K = 12^(1/4) Gamma(1/4)/2, Var = sqrt(12) Gamma(3/4)/Gamma(1/4)
    const double k_closed = std::pow(12.0, 0.25) * std::tgamma(0.25) / 2.0;
    const double var_closed = std::sqrt(12.0) * std::tgamma(0.75) / std::tgamma(0.25);
    CHECK(law.normalizer() == doctest::Approx(k_closed).epsilon(1e-9));
    CHECK(law.normalizer() == doctest::Approx(3.3740102).epsilon(1e-6));
    CHECK(law.variance() == doctest::Approx(var_closed).epsilon(1e-9));
    CHECK(law.variance() == doctest::Approx(1.1708287).epsilon(1e-6));

    CHECK(law.density(0.0) == doctest::Approx(1.0 / law.normalizer()).epsilon(1e-12));
    CHECK(law.density(2.0) ==
          doctest::Approx(std::exp(-16.0 / 12.0) / law.normalizer()).epsilon(1e-12));

    CHECK(law.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(law.cdf(-8.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(law.cdf(8.5) == doctest::Approx(1.0).epsilon(1e-12));
    for (double x = 0.0; x <= 4.0; x += 0.193) {
        CHECK(law.cdf(-x) == doctest::Approx(1.0 - law.cdf(x)).epsilon(1e-9));
    }
    double prev = -1.0;
    for (double x = -3.0; x <= 3.0; x += 0.05) {
        const double c = law.cdf(x);
        CHECK(c > prev);
        prev = c;
    }

    // CDF is the integral of the density: compare against midpoint sums
    double acc = 0.0;
    const double h = 1e-3;
    for (double x = -8.0; x < 1.0 - h / 2; x += h) acc += law.density(x + h / 2) * h;
    CHECK(acc == doctest::Approx(law.cdf(1.0)).epsilon(1e-5));
}

TEST_CASE("limit_cdf dispatches between laws") {
    LimitPrediction gauss{LimitLawKind::Gaussian, 2.0, 0.0, 0.0};
    CHECK(limit_cdf(gauss, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(limit_cdf(gauss, 1.3) == doctest::Approx(gauss_cdf_ref(1.3, 2.0)).epsilon(1e-12));
    CHECK(limit_cdf(gauss, -2.2) == doctest::Approx(gauss_cdf_ref(-2.2, 2.0)).epsilon(1e-12));

    LimitPrediction quart{LimitLawKind::Quartic, 0.0, 0.0, 0.0};
    CHECK(limit_cdf(quart, 0.7) == doctest::Approx(quartic_law().cdf(0.7)).epsilon(1e-12));
}

TEST_CASE("ks_statistic against matching and mismatched samples") {
    LimitPrediction gauss{LimitLawKind::Gaussian, 2.0, 0.0, 0.0};

    Rng rng(SeedSpec{99999, 0});
    ScaledStatistic stat{StatKind::SumW1, ScaleExponent::Half, {}};
    for (int i = 0; i < 100000; ++i) {
        stat.values.push_back(std::sqrt(2.0) * rng.next_normal());
    }
    CHECK(ks_statistic(stat, gauss) < 0.006);

    // a frozen point mass is far from any Gaussian
    ScaledStatistic constant{StatKind::SumW1, ScaleExponent::Half,
                             std::vector<double>(200, 0.0)};
    CHECK(ks_statistic(constant, gauss) >= 0.499);

    ScaledStatistic tiny{StatKind::SumW1, ScaleExponent::Half,
                         std::vector<double>(99, 0.0)};
    CHECK_THROWS_AS(ks_statistic(tiny, gauss), std::invalid_argument);
}

TEST_CASE("ks_statistic on sampled critical fluctuations") {
    const int n = 1000;
    const ModelParams params(n, 0.5, 1.5);
    const Partition part = Partition::first_half(n);
    const MagnetizationWeightTable table(params);
    const SampleBatch batch = exact_sample(table, part, SeedSpec{54321, 0}, 10000);
    const ScaledStatistic stat =
        scaled_statistic(batch, part, StatKind::DiffW2, ScaleExponent::Half);
    const double ks = ks_statistic(stat, predict_limit(0.5, 1.5, StatKind::DiffW2));
    CHECK(ks < 0.05);
}

TEST_CASE("ks_statistic_discrete has a closed-form check") {
    // two atoms at +-1 with mass 1/2 against a standard Gaussian:
    // sup distance is Phi(1) - 1/2 = 0.341344746...
    const std::vector<double> support{-1.0, 1.0};
    const std::vector<double> prob{0.5, 0.5};
    LimitPrediction std_gauss{LimitLawKind::Gaussian, 1.0, 0.0, 0.0};
    CHECK(ks_statistic_discrete(support, prob, std_gauss) ==
          doctest::Approx(0.3413447461).epsilon(1e-6));

    // a single atom at the origin: jump from 0 to 1 across F = 1/2
    const std::vector<double> one_support{0.0};
    const std::vector<double> one_prob{1.0};
    CHECK(ks_statistic_discrete(one_support, one_prob, std_gauss) ==
          doctest::Approx(0.5).epsilon(1e-9));

    CHECK_THROWS_AS(ks_statistic_discrete(std::vector<double>{},
                                          std::vector<double>{}, std_gauss),
                    std::invalid_argument);
}

TEST_CASE("correlation_gap matches the exact table") {
    const ModelParams params(8, 0.5, 1.5);
    const Partition part = Partition::first_half(8);
    const MagnetizationWeightTable table(params);
    const auto [z, zp] = exact_correlations(table);

    const SampleBatch batch = exact_sample(table, part, SeedSpec{246810, 0}, 100000);
    const CorrelationGapEstimate est = correlation_gap(batch, part);
    CHECK(est.n_samples == 100000);
    CHECK(est.gap == doctest::Approx(est.z_hat - est.zprime_hat).epsilon(1e-12));
    CHECK(est.stderr_gap > 0.0);
    CHECK(std::abs(est.gap - (z - zp)) < 4.0 * est.stderr_gap);
    CHECK(std::abs(est.z_hat - z) < 0.01);
    CHECK(std::abs(est.zprime_hat - zp) < 0.01);

    // all-plus batch: every pair product is +1
    SampleBatch ones;
    ones.n_sites = 8;
    ones.n_samples = 2;
    ones.spins.assign(16, 1);
    const CorrelationGapEstimate deg = correlation_gap(ones, part);
    CHECK(deg.z_hat == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(deg.zprime_hat == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(deg.gap == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(deg.stderr_gap == doctest::Approx(0.0).epsilon(1e-15));

    SampleBatch single;
    single.n_sites = 8;
    single.n_samples = 1;
    single.spins.assign(8, 1);
    CHECK_THROWS_AS(correlation_gap(single, part), std::invalid_argument);
}

TEST_CASE("exact correlation scale matches the critical-line prediction") {
    // at N = 1024 on the critical line, Z tracks sqrt(12/N) Gamma(3/4)/Gamma(1/4)
    const MagnetizationWeightTable table(ModelParams(1024, 0.5, 1.5));
    const auto [z, zp] = exact_correlations(table);
    const double target =
        std::sqrt(12.0 / 1024.0) * std::tgamma(0.75) / std::tgamma(0.25);
    CHECK(std::abs(z - target) / target < 0.1);
    CHECK(std::abs(zp - target) / target < 0.1);
}

TEST_CASE("gap_scaling_exponent fits exact power laws") {
    std::vector<std::pair<double, double>> inverse;
    std::vector<std::pair<double, double>> inv_sqrt;
    for (double n : {64.0, 128.0, 256.0, 512.0, 1024.0}) {
        inverse.emplace_back(n, 5.0 / n);
        inv_sqrt.emplace_back(n, 2.0 / std::sqrt(n));
    }
    const PowerLawFit f1 = gap_scaling_exponent(inverse);
    CHECK(f1.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(f1.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f1.points_used == 5);
    CHECK(std::exp(f1.intercept) == doctest::Approx(5.0).epsilon(1e-9));

    const PowerLawFit f2 = gap_scaling_exponent(inv_sqrt);
    CHECK(f2.slope == doctest::Approx(-0.5).epsilon(1e-12));

    // nonpositive gaps are dropped before fitting
    std::vector<std::pair<double, double>> noisy = inverse;
    noisy.emplace_back(2048.0, 0.0);
    noisy.emplace_back(4096.0, -1e-3);
    const PowerLawFit f3 = gap_scaling_exponent(noisy);
    CHECK(f3.points_used == 5);
    CHECK(f3.slope == doctest::Approx(-1.0).epsilon(1e-12));

    std::vector<std::pair<double, double>> few{{64.0, 0.1}, {128.0, 0.05}, {256.0, 0.02}};
    CHECK_THROWS_AS(gap_scaling_exponent(few), std::invalid_argument);
}

TEST_CASE("phi_exponent structure and limit") {
    CHECK(phi_exponent(0.0, 0.0, 1e4, -0.5, 1.5) == 0.0);
    CHECK(phi_limit(0.0, 0.0, -0.5, 1.5) == 0.0);

    // even in each argument separately
    for (auto [x, y] : {std::pair{1.1, 0.7}, std::pair{2.0, -1.3}}) {
        const double base = phi_exponent(x, y, 1e5, -0.5, 1.5);
        CHECK(phi_exponent(-x, y, 1e5, -0.5, 1.5) == doctest::Approx(base).epsilon(1e-13));
        CHECK(phi_exponent(x, -y, 1e5, -0.5, 1.5) == doctest::Approx(base).epsilon(1e-13));
    }

    // the limit expression itself
    const double kappa = -0.5 + 1.5;  // = 1
    const double x = 1.4;
    const double y = -0.9;
    CHECK(phi_limit(x, y, -0.5, 1.5) ==
          doctest::Approx(x * x / 2.0 * (kappa / 2.0 - kappa * kappa / 4.0) +
                          y * y * y * y / 12.0)
              .epsilon(1e-14));

    CHECK_THROWS_AS(phi_exponent(1.0, 1.0, 1e4, 0.5, 1.4), std::domain_error);
    CHECK_THROWS_AS(phi_exponent(1.0, 1.0, 0.0, -0.5, 1.5), std::invalid_argument);

    // uniform convergence on a compact grid: error drops by >= 8x from 1e4 to 1e6
    double d4 = 0.0;
    double d6 = 0.0;
    for (double gx = -2.0; gx <= 2.001; gx += 0.5) {
        for (double gy = -2.0; gy <= 2.001; gy += 0.5) {
            const double lim = phi_limit(gx, gy, -0.5, 1.5);
            d4 = std::max(d4, std::abs(phi_exponent(gx, gy, 1e4, -0.5, 1.5) - lim));
            d6 = std::max(d6, std::abs(phi_exponent(gx, gy, 1e6, -0.5, 1.5) - lim));
        }
    }
    CHECK(d6 > 0.0);
    CHECK(d4 / d6 >= 8.0);
}

TEST_CASE("tilted density kernels, symmetry, and direct-sum agreement") {
    const int n = 256;
    const ModelParams params(n, -0.5, 1.5);
    const MagnetizationWeightTable table(params);
    const TiltedDensity chi(table, CriticalBranch::AlphaNeg);

    CHECK(chi.x_kernel_variance() == doctest::Approx(2.0).epsilon(1e-15));   // 2/kappa
    CHECK(chi.y_kernel_variance() == doctest::Approx(1.0 / 16.0).epsilon(1e-15));

    // independent direct summation over the table
    auto direct = [&](double x, double y) {
        const int half = n / 2;
        const double root_n = std::sqrt(static_cast<double>(n));
        const double quarter_n = std::pow(static_cast<double>(n), 0.25);
        KahanSum acc;
        for (int k1 = 0; k1 <= half; ++k1) {
            for (int k2 = 0; k2 <= half; ++k2) {
                const double w1 = (2.0 * (k1 + k2) - n) / n;
                const double w2 = 2.0 * (k1 - k2) / n;
                acc.add(table.prob(k1, k2) *
                        gauss_density(x, root_n * w1, chi.x_kernel_variance()) *
                        gauss_density(y, quarter_n * w2, chi.y_kernel_variance()));
            }
        }
        return acc.value();
    };
    for (auto [x, y] : {std::pair{0.0, 0.0}, std::pair{1.3, -0.7}, std::pair{-2.1, 0.4}}) {
        CHECK(chi(x, y) == doctest::Approx(direct(x, y)).epsilon(1e-11));
    }

    CHECK(chi(1.7, 0.6) == doctest::Approx(chi(-1.7, -0.6)).epsilon(1e-12));

    // quadrature over a box agrees with the exact per-atom Gaussian box mass
    const double lx = 4.0;
    const double ly = 2.0;
    auto box_mass_exact = [&]() {
        const int half = n / 2;
        const double root_n = std::sqrt(static_cast<double>(n));
        const double quarter_n = std::pow(static_cast<double>(n), 0.25);
        const double sx = std::sqrt(chi.x_kernel_variance());
        const double sy = std::sqrt(chi.y_kernel_variance());
        KahanSum acc;
        for (int k1 = 0; k1 <= half; ++k1) {
            for (int k2 = 0; k2 <= half; ++k2) {
                const double mx = root_n * (2.0 * (k1 + k2) - n) / n;
                const double my = quarter_n * 2.0 * (k1 - k2) / n;
                const double px = 0.5 * (std::erf((lx - mx) / (sx * std::sqrt(2.0))) -
                                         std::erf((-lx - mx) / (sx * std::sqrt(2.0))));
                const double py = 0.5 * (std::erf((ly - my) / (sy * std::sqrt(2.0))) -
                                         std::erf((-ly - my) / (sy * std::sqrt(2.0))));
                acc.add(table.prob(k1, k2) * px * py);
            }
        }
        return acc.value();
    }();

    // composite Simpson on the same box
    const int mx = 160;  // x panels
    const int my = 80;   // y panels
    const double hx = 2.0 * lx / mx;
    const double hy = 2.0 * ly / my;
    auto simpson_weight = [](int i, int m) {
        if (i == 0 || i == m) return 1.0;
        return i % 2 == 1 ? 4.0 : 2.0;
    };
    KahanSum quad;
    for (int i = 0; i <= mx; ++i) {
        for (int j = 0; j <= my; ++j) {
            const double w = simpson_weight(i, mx) * simpson_weight(j, my);
            quad.add(w * chi(-lx + i * hx, -ly + j * hy));
        }
    }
    const double integral = quad.value() * hx * hy / 9.0;
    CHECK(integral == doctest::Approx(box_mass_exact).epsilon(1e-6));
    CHECK(box_mass_exact > 0.8);  // the box captures most of the mass

    CHECK_THROWS_AS(TiltedDensity(table, CriticalBranch::AlphaPos), std::domain_error);
    const MagnetizationWeightTable off(ModelParams(64, -0.5, 1.4));
    CHECK_THROWS_AS(TiltedDensity(off, CriticalBranch::AlphaNeg), std::domain_error);
}

TEST_CASE("tilted density positive-alpha branch") {
    const int n = 256;
    const ModelParams params(n, 0.5, 1.5);
    const MagnetizationWeightTable table(params);
    const TiltedDensity chi(table, CriticalBranch::AlphaPos);

    CHECK(chi.x_kernel_variance() == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    CHECK(chi.y_kernel_variance() == doctest::Approx(2.0).epsilon(1e-15));  // 2/eta, eta = 1

    auto direct = [&](double x, double y) {
        const int half = n / 2;
        const double root_n = std::sqrt(static_cast<double>(n));
        const double quarter_n = std::pow(static_cast<double>(n), 0.25);
        KahanSum acc;
        for (int k1 = 0; k1 <= half; ++k1) {
            for (int k2 = 0; k2 <= half; ++k2) {
                const double w1 = (2.0 * (k1 + k2) - n) / n;
                const double w2 = 2.0 * (k1 - k2) / n;
                acc.add(table.prob(k1, k2) *
                        gauss_density(x, quarter_n * w1, chi.x_kernel_variance()) *
                        gauss_density(y, root_n * w2, chi.y_kernel_variance()));
            }
        }
        return acc.value();
    };
    for (auto [x, y] : {std::pair{0.2, 0.9}, std::pair{-1.0, 1.5}}) {
        CHECK(chi(x, y) == doctest::Approx(direct(x, y)).epsilon(1e-11));
    }

    // free-function wrapper agrees with the class
    const Partition part = Partition::first_half(n);
    CHECK(tilted_density(params, part, 0.2, 0.9, CriticalBranch::AlphaPos) ==
          doctest::Approx(chi(0.2, 0.9)).epsilon(1e-12));
    CHECK_THROWS_AS(tilted_density(params, Partition::first_half(32), 0.0, 0.0,
                                   CriticalBranch::AlphaPos),
                    std::invalid_argument);
}

TEST_CASE("tilted density approaches the Hubbard-Stratonovich limit shape") {
    // chi converges to exp(-x^2/2 (kappa/2 - kappa^2/4) - y^4/12) normalized;
    // at (alpha, beta) = (-0.5, 1.5), kappa = 1 and the x-marginal is N(0, 4)
    const int n = 4096;
    const ModelParams params(n, -0.5, 1.5);
    const MagnetizationWeightTable table(params);
    const TiltedDensity chi(table, CriticalBranch::AlphaNeg);

    const double kq = 0.25;  // kappa/2 - kappa^2/4
    const double norm = std::sqrt(2.0 * std::numbers::pi / kq) * quartic_law().normalizer();
    for (double x : {-1.5, 0.0, 1.5}) {
        for (double y : {-1.5, 0.0, 1.5}) {
            const double limit = std::exp(-x * x / 2.0 * kq - y * y * y * y / 12.0) / norm;
            CHECK(std::abs(chi(x, y) / limit - 1.0) < 0.10);
        }
    }
}

TEST_CASE("exact critical variance drifts toward the Gaussian limit") {
    // var of sqrt(N)/2 (m1 - m2) at (0.5, 1.5) approaches 2/(2 - eta) = 2
    const MagnetizationWeightTable table(ModelParams(1024, 0.5, 1.5));
    const double var =
        1024.0 / 4.0 *
        table.expectation([](double m1, double m2) { return (m1 - m2) * (m1 - m2); });
    CHECK(std::abs(var - 2.0) / 2.0 < 0.15);
}
