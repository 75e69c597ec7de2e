#include "blockising/fluctuations.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "blockising/errors.hpp"

namespace blockising {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// log cosh z without overflow: |z| + log((1 + e^{-2|z|})/2).
double log_cosh(double z) {
    const double a = std::abs(z);
    return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453094172321;
}

double gauss_pdf(double z, double variance) {
    return std::exp(-z * z / (2.0 * variance)) / std::sqrt(2.0 * kPi * variance);
}

double gauss_cdf(double z, double variance) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0 * variance));
}

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK dqk15
// nodes/weights); returns the Kronrod value, err gets |K15 - G7| * h.
template <typename F>
double gk15(F&& f, double a, double b, double& err) {
    static constexpr double xgk[8] = {
        0.991455371120813, 0.949107912342759, 0.864864423359769,
        0.741531185599394, 0.586087235467691, 0.405845151377397,
        0.207784955007898, 0.0};
    static constexpr double wgk[8] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250,
        0.140653259715525, 0.169004726639267, 0.190350578064785,
        0.204432940075298, 0.209482141084728};
    static constexpr double wg[4] = {0.129484966168870, 0.279705391489277,
                                     0.381830050505119, 0.417959183673469};

    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = wgk[7] * fc;
    double resg = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double fv = f(c - h * xgk[j]) + f(c + h * xgk[j]);
        resk += wgk[j] * fv;
        if (j % 2 == 1) resg += wg[(j - 1) / 2] * fv;
    }
    err = std::abs(resk - resg) * std::abs(h);
    return resk * h;
}

template <typename F>
double adaptive_quad_impl(F&& f, double a, double b, double tol, int depth) {
    double err = 0.0;
    const double whole = gk15(f, a, b, err);
    if (err <= tol) return whole;
    if (depth >= 48) {
        throw NumericError("adaptive quadrature failed to converge");
    }
    const double c = 0.5 * (a + b);
    return adaptive_quad_impl(f, a, c, 0.5 * tol, depth + 1) +
           adaptive_quad_impl(f, c, b, 0.5 * tol, depth + 1);
}

template <typename F>
double adaptive_quad(F&& f, double a, double b, double tol) {
    return adaptive_quad_impl(f, a, b, tol, 0);
}

double quartic_weight(double x) {
    return std::exp(-x * x * x * x / 12.0);
}

}  // namespace

ScaledStatistic scaled_statistic(const SampleBatch& batch, const Partition& part,
                                 StatKind kind, ScaleExponent exponent) {
    if (part.size() != batch.n_sites) {
        throw std::invalid_argument("scaled_statistic: partition/batch size mismatch");
    }
    const double e = exponent == ScaleExponent::Half ? 0.5 : 0.25;
    const double scale = 0.5 * std::pow(static_cast<double>(batch.n_sites), e);

    ScaledStatistic stat;
    stat.kind = kind;
    stat.exponent = exponent;
    stat.values.resize(static_cast<std::size_t>(batch.n_samples));
    for (int i = 0; i < batch.n_samples; ++i) {
        const BlockMagnetization m = block_magnetizations(batch.row(i), part);
        const double combo = kind == StatKind::SumW1 ? m.m1 + m.m2 : m.m1 - m.m2;
        stat.values[static_cast<std::size_t>(i)] = scale * combo;
    }
    return stat;
}

LimitPrediction predict_limit(double alpha, double beta, StatKind kind) {
    if (std::abs(std::abs(alpha) + beta - 2.0) > kCriticalLineTol) {
        throw std::domain_error("predict_limit: parameters not on the critical line");
    }
    if (alpha == 0.0) {
        throw std::domain_error("predict_limit: alpha = 0 not covered by the limit theorem");
    }
    if (alpha >= beta) {
        throw std::domain_error("predict_limit: requires alpha < beta");
    }

    LimitPrediction p;
    p.kappa = alpha + beta;
    p.eta = beta - alpha;
    if (alpha > 0.0) {
        if (kind == StatKind::DiffW2) {
            p.law = LimitLawKind::Gaussian;
            p.variance = 2.0 / (2.0 - p.eta);
        } else {
            p.law = LimitLawKind::Quartic;
        }
    } else {
        if (kind == StatKind::SumW1) {
            p.law = LimitLawKind::Gaussian;
            p.variance = -1.0 / alpha;
        } else {
            p.law = LimitLawKind::Quartic;
        }
    }
    return p;
}

ScaleExponent canonical_exponent(double alpha, StatKind kind) {
    if (alpha > 0.0) {
        return kind == StatKind::DiffW2 ? ScaleExponent::Half : ScaleExponent::Quarter;
    }
    return kind == StatKind::SumW1 ? ScaleExponent::Half : ScaleExponent::Quarter;
}

QuarticLaw::QuarticLaw() {
    k_ = adaptive_quad(quartic_weight, -8.0, 8.0, 1e-12);
    variance_ = adaptive_quad([](double x) { return x * x * quartic_weight(x); },
                              -8.0, 8.0, 1e-12) /
                k_;

    constexpr int kHalfPoints = 512;  // step 1/64 on [0, 8]
    constexpr double kStep = 8.0 / kHalfPoints;
    const int total = 2 * kHalfPoints + 1;
    xs_.resize(total);
    cdf_.resize(total);
    for (int i = 0; i < total; ++i) {
        xs_[i] = -8.0 + kStep * i;
    }
    cdf_[kHalfPoints] = 0.5;
    for (int i = kHalfPoints + 1; i < total; ++i) {
        double err = 0.0;
        const double panel = gk15(quartic_weight, xs_[i - 1], xs_[i], err);
        cdf_[i] = cdf_[i - 1] + panel / k_;
    }
    for (int i = 0; i < kHalfPoints; ++i) {
        cdf_[i] = 1.0 - cdf_[total - 1 - i];
    }
    cdf_.back() = std::min(cdf_.back(), 1.0);
}

double QuarticLaw::density(double x) const { return quartic_weight(x) / k_; }

double QuarticLaw::cdf(double x) const {
    if (x <= xs_.front()) return 0.0;
    if (x >= xs_.back()) return 1.0;
    const double step = xs_[1] - xs_[0];
    int i = static_cast<int>((x - xs_.front()) / step);
    i = std::clamp(i, 0, static_cast<int>(xs_.size()) - 2);
    const double t = (x - xs_[i]) / step;
    // Cubic Hermite with the density as the exact derivative of the CDF.
    const double f0 = cdf_[i], f1 = cdf_[i + 1];
    const double d0 = density(xs_[i]) * step, d1 = density(xs_[i + 1]) * step;
    const double t2 = t * t, t3 = t2 * t;
    const double v = (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * d0 +
                     (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * d1;
    return std::clamp(v, 0.0, 1.0);
}

const QuarticLaw& quartic_law() {
    static const QuarticLaw law;
    return law;
}

double limit_cdf(const LimitPrediction& law, double x) {
    if (law.law == LimitLawKind::Gaussian) {
        return gauss_cdf(x, law.variance);
    }
    return quartic_law().cdf(x);
}

double ks_statistic(const ScaledStatistic& stat, const LimitPrediction& law) {
    const std::size_t n = stat.values.size();
    if (n < 100) {
        throw std::invalid_argument("ks_statistic: needs at least 100 samples");
    }
    std::vector<double> sorted = stat.values;
    std::sort(sorted.begin(), sorted.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fc = limit_cdf(law, sorted[i]);
        ks = std::max(ks, std::abs(fc - static_cast<double>(i) / n));
        ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - fc));
    }
    return ks;
}

double ks_statistic_discrete(std::span<const double> support,
                             std::span<const double> prob,
                             const LimitPrediction& law) {
    if (support.size() != prob.size() || support.empty()) {
        throw std::invalid_argument("ks_statistic_discrete: bad atom arrays");
    }
    std::vector<std::size_t> order(support.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });

    double ks = 0.0;
    KahanSum cum;
    for (std::size_t idx : order) {
        const double before = cum.value();
        cum.add(prob[idx]);
        const double after = cum.value();
        const double fc = limit_cdf(law, support[idx]);
        ks = std::max(ks, std::abs(after - fc));
        ks = std::max(ks, std::abs(before - fc));
    }
    return ks;
}

CorrelationGapEstimate correlation_gap(const SampleBatch& batch,
                                       const Partition& part) {
    if (batch.n_samples < 2) {
        throw std::invalid_argument("correlation_gap: needs n >= 2 samples");
    }
    if (part.size() != batch.n_sites) {
        throw std::invalid_argument("correlation_gap: partition/batch size mismatch");
    }
    const int n_sites = batch.n_sites;
    const double half = n_sites / 2.0;
    const double within_pairs = 2.0 * half * (half - 1.0);  // ordered, i != j
    const double cross_pairs = 2.0 * half * half;

    std::vector<double> gaps(static_cast<std::size_t>(batch.n_samples));
    KahanSum z_acc, zp_acc;
    for (int s = 0; s < batch.n_samples; ++s) {
        const auto row = batch.row(s);
        long s1 = 0, s2 = 0;
        for (int i = 0; i < n_sites; ++i) {
            (part[i] > 0 ? s1 : s2) += row[i];
        }
        const double z_k =
            (static_cast<double>(s1) * s1 + static_cast<double>(s2) * s2 - n_sites) /
            within_pairs;
        const double zp_k = 2.0 * static_cast<double>(s1) * s2 / cross_pairs;
        z_acc.add(z_k);
        zp_acc.add(zp_k);
        gaps[static_cast<std::size_t>(s)] = z_k - zp_k;
    }

    CorrelationGapEstimate est;
    est.n_sites = n_sites;
    est.n_samples = batch.n_samples;
    est.z_hat = z_acc.value() / batch.n_samples;
    est.zprime_hat = zp_acc.value() / batch.n_samples;
    est.gap = est.z_hat - est.zprime_hat;

    KahanSum var_acc;
    for (double g : gaps) {
        const double d = g - est.gap;
        var_acc.add(d * d);
    }
    est.stderr_gap = std::sqrt(var_acc.value() /
                               (static_cast<double>(batch.n_samples) *
                                (batch.n_samples - 1.0)));
    return est;
}

PowerLawFit gap_scaling_exponent(std::span<const std::pair<double, double>> points) {
    std::vector<std::pair<double, double>> logs;
    logs.reserve(points.size());
    for (const auto& [n, gap] : points) {
        if (!(gap > 0.0)) {
            std::cerr << "gap_scaling_exponent: dropping nonpositive gap at N=" << n
                      << "\n";
            continue;
        }
        logs.emplace_back(std::log(n), std::log(gap));
    }
    if (logs.size() < 4) {
        throw std::invalid_argument(
            "gap_scaling_exponent: fewer than 4 usable points");
    }

    const double m = static_cast<double>(logs.size());
    double sx = 0, sy = 0;
    for (const auto& [x, y] : logs) {
        sx += x;
        sy += y;
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : logs) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    PowerLawFit fit;
    fit.points_used = static_cast<int>(logs.size());
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (const auto& [x, y] : logs) {
            const double r = y - (fit.intercept + fit.slope * x);
            ss_res += r * r;
        }
        fit.r_squared = 1.0 - ss_res / syy;
    } else {
        fit.r_squared = 1.0;
    }
    return fit;
}

double phi_exponent(double x, double y, double n_sites, double alpha, double beta) {
    if (std::abs(std::abs(alpha) + beta - 2.0) > kCriticalLineTol) {
        throw std::domain_error("phi_exponent: parameters not on the critical line");
    }
    if (!(n_sites > 0.0)) {
        throw std::invalid_argument("phi_exponent: N must be positive");
    }
    const double kappa = alpha + beta;
    const double sqrt_n = std::sqrt(n_sites);
    const double n_quarter = std::sqrt(sqrt_n);
    const double u = kappa * x / (2.0 * sqrt_n);
    const double v = y / n_quarter;
    return kappa * x * x / 4.0 + sqrt_n * y * y / 2.0 -
           n_sites / 2.0 * (log_cosh(u + v) + log_cosh(u - v));
}

double phi_limit(double x, double y, double alpha, double beta) {
    const double kappa = alpha + beta;
    return x * x / 2.0 * (kappa / 2.0 - kappa * kappa / 4.0) +
           y * y * y * y / 12.0;
}

TiltedDensity::TiltedDensity(const MagnetizationWeightTable& table,
                             CriticalBranch branch) {
    const ModelParams& params = table.params();
    const double alpha = params.alpha();
    const double beta = params.beta();
    if (std::abs(std::abs(alpha) + beta - 2.0) > kCriticalLineTol) {
        throw std::domain_error("TiltedDensity: parameters not on the critical line");
    }
    if ((branch == CriticalBranch::AlphaNeg && alpha >= 0.0) ||
        (branch == CriticalBranch::AlphaPos && alpha <= 0.0)) {
        throw std::domain_error("TiltedDensity: branch does not match sign of alpha");
    }

    const int n = params.n_sites();
    half_ = n / 2;
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double n_quarter = std::sqrt(sqrt_n);

    prob_.resize(static_cast<std::size_t>(half_ + 1) * (half_ + 1));
    for (int k1 = 0; k1 <= half_; ++k1) {
        for (int k2 = 0; k2 <= half_; ++k2) {
            prob_[static_cast<std::size_t>(k1) * (half_ + 1) + k2] =
                table.prob(k1, k2);
        }
    }

    // w1 = (2s - N)/N depends only on s = k1 + k2; w2 = 2d/N only on d = k1 - k2.
    x_support_.resize(static_cast<std::size_t>(n) + 1);
    y_support_.resize(static_cast<std::size_t>(n) + 1);
    const double x_scale = branch == CriticalBranch::AlphaNeg ? sqrt_n : n_quarter;
    const double y_scale = branch == CriticalBranch::AlphaNeg ? n_quarter : sqrt_n;
    for (int s = 0; s <= n; ++s) {
        x_support_[static_cast<std::size_t>(s)] = x_scale * (2.0 * s - n) / n;
    }
    for (int d = -half_; d <= half_; ++d) {
        y_support_[static_cast<std::size_t>(d + half_)] = y_scale * 2.0 * d / n;
    }

    if (branch == CriticalBranch::AlphaNeg) {
        c1_ = 2.0 / (alpha + beta);
        c2_ = 1.0 / sqrt_n;
    } else {
        c1_ = 1.0 / sqrt_n;
        c2_ = 2.0 / (beta - alpha);
    }
}

double TiltedDensity::operator()(double x, double y) const {
    const int n = 2 * half_;
    std::vector<double> kx(static_cast<std::size_t>(n) + 1);
    std::vector<double> ky(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        kx[static_cast<std::size_t>(i)] =
            gauss_pdf(x - x_support_[static_cast<std::size_t>(i)], c1_);
        ky[static_cast<std::size_t>(i)] =
            gauss_pdf(y - y_support_[static_cast<std::size_t>(i)], c2_);
    }
    KahanSum acc;
    for (int k1 = 0; k1 <= half_; ++k1) {
        const double* row = prob_.data() + static_cast<std::size_t>(k1) * (half_ + 1);
        double partial = 0.0;
        for (int k2 = 0; k2 <= half_; ++k2) {
            partial += row[k2] * kx[static_cast<std::size_t>(k1 + k2)] *
                       ky[static_cast<std::size_t>(k1 - k2 + half_)];
        }
        acc.add(partial);
    }
    return acc.value();
}

double tilted_density(const ModelParams& params, const Partition& part,
                      double x, double y, CriticalBranch branch) {
    if (part.size() != params.n_sites()) {
        throw std::invalid_argument("tilted_density: partition/params size mismatch");
    }
    const MagnetizationWeightTable table(params);
    return TiltedDensity(table, branch)(x, y);
}

}  // namespace blockising
