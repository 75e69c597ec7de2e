#include "blockising/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "blockising/errors.hpp"

namespace blockising {

namespace {

// Balanced +-1 vector from a score vector: +1 on the N/2 largest scores,
// ties broken by smallest index (stable sort keeps index order on equal keys).
std::vector<std::int8_t> round_scores(const Eigen::VectorXd& scores) {
    const int n = static_cast<int>(scores.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores[a] > scores[b]; });
    std::vector<std::int8_t> r(n, -1);
    for (int t = 0; t < n / 2; ++t) r[order[t]] = +1;
    return r;
}

ElliptopeFactor random_factor(int n, int k, Rng& rng) {
    ElliptopeFactor f;
    f.v.resize(n, k);
    for (int i = 0; i < n; ++i) {
        double norm2 = 0.0;
        do {
            for (int c = 0; c < k; ++c) {
                f.v(i, c) = rng.next_normal();
            }
            norm2 = f.v.row(i).squaredNorm();
        } while (norm2 == 0.0);
        f.v.row(i) /= std::sqrt(norm2);
    }
    return f;
}

SdpSolution sdp_solve_single(const CenteredGram& gram, int k, double tol,
                             int max_sweeps, Rng& rng) {
    const Eigen::MatrixXd& g = gram.gamma_hat;
    const int n = static_cast<int>(g.rows());

    SdpSolution sol;
    sol.factor = random_factor(n, k, rng);
    Eigen::MatrixXd& v = sol.factor.v;

    Eigen::RowVectorXd gi(k);
    double prev_obj = (g * v).cwiseProduct(v).sum();

    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        for (int i = 0; i < n; ++i) {
            gi.noalias() = g.row(i) * v;
            gi -= g(i, i) * v.row(i);
            const double norm = gi.norm();
            if (norm > 0.0) {
                v.row(i) = gi / norm;
            }
            // norm == 0: documented tie rule, row left unchanged
        }
        const double obj = (g * v).cwiseProduct(v).sum();
        sol.trace.push_back(obj);
        sol.sweeps = sweep;
        if (!std::isfinite(obj)) {
            throw NumericError("sdp_solve: non-finite objective");
        }
        const double rel = (obj - prev_obj) / std::max(std::abs(obj), 1.0);
        prev_obj = obj;
        if (rel < tol) {
            sol.converged = true;
            break;
        }
    }
    sol.objective = prev_obj;
    return sol;
}

}  // namespace

int default_factor_rank(int n_sites) {
    return static_cast<int>(std::ceil(std::sqrt(2.0 * n_sites))) + 1;
}

EmpiricalCovariance empirical_second_moment(const SampleBatch& batch) {
    if (batch.n_samples < 1) {
        throw std::invalid_argument("empirical_second_moment: empty batch");
    }
    const int n_sites = batch.n_sites;
    EmpiricalCovariance cov;
    cov.n = batch.n_samples;
    cov.sigma_hat = Eigen::MatrixXd::Zero(n_sites, n_sites);

    // Accumulate X_chunk^T X_chunk so memory stays bounded for large n.
    constexpr int kChunk = 2048;
    Eigen::MatrixXd x(kChunk, n_sites);
    int filled = 0;
    for (int s = 0; s < batch.n_samples; ++s) {
        const auto row = batch.row(s);
        for (int j = 0; j < n_sites; ++j) {
            x(filled, j) = static_cast<double>(row[j]);
        }
        if (++filled == kChunk) {
            cov.sigma_hat.noalias() += x.transpose() * x;
            filled = 0;
        }
    }
    if (filled > 0) {
        auto part = x.topRows(filled);
        cov.sigma_hat.noalias() += part.transpose() * part;
    }
    cov.sigma_hat /= static_cast<double>(batch.n_samples);
    cov.sigma_hat.diagonal().setOnes();
    return cov;
}

CenteredGram center(const EmpiricalCovariance& cov) {
    const Eigen::MatrixXd& s = cov.sigma_hat;
    const int n = static_cast<int>(s.rows());
    const Eigen::VectorXd row_mean = s.rowwise().mean();
    const double grand_mean = row_mean.mean();
    CenteredGram gram;
    gram.gamma_hat = s;
    gram.gamma_hat.colwise() -= row_mean;
    gram.gamma_hat.rowwise() -= row_mean.transpose();
    gram.gamma_hat.array() += grand_mean;
    (void)n;
    return gram;
}

SdpSolution sdp_solve(const CenteredGram& gram, int k, double tol,
                      int max_sweeps, int restarts, SeedSpec seed) {
    if (k < 2) throw std::invalid_argument("sdp_solve: rank k must be >= 2");
    if (tol <= 0.0) throw std::invalid_argument("sdp_solve: tol must be > 0");
    if (max_sweeps < 1) throw std::invalid_argument("sdp_solve: max_sweeps must be >= 1");
    if (restarts < 1) throw std::invalid_argument("sdp_solve: restarts must be >= 1");
    if (!gram.gamma_hat.allFinite()) {
        throw NumericError("sdp_solve: non-finite gram matrix");
    }

    SdpSolution best;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(SeedSpec{seed.master_seed, seed.stream_index + static_cast<std::uint64_t>(r)});
        SdpSolution sol = sdp_solve_single(gram, k, tol, max_sweeps, rng);
        if (r == 0 || sol.objective > best.objective) {
            best = std::move(sol);
        }
    }
    return best;
}

Partition extract_partition(const ElliptopeFactor& factor, bool* used_fallback) {
    const Eigen::MatrixXd& v = factor.v;
    const int n = static_cast<int>(v.rows());
    const int k = static_cast<int>(v.cols());
    if (used_fallback) *used_fallback = false;

    // Power iteration on the k x k Gram M = V^T V; dominant eigenvector w of
    // M gives the leading eigenvector u = V w of V V^T.
    const Eigen::MatrixXd m = v.transpose() * v;
    Eigen::VectorXd w = Eigen::VectorXd::Constant(k, 1.0 / std::sqrt(double(k)));
    bool ok = false;
    for (int it = 0; it < 5000; ++it) {
        Eigen::VectorXd next = m * w;
        const double norm = next.norm();
        if (norm < 1e-14) break;  // w fell into the null space: stagnation
        next /= norm;
        const double delta = (next - w).norm();
        w = next;
        if (delta < 1e-13) {
            ok = true;
            break;
        }
    }

    Eigen::VectorXd scores;
    if (ok) {
        scores = v * w;
    } else {
        // Stagnant iteration: fall back to the first factor column; the
        // top-N/2 rule below repairs balance.
        if (used_fallback) *used_fallback = true;
        scores = v.col(0);
    }

    // Canonical sign so repeated runs agree exactly: first entry with
    // non-negligible magnitude is made positive.
    for (int i = 0; i < n; ++i) {
        if (std::abs(scores[i]) > 1e-300) {
            if (scores[i] < 0) scores = -scores;
            break;
        }
    }
    return Partition(round_scores(scores));
}

RecoveryResult ml_local_search(const EmpiricalCovariance& cov,
                               const Partition& init, int max_moves) {
    const Eigen::MatrixXd& s = cov.sigma_hat;
    const int n = static_cast<int>(s.rows());
    if (init.size() != n) {
        throw std::invalid_argument("ml_local_search: partition/covariance size mismatch");
    }

    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) r[i] = init[i];
    Eigen::VectorXd h = s * r;
    double objective = r.dot(h);

    int moves = 0;
    bool at_local_opt = false;
    while (moves < max_moves) {
        double best_delta = 1e-12;  // strict improvement only, no tie cycling
        int best_i = -1, best_j = -1;
        for (int i = 0; i < n; ++i) {
            if (r[i] < 0) continue;
            for (int j = 0; j < n; ++j) {
                if (r[j] > 0) continue;
                const double delta = -4.0 * (h[i] - h[j]) + 8.0 - 8.0 * s(i, j);
                if (delta > best_delta) {
                    best_delta = delta;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_i < 0) {
            at_local_opt = true;
            break;
        }
        r[best_i] = -1.0;
        r[best_j] = +1.0;
        h.noalias() += 2.0 * (s.col(best_j) - s.col(best_i));
        objective += best_delta;
        ++moves;
    }

    std::vector<std::int8_t> membership(n);
    for (int i = 0; i < n; ++i) membership[i] = r[i] > 0 ? +1 : -1;
    // Recompute the objective directly; accumulated deltas drift in the last
    // ulps over long runs.
    Eigen::VectorXd rv(n);
    for (int i = 0; i < n; ++i) rv[i] = membership[i];
    objective = rv.dot(s * rv);

    return RecoveryResult{Partition(std::move(membership)), objective, moves,
                          at_local_opt, false, {}};
}

double recovery_error(const Partition& est, const Partition& truth) {
    if (est.size() != truth.size()) {
        throw std::invalid_argument("recovery_error: size mismatch");
    }
    const int n = est.size();
    int agree = 0;
    for (int i = 0; i < n; ++i) {
        agree += est[i] == truth[i];
    }
    return static_cast<double>(std::min(agree, n - agree)) / n;
}

RecoveryResult recover(const SampleBatch& batch, const RecoverOptions& opts) {
    const EmpiricalCovariance cov = empirical_second_moment(batch);
    const CenteredGram gram = center(cov);
    const int k = opts.k > 0 ? opts.k : default_factor_rank(batch.n_sites);

    SdpSolution sol = sdp_solve(gram, k, opts.tol, opts.max_sweeps,
                                opts.restarts, opts.solver_seed);
    bool fallback = false;
    Partition estimate = extract_partition(sol.factor, &fallback);
    if (opts.refine) {
        RecoveryResult refined = ml_local_search(cov, estimate);
        estimate = refined.estimate;
    }
    return RecoveryResult{std::move(estimate),
                          sol.objective,
                          sol.sweeps,
                          sol.converged,
                          fallback,
                          opts.record_trace ? std::move(sol.trace)
                                            : std::vector<double>{}};
}

}  // namespace blockising
