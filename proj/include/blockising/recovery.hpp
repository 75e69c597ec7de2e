#pragma once

#include <Eigen/Dense>
#include <vector>

#include "blockising/model.hpp"
#include "blockising/rng.hpp"
#include "blockising/sampler.hpp"

namespace blockising {

// Empirical second-moment matrix Sigma_hat = (1/n) sum_k sigma^(k) sigma^(k)T.
// Diagonal is exactly 1 (sigma_i^2 = 1); entries lie in [-1, 1]; PSD by
// construction as an average of outer products.
struct EmpiricalCovariance {
    Eigen::MatrixXd sigma_hat;
    int n = 0;
};

// Gamma_hat = Pi Sigma_hat Pi with Pi = I - (1/N) 11^T. Rows and columns sum
// to zero; PSD up to roundoff.
struct CenteredGram {
    Eigen::MatrixXd gamma_hat;
};

// Burer-Monteiro factor of an elliptope member: R = V V^T with unit-norm
// rows, so R is symmetric PSD with unit diagonal.
struct ElliptopeFactor {
    Eigen::MatrixXd v;  // N x k

    int n_sites() const { return static_cast<int>(v.rows()); }
    int rank() const { return static_cast<int>(v.cols()); }
};

struct SdpSolution {
    ElliptopeFactor factor;
    double objective = 0.0;       // Tr(Gamma_hat V V^T) at the solution
    int sweeps = 0;
    bool converged = false;       // true: tol fired; false: sweep budget hit
    std::vector<double> trace;    // objective after each sweep, nondecreasing
};

struct RecoveryResult {
    Partition estimate;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    bool rounding_fallback = false;
    std::vector<double> solver_trace;
};

struct RecoverOptions {
    int k = 0;                // factorization rank; 0 -> ceil(sqrt(2N)) + 1
    double tol = 1e-7;        // relative objective increase per sweep
    int max_sweeps = 2000;
    int restarts = 1;         // best objective wins, ties by restart index
    bool refine = true;       // ml_local_search polish of the rounded estimate
    bool record_trace = false;
    SeedSpec solver_seed{0x9b1fc5e2d3a74680ULL, 0};
};

int default_factor_rank(int n_sites);

// Chunked accumulation of X^T X / n over the batch rows; throws
// std::invalid_argument on an empty batch.
EmpiricalCovariance empirical_second_moment(const SampleBatch& batch);

CenteredGram center(const EmpiricalCovariance& cov);

// Row-wise coordinate ascent for max_{R in elliptope} Tr(Gamma_hat R) on the
// factorization R = V V^T: v_i <- g_i / |g_i| with g_i = sum_{j != i}
// Gamma_ij v_j, sweeping i = 1..N in order (Gauss-Seidel; the order is part
// of the determinism contract). g_i = 0 leaves the row unchanged. Throws
// NumericError on non-finite input.
SdpSolution sdp_solve(const CenteredGram& gram, int k, double tol = 1e-7,
                      int max_sweeps = 2000, int restarts = 1,
                      SeedSpec seed = {0x9b1fc5e2d3a74680ULL, 0});

// Balanced rounding: leading eigenvector u of V V^T by power iteration in
// the k-dimensional factor space (w <- V^T(V w); u = V w); the N/2 largest
// entries of u get +1, ties broken by smallest index. If the iteration
// stagnates, falls back to the sign pattern of the first factor column
// (balance-repaired) and sets *used_fallback.
Partition extract_partition(const ElliptopeFactor& factor,
                            bool* used_fallback = nullptr);

// Best-improving swap search over balanced partitions for Tr(Sigma_hat rr^T),
// maintaining h = Sigma_hat r so each candidate swap costs O(1). Objective
// in the result is Tr(Sigma_hat rr^T) at the local optimum.
RecoveryResult ml_local_search(const EmpiricalCovariance& cov,
                               const Partition& init,
                               int max_moves = 1 << 20);

// min over a global flip of the misassigned-site fraction; in [0, 1/2].
double recovery_error(const Partition& est, const Partition& truth);

// Full pipeline: empirical_second_moment -> center -> sdp_solve ->
// extract_partition, optionally polished by ml_local_search. The reported
// objective is the SDP value Tr(Gamma_hat V V^T).
RecoveryResult recover(const SampleBatch& batch, const RecoverOptions& opts = {});

}  // namespace blockising
