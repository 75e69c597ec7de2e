#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "blockising/model.hpp"
#include "blockising/rng.hpp"
#include "blockising/weight_table.hpp"

namespace blockising {

/// A batch of i.i.d. (or effectively i.i.d.) configurations drawn from the
/// Gibbs measure.  Rows are observations, columns are sites; entries are +-1.
struct SampleBatch {
    int n_sites = 0;
    int n_samples = 0;
    std::vector<std::int8_t> spins;  // row-major, n_samples * n_sites entries
    SeedSpec seed_record{};

    std::span<const std::int8_t> row(int i) const {
        return {spins.data() + static_cast<std::size_t>(i) * n_sites,
                static_cast<std::size_t>(n_sites)};
    }
};

/// Draws `count` i.i.d. configurations: (k1,k2) by CDF inversion over the
/// flattened weight table, then a uniformly random placement of the +1 spins
/// within each block.  count == 0 yields an empty, valid batch.
SampleBatch exact_sample(const MagnetizationWeightTable& table,
                         const Partition& part, SeedSpec seed, int count);

/// Heat-bath Glauber dynamics with stationary law mu_{N,alpha,beta,S}.
/// One chain: burn-in of `sweeps` full sweeps, then one recorded state every
/// `sweeps` sweeps.  Local fields are maintained through running block sums,
/// so a sweep costs O(N).
SampleBatch glauber_sample(const ModelParams& params, const Partition& part,
                           SeedSpec seed, int sweeps, int count);

/// Exact Gibbs law over all 2^N configurations (test oracle, N <= 16).
struct BruteForceDistribution {
    int n_sites = 0;
    std::vector<double> prob;        // indexed by the N-bit configuration mask
    // Marginal law of (k1,k2) on the (N/2+1)^2 grid, same layout as the
    // weight table: index k1*(N/2+1)+k2.
    std::vector<double> block_count_law;

    double pair_expectation(const Partition& part, int i, int j) const;
};

BruteForceDistribution brute_force_distribution(const ModelParams& params,
                                                const Partition& part);

/// Total variation distance between two probability vectors of equal length.
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace blockising
