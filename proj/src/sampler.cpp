#include "blockising/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "blockising/errors.hpp"

namespace blockising {

namespace {

// Sigmoid written to avoid overflow for large negative arguments.
double heat_bath_prob(double two_h) {
    if (two_h >= 0.0) {
        return 1.0 / (1.0 + std::exp(-two_h));
    }
    const double e = std::exp(two_h);
    return e / (1.0 + e);
}

}  // namespace

SampleBatch exact_sample(const MagnetizationWeightTable& table,
                         const Partition& part, SeedSpec seed, int count) {
    const ModelParams& params = table.params();
    const int n = params.n_sites();
    if (part.size() != n) {
        throw std::invalid_argument("exact_sample: partition size does not match table");
    }
    if (count < 0) {
        throw std::invalid_argument("exact_sample: negative sample count");
    }

    SampleBatch batch;
    batch.n_sites = n;
    batch.n_samples = count;
    batch.seed_record = seed;
    batch.spins.assign(static_cast<std::size_t>(count) * n, -1);
    if (count == 0) return batch;

    const int half = n / 2;
    const int side = half + 1;

    // Flattened cumulative distribution over (k1,k2).
    std::vector<double> cdf(static_cast<std::size_t>(side) * side);
    KahanSum running;
    for (int k1 = 0; k1 <= half; ++k1) {
        for (int k2 = 0; k2 <= half; ++k2) {
            running.add(table.prob(k1, k2));
            cdf[static_cast<std::size_t>(k1) * side + k2] = running.value();
        }
    }
    const double total = cdf.back();

    Rng rng(seed);
    std::vector<int> pool1 = part.block_indices(+1);
    std::vector<int> pool2 = part.block_indices(-1);

    for (int s = 0; s < count; ++s) {
        const double u = rng.next_double() * total;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
        if (idx >= cdf.size()) idx = cdf.size() - 1;
        const int k1 = static_cast<int>(idx) / side;
        const int k2 = static_cast<int>(idx) % side;

        std::int8_t* row = batch.spins.data() + static_cast<std::size_t>(s) * n;
        partial_shuffle(pool1, k1, rng);
        for (int t = 0; t < k1; ++t) row[pool1[t]] = +1;
        partial_shuffle(pool2, k2, rng);
        for (int t = 0; t < k2; ++t) row[pool2[t]] = +1;
    }
    return batch;
}

SampleBatch glauber_sample(const ModelParams& params, const Partition& part,
                           SeedSpec seed, int sweeps, int count) {
    const int n = params.n_sites();
    if (part.size() != n) {
        throw std::invalid_argument("glauber_sample: partition size does not match params");
    }
    if (sweeps < 1) {
        throw std::invalid_argument("glauber_sample: sweeps must be >= 1");
    }
    if (count < 0) {
        throw std::invalid_argument("glauber_sample: negative sample count");
    }

    SampleBatch batch;
    batch.n_sites = n;
    batch.n_samples = count;
    batch.seed_record = seed;
    batch.spins.assign(static_cast<std::size_t>(count) * n, -1);
    if (count == 0) return batch;

    Rng rng(seed);
    std::vector<std::int8_t> sigma(n);
    // Block sums indexed 0 -> block of +1 labels, 1 -> block of -1 labels.
    double block_sum[2] = {0.0, 0.0};
    std::vector<std::uint8_t> block_of(n);
    for (int i = 0; i < n; ++i) {
        block_of[i] = part[i] > 0 ? 0 : 1;
        sigma[i] = rng.next_spin();
        block_sum[block_of[i]] += sigma[i];
    }

    const double a = params.alpha() / n;
    const double b = params.beta() / n;

    auto sweep = [&] {
        for (int i = 0; i < n; ++i) {
            const int blk = block_of[i];
            const double h =
                b * (block_sum[blk] - sigma[i]) + a * block_sum[1 - blk];
            const std::int8_t next =
                rng.next_double() < heat_bath_prob(2.0 * h) ? +1 : -1;
            if (next != sigma[i]) {
                block_sum[blk] += 2.0 * next;
                sigma[i] = next;
            }
        }
    };

    for (int s = 0; s < sweeps; ++s) sweep();  // burn-in
    for (int rec = 0; rec < count; ++rec) {
        for (int s = 0; s < sweeps; ++s) sweep();
        std::copy(sigma.begin(), sigma.end(),
                  batch.spins.begin() + static_cast<std::size_t>(rec) * n);
    }
    return batch;
}

BruteForceDistribution brute_force_distribution(const ModelParams& params,
                                                const Partition& part) {
    const int n = params.n_sites();
    if (n > 16) {
        throw std::invalid_argument(
            "brute_force_distribution: refused for N > 16 (oracle scale only)");
    }
    if (part.size() != n) {
        throw std::invalid_argument(
            "brute_force_distribution: partition size does not match params");
    }

    std::uint32_t mask1 = 0;  // sites labelled +1
    for (int i = 0; i < n; ++i) {
        if (part[i] > 0) mask1 |= (1u << i);
    }

    const std::size_t n_conf = std::size_t{1} << n;
    const int half = n / 2;
    const int side = half + 1;

    // The Hamiltonian depends on sigma only through (k1,k2); precompute it.
    std::vector<double> neg_h(static_cast<std::size_t>(side) * side);
    for (int k1 = 0; k1 <= half; ++k1) {
        for (int k2 = 0; k2 <= half; ++k2) {
            const BlockMagnetization m{(4.0 * k1 - n) / n, (4.0 * k2 - n) / n};
            neg_h[static_cast<std::size_t>(k1) * side + k2] =
                -hamiltonian_magnetization(params, m);
        }
    }
    double max_log = -std::numeric_limits<double>::infinity();
    for (double v : neg_h) max_log = std::max(max_log, v);

    BruteForceDistribution dist;
    dist.n_sites = n;
    dist.prob.resize(n_conf);
    dist.block_count_law.assign(static_cast<std::size_t>(side) * side, 0.0);

    const std::uint32_t all_sites = (1u << n) - 1u;
    KahanSum norm;
    for (std::size_t conf = 0; conf < n_conf; ++conf) {
        const int k1 = std::popcount(static_cast<std::uint32_t>(conf) & mask1);
        const int k2 =
            std::popcount(static_cast<std::uint32_t>(conf) & ~mask1 & all_sites);
        const double w =
            std::exp(neg_h[static_cast<std::size_t>(k1) * side + k2] - max_log);
        dist.prob[conf] = w;
        norm.add(w);
    }
    const double z = norm.value();
    std::vector<KahanSum> law(static_cast<std::size_t>(side) * side);
    for (std::size_t conf = 0; conf < n_conf; ++conf) {
        dist.prob[conf] /= z;
        const int k1 = std::popcount(static_cast<std::uint32_t>(conf) & mask1);
        const int k2 =
            std::popcount(static_cast<std::uint32_t>(conf) & ~mask1 & all_sites);
        law[static_cast<std::size_t>(k1) * side + k2].add(dist.prob[conf]);
    }
    for (std::size_t i = 0; i < law.size(); ++i) {
        dist.block_count_law[i] = law[i].value();
    }
    return dist;
}

double BruteForceDistribution::pair_expectation(const Partition& part, int i,
                                                int j) const {
    if (i < 0 || j < 0 || i >= n_sites || j >= n_sites) {
        throw std::invalid_argument("pair_expectation: site index out of range");
    }
    (void)part;  // the law already encodes the partition through prob
    KahanSum acc;
    const std::size_t n_conf = prob.size();
    for (std::size_t conf = 0; conf < n_conf; ++conf) {
        const int si = (conf >> i) & 1u ? +1 : -1;
        const int sj = (conf >> j) & 1u ? +1 : -1;
        acc.add(prob[conf] * si * sj);
    }
    return acc.value();
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("total_variation: length mismatch");
    }
    KahanSum acc;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc.add(std::abs(p[i] - q[i]));
    }
    return 0.5 * acc.value();
}

}  // namespace blockising
