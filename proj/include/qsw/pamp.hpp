#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "qsw/profile.hpp"
#include "qsw/util.hpp"

namespace qsw::pamp {

using profile::ErrorProfile;

// ---------------------------------------------------------------------------
// Universal_2 hashing with binary Toeplitz matrices. The r x n matrix is
// defined by n+r-1 seed bits: M[i][j] = seed[i - j + n - 1], constant along
// diagonals, and the hash y = M x is linear over GF(2).
// ---------------------------------------------------------------------------

struct ToeplitzHash {
    int n = 0;  // input bits
    int r = 0;  // output bits
    std::vector<std::uint8_t> seed;  // n + r - 1 bits, values 0/1
};

inline void validate(const ToeplitzHash& h) {
    require(h.n >= 1 && h.n <= 63, "toeplitz: input width must be 1..63");
    require(h.r >= 1 && h.r <= h.n, "toeplitz: output width must be 1..n");
    require(h.seed.size() == static_cast<std::size_t>(h.n + h.r - 1),
            "toeplitz: seed must have exactly n+r-1 bits");
    for (auto b : h.seed)
        require(b == 0 || b == 1, "toeplitz: seed entries must be bits");
}

/// Row i of the matrix packed into a word: bit j is M[i][j].
inline std::vector<std::uint64_t> row_masks(const ToeplitzHash& h) {
    validate(h);
    std::vector<std::uint64_t> rows(h.r, 0);
    for (int i = 0; i < h.r; ++i)
        for (int j = 0; j < h.n; ++j)
            if (h.seed[i - j + h.n - 1])
                rows[i] |= std::uint64_t{1} << j;
    return rows;
}

inline std::uint64_t hash_word(const std::vector<std::uint64_t>& rows,
                               std::uint64_t x) {
    std::uint64_t y = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        y |= std::uint64_t(std::popcount(rows[i] & x) & 1) << i;
    return y;
}

/// Hash an n-bit input (LSB-first bit vector) to r bits.
inline std::vector<std::uint8_t> toeplitz_hash(const ToeplitzHash& h,
                                               const std::vector<std::uint8_t>& x) {
    require(x.size() == static_cast<std::size_t>(h.n),
            "toeplitz_hash: input must have exactly n bits");
    auto rows = row_masks(h);
    std::uint64_t xw = 0;
    for (int j = 0; j < h.n; ++j) {
        require(x[j] == 0 || x[j] == 1, "toeplitz_hash: input entries must be bits");
        xw |= std::uint64_t(x[j]) << j;
    }
    std::uint64_t yw = hash_word(rows, xw);
    std::vector<std::uint8_t> y(h.r);
    for (int i = 0; i < h.r; ++i) y[i] = (yw >> i) & 1u;
    return y;
}

/// Draw a uniformly random seed for an (n, r) Toeplitz hash.
inline ToeplitzHash random_hash(int n, int r, std::mt19937_64& rng) {
    ToeplitzHash h{n, r, std::vector<std::uint8_t>(std::size_t(n + r - 1))};
    std::uint64_t word = 0;
    int bits_left = 0;
    for (auto& b : h.seed) {
        if (bits_left == 0) {
            word = rng();
            bits_left = 64;
        }
        b = static_cast<std::uint8_t>(word & 1u);
        word >>= 1;
        --bits_left;
    }
    validate(h);
    return h;
}

// ---------------------------------------------------------------------------
// Pushing an adversary profile through a hash
// ---------------------------------------------------------------------------

/// Exact image distribution: out[y] = sum of in[x] over the preimage of y.
/// `keyed` is indexed by the integer key label, not sorted.
inline std::vector<double> hashed_keyed(const std::vector<double>& keyed,
                                        const ToeplitzHash& h) {
    require(keyed.size() == (std::size_t{1} << h.n),
            "hashed_keyed: distribution must have 2^n entries");
    auto rows = row_masks(h);
    std::vector<double> out(std::size_t{1} << h.r, 0.0);
    for (std::uint64_t x = 0; x < keyed.size(); ++x)
        out[hash_word(rows, x)] += keyed[x];
    return out;
}

/// Adversary profile after privacy amplification: dense input over n bits,
/// dense output over r bits (canonically sorted).
inline ErrorProfile hashed_adversary_profile(const ErrorProfile& input,
                                             const ToeplitzHash& h,
                                             const Config& cfg = {}) {
    require(input.is_dense(),
            "hashed_adversary_profile: input profile must be dense");
    require(input.n == h.n,
            "hashed_adversary_profile: hash input width must match profile size");
    require(input.n <= 20, "hashed_adversary_profile: n capped at 20");
    profile::validate(input, cfg);
    std::vector<double> out =
        hashed_keyed(std::get<profile::Dense>(input.form).probabilities, h);
    std::sort(out.begin(), out.end(), std::greater<double>());
    return ErrorProfile{h.r, profile::Dense{std::move(out)}};
}

// ---------------------------------------------------------------------------
// The Renyi-entropy leakage bound and the averaging experiment
// ---------------------------------------------------------------------------

/// Expected leakage bound for universal_2 hashing to r bits from a source
/// of Renyi-2 entropy R2: 2^(r - R2) / ln 2, in bits.
inline double renyi_bound(double renyi2_input, int r) {
    require(renyi2_input >= 0.0, "renyi_bound: negative Renyi entropy");
    return std::exp2(double(r) - renyi2_input) / M_LN2;
}

/// Outcome of averaging privacy amplification over random hash seeds.
/// achieved_exponent = -log2(avg_p1 - 2^-r) measures how fast the guessing
/// probability approaches uniform; bound_exponent = R2 - r is the exponent
/// the leakage bound would suggest; exponent_gap is their ratio (the input
/// profile is fixed, only the seed is averaged).
struct ExperimentRecord {
    int n = 0;
    int r = 0;
    int seeds_tested = 0;
    std::uint64_t rng_seed = 0;
    double avg_mutual_info = 0.0;
    double avg_p1 = 0.0;
    double renyi2_input = 0.0;
    double bound_value = 0.0;
    double achieved_exponent = 0.0;  // +inf when avg_p1 == 2^-r exactly
    double bound_exponent = 0.0;
    double exponent_gap = 0.0;       // NaN when either exponent is undefined
};

inline ExperimentRecord pa_experiment(const ErrorProfile& input, int r,
                                      int seed_count, std::uint64_t rng_seed,
                                      const Config& cfg = {}) {
    require(input.n <= 20 && input.n <= cfg.dense_cap,
            "pa_experiment: input must be dense-materializable (n <= 20)");
    require(r >= 1 && r <= input.n, "pa_experiment: need 1 <= r <= n");
    require(seed_count >= 1, "pa_experiment: need at least one seed");
    const std::vector<double> keyed = profile::materialize_keyed(input, cfg);
    const profile::SecurityReport in_report = profile::analyze(input, cfg);

    std::mt19937_64 rng(rng_seed);
    kahan_sum sum_ie, sum_p1;
    for (int sidx = 0; sidx < seed_count; ++sidx) {
        ToeplitzHash h = random_hash(input.n, r, rng);
        std::vector<double> out = hashed_keyed(keyed, h);
        kahan_sum entropy;
        double p1 = 0.0;
        for (double p : out) {
            entropy.add(-xlog2x(p));
            if (p > p1) p1 = p;
        }
        sum_ie.add(double(r) - entropy.value());
        sum_p1.add(p1);
    }

    ExperimentRecord rec;
    rec.n = input.n;
    rec.r = r;
    rec.seeds_tested = seed_count;
    rec.rng_seed = rng_seed;
    rec.avg_mutual_info = sum_ie.value() / double(seed_count);
    rec.avg_p1 = sum_p1.value() / double(seed_count);
    rec.renyi2_input = in_report.renyi2_entropy;
    rec.bound_value = renyi_bound(rec.renyi2_input, r);
    rec.bound_exponent = rec.renyi2_input - double(r);
    double excess = rec.avg_p1 - std::exp2(-double(r));
    rec.achieved_exponent = excess > 0.0
                                ? -std::log2(excess)
                                : std::numeric_limits<double>::infinity();
    rec.exponent_gap = (rec.bound_exponent > 0.0 && excess > 0.0)
                           ? rec.achieved_exponent / rec.bound_exponent
                           : std::numeric_limits<double>::quiet_NaN();
    return rec;
}

} // namespace qsw::pamp
