#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qsw/profile.hpp"
#include "qsw/util.hpp"

namespace qsw::worstcase {

using profile::ErrorProfile;

/// Spike family: probability `delta` on one key, uniform remainder. This is
/// the family that maximizes the guessing probability at fixed mutual
/// information (see maximize_p1_oracle for the empirical check).
inline ErrorProfile spike_profile(int n, double delta, const Config& cfg = {}) {
    ErrorProfile p{n, profile::SpikeUniform{delta}};
    profile::validate(p, cfg);
    return p;
}

/// Uniform over 2^k keys: the adversary holds n-k deterministic bits. The
/// best case for the users at mutual information n-k.
inline ErrorProfile uniform_subset_profile(int n, int k, const Config& cfg = {}) {
    ErrorProfile p{n, profile::UniformSubset{k}};
    profile::validate(p, cfg);
    return p;
}

/// Independent bit-by-bit knowledge with the same per-bit probability q.
inline ErrorProfile product_bernoulli_profile(int n, double q, const Config& cfg = {}) {
    require(q >= 0.5 && q <= 1.0,
            "product_bernoulli_profile: q must lie in [1/2, 1]");
    ErrorProfile p{n, profile::ProductBernoulli{std::vector<double>(n, q)}};
    profile::validate(p, cfg);
    return p;
}

/// Mutual information of the spike profile, I_E = n - H, rearranged as
/// n*delta - h(delta) - (1-delta)*log2(1-2^-n) so no significance is lost
/// to the n - H cancellation at large n.
inline double spike_mutual_info(int n, double delta) {
    return double(n) * delta - binary_entropy(delta) -
           (1.0 - delta) * log2_one_minus_pow2neg(n);
}

/// Invert delta -> I_E over the spike family by bisection. The map is
/// strictly increasing from 0 (uniform) to n (point mass); the result
/// satisfies |I_E(delta) - ie_target| <= 1e-6 * max(ie_target, 1e-12).
inline double solve_spike_for_mutual_info(int n, double ie_target,
                                          const Config& cfg = {}) {
    require(n >= 1 && n <= cfg.parametric_cap,
            "solve_spike_for_mutual_info: n out of range");
    require(ie_target >= 0.0 && ie_target <= double(n),
            "solve_spike_for_mutual_info: target mutual information must lie "
            "in [0, n]");
    const double rel_tol = 1e-6;
    double lo = std::exp2(-static_cast<double>(n));
    double hi = 1.0;
    if (ie_target == 0.0) return lo;
    if (ie_target == double(n)) return hi;
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        double ie = spike_mutual_info(n, mid);
        if (std::abs(ie - ie_target) <= rel_tol * std::max(ie_target, 1e-12))
            return mid;
        (ie < ie_target ? lo : hi) = mid;
    }
    double ie = spike_mutual_info(n, mid);
    require(std::abs(ie - ie_target) <= rel_tol * std::max(ie_target, 1e-12),
            "solve_spike_for_mutual_info: bisection failed to converge");
    return mid;
}

/// Result of the exhaustive worst-case search.
struct OracleResult {
    ErrorProfile best;       // dense profile attaining p1_max
    double p1_max = 0.0;
    double ie_reached = 0.0; // mutual information of `best`
    std::uint64_t candidates_checked = 0;
    std::uint64_t candidates_matched = 0;
};

namespace detail {

// Enumerate non-increasing integer compositions of `total` into `parts`
// parts (the ordered probability simplex at grid resolution) and keep the
// max-p1 profile whose mutual information lies within ie_tol of the target.
// First-found wins ties, which with the descending-lexicographic
// enumeration order makes the result deterministic.
inline void search_compositions(std::vector<int>& parts, std::size_t idx,
                                int remaining, int prev, int n, int grid,
                                double ie_target, double ie_tol,
                                OracleResult& out) {
    const std::size_t size = parts.size();
    if (idx + 1 == size) {
        if (remaining > prev) return;
        parts[idx] = remaining;
        ++out.candidates_checked;
        kahan_sum h;
        for (int c : parts)
            h.add(-xlog2x(double(c) / double(grid)));
        double ie = double(n) - h.value();
        if (std::abs(ie - ie_target) > ie_tol) return;
        ++out.candidates_matched;
        double p1 = double(parts[0]) / double(grid);
        if (p1 > out.p1_max) {
            out.p1_max = p1;
            out.ie_reached = ie;
            std::vector<double> probs(size);
            for (std::size_t i = 0; i < size; ++i)
                probs[i] = double(parts[i]) / double(grid);
            out.best.form = profile::Dense{std::move(probs)};
        }
        return;
    }
    // parts must stay non-increasing and still able to absorb the remainder
    int hi = std::min(prev, remaining);
    int lo = (remaining + int(size - idx) - 1) / int(size - idx);  // ceil
    for (int c = hi; c >= lo; --c) {
        parts[idx] = c;
        search_compositions(parts, idx + 1, remaining - c, c, n, grid,
                            ie_target, ie_tol, out);
    }
}

} // namespace detail

/// Exhaustively search the ordered probability simplex at grid resolution
/// 1/grid_steps for the profile maximizing p1 subject to
/// |I_E - ie_target| <= ie_tol. Only feasible for tiny n.
inline OracleResult maximize_p1_oracle(int n, double ie_target, int grid_steps,
                                       double ie_tol) {
    require(n >= 1 && n <= 3, "maximize_p1_oracle: n must be 1..3");
    require(grid_steps >= 1 && grid_steps <= 200,
            "maximize_p1_oracle: grid_steps must be 1..200");
    require(ie_target >= 0.0 && ie_target <= double(n),
            "maximize_p1_oracle: target out of [0, n]");
    require(ie_tol >= 0.0, "maximize_p1_oracle: negative tolerance");
    OracleResult out;
    out.best.n = n;
    out.p1_max = -1.0;
    std::vector<int> parts(std::size_t{1} << n, 0);
    detail::search_compositions(parts, 0, grid_steps, grid_steps, n,
                                grid_steps, ie_target, ie_tol, out);
    require(out.candidates_matched > 0,
            "maximize_p1_oracle: no grid point within tolerance of the "
            "target; enlarge ie_tol or grid_steps");
    return out;
}

} // namespace qsw::worstcase
