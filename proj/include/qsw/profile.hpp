#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qsw/config.hpp"
#include "qsw/util.hpp"

namespace qsw::profile {

// ---------------------------------------------------------------------------
// Error profile: the adversary's probability distribution over the 2^n keys,
// either materialized (sorted descending) or in one of three parametric
// families that stay exact at any key length.
// ---------------------------------------------------------------------------

/// Dense distribution over all 2^n keys, sorted non-increasing. The vector
/// index is the key label; sorting canonicalizes labels by likelihood rank.
struct Dense {
    std::vector<double> probabilities;
};

/// Point mass `delta` on one key, remaining mass uniform over the other
/// 2^n - 1 keys.
struct SpikeUniform {
    double delta = 0.0;
};

/// Uniform over the first 2^k keys: the adversary knows n-k bits
/// deterministically and nothing else.
struct UniformSubset {
    int k = 0;
};

/// Independent per-bit knowledge: q[i] is the probability of guessing bit i
/// correctly, oriented so q[i] >= 1/2. Bit i of the key label is the LSB-first
/// i-th bit.
struct ProductBernoulli {
    std::vector<double> q;
};

struct ErrorProfile {
    int n = 0;
    std::variant<Dense, SpikeUniform, UniformSubset, ProductBernoulli> form;

    bool is_dense() const { return std::holds_alternative<Dense>(form); }
};

/// Every one-number security measure of a profile. p1 may underflow to zero
/// for very long keys; min_entropy carries the same information in the log
/// domain and is always finite. trial_complexity and kolmogorov_distance are
/// absent when they would require materializing a profile above the dense
/// cap; log2_trial_complexity stays finite even when the linear value
/// overflows.
struct SecurityReport {
    int n = 0;
    double p1 = 0.0;
    double min_entropy = 0.0;      // -log2 p1
    double shannon_entropy = 0.0;  // H, bits
    double mutual_info = 0.0;      // n - H
    double renyi2_entropy = 0.0;   // -log2 sum p_i^2
    std::optional<double> trial_complexity;
    std::optional<double> log2_trial_complexity;
    std::optional<double> kolmogorov_distance;  // (1/2) sum |p_i - 2^-n|
};

/// Result of testing the guessing bounds implied by p1 <= 2^-l.
struct BoundCheck {
    int l = 0;
    bool applicable = false;      // p1 <= 2^-l, i.e. min_entropy >= l
    double trial_bound = 0.0;     // (2^l + 1) / 2
    double trial_slack = 0.0;     // C_t - trial_bound
    bool trial_bound_holds = false;
    double info_bound = 0.0;      // n - l
    double info_slack = 0.0;      // (n - l) - I_E
    bool info_bound_holds = false;
    double fresh_key_bits = 0.0;  // min-entropy: the usable fresh-key length
};

// ---------------------------------------------------------------------------
// Construction and validation
// ---------------------------------------------------------------------------

inline void validate(const ErrorProfile& p, const Config& cfg = {}) {
    require(p.n >= 1, "profile: key length n must be >= 1");
    if (const auto* d = std::get_if<Dense>(&p.form)) {
        require(p.n <= cfg.dense_cap,
                "profile: dense form exceeds the dense cap of " +
                    std::to_string(cfg.dense_cap) + " bits");
        const auto& v = d->probabilities;
        require(v.size() == (std::size_t{1} << p.n),
                "profile: dense vector length must be 2^n");
        kahan_sum total;
        for (std::size_t i = 0; i < v.size(); ++i) {
            require(v[i] >= 0.0, "profile: negative probability entry");
            if (i > 0)
                require(v[i] <= v[i - 1],
                        "profile: dense probabilities must be non-increasing");
            total.add(v[i]);
        }
        require(std::abs(total.value() - 1.0) <= 1e-9,
                "profile: probabilities must sum to 1 within 1e-9 (got " +
                    std::to_string(total.value()) + ")");
    } else if (const auto* s = std::get_if<SpikeUniform>(&p.form)) {
        require(p.n <= cfg.parametric_cap, "profile: n exceeds parametric cap");
        double floor = std::exp2(-static_cast<double>(p.n));
        require(s->delta >= floor && s->delta <= 1.0,
                "profile: spike delta must lie in [2^-n, 1]");
    } else if (const auto* u = std::get_if<UniformSubset>(&p.form)) {
        require(p.n <= cfg.parametric_cap, "profile: n exceeds parametric cap");
        require(u->k >= 0 && u->k <= p.n,
                "profile: uniform subset k must lie in [0, n]");
    } else if (const auto* b = std::get_if<ProductBernoulli>(&p.form)) {
        require(p.n <= cfg.parametric_cap, "profile: n exceeds parametric cap");
        require(b->q.size() == static_cast<std::size_t>(p.n),
                "profile: per-bit vector q must have length n");
        for (double qi : b->q)
            require(qi >= 0.5 && qi <= 1.0,
                    "profile: per-bit probabilities must lie in [1/2, 1]");
    }
}

/// Normalize non-negative weights into a canonical Dense profile.
inline ErrorProfile normalize_and_sort(std::vector<double> weights, int n,
                                       const Config& cfg = {}) {
    require(n >= 1, "normalize_and_sort: n must be >= 1");
    require(n <= cfg.dense_cap,
            "normalize_and_sort: n exceeds the dense cap of " +
                std::to_string(cfg.dense_cap) + " bits");
    require(weights.size() == (std::size_t{1} << n),
            "normalize_and_sort: expected 2^n weights, got " +
                std::to_string(weights.size()));
    kahan_sum total;
    for (double w : weights) {
        require(w >= 0.0, "normalize_and_sort: negative weight");
        total.add(w);
    }
    require(total.value() > 0.0, "normalize_and_sort: all weights are zero");
    for (double& w : weights) w /= total.value();
    std::sort(weights.begin(), weights.end(), std::greater<double>());
    ErrorProfile p{n, Dense{std::move(weights)}};
    validate(p, cfg);
    return p;
}

// ---------------------------------------------------------------------------
// Materialization
// ---------------------------------------------------------------------------

/// Expand a profile into a key-indexed probability vector (NOT sorted):
/// entry x is the probability of the key whose label is the integer x.
/// For Dense input the labels are already likelihood ranks.
inline std::vector<double> materialize_keyed(const ErrorProfile& p,
                                             const Config& cfg = {}) {
    validate(p, cfg);
    require(p.n <= cfg.dense_cap,
            "materialize: n exceeds the dense cap of " +
                std::to_string(cfg.dense_cap) + " bits");
    const std::size_t size = std::size_t{1} << p.n;
    if (const auto* d = std::get_if<Dense>(&p.form)) return d->probabilities;
    if (const auto* s = std::get_if<SpikeUniform>(&p.form)) {
        std::vector<double> v(size, size > 1 ? (1.0 - s->delta) / double(size - 1) : 0.0);
        v[0] = s->delta;
        return v;
    }
    if (const auto* u = std::get_if<UniformSubset>(&p.form)) {
        std::vector<double> v(size, 0.0);
        const std::size_t support = std::size_t{1} << u->k;
        for (std::size_t i = 0; i < support; ++i) v[i] = std::exp2(-double(u->k));
        return v;
    }
    const auto& q = std::get<ProductBernoulli>(p.form).q;
    std::vector<double> v(size, 1.0);
    for (std::size_t x = 0; x < size; ++x)
        for (int i = 0; i < p.n; ++i)
            v[x] *= ((x >> i) & 1u) ? (1.0 - q[i]) : q[i];
    return v;
}

/// Materialize and canonicalize into the Dense form.
inline ErrorProfile materialize_dense(const ErrorProfile& p, const Config& cfg = {}) {
    std::vector<double> v = materialize_keyed(p, cfg);
    std::sort(v.begin(), v.end(), std::greater<double>());
    return ErrorProfile{p.n, Dense{std::move(v)}};
}

// ---------------------------------------------------------------------------
// Measures
// ---------------------------------------------------------------------------

namespace detail {

inline SecurityReport analyze_dense(int n, const std::vector<double>& v) {
    SecurityReport r;
    r.n = n;
    r.p1 = v[0];
    r.min_entropy = -std::log2(r.p1);
    const double uniform = std::exp2(-static_cast<double>(n));
    kahan_sum h, ct, p2, dk;
    for (std::size_t i = 0; i < v.size(); ++i) {
        h.add(-xlog2x(v[i]));
        ct.add(double(i + 1) * v[i]);
        p2.add(v[i] * v[i]);
        dk.add(std::abs(v[i] - uniform));
    }
    r.shannon_entropy = h.value();
    r.mutual_info = double(n) - r.shannon_entropy;
    r.renyi2_entropy = -std::log2(p2.value());
    r.trial_complexity = ct.value();
    r.log2_trial_complexity = std::log2(ct.value());
    r.kolmogorov_distance = 0.5 * dk.value();
    return r;
}

inline SecurityReport analyze_spike(int n, double delta) {
    SecurityReport r;
    r.n = n;
    r.p1 = delta;
    r.min_entropy = -std::log2(delta);
    const double log2_m1 = log2_pow2_minus_one(n);  // log2(2^n - 1)
    r.shannon_entropy = binary_entropy(delta) + (1.0 - delta) * log2_m1;
    r.mutual_info = double(n) - r.shannon_entropy;
    // sum p^2 = delta^2 + (1-delta)^2 / (2^n - 1); the second term may
    // underflow for huge n, which is the correct limit.
    const double rest = (1.0 - delta) * (1.0 - delta) * std::exp2(-log2_m1);
    r.renyi2_entropy = -std::log2(delta * delta + rest);
    // sum_i i p_i = delta + (1-delta) (M+2)/2 after the algebraic
    // simplification (M(M+1)/2 - 1)/(M-1) = (M+2)/2, M = 2^n.
    const double m = std::exp2(static_cast<double>(n));
    r.trial_complexity = delta + (1.0 - delta) * (m + 2.0) / 2.0;
    if (std::isfinite(*r.trial_complexity) && *r.trial_complexity > 0)
        r.log2_trial_complexity = std::log2(*r.trial_complexity);
    else if (delta < 1.0)
        r.log2_trial_complexity = double(n) - 1.0 + std::log2(1.0 - delta);
    r.kolmogorov_distance = delta - std::exp2(-static_cast<double>(n));
    return r;
}

inline SecurityReport analyze_uniform_subset(int n, int k) {
    SecurityReport r;
    r.n = n;
    r.p1 = std::exp2(-static_cast<double>(k));
    r.min_entropy = static_cast<double>(k);
    r.shannon_entropy = static_cast<double>(k);
    r.mutual_info = static_cast<double>(n - k);
    r.renyi2_entropy = static_cast<double>(k);
    const double two_k = std::exp2(static_cast<double>(k));
    r.trial_complexity = (two_k + 1.0) / 2.0;
    // log2((2^k + 1)/2) = k - 1 + log2(1 + 2^-k), stable at any k.
    r.log2_trial_complexity =
        double(k) - 1.0 + std::log1p(std::exp2(-double(k))) / M_LN2;
    r.kolmogorov_distance = 1.0 - std::exp2(static_cast<double>(k - n));
    return r;
}

inline SecurityReport analyze_product(int n, const std::vector<double>& q,
                                      const Config& cfg) {
    SecurityReport r;
    r.n = n;
    kahan_sum log2_p1, h, log2_col;
    for (double qi : q) {
        log2_p1.add(std::log2(qi));
        h.add(binary_entropy(qi));
        log2_col.add(std::log2(qi * qi + (1.0 - qi) * (1.0 - qi)));
    }
    r.min_entropy = -log2_p1.value();
    r.p1 = std::exp2(log2_p1.value());
    r.shannon_entropy = h.value();
    r.mutual_info = double(n) - r.shannon_entropy;
    r.renyi2_entropy = -log2_col.value();
    if (n <= cfg.dense_cap) {
        std::vector<double> v =
            materialize_keyed(ErrorProfile{n, ProductBernoulli{q}}, cfg);
        std::sort(v.begin(), v.end(), std::greater<double>());
        const double uniform = std::exp2(-static_cast<double>(n));
        kahan_sum ct, dk;
        for (std::size_t i = 0; i < v.size(); ++i) {
            ct.add(double(i + 1) * v[i]);
            dk.add(std::abs(v[i] - uniform));
        }
        r.trial_complexity = ct.value();
        r.log2_trial_complexity = std::log2(ct.value());
        r.kolmogorov_distance = 0.5 * dk.value();
    }
    // Above the dense cap the order statistics have no closed form here;
    // the fields stay empty rather than silently approximated.
    return r;
}

} // namespace detail

/// Compute every security measure of a profile. Dense profiles are summed
/// directly; parametric families use their closed forms.
inline SecurityReport analyze(const ErrorProfile& p, const Config& cfg = {}) {
    validate(p, cfg);
    if (const auto* d = std::get_if<Dense>(&p.form))
        return detail::analyze_dense(p.n, d->probabilities);
    if (const auto* s = std::get_if<SpikeUniform>(&p.form))
        return detail::analyze_spike(p.n, s->delta);
    if (const auto* u = std::get_if<UniformSubset>(&p.form))
        return detail::analyze_uniform_subset(p.n, u->k);
    return detail::analyze_product(p.n, std::get<ProductBernoulli>(p.form).q, cfg);
}

/// Test the inequalities implied by p1 <= 2^-l: C_t >= (2^l + 1)/2 and
/// I_E <= n - l. When the premise fails the result is marked not
/// applicable rather than reported as a violation.
inline BoundCheck check_bounds(const SecurityReport& report, int l) {
    require(l >= 0, "check_bounds: l must be >= 0");
    require(report.trial_complexity.has_value(),
            "check_bounds: report has no trial complexity (profile above the "
            "dense cap)");
    BoundCheck c;
    c.l = l;
    c.fresh_key_bits = report.min_entropy;
    // Premise p1 <= 2^-l, tested in the log domain so huge n stays exact.
    c.applicable = report.min_entropy >= static_cast<double>(l);
    c.trial_bound = (std::exp2(static_cast<double>(l)) + 1.0) / 2.0;
    c.trial_slack = *report.trial_complexity - c.trial_bound;
    c.trial_bound_holds = *report.trial_complexity >= c.trial_bound;
    c.info_bound = static_cast<double>(report.n - l);
    c.info_slack = c.info_bound - report.mutual_info;
    c.info_bound_holds = report.mutual_info <= c.info_bound + 1e-12;
    return c;
}

} // namespace qsw::profile
