#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsw {

/// Error type for all domain failures (bad arguments, violated invariants,
/// exceeded caps). The CLI maps these to exit code 1.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw error(msg);
}

/// Compensated (Kahan) accumulator. Long dense sums (entropies, trial
/// complexities over 2^24 entries) need the compensation to stay inside
/// the 1e-9 agreement tolerances.
struct kahan_sum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

/// p * log2(p) with the 0 * log 0 := 0 convention.
inline double xlog2x(double p) {
    return p > 0.0 ? p * std::log2(p) : 0.0;
}

/// Binary entropy in bits.
inline double binary_entropy(double q) {
    return -xlog2x(q) - xlog2x(1.0 - q);
}

/// log2(1 - 2^-n), computed without forming 2^n. Zero for n beyond
/// double range (the correction underflows).
inline double log2_one_minus_pow2neg(int n) {
    double t = std::exp2(-static_cast<double>(n));
    if (t <= 0.0) return 0.0;
    return std::log1p(-t) / M_LN2;
}

/// log2(2^n - 1) = n + log2(1 - 2^-n), stable for any n >= 1.
inline double log2_pow2_minus_one(int n) {
    return static_cast<double>(n) + log2_one_minus_pow2neg(n);
}

} // namespace qsw
