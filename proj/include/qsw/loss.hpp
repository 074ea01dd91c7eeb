#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qsw/fock.hpp"
#include "qsw/util.hpp"

namespace qsw::fock {

enum class LossMode { mode1, mode2, both };

/// Linear photon loss with transmittance eta, applied to one mode or both.
/// Kraus elements: <m-k| A_k |m> = sqrt(C(m,k) eta^(m-k) (1-eta)^k), which
/// resolve the identity exactly on the truncated space because loss only
/// lowers photon number.
struct LossChannel {
    double eta = 1.0;
    LossMode mode = LossMode::both;
};

namespace detail {

inline std::vector<std::vector<double>> binomial_table(int max_n) {
    std::vector<std::vector<double>> c(std::size_t(max_n) + 1);
    for (int m = 0; m <= max_n; ++m) {
        c[m].assign(std::size_t(m) + 1, 1.0);
        for (int k = 1; k < m; ++k) c[m][k] = c[m - 1][k - 1] + c[m - 1][k];
    }
    return c;
}

/// Kraus coefficient table: kraus[k][m] = <m-k| A_k |m> for m >= k.
inline std::vector<std::vector<double>> kraus_coeffs(int cutoff, double eta) {
    auto binom = binomial_table(cutoff);
    std::vector<std::vector<double>> kc(std::size_t(cutoff) + 1);
    for (int k = 0; k <= cutoff; ++k) {
        kc[k].assign(std::size_t(cutoff) + 1, 0.0);
        for (int m = k; m <= cutoff; ++m)
            kc[k][m] = std::sqrt(binom[m][k] * std::pow(eta, m - k) *
                                 std::pow(1.0 - eta, k));
    }
    return kc;
}

// Kraus sum over one mode. `stride` is the index step of that mode in the
// flattened joint basis and `extent` the number of joint indices per photon
// number of the other mode.
inline DensityOp apply_loss_single_mode(const DensityOp& rho, double eta,
                                        bool on_mode1) {
    const int d1 = rho.dim1(), d2 = rho.dim2(), d = rho.dim();
    const int cutoff = on_mode1 ? rho.cutoff1 : rho.cutoff2;
    auto kc = kraus_coeffs(cutoff, eta);

    DensityOp out;
    out.cutoff1 = rho.cutoff1;
    out.cutoff2 = rho.cutoff2;
    out.mat.assign(std::size_t(d) * d, cplx(0.0));

    auto idx = [&](int m1, int m2) { return std::size_t(m1) * d2 + m2; };

    for (int k = 0; k <= cutoff; ++k) {
        const auto& kk = kc[k];
        if (on_mode1) {
            for (int a = 0; a + k < d1; ++a)
                for (int c = 0; c + k < d1; ++c) {
                    double w = kk[a + k] * kk[c + k];
                    if (w == 0.0) continue;
                    for (int b = 0; b < d2; ++b)
                        for (int e = 0; e < d2; ++e)
                            out.mat[idx(a, b) * d + idx(c, e)] +=
                                w * rho.mat[idx(a + k, b) * d + idx(c + k, e)];
                }
        } else {
            for (int b = 0; b + k < d2; ++b)
                for (int e = 0; e + k < d2; ++e) {
                    double w = kk[b + k] * kk[e + k];
                    if (w == 0.0) continue;
                    for (int a = 0; a < d1; ++a)
                        for (int c = 0; c < d1; ++c)
                            out.mat[idx(a, b) * d + idx(c, e)] +=
                                w * rho.mat[idx(a, b + k) * d + idx(c, e + k)];
                }
        }
    }
    return out;
}

} // namespace detail

inline DensityOp apply_loss(const DensityOp& rho, const LossChannel& channel) {
    require(channel.eta >= 0.0 && channel.eta <= 1.0,
            "apply_loss: transmittance must lie in [0, 1]");
    switch (channel.mode) {
        case LossMode::mode1:
            return detail::apply_loss_single_mode(rho, channel.eta, true);
        case LossMode::mode2:
            return detail::apply_loss_single_mode(rho, channel.eta, false);
        case LossMode::both: {
            DensityOp tmp = detail::apply_loss_single_mode(rho, channel.eta, true);
            return detail::apply_loss_single_mode(tmp, channel.eta, false);
        }
    }
    throw error("apply_loss: unknown mode");
}

} // namespace qsw::fock
