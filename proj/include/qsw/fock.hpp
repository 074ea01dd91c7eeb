#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qsw/config.hpp"
#include "qsw/util.hpp"

namespace qsw::fock {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Truncated two-mode Fock space. Single-mode states live on mode 1 with the
// second cutoff at zero, so every operation below works uniformly.
// ---------------------------------------------------------------------------

struct PureState {
    int cutoff1 = 0;
    int cutoff2 = 0;
    std::vector<cplx> amp;  // index m1 * (cutoff2+1) + m2

    int dim1() const { return cutoff1 + 1; }
    int dim2() const { return cutoff2 + 1; }
    int dim() const { return dim1() * dim2(); }
    std::size_t index(int m1, int m2) const {
        return std::size_t(m1) * dim2() + m2;
    }
    cplx& at(int m1, int m2) { return amp[index(m1, m2)]; }
    cplx at(int m1, int m2) const { return amp[index(m1, m2)]; }

    double norm_squared() const {
        kahan_sum s;
        for (const cplx& a : amp) s.add(std::norm(a));
        return s.value();
    }
};

struct DensityOp {
    int cutoff1 = 0;
    int cutoff2 = 0;
    std::vector<cplx> mat;  // row-major, dim() x dim()

    int dim1() const { return cutoff1 + 1; }
    int dim2() const { return cutoff2 + 1; }
    int dim() const { return dim1() * dim2(); }
    std::size_t basis_index(int m1, int m2) const {
        return std::size_t(m1) * dim2() + m2;
    }
    cplx& at(std::size_t row, std::size_t col) { return mat[row * dim() + col]; }
    cplx at(std::size_t row, std::size_t col) const { return mat[row * dim() + col]; }

    double trace_real() const {
        kahan_sum s;
        for (int i = 0; i < dim(); ++i) s.add(at(i, i).real());
        return s.value();
    }
};

// ---------------------------------------------------------------------------
// State constructors
// ---------------------------------------------------------------------------

/// (|n1,n2> + |n2,n1>)/sqrt(2). n1=N, n2=0 is the two-mode N00N state;
/// n2=N-1 is its parametric-process cousin.
struct NumberSuperposition {
    int n1 = 0;
    int n2 = 0;
};

struct Coherent {
    cplx alpha;
    int cutoff = 0;
};

struct SqueezedVacuum {
    double squeeze_r = 0.0;
    int cutoff = 0;
};

/// (|alpha> + parity |-alpha>) normalized; parity = +1 or -1.
struct Cat {
    cplx alpha;
    int parity = +1;
    int cutoff = 0;
};

using StateSpec = std::variant<NumberSuperposition, Coherent, SqueezedVacuum, Cat>;

namespace detail {

/// Coherent-state amplitudes on a single mode, no normalization fix-up:
/// a_m = exp(-|alpha|^2/2) alpha^m / sqrt(m!).
inline std::vector<cplx> coherent_amps(cplx alpha, int cutoff) {
    std::vector<cplx> a(std::size_t(cutoff) + 1);
    a[0] = std::exp(-0.5 * std::norm(alpha));
    for (int m = 1; m <= cutoff; ++m)
        a[m] = a[m - 1] * alpha / std::sqrt(double(m));
    return a;
}

inline void check_deficit_and_normalize(PureState& s, double deficit_tol,
                                        const std::string& what) {
    double n2 = s.norm_squared();
    require(1.0 - n2 <= deficit_tol,
            what + ": cutoff too small, truncated norm deficit " +
                std::to_string(1.0 - n2) + " exceeds tolerance");
    double scale = 1.0 / std::sqrt(n2);
    for (cplx& a : s.amp) a *= scale;
}

} // namespace detail

/// Smallest coherent-state cutoff whose truncated tail is below `deficit`.
/// The default target sits well under the norm-deficit tolerance so that
/// second moments (photon-number variance) are also accurate.
inline int coherent_cutoff(cplx alpha, double deficit = 1e-14) {
    double mean = std::norm(alpha);
    double term = std::exp(-mean);  // Poisson P(0)
    double tail = 1.0 - term;
    int m = 0;
    while (tail > deficit && m < 100000) {
        ++m;
        term *= mean / double(m);
        tail -= term;
    }
    return m + 2;
}

inline int squeezed_cutoff(double squeeze_r, double deficit = 1e-14) {
    double th = std::tanh(std::abs(squeeze_r));
    if (th == 0.0) return 0;
    double prob = 1.0 / std::cosh(std::abs(squeeze_r));  // |a_0|^2 = sech r
    double tail = 1.0 - prob;
    int k = 0;
    while (tail > deficit && k < 100000) {
        ++k;
        // |a_k|^2 / |a_{k-1}|^2 = th^2 (2k-1) / (2k)
        prob *= th * th * double(2 * k - 1) / double(2 * k);
        tail -= prob;
    }
    return 2 * k + 2;
}

inline PureState make_state(const StateSpec& spec, const Config& cfg = {}) {
    PureState s;
    if (const auto* ns = std::get_if<NumberSuperposition>(&spec)) {
        require(ns->n1 != ns->n2,
                "make_state: the two photon numbers must differ");
        require(ns->n1 >= 0 && ns->n2 >= 0, "make_state: negative photon number");
        int c = std::max(ns->n1, ns->n2);
        s.cutoff1 = s.cutoff2 = c;
        require(s.dim() <= cfg.joint_dim_cap,
                "make_state: joint dimension exceeds cap");
        s.amp.assign(std::size_t(s.dim()), cplx(0.0));
        const double half = std::sqrt(0.5);
        s.at(ns->n1, ns->n2) = half;
        s.at(ns->n2, ns->n1) = half;
        detail::check_deficit_and_normalize(s, cfg.norm_deficit_tol,
                                            "number superposition");
        return s;
    }
    if (const auto* co = std::get_if<Coherent>(&spec)) {
        require(co->cutoff >= 0, "make_state: negative cutoff");
        s.cutoff1 = co->cutoff;
        s.cutoff2 = 0;
        require(s.dim() <= cfg.joint_dim_cap,
                "make_state: joint dimension exceeds cap");
        s.amp = detail::coherent_amps(co->alpha, co->cutoff);
        detail::check_deficit_and_normalize(s, cfg.norm_deficit_tol,
                                            "coherent state");
        return s;
    }
    if (const auto* sq = std::get_if<SqueezedVacuum>(&spec)) {
        require(sq->cutoff >= 0, "make_state: negative cutoff");
        s.cutoff1 = sq->cutoff;
        s.cutoff2 = 0;
        require(s.dim() <= cfg.joint_dim_cap,
                "make_state: joint dimension exceeds cap");
        s.amp.assign(std::size_t(s.dim()), cplx(0.0));
        // a_{2k} = sqrt(sech r) (-tanh r)^k sqrt((2k)!) / (2^k k!), zero on odd m.
        const double th = std::tanh(sq->squeeze_r);
        double coeff = std::sqrt(1.0 / std::cosh(sq->squeeze_r));
        s.amp[0] = coeff;
        for (int k = 1; 2 * k <= sq->cutoff; ++k) {
            // ratio a_{2k} / a_{2(k-1)} = -tanh r * sqrt((2k-1)(2k)) / (2k)
            coeff *= -th * std::sqrt(double(2 * k - 1) * double(2 * k)) / double(2 * k);
            s.amp[std::size_t(2 * k)] = coeff;
        }
        detail::check_deficit_and_normalize(s, cfg.norm_deficit_tol,
                                            "squeezed vacuum");
        return s;
    }
    const auto& cat = std::get<Cat>(spec);
    require(cat.parity == 1 || cat.parity == -1,
            "make_state: cat parity must be +1 or -1");
    require(cat.cutoff >= 0, "make_state: negative cutoff");
    s.cutoff1 = cat.cutoff;
    s.cutoff2 = 0;
    require(s.dim() <= cfg.joint_dim_cap, "make_state: joint dimension exceeds cap");
    {
        auto plus = detail::coherent_amps(cat.alpha, cat.cutoff);
        auto minus = detail::coherent_amps(-cat.alpha, cat.cutoff);
        // Check the underlying coherent truncation before superposing, since
        // the cat norm involves the overlap and hides tail loss.
        kahan_sum coh_norm;
        for (const cplx& a : plus) coh_norm.add(std::norm(a));
        require(1.0 - coh_norm.value() <= cfg.norm_deficit_tol,
                "cat state: cutoff too small for the coherent components");
        s.amp.resize(plus.size());
        for (std::size_t i = 0; i < plus.size(); ++i)
            s.amp[i] = plus[i] + double(cat.parity) * minus[i];
        double n2 = s.norm_squared();
        require(n2 > 1e-12, "cat state: superposition has vanishing norm");
        double scale = 1.0 / std::sqrt(n2);
        for (cplx& a : s.amp) a *= scale;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Density operators
// ---------------------------------------------------------------------------

inline DensityOp projector(const PureState& s) {
    DensityOp rho;
    rho.cutoff1 = s.cutoff1;
    rho.cutoff2 = s.cutoff2;
    rho.mat.assign(std::size_t(s.dim()) * s.dim(), cplx(0.0));
    for (int i = 0; i < s.dim(); ++i)
        for (int j = 0; j < s.dim(); ++j)
            rho.mat[std::size_t(i) * s.dim() + j] = s.amp[i] * std::conj(s.amp[j]);
    return rho;
}

/// Combine pure components into a density operator. coherent=false takes
/// the classical mixture sum w_i |psi_i><psi_i|; coherent=true superposes
/// the amplitudes with weights sqrt(w_i) and renormalizes, so a single
/// unit-weight component is exactly the projector.
inline DensityOp to_density(const std::vector<std::pair<PureState, double>>& components,
                            bool coherent, const Config& cfg = {}) {
    require(!components.empty(), "to_density: no components");
    const PureState& first = components.front().first;
    kahan_sum wsum;
    for (const auto& [st, w] : components) {
        require(w >= 0.0, "to_density: negative weight");
        require(st.cutoff1 == first.cutoff1 && st.cutoff2 == first.cutoff2,
                "to_density: component cutoffs must match");
        wsum.add(w);
    }
    require(std::abs(wsum.value() - 1.0) <= 1e-9,
            "to_density: weights must sum to 1 within 1e-9");
    (void)cfg;

    if (coherent) {
        PureState sum = first;
        sum.amp.assign(sum.amp.size(), cplx(0.0));
        for (const auto& [st, w] : components) {
            double c = std::sqrt(w);
            for (std::size_t i = 0; i < sum.amp.size(); ++i)
                sum.amp[i] += c * st.amp[i];
        }
        double n2 = sum.norm_squared();
        require(n2 > 1e-12, "to_density: coherent combination has vanishing norm");
        double scale = 1.0 / std::sqrt(n2);
        for (cplx& a : sum.amp) a *= scale;
        return projector(sum);
    }

    DensityOp rho;
    rho.cutoff1 = first.cutoff1;
    rho.cutoff2 = first.cutoff2;
    rho.mat.assign(std::size_t(first.dim()) * first.dim(), cplx(0.0));
    for (const auto& [st, w] : components) {
        if (w == 0.0) continue;
        for (int i = 0; i < st.dim(); ++i)
            for (int j = 0; j < st.dim(); ++j)
                rho.mat[std::size_t(i) * st.dim() + j] +=
                    w * st.amp[i] * std::conj(st.amp[j]);
    }
    return rho;
}

/// Copy of rho with the coherence between basis states (n1,n2) and (n2,n1)
/// removed. Used to build the dephased counterpart of a superposition with
/// a diagonal that matches the coherent matrix entry for entry.
inline DensityOp dephase_pair(const DensityOp& rho, int n1, int n2) {
    DensityOp out = rho;
    std::size_t i = rho.basis_index(n1, n2);
    std::size_t j = rho.basis_index(n2, n1);
    out.at(i, j) = 0.0;
    out.at(j, i) = 0.0;
    return out;
}

} // namespace qsw::fock
