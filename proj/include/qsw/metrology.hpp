#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qsw/fock.hpp"
#include "qsw/jacobi.hpp"
#include "qsw/loss.hpp"
#include "qsw/util.hpp"

namespace qsw::fock {

/// Tr|rho - sigma|: sum of absolute eigenvalues of the Hermitian difference.
/// Note this is the plain trace norm, without any extra factor of 2.
inline double trace_distance(const DensityOp& rho, const DensityOp& sigma,
                             const Config& cfg = {}) {
    require(rho.cutoff1 == sigma.cutoff1 && rho.cutoff2 == sigma.cutoff2,
            "trace_distance: operators live on different spaces");
    std::vector<cplx> diff(rho.mat.size());
    for (std::size_t i = 0; i < diff.size(); ++i)
        diff[i] = rho.mat[i] - sigma.mat[i];
    linalg::EigenSystem es = linalg::hermitian_eigensystem(std::move(diff),
                                                           rho.dim(), cfg);
    kahan_sum s;
    for (double v : es.values) s.add(std::abs(v));
    return s.value();
}

// ---------------------------------------------------------------------------
// Phase-estimation figures of merit
// ---------------------------------------------------------------------------

/// Phase-imprinting generators, all diagonal in the Fock basis.
enum class Generator { number_mode1, number_mode2, relative_number, total_number };

inline double generator_value(Generator g, int m1, int m2) {
    switch (g) {
        case Generator::number_mode1: return double(m1);
        case Generator::number_mode2: return double(m2);
        case Generator::relative_number: return 0.5 * (double(m1) - double(m2));
        case Generator::total_number: return double(m1) + double(m2);
    }
    throw error("generator_value: unknown generator");
}

struct QfiRecord {
    double qfi = 0.0;
    double phase_resolution = 0.0;  // 1/sqrt(qfi); +inf when qfi == 0
};

/// Quantum Fisher information of a pure state under a diagonal generator:
/// 4 (<G^2> - <G>^2).
inline QfiRecord qfi(const PureState& state, Generator g) {
    require(std::abs(state.norm_squared() - 1.0) <= 1e-10,
            "qfi: state is not normalized");
    double mean = 0.0, second = 0.0;
    for (int m1 = 0; m1 <= state.cutoff1; ++m1)
        for (int m2 = 0; m2 <= state.cutoff2; ++m2) {
            double p = std::norm(state.at(m1, m2));
            if (p == 0.0) continue;
            double gv = generator_value(g, m1, m2);
            mean += p * gv;
            second += p * gv * gv;
        }
    QfiRecord rec;
    rec.qfi = 4.0 * (second - mean * mean);
    if (rec.qfi < 0.0 && rec.qfi > -1e-12) rec.qfi = 0.0;  // rounding at variance zero
    rec.phase_resolution = rec.qfi > 0.0
                               ? 1.0 / std::sqrt(rec.qfi)
                               : std::numeric_limits<double>::infinity();
    return rec;
}

// ---------------------------------------------------------------------------
// Decoherence of number superpositions under loss
// ---------------------------------------------------------------------------

struct DecoherenceRow {
    double eta = 0.0;
    double trace_distance = 0.0;
    double eq3_prediction = 0.0;  // 2 eta^(n1+n2), the reference curve
    double ratio = 0.0;           // measured / prediction; NaN at eta = 0
};

/// Distance between the lossy coherent superposition of |n1,n2> and |n2,n1>
/// and its lossy dephased counterpart, swept over transmittances. The
/// dephased state is built from the same matrix with the cross terms zeroed,
/// so both channels see identical diagonals and the difference isolates the
/// surviving coherence.
inline std::vector<DecoherenceRow> decoherence_curve(int n1, int n2,
                                                     const std::vector<double>& etas,
                                                     const Config& cfg = {}) {
    require(n1 != n2, "decoherence_curve: photon numbers must differ");
    PureState psi = make_state(NumberSuperposition{n1, n2}, cfg);
    DensityOp rho = projector(psi);
    DensityOp rho_prime = dephase_pair(rho, n1, n2);

    std::vector<DecoherenceRow> rows;
    rows.reserve(etas.size());
    for (double eta : etas) {
        require(eta >= 0.0 && eta <= 1.0,
                "decoherence_curve: eta grid entries must lie in [0, 1]");
        LossChannel loss{eta, LossMode::both};
        DensityOp a = apply_loss(rho, loss);
        DensityOp b = apply_loss(rho_prime, loss);
        DecoherenceRow row;
        row.eta = eta;
        row.trace_distance = trace_distance(a, b, cfg);
        row.eq3_prediction = 2.0 * std::pow(eta, n1 + n2);
        row.ratio = row.eq3_prediction != 0.0
                        ? row.trace_distance / row.eq3_prediction
                        : std::numeric_limits<double>::quiet_NaN();
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Cat-state decoherence
// ---------------------------------------------------------------------------

struct CatRecord {
    double distance = 0.0;          // numeric, full Kraus sum + eigensolver
    double coherence_factor = 0.0;  // exp(-2 (1-eta) |alpha|^2)
    double analytic_distance = 0.0; // closed form, see cat_analytic_distance
};

/// Closed-form distance between the lossy even cat and the lossy incoherent
/// mixture of |alpha> and |-alpha>. Diagonalizing the rank-2 difference in
/// the symmetric/antisymmetric combinations of the attenuated components
/// gives Tr|rho - rho'| = (c - s*s0) / (1 + s0) with
///   s0 = <alpha|-alpha>        = exp(-2 |alpha|^2)
///   s  = <beta|-beta>          = exp(-2 eta |alpha|^2),  beta = sqrt(eta) alpha
///   c  = cross-term damping    = exp(-2 (1-eta) |alpha|^2).
inline double cat_analytic_distance(cplx alpha, double eta) {
    double a2 = std::norm(alpha);
    double s0 = std::exp(-2.0 * a2);
    double s = std::exp(-2.0 * eta * a2);
    double c = std::exp(-2.0 * (1.0 - eta) * a2);
    return (c - s * s0) / (1.0 + s0);
}

inline CatRecord cat_decoherence(cplx alpha, double eta, const Config& cfg = {}) {
    require(eta >= 0.0 && eta <= 1.0, "cat_decoherence: eta must lie in [0, 1]");
    int cutoff = coherent_cutoff(alpha);
    PureState cat = make_state(Cat{alpha, +1, cutoff}, cfg);
    PureState plus = make_state(Coherent{alpha, cutoff}, cfg);
    PureState minus = make_state(Coherent{-alpha, cutoff}, cfg);
    DensityOp rho = projector(cat);
    DensityOp rho_prime = to_density({{plus, 0.5}, {minus, 0.5}}, false, cfg);
    LossChannel loss{eta, LossMode::mode1};
    DensityOp a = apply_loss(rho, loss);
    DensityOp b = apply_loss(rho_prime, loss);
    CatRecord rec;
    rec.distance = trace_distance(a, b, cfg);
    rec.coherence_factor = std::exp(-2.0 * (1.0 - eta) * std::norm(alpha));
    rec.analytic_distance = cat_analytic_distance(alpha, eta);
    return rec;
}

} // namespace qsw::fock
