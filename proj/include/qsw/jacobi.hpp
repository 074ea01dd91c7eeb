#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "qsw/config.hpp"
#include "qsw/util.hpp"

namespace qsw::linalg {

using cplx = std::complex<double>;

struct EigenSystem {
    int dim = 0;
    std::vector<double> values;  // ascending
    std::vector<cplx> vectors;   // row-major; column j is the eigenvector of values[j]
    int sweeps = 0;
    double off_residual = 0.0;   // final sqrt(sum_{i!=j} |a_ij|^2)

    cplx vec(int i, int j) const { return vectors[std::size_t(i) * dim + j]; }
};

namespace detail {

inline double off_norm(const std::vector<cplx>& a, int dim) {
    double s = 0.0;
    for (int p = 0; p < dim; ++p)
        for (int q = p + 1; q < dim; ++q)
            s += std::norm(a[std::size_t(p) * dim + q]);
    return std::sqrt(2.0 * s);
}

} // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations with
/// threshold skipping. Each rotation annihilates one off-diagonal pair with
/// a complex plane rotation; convergence is declared when the off-diagonal
/// Frobenius norm falls below tol relative to the input scale. Sparse
/// inputs converge in one or two sweeps because untouched zero entries are
/// skipped outright.
inline EigenSystem hermitian_eigensystem(std::vector<cplx> a, int dim,
                                         const Config& cfg = {}) {
    require(dim >= 1, "eigensystem: dimension must be positive");
    require(a.size() == std::size_t(dim) * dim, "eigensystem: matrix size mismatch");
    auto at = [&](int i, int j) -> cplx& { return a[std::size_t(i) * dim + j]; };

    EigenSystem es;
    es.dim = dim;
    es.vectors.assign(std::size_t(dim) * dim, cplx(0.0));
    for (int i = 0; i < dim; ++i) es.vectors[std::size_t(i) * dim + i] = 1.0;
    auto vat = [&](int i, int j) -> cplx& { return es.vectors[std::size_t(i) * dim + j]; };

    double scale = 0.0;
    for (const cplx& z : a) scale += std::norm(z);
    scale = std::sqrt(scale);
    es.values.assign(dim, 0.0);
    if (scale == 0.0) return es;  // zero matrix

    const double target = cfg.jacobi_tol * scale;
    // Entries below this play no role at the requested residual; skipping
    // them keeps sparse matrices O(dim^2) per sweep.
    const double skip = target / (double(dim) * 16.0);

    int sweep = 0;
    for (; sweep < cfg.jacobi_max_sweeps; ++sweep) {
        double off = detail::off_norm(a, dim);
        if (off <= target) break;
        for (int p = 0; p < dim; ++p) {
            for (int q = p + 1; q < dim; ++q) {
                cplx apq = at(p, q);
                double m = std::abs(apq);
                if (m <= skip) continue;
                double app = at(p, p).real();
                double aqq = at(q, q).real();
                double tau = (aqq - app) / (2.0 * m);
                double t = (tau >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                cplx phase = apq / m;           // e^{i phi}
                cplx sp = s * phase;            // s e^{i phi}
                cplx spc = std::conj(sp);       // s e^{-i phi}

                for (int i = 0; i < dim; ++i) {
                    if (i == p || i == q) continue;
                    cplx aip = at(i, p), aiq = at(i, q);
                    at(i, p) = c * aip - spc * aiq;
                    at(i, q) = sp * aip + c * aiq;
                    at(p, i) = std::conj(at(i, p));
                    at(q, i) = std::conj(at(i, q));
                }
                at(p, p) = app - t * m;
                at(q, q) = aqq + t * m;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (int i = 0; i < dim; ++i) {
                    cplx vip = vat(i, p), viq = vat(i, q);
                    vat(i, p) = c * vip - spc * viq;
                    vat(i, q) = sp * vip + c * viq;
                }
            }
        }
    }
    es.off_residual = detail::off_norm(a, dim);
    require(es.off_residual <= target,
            "eigensystem: Jacobi iteration did not converge within the sweep cap");
    es.sweeps = sweep;

    for (int i = 0; i < dim; ++i) es.values[i] = at(i, i).real();
    // Sort ascending, carrying eigenvector columns along.
    std::vector<int> order(dim);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return es.values[i] < es.values[j]; });
    std::vector<double> vals(dim);
    std::vector<cplx> vecs(std::size_t(dim) * dim);
    for (int j = 0; j < dim; ++j) {
        vals[j] = es.values[order[j]];
        for (int i = 0; i < dim; ++i)
            vecs[std::size_t(i) * dim + j] = vat(i, order[j]);
    }
    es.values = std::move(vals);
    es.vectors = std::move(vecs);
    return es;
}

} // namespace qsw::linalg
