#pragma once

namespace qsw {

/// Runtime caps and tolerances. Defaults are chosen so every exact
/// computation stays at desk scale; the CLI can override them from a
/// JSON config file.
struct Config {
    /// Largest key length (bits) for which a profile may be materialized
    /// as a dense vector of 2^n probabilities.
    int dense_cap = 24;

    /// Largest key length accepted for parametric profile forms.
    int parametric_cap = 1000000;

    /// Largest joint Fock-space dimension (dim1 * dim2) for two-mode
    /// density operators.
    int joint_dim_cap = 4096;

    /// Off-diagonal residual target for the Hermitian eigensolver,
    /// relative to the Frobenius norm of the input.
    double jacobi_tol = 1e-12;
    int jacobi_max_sweeps = 100;

    /// Maximum probability mass a truncated state construction may drop.
    double norm_deficit_tol = 1e-10;
};

} // namespace qsw
