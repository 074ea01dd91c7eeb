#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qsw/metrology.hpp"
#include "qsw/pamp.hpp"
#include "qsw/profile.hpp"
#include "qsw/serialize.hpp"
#include "qsw/worstcase.hpp"

namespace qsw::repro {

/// One named, reproducible experiment with a hard pass/fail verdict.
/// `detail` carries only deterministic measured values so that repeated
/// runs print byte-identical reports; elapsed time is kept out of it.
struct CriterionResult {
    std::string id;
    std::string title;
    bool pass = false;
    io::json detail;
    double elapsed_seconds = 0.0;

    CriterionResult() = default;
    CriterionResult(std::string id_, std::string title_)
        : id(std::move(id_)), title(std::move(title_)) {}
};

namespace detail {

/// Deterministic uniform double in [0, 1) from the top 53 bits.
inline double uniform01(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

/// Random dense profile corpus generator: cycles through flat-to-spiky
/// weight laws so the bound checks see a spread of mutual informations.
inline profile::ErrorProfile random_dense_profile(int n, int style,
                                                  std::mt19937_64& rng,
                                                  const Config& cfg) {
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> w(size);
    const double shape[] = {0.5, 1.0, 4.0, 16.0, 64.0};
    double a = shape[style % 5];
    for (double& x : w) x = std::pow(uniform01(rng) + 1e-12, a);
    if (style % 7 == 6) {
        // occasionally plant a heavy spike
        w[0] += 10.0 * a;
    }
    return profile::normalize_and_sort(std::move(w), n, cfg);
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start)
            .count();
    }
};

// --- c1: spike family reproduces the 1e-3-bit-per-bit example ------------

inline CriterionResult run_c1(const Config& cfg) {
    Timer timer;
    CriterionResult res{"c1", "spike worst case at one-per-mille leakage (n=1000)"};
    const int n = 1000;
    const int l = 10;
    const double ie_target = double(n) * std::exp2(-double(l));
    double delta = worstcase::solve_spike_for_mutual_info(n, ie_target, cfg);
    double p1_scaled = delta * std::exp2(double(l));
    double ie_reached = worstcase::spike_mutual_info(n, delta);
    res.detail["n"] = n;
    res.detail["ie_target"] = ie_target;
    res.detail["delta"] = delta;
    res.detail["p1_times_2_to_l"] = p1_scaled;
    res.detail["ie_residual"] = ie_reached - ie_target;
    res.elapsed_seconds = timer.seconds();
    res.pass = p1_scaled >= 1.0 && p1_scaled <= 1.05 &&
               res.elapsed_seconds < 1.0;
    return res;
}

// --- c2: guessing bounds with zero violations -----------------------------

inline CriterionResult run_c2(const Config& cfg) {
    Timer timer;
    CriterionResult res{"c2", "trial-complexity and information bounds"};
    std::mt19937_64 rng(0x5ec2c2ULL);
    long checks = 0, violations = 0;
    for (int i = 0; i < 1000; ++i) {
        int n = 1 + int(rng() % 12);
        profile::ErrorProfile p = random_dense_profile(n, i, rng, cfg);
        profile::SecurityReport rep = profile::analyze(p, cfg);
        int lmax = int(std::floor(rep.min_entropy));
        for (int l = 0; l <= std::min(lmax, n); ++l) {
            profile::BoundCheck c = profile::check_bounds(rep, l);
            if (!c.applicable) continue;
            ++checks;
            if (!c.trial_bound_holds || !c.info_bound_holds) ++violations;
        }
    }
    double max_equality_error = 0.0;
    for (int n = 1; n <= 12; ++n) {
        for (int k = 0; k <= n; ++k) {
            profile::SecurityReport rep =
                profile::analyze(worstcase::uniform_subset_profile(n, k, cfg), cfg);
            for (int l = 0; l <= k; ++l) {
                profile::BoundCheck c = profile::check_bounds(rep, l);
                ++checks;
                if (!c.applicable || !c.trial_bound_holds || !c.info_bound_holds)
                    ++violations;
                if (l == k)
                    max_equality_error =
                        std::max(max_equality_error, std::abs(c.trial_slack));
            }
        }
    }
    res.detail["bound_checks"] = checks;
    res.detail["violations"] = violations;
    res.detail["subset_equality_max_error"] = max_equality_error;
    res.elapsed_seconds = timer.seconds();
    res.pass = violations == 0 && max_equality_error == 0.0 &&
               res.elapsed_seconds < 10.0;
    return res;
}

// --- c3: measure chain -----------------------------------------------------

inline CriterionResult run_c3(const Config& cfg) {
    Timer timer;
    CriterionResult res{"c3", "measure chain H_min <= R2 <= H <= n"};
    std::mt19937_64 rng(0x5ec2c2ULL);  // same corpus as c2
    const double guard = 1e-12;        // float guard at the equality boundaries
    long violations = 0;
    long tested = 0;
    auto check = [&](const profile::SecurityReport& r) {
        ++tested;
        bool ok = r.min_entropy <= r.renyi2_entropy + guard &&
                  r.renyi2_entropy <= r.shannon_entropy + guard &&
                  r.shannon_entropy <= double(r.n) + guard &&
                  r.min_entropy <= r.shannon_entropy + guard;  // p1 >= 2^-H
        if (!ok) ++violations;
    };
    for (int i = 0; i < 1000; ++i) {
        int n = 1 + int(rng() % 12);
        check(profile::analyze(random_dense_profile(n, i, rng, cfg), cfg));
    }
    for (int n = 1; n <= 12; ++n)
        for (int k = 0; k <= n; ++k)
            check(profile::analyze(worstcase::uniform_subset_profile(n, k, cfg), cfg));
    res.detail["profiles_tested"] = tested;
    res.detail["violations"] = violations;
    res.detail["float_guard"] = guard;
    res.elapsed_seconds = timer.seconds();
    res.pass = violations == 0;
    return res;
}

// --- c4: closed forms vs dense summation ----------------------------------

inline CriterionResult run_c4(const Config& cfg) {
    Timer timer;
    CriterionResult res{"c4", "parametric closed forms match dense summation"};
    std::mt19937_64 rng(0xc4c4c4ULL);
    const double tol = 1e-9;
    double worst = 0.0;
    long draws = 0, failures = 0;

    auto compare = [&](const profile::ErrorProfile& parametric) {
        profile::SecurityReport a = profile::analyze(parametric, cfg);
        profile::SecurityReport b =
            profile::analyze(profile::materialize_dense(parametric, cfg), cfg);
        double d = 0.0;
        d = std::max(d, std::abs(a.p1 - b.p1));
        d = std::max(d, std::abs(a.shannon_entropy - b.shannon_entropy));
        d = std::max(d, std::abs(a.mutual_info - b.mutual_info));
        d = std::max(d, std::abs(a.renyi2_entropy - b.renyi2_entropy));
        if (a.trial_complexity && b.trial_complexity)
            d = std::max(d, std::abs(*a.trial_complexity - *b.trial_complexity));
        if (a.kolmogorov_distance && b.kolmogorov_distance)
            d = std::max(d,
                         std::abs(*a.kolmogorov_distance - *b.kolmogorov_distance));
        worst = std::max(worst, d);
        ++draws;
        if (d > tol) ++failures;
    };

    for (int i = 0; i < 100; ++i) {
        int n = 1 + int(rng() % 16);
        // spike: delta log-uniform over [2^-n, 1]
        double lo = std::exp2(-double(n));
        double delta = lo * std::pow(1.0 / lo, uniform01(rng));
        compare(worstcase::spike_profile(n, std::min(delta, 1.0), cfg));

        int k = int(rng() % (std::uint64_t(n) + 1));
        compare(worstcase::uniform_subset_profile(n, k, cfg));

        double q = 0.5 + 0.5 * uniform01(rng);
        compare(worstcase::product_bernoulli_profile(n, q, cfg));
    }
    res.detail["draws"] = draws;
    res.detail["failures"] = failures;
    res.detail["max_deviation"] = worst;
    res.detail["tolerance"] = tol;
    res.elapsed_seconds = timer.seconds();
    res.pass = failures == 0;
    return res;
}

// --- c5: Toeplitz universality and the leakage bound -----------------------

inline CriterionResult run_c5(const Config& cfg) {
    Timer timer;
    CriterionResult res{"c5", "hash universality and averaged leakage bound"};
    // Exact universality: over all seeds, every nonzero input difference maps
    // to zero in exactly 2^(n-1) of the 2^(n+r-1) seeds.
    bool universal = true;
    for (int n = 2; n <= 6 && universal; ++n) {
        for (int r = 1; r <= n && universal; ++r) {
            const int seed_bits = n + r - 1;
            const std::uint64_t seed_count = std::uint64_t{1} << seed_bits;
            const std::uint64_t expected = std::uint64_t{1} << (n - 1);
            std::vector<std::uint64_t> zero_counts((std::size_t{1} << n), 0);
            pamp::ToeplitzHash h{n, r, std::vector<std::uint8_t>(seed_bits)};
            for (std::uint64_t sv = 0; sv < seed_count; ++sv) {
                for (int b = 0; b < seed_bits; ++b)
                    h.seed[b] = (sv >> b) & 1u;
                auto rows = pamp::row_masks(h);
                for (std::uint64_t d = 1; d < (std::uint64_t{1} << n); ++d)
                    if (pamp::hash_word(rows, d) == 0) ++zero_counts[d];
            }
            for (std::uint64_t d = 1; d < (std::uint64_t{1} << n); ++d)
                if (zero_counts[d] != expected) universal = false;
        }
    }
    res.detail["universality_exact"] = universal;

    profile::ErrorProfile input = worstcase::product_bernoulli_profile(16, 0.75, cfg);
    pamp::ExperimentRecord rec = pamp::pa_experiment(input, 4, 1000, 0x9a9a5eedULL, cfg);
    res.detail["experiment"] = io::to_json(rec);
    bool bound_ok = rec.avg_mutual_info <= rec.bound_value;
    res.detail["bound_satisfied"] = bound_ok;

    res.elapsed_seconds = timer.seconds();
    res.pass = universal && bound_ok && res.elapsed_seconds < 120.0;
    return res;
}

// --- c6: eta^N decoherence of the N00N subfamily ---------------------------

inline CriterionResult run_c6(const Config& cfg) {
    Timer timer;
    CriterionResult res{"c6", "N00N decoherence follows eta^N"};
    const std::vector<double> etas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    double max_distance_error = 0.0;
    double max_ratio_error = 0.0;
    for (int n : {1, 2, 5, 10, 20}) {
        auto rows = fock::decoherence_curve(n, 0, etas, cfg);
        for (const auto& row : rows) {
            double expected = std::pow(row.eta, n);
            max_distance_error = std::max(max_distance_error,
                                          std::abs(row.trace_distance - expected));
            max_ratio_error = std::max(max_ratio_error, std::abs(row.ratio - 0.5));
        }
    }
    res.detail["max_distance_error"] = max_distance_error;
    res.detail["max_ratio_error"] = max_ratio_error;
    res.elapsed_seconds = timer.seconds();
    res.pass = max_distance_error <= 1e-10 && max_ratio_error <= 1e-12 &&
               res.elapsed_seconds < 60.0;
    return res;
}

// --- c7: the 1/N fractional-loss point -------------------------------------

inline CriterionResult run_c7(const Config& cfg) {
    Timer timer;
    CriterionResult res{"c7", "fractional loss 1/N decoheres a large N00N state"};
    const int n = 20;
    const double eta = 1.0 - 1.0 / double(n);
    auto rows = fock::decoherence_curve(n, 0, {eta, 1.0}, cfg);
    double ratio = rows[0].trace_distance / rows[1].trace_distance;
    res.detail["N"] = n;
    res.detail["eta"] = eta;
    res.detail["distance_ratio_to_lossless"] = ratio;
    res.detail["reference_exp_minus_1"] = std::exp(-1.0);
    res.elapsed_seconds = timer.seconds();
    res.pass = ratio >= 0.34 && ratio <= 0.38;
    return res;
}

// --- c8: phase-resolution scaling ------------------------------------------

inline CriterionResult run_c8(const Config& cfg) {
    Timer timer;
    CriterionResult res{"c8", "phase resolution: N00N N^2, coherent 4|a|^2, squeezed variance"};
    double noon_max_error = 0.0;
    for (int n = 1; n <= 30; ++n) {
        fock::PureState psi = fock::make_state(fock::NumberSuperposition{n, 0}, cfg);
        fock::QfiRecord q = fock::qfi(psi, fock::Generator::number_mode1);
        noon_max_error = std::max(noon_max_error, std::abs(q.qfi - double(n) * n));
    }
    double coherent_max_error = 0.0;
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
        int cutoff = fock::coherent_cutoff(alpha);
        fock::PureState psi = fock::make_state(fock::Coherent{alpha, cutoff}, cfg);
        fock::QfiRecord q = fock::qfi(psi, fock::Generator::total_number);
        coherent_max_error =
            std::max(coherent_max_error, std::abs(q.qfi - 4.0 * alpha * alpha));
    }
    double squeezed_max_rel_error = 0.0;
    for (double r : {0.2, 0.5, 1.0, 1.5}) {
        int cutoff = fock::squeezed_cutoff(r);
        fock::PureState psi = fock::make_state(fock::SqueezedVacuum{r, cutoff}, cfg);
        fock::QfiRecord q = fock::qfi(psi, fock::Generator::total_number);
        double var = q.qfi / 4.0;
        double sh2 = std::sinh(r) * std::sinh(r);
        double expected = 2.0 * sh2 * (1.0 + sh2);
        squeezed_max_rel_error = std::max(squeezed_max_rel_error,
                                          std::abs(var - expected) / expected);
    }
    res.detail["noon_qfi_max_error"] = noon_max_error;
    res.detail["coherent_qfi_max_error"] = coherent_max_error;
    res.detail["squeezed_variance_max_rel_error"] = squeezed_max_rel_error;
    res.elapsed_seconds = timer.seconds();
    // The N00N identity qfi = N^2 is asserted at machine rounding (the
    // amplitude 1/sqrt(2) is irrational, so no double squares to 0.5
    // exactly); observed error is ~1e-13 for N <= 30.
    res.pass = noon_max_error <= 1e-11 && coherent_max_error <= 1e-8 &&
               squeezed_max_rel_error <= 1e-3;
    return res;
}

// --- c9: channel and eigensolver properties --------------------------------

inline fock::DensityOp random_density(std::mt19937_64& rng, int c1, int c2) {
    auto random_pure = [&]() {
        fock::PureState s;
        s.cutoff1 = c1;
        s.cutoff2 = c2;
        s.amp.resize(std::size_t(s.dim()));
        for (auto& a : s.amp)
            a = fock::cplx(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
        double n2 = s.norm_squared();
        double scale = 1.0 / std::sqrt(n2);
        for (auto& a : s.amp) a *= scale;
        return s;
    };
    double w1 = 0.2 + 0.6 * uniform01(rng);
    double w2 = (1.0 - w1) * uniform01(rng);
    double w3 = 1.0 - w1 - w2;
    return fock::to_density(
        {{random_pure(), w1}, {random_pure(), w2}, {random_pure(), w3}}, false);
}

inline CriterionResult run_c9(const Config& cfg) {
    Timer timer;
    CriterionResult res{"c9", "loss-channel composition, trace/PSD, eigensolver checks"};
    std::mt19937_64 rng(0xc9c9c9ULL);
    double max_comp = 0.0, max_trace = 0.0, min_eig = 0.0, max_recon = 0.0,
           max_eigsum = 0.0;
    for (int i = 0; i < 100; ++i) {
        int c1, c2;
        if (i % 4 == 0) {
            c1 = 4 + int(rng() % 5);  // single mode, cutoff up to 8
            c2 = 0;
        } else {
            c1 = 1 + int(rng() % 3);
            c2 = 1 + int(rng() % 3);
        }
        fock::DensityOp rho = random_density(rng, c1, c2);
        double eta1 = uniform01(rng), eta2 = uniform01(rng);

        fock::DensityOp two_step = fock::apply_loss(
            fock::apply_loss(rho, {eta1, fock::LossMode::both}),
            {eta2, fock::LossMode::both});
        fock::DensityOp one_step =
            fock::apply_loss(rho, {eta1 * eta2, fock::LossMode::both});
        for (std::size_t k = 0; k < two_step.mat.size(); ++k)
            max_comp = std::max(max_comp,
                                std::abs(two_step.mat[k] - one_step.mat[k]));

        max_trace = std::max(max_trace, std::abs(two_step.trace_real() - 1.0));
        max_trace = std::max(max_trace, std::abs(one_step.trace_real() - 1.0));

        linalg::EigenSystem es =
            linalg::hermitian_eigensystem(one_step.mat, one_step.dim(), cfg);
        min_eig = std::min(min_eig, es.values.front());

        // reconstruction V diag(w) V^dagger against the input
        const int d = es.dim;
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                fock::cplx sum = 0.0;
                for (int k = 0; k < d; ++k)
                    sum += es.vec(a, k) * es.values[k] * std::conj(es.vec(b, k));
                max_recon = std::max(
                    max_recon,
                    std::abs(sum - one_step.mat[std::size_t(a) * d + b]));
            }

        // eigenvalues of a difference of two density ops sum to zero
        fock::DensityOp sigma = random_density(rng, c1, c2);
        std::vector<fock::cplx> diff(rho.mat.size());
        for (std::size_t k = 0; k < diff.size(); ++k)
            diff[k] = rho.mat[k] - sigma.mat[k];
        linalg::EigenSystem ed = linalg::hermitian_eigensystem(diff, rho.dim(), cfg);
        kahan_sum s;
        for (double v : ed.values) s.add(v);
        max_eigsum = std::max(max_eigsum, std::abs(s.value()));
    }
    res.detail["max_composition_error"] = max_comp;
    res.detail["max_trace_error"] = max_trace;
    res.detail["min_eigenvalue"] = min_eig;
    res.detail["max_reconstruction_error"] = max_recon;
    res.detail["max_eigenvalue_sum"] = max_eigsum;
    res.elapsed_seconds = timer.seconds();
    res.pass = max_comp <= 1e-10 && max_trace <= 1e-12 && min_eig >= -1e-9 &&
               max_recon <= 1e-10 && max_eigsum <= 1e-10 &&
               res.elapsed_seconds < 60.0;
    return res;
}

} // namespace detail

inline std::vector<CriterionResult> run_all(const Config& cfg = {});

inline CriterionResult run_criterion(const std::string& id, const Config& cfg = {}) {
    if (id == "c1" || id == "1") return detail::run_c1(cfg);
    if (id == "c2" || id == "2") return detail::run_c2(cfg);
    if (id == "c3" || id == "3") return detail::run_c3(cfg);
    if (id == "c4" || id == "4") return detail::run_c4(cfg);
    if (id == "c5" || id == "5") return detail::run_c5(cfg);
    if (id == "c6" || id == "6") return detail::run_c6(cfg);
    if (id == "c7" || id == "7") return detail::run_c7(cfg);
    if (id == "c8" || id == "8") return detail::run_c8(cfg);
    if (id == "c9" || id == "9") return detail::run_c9(cfg);
    throw error("reproduce: unknown criterion id '" + id +
                "' (expected c1..c9, c10, or all)");
}

inline std::string format_report(const std::vector<CriterionResult>& results) {
    std::string out;
    int passed = 0;
    for (const auto& r : results) {
        out += r.id;
        out += r.pass ? " PASS " : " FAIL ";
        out += r.title;
        out += " ";
        out += r.detail.dump();
        out += "\n";
        if (r.pass) ++passed;
    }
    out += "passed " + std::to_string(passed) + "/" +
           std::to_string(results.size()) + "\n";
    return out;
}

inline std::vector<CriterionResult> run_all(const Config& cfg) {
    std::vector<CriterionResult> results;
    for (int i = 1; i <= 9; ++i)
        results.push_back(run_criterion("c" + std::to_string(i), cfg));
    return results;
}

/// Determinism check: two full passes over c1..c9 must print byte-identical
/// reports.
inline CriterionResult run_determinism_check(const Config& cfg = {}) {
    detail::Timer timer;
    CriterionResult res{"c10", "two reproduce passes are byte-identical"};
    std::string first = format_report(run_all(cfg));
    std::string second = format_report(run_all(cfg));
    res.detail["report_bytes"] = first.size();
    res.detail["identical"] = first == second;
    res.elapsed_seconds = timer.seconds();
    res.pass = first == second;
    return res;
}

} // namespace qsw::repro
