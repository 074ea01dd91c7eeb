#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsw/config.hpp"
#include "qsw/metrology.hpp"
#include "qsw/pamp.hpp"
#include "qsw/profile.hpp"
#include "qsw/util.hpp"

namespace qsw::io {

using json = nlohmann::json;

/// Shortest exact decimal for a double (17 significant digits are never
/// needed more): used for CSV cells so text output is lossless.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
}

/// JSON has no inf/nan; diagnostics that can be undefined are emitted as null.
inline json num_or_null(double x) {
    return std::isfinite(x) ? json(x) : json(nullptr);
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

inline json to_json(const profile::ErrorProfile& p) {
    json j;
    j["n"] = p.n;
    if (const auto* d = std::get_if<profile::Dense>(&p.form)) {
        j["type"] = "dense";
        j["probabilities"] = d->probabilities;
    } else if (const auto* s = std::get_if<profile::SpikeUniform>(&p.form)) {
        j["type"] = "spike";
        j["delta"] = s->delta;
    } else if (const auto* u = std::get_if<profile::UniformSubset>(&p.form)) {
        j["type"] = "uniform_subset";
        j["k"] = u->k;
    } else {
        j["type"] = "product_bernoulli";
        j["q"] = std::get<profile::ProductBernoulli>(p.form).q;
    }
    return j;
}

inline profile::ErrorProfile profile_from_json(const json& j, const Config& cfg = {}) {
    require(j.is_object(), "profile json: expected an object");
    require(j.contains("n") && j["n"].is_number_integer(),
            "profile json: missing integer field 'n'");
    require(j.contains("type") && j["type"].is_string(),
            "profile json: missing string field 'type'");
    profile::ErrorProfile p;
    p.n = j["n"].get<int>();
    const std::string type = j["type"].get<std::string>();
    if (type == "dense") {
        require(j.contains("probabilities") && j["probabilities"].is_array(),
                "profile json: dense profile needs a 'probabilities' array");
        p.form = profile::Dense{j["probabilities"].get<std::vector<double>>()};
    } else if (type == "spike") {
        require(j.contains("delta") && j["delta"].is_number(),
                "profile json: spike profile needs numeric 'delta'");
        p.form = profile::SpikeUniform{j["delta"].get<double>()};
    } else if (type == "uniform_subset") {
        require(j.contains("k") && j["k"].is_number_integer(),
                "profile json: uniform_subset profile needs integer 'k'");
        p.form = profile::UniformSubset{j["k"].get<int>()};
    } else if (type == "product_bernoulli") {
        require(j.contains("q") && j["q"].is_array(),
                "profile json: product_bernoulli profile needs a 'q' array");
        p.form = profile::ProductBernoulli{j["q"].get<std::vector<double>>()};
    } else {
        throw error("profile json: unknown profile type '" + type + "'");
    }
    profile::validate(p, cfg);
    return p;
}

// ---------------------------------------------------------------------------
// Reports and records
// ---------------------------------------------------------------------------

inline json to_json(const profile::SecurityReport& r) {
    json j;
    j["n"] = r.n;
    j["p1"] = r.p1;
    j["min_entropy"] = r.min_entropy;
    j["shannon_entropy"] = r.shannon_entropy;
    j["mutual_info"] = r.mutual_info;
    j["renyi2_entropy"] = r.renyi2_entropy;
    j["trial_complexity"] =
        r.trial_complexity ? json(*r.trial_complexity) : json(nullptr);
    j["log2_trial_complexity"] =
        r.log2_trial_complexity ? json(*r.log2_trial_complexity) : json(nullptr);
    j["kolmogorov_distance"] =
        r.kolmogorov_distance ? json(*r.kolmogorov_distance) : json(nullptr);
    return j;
}

inline json to_json(const profile::BoundCheck& c) {
    json j;
    j["l"] = c.l;
    j["applicable"] = c.applicable;
    j["trial_bound"] = c.trial_bound;
    j["trial_slack"] = c.trial_slack;
    j["trial_bound_holds"] = c.trial_bound_holds;
    j["info_bound"] = c.info_bound;
    j["info_slack"] = c.info_slack;
    j["info_bound_holds"] = c.info_bound_holds;
    j["fresh_key_bits"] = c.fresh_key_bits;
    return j;
}

inline json to_json(const pamp::ExperimentRecord& r) {
    json j;
    j["n"] = r.n;
    j["r"] = r.r;
    j["seeds_tested"] = r.seeds_tested;
    j["rng_seed"] = r.rng_seed;
    j["avg_mutual_info"] = r.avg_mutual_info;
    j["avg_p1"] = r.avg_p1;
    j["renyi2_input"] = r.renyi2_input;
    j["bound_value"] = r.bound_value;
    j["achieved_exponent"] = num_or_null(r.achieved_exponent);
    j["bound_exponent"] = r.bound_exponent;
    j["exponent_gap"] = num_or_null(r.exponent_gap);
    return j;
}

inline json to_json(const fock::QfiRecord& r) {
    json j;
    j["qfi"] = r.qfi;
    j["phase_resolution"] = num_or_null(r.phase_resolution);
    return j;
}

inline json to_json(const fock::DecoherenceRow& row) {
    json j;
    j["eta"] = row.eta;
    j["trace_distance"] = row.trace_distance;
    j["eq3_prediction"] = row.eq3_prediction;
    j["ratio"] = num_or_null(row.ratio);  // null at eta = 0
    return j;
}

inline json to_json(const std::vector<fock::DecoherenceRow>& rows) {
    json j = json::array();
    for (const auto& row : rows) j.push_back(to_json(row));
    return j;
}

inline json to_json(const fock::CatRecord& r) {
    json j;
    j["distance"] = r.distance;
    j["coherence_factor"] = r.coherence_factor;
    j["analytic_distance"] = r.analytic_distance;
    return j;
}

/// Fixed-header CSV used by the decoherence sweep.
inline std::string decoherence_csv(const std::vector<fock::DecoherenceRow>& rows) {
    std::string out = "eta,trace_distance,eq3_prediction,ratio\n";
    for (const auto& row : rows) {
        out += format_double(row.eta);
        out += ',';
        out += format_double(row.trace_distance);
        out += ',';
        out += format_double(row.eq3_prediction);
        out += ',';
        out += format_double(row.ratio);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Config and files
// ---------------------------------------------------------------------------

inline Config config_from_json(const json& j) {
    require(j.is_object(), "config json: expected an object");
    Config cfg;
    if (j.contains("dense_cap")) cfg.dense_cap = j["dense_cap"].get<int>();
    if (j.contains("parametric_cap")) cfg.parametric_cap = j["parametric_cap"].get<int>();
    if (j.contains("joint_dim_cap")) cfg.joint_dim_cap = j["joint_dim_cap"].get<int>();
    if (j.contains("jacobi_tol")) cfg.jacobi_tol = j["jacobi_tol"].get<double>();
    if (j.contains("jacobi_max_sweeps"))
        cfg.jacobi_max_sweeps = j["jacobi_max_sweeps"].get<int>();
    if (j.contains("norm_deficit_tol"))
        cfg.norm_deficit_tol = j["norm_deficit_tol"].get<double>();
    require(cfg.dense_cap >= 1 && cfg.dense_cap <= 30,
            "config json: dense_cap must lie in [1, 30]");
    require(cfg.joint_dim_cap >= 1, "config json: joint_dim_cap must be positive");
    return cfg;
}

inline json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open file: " + path);
    json j = json::parse(in, nullptr, false);
    require(!j.is_discarded(), "malformed JSON in file: " + path);
    return j;
}

/// Parse "start:stop:step" into an inclusive grid.
inline std::vector<double> parse_grid(const std::string& text) {
    double start = 0, stop = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(text);
    ss >> start >> c1 >> stop >> c2 >> step;
    require(!ss.fail() && c1 == ':' && c2 == ':',
            "grid: expected start:stop:step, got '" + text + "'");
    require(step > 0.0, "grid: step must be positive");
    require(stop >= start, "grid: stop must be >= start");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        double v = start + double(i) * step;
        if (v > stop + 1e-12) break;
        grid.push_back(std::min(v, stop));
    }
    return grid;
}

} // namespace qsw::io
