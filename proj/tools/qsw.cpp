// qsw: command-line workbench for adversary error-profile security measures,
// privacy-amplification experiments, and lossy bosonic decoherence sweeps.
//
// Exit codes: 0 success, 1 domain error (structured JSON on stderr),
// 2 usage error.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsw/metrology.hpp"
#include "qsw/pamp.hpp"
#include "qsw/profile.hpp"
#include "qsw/reproduce.hpp"
#include "qsw/serialize.hpp"
#include "qsw/worstcase.hpp"

namespace {

using qsw::Config;
using json = nlohmann::json;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int fail_domain(const std::string& message) {
    json err;
    err["error"] = "domain";
    err["message"] = message;
    std::cerr << err.dump(2) << "\n";
    return 1;
}

int fail_usage(const std::string& message) {
    json err;
    err["error"] = "usage";
    err["message"] = message;
    std::cerr << err.dump(2) << "\n";
    return 2;
}

struct CliOptions {
    std::string config_path;

    // profile analyze
    std::string profile_path;
    int check_l = -1;

    // profile worstcase
    int n = 0;
    double ie_per_bit = 0.0;

    // pamp experiment
    int out_bits = 1;
    int seeds = 100;
    std::uint64_t rng_seed = 0;

    // fock decohere
    int n1 = 1;
    int n2 = 0;
    std::string eta_grid = "0:1:0.1";
    std::string out_format = "json";

    // fock qfi
    std::string state = "noon";
    int photons = 1;
    double alpha = 1.0;
    double squeeze = 0.5;
    std::string generator;

    // fock cat
    double eta = 1.0;

    // reproduce
    std::string criterion = "all";
};

Config load_config(const CliOptions& opt) {
    if (opt.config_path.empty()) return Config{};
    return qsw::io::config_from_json(qsw::io::parse_json_file(opt.config_path));
}

int cmd_profile_analyze(const CliOptions& opt) {
    Config cfg = load_config(opt);
    auto profile =
        qsw::io::profile_from_json(qsw::io::parse_json_file(opt.profile_path), cfg);
    auto report = qsw::profile::analyze(profile, cfg);
    json out = qsw::io::to_json(report);
    if (opt.check_l >= 0)
        out["bound_check"] = qsw::io::to_json(qsw::profile::check_bounds(report, opt.check_l));
    emit(out);
    return 0;
}

int cmd_profile_worstcase(const CliOptions& opt) {
    Config cfg = load_config(opt);
    qsw::require(opt.n >= 1, "worstcase: --n must be >= 1");
    double ie_target = double(opt.n) * opt.ie_per_bit;
    double delta = qsw::worstcase::solve_spike_for_mutual_info(opt.n, ie_target, cfg);
    auto profile = qsw::worstcase::spike_profile(opt.n, delta, cfg);
    json out;
    out["profile"] = qsw::io::to_json(profile);
    out["report"] = qsw::io::to_json(qsw::profile::analyze(profile, cfg));
    out["ie_target"] = ie_target;
    emit(out);
    return 0;
}

int cmd_pamp_experiment(const CliOptions& opt) {
    Config cfg = load_config(opt);
    auto profile =
        qsw::io::profile_from_json(qsw::io::parse_json_file(opt.profile_path), cfg);
    auto record = qsw::pamp::pa_experiment(profile, opt.out_bits, opt.seeds,
                                           opt.rng_seed, cfg);
    emit(qsw::io::to_json(record));
    return 0;
}

int cmd_fock_decohere(const CliOptions& opt) {
    Config cfg = load_config(opt);
    auto grid = qsw::io::parse_grid(opt.eta_grid);
    auto rows = qsw::fock::decoherence_curve(opt.n1, opt.n2, grid, cfg);
    if (opt.out_format == "csv")
        std::cout << qsw::io::decoherence_csv(rows);
    else
        emit(qsw::io::to_json(rows));
    return 0;
}

int cmd_fock_qfi(const CliOptions& opt) {
    Config cfg = load_config(opt);
    qsw::fock::PureState psi;
    json params;
    if (opt.state == "noon") {
        psi = qsw::fock::make_state(qsw::fock::NumberSuperposition{opt.photons, 0}, cfg);
        params["N"] = opt.photons;
    } else if (opt.state == "eq2") {
        qsw::require(opt.photons >= 1, "qfi: eq2 state needs --N >= 1");
        psi = qsw::fock::make_state(
            qsw::fock::NumberSuperposition{opt.photons, opt.photons - 1}, cfg);
        params["N"] = opt.photons;
    } else if (opt.state == "coherent") {
        int cutoff = qsw::fock::coherent_cutoff(opt.alpha);
        psi = qsw::fock::make_state(qsw::fock::Coherent{opt.alpha, cutoff}, cfg);
        params["alpha"] = opt.alpha;
    } else if (opt.state == "squeezed") {
        int cutoff = qsw::fock::squeezed_cutoff(opt.squeeze);
        psi = qsw::fock::make_state(qsw::fock::SqueezedVacuum{opt.squeeze, cutoff}, cfg);
        params["squeeze_r"] = opt.squeeze;
    } else {
        throw qsw::error("qfi: unknown state '" + opt.state + "'");
    }

    auto gen_of = [](const std::string& name) {
        if (name == "mode1") return qsw::fock::Generator::number_mode1;
        if (name == "mode2") return qsw::fock::Generator::number_mode2;
        if (name == "relative") return qsw::fock::Generator::relative_number;
        if (name == "total") return qsw::fock::Generator::total_number;
        throw qsw::error("qfi: unknown generator '" + name + "'");
    };

    json out;
    out["state"] = opt.state;
    out["params"] = params;
    if (!opt.generator.empty()) {
        out["generator"] = opt.generator;
        out["result"] = qsw::io::to_json(qsw::fock::qfi(psi, gen_of(opt.generator)));
    } else {
        // no generator requested: report all four
        json by_gen;
        for (const char* name : {"mode1", "mode2", "relative", "total"})
            by_gen[name] = qsw::io::to_json(qsw::fock::qfi(psi, gen_of(name)));
        out["result_by_generator"] = by_gen;
    }
    emit(out);
    return 0;
}

int cmd_fock_cat(const CliOptions& opt) {
    Config cfg = load_config(opt);
    auto rec = qsw::fock::cat_decoherence(opt.alpha, opt.eta, cfg);
    json out = qsw::io::to_json(rec);
    out["alpha"] = opt.alpha;
    out["eta"] = opt.eta;
    emit(out);
    return 0;
}

int cmd_reproduce(const CliOptions& opt) {
    Config cfg = load_config(opt);
    if (opt.criterion == "all") {
        auto results = qsw::repro::run_all(cfg);
        std::cout << qsw::repro::format_report(results);
        for (const auto& r : results)
            if (!r.pass) return 1;
        return 0;
    }
    if (opt.criterion == "c10" || opt.criterion == "10") {
        auto r = qsw::repro::run_determinism_check(cfg);
        std::cout << qsw::repro::format_report({r});
        return r.pass ? 0 : 1;
    }
    auto r = qsw::repro::run_criterion(opt.criterion, cfg);
    std::cout << qsw::repro::format_report({r});
    return r.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CliOptions opt;
    CLI::App app{"numerical workbench for key-guessing security measures and "
                 "lossy bosonic decoherence"};
    app.require_subcommand(1);
    app.fallthrough(false);
    app.add_option("--config", opt.config_path,
                   "JSON file overriding caps and tolerances");

    auto* profile = app.add_subcommand("profile", "adversary error profiles");
    profile->require_subcommand(1);
    auto* analyze = profile->add_subcommand("analyze", "compute all security measures");
    analyze->add_option("--profile", opt.profile_path, "profile JSON file")->required();
    analyze->add_option("--l", opt.check_l, "also check the guessing bounds at this l");
    auto* worst = profile->add_subcommand("worstcase",
                                          "solve the spike family for a target leakage");
    worst->add_option("--n", opt.n, "key length in bits")->required();
    worst->add_option("--ie-per-bit", opt.ie_per_bit, "target mutual information per bit")
        ->required();

    auto* pamp = app.add_subcommand("pamp", "privacy amplification");
    pamp->require_subcommand(1);
    auto* experiment = pamp->add_subcommand("experiment",
                                            "average hashing leakage over random seeds");
    experiment->add_option("--profile", opt.profile_path, "input profile JSON file")
        ->required();
    experiment->add_option("--out-bits", opt.out_bits, "hash output width r")->required();
    experiment->add_option("--seeds", opt.seeds, "number of random seeds")->required();
    experiment->add_option("--rng-seed", opt.rng_seed, "RNG seed for reproducibility")
        ->required();

    auto* fock = app.add_subcommand("fock", "two-mode Fock-space experiments");
    fock->require_subcommand(1);
    auto* decohere = fock->add_subcommand("decohere",
                                          "trace-distance decay of a number superposition");
    decohere->add_option("--n1", opt.n1, "photon number of the first component")->required();
    decohere->add_option("--n2", opt.n2, "photon number of the second component")->required();
    decohere->add_option("--eta-grid", opt.eta_grid, "start:stop:step transmittance grid")
        ->required();
    decohere->add_option("--out", opt.out_format, "output format: json or csv");

    auto* qfi = fock->add_subcommand("qfi", "quantum Fisher information / phase resolution");
    qfi->add_option("--state", opt.state, "noon | eq2 | coherent | squeezed")->required();
    qfi->add_option("--N", opt.photons, "photon number for noon/eq2");
    qfi->add_option("--alpha", opt.alpha, "coherent amplitude");
    qfi->add_option("--squeeze", opt.squeeze, "squeeze parameter r");
    qfi->add_option("--generator", opt.generator,
                    "mode1 | mode2 | relative | total (omit to report all)");

    auto* cat = fock->add_subcommand("cat", "even-cat decoherence under loss");
    cat->add_option("--alpha", opt.alpha, "coherent amplitude")->required();
    cat->add_option("--eta", opt.eta, "transmittance")->required();

    auto* reproduce = app.add_subcommand("reproduce",
                                         "run a named acceptance experiment (c1..c9, c10, all)");
    reproduce->add_option("criterion", opt.criterion, "criterion id")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail_usage(e.what());
    }

    try {
        if (analyze->parsed()) return cmd_profile_analyze(opt);
        if (worst->parsed()) return cmd_profile_worstcase(opt);
        if (experiment->parsed()) return cmd_pamp_experiment(opt);
        if (decohere->parsed()) return cmd_fock_decohere(opt);
        if (qfi->parsed()) return cmd_fock_qfi(opt);
        if (cat->parsed()) return cmd_fock_cat(opt);
        if (reproduce->parsed()) return cmd_reproduce(opt);
        return fail_usage("no subcommand given");
    } catch (const qsw::error& e) {
        return fail_domain(e.what());
    } catch (const std::exception& e) {
        return fail_domain(e.what());
    }
}
