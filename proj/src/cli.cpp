#include "nlab/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "nlab/bohm.hpp"
#include "nlab/entangle.hpp"
#include "nlab/hilbert.hpp"
#include "nlab/lattice.hpp"
#include "nlab/measure.hpp"
#include "nlab/nogo.hpp"
#include "nlab/stats.hpp"

namespace nlab::cli {

namespace {

using nlohmann::json;

struct CheckList {
    json checks = json::array();
    bool all_passed = true;

    void add(const std::string& name, double value, const std::string& relation, double threshold,
             bool passed) {
        checks.push_back({{"name", name},
                          {"value", value},
                          {"relation", relation},
                          {"threshold", threshold},
                          {"passed", passed}});
        all_passed = all_passed && passed;
    }

    void add_below(const std::string& name, double value, double threshold) {
        add(name, value, "<", threshold, value < threshold);
    }

    void add_at_least(const std::string& name, double value, double threshold) {
        add(name, value, ">=", threshold, value >= threshold);
    }

    void add_above(const std::string& name, double value, double threshold) {
        add(name, value, ">", threshold, value > threshold);
    }

    void add_flag(const std::string& name, bool passed) {
        checks.push_back({{"name", name}, {"passed", passed}});
        all_passed = all_passed && passed;
    }
};

struct RunOutput {
    json report;
    std::string csv;  // empty when the subcommand has no tabular payload
};

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&tt, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

json finalize(const std::string& subcommand, std::uint64_t seed, json params, CheckList checks) {
    json report;
    report["schema"] = "nonlocality-lab/1";
    report["subcommand"] = subcommand;
    report["seed"] = seed;
    report["params"] = std::move(params);
    report["checks"] = std::move(checks.checks);
    report["passed"] = checks.all_passed;
    report["timestamp"] = timestamp_now();
    return report;
}

// ---------------------------------------------------------------------------
// Subcommand bodies

RunOutput run_entangle_check(std::uint64_t seed, int n, int n_bases, int n_ops) {
    SeededRng rng(seed);
    SeededRng basis_rng = rng.stream(1);
    const auto phi = hilbert::Basis::random_orthonormal(n, basis_rng);
    const auto psi = hilbert::Basis::random_orthonormal(n, basis_rng);
    const auto state = entangle::build_from_bases(phi, psi);

    CheckList checks;

    const Eigen::VectorXd schmidt = entangle::schmidt_coefficients(state.joint_state(), n, n);
    const double target = 1.0 / std::sqrt(static_cast<double>(n));
    checks.add_below("schmidt-coefficients-flat",
                     (schmidt.array() - target).abs().maxCoeff(), 1e-10);

    SeededRng chi_rng = rng.stream(2);
    double basis_dev = 0.0;
    for (int b = 0; b < n_bases; ++b) {
        const auto chi = hilbert::Basis::random_orthonormal(n, chi_rng);
        const auto re = entangle::represent_in_basis(state, chi);
        basis_dev = std::max(
            basis_dev, (re.amplitudes() - state.joint_state().amplitudes()).cwiseAbs().maxCoeff());
    }
    checks.add_below("basis-independence", basis_dev, 1e-12);

    SeededRng op_rng = rng.stream(3);
    double spectrum_dev = 0.0;
    double corr_residual = 0.0;
    for (int o = 0; o < n_ops; ++o) {
        const auto op = hilbert::Operator::dense(hilbert::random_hermitian(n, op_rng));
        const auto partner = entangle::partner_operator(state, op);
        const auto so = hilbert::eigendecompose(op);
        const auto sp = hilbert::eigendecompose(partner);
        spectrum_dev =
            std::max(spectrum_dev, (so.eigenvalues - sp.eigenvalues).cwiseAbs().maxCoeff());
        corr_residual = std::max(corr_residual, entangle::correlation_residual(state, op, partner));
    }
    checks.add_below("partner-spectrum-preserved", spectrum_dev, 1e-10);
    checks.add_below("perfect-correlation-residual", corr_residual, 1e-10);

    SeededRng lin_rng = rng.stream(4);
    double antilin_dev = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto u = hilbert::StateVector::random(n, lin_rng);
        const auto v = hilbert::StateVector::random(n, lin_rng);
        const hilbert::Complex alpha(lin_rng.normal(), lin_rng.normal());
        const hilbert::Complex beta(lin_rng.normal(), lin_rng.normal());
        const Eigen::VectorXcd lhs =
            state.pairing().apply(alpha * u.amplitudes() + beta * v.amplitudes());
        const Eigen::VectorXcd rhs = std::conj(alpha) * state.pairing().apply(u.amplitudes()) +
                                     std::conj(beta) * state.pairing().apply(v.amplitudes());
        antilin_dev = std::max(antilin_dev, (lhs - rhs).norm());
    }
    checks.add_below("anti-linearity", antilin_dev, 1e-12);

    // The two-level reference point: the partner of diag(1,-1) on the singlet
    // is the sign flip.
    const auto sg = entangle::singlet();
    Eigen::MatrixXcd sz(2, 2);
    sz << 1, 0, 0, -1;
    const auto partner = entangle::partner_operator(sg, hilbert::Operator::dense(sz));
    checks.add_below("singlet-partner-sign-flip",
                     (partner.dense_entries() + sz).cwiseAbs().maxCoeff(), 1e-12);

    json params{{"n", n}, {"bases", n_bases}, {"ops", n_ops}};
    return {finalize("entangle-check", seed, std::move(params), std::move(checks)), ""};
}

RunOutput run_perfect_correlation(std::uint64_t seed, int n, long trials) {
    SeededRng rng(seed);
    CheckList checks;

    entangle::MaximallyEntangledState state = [&] {
        if (n == 2) return entangle::singlet();
        SeededRng basis_rng = rng.stream(1);
        const auto phi = hilbert::Basis::random_orthonormal(n, basis_rng);
        const auto psi = hilbert::Basis::random_orthonormal(n, basis_rng);
        return entangle::build_from_bases(phi, psi);
    }();

    hilbert::Operator op = [&] {
        if (n == 2) {
            Eigen::MatrixXcd sz(2, 2);
            sz << 1, 0, 0, -1;
            return hilbert::Operator::dense(std::move(sz));
        }
        SeededRng op_rng = rng.stream(2);
        return hilbert::Operator::dense(hilbert::random_hermitian_nondegenerate(n, op_rng));
    }();

    const auto partner = entangle::partner_operator(state, op);
    checks.add_below("correlation-residual", entangle::correlation_residual(state, op, partner),
                     1e-10);

    SeededRng trial_rng = rng.stream(3);
    const auto report = measure::perfect_correlation_trial(state, op, trial_rng, trials);
    checks.add("match-count", static_cast<double>(report.matches), "==",
               static_cast<double>(trials), report.matches == trials);

    json params{{"n", n}, {"trials", trials}};
    return {finalize("perfect-correlation", seed, std::move(params), std::move(checks)), ""};
}

RunOutput run_epr_lattice(std::uint64_t seed, int half_count, double spacing, int x0_sites,
                          long trials) {
    const auto config = lattice::LatticeConfig::odd(spacing, half_count);
    const lattice::EprParams params{config.point(x0_sites)};
    const int n = config.n_points;
    CheckList checks;

    double direct_dev = 0.0, dual_dev = 0.0;
    for (int i = config.origin; i < config.origin + n; ++i) {
        const double expect = (i == 0) ? n : 0.0;
        direct_dev = std::max(direct_dev,
                              std::abs(lattice::orthogonality_sum(config, config.point(i)) - expect));
        dual_dev = std::max(
            dual_dev, std::abs(lattice::dual_orthogonality_sum(config, config.dual_point(i)) - expect));
    }
    checks.add_below("orthogonality-direct", direct_dev, 5e-9 * n);
    checks.add_below("orthogonality-dual", dual_dev, 5e-9 * n);

    const auto fa = lattice::epr_form_fourier_sum(config, params);
    const auto fb = lattice::epr_form_delta(config, params);
    const auto fc = lattice::epr_form_convolution(config, params);
    checks.add_below("epr-forms-agree",
                     std::max((fa - fb).cwiseAbs().maxCoeff(), (fb - fc).cwiseAbs().maxCoeff()),
                     1e-10);

    const auto state = lattice::build_epr_state(config, params);
    SeededRng rng(seed);
    SeededRng rng_q = rng.stream(1);
    const auto qrep = lattice::epr_position_correlation(state, params, rng_q, trials, 0);
    checks.add("position-correlation-matches", static_cast<double>(qrep.matches), "==",
               static_cast<double>(trials), qrep.matches == trials);

    SeededRng rng_qr = rng.stream(2);
    const auto qrev = lattice::epr_position_correlation(state, params, rng_qr, trials, 1);
    checks.add("position-correlation-reversed", static_cast<double>(qrev.matches), "==",
               static_cast<double>(trials), qrev.matches == trials);

    SeededRng rng_p = rng.stream(3);
    const auto prep = lattice::epr_momentum_correlation(state, rng_p, trials, 0);
    checks.add("momentum-correlation-matches", static_cast<double>(prep.matches), "==",
               static_cast<double>(trials), prep.matches == trials);

    // Flat Schmidt spectrum means the first-measured momentum is uniform.
    const double p_expected = static_cast<double>(trials) / n;
    const double p_sigma = std::sqrt(static_cast<double>(trials) * (1.0 / n) * (1.0 - 1.0 / n));
    double worst_bin_dev = 0.0;
    for (long c : prep.first_outcome_counts)
        worst_bin_dev = std::max(worst_bin_dev, std::abs(static_cast<double>(c) - p_expected));
    checks.add("momentum-uniformity-3sigma", worst_bin_dev, "<=", 3.0 * p_sigma,
               worst_bin_dev <= 3.0 * p_sigma);

    std::ostringstream csv;
    csv << "index,x,count_q_first,count_p_first\n";
    for (int i = 0; i < n; ++i) {
        csv << (config.origin + i) << "," << config.point(config.origin + i) << ","
            << qrep.first_outcome_counts[static_cast<std::size_t>(i)] << ","
            << prep.first_outcome_counts[static_cast<std::size_t>(i)] << "\n";
    }

    json jp{{"half_count", half_count},
            {"spacing", spacing},
            {"x0_sites", x0_sites},
            {"n_points", n},
            {"trials", trials}};
    return {finalize("epr-lattice", seed, std::move(jp), std::move(checks)), csv.str()};
}

RunOutput run_clifton_verify(std::uint64_t seed, int n_points, int k0, int m, double spacing) {
    const auto set = nogo::build_clifton_set(n_points, k0, m, spacing);
    CheckList checks;

    const auto relations = nogo::clifton_relations_check(set);
    for (const auto& entry : relations.entries)
        checks.add_below("residual " + entry.name, entry.residual, 1e-10);
    checks.add_above("anticommutation-contrast", relations.commutator_contrast, 0.5);
    checks.add_below("expansion-route", relations.expansion_route_deviation, 1e-11);
    checks.add_below("weyl-phase-max", nogo::weyl_phase_residual_max(set.config), 1e-12);

    const auto search = nogo::clifton_value_map_search(set);
    checks.add_flag("value-map-contradiction", search.contradiction);
    checks.add_flag("admissible-params-found", !search.admissible_alternatives.empty());

    json search_json;
    search_json["sign_patterns"] = search.patterns.size();
    search_json["multiplicative_forces_equal"] = search.multiplicative_forces_equal;
    search_json["opposite_nonzero_impossible"] = search.opposite_nonzero_impossible;
    search_json["params_admissible"] = search.params_admissible;
    search_json["zero_map_flagged"] = search.zero_map_flagged;
    search_json["position_cos_spectrum"] = search.position_cos_spectrum;
    search_json["momentum_cos_spectrum"] = search.momentum_cos_spectrum;
    json alts = json::array();
    for (const auto& alt : search.admissible_alternatives)
        alts.push_back({{"n_points", alt.n_points}, {"k0", alt.k0}, {"m", alt.m}});
    search_json["admissible_alternatives"] = std::move(alts);
    search_json["conclusion"] = search.conclusion;

    json jp{{"n_points", n_points},
            {"k0", k0},
            {"m", m},
            {"spacing", spacing},
            {"clifton_a", set.clifton_a}};
    json report = finalize("clifton-verify", seed, std::move(jp), std::move(checks));
    report["value_map_search"] = std::move(search_json);
    return {std::move(report), ""};
}

RunOutput run_vonneumann(std::uint64_t seed) {
    const auto demo = nogo::von_neumann_demo();
    CheckList checks;
    const double root2 = std::sqrt(2.0);
    const bool sums_exact = demo.attained_sums.size() == 3 && demo.attained_sums[0] == -root2 &&
                            demo.attained_sums[1] == 0.0 && demo.attained_sums[2] == root2;
    checks.add_flag("attained-sums-exact", sums_exact);
    const bool eigs_ok = demo.sum_op_eigenvalues.size() == 2 &&
                         std::abs(demo.sum_op_eigenvalues[0] + 1.0) < 1e-12 &&
                         std::abs(demo.sum_op_eigenvalues[1] - 1.0) < 1e-12;
    checks.add_flag("sum-operator-eigenvalues", eigs_ok);
    checks.add_flag("intersection-empty", demo.intersection_empty);

    json report = finalize("vonneumann-demo", seed, json::object(), std::move(checks));
    report["attained_sums"] = demo.attained_sums;
    report["sum_op_eigenvalues"] = demo.sum_op_eigenvalues;
    return {std::move(report), ""};
}

RunOutput run_oscillator(std::uint64_t seed, double vp, double vx, double omega_min,
                         double omega_max, int steps, int n_max) {
    const auto sweep = nogo::oscillator_sweep(vp, vx, omega_min, omega_max, steps, n_max);
    CheckList checks;
    checks.add_at_least("incompatible-omegas", static_cast<double>(sweep.incompatible), 1.0);
    checks.add_flag("ground-level-case", nogo::oscillator_compatibility(1.0, 0.0, 1.0, n_max));
    checks.add_flag("off-level-case", !nogo::oscillator_compatibility(1.0, 1.0, 1.0, n_max));

    json jp{{"vp", vp},        {"vx", vx},     {"omega_min", omega_min},
            {"omega_max", omega_max}, {"steps", steps}, {"n_max", n_max}};
    json report = finalize("oscillator-demo", seed, std::move(jp), std::move(checks));
    report["omegas_tested"] = sweep.omegas_tested;
    report["incompatible"] = sweep.incompatible;
    report["incompatible_examples"] = sweep.incompatible_examples;
    return {std::move(report), ""};
}

RunOutput run_bohm_trajectory(std::uint64_t seed, const std::string& model_name, double x0,
                              double t_final, double dt, double k, double y0) {
    bohm::GaussianPacketModel model = [&] {
        if (model_name == "pair") return bohm::GaussianPacketModel::symmetric_pair(k);
        if (model_name == "collapsed") return bohm::GaussianPacketModel::collapsed_pair(k, y0);
        return bohm::GaussianPacketModel::ground();
    }();
    const auto traj = bohm::integrate_trajectory(model, x0, 0.0, t_final, dt);

    CheckList checks;
    if (model_name == "single") {
        const double expect = x0 * std::sqrt(1.0 + t_final * t_final);
        const double err = std::abs(traj.positions.back() - expect) /
                           std::max(1.0, std::abs(expect));
        checks.add_below("analytic-oracle-relative-error", err, 1e-6);
    }

    std::ostringstream csv;
    csv << "t,x\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        csv << traj.times[i] << "," << traj.positions[i] << "\n";

    json jp{{"model", model_name}, {"x0", x0}, {"t_final", t_final},
            {"dt", dt},            {"k", k},   {"y0", y0}};
    json report = finalize("bohm-trajectory", seed, std::move(jp), std::move(checks));
    report["final_position"] = traj.positions.back();
    report["steps"] = traj.times.size() - 1;
    return {std::move(report), csv.str()};
}

RunOutput run_bohm_momentum(std::uint64_t seed, long trials, double t_final, double dt) {
    const auto rep = bohm::momentum_statistics(trials, t_final, seed, dt);
    CheckList checks;
    checks.add_above("ks-p-value", rep.ks_p_value, 0.01);
    const double sigma_var = 0.5 * std::sqrt(2.0 / static_cast<double>(trials - 1));
    checks.add("variance-within-3sigma", std::abs(rep.sample_variance - 0.5), "<=",
               3.0 * sigma_var, std::abs(rep.sample_variance - 0.5) <= 3.0 * sigma_var);

    std::ostringstream csv;
    csv << "p_estimate\n";
    for (double p : rep.estimates) csv << p << "\n";

    json jp{{"trials", trials}, {"t_final", t_final}, {"dt", dt}};
    json report = finalize("bohm-momentum", seed, std::move(jp), std::move(checks));
    report["ks_statistic"] = rep.ks_statistic;
    report["ks_p_value"] = rep.ks_p_value;
    report["sample_mean"] = rep.sample_mean;
    report["sample_variance"] = rep.sample_variance;
    return {std::move(report), csv.str()};
}

RunOutput run_bohm_equivariance(std::uint64_t seed, const std::string& model_name, double t,
                                long trials, double dt, double k) {
    bohm::GaussianPacketModel model = (model_name == "pair")
                                          ? bohm::GaussianPacketModel::symmetric_pair(k)
                                          : bohm::GaussianPacketModel::ground();
    const auto rep = bohm::equivariance_test(model, t, trials, seed, dt);
    CheckList checks;
    checks.add_above("ks-p-value", rep.ks_p_value, 0.01);
    if (model_name == "pair") {
        const double sigma = std::sqrt(0.25 / static_cast<double>(trials));
        checks.add("lobe-balance-within-3sigma", std::abs(rep.right_mass - 0.5), "<=", 3.0 * sigma,
                   std::abs(rep.right_mass - 0.5) <= 3.0 * sigma);
    }

    std::ostringstream csv;
    csv << "x\n";
    for (double x : rep.positions) csv << x << "\n";

    json jp{{"model", model_name}, {"t", t}, {"trials", trials}, {"dt", dt}, {"k", k}};
    json report = finalize("bohm-equivariance", seed, std::move(jp), std::move(checks));
    report["ks_statistic"] = rep.ks_statistic;
    report["ks_p_value"] = rep.ks_p_value;
    report["sample_mean"] = rep.sample_mean;
    report["sample_variance"] = rep.sample_variance;
    report["right_mass"] = rep.right_mass;
    return {std::move(report), csv.str()};
}

RunOutput run_bohm_contextuality(std::uint64_t seed, double k, double t_final, double dt,
                                 long trials) {
    bohm::ContextualityParams params;
    params.k = k;
    params.horizon = t_final;
    params.dt = dt;
    params.trials = trials;
    params.seed = seed;
    const auto rep = bohm::contextuality_report(params);

    CheckList checks;
    checks.add_at_least("exp1-agreement-rate", rep.exp1_agreement_rate, 0.95);
    checks.add_at_least("exp2-agreement-rate", rep.exp2_agreement_rate, 0.95);
    checks.add_above("disagreement-fraction", rep.disagreement_fraction, 0.1);

    std::ostringstream csv;
    csv << "x0,y0,exp1_admissible,p1,exp2_admissible,p2\n";
    for (const auto& out : rep.outcomes) {
        csv << out.x0 << "," << out.y0 << "," << (out.exp1_admissible ? 1 : 0) << "," << out.p1
            << "," << (out.exp2_admissible ? 1 : 0) << "," << out.p2 << "\n";
    }

    json jp{{"k", k}, {"t_final", t_final}, {"dt", dt}, {"trials", trials}};
    json report = finalize("bohm-contextuality", seed, std::move(jp), std::move(checks));
    report["exp1_admissible"] = rep.exp1_admissible;
    report["exp1_sign_matches"] = rep.exp1_sign_matches;
    report["exp2_admissible"] = rep.exp2_admissible;
    report["exp2_sign_matches"] = rep.exp2_sign_matches;
    report["both_admissible"] = rep.both_admissible;
    report["disagreements"] = rep.disagreements;
    report["exp1_agreement_rate"] = rep.exp1_agreement_rate;
    report["exp2_agreement_rate"] = rep.exp2_agreement_rate;
    report["disagreement_fraction"] = rep.disagreement_fraction;
    return {std::move(report), csv.str()};
}

int emit(const RunOutput& output, const std::string& out_path, const std::string& format) {
    if (format == "csv" && output.csv.empty()) {
        std::cerr << "error: this subcommand has no tabular payload; use --format json\n";
        return 2;
    }
    const std::string payload =
        (format == "csv") ? output.csv : output.report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot open output file " << out_path << "\n";
            return 2;
        }
        out << payload;
    }
    if (!output.report["passed"].get<bool>()) {
        for (const auto& check : output.report["checks"]) {
            if (!check["passed"].get<bool>())
                std::cerr << "failed contract: " << check["name"].get<std::string>() << "\n";
        }
        return 1;
    }
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Numerical laboratory for entanglement, perfect correlations, "
                 "value-map obstructions and pilot-wave momentum contextuality"};
    app.require_subcommand(1);
    app.fallthrough();  // --seed/--out/--format may follow the subcommand

    std::uint64_t seed = 1;
    std::string out_path;
    std::string format = "json";
    app.add_option("--seed", seed, "RNG seed shared by every stochastic step")
        ->capture_default_str();
    app.add_option("--out", out_path, "write the report to this file instead of stdout");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    // entangle-check
    auto* sc_entangle = app.add_subcommand("entangle-check", "maximally entangled state invariants");
    int ec_n = 3, ec_bases = 100, ec_ops = 100;
    sc_entangle->add_option("--n", ec_n, "subsystem dimension")->capture_default_str();
    sc_entangle->add_option("--bases", ec_bases, "random bases tested")->capture_default_str();
    sc_entangle->add_option("--ops", ec_ops, "random observables tested")->capture_default_str();

    // perfect-correlation
    auto* sc_perfect = app.add_subcommand("perfect-correlation",
                                          "sequential two-system measurement agreement");
    int pc_n = 2;
    long pc_trials = 10000;
    sc_perfect->add_option("--n", pc_n, "subsystem dimension")->capture_default_str();
    sc_perfect->add_option("--trials", pc_trials, "measurement trials")->capture_default_str();

    // epr-lattice
    auto* sc_epr = app.add_subcommand("epr-lattice", "lattice pair-state correlations");
    int epr_m = 3, epr_x0 = 0;
    double epr_spacing = 1.0;
    long epr_trials = 1000;
    sc_epr->add_option("--half-count", epr_m, "lattice half-width M")->capture_default_str();
    sc_epr->add_option("--spacing", epr_spacing, "lattice spacing")->capture_default_str();
    sc_epr->add_option("--x0-sites", epr_x0, "pair offset in sites")->capture_default_str();
    sc_epr->add_option("--trials", epr_trials, "measurement trials")->capture_default_str();

    // clifton-verify
    auto* sc_clifton = app.add_subcommand("clifton-verify",
                                          "phase/shift observable algebra and value-map search");
    int cl_n = 8, cl_k0 = 1, cl_m = 4;
    double cl_spacing = 1.0;
    sc_clifton->add_option("--n-points", cl_n, "even lattice size")->capture_default_str();
    sc_clifton->add_option("--k0", cl_k0, "dual index defining the constant a")
        ->capture_default_str();
    sc_clifton->add_option("--m", cl_m, "shift sites for pi/a")->capture_default_str();
    sc_clifton->add_option("--spacing", cl_spacing, "lattice spacing")->capture_default_str();

    // vonneumann-demo
    app.add_subcommand("vonneumann-demo", "additivity clash for spin components");

    // oscillator-demo
    auto* sc_osc = app.add_subcommand("oscillator-demo",
                                      "oscillator level incompatibility sweep");
    double osc_vp = 1.0, osc_vx = 1.0, osc_lo = 0.1, osc_hi = 10.0;
    int osc_steps = 199, osc_nmax = 200;
    sc_osc->add_option("--vp", osc_vp, "assigned momentum value")->capture_default_str();
    sc_osc->add_option("--vx", osc_vx, "assigned position value")->capture_default_str();
    sc_osc->add_option("--omega-min", osc_lo, "sweep start")->capture_default_str();
    sc_osc->add_option("--omega-max", osc_hi, "sweep end")->capture_default_str();
    sc_osc->add_option("--steps", osc_steps, "sweep points")->capture_default_str();
    sc_osc->add_option("--n-max", osc_nmax, "highest level checked")->capture_default_str();

    // bohm-trajectory
    auto* sc_traj = app.add_subcommand("bohm-trajectory", "single guided trajectory");
    std::string bt_model = "single";
    double bt_x0 = 1.0, bt_t = 10.0, bt_dt = 1e-3, bt_k = 10.0, bt_y0 = 0.0;
    sc_traj->add_option("--model", bt_model, "wave function")
        ->check(CLI::IsMember({"single", "pair", "collapsed"}))
        ->capture_default_str();
    sc_traj->add_option("--x0", bt_x0, "initial position")->capture_default_str();
    sc_traj->add_option("--t-final", bt_t, "integration horizon")->capture_default_str();
    sc_traj->add_option("--dt", bt_dt, "nominal step")->capture_default_str();
    sc_traj->add_option("--k", bt_k, "packet boost (pair/collapsed models)")->capture_default_str();
    sc_traj->add_option("--y0", bt_y0, "partner position (collapsed model)")->capture_default_str();

    // bohm-momentum
    auto* sc_mom = app.add_subcommand("bohm-momentum",
                                      "asymptotic-position momentum statistics");
    long bm_trials = 10000;
    double bm_t = 100.0, bm_dt = 0.01;
    sc_mom->add_option("--trials", bm_trials, "trajectories")->capture_default_str();
    sc_mom->add_option("--t-final", bm_t, "detection horizon")->capture_default_str();
    sc_mom->add_option("--dt", bm_dt, "nominal step")->capture_default_str();

    // bohm-equivariance
    auto* sc_eq = app.add_subcommand("bohm-equivariance", "transported-cloud distribution test");
    std::string be_model = "single";
    double be_t = 3.0, be_dt = 1e-3, be_k = 10.0;
    long be_trials = 10000;
    sc_eq->add_option("--model", be_model, "wave function")
        ->check(CLI::IsMember({"single", "pair"}))
        ->capture_default_str();
    sc_eq->add_option("--t", be_t, "transport time")->capture_default_str();
    sc_eq->add_option("--trials", be_trials, "samples")->capture_default_str();
    sc_eq->add_option("--dt", be_dt, "nominal step")->capture_default_str();
    sc_eq->add_option("--k", be_k, "packet boost (pair model)")->capture_default_str();

    // bohm-contextuality
    auto* sc_ctx = app.add_subcommand("bohm-contextuality",
                                      "two-experiment momentum sign comparison");
    double bc_k = 10.0, bc_t = 50.0, bc_dt = 1e-3;
    long bc_trials = 1000;
    sc_ctx->add_option("--k", bc_k, "packet boost")->capture_default_str();
    sc_ctx->add_option("--t-final", bc_t, "detection horizon")->capture_default_str();
    sc_ctx->add_option("--dt", bc_dt, "nominal step")->capture_default_str();
    sc_ctx->add_option("--trials", bc_trials, "sampled pairs")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunOutput output;
        if (sc_entangle->parsed()) {
            output = run_entangle_check(seed, ec_n, ec_bases, ec_ops);
        } else if (sc_perfect->parsed()) {
            output = run_perfect_correlation(seed, pc_n, pc_trials);
        } else if (sc_epr->parsed()) {
            output = run_epr_lattice(seed, epr_m, epr_spacing, epr_x0, epr_trials);
        } else if (sc_clifton->parsed()) {
            output = run_clifton_verify(seed, cl_n, cl_k0, cl_m, cl_spacing);
        } else if (app.get_subcommand("vonneumann-demo")->parsed()) {
            output = run_vonneumann(seed);
        } else if (sc_osc->parsed()) {
            output = run_oscillator(seed, osc_vp, osc_vx, osc_lo, osc_hi, osc_steps, osc_nmax);
        } else if (sc_traj->parsed()) {
            output = run_bohm_trajectory(seed, bt_model, bt_x0, bt_t, bt_dt, bt_k, bt_y0);
        } else if (sc_mom->parsed()) {
            output = run_bohm_momentum(seed, bm_trials, bm_t, bm_dt);
        } else if (sc_eq->parsed()) {
            output = run_bohm_equivariance(seed, be_model, be_t, be_trials, be_dt, be_k);
        } else if (sc_ctx->parsed()) {
            output = run_bohm_contextuality(seed, bc_k, bc_t, bc_dt, bc_trials);
        } else {
            std::cerr << "error: no subcommand selected\n";
            return 2;
        }
        return emit(output, out_path, format);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace nlab::cli
