// Acceptance suite: every top-level contract of the library, one line of
// output per criterion, nonzero exit if any fails. Thresholds are fixed here,
// not tunable.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "nlab/bohm.hpp"
#include "nlab/entangle.hpp"
#include "nlab/hilbert.hpp"
#include "nlab/lattice.hpp"
#include "nlab/measure.hpp"
#include "nlab/nogo.hpp"
#include "nlab/stats.hpp"

using namespace nlab;
using hilbert::Basis;
using hilbert::Operator;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool passed, double seconds) {
    std::printf("%s criterion %2d: %-34s (%.2f s)\n", passed ? "PASS" : "FAIL", number,
                name.c_str(), seconds);
    std::fflush(stdout);
    if (!passed) ++g_failures;
}

template <class Body>
void criterion(int number, const std::string& name, Body&& body) {
    const auto start = std::chrono::steady_clock::now();
    bool passed = false;
    try {
        passed = body();
    } catch (const std::exception& e) {
        std::printf("     criterion %2d threw: %s\n", number, e.what());
        passed = false;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(number, name, passed, seconds);
}

Operator spin_z() {
    Eigen::MatrixXcd m(2, 2);
    m << 1, 0, 0, -1;
    return Operator::dense(std::move(m));
}

// 1. The partner of diag(1,-1) on the singlet is exactly the sign flip.
bool singlet_partner() {
    const auto partner = entangle::partner_operator(entangle::singlet(), spin_z());
    return (partner.dense_entries() + spin_z().dense_entries()).cwiseAbs().maxCoeff() < 1e-12;
}

// 2. Perfect correlations: residuals below 1e-10 for random observables and
//    a 100% match rate over 10^4 seeded trials.
bool perfect_correlations() {
    SeededRng rng(2024);
    for (int n : {2, 3, 5}) {
        const auto state = entangle::build_from_bases(Basis::random_orthonormal(n, rng),
                                                      Basis::random_orthonormal(n, rng));
        for (int trial = 0; trial < 100; ++trial) {
            const auto o = Operator::dense(hilbert::random_hermitian(n, rng));
            const auto partner = entangle::partner_operator(state, o);
            if (entangle::correlation_residual(state, o, partner) >= 1e-10) return false;
        }
    }
    SeededRng trial_rng(7);
    const auto rep = measure::perfect_correlation_trial(entangle::singlet(), spin_z(), trial_rng,
                                                        10000);
    return rep.matches == rep.trials;
}

// 3. The joint-state formula gives the same vector in every basis.
bool basis_independence() {
    SeededRng rng(3);
    for (int n : {2, 3, 5}) {
        const auto state = entangle::build_from_bases(Basis::random_orthonormal(n, rng),
                                                      Basis::random_orthonormal(n, rng));
        for (int trial = 0; trial < 100; ++trial) {
            const auto chi = Basis::random_orthonormal(n, rng);
            const auto rep = entangle::represent_in_basis(state, chi);
            if ((rep.amplitudes() - state.joint_state().amplitudes()).cwiseAbs().maxCoeff() >=
                1e-12)
                return false;
        }
    }
    return true;
}

// 4. Lattice orthogonality at every point up to half-width 6, and entrywise
//    agreement of the three pair-state forms.
bool lattice_orthogonality() {
    for (int m = 1; m <= 6; ++m) {
        const auto cfg = lattice::LatticeConfig::odd(1.0, m);
        const int n = cfg.n_points;
        for (int i = cfg.origin; i < cfg.origin + n; ++i) {
            const double expect = (i == 0) ? n : 0.0;
            if (std::abs(lattice::orthogonality_sum(cfg, cfg.point(i)) - expect) >= 5e-9 * n)
                return false;
            if (std::abs(lattice::dual_orthogonality_sum(cfg, cfg.dual_point(i)) - expect) >=
                5e-9 * n)
                return false;
        }
    }
    for (int m : {2, 3}) {
        const auto cfg = lattice::LatticeConfig::odd(1.0, m);
        for (double x0 : {0.0, 1.0}) {
            const auto fa = lattice::epr_form_fourier_sum(cfg, {x0});
            const auto fb = lattice::epr_form_delta(cfg, {x0});
            const auto fc = lattice::epr_form_convolution(cfg, {x0});
            if ((fa - fb).cwiseAbs().maxCoeff() >= 1e-10) return false;
            if ((fb - fc).cwiseAbs().maxCoeff() >= 1e-10) return false;
        }
    }
    return true;
}

// 5. Pair-state measurement correlations at half-width 3: positions track the
//    offset, momenta are opposite, in every one of 10^3 trials each.
bool lattice_correlations() {
    const auto cfg = lattice::LatticeConfig::odd(1.0, 3);
    const lattice::EprParams params{1.0};
    const auto state = lattice::build_epr_state(cfg, params);
    SeededRng rng_q(11);
    const auto qrep = lattice::epr_position_correlation(state, params, rng_q, 1000);
    SeededRng rng_p(13);
    const auto prep = lattice::epr_momentum_correlation(state, rng_p, 1000);
    return qrep.matches == 1000 && prep.matches == 1000;
}

// 6. Observable-algebra relations at both parameter points, the phase
//    relation over all pairs, and the value-map contradiction with an
//    admissible alternative.
bool clifton_relations() {
    for (auto [n, k0, m] : {std::array<int, 3>{8, 1, 4}, std::array<int, 3>{16, 2, 4}}) {
        const auto set = nogo::build_clifton_set(n, k0, m, 1.0);
        const auto rep = nogo::clifton_relations_check(set);
        if (rep.max_residual >= 1e-10) return false;
        if (nogo::weyl_phase_residual_max(set.config) >= 1e-12) return false;
        const auto search = nogo::clifton_value_map_search(set);
        if (!search.contradiction) return false;
        if (search.admissible_alternatives.empty()) return false;
    }
    return true;
}

// 7. Attained sums of assigned spin values versus the summed spectrum.
bool von_neumann() {
    const auto rep = nogo::von_neumann_demo();
    const double root2 = std::sqrt(2.0);
    if (rep.attained_sums.size() != 3) return false;
    if (rep.attained_sums[0] != -root2 || rep.attained_sums[1] != 0.0 ||
        rep.attained_sums[2] != root2)
        return false;
    if (rep.sum_op_eigenvalues.size() != 2) return false;
    if (std::abs(rep.sum_op_eigenvalues[0] + 1.0) >= 1e-12) return false;
    if (std::abs(rep.sum_op_eigenvalues[1] - 1.0) >= 1e-12) return false;
    return rep.intersection_empty;
}

// 8. Integrated trajectories match the closed-form spreading law.
bool trajectory_oracle() {
    const auto model = bohm::GaussianPacketModel::ground();
    SeededRng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const double x0 = rng.uniform(-3.0, 3.0);
        const double got = bohm::integrate_final(model, x0, 0.0, 10.0, 1e-3);
        const double expect = x0 * std::sqrt(101.0);
        if (std::abs(got - expect) > 1e-6 * std::max(1.0, std::abs(expect))) return false;
    }
    return true;
}

// 9. Asymptotic-position momentum statistics against the transform-squared
//    density.
bool momentum_statistics() {
    const auto rep = bohm::momentum_statistics(10000, 100.0, 2024, 0.01);
    if (rep.ks_p_value <= 0.01) return false;
    const double sigma_var = 0.5 * std::sqrt(2.0 / 9999.0);
    return std::abs(rep.sample_variance - 0.5) <= 3.0 * sigma_var;
}

// 10. Equivariance of the transported cloud at three times.
bool equivariance() {
    const auto model = bohm::GaussianPacketModel::ground();
    for (double t : {1.0, 3.0, 10.0}) {
        const auto rep = bohm::equivariance_test(model, t, 10000, 10);
        if (rep.ks_p_value <= 0.01) return false;
    }
    return true;
}

// 11. Momentum contextuality: each experiment follows its own sign law and
//     the two disagree on a macroscopic fraction of samples.
bool contextuality() {
    bohm::ContextualityParams params;
    params.k = 10.0;
    params.horizon = 50.0;
    params.dt = 1e-3;
    params.trials = 1000;
    params.seed = 11;
    const auto rep = bohm::contextuality_report(params);
    if (rep.exp1_agreement_rate < 0.95) return false;
    if (rep.exp2_agreement_rate < 0.95) return false;
    return rep.disagreement_fraction > 0.1;
}

// 12. No trajectory crossings in the two-packet model.
bool no_crossing() {
    const auto model = bohm::GaussianPacketModel::symmetric_pair(std::numbers::sqrt2 * 10.0);
    SeededRng rng(12);
    std::vector<double> starts;
    for (int i = 0; i < 201; ++i) starts.push_back(model.sample_initial_position(rng));
    const auto rep = bohm::no_crossing_check(model, starts, 5.0, 2e-4);
    return rep.pairs == 200 && rep.crossings == 0;
}

}  // namespace

int main() {
    criterion(1, "singlet partner sign flip", singlet_partner);
    criterion(2, "perfect correlations", perfect_correlations);
    criterion(3, "basis independence", basis_independence);
    criterion(4, "lattice orthogonality and forms", lattice_orthogonality);
    criterion(5, "lattice pair correlations", lattice_correlations);
    criterion(6, "clifton relations and value map", clifton_relations);
    criterion(7, "spin-sum spectrum clash", von_neumann);
    criterion(8, "trajectory spreading oracle", trajectory_oracle);
    criterion(9, "momentum statistics", momentum_statistics);
    criterion(10, "equivariance", equivariance);
    criterion(11, "momentum contextuality", contextuality);
    criterion(12, "no trajectory crossing", no_crossing);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 12 criteria passed\n");
    return 0;
}
