#include "nlab/nogo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace nlab::nogo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// cos(2*pi*k0*n/N) over the sites, with the angle reduced exactly mod N.
double site_cos(int k0, int n, int n_points) {
    long long red = (static_cast<long long>(k0) * n) % n_points;
    if (red < 0) red += n_points;
    return std::cos(kTwoPi * static_cast<double>(red) / n_points);
}

// cos(pi*k/k0) over the dual indices, reduced mod 2*k0.
double dual_cos(int k0, int k) {
    long long red = k % (2LL * k0);
    if (red < 0) red += 2LL * k0;
    return std::cos(std::numbers::pi * static_cast<double>(red) / k0);
}

Eigen::VectorXcd two_particle_diag(const lattice::LatticeConfig& cfg, int particle,
                                   const std::function<double(int)>& per_index) {
    const int n = cfg.n_points;
    Eigen::VectorXcd diag(static_cast<Eigen::Index>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int idx = (particle == 0) ? (cfg.origin + i) : (cfg.origin + j);
            diag(static_cast<Eigen::Index>(i) * n + j) = per_index(idx);
        }
    return diag;
}

// exp(-i b Q) with b = k_b * dual_spacing, on the single-particle space.
Eigen::MatrixXcd u_phase_dense(const lattice::LatticeConfig& cfg, int k_b) {
    const int n = cfg.n_points;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        long long red = (static_cast<long long>(k_b) * (cfg.origin + i)) % n;
        if (red < 0) red += n;
        m(i, i) = std::polar(1.0, -kTwoPi * static_cast<double>(red) / n);
    }
    return m;
}

// exp(-i c P) with c = m_c * spacing: exactly the cyclic shift by m_c sites,
// so build the permutation matrix directly (the momentum-diagonal route
// agrees to solver precision and is covered by its own test).
Eigen::MatrixXcd v_shift_dense(const lattice::LatticeConfig& cfg, int m_c) {
    const int n = cfg.n_points;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int s = 0; s < n; ++s) {
        const int target = cfg.wrap(static_cast<long long>(cfg.origin) + s + m_c) - cfg.origin;
        m(target, s) = 1.0;
    }
    return m;
}

std::vector<double> distinct_values(const Eigen::VectorXd& values, double tol) {
    std::vector<double> sorted(values.data(), values.data() + values.size());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    for (double v : sorted) {
        if (out.empty() || v - out.back() > tol) out.push_back(v);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// von Neumann's additivity counterexample

VonNeumannReport von_neumann_demo() {
    VonNeumannReport report;
    // Assigned values for the two scaled spin components: +-1/sqrt(2) each.
    const double half_root_two = std::sqrt(2.0) / 2.0;
    std::vector<double> sums;
    for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) sums.push_back(s1 * half_root_two + s2 * half_root_two);
    std::sort(sums.begin(), sums.end());
    for (double s : sums) {
        if (report.attained_sums.empty() || s != report.attained_sums.back())
            report.attained_sums.push_back(s);
    }

    Eigen::MatrixXcd sum_op(2, 2);
    const hilbert::Complex i(0.0, 1.0);
    // (sigma_x + sigma_y)/sqrt(2)
    sum_op << 0.0, (1.0 - i) / std::sqrt(2.0), (1.0 + i) / std::sqrt(2.0), 0.0;
    const auto spec = hilbert::eigendecompose(hilbert::Operator::dense(std::move(sum_op)));
    report.sum_op_eigenvalues.assign(spec.eigenvalues.data(),
                                     spec.eigenvalues.data() + spec.eigenvalues.size());

    report.intersection_empty = true;
    for (double s : report.attained_sums)
        for (double e : report.sum_op_eigenvalues)
            if (std::abs(s - e) < 1e-6) report.intersection_empty = false;
    return report;
}

// ---------------------------------------------------------------------------
// Oscillator level incompatibility

bool oscillator_compatibility(double vp, double vx, double omega, int n_max) {
    if (!(omega > 0.0)) throw Error("oscillator_compatibility: omega must be positive");
    const double energy = 0.5 * (vp * vp + omega * omega * vx * vx);
    for (int n = 0; n <= n_max; ++n) {
        if (std::abs(energy - omega * (n + 0.5)) < 1e-9) return true;
    }
    return false;
}

OscillatorSweepReport oscillator_sweep(double vp, double vx, double omega_min, double omega_max,
                                       int steps, int n_max) {
    OscillatorSweepReport report;
    report.vp = vp;
    report.vx = vx;
    report.n_max = n_max;
    for (int s = 0; s < steps; ++s) {
        const double omega = omega_min + (omega_max - omega_min) * s / std::max(steps - 1, 1);
        ++report.omegas_tested;
        if (!oscillator_compatibility(vp, vx, omega, n_max)) {
            ++report.incompatible;
            if (report.incompatible_examples.size() < 8) report.incompatible_examples.push_back(omega);
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Spectrum membership from the identity function

EigenvalueConstraintReport eigenvalue_constraint_demo(const Operator& o) {
    if (!o.is_self_adjoint(hilbert::kSolverTol))
        throw NotSelfAdjoint("eigenvalue_constraint_demo: operator is not self-adjoint");
    const auto spec = hilbert::eigendecompose(o);
    EigenvalueConstraintReport report;
    report.distinct_eigenvalues = distinct_values(spec.eigenvalues, 1e-9);
    // f restricted to the spectrum is the identity, so the spectral sum
    // sum f(lambda) P_lambda must reproduce the operator.
    Eigen::MatrixXcd f_of_o = Eigen::MatrixXcd::Zero(o.dim(), o.dim());
    for (Eigen::Index k = 0; k < o.dim(); ++k) {
        double lambda = spec.eigenvalues(k);
        // Snap to the distinct representative; identity on the spectrum.
        for (double d : report.distinct_eigenvalues)
            if (std::abs(d - lambda) < 1e-9) lambda = d;
        f_of_o += lambda * (spec.eigenvectors.col(k) * spec.eigenvectors.col(k).adjoint());
    }
    report.reconstruction_residual = (f_of_o - o.dense_entries()).cwiseAbs().maxCoeff();
    return report;
}

// ---------------------------------------------------------------------------
// Clifton set

CliftonSet build_clifton_set(int n_points, int k0, int m, double spacing) {
    if (n_points < 2 || n_points % 2 != 0 || k0 < 1 || m < 1 || 2 * k0 * m != n_points)
        throw IncommensurateParams(
            "build_clifton_set: need even n_points with 2*k0*m = n_points so that b*c = pi");
    const auto config = lattice::LatticeConfig::even_count(spacing, n_points);

    auto a_value = [&](int site) { return site_cos(k0, site, n_points); };
    auto b_value = [&](int dual) { return dual_cos(k0, dual); };
    const auto axes = config.axes(2);
    return CliftonSet{
        config,
        k0,
        m,
        config.dual_point(k0),
        Operator::position_diagonal(two_particle_diag(config, 0, a_value), axes),
        Operator::position_diagonal(two_particle_diag(config, 1, a_value), axes),
        Operator::momentum_diagonal(two_particle_diag(config, 0, b_value), axes),
        Operator::momentum_diagonal(two_particle_diag(config, 1, b_value), axes)};
}

double weyl_phase_residual(const lattice::LatticeConfig& config, int b_dual_index,
                           int c_shift_sites) {
    const int n = config.n_points;
    const Eigen::MatrixXcd u = u_phase_dense(config, b_dual_index);
    const Eigen::MatrixXcd v = v_shift_dense(config, c_shift_sites);
    long long red = (static_cast<long long>(b_dual_index) * c_shift_sites) % n;
    if (red < 0) red += n;
    const hilbert::Complex phase = std::polar(1.0, -kTwoPi * static_cast<double>(red) / n);
    return hilbert::operator_norm(Eigen::MatrixXcd(u * v - phase * (v * u)));
}

double weyl_phase_residual_max(const lattice::LatticeConfig& config) {
    double worst = 0.0;
    for (int kb = config.origin; kb < config.origin + config.n_points; ++kb)
        for (int mc = config.origin; mc < config.origin + config.n_points; ++mc)
            worst = std::max(worst, weyl_phase_residual(config, kb, mc));
    return worst;
}

CliftonRelationsReport clifton_relations_check(const CliftonSet& set) {
    CliftonRelationsReport report;
    const Eigen::MatrixXcd a1 = set.a1.dense_entries();
    const Eigen::MatrixXcd a2 = set.a2.dense_entries();
    const Eigen::MatrixXcd b1 = set.b1.dense_entries();
    const Eigen::MatrixXcd b2 = set.b2.dense_entries();

    auto push = [&](const std::string& name, const Eigen::MatrixXcd& mat) {
        const double r = hilbert::operator_norm(mat);
        report.entries.push_back({name, r});
        report.max_residual = std::max(report.max_residual, r);
    };

    push("[A1,A2]", a1 * a2 - a2 * a1);
    push("[B1,B2]", b1 * b2 - b2 * b1);
    push("[A1,B2]", a1 * b2 - b2 * a1);
    push("[A2,B1]", a2 * b1 - b1 * a2);
    push("{A1,B1}", a1 * b1 + b1 * a1);
    push("{A2,B2}", a2 * b2 + b2 * a2);
    const Eigen::MatrixXcd c = (a1 * a2) * (b2 * b1);
    const Eigen::MatrixXcd d = (a1 * b2) * (a2 * b1);
    push("[A1A2,B2B1]", (a1 * a2) * (b2 * b1) - (b2 * b1) * (a1 * a2));
    push("[A1B2,A2B1]", (a1 * b2) * (a2 * b1) - (a2 * b1) * (a1 * b2));
    push("C+D", c + d);

    report.commutator_contrast = hilbert::operator_norm(Eigen::MatrixXcd(a1 * b1 - b1 * a1));

    // Expansion route on the single-particle space: cos(aQ)cos(piP/a) splits
    // into four phase/shift terms, each anticommuting exactly because the
    // phase exp(-i b c) equals -1 for b c = +-pi.
    Eigen::MatrixXcd assembled =
        Eigen::MatrixXcd::Zero(set.config.n_points, set.config.n_points);
    for (int s : {-1, 1})
        for (int t : {-1, 1}) {
            const Eigen::MatrixXcd u = u_phase_dense(set.config, s * set.k0);
            const Eigen::MatrixXcd v = v_shift_dense(set.config, t * set.m);
            assembled += 0.25 * (u * v + v * u);
        }
    report.expansion_route_deviation = hilbert::operator_norm(assembled);
    return report;
}

bool clifton_params_admissible(int k0, int m) { return (k0 % 2 == 1) && (m % 2 == 1); }

ValueMapSearchReport clifton_value_map_search(const CliftonSet& set) {
    ValueMapSearchReport report;
    report.multiplicative_forces_equal = true;
    report.opposite_nonzero_impossible = true;
    // Magnitudes are irrelevant to the sign clash; enumerate representative
    // +-1 assignments exhaustively.
    for (int sa1 : {-1, 1})
        for (int sa2 : {-1, 1})
            for (int sb1 : {-1, 1})
                for (int sb2 : {-1, 1}) {
                    ValueAssignment v{static_cast<double>(sa1), static_cast<double>(sa2),
                                      static_cast<double>(sb1), static_cast<double>(sb2)};
                    const double v_c = (v.a1 * v.a2) * (v.b2 * v.b1);
                    const double v_d = (v.a1 * v.b2) * (v.a2 * v.b1);
                    report.patterns.push_back({v, v_c, v_d});
                    if (v_c != v_d) report.multiplicative_forces_equal = false;
                    if (v_c == -v_d && v_c != 0.0) report.opposite_nonzero_impossible = false;
                }
    report.contradiction =
        report.multiplicative_forces_equal && report.opposite_nonzero_impossible;

    // Spectrum audit for the escape hatch.
    const int n = set.config.n_points;
    Eigen::VectorXd a_vals(n), b_vals(n);
    for (int i = 0; i < n; ++i) {
        a_vals(i) = site_cos(set.k0, set.config.origin + i, n);
        b_vals(i) = dual_cos(set.k0, set.config.origin + i);
    }
    report.position_cos_spectrum = distinct_values(a_vals, 1e-12);
    report.momentum_cos_spectrum = distinct_values(b_vals, 1e-12);
    auto has_zero = [](const std::vector<double>& vals) {
        for (double v : vals)
            if (std::abs(v) < 1e-12) return true;
        return false;
    };
    const bool a_has_zero = has_zero(report.position_cos_spectrum);
    const bool b_has_zero = has_zero(report.momentum_cos_spectrum);
    report.params_admissible = !a_has_zero && !b_has_zero;
    report.zero_map_flagged = !a_has_zero || !b_has_zero;

    // Alternatives with all four spectra bounded away from zero; odd k0 and
    // odd m is exactly the parity condition.
    for (int np = 2; np <= 32; np += 2)
        for (int k0 = 1; k0 <= np / 2; ++k0) {
            if (np % (2 * k0) != 0) continue;
            const int m = np / (2 * k0);
            if (clifton_params_admissible(k0, m))
                report.admissible_alternatives.push_back({np, k0, m});
        }

    report.conclusion =
        "multiplicativity over the commuting products forces v(C) = v(D) = "
        "v(A1)v(A2)v(B1)v(B2) for every sign assignment, while C = -D with f(x) = -x forces "
        "v(C) = -v(D); both hold only if v(C) = 0, impossible once all four generator values "
        "are nonzero";
    if (!report.params_admissible)
        report.conclusion +=
            "; the given parameters put 0 in a generator spectrum, and the admissible "
            "alternatives listed keep every generator value nonvanishing";
    return report;
}

}  // namespace nlab::nogo
