#include "nlab/bohm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "nlab/parallel.hpp"
#include "nlab/stats.hpp"

namespace nlab::bohm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNodeFloor = 1e-12;
constexpr int kMaxHalvings = 20;
const double kQuarterRootPi = std::pow(kPi, -0.25);

// Packet value without the shared (1+it)^{-1/2} pi^{-1/4} prefactor, which
// cancels in every velocity ratio. inv_denom = 1/(1+it).
Complex packet_core(double k, double x, double t, Complex inv_denom) {
    const double u = x - k * t;
    const Complex exponent =
        Complex(0.0, k * x - 0.5 * k * k * t) - 0.5 * u * u * inv_denom;
    return std::exp(exponent);
}

// d/dx of the packet exponent: ik - (x - kt)/(1+it).
Complex packet_log_derivative(double k, double x, double t, Complex inv_denom) {
    return Complex(0.0, k) - (x - k * t) * inv_denom;
}

}  // namespace

GaussianPacketModel::GaussianPacketModel(std::vector<Packet> packets)
    : packets_(std::move(packets)) {
    if (packets_.empty()) throw Error("GaussianPacketModel: need at least one packet");
    // Norm^2 = sum_jl c_j conj(c_l) exp(-(k_j-k_l)^2/4) from the Gaussian
    // overlaps at t = 0; the free evolution preserves it.
    Complex norm_sq = 0.0;
    for (const auto& a : packets_)
        for (const auto& b : packets_) {
            const double dk = a.boost - b.boost;
            norm_sq += a.coefficient * std::conj(b.coefficient) * std::exp(-0.25 * dk * dk);
        }
    const double n = std::sqrt(norm_sq.real());
    if (!(n > 0.0)) throw Error("GaussianPacketModel: packets cancel to a null state");
    for (auto& p : packets_) p.coefficient /= n;
}

GaussianPacketModel GaussianPacketModel::ground() { return GaussianPacketModel({{0.0, 1.0}}); }

GaussianPacketModel GaussianPacketModel::boosted(double k) {
    return GaussianPacketModel({{k, 1.0}});
}

GaussianPacketModel GaussianPacketModel::symmetric_pair(double k) {
    return GaussianPacketModel({{k, 1.0}, {-k, 1.0}});
}

GaussianPacketModel GaussianPacketModel::collapsed_pair(double k, double y0) {
    const Complex c_plus = std::polar(1.0, k * y0);
    const Complex c_minus = std::polar(1.0, -k * y0);
    return GaussianPacketModel({{k, c_plus}, {-k, c_minus}});
}

Complex GaussianPacketModel::evaluate(double x, double t) const {
    const Complex denom(1.0, t);
    const Complex inv_denom = 1.0 / denom;
    const Complex prefactor = kQuarterRootPi / std::sqrt(denom);
    Complex sum = 0.0;
    for (const auto& p : packets_) sum += p.coefficient * packet_core(p.boost, x, t, inv_denom);
    return prefactor * sum;
}

double GaussianPacketModel::density(double x, double t) const { return std::norm(evaluate(x, t)); }

double GaussianPacketModel::velocity(double x, double t) const {
    const Complex inv_denom = 1.0 / Complex(1.0, t);
    if (packets_.size() == 1) {
        // Single packet: Im(ik - (x-kt)/(1+it)) = k + t(x-kt)/(1+t^2), no
        // node anywhere.
        const double k = packets_[0].boost;
        return k + t * (x - k * t) / (1.0 + t * t);
    }
    Complex psi = 0.0;
    Complex dpsi = 0.0;
    double scale = 0.0;
    for (const auto& p : packets_) {
        const Complex core = p.coefficient * packet_core(p.boost, x, t, inv_denom);
        psi += core;
        dpsi += core * packet_log_derivative(p.boost, x, t, inv_denom);
        scale += std::abs(p.coefficient);
    }
    if (std::abs(psi) <= kNodeFloor * scale)
        throw NearNode("velocity: wave function below the node floor");
    return (dpsi / psi).imag();
}

double velocity_field(const GaussianPacketModel& model, double x, double t) {
    return model.velocity(x, t);
}

double GaussianPacketModel::sample_initial_position(SeededRng& rng) const {
    // |psi(x,0)|^2 = |psi_0(x)|^2 |sum c_j e^{ik_j x}|^2 with the envelope
    // bound (sum |c_j|)^2, so a Gaussian proposal with exact acceptance works.
    double bound = 0.0;
    for (const auto& p : packets_) bound += std::abs(p.coefficient);
    const double bound_sq = bound * bound;
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const double x = rng.normal(0.0, 1.0 / std::sqrt(2.0));
        Complex phase_sum = 0.0;
        for (const auto& p : packets_) phase_sum += p.coefficient * std::polar(1.0, p.boost * x);
        if (rng.uniform() * bound_sq <= std::norm(phase_sum)) return x;
    }
    throw Error("sample_initial_position: rejection sampler failed to accept");
}

// ---------------------------------------------------------------------------
// Integration

namespace {

double rk4_step(const GaussianPacketModel& model, double x, double t, double h) {
    const double k1 = model.velocity(x, t);
    const double k2 = model.velocity(x + 0.5 * h * k1, t + 0.5 * h);
    const double k3 = model.velocity(x + 0.5 * h * k2, t + 0.5 * h);
    const double k4 = model.velocity(x + h * k3, t + h);
    return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// One nominal step that lands exactly at t + h, halving internally (up to
// 20 levels) whenever a stage evaluation runs into a node.
double advance_one(const GaussianPacketModel& model, double x, double t, double h, int depth = 0) {
    try {
        return rk4_step(model, x, t, h);
    } catch (const NearNode&) {
        if (depth >= kMaxHalvings)
            throw StepUnderflow("integrate: step halving exhausted near a node");
        const double half = 0.5 * h;
        const double mid = advance_one(model, x, t, half, depth + 1);
        return advance_one(model, mid, t + half, half, depth + 1);
    }
}

template <class OnStep>
void integrate_steps(const GaussianPacketModel& model, double x0, double t0, double t1, double dt,
                     OnStep&& on_step) {
    if (!(dt > 0.0)) throw Error("integrate: need dt > 0");
    double x = x0;
    double t = t0;
    while (t < t1 - 1e-15 * std::max(1.0, std::abs(t1))) {
        const double h = std::min(dt, t1 - t);
        x = advance_one(model, x, t, h);
        t += h;
        on_step(t, x);
    }
}

}  // namespace

Trajectory integrate_trajectory(const GaussianPacketModel& model, double x0, double t0, double t1,
                                double dt) {
    Trajectory traj;
    traj.step_size = dt;
    const auto expected = static_cast<std::size_t>((t1 - t0) / dt) + 2;
    traj.times.reserve(expected);
    traj.positions.reserve(expected);
    traj.times.push_back(t0);
    traj.positions.push_back(x0);
    integrate_steps(model, x0, t0, t1, dt, [&](double t, double x) {
        traj.times.push_back(t);
        traj.positions.push_back(x);
    });
    return traj;
}

double integrate_final(const GaussianPacketModel& model, double x0, double t0, double t1,
                       double dt) {
    double final_x = x0;
    integrate_steps(model, x0, t0, t1, dt, [&](double, double x) { final_x = x; });
    return final_x;
}

double asymptotic_momentum(const Trajectory& traj, double min_horizon) {
    if (traj.times.empty()) throw HorizonTooShort("asymptotic_momentum: empty trajectory");
    const double t_end = traj.times.back();
    if (t_end < min_horizon)
        throw HorizonTooShort("asymptotic_momentum: trajectory ends before the horizon");
    return traj.positions.back() / t_end;
}

// ---------------------------------------------------------------------------
// Ensemble statistics

MomentumStatisticsReport momentum_statistics(long trials, double t_final, std::uint64_t seed,
                                             double dt) {
    if (trials < 1000) throw Error("momentum_statistics: need at least 1000 trials");
    const GaussianPacketModel model = GaussianPacketModel::ground();
    MomentumStatisticsReport report;
    report.trials = trials;
    report.t_final = t_final;
    report.dt = dt;
    report.estimates.assign(static_cast<std::size_t>(trials), 0.0);
    SeededRng root(seed);
    par::parallel_for(trials, [&](long i) {
        SeededRng rng = root.stream(static_cast<std::uint64_t>(i));
        const double x0 = model.sample_initial_position(rng);
        const double x_final = integrate_final(model, x0, 0.0, t_final, dt);
        report.estimates[static_cast<std::size_t>(i)] = x_final / t_final;
    });
    const auto ks = stats::ks_test(report.estimates, [](double p) {
        return stats::normal_cdf(p, 0.0, 1.0 / std::sqrt(2.0));
    });
    report.ks_statistic = ks.statistic;
    report.ks_p_value = ks.p_value;
    report.sample_mean = stats::mean(report.estimates);
    report.sample_variance = stats::variance(report.estimates);
    return report;
}

EquivarianceReport equivariance_test(const GaussianPacketModel& model, double t, long trials,
                                     std::uint64_t seed, double dt) {
    EquivarianceReport report;
    report.trials = trials;
    report.time = t;
    report.dt = dt;
    report.positions.assign(static_cast<std::size_t>(trials), 0.0);
    SeededRng root(seed);
    par::parallel_for(trials, [&](long i) {
        SeededRng rng = root.stream(static_cast<std::uint64_t>(i));
        const double x0 = model.sample_initial_position(rng);
        report.positions[static_cast<std::size_t>(i)] =
            (t > 0.0) ? integrate_final(model, x0, 0.0, t, dt) : x0;
    });

    double max_speed = 0.0;
    for (const auto& p : model.packets()) max_speed = std::max(max_speed, std::abs(p.boost));
    const double spread = std::sqrt(1.0 + t * t);
    const double lo = -max_speed * t - 12.0 * spread;
    const double hi = max_speed * t + 12.0 * spread;
    stats::KsResult ks{0.0, 0.0};
    if (model.packets().size() == 1) {
        // |psi(x,t)|^2 for one packet is Gaussian around kt with variance
        // (1+t^2)/2.
        const double center = model.packets()[0].boost * t;
        ks = stats::ks_test(report.positions, [&](double x) {
            return stats::normal_cdf(x, center, spread / std::sqrt(2.0));
        });
    } else {
        const int cells = std::max(4000, static_cast<int>((hi - lo) / 0.005));
        stats::TabulatedCdf cdf([&](double x) { return model.density(x, t); }, lo, hi, cells);
        ks = stats::ks_test(report.positions, [&](double x) { return cdf(x); });
    }
    report.ks_statistic = ks.statistic;
    report.ks_p_value = ks.p_value;
    report.sample_mean = stats::mean(report.positions);
    report.sample_variance = stats::variance(report.positions);
    long right = 0;
    for (double x : report.positions)
        if (x > 0.0) ++right;
    report.right_mass = static_cast<double>(right) / static_cast<double>(trials);
    return report;
}

// ---------------------------------------------------------------------------
// Contextuality of the momentum readout

std::pair<double, double> wz_from_xy(double x, double y) {
    const double inv_root2 = 1.0 / std::sqrt(2.0);
    return {(x + y) * inv_root2, (x - y) * inv_root2};
}

std::pair<double, double> xy_from_wz(double w, double z) {
    const double inv_root2 = 1.0 / std::sqrt(2.0);
    return {(w + z) * inv_root2, (w - z) * inv_root2};
}

void ContextualityParams::validate() const {
    if (!(k > 0.0)) throw Error("ContextualityParams: k must be positive");
    if (!(horizon > 1.0)) throw Error("ContextualityParams: horizon must exceed 1");
    const double bound = 0.01 * std::min(1.0, 1.0 / k);
    if (dt > bound * (1.0 + 1e-12))
        throw Error("ContextualityParams: dt must satisfy dt <= 0.01*min(1, 1/k)");
}

double experiment1(const ContextualityParams& params, double x0, double y0) {
    params.validate();
    if (std::abs(x0 + y0) < 1e-6)
        throw DegenerateInitial("experiment1: x0 + y0 on the symmetric axis");
    const auto [w0, z0] = wz_from_xy(x0, y0);
    // The pair wave function factorizes in (w, z): the w factor is the
    // symmetric two-packet state at boost sqrt(2) k, the z factor the ground
    // packet, so the two coordinates integrate independently.
    const GaussianPacketModel w_model = GaussianPacketModel::symmetric_pair(std::sqrt(2.0) * params.k);
    const GaussianPacketModel z_model = GaussianPacketModel::ground();
    const double w_final = integrate_final(w_model, w0, 0.0, params.horizon, params.dt);
    const double z_final = integrate_final(z_model, z0, 0.0, params.horizon, params.dt);
    const double x_final = xy_from_wz(w_final, z_final).first;
    return x_final / params.horizon;
}

double collapsed_median(double k, double y0) {
    const auto density = [&](double x) {
        const double c = std::cos(k * (x + y0));
        return std::exp(-x * x) * c * c;
    };
    const int cells = std::max(8000, static_cast<int>(16.0 / (0.02 * std::min(1.0, 1.0 / k))));
    stats::TabulatedCdf cdf(density, -8.0, 8.0, cells);
    return cdf.quantile(0.5);
}

double experiment2_exclusion_band(double k) { return 0.5 * kPi / k; }

double experiment2(const ContextualityParams& params, double x0, double y0, SeededRng& rng) {
    params.validate();
    (void)rng;  // positions are real: the readout of the partner position is
                // y0 itself, with no further randomness
    if (std::abs(x0) < 1e-6) throw DegenerateInitial("experiment2: x0 at the origin");
    const double median = collapsed_median(params.k, y0);
    if (std::abs(x0 - median) < experiment2_exclusion_band(params.k))
        throw DegenerateInitial("experiment2: x0 inside the exclusion band around the median");
    const GaussianPacketModel collapsed = GaussianPacketModel::collapsed_pair(params.k, y0);
    const double x_final = integrate_final(collapsed, x0, 0.0, params.horizon, params.dt);
    return x_final / params.horizon;
}

std::pair<double, double> sample_pair_initial(double k, SeededRng& rng) {
    const double sigma = 1.0 / std::sqrt(2.0);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const double x = rng.normal(0.0, sigma);
        const double y = rng.normal(0.0, sigma);
        const double c = std::cos(k * (x + y));
        if (rng.uniform() <= c * c) return {x, y};
    }
    throw Error("sample_pair_initial: rejection sampler failed to accept");
}

namespace {

int sign_of(double v) { return (v > 0.0) ? 1 : ((v < 0.0) ? -1 : 0); }

}  // namespace

ContextualityReport contextuality_report(const ContextualityParams& params) {
    params.validate();
    ContextualityReport report;
    report.params = params;
    report.samples = params.trials;
    report.outcomes.assign(static_cast<std::size_t>(params.trials), TrialOutcome{});
    SeededRng root(params.seed);
    par::parallel_for(params.trials, [&](long i) {
        SeededRng rng = root.stream(static_cast<std::uint64_t>(i));
        auto& out = report.outcomes[static_cast<std::size_t>(i)];
        const auto [x0, y0] = sample_pair_initial(params.k, rng);
        out.x0 = x0;
        out.y0 = y0;
        try {
            out.p1 = experiment1(params, x0, y0);
            out.exp1_admissible = true;
        } catch (const DegenerateInitial&) {
        }
        try {
            out.p2 = experiment2(params, x0, y0, rng);
            out.exp2_admissible = true;
        } catch (const DegenerateInitial&) {
        }
    });
    for (const auto& out : report.outcomes) {
        if (out.exp1_admissible) {
            ++report.exp1_admissible;
            if (sign_of(out.p1) == sign_of(out.x0 + out.y0)) ++report.exp1_sign_matches;
        }
        if (out.exp2_admissible) {
            ++report.exp2_admissible;
            if (sign_of(out.p2) == sign_of(out.x0)) ++report.exp2_sign_matches;
        }
        if (out.exp1_admissible && out.exp2_admissible) {
            ++report.both_admissible;
            if (sign_of(out.p1) != sign_of(out.p2)) ++report.disagreements;
        }
    }
    report.exp1_agreement_rate =
        report.exp1_admissible ? static_cast<double>(report.exp1_sign_matches) /
                                     static_cast<double>(report.exp1_admissible)
                               : 0.0;
    report.exp2_agreement_rate =
        report.exp2_admissible ? static_cast<double>(report.exp2_sign_matches) /
                                     static_cast<double>(report.exp2_admissible)
                               : 0.0;
    report.disagreement_fraction =
        report.both_admissible ? static_cast<double>(report.disagreements) /
                                     static_cast<double>(report.both_admissible)
                               : 0.0;
    return report;
}

std::pair<double, double> integrate_pair_direct(double k, double x0, double y0, double t1,
                                                double dt) {
    // psi(x,y,t) = A (psi_{+k}(x,t) psi_{+k}(y,t) + psi_{-k}(x,t) psi_{-k}(y,t));
    // the normalization cancels in the velocity ratios.
    const auto velocities = [&](double x, double y, double t) -> std::pair<double, double> {
        const Complex inv_denom = 1.0 / Complex(1.0, t);
        const Complex px_p = packet_core(k, x, t, inv_denom);
        const Complex px_m = packet_core(-k, x, t, inv_denom);
        const Complex py_p = packet_core(k, y, t, inv_denom);
        const Complex py_m = packet_core(-k, y, t, inv_denom);
        const Complex psi = px_p * py_p + px_m * py_m;
        if (std::abs(psi) <= kNodeFloor * 2.0)
            throw NearNode("integrate_pair_direct: wave function below the node floor");
        const Complex dx =
            px_p * packet_log_derivative(k, x, t, inv_denom) * py_p +
            px_m * packet_log_derivative(-k, x, t, inv_denom) * py_m;
        const Complex dy =
            px_p * py_p * packet_log_derivative(k, y, t, inv_denom) +
            px_m * py_m * packet_log_derivative(-k, y, t, inv_denom);
        return {(dx / psi).imag(), (dy / psi).imag()};
    };

    double x = x0, y = y0, t = 0.0;
    while (t < t1 - 1e-15 * std::max(1.0, std::abs(t1))) {
        double h = std::min(dt, t1 - t);
        int halvings = 0;
        for (;;) {
            try {
                const auto [vx1, vy1] = velocities(x, y, t);
                const auto [vx2, vy2] = velocities(x + 0.5 * h * vx1, y + 0.5 * h * vy1, t + 0.5 * h);
                const auto [vx3, vy3] = velocities(x + 0.5 * h * vx2, y + 0.5 * h * vy2, t + 0.5 * h);
                const auto [vx4, vy4] = velocities(x + h * vx3, y + h * vy3, t + h);
                x += h / 6.0 * (vx1 + 2.0 * vx2 + 2.0 * vx3 + vx4);
                y += h / 6.0 * (vy1 + 2.0 * vy2 + 2.0 * vy3 + vy4);
                t += h;
                break;
            } catch (const NearNode&) {
                if (++halvings > kMaxHalvings)
                    throw StepUnderflow("integrate_pair_direct: step halving exhausted");
                h *= 0.5;
            }
        }
    }
    return {x, y};
}

NoCrossingReport no_crossing_check(const GaussianPacketModel& model, std::vector<double> starts,
                                   double t1, double dt) {
    std::sort(starts.begin(), starts.end());
    const int n = static_cast<int>(starts.size());
    NoCrossingReport report;
    report.pairs = n - 1;
    report.min_gap = std::numeric_limits<double>::infinity();
    std::vector<double> xs = starts;
    double t = 0.0;
    while (t < t1 - 1e-15 * std::max(1.0, std::abs(t1))) {
        const double h = std::min(dt, t1 - t);
        for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] =
            advance_one(model, xs[static_cast<std::size_t>(i)], t, h);
        t += h;
        ++report.steps;
        for (int i = 0; i + 1 < n; ++i) {
            const double gap = xs[static_cast<std::size_t>(i) + 1] - xs[static_cast<std::size_t>(i)];
            report.min_gap = std::min(report.min_gap, gap);
            if (gap < -1e-9) ++report.crossings;
        }
    }
    return report;
}

}  // namespace nlab::bohm
