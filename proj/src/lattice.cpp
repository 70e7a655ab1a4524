#include "nlab/lattice.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace nlab::lattice {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kDenseFourParticleCap = 13;

Eigen::Index pow_ll(int base, int exp) {
    Eigen::Index r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// LatticeConfig

LatticeConfig LatticeConfig::odd(double spacing, int half_count) {
    if (!(spacing > 0.0) || half_count < 1)
        throw Error("LatticeConfig::odd: need spacing > 0 and half_count >= 1");
    return {spacing, 2 * half_count + 1, -half_count};
}

LatticeConfig LatticeConfig::even_count(double spacing, int n_points) {
    if (!(spacing > 0.0) || n_points < 2 || n_points % 2 != 0)
        throw Error("LatticeConfig::even_count: need spacing > 0 and even n_points >= 2");
    return {spacing, n_points, -n_points / 2};
}

double LatticeConfig::dual_spacing() const { return kTwoPi / (spacing * n_points); }

int LatticeConfig::wrap(long long raw) const {
    long long rel = (raw - origin) % n_points;
    if (rel < 0) rel += n_points;
    return static_cast<int>(rel) + origin;
}

int LatticeConfig::index_of(double x) const {
    const double ratio = x / spacing;
    const long long n = std::llround(ratio);
    if (std::abs(ratio - static_cast<double>(n)) > 1e-9)
        throw OffLattice("index_of: value is not a lattice point");
    if (n < origin || n >= origin + n_points)
        throw OffLattice("index_of: value is outside the box");
    return static_cast<int>(n);
}

int LatticeConfig::dual_index_of(double p) const {
    const double ratio = p / dual_spacing();
    const long long k = std::llround(ratio);
    if (std::abs(ratio - static_cast<double>(k)) > 1e-9)
        throw OffLattice("dual_index_of: value is not a dual lattice point");
    if (k < origin || k >= origin + n_points)
        throw OffLattice("dual_index_of: value is outside the dual box");
    return static_cast<int>(k);
}

std::vector<hilbert::AxisSpec> LatticeConfig::axes(int n_particles) const {
    return std::vector<hilbert::AxisSpec>(static_cast<std::size_t>(n_particles),
                                          hilbert::AxisSpec{n_points, origin});
}

// ---------------------------------------------------------------------------
// LatticeState

LatticeState::LatticeState(LatticeConfig config, int n_particles, Eigen::VectorXcd amplitudes)
    : config_(config), n_particles_(n_particles), amps_(std::move(amplitudes)) {
    if (n_particles_ != 1 && n_particles_ != 2 && n_particles_ != 4)
        throw Error("LatticeState: supported particle counts are 1, 2 and 4");
    if (amps_.size() != pow_ll(config_.n_points, n_particles_))
        throw DimMismatch("LatticeState: amplitude count does not match the grid");
    const double n = amps_.norm();
    if (n == 0.0) throw Error("LatticeState: zero amplitude vector");
    if (std::abs(n - 1.0) > 8.0 * std::numeric_limits<double>::epsilon()) amps_ /= n;
}

LatticeState LatticeState::product_pair(LatticeState pair13, LatticeState pair24) {
    if (pair13.n_particles() != 2 || pair24.n_particles() != 2)
        throw DimMismatch("LatticeState::product_pair: factors must be pair states");
    if (!(pair13.config() == pair24.config()))
        throw DimMismatch("LatticeState::product_pair: factor lattices differ");
    LatticeState out;
    out.config_ = pair13.config();
    out.n_particles_ = 4;
    out.pair13_ = std::make_shared<const LatticeState>(std::move(pair13));
    out.pair24_ = std::make_shared<const LatticeState>(std::move(pair24));
    return out;
}

const LatticeState& LatticeState::pair13() const {
    if (!pair13_) throw Error("LatticeState::pair13: not a product-form state");
    return *pair13_;
}

const LatticeState& LatticeState::pair24() const {
    if (!pair24_) throw Error("LatticeState::pair24: not a product-form state");
    return *pair24_;
}

const Eigen::VectorXcd& LatticeState::amplitudes() const {
    if (is_product_form()) throw Error("LatticeState::amplitudes: state is in product form");
    return amps_;
}

Eigen::VectorXcd LatticeState::dense_amplitudes() const {
    if (!is_product_form()) return amps_;
    const int n = config_.n_points;
    if (n > kDenseFourParticleCap)
        throw TooLarge("LatticeState::dense_amplitudes: 4-particle grid above the dense cap");
    const auto& a = pair13_->amplitudes();  // indexed (x1, x3)
    const auto& b = pair24_->amplitudes();  // indexed (x2, x4)
    const Eigen::Index nn = n;
    Eigen::VectorXcd out(nn * nn * nn * nn);
    for (Eigen::Index i1 = 0; i1 < nn; ++i1)
        for (Eigen::Index i2 = 0; i2 < nn; ++i2)
            for (Eigen::Index i3 = 0; i3 < nn; ++i3)
                for (Eigen::Index i4 = 0; i4 < nn; ++i4)
                    out(((i1 * nn + i2) * nn + i3) * nn + i4) = a(i1 * nn + i3) * b(i2 * nn + i4);
    return out;
}

double LatticeState::norm() const {
    if (is_product_form()) return pair13_->norm() * pair24_->norm();
    return amps_.norm();
}

LatticeState dft(const LatticeState& state) {
    if (state.is_product_form()) {
        return LatticeState::product_pair(dft(state.pair13()), dft(state.pair24()));
    }
    Eigen::VectorXcd hat = hilbert::apply_grid_dft(state.amplitudes(),
                                                   state.config().axes(state.n_particles()), true);
    return LatticeState(state.config(), state.n_particles(), std::move(hat));
}

LatticeState idft(const LatticeState& state) {
    if (state.is_product_form()) {
        return LatticeState::product_pair(idft(state.pair13()), idft(state.pair24()));
    }
    Eigen::VectorXcd amps = hilbert::apply_grid_dft(state.amplitudes(),
                                                    state.config().axes(state.n_particles()), false);
    return LatticeState(state.config(), state.n_particles(), std::move(amps));
}

// ---------------------------------------------------------------------------
// Orthogonality sums

Complex orthogonality_sum(const LatticeConfig& config, double x) {
    const int n = config.index_of(x);  // OffLattice check
    const double xv = config.point(n);
    Complex sum = 0.0;
    for (int k = config.origin; k < config.origin + config.n_points; ++k) {
        sum += std::polar(1.0, xv * config.dual_point(k));
    }
    return sum;
}

Complex dual_orthogonality_sum(const LatticeConfig& config, double p) {
    const int k = config.dual_index_of(p);
    const double pv = config.dual_point(k);
    Complex sum = 0.0;
    for (int n = config.origin; n < config.origin + config.n_points; ++n) {
        sum += std::polar(1.0, config.point(n) * pv);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Operators

namespace {

int axis_index_of_flat(const LatticeConfig& config, Eigen::Index flat, int axis, int n_particles) {
    const Eigen::Index stride = pow_ll(config.n_points, n_particles - 1 - axis);
    return config.origin + static_cast<int>((flat / stride) % config.n_points);
}

}  // namespace

hilbert::Operator position_op(const LatticeConfig& config, int particle, int n_particles) {
    if (particle < 0 || particle >= n_particles) throw Error("position_op: bad particle index");
    const Eigen::Index total = pow_ll(config.n_points, n_particles);
    Eigen::VectorXcd diag(total);
    for (Eigen::Index i = 0; i < total; ++i)
        diag(i) = config.point(axis_index_of_flat(config, i, particle, n_particles));
    return hilbert::Operator::position_diagonal(std::move(diag), config.axes(n_particles));
}

hilbert::Operator momentum_op(const LatticeConfig& config, int particle, int n_particles) {
    if (particle < 0 || particle >= n_particles) throw Error("momentum_op: bad particle index");
    const Eigen::Index total = pow_ll(config.n_points, n_particles);
    Eigen::VectorXcd diag(total);
    for (Eigen::Index i = 0; i < total; ++i)
        diag(i) = config.dual_point(axis_index_of_flat(config, i, particle, n_particles));
    return hilbert::Operator::momentum_diagonal(std::move(diag), config.axes(n_particles));
}

// ---------------------------------------------------------------------------
// The regularized pair state

Eigen::VectorXcd epr_form_fourier_sum(const LatticeConfig& config, const EprParams& params) {
    const int o0 = config.index_of(params.x0);
    const int n = config.n_points;
    Eigen::VectorXcd out(static_cast<Eigen::Index>(n) * n);
    for (int n1 = config.origin; n1 < config.origin + n; ++n1)
        for (int n2 = config.origin; n2 < config.origin + n; ++n2) {
            // x1 - x2 + x0 reduced modulo the box before the phase sum.
            const int d = config.wrap(static_cast<long long>(n1) - n2 + o0);
            const double xd = config.point(d);
            Complex sum = 0.0;
            for (int k = config.origin; k < config.origin + n; ++k)
                sum += std::polar(1.0, xd * config.dual_point(k));
            out((n1 - config.origin) * static_cast<Eigen::Index>(n) + (n2 - config.origin)) = sum;
        }
    return out;
}

Eigen::VectorXcd epr_form_delta(const LatticeConfig& config, const EprParams& params) {
    const int o0 = config.index_of(params.x0);
    const int n = config.n_points;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n) * n);
    // sqrt(N) * delta_lattice(x1 - x2 + x0), with delta_lattice = sqrt(N) * kronecker.
    for (int n1 = config.origin; n1 < config.origin + n; ++n1) {
        const int n2 = config.wrap(static_cast<long long>(n1) + o0);
        out((n1 - config.origin) * static_cast<Eigen::Index>(n) + (n2 - config.origin)) =
            static_cast<double>(n);
    }
    return out;
}

Eigen::VectorXcd epr_form_convolution(const LatticeConfig& config, const EprParams& params) {
    const int o0 = config.index_of(params.x0);
    const int n = config.n_points;
    const double root_n = std::sqrt(static_cast<double>(n));
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n) * n);
    for (int n1 = config.origin; n1 < config.origin + n; ++n1)
        for (int n2 = config.origin; n2 < config.origin + n; ++n2) {
            Complex sum = 0.0;
            for (int m = config.origin; m < config.origin + n; ++m) {
                const double left = (config.wrap(static_cast<long long>(m) - n2 + o0) == 0)
                                        ? root_n
                                        : 0.0;
                const double right = (config.wrap(static_cast<long long>(n1) - m) == 0) ? root_n
                                                                                        : 0.0;
                sum += left * right;
            }
            out((n1 - config.origin) * static_cast<Eigen::Index>(n) + (n2 - config.origin)) = sum;
        }
    return out;
}

LatticeState build_epr_state(const LatticeConfig& config, const EprParams& params) {
    return LatticeState(config, 2, epr_form_delta(config, params));
}

LatticeState build_four_particle_state(const LatticeConfig& config, const EprParams& params) {
    LatticeState pair = build_epr_state(config, params);
    return LatticeState::product_pair(pair, pair);
}

Eigen::VectorXd four_particle_schmidt(const LatticeState& state) {
    if (state.n_particles() != 4) throw DimMismatch("four_particle_schmidt: need a 4-particle state");
    const Eigen::VectorXcd amps = state.dense_amplitudes();
    const Eigen::Index n = state.config().n_points;
    const Eigen::Index nn = n * n;
    // Rows are the (x1,x2) pair, columns the (x3,x4) pair. The dense layout
    // is (x1,x2,x3,x4) with x1 slowest, so regrouping needs a permutation.
    Eigen::MatrixXcd m(nn, nn);
    for (Eigen::Index i1 = 0; i1 < n; ++i1)
        for (Eigen::Index i2 = 0; i2 < n; ++i2)
            for (Eigen::Index i3 = 0; i3 < n; ++i3)
                for (Eigen::Index i4 = 0; i4 < n; ++i4)
                    m(i1 * n + i2, i3 * n + i4) = amps(((i1 * n + i2) * n + i3) * n + i4);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues();
}

// ---------------------------------------------------------------------------
// Measurements

namespace {

struct AxisRoute {
    const LatticeState* target;  // state owning the axis (factor or self)
    int local_axis;
    int which_factor;  // -1: dense state itself, 0: pair13, 1: pair24
};

AxisRoute route_axis(const LatticeState& state, int axis) {
    if (axis < 0 || axis >= state.n_particles()) throw Error("measurement: bad axis");
    if (!state.is_product_form()) return {&state, axis, -1};
    // Product layout: pair13 holds particles (1,3) = axes (0,2), pair24 holds
    // particles (2,4) = axes (1,3).
    if (axis == 0) return {&state.pair13(), 0, 0};
    if (axis == 2) return {&state.pair13(), 1, 0};
    if (axis == 1) return {&state.pair24(), 0, 1};
    return {&state.pair24(), 1, 1};
}

// Measurement of the diagonal observable along one axis of a dense state.
// `to_momentum` switches to the momentum representation of that axis first.
LatticeMeasurement measure_axis_dense(const LatticeState& state, int axis, bool to_momentum,
                                      SeededRng& rng) {
    const LatticeConfig& cfg = state.config();
    const auto axes = cfg.axes(state.n_particles());
    Eigen::VectorXcd work = state.amplitudes();
    if (to_momentum)
        work = hilbert::apply_axis_dft(work, axes, static_cast<std::size_t>(axis), true);

    const int n = cfg.n_points;
    std::vector<double> weights(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index i = 0; i < work.size(); ++i) {
        const int idx = axis_index_of_flat(cfg, i, axis, state.n_particles());
        weights[static_cast<std::size_t>(idx - cfg.origin)] += std::norm(work(i));
    }

    const double u = rng.uniform();
    double cum = 0.0;
    int pick = -1;
    for (int s = 0; s < n; ++s) {
        cum += weights[static_cast<std::size_t>(s)];
        if (u < cum) {
            pick = s;
            break;
        }
    }
    if (pick < 0) {
        for (int s = n; s-- > 0;)
            if (weights[static_cast<std::size_t>(s)] > 0.0) {
                pick = s;
                break;
            }
    }
    if (pick < 0) throw Error("measurement: no outcome carries probability");

    for (Eigen::Index i = 0; i < work.size(); ++i) {
        if (axis_index_of_flat(cfg, i, axis, state.n_particles()) - cfg.origin != pick) work(i) = 0.0;
    }
    if (to_momentum)
        work = hilbert::apply_axis_dft(work, axes, static_cast<std::size_t>(axis), false);

    const int out_index = cfg.origin + pick;
    const double value = to_momentum ? cfg.dual_point(out_index) : cfg.point(out_index);
    return {out_index, value, weights[static_cast<std::size_t>(pick)],
            LatticeState(cfg, state.n_particles(), std::move(work))};
}

LatticeMeasurement measure_axis(const LatticeState& state, int axis, bool to_momentum,
                                SeededRng& rng) {
    const AxisRoute route = route_axis(state, axis);
    if (route.which_factor < 0) return measure_axis_dense(state, axis, to_momentum, rng);
    LatticeMeasurement inner = measure_axis_dense(*route.target, route.local_axis, to_momentum, rng);
    LatticeState post = (route.which_factor == 0)
                            ? LatticeState::product_pair(inner.post_state, state.pair24())
                            : LatticeState::product_pair(state.pair13(), inner.post_state);
    return {inner.index, inner.value, inner.probability, std::move(post)};
}

}  // namespace

LatticeMeasurement measure_position(const LatticeState& state, int axis, SeededRng& rng) {
    return measure_axis(state, axis, false, rng);
}

LatticeMeasurement measure_momentum(const LatticeState& state, int axis, SeededRng& rng) {
    return measure_axis(state, axis, true, rng);
}

// ---------------------------------------------------------------------------
// Correlation trials

PairCorrelationReport epr_position_correlation(const LatticeState& state, const EprParams& params,
                                               SeededRng& rng, long trials, int first_axis) {
    if (state.n_particles() != 2) throw DimMismatch("epr_position_correlation: need a pair state");
    const LatticeConfig& cfg = state.config();
    const int o0 = cfg.index_of(params.x0);
    PairCorrelationReport report;
    report.trials = trials;
    report.first_outcome_counts.assign(static_cast<std::size_t>(cfg.n_points), 0);
    const int second_axis = 1 - first_axis;
    for (long t = 0; t < trials; ++t) {
        SeededRng trial_rng = rng.stream(static_cast<std::uint64_t>(t));
        const auto first = measure_position(state, first_axis, trial_rng);
        const auto second = measure_position(first.post_state, second_axis, trial_rng);
        const int n1 = (first_axis == 0) ? first.index : second.index;
        const int n2 = (first_axis == 0) ? second.index : first.index;
        if (cfg.wrap(static_cast<long long>(n1) + o0) == n2) ++report.matches;
        ++report.first_outcome_counts[static_cast<std::size_t>(first.index - cfg.origin)];
    }
    return report;
}

PairCorrelationReport epr_momentum_correlation(const LatticeState& state, SeededRng& rng,
                                               long trials, int first_axis) {
    if (state.n_particles() != 2) throw DimMismatch("epr_momentum_correlation: need a pair state");
    const LatticeConfig& cfg = state.config();
    PairCorrelationReport report;
    report.trials = trials;
    report.first_outcome_counts.assign(static_cast<std::size_t>(cfg.n_points), 0);
    const int second_axis = 1 - first_axis;
    for (long t = 0; t < trials; ++t) {
        SeededRng trial_rng = rng.stream(static_cast<std::uint64_t>(t));
        const auto first = measure_momentum(state, first_axis, trial_rng);
        const auto second = measure_momentum(first.post_state, second_axis, trial_rng);
        if (cfg.wrap(static_cast<long long>(first.index) + second.index) == 0) ++report.matches;
        ++report.first_outcome_counts[static_cast<std::size_t>(first.index - cfg.origin)];
    }
    return report;
}

double diagonal_partner_residual(const LatticeState& state, const std::function<double(double)>& f,
                                 int axis_a, int axis_b, bool momentum_space) {
    const LatticeState work = momentum_space ? dft(state) : state;
    const Eigen::VectorXcd amps = work.dense_amplitudes();
    const LatticeConfig& cfg = state.config();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        const int ia = axis_index_of_flat(cfg, i, axis_a, state.n_particles());
        const int ib = axis_index_of_flat(cfg, i, axis_b, state.n_particles());
        const double va = momentum_space ? cfg.dual_point(ia) : cfg.point(ia);
        const double vb = momentum_space ? cfg.dual_point(ib) : cfg.point(ib);
        const double diff = f(va) - f(vb);
        sum += std::norm(amps(i)) * diff * diff;
    }
    return std::sqrt(sum);
}

}  // namespace nlab::lattice
