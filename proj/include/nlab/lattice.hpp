#ifndef NLAB_LATTICE_HPP
#define NLAB_LATTICE_HPP

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

#include "nlab/hilbert.hpp"
#include "nlab/rng.hpp"

namespace nlab::lattice {

using hilbert::Complex;

// A periodic one-dimensional lattice of n_points sites with spacing h and
// integer site indices in [origin, origin + n_points). The dual lattice
// carries momenta p_k = 2*pi*k / (h * n_points) over the same index range.
// Positions wrap modulo the full box length h * n_points, which is the
// period that makes the discrete orthogonality relations exact.
struct LatticeConfig {
    double spacing = 1.0;
    int n_points = 1;
    int origin = 0;

    // Odd variant: sites {n*h : |n| <= M}.
    static LatticeConfig odd(double spacing, int half_count);
    // Even variant: indices in [-N/2, N/2); used by the no-go construction.
    static LatticeConfig even_count(double spacing, int n_points);

    bool odd_variant() const { return n_points % 2 == 1; }
    int half_count() const { return (n_points - 1) / 2; }
    double box_length() const { return spacing * n_points; }
    double dual_spacing() const;

    double point(int index) const { return spacing * index; }
    double dual_point(int index) const { return dual_spacing() * index; }

    // Reduces a raw site index into [origin, origin + n_points).
    int wrap(long long raw) const;

    // Index of a lattice point / dual point; throws OffLattice when the value
    // is not on the (dual) lattice.
    int index_of(double x) const;
    int dual_index_of(double p) const;

    std::vector<hilbert::AxisSpec> axes(int n_particles) const;

    bool operator==(const LatticeConfig&) const = default;
};

struct EprParams {
    double x0 = 0.0;  // pair offset; must be a lattice point
};

// A normalized wave function over 1, 2 or 4 lattice axes. Four-particle
// states built as a product of two pair states are kept in product form;
// they materialize a dense 4-index amplitude array only for n_points <= 13.
class LatticeState {
public:
    LatticeState(LatticeConfig config, int n_particles, Eigen::VectorXcd amplitudes);

    // Product of two 2-particle states, placed on axes (0,2) and (1,3).
    static LatticeState product_pair(LatticeState pair13, LatticeState pair24);

    const LatticeConfig& config() const { return config_; }
    int n_particles() const { return n_particles_; }
    bool is_product_form() const { return static_cast<bool>(pair13_); }

    const LatticeState& pair13() const;
    const LatticeState& pair24() const;

    // Dense amplitudes, row-major with particle 1 slowest. Materializing a
    // product-form state beyond n_points 13 throws TooLarge.
    Eigen::VectorXcd dense_amplitudes() const;

    // Non-product states only.
    const Eigen::VectorXcd& amplitudes() const;

    double norm() const;

private:
    LatticeState() = default;

    LatticeConfig config_;
    int n_particles_ = 0;
    Eigen::VectorXcd amps_;
    std::shared_ptr<const LatticeState> pair13_;
    std::shared_ptr<const LatticeState> pair24_;
};

// Unitary transform to the momentum representation (1/sqrt(N) per axis) and
// its inverse. Product-form states transform factorwise.
LatticeState dft(const LatticeState& state);
LatticeState idft(const LatticeState& state);

// sum_{p in dual} exp(i x p); equals n_points at x = 0 and vanishes at every
// other lattice point. Throws OffLattice for x outside the lattice.
Complex orthogonality_sum(const LatticeConfig& config, double x);
// sum_{x in lattice} exp(i x p) for p on the dual lattice.
Complex dual_orthogonality_sum(const LatticeConfig& config, double p);

hilbert::Operator position_op(const LatticeConfig& config, int particle, int n_particles);
hilbert::Operator momentum_op(const LatticeConfig& config, int particle, int n_particles);

// The pair state supported exactly on x1 - x2 + x0 = 0 (mod box), in its
// three equivalent literal forms (unnormalized) plus the normalized builder.
Eigen::VectorXcd epr_form_fourier_sum(const LatticeConfig& config, const EprParams& params);
Eigen::VectorXcd epr_form_delta(const LatticeConfig& config, const EprParams& params);
Eigen::VectorXcd epr_form_convolution(const LatticeConfig& config, const EprParams& params);
LatticeState build_epr_state(const LatticeConfig& config, const EprParams& params);

// Product of two pair states on particle pairs (1,3) and (2,4).
LatticeState build_four_particle_state(const LatticeConfig& config, const EprParams& params);

// Schmidt coefficients of a 4-particle state across the (1,2)|(3,4) cut.
Eigen::VectorXd four_particle_schmidt(const LatticeState& state);

struct LatticeMeasurement {
    int index;          // site (or dual) index of the outcome
    double value;       // x = index*h, or p = index*dual_spacing
    double probability;
    LatticeState post_state;
};

// Projective measurement of the position (momentum) of one particle axis,
// computed directly in the diagonal representation.
LatticeMeasurement measure_position(const LatticeState& state, int axis, SeededRng& rng);
LatticeMeasurement measure_momentum(const LatticeState& state, int axis, SeededRng& rng);

struct PairCorrelationReport {
    long trials = 0;
    long matches = 0;
    std::vector<long> first_outcome_counts;  // per site/dual index, origin first
    bool all_matched() const { return matches == trials; }
};

// Sequential two-particle measurements on a pair state: measures the
// `first_axis` particle, then the other, and counts how often the outcomes
// satisfy x2 = x1 + x0 (mod box), resp. p2 = -p1 (mod dual box).
PairCorrelationReport epr_position_correlation(const LatticeState& state, const EprParams& params,
                                               SeededRng& rng, long trials, int first_axis = 0);
PairCorrelationReport epr_momentum_correlation(const LatticeState& state, SeededRng& rng,
                                               long trials, int first_axis = 0);

// || (f(w_a) - f(w_b)) Psi || where w is the position (or momentum) of the
// given axes; vanishing residual is the perfect-correlation statement for
// the partner pair f(axis_a), f(axis_b).
double diagonal_partner_residual(const LatticeState& state, const std::function<double(double)>& f,
                                 int axis_a, int axis_b, bool momentum_space);

}  // namespace nlab::lattice

#endif
