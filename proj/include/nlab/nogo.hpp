#ifndef NLAB_NOGO_HPP
#define NLAB_NOGO_HPP

#include <array>
#include <string>
#include <vector>

#include "nlab/hilbert.hpp"
#include "nlab/lattice.hpp"

namespace nlab::nogo {

using hilbert::Operator;

// Additivity of assigned values fails for non-commuting spin components:
// the attainable sums of +-1/sqrt(2) assignments miss the actual spectrum of
// the summed operator.
struct VonNeumannReport {
    std::vector<double> attained_sums;       // distinct values of v(O) + v(O')
    std::vector<double> sum_op_eigenvalues;  // spectrum of (sigma_x + sigma_y)/sqrt(2)
    bool intersection_empty = false;
};

VonNeumannReport von_neumann_demo();

// True when (vp^2 + omega^2 vx^2)/2 lands on an oscillator level
// omega*(n + 1/2) for some 0 <= n <= n_max, within 1e-9.
bool oscillator_compatibility(double vp, double vx, double omega, int n_max);

struct OscillatorSweepReport {
    double vp = 0.0, vx = 0.0;
    int n_max = 0;
    long omegas_tested = 0;
    long incompatible = 0;
    std::vector<double> incompatible_examples;  // first few
};

OscillatorSweepReport oscillator_sweep(double vp, double vx, double omega_min, double omega_max,
                                       int steps, int n_max);

// With f the identity on the spectrum, f(O) = O by spectral calculus, so any
// value assignment respecting functions of commuting observables is forced
// into the spectrum.
struct EigenvalueConstraintReport {
    std::vector<double> distinct_eigenvalues;
    double reconstruction_residual = 0.0;
};

EigenvalueConstraintReport eigenvalue_constraint_demo(const Operator& o);

// The four observables A_i = cos(a Q_i), B_i = cos(pi P_i / a) on a
// two-particle even lattice, with `a` commensurate so that the phase-shift
// anticommutation is exact: a = 2*pi*k0/(n_points*h) and pi/a = m*h with
// 2*k0*m = n_points.
struct CliftonSet {
    lattice::LatticeConfig config;  // single-particle lattice
    int k0 = 0;
    int m = 0;
    double clifton_a = 0.0;
    Operator a1, a2, b1, b2;  // two-particle operators
};

CliftonSet build_clifton_set(int n_points, int k0, int m, double spacing);

// || U(b)V(c) - exp(-i b c) V(c) U(b) || on the single-particle space, for
// b on the dual lattice and c a lattice shift.
double weyl_phase_residual(const lattice::LatticeConfig& config, int b_dual_index,
                           int c_shift_sites);

// Worst Weyl residual over every (dual point, lattice shift) pair.
double weyl_phase_residual_max(const lattice::LatticeConfig& config);

struct CliftonRelationsReport {
    struct Entry {
        std::string name;
        double residual;
    };
    std::vector<Entry> entries;
    double max_residual = 0.0;
    // The contrast check: A1 B1 - B1 A1 is O(1), so the vanishing
    // anticommutator is not an artifact of everything being zero.
    double commutator_contrast = 0.0;
    // Anticommutator assembled through the four-term phase-shift expansion
    // of the cosines, compared against direct matrix arithmetic.
    double expansion_route_deviation = 0.0;
};

CliftonRelationsReport clifton_relations_check(const CliftonSet& set);

struct ValueAssignment {
    double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;
    double product() const { return a1 * a2 * b1 * b2; }
};

struct ValueMapSearchReport {
    // One entry per sign pattern of (v(A1), v(A2), v(B1), v(B2)).
    struct Pattern {
        ValueAssignment values;
        double v_c;  // multiplicative value of C = (A1 A2)(B2 B1)
        double v_d;  // multiplicative value of D = (A1 B2)(A2 B1)
    };
    std::vector<Pattern> patterns;
    bool multiplicative_forces_equal = false;  // v(C) = v(D) in every pattern
    bool opposite_nonzero_impossible = false;  // no pattern has v(C) = -v(D) != 0
    bool contradiction = false;                // combined with C = -D and f(x) = -x

    // Escape-hatch audit: the contradiction needs all four values nonzero,
    // i.e. parameters for which no A_i or B_i has a zero eigenvalue.
    bool params_admissible = false;
    std::vector<double> position_cos_spectrum;  // distinct diagonal values of A_i
    std::vector<double> momentum_cos_spectrum;  // distinct diagonal values of B_i
    struct ParamTriple {
        int n_points, k0, m;
    };
    std::vector<ParamTriple> admissible_alternatives;
    bool zero_map_flagged = false;  // v == 0 on the generators violates
                                    // spectrum membership when 0 is not an
                                    // eigenvalue
    std::string conclusion;
};

ValueMapSearchReport clifton_value_map_search(const CliftonSet& set);

// Exact parity test: cos(2 pi k0 n / N) hits zero for some site iff m is
// even, and cos(pi k / k0) hits zero for some dual index iff k0 is even.
bool clifton_params_admissible(int k0, int m);

}  // namespace nlab::nogo

#endif
